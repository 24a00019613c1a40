//! Session files: a TOML tree (or the same tree as JSON) describing a datum,
//! an optional cocycle, and an optional quantum affine space with an action.
//!
//! Indices in files are 1-based. Scalars are expression strings in the declared
//! parameters; characters must be parameter monomials.

use crate::algebra::{AlgebraError, DiagonalAction, QuantumAffine};
use crate::cartan::cartan_of_type;
use crate::cy::CrossedInput;
use crate::datum::{validate_datum, CleftDatum, CocycleData, DatumError, GenericDatum, HCocycle, Mode, RawDatum};
use crate::expr::{parse_scalar, parse_words, WordPoly};
use crate::koszul::{KoszulError, NHomogeneous};
use crate::lattice::Character;
use crate::scalars::RF;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const DEFAULT_KOSZUL_BOUND: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("{field}: invariant violated: {source}")]
    Invariant { field: &'static str, source: DatumError },
    #[error("{field}: {source}")]
    Algebra { field: &'static str, source: AlgebraError },
    #[error("algebra: {0}")]
    Koszul(#[from] KoszulError),
    #[error("this command needs a [{0}] block")]
    Missing(&'static str),
}

fn field_err(field: impl Into<String>, message: impl ToString) -> ConfigError {
    ConfigError::Field { field: field.into(), message: message.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CartanSpec {
    Named(String),
    Matrix(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumBlock {
    pub rank: usize,
    pub cartan: CartanSpec,
    #[serde(default)]
    pub g: Vec<Vec<i64>>,
    /// `chi[i][j]` is the value of the i-th character on `y_j`.
    #[serde(default)]
    pub chi: Vec<Vec<String>>,
    #[serde(default)]
    pub linking: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleBlock {
    /// `sigma(y_i, y_j) / sigma(y_j, y_i)`.
    #[serde(default)]
    pub ratio: Vec<Entry>,
    #[serde(default)]
    pub pi: Vec<Entry>,
    /// Values on pairs of skew-primitives, for crossed products.
    #[serde(default)]
    pub skew: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub koszul_bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionBlock {
    /// `group[i][j]`: eigenvalue of `y_j` on the i-th generator.
    pub group: Vec<Vec<String>>,
    /// `x[k][i]`: image of the i-th generator under `x_k`, linear in the generators.
    #[serde(default)]
    pub x: Vec<Vec<String>>,
}

/// The file as written, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub params: Vec<String>,
    #[serde(default)]
    pub mode: Mode,
    pub datum: Option<DatumBlock>,
    pub cocycle: Option<CocycleBlock>,
    pub algebra: Option<AlgebraBlock>,
    pub action: Option<ActionBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub names: Vec<String>,
    pub relations: Vec<WordPoly>,
    pub degree: usize,
    pub koszul_bound: usize,
}

/// A validated session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionConfig {
    pub file: ConfigFile,
    pub datum: Option<GenericDatum>,
    pub sigma: Option<CocycleData>,
    pub pi: BTreeMap<(usize, usize), RF>,
    pub skew: BTreeMap<(usize, usize), RF>,
    pub algebra: Option<Algebra>,
    pub action: Option<DiagonalAction>,
}

/// Accepts TOML, or JSON when the first non-blank character is `{`.
pub fn parse_file(text: &str) -> Result<ConfigFile, ConfigError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))
    } else {
        toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string().trim_end().to_string()))
    }
}

pub fn parse_config(text: &str) -> Result<SessionConfig, ConfigError> {
    SessionConfig::from_file(parse_file(text)?)
}

fn unit_exps(src: &str, params: &[String], field: &str) -> Result<Vec<i64>, ConfigError> {
    let v = parse_scalar(src, params).map_err(|e| field_err(field, e))?;
    v.as_unit_exps(params.len()).ok_or_else(|| field_err(field, format!("'{src}' is not a monomial in the parameters")))
}

fn character(rows: &[Vec<String>], s: usize, params: &[String], field: &str) -> Result<Vec<Vec<Vec<i64>>>, ConfigError> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != s {
                return Err(field_err(format!("{field}[{}]", i + 1), format!("{} values given, group rank is {s}", row.len())));
            }
            row.iter().enumerate().map(|(j, v)| unit_exps(v, params, &format!("{field}[{}][{}]", i + 1, j + 1))).collect()
        })
        .collect()
}

fn entries(list: &[Entry], bound: usize, params: &[String], field: &str) -> Result<Vec<(usize, usize, RF)>, ConfigError> {
    list.iter()
        .enumerate()
        .map(|(n, e)| {
            let at = format!("{field}[{}]", n + 1);
            if e.i == 0 || e.j == 0 || e.i > bound || e.j > bound {
                return Err(field_err(&at, format!("indices ({}, {}) outside 1..={bound}", e.i, e.j)));
            }
            let v = parse_scalar(&e.value, params).map_err(|err| field_err(&at, err))?;
            Ok((e.i - 1, e.j - 1, v))
        })
        .collect()
}

fn ordered_map(list: Vec<(usize, usize, RF)>, field: &str) -> Result<BTreeMap<(usize, usize), RF>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, j, v) in list {
        if i >= j {
            return Err(field_err(field, format!("entry ({}, {}) must have i < j", i + 1, j + 1)));
        }
        out.insert((i, j), v);
    }
    Ok(out)
}

impl SessionConfig {
    pub fn from_file(file: ConfigFile) -> Result<Self, ConfigError> {
        let params = file.params.clone();
        let datum = match &file.datum {
            None => None,
            Some(b) => {
                let cartan = match &b.cartan {
                    CartanSpec::Named(n) => cartan_of_type(n).map_err(|e| field_err("datum.cartan", e))?,
                    CartanSpec::Matrix(m) => m.clone(),
                };
                let linking = entries(&b.linking, cartan.len(), &params, "datum.linking")?;
                let raw = RawDatum {
                    params: params.clone(),
                    rank: b.rank,
                    cartan,
                    g: b.g.clone(),
                    chi: character(&b.chi, b.rank, &params, "datum.chi")?,
                    linking,
                };
                Some(validate_datum(raw, file.mode).map_err(|source| ConfigError::Invariant { field: "datum", source })?)
            }
        };

        let (mut sigma, mut pi, mut skew) = (None, BTreeMap::new(), BTreeMap::new());
        if let Some(c) = &file.cocycle {
            let d = datum.as_ref().ok_or(ConfigError::Missing("datum"))?;
            let (s, m) = (d.rank(), d.param_count());
            let mut pairs = Vec::new();
            for (n, (i, j, v)) in entries(&c.ratio, s, &params, "cocycle.ratio")?.into_iter().enumerate() {
                let at = format!("cocycle.ratio[{}]", n + 1);
                let e = v.as_unit_exps(m).ok_or_else(|| field_err(&at, "ratio values must be parameter monomials"))?;
                if i == j {
                    return Err(field_err(&at, "ratio entries need i != j"));
                }
                pairs.push((i, j, e));
            }
            sigma =
                Some(CocycleData::from_pairs(s, m, &pairs).map_err(|source| ConfigError::Invariant { field: "cocycle.ratio", source })?);
            pi = ordered_map(entries(&c.pi, d.theta(), &params, "cocycle.pi")?, "cocycle.pi")?;
            skew = entries(&c.skew, d.theta(), &params, "cocycle.skew")?.into_iter().map(|(i, j, v)| ((i, j), v)).collect();
        }

        let algebra = match &file.algebra {
            None => None,
            Some(a) => {
                let relations = a
                    .relations
                    .iter()
                    .enumerate()
                    .map(|(n, r)| parse_words(r, &params, &a.generators).map_err(|e| field_err(format!("algebra.relations[{}]", n + 1), e)))
                    .collect::<Result<Vec<_>, _>>()?;
                let degree = relations
                    .first()
                    .and_then(WordPoly::homogeneous_degree)
                    .ok_or_else(|| field_err("algebra.relations", "need at least one homogeneous relation"))?;
                Some(Algebra {
                    names: a.generators.clone(),
                    relations,
                    degree,
                    koszul_bound: a.koszul_bound.unwrap_or(DEFAULT_KOSZUL_BOUND),
                })
            }
        };

        let action = match &file.action {
            None => None,
            Some(act) => {
                let d = datum.as_ref().ok_or(ConfigError::Missing("datum"))?;
                let alg = algebra.as_ref().ok_or(ConfigError::Missing("algebra"))?;
                let n = alg.names.len();
                if act.group.len() != n {
                    return Err(field_err("action.group", format!("{} rows given, algebra has {n} generators", act.group.len())));
                }
                let group = character(&act.group, d.rank(), &params, "action.group")?
                    .into_iter()
                    .map(|rows| Character::new(rows, params.len()).map_err(|e| field_err("action.group", e)))
                    .collect::<Result<Vec<_>, _>>()?;
                let x = act
                    .x
                    .iter()
                    .enumerate()
                    .map(|(k, row)| linear_matrix(row, n, &params, &alg.names, &format!("action.x[{}]", k + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                if !x.is_empty() && x.len() != d.theta() {
                    return Err(field_err("action.x", format!("{} skew-primitive rows given, datum has {}", x.len(), d.theta())));
                }
                Some(DiagonalAction { group, x })
            }
        };

        Ok(Self { file, datum, sigma, pi, skew, algebra, action })
    }

    pub fn params(&self) -> &[String] {
        &self.file.params
    }

    pub fn datum(&self) -> Result<&GenericDatum, ConfigError> {
        self.datum.as_ref().ok_or(ConfigError::Missing("datum"))
    }

    pub fn sigma(&self) -> Result<CocycleData, ConfigError> {
        let d = self.datum()?;
        Ok(self.sigma.clone().unwrap_or_else(|| CocycleData::trivial(d.rank(), d.param_count())))
    }

    pub fn cleft(&self) -> Result<CleftDatum, ConfigError> {
        CleftDatum::new(self.datum()?.clone(), self.sigma()?, self.pi.clone())
            .map_err(|source| ConfigError::Invariant { field: "cocycle", source })
    }

    pub fn h_cocycle(&self) -> Result<HCocycle, ConfigError> {
        Ok(HCocycle { group: self.sigma()?, xx: self.skew.clone() })
    }

    pub fn algebra(&self) -> Result<&Algebra, ConfigError> {
        self.algebra.as_ref().ok_or(ConfigError::Missing("algebra"))
    }

    pub fn koszul_algebra(&self) -> Result<NHomogeneous, ConfigError> {
        let a = self.algebra()?;
        Ok(NHomogeneous::new(a.names.clone(), a.degree, &a.relations)?)
    }

    pub fn crossed(&self) -> Result<CrossedInput, ConfigError> {
        let a = self.algebra()?;
        let algebra = QuantumAffine::from_relations(a.names.clone(), &a.relations)
            .map_err(|source| ConfigError::Algebra { field: "algebra", source })?;
        let action = self.action.clone().ok_or(ConfigError::Missing("action"))?;
        Ok(CrossedInput { algebra, action, datum: self.datum()?.clone(), cocycle: self.h_cocycle()?, koszul_bound: a.koszul_bound })
    }
}

fn linear_matrix(row: &[String], n: usize, params: &[String], names: &[String], field: &str) -> Result<Vec<Vec<RF>>, ConfigError> {
    if row.len() != n {
        return Err(field_err(field, format!("{} images given, algebra has {n} generators", row.len())));
    }
    row.iter()
        .enumerate()
        .map(|(i, src)| {
            let at = format!("{field}[{}]", i + 1);
            let w = parse_words(src, params, names).map_err(|e| field_err(&at, e))?;
            let mut out = vec![RF::zero(); n];
            for (word, c) in w.terms() {
                match word.as_slice() {
                    [l] => out[*l] = c.clone(),
                    _ => return Err(field_err(&at, format!("'{src}' is not linear in the generators"))),
                }
            }
            Ok(out)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::catalog;
    use crate::lattice::GroupElement;

    #[test]
    fn quantum_plane_entry_loads() {
        let s = parse_config(catalog::get("sl2_quantum_plane").unwrap()).unwrap();
        let d = s.datum().unwrap();
        assert_eq!((d.rank(), d.theta()), (1, 2));
        assert_eq!(d.q_exps(0, 0), vec![2]);
        assert_eq!(s.algebra().unwrap().degree, 2);
        assert_eq!(s.action.as_ref().unwrap().x.len(), 2);
        assert!(s.crossed().unwrap().presentation().is_ok());
    }

    #[test]
    fn ratio_entries_follow_the_documented_orientation() {
        let s = parse_config(catalog::get("rank2_unlinked").unwrap()).unwrap();
        let sigma = s.sigma().unwrap();
        let (y1, y2) = (GroupElement(vec![1, 0]), GroupElement(vec![0, 1]));
        assert_eq!(sigma.ratio_exps(&y2, &y1), vec![3]);
    }

    #[test]
    fn semantic_errors_name_the_field() {
        let base = catalog::get("rank2_unlinked").unwrap();
        let bad = base.replace("rank = 2", "rank = 3");
        assert_ne!(bad, base);
        assert!(matches!(parse_config(&bad), Err(ConfigError::Field { ref field, .. }) if field == "datum.chi[1]"));
        let bad = base.replace("g = [[1, 0], [0, 1]]", "g = [[1, 0]]");
        assert_ne!(bad, base);
        assert!(matches!(parse_config(&bad), Err(ConfigError::Invariant { field: "datum", .. })));
        let err = parse_config("params = [\"q\"]\nunknown = 1\n").unwrap_err();
        assert!(matches!(err, ConfigError::Syntax(ref m) if m.contains("unknown")), "{err}");
        let err = parse_config("params = [\"q\"]\n[cocycle]\nratio = []\n").unwrap_err();
        assert_eq!(err, ConfigError::Missing("datum"));
    }

    #[test]
    fn json_and_toml_agree() {
        for (name, text) in catalog::ENTRIES {
            let f = parse_file(text).unwrap();
            let json = serde_json::to_string(&f).unwrap();
            assert_eq!(parse_file(&json).unwrap(), f, "{name}");
        }
    }
}
