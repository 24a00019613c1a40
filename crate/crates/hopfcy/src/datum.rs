//! Generic data of finite Cartan type, cocycles on the group, deformed
//! braidings and cleft data.

use crate::cartan::{positive_roots, validate_cartan, CartanError, CartanMatrix, RootSystem};
use crate::lattice::{Character, GroupElement, LatticeError};
use crate::scalars::{Monomial, RF};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DatumError {
    #[error("{what} count is {found}, expected {expected}")]
    Count { what: &'static str, expected: usize, found: usize },
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("q_{{{0}{0}}} is not a power q_I^{d} for the symmetrizer entry d = {d}", .i + 1)]
    DiagonalPower { i: usize, d: i64 },
    #[error("component of vertex {} has q_I = 1, which is a root of unity", .0 + 1)]
    RootOfUnity(usize),
    #[error("q_{{{0}{0}}} disagrees with the component parameter q_I", .i + 1)]
    ComponentParameter { i: usize },
    #[error("braiding condition fails at ({}, {}): q_ij q_ji = {found}, expected {expected}", .i + 1, .j + 1)]
    Braiding { i: usize, j: usize, found: String, expected: String },
    #[error("linking entry ({}, {}) must satisfy i < j with i, j in different components", .i + 1, .j + 1)]
    LinkingIndex { i: usize, j: usize },
    #[error("linking entry ({}, {}) is nonzero but {reason}", .i + 1, .j + 1)]
    LinkingConstraint { i: usize, j: usize, reason: String },
    #[error("cocycle ratio data is not antisymmetric at ({}, {})", .0 + 1, .1 + 1)]
    NotAntisymmetric(usize, usize),
    #[error("bicharacter representative does not match the ratio lattice at ({}, {})", .0 + 1, .1 + 1)]
    BadRepresentative(usize, usize),
    #[error("pi entry ({}, {}) is nonzero outside the admissible set", .i + 1, .j + 1)]
    PiSupport { i: usize, j: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Strict,
    Permissive,
}

/// Unvalidated datum, as read from input. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDatum {
    pub params: Vec<String>,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub g: Vec<Vec<i64>>,
    /// `chi[i][j]` is the exponent vector of `chi_i(y_j)`.
    pub chi: Vec<Vec<Vec<i64>>>,
    pub linking: Vec<(usize, usize, RF)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericDatum {
    params: Vec<String>,
    rank: usize,
    cartan: CartanMatrix,
    roots: RootSystem,
    g: Vec<GroupElement>,
    chi: Vec<Character>,
    q_component: Vec<Vec<i64>>,
    linking: BTreeMap<(usize, usize), RF>,
    warnings: Vec<String>,
}

pub(crate) fn add_exps(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale_exps(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

pub fn validate_datum(raw: RawDatum, mode: Mode) -> Result<GenericDatum, DatumError> {
    let m = raw.params.len();
    let s = raw.rank;
    let cartan = validate_cartan(raw.cartan)?;
    let theta = cartan.size();
    if raw.g.len() != theta {
        return Err(DatumError::Count { what: "group-like", expected: theta, found: raw.g.len() });
    }
    if raw.chi.len() != theta {
        return Err(DatumError::Count { what: "character", expected: theta, found: raw.chi.len() });
    }
    let g: Vec<GroupElement> = raw
        .g
        .into_iter()
        .map(|v| {
            if v.len() != s {
                return Err(DatumError::Count { what: "group-like coordinate", expected: s, found: v.len() });
            }
            Ok(GroupElement(v))
        })
        .collect::<Result<_, _>>()?;
    let chi: Vec<Character> = raw
        .chi
        .into_iter()
        .map(|rows| {
            if rows.len() != s {
                return Err(DatumError::Count { what: "character row", expected: s, found: rows.len() });
            }
            Ok(Character::new(rows, m)?)
        })
        .collect::<Result<_, _>>()?;

    let mut d = GenericDatum {
        params: raw.params,
        rank: s,
        roots: positive_roots(&cartan),
        cartan,
        g,
        chi,
        q_component: Vec::new(),
        linking: BTreeMap::new(),
        warnings: Vec::new(),
    };

    for comp in d.cartan.components().to_vec() {
        let i0 = comp[0];
        let d0 = d.cartan.symmetrizer()[i0];
        let q00 = d.q_exps(i0, i0);
        if q00.iter().any(|e| e % d0 != 0) {
            return Err(DatumError::DiagonalPower { i: i0, d: d0 });
        }
        let q_i: Vec<i64> = q00.iter().map(|e| e / d0).collect();
        if q_i.iter().all(|e| *e == 0) {
            return Err(DatumError::RootOfUnity(i0));
        }
        for &i in &comp {
            if d.q_exps(i, i) != scale_exps(&q_i, d.cartan.symmetrizer()[i]) {
                return Err(DatumError::ComponentParameter { i });
            }
        }
        d.q_component.push(q_i);
    }

    for i in 0..theta {
        for j in 0..theta {
            if i == j {
                continue;
            }
            let found = add_exps(&d.q_exps(i, j), &d.q_exps(j, i));
            let expected = if d.cartan.linked(i, j) {
                let c = d.cartan.component_of(i);
                scale_exps(&d.q_component[c], d.cartan.symmetrizer()[i] * d.cartan.entry(i, j))
            } else {
                vec![0; m]
            };
            if found != expected {
                return Err(DatumError::Braiding {
                    i,
                    j,
                    found: Monomial::from_exps(found).render(&d.params),
                    expected: Monomial::from_exps(expected).render(&d.params),
                });
            }
        }
    }

    for (i, j, v) in raw.linking {
        if v.is_zero() {
            continue;
        }
        if i >= j || j >= theta || d.cartan.linked(i, j) {
            return Err(DatumError::LinkingIndex { i, j });
        }
        let reason = if d.g[i].add(&d.g[j]).is_identity() {
            Some("g_i g_j = 1".to_string())
        } else if !d.chi[i].mul(&d.chi[j])?.is_trivial() {
            Some("chi_i chi_j is not the trivial character".to_string())
        } else {
            None
        };
        if let Some(reason) = reason {
            match mode {
                Mode::Strict => return Err(DatumError::LinkingConstraint { i, j, reason }),
                Mode::Permissive => d.warnings.push(format!("linking entry ({}, {}) kept although {reason}", i + 1, j + 1)),
            }
        }
        d.linking.insert((i, j), v);
    }
    Ok(d)
}

impl GenericDatum {
    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn theta(&self) -> usize {
        self.cartan.size()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn g(&self, i: usize) -> &GroupElement {
        &self.g[i]
    }

    pub fn chi(&self, i: usize) -> &Character {
        &self.chi[i]
    }

    pub fn chars(&self) -> &[Character] {
        &self.chi
    }

    pub fn linking(&self) -> &BTreeMap<(usize, usize), RF> {
        &self.linking
    }

    pub fn linking_value(&self, i: usize, j: usize) -> RF {
        self.linking.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Exponent vector of the component parameter of vertex `i`.
    pub fn q_component(&self, i: usize) -> &[i64] {
        &self.q_component[self.cartan.component_of(i)]
    }

    /// Exponents of `q_ij = chi_j(g_i)`.
    pub fn q_exps(&self, i: usize, j: usize) -> Vec<i64> {
        self.chi[j].eval_exps(&self.g[i]).expect("validated shapes")
    }

    pub fn braiding_matrix(&self) -> Vec<Vec<Monomial>> {
        let n = self.theta();
        (0..n).map(|i| (0..n).map(|j| Monomial::from_exps(self.q_exps(i, j))).collect()).collect()
    }

    /// `g_beta = sum m_i g_i` and `chi_beta = prod chi_i^{m_i}` for simple-root coordinates `m`.
    pub fn root_group_and_char(&self, coords: &[i64]) -> (GroupElement, Character) {
        let mut g = GroupElement::identity(self.rank);
        let mut c = Character::trivial(self.rank, self.param_count());
        for (i, &k) in coords.iter().enumerate() {
            g = g.add(&self.g[i].scale(k));
            c = c.mul(&self.chi[i].pow(k)).expect("validated shapes");
        }
        (g, c)
    }

    /// The linking relation set `{(i, j) : i < j, i and j in different components}`.
    pub fn unlinked_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.theta();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| !self.cartan.linked(i, j)).collect()
    }
}

/// A 2-cocycle class on `Z^s` stored by its antisymmetric ratio lattice
/// `U[j][k] = exps(sigma(y_j, y_k) / sigma(y_k, y_j))`, together with a
/// bicharacter representative `M` satisfying `M - M^T = U`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleData {
    ratio: Vec<Vec<Vec<i64>>>,
    rep: Vec<Vec<Vec<i64>>>,
    params: usize,
}

impl CocycleData {
    pub fn trivial(s: usize, m: usize) -> Self {
        Self { ratio: vec![vec![vec![0; m]; s]; s], rep: vec![vec![vec![0; m]; s]; s], params: m }
    }

    /// Representative is the strict upper-triangular part of the ratio lattice.
    pub fn from_ratio(ratio: Vec<Vec<Vec<i64>>>, m: usize) -> Result<Self, DatumError> {
        let s = ratio.len();
        for (j, row) in ratio.iter().enumerate() {
            if row.len() != s {
                return Err(DatumError::Count { what: "ratio row", expected: s, found: row.len() });
            }
            for (k, v) in row.iter().enumerate() {
                if v.len() != m {
                    return Err(DatumError::Count { what: "ratio exponent", expected: m, found: v.len() });
                }
                if *v != scale_exps(&ratio[k][j], -1) {
                    return Err(DatumError::NotAntisymmetric(j, k));
                }
            }
        }
        let rep = (0..s).map(|j| (0..s).map(|k| if j < k { ratio[j][k].clone() } else { vec![0; m] }).collect()).collect();
        Ok(Self { ratio, rep, params: m })
    }

    /// Builds the ratio lattice from entries `sigma(y_a, y_b) / sigma(y_b, y_a)`.
    pub fn from_pairs(s: usize, m: usize, pairs: &[(usize, usize, Vec<i64>)]) -> Result<Self, DatumError> {
        let mut u = vec![vec![vec![0; m]; s]; s];
        for (a, b, v) in pairs {
            if *a >= s || *b >= s || a == b || v.len() != m {
                return Err(DatumError::NotAntisymmetric(*a, *b));
            }
            u[*a][*b] = v.clone();
            u[*b][*a] = scale_exps(v, -1);
        }
        Self::from_ratio(u, m)
    }

    pub fn with_representative(&self, rep: Vec<Vec<Vec<i64>>>) -> Result<Self, DatumError> {
        let s = self.rank();
        for j in 0..s {
            for k in 0..s {
                if add_exps(&rep[j][k], &scale_exps(&rep[k][j], -1)) != self.ratio[j][k] {
                    return Err(DatumError::BadRepresentative(j, k));
                }
            }
        }
        Ok(Self { ratio: self.ratio.clone(), rep, params: self.params })
    }

    pub fn rank(&self) -> usize {
        self.ratio.len()
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn ratio_lattice(&self) -> &[Vec<Vec<i64>>] {
        &self.ratio
    }

    pub fn representative(&self) -> &[Vec<Vec<i64>>] {
        &self.rep
    }

    pub fn is_trivial_class(&self) -> bool {
        self.ratio.iter().flatten().flatten().all(|e| *e == 0)
    }

    fn pair_exps(table: &[Vec<Vec<i64>>], m: usize, g: &GroupElement, h: &GroupElement) -> Vec<i64> {
        let mut out = vec![0; m];
        for (j, gj) in g.0.iter().enumerate() {
            for (k, hk) in h.0.iter().enumerate() {
                let c = gj * hk;
                if c != 0 {
                    for (o, e) in out.iter_mut().zip(&table[j][k]) {
                        *o += c * e;
                    }
                }
            }
        }
        out
    }

    /// Exponents of `sigma(g, h) / sigma(h, g)`.
    pub fn ratio_exps(&self, g: &GroupElement, h: &GroupElement) -> Vec<i64> {
        Self::pair_exps(&self.ratio, self.params, g, h)
    }

    pub fn ratio(&self, g: &GroupElement, h: &GroupElement) -> Monomial {
        Monomial::from_exps(self.ratio_exps(g, h))
    }

    /// Exponents of the representative value `sigma(g, h)`.
    pub fn sigma_exps(&self, g: &GroupElement, h: &GroupElement) -> Vec<i64> {
        Self::pair_exps(&self.rep, self.params, g, h)
    }

    pub fn sigma(&self, g: &GroupElement, h: &GroupElement) -> RF {
        RF::from_exps(&self.sigma_exps(g, h))
    }

    /// Pointwise inverse cocycle.
    pub fn inverse(&self) -> Self {
        let neg = |t: &Vec<Vec<Vec<i64>>>| t.iter().map(|r| r.iter().map(|v| scale_exps(v, -1)).collect()).collect();
        Self { ratio: neg(&self.ratio), rep: neg(&self.rep), params: self.params }
    }

    /// The character `g -> sigma(g, h) / sigma(h, g)` for fixed `h`, as rows over `y_j`.
    pub fn ratio_character(&self, h: &GroupElement) -> Character {
        let rows = (0..self.rank()).map(|j| self.ratio_exps(&GroupElement::basis(self.rank(), j), h)).collect();
        Character::new(rows, self.params).expect("shape")
    }
}

/// Quadratic monomial-valued map on the group:
/// `f(g) = prod q^(sum_j g_j L_j + sum_{j<=k} g_j g_k Q_jk)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coboundary {
    pub linear: Vec<Vec<i64>>,
    /// Indexed by `(j, k)` with `j <= k`.
    pub quadratic: BTreeMap<(usize, usize), Vec<i64>>,
}

impl Coboundary {
    pub fn identity() -> Self {
        Self { linear: Vec::new(), quadratic: BTreeMap::new() }
    }

    pub fn eval_exps(&self, g: &GroupElement, m: usize) -> Vec<i64> {
        let mut out = vec![0; m];
        for (j, l) in self.linear.iter().enumerate() {
            out = add_exps(&out, &scale_exps(l, g.0[j]));
        }
        for ((j, k), q) in &self.quadratic {
            out = add_exps(&out, &scale_exps(q, g.0[*j] * g.0[*k]));
        }
        out
    }
}

/// `sigma'(g, h) = f(g)^-1 f(h)^-1 sigma(g, h) f(gh)` and `pi'_ij = f(g_i)^-1 f(g_j)^-1 pi_ij`.
pub fn normalize_pair(
    d: &GenericDatum,
    sigma: &CocycleData,
    pi: &BTreeMap<(usize, usize), RF>,
    f: &Coboundary,
) -> (CocycleData, BTreeMap<(usize, usize), RF>) {
    let m = sigma.params();
    let mut rep = sigma.representative().to_vec();
    for ((j, k), q) in &f.quadratic {
        rep[*j][*k] = add_exps(&rep[*j][*k], q);
        rep[*k][*j] = add_exps(&rep[*k][*j], q);
    }
    let sigma2 = sigma.with_representative(rep).expect("symmetric change keeps the ratio lattice");
    let pi2 = pi
        .iter()
        .map(|(&(i, j), v)| {
            let e = add_exps(&f.eval_exps(d.g(i), m), &f.eval_exps(d.g(j), m));
            ((i, j), v * &RF::from_exps(&scale_exps(&e, -1)))
        })
        .collect();
    (sigma2, pi2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deformation {
    pub chi: Vec<Character>,
    /// Exponents of `q^sigma_ij`.
    pub q: Vec<Vec<Vec<i64>>>,
    pub admissible: Vec<(usize, usize)>,
}

impl Deformation {
    pub fn q_monomial(&self, i: usize, j: usize) -> Monomial {
        Monomial::from_exps(self.q[i][j].clone())
    }
}

/// `chi_i^sigma(g) = ratio(g, g_i) chi_i(g)`, `q^sigma_ij = ratio(g_i, g_j) q_ij`, and the set
/// of pairs `i < j`, `i` and `j` unlinked, with `chi^sigma_i chi^sigma_j` trivial.
pub fn deform_datum(d: &GenericDatum, sigma: &CocycleData) -> Deformation {
    let n = d.theta();
    let chi: Vec<Character> = (0..n).map(|i| d.chi(i).mul(&sigma.ratio_character(d.g(i))).expect("shape")).collect();
    let q = (0..n).map(|i| (0..n).map(|j| add_exps(&sigma.ratio_exps(d.g(i), d.g(j)), &d.q_exps(i, j))).collect()).collect();
    let admissible = d.unlinked_pairs().into_iter().filter(|&(i, j)| chi[i].mul(&chi[j]).expect("shape").is_trivial()).collect();
    Deformation { chi, q, admissible }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleftDatum {
    pub base: GenericDatum,
    pub sigma: CocycleData,
    pub pi: BTreeMap<(usize, usize), RF>,
}

impl CleftDatum {
    pub fn new(base: GenericDatum, sigma: CocycleData, pi: BTreeMap<(usize, usize), RF>) -> Result<Self, DatumError> {
        if sigma.rank() != base.rank() {
            return Err(DatumError::Count { what: "cocycle rank", expected: base.rank(), found: sigma.rank() });
        }
        let adm = deform_datum(&base, &sigma).admissible;
        let pi: BTreeMap<_, _> = pi.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if let Some(&(i, j)) = pi.keys().find(|k| !adm.contains(k)) {
            return Err(DatumError::PiSupport { i, j });
        }
        Ok(Self { base, sigma, pi })
    }

    pub fn pi_value(&self, i: usize, j: usize) -> RF {
        self.pi.get(&(i, j)).cloned().unwrap_or_default()
    }
}

/// A cocycle on the bosonization: pulled back from the group, zero on mixed
/// pairs, with prescribed values on pairs of skew-primitives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCocycle {
    pub group: CocycleData,
    pub xx: BTreeMap<(usize, usize), RF>,
}

impl HCocycle {
    pub fn trivial(s: usize, m: usize) -> Self {
        Self { group: CocycleData::trivial(s, m), xx: BTreeMap::new() }
    }

    pub fn xx_value(&self, i: usize, j: usize) -> RF {
        self.xx.get(&(i, j)).cloned().unwrap_or_default()
    }
}

/// `tau(x_i, x_j) = lambda_ij sigma(g_i, g_j) - pi_ij` for `i < j` unlinked, zero otherwise.
pub fn tau_from_cleft(cd: &CleftDatum) -> HCocycle {
    let d = &cd.base;
    let mut xx = BTreeMap::new();
    for (i, j) in d.unlinked_pairs() {
        let v = &(&d.linking_value(i, j) * &cd.sigma.sigma(d.g(i), d.g(j))) - &cd.pi_value(i, j);
        if !v.is_zero() {
            xx.insert((i, j), v);
        }
    }
    HCocycle { group: cd.sigma.clone(), xx }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_scalar;

    fn q() -> Vec<String> {
        vec!["q".into()]
    }

    fn eg1() -> RawDatum {
        RawDatum {
            params: q(),
            rank: 1,
            cartan: vec![vec![2, 0], vec![0, 2]],
            g: vec![vec![1], vec![1]],
            chi: vec![vec![vec![2]], vec![vec![-2]]],
            linking: vec![(0, 1, parse_scalar("1/(q-q^-1)", &q()).unwrap())],
        }
    }

    fn ex2() -> RawDatum {
        RawDatum {
            params: q(),
            rank: 2,
            cartan: vec![vec![2, 0], vec![0, 2]],
            g: vec![vec![1, 0], vec![0, 1]],
            chi: vec![vec![vec![2], vec![-4]], vec![vec![4], vec![-2]]],
            linking: vec![],
        }
    }

    #[test]
    fn eg1_validates_with_linking() {
        let d = validate_datum(eg1(), Mode::Strict).unwrap();
        let b = d.braiding_matrix();
        assert_eq!(b[0][0], Monomial::from_exps(vec![2]));
        assert_eq!(b[1][1], Monomial::from_exps(vec![-2]));
        assert!(b[0][1].mul(&b[1][0]).unwrap().is_one());
        assert_eq!(d.linking().len(), 1);
    }

    #[test]
    fn missing_character_is_reported() {
        let mut r = eg1();
        r.chi.pop();
        assert_eq!(validate_datum(r, Mode::Strict).unwrap_err().to_string(), "character count is 1, expected 2");
    }

    #[test]
    fn linking_constraint_modes() {
        let mut r = ex2();
        r.linking.push((0, 1, RF::one()));
        assert!(matches!(validate_datum(r.clone(), Mode::Strict), Err(DatumError::LinkingConstraint { .. })));
        let d = validate_datum(r, Mode::Permissive).unwrap();
        assert_eq!(d.warnings().len(), 1);
    }

    #[test]
    fn braiding_condition_checked() {
        let mut r = ex2();
        r.chi[1][0] = vec![3];
        assert!(matches!(validate_datum(r, Mode::Strict), Err(DatumError::Braiding { i: 0, j: 1, .. })));
    }

    #[test]
    fn ratio_values() {
        let s = CocycleData::from_pairs(2, 1, &[(1, 0, vec![3])]).unwrap();
        let h = GroupElement(vec![2, 2]);
        assert_eq!(s.ratio(&h, &GroupElement::basis(2, 0)), Monomial::from_exps(vec![6]));
        assert_eq!(s.ratio(&h, &GroupElement::basis(2, 1)), Monomial::from_exps(vec![-6]));
        assert!(s.ratio(&h, &h).is_one());
        let sig = add_exps(&s.sigma_exps(&h, &GroupElement(vec![1, 0])), &scale_exps(&s.sigma_exps(&GroupElement(vec![1, 0]), &h), -1));
        assert_eq!(sig, vec![6]);
    }

    #[test]
    fn deformation_of_second_example() {
        let d = validate_datum(ex2(), Mode::Strict).unwrap();
        let s = CocycleData::from_pairs(2, 1, &[(1, 0, vec![3])]).unwrap();
        let def = deform_datum(&d, &s);
        assert_eq!(def.chi[0].on_basis(1), &[-1]);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(add_exps(&def.q[i][j], &def.q[j][i]), add_exps(&d.q_exps(i, j), &d.q_exps(j, i)));
            }
        }
        let back = deform_datum(&d, &s.inverse());
        let again: Vec<_> = (0..2).map(|i| back.chi[i].mul(&def.chi[i]).unwrap()).collect();
        for i in 0..2 {
            assert_eq!(again[i], d.chi(i).pow(2));
        }
    }

    #[test]
    fn tau_values() {
        let d = validate_datum(eg1(), Mode::Strict).unwrap();
        let cd = CleftDatum::new(d.clone(), CocycleData::trivial(1, 1), BTreeMap::new()).unwrap();
        let t = tau_from_cleft(&cd);
        assert_eq!(t.xx_value(0, 1), d.linking_value(0, 1));
        assert!(t.xx_value(1, 0).is_zero());

        let d2 = validate_datum(ex2(), Mode::Strict).unwrap();
        let s = CocycleData::from_pairs(2, 1, &[(1, 0, vec![3])]).unwrap();
        assert!(CleftDatum::new(d2, s, BTreeMap::from([((0, 1), RF::one())])).is_err());
    }

    #[test]
    fn normalization_keeps_ratio() {
        let d = validate_datum(eg1(), Mode::Strict).unwrap();
        let s = CocycleData::trivial(1, 1);
        let f = Coboundary { linear: vec![vec![1]], quadratic: BTreeMap::from([((0, 0), vec![2])]) };
        let pi = BTreeMap::from([((0, 1), RF::one())]);
        let (s2, pi2) = normalize_pair(&d, &s, &pi, &f);
        assert_eq!(s2.ratio_lattice(), s.ratio_lattice());
        // f(g) = q^3, so pi' = q^-6
        assert_eq!(pi2[&(0, 1)], RF::from_exps(&[-6]));
        // sigma'(g, g) = f(g)^-2 f(g^2) = q^-6 q^(2 + 8) = q^4
        assert_eq!(s2.sigma_exps(d.g(0), d.g(0)), vec![4]);
    }

    #[test]
    fn root_data() {
        let d = validate_datum(eg1(), Mode::Strict).unwrap();
        let (g, c) = d.root_group_and_char(&[1, 1]);
        assert_eq!(g, GroupElement(vec![2]));
        assert!(c.is_trivial());
    }
}
