//! Command-line front end: argument parsing, dispatch and reports.

pub mod catalog;
pub mod config;
mod regress;

pub use regress::{regress, RegressRow};

use crate::algebra::{build_cleft, build_udlambda, AlgebraError, GradedEndomorphism, Presentation};
use crate::cartan::{cartan_of_type, positive_roots, validate_cartan, CartanError};
use crate::cy::{self, CyError, CyReport};
use crate::datum::{deform_datum, Mode};
use crate::koszul::{frobenius_nakayama, koszulity_certificate, KoszulError};
use crate::lattice::Character;
use crate::scalars::RF;
use clap::{Parser, Subcommand, ValueEnum};
use config::{parse_file, ConfigError, ConfigFile, SessionConfig};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::time::Instant;
use thiserror::Error;

pub const SCHEMA: &str = "hopfcy-report/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown catalog entry @{0}")]
    UnknownEntry(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Cy(#[from] CyError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strict,
    Permissive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectArg {
    Hopf,
    Cleft,
    Smash,
    Crossed,
}

#[derive(Debug, Parser)]
#[command(name = "hopfcy", version, about = "Nakayama automorphisms and Calabi-Yau decisions, computed exactly")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Overrides the mode given in the input file.
    #[arg(long, value_enum, global = true)]
    pub mode: Option<ModeArg>,
    #[command(subcommand)]
    pub command: Command,
}

/// `INPUT` is a file path, or `@name` for an embedded input (see `catalog`).
#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Load and validate an input.
    Validate { input: String },
    /// Positive roots of a Cartan type or of the datum's matrix.
    Roots {
        input: Option<String>,
        #[arg(long)]
        cartan: Option<String>,
    },
    /// Deformed characters, braiding and admissible pi entries for the cocycle.
    Deform { input: String },
    /// Nakayama automorphism of the chosen object on generators.
    Nakayama {
        input: String,
        #[arg(long, value_enum)]
        object: ObjectArg,
    },
    /// Decides whether the chosen object is Calabi-Yau, with a witness or a certificate.
    IsCy {
        input: String,
        #[arg(long, value_enum)]
        object: ObjectArg,
    },
    /// Homological determinant of the action.
    Hdet { input: String },
    /// Exactness of the Koszul complex in each internal degree.
    KoszulCheck {
        input: String,
        #[arg(long, default_value_t = config::DEFAULT_KOSZUL_BOUND)]
        max_degree: usize,
    },
    /// Nakayama automorphism of the algebra from the Frobenius structure of its dual.
    FrobeniusNakayama { input: String },
    /// Runs the embedded regression suite.
    #[command(alias = "paper-regress")]
    Regress,
    /// Lists the embedded inputs.
    Catalog,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Validate { .. } => "validate",
            Self::Roots { .. } => "roots",
            Self::Deform { .. } => "deform",
            Self::Nakayama { .. } => "nakayama",
            Self::IsCy { .. } => "is-cy",
            Self::Hdet { .. } => "hdet",
            Self::KoszulCheck { .. } => "koszul-check",
            Self::FrobeniusNakayama { .. } => "frobenius-nakayama",
            Self::Regress => "regress",
            Self::Catalog => "catalog",
        }
    }

    fn input(&self) -> Option<&str> {
        match self {
            Self::Validate { input }
            | Self::Deform { input }
            | Self::Nakayama { input, .. }
            | Self::IsCy { input, .. }
            | Self::Hdet { input }
            | Self::KoszulCheck { input, .. }
            | Self::FrobeniusNakayama { input } => Some(input),
            Self::Roots { input, .. } => input.as_deref(),
            Self::Regress | Self::Catalog => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub source: Option<String>,
    pub input: Option<ConfigFile>,
    pub status: Status,
    pub summary: Vec<String>,
    pub results: Value,
    pub provenance: Vec<String>,
    pub timing_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Negative => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, if self.status == Status::Ok { "ok" } else { "negative" });
        for l in &self.summary {
            out.push_str(&format!("  {l}\n"));
        }
        if !self.provenance.is_empty() {
            out.push_str("provenance:\n");
            for p in &self.provenance {
                out.push_str(&format!("  - {p}\n"));
            }
        }
        out
    }
}

/// Reads a path or an `@name` catalog entry.
pub fn read_input(src: &str) -> Result<String, CliError> {
    match src.strip_prefix('@') {
        Some(name) => catalog::get(name).map(str::to_string).ok_or_else(|| CliError::UnknownEntry(name.into())),
        None => std::fs::read_to_string(src).map_err(|e| CliError::Io { path: src.into(), message: e.to_string() }),
    }
}

pub fn load(src: &str, mode: Option<ModeArg>) -> Result<(ConfigFile, SessionConfig), CliError> {
    let mut file = parse_file(&read_input(src)?)?;
    if let Some(m) = mode {
        file.mode = match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Permissive => Mode::Permissive,
        };
    }
    let session = SessionConfig::from_file(file.clone())?;
    Ok((file, session))
}

struct Outcome {
    status: Status,
    summary: Vec<String>,
    results: Value,
    provenance: Vec<String>,
}

impl Outcome {
    fn ok(summary: Vec<String>, results: Value) -> Self {
        Self { status: Status::Ok, summary, results, provenance: Vec::new() }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let cmd = &cli.command;
    let loaded = match (cmd.input(), cmd) {
        (Some(src), _) => Some(load(src, cli.mode)?),
        _ => None,
    };
    let session = loaded.as_ref().map(|(_, s)| s);
    let out = match cmd {
        Command::Validate { .. } => validate(session.expect("input"))?,
        Command::Roots { cartan, .. } => roots(session, cartan.as_deref())?,
        Command::Deform { .. } => deform(session.expect("input"))?,
        Command::Nakayama { object, .. } => nakayama(session.expect("input"), *object)?,
        Command::IsCy { object, .. } => is_cy(session.expect("input"), *object)?,
        Command::Hdet { .. } => hdet(session.expect("input"))?,
        Command::KoszulCheck { max_degree, .. } => koszul_check(session.expect("input"), *max_degree)?,
        Command::FrobeniusNakayama { .. } => frobenius(session.expect("input"))?,
        Command::Regress => regress_outcome(),
        Command::Catalog => catalog_outcome(),
    };
    Ok(Report {
        schema: SCHEMA.into(),
        command: cmd.name().into(),
        source: cmd.input().map(str::to_string),
        input: loaded.map(|(f, _)| f),
        status: out.status,
        summary: out.summary,
        results: out.results,
        provenance: out.provenance,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs a parsed command line and returns what to print and the exit code.
/// What the process prints and returns. Text-mode errors go to stderr; JSON errors stay on stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn execute(cli: &Cli) -> Rendered {
    match run(cli) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Text => r.to_text(),
                Format::Json => r.to_json() + "\n",
            };
            Rendered { stdout, stderr: String::new(), code: r.exit_code() }
        }
        Err(e) => match cli.format {
            Format::Text => Rendered { stdout: String::new(), stderr: format!("error: {e}\n"), code: 2 },
            Format::Json => {
                let v = json!({"schema": SCHEMA, "command": cli.command.name(), "error": e.to_string()});
                Rendered { stdout: serde_json::to_string_pretty(&v).expect("serializes") + "\n", stderr: String::new(), code: 2 }
            }
        },
    }
}

pub(crate) fn render_char(c: &Character, names: &[String]) -> String {
    (0..c.rank()).map(|j| format!("y{} -> {}", j + 1, RF::from_exps(c.on_basis(j)).render(names))).collect::<Vec<_>>().join(", ")
}

fn char_json(c: &Character, names: &[String]) -> Value {
    Value::Array((0..c.rank()).map(|j| json!([format!("y{}", j + 1), RF::from_exps(c.on_basis(j)).render(names)])).collect())
}

fn map_json(phi: &GradedEndomorphism, p: &Presentation) -> Value {
    Value::Array(phi.describe(p).into_iter().map(|(g, i)| json!([g, i])).collect())
}

fn map_lines(phi: &GradedEndomorphism, p: &Presentation) -> Vec<String> {
    phi.describe(p).into_iter().map(|(g, i)| format!("{g} -> {i}")).collect()
}

fn root_name(r: &[i64]) -> String {
    let parts: Vec<String> = r
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| if *c == 1 { format!("a{}", i + 1) } else { format!("{c}a{}", i + 1) })
        .collect();
    parts.join("+")
}

fn validate(s: &SessionConfig) -> Result<Outcome, CliError> {
    let mut summary = Vec::new();
    let mut results = serde_json::Map::new();
    if let Some(d) = &s.datum {
        summary.push(format!("datum: rank {}, {} simple roots, {} positive roots", d.rank(), d.theta(), d.roots().count()));
        for w in d.warnings() {
            summary.push(format!("warning: {w}"));
        }
        results.insert(
            "datum".into(),
            json!({
                "rank": d.rank(),
                "theta": d.theta(),
                "positive_roots": d.roots().count(),
                "components": d.cartan().components(),
                "warnings": d.warnings(),
            }),
        );
    }
    if s.sigma.is_some() {
        let cd = s.cleft()?;
        summary.push(format!("cocycle: {} pi entries", cd.pi.len()));
        results.insert("cocycle".into(), json!({ "pi_entries": cd.pi.len(), "skew_entries": s.skew.len() }));
    }
    if let Some(a) = &s.algebra {
        summary.push(format!("algebra: {} generators, {} relation(s) of degree {}", a.names.len(), a.relations.len(), a.degree));
        results.insert("algebra".into(), json!({ "generators": a.names, "relations": a.relations.len(), "degree": a.degree }));
    }
    if s.action.is_some() {
        s.crossed()?.presentation()?;
        summary.push("action: compatible with the relations".into());
        results.insert("action".into(), json!({ "compatible": true }));
    }
    Ok(Outcome::ok(summary, Value::Object(results)))
}

fn roots(s: Option<&SessionConfig>, cartan: Option<&str>) -> Result<Outcome, CliError> {
    let matrix = match (cartan, s) {
        (Some(name), _) => validate_cartan(cartan_of_type(name)?)?,
        (None, Some(s)) => s.datum()?.cartan().clone(),
        (None, None) => return Err(CliError::Usage("roots needs an input or --cartan".into())),
    };
    let rs = positive_roots(&matrix);
    let names: Vec<String> = rs.roots.iter().map(|r| root_name(r)).collect();
    let summary = vec![format!("{} positive roots: {}", rs.count(), names.join(", "))];
    Ok(Outcome::ok(summary, json!({ "cartan": matrix.entries(), "count": rs.count(), "roots": rs.roots, "names": names })))
}

fn deform(s: &SessionConfig) -> Result<Outcome, CliError> {
    let d = s.datum()?;
    let sigma = s.sigma.as_ref().ok_or(ConfigError::Missing("cocycle"))?;
    let def = deform_datum(d, sigma);
    let names = d.params();
    let mut summary = Vec::new();
    for (i, c) in def.chi.iter().enumerate() {
        summary.push(format!("chi^sigma_{}: {}", i + 1, render_char(c, names)));
    }
    let q: Vec<Vec<String>> = (0..d.theta()).map(|i| (0..d.theta()).map(|j| def.q_monomial(i, j).render(names)).collect()).collect();
    let admissible: Vec<[usize; 2]> = def.admissible.iter().map(|(i, j)| [i + 1, j + 1]).collect();
    summary.push(format!("pairs admitting pi: {admissible:?}"));
    let chars: Vec<Value> = def.chi.iter().map(|c| char_json(c, names)).collect();
    Ok(Outcome {
        provenance: vec!["chi^sigma_i(g) = sigma(g, g_i)/sigma(g_i, g) chi_i(g), q^sigma_ij = sigma(g_i, g_j)/sigma(g_j, g_i) q_ij".into()],
        ..Outcome::ok(summary, json!({ "chi": chars, "braiding": q, "admissible_pi": admissible }))
    })
}

fn crossed_input(s: &SessionConfig, object: ObjectArg) -> Result<cy::CrossedInput, CliError> {
    let input = s.crossed()?;
    match (object, input.is_smash()) {
        (ObjectArg::Smash, false) => Err(CliError::Usage("the cocycle is not trivial; use --object crossed".into())),
        (ObjectArg::Crossed, true) => Err(CliError::Usage("the cocycle is trivial; use --object smash".into())),
        _ => Ok(input),
    }
}

fn nakayama(s: &SessionConfig, object: ObjectArg) -> Result<Outcome, CliError> {
    match object {
        ObjectArg::Hopf => {
            let d = s.datum()?;
            let p = build_udlambda(d)?;
            let mu = cy::nakayama_hopf(d)?;
            let alt = cy::nakayama_hopf_alt(d)?;
            let zeta = cy::integral_character(d);
            let mut summary = map_lines(&mu, &p);
            summary.push(format!("integral character: {}", render_char(&zeta.group, d.params())));
            summary.push(format!("alternative form agrees after conjugation by {}: {}", alt.conjugator.render("y"), alt.agrees));
            Ok(Outcome {
                provenance: vec![
                    "zeta = product of chi_beta over the positive roots".into(),
                    "Nakayama map: x_k -> q_kk x_k, g -> zeta(g) g".into(),
                    "alternative: x_k -> prod over beta != alpha_k of chi_beta(g_k) x_k, equal up to Ad(G^-1)".into(),
                ],
                ..Outcome::ok(
                    summary,
                    json!({
                        "map": map_json(&mu, &p),
                        "integral_character": char_json(&zeta.group, d.params()),
                        "gldim": zeta.gldim,
                        "alternative": { "map": map_json(&alt.nu, &p), "conjugator": alt.conjugator, "agrees": alt.agrees },
                    }),
                )
            })
        }
        ObjectArg::Cleft => {
            let cd = s.cleft()?;
            let p = build_cleft(&cd)?;
            let nk = cy::nakayama_cleft(&cd)?;
            let mut summary = map_lines(&nk.map, &p);
            summary.push("closed form equals the antipode evaluation on all generators".into());
            Ok(Outcome {
                provenance: vec![
                    "Nakayama map: x_k -> q_kk x_k, gbar -> zeta(g) gbar".into(),
                    "cross-checked against x -> S^-1_{tau,1}(S^-1_{1,tau}(x_1)) zeta(x_2)".into(),
                ],
                ..Outcome::ok(summary, json!({ "map": map_json(&nk.map, &p), "antipode_route_agrees": true }))
            })
        }
        ObjectArg::Smash | ObjectArg::Crossed => {
            let input = crossed_input(s, object)?;
            let p = input.presentation()?;
            let nk = cy::nakayama_crossed(&input)?;
            let names = input.datum.params();
            let mut summary = map_lines(&nk.rho, &p);
            summary.push(format!("hdet: {}", render_char(&nk.hdet_group, names)));
            Ok(Outcome {
                provenance: vec![
                    format!("Nakayama map of A from the Frobenius structure of A^! (top degree {})", nk.algebra_nakayama.top_degree),
                    "rho(a # h) = mu(a) # hdet(h_1) S^-1_{sigma,1}(S^-1_{1,sigma}(h_2)) xi(h_3)".into(),
                ],
                ..Outcome::ok(
                    summary,
                    json!({
                        "map": map_json(&nk.rho, &p),
                        "hdet_group": char_json(&nk.hdet_group, names),
                        "hdet_x": nk.hdet_x.iter().map(|c| c.render(names)).collect::<Vec<_>>(),
                        "integral_character": char_json(&nk.xi, names),
                    }),
                )
            })
        }
    }
}

fn cy_outcome(r: CyReport) -> Outcome {
    let mut summary = Vec::new();
    match &r.verdict {
        cy::Verdict::Cy { witness, kernel } => {
            summary.push(format!("CY: yes, witness {}", witness.render("y")));
            if !kernel.is_empty() {
                let k: Vec<String> = kernel.iter().map(|g| g.render("y")).collect();
                summary.push(format!("witnesses form a coset of the lattice spanned by {}", k.join(", ")));
            }
        }
        cy::Verdict::NotCy(o) => {
            summary.push(format!("CY: no, {}", o.reason));
            if let Some(e) = &o.explanation {
                summary.push(format!("certificate: {e}"));
            }
        }
    }
    summary.extend(r.nakayama_on_generators().into_iter().map(|(g, i)| format!("nakayama: {g} -> {i}")));
    let results = json!({
        "object": r.object,
        "verdict": r.verdict,
        "nakayama": map_json(&r.nakayama, &r.presentation),
        "certification": r.certification,
        "system": r.system,
        "checks": r.checks,
    });
    Outcome { status: if r.is_cy() { Status::Ok } else { Status::Negative }, summary, results, provenance: r.provenance }
}

fn is_cy(s: &SessionConfig, object: ObjectArg) -> Result<Outcome, CliError> {
    let r = match object {
        ObjectArg::Hopf => cy::decide_cy_hopf(s.datum()?)?,
        ObjectArg::Cleft => cy::decide_cy_cleft(&s.cleft()?)?,
        ObjectArg::Smash | ObjectArg::Crossed => cy::decide_cy_crossed(&crossed_input(s, object)?)?,
    };
    Ok(cy_outcome(r))
}

fn hdet(s: &SessionConfig) -> Result<Outcome, CliError> {
    let input = s.crossed()?;
    input.presentation()?;
    let h = cy::homological_determinant(&input)?;
    let names = input.datum.params();
    let xs: Vec<String> = h.x.iter().map(|c| c.render(names)).collect();
    let mut summary = vec![format!("hdet on the group: {}", render_char(&h.group, names))];
    if !xs.is_empty() {
        summary.push(format!("hdet on x: {}", xs.join(", ")));
    }
    Ok(Outcome {
        provenance: vec!["hdet read off the action on the one-dimensional top of the Koszul dual".into()],
        ..Outcome::ok(
            summary,
            json!({ "group": char_json(&h.group, names), "x": xs, "trivial": h.group.is_trivial() && h.x.iter().all(RF::is_zero) }),
        )
    })
}

fn koszul_check(s: &SessionConfig, max_degree: usize) -> Result<Outcome, CliError> {
    let alg = s.koszul_algebra()?;
    let r = koszulity_certificate(&alg, max_degree)?;
    let mut summary = vec![format!("algebra dimensions {:?}, dual dimensions {:?}", r.algebra_dims, r.dual_dims)];
    for sl in &r.slices {
        summary.push(format!(
            "degree {}: exact {}, complex {}, d_l d_r = d_r d_l {}",
            sl.degree, sl.exact, sl.composes_to_zero, sl.lr_commute
        ));
    }
    for c in &r.dual_complex {
        summary.push(format!("{}: {}", c.label, c.ok));
    }
    let status = if r.koszul_up_to_bound { Status::Ok } else { Status::Negative };
    Ok(Outcome { status, summary, results: serde_json::to_value(&r).expect("serializes"), provenance: Vec::new() })
}

fn frobenius(s: &SessionConfig) -> Result<Outcome, CliError> {
    let alg = s.koszul_algebra()?;
    let a = s.algebra()?;
    let r = frobenius_nakayama(&alg, a.koszul_bound)?;
    if !r.routes_agree() {
        return Err(CyError::Inconsistent("normal-form and pairing routes disagree".into()).into());
    }
    let params = s.params();
    let mut summary = vec![format!("top degree of the dual: {}, dual dimensions {:?}", r.top_degree, r.dual_dims)];
    let diagonal =
        r.diagonal.as_ref().map(|d| d.iter().zip(&a.names).map(|(c, n)| format!("{n} -> ({})*{n}", c.render(params))).collect::<Vec<_>>());
    match &diagonal {
        Some(lines) => summary.extend(lines.iter().cloned()),
        None => summary.push("the Nakayama map is not diagonal on the generators".into()),
    }
    summary.push(format!("dual sequence composes to zero: {}", r.sequence_is_complex));
    let matrix: Vec<Vec<String>> = r.nakayama.iter().map(|row| row.iter().map(|c| c.render(params)).collect()).collect();
    Ok(Outcome {
        provenance: vec!["Nakayama map of A from the Frobenius structure of A^!, read off normal forms and off the pairing".into()],
        ..Outcome::ok(
            summary,
            json!({
                "top_degree": r.top_degree,
                "gldim": r.gldim,
                "dual_dims": r.dual_dims,
                "diagonal": diagonal,
                "matrix": matrix,
                "routes_agree": true,
                "sequence_is_complex": r.sequence_is_complex,
            }),
        )
    })
}

fn regress_outcome() -> Outcome {
    let rows = regress();
    let w = rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
    let mut summary: Vec<String> = rows
        .iter()
        .map(|r| format!("{} {:w$}  expected {} | computed {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.expected, r.computed))
        .collect();
    let failed = rows.iter().filter(|r| !r.pass).count();
    summary.push(format!("{} checks, {} failed", rows.len(), failed));
    Outcome {
        status: if failed == 0 { Status::Ok } else { Status::Negative },
        summary,
        results: serde_json::to_value(&rows).expect("serializes"),
        provenance: Vec::new(),
    }
}

fn catalog_outcome() -> Outcome {
    let mut summary = Vec::new();
    let mut entries = Vec::new();
    for (name, text) in catalog::ENTRIES {
        let about: Vec<&str> = text.lines().take_while(|l| l.starts_with('#')).map(|l| l.trim_start_matches('#').trim()).collect();
        summary.push(format!("@{name}: {}", about.join(" ")));
        entries.push(json!({ "name": name, "about": about.join(" ") }));
    }
    Outcome::ok(summary, Value::Array(entries))
}
