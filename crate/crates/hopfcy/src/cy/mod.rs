//! Nakayama automorphisms and Calabi-Yau decisions.
//!
//! An inner automorphism of the supported algebras is conjugation
//! `a -> hbar a hbar^-1` by a group-like, so every decision reduces to an integer
//! system in the exponents of `h`. Each decision is reached twice: once from the
//! closed-form conditions of the family and once from the generic system read
//! off the presentation, and the two verdicts must agree.

mod cleft;
mod crossed;
mod hopf;

pub use cleft::{decide_cy_cleft, nakayama_cleft, CleftNakayama};
pub use crossed::{
    decide_cy_crossed, homological_determinant, id_smash_antipode_square, nakayama_crossed, CrossedInput, CrossedNakayama, Hdet,
};
pub use hopf::{
    decide_cy_hopf, integral_character, kk1_nakayama, nakayama_hopf, nakayama_hopf_alt, winding, AltNakayama, IntegralCharacter,
    Kk1Nakayama, Side,
};

use crate::algebra::{certify_endomorphism, inner_conjugation, AlgebraError, Certification, GradedEndomorphism, Presentation};
use crate::datum::DatumError;
use crate::koszul::KoszulError;
use crate::lattice::{solve_lattice, Certificate, Character, GroupElement, LatticeAnswer, LatticeError, LatticeSystem};
use crate::scalars::RF;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectKind {
    Hopf,
    Cleft,
    Smash,
    Crossed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub ok: bool,
}

impl Check {
    pub(crate) fn new(label: impl Into<String>, ok: bool) -> Self {
        Self { label: label.into(), ok }
    }
}

/// Why no group-like conjugates to the Nakayama map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub reason: String,
    /// Present when the obstruction is an inconsistent integer system.
    pub certificate: Option<Certificate>,
    pub explanation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Cy { witness: GroupElement, kernel: Vec<GroupElement> },
    NotCy(Obstruction),
}

impl Verdict {
    pub fn is_cy(&self) -> bool {
        matches!(self, Self::Cy { .. })
    }

    pub fn witness(&self) -> Option<&GroupElement> {
        match self {
            Self::Cy { witness, .. } => Some(witness),
            Self::NotCy(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyReport {
    pub object: ObjectKind,
    pub presentation: Presentation,
    pub nakayama: GradedEndomorphism,
    pub certification: Certification,
    /// The system `Ad(hbar) = nakayama` read off the presentation.
    pub system: LatticeSystem,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub provenance: Vec<String>,
}

impl CyReport {
    pub fn is_cy(&self) -> bool {
        self.verdict.is_cy()
    }

    pub fn nakayama_on_generators(&self) -> Vec<(String, String)> {
        self.nakayama.describe(&self.presentation)
    }
}

/// Appends the rows `c(h) = target` for a character `c` read as a function of `h`.
pub(crate) fn push_char_rows(sys: &mut LatticeSystem, c: &Character, target: &[i64], label: &str) -> Result<(), LatticeError> {
    let m = c.params();
    for t in 0..m {
        let row = (0..c.rank()).map(|j| c.on_basis(j)[t]).collect();
        let l = if m == 1 { label.to_string() } else { format!("{label} [param {}]", t + 1) };
        sys.push(row, target[t], l)?;
    }
    Ok(())
}

/// Scalar as a parameter monomial with coefficient one, or the reason it is not.
pub(crate) fn unit_exps(c: &RF, m: usize, what: &str, names: &[String]) -> Result<Vec<i64>, String> {
    c.as_unit_exps(m).ok_or_else(|| format!("{what} is scaled by {}, which no conjugation by a group-like produces", c.render(names)))
}

/// Rows of `hbar a hbar^-1 = phi(a)` for every generator `a` of the presentation.
pub fn inner_system(p: &Presentation, phi: &GradedEndomorphism) -> Result<Result<LatticeSystem, String>, CyError> {
    let (s, m, names) = (p.rank(), p.params().len(), p.params());
    let mut sys = LatticeSystem::new(s);
    for i in 0..p.u_count() {
        let name = p.render_word(&[crate::algebra::Letter::U(i)]);
        let target = match unit_exps(&phi.u[i], m, &name, names) {
            Ok(t) => t,
            Err(e) => return Ok(Err(e)),
        };
        push_char_rows(&mut sys, &p.u_group[i], &target, &format!("h acting on {name}"))?;
    }
    for j in 0..s {
        let y = GroupElement::basis(s, j);
        // h -> sigma(h, y) / sigma(y, h) is a character in h
        let rows: Vec<Vec<i64>> = (0..s).map(|k| p.sigma().ratio_exps(&GroupElement::basis(s, k), &y)).collect();
        let c = Character::new(rows, m)?;
        push_char_rows(&mut sys, &c, phi.group.on_basis(j), &format!("ratio(h, y{})", j + 1))?;
    }
    for k in 0..p.x_count() {
        let name = format!("x{}", k + 1);
        let target = match unit_exps(&phi.x[k], m, &name, names) {
            Ok(t) => t,
            Err(e) => return Ok(Err(e)),
        };
        push_char_rows(&mut sys, p.chi_eff(k), &target, &format!("chi'_{}(h)", k + 1))?;
    }
    Ok(Ok(sys))
}

pub(crate) const SWEEP_RADIUS: i64 = 3;

/// Every `h` in the box `[-r, r]^s` fails the system; skipped above rank 5.
pub(crate) fn box_sweep(sys: &LatticeSystem, s: usize) -> bool {
    if s > 5 {
        return true;
    }
    let width = (2 * SWEEP_RADIUS + 1) as usize;
    (0..width.pow(s as u32)).all(|mut idx| {
        let h: Vec<i64> = (0..s)
            .map(|_| {
                let v = (idx % width) as i64 - SWEEP_RADIUS;
                idx /= width;
                v
            })
            .collect();
        !sys.is_solution(&GroupElement(h))
    })
}

/// Solves the generic system and runs the witness and certificate checks.
pub(crate) fn generic_route(
    p: &Presentation,
    phi: &GradedEndomorphism,
    checks: &mut Vec<Check>,
) -> Result<(LatticeSystem, Verdict), CyError> {
    let sys = match inner_system(p, phi)? {
        Ok(sys) => sys,
        Err(reason) => {
            let empty = LatticeSystem::new(p.rank());
            return Ok((empty, Verdict::NotCy(Obstruction { reason, certificate: None, explanation: None })));
        }
    };
    let verdict = match solve_lattice(&sys)? {
        LatticeAnswer::Feasible { witness, kernel } => {
            let conj = inner_conjugation(p, &witness)?;
            let ok = conj == *phi;
            checks.push(Check::new(format!("conjugation by {} equals the Nakayama map on all generators", witness.render("y")), ok));
            if !ok {
                return Err(CyError::Inconsistent(format!("witness {} does not conjugate to the Nakayama map", witness.render("y"))));
            }
            Verdict::Cy { witness, kernel }
        }
        LatticeAnswer::Infeasible { certificate } => {
            let verified = certificate.verify(&sys);
            let swept = box_sweep(&sys, p.rank());
            checks.push(Check::new("integer certificate verified", verified));
            checks.push(Check::new(format!("no h in the box of radius {SWEEP_RADIUS} solves the system"), swept));
            if !verified || !swept {
                return Err(CyError::Inconsistent("infeasibility certificate failed verification".into()));
            }
            let explanation = Some(certificate.describe(&sys));
            Verdict::NotCy(Obstruction {
                reason: "no group-like conjugates to the Nakayama map".into(),
                certificate: Some(certificate),
                explanation,
            })
        }
    };
    Ok((sys, verdict))
}

/// Whether `phi` is conjugation by a group-like, with the same checks as the CY decisions.
pub fn decide_inner(p: &Presentation, phi: &GradedEndomorphism) -> Result<(LatticeSystem, Verdict, Vec<Check>), CyError> {
    let mut checks = Vec::new();
    let (sys, v) = generic_route(p, phi, &mut checks)?;
    Ok((sys, v, checks))
}

/// Certification of a Nakayama map; a failure is an internal error.
pub(crate) fn certified(p: &Presentation, phi: &GradedEndomorphism, what: &str) -> Result<Certification, CyError> {
    let c = certify_endomorphism(p, phi)?;
    if !c.certified {
        return Err(CyError::Inconsistent(format!("{what} breaks the relation {}", c.failing_relation.clone().unwrap_or_default())));
    }
    Ok(c)
}

/// Both routes must reach the same verdict; a closed-form witness must solve the generic system.
pub(crate) fn agree(
    closed: &Result<GroupElement, String>,
    generic: &Verdict,
    sys: &LatticeSystem,
    checks: &mut Vec<Check>,
) -> Result<(), CyError> {
    let ok = match (closed, generic) {
        (Ok(w), Verdict::Cy { .. }) => sys.is_solution(w),
        (Err(_), Verdict::NotCy(_)) => true,
        _ => false,
    };
    checks.push(Check::new("closed-form conditions and generic conjugation system agree", ok));
    if ok {
        Ok(())
    } else {
        Err(CyError::Inconsistent(format!("closed-form route gives {closed:?}, generic route gives {generic:?}")))
    }
}
