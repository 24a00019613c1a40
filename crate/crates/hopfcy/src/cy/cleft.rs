use super::hopf::{integral_character, nakayama_hopf_alt, on_generators};
use super::{agree, certified, generic_route, push_char_rows, CyError, CyReport, ObjectKind};
use crate::algebra::cogroupoid::{hvec, Cogroupoid};
use crate::algebra::{build_cleft, GradedEndomorphism};
use crate::datum::{scale_exps, tau_from_cleft, CleftDatum};
use crate::lattice::{solve_lattice, Character, GroupElement, LatticeAnswer, LatticeSystem};
use crate::scalars::RF;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleftNakayama {
    /// `x_k -> q_kk x_k`, `gbar -> zeta(g) gbar`.
    pub map: GradedEndomorphism,
    /// `x -> S^-1_{tau,1}(S^-1_{1,tau}(x_1)) zeta(x_2)` evaluated on the cogroupoid.
    pub from_antipodes: GradedEndomorphism,
}

pub fn nakayama_cleft(cd: &CleftDatum) -> Result<CleftNakayama, CyError> {
    let d = &cd.base;
    let zeta = integral_character(d).group;
    let map =
        GradedEndomorphism { u: Vec::new(), x: (0..d.theta()).map(|k| RF::from_exps(&d.q_exps(k, k))).collect(), group: zeta.clone() };
    let h = Cogroupoid::new(d);
    let tau = tau_from_cleft(cd);
    let from_antipodes = on_generators(d, |b| Ok(h.cleft_nakayama(&tau, &zeta, &hvec(b.clone()))?))?;
    if from_antipodes != map {
        return Err(CyError::Inconsistent(format!(
            "closed-form Nakayama map {map:?} differs from the antipode evaluation {from_antipodes:?}"
        )));
    }
    certified(&build_cleft(cd)?, &map, "Nakayama map of the cleft object")?;
    Ok(CleftNakayama { map, from_antipodes })
}

/// Rows `ratio(h, y_j) = zeta(y_j)` and `chi_k(h) prod_{beta != alpha_k} chi_beta(g_k) = 1`.
fn closed_system(cd: &CleftDatum, zeta: &Character) -> Result<LatticeSystem, CyError> {
    let d = &cd.base;
    let (s, m) = (d.rank(), d.param_count());
    let mut sys = LatticeSystem::new(s);
    for j in 0..s {
        let y = GroupElement::basis(s, j);
        let rows = (0..s).map(|k| cd.sigma.ratio_exps(&GroupElement::basis(s, k), &y)).collect();
        push_char_rows(
            &mut sys,
            &Character::new(rows, m)?,
            zeta.on_basis(j),
            &format!("sigma(h, y{0})/sigma(y{0}, h) = zeta(y{0})", j + 1),
        )?;
    }
    let nu = nakayama_hopf_alt(d)?.nu;
    for k in 0..d.theta() {
        let other = nu.x[k].as_unit_exps(m).expect("character values are monomials");
        push_char_rows(
            &mut sys,
            d.chi(k),
            &scale_exps(&other, -1),
            &format!("chi_{}(h) prod_(beta != alpha_{}) chi_beta(g_{}) = 1", k + 1, k + 1, k + 1),
        )?;
    }
    Ok(sys)
}

pub fn decide_cy_cleft(cd: &CleftDatum) -> Result<CyReport, CyError> {
    let nk = nakayama_cleft(cd)?;
    let p = build_cleft(cd)?;
    let certification = certified(&p, &nk.map, "Nakayama map of the cleft object")?;
    let mut checks = vec![super::Check::new("closed form equals the antipode evaluation on all generators", true)];
    let zeta = nk.map.group.clone();
    let closed_sys = closed_system(cd, &zeta)?;
    let closed = match solve_lattice(&closed_sys)? {
        LatticeAnswer::Feasible { witness, .. } => Ok(witness),
        LatticeAnswer::Infeasible { certificate } => Err(certificate.describe(&closed_sys)),
    };
    let (system, verdict) = generic_route(&p, &nk.map, &mut checks)?;
    agree(&closed, &verdict, &system, &mut checks)?;
    Ok(CyReport {
        object: ObjectKind::Cleft,
        presentation: p,
        nakayama: nk.map,
        certification,
        system,
        verdict,
        checks,
        provenance: vec![
            "Nakayama map: x_k -> q_kk x_k, gbar -> zeta(g) gbar".into(),
            "cross-checked against x -> S^-1_{tau,1}(S^-1_{1,tau}(x_1)) zeta(x_2) with tau(x_i, x_j) = lambda_ij sigma(g_i, g_j) - pi_ij"
                .into(),
            "CY criterion: sigma(h, g)/sigma(g, h) = zeta(g) and chi_k(h) prod_(beta != alpha_k) chi_beta(g_k) = 1".into(),
        ],
    })
}
