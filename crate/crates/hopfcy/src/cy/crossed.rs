use super::hopf::{diagonal_scalar, integral_character, render_char};
use super::{agree, certified, generic_route, push_char_rows, unit_exps, Check, CyError, CyReport, ObjectKind};
use crate::algebra::cogroupoid::{hvec, Cogroupoid, HBasis, HVec};
use crate::algebra::{build_crossed, build_twisted_hopf, DiagonalAction, GradedEndomorphism, Presentation, QuantumAffine};
use crate::datum::{deform_datum, GenericDatum, HCocycle};
use crate::koszul::{frobenius_nakayama, FrobeniusReport, NHomogeneous, TensorAction};
use crate::lattice::{solve_lattice, Character, GroupElement, LatticeAnswer, LatticeSystem};
use crate::scalars::RF;

/// A quantum affine space `A` with an `H^sigma`-module algebra structure, where
/// `H = U(D, lambda)` and `sigma` is a cocycle on `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedInput {
    pub algebra: QuantumAffine,
    pub action: DiagonalAction,
    pub datum: GenericDatum,
    pub cocycle: HCocycle,
    /// Degree bound when searching for the top of `A^!`.
    pub koszul_bound: usize,
}

impl CrossedInput {
    pub fn is_smash(&self) -> bool {
        self.cocycle.group.is_trivial_class() && self.cocycle.xx.values().all(RF::is_zero)
    }

    pub fn presentation(&self) -> Result<Presentation, CyError> {
        let h = build_twisted_hopf(&self.datum, &self.cocycle)?;
        Ok(build_crossed(&self.algebra, &self.action, &h)?)
    }

    fn koszul_algebra(&self) -> Result<NHomogeneous, CyError> {
        Ok(NHomogeneous::new(self.algebra.names.clone(), 2, &self.algebra.relations())?)
    }

    fn group_action(&self, g: &GroupElement) -> Vec<RF> {
        self.action.group.iter().map(|c| RF::from_exps(&c.eval_exps(g).expect("shape"))).collect()
    }

    fn x_action(&self, k: usize) -> Vec<Vec<RF>> {
        let n = self.algebra.len();
        self.action.x.get(k).cloned().unwrap_or_else(|| vec![vec![RF::zero(); n]; n])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedNakayama {
    pub rho: GradedEndomorphism,
    pub algebra_nakayama: FrobeniusReport,
    pub hdet_group: Character,
    pub hdet_x: Vec<RF>,
    pub xi: Character,
}

/// Homological determinant of the action, on the group basis and on each `x_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hdet {
    pub group: Character,
    pub x: Vec<RF>,
}

fn hdet_on(input: &CrossedInput, alg: &NHomogeneous, top: usize) -> Result<Hdet, CyError> {
    let d = &input.datum;
    let (s, m) = (d.rank(), d.param_count());
    let mut rows = Vec::new();
    for j in 0..s {
        let c = alg.hdet(&TensorAction::Group(input.group_action(&GroupElement::basis(s, j))), top)?;
        rows.push(
            c.as_unit_exps(m)
                .ok_or_else(|| CyError::Unsupported(format!("hdet(y{}) = {} is not a monomial", j + 1, c.render(d.params()))))?,
        );
    }
    let x = (0..d.theta())
        .map(|k| {
            let act = TensorAction::Skew { grouplike: input.group_action(d.g(k)), matrix: input.x_action(k) };
            alg.hdet(&act, top)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Hdet { group: Character::new(rows, m)?, x })
}

pub fn homological_determinant(input: &CrossedInput) -> Result<Hdet, CyError> {
    let alg = input.koszul_algebra()?;
    let top = alg.top_degree(input.koszul_bound)?;
    hdet_on(input, &alg, top)
}

/// `rho(a # h) = mu(a) # hdet(h_1) S^-1_{sigma,1}(S^-1_{1,sigma}(h_2)) xi(h_3)` on generators.
pub fn nakayama_crossed(input: &CrossedInput) -> Result<CrossedNakayama, CyError> {
    let d = &input.datum;
    let (s, m) = (d.rank(), d.param_count());
    let alg = input.koszul_algebra()?;
    let frob = frobenius_nakayama(&alg, input.koszul_bound)?;
    if !frob.routes_agree() {
        return Err(CyError::Inconsistent("the two Frobenius computations of A disagree".into()));
    }
    let mu_a = frob.diagonal.clone().ok_or_else(|| CyError::Unsupported("Nakayama map of A is not diagonal on the generators".into()))?;
    let Hdet { group: hdet_group, x: hdet_x } = hdet_on(input, &alg, frob.top_degree)?;
    let xi = integral_character(d).group;

    let h = Cogroupoid::new(d);
    let one = HCocycle::trivial(s, m);
    let sigma = &input.cocycle;
    let hdet_of = |b: &HBasis| -> Result<RF, CyError> {
        match b.x {
            None => Ok(RF::from_exps(&hdet_group.eval_exps(&b.g)?)),
            Some(k) if b.g.is_identity() => Ok(hdet_x[k].clone()),
            Some(_) => Err(CyError::Unsupported("hdet on g x_k with g nontrivial".into())),
        }
    };
    let xi_of = |b: &HBasis| if b.x.is_some() { RF::zero() } else { RF::from_exps(&xi.eval_exps(&b.g).expect("shape")) };
    let image = |b: &HBasis| -> Result<HVec, CyError> {
        let mut out = HVec::new();
        for t in h.coproduct(b, 3) {
            let c = &hdet_of(&t[0])? * &xi_of(&t[2]);
            if c.is_zero() {
                continue;
            }
            let inner = h.generalized_antipode_inv(&one, sigma, &hvec(t[1].clone()))?;
            for (bb, cc) in h.generalized_antipode_inv(sigma, &one, &inner)? {
                let slot = out.entry(bb.clone()).or_insert_with(RF::zero);
                *slot = &*slot + &(&c * &cc);
                if slot.is_zero() {
                    out.remove(&bb);
                }
            }
        }
        Ok(out)
    };
    let mut group_rows = Vec::new();
    for j in 0..s {
        let b = HBasis::group(GroupElement::basis(s, j));
        let c = diagonal_scalar(&image(&b)?, &b)?;
        group_rows.push(c.as_unit_exps(m).ok_or_else(|| CyError::Unsupported("rho on the group is not a monomial twist".into()))?);
    }
    let x = (0..d.theta())
        .map(|k| {
            let b = HBasis::skew(GroupElement::identity(s), k);
            diagonal_scalar(&image(&b)?, &b).map_err(|_| {
                CyError::Unsupported(format!(
                    "rho(x{}) is not a multiple of x{}: hdet(x{}) = {}",
                    k + 1,
                    k + 1,
                    k + 1,
                    hdet_x[k].render(d.params())
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rho = GradedEndomorphism { u: mu_a, x, group: Character::new(group_rows, m)? };

    // closed form: rho(gbar) = hdet(g) xi(g) gbar and rho(x_k) = hdet(g_k) q_kk x_k
    let closed = GradedEndomorphism {
        u: rho.u.clone(),
        x: (0..d.theta())
            .map(|k| &RF::from_exps(&hdet_group.eval_exps(d.g(k)).expect("shape")) * &RF::from_exps(&d.q_exps(k, k)))
            .collect(),
        group: hdet_group.mul(&xi)?,
    };
    if closed != rho {
        return Err(CyError::Inconsistent(format!("coproduct evaluation {rho:?} differs from the closed form {closed:?}")));
    }
    certified(&input.presentation()?, &rho, "Nakayama map of the crossed product")?;
    Ok(CrossedNakayama { rho, algebra_nakayama: frob, hdet_group, hdet_x, xi })
}

/// Smash case: `hdet = xi o S` and `mu # S^-2` inner.
fn smash_conditions(input: &CrossedInput, nk: &CrossedNakayama) -> Result<Result<GroupElement, String>, CyError> {
    let d = &input.datum;
    let names = d.params();
    let twist = nk.hdet_group.mul(&nk.xi)?;
    if !twist.is_trivial() || nk.hdet_x.iter().any(|c| !c.is_zero()) {
        return Ok(Err(format!("hdet differs from xi o S: hdet * xi = {}", render_char(&twist, names))));
    }
    let mut sys = LatticeSystem::new(d.rank());
    for (i, c) in input.action.group.iter().enumerate() {
        let target = match unit_exps(&nk.rho.u[i], d.param_count(), &input.algebra.names[i], names) {
            Ok(t) => t,
            Err(e) => return Ok(Err(e)),
        };
        push_char_rows(&mut sys, c, &target, &format!("h acting on {} = mu_A", input.algebra.names[i]))?;
    }
    for k in 0..d.theta() {
        push_char_rows(&mut sys, d.chi(k), &d.q_exps(k, k), &format!("chi_{}(h) = q_{}{}", k + 1, k + 1, k + 1))?;
    }
    Ok(match solve_lattice(&sys)? {
        LatticeAnswer::Feasible { witness, .. } => Ok(witness),
        LatticeAnswer::Infeasible { certificate } => Err(format!("mu # S^-2 is not inner: {}", certificate.describe(&sys))),
    })
}

/// Rows from the input data and the closed form of `rho`, without the presentation.
fn crossed_conditions(input: &CrossedInput, nk: &CrossedNakayama) -> Result<Result<GroupElement, String>, CyError> {
    let d = &input.datum;
    let (s, m, names) = (d.rank(), d.param_count(), d.params());
    let mut sys = LatticeSystem::new(s);
    for (i, c) in input.action.group.iter().enumerate() {
        let target = match unit_exps(&nk.rho.u[i], m, &input.algebra.names[i], names) {
            Ok(t) => t,
            Err(e) => return Ok(Err(e)),
        };
        push_char_rows(&mut sys, c, &target, &format!("h acting on {}", input.algebra.names[i]))?;
    }
    let twist = nk.hdet_group.mul(&nk.xi)?;
    for j in 0..s {
        let y = GroupElement::basis(s, j);
        let rows = (0..s).map(|k| input.cocycle.group.ratio_exps(&GroupElement::basis(s, k), &y)).collect();
        push_char_rows(&mut sys, &Character::new(rows, m)?, twist.on_basis(j), &format!("ratio(h, y{0}) = hdet(y{0}) xi(y{0})", j + 1))?;
    }
    let deformed = deform_datum(d, &input.cocycle.group).chi;
    for (k, c) in deformed.iter().enumerate() {
        let target = crate::datum::add_exps(&nk.hdet_group.eval_exps(d.g(k))?, &d.q_exps(k, k));
        push_char_rows(&mut sys, c, &target, &format!("chi^sigma_{0}(h) = hdet(g_{0}) q_{0}{0}", k + 1))?;
    }
    Ok(match solve_lattice(&sys)? {
        LatticeAnswer::Feasible { witness, .. } => Ok(witness),
        LatticeAnswer::Infeasible { certificate } => Err(certificate.describe(&sys)),
    })
}

pub fn decide_cy_crossed(input: &CrossedInput) -> Result<CyReport, CyError> {
    let nk = nakayama_crossed(input)?;
    let p = input.presentation()?;
    let certification = certified(&p, &nk.rho, "Nakayama map of the crossed product")?;
    let mut checks = vec![
        Check::new("Frobenius routes for the Nakayama map of A agree", true),
        Check::new("coproduct evaluation of rho equals its closed form", true),
    ];
    let smash = input.is_smash();
    let closed = if smash { smash_conditions(input, &nk)? } else { crossed_conditions(input, &nk)? };
    let (system, mut verdict) = generic_route(&p, &nk.rho, &mut checks)?;
    agree(&closed, &verdict, &system, &mut checks)?;
    if let (Err(reason), super::Verdict::NotCy(o)) = (&closed, &mut verdict) {
        if smash {
            o.reason = reason.clone();
        }
    }
    let mut provenance = vec![
        format!("Nakayama map of A from the Frobenius structure of A^! (top degree {})", nk.algebra_nakayama.top_degree),
        "hdet read off the action on the one-dimensional top of the Koszul dual".into(),
        "rho(a # h) = mu(a) # hdet(h_1) S^-1_{sigma,1}(S^-1_{1,sigma}(h_2)) xi(h_3), evaluated on generators".into(),
    ];
    provenance.push(if smash {
        "CY criterion for smash products: hdet = xi o S and mu # S^-2 inner".into()
    } else {
        "CY criterion: rho equals conjugation by a group-like".into()
    });
    Ok(CyReport {
        object: if smash { ObjectKind::Smash } else { ObjectKind::Crossed },
        presentation: p,
        nakayama: nk.rho,
        certification,
        system,
        verdict,
        checks,
        provenance,
    })
}

/// `id # S^2` on the crossed product: identity on `A` and the group, `x_k -> q_kk^-1 x_k`.
pub fn id_smash_antipode_square(input: &CrossedInput) -> GradedEndomorphism {
    let d = &input.datum;
    let h = Cogroupoid::new(d);
    GradedEndomorphism {
        u: vec![RF::one(); input.algebra.len()],
        x: (0..d.theta()).map(|k| h.antipode_squared(&HBasis::skew(GroupElement::identity(d.rank()), k)).0).collect(),
        group: Character::trivial(d.rank(), d.param_count()),
    }
}
