use super::{agree, certified, generic_route, push_char_rows, CyError, CyReport, ObjectKind, Verdict};
use crate::algebra::cogroupoid::{Cogroupoid, HBasis, HVec};
use crate::algebra::{build_udlambda, inner_conjugation, GradedEndomorphism};
use crate::datum::GenericDatum;
use crate::lattice::{solve_lattice, Character, GroupElement, LatticeAnswer, LatticeSystem};
use crate::scalars::RF;

/// Left homological integral of `U(D, lambda)`: a character on the group, zero on every `x_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralCharacter {
    pub group: Character,
    pub x: Vec<RF>,
    pub gldim: usize,
}

impl IntegralCharacter {
    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial() && self.x.iter().all(RF::is_zero)
    }
}

/// `zeta = prod of chi_beta over the positive roots`, global dimension `p + s`.
pub fn integral_character(d: &GenericDatum) -> IntegralCharacter {
    let roots = d.roots();
    let chars: Vec<Character> = roots.roots.iter().map(|b| d.root_group_and_char(b).1).collect();
    let group = Character::product(chars.iter(), d.rank(), d.param_count()).expect("validated shapes");
    IntegralCharacter { group, x: vec![RF::zero(); d.theta()], gldim: roots.count() + d.rank() }
}

/// `x_k -> q_kk x_k`, `g -> zeta(g) g`, certified on the presentation.
pub fn nakayama_hopf(d: &GenericDatum) -> Result<GradedEndomorphism, CyError> {
    let mu = hopf_map(d, &integral_character(d).group);
    certified(&build_udlambda(d)?, &mu, "Nakayama map of the Hopf algebra")?;
    Ok(mu)
}

fn hopf_map(d: &GenericDatum, zeta: &Character) -> GradedEndomorphism {
    GradedEndomorphism { u: Vec::new(), x: (0..d.theta()).map(|k| RF::from_exps(&d.q_exps(k, k))).collect(), group: zeta.clone() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltNakayama {
    pub nu: GradedEndomorphism,
    /// `G = sum of g_beta`; `nu = Ad(G^-1) mu` is checked on normal forms.
    pub conjugator: GroupElement,
    pub agrees: bool,
}

/// `nu(x_k) = prod over positive roots other than alpha_k of chi_beta(g_k)`, `nu(g) = zeta(g) g`.
pub fn nakayama_hopf_alt(d: &GenericDatum) -> Result<AltNakayama, CyError> {
    let roots = d.roots();
    let data: Vec<(GroupElement, Character)> = roots.roots.iter().map(|b| d.root_group_and_char(b)).collect();
    let zeta = integral_character(d).group;
    let x = (0..d.theta())
        .map(|k| {
            let mut e = vec![0; d.param_count()];
            for (i, (_, c)) in data.iter().enumerate() {
                if i != roots.simple_index[k] {
                    e = crate::datum::add_exps(&e, &c.eval_exps(d.g(k)).expect("shape"));
                }
            }
            RF::from_exps(&e)
        })
        .collect();
    let nu = GradedEndomorphism { u: Vec::new(), x, group: zeta.clone() };
    let conjugator = data.iter().fold(GroupElement::identity(d.rank()), |acc, (g, _)| acc.add(g));
    let p = build_udlambda(d)?;
    let mu = hopf_map(d, &zeta);
    let agrees = inner_conjugation(&p, &conjugator.neg())?.compose(&mu) == nu;
    Ok(AltNakayama { nu, conjugator, agrees })
}

/// CY iff `zeta` is trivial and some `h` has `chi_k(h) = q_kk` for every `k`.
pub fn decide_cy_hopf(d: &GenericDatum) -> Result<CyReport, CyError> {
    let zeta = integral_character(d);
    let p = build_udlambda(d)?;
    let mu = hopf_map(d, &zeta.group);
    let certification = certified(&p, &mu, "Nakayama map of the Hopf algebra")?;
    let mut checks = Vec::new();

    let closed = if !zeta.group.is_trivial() {
        Err(format!("the integral character is not the counit: {}", render_char(&zeta.group, d.params())))
    } else {
        let mut sys = LatticeSystem::new(d.rank());
        for k in 0..d.theta() {
            push_char_rows(&mut sys, d.chi(k), &d.q_exps(k, k), &format!("chi_{}(h) = q_{}{}", k + 1, k + 1, k + 1))?;
        }
        match solve_lattice(&sys)? {
            LatticeAnswer::Feasible { witness, .. } => Ok(witness),
            LatticeAnswer::Infeasible { .. } => Err("the square of the antipode is not inner".to_string()),
        }
    };
    let (system, mut verdict) = generic_route(&p, &mu, &mut checks)?;
    agree(&closed, &verdict, &system, &mut checks)?;
    if let (Err(reason), Verdict::NotCy(o)) = (&closed, &mut verdict) {
        o.reason = reason.clone();
    }
    Ok(CyReport {
        object: ObjectKind::Hopf,
        presentation: p,
        nakayama: mu,
        certification,
        system,
        verdict,
        checks,
        provenance: vec![
            format!("integral character: product of chi_beta over {} positive roots, global dimension {}", d.roots().count(), zeta.gldim),
            "Nakayama map: x_k -> q_kk x_k, g -> zeta(g) g".into(),
            "CY criterion: zeta = counit and S^2 inner, i.e. chi_k(h) = q_kk for all k".into(),
            "homological smoothness is assumed from the AS-regularity of the family".into(),
        ],
    })
}

pub(crate) fn render_char(c: &Character, names: &[String]) -> String {
    let parts: Vec<String> = (0..c.rank()).map(|j| format!("y{} -> {}", j + 1, RF::from_exps(c.on_basis(j)).render(names))).collect();
    parts.join(", ")
}

fn char_value(c: &Character, b: &HBasis) -> RF {
    if b.x.is_some() {
        RF::zero()
    } else {
        RF::from_exps(&c.eval_exps(&b.g).expect("shape"))
    }
}

/// Coefficient of `b` in `v`, provided `v` is a multiple of `b`.
pub(crate) fn diagonal_scalar(v: &HVec, b: &HBasis) -> Result<RF, CyError> {
    match v.len() {
        0 => Ok(RF::zero()),
        1 if v.contains_key(b) => Ok(v[b].clone()),
        _ => Err(CyError::Unsupported(format!("image of {b:?} is not a multiple of it"))),
    }
}

pub(crate) fn on_generators(d: &GenericDatum, f: impl Fn(&HBasis) -> Result<HVec, CyError>) -> Result<GradedEndomorphism, CyError> {
    let (s, m) = (d.rank(), d.param_count());
    let mut rows = Vec::new();
    for j in 0..s {
        let b = HBasis::group(GroupElement::basis(s, j));
        let c = diagonal_scalar(&f(&b)?, &b)?;
        rows.push(c.as_unit_exps(m).ok_or_else(|| CyError::Unsupported("group scalar is not a monomial".into()))?);
    }
    let x = (0..d.theta())
        .map(|k| {
            let b = HBasis::skew(GroupElement::identity(s), k);
            diagonal_scalar(&f(&b)?, &b)
        })
        .collect::<Result<_, _>>()?;
    Ok(GradedEndomorphism { u: Vec::new(), x, group: Character::new(rows, m)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `[xi]^l(h) = xi(h_1) h_2` or `[xi]^r(h) = h_1 xi(h_2)` for `xi` vanishing on skew-primitives.
pub fn winding(d: &GenericDatum, xi: &Character, side: Side) -> Result<GradedEndomorphism, CyError> {
    let h = Cogroupoid::new(d);
    on_generators(d, |b| {
        let mut out = HVec::new();
        for t in h.coproduct(b, 2) {
            let (c, kept) = match side {
                Side::Left => (char_value(xi, &t[0]), &t[1]),
                Side::Right => (char_value(xi, &t[1]), &t[0]),
            };
            if !c.is_zero() {
                accumulate(&mut out, kept.clone(), c);
            }
        }
        Ok(out)
    })
}

fn accumulate(v: &mut HVec, b: HBasis, c: RF) {
    let slot = v.entry(b.clone()).or_insert_with(RF::zero);
    *slot = &*slot + &c;
    if slot.is_zero() {
        v.remove(&b);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kk1Nakayama {
    pub nu: GradedEndomorphism,
    /// Right integral `eta = xi o S` on the group.
    pub eta: Character,
    /// `xi = counit o nu` on every generator.
    pub counit_recovers_xi: bool,
}

/// `nu(h) = xi(h_1) S^2(h_2)`.
pub fn kk1_nakayama(d: &GenericDatum, xi: &Character) -> Result<Kk1Nakayama, CyError> {
    let h = Cogroupoid::new(d);
    let image = |b: &HBasis| -> HVec {
        let mut out = HVec::new();
        for t in h.coproduct(b, 2) {
            let c = char_value(xi, &t[0]);
            if !c.is_zero() {
                let (c2, b2) = h.antipode_squared(&t[1]);
                accumulate(&mut out, b2, &c * &c2);
            }
        }
        out
    };
    let nu = on_generators(d, |b| Ok(image(b)))?;
    let s = d.rank();
    let mut gens: Vec<HBasis> = (0..s).map(|j| HBasis::group(GroupElement::basis(s, j))).collect();
    gens.extend((0..d.theta()).map(|k| HBasis::skew(GroupElement::identity(s), k)));
    let counit_recovers_xi = gens.iter().all(|b| {
        let e = image(b).iter().fold(RF::zero(), |acc, (bb, c)| &acc + &(c * &h.counit(bb)));
        e == char_value(xi, b)
    });
    Ok(Kk1Nakayama { nu, eta: xi.inv(), counit_recovers_xi })
}
