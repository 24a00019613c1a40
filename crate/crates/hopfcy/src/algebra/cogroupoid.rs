//! Structure maps of the cocycle cogroupoid of `U(D, lambda)` on elements of
//! x-degree at most one.
//!
//! `H(sigma, tau)` is `H` with `h . k = sigma(h_1, k_1) h_2 k_2 tau^-1(h_3, k_3)`;
//! `S_{sigma,tau}(h) = sigma(h_1, S h_2) S(h_3) tau^-1(S h_4, h_5)` and its inverse
//! `sigma^-1(h_5, S^-1 h_4) S^-1(h_3) tau(S^-1 h_2, h_1)`.

use super::AlgebraError;
use crate::datum::{GenericDatum, HCocycle};
use crate::lattice::{Character, GroupElement};
use crate::scalars::RF;
use std::collections::BTreeMap;

/// The basis vector `g` or `g x_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HBasis {
    pub g: GroupElement,
    pub x: Option<usize>,
}

impl HBasis {
    pub fn group(g: GroupElement) -> Self {
        Self { g, x: None }
    }

    pub fn skew(g: GroupElement, k: usize) -> Self {
        Self { g, x: Some(k) }
    }
}

pub type HVec = BTreeMap<HBasis, RF>;

pub fn hvec(b: HBasis) -> HVec {
    BTreeMap::from([(b, RF::one())])
}

fn push(v: &mut HVec, b: HBasis, c: RF) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(b.clone()).or_insert_with(RF::zero);
    *slot = &*slot + &c;
    if slot.is_zero() {
        v.remove(&b);
    }
}

pub struct Cogroupoid<'a> {
    d: &'a GenericDatum,
}

impl<'a> Cogroupoid<'a> {
    pub fn new(d: &'a GenericDatum) -> Self {
        Self { d }
    }

    fn chi(&self, k: usize, g: &GroupElement) -> RF {
        RF::from_exps(&self.d.chi(k).eval_exps(g).expect("shape"))
    }

    fn unsupported(what: &str) -> AlgebraError {
        AlgebraError::Unsupported(format!("{what} leaves x-degree at most one"))
    }

    /// Product in `H` of two basis vectors of total x-degree at most one.
    pub fn mul(&self, a: &HBasis, b: &HBasis) -> Result<(RF, HBasis), AlgebraError> {
        let g = a.g.add(&b.g);
        match (a.x, b.x) {
            (None, None) => Ok((RF::one(), HBasis::group(g))),
            (None, Some(k)) => Ok((RF::one(), HBasis::skew(g, k))),
            // x_k h = chi_k(h)^-1 h x_k
            (Some(k), None) => Ok((self.chi(k, &b.g).inv().expect("monomial"), HBasis::skew(g, k))),
            (Some(_), Some(_)) => Err(Self::unsupported("product")),
        }
    }

    pub fn counit(&self, b: &HBasis) -> RF {
        if b.x.is_none() {
            RF::one()
        } else {
            RF::zero()
        }
    }

    /// `S(g) = g^-1`, `S(x_k) = -g_k^-1 x_k`, extended anti-multiplicatively.
    pub fn antipode(&self, b: &HBasis) -> (RF, HBasis) {
        match b.x {
            None => (RF::one(), HBasis::group(b.g.neg())),
            Some(k) => {
                let (c, r) = self.mul(&HBasis::skew(self.d.g(k).neg(), k), &HBasis::group(b.g.neg())).expect("degree one");
                (-c, r)
            }
        }
    }

    /// `S^-1(g) = g^-1`, `S^-1(x_k) = -x_k g_k^-1`.
    pub fn antipode_inv(&self, b: &HBasis) -> (RF, HBasis) {
        match b.x {
            None => (RF::one(), HBasis::group(b.g.neg())),
            Some(k) => {
                let right = self.d.g(k).neg().sub(&b.g);
                let (c, r) = self.mul(&HBasis::skew(GroupElement::identity(self.d.rank()), k), &HBasis::group(right)).expect("degree one");
                (-c, r)
            }
        }
    }

    /// Iterated coproduct into `n` factors: `Delta(g x_k) = g x_k (x) g + g g_k (x) g x_k`.
    pub fn coproduct(&self, b: &HBasis, n: usize) -> Vec<Vec<HBasis>> {
        match b.x {
            None => vec![vec![b.clone(); n]],
            Some(k) => {
                let shifted = HBasis::group(b.g.add(self.d.g(k)));
                let plain = HBasis::group(b.g.clone());
                (0..n)
                    .map(|p| {
                        let mut t = vec![shifted.clone(); p];
                        t.push(b.clone());
                        t.extend(std::iter::repeat_n(plain.clone(), n - p - 1));
                        t
                    })
                    .collect()
            }
        }
    }

    /// Cocycle value on a pair of basis vectors.
    pub fn eval(&self, c: &HCocycle, a: &HBasis, b: &HBasis) -> Result<RF, AlgebraError> {
        match (a.x, b.x) {
            (None, None) => Ok(c.group.sigma(&a.g, &b.g)),
            (Some(_), None) | (None, Some(_)) => Ok(RF::zero()),
            (Some(i), Some(j)) if a.g.is_identity() && b.g.is_identity() => Ok(c.xx_value(i, j)),
            _ => Err(Self::unsupported("cocycle evaluation")),
        }
    }

    /// Convolution inverse on a pair of basis vectors.
    pub fn eval_inv(&self, c: &HCocycle, a: &HBasis, b: &HBasis) -> Result<RF, AlgebraError> {
        match (a.x, b.x) {
            (None, None) => Ok(c.group.sigma(&a.g, &b.g).inv().expect("monomial")),
            (Some(_), None) | (None, Some(_)) => Ok(RF::zero()),
            (Some(i), Some(j)) if a.g.is_identity() && b.g.is_identity() => {
                let gg = c.group.sigma(self.d.g(i), self.d.g(j));
                Ok(-&c.xx_value(i, j).checked_div(&gg).expect("monomial"))
            }
            _ => Err(Self::unsupported("cocycle evaluation")),
        }
    }

    pub fn generalized_antipode(&self, sigma: &HCocycle, tau: &HCocycle, v: &HVec) -> Result<HVec, AlgebraError> {
        let mut out = HVec::new();
        for (b, c) in v {
            for t in self.coproduct(b, 5) {
                let (c2, s2) = self.antipode(&t[1]);
                let (c3, s3) = self.antipode(&t[2]);
                let (c4, s4) = self.antipode(&t[3]);
                let left = self.eval(sigma, &t[0], &s2)?;
                if left.is_zero() {
                    continue;
                }
                let right = self.eval_inv(tau, &s4, &t[4])?;
                let coeff = &(&(&(c * &left) * &c2) * &(&c3 * &c4)) * &right;
                push(&mut out, s3, coeff);
            }
        }
        Ok(out)
    }

    pub fn generalized_antipode_inv(&self, sigma: &HCocycle, tau: &HCocycle, v: &HVec) -> Result<HVec, AlgebraError> {
        let mut out = HVec::new();
        for (b, c) in v {
            for t in self.coproduct(b, 5) {
                let (c2, s2) = self.antipode_inv(&t[1]);
                let (c3, s3) = self.antipode_inv(&t[2]);
                let (c4, s4) = self.antipode_inv(&t[3]);
                let right = self.eval(tau, &s2, &t[0])?;
                if right.is_zero() {
                    continue;
                }
                let left = self.eval_inv(sigma, &t[4], &s4)?;
                let coeff = &(&(&(c * &left) * &c4) * &(&c3 * &c2)) * &right;
                push(&mut out, s3, coeff);
            }
        }
        Ok(out)
    }

    /// Product in `H(sigma, tau)`.
    pub fn twisted_mul(&self, sigma: &HCocycle, tau: &HCocycle, a: &HVec, b: &HVec) -> Result<HVec, AlgebraError> {
        let mut out = HVec::new();
        for (x, cx) in a {
            for (y, cy) in b {
                for s in self.coproduct(x, 3) {
                    for t in self.coproduct(y, 3) {
                        let l = self.eval(sigma, &s[0], &t[0])?;
                        if l.is_zero() {
                            continue;
                        }
                        let r = self.eval_inv(tau, &s[2], &t[2])?;
                        if r.is_zero() {
                            continue;
                        }
                        let (c, m) = self.mul(&s[1], &t[1])?;
                        push(&mut out, m, &(&(&(cx * cy) * &l) * &r) * &c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `x -> sum S^-1_{tau,1}(S^-1_{1,tau}(x_1)) xi(x_2)` with `xi` a character on the group
    /// part vanishing on skew-primitives.
    pub fn cleft_nakayama(&self, tau: &HCocycle, xi: &Character, v: &HVec) -> Result<HVec, AlgebraError> {
        let one = HCocycle::trivial(self.d.rank(), self.d.param_count());
        let mut out = HVec::new();
        for (b, c) in v {
            for t in self.coproduct(b, 2) {
                if t[1].x.is_some() {
                    continue;
                }
                let xv = RF::from_exps(&xi.eval_exps(&t[1].g).expect("shape"));
                let inner = self.generalized_antipode_inv(&one, tau, &hvec(t[0].clone()))?;
                for (bb, cc) in self.generalized_antipode_inv(tau, &one, &inner)? {
                    push(&mut out, bb, &(c * &cc) * &xv);
                }
            }
        }
        Ok(out)
    }

    /// `S^2` on a basis vector.
    pub fn antipode_squared(&self, b: &HBasis) -> (RF, HBasis) {
        let (c1, b1) = self.antipode(b);
        let (c2, b2) = self.antipode(&b1);
        (&c1 * &c2, b2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{validate_datum, CocycleData, Mode, RawDatum};
    use crate::expr::parse_scalar;

    fn eg1() -> GenericDatum {
        let q = vec!["q".to_string()];
        validate_datum(
            RawDatum {
                params: q.clone(),
                rank: 1,
                cartan: vec![vec![2, 0], vec![0, 2]],
                g: vec![vec![1], vec![1]],
                chi: vec![vec![vec![2]], vec![vec![-2]]],
                linking: vec![(0, 1, parse_scalar("1/(q-q^-1)", &q).unwrap())],
            },
            Mode::Strict,
        )
        .unwrap()
    }

    #[test]
    fn plain_antipode_on_skew_primitive() {
        let d = eg1();
        let h = Cogroupoid::new(&d);
        let one = HCocycle::trivial(1, 1);
        let x = hvec(HBasis::skew(GroupElement(vec![0]), 0));
        let s = h.generalized_antipode(&one, &one, &x).unwrap();
        assert_eq!(s, BTreeMap::from([(HBasis::skew(GroupElement(vec![-1]), 0), RF::from_int(-1))]));
        let (c, b) = h.antipode_squared(&HBasis::skew(GroupElement(vec![0]), 0));
        assert_eq!((c, b), (RF::from_exps(&[-2]), HBasis::skew(GroupElement(vec![0]), 0)));
    }

    #[test]
    fn inverse_undoes_antipode() {
        let d = eg1();
        let h = Cogroupoid::new(&d);
        let sigma =
            HCocycle { group: CocycleData::from_ratio(vec![vec![vec![0]]], 1).unwrap(), xx: BTreeMap::from([((0, 1), RF::from_int(3))]) };
        let tau = HCocycle::trivial(1, 1);
        for b in [HBasis::group(GroupElement(vec![2])), HBasis::skew(GroupElement(vec![-1]), 1)] {
            let v = hvec(b);
            let s = h.generalized_antipode(&sigma, &tau, &v).unwrap();
            assert_eq!(h.generalized_antipode_inv(&sigma, &tau, &s).unwrap(), v);
        }
    }

    #[test]
    fn hopf_nakayama_from_cleft_formula() {
        let d = eg1();
        let h = Cogroupoid::new(&d);
        let one = HCocycle::trivial(1, 1);
        let xi = Character::trivial(1, 1);
        let mu = h.cleft_nakayama(&one, &xi, &hvec(HBasis::skew(GroupElement(vec![0]), 0))).unwrap();
        assert_eq!(mu, BTreeMap::from([(HBasis::skew(GroupElement(vec![0]), 0), RF::from_exps(&[2]))]));
    }
}
