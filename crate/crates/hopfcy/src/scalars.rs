//! Exact coefficients: Laurent monomials and rational functions over `Q` in a
//! fixed list of independent parameters.
//!
//! Parameters are treated as multiplicatively independent transcendentals, so a
//! monomial equals one exactly when its coefficient is one and every exponent
//! vanishes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("parameter list mismatch: expected {expected} exponents, found {found}")]
    ParamMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid parameter list: {0}")]
    BadParams(String),
}

/// Ordered, duplicate-free parameter names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamList {
    names: Vec<String>,
}

impl ParamList {
    pub fn new<I, S>(names: I) -> Result<Self, ScalarError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(ScalarError::BadParams("at least one parameter is required".into()));
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            let valid =
                n.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(ScalarError::BadParams(format!("'{n}' is not an identifier")));
            }
            if !seen.insert(n.clone()) {
                return Err(ScalarError::BadParams(format!("duplicate parameter '{n}'")));
            }
        }
        Ok(Self { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn trim(mut e: Vec<i64>) -> Vec<i64> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    let v = (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect();
    trim(v)
}

/// `coeff * prod params^exps`. The zero monomial has all exponents zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    coeff: BigRational,
    exps: Vec<i64>,
}

impl Monomial {
    pub fn new(coeff: BigRational, exps: Vec<i64>) -> Self {
        if coeff.is_zero() {
            let m = exps.len();
            return Self { coeff, exps: vec![0; m] };
        }
        Self { coeff, exps }
    }

    /// Coefficient one, the given exponents.
    pub fn from_exps(exps: Vec<i64>) -> Self {
        Self { coeff: BigRational::one(), exps }
    }

    pub fn one(m: usize) -> Self {
        Self::from_exps(vec![0; m])
    }

    pub fn zero(m: usize) -> Self {
        Self { coeff: BigRational::zero(), exps: vec![0; m] }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.exps.len() != other.exps.len() {
            return Err(ScalarError::ParamMismatch { expected: self.exps.len(), found: other.exps.len() });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let coeff = &self.coeff * &other.coeff;
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Ok(Self::new(coeff, exps))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.coeff.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self { coeff: self.coeff.recip(), exps: self.exps.iter().map(|e| -e).collect() })
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let coeff = num_traits::pow(self.coeff.clone(), k as usize);
        Ok(Self::new(coeff, self.exps.iter().map(|e| e * k).collect()))
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.exps.iter().all(|e| *e == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_rf(&self) -> RationalFunction {
        if self.coeff.is_zero() {
            return RationalFunction::zero();
        }
        let mut terms = BTreeMap::new();
        terms.insert(trim(self.exps.clone()), self.coeff.clone());
        RationalFunction::from_poly(Poly { terms })
    }

    pub fn render(&self, names: &[String]) -> String {
        self.to_rf().render(names)
    }
}

/// Laurent polynomial with rational coefficients. Exponent keys carry no
/// trailing zeros, so the representation does not depend on the parameter count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<i64>, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { terms }
    }

    pub fn term(c: BigRational, exps: Vec<i64>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exps), c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(add_exps(e1, e2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    fn shift(&self, by: &[i64]) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (add_exps(e, by), c.clone())).collect() }
    }

    fn leading(&self) -> Option<(&Vec<i64>, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for e in self.terms.keys() {
            for (i, x) in e.iter().enumerate() {
                if *x != 0 {
                    out.insert(i);
                }
            }
        }
        out
    }

    fn min_exps(&self) -> Vec<i64> {
        let width = self.terms.keys().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![i64::MAX; width];
        for e in self.terms.keys() {
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = (*slot).min(e.get(i).copied().unwrap_or(0));
            }
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, k) in e.iter().enumerate() {
                let x = point.get(i)?;
                if *k < 0 && x.is_zero() {
                    return None;
                }
                t *= pow_rat(x, *k);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Dense coefficients in one variable; exponents must be non-negative.
    fn to_dense(&self, var: usize) -> Vec<BigRational> {
        let deg = self.terms.keys().map(|e| e.get(var).copied().unwrap_or(0)).max().unwrap_or(0);
        let mut v = vec![BigRational::zero(); deg as usize + 1];
        for (e, c) in &self.terms {
            v[e.get(var).copied().unwrap_or(0) as usize] += c;
        }
        v
    }

    fn from_dense(var: usize, v: &[BigRational]) -> Self {
        let mut out = Self::zero();
        for (k, c) in v.iter().enumerate() {
            let mut e = vec![0; var + 1];
            e[var] = k as i64;
            out.add_term(trim(e), c.clone());
        }
        out
    }
}

fn pow_rat(x: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

// Dense univariate helpers, coefficients low to high.
fn dense_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn dense_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = dense_trim(b.to_vec());
    let mut r = dense_trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &f * c;
        }
        q[shift] = f;
        r = dense_trim(r);
    }
    (dense_trim(q), r)
}

fn dense_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = dense_trim(a.to_vec());
    let mut y = dense_trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = dense_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        x.iter_mut().for_each(|c| *c /= &l);
    }
    x
}

/// Quotient of Laurent polynomials. Equality is decided by cross-multiplication;
/// a univariate gcd pass keeps single-parameter values small.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

pub type RF = RationalFunction;

impl RationalFunction {
    pub fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::constant(BigRational::one()) }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn constant(c: BigRational) -> Self {
        Self { num: Poly::constant(c), den: Poly::constant(BigRational::one()) }
    }

    /// The parameter with index `i`.
    pub fn param(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::from_poly(Poly::term(BigRational::one(), e))
    }

    /// Pure monomial with coefficient one.
    pub fn from_exps(exps: &[i64]) -> Self {
        Self::from_poly(Poly::term(BigRational::one(), exps.to_vec()))
    }

    pub fn from_poly(num: Poly) -> Self {
        Self { num, den: Poly::constant(BigRational::one()) }.normalized()
    }

    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self { num, den }.normalized())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den = Poly::constant(BigRational::one());
            return self;
        }
        let lead = self.den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let inv = lead.recip();
        self.num = self.num.scale(&inv);
        self.den = self.den.scale(&inv);
        let shift: Vec<i64> = self.den.min_exps().iter().map(|e| -e).collect();
        self.num = self.num.shift(&shift);
        self.den = self.den.shift(&shift);
        if self.den.len() > 1 {
            let vars: BTreeSet<usize> = self.num.vars().union(&self.den.vars()).copied().collect();
            if vars.len() == 1 {
                let v = *vars.iter().next().unwrap();
                let nmin = self.num.min_exps().get(v).copied().unwrap_or(0);
                let mut ns = vec![0; v + 1];
                ns[v] = -nmin;
                let n0 = self.num.shift(&ns);
                let nd = n0.to_dense(v);
                let dd = self.den.to_dense(v);
                let g = dense_gcd(&nd, &dd);
                if g.len() > 1 {
                    let (nq, _) = dense_divrem(&nd, &g);
                    let (dq, _) = dense_divrem(&dd, &g);
                    ns[v] = nmin;
                    self.num = Poly::from_dense(v, &nq).shift(&ns);
                    self.den = Poly::from_dense(v, &dq);
                    let lead = self.den.leading().map(|(_, c)| c.clone()).unwrap();
                    let inv = lead.recip();
                    self.num = self.num.scale(&inv);
                    self.den = self.den.scale(&inv);
                }
            }
        }
        self
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self { num: self.den.clone(), den: self.num.clone() }.normalized())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// The value as a monomial over `m` parameters, when it is one.
    /// Exponents when the value is a parameter monomial with coefficient one.
    pub fn as_unit_exps(&self, m: usize) -> Option<Vec<i64>> {
        self.as_monomial(m).filter(|mo| mo.coeff().is_one()).map(|mo| mo.exps().to_vec())
    }

    pub fn as_monomial(&self, m: usize) -> Option<Monomial> {
        if self.is_zero() {
            return Some(Monomial::zero(m));
        }
        if self.den.len() != 1 || self.num.len() != 1 {
            return None;
        }
        let (de, dc) = self.den.leading()?;
        let (ne, nc) = self.num.leading()?;
        let e = add_exps(ne, &de.iter().map(|x| -x).collect::<Vec<_>>());
        if e.len() > m {
            return None;
        }
        let mut exps = e;
        exps.resize(m, 0);
        Some(Monomial::new(nc / dc, exps))
    }

    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point)? / d)
    }

    pub fn render(&self, names: &[String]) -> String {
        let n = render_poly(&self.num, names);
        if self.den.len() == 1 && self.den.leading().is_some_and(|(e, c)| e.is_empty() && c.is_one()) {
            return n;
        }
        let d = render_poly(&self.den, names);
        let n = if self.num.len() > 1 { format!("({n})") } else { n };
        let d = if self.den.len() > 1 || d.contains('*') { format!("({d})") } else { d };
        format!("{n}/{d}")
    }
}

fn render_poly(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        for (i, x) in e.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            let name = names.get(i).cloned().unwrap_or_else(|| format!("p{i}"));
            factors.push(if *x == 1 { name } else { format!("{name}^{x}") });
        }
        if factors.is_empty() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalFunction {}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return RationalFunction { num: self.num.add(&o.num), den: self.den.clone() }.normalized();
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RationalFunction { num, den: self.den.mul(&o.den) }.normalized()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.normalized()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                (&self).$m(&o)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: &RationalFunction) -> RationalFunction {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> RF {
        RF::from_exps(&[k])
    }

    #[test]
    fn monomial_products() {
        let a = Monomial::from_exps(vec![2]);
        let b = Monomial::from_exps(vec![-4]);
        assert_eq!(a.mul(&b).unwrap(), Monomial::from_exps(vec![-2]));
        let c = Monomial::from_exps(vec![3]);
        assert_eq!(c.mul(&c).unwrap(), Monomial::from_exps(vec![6]));
        let d = Monomial::new(rat(2), vec![1]);
        let e = Monomial::new(BigRational::new(1.into(), 2.into()), vec![-1]);
        assert!(d.mul(&e).unwrap().is_one());
    }

    #[test]
    fn monomial_mismatch_is_config_error() {
        let a = Monomial::from_exps(vec![1]);
        let b = Monomial::from_exps(vec![1, 0]);
        assert!(matches!(a.mul(&b), Err(ScalarError::ParamMismatch { .. })));
    }

    #[test]
    fn is_one_cases() {
        assert!(Monomial::one(2).is_one());
        assert!(!Monomial::from_exps(vec![6]).is_one());
        assert!(!Monomial::from_exps(vec![0, -1]).is_one());
        assert!(!Monomial::new(rat(-1), vec![0]).is_one());
    }

    #[test]
    fn field_arithmetic() {
        let d = &q(1) - &q(-1);
        let l = RF::one().checked_div(&d).unwrap();
        assert!((&l * &d).is_one());
        assert!((&q(1) + &(-&q(1))).is_zero());
        let a = (&q(2) - &RF::one()).checked_div(&(&q(1) - &RF::one())).unwrap();
        assert_eq!(a, &q(1) + &RF::one());
        assert!(RF::one().checked_div(&RF::zero()).is_err());
    }

    #[test]
    fn gcd_keeps_values_small() {
        let a = (&q(2) - &RF::one()).checked_div(&(&q(1) - &RF::one())).unwrap();
        assert_eq!(a.denominator().len(), 1);
        assert_eq!(a.render(&["q".into()]), "q + 1");
    }

    #[test]
    fn laurent_denominators_clear() {
        let x = RF::one().checked_div(&(&q(1) - &q(-1))).unwrap();
        let y = q(1).checked_div(&(&q(2) - &RF::one())).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn as_monomial_roundtrip() {
        let m = Monomial::new(rat(-3), vec![2, -1]);
        assert_eq!(m.to_rf().as_monomial(2).unwrap(), m);
        assert!((&q(1) + &RF::one()).as_monomial(1).is_none());
    }

    #[test]
    fn param_list_rules() {
        assert!(ParamList::new(["q", "u"]).is_ok());
        assert!(ParamList::new(["q", "q"]).is_err());
        assert!(ParamList::new(Vec::<String>::new()).is_err());
        assert!(ParamList::new(["1q"]).is_err());
    }
}
