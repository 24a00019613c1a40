//! The free abelian group `Z^s`, characters with values in parameter monomials,
//! and integer linear systems solved exactly with checkable certificates.

use crate::scalars::Monomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("integer overflow while solving")]
    Overflow,
}

/// Exponent vector over the fixed basis `y_1..y_s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<i64>);

impl GroupElement {
    pub fn identity(s: usize) -> Self {
        Self(vec![0; s])
    }

    pub fn basis(s: usize, j: usize) -> Self {
        let mut v = vec![0; s];
        v[j] = 1;
        Self(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|x| *x == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    /// Multiplicative notation, e.g. `y1^2*y2^-1`; the identity renders as `1`.
    pub fn render(&self, base: &str) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(j, e)| if *e == 1 { format!("{base}{}", j + 1) } else { format!("{base}{}^{e}", j + 1) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A character of `Z^s` with values `prod_t q_t^{E[j][t]}` on `y_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    rows: Vec<Vec<i64>>,
    params: usize,
}

impl Character {
    pub fn new(rows: Vec<Vec<i64>>, params: usize) -> Result<Self, LatticeError> {
        for r in &rows {
            if r.len() != params {
                return Err(LatticeError::DimensionMismatch { expected: params, found: r.len() });
            }
        }
        Ok(Self { rows, params })
    }

    pub fn trivial(s: usize, m: usize) -> Self {
        Self { rows: vec![vec![0; m]; s], params: m }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Exponent vector of the value on `y_j`.
    pub fn on_basis(&self, j: usize) -> &[i64] {
        &self.rows[j]
    }

    pub fn eval_exps(&self, g: &GroupElement) -> Result<Vec<i64>, LatticeError> {
        if g.rank() != self.rank() {
            return Err(LatticeError::DimensionMismatch { expected: self.rank(), found: g.rank() });
        }
        let mut out = vec![0; self.params];
        for (gj, row) in g.0.iter().zip(&self.rows) {
            for (o, e) in out.iter_mut().zip(row) {
                *o += gj * e;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, g: &GroupElement) -> Result<Monomial, LatticeError> {
        Ok(Monomial::from_exps(self.eval_exps(g)?))
    }

    fn same_shape(&self, o: &Self) -> Result<(), LatticeError> {
        if self.rank() != o.rank() {
            return Err(LatticeError::DimensionMismatch { expected: self.rank(), found: o.rank() });
        }
        if self.params != o.params {
            return Err(LatticeError::DimensionMismatch { expected: self.params, found: o.params });
        }
        Ok(())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, LatticeError> {
        self.same_shape(o)?;
        let rows = self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Ok(Self { rows, params: self.params })
    }

    pub fn pow(&self, k: i64) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| x * k).collect()).collect();
        Self { rows, params: self.params }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| *x == 0))
    }

    /// Pointwise product; `s`, `m` are only used for the empty product.
    pub fn product<'a, I>(chars: I, s: usize, m: usize) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = &'a Character>,
    {
        let mut acc = Self::trivial(s, m);
        for c in chars {
            acc = acc.mul(c)?;
        }
        Ok(acc)
    }
}

/// `A n = b` over the integers, with one label per row for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSystem {
    pub unknowns: usize,
    pub rows: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    pub labels: Vec<String>,
}

impl LatticeSystem {
    pub fn new(unknowns: usize) -> Self {
        Self { unknowns, rows: Vec::new(), rhs: Vec::new(), labels: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<i64>, rhs: i64, label: impl Into<String>) -> Result<(), LatticeError> {
        if row.len() != self.unknowns {
            return Err(LatticeError::DimensionMismatch { expected: self.unknowns, found: row.len() });
        }
        self.rows.push(row);
        self.rhs.push(rhs);
        self.labels.push(label.into());
        Ok(())
    }

    pub fn is_solution(&self, n: &GroupElement) -> bool {
        n.rank() == self.unknowns
            && self
                .rows
                .iter()
                .zip(&self.rhs)
                .all(|(r, b)| r.iter().zip(&n.0).map(|(a, x)| *a as i128 * *x as i128).sum::<i128>() == *b as i128)
    }
}

/// A row combination `y` such that `y.(A n)` is divisible by `modulus` for every
/// integer `n` while `y.b` is not (modulus zero means exact equality with zero).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub multipliers: Vec<i64>,
    pub modulus: i64,
}

impl Certificate {
    pub fn verify(&self, sys: &LatticeSystem) -> bool {
        if self.multipliers.len() != sys.rows.len() || self.modulus < 0 {
            return false;
        }
        let m = self.modulus as i128;
        let vanishes = |v: i128| if m == 0 { v == 0 } else { v % m == 0 };
        for col in 0..sys.unknowns {
            let v: i128 = self.multipliers.iter().zip(&sys.rows).map(|(y, r)| *y as i128 * r[col] as i128).sum();
            if !vanishes(v) {
                return false;
            }
        }
        let rhs: i128 = self.multipliers.iter().zip(&sys.rhs).map(|(y, b)| *y as i128 * *b as i128).sum();
        !vanishes(rhs)
    }

    pub fn describe(&self, sys: &LatticeSystem) -> String {
        let terms: Vec<String> =
            self.multipliers.iter().zip(&sys.labels).filter(|(y, _)| **y != 0).map(|(y, l)| format!("{y}*[{l}]")).collect();
        let rhs: i128 = self.multipliers.iter().zip(&sys.rhs).map(|(y, b)| *y as i128 * *b as i128).sum();
        if self.modulus == 0 {
            format!("{} eliminates every unknown but leaves {rhs} = 0", terms.join(" + "))
        } else {
            format!("{} has all coefficients divisible by {} but right-hand side {rhs}", terms.join(" + "), self.modulus)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum LatticeAnswer {
    Feasible { witness: GroupElement, kernel: Vec<GroupElement> },
    Infeasible { certificate: Certificate },
}

impl LatticeAnswer {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Feasible { .. })
    }
}

type Mat = Vec<Vec<BigInt>>;

fn to_i64(x: &BigInt) -> Result<i64, LatticeError> {
    x.to_i64().ok_or(LatticeError::Overflow)
}

/// Exact solution via diagonal reduction `U A V = D` with unimodular `U`, `V`.
pub fn solve_lattice(sys: &LatticeSystem) -> Result<LatticeAnswer, LatticeError> {
    let r = sys.rows.len();
    let s = sys.unknowns;
    let mut d: Mat = sys.rows.iter().map(|row| row.iter().map(|x| BigInt::from(*x)).collect()).collect();
    let mut u: Mat = (0..r).map(|i| (0..r).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    let mut v: Mat = (0..s).map(|i| (0..s).map(|j| BigInt::from((i == j) as i64)).collect()).collect();

    let mut t = 0;
    while t < r.min(s) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..s {
                if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..r {
                while !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    row_axpy(&mut d, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        d.swap(i, t);
                        u.swap(i, t);
                        changed = true;
                    }
                }
            }
            for j in t + 1..s {
                while !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    col_axpy(&mut d, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        swap_cols(&mut d, j, t);
                        swap_cols(&mut v, j, t);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        t += 1;
    }
    let rank = t;

    let b: Vec<BigInt> = sys.rhs.iter().map(|x| BigInt::from(*x)).collect();
    let c: Vec<BigInt> = u.iter().map(|row| row.iter().zip(&b).map(|(a, x)| a * x).sum::<BigInt>()).collect();
    for k in rank..r {
        if !c[k].is_zero() {
            let multipliers = u[k].iter().map(to_i64).collect::<Result<_, _>>()?;
            return Ok(LatticeAnswer::Infeasible { certificate: Certificate { multipliers, modulus: 0 } });
        }
    }
    let mut z = vec![BigInt::zero(); s];
    for k in 0..rank {
        let (q, rem) = c[k].div_rem(&d[k][k]);
        if !rem.is_zero() {
            let multipliers = u[k].iter().map(to_i64).collect::<Result<_, _>>()?;
            let modulus = to_i64(&d[k][k].abs())?;
            return Ok(LatticeAnswer::Infeasible { certificate: Certificate { multipliers, modulus } });
        }
        z[k] = q;
    }
    let witness = (0..s).map(|i| to_i64(&v[i].iter().zip(&z).map(|(a, x)| a * x).sum::<BigInt>())).collect::<Result<Vec<_>, _>>()?;
    let kernel = (rank..s)
        .map(|k| Ok(GroupElement((0..s).map(|i| to_i64(&v[i][k])).collect::<Result<Vec<_>, _>>()?)))
        .collect::<Result<Vec<_>, LatticeError>>()?;
    Ok(LatticeAnswer::Feasible { witness: GroupElement(witness), kernel })
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i -= q * row_t
fn row_axpy(m: &mut Mat, i: usize, t: usize, q: &BigInt) {
    let src = m[t].clone();
    for (x, y) in m[i].iter_mut().zip(src) {
        *x -= q * y;
    }
}

/// col_j -= q * col_t
fn col_axpy(m: &mut Mat, j: usize, t: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[t].clone();
        row[j] -= q * y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(rows: &[i64]) -> Character {
        Character::new(rows.iter().map(|x| vec![*x]).collect(), 1).unwrap()
    }

    #[test]
    fn evaluation() {
        let c = chi(&[2, -4]);
        assert_eq!(c.eval(&GroupElement(vec![1, 0])).unwrap(), Monomial::from_exps(vec![2]));
        assert!(c.eval(&GroupElement::identity(2)).unwrap().is_one());
        assert_eq!(c.eval(&GroupElement(vec![2, 2])).unwrap(), Monomial::from_exps(vec![-4]));
        assert!(c.eval(&GroupElement(vec![1])).is_err());
    }

    #[test]
    fn products() {
        let c1 = chi(&[2, -1]);
        let c2 = chi(&[4, 0]);
        assert_eq!(c1.mul(&c2).unwrap().eval_exps(&GroupElement(vec![1, 0])).unwrap(), vec![6]);
        assert!(c1.mul(&c1.inv()).unwrap().is_trivial());
        let a = chi(&[2, -1]);
        let b = chi(&[-1, -2]);
        let all = [a.pow(2), b.pow(2), a.inv().pow(2), b.inv().pow(2)];
        assert!(Character::product(all.iter(), 2, 1).unwrap().is_trivial());
    }

    #[test]
    fn cleft_example_system() {
        let mut sys = LatticeSystem::new(2);
        sys.push(vec![0, 3], 6, "y1").unwrap();
        sys.push(vec![-3, 0], -6, "y2").unwrap();
        sys.push(vec![2, -4], -4, "x1").unwrap();
        sys.push(vec![4, -2], 4, "x2").unwrap();
        match solve_lattice(&sys).unwrap() {
            LatticeAnswer::Feasible { witness, kernel } => {
                assert_eq!(witness, GroupElement(vec![2, 2]));
                assert!(kernel.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_system() {
        let sys = LatticeSystem::new(3);
        match solve_lattice(&sys).unwrap() {
            LatticeAnswer::Feasible { witness, kernel } => {
                assert!(witness.is_identity());
                assert_eq!(kernel.len(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn certificates() {
        let mut sys = LatticeSystem::new(1);
        sys.push(vec![0], 2, "a").unwrap();
        let LatticeAnswer::Infeasible { certificate } = solve_lattice(&sys).unwrap() else { panic!() };
        assert!(certificate.verify(&sys));
        let mut sys = LatticeSystem::new(2);
        sys.push(vec![2, 4], 3, "b").unwrap();
        let LatticeAnswer::Infeasible { certificate } = solve_lattice(&sys).unwrap() else { panic!() };
        assert_eq!(certificate.modulus, 2);
        assert!(certificate.verify(&sys));
    }
}
