//! N-homogeneous algebras `T(V)/<R>`, their homogeneous duals and graded pieces.
//!
//! Words of length `t` in `n` letters are indexed in base `n`, first letter most
//! significant. A dual word `f_t ... f_1` pairs with `x_1 ... x_t` by
//! `f_1(x_1) ... f_t(x_t)`, so a dual word pairs with the reversed primal word.

mod complex;
mod frobenius;

pub use complex::{koszulity_certificate, ComplexCheck, KoszulReport, SliceReport};
pub use frobenius::{frobenius_nakayama, FrobeniusReport, TensorAction};

use crate::expr::WordPoly;
use crate::linalg::{SparseEchelon, SparseVec};
use crate::scalars::RF;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KoszulError {
    #[error("N must be at least 2, got {0}")]
    Degree(usize),
    #[error("relation {0} is not homogeneous of degree {1}")]
    NotHomogeneous(usize, usize),
    #[error("relations are linearly dependent")]
    Dependent,
    #[error("letter index {0} out of range")]
    Letter(usize),
    #[error("not AS-regular: {0}")]
    NotRegular(String),
    #[error("action does not preserve the relations: {0}")]
    Action(String),
}

/// `n(i) = Nk` for `i = 2k` and `Nk + 1` for `i = 2k + 1`.
pub fn n_func(i: usize, big_n: usize) -> usize {
    big_n * (i / 2) + i % 2
}

pub(crate) fn pow(n: usize, t: usize) -> usize {
    n.pow(t as u32)
}

pub(crate) fn reverse_index(idx: usize, n: usize, t: usize) -> usize {
    let (mut i, mut out) = (idx, 0);
    for _ in 0..t {
        out = out * n + i % n;
        i /= n;
    }
    out
}

#[derive(Debug, Clone)]
pub struct NHomogeneous {
    names: Vec<String>,
    big_n: usize,
    relations: Vec<SparseVec>,
}

impl NHomogeneous {
    pub fn new(names: Vec<String>, big_n: usize, relations: &[WordPoly]) -> Result<Self, KoszulError> {
        if big_n < 2 {
            return Err(KoszulError::Degree(big_n));
        }
        let n = names.len();
        let mut rows = Vec::new();
        let mut ech = SparseEchelon::new();
        for (r, rel) in relations.iter().enumerate() {
            let mut v = SparseVec::new();
            for (w, c) in rel.terms() {
                if w.len() != big_n {
                    return Err(KoszulError::NotHomogeneous(r, big_n));
                }
                if let Some(&l) = w.iter().find(|&&l| l >= n) {
                    return Err(KoszulError::Letter(l));
                }
                v.insert(w.iter().fold(0, |a, &l| a * n + l), c.clone());
            }
            if !ech.insert(&v) {
                return Err(KoszulError::Dependent);
            }
            rows.push(v);
        }
        Ok(Self { names, big_n, relations: rows })
    }

    fn from_vectors(names: Vec<String>, big_n: usize, relations: Vec<SparseVec>) -> Self {
        Self { names, big_n, relations }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> usize {
        self.names.len()
    }

    pub fn degree(&self) -> usize {
        self.big_n
    }

    pub fn relations(&self) -> &[SparseVec] {
        &self.relations
    }

    /// `V^i (x) R (x) V^(t-N-i)` summed over `i`, as rows in `V^t`.
    fn ideal_rows(rels: &[SparseVec], n: usize, big_n: usize, t: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        if t < big_n {
            return out;
        }
        for i in 0..=t - big_n {
            let right = pow(n, t - big_n - i);
            for pre in 0..pow(n, i) {
                for post in 0..right {
                    for r in rels {
                        out.push(r.iter().map(|(w, c)| ((pre * pow(n, big_n) + w) * right + post, c.clone())).collect());
                    }
                }
            }
        }
        out
    }

    /// Relations of the homogeneous dual, written in dual-word coordinates.
    pub fn dual(&self) -> NHomogeneous {
        let n = self.generators();
        let mut e = SparseEchelon::new();
        for r in &self.relations {
            e.insert(r);
        }
        let perp = e
            .annihilator(pow(n, self.big_n))
            .into_iter()
            .map(|(_, v)| v.into_iter().map(|(w, c)| (reverse_index(w, n, self.big_n), c)).collect())
            .collect();
        NHomogeneous::from_vectors(self.names.iter().map(|s| format!("{s}*")).collect(), self.big_n, perp)
    }

    /// `W_p = intersection of V^i (x) R (x) V^j`, which is `(A^!_p)^*`; all of `V^p` below `N`.
    /// Each basis vector comes with a column where it is 1 and every other one is 0.
    pub fn koszul_space(&self, p: usize) -> Vec<(usize, SparseVec)> {
        let n = self.generators();
        let mut e = SparseEchelon::new();
        for r in &self.relations {
            e.insert(r);
        }
        let perp: Vec<SparseVec> = e.annihilator(pow(n, self.big_n)).into_iter().map(|(_, v)| v).collect();
        let mut cons = SparseEchelon::new();
        for r in Self::ideal_rows(&perp, n, self.big_n, p) {
            cons.insert(&r);
        }
        cons.annihilator(pow(n, p))
    }

    pub fn graded_dim(&self, t: usize) -> usize {
        let mut e = SparseEchelon::new();
        for r in Self::ideal_rows(&self.relations, self.generators(), self.big_n, t) {
            e.insert(&r);
        }
        pow(self.generators(), t) - e.rank()
    }

    pub fn quotient(&self, max_degree: usize) -> Quotient {
        let n = self.generators();
        let mut degrees = Vec::new();
        for t in 0..=max_degree {
            let mut e = SparseEchelon::new();
            for r in Self::ideal_rows(&self.relations, n, self.big_n, t) {
                e.insert(&r);
            }
            let basis: Vec<usize> = (0..pow(n, t)).filter(|w| !e.is_pivot(*w)).collect();
            let position = basis.iter().enumerate().map(|(i, w)| (*w, i)).collect();
            degrees.push(Component { ideal: e, basis, position });
        }
        Quotient { n, degrees }
    }
}

#[derive(Debug, Clone)]
struct Component {
    ideal: SparseEchelon,
    basis: Vec<usize>,
    position: std::collections::HashMap<usize, usize>,
}

/// Graded pieces `A_t = V^t / I_t` for `t` up to a bound, with standard-word bases.
#[derive(Debug, Clone)]
pub struct Quotient {
    n: usize,
    degrees: Vec<Component>,
}

impl Quotient {
    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn dim(&self, t: usize) -> usize {
        self.degrees[t].basis.len()
    }

    /// Standard word indices spanning `A_t`.
    pub fn basis(&self, t: usize) -> &[usize] {
        &self.degrees[t].basis
    }

    /// Coordinates in the standard basis of the class of a tensor in `V^t`.
    pub fn coords(&self, t: usize, v: &SparseVec) -> SparseVec {
        let c = &self.degrees[t];
        c.ideal.reduce(v).into_iter().map(|(w, x)| (c.position[&w], x)).collect()
    }

    /// Product of basis elements `b_s(i) b_t(j)` in coordinates of `A_{s+t}`.
    pub fn mul_basis(&self, s: usize, i: usize, t: usize, j: usize) -> SparseVec {
        let w = self.degrees[s].basis[i] * pow(self.n, t) + self.degrees[t].basis[j];
        self.coords(s + t, &SparseVec::from([(w, RF::one())]))
    }

    /// Right multiplication of a degree `s` element by basis element `j` of degree `t`.
    pub fn mul_right(&self, s: usize, v: &SparseVec, t: usize, j: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v {
            crate::linalg::sparse_axpy(&mut out, c, &self.mul_basis(s, *i, t, j));
        }
        out
    }
}

#[cfg(test)]
mod tests;
