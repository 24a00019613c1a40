//! Dense exact linear algebra over the rational function field.

use crate::scalars::RF;
use std::collections::BTreeMap;

pub type Matrix = Vec<Vec<RF>>;

/// Nonzero rows of the reduced row echelon form and their pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Matrix,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns that carry no pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Reduces `v` modulo the row space; zero iff `v` lies in it.
    pub fn reduce(&self, v: &[RF]) -> Vec<RF> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                axpy(&mut v, &f, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[RF]) -> bool {
        self.reduce(v).iter().all(RF::is_zero)
    }
}

/// `v -= f * row`
fn axpy(v: &mut [RF], f: &RF, row: &[RF]) {
    for (x, r) in v.iter_mut().zip(row) {
        if !r.is_zero() {
            *x = &*x - &(f * r);
        }
    }
}

pub fn rref(mut rows: Matrix, ncols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Echelon { rows, pivots, ncols }
}

pub fn rank(m: &[Vec<RF>], ncols: usize) -> usize {
    rref(m.to_vec(), ncols).rank()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<RF>], ncols: usize) -> Matrix {
    let e = rref(m.to_vec(), ncols);
    e.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![RF::zero(); ncols];
            v[f] = RF::one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// One solution of `m x = b`, if any.
pub fn solve(m: &[Vec<RF>], b: &[RF], ncols: usize) -> Option<Vec<RF>> {
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let e = rref(aug, ncols + 1);
    if e.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![RF::zero(); ncols];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn inverse(m: &[Vec<RF>]) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { RF::one() } else { RF::zero() }));
            r
        })
        .collect();
    let e = rref(aug, 2 * n);
    if e.rank() < n || e.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(e.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<RF>], b: &[Vec<RF>], inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = RF::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<RF>], cols: usize) -> Matrix {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn is_zero_matrix(a: &[Vec<RF>]) -> bool {
    a.iter().all(|r| r.iter().all(RF::is_zero))
}

pub type SparseVec = BTreeMap<usize, RF>;

/// `v += f * w`
pub fn sparse_axpy(v: &mut SparseVec, f: &RF, w: &SparseVec) {
    for (k, c) in w {
        let t = f * c;
        match v.get_mut(k) {
            Some(x) => {
                *x = &*x + &t;
                if x.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    v.insert(*k, t);
                }
            }
        }
    }
}

/// Row echelon form of sparse vectors keyed by leading index, each row monic at its pivot.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut cursor = 0;
        while let Some(p) = v.range(cursor..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k)) {
            let f = -&v[&p];
            sparse_axpy(&mut v, &f, &self.rows[&p]);
            cursor = p + 1;
        }
        v
    }

    /// Adds `v` to the row space; false if it was already there.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        let r: SparseVec = r.iter().map(|(k, c)| (*k, c * &inv)).collect();
        self.rows.insert(p, r);
        true
    }

    /// Clears every pivot column outside its own row.
    pub fn fully_reduce(&mut self) {
        let keys: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in keys {
            let mut row = self.rows.remove(&p).expect("present");
            let lead = row.remove(&p).expect("monic");
            let mut rest = self.reduce(&row);
            rest.insert(p, lead);
            self.rows.insert(p, rest);
        }
    }

    /// Basis of `{x : r . x = 0 for every row r}` in `ncols` coordinates, one vector per
    /// free column with a 1 there and zeros on the other free columns.
    pub fn annihilator(&self, ncols: usize) -> Vec<(usize, SparseVec)> {
        let mut e = self.clone();
        e.fully_reduce();
        let mut out: BTreeMap<usize, SparseVec> =
            (0..ncols).filter(|c| !e.is_pivot(*c)).map(|c| (c, SparseVec::from([(c, RF::one())]))).collect();
        for (p, row) in &e.rows {
            for (k, c) in row {
                if k != p {
                    out.get_mut(k).expect("free column").insert(*p, -c);
                }
            }
        }
        out.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[&[i64]]) -> Matrix {
        v.iter().map(|r| r.iter().map(|&x| RF::from_int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a, 3), 2);
        let k = nullspace(&a, 3);
        assert_eq!(k.len(), 1);
        let prod = mat_mul(&a, &transpose(&k, 3), 3, 1);
        assert!(is_zero_matrix(&prod));
    }

    #[test]
    fn symbolic_inverse() {
        let q = RF::param(0);
        let a = vec![vec![q.clone(), RF::one()], vec![RF::zero(), q.clone()]];
        let inv = inverse(&a).unwrap();
        let id = mat_mul(&a, &inv, 2, 2);
        assert_eq!(id, m(&[&[1, 0], &[0, 1]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[RF::from_int(2), RF::zero()], 2).unwrap();
        assert_eq!(x, vec![RF::one(), RF::one()]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[RF::one(), RF::one()], 2).is_none());
    }

    #[test]
    fn sparse_matches_dense() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let mut e = SparseEchelon::new();
        for r in &a {
            e.insert(&r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect());
        }
        assert_eq!(e.rank(), 2);
        let k = e.annihilator(3);
        assert_eq!(k.len(), 1);
        let dense: Vec<RF> = (0..3).map(|c| k[0].1.get(&c).cloned().unwrap_or_default()).collect();
        assert!(is_zero_matrix(&mat_mul(&a, &transpose(&[dense], 3), 3, 1)));
    }
}
