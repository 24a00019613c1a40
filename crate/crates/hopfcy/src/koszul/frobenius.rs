//! Frobenius structure of `A^!` and actions on the top piece.

use super::{pow, reverse_index, KoszulError, NHomogeneous};
use crate::linalg::{inverse, mat_mul, rank, rref, solve, sparse_axpy, Matrix, SparseEchelon, SparseVec};
use crate::scalars::RF;

/// A Hopf generator acting on `V`, extended to tensors through its coproduct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorAction {
    /// `g . e_i = eig[i] e_i`.
    Group(Vec<RF>),
    /// `x . e_i = sum_l matrix[i][l] e_l` with `Delta(x) = x (x) 1 + g (x) x` and `g . e_i = grouplike[i] e_i`.
    Skew { grouplike: Vec<RF>, matrix: Vec<Vec<RF>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub top_degree: usize,
    pub gldim: usize,
    pub dual_dims: Vec<usize>,
    /// `phi(e_i^*) = sum_l q[l][i] e_l^*`, from normal forms in `A^!`.
    pub phi: Matrix,
    /// The same matrix from the pairing of dual words against the top of `(A^!)^*`.
    pub phi_from_pairing: Matrix,
    /// Row `j` holds the coordinates of `mu(e_j)`.
    pub nakayama: Matrix,
    pub diagonal: Option<Vec<RF>>,
    pub sequence_is_complex: bool,
}

impl FrobeniusReport {
    pub fn routes_agree(&self) -> bool {
        self.phi == self.phi_from_pairing
    }
}

impl NHomogeneous {
    fn act_word(&self, act: &TensorAction, t: usize, word: usize) -> SparseVec {
        let n = self.generators();
        let letters: Vec<usize> = (0..t).map(|k| (word / pow(n, t - 1 - k)) % n).collect();
        let mut out = SparseVec::new();
        match act {
            TensorAction::Group(eig) => {
                let c = letters.iter().fold(RF::one(), |acc, &l| &acc * &eig[l]);
                if !c.is_zero() {
                    out.insert(word, c);
                }
            }
            TensorAction::Skew { grouplike, matrix } => {
                for p in 0..t {
                    let before = letters[..p].iter().fold(RF::one(), |acc, &l| &acc * &grouplike[l]);
                    for (l, c) in matrix[letters[p]].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let w = word - letters[p] * pow(n, t - 1 - p) + l * pow(n, t - 1 - p);
                        sparse_axpy(&mut out, &(&before * c), &SparseVec::from([(w, RF::one())]));
                    }
                }
            }
        }
        out
    }

    pub fn act(&self, act: &TensorAction, t: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (w, c) in v {
            sparse_axpy(&mut out, c, &self.act_word(act, t, *w));
        }
        out
    }

    pub fn preserves_relations(&self, act: &TensorAction) -> bool {
        let mut e = SparseEchelon::new();
        for r in self.relations() {
            e.insert(r);
        }
        self.relations().iter().all(|r| e.reduce(&self.act(act, self.degree(), r)).is_empty())
    }

    /// Largest `p <= bound` with `A^!_p` nonzero; it must be one-dimensional with nothing above.
    pub fn top_degree(&self, bound: usize) -> Result<usize, KoszulError> {
        let dual = self.dual();
        let mut last = 1;
        for p in 1..=bound + 1 {
            let d = dual.graded_dim(p);
            if d == 0 {
                if last != 1 {
                    return Err(KoszulError::NotRegular(format!("top piece A^!_{} has dimension {last}", p - 1)));
                }
                return Ok(p - 1);
            }
            last = d;
        }
        Err(KoszulError::NotRegular(format!("A^! is nonzero beyond degree {bound}")))
    }

    /// Scalar of `t <| h = hdet(h) t` on the top piece, read off `h . w` for the spanning
    /// vector `w` of `(A^!_top)^*`.
    pub fn hdet(&self, act: &TensorAction, top: usize) -> Result<RF, KoszulError> {
        if !self.preserves_relations(act) {
            return Err(KoszulError::Action("image of a relation leaves the relation space".into()));
        }
        let w = self.koszul_space(top);
        let [(f, w)] = w.as_slice() else {
            return Err(KoszulError::NotRegular(format!("(A^!_{top})^* has dimension {}", w.len())));
        };
        let image = self.act(act, top, w);
        let c = image.get(f).cloned().unwrap_or_default();
        let mut diff = image;
        sparse_axpy(&mut diff, &-&c, w);
        if !diff.is_empty() {
            return Err(KoszulError::Action("top piece is not stable".into()));
        }
        Ok(c)
    }
}

fn gldim_of(top: usize, big_n: usize) -> Result<usize, KoszulError> {
    match (big_n, top % big_n) {
        (2, _) => Ok(top),
        (_, 0) => Ok(2 * top / big_n),
        (_, 1) => Ok(2 * (top / big_n) + 1),
        _ => Err(KoszulError::NotRegular(format!("top degree {top} is not of the form n(d) for N = {big_n}"))),
    }
}

/// Solves `e_i^* a = a phi(e_i^*)` for all `a` in `A^!_{top-1}` and returns
/// `mu = eps^(d+1) phi-bar` on `V`, where `phi-bar` is dual to `phi` on `V^*`.
pub fn frobenius_nakayama(alg: &NHomogeneous, bound: usize) -> Result<FrobeniusReport, KoszulError> {
    let n = alg.generators();
    let top = alg.top_degree(bound)?;
    if top == 0 {
        return Err(KoszulError::NotRegular("A^! is concentrated in degree 0".into()));
    }
    let gldim = gldim_of(top, alg.degree())?;
    let dual = alg.dual().quotient(top);
    let coeff = |v: SparseVec| v.get(&0).cloned().unwrap_or_default();
    for t in 0..=top {
        let (r, c) = (dual.dim(t), dual.dim(top - t));
        let pairing: Matrix = (0..r).map(|i| (0..c).map(|j| coeff(dual.mul_basis(t, i, top - t, j))).collect()).collect();
        if r != c || rank(&pairing, c) != r {
            return Err(KoszulError::NotRegular(format!("pairing A^!_{t} x A^!_{} is degenerate", top - t)));
        }
    }
    let m = dual.dim(top - 1);
    let lhs: Matrix = (0..n).map(|i| (0..m).map(|j| coeff(dual.mul_basis(1, i, top - 1, j))).collect()).collect();
    let rhs_t: Matrix = (0..m).map(|j| (0..n).map(|l| coeff(dual.mul_basis(top - 1, j, 1, l))).collect()).collect();
    let mut phi = vec![vec![RF::zero(); n]; n];
    for i in 0..n {
        let col = solve(&rhs_t, &lhs[i], n).ok_or_else(|| KoszulError::NotRegular("no Frobenius automorphism".into()))?;
        for l in 0..n {
            phi[l][i] = col[l].clone();
        }
    }

    let phi_from_pairing = pairing_route(alg, top)?;
    let sign = if gldim % 2 == 1 { RF::one() } else { RF::from_int(-1) };
    let nakayama: Matrix = (0..n).map(|j| (0..n).map(|i| &sign * &phi[j][i]).collect()).collect();
    let diagonal =
        (0..n).all(|j| (0..n).all(|i| i == j || nakayama[j][i].is_zero())).then(|| (0..n).map(|j| nakayama[j][j].clone()).collect());
    // u composed with the L_b map into A^!_top factors through
    // sum_i [a e_i^*] mu(e_i) -+ [e_i^* a] e_i; the map is delta_r - delta_l out of an
    // even stage and delta_r + delta_l out of an odd stage when N = 2
    let left_sign = if gldim % 2 == 1 { RF::from_int(-1) } else { RF::one() };
    let sequence_is_complex = (0..m).all(|j| {
        (0..n).all(|k| {
            let mut z = &left_sign * &lhs[k][j];
            for i in 0..n {
                z = &z + &(&rhs_t[j][i] * &nakayama[i][k]);
            }
            z.is_zero()
        })
    });
    Ok(FrobeniusReport {
        top_degree: top,
        gldim,
        dual_dims: (0..=top).map(|t| dual.dim(t)).collect(),
        phi,
        phi_from_pairing,
        nakayama,
        diagonal,
        sequence_is_complex,
    })
}

/// `Q^T = L R^-1` on a set of dual words where `R` is invertible, with the products in
/// `A^!_top` evaluated against the spanning vector of `(A^!_top)^*`.
fn pairing_route(alg: &NHomogeneous, top: usize) -> Result<Matrix, KoszulError> {
    let n = alg.generators();
    let w = alg.koszul_space(top);
    let [(_, w)] = w.as_slice() else {
        return Err(KoszulError::NotRegular("top of the dual is not one-dimensional".into()));
    };
    let words = pow(n, top - 1);
    let pair = |dual_word: usize| w.get(&reverse_index(dual_word, n, top)).cloned().unwrap_or_default();
    let l: Matrix = (0..n).map(|i| (0..words).map(|b| pair(i * words + b)).collect()).collect();
    let r: Matrix = (0..n).map(|k| (0..words).map(|b| pair(b * n + k)).collect()).collect();
    let cols = rref(r.clone(), words).pivots;
    if cols.len() != n {
        return Err(KoszulError::NotRegular("right multiplication pairing has deficient rank".into()));
    }
    let pick = |m: &Matrix| -> Matrix { m.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect() };
    let r_inv = inverse(&pick(&r)).ok_or_else(|| KoszulError::NotRegular("singular pairing block".into()))?;
    let qt = mat_mul(&pick(&l), &r_inv, n, n);
    Ok((0..n).map(|k| (0..n).map(|i| qt[i][k].clone()).collect()).collect())
}
