//! Cartan matrices of finite type and their positive roots.
//!
//! Roots are produced by closing the simple roots under the simple reflections
//! `s_i(b) = b - (sum_j a_ij b_j) alpha_i` and keeping the positive ones.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("Cartan matrix must be square")]
    NotSquare,
    #[error("diagonal entry a[{0}][{0}] must equal 2")]
    Diagonal(usize),
    #[error("off-diagonal entry a[{0}][{1}] must be non-positive")]
    OffDiagonal(usize, usize),
    #[error("zero pattern violated: a[{0}][{1}] = 0 but a[{1}][{0}] != 0")]
    ZeroPattern(usize, usize),
    #[error("not symmetrizable at ({0}, {1})")]
    NotSymmetrizable(usize, usize),
    #[error("not of finite type: leading principal minor of order {order} of the symmetrized matrix is {value}")]
    NotFiniteType { order: usize, value: String },
    #[error("unknown Cartan type '{0}'")]
    UnknownType(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
    components: Vec<Vec<usize>>,
}

impl CartanMatrix {
    pub fn entries(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    /// Minimal positive symmetrizer, per component.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.components.iter().position(|c| c.contains(&i)).expect("index in range")
    }

    pub fn linked(&self, i: usize, j: usize) -> bool {
        self.component_of(i) == self.component_of(j)
    }

    /// True when every component has a single vertex.
    pub fn all_rank_one(&self) -> bool {
        self.components.iter().all(|c| c.len() == 1)
    }
}

pub fn validate_cartan(a: Vec<Vec<i64>>) -> Result<CartanMatrix, CartanError> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(CartanError::NotSquare);
    }
    for i in 0..n {
        if a[i][i] != 2 {
            return Err(CartanError::Diagonal(i));
        }
        for j in 0..n {
            if i != j {
                if a[i][j] > 0 {
                    return Err(CartanError::OffDiagonal(i, j));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(CartanError::ZeroPattern(i, j));
                }
            }
        }
    }

    let mut seen = vec![false; n];
    let mut components = Vec::new();
    let mut dq: Vec<BigRational> = vec![BigRational::zero(); n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        dq[start] = BigRational::from_integer(1.into());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if j != i && a[i][j] != 0 && !seen[j] {
                    seen[j] = true;
                    dq[j] = &dq[i] * BigRational::new(a[i][j].into(), a[j][i].into());
                    comp.push(j);
                    queue.push_back(j);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }

    let mut d = vec![0i64; n];
    for comp in &components {
        let lcm = comp.iter().fold(BigInt::from(1), |acc, &i| num_integer::lcm(acc, dq[i].denom().clone()));
        let ints: Vec<BigInt> = comp.iter().map(|&i| (&dq[i] * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
        for (&i, x) in comp.iter().zip(&ints) {
            d[i] = i64::try_from(x / &g).map_err(|_| CartanError::NotSymmetrizable(i, i))?;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if d[i] * a[i][j] != d[j] * a[j][i] {
                return Err(CartanError::NotSymmetrizable(i, j));
            }
        }
    }

    let sym: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| BigRational::from_integer((d[i] * a[i][j]).into())).collect()).collect();
    for k in 1..=n {
        let m = leading_minor(&sym, k);
        if !m.is_positive() {
            return Err(CartanError::NotFiniteType { order: k, value: m.to_string() });
        }
    }
    Ok(CartanMatrix { a, d, components })
}

fn leading_minor(m: &[Vec<BigRational>], k: usize) -> BigRational {
    let mut w: Vec<Vec<BigRational>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
    let mut det = BigRational::from_integer(1.into());
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !w[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            w.swap(p, c);
            det = -det;
        }
        det *= &w[c][c];
        for r in c + 1..k {
            let f = &w[r][c] / &w[c][c];
            for j in c..k {
                let t = &f * &w[c][j];
                w[r][j] -= t;
            }
        }
    }
    det
}

/// Matrices for the named connected types and `x`-separated products,
/// e.g. `A2`, `B2`, `G2`, `A2xA2`, `A1xA1`.
pub fn cartan_of_type(name: &str) -> Result<Vec<Vec<i64>>, CartanError> {
    let blocks = name
        .split(['x', 'X', '×'])
        .map(|p| connected_type(p.trim()).ok_or_else(|| CartanError::UnknownType(name.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out[off + i][off + j] = *v;
            }
        }
        off += b.len();
    }
    Ok(out)
}

fn connected_type(p: &str) -> Option<Vec<Vec<i64>>> {
    let (letter, rank) = p.split_at(1);
    let n: usize = rank.parse().ok()?;
    match (letter, n) {
        ("A", n) if n >= 1 => Some(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                2
                            } else if i.abs_diff(j) == 1 {
                                -1
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect(),
        ),
        ("B", 2) => Some(vec![vec![2, -2], vec![-1, 2]]),
        ("C", 2) => Some(vec![vec![2, -1], vec![-2, 2]]),
        ("G", 2) => Some(vec![vec![2, -1], vec![-3, 2]]),
        _ => None,
    }
}

/// Positive roots in simple-root coordinates, ordered by height and then
/// lexicographically with larger leading coordinates first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub roots: Vec<Vec<i64>>,
    /// `simple_index[k]` is the position of `alpha_k` in `roots`.
    pub simple_index: Vec<usize>,
}

impl RootSystem {
    pub fn count(&self) -> usize {
        self.roots.len()
    }
}

pub fn reflect(c: &CartanMatrix, i: usize, beta: &[i64]) -> Vec<i64> {
    let pairing: i64 = (0..c.size()).map(|j| c.a[i][j] * beta[j]).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

pub fn positive_roots(c: &CartanMatrix) -> RootSystem {
    let n = c.size();
    let simple: Vec<Vec<i64>> = (0..n).map(|k| (0..n).map(|j| (j == k) as i64).collect()).collect();
    let mut found: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.iter().cloned().collect();
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let r = reflect(c, i, &b);
            if r.iter().all(|x| *x >= 0) && r.iter().any(|x| *x > 0) && found.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = found.into_iter().collect();
    roots.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| y.cmp(x))
    });
    let simple_index = simple.iter().map(|s| roots.iter().position(|r| r == s).expect("simple root")).collect();
    RootSystem { roots, simple_index }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_of(t: &str) -> RootSystem {
        positive_roots(&validate_cartan(cartan_of_type(t).unwrap()).unwrap())
    }

    #[test]
    fn a2_is_valid() {
        let c = validate_cartan(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(c.symmetrizer(), &[1, 1]);
        assert_eq!(c.components().len(), 1);
    }

    #[test]
    fn a1xa1_has_two_components() {
        let c = validate_cartan(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(c.components().len(), 2);
        assert!(c.all_rank_one());
    }

    #[test]
    fn affine_a1_rejected() {
        let e = validate_cartan(vec![vec![2, -2], vec![-2, 2]]).unwrap_err();
        assert!(matches!(e, CartanError::NotFiniteType { order: 2, .. }), "{e}");
    }

    #[test]
    fn b2_and_g2_symmetrizers() {
        let b2 = validate_cartan(cartan_of_type("B2").unwrap()).unwrap();
        assert_eq!(b2.symmetrizer(), &[1, 2]);
        let g2 = validate_cartan(cartan_of_type("G2").unwrap()).unwrap();
        assert_eq!(g2.symmetrizer(), &[3, 1]);
    }

    #[test]
    fn root_counts() {
        for n in 1..=4 {
            assert_eq!(roots_of(&format!("A{n}")).count(), n * (n + 1) / 2);
        }
        assert_eq!(roots_of("B2").count(), 4);
        assert_eq!(roots_of("G2").count(), 6);
        assert_eq!(roots_of("A1xA1").count(), 2);
        assert_eq!(roots_of("A2xA2").count(), 6);
    }

    #[test]
    fn a2_roots() {
        let r = roots_of("A2");
        assert_eq!(r.roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(r.simple_index, vec![0, 1]);
    }

    #[test]
    fn reflections_permute_other_roots() {
        let c = validate_cartan(cartan_of_type("G2").unwrap()).unwrap();
        let rs = positive_roots(&c);
        for i in 0..2 {
            let mut imgs: Vec<Vec<i64>> =
                rs.roots.iter().filter(|b| b.iter().enumerate().any(|(j, x)| j != i && *x != 0)).map(|b| reflect(&c, i, b)).collect();
            let mut orig: Vec<Vec<i64>> =
                rs.roots.iter().filter(|b| b.iter().enumerate().any(|(j, x)| j != i && *x != 0)).cloned().collect();
            imgs.sort();
            orig.sort();
            assert_eq!(imgs, orig);
        }
    }
}
