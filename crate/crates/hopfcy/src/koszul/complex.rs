//! Slices of the bimodule complexes `K_b(A)` (middle terms `(A^!_p)^*`) and
//! `L_b(A)` (middle terms `A^!_p`).

use super::{n_func, pow, KoszulError, NHomogeneous, Quotient};
use crate::linalg::{sparse_axpy, SparseEchelon, SparseVec};
use serde::Serialize;
use std::collections::HashMap;

/// Middle spaces of a bimodule complex with the letter-splitting maps.
/// `left[p][m][i]` is the image of basis element `m` of `M_p` when letter `i` moves
/// to (or comes from) the left factor, in coordinates of `M_{p + step}`.
struct Middle {
    step: isize,
    dims: Vec<usize>,
    left: Vec<Vec<Vec<SparseVec>>>,
    right: Vec<Vec<Vec<SparseVec>>>,
}

impl Middle {
    fn target(&self, p: usize) -> Option<usize> {
        let t = p as isize + self.step;
        (t >= 0 && (t as usize) < self.dims.len()).then_some(t as usize)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// `A_a (x) M_p (x) A_b` summed over `a + b = s`.
struct Term {
    entries: Vec<(usize, usize, usize, usize)>,
    index: HashMap<(usize, usize, usize, usize), usize>,
}

type Map = Vec<SparseVec>;

struct Builder<'a> {
    a: &'a Quotient,
    n: usize,
    mid: Middle,
    terms: HashMap<(usize, usize), Term>,
}

impl<'a> Builder<'a> {
    fn term(&mut self, p: usize, s: usize) -> &Term {
        let (a_q, dim) = (self.a, self.mid.dims[p]);
        self.terms.entry((p, s)).or_insert_with(|| {
            let mut entries = Vec::new();
            for a in 0..=s {
                for xi in 0..a_q.dim(a) {
                    for m in 0..dim {
                        for yi in 0..a_q.dim(s - a) {
                            entries.push((a, xi, m, yi));
                        }
                    }
                }
            }
            let index = entries.iter().enumerate().map(|(i, e)| (*e, i)).collect();
            Term { entries, index }
        })
    }

    fn dim(&mut self, p: usize, s: usize) -> usize {
        self.term(p, s).entries.len()
    }

    /// One-sided differential out of `(p, s)`; `None` when the target is out of range.
    fn one_sided(&mut self, side: Side, p: usize, s: usize) -> Option<Map> {
        let q = self.mid.target(p)?;
        if s + 1 > self.a.max_degree() {
            return None;
        }
        self.term(q, s + 1);
        let src: Vec<_> = self.term(p, s).entries.clone();
        let tgt = &self.terms[&(q, s + 1)];
        let table = if side == Side::Left { &self.mid.left } else { &self.mid.right };
        let mut out = Vec::with_capacity(src.len());
        for &(a, xi, m, yi) in &src {
            let b = s - a;
            let mut v = SparseVec::new();
            for (i, img) in table[p][m].iter().enumerate().take(self.n) {
                if img.is_empty() {
                    continue;
                }
                let moved = match side {
                    Side::Left => self.a.mul_basis(a, xi, 1, i),
                    Side::Right => self.a.mul_basis(1, i, b, yi),
                };
                for (k, c1) in &moved {
                    for (m2, c2) in img {
                        let key = if side == Side::Left { (a + 1, *k, *m2, yi) } else { (a, xi, *m2, *k) };
                        sparse_axpy(&mut v, c1, &SparseVec::from([(tgt.index[&key], c2.clone())]));
                    }
                }
            }
            out.push(v);
        }
        Some(out)
    }

    /// Word in the one-sided maps applied right to left, e.g. `[L, L, R]` is `l l r`.
    fn chain(&mut self, word: &[Side], p: usize, s: usize) -> Option<Map> {
        let mut cur: Option<Map> = None;
        let (mut pp, mut ss) = (p, s);
        for side in word.iter().rev() {
            let m = self.one_sided(*side, pp, ss)?;
            cur = Some(match cur {
                None => m,
                Some(c) => c.iter().map(|v| apply(&m, v)).collect(),
            });
            pp = self.mid.target(pp)?;
            ss += 1;
        }
        cur
    }

    /// `first - second` when `difference`, otherwise `sum first^a second^b` over `a + b = power`.
    fn contracted(&mut self, first: Side, difference: bool, power: usize, p: usize, s: usize) -> Option<Map> {
        let second = if first == Side::Left { Side::Right } else { Side::Left };
        let power = if difference { 1 } else { power };
        let mut total: Option<Map> = None;
        for a in 0..=power {
            let sign = if difference && a == 1 { -1 } else { 1 };
            let mut word = vec![first; power - a];
            word.extend(std::iter::repeat_n(second, a));
            let m = self.chain(&word, p, s)?;
            total = Some(match total {
                None => scale_map(&m, sign),
                Some(t) => add_maps(&t, &scale_map(&m, sign)),
            });
        }
        total
    }

    fn commute_check(&mut self, p: usize, s: usize) -> Option<bool> {
        let lr = self.chain(&[Side::Left, Side::Right], p, s)?;
        let rl = self.chain(&[Side::Right, Side::Left], p, s)?;
        Some(lr == rl)
    }
}

fn apply(m: &Map, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (j, c) in v {
        sparse_axpy(&mut out, c, &m[*j]);
    }
    out
}

fn scale_map(m: &Map, sign: i64) -> Map {
    let f = crate::scalars::RF::from_int(sign);
    m.iter().map(|v| v.iter().map(|(k, c)| (*k, c * &f)).collect()).collect()
}

fn add_maps(a: &Map, b: &Map) -> Map {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let mut v = x.clone();
            sparse_axpy(&mut v, &crate::scalars::RF::one(), y);
            v
        })
        .collect()
}

fn rank(m: &Map) -> usize {
    let mut e = SparseEchelon::new();
    for v in m {
        e.insert(v);
    }
    e.rank()
}

fn is_zero(m: &Map) -> bool {
    m.iter().all(|v| v.is_empty())
}

fn compose(outer: &Map, inner: &Map) -> Map {
    inner.iter().map(|v| apply(outer, v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceReport {
    pub degree: usize,
    /// Dimensions of `K_i` in this degree, followed by `A_t`.
    pub term_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    /// Homology at `K_0, K_1, ...`; the first entry is the cokernel at `A_t`.
    pub homology: Vec<usize>,
    pub exact: bool,
    pub composes_to_zero: bool,
    pub lr_commute: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexCheck {
    pub label: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub max_degree: usize,
    pub algebra_dims: Vec<usize>,
    pub dual_dims: Vec<usize>,
    pub slices: Vec<SliceReport>,
    pub dual_complex: Vec<ComplexCheck>,
    pub koszul_up_to_bound: bool,
}

fn koszul_middle(alg: &NHomogeneous, max: usize) -> Middle {
    let n = alg.generators();
    let spaces: Vec<Vec<(usize, SparseVec)>> = (0..=max).map(|p| alg.koszul_space(p)).collect();
    let mut left = vec![Vec::new()];
    let mut right = vec![Vec::new()];
    for p in 1..=max {
        let lower = &spaces[p - 1];
        let coords =
            |v: &SparseVec| -> SparseVec { lower.iter().enumerate().filter_map(|(k, (f, _))| v.get(f).map(|c| (k, c.clone()))).collect() };
        let mut lp = Vec::new();
        let mut rp = Vec::new();
        for (_, w) in &spaces[p] {
            let mut by_first = vec![SparseVec::new(); n];
            let mut by_last = vec![SparseVec::new(); n];
            for (idx, c) in w {
                by_first[idx / pow(n, p - 1)].insert(idx % pow(n, p - 1), c.clone());
                by_last[idx % n].insert(idx / n, c.clone());
            }
            lp.push(by_first.iter().map(coords).collect());
            rp.push(by_last.iter().map(coords).collect());
        }
        left.push(lp);
        right.push(rp);
    }
    Middle { step: -1, dims: spaces.iter().map(Vec::len).collect(), left, right }
}

fn dual_middle(dual: &Quotient, n: usize) -> Middle {
    let top = (0..=dual.max_degree()).rev().find(|&p| dual.dim(p) > 0).unwrap_or(0);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for p in 0..=top {
        let mut lp = Vec::new();
        let mut rp = Vec::new();
        for m in 0..dual.dim(p) {
            if p + 1 > dual.max_degree() {
                lp.push(vec![SparseVec::new(); n]);
                rp.push(vec![SparseVec::new(); n]);
                continue;
            }
            lp.push((0..n).map(|i| dual.mul_basis(1, i, p, m)).collect());
            rp.push((0..n).map(|i| dual.mul_basis(p, m, 1, i)).collect());
        }
        left.push(lp);
        right.push(rp);
    }
    Middle { step: 1, dims: (0..=top).map(|p| dual.dim(p)).collect(), left, right }
}

/// Builds `K_b(A) -> A -> 0` in every internal degree up to `max_degree` and checks
/// that it is a complex, that it is exact, and that `d_l`, `d_r` commute. The dual
/// complex `L_b(A)` is checked to be a complex on the same range.
pub fn koszulity_certificate(alg: &NHomogeneous, max_degree: usize) -> Result<KoszulReport, KoszulError> {
    let n = alg.generators();
    let big_n = alg.degree();
    let a = alg.quotient(max_degree);
    let mut b = Builder { a: &a, n, mid: koszul_middle(alg, max_degree), terms: HashMap::new() };
    let mut slices = Vec::new();
    for t in 0..=max_degree {
        let imax = (0..).take_while(|&i| n_func(i, big_n) <= t).last().unwrap_or(0);
        let mut dims = vec![a.dim(t)];
        let mut maps: Vec<Map> = Vec::new();
        // augmentation K_0 -> A_t
        let k0: Vec<_> = b.term(0, t).entries.clone();
        maps.push(k0.iter().map(|&(x, xi, _, yi)| a.mul_basis(x, xi, t - x, yi)).collect());
        for i in 0..=imax {
            let p = n_func(i, big_n);
            dims.push(b.dim(p, t - p));
            if i == 0 {
                continue;
            }
            let m = b.contracted(Side::Left, i % 2 == 1, big_n - 1, p, t - p).expect("slice in range");
            maps.push(m);
        }
        let ranks: Vec<usize> = maps.iter().map(rank).collect();
        let mut homology = vec![dims[0] - ranks[0]];
        for i in 0..=imax {
            let next = ranks.get(i + 1).copied().unwrap_or(0);
            homology.push(dims[i + 1] - ranks[i] - next);
        }
        let composes_to_zero = (1..maps.len()).all(|i| is_zero(&compose(&maps[i - 1], &maps[i])));
        let busy: Vec<usize> = (2..=t).filter(|&p| b.mid.dims[p] > 0).collect();
        let lr_commute = busy.into_iter().all(|p| b.commute_check(p, t - p).unwrap_or(true));
        slices.push(SliceReport {
            degree: t,
            exact: homology.iter().all(|&h| h == 0),
            term_dims: dims,
            ranks,
            homology,
            composes_to_zero,
            lr_commute,
        });
    }
    let dual = alg.dual().quotient(max_degree);
    let dual_complex = check_dual_complex(&a, &dual, n, big_n);
    Ok(KoszulReport {
        max_degree,
        algebra_dims: (0..=max_degree).map(|t| a.dim(t)).collect(),
        dual_dims: (0..=max_degree).map(|t| dual.dim(t)).collect(),
        koszul_up_to_bound: slices.iter().all(|s| s.exact && s.composes_to_zero),
        slices,
        dual_complex,
    })
}

fn check_dual_complex(a: &Quotient, dual: &Quotient, n: usize, big_n: usize) -> Vec<ComplexCheck> {
    let mut b = Builder { a, n, mid: dual_middle(dual, n), terms: HashMap::new() };
    let top = b.mid.dims.len() - 1;
    let mut out = Vec::new();
    let stages: Vec<usize> = (0..).take_while(|&i| n_func(i, big_n) <= top).collect();
    for s in 0..a.max_degree() {
        for w in stages.windows(2) {
            let (i, j) = (w[0], w[1]);
            let (p, pj) = (n_func(i, big_n), n_func(j, big_n));
            let Some(first) = b.contracted(Side::Right, i % 2 == 0, big_n - 1, p, s) else { continue };
            let Some(second) = b.contracted(Side::Right, j % 2 == 0, big_n - 1, pj, s + pj - p) else { continue };
            out.push(ComplexCheck {
                label: format!("L_b stages {i} -> {j} -> {} at A-degree {s}", j + 1),
                ok: is_zero(&compose(&second, &first)),
            });
        }
        for p in 0..top.saturating_sub(1) {
            if let Some(ok) = b.commute_check(p, s) {
                out.push(ComplexCheck { label: format!("delta_l delta_r = delta_r delta_l on A^!_{p} at A-degree {s}"), ok });
            }
        }
    }
    out
}
