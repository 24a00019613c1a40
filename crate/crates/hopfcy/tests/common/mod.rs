#![allow(dead_code, clippy::needless_range_loop)]

use hopfcy::algebra::cogroupoid::{hvec, Cogroupoid, HBasis};
use hopfcy::cli::catalog;
use hopfcy::cli::config::{parse_config, SessionConfig};
use hopfcy::cy::{decide_cy_cleft, decide_cy_crossed, CrossedInput, CyReport};
use hopfcy::datum::{normalize_pair, validate_datum, CleftDatum, Coboundary, CocycleData, GenericDatum, HCocycle, Mode, RawDatum};
use hopfcy::lattice::{solve_lattice, GroupElement, LatticeAnswer, LatticeSystem};
use hopfcy::scalars::RF;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> Vec<String> {
    vec!["q".into()]
}

pub fn load(name: &str) -> SessionConfig {
    parse_config(catalog::get(name).unwrap_or_else(|| panic!("no entry {name}"))).unwrap()
}

pub fn qpow(e: i64) -> RF {
    RF::from_exps(&[e])
}

/// All roots reachable from the simple roots under the simple reflections,
/// negatives included, then the positive ones.
pub fn weyl_positive_roots(a: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let n = a.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut todo: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    while let Some(b) = todo.pop() {
        if !seen.insert(b.clone()) {
            continue;
        }
        for i in 0..n {
            let mut r = b.clone();
            r[i] -= (0..n).map(|j| a[i][j] * b[j]).sum::<i64>();
            if !seen.contains(&r) {
                todo.push(r);
            }
        }
    }
    seen.into_iter().filter(|r| r.iter().all(|c| *c >= 0)).collect()
}

pub fn box_points(s: usize, r: i64) -> Vec<GroupElement> {
    let width = 2 * r + 1;
    (0..width.pow(s as u32))
        .map(|mut idx| {
            GroupElement(
                (0..s)
                    .map(|_| {
                        let v = idx % width - r;
                        idx /= width;
                        v
                    })
                    .collect(),
            )
        })
        .collect()
}

/// A1xA1 on `y1`, `y2` with `chi_1 = (a, b)`, `chi_2 = (-b, d)`.
pub fn rank_two_datum(a: i64, b: i64, d: i64) -> GenericDatum {
    validate_datum(
        RawDatum {
            params: q(),
            rank: 2,
            cartan: vec![vec![2, 0], vec![0, 2]],
            g: vec![vec![1, 0], vec![0, 1]],
            chi: vec![vec![vec![a], vec![b]], vec![vec![-b], vec![d]]],
            linking: vec![],
        },
        Mode::Strict,
    )
    .unwrap()
}

pub fn ratio(u: i64) -> CocycleData {
    CocycleData::from_pairs(2, 1, &[(1, 0, vec![u])]).unwrap()
}

fn nonzero(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    loop {
        let v = r.random_range(lo..=hi);
        if v != 0 {
            return v;
        }
    }
}

fn random_cocycle(r: &mut ChaCha8Rng, s: usize, m: usize) -> CocycleData {
    let mut u = vec![vec![vec![0; m]; s]; s];
    for j in 0..s {
        for k in j + 1..s {
            let v: Vec<i64> = (0..m).map(|_| r.random_range(-4..=4)).collect();
            u[k][j] = v.iter().map(|x| -x).collect();
            u[j][k] = v;
        }
    }
    let base = CocycleData::from_ratio(u, m).unwrap();
    let mut rep = base.representative().to_vec();
    for j in 0..s {
        for k in j..s {
            let sym: Vec<i64> = (0..m).map(|_| r.random_range(-3..=3)).collect();
            for t in 0..m {
                rep[j][k][t] += sym[t];
                if j != k {
                    rep[k][j][t] += sym[t];
                }
            }
        }
    }
    base.with_representative(rep).unwrap()
}

fn random_element(r: &mut ChaCha8Rng, s: usize) -> GroupElement {
    GroupElement((0..s).map(|_| r.random_range(-5..=5)).collect())
}

/// `g -> sigma(g, k)/sigma(k, g)` is bimultiplicative and agrees with the ratio lattice,
/// recomputed from the bilinear representative. Returns the number of failures.
pub fn lemma_u_suite(n: usize, seed: u64) -> usize {
    let mut r = rng(seed);
    let mut failures = 0;
    for _ in 0..n {
        let s = r.random_range(1..=3);
        let m = r.random_range(1..=2);
        let c = random_cocycle(&mut r, s, m);
        let (g, h, k) = (random_element(&mut r, s), random_element(&mut r, s), random_element(&mut r, s));
        let from_rep = |a: &GroupElement, b: &GroupElement| -> Vec<i64> {
            let (x, y) = (c.sigma_exps(a, b), c.sigma_exps(b, a));
            x.iter().zip(&y).map(|(p, q)| p - q).collect()
        };
        let add = |a: Vec<i64>, b: Vec<i64>| -> Vec<i64> { a.iter().zip(&b).map(|(p, q)| p + q).collect() };
        let ok = from_rep(&g.add(&h), &k) == add(from_rep(&g, &k), from_rep(&h, &k))
            && from_rep(&k, &g.add(&h)) == add(from_rep(&k, &g), from_rep(&k, &h))
            && from_rep(&g, &k) == c.ratio_exps(&g, &k)
            && c.ratio_exps(&g, &g).iter().all(|e| *e == 0);
        failures += usize::from(!ok);
    }
    failures
}

fn masuoka_cocycle(r: &mut ChaCha8Rng) -> HCocycle {
    let mut xx = BTreeMap::new();
    let v = r.random_range(-3..=3);
    if v != 0 {
        xx.insert((0, 1), RF::from_int(v).checked_div(&(&RF::param(0) - &RF::one())).unwrap());
    }
    HCocycle { group: random_cocycle(r, 2, 1), xx }
}

/// `S^-1 o S = id` and `S o S^-1 = id` for generalized antipodes between two random
/// cocycles, on the generators and on a few products `g x_k`.
pub fn antipode_suite(n: usize, seed: u64) -> usize {
    let mut r = rng(seed);
    let mut failures = 0;
    for _ in 0..n {
        let a = nonzero(&mut r, -3, 3);
        let d = rank_two_datum(a, a, -a);
        let h = Cogroupoid::new(&d);
        let (sigma, tau) = (masuoka_cocycle(&mut r), masuoka_cocycle(&mut r));
        let mut basis = vec![HBasis::group(GroupElement(vec![1, 0])), HBasis::group(GroupElement(vec![0, 1]))];
        for k in 0..2 {
            basis.push(HBasis::skew(GroupElement(vec![0, 0]), k));
            basis.push(HBasis::skew(random_element(&mut r, 2), k));
        }
        let ok = basis.iter().all(|b| {
            let v = hvec(b.clone());
            let there = h.generalized_antipode(&tau, &sigma, &v).unwrap();
            let back = h.generalized_antipode_inv(&tau, &sigma, &there).unwrap();
            let there2 = h.generalized_antipode_inv(&tau, &sigma, &v).unwrap();
            let back2 = h.generalized_antipode(&tau, &sigma, &there2).unwrap();
            back == v && back2 == v
        });
        failures += usize::from(!ok);
    }
    failures
}

fn same_verdict(a: &CyReport, b: &CyReport) -> bool {
    match (a.verdict.witness(), b.verdict.witness()) {
        (Some(w1), Some(w2)) => a.system.is_solution(w2) && b.system.is_solution(w1),
        (None, None) => true,
        _ => false,
    }
}

fn random_coboundary(r: &mut ChaCha8Rng) -> Coboundary {
    let mut quadratic = BTreeMap::new();
    for (j, k) in [(0, 0), (0, 1), (1, 1)] {
        quadratic.insert((j, k), vec![r.random_range(-3..=3)]);
    }
    Coboundary { linear: vec![vec![r.random_range(-3..=3)], vec![r.random_range(-3..=3)]], quadratic }
}

/// Cleft objects of random rank-two data and crossed products of `k[u, v]`, before
/// and after a random coboundary normalization. Returns (CY cases, failures).
pub fn coboundary_suite(n: usize, seed: u64) -> (usize, usize) {
    let mut r = rng(seed);
    let mut failures = 0;
    let mut cy_seen = 0;
    for i in 0..n {
        let f = random_coboundary(&mut r);
        let u = r.random_range(-4..=4);
        let ok = if i % 5 == 4 {
            let base = load("polynomial_z2").crossed().unwrap();
            let (sigma2, _) = normalize_pair(&base.datum, &ratio(u), &BTreeMap::new(), &f);
            let with = |group: CocycleData| CrossedInput { cocycle: HCocycle { group, xx: BTreeMap::new() }, ..base.clone() };
            let before = decide_cy_crossed(&with(ratio(u))).unwrap();
            let after = decide_cy_crossed(&with(sigma2)).unwrap();
            cy_seen += usize::from(before.is_cy());
            same_verdict(&before, &after)
        } else {
            // every fourth case redraws until the object is CY, so both verdicts get exercised
            let (datum, sigma, before) = loop {
                let (a, d) = (nonzero(&mut r, -4, 4), nonzero(&mut r, -4, 4));
                let (b, u) = (r.random_range(-4..=4), r.random_range(-4..=4));
                let datum = rank_two_datum(a, b, d);
                let before = CleftDatum::new(datum.clone(), ratio(u), BTreeMap::new()).unwrap();
                if i % 4 != 0 || decide_cy_cleft(&before).unwrap().is_cy() {
                    break (datum, ratio(u), before);
                }
            };
            let (sigma2, pi2) = normalize_pair(&datum, &sigma, &before.pi, &f);
            let after = CleftDatum::new(datum, sigma2, pi2).unwrap();
            let (rb, ra) = (decide_cy_cleft(&before).unwrap(), decide_cy_cleft(&after).unwrap());
            cy_seen += usize::from(rb.is_cy());
            same_verdict(&rb, &ra)
        };
        failures += usize::from(!ok);
    }
    (cy_seen, failures)
}

/// Solver answers against a brute-force scan of the box of radius 4. Returns (feasible, failures).
pub fn lattice_suite(n: usize, seed: u64) -> (usize, usize) {
    let mut r = rng(seed);
    let (mut feasible, mut failures) = (0, 0);
    for _ in 0..n {
        let s = r.random_range(1..=3);
        let rows = r.random_range(1..=3);
        let mut sys = LatticeSystem::new(s);
        for t in 0..rows {
            let row: Vec<i64> = (0..s).map(|_| r.random_range(-3..=3)).collect();
            sys.push(row, r.random_range(-5..=5), format!("row {t}")).unwrap();
        }
        let in_box: Vec<GroupElement> = box_points(s, 4).into_iter().filter(|h| sys.is_solution(h)).collect();
        let ok = match solve_lattice(&sys).unwrap() {
            LatticeAnswer::Feasible { witness, kernel } => {
                feasible += 1;
                sys.is_solution(&witness)
                    && kernel.iter().all(|k| sys.is_solution(&witness.add(k)) && sys.is_solution(&witness.sub(&k.scale(3))))
            }
            LatticeAnswer::Infeasible { certificate } => certificate.verify(&sys) && in_box.is_empty(),
        };
        failures += usize::from(!ok);
    }
    (feasible, failures)
}
