use super::*;
use crate::expr::parse_words;

fn q(k: i64) -> RF {
    RF::from_exps(&[k])
}

fn alg(vars: &[&str], big_n: usize, rels: &[&str]) -> NHomogeneous {
    let params = vec!["q".to_string()];
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let rels: Vec<WordPoly> = rels.iter().map(|r| parse_words(r, &params, &vars).unwrap()).collect();
    NHomogeneous::new(vars, big_n, &rels).unwrap()
}

fn quantum_plane() -> NHomogeneous {
    alg(&["u", "v"], 2, &["u*v - q*v*u"])
}

#[test]
fn n_function() {
    assert_eq!((n_func(0, 3), n_func(1, 3), n_func(4, 3), n_func(5, 3)), (0, 1, 6, 7));
    assert!((0..8).all(|i| n_func(i, 2) == i));
}

#[test]
fn quantum_plane_pieces() {
    let a = quantum_plane();
    let qa = a.quotient(5);
    assert!((0..=5).all(|t| qa.dim(t) == t + 1));
    let d = a.dual();
    assert_eq!(d.relations().len(), 3);
    let qd = d.quotient(3);
    assert_eq!((qd.dim(0), qd.dim(1), qd.dim(2), qd.dim(3)), (1, 2, 1, 0));
    assert_eq!(a.koszul_space(2).len(), 1);
}

#[test]
fn free_and_exterior_duals() {
    let free = alg(&["u", "v"], 2, &[]);
    assert_eq!(free.dual().relations().len(), 4);
    let poly = alg(&["u", "v"], 2, &["u*v - v*u"]);
    assert_eq!(poly.dual().quotient(2).dim(2), 1);
    let f = frobenius_nakayama(&poly, 4).unwrap();
    assert_eq!(f.diagonal, Some(vec![RF::one(), RF::one()]));
}

#[test]
fn quantum_plane_nakayama() {
    let f = frobenius_nakayama(&quantum_plane(), 4).unwrap();
    assert_eq!((f.top_degree, f.gldim), (2, 2));
    assert_eq!(f.diagonal, Some(vec![q(1), q(-1)]));
    assert!(f.routes_agree());
    assert!(f.sequence_is_complex);
}

#[test]
fn homological_determinants() {
    let plane = quantum_plane();
    assert_eq!(plane.hdet(&TensorAction::Group(vec![q(1), q(-1)]), 2).unwrap(), RF::one());
    let poly = alg(&["x1", "x2"], 2, &["x1*x2 - x2*x1"]);
    assert_eq!(poly.hdet(&TensorAction::Group(vec![q(1), q(1)]), 2).unwrap(), q(2));
    assert_eq!(poly.hdet(&TensorAction::Group(vec![RF::one(), RF::one()]), 2).unwrap(), RF::one());
    let swap = TensorAction::Skew { grouplike: vec![RF::one(); 2], matrix: vec![vec![RF::zero(), RF::one()], vec![RF::zero(); 2]] };
    assert_eq!(poly.hdet(&swap, 2).unwrap(), RF::zero());
    let bad = TensorAction::Skew { grouplike: vec![q(1), RF::one()], matrix: vec![vec![RF::zero(), RF::one()], vec![RF::zero(); 2]] };
    assert!(matches!(plane.hdet(&bad, 2), Err(KoszulError::Action(_))));
}

#[test]
fn small_koszul_certificates() {
    for a in [quantum_plane(), alg(&["v"], 2, &["v*v"]), alg(&["u", "v"], 2, &[])] {
        let r = koszulity_certificate(&a, 4).unwrap();
        assert!(r.koszul_up_to_bound, "{r:?}");
        assert!(r.slices.iter().all(|s| s.lr_commute));
        assert!(r.dual_complex.iter().all(|c| c.ok));
    }
}

#[test]
fn non_koszul_quadratic_algebra_is_caught() {
    // Hilbert series 1 + 2t + 2t^2, whose inverse at -t has a negative t^4 coefficient
    let a = alg(&["u", "v"], 2, &["u*v", "u*u - v*v"]);
    let r = koszulity_certificate(&a, 4).unwrap();
    assert_eq!(r.algebra_dims, vec![1, 2, 2, 0, 0]);
    assert!(!r.koszul_up_to_bound);
    assert!(r.slices[..4].iter().all(|s| s.exact));
    assert!(!r.slices[4].exact && r.slices[4].composes_to_zero);
}

#[test]
fn cubic_algebra() {
    let a = alg(&["x", "y"], 3, &["x*x*y - y*x*x", "x*y*y - y*y*x"]);
    let f = frobenius_nakayama(&a, 6).unwrap();
    assert_eq!((f.top_degree, f.gldim), (4, 3));
    assert!(f.routes_agree());
    assert!(f.sequence_is_complex);
    let r = koszulity_certificate(&a, 5).unwrap();
    assert!(r.koszul_up_to_bound, "{:?}", r.slices);
}
