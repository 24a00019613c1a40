use hopfcy::cli::catalog;
use hopfcy::cli::config::{parse_file, ConfigFile};
use hopfcy::datum::CocycleData;
use hopfcy::lattice::{solve_lattice, GroupElement, LatticeAnswer, LatticeSystem};
use hopfcy::scalars::RF;
use proptest::prelude::*;

/// Sum of `c q^a t^b` over the given terms.
fn laurent(terms: &[(i64, i64, i64)]) -> RF {
    terms.iter().fold(RF::zero(), |acc, &(c, a, b)| &acc + &(&RF::from_int(c) * &RF::from_exps(&[a, b])))
}

fn term() -> impl Strategy<Value = (i64, i64, i64)> {
    (-4i64..=4, -3i64..=3, -2i64..=2)
}

fn scalar() -> impl Strategy<Value = RF> {
    (prop::collection::vec(term(), 0..4), prop::collection::vec(term(), 1..3)).prop_filter_map("nonzero denominator", |(n, d)| {
        let den = laurent(&d);
        laurent(&n).checked_div(&den).ok()
    })
}

fn group(s: usize) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(-6i64..=6, s).prop_map(GroupElement)
}

fn cocycle(s: usize) -> impl Strategy<Value = CocycleData> {
    (prop::collection::vec(-4i64..=4, s * s), prop::collection::vec(-4i64..=4, s * s)).prop_map(move |(ratio, sym)| {
        let mut u = vec![vec![vec![0]; s]; s];
        for j in 0..s {
            for k in j + 1..s {
                u[j][k] = vec![ratio[j * s + k]];
                u[k][j] = vec![-ratio[j * s + k]];
            }
        }
        let base = CocycleData::from_ratio(u, 1).unwrap();
        let mut rep = base.representative().to_vec();
        for j in 0..s {
            for k in j..s {
                let v = sym[j * s + k];
                rep[j][k][0] += v;
                if j != k {
                    rep[k][j][0] += v;
                }
            }
        }
        base.with_representative(rep).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
            prop_assert!((&b * &b.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_powers(a in scalar(), j in -3i64..=3, k in -3i64..=3) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a.pow(j).unwrap() * &a.pow(k).unwrap(), a.pow(j + k).unwrap());
    }

    #[test]
    fn solver_finds_planted_solutions(
        s in 1usize..=3,
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=3),
        planted in prop::collection::vec(-5i64..=5, 3),
    ) {
        let mut sys = LatticeSystem::new(s);
        for (t, r) in rows.iter().enumerate() {
            let row = r[..s].to_vec();
            let rhs = row.iter().zip(&planted).map(|(a, b)| a * b).sum();
            sys.push(row, rhs, format!("row {t}")).unwrap();
        }
        match solve_lattice(&sys).unwrap() {
            LatticeAnswer::Feasible { witness, kernel } => {
                prop_assert!(sys.is_solution(&witness));
                for k in &kernel {
                    prop_assert!(sys.is_solution(&witness.add(k)));
                }
            }
            LatticeAnswer::Infeasible { .. } => prop_assert!(false, "planted solution missed"),
        }
    }

    #[test]
    fn ratio_is_bimultiplicative(c in cocycle(3), g in group(3), h in group(3), k in group(3)) {
        let sum = |a: Vec<i64>, b: Vec<i64>| -> Vec<i64> { a.iter().zip(&b).map(|(x, y)| x + y).collect() };
        prop_assert_eq!(c.ratio_exps(&g.add(&h), &k), sum(c.ratio_exps(&g, &k), c.ratio_exps(&h, &k)));
        prop_assert_eq!(c.ratio_exps(&k, &g.add(&h)), sum(c.ratio_exps(&k, &g), c.ratio_exps(&k, &h)));
        prop_assert_eq!(c.ratio_exps(&g, &h), c.ratio_exps(&h, &g).iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn config_round_trips(idx in 0usize..catalog::ENTRIES.len()) {
        let (_, text) = catalog::ENTRIES[idx];
        let file = parse_file(text).unwrap();
        let json = serde_json::to_string(&file).unwrap();
        prop_assert_eq!(&parse_file(&json).unwrap(), &file);
        let toml_text = toml::to_string(&file).unwrap();
        let back: ConfigFile = parse_file(&toml_text).unwrap();
        prop_assert_eq!(back, file);
    }
}
