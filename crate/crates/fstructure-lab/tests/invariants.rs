use fstructure_lab::catalog::{self, Expectation, Manifest, CATALOG};
use fstructure_lab::fstructure::validate_axioms;
use fstructure_lab::jets::{sexpr, ScalarField};
use fstructure_lab::multilinear::{binomial, multi_indices, wedge, KForm};
use fstructure_lab::verify::{Suite, Tolerances};
use proptest::prelude::*;

fn field(depth: u32) -> impl Strategy<Value = ScalarField> {
    let leaf = prop_oneof![(0usize..3).prop_map(ScalarField::coord), (-2.0f64..2.0).prop_map(ScalarField::constant)];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a + &b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a * &b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a - &b),
            inner.clone().prop_map(|a| a.sin()),
            inner.prop_map(|a| a.cos()),
        ]
    })
}

fn form(k: usize, d: usize) -> impl Strategy<Value = KForm> {
    prop::collection::vec(-1.0f64..1.0, binomial(d, k)).prop_map(move |c| {
        let p = vec![0.0; d];
        multi_indices(d, k)
            .iter()
            .zip(&c)
            .fold(KForm::zero(k, d, &p), |acc, (idx, v)| acc.add(&KForm::basis(idx, d, &p).unwrap().scale(*v)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sexpr_round_trip(f in field(4)) {
        let text = f.to_string();
        let back = sexpr::parse(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn jet_derivatives_match_differences(f in field(3), p in prop::collection::vec(-1.0f64..1.0, 3)) {
        let j = f.jet_at(&p).unwrap();
        let h = 1e-4;
        let at = |q: &[f64]| f.value_at(q).unwrap();
        for a in 0..3 {
            let mut q = p.clone();
            q[a] += h;
            let plus = at(&q);
            q[a] -= 2.0 * h;
            let minus = at(&q);
            let scale = 1.0 + j.gradient[a].abs();
            prop_assert!((j.gradient[a] - (plus - minus) / (2.0 * h)).abs() <= 1e-5 * scale);
            for b in 0..3 {
                let g = |sa: f64, sb: f64| {
                    let mut q = p.clone();
                    q[a] += sa;
                    q[b] += sb;
                    at(&q)
                };
                let fd = (g(h, h) - g(h, -h) - g(-h, h) + g(-h, -h)) / (4.0 * h * h);
                prop_assert!((j.hess(a, b) - fd).abs() <= 1e-4 * (1.0 + fd.abs()));
            }
        }
    }

    #[test]
    fn catalog_axioms_hold_at_random_points(k in 0..CATALOG.len(), seed in any::<u64>()) {
        let s = catalog::build(CATALOG[k]).unwrap().structure;
        for p in s.sample_points(2, seed) {
            let r = validate_axioms(&s, &p).unwrap();
            prop_assert!(r.max() <= 1e-9, "{} at {:?}: {}", CATALOG[k], p, r.max());
        }
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(2, 5), b in form(1, 5), c in form(1, 5)) {
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        for (x, y) in ab.components.iter().zip(&ba.components) {
            prop_assert!((x - y).abs() < 1e-12);
        }
        let bc = wedge(&b, &c).unwrap();
        let cb = wedge(&c, &b).unwrap();
        for (x, y) in bc.components.iter().zip(&cb.components) {
            prop_assert!((x + y).abs() < 1e-12);
        }
        prop_assert!(wedge(&b, &b).unwrap().components.iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn exact_manifest_keys_win(fail_exact in any::<bool>(), skip_exact in any::<bool>(), fail_wild in any::<bool>(), skip_wild in any::<bool>()) {
        let mut m = Manifest::default();
        if fail_exact { m.expect_fail.push("lemmas/nearly_c".into()); }
        if skip_exact { m.expect_skip.push("lemmas/nearly_c".into()); }
        if fail_wild { m.expect_fail.push("lemmas/*".into()); }
        if skip_wild { m.expect_skip.push("lemmas/*".into()); }
        let want = if fail_exact {
            Expectation::Fail
        } else if skip_exact {
            Expectation::Skip
        } else if fail_wild {
            Expectation::Fail
        } else if skip_wild {
            Expectation::Skip
        } else {
            Expectation::Pass
        };
        prop_assert_eq!(m.expectation("lemmas", "nearly_c"), want);
        prop_assert_eq!(m.expectation("axioms", "f_skew"), Expectation::Pass);
    }

    #[test]
    fn suite_lists_are_sorted_sets(picks in prop::collection::vec(0..Suite::ALL.len(), 1..12)) {
        let text = picks.iter().map(|&i| Suite::ALL[i].name()).collect::<Vec<_>>().join(" , ");
        let parsed = Suite::parse_list(&text).unwrap();
        let mut want: Vec<Suite> = picks.iter().map(|&i| Suite::ALL[i]).collect();
        want.sort();
        want.dedup();
        prop_assert_eq!(parsed, want);
    }

    #[test]
    fn tolerance_overrides_reject_nonpositive(k in 0..Tolerances::NAMES.len(), v in -1.0f64..1.0) {
        let mut t = Tolerances::default();
        prop_assert_eq!(t.set(Tolerances::NAMES[k], v).is_ok(), v > 0.0);
    }
}

#[test]
fn all_expands_to_every_suite() {
    assert_eq!(Suite::parse_list("all").unwrap(), Suite::ALL.to_vec());
    assert_eq!(Suite::parse_list("lefschetz,all").unwrap(), Suite::ALL.to_vec());
    assert!(Suite::parse_list(" , ").is_err());
}
