mod common;

use common::{build, corpus_up_to};
use pg_core::cache::PairCache;
use pg_core::checks::families_for;
use pg_core::families::{self, Family};
use pg_core::structure;
use proptest::prelude::*;

// Every corpus group except Alt(5) x Alt(5); that one is sampled below.
const EXHAUSTIVE: usize = 1000;

#[test]
fn membership_is_symmetric() {
    for (name, g) in corpus_up_to(EXHAUSTIVE) {
        for fam in families_for(&g) {
            let sets: Vec<_> = (0..g.order()).map(|x| families::f_set(&g, x, fam)).collect();
            for x in 0..g.order() {
                for y in sets[x].iter() {
                    assert!(sets[y].contains(x), "{name} {fam}: {y} in F({x}) but not conversely");
                }
            }
        }
    }
}

#[test]
fn fast_route_matches_closure_route() {
    for (name, g) in corpus_up_to(200) {
        let cache = PairCache::new(pg_core::cache::DEFAULT_CACHE_BYTES);
        for fam in families_for(&g) {
            for x in 0..g.order() {
                assert_eq!(
                    families::f_set(&g, x, fam),
                    families::f_set_by_closure(&g, x, fam, &cache),
                    "{name} {fam} x = {x}"
                );
            }
        }
    }
}

#[test]
fn exponent_two_characterization() {
    for (name, g) in corpus_up_to(EXHAUSTIVE) {
        for x in 0..g.order() {
            let f = families::f_set(&g, x, Family::Exp2);
            for y in 0..g.order() {
                let expected = g.pow(x, 2) == 0 && g.pow(y, 2) == 0 && g.commutes(x, y);
                assert_eq!(f.contains(y), expected, "{name} x = {x} y = {y}");
            }
        }
    }
}

#[test]
fn measure_does_not_drop_in_quotients() {
    for (name, g) in corpus_up_to(100) {
        let fams = families_for(&g);
        for n in structure::normal_subgroups(&g) {
            let q = structure::quotient(&g, &n).unwrap();
            for &fam in &fams {
                for x in 0..g.order() {
                    let up = families::measure_finite(&g, x, fam);
                    let down = families::measure_finite(&q.group, q.project(x), fam);
                    assert!(up <= down, "{name} |N| = {} {fam} x = {x}", n.order());
                }
            }
        }
    }
}

#[test]
fn full_lambda_lands_in_radicals() {
    for (name, g) in corpus_up_to(EXHAUSTIVE) {
        let fit = structure::fitting(&g);
        for p in g.primes() {
            let op = structure::o_p(&g, p);
            for x in (0..g.order()).filter(|&x| g.is_p_element(x, p)) {
                if families::lambda_p_set(&g, x, p).unwrap().card() == g.order() {
                    assert!(op.contains(x), "{name} p = {p} x = {x}");
                }
            }
        }
        for x in 0..g.order() {
            if families::lambda_nil_set(&g, x).card() == g.order() {
                assert!(fit.contains(x), "{name} x = {x}");
            }
        }
    }
}

#[test]
fn lambda_rejects_non_p_elements() {
    let s3 = build("sym(3)");
    let r = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
    assert!(matches!(families::lambda_p_set(&s3, r, 2), Err(pg_core::Error::NotPElement { .. })));
}

#[test]
fn large_product_sampled() {
    let g = build("prod(alt(5),alt(5))");
    // one element from each of a few conjugacy classes
    let reps: Vec<usize> = g.conjugacy_classes().iter().map(|c| c[0]).step_by(9).collect();
    for &x in &reps {
        let f = families::f_set(&g, x, Family::Solvable);
        for y in f.iter().step_by(97) {
            assert!(families::f_set(&g, y, Family::Solvable).contains(x));
        }
        let h = 1234 % g.order();
        assert_eq!(families::f_set(&g, g.conjugate(x, h), Family::Solvable), g.conjugate_set(&f, h));
    }
}

fn small_groups() -> Vec<(String, pg_core::FiniteGroup)> {
    corpus_up_to(72).into_iter().filter(|(_, g)| g.order() > 2).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_equivariance(pick in 0usize..64, h in 0usize..1000, fam_pick in 0usize..16) {
        let groups = small_groups();
        let (name, g) = &groups[pick % groups.len()];
        let fams = families_for(g);
        let fam = fams[fam_pick % fams.len()];
        let h = h % g.order();
        for x in 0..g.order() {
            let lhs = families::f_set(g, g.conjugate(x, h), fam);
            let rhs = g.conjugate_set(&families::f_set(g, x, fam), h);
            prop_assert_eq!(lhs, rhs, "{} {} x = {} h = {}", name, fam, x, h);
        }
    }
}
