mod common;

use common::corpus_up_to;
use pg_core::structure::{self, TieBreak};
use pg_core::{ElementSet, FiniteGroup, Subgroup};

const ALL: usize = usize::MAX;

fn sorted_profile(g: &FiniteGroup, tie: TieBreak) -> Vec<(usize, bool)> {
    let mut v = structure::chief_series_with(g, tie).factor_profile();
    v.sort();
    v
}

#[test]
fn chief_factors_do_not_depend_on_the_series() {
    for (name, g) in corpus_up_to(ALL) {
        let least = sorted_profile(&g, TieBreak::Least);
        assert_eq!(least, sorted_profile(&g, TieBreak::Greatest), "{name}");
        assert_eq!(least.iter().map(|f| f.0).product::<usize>(), g.order(), "{name}");
    }
}

#[test]
fn o_p_is_the_core_of_a_sylow_subgroup() {
    for (name, g) in corpus_up_to(ALL) {
        for p in g.primes() {
            let s = structure::sylow(&g, p);
            let core = (0..g.order()).fold(s.set.clone(), |acc, h| acc.intersection(&g.conjugate_set(&s.set, h)));
            assert_eq!(structure::o_p(&g, p).set, core, "{name} p = {p}");
        }
    }
}

#[test]
fn fitting_is_the_product_of_the_o_p() {
    for (name, g) in corpus_up_to(ALL) {
        let product = g
            .primes()
            .into_iter()
            .fold(g.trivial_subgroup().set, |acc, p| g.product_set(&acc, &structure::o_p(&g, p).set));
        assert_eq!(structure::fitting(&g).set, product, "{name}");
    }
}

#[test]
fn hypercenter_is_everything_exactly_when_nilpotent() {
    for (name, g) in corpus_up_to(ALL) {
        let full = structure::hypercenter(&g).order() == g.order();
        assert_eq!(full, structure::is_nilpotent(&g, &g.whole()), "{name}");
        assert_eq!(
            structure::is_nilpotent(&g, &g.whole()),
            structure::is_nilpotent_by_sylow_count(&g, &g.whole().set),
            "{name}"
        );
    }
}

#[test]
fn sylow_subgroups_have_full_p_part() {
    for (name, g) in corpus_up_to(ALL) {
        for p in g.primes() {
            let s = structure::sylow(&g, p);
            let mut part = 1;
            while g.order() % (part * p as usize) == 0 {
                part *= p as usize;
            }
            assert_eq!(s.order(), part, "{name} p = {p}");
            assert!(structure::is_p_group(&s.set, p));
        }
    }
}

fn join(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut seed = a.gens.clone();
    seed.extend(&b.gens);
    g.generated_subgroup(&seed)
}

fn nonabelian_minimal_normals(g: &FiniteGroup) -> Vec<Subgroup> {
    structure::minimal_normal_subgroups(g).into_iter().filter(|n| g.derived_subgroup(n).order() > 1).collect()
}

/// For `H ⊴ G`, `N` a nonabelian minimal normal subgroup of `G` inside `H`
/// and `M ⊴ H`, the `H`-chief length of `NM/M` is at most `|G:H|`.
#[test]
fn relative_chief_length_is_bounded_by_the_index() {
    let mut instances = 0;
    for (name, g) in corpus_up_to(ALL) {
        let normals = structure::normal_subgroups(&g);
        for n in nonabelian_minimal_normals(&g) {
            for h in normals.iter().filter(|h| n.set.is_subset(&h.set)) {
                for m in structure::normal_subgroups_of(&g, h) {
                    let nm = join(&g, &n, &m);
                    let series = structure::relative_series(&g, &h.gens, &m, &nm, TieBreak::Least);
                    assert!(series.len() <= g.order() / h.order(), "{name} |H| = {} |M| = {}", h.order(), m.order());
                    instances += 1;
                }
            }
        }
    }
    assert!(instances > 0);
}

/// For `N` nonabelian minimal normal and `gN` of odd order, some `n ∈ N` gives
/// `gn` of odd order outside `C_G(N)`.
#[test]
fn odd_coset_elements_escape_the_centralizer() {
    let mut instances = 0;
    for (name, g) in corpus_up_to(ALL) {
        for n in nonabelian_minimal_normals(&g) {
            let q = structure::quotient(&g, &n).unwrap();
            let c = g.centralizer_of(&n);
            for x in (0..g.order()).filter(|&x| q.group.element_order(q.project(x)) % 2 == 1) {
                let found = n.iter().any(|k| {
                    let y = g.mul(x, k);
                    g.element_order(y) % 2 == 1 && !c.contains(y)
                });
                assert!(found, "{name} |N| = {} x = {x}", n.order());
                instances += 1;
            }
        }
    }
    assert!(instances > 0);
}

#[test]
fn quotient_orders_and_preimages() {
    for (name, g) in corpus_up_to(200) {
        for n in structure::normal_subgroups(&g) {
            let q = structure::quotient(&g, &n).unwrap();
            assert_eq!(q.order() * n.order(), g.order(), "{name}");
            for x in 0..g.order() {
                for y in [0, g.order() / 2, g.order() - 1] {
                    assert_eq!(q.project(g.mul(x, y)), q.group.mul(q.project(x), q.project(y)), "{name}");
                }
            }
            let identity = ElementSet::from_indices(q.order(), [0]);
            assert_eq!(q.preimage(&identity), n.set, "{name}");
        }
    }
}

#[test]
fn radical_chain() {
    for (name, g) in corpus_up_to(ALL) {
        let fit = structure::fitting(&g);
        let rad = structure::solvable_radical(&g);
        assert!(structure::hypercenter(&g).set.is_subset(&fit.set), "{name}");
        assert!(fit.set.is_subset(&rad.set), "{name}");
        assert!(g.is_normal(&rad) && g.is_normal(&fit), "{name}");
    }
}
