use pg_core::families::{self, Family};
use pg_core::profinite::{Tail, Tower, TowerElement, TowerKind};
use pg_core::rational::ratio;
use pg_core::DEFAULT_CAP;

fn tower(s: &str) -> Tower {
    Tower::new(s.parse::<TowerKind>().unwrap(), DEFAULT_CAP)
}

fn elem(s: &str) -> TowerElement {
    s.parse().unwrap()
}

/// `(tower, family, element)` combinations with a registered bound.
fn cases() -> Vec<(&'static str, Family, &'static str)> {
    vec![
        ("altpow(5)", Family::Solvable, "tail=trivial"),
        ("altpow(5)", Family::Solvable, "1=g0;2=g1"),
        ("altpow(5)", Family::Nilpotent, "tail=designated"),
        ("ytower(2,3)", Family::PGroup(2), "tail=trivial"),
        ("ytower(2,3)", Family::PGroup(2), "tail=designated"),
        ("ytower(2,3)", Family::PGroup(2), "1=g0^2"),
        ("xtower(2,3,1)", Family::Nilpotent, "tail=designated"),
        ("xtower(2,3,1)", Family::Nilpotent, "tail=trivial"),
        ("slprod", Family::OddSolvable, "tail=trivial"),
        ("slprod", Family::OddSolvable, "tail=designated"),
        ("slprod", Family::All, "2=g0"),
    ]
}

#[test]
fn deeper_intervals_are_nested() {
    for (t, fam, e) in cases() {
        let tw = tower(t);
        let e = elem(e);
        let ivs: Vec<_> = (0..5).map_while(|d| tw.measure_interval(&e, fam, d).ok()).collect();
        assert!(ivs.len() >= 2, "{t} {fam}");
        for w in ivs.windows(2) {
            assert!(w[0].lo <= w[1].lo && w[1].hi <= w[0].hi, "{t} {fam}: {:?} then {:?}", w[0], w[1]);
            assert!(w[1].lo <= w[1].hi);
        }
    }
}

#[test]
fn truncation_matches_partial_products() {
    for (t, fam, e, depth) in [
        ("altpow(5)", Family::Solvable, "1=g0;2=g1", 2),
        ("altpow(5)", Family::Nilpotent, "1=g0*g1", 2),
        ("ytower(2,3)", Family::PGroup(2), "1=g0^2", 1),
        ("xtower(2,3,1)", Family::Nilpotent, "tail=designated", 1),
        ("slprod", Family::OddSolvable, "tail=trivial", 1),
    ] {
        let tw = tower(t);
        let e = elem(e);
        let prod = tw.truncate(depth).unwrap();
        let mut parts = Vec::new();
        let mut exact = ratio(1, 1);
        for (i, idx) in tw.indices(depth).enumerate() {
            let b = tw.factor(idx).unwrap();
            let x = match e.support.get(&idx) {
                Some(w) => w.eval(&b.group).unwrap(),
                None if e.tail == Tail::Designated => b.distinguished.unwrap(),
                None => 0,
            };
            exact *= families::measure_finite(&prod.factors[i], x, fam);
            parts.push(x);
        }
        let whole = families::measure_finite(&prod.group, prod.embed(&parts), fam);
        assert_eq!(whole, exact, "{t} {fam}");
        let iv = tw.measure_interval(&e, fam, depth).unwrap();
        assert_eq!(iv.hi, exact, "{t} {fam}");
    }
}

#[test]
fn registered_bounds_hold_on_small_factors() {
    let mut checked = 0;
    for (t, fam, _) in cases() {
        let tw = tower(t);
        for tail in [Tail::Trivial, Tail::Designated] {
            for idx in tw.indices(4) {
                if tw.factor_order(idx).is_none_or(|o| o > 10_000) {
                    continue;
                }
                let Ok(bound) = tw.factor_bound(idx, fam, tail) else { continue };
                let v = tw.enumerate_tail(idx, fam, tail).unwrap();
                assert!(bound.lo <= v && v <= bound.hi, "{t} {fam} {tail:?} t = {idx}: {v} vs {bound:?}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "{checked}");
}

#[test]
fn odd_order_density_of_sl_factors() {
    let tw = tower("slprod");
    for n in 2..=4u64 {
        let v = tw.enumerate_tail(n, Family::OddSolvable, Tail::Trivial).unwrap();
        assert_eq!(v, ratio(1, 1) - ratio(1, 1 << n));
    }
}

#[test]
fn y_factor_trivial_bound() {
    let tw = tower("ytower(2,3)");
    for t in 1..=2 {
        let v = tw.enumerate_tail(t, Family::PGroup(2), Tail::Trivial).unwrap();
        assert!(v >= ratio(1, 1) - ratio(1, 1 << (t + 1)));
    }
}

#[test]
fn uniform_constant_forces_zero() {
    let tw = tower("altpow(5)");
    let c = tw.alt_max_nontrivial(Family::Solvable).unwrap();
    assert!(c < ratio(1, 1));
    let iv = tw.measure_interval(&TowerElement::designated(), Family::Solvable, 2).unwrap();
    assert_eq!(iv.lo, ratio(0, 1));
    assert!(iv.hi <= c.clone() * c);
}
