//! Exhaustive checks of identities and inequalities on concrete groups. Each
//! returns the data needed to judge it, so callers can report exact values.

use crate::arith;
use crate::constructors::{self as c, DirectProduct};
use crate::elements::ElementSet;
use crate::error::Result;
use crate::families::{self, Family};
use crate::group::FiniteGroup;
use crate::rational::{ratio, Rational};
use crate::structure::{self, ChiefSeries};

/// `μ(F_{Y_t}(g^{p^t}))` for the `p`-group family, with `Y_t = wreath_y(p, q, t)`.
pub fn y_socle_measure(p: u64, q: u64, t: u32, cap: usize) -> Result<Rational> {
    let y = c::wreath_y(p, q, t, cap)?;
    let x = y.group.pow(y.g, y.n_t as i64);
    Ok(families::measure_finite(&y.group, x, Family::PGroup(p)))
}

/// Whether `F_{Y_1}(g^p)` for the `p`-group family is exactly `<g>`.
pub fn y_sylow_unique(p: u64, q: u64, cap: usize) -> Result<(usize, usize, bool)> {
    let y = c::wreath_y(p, q, 1, cap)?;
    let x = y.group.pow(y.g, y.n_t as i64);
    let f = families::f_set(&y.group, x, Family::PGroup(p));
    let g = y.group.generated_subgroup(&[y.g]);
    Ok((f.card(), g.order(), f == g.set))
}

/// Fraction of odd-order elements of `SL(2, q)`, i.e. `μ(F(1))` for odd-order solvable groups.
pub fn sl_odd_fraction(q: u64, cap: usize) -> Result<Rational> {
    let s = c::sl2(q, cap)?;
    Ok(families::measure_finite(&s.group, 0, Family::OddSolvable))
}

#[derive(Clone, Debug)]
pub struct BaerCheck {
    pub order: usize,
    pub o_p_order: usize,
    pub lambda_fraction: Rational,
    pub bound: Rational,
}

pub fn baer_check(p: u64, t: u32, q: u64, n: u32, cap: usize) -> Result<BaerCheck> {
    let b = c::baer_group(p, t, q, n, cap)?;
    let l = families::lambda_p_set(&b.group, b.x, p)?;
    Ok(BaerCheck {
        order: b.group.order(),
        o_p_order: structure::o_p(&b.group, p).order(),
        lambda_fraction: families::fraction(&l),
        bound: ratio(n as u128 - 1, n as u128),
    })
}

#[derive(Clone, Debug)]
pub struct XCheck {
    pub order: usize,
    pub center_order: usize,
    pub hypercenter_order: usize,
    /// `|W · Ω_p(Y)| / |X|`.
    pub core_fraction: Rational,
    /// Whether `W · Ω_p(Y)` lies inside the nilpotentizer of `g_W`.
    pub core_inside: bool,
    pub nil_fraction: Rational,
    pub bound: Rational,
}

pub fn x_check(p: u64, q: u64, t: u32, cap: usize) -> Result<XCheck> {
    let x = c::group_x(p, q, t, cap)?;
    let g = &x.group;
    let nil = families::nilpotentizer(g, x.g_w);
    let omega = ElementSet::from_indices(g.order(), x.y.iter().filter(|&y| g.is_p_element(y, p)));
    let core = g.product_set(&x.w.set, &omega);
    Ok(XCheck {
        order: g.order(),
        center_order: g.center().order(),
        hypercenter_order: structure::hypercenter(g).order(),
        core_fraction: families::fraction(&core),
        core_inside: core.is_subset(&nil),
        nil_fraction: families::fraction(&nil),
        bound: Rational::from_integer(1.into()) - ratio(1, arith::checked_pow(p, t as u64 + 1).unwrap_or(u128::MAX)),
    })
}

/// `{ g p-element : g centralizes every nonabelian chief factor and every abelian p'-factor }`.
pub fn op_by_chief_factors(g: &FiniteGroup, series: &ChiefSeries, p: u64) -> ElementSet {
    ElementSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&x| {
            g.is_p_element(x, p)
                && series.factors.iter().enumerate().all(|(i, f)| {
                    (!f.nonabelian && f.prime == Some(p)) || structure::centralizes_factor(g, x, series, i)
                })
        }),
    )
}

/// For every prime dividing `|G|`: the chief-factor characterization against `O_p(G)`.
pub fn op_criterion(g: &FiniteGroup) -> Vec<(u64, bool)> {
    let series = structure::chief_series(g);
    g.primes().into_iter().map(|p| (p, op_by_chief_factors(g, &series, p) == structure::o_p(g, p).set)).collect()
}

/// One instance of the nilpotentizer quotient inequality.
#[derive(Clone, Debug)]
pub struct NilQuotientCase {
    pub n_order: usize,
    pub p: u64,
    pub x: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// For each abelian minimal normal `p`-subgroup `N` and every `x`:
/// `μ(nil_G(x)) <= μ(nil_{G/N}(xN)) · |C_N(x_{p'})| / |N|`. Returns every instance.
pub fn nil_quotient_bound(g: &FiniteGroup) -> Result<Vec<NilQuotientCase>> {
    let mut out = Vec::new();
    for n in structure::minimal_normal_subgroups(g) {
        let Some((p, _)) = arith::prime_power(n.order() as u64) else { continue };
        if g.derived_subgroup(&n).order() != 1 {
            continue;
        }
        let quo = structure::quotient(g, &n)?;
        for x in 0..g.order() {
            let lhs = families::fraction(&families::nilpotentizer(g, x));
            let top = families::fraction(&families::nilpotentizer(&quo.group, quo.project(x)));
            let (_, xq) = g.p_decomposition(x, p);
            let cn = n.iter().filter(|&k| g.commutes(k, xq)).count();
            let rhs = top * ratio(cn as u128, n.order() as u128);
            out.push(NilQuotientCase { n_order: n.order(), p, x, lhs, rhs });
        }
    }
    Ok(out)
}

/// Counts for the coset identity `Λ_{G,p}(x) ∩ yN = y C_N(x^y) C_N(x)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaCosetReport {
    /// Instances `(N, p, x, y)` checked.
    pub instances: usize,
    /// Instances with nontrivial `N`.
    pub nontrivial: usize,
    pub failures: usize,
}

/// Checks the coset identity for every normal `p'`-subgroup `N` (trivial included),
/// every prime `p` dividing `|G|`, every `p`-element `x` and every `y` in `Λ_{G,p}(x)`.
pub fn lambda_coset_identity(g: &FiniteGroup) -> Result<LambdaCosetReport> {
    let mut r = LambdaCosetReport::default();
    let normals = structure::normal_subgroups(g);
    for p in g.primes() {
        let ns: Vec<_> = normals.iter().filter(|n| !(n.order() as u64).is_multiple_of(p)).collect();
        for x in (0..g.order()).filter(|&x| g.is_p_element(x, p)) {
            let lambda = families::lambda_p_set(g, x, p)?;
            let cx = ElementSet::from_indices(g.order(), (0..g.order()).filter(|&k| g.commutes(k, x)));
            for n in &ns {
                let cnx = n.set.intersection(&cx);
                for y in lambda.iter() {
                    let coset = g.translate(y, &n.set);
                    let lhs = lambda.intersection(&coset);
                    let xy = g.conjugate(x, y);
                    let cnxy = ElementSet::from_indices(g.order(), n.iter().filter(|&k| g.commutes(k, xy)));
                    let rhs = g.translate(y, &g.product_set(&cnxy, &cnx));
                    r.instances += 1;
                    r.nontrivial += (n.order() > 1) as usize;
                    r.failures += (lhs != rhs) as usize;
                }
            }
        }
    }
    Ok(r)
}

/// `(∩_g nil_G(g), Z_∞(G))`.
pub fn hypercenter_identity(g: &FiniteGroup) -> (ElementSet, ElementSet) {
    (families::nilpotentizer_intersection(g), structure::hypercenter(g).into_set())
}

#[derive(Clone, Debug)]
pub struct NonClosureWitness {
    pub set_size: usize,
    pub a: usize,
    pub b: usize,
    pub product: usize,
    pub orders: (u64, u64, u64),
}

/// In `frob_cyclic(p, m, q)` with the `q`-group family, the set of `x` with
/// `F_G(x)` nonempty is not closed under products; returns the least witness pair.
pub fn frobenius_non_closure(p: u64, m: u32, q: u64, cap: usize) -> Result<Option<NonClosureWitness>> {
    let g = c::frob_cyclic(p, m, q, cap)?;
    let set = families::f_positive_set_finite(&g, Family::PGroup(q));
    Ok(families::product_closure_witness(&g, &set).map(|(a, b)| {
        let product = g.mul(a, b);
        NonClosureWitness {
            set_size: set.card(),
            a,
            b,
            product,
            orders: (g.element_order(a), g.element_order(b), g.element_order(product)),
        }
    }))
}

#[derive(Clone, Debug)]
pub struct AltCheck {
    pub min: Rational,
    pub max: Rational,
    /// Nontrivial elements with a partner generating the whole group.
    pub two_generated: usize,
    pub nontrivial: usize,
}

/// Solvabilizer measures of nontrivial elements of `Alt(m)`, and two-generation.
pub fn alt_solvabilizer_bounds(m: u64, cap: usize) -> Result<AltCheck> {
    let g = c::alt(m, cap)?;
    let mut measures = Vec::new();
    let mut two_generated = 0;
    for x in 1..g.order() {
        measures.push(families::measure_finite(&g, x, Family::Solvable));
        if (0..g.order()).any(|y| g.generated_subgroup(&[x, y]).order() == g.order()) {
            two_generated += 1;
        }
    }
    Ok(AltCheck {
        min: measures.iter().min().cloned().unwrap_or_else(|| ratio(1, 1)),
        max: measures.iter().max().cloned().unwrap_or_else(|| ratio(1, 1)),
        two_generated,
        nontrivial: g.order() - 1,
    })
}

/// Families to test on `g`: the built-ins plus the `p`-group family for each prime divisor.
pub fn families_for(g: &FiniteGroup) -> Vec<Family> {
    let mut v = Family::BUILTIN.to_vec();
    v.extend(g.primes().into_iter().map(Family::PGroup));
    v
}

/// Number of `(family, x, y)` triples where `F_{G×H}((x,y)) != F_G(x) × F_H(y)`,
/// and the number checked.
pub fn product_factorization(prod: &DirectProduct) -> (usize, usize) {
    assert_eq!(prod.factors.len(), 2);
    let (a, b) = (&prod.factors[0], &prod.factors[1]);
    let mut fams = families_for(a);
    for f in families_for(b) {
        if !fams.contains(&f) {
            fams.push(f);
        }
    }
    let (mut checked, mut failures) = (0, 0);
    for fam in fams {
        let fa: Vec<ElementSet> = (0..a.order()).map(|x| families::f_set(a, x, fam)).collect();
        let fb: Vec<ElementSet> = (0..b.order()).map(|y| families::f_set(b, y, fam)).collect();
        for x in 0..a.order() {
            for y in 0..b.order() {
                let whole = families::f_set(&prod.group, prod.embed(&[x, y]), fam);
                let parts = prod.product_set(&[fa[x].clone(), fb[y].clone()]);
                checked += 1;
                failures += (whole != parts) as usize;
            }
        }
    }
    (failures, checked)
}

/// Mismatches between the one-pass radicals and the maxima over all normal subgroups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadicalReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

/// Largest member of `normals` with the property; it must contain every other one.
fn largest_with(
    normals: &[crate::group::Subgroup],
    pred: impl Fn(&crate::group::Subgroup) -> bool,
) -> Option<ElementSet> {
    let good: Vec<_> = normals.iter().filter(|n| pred(n)).collect();
    let top = good.iter().max_by_key(|n| n.order())?;
    good.iter().all(|n| n.set.is_subset(&top.set)).then(|| top.set.clone())
}

pub fn radical_oracle(g: &FiniteGroup) -> RadicalReport {
    let normals = structure::normal_subgroups(g);
    let mut r = RadicalReport::default();
    let mut compare = |name: String, fast: ElementSet, oracle: Option<ElementSet>| {
        r.checked += 1;
        if oracle.as_ref() != Some(&fast) {
            r.mismatches.push(name);
        }
    };
    compare(
        "solvable_radical".into(),
        structure::solvable_radical(g).into_set(),
        largest_with(&normals, |n| structure::is_solvable(g, n)),
    );
    compare(
        "fitting".into(),
        structure::fitting(g).into_set(),
        largest_with(&normals, |n| structure::is_nilpotent(g, n)),
    );
    for p in g.primes() {
        compare(
            format!("o_{p}"),
            structure::o_p(g, p).into_set(),
            largest_with(&normals, |n| structure::is_p_group(n, p)),
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn small_instances() {
        assert_eq!(y_socle_measure(2, 3, 1, DEFAULT_CAP).unwrap(), ratio(1, 9));
        assert!(y_sylow_unique(2, 3, DEFAULT_CAP).unwrap().2);
        let s4 = c::sym(4, DEFAULT_CAP).unwrap();
        assert!(op_criterion(&s4).iter().all(|&(_, ok)| ok));
        let cases = nil_quotient_bound(&s4).unwrap();
        assert_eq!(cases.len(), 24);
        assert!(cases.iter().all(|c| c.lhs <= c.rhs));
        let r = lambda_coset_identity(&s4).unwrap();
        assert!(r.nontrivial > 0 && r.failures == 0);
        let (a, b) = hypercenter_identity(&c::dihedral(4, DEFAULT_CAP).unwrap());
        assert_eq!(a, b);
        assert_eq!(radical_oracle(&s4).mismatches, Vec::<String>::new());
    }

    #[test]
    fn frobenius_witness_is_real() {
        let w = frobenius_non_closure(7, 1, 3, DEFAULT_CAP).unwrap().unwrap();
        assert_eq!(w.set_size, 15);
        assert_eq!(w.orders.2, 7);
    }
}
