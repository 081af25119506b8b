//! Quotients, chief series, Sylow subgroups and the radical-type subgroups.

use crate::arith;
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::group::{closure, FiniteGroup, Subgroup};
use crate::perm::Permutation;

/// `G/N` realized as the action of `G` on the cosets of `N`.
#[derive(Debug)]
pub struct QuotientGroup {
    /// The quotient as a permutation group on the cosets.
    pub group: FiniteGroup,
    pub kernel: Subgroup,
    /// Least element index in each coset, indexed by coset number.
    pub representatives: Vec<usize>,
    coset_of: Vec<u32>,
    projection: Vec<u32>,
}

impl QuotientGroup {
    /// Image of `x` in `group`.
    pub fn project(&self, x: usize) -> usize {
        self.projection[x] as usize
    }

    /// Coset number of `x` (cosets numbered by least member).
    pub fn coset(&self, x: usize) -> usize {
        self.coset_of[x] as usize
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Full preimage of a set of quotient elements.
    pub fn preimage(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.projection.len(),
            (0..self.projection.len()).filter(|&x| set.contains(self.project(x))),
        )
    }
}

pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<QuotientGroup> {
    if !n.contains(0) || !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut representatives = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] == u32::MAX {
            let c = representatives.len() as u32;
            for k in n.iter() {
                coset_of[g.mul(k, x)] = c;
            }
            representatives.push(x);
        }
    }
    let m = representatives.len();
    let gens: Vec<Permutation> = g
        .generator_indices()
        .iter()
        .map(|&s| {
            Permutation::from_images(representatives.iter().map(|&r| coset_of[g.mul(r, s)] as usize).collect())
                .expect("coset action is a permutation")
        })
        .collect();
    let group = closure(m, &gens, usize::MAX)?;
    debug_assert_eq!(group.order(), m);
    // Homomorphic projection along a breadth-first walk of G.
    let gen_images: Vec<usize> = gens.iter().map(|p| group.index_of(p).expect("generator image")).collect();
    let mut projection = vec![u32::MAX; g.order()];
    projection[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &si) in g.generator_indices().iter().zip(&gen_images) {
            let y = g.mul(x, s);
            if projection[y] == u32::MAX {
                projection[y] = group.mul(projection[x] as usize, si) as u32;
                queue.push(y);
            }
        }
    }
    Ok(QuotientGroup { group, kernel: n.clone(), representatives, coset_of, projection })
}

/// Minimal normal subgroups, ordered by (order, sorted element indices).
pub fn minimal_normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let bottom = g.trivial_subgroup();
    minimal_over(g, g.generator_indices(), &bottom, &g.whole())
}

/// Subgroups `M` with `bottom < M <= top`, normalized by `acting`, minimal with that property.
fn minimal_over(g: &FiniteGroup, acting: &[usize], bottom: &Subgroup, top: &Subgroup) -> Vec<Subgroup> {
    let mut visited = bottom.set.clone();
    let mut candidates: Vec<Subgroup> = Vec::new();
    for x in top.iter() {
        if visited.contains(x) {
            continue;
        }
        // Elements in one acting-orbit give the same closure.
        let mut orbit = vec![x];
        visited.insert(x);
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for &a in acting {
                let c = g.conjugate(y, a);
                if visited.insert(c) {
                    orbit.push(c);
                }
            }
        }
        let mut seed = bottom.gens.clone();
        seed.push(x);
        let m = g.closure_under(&seed, acting);
        if !candidates.iter().any(|c| c.set == m.set) {
            candidates.push(m);
        }
    }
    let mut minimal: Vec<Subgroup> = candidates
        .iter()
        .filter(|m| !candidates.iter().any(|o| o.order() < m.order() && o.set.is_subset(&m.set)))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.iter().cmp(b.iter())));
    minimal
}

/// Which minimal candidate a chief series lifts at each step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Least order, then least sorted index sequence.
    #[default]
    Least,
    /// Greatest order, then greatest sorted index sequence.
    Greatest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorInfo {
    pub order: usize,
    pub abelian: bool,
    /// The prime, for abelian factors.
    pub prime: Option<u64>,
    pub nonabelian: bool,
}

/// An ascending normal series `1 = N_0 < N_1 < .. < N_k = top`.
#[derive(Clone, Debug)]
pub struct ChiefSeries {
    pub terms: Vec<Subgroup>,
    /// `factors[i]` describes `terms[i + 1] / terms[i]`.
    pub factors: Vec<FactorInfo>,
}

impl ChiefSeries {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.order).collect()
    }

    /// Sorted `(order, abelian)` pairs, independent of the series chosen.
    pub fn factor_profile(&self) -> Vec<(usize, bool)> {
        let mut v: Vec<(usize, bool)> = self.factors.iter().map(|f| (f.order, f.abelian)).collect();
        v.sort();
        v
    }

    pub fn nonabelian_count(&self) -> usize {
        self.factors.iter().filter(|f| f.nonabelian).count()
    }
}

pub fn chief_series(g: &FiniteGroup) -> ChiefSeries {
    chief_series_with(g, TieBreak::Least)
}

pub fn chief_series_with(g: &FiniteGroup, tie: TieBreak) -> ChiefSeries {
    relative_series(g, g.generator_indices(), &g.trivial_subgroup(), &g.whole(), tie)
}

/// A series from `bottom` to `top` whose terms are normalized by `acting` and
/// refine maximally (a chief series of `top/bottom` under `acting`).
pub fn relative_series(
    g: &FiniteGroup,
    acting: &[usize],
    bottom: &Subgroup,
    top: &Subgroup,
    tie: TieBreak,
) -> ChiefSeries {
    let mut terms = vec![bottom.clone()];
    let mut factors = Vec::new();
    while terms.last().unwrap().order() < top.order() {
        let cur = terms.last().unwrap();
        let mut mins = minimal_over(g, acting, cur, top);
        let next = match tie {
            TieBreak::Least => mins.swap_remove(0),
            TieBreak::Greatest => mins.pop().unwrap(),
        };
        factors.push(factor_info(g, cur, &next));
        terms.push(next);
    }
    ChiefSeries { terms, factors }
}

fn factor_info(g: &FiniteGroup, lower: &Subgroup, upper: &Subgroup) -> FactorInfo {
    let order = upper.order() / lower.order();
    let abelian = upper.gens.iter().all(|&a| upper.gens.iter().all(|&b| lower.contains(g.commutator(a, b))));
    let prime = if abelian { arith::prime_power(order as u64).map(|(p, _)| p) } else { None };
    FactorInfo { order, abelian, prime, nonabelian: !abelian }
}

/// Whether `[X, g] <= Y` for factor `i` of `series` (`X = terms[i+1]`, `Y = terms[i]`).
pub fn centralizes_factor(g: &FiniteGroup, x: usize, series: &ChiefSeries, i: usize) -> bool {
    let (lower, upper) = (&series.terms[i], &series.terms[i + 1]);
    upper.gens.iter().all(|&a| lower.contains(g.commutator(a, x)))
}

pub fn p_elements(g: &FiniteGroup, p: u64) -> ElementSet {
    ElementSet::from_indices(g.order(), (0..g.order()).filter(|&x| g.is_p_element(x, p)))
}

/// A Sylow `p`-subgroup, grown from a cyclic subgroup of maximal order inside normalizers.
pub fn sylow(g: &FiniteGroup, p: u64) -> Subgroup {
    let target = arith::p_part(g.order() as u64, p) as usize;
    let start = (0..g.order())
        .filter(|&x| g.is_p_element(x, p))
        .max_by(|&a, &b| g.element_order(a).cmp(&g.element_order(b)).then(b.cmp(&a)))
        .unwrap_or(0);
    let mut s = g.generated_subgroup(&[start]);
    while s.order() < target {
        let n = g.normalizer(&s);
        let y =
            n.iter().find(|&y| !s.contains(y) && g.is_p_element(y, p)).expect("Sylow theory guarantees an extension");
        s = g.extend_subgroup(&s, &[y]);
    }
    s
}

/// Conjugacy class representatives (least member of each class).
fn class_reps(g: &FiniteGroup) -> Vec<usize> {
    g.conjugacy_classes().iter().map(|c| c[0]).collect()
}

/// `<x : <x>^G has the property>`, generated class by class.
fn radical_by(
    g: &FiniteGroup,
    prefilter: impl Fn(usize) -> bool,
    property: impl Fn(&FiniteGroup, &Subgroup) -> bool,
) -> Subgroup {
    let good: Vec<usize> =
        class_reps(g).into_iter().filter(|&x| x != 0 && prefilter(x) && property(g, &g.normal_closure(&[x]))).collect();
    g.normal_closure(&good)
}

pub fn o_p(g: &FiniteGroup, p: u64) -> Subgroup {
    radical_by(g, |x| g.is_p_element(x, p), |_, k| arith::is_power_of(k.order() as u64, p))
}

pub fn fitting(g: &FiniteGroup) -> Subgroup {
    radical_by(g, |_| true, is_nilpotent)
}

pub fn solvable_radical(g: &FiniteGroup) -> Subgroup {
    radical_by(g, |_| true, is_solvable)
}

/// Upper central series limit: `Z_{i+1} = { x : [x, s] in Z_i for every generator s }`.
pub fn hypercenter(g: &FiniteGroup) -> Subgroup {
    let mut z = g.trivial_subgroup();
    loop {
        let next = ElementSet::from_indices(
            g.order(),
            (0..g.order()).filter(|&x| g.generator_indices().iter().all(|&s| z.contains(g.commutator(x, s)))),
        );
        if next.card() == z.order() {
            return z;
        }
        z = g.subgroup_from_set(next);
    }
}

/// Upper central series `Z_0 = 1 <= Z_1 <= ..` up to its limit.
pub fn upper_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut out = vec![g.trivial_subgroup()];
    loop {
        let z = out.last().unwrap();
        let next = ElementSet::from_indices(
            g.order(),
            (0..g.order()).filter(|&x| g.generator_indices().iter().all(|&s| z.contains(g.commutator(x, s)))),
        );
        if next.card() == z.order() {
            return out;
        }
        out.push(g.subgroup_from_set(next));
    }
}

pub fn derived_series(g: &FiniteGroup, s: &Subgroup) -> Vec<Subgroup> {
    let mut out = vec![s.clone()];
    loop {
        let d = g.derived_subgroup(out.last().unwrap());
        if d.order() == out.last().unwrap().order() {
            return out;
        }
        out.push(d);
    }
}

pub fn lower_central_series(g: &FiniteGroup, s: &Subgroup) -> Vec<Subgroup> {
    let mut out = vec![s.clone()];
    loop {
        let d = g.commutator_subgroup(out.last().unwrap(), s);
        if d.order() == out.last().unwrap().order() {
            return out;
        }
        out.push(d);
    }
}

pub fn is_solvable(g: &FiniteGroup, s: &Subgroup) -> bool {
    derived_series(g, s).last().unwrap().order() == 1
}

pub fn is_nilpotent(g: &FiniteGroup, s: &Subgroup) -> bool {
    lower_central_series(g, s).last().unwrap().order() == 1
}

/// Nilpotency by Sylow counting: each Sylow subgroup is normal, i.e. the
/// `p`-elements of `s` number exactly the `p`-part of `|s|`.
pub fn is_nilpotent_by_sylow_count(g: &FiniteGroup, s: &ElementSet) -> bool {
    let n = s.card() as u64;
    arith::prime_divisors(n)
        .into_iter()
        .all(|p| s.iter().filter(|&x| g.is_p_element(x, p)).count() as u64 == arith::p_part(n, p))
}

pub fn is_p_group(s: &ElementSet, p: u64) -> bool {
    arith::is_power_of(s.card() as u64, p)
}

/// Every normal subgroup, by joining normal closures of classes; sorted by
/// (order, sorted element indices).
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    normal_subgroups_of(g, &g.whole())
}

/// Every subgroup of `h` normalized by `h`, in the same order as [`normal_subgroups`].
pub fn normal_subgroups_of(g: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
    // One representative per h-conjugacy class of h.
    let mut seen = ElementSet::empty(g.order());
    seen.insert(0);
    let mut reps = Vec::new();
    for x in h.iter() {
        if seen.contains(x) {
            continue;
        }
        reps.push(x);
        let mut orbit = vec![x];
        seen.insert(x);
        while let Some(y) = orbit.pop() {
            for &a in &h.gens {
                let c = g.conjugate(y, a);
                if seen.insert(c) {
                    orbit.push(c);
                }
            }
        }
    }
    let mut found = vec![g.trivial_subgroup()];
    let mut head = 0;
    while head < found.len() {
        let n = found[head].clone();
        head += 1;
        for &x in &reps {
            if n.contains(x) {
                continue;
            }
            let mut seed = n.gens.clone();
            seed.push(x);
            let m = g.closure_under(&seed, &h.gens);
            if !found.iter().any(|f| f.set == m.set) {
                found.push(m);
            }
        }
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.iter().cmp(b.iter())));
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{alt, cyclic, dihedral, direct_product, sym};
    use crate::group::DEFAULT_CAP;

    #[test]
    fn quotients() {
        let s4 = sym(4, DEFAULT_CAP).unwrap();
        assert_eq!(quotient(&s4, &s4.trivial_subgroup()).unwrap().order(), 24);
        assert_eq!(quotient(&s4, &s4.whole()).unwrap().order(), 1);
        let v4 = minimal_normal_subgroups(&s4).remove(0);
        let q = quotient(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(q.project(s4.mul(a, b)), q.group.mul(q.project(a), q.project(b)));
            }
        }
        let not_normal = s4.generated_subgroup(&[s4.generator_indices()[1]]);
        assert!(matches!(quotient(&s4, &not_normal), Err(Error::NotNormal)));
    }

    #[test]
    fn minimal_normals() {
        let s4 = sym(4, DEFAULT_CAP).unwrap();
        let m = minimal_normal_subgroups(&s4);
        assert_eq!(m.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![4]);
        let a5 = alt(5, DEFAULT_CAP).unwrap();
        assert_eq!(minimal_normal_subgroups(&a5).iter().map(|s| s.order()).collect::<Vec<_>>(), vec![60]);
        let c6 = cyclic(6, DEFAULT_CAP).unwrap();
        assert_eq!(minimal_normal_subgroups(&c6).iter().map(|s| s.order()).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn chief_series_examples() {
        let s4 = sym(4, DEFAULT_CAP).unwrap();
        let cs = chief_series(&s4);
        assert_eq!(cs.factor_orders(), vec![4, 3, 2]);
        assert!(cs.factors.iter().all(|f| f.abelian));
        assert_eq!(cs.factors[0].prime, Some(2));
        assert_eq!(chief_series(&cyclic(4, DEFAULT_CAP).unwrap()).factor_orders(), vec![2, 2]);
        let a5 = chief_series(&alt(5, DEFAULT_CAP).unwrap());
        assert_eq!(a5.factor_orders(), vec![60]);
        assert!(a5.factors[0].nonabelian);
        assert_eq!(chief_series(&cyclic(1, DEFAULT_CAP).unwrap()).len(), 0);
    }

    #[test]
    fn centralizing_factors() {
        let s4 = sym(4, DEFAULT_CAP).unwrap();
        let cs = chief_series(&s4);
        for i in 0..cs.len() {
            assert!(centralizes_factor(&s4, 0, &cs, i));
        }
        let three = (0..24).find(|&x| s4.element_order(x) == 3).unwrap();
        // oracle: [g, a] in V4 for every a in A4
        let oracle = cs.terms[2].iter().all(|a| cs.terms[1].contains(s4.commutator(three, a)));
        assert_eq!(centralizes_factor(&s4, three, &cs, 1), oracle);
        // A4/V4 is abelian, so elements of A4 act trivially on it; a transposition inverts it.
        assert!(oracle);
        let transposition = (0..24).find(|&x| s4.element_order(x) == 2 && !cs.terms[2].contains(x)).unwrap();
        let oracle = cs.terms[2].iter().all(|a| cs.terms[1].contains(s4.commutator(transposition, a)));
        assert_eq!(centralizes_factor(&s4, transposition, &cs, 1), oracle);
        assert!(!oracle);
        let d4 = dihedral(4, DEFAULT_CAP).unwrap();
        let cs = chief_series(&d4);
        assert!((0..8).all(|x| (0..cs.len()).all(|i| centralizes_factor(&d4, x, &cs, i))));
    }

    #[test]
    fn sylow_and_radicals() {
        let s4 = sym(4, DEFAULT_CAP).unwrap();
        let p2 = sylow(&s4, 2);
        assert_eq!(p2.order(), 8);
        assert!(s4.is_subgroup(&p2.set));
        assert_eq!(sylow(&cyclic(6, DEFAULT_CAP).unwrap(), 3).order(), 3);
        assert_eq!(sylow(&alt(5, DEFAULT_CAP).unwrap(), 2).order(), 4);
        assert_eq!(o_p(&s4, 2).order(), 4);
        assert_eq!(o_p(&s4, 3).order(), 1);
        assert_eq!(fitting(&s4).order(), 4);
        assert_eq!(solvable_radical(&s4).order(), 24);
        let a5 = alt(5, DEFAULT_CAP).unwrap();
        assert_eq!(solvable_radical(&a5).order(), 1);
        assert_eq!(fitting(&a5).order(), 1);
    }

    #[test]
    fn hypercenters() {
        assert_eq!(hypercenter(&dihedral(4, DEFAULT_CAP).unwrap()).order(), 8);
        assert_eq!(hypercenter(&sym(3, DEFAULT_CAP).unwrap()).order(), 1);
        let d6 = dihedral(6, DEFAULT_CAP).unwrap();
        assert_eq!(hypercenter(&d6).order(), 2);
        assert_eq!(upper_central_series(&dihedral(8, DEFAULT_CAP).unwrap()).len(), 4);
    }

    #[test]
    fn solvable_nilpotent_flags() {
        let s4 = sym(4, DEFAULT_CAP).unwrap();
        assert!(is_solvable(&s4, &s4.whole()));
        assert!(!is_nilpotent(&s4, &s4.whole()));
        let a5 = alt(5, DEFAULT_CAP).unwrap();
        assert!(!is_solvable(&a5, &a5.whole()));
        let d4 = dihedral(4, DEFAULT_CAP).unwrap();
        assert!(is_nilpotent(&d4, &d4.whole()));
        assert!(is_p_group(&d4.whole(), 2));
        for g in [&s4, &a5, &d4] {
            assert_eq!(is_nilpotent(g, &g.whole()), is_nilpotent_by_sylow_count(g, &g.whole()));
        }
    }

    #[test]
    fn normal_subgroup_enumeration() {
        let s4 = sym(4, DEFAULT_CAP).unwrap();
        assert_eq!(normal_subgroups(&s4).iter().map(|n| n.order()).collect::<Vec<_>>(), vec![1, 4, 12, 24]);
        assert_eq!(normal_subgroups(&cyclic(12, DEFAULT_CAP).unwrap()).len(), 6);
        let a5a5 =
            direct_product(vec![alt(5, DEFAULT_CAP).unwrap(), alt(5, DEFAULT_CAP).unwrap()], DEFAULT_CAP).unwrap();
        assert_eq!(normal_subgroups(&a5a5.group).len(), 4);
    }

    #[test]
    fn jordan_holder_profiles() {
        for g in [sym(4, DEFAULT_CAP).unwrap(), cyclic(12, DEFAULT_CAP).unwrap(), dihedral(6, DEFAULT_CAP).unwrap()] {
            let a = chief_series_with(&g, TieBreak::Least);
            let b = chief_series_with(&g, TieBreak::Greatest);
            assert_eq!(a.factor_profile(), b.factor_profile());
        }
    }
}
