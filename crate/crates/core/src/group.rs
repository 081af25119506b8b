//! Fully enumerated permutation groups.
//!
//! A [`FiniteGroup`] is produced by breadth-first closure from its generators and
//! stores every element as an image array. Index 0 is always the identity, and the
//! element order is reproducible: the queue is processed in discovery order and the
//! generators are applied in the order they were listed.

use std::collections::VecDeque;
use std::ops::Deref;
use std::sync::OnceLock;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::arith;
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default enumeration cap on group order.
pub const DEFAULT_CAP: usize = 200_000;

/// Groups up to this order get a full multiplication table on first use.
const MUL_TABLE_MAX_ORDER: usize = 2048;

const EMPTY: u32 = u32::MAX;

/// Open-addressing map from image arrays (stored contiguously in the group) to indices.
#[derive(Clone)]
struct IndexTable {
    slots: Vec<u32>,
    mask: usize,
}

#[inline]
fn hash_images(degree: usize, f: impl Fn(usize) -> u16) -> u64 {
    let mut h: u64 = degree as u64;
    for i in 0..degree {
        h = (h.rotate_left(5) ^ f(i) as u64).wrapping_mul(0x517c_c1b7_2722_0a95);
    }
    h ^ (h >> 29)
}

impl IndexTable {
    fn with_capacity(n: usize) -> Self {
        let size = (2 * n.max(4)).next_power_of_two();
        IndexTable { slots: vec![EMPTY; size], mask: size - 1 }
    }

    #[inline]
    fn find(&self, points: &[u16], degree: usize, f: impl Fn(usize) -> u16 + Copy) -> Result<usize, usize> {
        let mut slot = hash_images(degree, f) as usize & self.mask;
        loop {
            let idx = self.slots[slot];
            if idx == EMPTY {
                return Err(slot);
            }
            let base = idx as usize * degree;
            if (0..degree).all(|i| points[base + i] == f(i)) {
                return Ok(idx as usize);
            }
            slot = (slot + 1) & self.mask;
        }
    }

    fn rebuild(&mut self, points: &[u16], degree: usize, count: usize) {
        *self = IndexTable::with_capacity(count * 2);
        for idx in 0..count {
            let base = idx * degree;
            let f = |i: usize| points[base + i];
            let mut slot = hash_images(degree, f) as usize & self.mask;
            while self.slots[slot] != EMPTY {
                slot = (slot + 1) & self.mask;
            }
            self.slots[slot] = idx as u32;
        }
    }
}

/// A finite permutation group with every element enumerated and indexed.
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    points: Vec<u16>,
    table: IndexTable,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    mul_table: OnceLock<Option<Vec<u32>>>,
    prime_parts: OnceLock<Vec<(u64, Vec<u32>)>>,
    classes: OnceLock<Vec<Vec<usize>>>,
    solvable: OnceLock<bool>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Enumerates `<generators>` on `degree` points, failing once more than `cap` elements appear.
pub fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    FiniteGroup::closure(degree, generators, cap)
}

impl FiniteGroup {
    pub fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<FiniteGroup> {
        if cap == 0 {
            return Err(Error::InvalidParams("cap must be at least 1".into()));
        }
        if degree > u16::MAX as usize {
            return Err(Error::InvalidParams(format!("degree {degree} too large")));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidParams(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let mut points: Vec<u16> = (0..degree as u16).collect();
        let mut table = IndexTable::with_capacity(64);
        table.rebuild(&points, degree, 1);
        let mut count = 1usize;
        let mut head = 0usize;
        while head < count {
            for g in generators {
                let gi = g.images();
                let base = head * degree;
                let f = |i: usize| gi[points[base + i] as usize];
                if let Err(slot) = table.find(&points, degree, f) {
                    if count >= cap {
                        return Err(Error::CapExceeded { order: count as u128 + 1, cap });
                    }
                    for i in 0..degree {
                        let v = gi[points[base + i] as usize];
                        points.push(v);
                    }
                    table.slots[slot] = count as u32;
                    count += 1;
                    if 2 * count > table.slots.len() / 2 {
                        table.rebuild(&points, degree, count);
                    }
                }
            }
            head += 1;
        }
        let mut group = FiniteGroup {
            degree,
            generators: generators.to_vec(),
            generator_indices: Vec::new(),
            points,
            table,
            inverses: Vec::new(),
            orders: Vec::new(),
            mul_table: OnceLock::new(),
            prime_parts: OnceLock::new(),
            classes: OnceLock::new(),
            solvable: OnceLock::new(),
        };
        group.generator_indices =
            generators.iter().map(|g| group.index_of(g).expect("generator lies in its closure")).collect();
        let (inverses, orders): (Vec<u32>, Vec<u32>) = (0..count)
            .into_par_iter()
            .map(|i| {
                let p = group.element(i);
                let inv = group.index_of(&p.inverse()).expect("closed under inverses") as u32;
                (inv, p.order() as u32)
            })
            .unzip();
        group.inverses = inverses;
        group.orders = orders;
        Ok(group)
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> FiniteGroup {
        Self::closure(degree, &[], 1).expect("trivial group fits any cap")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Element indices of the generators, in listed order.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn images(&self, x: usize) -> &[u16] {
        &self.points[x * self.degree..(x + 1) * self.degree]
    }

    pub fn element(&self, x: usize) -> Permutation {
        Permutation::from_raw(self.images(x).to_vec())
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        let im = p.images();
        self.table.find(&self.points, self.degree, |i| im[i]).ok()
    }

    fn mul_table(&self) -> Option<&Vec<u32>> {
        self.mul_table
            .get_or_init(|| {
                let n = self.order();
                if n > MUL_TABLE_MAX_ORDER {
                    return None;
                }
                let table: Vec<u32> =
                    (0..n * n).into_par_iter().map(|k| self.mul_lookup(k / n, k % n) as u32).collect();
                Some(table)
            })
            .as_ref()
    }

    #[inline]
    fn mul_lookup(&self, a: usize, b: usize) -> usize {
        let pa = a * self.degree;
        let pb = b * self.degree;
        let pts = &self.points;
        let f = |i: usize| pts[pb + pts[pa + i] as usize];
        self.table.find(pts, self.degree, f).expect("group is closed under multiplication")
    }

    /// Product `a * b` (apply `a`, then `b`).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = self.mul_table() {
            return t[a * self.order() + b] as usize;
        }
        self.mul_lookup(a, b)
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverses[x] as usize
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let n = self.orders[x] as i64;
        let k = k.rem_euclid(n);
        if k == 0 {
            return 0;
        }
        if k == 1 {
            return x;
        }
        self.index_of(&self.element(x).pow(k)).expect("powers stay in the group")
    }

    /// `g^-1 x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, x: usize) -> u64 {
        self.orders[x] as u64
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_p_element(&self, x: usize, p: u64) -> bool {
        arith::is_power_of(self.element_order(x), p)
    }

    /// Primes dividing the group order.
    pub fn primes(&self) -> Vec<u64> {
        arith::prime_divisors(self.order() as u64)
    }

    /// Splits `x` into commuting `p`- and `p'`-parts, both powers of `x`.
    pub fn p_decomposition(&self, x: usize, p: u64) -> (usize, usize) {
        let n = self.element_order(x);
        let pe = arith::p_part(n, p);
        let m = n / pe;
        // a = 1 mod p^e, a = 0 mod m
        let a = (m as u128 * arith::mod_inverse(m % pe.max(1), pe) as u128 % n as u128) as u64;
        let a = if pe == 1 { 0 } else { a };
        let xp = self.pow(x, a as i64);
        let xq = self.pow(x, (n + 1 - a % n) as i64);
        (xp, xq)
    }

    /// Cached `p`-parts of every element, for each prime dividing the order.
    pub fn p_part_of(&self, x: usize, p: u64) -> usize {
        let parts = self.prime_parts.get_or_init(|| {
            self.primes()
                .into_iter()
                .map(|p| {
                    let v: Vec<u32> =
                        (0..self.order()).into_par_iter().map(|y| self.p_decomposition(y, p).0 as u32).collect();
                    (p, v)
                })
                .collect()
        });
        match parts.iter().find(|(q, _)| *q == p) {
            Some((_, v)) => v[x] as usize,
            None => 0,
        }
    }

    /// Subgroup generated by `seed`, with `seed` (minus identities) as its generating list.
    pub fn generated_subgroup(&self, seed: &[usize]) -> Subgroup {
        let gens: Vec<usize> = seed.iter().copied().filter(|&g| g != 0).collect();
        let mut set = ElementSet::empty(self.order());
        set.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for &g in &gens {
                let n = self.mul(e, g);
                if set.insert(n) {
                    queue.push(n);
                }
            }
        }
        Subgroup { set, gens }
    }

    /// Adds generators to an existing subgroup.
    pub fn extend_subgroup(&self, sub: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut gens = sub.gens.clone();
        let mut set = sub.set.clone();
        let mut queue: Vec<usize> = Vec::new();
        for &x in extra {
            if set.contains(x) {
                continue;
            }
            gens.push(x);
            queue.clear();
            queue.extend(set.iter());
            let mut head = 0;
            // Old elements only need the new generator; new ones need all of them.
            let old_len = queue.len();
            while head < queue.len() {
                let e = queue[head];
                let fresh = head >= old_len;
                head += 1;
                let gs: &[usize] = if fresh { &gens } else { std::slice::from_ref(&x) };
                for &g in gs {
                    let n = self.mul(e, g);
                    if set.insert(n) {
                        queue.push(n);
                    }
                }
            }
        }
        Subgroup { set, gens }
    }

    /// Closure of `seed` that gives up (returning `None`) as soon as an element fails
    /// `accept` or the size passes `max_size`. Uses a hash set, so it is cheap for
    /// subgroups much smaller than the group.
    pub fn bounded_closure(
        &self,
        seed: &[usize],
        max_size: usize,
        accept: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let gens: Vec<usize> = seed.iter().copied().filter(|&g| g != 0).collect();
        let mut seen: FxHashSet<u32> = FxHashSet::default();
        seen.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for &g in &gens {
                let n = self.mul(e, g);
                if seen.insert(n as u32) {
                    if queue.len() >= max_size || !accept(n) {
                        return None;
                    }
                    queue.push(n);
                }
            }
        }
        Some(queue)
    }

    /// Whether `<seed>` is a `p`-group, with early exit.
    pub fn generates_p_group(&self, seed: &[usize], p: u64) -> bool {
        if !seed.iter().all(|&s| self.is_p_element(s, p)) {
            return false;
        }
        let bound = arith::p_part(self.order() as u64, p) as usize;
        self.bounded_closure(seed, bound, |x| self.is_p_element(x, p)).is_some()
    }

    pub fn centralizer(&self, x: usize) -> Subgroup {
        let set = ElementSet::from_indices(self.order(), (0..self.order()).filter(|&g| self.commutes(g, x)));
        self.subgroup_from_set(set)
    }

    /// Centralizer of a whole subgroup, via its generators.
    pub fn centralizer_of(&self, sub: &Subgroup) -> Subgroup {
        let set = ElementSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&g| sub.gens.iter().all(|&s| self.commutes(g, s))),
        );
        self.subgroup_from_set(set)
    }

    pub fn center(&self) -> Subgroup {
        let set = ElementSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&g| self.generator_indices.iter().all(|&s| self.commutes(g, s))),
        );
        self.subgroup_from_set(set)
    }

    /// Smallest subgroup containing `seed` and closed under conjugation by `acting`.
    pub fn closure_under(&self, seed: &[usize], acting: &[usize]) -> Subgroup {
        let mut sub = self.generated_subgroup(&[]);
        let mut pending: Vec<usize> = seed.to_vec();
        while let Some(x) = pending.pop() {
            if sub.set.contains(x) {
                continue;
            }
            sub = self.extend_subgroup(&sub, &[x]);
            for &h in acting {
                let c = self.conjugate(x, h);
                if !sub.set.contains(c) {
                    pending.push(c);
                }
            }
        }
        // Conjugates of the final generators must also lie inside.
        debug_assert!(sub.gens.iter().all(|&g| acting.iter().all(|&h| sub.set.contains(self.conjugate(g, h)))));
        sub
    }

    pub fn normal_closure(&self, seed: &[usize]) -> Subgroup {
        self.closure_under(seed, &self.generator_indices)
    }

    /// `[A, B]`, the subgroup generated by all commutators `[a, b]`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let comms: Vec<usize> = a
            .gens
            .iter()
            .flat_map(|&x| b.gens.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        let acting: Vec<usize> = a.gens.iter().chain(&b.gens).copied().collect();
        self.closure_under(&comms, &acting)
    }

    pub fn derived_subgroup(&self, s: &Subgroup) -> Subgroup {
        self.commutator_subgroup(s, s)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { set: ElementSet::full(self.order()), gens: self.generator_indices.clone() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.generated_subgroup(&[])
    }

    /// Wraps a set known to be a subgroup, choosing a small generating list greedily.
    pub fn subgroup_from_set(&self, set: ElementSet) -> Subgroup {
        let mut sub = self.trivial_subgroup();
        for x in set.iter() {
            if sub.set.card() == set.card() {
                break;
            }
            if !sub.set.contains(x) {
                sub = self.extend_subgroup(&sub, &[x]);
            }
        }
        debug_assert_eq!(sub.set, set, "set is not a subgroup");
        sub
    }

    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        set.contains(0) && set.iter().all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        sub.gens.iter().all(|&x| self.generator_indices.iter().all(|&g| sub.set.contains(self.conjugate(x, g))))
    }

    /// Normalizer of a subgroup, tested on its generators.
    pub fn normalizer(&self, sub: &Subgroup) -> Subgroup {
        let set = ElementSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&g| sub.gens.iter().all(|&x| sub.set.contains(self.conjugate(x, g)))),
        );
        self.subgroup_from_set(set)
    }

    /// Memo slot for whether the whole group is solvable; `compute` runs at most once per winner.
    pub fn is_solvable_cached(&self, compute: impl FnOnce() -> bool) -> bool {
        *self.solvable.get_or_init(compute)
    }

    /// Conjugacy classes, each sorted, listed by least member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        self.classes.get_or_init(|| {
            let mut assigned = vec![false; self.order()];
            let mut classes = Vec::new();
            for x in 0..self.order() {
                if assigned[x] {
                    continue;
                }
                let mut class = vec![x];
                assigned[x] = true;
                let mut head = 0;
                while head < class.len() {
                    let y = class[head];
                    head += 1;
                    for &g in &self.generator_indices {
                        let c = self.conjugate(y, g);
                        if !assigned[c] {
                            assigned[c] = true;
                            class.push(c);
                        }
                    }
                }
                class.sort_unstable();
                classes.push(class);
            }
            classes
        })
    }

    /// The set `{ a * b : a in A, b in B }`.
    pub fn product_set(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.order());
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// Left translate `g * S`.
    pub fn translate(&self, g: usize, s: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.order(), s.iter().map(|x| self.mul(g, x)))
    }

    /// Image of a set under conjugation by `g`.
    pub fn conjugate_set(&self, s: &ElementSet, g: usize) -> ElementSet {
        ElementSet::from_indices(self.order(), s.iter().map(|x| self.conjugate(x, g)))
    }

    /// Breadth-first queue order used by [`FiniteGroup::closure`], exposed for reproducibility checks.
    pub fn element_table(&self) -> impl Iterator<Item = &[u16]> {
        self.points.chunks(self.degree.max(1)).take(self.order())
    }

    /// Orbit of a point under the group generators.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut q = VecDeque::from([point]);
        seen[point] = true;
        let mut out = vec![];
        while let Some(a) = q.pop_front() {
            out.push(a);
            for g in &self.generators {
                let b = g.apply(a);
                if !seen[b] {
                    seen[b] = true;
                    q.push_back(b);
                }
            }
        }
        out
    }
}

/// A subgroup together with a generating list (possibly redundant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub set: ElementSet,
    pub gens: Vec<usize>,
}

impl Deref for Subgroup {
    type Target = ElementSet;
    fn deref(&self) -> &ElementSet {
        &self.set
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.set.card()
    }

    pub fn into_set(self) -> ElementSet {
        self.set
    }
}
