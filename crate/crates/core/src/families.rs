//! Group families and the sets `F_G(x) = { y : <x, y> in F }` built from them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cache::PairCache;
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::rational::{ratio, Rational};
use crate::structure::{self, ChiefSeries};

/// A class of finite groups closed under subgroups, quotients and finite direct products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    All,
    Abelian,
    Nilpotent,
    Solvable,
    PGroup(u64),
    /// Groups of exponent at most 2.
    Exp2,
    /// Solvable groups of odd order.
    OddSolvable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureFlags {
    pub subgroups: bool,
    pub quotients: bool,
    pub products: bool,
}

impl Family {
    pub const BUILTIN: [Family; 6] =
        [Family::All, Family::Abelian, Family::Nilpotent, Family::Solvable, Family::Exp2, Family::OddSolvable];

    pub fn id(&self) -> String {
        self.to_string()
    }

    pub fn closure_flags(&self) -> ClosureFlags {
        ClosureFlags { subgroups: true, quotients: true, products: true }
    }

    /// Membership of a subgroup of `g`, decided from the subgroup itself.
    pub fn contains(&self, g: &FiniteGroup, s: &Subgroup) -> bool {
        match *self {
            Family::All => true,
            Family::Abelian => g.derived_subgroup(s).order() == 1,
            Family::Nilpotent => structure::is_nilpotent(g, s),
            Family::Solvable => structure::is_solvable(g, s),
            Family::PGroup(p) => structure::is_p_group(s, p),
            Family::Exp2 => s.iter().all(|x| g.mul(x, x) == 0),
            Family::OddSolvable => s.order() % 2 == 1 && structure::is_solvable(g, s),
        }
    }

    /// Whether `<x, y>` lies in the family, using element-level criteria where
    /// one exists instead of enumerating the subgroup.
    pub fn pair_member(&self, g: &FiniteGroup, x: usize, y: usize) -> bool {
        match *self {
            Family::All => true,
            Family::Abelian => g.commutes(x, y),
            Family::Exp2 => g.element_order(x) <= 2 && g.element_order(y) <= 2 && g.commutes(x, y),
            Family::PGroup(p) => g.generates_p_group(&[x, y], p),
            Family::Nilpotent => nilpotent_pair(g, x, y),
            Family::Solvable => solvable_pair(g, x, y),
            Family::OddSolvable => {
                if g.element_order(x).is_multiple_of(2) || g.element_order(y).is_multiple_of(2) {
                    return false;
                }
                // A group all of whose elements have odd order has odd order.
                let Some(elems) = g.bounded_closure(&[x, y], g.order(), |z| g.element_order(z) % 2 == 1) else {
                    return false;
                };
                if whole_group_solvable(g) {
                    return true;
                }
                let s = g.subgroup_from_set(ElementSet::from_indices(g.order(), elems));
                structure::is_solvable(g, &s)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::All => write!(f, "all"),
            Family::Abelian => write!(f, "abelian"),
            Family::Nilpotent => write!(f, "nilpotent"),
            Family::Solvable => write!(f, "solvable"),
            Family::PGroup(p) => write!(f, "pgroup:{p}"),
            Family::Exp2 => write!(f, "exp2"),
            Family::OddSolvable => write!(f, "oddsolvable"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "all" => Family::All,
            "abelian" => Family::Abelian,
            "nilpotent" => Family::Nilpotent,
            "solvable" => Family::Solvable,
            "exp2" => Family::Exp2,
            "oddsolvable" => Family::OddSolvable,
            _ => {
                let p = s
                    .strip_prefix("pgroup:")
                    .and_then(|p| p.trim().parse::<u64>().ok())
                    .ok_or_else(|| Error::parse(0, format!("unknown family {s:?}")))?;
                if !arith::is_prime(p) {
                    return Err(Error::parse(7, format!("{p} is not prime")));
                }
                Family::PGroup(p)
            }
        })
    }
}

/// `<x, y>` is nilpotent iff, for every prime, the `p`-parts of `x` and `y`
/// generate a `p`-group and commute with the other primes' parts.
pub fn nilpotent_pair(g: &FiniteGroup, x: usize, y: usize) -> bool {
    let primes = arith::prime_divisors(arith::lcm(g.element_order(x), g.element_order(y)));
    let parts: Vec<(u64, usize, usize)> = primes.iter().map(|&p| (p, g.p_part_of(x, p), g.p_part_of(y, p))).collect();
    for (i, &(_, xp, _)) in parts.iter().enumerate() {
        for (j, &(_, _, yq)) in parts.iter().enumerate() {
            if i != j && !g.commutes(xp, yq) {
                return false;
            }
        }
    }
    parts.iter().all(|&(p, xp, yp)| g.commutes(xp, yp) || g.generates_p_group(&[xp, yp], p))
}

fn whole_group_solvable(g: &FiniteGroup) -> bool {
    g.is_solvable_cached(|| structure::is_solvable(g, &g.whole()))
}

fn solvable_pair(g: &FiniteGroup, x: usize, y: usize) -> bool {
    if whole_group_solvable(g) || nilpotent_pair(g, x, y) {
        return true;
    }
    structure::is_solvable(g, &g.generated_subgroup(&[x, y]))
}

fn collect_set(g: &FiniteGroup, pred: impl Fn(usize) -> bool + Sync) -> ElementSet {
    let members: Vec<usize> = (0..g.order()).into_par_iter().filter(|&y| pred(y)).collect();
    ElementSet::from_indices(g.order(), members)
}

/// `F_G(x)` via element-level criteria.
pub fn f_set(g: &FiniteGroup, x: usize, family: Family) -> ElementSet {
    collect_set(g, |y| family.pair_member(g, x, y))
}

/// `F_G(x)` by enumerating every `<x, y>` and testing the subgroup directly,
/// memoized in `cache`.
pub fn f_set_by_closure(g: &FiniteGroup, x: usize, family: Family, cache: &PairCache) -> ElementSet {
    let id = family.id();
    collect_set(g, |y| {
        let set = cache.pair_subgroup(g, x, y);
        cache.membership(&id, &set, || {
            let gens: Vec<usize> = [x, y].into_iter().filter(|&z| z != 0).collect();
            family.contains(g, &Subgroup { set: (*set).clone(), gens })
        })
    })
}

pub fn fraction(set: &ElementSet) -> Rational {
    ratio(set.card() as u128, set.universe() as u128)
}

/// `|F_G(x)| / |G|`.
pub fn measure_finite(g: &FiniteGroup, x: usize, family: Family) -> Rational {
    fraction(&f_set(g, x, family))
}

pub fn nilpotentizer(g: &FiniteGroup, x: usize) -> ElementSet {
    f_set(g, x, Family::Nilpotent)
}

pub fn solvabilizer(g: &FiniteGroup, x: usize) -> ElementSet {
    f_set(g, x, Family::Solvable)
}

/// `{ h : pred(x^h) }`, evaluating `pred` once per conjugate.
fn by_conjugate(g: &FiniteGroup, x: usize, pred: impl Fn(usize) -> bool + Sync) -> ElementSet {
    let conj: Vec<usize> = (0..g.order()).map(|h| g.conjugate(x, h)).collect();
    let mut class: Vec<usize> = conj.clone();
    class.sort_unstable();
    class.dedup();
    let good: Vec<usize> = class.into_par_iter().filter(|&c| pred(c)).collect();
    let good = ElementSet::from_indices(g.order(), good);
    ElementSet::from_indices(g.order(), (0..g.order()).filter(|&h| good.contains(conj[h])))
}

/// `{ h : <x, x^h> is a p-group }`.
pub fn lambda_p_set(g: &FiniteGroup, x: usize, p: u64) -> Result<ElementSet> {
    if !g.is_p_element(x, p) {
        return Err(Error::NotPElement { element: x, p });
    }
    Ok(by_conjugate(g, x, |c| g.generates_p_group(&[x, c], p)))
}

/// `{ h : <x, x^h> is nilpotent }`.
pub fn lambda_nil_set(g: &FiniteGroup, x: usize) -> ElementSet {
    by_conjugate(g, x, |c| nilpotent_pair(g, x, c))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauReport {
    /// Nonabelian factors `X/Y` with `[X, g]` not inside `Y`.
    pub tau_nonab: usize,
    /// For each prime `p`, abelian `p`-factors not centralized by the `p'`-part of `g`.
    pub tau_ab: BTreeMap<u64, usize>,
    pub tau_total: usize,
}

pub fn tau_stats(g: &FiniteGroup, x: usize, series: &ChiefSeries) -> TauReport {
    let mut r = TauReport::default();
    for (i, f) in series.factors.iter().enumerate() {
        if f.nonabelian {
            if !structure::centralizes_factor(g, x, series, i) {
                r.tau_nonab += 1;
            }
        } else {
            let p = f.prime.expect("abelian chief factors have prime-power order");
            let (_, xq) = g.p_decomposition(x, p);
            let hit = !structure::centralizes_factor(g, xq, series, i);
            *r.tau_ab.entry(p).or_default() += hit as usize;
        }
    }
    r.tau_total = r.tau_nonab + r.tau_ab.values().sum::<usize>();
    r
}

/// Elements failing to centralize at most `n` nonabelian factors of `series`.
pub fn sigma_n_set(g: &FiniteGroup, n: usize, series: &ChiefSeries) -> ElementSet {
    let nonab: Vec<usize> = (0..series.len()).filter(|&i| series.factors[i].nonabelian).collect();
    collect_set(g, |x| nonab.iter().filter(|&&i| !structure::centralizes_factor(g, x, series, i)).count() <= n)
}

/// `{ x : F_G(x) is nonempty }`.
pub fn f_positive_set_finite(g: &FiniteGroup, family: Family) -> ElementSet {
    collect_set(g, |x| (0..g.order()).any(|y| family.pair_member(g, x, y)))
}

/// A pair `(a, b)` of members with `a * b` outside `set`, least in lexicographic order.
pub fn product_closure_witness(g: &FiniteGroup, set: &ElementSet) -> Option<(usize, usize)> {
    set.iter().find_map(|a| set.iter().find(|&b| !set.contains(g.mul(a, b))).map(|b| (a, b)))
}

/// `{ x : <x, y> nilpotent for every y }`, the intersection of all nilpotentizers.
pub fn nilpotentizer_intersection(g: &FiniteGroup) -> ElementSet {
    collect_set(g, |x| (0..g.order()).all(|y| nilpotent_pair(g, x, y)))
}
