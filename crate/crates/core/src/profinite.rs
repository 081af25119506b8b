//! Countable direct products `G = ∏_t G_t` of finite groups, and certified
//! intervals for the measure of `F_G(e)`.
//!
//! A family closed under subgroups, quotients and direct products gives
//! `μ(F_G(e)) = ∏_t μ(F_{G_t}(e_t))`. The first `depth` factors are evaluated
//! exactly (by enumeration or from an exact closed form); the remaining factors
//! are bounded by a per-tower registry of closed-form rational bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use dashmap::DashMap;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::constructors::{self as c, DirectProduct};
use crate::error::{Error, Result};
use crate::families::{self, Family};
use crate::rational::{one, ratio, zero, Rational};
use crate::spec::{Built, Cursor, GroupSpec};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TowerKind {
    /// `∏_{t >= 1} Alt(m)`.
    AltPow(u64),
    /// `∏_{n >= 2} SL(2, 2^n)`, indexed by `n`.
    SlProd,
    /// `∏_{t >= 1} Y_t(p, q)`.
    YTower(u64, u64),
    /// `∏_{t >= s} X_t(p, q)`.
    XTower(u64, u64, u64),
}

impl fmt::Display for TowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerKind::AltPow(m) => write!(f, "altpow({m})"),
            TowerKind::SlProd => write!(f, "slprod"),
            TowerKind::YTower(p, q) => write!(f, "ytower({p},{q})"),
            TowerKind::XTower(p, q, s) => write!(f, "xtower({p},{q},{s})"),
        }
    }
}

impl FromStr for TowerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let start = cur.pos();
        let name = cur.ident()?;
        let mut args = Vec::new();
        if cur.eat('(') && !cur.eat(')') {
            loop {
                args.push(cur.uint()?);
                if cur.eat(')') {
                    break;
                }
                cur.expect(',')?;
            }
        }
        if !cur.at_end() {
            return Err(Error::parse(cur.pos(), "trailing input"));
        }
        let kind = match (name, args.as_slice()) {
            ("altpow", &[m]) => TowerKind::AltPow(m),
            ("slprod", &[]) => TowerKind::SlProd,
            ("ytower", &[p, q]) => TowerKind::YTower(p, q),
            ("xtower", &[p, q, s]) => TowerKind::XTower(p, q, s),
            _ => return Err(Error::parse(start, format!("unknown tower `{s}`"))),
        };
        match kind {
            TowerKind::AltPow(0) => Err(Error::parse(start, "altpow needs m >= 1")),
            TowerKind::YTower(p, q) | TowerKind::XTower(p, q, _)
                if !arith::is_prime(p) || !arith::is_prime(q) || p == q =>
            {
                Err(Error::parse(start, "p and q must be distinct primes"))
            }
            TowerKind::XTower(_, _, 0) => Err(Error::parse(start, "xtower needs s >= 1")),
            k => Ok(k),
        }
    }
}

/// Which element fills the coordinates not named explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tail {
    Trivial,
    /// The tower's distinguished element in every factor.
    Designated,
}

/// An element of a tower: explicit words at finitely many indices, and a tail rule elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerElement {
    pub support: BTreeMap<u64, Word>,
    pub tail: Tail,
}

impl TowerElement {
    pub fn trivial() -> Self {
        TowerElement { support: BTreeMap::new(), tail: Tail::Trivial }
    }

    pub fn designated() -> Self {
        TowerElement { support: BTreeMap::new(), tail: Tail::Designated }
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, w) in &self.support {
            write!(f, "{t}={w};")?;
        }
        let tail = match self.tail {
            Tail::Trivial => "trivial",
            Tail::Designated => "designated",
        };
        write!(f, "tail={tail}")
    }
}

impl FromStr for TowerElement {
    type Err = Error;

    /// `t=<word>;...;tail=trivial|designated`; the tail clause is optional.
    fn from_str(s: &str) -> Result<Self> {
        let mut e = TowerElement::trivial();
        let mut seen_tail = false;
        let mut offset = 0;
        for part in s.split(';') {
            let here = offset;
            offset += part.len() + 1;
            if part.trim().is_empty() {
                continue;
            }
            let (key, value) =
                part.split_once('=').ok_or_else(|| Error::parse(here, "expected `<index>=<word>` or `tail=...`"))?;
            let key = key.trim();
            if key == "tail" {
                if seen_tail {
                    return Err(Error::parse(here, "tail given twice"));
                }
                seen_tail = true;
                e.tail = match value.trim() {
                    "trivial" => Tail::Trivial,
                    "designated" => Tail::Designated,
                    other => return Err(Error::parse(here, format!("unknown tail rule {other:?}"))),
                };
                continue;
            }
            if key.is_empty() || !key.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(here, format!("bad index {key:?}")));
            }
            let t = key.parse::<u64>().map_err(|_| Error::parse(here, "index out of range"))?;
            let w = value.parse::<Word>().map_err(|err| match err {
                Error::Parse { pos, msg } => Error::parse(here + key.len() + 1 + pos, msg),
                other => other,
            })?;
            if e.support.insert(t, w).is_some() {
                return Err(Error::parse(here, format!("index {t} given twice")));
            }
        }
        Ok(e)
    }
}

/// A certified enclosure `lo <= μ <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    Positive(Rational),
    Zero,
    Unknown(MeasureInterval),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Bounds on one factor's measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorBound {
    pub lo: Rational,
    pub hi: Rational,
}

impl FactorBound {
    fn exact(v: Rational) -> Self {
        FactorBound { lo: v.clone(), hi: v }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Largest exponent for which `base^-exp` is materialized exactly.
const MAX_BOUND_EXPONENT: u64 = 1 << 16;

fn pow_inv(base: u64, exp: u64) -> Result<Rational> {
    if let Some(d) = arith::checked_pow(base, exp) {
        return Ok(ratio(1, d));
    }
    if exp > MAX_BOUND_EXPONENT {
        return Err(Error::InvalidParams(format!("bound {base}^-{exp} is too small to represent")));
    }
    Ok(Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(base), exp as usize)))
}

#[derive(Debug)]
pub struct Tower {
    pub kind: TowerKind,
    cap: usize,
    memo: DashMap<(u64, String, String), Rational>,
}

impl Tower {
    pub fn new(kind: TowerKind, cap: usize) -> Self {
        Tower { kind, cap, memo: DashMap::new() }
    }

    /// Least factor index.
    pub fn first_index(&self) -> u64 {
        match self.kind {
            TowerKind::AltPow(_) | TowerKind::YTower(..) => 1,
            TowerKind::SlProd => 2,
            TowerKind::XTower(_, _, s) => s,
        }
    }

    /// Indices covered by a truncation at `depth`.
    pub fn indices(&self, depth: usize) -> std::ops::Range<u64> {
        self.first_index()..self.first_index() + depth as u64
    }

    pub fn factor_spec(&self, t: u64) -> GroupSpec {
        match self.kind {
            TowerKind::AltPow(m) => GroupSpec::Alt(m),
            TowerKind::SlProd => GroupSpec::Sl2(1u64.checked_shl(t as u32).unwrap_or(0)),
            TowerKind::YTower(p, q) => GroupSpec::WreathY(p, q, t),
            TowerKind::XTower(p, q, _) => GroupSpec::Xt(p, q, t),
        }
    }

    /// Closed-form order of factor `t`, when it fits in `u128`.
    pub fn factor_order(&self, t: u64) -> Option<u128> {
        let t32 = u32::try_from(t).ok()?;
        match self.kind {
            TowerKind::AltPow(m) => (1..=m as u128).try_fold(1u128, |a, k| a.checked_mul(k)).map(|f| (f / 2).max(1)),
            TowerKind::SlProd => c::sl2_order(1u64.checked_shl(t32)?),
            TowerKind::YTower(p, q) => c::wreath_y_order(p, q, t32),
            TowerKind::XTower(p, q, _) => c::group_x_order(p, q, t32),
        }
    }

    /// Builds factor `t` with its distinguished element.
    pub fn factor(&self, t: u64) -> Result<Built> {
        self.check_index(t)?;
        if let Some(o) = self.factor_order(t) {
            if o > self.cap as u128 {
                return Err(Error::CapExceeded { order: o, cap: self.cap });
            }
        }
        let mut b = self.factor_spec(t).build(self.cap)?;
        if b.distinguished.is_none() {
            // Alt(m): the first generator.
            b.distinguished = Some(b.group.generator_indices()[0]);
        }
        Ok(b)
    }

    fn check_index(&self, t: u64) -> Result<()> {
        if t < self.first_index() {
            return Err(Error::InvalidParams(format!(
                "{} has no factor {t} (first is {})",
                self.kind,
                self.first_index()
            )));
        }
        Ok(())
    }

    /// Direct product of the first `depth` factors.
    pub fn truncate(&self, depth: usize) -> Result<DirectProduct> {
        let order = self.indices(depth).try_fold(1u128, |a, t| self.factor_order(t).and_then(|o| a.checked_mul(o)));
        match order {
            Some(o) if o <= self.cap as u128 => {}
            o => return Err(Error::CapExceeded { order: o.unwrap_or(u128::MAX), cap: self.cap }),
        }
        let factors = self.indices(depth).map(|t| self.factor(t).map(|b| b.group)).collect::<Result<Vec<_>>>()?;
        c::direct_product(factors, self.cap)
    }

    fn unsupported(&self, family: Family) -> Error {
        Error::UnsupportedFamily { tower: self.kind.to_string(), family: family.id() }
    }

    /// Exact `μ(F_{G_t}(x))` by enumeration, memoized.
    fn enumerate(
        &self,
        t: u64,
        family: Family,
        tag: String,
        pick: impl FnOnce(&Built) -> Result<usize>,
    ) -> Result<Rational> {
        let key = (t, family.id(), tag);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let b = self.factor(t)?;
        let x = pick(&b)?;
        let v = families::measure_finite(&b.group, x, family);
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    /// Exact measure of the tail element at factor `t`, by enumeration.
    pub fn enumerate_tail(&self, t: u64, family: Family, tail: Tail) -> Result<Rational> {
        self.enumerate(t, family, format!("{tail:?}"), |b| {
            Ok(match tail {
                Tail::Trivial => 0,
                Tail::Designated => b.distinguished.expect("factors carry a distinguished element"),
            })
        })
    }

    /// Exact measure of an explicit word at factor `t`, by enumeration.
    pub fn enumerate_word(&self, t: u64, family: Family, w: &Word) -> Result<Rational> {
        self.enumerate(t, family, w.to_string(), |b| w.eval(&b.group))
    }

    /// Registered bounds on `μ(F_{G_t}(x_t))` for the tail element at index `t`.
    pub fn factor_bound(&self, t: u64, family: Family, tail: Tail) -> Result<FactorBound> {
        self.check_index(t)?;
        let unsupported = || self.unsupported(family);
        Ok(match (self.kind, family, tail) {
            (_, Family::All, _) => FactorBound::exact(one()),
            (TowerKind::YTower(p, _), Family::PGroup(r), Tail::Trivial) if r == p => {
                FactorBound { lo: one() - pow_inv(p, t + 1)?, hi: one() }
            }
            (TowerKind::YTower(p, q), Family::PGroup(r), Tail::Designated) if r == p => {
                let n = arith::mult_order(q, p).expect("distinct primes");
                let nt = arith::checked_pow(p, t).and_then(|v| u64::try_from(v).ok()).ok_or_else(unsupported)?;
                FactorBound::exact(pow_inv(q, nt.checked_mul(n).ok_or_else(unsupported)?)?)
            }
            (TowerKind::XTower(..), Family::Nilpotent, Tail::Trivial) => FactorBound::exact(one()),
            (TowerKind::XTower(p, _, _), Family::Nilpotent, Tail::Designated) => {
                FactorBound { lo: one() - pow_inv(p, t + 1)?, hi: one() }
            }
            (TowerKind::SlProd, Family::OddSolvable, Tail::Trivial) => FactorBound::exact(one() - pow_inv(2, t)?),
            // Odd-order subgroups of SL(2, 2^n) are cyclic, and diag(γ, γ^-1) generates a
            // self-centralizing torus of order q - 1, so F(x_t) is that torus.
            (TowerKind::SlProd, Family::OddSolvable, Tail::Designated) => {
                let q = 1u64.checked_shl(t as u32).filter(|&q| q != 0 && t < 63).ok_or_else(unsupported)?;
                FactorBound::exact(ratio(1, q as u128 * (q as u128 + 1)))
            }
            (TowerKind::AltPow(_), _, _) => FactorBound::exact(self.enumerate_tail(t, family, tail).map_err(|e| {
                if e.is_cap_exceeded() {
                    unsupported()
                } else {
                    e
                }
            })?),
            _ => return Err(unsupported()),
        })
    }

    /// A constant `c < 1` bounding the tail element's factor measure at every
    /// index, when one is registered.
    pub fn uniform_upper(&self, family: Family, tail: Tail) -> Result<Option<Rational>> {
        let first = self.first_index();
        Ok(match (self.kind, family, tail) {
            (_, Family::All, _) => None,
            // Each of these is non-increasing in t, so the first factor's bound is the sup.
            (TowerKind::YTower(..), Family::PGroup(_), Tail::Designated)
            | (TowerKind::SlProd, Family::OddSolvable, Tail::Designated)
            | (TowerKind::AltPow(_), _, _) => {
                let b = self.factor_bound(first, family, tail)?;
                (b.hi < one()).then_some(b.hi)
            }
            _ => {
                self.factor_bound(first, family, tail)?;
                None
            }
        })
    }

    /// Closed-form lower bound on `∏_{t >= from} μ(F_{G_t}(x_t))` over the tail elements.
    pub fn tail_lower(&self, from: u64, family: Family, tail: Tail) -> Result<Rational> {
        self.factor_bound(from.max(self.first_index()), family, tail)?;
        if self.uniform_upper(family, tail)?.is_some() {
            // Infinitely many factors each at most c < 1.
            return Ok(zero());
        }
        Ok(match (self.kind, family, tail) {
            (_, Family::All, _) | (TowerKind::XTower(..), Family::Nilpotent, Tail::Trivial) => one(),
            // ∏ (1 - a_t) >= 1 - Σ a_t with Σ_{t >= from} p^{-(t+1)} = p^{-from} / (p - 1)
            (TowerKind::YTower(p, _), Family::PGroup(_), Tail::Trivial)
            | (TowerKind::XTower(p, _, _), Family::Nilpotent, Tail::Designated) => {
                let s = pow_inv(p, from)? / Rational::from_integer((p - 1).into());
                (one() - s).max(zero())
            }
            // Σ_{n >= from} 2^-n = 2^-(from - 1)
            (TowerKind::SlProd, Family::OddSolvable, Tail::Trivial) => (one() - pow_inv(2, from - 1)?).max(zero()),
            (TowerKind::AltPow(_), _, _) => one(),
            _ => return Err(self.unsupported(family)),
        })
    }

    /// Value (or bounds) for the coordinate at index `t`.
    fn coordinate(&self, t: u64, e: &TowerElement, family: Family) -> Result<FactorBound> {
        if let Some(w) = e.support.get(&t) {
            return Ok(FactorBound::exact(self.enumerate_word(t, family, w)?));
        }
        let b = self.factor_bound(t, family, e.tail)?;
        if b.is_exact() {
            return Ok(b);
        }
        match self.enumerate_tail(t, family, e.tail) {
            Ok(v) => Ok(FactorBound::exact(v)),
            Err(err) if err.is_cap_exceeded() => Ok(b),
            Err(err) => Err(err),
        }
    }

    pub fn measure_interval(&self, e: &TowerElement, family: Family, depth: usize) -> Result<MeasureInterval> {
        for &t in e.support.keys() {
            self.check_index(t)?;
        }
        let (mut lo, mut hi) = (one(), one());
        for t in self.indices(depth) {
            let b = self.coordinate(t, e, family)?;
            lo *= b.lo;
            hi *= b.hi;
        }
        let after = self.first_index() + depth as u64;
        if e.support.range(after..).next().is_some() {
            // An explicit coordinate past the truncation: only [0, 1] is known for it.
            lo = zero();
        }
        lo *= self.tail_lower(after, family, e.tail)?;
        Ok(MeasureInterval { lo, hi, depth })
    }

    pub fn positivity_classify(&self, e: &TowerElement, family: Family, depth: usize) -> Result<Positivity> {
        let iv = self.measure_interval(e, family, depth)?;
        if iv.lo > zero() {
            return Ok(Positivity::Positive(iv.lo));
        }
        if iv.hi.is_zero() || self.uniform_upper(family, e.tail)?.is_some() {
            return Ok(Positivity::Zero);
        }
        Ok(Positivity::Unknown(iv))
    }

    pub fn f_epsilon_membership(
        &self,
        e: &TowerElement,
        family: Family,
        epsilon: &Rational,
        depth: usize,
    ) -> Result<Verdict> {
        if *epsilon <= zero() || *epsilon > one() {
            return Err(Error::InvalidParams(format!("epsilon must lie in (0, 1], got {epsilon}")));
        }
        let iv = self.measure_interval(e, family, depth)?;
        Ok(if iv.lo >= *epsilon {
            Verdict::Yes
        } else if iv.hi < *epsilon {
            Verdict::No
        } else {
            Verdict::Unknown
        })
    }

    /// Whether `e` has finitely many conjugates. Only answered for towers whose
    /// factors are centerless at every index small enough to build, where the
    /// answer is "finite support".
    pub fn fc_membership(&self, e: &TowerElement) -> Result<bool> {
        let mut checked = 0;
        for t in self.indices(3) {
            match self.factor(t) {
                Ok(b) => {
                    if b.group.center().order() != 1 {
                        return Err(Error::UnsupportedTower(self.kind.to_string()));
                    }
                    checked += 1;
                }
                Err(err) if err.is_cap_exceeded() => break,
                Err(err) => return Err(err),
            }
        }
        if checked == 0 {
            return Err(Error::UnsupportedTower(self.kind.to_string()));
        }
        Ok(e.tail == Tail::Trivial)
    }

    /// `max_{x != 1} μ(F_{Alt(m)}(x))`, over class representatives.
    pub fn alt_max_nontrivial(&self, family: Family) -> Result<Rational> {
        let TowerKind::AltPow(m) = self.kind else {
            return Err(Error::UnsupportedTower(self.kind.to_string()));
        };
        let g = c::alt(m, self.cap)?;
        let reps: Vec<usize> = g.conjugacy_classes().iter().map(|cl| cl[0]).filter(|&x| x != 0).collect();
        Ok(reps.into_iter().map(|x| families::measure_finite(&g, x, family)).max().unwrap_or_else(Rational::one))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    fn tower(s: &str) -> Tower {
        Tower::new(s.parse().unwrap(), DEFAULT_CAP)
    }

    #[test]
    fn parse_towers_and_elements() {
        for s in ["altpow(5)", "slprod", "ytower(2,3)", "xtower(2,3,1)"] {
            assert_eq!(s.parse::<TowerKind>().unwrap().to_string(), s);
        }
        for bad in ["altpow", "slprod(1)", "ytower(2,2)", "ytower(4,3)", "xtower(2,3,0)", "foo(1)", "ytower(2,3)x"] {
            assert!(bad.parse::<TowerKind>().is_err(), "{bad}");
        }
        let e: TowerElement = "1=g0*g1;3=g2^-1;tail=designated".parse().unwrap();
        assert_eq!(e.support.len(), 2);
        assert_eq!(e.tail, Tail::Designated);
        assert_eq!(e.to_string().parse::<TowerElement>().unwrap(), e);
        assert_eq!("".parse::<TowerElement>().unwrap(), TowerElement::trivial());
        for bad in ["1=g0;1=g1", "tail=none", "x=g0", "1=", "tail=trivial;tail=trivial", "1"] {
            assert!(bad.parse::<TowerElement>().is_err(), "{bad}");
        }
    }

    #[test]
    fn truncations() {
        assert_eq!(tower("ytower(2,3)").truncate(1).unwrap().group.order(), 36);
        assert_eq!(tower("altpow(5)").truncate(0).unwrap().group.order(), 1);
        assert_eq!(tower("slprod").truncate(2).unwrap().group.order(), 30240);
        assert!(tower("ytower(2,3)").truncate(3).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn sl_partial_product() {
        let t = tower("slprod");
        let iv = t.measure_interval(&TowerElement::trivial(), Family::OddSolvable, 4).unwrap();
        assert_eq!(iv.hi, ratio(9765, 16384));
        assert_eq!(iv.lo, ratio(9765, 16384) * (one() - ratio(1, 32)));
    }

    #[test]
    fn classification() {
        let y = tower("ytower(2,3)");
        let finite: TowerElement = "1=g0^2".parse().unwrap();
        assert!(matches!(y.positivity_classify(&finite, Family::PGroup(2), 1).unwrap(), Positivity::Positive(_)));
        assert_eq!(y.positivity_classify(&TowerElement::designated(), Family::PGroup(2), 1).unwrap(), Positivity::Zero);
        let iv = y.measure_interval(&TowerElement::designated(), Family::PGroup(2), 2).unwrap();
        assert_eq!(iv.hi, ratio(1, 9 * 81));
        let a = tower("altpow(5)");
        let one_coord: TowerElement = "2=g0".parse().unwrap();
        assert!(matches!(a.positivity_classify(&one_coord, Family::Solvable, 2).unwrap(), Positivity::Positive(_)));
        assert_eq!(a.positivity_classify(&TowerElement::designated(), Family::Solvable, 1).unwrap(), Positivity::Zero);
        assert!(a.measure_interval(&TowerElement::trivial(), Family::Nilpotent, 1).is_ok());
        assert!(matches!(
            y.measure_interval(&TowerElement::trivial(), Family::Nilpotent, 1),
            Err(Error::UnsupportedFamily { .. })
        ));
    }

    #[test]
    fn epsilon_and_fc() {
        let a = tower("altpow(5)");
        let e = TowerElement::trivial();
        assert_eq!(a.f_epsilon_membership(&e, Family::Solvable, &one(), 1).unwrap(), Verdict::Yes);
        assert!(a.f_epsilon_membership(&e, Family::Solvable, &zero(), 1).is_err());
        assert!(a.fc_membership(&"1=g0".parse().unwrap()).unwrap());
        assert!(!a.fc_membership(&TowerElement::designated()).unwrap());
        assert!(a.fc_membership(&e).unwrap());
    }
}
