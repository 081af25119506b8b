//! Registry of quantitative statements checked against exact computation.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks;
use crate::constructors as c;
use crate::error::{Error, Result};
use crate::families::Family;
use crate::profinite::{Tower, TowerElement, TowerKind};
use crate::rational::{ratio, to_text, Rational};
use crate::spec::GroupSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    pub runtime_ms: u64,
    pub paper_anchor: String,
}

/// What a claim's check produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

impl Outcome {
    fn exact(computed: Rational, expected: Rational) -> Self {
        Outcome { pass: computed == expected, computed: to_text(&computed), expected: to_text(&expected) }
    }

    fn at_least(computed: Rational, bound: Rational) -> Self {
        Outcome { pass: computed >= bound, computed: to_text(&computed), expected: format!(">= {}", to_text(&bound)) }
    }

    fn greater(computed: Rational, bound: Rational) -> Self {
        Outcome { pass: computed > bound, computed: to_text(&computed), expected: format!("> {}", to_text(&bound)) }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    /// Short label of the statement being reproduced.
    pub anchor: &'static str,
    run: fn(usize) -> Result<Outcome>,
}

impl Claim {
    pub fn run(&self, cap: usize) -> ClaimReport {
        let start = Instant::now();
        let result = (self.run)(cap);
        let runtime_ms = start.elapsed().as_millis() as u64;
        let (status, computed, expected) = match result {
            Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.computed, o.expected),
            Err(e) if e.is_cap_exceeded() => (Status::Skipped(e.to_string()), String::new(), String::new()),
            Err(e) => (Status::Fail, format!("error: {e}"), String::new()),
        };
        ClaimReport { id: self.id.into(), status, computed, expected, runtime_ms, paper_anchor: self.anchor.into() }
    }
}

fn corpus_all(cap: usize, check: impl Fn(&GroupSpec, &crate::FiniteGroup) -> Result<bool> + Sync) -> Result<Outcome> {
    let specs = corpus();
    let results: Vec<Result<(String, bool)>> = specs
        .par_iter()
        .map(|s| {
            let g = s.build(cap)?.group;
            Ok((s.to_string(), check(s, &g)?))
        })
        .collect();
    let mut failed = Vec::new();
    for r in results {
        let (name, ok) = r?;
        if !ok {
            failed.push(name);
        }
    }
    Ok(Outcome {
        pass: failed.is_empty(),
        computed: if failed.is_empty() {
            format!("holds on {} groups", specs.len())
        } else {
            format!("fails on {}", failed.join(", "))
        },
        expected: format!("holds on {} groups", specs.len()),
    })
}

fn registry() -> Vec<Claim> {
    vec![
        Claim {
            id: "Y1-measure",
            description: "μ(F(g^2)) in Y_1(2,3) for 2-groups equals 1/q^{n_t n} = 1/9",
            anchor: "Y_t Sylow-containment measure formula",
            run: |cap| Ok(Outcome::exact(checks::y_socle_measure(2, 3, 1, cap)?, ratio(1, 9))),
        },
        Claim {
            id: "Y2-measure",
            description: "μ(F(g^4)) in Y_2(2,3) for 2-groups equals 1/81",
            anchor: "Y_t Sylow-containment measure formula",
            run: |cap| Ok(Outcome::exact(checks::y_socle_measure(2, 3, 2, cap)?, ratio(1, 81))),
        },
        Claim {
            id: "Y1-sylow-unique",
            description: "the only 2-subgroup of Y_1 containing g^2 is <g>",
            anchor: "unique Sylow subgroup containing g^{n_t}",
            run: |cap| {
                let (f, s, eq) = checks::y_sylow_unique(2, 3, cap)?;
                Ok(Outcome { computed: format!("|F| = {f}, |<g>| = {s}, equal = {eq}"), expected: "F = <g>".into(), pass: eq })
            },
        },
        Claim {
            id: "SL4-odd",
            description: "odd-order elements of SL(2,4) have density 1 - 1/4",
            anchor: "odd-order density of SL(2,2^n)",
            run: |cap| Ok(Outcome::exact(checks::sl_odd_fraction(4, cap)?, ratio(3, 4))),
        },
        Claim {
            id: "SL8-odd",
            description: "odd-order elements of SL(2,8) have density 1 - 1/8",
            anchor: "odd-order density of SL(2,2^n)",
            run: |cap| Ok(Outcome::exact(checks::sl_odd_fraction(8, cap)?, ratio(7, 8))),
        },
        Claim {
            id: "SL-partial-product",
            description: "odd-order density of SL(2,4) x .. x SL(2,32) is (3/4)(7/8)(15/16)(31/32)",
            anchor: "odd-order density of SL(2,2^n)",
            run: |cap| {
                let t = Tower::new(TowerKind::SlProd, cap);
                let iv = t.measure_interval(&TowerElement::trivial(), Family::OddSolvable, 4)?;
                let exact = (2..=5u64).try_fold(ratio(1, 1), |acc, n| checks::sl_odd_fraction(1 << n, cap).map(|v| acc * v))?;
                let mut o = Outcome::exact(exact.clone(), ratio(9765, 16384));
                o.pass &= iv.hi == exact;
                Ok(o)
            },
        },
        Claim {
            id: "baer-op-trivial",
            description: "O_2 of the Baer group V ⋊ (C_2 ≀ C_3) over GF(3) is trivial",
            anchor: "affine construction with trivial O_p",
            run: |cap| {
                let b = checks::baer_check(2, 1, 3, 3, cap)?;
                Ok(Outcome { computed: b.o_p_order.to_string(), expected: "1".into(), pass: b.o_p_order == 1 })
            },
        },
        Claim {
            id: "baer-lambda",
            description: "|Λ_{G,2}(x)|/|G| >= (n-1)/n = 2/3 in the Baer group of order 648",
            anchor: "affine construction Λ-density bound",
            run: |cap| {
                let b = checks::baer_check(2, 1, 3, 3, cap)?;
                Ok(Outcome::at_least(b.lambda_fraction, b.bound))
            },
        },
        Claim {
            id: "X1-center",
            description: "X_1(2,3) of order 9216 has trivial center and trivial hypercenter",
            anchor: "X_t has trivial hypercenter",
            run: |cap| {
                let x = checks::x_check(2, 3, 1, cap)?;
                Ok(Outcome {
                    computed: format!("|X| = {}, |Z| = {}, |Z_inf| = {}", x.order, x.center_order, x.hypercenter_order),
                    expected: "|X| = 9216, |Z| = 1, |Z_inf| = 1".into(),
                    pass: x.order == 9216 && x.center_order == 1 && x.hypercenter_order == 1,
                })
            },
        },
        Claim {
            id: "X1-nilpotentizer",
            description: "W·Ω_2(Y) lies in nil(g_W) in X_1(2,3), so μ(nil(g_W)) >= 1 - 1/4",
            anchor: "X_t nilpotentizer lower bound",
            run: |cap| {
                let x = checks::x_check(2, 3, 1, cap)?;
                let mut o = Outcome::at_least(x.nil_fraction, x.bound.clone());
                o.pass &= x.core_inside && x.core_fraction >= x.bound;
                o.computed = format!("{} (core {} inside = {})", o.computed, to_text(&x.core_fraction), x.core_inside);
                Ok(o)
            },
        },
        Claim {
            id: "op-chief-criterion",
            description: "p-elements centralizing all nonabelian and abelian p'-chief factors form O_p(G), on the corpus",
            anchor: "chief-factor characterization of O_p",
            run: |cap| corpus_all(cap, |_, g| Ok(checks::op_criterion(g).iter().all(|&(_, ok)| ok))),
        },
        Claim {
            id: "nil-quotient-bound",
            description: "μ(nil_G(x)) <= μ(nil_{G/N}(xN))·|C_N(x_{p'})|/|N| for abelian minimal normal p-subgroups N, on the corpus",
            anchor: "nilpotentizer bound over an abelian chief factor",
            run: |cap| corpus_all(cap, |_, g| Ok(checks::nil_quotient_bound(g)?.iter().all(|c| c.lhs <= c.rhs))),
        },
        Claim {
            id: "lambda-coset",
            description: "Λ_{G,p}(x) ∩ yN = y C_N(x^y) C_N(x) for normal p'-subgroups N, on the corpus",
            anchor: "coset structure of Λ_{G,p}",
            run: |cap| corpus_all(cap, |_, g| Ok(checks::lambda_coset_identity(g)?.failures == 0)),
        },
        Claim {
            id: "hypercenter-intersection",
            description: "the intersection of all nilpotentizers is the hypercenter, on the corpus",
            anchor: "nilpotentizer intersection equals hypercenter",
            run: |cap| {
                corpus_all(cap, |_, g| {
                    let (a, b) = checks::hypercenter_identity(g);
                    Ok(a == b)
                })
            },
        },
        Claim {
            id: "frobcyc-nonclosure",
            description: "in C_7 ⋊ C_3 the elements x with F_3(x) nonempty are not closed under products",
            anchor: "Frobenius group non-subgroup example",
            run: |cap| {
                let w = checks::frobenius_non_closure(7, 1, 3, cap)?;
                Ok(match w {
                    Some(w) => Outcome {
                        computed: format!(
                            "g{} * g{} = g{} with orders {} * {} = {}",
                            w.a, w.b, w.product, w.orders.0, w.orders.1, w.orders.2
                        ),
                        expected: "a witness pair".into(),
                        pass: true,
                    },
                    None => Outcome { computed: "closed".into(), expected: "a witness pair".into(), pass: false },
                })
            },
        },
        Claim {
            id: "alt5-bounds",
            description: "0 < μ(S(x)) < 1 for every x != 1 in Alt(5), and every x != 1 lies in a generating pair",
            anchor: "strict solvabilizer bounds in Alt(m)",
            run: |cap| {
                let a = checks::alt_solvabilizer_bounds(5, cap)?;
                let pass = a.min > ratio(0, 1) && a.max < ratio(1, 1) && a.two_generated == a.nontrivial;
                Ok(Outcome {
                    computed: format!(
                        "min {}, max {}, {} of {} two-generate",
                        to_text(&a.min),
                        to_text(&a.max),
                        a.two_generated,
                        a.nontrivial
                    ),
                    expected: "0 < min <= max < 1, all two-generate".into(),
                    pass,
                })
            },
        },
        Claim {
            id: "xtower-interval",
            description: "depth-1 certified lower bound for μ(nil(g)) on ∏_{t>=1} X_t(2,3) exceeds 7/10",
            anchor: "X-tower nilpotentizer product bound",
            run: |cap| {
                let t = Tower::new(TowerKind::XTower(2, 3, 1), cap);
                let iv = t.measure_interval(&TowerElement::designated(), Family::Nilpotent, 1)?;
                Ok(Outcome::greater(iv.lo, ratio(7, 10)))
            },
        },
        Claim {
            id: "xtower-interval-s2",
            description: "analytic lower bound for μ(nil(g)) on ∏_{t>=2} X_t(2,3) exceeds 7/10",
            anchor: "X-tower nilpotentizer product bound",
            run: |cap| {
                let t = Tower::new(TowerKind::XTower(2, 3, 2), cap);
                let iv = t.measure_interval(&TowerElement::designated(), Family::Nilpotent, 0)?;
                Ok(Outcome::greater(iv.lo, ratio(7, 10)))
            },
        },
        Claim {
            id: "product-factorization",
            description: "F_{GxH}((x,y)) = F_G(x) x F_H(y) for every built-in family on Sym(3)xC_2 and Alt(4)xC_3",
            anchor: "direct-product measure factorization",
            run: |cap| {
                let mut total = (0, 0);
                for (a, b) in [(c::sym(3, cap)?, c::cyclic(2, cap)?), (c::alt(4, cap)?, c::cyclic(3, cap)?)] {
                    let prod = c::direct_product(vec![a, b], cap)?;
                    let (f, n) = checks::product_factorization(&prod);
                    total = (total.0 + f, total.1 + n);
                }
                Ok(Outcome {
                    computed: format!("{} mismatches in {} cases", total.0, total.1),
                    expected: "0 mismatches".into(),
                    pass: total.0 == 0,
                })
            },
        },
        Claim {
            id: "radical-oracle",
            description: "one-pass solvable radical, Fitting subgroup and O_p match normal-subgroup enumeration, corpus groups of order <= 200",
            anchor: "radical-type subgroups",
            run: |cap| {
                corpus_all(cap, |_, g| Ok(g.order() > 200 || checks::radical_oracle(g).mismatches.is_empty()))
            },
        },
        Claim {
            id: "ytower-zero",
            description: "an element of ∏ Y_t(2,3) with the designated element in every coordinate has F-measure 0 for 2-groups",
            anchor: "Y-tower positive-measure elements have finite support",
            run: |cap| {
                let t = Tower::new(TowerKind::YTower(2, 3), cap);
                let c = t.positivity_classify(&TowerElement::designated(), Family::PGroup(2), 2)?;
                Ok(Outcome {
                    computed: format!("{c:?}"),
                    expected: "Zero".into(),
                    pass: c == crate::profinite::Positivity::Zero,
                })
            },
        },
    ]
}

pub fn claims() -> Vec<Claim> {
    let mut v = registry();
    v.sort_by_key(|c| c.id);
    v
}

pub fn claim_ids() -> Vec<&'static str> {
    claims().iter().map(|c| c.id).collect()
}

pub fn run_claim(id: &str, cap: usize) -> Result<ClaimReport> {
    claims().into_iter().find(|c| c.id == id).map(|c| c.run(cap)).ok_or_else(|| Error::UnknownClaim(id.into()))
}

/// Every claim, run in parallel, ordered by id.
pub fn run_all(cap: usize) -> Vec<ClaimReport> {
    claims().par_iter().map(|c| c.run(cap)).collect()
}

/// The fixed set of test groups.
pub fn corpus() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let mut v: Vec<GroupSpec> = (1..=12).map(Cyclic).collect();
    v.extend([
        Sym(3),
        Sym(4),
        Alt(4),
        Alt(5),
        Dihedral(4),
        Dihedral(6),
        Sl2(2),
        Sl2(3),
        Sl2(4),
        Frob(2, 3),
        Frob(3, 7),
        FrobCyc(7, 1, 3),
        WreathY(2, 3, 1),
        Baer(2, 1, 3, 2),
        Prod(vec![Sym(3), Cyclic(2)]),
        Prod(vec![Alt(5), Alt(5)]),
    ]);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn ids_are_unique_and_sorted() {
        let ids = claim_ids();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn unknown_claim() {
        assert!(matches!(run_claim("nonexistent", DEFAULT_CAP), Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn quick_claims() {
        for id in ["Y1-measure", "SL4-odd", "frobcyc-nonclosure"] {
            let r = run_claim(id, DEFAULT_CAP).unwrap();
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
        let r = run_claim("Y1-measure", DEFAULT_CAP).unwrap();
        assert_eq!(r.computed, "1/9");
        let skipped = run_claim("Y2-measure", 100).unwrap();
        assert!(matches!(skipped.status, Status::Skipped(_)));
    }

    #[test]
    fn report_serialization_round_trips() {
        let r = ClaimReport {
            id: "x".into(),
            status: Status::Skipped("cap".into()),
            computed: "1/9".into(),
            expected: "1/9".into(),
            runtime_ms: 3,
            paper_anchor: "a".into(),
        };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<ClaimReport>(&s).unwrap(), r);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys.len(), 6);
    }

    #[test]
    fn corpus_builds() {
        let c = corpus();
        assert_eq!(c.len(), 28);
        for s in &c {
            s.build(DEFAULT_CAP).unwrap();
        }
    }
}
