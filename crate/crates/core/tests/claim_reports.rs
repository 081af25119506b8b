use pg_core::claims::{self, ClaimReport, Status};
use pg_core::DEFAULT_CAP;

fn without_runtime(mut v: Vec<ClaimReport>) -> Vec<ClaimReport> {
    for r in &mut v {
        r.runtime_ms = 0;
    }
    v
}

fn run_with_threads(n: usize) -> Vec<ClaimReport> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    pool.install(|| claims::run_all(DEFAULT_CAP))
}

#[test]
fn run_all_is_reproducible_across_thread_counts() {
    let one = without_runtime(run_with_threads(1));
    let many = without_runtime(run_with_threads(4));
    assert_eq!(one, many);
    let ids: Vec<&str> = one.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, claims::claim_ids());
    let failing: Vec<&str> = one.iter().filter(|r| r.status != Status::Pass).map(|r| r.id.as_str()).collect();
    assert_eq!(failing, ["xtower-interval"]);
    for r in one.iter().filter(|r| r.status == Status::Pass) {
        assert!(!r.computed.is_empty(), "{}", r.id);
    }
}

#[test]
fn report_json_has_exactly_the_documented_fields() {
    let r = claims::run_claim("SL4-odd", DEFAULT_CAP).unwrap();
    assert_eq!((r.status.clone(), r.computed.as_str()), (Status::Pass, "3/4"));
    let text = serde_json::to_string(&r).unwrap();
    let back: ClaimReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    keys.sort();
    assert_eq!(keys, ["computed", "expected", "id", "paper_anchor", "runtime_ms", "status"]);
}
