#![allow(dead_code)]

use pg_core::claims::corpus;
use pg_core::{FiniteGroup, DEFAULT_CAP};

/// Corpus groups of order at most `max`, with their spec strings.
pub fn corpus_up_to(max: usize) -> Vec<(String, FiniteGroup)> {
    corpus()
        .into_iter()
        .map(|s| (s.to_string(), s.build(DEFAULT_CAP).unwrap().group))
        .filter(|(_, g)| g.order() <= max)
        .collect()
}

pub fn build(spec: &str) -> FiniteGroup {
    spec.parse::<pg_core::GroupSpec>().unwrap().build(DEFAULT_CAP).unwrap().group
}
