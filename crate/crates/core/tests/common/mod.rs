#![allow(dead_code)]

use std::sync::OnceLock;

use twocircles::arrangement::{decode, Arrangement};
use twocircles::canonical::EquivalenceMode;
use twocircles::generator::{enumerate_up_to, Level};

pub const EXPECTED_CONFIGURATIONS: [usize; 5] = [1, 1, 2, 4, 13];
pub const EXPECTED_FLOWS: [usize; 5] = [1, 1, 2, 4, 14];

/// Configuration-mode levels for 2..=10 points, computed once per test binary.
pub fn levels() -> &'static [Level] {
    static LEVELS: OnceLock<Vec<Level>> = OnceLock::new();
    LEVELS.get_or_init(|| enumerate_up_to(10, EquivalenceMode::CONFIGURATION).expect("enumeration"))
}

/// Every class representative of every level, decoded.
pub fn members() -> Vec<Arrangement> {
    levels()
        .iter()
        .flat_map(|l| l.classes.iter().map(|c| decode(&c.representative).expect("catalog decodes")))
        .collect()
}
