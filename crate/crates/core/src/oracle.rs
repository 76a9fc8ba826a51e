//! Brute-force enumeration over Gauss-pair codes.
//!
//! Every curve-2 visiting order and every sign vector with zero sum is
//! decoded; the code is kept when the resulting map is spherical. Classes
//! are separated by configuration keys only, so the result is independent
//! of both the crossing generator and the region invariants.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::{decode, GaussPairCode, Sign};
use crate::canonical::{key_of_valid, symmetry_of_valid, CanonicalKey, EquivalenceMode};
use crate::generator::{CountRow, Level};

/// Largest point count the oracle accepts.
pub const MAX_ORACLE_POINTS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle point count must be even and in 2..={MAX_ORACLE_POINTS}, got {0}")]
    InvalidPointCount(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitMode {
    /// Every ordering of curve 2.
    Full,
    /// Orderings whose first label is 1 (cyclic rotations describe the same curve).
    SymmetricReduced,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub n_points: usize,
    /// Smallest accepted code, normalized, for every configuration class.
    pub classes: BTreeMap<CanonicalKey, GaussPairCode>,
    /// Number of codes that decode to valid spherical arrangements.
    pub raw_accepted: usize,
    pub elapsed: Duration,
}

impl OracleResult {
    pub fn class_keys(&self) -> BTreeSet<CanonicalKey> {
        self.classes.keys().cloned().collect()
    }

    /// The classes as a catalog level without provenance.
    pub fn to_level(&self) -> Level {
        let best = self
            .classes
            .iter()
            .map(|(k, c)| (k.clone(), (c.clone(), None)))
            .collect();
        Level::from_candidates(self.n_points, EquivalenceMode::CONFIGURATION, best)
            .expect("oracle representatives decode")
    }
}

/// Lexicographic successor; false when `p` is the last permutation.
fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("pivot has a successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Face count of the decoded map, computed without allocating. Must agree
/// with `decode_unchecked(..).face_count()`.
fn face_count(order: &[u32], signs: u32) -> u32 {
    let n = order.len();
    let darts = 4 * n;
    let mut rotation = [0u8; 4 * MAX_ORACLE_POINTS];
    let mut mate = [0u8; 4 * MAX_ORACLE_POINTS];
    for v in 0..n {
        let base = 4 * v as u8;
        let ring: [u8; 4] = if signs >> v & 1 == 0 { [0, 1, 2, 3] } else { [0, 3, 2, 1] };
        for k in 0..4 {
            rotation[(base + ring[k]) as usize] = base + ring[(k + 1) % 4];
        }
        let next = 4 * ((v + 1) % n) as u8;
        mate[(base) as usize] = next + 2;
        mate[(next + 2) as usize] = base;
    }
    for j in 0..n {
        let here = 4 * (order[j] - 1) as u8;
        let next = 4 * (order[(j + 1) % n] - 1) as u8;
        mate[(here + 1) as usize] = next + 3;
        mate[(next + 3) as usize] = here + 1;
    }
    let mut seen: u64 = 0;
    let mut faces = 0;
    for start in 0..darts {
        if seen >> start & 1 == 1 {
            continue;
        }
        faces += 1;
        let mut d = start;
        while seen >> d & 1 == 0 {
            seen |= 1 << d;
            d = rotation[mate[d] as usize] as usize;
        }
    }
    faces
}

fn signs_of(mask: u32, n: usize) -> Vec<Sign> {
    (0..n)
        .map(|v| if mask >> v & 1 == 0 { Sign::Plus } else { Sign::Minus })
        .collect()
}

#[derive(Default)]
struct Partial {
    classes: BTreeMap<CanonicalKey, GaussPairCode>,
    accepted: usize,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.accepted += other.accepted;
        for (k, c) in other.classes {
            self.insert(k, c);
        }
        self
    }

    fn insert(&mut self, key: CanonicalKey, code: GaussPairCode) {
        match self.classes.get_mut(&key) {
            Some(existing) if *existing <= code => {}
            Some(existing) => *existing = code,
            None => {
                self.classes.insert(key, code);
            }
        }
    }
}

/// Enumerates all orders sharing the given fixed prefix.
fn search_prefix(n: usize, prefix: &[u32]) -> Partial {
    let mut rest: Vec<u32> = (1..=n as u32).filter(|p| !prefix.contains(p)).collect();
    rest.sort();
    let mut order: Vec<u32> = prefix.to_vec();
    order.extend_from_slice(&rest);
    let target_faces = n as u32 + 2;
    let mut out = Partial::default();
    loop {
        for mask in 0u32..(1 << n) {
            // a nonzero sign sum is never spherical; skip the decode
            if mask.count_ones() as usize * 2 != n {
                continue;
            }
            if face_count(&order, mask) != target_faces {
                continue;
            }
            let code = GaussPairCode::new(order.clone(), signs_of(mask, n))
                .expect("enumerated codes are well formed");
            let arr = decode(&code).expect("spherical codes decode");
            out.accepted += 1;
            out.insert(key_of_valid(&arr, EquivalenceMode::CONFIGURATION), code.normalized());
        }
        if !next_permutation(&mut order[prefix.len()..]) {
            break;
        }
    }
    out
}

pub fn brute_force(points: usize, limit: LimitMode) -> Result<OracleResult, OracleError> {
    if !(2..=MAX_ORACLE_POINTS).contains(&points) || !points.is_multiple_of(2) {
        return Err(OracleError::InvalidPointCount(points));
    }
    let started = Instant::now();
    // split the outer permutation loop on its first two entries
    let prefixes: Vec<Vec<u32>> = match limit {
        LimitMode::SymmetricReduced => (2..=points as u32).map(|p| vec![1, p]).collect(),
        LimitMode::Full => (1..=points as u32)
            .flat_map(|a| (1..=points as u32).filter(move |&b| b != a).map(move |b| vec![a, b]))
            .collect(),
    };
    let merged = prefixes
        .par_iter()
        .map(|prefix| search_prefix(points, prefix))
        .reduce(Partial::default, Partial::merge);
    Ok(OracleResult {
        n_points: points,
        classes: merged.classes,
        raw_accepted: merged.accepted,
        elapsed: started.elapsed(),
    })
}

/// Configuration and flow counts for 2, 4, ..., `max_points` from the
/// brute-force class sets.
pub fn count_table(max_points: usize, limit: LimitMode) -> Result<Vec<CountRow>, OracleError> {
    if !(2..=MAX_ORACLE_POINTS).contains(&max_points) || !max_points.is_multiple_of(2) {
        return Err(OracleError::InvalidPointCount(max_points));
    }
    (2..=max_points)
        .step_by(2)
        .map(|points| {
            let result = brute_force(points, limit)?;
            let reports: Vec<_> = result
                .classes
                .values()
                .map(|code| symmetry_of_valid(&decode(code).expect("oracle codes decode")))
                .collect();
            Ok(CountRow::from_symmetries(points, &reports))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::decode_unchecked;

    #[test]
    fn permutations_in_order() {
        let mut p = vec![1, 2, 3];
        let mut all = vec![p.clone()];
        while next_permutation(&mut p) {
            all.push(p.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![1, 3, 2]);
        assert_eq!(all[5], vec![3, 2, 1]);
    }

    #[test]
    fn fast_face_count_matches_map() {
        let n = 6;
        let mut order: Vec<u32> = (1..=n as u32).collect();
        for _ in 0..40 {
            for mask in [0b000111u32, 0b101010, 0b110001, 0b011011] {
                let code = GaussPairCode::new(order.clone(), signs_of(mask, n)).unwrap();
                let slow = decode_unchecked(&code).unwrap().face_count() as u32;
                assert_eq!(face_count(&order, mask), slow, "{code}");
            }
            next_permutation(&mut order);
        }
    }

    #[test]
    fn two_points() {
        let r = brute_force(2, LimitMode::SymmetricReduced).unwrap();
        assert_eq!(r.raw_accepted, 2);
        assert_eq!(r.classes.len(), 1);
    }

    #[test]
    fn rejects_bad_counts() {
        for p in [0, 3, 12] {
            assert!(brute_force(p, LimitMode::Full).is_err());
            assert!(count_table(p, LimitMode::Full).is_err());
        }
    }
}
