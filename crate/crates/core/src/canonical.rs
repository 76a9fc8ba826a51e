//! Canonical keys for arrangements.
//!
//! A key is the lexicographically smallest breadth-first traversal code over
//! every seed `(start dart, orientation, curve relabeling)` the equivalence
//! mode allows. Traversal from a seed labels darts in discovery order,
//! visiting the rotation neighbor before the arc mate, and emits for each
//! dart in label order the triple `(label of rotation neighbor, label of
//! mate, curve number)`. Two seeds produce the same code exactly when some
//! map isomorphism carries one to the other, so the minimum is a complete
//! invariant.

use std::cmp::Ordering;
use std::fmt;

use crate::arrangement::{Arrangement, ArrangementError};

/// Which homeomorphisms of the sphere count as equivalences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EquivalenceMode {
    /// Curve 1 and curve 2 may be exchanged.
    pub allow_swap: bool,
    /// Orientation-reversing homeomorphisms are permitted.
    pub allow_reflection: bool,
}

impl EquivalenceMode {
    /// Configurations: any homeomorphism, curves unlabeled.
    pub const CONFIGURATION: EquivalenceMode = EquivalenceMode {
        allow_swap: true,
        allow_reflection: true,
    };
    /// Flows: any homeomorphism, but the curves keep their identity.
    pub const FLOW: EquivalenceMode = EquivalenceMode {
        allow_swap: false,
        allow_reflection: true,
    };

    /// The same mode with curve swapping turned off.
    pub fn without_swap(self) -> EquivalenceMode {
        EquivalenceMode {
            allow_swap: false,
            ..self
        }
    }
}

impl Default for EquivalenceMode {
    fn default() -> Self {
        EquivalenceMode::CONFIGURATION
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    bytes: Vec<u8>,
    mode: EquivalenceMode,
}

impl CanonicalKey {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn mode(&self) -> EquivalenceMode {
        self.mode
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(2 * self.bytes.len());
        for b in &self.bytes {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }

    pub fn from_hex(hex: &str, mode: EquivalenceMode) -> Option<CanonicalKey> {
        if !hex.len().is_multiple_of(2) || !hex.is_ascii() {
            return None;
        }
        let bytes = (0..hex.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&hex[i..i + 2], 16).ok())
            .collect::<Option<Vec<u8>>>()?;
        Some(CanonicalKey { bytes, mode })
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// A traversal seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seed {
    pub start: u32,
    pub reflect: bool,
    pub swap: bool,
}

/// Curve-swap and reflection symmetry of one arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryReport {
    /// Some homeomorphism (possibly orientation-reversing) exchanges the curves.
    pub has_swap_automorphism: bool,
    /// Some orientation-reversing homeomorphism maps each curve to itself.
    pub has_reflection_automorphism: bool,
    /// Size of the automorphism group with swaps and reflections allowed.
    pub automorphism_count: usize,
}

impl SymmetryReport {
    /// `S` for symmetric under curve exchange, `A` otherwise.
    pub fn letter(&self) -> char {
        if self.has_swap_automorphism {
            'S'
        } else {
            'A'
        }
    }

    /// Topologically distinct Morse flows carried by the configuration.
    pub fn flow_count(&self) -> usize {
        if self.has_swap_automorphism {
            1
        } else {
            2
        }
    }
}

struct Traversal {
    labels: Vec<u32>,
    queue: Vec<u32>,
    code: Vec<u8>,
}

impl Traversal {
    fn new(darts: usize) -> Self {
        Traversal {
            labels: vec![u32::MAX; darts],
            queue: Vec::with_capacity(darts),
            code: Vec::with_capacity(3 * 2 * darts + 2),
        }
    }
}

fn header(arr: &Arrangement) -> [u8; 2] {
    (arr.n_points() as u16).to_be_bytes()
}

fn push_label(code: &mut Vec<u8>, label: u32, wide: bool) {
    if wide {
        code.extend_from_slice(&(label as u16).to_be_bytes());
    } else {
        code.push(label as u8);
    }
}

/// Runs one traversal. When `bound` is given the traversal stops as soon as
/// its code is known to be greater; returns the comparison with the bound
/// (`Less` when there is none).
fn traverse(arr: &Arrangement, seed: Seed, t: &mut Traversal, bound: Option<&[u8]>) -> Ordering {
    let rot = if seed.reflect {
        arr.raw_rotation_inv()
    } else {
        arr.raw_rotation()
    };
    let mate = arr.raw_mate();
    let color = arr.raw_color();
    let wide = arr.dart_count() > 255;

    t.labels.iter_mut().for_each(|l| *l = u32::MAX);
    t.queue.clear();
    t.code.clear();
    t.code.extend_from_slice(&header(arr));
    t.labels[seed.start as usize] = 0;
    t.queue.push(seed.start);

    let mut cmp = if bound.is_some() {
        Ordering::Equal
    } else {
        Ordering::Less
    };
    let mut checked = 0;
    let mut head = 0;
    while head < t.queue.len() {
        let d = t.queue[head] as usize;
        head += 1;
        for e in [rot[d], mate[d]] {
            if t.labels[e as usize] == u32::MAX {
                t.labels[e as usize] = t.queue.len() as u32;
                t.queue.push(e);
            }
        }
        push_label(&mut t.code, t.labels[rot[d] as usize], wide);
        push_label(&mut t.code, t.labels[mate[d] as usize], wide);
        let curve = if seed.swap { color[d].other() } else { color[d] };
        t.code.push(curve.number());

        if cmp == Ordering::Equal {
            let bound = bound.expect("bound present while comparing");
            let end = t.code.len().min(bound.len());
            cmp = t.code[checked..end].cmp(&bound[checked..end]);
            checked = end;
            if cmp == Ordering::Greater {
                return cmp;
            }
        }
    }
    if cmp == Ordering::Equal {
        cmp = t.code.len().cmp(&bound.map_or(0, |b| b.len()));
    }
    cmp
}

fn seeds(arr: &Arrangement, reflect: &[bool], swap: &[bool]) -> Vec<Seed> {
    let mut out = Vec::with_capacity(arr.dart_count() * reflect.len() * swap.len());
    for &r in reflect {
        for &s in swap {
            for start in 0..arr.dart_count() as u32 {
                out.push(Seed {
                    start,
                    reflect: r,
                    swap: s,
                });
            }
        }
    }
    out
}

struct Minimum {
    code: Vec<u8>,
    seed: Seed,
    labels: Vec<u32>,
    /// Number of seeds attaining the minimum.
    ties: usize,
}

fn minimize(arr: &Arrangement, seeds: &[Seed]) -> Minimum {
    let mut t = Traversal::new(arr.dart_count());
    let mut best: Option<Minimum> = None;
    for &seed in seeds {
        let cmp = traverse(arr, seed, &mut t, best.as_ref().map(|b| b.code.as_slice()));
        match (cmp, best.as_mut()) {
            (Ordering::Less, _) => {
                best = Some(Minimum {
                    code: t.code.clone(),
                    seed,
                    labels: t.labels.clone(),
                    ties: 1,
                })
            }
            (Ordering::Equal, Some(b)) => b.ties += 1,
            _ => {}
        }
    }
    best.expect("at least one seed")
}

fn mode_seeds(arr: &Arrangement, mode: EquivalenceMode) -> Vec<Seed> {
    let reflect: &[bool] = if mode.allow_reflection {
        &[false, true]
    } else {
        &[false]
    };
    let swap: &[bool] = if mode.allow_swap {
        &[false, true]
    } else {
        &[false]
    };
    seeds(arr, reflect, swap)
}

/// Key without the validity check; callers guarantee `arr` is valid.
pub(crate) fn key_of_valid(arr: &Arrangement, mode: EquivalenceMode) -> CanonicalKey {
    CanonicalKey {
        bytes: minimize(arr, &mode_seeds(arr, mode)).code,
        mode,
    }
}

pub fn canonical_key(
    arr: &Arrangement,
    mode: EquivalenceMode,
) -> Result<CanonicalKey, ArrangementError> {
    arr.ensure_valid()?;
    Ok(key_of_valid(arr, mode))
}

pub fn are_equivalent(
    a: &Arrangement,
    b: &Arrangement,
    mode: EquivalenceMode,
) -> Result<bool, ArrangementError> {
    Ok(canonical_key(a, mode)? == canonical_key(b, mode)?)
}

/// Dart labels assigned by the minimizing traversal under `mode`, together
/// with the seed that produced them. Labels are canonical up to
/// automorphisms of the arrangement.
pub fn canonical_labeling(
    arr: &Arrangement,
    mode: EquivalenceMode,
) -> Result<(Vec<u32>, Seed), ArrangementError> {
    arr.ensure_valid()?;
    let m = minimize(arr, &mode_seeds(arr, mode));
    Ok((m.labels, m.seed))
}

pub(crate) fn symmetry_of_valid(arr: &Arrangement) -> SymmetryReport {
    let plain = minimize(arr, &seeds(arr, &[false, true], &[false]));
    let swapped = minimize(arr, &seeds(arr, &[false, true], &[true]));
    let unreflected = minimize(arr, &seeds(arr, &[false], &[false]));
    let reflected = minimize(arr, &seeds(arr, &[true], &[false]));
    let automorphism_count = match plain.code.cmp(&swapped.code) {
        Ordering::Less => plain.ties,
        Ordering::Greater => swapped.ties,
        Ordering::Equal => plain.ties + swapped.ties,
    };
    SymmetryReport {
        has_swap_automorphism: plain.code == swapped.code,
        has_reflection_automorphism: unreflected.code == reflected.code,
        automorphism_count,
    }
}

pub fn symmetry(arr: &Arrangement) -> Result<SymmetryReport, ArrangementError> {
    arr.ensure_valid()?;
    Ok(symmetry_of_valid(arr))
}
