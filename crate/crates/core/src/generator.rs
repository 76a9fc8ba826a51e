//! Level-by-level enumeration by the crossing operation.
//!
//! A crossing pushes an arc of curve 1 across an arc of curve 2 through a
//! face they both bound. The two arcs meet twice, so the result has two more
//! intersection points, four more arcs and two more faces, one of which is a
//! new bigon. Starting from the lens, every class at `2n + 2` points that the
//! operation reaches from the classes at `2n` points is collected and
//! deduplicated by canonical key.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::{decode, encode, lens, Arrangement, ArrangementError, Curve, Dart, GaussPairCode};
use crate::canonical::{key_of_valid, symmetry_of_valid, CanonicalKey, EquivalenceMode, SymmetryReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid crossing site: {0}")]
    InvalidSite(String),
    #[error("point count must be even and at least 2, got {0}")]
    InvalidPointCount(usize),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// Where to apply a crossing: a face and one boundary dart of each curve on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingSite {
    pub face: usize,
    /// Dart of curve 1 whose arc is pushed.
    pub dart_a: Dart,
    /// Dart of curve 2 whose arc is crossed.
    pub dart_b: Dart,
}

impl fmt::Display for CrossingSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.face, self.dart_a, self.dart_b)
    }
}

/// Every site of `arr`, ordered by face id and then by dart.
pub fn crossing_sites(arr: &Arrangement) -> Vec<CrossingSite> {
    let mut out = Vec::new();
    for (face, walk) in arr.faces().iter().enumerate() {
        let mut ones: Vec<Dart> = walk.iter().copied().filter(|&d| arr.color(d) == Curve::First).collect();
        let mut twos: Vec<Dart> = walk.iter().copied().filter(|&d| arr.color(d) == Curve::Second).collect();
        ones.sort();
        twos.sort();
        for &dart_a in &ones {
            for &dart_b in &twos {
                out.push(CrossingSite { face, dart_a, dart_b });
            }
        }
    }
    out
}

/// Applies the crossing operation. Existing darts keep their ids, rotations
/// and colors; the eight darts of the two new points are appended.
pub fn crossing(arr: &Arrangement, site: CrossingSite) -> Result<Arrangement, GeneratorError> {
    let faces = arr.faces();
    let walk = faces.get(site.face).ok_or_else(|| {
        GeneratorError::InvalidSite(format!("face {} does not exist", site.face))
    })?;
    let (a, b) = (site.dart_a, site.dart_b);
    if a.index() >= arr.dart_count() || b.index() >= arr.dart_count() {
        return Err(GeneratorError::InvalidSite("dart out of range".into()));
    }
    if !walk.contains(&a) || !walk.contains(&b) {
        return Err(GeneratorError::InvalidSite(format!(
            "darts {a} and {b} are not both on face {}",
            site.face
        )));
    }
    if arr.color(a) != Curve::First || arr.color(b) != Curve::Second {
        return Err(GeneratorError::InvalidSite(format!(
            "dart {a} must lie on curve 1 and dart {b} on curve 2"
        )));
    }

    let n = arr.dart_count() as u32;
    let mut rotation = arr.raw_rotation().to_vec();
    let mut mate = arr.raw_mate().to_vec();
    let mut color = arr.raw_color().to_vec();
    let a_far = mate[a.index()];
    let b_far = mate[b.index()];

    // The face lies to the right of arc A walked from `a` to its mate and to
    // the right of arc B walked from `b` to its mate. A finger of A enters the
    // face and crosses B twice: first at x, near b's mate, then at y, near b.
    // The segment of B between x and y and the finger tip bound the new bigon.
    let (x_a_back, x_a_tip, x_b_in, x_b_out) = (n, n + 1, n + 2, n + 3);
    let (y_a_fwd, y_a_tip, y_b_out, y_b_in) = (n + 4, n + 5, n + 6, n + 7);
    rotation.extend_from_slice(&[0; 8]);
    for ring in [
        [x_b_in, x_a_back, x_b_out, x_a_tip],
        [y_b_out, y_a_fwd, y_b_in, y_a_tip],
    ] {
        for k in 0..4 {
            rotation[ring[k] as usize] = ring[(k + 1) % 4];
        }
    }
    mate.extend_from_slice(&[0; 8]);
    color.extend_from_slice(&[
        Curve::First,
        Curve::First,
        Curve::Second,
        Curve::Second,
        Curve::First,
        Curve::First,
        Curve::Second,
        Curve::Second,
    ]);
    let mut link = |p: u32, q: u32| {
        mate[p as usize] = q;
        mate[q as usize] = p;
    };
    link(a.0, x_a_back);
    link(x_a_tip, y_a_tip);
    link(y_a_fwd, a_far);
    link(b.0, y_b_out);
    link(y_b_in, x_b_in);
    link(x_b_out, b_far);

    let out = Arrangement::from_raw_parts(rotation, mate, color)?;
    out.ensure_valid()?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub parent: CanonicalKey,
    pub site: CrossingSite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelClass {
    /// Key under the level's equivalence mode.
    pub key: CanonicalKey,
    /// Key under the same mode with curve swaps disallowed.
    pub flow_key: CanonicalKey,
    pub representative: GaussPairCode,
    pub symmetry: SymmetryReport,
    /// `None` only for the seed level.
    pub provenance: Option<Provenance>,
}

/// All classes at one point count, sorted by key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub n_points: usize,
    pub mode: EquivalenceMode,
    pub classes: Vec<LevelClass>,
}

/// Per-level configuration and flow counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRow {
    pub n_points: usize,
    pub configurations: usize,
    pub symmetric: usize,
    pub asymmetric: usize,
    pub flows: usize,
}

impl CountRow {
    pub fn from_symmetries<'a>(
        n_points: usize,
        reports: impl IntoIterator<Item = &'a SymmetryReport>,
    ) -> CountRow {
        let (mut symmetric, mut asymmetric) = (0, 0);
        for r in reports {
            if r.has_swap_automorphism {
                symmetric += 1;
            } else {
                asymmetric += 1;
            }
        }
        CountRow {
            n_points,
            configurations: symmetric + asymmetric,
            symmetric,
            asymmetric,
            flows: symmetric + 2 * asymmetric,
        }
    }
}

impl Level {
    pub(crate) fn from_candidates(
        n_points: usize,
        mode: EquivalenceMode,
        best: BTreeMap<CanonicalKey, (GaussPairCode, Option<Provenance>)>,
    ) -> Result<Level, GeneratorError> {
        let classes = best
            .into_par_iter()
            .map(|(key, (representative, provenance))| {
                let arr = decode(&representative)?;
                Ok(LevelClass {
                    flow_key: key_of_valid(&arr, mode.without_swap()),
                    symmetry: symmetry_of_valid(&arr),
                    key,
                    representative,
                    provenance,
                })
            })
            .collect::<Result<Vec<_>, ArrangementError>>()?;
        Ok(Level {
            n_points,
            mode,
            classes,
        })
    }

    /// The single class at two points.
    pub fn seed(mode: EquivalenceMode) -> Level {
        let arr = lens();
        let code = encode(&arr).expect("lens encodes");
        let best = BTreeMap::from([(key_of_valid(&arr, mode), (code, None))]);
        Level::from_candidates(2, mode, best).expect("lens level")
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn count_row(&self) -> CountRow {
        CountRow::from_symmetries(self.n_points, self.classes.iter().map(|c| &c.symmetry))
    }
}

type Candidate = (CanonicalKey, GaussPairCode, Provenance);

fn expand(parent: &LevelClass, mode: EquivalenceMode) -> Result<Vec<Candidate>, GeneratorError> {
    let arr = decode(&parent.representative)?;
    crossing_sites(&arr)
        .into_par_iter()
        .map(|site| {
            let child = crossing(&arr, site)?;
            let code = encode(&child)?;
            let prov = Provenance {
                parent: parent.key.clone(),
                site,
            };
            Ok((key_of_valid(&child, mode), code, prov))
        })
        .collect()
}

/// Every class one crossing away from `prev`, with the lexicographically
/// smallest encountered code as representative.
pub fn enumerate_level(prev: &Level) -> Result<Level, GeneratorError> {
    let mode = prev.mode;
    let candidates: Vec<Vec<Candidate>> = prev
        .classes
        .par_iter()
        .map(|parent| expand(parent, mode))
        .collect::<Result<_, _>>()?;

    let mut best: BTreeMap<CanonicalKey, (GaussPairCode, Option<Provenance>)> = BTreeMap::new();
    for (key, code, prov) in candidates.into_iter().flatten() {
        match best.get_mut(&key) {
            None => {
                best.insert(key, (code, Some(prov)));
            }
            Some(entry) => {
                let incumbent = (&entry.0, entry.1.as_ref().map(|p| (&p.parent, p.site)));
                if (&code, Some((&prov.parent, prov.site))) < incumbent {
                    *entry = (code, Some(prov));
                }
            }
        }
    }
    Level::from_candidates(prev.n_points + 2, mode, best)
}

/// Levels for 2, 4, ..., `max_points`.
pub fn enumerate_up_to(max_points: usize, mode: EquivalenceMode) -> Result<Vec<Level>, GeneratorError> {
    if max_points < 2 || !max_points.is_multiple_of(2) {
        return Err(GeneratorError::InvalidPointCount(max_points));
    }
    let mut levels = vec![Level::seed(mode)];
    while levels.last().expect("nonempty").n_points < max_points {
        let next = enumerate_level(levels.last().expect("nonempty"))?;
        levels.push(next);
    }
    Ok(levels)
}
