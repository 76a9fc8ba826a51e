//! Two transversal circles on the oriented 2-sphere as an edge-colored
//! combinatorial map.
//!
//! Every intersection point is a vertex with four darts. A dart is one end of
//! an arc (a piece of a curve between two consecutive intersection points).
//! The map is given by three arrays indexed by dart:
//!
//! * `rotation` (σ): the next dart counterclockwise around the same vertex,
//! * `mate` (α): the dart at the other end of the same arc,
//! * `color`: the curve the dart's arc belongs to.
//!
//! Walking a curve "straight ahead" is `d -> σ(σ(α(d)))`, and faces are the
//! cycles of `σ ∘ α`.

mod code;
mod validate;

pub use code::{decode, decode_unchecked, encode, GaussPairCode, Sign};
pub use validate::{Check, CheckOutcome, CheckStatus, ValidationReport};

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// One end of an arc at an intersection point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which of the two circles an arc belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Curve {
    First,
    Second,
}

impl Curve {
    pub fn other(self) -> Curve {
        match self {
            Curve::First => Curve::Second,
            Curve::Second => Curve::First,
        }
    }

    /// 1 or 2.
    pub fn number(self) -> u8 {
        match self {
            Curve::First => 1,
            Curve::Second => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("malformed code: {0}")]
    MalformedCode(String),
    #[error("map is not spherical (genus {genus})")]
    NotSpherical { genus: u32 },
    #[error("map is not a transversal two-circle arrangement: {0}")]
    NotTransversal(String),
    #[error("map is disconnected")]
    Disconnected,
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
}

/// A face given as its cyclic boundary walk under `σ ∘ α`.
pub type FaceWalk = Vec<Dart>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    rotation: Vec<u32>,
    rotation_inv: Vec<u32>,
    mate: Vec<u32>,
    color: Vec<Curve>,
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arrangement")
            .field("rotation", &self.rotation)
            .field("mate", &self.mate)
            .field("color", &self.color)
            .finish()
    }
}

fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        let x = x as usize;
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl Arrangement {
    /// Builds a map from raw arrays. Only the shape is checked here (equal
    /// lengths, a positive multiple of four darts, σ and α permutations); the
    /// arrangement invariants are checked by [`Arrangement::validate`].
    pub fn from_raw_parts(
        rotation: Vec<u32>,
        mate: Vec<u32>,
        color: Vec<Curve>,
    ) -> Result<Self, ArrangementError> {
        let n = rotation.len();
        if n == 0 {
            return Err(ArrangementError::InvalidArrangement(
                "no darts (two disjoint circles are not supported)".into(),
            ));
        }
        if mate.len() != n || color.len() != n {
            return Err(ArrangementError::InvalidArrangement(format!(
                "array lengths differ: rotation {n}, mate {}, color {}",
                mate.len(),
                color.len()
            )));
        }
        if !n.is_multiple_of(4) {
            return Err(ArrangementError::InvalidArrangement(format!(
                "dart count {n} is not a multiple of 4"
            )));
        }
        if !is_permutation(&rotation) {
            return Err(ArrangementError::InvalidArrangement(
                "rotation is not a permutation".into(),
            ));
        }
        if !is_permutation(&mate) {
            return Err(ArrangementError::InvalidArrangement(
                "mate is not a permutation".into(),
            ));
        }
        let mut rotation_inv = vec![0; n];
        for (d, &r) in rotation.iter().enumerate() {
            rotation_inv[r as usize] = d as u32;
        }
        Ok(Arrangement {
            rotation,
            rotation_inv,
            mate,
            color,
        })
    }

    /// Like [`Arrangement::from_raw_parts`] but also requires every
    /// arrangement invariant to hold.
    pub fn new(
        rotation: Vec<u32>,
        mate: Vec<u32>,
        color: Vec<Curve>,
    ) -> Result<Self, ArrangementError> {
        let arr = Self::from_raw_parts(rotation, mate, color)?;
        arr.ensure_valid()?;
        Ok(arr)
    }

    #[inline]
    pub fn dart_count(&self) -> usize {
        self.rotation.len()
    }

    /// Number of intersection points, `2n`.
    #[inline]
    pub fn n_points(&self) -> usize {
        self.rotation.len() / 4
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..self.rotation.len() as u32).map(Dart)
    }

    #[inline]
    pub fn rotate(&self, d: Dart) -> Dart {
        Dart(self.rotation[d.index()])
    }

    #[inline]
    pub fn rotate_inv(&self, d: Dart) -> Dart {
        Dart(self.rotation_inv[d.index()])
    }

    #[inline]
    pub fn mate(&self, d: Dart) -> Dart {
        Dart(self.mate[d.index()])
    }

    #[inline]
    pub fn color(&self, d: Dart) -> Curve {
        self.color[d.index()]
    }

    /// Continue along the same curve through the vertex at the far end of `d`.
    #[inline]
    pub fn straight_ahead(&self, d: Dart) -> Dart {
        self.rotate(self.rotate(self.mate(d)))
    }

    /// Next dart on the boundary walk of the face of `d`.
    #[inline]
    pub fn face_next(&self, d: Dart) -> Dart {
        self.rotate(self.mate(d))
    }

    pub(crate) fn raw_rotation(&self) -> &[u32] {
        &self.rotation
    }

    pub(crate) fn raw_rotation_inv(&self) -> &[u32] {
        &self.rotation_inv
    }

    pub(crate) fn raw_mate(&self) -> &[u32] {
        &self.mate
    }

    pub(crate) fn raw_color(&self) -> &[Curve] {
        &self.color
    }

    fn cycles_of(&self, step: impl Fn(Dart) -> Dart) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.dart_count()];
        let mut out = Vec::new();
        for start in self.darts() {
            if seen[start.index()] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while !seen[d.index()] {
                seen[d.index()] = true;
                cycle.push(d);
                d = step(d);
            }
            out.push(cycle);
        }
        out
    }

    /// Vertices as σ-cycles, ordered by smallest dart.
    pub fn vertices(&self) -> Vec<Vec<Dart>> {
        self.cycles_of(|d| self.rotate(d))
    }

    /// Vertex index of every dart, numbering vertices as in [`Arrangement::vertices`].
    pub fn vertex_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.dart_count()];
        for (v, cycle) in self.vertices().iter().enumerate() {
            for d in cycle {
                out[d.index()] = v;
            }
        }
        out
    }

    /// Face boundary walks under `σ ∘ α`, ordered by smallest dart. The face
    /// id used elsewhere is the position in this list.
    pub fn faces(&self) -> Vec<FaceWalk> {
        self.cycles_of(|d| self.face_next(d))
    }

    /// Face id of every dart, numbering faces as in [`Arrangement::faces`].
    pub fn face_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.dart_count()];
        for (f, walk) in self.faces().iter().enumerate() {
            for d in walk {
                out[d.index()] = f;
            }
        }
        out
    }

    pub fn face_count(&self) -> usize {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = self.rotation[self.mate[d] as usize] as usize;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(d) = queue.pop_front() {
            for e in [self.rotation[d] as usize, self.mate[d] as usize] {
                if !seen[e] {
                    seen[e] = true;
                    reached += 1;
                    queue.push_back(e);
                }
            }
        }
        reached == n
    }

    /// Genus of the closed orientable surface the map is cellularly embedded in.
    pub fn genus(&self) -> Result<u32, ArrangementError> {
        if !self.is_connected() {
            return Err(ArrangementError::Disconnected);
        }
        let v = self.vertices().len() as i64;
        let e = (self.dart_count() / 2) as i64;
        let f = self.face_count() as i64;
        let twice = 2 - v + e - f;
        if twice < 0 || twice % 2 != 0 {
            return Err(ArrangementError::InvalidArrangement(format!(
                "Euler characteristic {} is not that of a closed orientable surface",
                v - e + f
            )));
        }
        Ok((twice / 2) as u32)
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    pub fn ensure_valid(&self) -> Result<(), ArrangementError> {
        let report = self.validate();
        if report.is_valid() {
            return Ok(());
        }
        if let Some(genus) = report.genus_failure() {
            return Err(ArrangementError::NotSpherical { genus });
        }
        Err(ArrangementError::InvalidArrangement(report.summary()))
    }

    /// The dart at which curve traversal starts: the smallest dart of curve 1.
    pub fn start_dart(&self) -> Dart {
        self.darts()
            .find(|&d| self.color(d) == Curve::First)
            .expect("arrangement has a dart of curve 1")
    }

    /// Directed walk of one curve: `start, sa(start), sa²(start), ...` until it
    /// closes up.
    pub fn curve_walk(&self, start: Dart) -> Vec<Dart> {
        let mut walk = vec![start];
        let mut d = self.straight_ahead(start);
        while d != start && walk.len() <= self.dart_count() {
            walk.push(d);
            d = self.straight_ahead(d);
        }
        walk
    }

    /// Per-vertex crossing signs, keyed by vertex index of
    /// [`Arrangement::vertex_of`]. Curve 1 is directed by [`Arrangement::start_dart`]
    /// and curve 2 by `σ(start_dart)`; a vertex is `+` when curve 2's forward
    /// dart follows curve 1's forward dart counterclockwise.
    pub fn crossing_signs(&self) -> Vec<Sign> {
        let vertex_of = self.vertex_of();
        let v_count = vertex_of.iter().copied().max().map_or(0, |m| m + 1);
        let d0 = self.start_dart();
        let mut forward1 = vec![None; v_count];
        let mut forward2 = vec![None; v_count];
        for d in self.curve_walk(d0) {
            forward1[vertex_of[d.index()]] = Some(d);
        }
        for d in self.curve_walk(self.rotate(d0)) {
            forward2[vertex_of[d.index()]] = Some(d);
        }
        (0..v_count)
            .map(|v| match (forward1[v], forward2[v]) {
                (Some(a), Some(b)) if self.rotate(a) == b => Sign::Plus,
                _ => Sign::Minus,
            })
            .collect()
    }

    /// Sum of crossing signs (+1/−1) over all vertices.
    pub fn sign_sum(&self) -> i64 {
        self.crossing_signs().iter().map(|s| s.value() as i64).sum()
    }

    /// Applies a dart relabeling `old -> perm[old]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Arrangement, ArrangementError> {
        let n = self.dart_count();
        if perm.len() != n || !is_permutation(perm) {
            return Err(ArrangementError::InvalidArrangement(
                "relabeling is not a permutation of the darts".into(),
            ));
        }
        let mut rotation = vec![0; n];
        let mut mate = vec![0; n];
        let mut color = vec![Curve::First; n];
        for d in 0..n {
            let p = perm[d] as usize;
            rotation[p] = perm[self.rotation[d] as usize];
            mate[p] = perm[self.mate[d] as usize];
            color[p] = self.color[d];
        }
        Arrangement::from_raw_parts(rotation, mate, color)
    }

    /// Mirror image: the same curves on the sphere with reversed orientation.
    pub fn reflected(&self) -> Arrangement {
        Arrangement::from_raw_parts(self.rotation_inv.clone(), self.mate.clone(), self.color.clone())
            .expect("inverse of a permutation is a permutation")
    }

    /// The same map with the roles of the two curves exchanged.
    pub fn curves_swapped(&self) -> Arrangement {
        let color = self.color.iter().map(|c| c.other()).collect();
        Arrangement::from_raw_parts(self.rotation.clone(), self.mate.clone(), color)
            .expect("shape unchanged")
    }

    /// Faces bounded by exactly two arcs.
    pub fn bigons(&self) -> Vec<FaceWalk> {
        self.faces().into_iter().filter(|f| f.len() == 2).collect()
    }
}

/// The unique arrangement with two intersection points.
pub fn lens() -> Arrangement {
    decode(&GaussPairCode::new(vec![1, 2], vec![Sign::Plus, Sign::Minus]).expect("lens code"))
        .expect("lens is spherical")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus_plus() -> Arrangement {
        decode_unchecked(&GaussPairCode::new(vec![1, 2], vec![Sign::Plus, Sign::Plus]).unwrap())
            .unwrap()
    }

    #[test]
    fn lens_counts() {
        let arr = lens();
        assert_eq!(arr.n_points(), 2);
        assert_eq!(arr.dart_count(), 8);
        assert_eq!(arr.vertices().len(), 2);
        let faces = arr.faces();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 2));
        assert_eq!(arr.genus(), Ok(0));
        assert_eq!(arr.sign_sum(), 0);
    }

    #[test]
    fn same_signs_give_torus() {
        let arr = plus_plus();
        assert_eq!(arr.face_count(), 2);
        assert_eq!(arr.genus(), Ok(1));
    }

    #[test]
    fn straight_ahead_walks_cover_each_curve() {
        let arr = lens();
        let walk = arr.curve_walk(arr.start_dart());
        assert_eq!(walk.len(), 2);
        assert!(walk.iter().all(|&d| arr.color(d) == Curve::First));
    }

    #[test]
    fn relabel_preserves_counts() {
        let arr = lens();
        let perm: Vec<u32> = (0..8).rev().collect();
        let r = arr.relabel(&perm).unwrap();
        assert_eq!(r.face_count(), 4);
        assert!(r.validate().is_valid());
        assert!(arr.relabel(&[0, 0, 1, 2, 3, 4, 5, 6]).is_err());
    }

    #[test]
    fn disconnected_map_has_no_genus() {
        // two copies of the lens side by side
        let arr = lens();
        let mut rotation = arr.raw_rotation().to_vec();
        let mut mate = arr.raw_mate().to_vec();
        let mut color = arr.raw_color().to_vec();
        rotation.extend(arr.raw_rotation().iter().map(|&x| x + 8));
        mate.extend(arr.raw_mate().iter().map(|&x| x + 8));
        color.extend_from_slice(arr.raw_color());
        let two = Arrangement::from_raw_parts(rotation, mate, color).unwrap();
        assert_eq!(two.genus(), Err(ArrangementError::Disconnected));
    }

    #[test]
    fn raw_parts_shape_errors() {
        assert!(Arrangement::from_raw_parts(vec![], vec![], vec![]).is_err());
        assert!(Arrangement::from_raw_parts(vec![0, 1, 2], vec![0, 1, 2], vec![Curve::First; 3]).is_err());
        assert!(
            Arrangement::from_raw_parts(vec![1, 1, 2, 3], vec![1, 0, 3, 2], vec![Curve::First; 4])
                .is_err()
        );
    }
}
