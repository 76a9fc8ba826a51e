//! Gauss-pair codes and the `GP1` text line format.
//!
//! Points are labeled `1..=2n` in the order curve 1 visits them. The code
//! stores the cyclic order in which curve 2 visits those labels, and a
//! crossing sign per label: `+` when the frame (curve-1 direction,
//! curve-2 direction) is positively oriented.
//!
//! ```text
//! GP1 <2n> <p1 ... p2n> <s1 ... s2n>
//! GP1 2 1 2 + -
//! ```

use std::fmt;
use std::str::FromStr;

use super::{Arrangement, ArrangementError, Curve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Curve-2 visiting order over curve-1 labels plus per-point crossing signs.
///
/// Ordered lexicographically by `(order, signs)` with `+ < -`; this is the
/// order used to pick class representatives.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussPairCode {
    order: Vec<u32>,
    signs: Vec<Sign>,
}

impl GaussPairCode {
    pub fn new(order: Vec<u32>, signs: Vec<Sign>) -> Result<Self, ArrangementError> {
        let n = order.len();
        if n == 0 {
            return Err(ArrangementError::MalformedCode(
                "no intersection points".into(),
            ));
        }
        if !n.is_multiple_of(2) {
            return Err(ArrangementError::MalformedCode(format!(
                "odd number of points {n}"
            )));
        }
        if signs.len() != n {
            return Err(ArrangementError::MalformedCode(format!(
                "{n} labels but {} signs",
                signs.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &order {
            if p == 0 || p as usize > n || seen[p as usize - 1] {
                return Err(ArrangementError::MalformedCode(format!(
                    "order is not a permutation of 1..={n}"
                )));
            }
            seen[p as usize - 1] = true;
        }
        Ok(GaussPairCode { order, signs })
    }

    pub fn n_points(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign_sum(&self) -> i32 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    /// Mirror image: reversing the sphere's orientation flips every sign and
    /// leaves both visiting orders unchanged.
    pub fn reflected(&self) -> GaussPairCode {
        GaussPairCode {
            order: self.order.clone(),
            signs: self.signs.iter().map(|s| s.flipped()).collect(),
        }
    }

    /// The same arrangement with curve 2 traversed backwards: the visiting
    /// order reverses and, since curve 2's tangent flips, so does every sign.
    pub fn curve2_reversed(&self) -> GaussPairCode {
        let mut order = self.order.clone();
        order.reverse();
        GaussPairCode {
            order,
            signs: self.signs.iter().map(|s| s.flipped()).collect(),
        }
    }

    /// The code produced by `encode(decode(self))`: order rotated to start at
    /// label 1, and curve 2 reversed if needed so that point 1 has sign `+`.
    pub fn normalized(&self) -> GaussPairCode {
        let pos = self
            .order
            .iter()
            .position(|&p| p == 1)
            .expect("valid code contains label 1");
        let mut order: Vec<u32> = self.order[pos..]
            .iter()
            .chain(&self.order[..pos])
            .copied()
            .collect();
        let mut signs = self.signs.clone();
        if signs[0] == Sign::Minus {
            order[1..].reverse();
            signs.iter_mut().for_each(|s| *s = s.flipped());
        }
        GaussPairCode { order, signs }
    }
}

impl fmt::Display for GaussPairCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GP1 {}", self.order.len())?;
        for p in &self.order {
            write!(f, " {p}")?;
        }
        for s in &self.signs {
            write!(f, " {}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for GaussPairCode {
    type Err = ArrangementError;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let malformed = |msg: String| ArrangementError::MalformedCode(msg);
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("GP1") => {}
            Some(other) => return Err(malformed(format!("expected `GP1`, found `{other}`"))),
            None => return Err(malformed("empty line".into())),
        }
        let count: usize = tokens
            .next()
            .ok_or_else(|| malformed("missing point count".into()))?
            .parse()
            .map_err(|_| malformed("point count is not a number".into()))?;
        let rest: Vec<&str> = tokens.collect();
        if rest.len() != 2 * count {
            return Err(malformed(format!(
                "expected {} fields after the point count, found {}",
                2 * count,
                rest.len()
            )));
        }
        let order = rest[..count]
            .iter()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| malformed(format!("bad label `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let signs = rest[count..]
            .iter()
            .map(|&t| match t {
                "+" => Ok(Sign::Plus),
                "-" => Ok(Sign::Minus),
                _ => Err(malformed(format!("bad sign `{t}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        GaussPairCode::new(order, signs)
    }
}

// Dart layout produced by decoding: point with label `i + 1` owns darts
// 4i..4i+4 in the order (curve-1 out, curve-2 out, curve-1 in, curve-2 in).
const C1_OUT: u32 = 0;
const C2_OUT: u32 = 1;
const C1_IN: u32 = 2;
const C2_IN: u32 = 3;

/// Builds the map described by `code` without checking that it is spherical.
pub fn decode_unchecked(code: &GaussPairCode) -> Result<Arrangement, ArrangementError> {
    let n = code.n_points() as u32;
    let darts = 4 * n as usize;
    let dart = |point: u32, slot: u32| 4 * point + slot;
    let mut rotation = vec![0u32; darts];
    let mut mate = vec![0u32; darts];
    let mut color = vec![Curve::First; darts];

    for v in 0..n {
        let ring = match code.signs[v as usize] {
            // curve 2 leaves a quarter turn counterclockwise from curve 1
            Sign::Plus => [C1_OUT, C2_OUT, C1_IN, C2_IN],
            Sign::Minus => [C1_OUT, C2_IN, C1_IN, C2_OUT],
        };
        for k in 0..4 {
            rotation[dart(v, ring[k]) as usize] = dart(v, ring[(k + 1) % 4]);
        }
        color[dart(v, C2_OUT) as usize] = Curve::Second;
        color[dart(v, C2_IN) as usize] = Curve::Second;

        let next = (v + 1) % n;
        mate[dart(v, C1_OUT) as usize] = dart(next, C1_IN);
        mate[dart(next, C1_IN) as usize] = dart(v, C1_OUT);
    }
    for j in 0..n as usize {
        let here = code.order[j] - 1;
        let next = code.order[(j + 1) % n as usize] - 1;
        mate[dart(here, C2_OUT) as usize] = dart(next, C2_IN);
        mate[dart(next, C2_IN) as usize] = dart(here, C2_OUT);
    }
    Arrangement::from_raw_parts(rotation, mate, color)
}

/// Builds the arrangement described by `code`, failing unless every
/// arrangement invariant holds.
pub fn decode(code: &GaussPairCode) -> Result<Arrangement, ArrangementError> {
    let arr = decode_unchecked(code)?;
    let report = arr.validate();
    if report.is_valid() {
        return Ok(arr);
    }
    if let Some(genus) = report.genus_failure() {
        return Err(ArrangementError::NotSpherical { genus });
    }
    Err(ArrangementError::NotTransversal(report.summary()))
}

/// Serializes a valid arrangement. Curve 1 starts at the smallest dart of
/// curve 1 and follows it straight ahead; curve 2 is directed by the dart
/// counterclockwise after that start dart, so point 1 always has sign `+`.
pub fn encode(arr: &Arrangement) -> Result<GaussPairCode, ArrangementError> {
    arr.ensure_valid()?;
    let vertex_of = arr.vertex_of();
    let d0 = arr.start_dart();
    let walk1 = arr.curve_walk(d0);
    let walk2 = arr.curve_walk(arr.rotate(d0));
    let v_count = walk1.len();

    let mut label = vec![0u32; v_count];
    for (i, d) in walk1.iter().enumerate() {
        label[vertex_of[d.index()]] = i as u32 + 1;
    }
    let mut forward2 = vec![None; v_count];
    for &d in &walk2 {
        forward2[vertex_of[d.index()]] = Some(d);
    }
    let order = walk2
        .iter()
        .map(|d| label[vertex_of[d.index()]])
        .collect();
    let signs = walk1
        .iter()
        .map(|&d| {
            if forward2[vertex_of[d.index()]] == Some(arr.rotate(d)) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    GaussPairCode::new(order, signs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> GaussPairCode {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let c = code("GP1 2 1 2 + -");
        assert_eq!(c.order(), &[1, 2]);
        assert_eq!(c.signs(), &[Sign::Plus, Sign::Minus]);
        assert_eq!(c.to_string(), "GP1 2 1 2 + -");
        assert_eq!(code("GP1   4 1 3 2 4 + + - -").to_string(), "GP1 4 1 3 2 4 + + - -");
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "GP2 2 1 2 + -",
            "GP1 x 1 2 + -",
            "GP1 2 1 2 +",
            "GP1 2 1 1 + -",
            "GP1 2 1 3 + -",
            "GP1 2 1 2 + *",
            "GP1 3 1 2 3 + - +",
            "GP1 0",
        ] {
            assert!(
                matches!(bad.parse::<GaussPairCode>(), Err(ArrangementError::MalformedCode(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn lens_decodes_and_encodes() {
        let arr = decode(&code("GP1 2 1 2 + -")).unwrap();
        assert_eq!(arr.face_count(), 4);
        assert_eq!(encode(&arr).unwrap().to_string(), "GP1 2 1 2 + -");
        // the other sign vector is the same lens with curve 2 reversed
        let other = decode(&code("GP1 2 1 2 - +")).unwrap();
        assert_eq!(encode(&other).unwrap().to_string(), "GP1 2 1 2 + -");
    }

    #[test]
    fn same_signs_are_not_spherical() {
        assert_eq!(
            decode(&code("GP1 2 1 2 + +")),
            Err(ArrangementError::NotSpherical { genus: 1 })
        );
    }

    #[test]
    fn four_point_code_is_valid() {
        let arr = decode(&code("GP1 4 1 2 3 4 + - + -")).unwrap();
        assert_eq!(arr.face_count(), 6);
        assert_eq!(arr.sign_sum(), 0);
    }

    #[test]
    fn normalization_matches_encode() {
        for s in ["GP1 4 1 2 3 4 + - + -", "GP1 4 3 4 1 2 - + - +", "GP1 2 2 1 - +"] {
            let c = code(s);
            let arr = decode(&c).unwrap();
            assert_eq!(encode(&arr).unwrap(), c.normalized(), "{s}");
        }
    }
}
