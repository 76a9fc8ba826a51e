//! Region coloring, the region adjacency graph and its signed matrix.
//!
//! Regions (faces) are checkerboard colored so that every arc separates a
//! black region from a white one. The adjacency graph has one vertex per
//! region and one edge per arc, labeled by the arc's curve. When no two
//! regions share more than one arc the graph is described by a matrix with
//! rows for black regions, columns for white regions, and entries `+1`
//! (curve-1 arc), `-1` (curve-2 arc) or `0`.

use std::collections::BTreeMap;
use std::fmt;

use crate::arrangement::{Arrangement, ArrangementError, Curve};
use crate::canonical::{canonical_labeling, EquivalenceMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegionColor {
    Black,
    White,
}

impl RegionColor {
    pub fn other(self) -> RegionColor {
        match self {
            RegionColor::Black => RegionColor::White,
            RegionColor::White => RegionColor::Black,
        }
    }
}

/// Checkerboard coloring indexed by face id; the face of dart 0 is black.
pub fn two_coloring(arr: &Arrangement) -> Result<Vec<RegionColor>, ArrangementError> {
    arr.ensure_valid()?;
    Ok(coloring_of_valid(arr, &arr.face_of()))
}

fn coloring_of_valid(arr: &Arrangement, face_of: &[usize]) -> Vec<RegionColor> {
    let faces = face_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut color: Vec<Option<RegionColor>> = vec![None; faces];
    let mut stack = vec![face_of[0]];
    color[face_of[0]] = Some(RegionColor::Black);
    // faces adjacent across an arc: the two sides of each dart's arc
    let mut across: Vec<Vec<usize>> = vec![Vec::new(); faces];
    for d in arr.darts() {
        across[face_of[d.index()]].push(face_of[arr.mate(d).index()]);
    }
    while let Some(f) = stack.pop() {
        let c = color[f].expect("pushed faces are colored");
        for &g in &across[f] {
            if color[g].is_none() {
                color[g] = Some(c.other());
                stack.push(g);
            }
        }
    }
    color
        .into_iter()
        .map(|c| c.expect("face graph of a connected map is connected"))
        .collect()
}

/// Whether `colors` is a proper coloring of the face adjacency of `arr`.
pub fn is_proper_coloring(arr: &Arrangement, colors: &[RegionColor]) -> bool {
    let face_of = arr.face_of();
    arr.darts()
        .all(|d| colors[face_of[d.index()]] != colors[face_of[arr.mate(d).index()]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionEdge {
    pub black: usize,
    pub white: usize,
    pub curve: Curve,
}

/// Rows are black regions, columns white regions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i8>,
}

impl SignedMatrix {
    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.entries[r * self.cols + c]
    }

    pub fn row_sums(&self) -> Vec<i32> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as i32).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<i32> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c) as i32).sum())
            .collect()
    }

    pub fn negated(&self) -> SignedMatrix {
        SignedMatrix {
            entries: self.entries.iter().map(|&x| -x).collect(),
            ..self.clone()
        }
    }

    pub fn transposed(&self) -> SignedMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c));
            }
        }
        SignedMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    fn row(&self, r: usize) -> &[i8] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Whether some row and column permutation turns `self` into `other`.
    pub fn permutation_equivalent(&self, other: &SignedMatrix) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let sorted = |m: &SignedMatrix| {
            let mut rows: Vec<Vec<i8>> = (0..m.rows)
                .map(|r| {
                    let mut v = m.row(r).to_vec();
                    v.sort();
                    v
                })
                .collect();
            rows.sort();
            rows
        };
        if sorted(self) != sorted(other) {
            return false;
        }
        let mut used = vec![false; other.rows];
        let mut assignment = Vec::with_capacity(self.rows);
        self.match_rows(other, &mut used, &mut assignment)
    }

    // Backtracking over row bijections; after all rows are placed, the
    // columns must agree as multisets of column vectors.
    fn match_rows(&self, other: &SignedMatrix, used: &mut [bool], assignment: &mut Vec<usize>) -> bool {
        let r = assignment.len();
        if r == self.rows {
            let column = |m: &SignedMatrix, rows: &[usize], c: usize| -> Vec<i8> {
                rows.iter().map(|&row| m.get(row, c)).collect()
            };
            let identity: Vec<usize> = (0..self.rows).collect();
            let mut mine: Vec<Vec<i8>> = (0..self.cols).map(|c| column(self, &identity, c)).collect();
            let mut theirs: Vec<Vec<i8>> = (0..other.cols).map(|c| column(other, assignment, c)).collect();
            mine.sort();
            theirs.sort();
            return mine == theirs;
        }
        let mut key = self.row(r).to_vec();
        key.sort();
        for s in 0..other.rows {
            if used[s] {
                continue;
            }
            let mut cand = other.row(s).to_vec();
            cand.sort();
            if cand != key {
                continue;
            }
            used[s] = true;
            assignment.push(s);
            if self.match_rows(other, used, assignment) {
                return true;
            }
            assignment.pop();
            used[s] = false;
        }
        false
    }

    /// Equal to its negation up to row/column permutations and transposition:
    /// the matrix-level test for a curve-exchanging symmetry.
    pub fn is_swap_symmetric(&self) -> bool {
        let neg = self.negated();
        self.permutation_equivalent(&neg) || self.permutation_equivalent(&neg.transposed())
    }
}

impl fmt::Display for SignedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|c| format!("{:>3}", self.get(r, c))).collect();
            writeln!(f, "{}", line.join(""))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionGraph {
    /// Checkerboard color per face id.
    pub colors: Vec<RegionColor>,
    /// One edge per arc.
    pub edges: Vec<RegionEdge>,
    /// No two regions share more than one arc.
    pub simple: bool,
    /// Face ids of the matrix rows (black) and columns (white) in order.
    pub row_regions: Vec<usize>,
    pub col_regions: Vec<usize>,
    /// Present only when `simple`.
    pub matrix: Option<SignedMatrix>,
}

impl RegionGraph {
    pub fn region_count(&self) -> usize {
        self.colors.len()
    }

    pub fn degree(&self, region: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.black == region || e.white == region)
            .count()
    }

    /// Curve-1 and curve-2 arc counts on the boundary of `region`.
    pub fn curve_degrees(&self, region: usize) -> (usize, usize) {
        let mut out = (0, 0);
        for e in self.edges.iter().filter(|e| e.black == region || e.white == region) {
            match e.curve {
                Curve::First => out.0 += 1,
                Curve::Second => out.1 += 1,
            }
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        self.edges.iter().all(|e| {
            self.colors[e.black] == RegionColor::Black && self.colors[e.white] == RegionColor::White
        })
    }
}

pub fn region_graph(arr: &Arrangement) -> Result<RegionGraph, ArrangementError> {
    let (labels, _) = canonical_labeling(arr, EquivalenceMode::CONFIGURATION)?;
    let face_of = arr.face_of();
    let colors = coloring_of_valid(arr, &face_of);
    let faces = colors.len();

    let mut edges = Vec::with_capacity(arr.dart_count() / 2);
    for d in arr.darts() {
        let m = arr.mate(d);
        if d > m {
            continue;
        }
        let (f, g) = (face_of[d.index()], face_of[m.index()]);
        let (black, white) = if colors[f] == RegionColor::Black { (f, g) } else { (g, f) };
        edges.push(RegionEdge {
            black,
            white,
            curve: arr.color(d),
        });
    }

    let mut multiplicity: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in &edges {
        *multiplicity.entry((e.black, e.white)).or_default() += 1;
    }
    let simple = multiplicity.values().all(|&m| m == 1);

    // first-visit rank of a face in the canonical traversal
    let mut rank = vec![u32::MAX; faces];
    for d in arr.darts() {
        let f = face_of[d.index()];
        rank[f] = rank[f].min(labels[d.index()]);
    }
    let mut degree = vec![0usize; faces];
    for e in &edges {
        degree[e.black] += 1;
        degree[e.white] += 1;
    }
    let ordered = |c: RegionColor| {
        let mut v: Vec<usize> = (0..faces).filter(|&f| colors[f] == c).collect();
        v.sort_by_key(|&f| (std::cmp::Reverse(degree[f]), rank[f]));
        v
    };
    let row_regions = ordered(RegionColor::Black);
    let col_regions = ordered(RegionColor::White);

    let matrix = simple.then(|| {
        let mut entries = vec![0i8; row_regions.len() * col_regions.len()];
        let row_of: BTreeMap<usize, usize> = row_regions.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let col_of: BTreeMap<usize, usize> = col_regions.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        for e in &edges {
            entries[row_of[&e.black] * col_regions.len() + col_of[&e.white]] = match e.curve {
                Curve::First => 1,
                Curve::Second => -1,
            };
        }
        SignedMatrix {
            rows: row_regions.len(),
            cols: col_regions.len(),
            entries,
        }
    });

    Ok(RegionGraph {
        colors,
        edges,
        simple,
        row_regions,
        col_regions,
        matrix,
    })
}

/// Sorted (descending) region degrees of each color class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DefiningVectors {
    pub black_degrees: Vec<usize>,
    pub white_degrees: Vec<usize>,
}

impl DefiningVectors {
    /// The pair with the color classes unordered; recoloring the regions
    /// exchanges the two vectors, so only this form is an invariant of the
    /// configuration.
    pub fn unordered(&self) -> (Vec<usize>, Vec<usize>) {
        let (a, b) = (self.black_degrees.clone(), self.white_degrees.clone());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

impl fmt::Display for DefiningVectors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({})/({})", join(&self.black_degrees), join(&self.white_degrees))
    }
}

pub fn defining_vectors(graph: &RegionGraph) -> DefiningVectors {
    let degrees = |c: RegionColor| {
        let mut v: Vec<usize> = (0..graph.region_count())
            .filter(|&f| graph.colors[f] == c)
            .map(|f| graph.degree(f))
            .collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    };
    DefiningVectors {
        black_degrees: degrees(RegionColor::Black),
        white_degrees: degrees(RegionColor::White),
    }
}
