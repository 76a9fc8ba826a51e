//! Planar drawings of arrangements.
//!
//! Each arc is subdivided into four segments. One face is chosen as the
//! outer face and its boundary is pinned to a regular polygon; every other
//! node sits at the average of its neighbors (a Tutte embedding). Subdivision
//! nodes only have two neighbors on the graph itself, so each inner face gets
//! an auxiliary center node joined to its whole boundary; those auxiliary
//! edges pull the two sides of a bigon apart and are dropped from the
//! drawing. The result is checked numerically before it is returned.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError, Curve, Dart};
use crate::canonical::{canonical_labeling, EquivalenceMode};

/// Segments per arc.
pub const SUBDIVISION: usize = 4;
/// Distance below which two drawn features count as touching.
pub const PLANARITY_TOLERANCE: f64 = 1e-9;
pub const SOLVER_RESIDUAL: f64 = 1e-10;
pub const SOLVER_MAX_ITERATIONS: usize = 100_000;
const PERTURBATION: f64 = 1e-6;
const PERTURBATION_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error("face {0} does not exist")]
    NoSuchFace(usize),
    #[error("layout degenerate: {0}")]
    LayoutDegenerate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OuterFace {
    /// A face with the most arcs, ties broken by canonical face order.
    Auto,
    Face(usize),
}

/// One arc as a chain of layout nodes from the end of `dart` to the end of
/// its mate.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcChain {
    pub dart: Dart,
    pub curve: Curve,
    pub nodes: [usize; SUBDIVISION + 1],
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarLayout {
    /// Node positions in `[0, 1]²`. Nodes `0..vertex_count` are the
    /// intersection points; the rest subdivide arcs.
    pub coordinates: Vec<[f64; 2]>,
    pub vertex_count: usize,
    pub arcs: Vec<ArcChain>,
    pub outer_face: usize,
    /// Node sequence of each closed curve, curve 1 first.
    pub curve_paths: [Vec<usize>; 2],
    /// Gauss–Seidel sweeps used by the final solve.
    pub iterations: usize,
}

impl PlanarLayout {
    pub fn segments(&self) -> Vec<(usize, usize)> {
        self.arcs
            .iter()
            .flat_map(|a| a.nodes.windows(2).map(|w| (w[0], w[1])))
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.coordinates.len()
    }
}

struct Subdivided {
    vertex_count: usize,
    node_count: usize,
    arcs: Vec<ArcChain>,
    /// Boundary node cycle of every face, in face-walk order.
    face_nodes: Vec<Vec<usize>>,
    /// Chain of nodes from the end of each dart toward its mate, excluding the
    /// far vertex.
    dart_chain: Vec<Vec<usize>>,
}

fn subdivide(arr: &Arrangement) -> Subdivided {
    let vertex_of = arr.vertex_of();
    let vertex_count = arr.vertices().len();
    let mut arcs = Vec::new();
    let mut dart_chain = vec![Vec::new(); arr.dart_count()];
    let mut next = vertex_count;
    for d in arr.darts() {
        let m = arr.mate(d);
        if d > m {
            continue;
        }
        let mut nodes = [0; SUBDIVISION + 1];
        nodes[0] = vertex_of[d.index()];
        nodes[SUBDIVISION] = vertex_of[m.index()];
        for node in nodes.iter_mut().take(SUBDIVISION).skip(1) {
            *node = next;
            next += 1;
        }
        dart_chain[d.index()] = nodes[..SUBDIVISION].to_vec();
        let mut back: Vec<usize> = nodes[1..].to_vec();
        back.reverse();
        dart_chain[m.index()] = back;
        arcs.push(ArcChain {
            dart: d,
            curve: arr.color(d),
            nodes,
        });
    }
    let face_nodes = arr
        .faces()
        .iter()
        .map(|walk| walk.iter().flat_map(|d| dart_chain[d.index()].iter().copied()).collect())
        .collect();
    Subdivided {
        vertex_count,
        node_count: next,
        arcs,
        face_nodes,
        dart_chain,
    }
}

fn auto_outer_face(arr: &Arrangement) -> Result<usize, RenderError> {
    let (labels, _) = canonical_labeling(arr, EquivalenceMode::CONFIGURATION)?;
    let faces = arr.faces();
    let best = faces
        .iter()
        .enumerate()
        .map(|(f, walk)| {
            let rank = walk.iter().map(|d| labels[d.index()]).min().expect("nonempty face");
            (std::cmp::Reverse(walk.len()), rank, f)
        })
        .min()
        .expect("at least one face");
    Ok(best.2)
}

/// Solves the barycentric system with `pinned` nodes fixed. Returns the
/// positions and the number of sweeps.
fn solve(
    neighbors: &[Vec<usize>],
    pinned: &[Option<[f64; 2]>],
) -> Result<(Vec<[f64; 2]>, usize), RenderError> {
    let mut pos: Vec<[f64; 2]> = pinned.iter().map(|p| p.unwrap_or([0.0, 0.0])).collect();
    for sweep in 1..=SOLVER_MAX_ITERATIONS {
        let mut residual: f64 = 0.0;
        for v in 0..pos.len() {
            if pinned[v].is_some() {
                continue;
            }
            let k = neighbors[v].len() as f64;
            let mut s = [0.0, 0.0];
            for &u in &neighbors[v] {
                s[0] += pos[u][0];
                s[1] += pos[u][1];
            }
            let target = [s[0] / k, s[1] / k];
            residual = residual
                .max((target[0] - pos[v][0]).abs())
                .max((target[1] - pos[v][1]).abs());
            pos[v] = target;
        }
        if residual < SOLVER_RESIDUAL {
            return Ok((pos, sweep));
        }
    }
    Err(RenderError::LayoutDegenerate(format!(
        "solver did not reach residual {SOLVER_RESIDUAL} in {SOLVER_MAX_ITERATIONS} sweeps"
    )))
}

fn normalize(pos: &mut [[f64; 2]]) {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pos.iter() {
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let scale = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    for p in pos.iter_mut() {
        for i in 0..2 {
            p[i] = (p[i] - lo[i]) / scale;
        }
    }
}

pub fn layout(arr: &Arrangement, outer: OuterFace) -> Result<PlanarLayout, RenderError> {
    arr.ensure_valid()?;
    let outer_face = match outer {
        OuterFace::Auto => auto_outer_face(arr)?,
        OuterFace::Face(f) if f < arr.face_count() => f,
        OuterFace::Face(f) => return Err(RenderError::NoSuchFace(f)),
    };
    let sub = subdivide(arr);

    // graph nodes, then one center per inner face
    let centers: Vec<usize> = (0..sub.face_nodes.len()).filter(|&f| f != outer_face).collect();
    let total = sub.node_count + centers.len();
    let mut neighbors = vec![Vec::new(); total];
    for arc in &sub.arcs {
        for w in arc.nodes.windows(2) {
            neighbors[w[0]].push(w[1]);
            neighbors[w[1]].push(w[0]);
        }
    }
    for (i, &f) in centers.iter().enumerate() {
        let c = sub.node_count + i;
        for &v in &sub.face_nodes[f] {
            neighbors[c].push(v);
            neighbors[v].push(c);
        }
    }

    // The outer face lies to the right of its boundary walk, so the walk runs
    // counterclockwise around the drawing.
    let boundary = &sub.face_nodes[outer_face];
    let polygon = |jitter: &[f64]| {
        let mut pinned = vec![None; total];
        let k = boundary.len() as f64;
        for (i, &v) in boundary.iter().enumerate() {
            let angle = 2.0 * PI * i as f64 / k;
            let r = 1.0 + jitter.get(i).copied().unwrap_or(0.0);
            pinned[v] = Some([r * angle.cos(), r * angle.sin()]);
        }
        pinned
    };

    let attempt = |pinned: Vec<Option<[f64; 2]>>| -> Result<PlanarLayout, RenderError> {
        let (mut pos, iterations) = solve(&neighbors, &pinned)?;
        pos.truncate(sub.node_count);
        normalize(&mut pos);
        let layout = PlanarLayout {
            coordinates: pos,
            vertex_count: sub.vertex_count,
            arcs: sub.arcs.clone(),
            outer_face,
            curve_paths: curve_paths(arr, &sub),
            iterations,
        };
        validate_layout(arr, &layout)?;
        Ok(layout)
    };

    match attempt(polygon(&[])) {
        Ok(l) => Ok(l),
        Err(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(PERTURBATION_SEED);
            let jitter: Vec<f64> = (0..boundary.len())
                .map(|_| PERTURBATION * (2.0 * rng.random::<f64>() - 1.0))
                .collect();
            attempt(polygon(&jitter))
        }
    }
}

fn curve_paths(arr: &Arrangement, sub: &Subdivided) -> [Vec<usize>; 2] {
    let d0 = arr.start_dart();
    [d0, arr.rotate(d0)].map(|start| {
        arr.curve_walk(start)
            .iter()
            .flat_map(|d| sub.dart_chain[d.index()].iter().copied())
            .collect()
    })
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    let t = if len2 == 0.0 { 0.0 } else { (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0) };
    let q = [a[0] + t * ab[0], a[1] + t * ab[1]];
    dot(sub(p, q), sub(p, q)).sqrt()
}

fn segments_properly_cross(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let d1 = cross(sub(b, a), sub(c, a));
    let d2 = cross(sub(b, a), sub(d, a));
    let d3 = cross(sub(d, c), sub(a, c));
    let d4 = cross(sub(d, c), sub(b, c));
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Distance between two closed segments (zero when they intersect).
pub fn segment_distance(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> f64 {
    if segments_properly_cross(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// Pairs of segments that meet anywhere other than a shared endpoint, within
/// [`PLANARITY_TOLERANCE`].
pub fn improper_intersections(layout: &PlanarLayout) -> Vec<((usize, usize), (usize, usize))> {
    let p = &layout.coordinates;
    let segs = layout.segments();
    let mut bad = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (a, b) = segs[i];
            let (c, d) = segs[j];
            let shared = [a, b].iter().find(|x| **x == c || **x == d).copied();
            let touching = match shared {
                None => segment_distance(p[a], p[b], p[c], p[d]) < PLANARITY_TOLERANCE,
                Some(s) => {
                    // adjacent segments must not fold onto each other
                    let u = if a == s { b } else { a };
                    let w = if c == s { d } else { c };
                    point_segment_distance(p[u], p[s], p[w]) < PLANARITY_TOLERANCE
                        || point_segment_distance(p[w], p[s], p[u]) < PLANARITY_TOLERANCE
                }
            };
            if touching {
                bad.push((segs[i], segs[j]));
            }
        }
    }
    bad
}

/// Rotation system read off the drawing: neighbors of every node sorted
/// counterclockwise by angle.
pub fn geometric_rotation(layout: &PlanarLayout) -> Vec<Vec<usize>> {
    let p = &layout.coordinates;
    let mut nbrs = vec![Vec::new(); layout.node_count()];
    for (a, b) in layout.segments() {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    for (v, list) in nbrs.iter_mut().enumerate() {
        list.sort_by(|&x, &y| {
            let ax = (p[x][1] - p[v][1]).atan2(p[x][0] - p[v][0]);
            let ay = (p[y][1] - p[v][1]).atan2(p[y][0] - p[v][0]);
            ax.total_cmp(&ay)
        });
    }
    nbrs
}

/// Number of faces of the straight-line drawing, traced from the geometric
/// rotation system.
pub fn drawn_face_count(layout: &PlanarLayout) -> usize {
    let rot = geometric_rotation(layout);
    let mut seen = std::collections::HashSet::new();
    let mut faces = 0;
    for u in 0..rot.len() {
        for &v in &rot[u] {
            if seen.contains(&(u, v)) {
                continue;
            }
            faces += 1;
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                // at b, turn to the neighbor counterclockwise after a
                let list = &rot[b];
                let i = list.iter().position(|&x| x == a).expect("edge is symmetric");
                let c = list[(i + 1) % list.len()];
                a = b;
                b = c;
            }
        }
    }
    faces
}

fn validate_layout(arr: &Arrangement, layout: &PlanarLayout) -> Result<(), RenderError> {
    let p = &layout.coordinates;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if dot(sub(p[i], p[j]), sub(p[i], p[j])).sqrt() < PLANARITY_TOLERANCE {
                return Err(RenderError::LayoutDegenerate(format!("nodes {i} and {j} coincide")));
            }
        }
    }
    let bad = improper_intersections(layout);
    if let Some(((a, b), (c, d))) = bad.first() {
        return Err(RenderError::LayoutDegenerate(format!(
            "{} improper intersections, first between segments {a}-{b} and {c}-{d}",
            bad.len()
        )));
    }
    let faces = drawn_face_count(layout);
    if faces != arr.face_count() {
        return Err(RenderError::LayoutDegenerate(format!(
            "drawing has {faces} faces, map has {}",
            arr.face_count()
        )));
    }
    // counterclockwise order at each intersection point must be σ's order
    let rot = geometric_rotation(layout);
    let vertex_of = arr.vertex_of();
    let first_node = |d: Dart| {
        layout
            .arcs
            .iter()
            .find_map(|a| {
                if a.dart == d {
                    Some(a.nodes[1])
                } else if arr.mate(a.dart) == d {
                    Some(a.nodes[SUBDIVISION - 1])
                } else {
                    None
                }
            })
            .expect("every dart is on an arc")
    };
    for d in arr.darts() {
        let v = vertex_of[d.index()];
        let list = &rot[v];
        let i = list.iter().position(|&x| x == first_node(d)).expect("arc leaves its vertex");
        if list[(i + 1) % list.len()] != first_node(arr.rotate(d)) {
            return Err(RenderError::LayoutDegenerate(format!(
                "rotation at vertex {v} differs from the map"
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub curve1_color: String,
    pub curve2_color: String,
    pub stroke_width: f64,
    /// Width and height of the canvas in pixels.
    pub canvas_size: u32,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            curve1_color: "#c0392b".into(),
            curve2_color: "#2471a3".into(),
            stroke_width: 2.0,
            canvas_size: 400,
        }
    }
}

/// Renders the layout as an SVG 1.1 document: one closed path per curve and
/// a marker at every intersection point.
pub fn to_svg(arr: &Arrangement, layout: &PlanarLayout, style: &SvgStyle) -> String {
    let size = style.canvas_size as f64;
    let margin = 0.05 * size;
    let scale = size - 2.0 * margin;
    let at = |node: usize| {
        let [x, y] = layout.coordinates[node];
        // SVG's y axis points down
        (margin + x * scale, margin + (1.0 - y) * scale)
    };
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
        style.canvas_size
    );
    let _ = writeln!(out, "<title>{} intersection points</title>", arr.n_points());
    for (i, path) in layout.curve_paths.iter().enumerate() {
        let color = if i == 0 { &style.curve1_color } else { &style.curve2_color };
        let mut d = String::new();
        for (k, &node) in path.iter().enumerate() {
            let (x, y) = at(node);
            let _ = write!(d, "{}{x:.3} {y:.3} ", if k == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let _ = writeln!(
            out,
            "<path id=\"curve{}\" d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{:.2}\" stroke-linejoin=\"round\"/>",
            i + 1,
            style.stroke_width
        );
    }
    for v in 0..layout.vertex_count {
        let (x, y) = at(v);
        let _ = writeln!(
            out,
            "<circle class=\"crossing\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{:.2}\" fill=\"#000000\"/>",
            1.5 * style.stroke_width
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::lens;

    #[test]
    fn lens_every_outer_face() {
        let arr = lens();
        for f in 0..4 {
            let l = layout(&arr, OuterFace::Face(f)).unwrap();
            assert_eq!(l.outer_face, f);
            assert_eq!(l.node_count(), 2 + 4 * (SUBDIVISION - 1));
            assert!(improper_intersections(&l).is_empty());
            assert_eq!(drawn_face_count(&l), 4);
            for c in &l.coordinates {
                assert!((0.0..=1.0).contains(&c[0]) && (0.0..=1.0).contains(&c[1]));
            }
        }
        assert_eq!(layout(&arr, OuterFace::Face(4)), Err(RenderError::NoSuchFace(4)));
    }

    #[test]
    fn segment_distance_cases() {
        let o = [0.0, 0.0];
        assert_eq!(segment_distance(o, [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]), 0.0);
        assert!((segment_distance(o, [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]) - 1.0).abs() < 1e-12);
        // touching at an interior point
        assert!(segment_distance(o, [2.0, 0.0], [1.0, 0.0], [1.0, 1.0]) < 1e-12);
    }

    #[test]
    fn crossing_segments_are_reported() {
        let arr = lens();
        let mut l = layout(&arr, OuterFace::Auto).unwrap();
        // pull one subdivision node across the drawing
        let node = l.arcs[0].nodes[2];
        l.coordinates[node] = [1.5, -0.5];
        assert!(!improper_intersections(&l).is_empty() || drawn_face_count(&l) != 4);
    }

    #[test]
    fn svg_shape() {
        let arr = lens();
        let l = layout(&arr, OuterFace::Auto).unwrap();
        let svg = to_svg(&arr, &l, &SvgStyle::default());
        assert_eq!(svg.matches("<path").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg, to_svg(&arr, &l, &SvgStyle::default()));
    }
}
