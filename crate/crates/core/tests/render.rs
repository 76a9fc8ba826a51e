mod common;

use twocircles::arrangement::decode;
use twocircles::render::{
    drawn_face_count, geometric_rotation, improper_intersections, layout, to_svg, OuterFace,
    RenderError, SvgStyle, SUBDIVISION,
};

fn svg_checks(svg: &str, n: usize) {
    let doc = roxmltree::Document::parse(svg).expect("well-formed SVG");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("version"), Some("1.1"));
    let paths: Vec<_> = root.descendants().filter(|e| e.has_tag_name("path")).collect();
    assert_eq!(paths.len(), 2);
    for p in &paths {
        let d = p.attribute("d").unwrap();
        assert!(d.ends_with('Z'));
        let points = d.matches(['M', 'L']).count();
        assert_eq!(points, n * SUBDIVISION);
    }
    let markers = root.descendants().filter(|e| e.has_tag_name("circle")).count();
    assert_eq!(markers, n);
}

#[test]
fn every_member_draws_for_every_outer_face() {
    for arr in common::members() {
        let n = arr.n_points();
        for face in 0..arr.face_count() {
            let l = layout(&arr, OuterFace::Face(face)).unwrap();
            assert_eq!(l.outer_face, face);
            assert!(improper_intersections(&l).is_empty());
            assert_eq!(drawn_face_count(&l), n + 2);
            let rot = geometric_rotation(&l);
            assert_eq!(l.vertex_count, n);
            assert!(rot[..n].iter().all(|r| r.len() == 4));
            assert!(rot[n..].iter().all(|r| r.len() == 2));
            for c in &l.coordinates {
                assert!((0.0..=1.0).contains(&c[0]) && (0.0..=1.0).contains(&c[1]));
            }
        }
        assert_eq!(
            layout(&arr, OuterFace::Face(arr.face_count())),
            Err(RenderError::NoSuchFace(arr.face_count()))
        );
    }
}

#[test]
fn svg_documents_are_well_formed_and_deterministic() {
    let style = SvgStyle::default();
    for level in common::levels() {
        for class in &level.classes {
            let arr = decode(&class.representative).unwrap();
            let svg = to_svg(&arr, &layout(&arr, OuterFace::Auto).unwrap(), &style);
            svg_checks(&svg, arr.n_points());
            let again = to_svg(&arr, &layout(&arr, OuterFace::Auto).unwrap(), &style);
            assert_eq!(svg, again);
        }
    }
}

#[test]
fn style_reaches_the_document() {
    let arr = twocircles::arrangement::lens();
    let style = SvgStyle {
        curve1_color: "#000001".into(),
        curve2_color: "#000002".into(),
        stroke_width: 3.5,
        canvas_size: 120,
    };
    let svg = to_svg(&arr, &layout(&arr, OuterFace::Auto).unwrap(), &style);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let root = doc.root_element();
    assert_eq!(root.attribute("width"), Some("120"));
    let strokes: Vec<_> = root
        .descendants()
        .filter(|e| e.has_tag_name("path"))
        .map(|e| (e.attribute("stroke").unwrap(), e.attribute("stroke-width").unwrap()))
        .collect();
    assert_eq!(strokes, [("#000001", "3.50"), ("#000002", "3.50")]);
}

#[test]
fn two_outer_faces_give_two_drawings() {
    let arr = decode(&common::levels()[2].classes[0].representative).unwrap();
    let a = layout(&arr, OuterFace::Face(0)).unwrap();
    let b = layout(&arr, OuterFace::Face(1)).unwrap();
    assert_ne!(a.coordinates, b.coordinates);
}
