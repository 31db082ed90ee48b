//! Runs every example's `run()` and checks what it reports.

#![allow(dead_code)]

#[path = "../examples/canonicalize_family.rs"]
mod canonicalize_family;
#[path = "../examples/code_catalog.rs"]
mod code_catalog;
#[path = "../examples/higher_soddy.rs"]
mod higher_soddy;
#[path = "../examples/inversion_basics.rs"]
mod inversion_basics;
#[path = "../examples/render_svg.rs"]
mod render_svg;
#[path = "../examples/slab_correspondence.rs"]
mod slab_correspondence;
#[path = "../examples/soddy_hexlet.rs"]
mod soddy_hexlet;
#[path = "../examples/steiner_chain.rs"]
mod steiner_chain;
#[path = "../examples/tight_closure.rs"]
mod tight_closure;

use kissing::canonicalize::FamilyCase;
use kissing::locus::ContactAngle;
use kissing::steiner::SteinerClass;

#[test]
fn steiner_chain_closes_at_every_rotation() {
    let (chains, worst) = steiner_chain::run().unwrap();
    for chain in &chains {
        assert_eq!(chain.len(), 6);
        assert_eq!(chain.tangency_graph.len(), 6);
        assert!(chain.degrees().iter().all(|&d| d == 2));
    }
    assert!(worst < 1e-8, "{worst}");
}

#[test]
fn hexlet_example_verifies() {
    let (hexlet, report) = soddy_hexlet::run().unwrap();
    assert_eq!(hexlet.len(), 6);
    assert!(report.pass, "{:?}", report.failures);
}

#[test]
fn higher_soddy_sizes() {
    let rows = higher_soddy::run().unwrap();
    let sizes: Vec<(usize, usize)> = rows.iter().map(|r| (r.3, r.4)).collect();
    // cuboctahedron has 24 edges, the 24-cell 96
    assert_eq!(sizes, vec![(12, 24), (24, 96), (2, 0)]);
    assert!(rows.iter().all(|r| r.5));
}

#[test]
fn tight_closure_classes() {
    let classes: Vec<SteinerClass> = tight_closure::run().unwrap().into_iter().map(|r| r.3).collect();
    assert_eq!(
        classes,
        vec![
            SteinerClass::Polygon { k: 6 },
            SteinerClass::Polygon { k: 5 },
            SteinerClass::NotSteiner,
            SteinerClass::Simplex { d: 3 },
            SteinerClass::Crosspolytope { d: 3 },
            SteinerClass::Icosahedron,
            SteinerClass::NotSteiner,
            SteinerClass::Cell600,
        ]
    );
}

#[test]
fn canonicalize_rows() {
    let rows = canonicalize_family::run().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0].1, FamilyCase::NonTangent);
    assert_eq!(rows[1].1, FamilyCase::Tangent);
    match rows[1].2 {
        Some(ContactAngle::Finite { psi }) => assert!((psi - std::f64::consts::PI / 3.0).abs() < 1e-12),
        ref other => panic!("{other:?}"),
    }
    assert!(rows[2].2.is_some());
    assert_eq!(rows[3].2, None);
}

#[test]
fn slab_example_lands_on_unit_spheres() {
    let (packing, slab) = slab_correspondence::run().unwrap();
    assert_eq!(packing.len(), slab.images.len());
    for image in &slab.images {
        assert!((image.radius().unwrap() - 1.0).abs() < 1e-9);
        assert!(image.center().unwrap()[2].abs() < 1e-9);
    }
}

#[test]
fn render_outputs() {
    let (svg, ply) = render_svg::run().unwrap();
    assert_eq!(svg.matches("<circle").count(), 8);
    assert!(ply.contains("element vertex 9"));
}

#[test]
fn catalog_recognizes_rotations() {
    let rows = code_catalog::run().unwrap();
    assert_eq!(rows.len(), 28);
    for (name, _, _, found) in &rows {
        assert!(found, "{name}");
    }
}

#[test]
fn inversion_preserves_inversive_distance() {
    let (before, after) = inversion_basics::run().unwrap();
    assert!((before - after).abs() < 1e-10 * before.abs());
}
