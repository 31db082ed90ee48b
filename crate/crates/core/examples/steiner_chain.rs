//! Steiner's porism in the annulus between circles of radius 1 and 3: the
//! hexagon closes into a chain of six circles for every starting rotation,
//! and any two such chains differ by a conformal map fixing the family.

use std::f64::consts::PI;

use kissing::canonicalize::Family;
use kissing::codes::make_code_named;
use kissing::correspondence::{arrangement_from_code, equivalence_map, verify_arrangement, Arrangement, RotationParam};
use kissing::error::Result;
use kissing::inversive::{GenSphere, Tolerance};
use kissing::linalg::vector;

pub fn annulus() -> Family {
    Family::new(vec![GenSphere::sphere(vector(&[0.0, 0.0]), 1.0), GenSphere::sphere(vector(&[0.0, 0.0]), 3.0)])
        .expect("two concentric circles form a family")
}

/// Chains at a few rotations plus the worst equivalence residual between
/// the first chain and each of the others.
pub fn run() -> Result<(Vec<Arrangement>, f64)> {
    let f = annulus();
    let hex = make_code_named("hexagon")?;
    let tol = Tolerance::default();
    let angles = [0.0, 0.3, PI / 7.0, 2.0];
    let chains = angles
        .iter()
        .map(|&t| arrangement_from_code(&f, &hex, &RotationParam::planar(t), tol))
        .collect::<Result<Vec<_>>>()?;

    let mut worst: f64 = 0.0;
    for (k, &t) in angles.iter().enumerate().skip(1) {
        let eq = equivalence_map(&f, &hex, &hex, &RotationParam::planar(angles[0]), &RotationParam::planar(t), tol)?;
        for (i, s) in chains[0].spheres.iter().enumerate() {
            let image = eq.chain.map_sphere(s);
            let target = &chains[k].spheres[eq.permutation[i]];
            let gap = (image.center().unwrap() - target.center().unwrap()).norm()
                + (image.radius().unwrap() - target.radius().unwrap()).abs();
            worst = worst.max(gap);
        }
    }
    Ok((chains, worst))
}

fn main() -> Result<()> {
    let (chains, worst) = run()?;
    for (k, chain) in chains.iter().enumerate() {
        let report = verify_arrangement(&chain.family, &chain.spheres, 1e-9);
        println!(
            "chain {k}: {} circles, {} tangencies, verified: {}",
            chain.len(),
            chain.tangency_graph.len(),
            report.pass
        );
        for s in &chain.spheres {
            if let GenSphere::Sphere { center, radius } = s {
                println!("  center ({:+.6}, {:+.6})  radius {:.6}", center[0], center[1], radius);
            }
        }
    }
    println!("largest equivalence residual: {worst:.2e}");
    Ok(())
}
