//! Spheres squeezed between two touching balls become unit spheres lying
//! in a slab once the touching point is sent to infinity.

use kissing::correspondence::{packing_from_slab, tangent_pair_correspondence, SlabPacking};
use kissing::error::Result;
use kissing::inversive::{GenSphere, Tolerance};
use kissing::linalg::vector;

/// Packing built from slab centers, then mapped back to the slab.
pub fn run() -> Result<(Vec<GenSphere>, SlabPacking)> {
    let tol = Tolerance::default();
    let s1 = GenSphere::sphere(vector(&[0.0, 0.0, 1.0]), 1.0);
    let s2 = GenSphere::sphere(vector(&[0.0, 0.0, 2.5]), 2.5);
    let centers = [vector(&[0.0, 0.0]), vector(&[2.0, 0.0]), vector(&[1.0, 3f64.sqrt()]), vector(&[-3.0, 1.5])];
    let packing = packing_from_slab(&s1, &s2, &centers, tol)?;
    let slab = tangent_pair_correspondence(&s1, &s2, &packing, tol)?;
    Ok((packing, slab))
}

fn main() -> Result<()> {
    let (packing, slab) = run()?;
    for (s, c) in packing.iter().zip(&slab.centers) {
        let (center, radius) = (s.center().unwrap(), s.radius().unwrap());
        println!(
            "ball at ({:+.4}, {:+.4}, {:+.4}) r = {:.4}  <->  slab center ({:+.4}, {:+.4})",
            center[0], center[1], center[2], radius, c[0], c[1]
        );
    }
    Ok(())
}
