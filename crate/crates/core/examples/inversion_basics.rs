//! Inversion of points and spheres, and the invariance of inversive distance.

use kissing::error::Result;
use kissing::inversive::{classify_pair, inversive_distance, GenSphere, Inversion, Tolerance};
use kissing::linalg::vector;

/// Inversive distances of a pair before and after inversion.
pub fn run() -> Result<(f64, f64)> {
    let inv = Inversion::new(vector(&[0.3, -0.2, 0.1]), 2.0)?;
    let a = GenSphere::sphere(vector(&[2.0, 0.0, 0.0]), 0.5);
    let b = GenSphere::sphere(vector(&[-1.0, 1.0, 0.5]), 0.8);
    Ok((inversive_distance(&a, &b), inversive_distance(&inv.map_sphere(&a), &inv.map_sphere(&b))))
}

fn main() -> Result<()> {
    let inv = Inversion::new(vector(&[0.0, 0.0]), 1.0)?;
    let p = vector(&[2.0, 0.0]);
    println!("(2, 0) -> {:?}", inv.map_point(&p)?.as_slice());
    let through = GenSphere::sphere(vector(&[1.0, 0.0]), 1.0);
    println!("circle through the center -> {}", serde_json::to_string(&inv.map_sphere(&through)).unwrap());
    let (before, after) = run()?;
    println!("inversive distance {before:.12} before, {after:.12} after");
    let touching = [GenSphere::sphere(vector(&[0.0, 0.0]), 1.0), GenSphere::sphere(vector(&[3.0, 0.0]), 2.0)];
    println!(
        "circles of radius 1 and 2 at distance 3: {:?}",
        classify_pair(&touching[0], &touching[1], Tolerance::default())?.kind()
    );
    Ok(())
}
