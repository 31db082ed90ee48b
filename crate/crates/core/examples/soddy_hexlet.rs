//! Soddy's hexlet: six spheres in a ring, each touching its two neighbours
//! and three mutually tangent spheres.

use kissing::codes::make_code_named;
use kissing::correspondence::{verify_arrangement, Arrangement, VerificationReport};
use kissing::error::Result;
use kissing::inversive::{GenSphere, Tolerance};
use kissing::soddy::{mutually_tangent_family, soddy_arrangement, soddy_params};

pub fn run() -> Result<(Arrangement, VerificationReport)> {
    let family = mutually_tangent_family(3, 3)?;
    let hexlet = soddy_arrangement(&family, &make_code_named("hexagon")?, Tolerance::default())?;
    let report = verify_arrangement(&family, &hexlet.spheres, 1e-9);
    Ok((hexlet, report))
}

fn main() -> Result<()> {
    let p = soddy_params(3)?;
    println!("m = 3: contact angle {:.6} (pi/3), locus radius {}", p.psi_m, p.r_m.unwrap());
    let (hexlet, report) = run()?;
    println!("family:");
    for s in &hexlet.family.members {
        print_sphere(s);
    }
    println!("hexlet:");
    for s in &hexlet.spheres {
        print_sphere(s);
    }
    println!("ring edges {:?}", hexlet.tangency_graph);
    println!("verified: {} (max residual {:.1e})", report.pass, report.max_residual);
    Ok(())
}

fn print_sphere(s: &GenSphere) {
    if let GenSphere::Sphere { center, radius } = s {
        println!("  ({:+.5}, {:+.5}, {:+.5})  r = {:.5}", center[0], center[1], center[2], radius);
    }
}
