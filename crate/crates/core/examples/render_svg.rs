//! Draws a Steiner chain to an SVG file, and the hexlet to a PLY file.

use std::path::PathBuf;

use kissing::canonicalize::Family;
use kissing::codes::make_code_named;
use kissing::correspondence::{arrangement_from_code, RotationParam};
use kissing::error::Result;
use kissing::inversive::{GenSphere, Inversion, Tolerance};
use kissing::linalg::vector;
use kissing::render::{render_ply, render_svg};
use kissing::soddy::{mutually_tangent_family, soddy_arrangement};

/// SVG and PLY text.
pub fn run() -> Result<(String, String)> {
    // the (1, 3) annulus seen through an inversion: same porism, off-center picture
    let inv = Inversion::new(vector(&[4.5, 0.0]), 10.0)?;
    let f = Family::new(vec![
        inv.map_sphere(&GenSphere::sphere(vector(&[0.0, 0.0]), 1.0)),
        inv.map_sphere(&GenSphere::sphere(vector(&[0.0, 0.0]), 3.0)),
    ])?;
    let chain =
        arrangement_from_code(&f, &make_code_named("hexagon")?, &RotationParam::identity(2), Tolerance::default())?;
    let hexlet =
        soddy_arrangement(&mutually_tangent_family(3, 3)?, &make_code_named("hexagon")?, Tolerance::default())?;
    Ok((render_svg(&chain)?, render_ply(&hexlet)?))
}

fn main() -> Result<()> {
    let (svg, ply) = run()?;
    let dir = std::env::args().nth(1).map_or_else(std::env::temp_dir, PathBuf::from);
    for (name, text) in [("steiner_chain.svg", svg), ("hexlet.ply", ply)] {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| kissing::error::Error::Io(e.to_string()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
