//! The named codes: sizes, minimum angles, and recognition of a rotated
//! copy by the isometry search.

use kissing::codes::{catalog, codes_isometric, kissing_number, make_code, min_angle};
use kissing::error::Result;
use kissing::linalg::{nearest_orthogonal, Matrix};

/// `(name, size, min angle, rotated copy recognized)`.
pub fn run() -> Result<Vec<(String, usize, f64, bool)>> {
    let mut rows = Vec::new();
    for name in catalog() {
        let code = make_code(name)?;
        let d = code.dim;
        let scramble = nearest_orthogonal(&Matrix::from_fn(d, d, |i, j| ((3 * i + 7 * j + 1) as f64).sin()));
        let rotated = code.transformed(&scramble);
        let found = match codes_isometric(&rotated, &code, 1e-8) {
            Ok(iso) => iso.is_some(),
            Err(_) => false,
        };
        rows.push((name.to_string(), code.len(), min_angle(&code)?, found));
    }
    Ok(rows)
}

fn main() -> Result<()> {
    for (name, size, angle, found) in run()? {
        println!(
            "{name:<16} {size:>4} points  min angle {:>8.4} deg  rotated copy recognized: {found}",
            angle.to_degrees()
        );
    }
    for d in 1..=8 {
        if let Some(k) = kissing_number(d) {
            println!("kissing number in dimension {d}: {k}");
        }
    }
    Ok(())
}
