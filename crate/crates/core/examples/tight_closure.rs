//! Greedy tight closure from a seed clique, followed by classification.
//! Angles of regular polytopes close up; other angles leave a gap.

use std::f64::consts::PI;

use kissing::codes::ANGLE_TOL;
use kissing::error::Result;
use kissing::steiner::{classify_steiner, is_steiner, max_psi, tight_code, SteinerClass};

/// `(d, psi, size, class)` for each case.
pub fn run() -> Result<Vec<(usize, f64, usize, SteinerClass)>> {
    let cases = [
        (2, PI / 3.0),
        (2, 2.0 * PI / 5.0),
        (2, 0.9),
        (3, max_psi(3)),
        (3, PI / 2.0),
        (3, (1.0 / 5f64.sqrt()).acos()),
        (3, 1.0),
        (4, PI / 5.0),
    ];
    cases
        .iter()
        .map(|&(d, psi)| {
            let code = tight_code(d, psi, None, ANGLE_TOL)?;
            let class = classify_steiner(&code, psi, ANGLE_TOL)?;
            debug_assert_eq!(class != SteinerClass::NotSteiner, is_steiner(&code, psi, ANGLE_TOL));
            Ok((d, psi, code.len(), class))
        })
        .collect()
}

fn main() -> Result<()> {
    for (d, psi, size, class) in run()? {
        println!("d = {d}, psi = {psi:.6}: {size:>3} points, {class:?}");
    }
    Ok(())
}
