//! Analogues of the hexlet one and two dimensions up: twelve spheres on a
//! cuboctahedron in R^4 and twenty-four on a 24-cell in R^5. Also the
//! degenerate top case m = n + 1, which admits exactly two spheres.

use kissing::codes::{make_code_named, SphericalCode};
use kissing::correspondence::verify_arrangement;
use kissing::error::Result;
use kissing::inversive::Tolerance;
use kissing::linalg::vector;
use kissing::soddy::{cardinality_hint, mutually_tangent_family, soddy_arrangement};

/// `(n, m, code, spheres, edges, verified)`.
pub type Row = (usize, usize, String, usize, usize, bool);

pub fn run() -> Result<Vec<Row>> {
    let pair = SphericalCode::new(1, vec![vector(&[1.0]), vector(&[-1.0])])?;
    let cases = [
        (4, 3, "cuboctahedron", make_code_named("cuboctahedron")?),
        (5, 3, "24-cell", make_code_named("cell24")?),
        (4, 5, "antipodal pair", pair),
    ];
    let mut rows = Vec::new();
    for (n, m, name, code) in cases {
        let f = mutually_tangent_family(n, m)?;
        let arr = soddy_arrangement(&f, &code, Tolerance::default())?;
        let ok = verify_arrangement(&f, &arr.spheres, 1e-9).pass;
        rows.push((n, m, name.to_string(), arr.len(), arr.tangency_graph.len(), ok));
    }
    Ok(rows)
}

fn main() -> Result<()> {
    for (n, m, name, size, edges, ok) in run()? {
        let hint = cardinality_hint(n, m).map_or("unknown".to_string(), |h| h.to_string());
        println!("R^{n}, {m} mutually tangent spheres, {name}: {size} spheres, {edges} contacts, max possible {hint}, verified {ok}");
    }
    Ok(())
}
