//! Cliques, adjacent points, the greedy tight closure and the five Steiner
//! cases, all phrased on the code side of the correspondence.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::codes::{angle, codes_isometric, make_code, CodeName, SphericalCode, ANGLE_TOL};
use crate::error::{Error, Result};
use crate::linalg::{lex_cmp, Matrix, Vector};

/// Upper bound on the size of a tight code; real closures stay far below it.
pub const TIGHT_POINT_LIMIT: usize = 20_000;

/// Mutually tangent spheres, i.e. points pairwise at angle psi.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clique {
    pub indices: Vec<usize>,
}

impl Clique {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn points<'a>(&self, x: &'a SphericalCode) -> Vec<&'a Vector> {
        self.indices.iter().map(|&i| &x.points[i]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SteinerClass {
    Polygon { k: usize },
    Simplex { d: usize },
    Crosspolytope { d: usize },
    Icosahedron,
    Cell600,
    NotSteiner,
}

impl SteinerClass {
    pub fn code_name(&self) -> Option<CodeName> {
        match *self {
            SteinerClass::Polygon { k } => Some(CodeName::Polygon { k }),
            SteinerClass::Simplex { d } => Some(CodeName::Simplex { d }),
            SteinerClass::Crosspolytope { d } => Some(CodeName::Crosspolytope { d }),
            SteinerClass::Icosahedron => Some(CodeName::Icosahedron),
            SteinerClass::Cell600 => Some(CodeName::Cell600),
            SteinerClass::NotSteiner => None,
        }
    }
}

fn tangency_matrix(points: &[Vector], psi: f64, tol: f64) -> Vec<Vec<bool>> {
    let n = points.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let t = (angle(&points[i], &points[j]) - psi).abs() <= tol;
            adj[i][j] = t;
            adj[j][i] = t;
        }
    }
    adj
}

fn extend(adj: &[Vec<bool>], pool: &[usize], size: usize, current: &mut Vec<usize>, out: &mut Vec<Clique>) {
    if current.len() == size {
        out.push(Clique { indices: current.clone() });
        return;
    }
    for (k, &v) in pool.iter().enumerate() {
        if pool.len() - k < size - current.len() {
            break;
        }
        let rest: Vec<usize> = pool[k + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
        current.push(v);
        extend(adj, &rest, size, current, out);
        current.pop();
    }
}

/// All index sets of `size` points pairwise at angle `psi` (within `tol`),
/// in lexicographic order.
pub fn find_cliques(x: &SphericalCode, psi: f64, size: usize, tol: f64) -> Vec<Clique> {
    if size == 0 {
        return Vec::new();
    }
    let adj = tangency_matrix(&x.points, psi, tol);
    let pool: Vec<usize> = (0..x.len()).collect();
    let mut out = Vec::new();
    extend(&adj, &pool, size, &mut Vec::new(), &mut out);
    out
}

/// Unit normal to the span of `d - 1` independent vectors in `R^d`.
fn span_normal(verts: &[&Vector], d: usize) -> Result<Vector> {
    let mut basis: Vec<Vector> = Vec::with_capacity(verts.len());
    for v in verts {
        let mut w = (*v).clone();
        for _ in 0..2 {
            for b in &basis {
                w -= b * b.dot(&w);
            }
        }
        let norm = w.norm();
        if norm < 1e-9 {
            return Err(Error::DegenerateSimplex);
        }
        basis.push(w / norm);
    }
    let mut best: Option<Vector> = None;
    for j in 0..d {
        let mut w = Vector::zeros(d);
        w[j] = 1.0;
        for _ in 0..2 {
            for b in &basis {
                w -= b * b.dot(&w);
            }
        }
        if best.as_ref().is_none_or(|b| w.norm() > b.norm()) {
            best = Some(w);
        }
    }
    let w = best.ok_or(Error::DegenerateSimplex)?;
    Ok(w.normalize())
}

/// The two unit vectors at angle `psi` from each of the `d - 1` given
/// vertices, ordered lexicographically. They are mirror images across the
/// span of the vertices.
pub fn adjacent_points(verts: &[&Vector], psi: f64) -> Result<(Vector, Vector)> {
    let k = verts.len();
    if k == 0 {
        return Err(Error::DegenerateSimplex);
    }
    let d = verts[0].len();
    if verts.iter().any(|v| v.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: verts.iter().map(|v| v.len()).find(|&l| l != d).unwrap(),
        });
    }
    if k + 1 != d {
        return Err(Error::DimensionMismatch { expected: d - 1, found: k });
    }
    let gram = Matrix::from_fn(k, k, |i, j| verts[i].dot(verts[j]));
    let c = psi.cos();
    let rhs = Vector::from_element(k, c);
    let alpha = gram.clone().lu().solve(&rhs).ok_or(Error::DegenerateSimplex)?;
    if !alpha.iter().all(|a| a.is_finite()) || (&gram * &alpha - &rhs).norm() > 1e-9 {
        return Err(Error::DegenerateSimplex);
    }
    let mut p = Vector::zeros(d);
    for (a, v) in alpha.iter().zip(verts) {
        p += *v * *a;
    }
    let q = 1.0 - p.norm_squared();
    if q < -1e-12 {
        return Err(Error::NoRealSolution);
    }
    let beta = q.max(0.0).sqrt();
    let w = span_normal(verts, d)?;
    let plus = (&p + &w * beta).normalize();
    let minus = (&p - &w * beta).normalize();
    if lex_cmp(&plus, &minus).is_le() {
        Ok((plus, minus))
    } else {
        Ok((minus, plus))
    }
}

/// Largest feasible contact angle in dimension `d`, `arccos(-1/d)`.
pub fn max_psi(d: usize) -> f64 {
    (-1.0 / d as f64).acos()
}

/// `d - 1` points pairwise at angle `psi`: rows of the Cholesky factor of
/// their Gram matrix, padded with a zero last coordinate.
pub fn default_seed(d: usize, psi: f64) -> Result<Vec<Vector>> {
    let k = d - 1;
    let c = psi.cos();
    let gram = Matrix::from_fn(k, k, |i, j| if i == j { 1.0 } else { c });
    let l = gram.cholesky().ok_or(Error::InfeasiblePsi { psi, dim: d })?.l();
    Ok((0..k)
        .map(|i| {
            let mut v = Vector::zeros(d);
            for j in 0..k {
                v[j] = l[(i, j)];
            }
            v
        })
        .collect())
}

fn admissible(points: &[Vector], cand: &Vector, psi: f64, tol: f64) -> bool {
    points.iter().all(|p| angle(p, cand) >= psi - tol)
}

/// Greedy closure from a seed clique: repeatedly take the smallest
/// unprocessed `(d-1)`-clique, try its two adjacent points in
/// lexicographic order and keep those that leave a `psi`-code.
pub fn tight_code(d: usize, psi: f64, seed: Option<&[Vector]>, tol: f64) -> Result<SphericalCode> {
    if d < 2 {
        return Err(Error::BadParams(format!("tight closure needs d >= 2, got {d}")));
    }
    if psi.is_nan() || psi <= 0.0 || psi > max_psi(d) + tol {
        return Err(Error::InfeasiblePsi { psi, dim: d });
    }
    let mut points = match seed {
        Some(s) => s.to_vec(),
        None => default_seed(d, psi)?,
    };
    if points.len() != d - 1 {
        return Err(Error::BadParams(format!("seed must have {} points, got {}", d - 1, points.len())));
    }
    for (i, p) in points.iter().enumerate() {
        if p.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.len() });
        }
        if (p.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::BadParams(format!("seed point {i} is not a unit vector")));
        }
        for q in &points[..i] {
            if (angle(p, q) - psi).abs() > tol {
                return Err(Error::BadParams("seed points are not pairwise at angle psi".into()));
            }
        }
    }

    let mut adj: Vec<Vec<bool>> = tangency_matrix(&points, psi, tol);
    let mut pending: BTreeSet<Vec<usize>> = BTreeSet::new();
    pending.insert((0..d - 1).collect());

    while let Some(clique) = pending.pop_first() {
        let verts: Vec<&Vector> = clique.iter().map(|&i| &points[i]).collect();
        let (a, b) = adjacent_points(&verts, psi)?;
        for cand in [a, b] {
            if !admissible(&points, &cand, psi, tol) {
                continue;
            }
            if points.len() >= TIGHT_POINT_LIMIT {
                return Err(Error::BadParams(format!("tight closure exceeded {TIGHT_POINT_LIMIT} points")));
            }
            let new = points.len();
            let row: Vec<bool> = points.iter().map(|p| (angle(p, &cand) - psi).abs() <= tol).collect();
            for (r, &t) in adj.iter_mut().zip(&row) {
                r.push(t);
            }
            let mut full = row.clone();
            full.push(false);
            adj.push(full);
            points.push(cand);
            // new cliques all contain the new point, which has the largest index
            let pool: Vec<usize> = (0..new).filter(|&i| row[i]).collect();
            let mut found = Vec::new();
            extend(&adj, &pool, d - 2, &mut Vec::new(), &mut found);
            if d == 2 {
                found.push(Clique { indices: vec![] });
            }
            for c in found {
                let mut idx = c.indices;
                idx.push(new);
                pending.insert(idx);
            }
        }
    }
    Ok(SphericalCode { dim: d, points, nominal_psi: Some(psi) })
}

/// Contains a `(d-1)`-clique, and both adjacent points of every such clique.
pub fn is_steiner(x: &SphericalCode, psi: f64, tol: f64) -> bool {
    let d = x.dim;
    if d < 2 {
        return false;
    }
    let cliques = find_cliques(x, psi, d - 1, tol);
    if cliques.is_empty() {
        return false;
    }
    let present = |v: &Vector| x.points.iter().any(|p| angle(p, v) <= tol);
    cliques.iter().all(|c| match adjacent_points(&c.points(x), psi) {
        Ok((a, b)) => present(&a) && present(&b),
        Err(_) => false,
    })
}

/// Tolerance on Gram entries used to confirm a class by isometry.
const CLASSIFY_ISO_TOL: f64 = 1e-6;

/// Matches a Steiner code against the five cases, confirming each by an
/// explicit isometry to the generator.
pub fn classify_steiner(x: &SphericalCode, psi: f64, tol: f64) -> Result<SteinerClass> {
    if !is_steiner(x, psi, tol) {
        return Ok(SteinerClass::NotSteiner);
    }
    let (d, n) = (x.dim, x.len());
    let near = |target: f64| (psi - target).abs() <= tol;
    let candidate = if d == 2 && n >= 3 && near(2.0 * PI / n as f64) {
        Some(SteinerClass::Polygon { k: n })
    } else if d > 2 && n == d + 1 && near(max_psi(d)) {
        Some(SteinerClass::Simplex { d })
    } else if d > 2 && n == 2 * d && near(PI / 2.0) {
        Some(SteinerClass::Crosspolytope { d })
    } else if d == 3 && n == 12 && near((1.0 / 5f64.sqrt()).acos()) {
        Some(SteinerClass::Icosahedron)
    } else if d == 4 && n == 120 && near(PI / 5.0) {
        Some(SteinerClass::Cell600)
    } else {
        None
    };
    let class = candidate.ok_or(Error::UnclassifiableSteiner)?;
    let reference = make_code(class.code_name().expect("steiner class has a generator"))?;
    match codes_isometric(x, &reference, CLASSIFY_ISO_TOL.max(tol))? {
        Some(_) => Ok(class),
        None => Err(Error::UnclassifiableSteiner),
    }
}

/// [`classify_steiner`] with the default angle tolerance.
pub fn classify(x: &SphericalCode, psi: f64) -> Result<SteinerClass> {
    classify_steiner(x, psi, ANGLE_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{is_psi_code, make_code_named};
    use crate::linalg::vector;

    fn hexagon() -> SphericalCode {
        make_code_named("hexagon").unwrap()
    }

    #[test]
    fn cliques_match_brute_force() {
        let hex = hexagon();
        let pairs = find_cliques(&hex, PI / 3.0, 2, ANGLE_TOL);
        assert_eq!(pairs.len(), 6);
        let brute = (0..6)
            .flat_map(|i| ((i + 1)..6).map(move |j| (i, j)))
            .filter(|&(i, j)| (angle(&hex.points[i], &hex.points[j]) - PI / 3.0).abs() < 1e-9)
            .count();
        assert_eq!(brute, 6);
        assert!(find_cliques(&hex, PI / 3.0, 3, ANGLE_TOL).is_empty());
        let ico = make_code_named("icosahedron").unwrap();
        let faces = find_cliques(&ico, (1.0 / 5f64.sqrt()).acos(), 3, ANGLE_TOL);
        assert_eq!(faces.len(), 20);
        assert!(faces.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn adjacent_points_examples() {
        let e1 = vector(&[1.0, 0.0]);
        let (a, b) = adjacent_points(&[&e1], PI / 3.0).unwrap();
        let s = (PI / 3.0).sin();
        assert!((&a - vector(&[0.5, -s])).norm() < 1e-12);
        assert!((&b - vector(&[0.5, s])).norm() < 1e-12);

        let v1 = vector(&[1.0, 0.0, 0.0]);
        let v2 = vector(&[0.5, 3f64.sqrt() / 2.0, 0.0]);
        let (a, b) = adjacent_points(&[&v1, &v2], PI / 3.0).unwrap();
        let h = (2.0f64 / 3.0).sqrt();
        let base = [0.5, 1.0 / (2.0 * 3f64.sqrt())];
        assert!((&a - vector(&[base[0], base[1], -h])).norm() < 1e-12);
        assert!((&b - vector(&[base[0], base[1], h])).norm() < 1e-12);
        for x in [&a, &b] {
            assert!((x.dot(&v1) - 0.5).abs() < 1e-12);
            assert!((x.dot(&v2) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn adjacent_points_at_simplex_angle() {
        for d in 2..=6 {
            let psi = max_psi(d);
            let seed = default_seed(d, psi).unwrap();
            let refs: Vec<&Vector> = seed.iter().collect();
            let (a, b) = adjacent_points(&refs, psi).unwrap();
            let mut all = seed.clone();
            all.push(a);
            all.push(b);
            for i in 0..all.len() {
                for j in 0..i {
                    assert!((all[i].dot(&all[j]) + 1.0 / d as f64).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn adjacent_points_errors() {
        let v1 = vector(&[1.0, 0.0, 0.0]);
        let v2 = vector(&[-1.0, 0.0, 0.0]);
        assert!(matches!(adjacent_points(&[&v1, &v1], 1.0), Err(Error::DegenerateSimplex)));
        // two points at angle pi/3; asking for angle 0.1 from both has no unit solution
        let w = vector(&[0.5, 3f64.sqrt() / 2.0, 0.0]);
        assert!(matches!(adjacent_points(&[&v1, &w], 0.1), Err(Error::NoRealSolution)));
        assert!(adjacent_points(&[&v1, &v2], 1.0).is_err());
    }

    #[test]
    fn tight_hexagon_and_greedy_oracle() {
        let hex = tight_code(2, PI / 3.0, None, ANGLE_TOL).unwrap();
        assert_eq!(hex.len(), 6);
        assert!(is_steiner(&hex, PI / 3.0, ANGLE_TOL));

        // points at 0, psi, 2 psi, ... while the wrap-around gap stays >= psi
        let psi = 0.9;
        let mut oracle = 1;
        while (oracle + 1) as f64 * psi <= 2.0 * PI + ANGLE_TOL {
            oracle += 1;
        }
        let code = tight_code(2, psi, None, ANGLE_TOL).unwrap();
        assert_eq!(oracle, 6);
        assert_eq!(code.len(), 6);
        assert!(is_psi_code(&code, psi, ANGLE_TOL));
        assert!(!is_steiner(&code, psi, ANGLE_TOL));
    }

    #[test]
    fn tight_icosahedron() {
        let psi = (1.0 / 5f64.sqrt()).acos();
        let code = tight_code(3, psi, None, ANGLE_TOL).unwrap();
        assert_eq!(code.len(), 12);
        let ico = make_code_named("icosahedron").unwrap();
        assert!(codes_isometric(&code, &ico, 1e-8).unwrap().is_some());
        assert_eq!(classify(&code, psi).unwrap(), SteinerClass::Icosahedron);
    }

    #[test]
    fn infeasible_psi() {
        assert!(matches!(tight_code(3, 2.0, None, ANGLE_TOL), Err(Error::InfeasiblePsi { .. })));
    }

    #[test]
    fn steiner_detection() {
        let hex = hexagon();
        assert!(is_steiner(&hex, PI / 3.0, ANGLE_TOL));
        let open = SphericalCode::new(2, hex.points[..5].to_vec()).unwrap();
        assert!(!is_steiner(&open, PI / 3.0, ANGLE_TOL));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&hexagon(), PI / 3.0).unwrap(), SteinerClass::Polygon { k: 6 });
        let cross = make_code_named("crosspolytope:4").unwrap();
        assert_eq!(classify(&cross, PI / 2.0).unwrap(), SteinerClass::Crosspolytope { d: 4 });
        let simplex = make_code_named("simplex:5").unwrap();
        assert_eq!(classify(&simplex, max_psi(5)).unwrap(), SteinerClass::Simplex { d: 5 });
        let ico = make_code_named("icosahedron").unwrap();
        let psi = (1.0 / 5f64.sqrt()).acos();
        assert_eq!(classify(&ico.without(4), psi).unwrap(), SteinerClass::NotSteiner);
        // squares are polygons in the plane even though they are also cross-polytopes
        let square = make_code_named("crosspolytope:2").unwrap();
        assert_eq!(classify(&square, PI / 2.0).unwrap(), SteinerClass::Polygon { k: 4 });
    }

    #[test]
    fn serde_tag() {
        let s = serde_json::to_string(&SteinerClass::Polygon { k: 6 }).unwrap();
        assert_eq!(s, r#"{"type":"polygon","k":6}"#);
    }
}
