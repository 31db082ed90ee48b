//! Spherical codes: finite point sets on the unit sphere `S^{d-1}`, the
//! named codes of the regular-polytope catalog, and isometry testing.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{complement_basis, serde_vectors, Matrix, Vector};

/// Largest code [`codes_isometric`] will search.
pub const ISOMETRY_SIZE_LIMIT: usize = 200;

/// Slack allowed when comparing angles against a contact angle.
pub const ANGLE_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalCode {
    pub dim: usize,
    #[serde(with = "serde_vectors")]
    pub points: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nominal_psi: Option<f64>,
}

impl SphericalCode {
    /// Builds a code after checking dimensions and unit norms (within 1e-9).
    pub fn new(dim: usize, points: Vec<Vector>) -> Result<Self> {
        let code = SphericalCode { dim, points, nominal_psi: None };
        code.validate()?;
        Ok(code)
    }

    pub fn with_psi(mut self, psi: f64) -> Self {
        self.nominal_psi = Some(psi);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::BadParams("code dimension must be positive".into()));
        }
        for p in &self.points {
            if p.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: p.len() });
            }
            if !p.iter().all(|x| x.is_finite()) || (p.norm() - 1.0).abs() > 1e-9 {
                return Err(Error::BadParams("code point is not a unit vector".into()));
            }
        }
        for i in 0..self.points.len() {
            for j in 0..i {
                if angle(&self.points[i], &self.points[j]) <= 1e-12 {
                    return Err(Error::BadParams(format!("code points {j} and {i} coincide")));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Applies an orthogonal `dim x dim` matrix to every point.
    pub fn transformed(&self, m: &Matrix) -> SphericalCode {
        SphericalCode {
            dim: self.dim,
            points: self.points.iter().map(|p| m * p).collect(),
            nominal_psi: self.nominal_psi,
        }
    }

    pub fn without(&self, index: usize) -> SphericalCode {
        let mut points = self.points.clone();
        points.remove(index);
        SphericalCode { dim: self.dim, points, nominal_psi: self.nominal_psi }
    }

    pub fn gram(&self) -> Matrix {
        let n = self.points.len();
        Matrix::from_fn(n, n, |i, j| self.points[i].dot(&self.points[j]))
    }

    /// Largest inner product between distinct points.
    pub fn max_inner_product(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for i in 0..self.points.len() {
            for j in 0..i {
                let ip = self.points[i].dot(&self.points[j]);
                best = Some(best.map_or(ip, |b| b.max(ip)));
            }
        }
        best
    }
}

/// Angular distance between unit vectors, `2 atan2(|a - b|, |a + b|)`,
/// which agrees with `arccos(<a, b>)` and stays accurate near 0 and pi.
pub fn angle(a: &Vector, b: &Vector) -> f64 {
    2.0 * (a - b).norm().atan2((a + b).norm())
}

pub fn min_angle(x: &SphericalCode) -> Result<f64> {
    if x.points.len() < 2 {
        return Err(Error::TooFewPoints);
    }
    let mut best = f64::INFINITY;
    for i in 0..x.points.len() {
        for j in 0..i {
            best = best.min(angle(&x.points[i], &x.points[j]));
        }
    }
    Ok(best)
}

/// Whether all pairwise angles are at least `psi - tol`. Codes with fewer
/// than two points qualify vacuously.
pub fn is_psi_code(x: &SphericalCode, psi: f64, tol: f64) -> bool {
    match min_angle(x) {
        Ok(a) => a >= psi - tol,
        Err(_) => true,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeName {
    Polygon { k: usize },
    Simplex { d: usize },
    Crosspolytope { d: usize },
    Icosahedron,
    Cuboctahedron,
    Cell24,
    Cell600,
}

impl CodeName {
    pub fn dim(&self) -> usize {
        match *self {
            CodeName::Polygon { .. } => 2,
            CodeName::Simplex { d } | CodeName::Crosspolytope { d } => d,
            CodeName::Icosahedron | CodeName::Cuboctahedron => 3,
            CodeName::Cell24 | CodeName::Cell600 => 4,
        }
    }

    pub fn cardinality(&self) -> usize {
        match *self {
            CodeName::Polygon { k } => k,
            CodeName::Simplex { d } => d + 1,
            CodeName::Crosspolytope { d } => 2 * d,
            CodeName::Icosahedron | CodeName::Cuboctahedron => 12,
            CodeName::Cell24 => 24,
            CodeName::Cell600 => 120,
        }
    }

    /// Exact minimum angle of the generated code.
    pub fn min_angle(&self) -> f64 {
        match *self {
            CodeName::Polygon { k } => 2.0 * PI / k as f64,
            CodeName::Simplex { d } => (-1.0 / d as f64).acos(),
            CodeName::Crosspolytope { .. } => PI / 2.0,
            CodeName::Icosahedron => (1.0 / 5f64.sqrt()).acos(),
            CodeName::Cuboctahedron | CodeName::Cell24 => PI / 3.0,
            CodeName::Cell600 => PI / 5.0,
        }
    }
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeName::Polygon { k } => write!(f, "polygon:{k}"),
            CodeName::Simplex { d } => write!(f, "simplex:{d}"),
            CodeName::Crosspolytope { d } => write!(f, "crosspolytope:{d}"),
            CodeName::Icosahedron => write!(f, "icosahedron"),
            CodeName::Cuboctahedron => write!(f, "cuboctahedron"),
            CodeName::Cell24 => write!(f, "cell24"),
            CodeName::Cell600 => write!(f, "cell600"),
        }
    }
}

impl FromStr for CodeName {
    type Err = Error;

    /// Accepts `polygon:K`, `simplex:D`, `crosspolytope:D`, `hexagon`,
    /// `icosahedron`, `cuboctahedron`, `cell24` / `24-cell`, `cell600` / `600-cell`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (head, param) = match lower.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (lower.as_str(), None),
        };
        let number = |what: &str| -> Result<usize> {
            param
                .ok_or_else(|| Error::BadParams(format!("{head} needs a parameter, e.g. {head}:{what}")))?
                .parse::<usize>()
                .map_err(|e| Error::BadParams(format!("{head}: {e}")))
        };
        let name = match head {
            "polygon" => CodeName::Polygon { k: number("6")? },
            "hexagon" => CodeName::Polygon { k: 6 },
            "simplex" => CodeName::Simplex { d: number("3")? },
            "crosspolytope" | "cross" => CodeName::Crosspolytope { d: number("3")? },
            "icosahedron" => CodeName::Icosahedron,
            "cuboctahedron" => CodeName::Cuboctahedron,
            "cell24" | "24-cell" => CodeName::Cell24,
            "cell600" | "600-cell" => CodeName::Cell600,
            _ => return Err(Error::UnknownCode(s.to_string())),
        };
        Ok(name)
    }
}

fn normalized(coords: &[f64]) -> Vector {
    Vector::from_column_slice(coords).normalize()
}

fn polygon(k: usize) -> Vec<Vector> {
    (0..k)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / k as f64;
            Vector::from_column_slice(&[t.cos(), t.sin()])
        })
        .collect()
}

/// Vertices of the regular simplex: the standard basis of R^{d+1}, centered
/// and written in an orthonormal basis of the hyperplane `sum x_i = 0`.
fn simplex(d: usize) -> Vec<Vector> {
    let ones = Vector::from_element(d + 1, 1.0);
    let basis = complement_basis(&ones);
    (0..=d)
        .map(|i| {
            let mut e = Vector::from_element(d + 1, -1.0 / (d + 1) as f64);
            e[i] += 1.0;
            (basis.transpose() * e).normalize()
        })
        .collect()
}

fn crosspolytope(d: usize) -> Vec<Vector> {
    let mut out = Vec::with_capacity(2 * d);
    for i in 0..d {
        for sign in [1.0, -1.0] {
            let mut e = Vector::zeros(d);
            e[i] = sign;
            out.push(e);
        }
    }
    out
}

/// Cyclic permutations of `(0, +-1, +-phi)`.
fn icosahedron() -> Vec<Vector> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out = Vec::with_capacity(12);
    for shift in 0..3 {
        for s1 in [1.0, -1.0] {
            for s2 in [1.0, -1.0] {
                let base = [0.0, s1, s2 * phi];
                let mut v = [0.0; 3];
                for (i, x) in base.iter().enumerate() {
                    v[(i + shift) % 3] = *x;
                }
                out.push(normalized(&v));
            }
        }
    }
    out
}

/// Permutations of `(+-1, +-1, 0)`.
fn cuboctahedron() -> Vec<Vector> {
    let mut out = Vec::with_capacity(12);
    for zero in (0..3).rev() {
        for s1 in [1.0, -1.0] {
            for s2 in [1.0, -1.0] {
                let mut v = [0.0; 3];
                let others: Vec<usize> = (0..3).filter(|&i| i != zero).collect();
                v[others[0]] = s1;
                v[others[1]] = s2;
                out.push(normalized(&v));
            }
        }
    }
    out
}

/// Unit Hurwitz quaternions: `+-e_i` and `(+-1/2, +-1/2, +-1/2, +-1/2)`.
fn cell24() -> Vec<Vector> {
    let mut out = crosspolytope(4);
    for mask in 0..16u32 {
        let v: Vec<f64> = (0..4).map(|i| if mask & (1 << i) == 0 { 0.5 } else { -0.5 }).collect();
        out.push(Vector::from_vec(v));
    }
    out
}

const EVEN_PERMUTATIONS_4: [[usize; 4]; 12] = [
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
    [1, 0, 3, 2],
    [1, 2, 0, 3],
    [1, 3, 2, 0],
    [2, 0, 1, 3],
    [2, 1, 3, 0],
    [2, 3, 0, 1],
    [3, 0, 2, 1],
    [3, 1, 0, 2],
    [3, 2, 1, 0],
];

/// Binary icosahedral group: the 24-cell together with the even
/// permutations of `(+-phi, +-1, +-1/phi, 0) / 2`.
fn cell600() -> Vec<Vector> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out = cell24();
    for perm in EVEN_PERMUTATIONS_4 {
        for mask in 0..8u32 {
            let sign = |bit: u32| if mask & (1 << bit) == 0 { 1.0 } else { -1.0 };
            let base = [sign(0) * phi / 2.0, sign(1) * 0.5, sign(2) / (2.0 * phi), 0.0];
            let mut v = [0.0; 4];
            for (i, &p) in perm.iter().enumerate() {
                v[p] = base[i];
            }
            out.push(Vector::from_column_slice(&v));
        }
    }
    out
}

pub fn make_code(name: CodeName) -> Result<SphericalCode> {
    let points = match name {
        CodeName::Polygon { k } if k < 3 => return Err(Error::BadParams(format!("polygon needs k >= 3, got {k}"))),
        CodeName::Simplex { d } | CodeName::Crosspolytope { d } if d < 2 => {
            return Err(Error::BadParams(format!("{name} needs d >= 2")))
        }
        CodeName::Polygon { k } => polygon(k),
        CodeName::Simplex { d } => simplex(d),
        CodeName::Crosspolytope { d } => crosspolytope(d),
        CodeName::Icosahedron => icosahedron(),
        CodeName::Cuboctahedron => cuboctahedron(),
        CodeName::Cell24 => cell24(),
        CodeName::Cell600 => cell600(),
    };
    Ok(SphericalCode { dim: name.dim(), points, nominal_psi: Some(name.min_angle()) })
}

/// Parses a name with [`CodeName::from_str`] and generates the code.
pub fn make_code_named(name: &str) -> Result<SphericalCode> {
    make_code(name.parse()?)
}

/// Reference entry: a named code or a solved kissing configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnownValue {
    pub dim: usize,
    pub name: String,
    pub cardinality: u64,
    pub min_angle: f64,
}

/// Kissing numbers `k(d) = A(d, pi/3)` for the dimensions where they are known.
pub fn kissing_number(d: usize) -> Option<u64> {
    match d {
        1 => Some(2),
        2 => Some(6),
        3 => Some(12),
        4 => Some(24),
        8 => Some(240),
        24 => Some(196_560),
        _ => None,
    }
}

pub fn known_values() -> Vec<KnownValue> {
    let mut table: Vec<KnownValue> = [1usize, 2, 3, 4, 8, 24]
        .into_iter()
        .map(|d| KnownValue {
            dim: d,
            name: format!("kissing:{d}"),
            cardinality: kissing_number(d).unwrap(),
            min_angle: PI / 3.0,
        })
        .collect();
    for name in catalog() {
        table.push(KnownValue {
            dim: name.dim(),
            name: name.to_string(),
            cardinality: name.cardinality() as u64,
            min_angle: name.min_angle(),
        });
    }
    table
}

/// Representative catalog entries (polygons and the infinite families are
/// listed at a few small parameters).
pub fn catalog() -> Vec<CodeName> {
    let mut out: Vec<CodeName> = (3..=12).map(|k| CodeName::Polygon { k }).collect();
    out.extend((2..=8).map(|d| CodeName::Simplex { d }));
    out.extend((2..=8).map(|d| CodeName::Crosspolytope { d }));
    out.extend([CodeName::Icosahedron, CodeName::Cuboctahedron, CodeName::Cell24, CodeName::Cell600]);
    out
}

/// Orthogonal map taking one code onto another.
#[derive(Clone, Debug, PartialEq)]
pub struct Isometry {
    pub matrix: Matrix,
    pub determinant: f64,
    /// `matrix * x[i]` lands on `y[permutation[i]]`.
    pub permutation: Vec<usize>,
    pub residual: f64,
}

/// Orthogonal Procrustes: the orthogonal `A` minimizing `sum |A x_i - y_i|^2`.
pub fn procrustes(xs: &[&Vector], ys: &[&Vector]) -> Matrix {
    let d = xs.first().map_or(0, |x| x.len());
    let mut m = Matrix::zeros(d, d);
    for (x, y) in xs.iter().zip(ys) {
        m += *y * x.transpose();
    }
    crate::linalg::nearest_orthogonal(&m)
}

/// Searches for an orthogonal map `A` with `A(X) = Y` as sets.
///
/// Candidate images for a spanning subset of `X` are assigned by
/// backtracking over Gram-matrix-consistent choices; each complete
/// assignment is turned into a map by Procrustes and accepted when every
/// point of `X` lands within `10 * tol` of a distinct point of `Y`.
pub fn codes_isometric(x: &SphericalCode, y: &SphericalCode, tol: f64) -> Result<Option<Isometry>> {
    let n = x.len();
    if n > ISOMETRY_SIZE_LIMIT || y.len() > ISOMETRY_SIZE_LIMIT {
        return Err(Error::CodeTooLarge { size: n.max(y.len()), limit: ISOMETRY_SIZE_LIMIT });
    }
    if x.dim != y.dim || n != y.len() {
        return Ok(None);
    }
    let d = x.dim;
    if n == 0 {
        let id = Matrix::identity(d, d);
        return Ok(Some(Isometry { matrix: id, determinant: 1.0, permutation: vec![], residual: 0.0 }));
    }
    let gx = x.gram();
    let gy = y.gram();
    let signature = |g: &Matrix, i: usize| -> Vec<f64> {
        let mut row: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| g[(i, j)]).collect();
        row.sort_by(|a, b| a.total_cmp(b));
        row
    };
    let sig_x: Vec<Vec<f64>> = (0..n).map(|i| signature(&gx, i)).collect();
    let sig_y: Vec<Vec<f64>> = (0..n).map(|i| signature(&gy, i)).collect();
    let compatible = |i: usize, j: usize| sig_x[i].iter().zip(&sig_y[j]).all(|(a, b)| (a - b).abs() <= tol);

    let base = spanning_subset(&x.points);
    let candidates: Vec<Vec<usize>> = base.iter().map(|&i| (0..n).filter(|&j| compatible(i, j)).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }

    let mut search = Search { x, y, gx: &gx, gy: &gy, base: &base, candidates: &candidates, tol, assigned: vec![] };
    Ok(search.run())
}

struct Search<'a> {
    x: &'a SphericalCode,
    y: &'a SphericalCode,
    gx: &'a Matrix,
    gy: &'a Matrix,
    base: &'a [usize],
    candidates: &'a [Vec<usize>],
    tol: f64,
    assigned: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self) -> Option<Isometry> {
        let k = self.assigned.len();
        if k == self.base.len() {
            return self.complete();
        }
        let bi = self.base[k];
        for &j in &self.candidates[k] {
            if self.assigned.contains(&j) {
                continue;
            }
            let consistent = self
                .assigned
                .iter()
                .enumerate()
                .all(|(l, &jl)| (self.gx[(bi, self.base[l])] - self.gy[(j, jl)]).abs() <= self.tol);
            if !consistent {
                continue;
            }
            self.assigned.push(j);
            if let Some(found) = self.run() {
                return Some(found);
            }
            self.assigned.pop();
        }
        None
    }

    fn complete(&self) -> Option<Isometry> {
        let xs: Vec<&Vector> = self.base.iter().map(|&i| &self.x.points[i]).collect();
        let ys: Vec<&Vector> = self.assigned.iter().map(|&j| &self.y.points[j]).collect();
        let a = procrustes(&xs, &ys);
        let bound = 10.0 * self.tol.max(1e-12);
        let mut used = vec![false; self.y.len()];
        let mut permutation = Vec::with_capacity(self.x.len());
        let mut residual: f64 = 0.0;
        for p in &self.x.points {
            let image = &a * p;
            let (j, dist) = self
                .y
                .points
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .map(|(j, q)| (j, (&image - q).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))?;
            if dist > bound {
                return None;
            }
            used[j] = true;
            permutation.push(j);
            residual = residual.max(dist);
        }
        let determinant = a.determinant();
        Some(Isometry { matrix: a, determinant, permutation, residual })
    }
}

/// Greedy spanning subset: start from point 0, then repeatedly take the
/// point farthest from the span of those chosen.
fn spanning_subset(points: &[Vector]) -> Vec<usize> {
    let mut chosen = vec![0usize];
    let mut ortho: Vec<Vector> = vec![points[0].normalize()];
    let d = points[0].len();
    while chosen.len() < d {
        let mut best: Option<(usize, f64, Vector)> = None;
        for (i, p) in points.iter().enumerate() {
            let mut r = p.clone();
            for q in &ortho {
                r -= q * q.dot(&r);
            }
            let norm = r.norm();
            if best.as_ref().is_none_or(|b| norm > b.1 + 1e-12) {
                best = Some((i, norm, r));
            }
        }
        match best {
            Some((i, norm, r)) if norm > 1e-8 => {
                chosen.push(i);
                ortho.push(r / norm);
            }
            _ => break,
        }
    }
    chosen
}
