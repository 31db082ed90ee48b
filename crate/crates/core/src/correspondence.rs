//! The bijection between arrangements of spheres tangent to a family and
//! spherical codes on the unit sphere of the family's locus.
//!
//! Building an arrangement runs: canonicalize the family, find the locus
//! sphere, rotate the code, lift each point to a center on the locus, place
//! unit spheres there and pull them back through the inverse chain.
//! Extraction runs the same pipeline backwards.

use serde::{Deserialize, Serialize};

use crate::canonicalize::{canonical_transform, validate_s_family, CanonicalForm, Family};
use crate::codes::{angle, codes_isometric, min_angle, SphericalCode, ANGLE_TOL};
use crate::error::{Error, Result};
use crate::inversive::{
    classify_pair, tangency_residual, GenSphere, PairClass, PairKind, Similarity, Step, Tolerance, TransformChain,
};
use crate::linalg::{orthogonality_defect, serde_matrix, Matrix, Vector};
use crate::locus::{contact_angle, lift_from_unit, locus_sphere, project_to_unit, ContactAngle, LocusSphere};

/// Relative tolerance for the unit-radius check on canonical images.
pub const CONGRUENCE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arrangement {
    pub family: Family,
    pub spheres: Vec<GenSphere>,
    /// Index pairs `(i, j)`, `i < j`, of mutually tangent spheres.
    pub tangency_graph: Vec<(usize, usize)>,
}

impl Arrangement {
    pub fn new(family: Family, spheres: Vec<GenSphere>, tol: Tolerance) -> Self {
        let tangency_graph = tangency_graph(&spheres, tol);
        Arrangement { family, spheres, tangency_graph }
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.spheres.len()];
        for &(i, j) in &self.tangency_graph {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }
}

pub fn tangency_graph(spheres: &[GenSphere], tol: Tolerance) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..spheres.len() {
        for j in (i + 1)..spheres.len() {
            if matches!(classify_pair(&spheres[i], &spheres[j], tol), Ok(c) if c.is_tangent()) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// An element of SO(d).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationParam {
    #[serde(with = "serde_matrix")]
    pub matrix: Matrix,
}

impl RotationParam {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::BadParams("rotation must be square".into()));
        }
        if orthogonality_defect(&matrix) > 1e-9 {
            return Err(Error::BadParams("rotation is not orthogonal".into()));
        }
        if (matrix.determinant() - 1.0).abs() > 1e-9 {
            return Err(Error::BadParams("rotation has determinant -1".into()));
        }
        Ok(RotationParam { matrix })
    }

    pub fn identity(d: usize) -> Self {
        RotationParam { matrix: Matrix::identity(d, d) }
    }

    /// Plane rotation by `theta`.
    pub fn planar(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        RotationParam { matrix: Matrix::from_row_slice(2, 2, &[c, -s, s, c]) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Canonical form plus locus, the data every operation here starts from.
#[derive(Clone, Debug)]
pub struct FamilyFrame {
    pub canonical: CanonicalForm,
    pub locus: LocusSphere,
    pub angle: ContactAngle,
}

impl FamilyFrame {
    pub fn new(f: &Family, tol: Tolerance) -> Result<Self> {
        let report = validate_s_family(f, tol)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::NotSFamily(format!("condition ({}): {}", v.condition, v.detail)));
        }
        let canonical = canonical_transform(f, tol)?;
        let locus = locus_sphere(&canonical, tol)?.into_sphere()?;
        let angle = contact_angle(&locus);
        Ok(FamilyFrame { canonical, locus, angle })
    }

    pub fn code_dim(&self) -> usize {
        self.locus.dim()
    }

    /// Sphere of the original picture whose canonical image is the unit
    /// sphere centered at the lift of `x`.
    pub fn sphere_for(&self, x: &Vector) -> GenSphere {
        let center = lift_from_unit(&self.locus, x);
        self.canonical.chain.inverse().map_sphere(&GenSphere::sphere(center, 1.0))
    }
}

/// Checks that a code fits the contact angle and has no isolated point.
pub fn check_code(x: &SphericalCode, contact: ContactAngle) -> Result<()> {
    match contact {
        ContactAngle::Solitary => {
            if x.len() > 1 {
                let found = min_angle(x)?;
                return Err(Error::CodeAngleMismatch { min_angle: found, psi: std::f64::consts::PI });
            }
        }
        ContactAngle::Finite { psi } => {
            if x.len() >= 2 {
                let found = min_angle(x)?;
                if found < psi - ANGLE_TOL {
                    return Err(Error::CodeAngleMismatch { min_angle: found, psi });
                }
                // S^0 holds only an antipodal pair, which never touches
                for i in (0..x.len()).filter(|_| x.dim > 1) {
                    let touches =
                        (0..x.len()).any(|j| j != i && (angle(&x.points[i], &x.points[j]) - psi).abs() <= ANGLE_TOL);
                    if !touches {
                        return Err(Error::IsolatedSphere { index: i });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Arrangement corresponding to the code `a(X)`.
pub fn arrangement_from_code(f: &Family, x: &SphericalCode, a: &RotationParam, tol: Tolerance) -> Result<Arrangement> {
    let frame = FamilyFrame::new(f, tol)?;
    let d = frame.code_dim();
    if x.dim != d {
        return Err(Error::DimensionMismatch { expected: d, found: x.dim });
    }
    if a.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: a.dim() });
    }
    check_code(x, frame.angle)?;
    let spheres = x.points.iter().map(|p| frame.sphere_for(&(&a.matrix * p))).collect();
    Ok(Arrangement::new(f.clone(), spheres, tol))
}

/// Recovers the code of an arrangement together with the family's contact angle.
pub fn code_from_arrangement(
    f: &Family,
    spheres: &[GenSphere],
    tol: Tolerance,
) -> Result<(SphericalCode, ContactAngle)> {
    for (i, s) in spheres.iter().enumerate() {
        for (j, member) in f.members.iter().enumerate() {
            let tangent = matches!(classify_pair(s, member, tol), Ok(c) if c.is_tangent());
            if !tangent {
                return Err(Error::NotTangentToFamily { sphere: i, member: j, residual: tangency_residual(s, member) });
            }
        }
    }
    let frame = FamilyFrame::new(f, tol)?;
    let congruence = CONGRUENCE_TOL.max(tol.rel);
    let mut points = Vec::with_capacity(spheres.len());
    for (index, s) in spheres.iter().enumerate() {
        let image = frame.canonical.chain.map_sphere(s);
        let (center, radius) = match image {
            GenSphere::Sphere { center, radius } => (center, radius),
            GenSphere::Hyperplane { .. } => return Err(Error::NonCongruentImages { index, radius: f64::INFINITY }),
        };
        if (radius - 1.0).abs() > congruence {
            return Err(Error::NonCongruentImages { index, radius });
        }
        points.push(project_to_unit(&frame.locus, &center, Tolerance::new(congruence, congruence))?);
    }
    let code = SphericalCode { dim: frame.code_dim(), points, nominal_psi: frame.angle.psi() };
    Ok((code, frame.angle))
}

/// Conformal map taking `P_A(X)` onto `P_B(Y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equivalence {
    pub chain: TransformChain,
    /// Sphere `i` of `P_A(X)` goes to sphere `permutation[i]` of `P_B(Y)`.
    pub permutation: Vec<usize>,
    /// Determinant of the code isometry (may be -1).
    pub determinant: f64,
}

/// Builds `chain^-1 . R . chain` where `R` acts on the locus flat as
/// `B M A^T`, with `M` the isometry taking `X` onto `Y`.
pub fn equivalence_map(
    f: &Family,
    x: &SphericalCode,
    y: &SphericalCode,
    a: &RotationParam,
    b: &RotationParam,
    tol: Tolerance,
) -> Result<Equivalence> {
    let iso = codes_isometric(x, y, 1e-8)?.ok_or(Error::NotIsometric)?;
    let frame = FamilyFrame::new(f, tol)?;
    let d = frame.code_dim();
    if x.dim != d || a.dim() != d || b.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: x.dim });
    }
    let r = &b.matrix * &iso.matrix * a.matrix.transpose();
    let basis = frame.locus.basis_matrix();
    let n = frame.locus.ambient_dim;
    let q = Matrix::identity(n, n) + &basis * (r - Matrix::identity(d, d)) * basis.transpose();
    let c = &frame.locus.center;
    let rotation = Similarity { scale: 1.0, translation: c - &q * c, rotation: q };
    let mut chain = frame.canonical.chain.clone();
    chain.push(Step::Similarity(rotation));
    let chain = chain.then(&frame.canonical.chain.inverse());
    Ok(Equivalence { chain, permutation: iso.permutation, determinant: iso.determinant })
}

/// Image of a packing tangent to a tangent pair: unit spheres between the
/// planes `x_n = +-1`, described by their centers in the midplane.
#[derive(Clone, Debug, PartialEq)]
pub struct SlabPacking {
    pub canonical: CanonicalForm,
    pub images: Vec<GenSphere>,
    /// Centers in R^{n-1} (last coordinate dropped).
    pub centers: Vec<Vector>,
}

fn pair_family(s1: &GenSphere, s2: &GenSphere, tol: Tolerance) -> Result<Family> {
    match classify_pair(s1, s2, tol)? {
        c if c.is_tangent() => Family::new(vec![s1.clone(), s2.clone()]),
        _ => Err(Error::NotTangentPair),
    }
}

pub fn tangent_pair_correspondence(
    s1: &GenSphere,
    s2: &GenSphere,
    packing: &[GenSphere],
    tol: Tolerance,
) -> Result<SlabPacking> {
    let family = pair_family(s1, s2, tol)?;
    for (i, p) in packing.iter().enumerate() {
        let both = [s1, s2].iter().all(|s| matches!(classify_pair(p, s, tol), Ok(c) if c.is_tangent()));
        if !both {
            return Err(Error::NotTangentToPair(i));
        }
    }
    let canonical = canonical_transform(&family, tol)?;
    let n = family.ambient_dim;
    let images: Vec<GenSphere> = packing.iter().map(|p| canonical.chain.map_sphere(p)).collect();
    let mut centers = Vec::with_capacity(images.len());
    for (index, image) in images.iter().enumerate() {
        let center = image.center().ok_or(Error::NonCongruentImages { index, radius: f64::INFINITY })?;
        centers.push(center.rows(0, n - 1).into_owned());
    }
    Ok(SlabPacking { canonical, images, centers })
}

/// Inverse of [`tangent_pair_correspondence`]: unit spheres centered at
/// `(c, 0)` pulled back to the original pair.
pub fn packing_from_slab(s1: &GenSphere, s2: &GenSphere, centers: &[Vector], tol: Tolerance) -> Result<Vec<GenSphere>> {
    let family = pair_family(s1, s2, tol)?;
    let n = family.ambient_dim;
    let canonical = canonical_transform(&family, tol)?;
    let back = canonical.chain.inverse();
    centers
        .iter()
        .map(|c| {
            if c.len() + 1 != n {
                return Err(Error::DimensionMismatch { expected: n - 1, found: c.len() });
            }
            let full = Vector::from_iterator(n, c.iter().copied().chain(std::iter::once(0.0)));
            Ok(back.map_sphere(&GenSphere::sphere(full, 1.0)))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// `family_residuals[i][j]`: relative tangency gap of sphere `i` to member `j`.
    pub family_residuals: Vec<Vec<f64>>,
    /// Pairwise classification; `None` on the diagonal.
    pub pair_classes: Vec<Vec<Option<PairKind>>>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Checks the three arrangement conditions numerically: tangency to every
/// family member, at least one tangent neighbour, no crossing pair.
pub fn verify_arrangement(f: &Family, spheres: &[GenSphere], tol: f64) -> VerificationReport {
    let class_tol = Tolerance::new(tol, 0.0);
    let mut failures = Vec::new();
    let mut max_residual: f64 = 0.0;

    let family_residuals: Vec<Vec<f64>> =
        spheres.iter().map(|s| f.members.iter().map(|m| tangency_residual(s, m)).collect()).collect();
    for (i, row) in family_residuals.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            max_residual = max_residual.max(r);
            if r.is_nan() || r > tol {
                failures.push(format!("sphere {i} is not tangent to family member {j} (residual {r:e})"));
            }
        }
    }

    let n = spheres.len();
    let mut pair_classes = vec![vec![None; n]; n];
    let mut has_neighbour = vec![false; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let kind = match classify_pair(&spheres[i], &spheres[j], class_tol) {
                Ok(class) => class.kind(),
                Err(_) => {
                    failures.push(format!("spheres {i} and {j} coincide"));
                    PairKind::Intersecting
                }
            };
            if kind.is_tangent() {
                has_neighbour[i] = true;
                has_neighbour[j] = true;
                max_residual = max_residual.max(tangency_residual(&spheres[i], &spheres[j]));
            }
            if kind == PairKind::Intersecting && failures.last().is_none_or(|l| !l.contains("coincide")) {
                failures.push(format!("spheres {i} and {j} intersect"));
            }
            pair_classes[i][j] = Some(kind);
            pair_classes[j][i] = Some(kind);
        }
    }
    // a one-dimensional locus admits only the antipodal pair, which never touches
    if n >= 2 && f.code_dim() != 1 {
        for (i, ok) in has_neighbour.iter().enumerate() {
            if !ok {
                failures.push(format!("sphere {i} is tangent to no other sphere"));
            }
        }
    }
    VerificationReport {
        family_residuals,
        pair_classes,
        max_residual,
        tolerance: tol,
        pass: failures.is_empty(),
        failures,
    }
}

/// Whether a pair classification counts as non-intersecting.
pub fn is_non_intersecting(class: &PairClass) -> bool {
    !matches!(class, PairClass::Intersecting)
}
