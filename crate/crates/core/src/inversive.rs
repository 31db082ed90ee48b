//! Generalized spheres (spheres and hyperplanes) in R^n and the inversion
//! calculus built on them.
//!
//! Everything here is a pure function of its inputs. Inversions and
//! similarities compose into a [`TransformChain`], which is how the higher
//! modules record a canonicalization and later map results back.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{serde_matrix, serde_vector, Matrix, Vector};

pub type Point = Vector;

/// Relative and absolute tolerances. Comparisons use `abs + rel * scale`
/// where `scale` is the natural length scale of the objects involved.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-9, abs: 1e-12 }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Tolerance { rel, abs }
    }

    /// Same value for both components.
    pub fn uniform(tol: f64) -> Self {
        Tolerance { rel: tol, abs: tol }
    }

    pub fn eps(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }
}

/// A sphere or a hyperplane `{x : <normal, x> = offset}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GenSphere {
    Sphere {
        #[serde(with = "serde_vector")]
        center: Point,
        radius: f64,
    },
    Hyperplane {
        #[serde(with = "serde_vector")]
        normal: Vector,
        offset: f64,
    },
}

impl GenSphere {
    pub fn sphere(center: Point, radius: f64) -> Self {
        GenSphere::Sphere { center, radius }
    }

    /// Hyperplane with the normal rescaled to unit length.
    pub fn hyperplane(normal: Vector, offset: f64) -> Self {
        let len = normal.norm();
        GenSphere::Hyperplane { normal: normal / len, offset: offset / len }
    }

    pub fn dim(&self) -> usize {
        match self {
            GenSphere::Sphere { center, .. } => center.len(),
            GenSphere::Hyperplane { normal, .. } => normal.len(),
        }
    }

    pub fn radius(&self) -> Option<f64> {
        match self {
            GenSphere::Sphere { radius, .. } => Some(*radius),
            GenSphere::Hyperplane { .. } => None,
        }
    }

    pub fn center(&self) -> Option<&Point> {
        match self {
            GenSphere::Sphere { center, .. } => Some(center),
            GenSphere::Hyperplane { .. } => None,
        }
    }

    pub fn is_hyperplane(&self) -> bool {
        matches!(self, GenSphere::Hyperplane { .. })
    }

    /// Checks the type invariants: finite entries, positive radius, unit normal.
    pub fn validate(&self) -> Result<()> {
        match self {
            GenSphere::Sphere { center, radius } => {
                if center.len() < 2 {
                    return Err(Error::BadParams("ambient dimension must be at least 2".into()));
                }
                if !center.iter().all(|x| x.is_finite()) || !radius.is_finite() {
                    return Err(Error::BadParams("non-finite sphere".into()));
                }
                if *radius <= 0.0 {
                    return Err(Error::BadParams(format!("sphere radius {radius} is not positive")));
                }
            }
            GenSphere::Hyperplane { normal, offset } => {
                if normal.len() < 2 {
                    return Err(Error::BadParams("ambient dimension must be at least 2".into()));
                }
                if !normal.iter().all(|x| x.is_finite()) || !offset.is_finite() {
                    return Err(Error::BadParams("non-finite hyperplane".into()));
                }
                if (normal.norm() - 1.0).abs() > 1e-9 {
                    return Err(Error::BadParams("hyperplane normal is not a unit vector".into()));
                }
            }
        }
        Ok(())
    }

    /// Field-wise comparison. Hyperplanes compare equal under a joint sign
    /// flip of normal and offset.
    pub fn approx_eq(&self, other: &GenSphere, tol: f64) -> bool {
        match (self, other) {
            (GenSphere::Sphere { center: c1, radius: r1 }, GenSphere::Sphere { center: c2, radius: r2 }) => {
                let scale = 1.0 + r1.abs().max(c1.norm());
                (c1 - c2).norm() <= tol * scale && (r1 - r2).abs() <= tol * scale
            }
            (GenSphere::Hyperplane { normal: n1, offset: o1 }, GenSphere::Hyperplane { normal: n2, offset: o2 }) => {
                let scale = 1.0 + o1.abs();
                let same = (n1 - n2).norm() <= tol && (o1 - o2).abs() <= tol * scale;
                let flipped = (n1 + n2).norm() <= tol && (o1 + o2).abs() <= tol * scale;
                same || flipped
            }
            _ => false,
        }
    }
}

/// Inversion in the sphere of radius `sqrt(radius_sq)` about `center`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inversion {
    #[serde(with = "serde_vector")]
    pub center: Point,
    pub radius_sq: f64,
}

impl Inversion {
    pub fn new(center: Point, radius_sq: f64) -> Result<Self> {
        if radius_sq.is_nan() || radius_sq <= 0.0 {
            return Err(Error::BadParams(format!("inversion radius^2 {radius_sq} is not positive")));
        }
        Ok(Inversion { center, radius_sq })
    }

    pub fn map_point(&self, p: &Point) -> Result<Point> {
        let v = p - &self.center;
        let dist_sq = v.norm_squared();
        if dist_sq.sqrt() <= Tolerance::default().abs {
            return Err(Error::CenterSingularity);
        }
        Ok(&self.center + v * (self.radius_sq / dist_sq))
    }

    /// Image of a generalized sphere. Spheres within `tol.abs * max(radius, 1)`
    /// of passing through the center become hyperplanes; hyperplanes within
    /// `tol.abs` of the center are fixed.
    pub fn map_sphere_tol(&self, s: &GenSphere, tol: Tolerance) -> GenSphere {
        let o = &self.center;
        let rho2 = self.radius_sq;
        match s {
            GenSphere::Sphere { center, radius } => {
                let v = center - o;
                let dist = v.norm();
                if (dist - radius).abs() <= tol.abs * radius.max(1.0) {
                    // farthest point of the sphere from O maps to the foot of the plane
                    let u = v / dist;
                    let offset = u.dot(o) + rho2 / (dist + radius);
                    GenSphere::Hyperplane { normal: u, offset }
                } else {
                    let k = dist * dist - radius * radius;
                    GenSphere::Sphere { center: o + v * (rho2 / k), radius: rho2 * radius / k.abs() }
                }
            }
            GenSphere::Hyperplane { normal, offset } => {
                let signed = offset - normal.dot(o);
                if signed.abs() <= tol.abs * o.norm().max(1.0) {
                    s.clone()
                } else {
                    let r = rho2 / (2.0 * signed.abs());
                    GenSphere::Sphere { center: o + normal * (rho2 / (2.0 * signed)), radius: r }
                }
            }
        }
    }

    pub fn map_sphere(&self, s: &GenSphere) -> GenSphere {
        self.map_sphere_tol(s, Tolerance::default())
    }
}

/// `x -> scale * rotation * x + translation`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    pub scale: f64,
    #[serde(with = "serde_matrix")]
    pub rotation: Matrix,
    #[serde(with = "serde_vector")]
    pub translation: Vector,
}

impl Similarity {
    pub fn identity(n: usize) -> Self {
        Similarity { scale: 1.0, rotation: Matrix::identity(n, n), translation: Vector::zeros(n) }
    }

    pub fn new(scale: f64, rotation: Matrix, translation: Vector) -> Result<Self> {
        if scale.is_nan() || scale <= 0.0 {
            return Err(Error::BadParams(format!("similarity scale {scale} is not positive")));
        }
        let n = translation.len();
        if rotation.nrows() != n || rotation.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rotation.nrows() });
        }
        if crate::linalg::orthogonality_defect(&rotation) > 1e-9 {
            return Err(Error::BadParams("similarity rotation is not orthogonal".into()));
        }
        Ok(Similarity { scale, rotation, translation })
    }

    pub fn map_point(&self, p: &Point) -> Point {
        (&self.rotation * p) * self.scale + &self.translation
    }

    pub fn map_sphere(&self, s: &GenSphere) -> GenSphere {
        match s {
            GenSphere::Sphere { center, radius } => {
                GenSphere::Sphere { center: self.map_point(center), radius: radius * self.scale }
            }
            GenSphere::Hyperplane { normal, offset } => {
                let n = &self.rotation * normal;
                let offset = self.scale * offset + n.dot(&self.translation);
                GenSphere::Hyperplane { normal: n, offset }
            }
        }
    }

    pub fn inverse(&self) -> Similarity {
        let rt = self.rotation.transpose();
        let translation = -(&rt * &self.translation) / self.scale;
        Similarity { scale: 1.0 / self.scale, rotation: rt, translation }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Step {
    Inversion(Inversion),
    Similarity(Similarity),
}

impl Step {
    fn inverse(&self) -> Step {
        match self {
            Step::Inversion(inv) => Step::Inversion(inv.clone()),
            Step::Similarity(sim) => Step::Similarity(sim.inverse()),
        }
    }
}

/// Ordered composition of inversions and similarities; `steps[0]` acts first.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TransformChain {
    pub steps: Vec<Step>,
}

impl TransformChain {
    pub fn new(steps: Vec<Step>) -> Self {
        TransformChain { steps }
    }

    pub fn identity() -> Self {
        TransformChain::default()
    }

    pub fn inverse(&self) -> TransformChain {
        TransformChain { steps: self.steps.iter().rev().map(Step::inverse).collect() }
    }

    /// `self` followed by `next`.
    pub fn then(mut self, next: &TransformChain) -> TransformChain {
        self.steps.extend(next.steps.iter().cloned());
        self
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn map_point(&self, p: &Point) -> Result<Point> {
        let mut x = p.clone();
        for step in &self.steps {
            x = match step {
                Step::Inversion(inv) => inv.map_point(&x)?,
                Step::Similarity(sim) => sim.map_point(&x),
            };
        }
        Ok(x)
    }

    pub fn map_sphere_tol(&self, s: &GenSphere, tol: Tolerance) -> GenSphere {
        let mut x = s.clone();
        for step in &self.steps {
            x = match step {
                Step::Inversion(inv) => inv.map_sphere_tol(&x, tol),
                Step::Similarity(sim) => sim.map_sphere(&x),
            };
        }
        x
    }

    pub fn map_sphere(&self, s: &GenSphere) -> GenSphere {
        self.map_sphere_tol(s, Tolerance::default())
    }
}

/// Anything a [`TransformChain`] can act on.
pub trait ChainInput: Sized {
    fn apply(&self, chain: &TransformChain) -> Result<Self>;
}

impl ChainInput for Point {
    fn apply(&self, chain: &TransformChain) -> Result<Self> {
        chain.map_point(self)
    }
}

impl ChainInput for GenSphere {
    fn apply(&self, chain: &TransformChain) -> Result<Self> {
        Ok(chain.map_sphere(self))
    }
}

pub fn apply_chain<T: ChainInput>(chain: &TransformChain, x: &T) -> Result<T> {
    x.apply(chain)
}

pub fn invert_point(inv: &Inversion, p: &Point) -> Result<Point> {
    inv.map_point(p)
}

pub fn invert_gensphere(inv: &Inversion, s: &GenSphere) -> GenSphere {
    inv.map_sphere(s)
}

/// Inversive distance. For two spheres `(d^2 - r1^2 - r2^2) / (2 r1 r2)`, so
/// external tangency is `+1` and internal tangency `-1`. Cases involving a
/// hyperplane carry no orientation and are reported as absolute values:
/// `dist(center, plane) / r` for a sphere and a plane, `|<n1, n2>|` for two
/// planes (parallel planes touch at infinity).
pub fn inversive_distance(s1: &GenSphere, s2: &GenSphere) -> f64 {
    match (s1, s2) {
        (GenSphere::Sphere { center: c1, radius: r1 }, GenSphere::Sphere { center: c2, radius: r2 }) => {
            let d2 = (c1 - c2).norm_squared();
            (d2 - r1 * r1 - r2 * r2) / (2.0 * r1 * r2)
        }
        (GenSphere::Sphere { center, radius }, GenSphere::Hyperplane { normal, offset })
        | (GenSphere::Hyperplane { normal, offset }, GenSphere::Sphere { center, radius }) => {
            (normal.dot(center) - offset).abs() / radius
        }
        (GenSphere::Hyperplane { normal: n1, .. }, GenSphere::Hyperplane { normal: n2, .. }) => n1.dot(n2).abs(),
    }
}

/// Relationship between two distinct generalized spheres.
#[derive(Clone, Debug, PartialEq)]
pub enum PairClass {
    ExternallyTangent(Point),
    InternallyTangent(Point),
    /// Two parallel hyperplanes: tangent at the point at infinity.
    TangentAtInfinity,
    Disjoint,
    Nested,
    Intersecting,
}

/// Point-free summary of a [`PairClass`], used in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    ExternallyTangent,
    InternallyTangent,
    TangentAtInfinity,
    Disjoint,
    Nested,
    Intersecting,
}

impl PairClass {
    pub fn kind(&self) -> PairKind {
        match self {
            PairClass::ExternallyTangent(_) => PairKind::ExternallyTangent,
            PairClass::InternallyTangent(_) => PairKind::InternallyTangent,
            PairClass::TangentAtInfinity => PairKind::TangentAtInfinity,
            PairClass::Disjoint => PairKind::Disjoint,
            PairClass::Nested => PairKind::Nested,
            PairClass::Intersecting => PairKind::Intersecting,
        }
    }

    pub fn is_tangent(&self) -> bool {
        self.kind().is_tangent()
    }

    pub fn tangency_point(&self) -> Option<&Point> {
        match self {
            PairClass::ExternallyTangent(p) | PairClass::InternallyTangent(p) => Some(p),
            _ => None,
        }
    }
}

impl PairKind {
    pub fn is_tangent(self) -> bool {
        matches!(self, PairKind::ExternallyTangent | PairKind::InternallyTangent | PairKind::TangentAtInfinity)
    }
}

/// Length scale used to turn tangency gaps into relative quantities.
fn pair_scale(s1: &GenSphere, s2: &GenSphere) -> f64 {
    match (s1.radius(), s2.radius()) {
        (Some(a), Some(b)) => (a + b).max(1.0),
        (Some(a), None) | (None, Some(a)) => a.max(1.0),
        (None, None) => 1.0,
    }
}

/// Distance to the nearest tangent configuration, divided by the pair's
/// length scale `max(1, r1 + r2)`. Zero means tangent (externally,
/// internally or at infinity).
pub fn tangency_residual(s1: &GenSphere, s2: &GenSphere) -> f64 {
    let scale = pair_scale(s1, s2);
    let gap = match (s1, s2) {
        (GenSphere::Sphere { center: c1, radius: r1 }, GenSphere::Sphere { center: c2, radius: r2 }) => {
            let d = (c1 - c2).norm();
            (d - (r1 + r2)).abs().min((d - (r1 - r2).abs()).abs())
        }
        (GenSphere::Sphere { center, radius }, GenSphere::Hyperplane { normal, offset })
        | (GenSphere::Hyperplane { normal, offset }, GenSphere::Sphere { center, radius }) => {
            ((normal.dot(center) - offset).abs() - radius).abs()
        }
        (GenSphere::Hyperplane { normal: n1, .. }, GenSphere::Hyperplane { normal: n2, .. }) => 1.0 - n1.dot(n2).abs(),
    };
    gap / scale
}

/// Classifies a pair; tangency is declared when the gap is within
/// `tol.eps(max(1, r1 + r2))`.
pub fn classify_pair(s1: &GenSphere, s2: &GenSphere, tol: Tolerance) -> Result<PairClass> {
    if s1.dim() != s2.dim() {
        return Err(Error::DimensionMismatch { expected: s1.dim(), found: s2.dim() });
    }
    let eps = tol.eps(pair_scale(s1, s2));
    match (s1, s2) {
        (GenSphere::Sphere { center: c1, radius: r1 }, GenSphere::Sphere { center: c2, radius: r2 }) => {
            let diff = c2 - c1;
            let d = diff.norm();
            if d <= eps && (r1 - r2).abs() <= eps {
                return Err(Error::IdenticalSpheres);
            }
            let external = d - (r1 + r2);
            let internal = d - (r1 - r2).abs();
            Ok(if external.abs() <= eps {
                PairClass::ExternallyTangent(c1 + &diff * (*r1 / d))
            } else if internal.abs() <= eps {
                let point = if r1 >= r2 { c1 + &diff * (*r1 / d) } else { c2 - &diff * (*r2 / d) };
                PairClass::InternallyTangent(point)
            } else if external > 0.0 {
                PairClass::Disjoint
            } else if internal < 0.0 {
                PairClass::Nested
            } else {
                PairClass::Intersecting
            })
        }
        (GenSphere::Sphere { center, radius }, GenSphere::Hyperplane { normal, offset })
        | (GenSphere::Hyperplane { normal, offset }, GenSphere::Sphere { center, radius }) => {
            let signed = normal.dot(center) - offset;
            let gap = signed.abs() - radius;
            Ok(if gap.abs() <= eps {
                PairClass::ExternallyTangent(center - normal * (radius * signed.signum()))
            } else if gap > 0.0 {
                PairClass::Disjoint
            } else {
                PairClass::Intersecting
            })
        }
        (GenSphere::Hyperplane { normal: n1, offset: o1 }, GenSphere::Hyperplane { normal: n2, offset: o2 }) => {
            let dot = n1.dot(n2);
            if 1.0 - dot.abs() <= eps {
                if (o1 - dot.signum() * o2).abs() <= eps {
                    Err(Error::IdenticalSpheres)
                } else {
                    Ok(PairClass::TangentAtInfinity)
                }
            } else {
                Ok(PairClass::Intersecting)
            }
        }
    }
}
