//! The locus of centers of unit spheres tangent to every member of a
//! canonical family, and the contact angle it induces.
//!
//! The locus is built by intersecting constraint surfaces one at a time.
//! The running state is a flat (point plus orthonormal basis), optionally
//! carrying a sphere centered inside it; every independent constraint
//! either puts a sphere on the flat or cuts one dimension off it.

use serde::{Deserialize, Serialize};

use crate::canonicalize::{CanonicalForm, FamilyCase};
use crate::error::{Error, Result};
use crate::inversive::{GenSphere, Point, Tolerance};
use crate::linalg::{complement_basis, serde_vector, serde_vectors, Matrix, Vector};

/// A `(d-1)`-sphere of radius `radius` inside the `d`-flat through `center`
/// spanned by `flat_basis`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusSphere {
    pub ambient_dim: usize,
    #[serde(with = "serde_vector")]
    pub center: Point,
    pub radius: f64,
    #[serde(with = "serde_vectors")]
    pub flat_basis: Vec<Vector>,
}

impl LocusSphere {
    /// Dimension `d` of the flat; the locus itself is a `(d-1)`-sphere.
    pub fn dim(&self) -> usize {
        self.flat_basis.len()
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.flat_basis)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LocusResult {
    Sphere(LocusSphere),
    Empty,
    PointLocus(Point),
    Unbounded,
}

impl LocusResult {
    pub fn describe(&self) -> &'static str {
        match self {
            LocusResult::Sphere(_) => "a sphere",
            LocusResult::Empty => "empty",
            LocusResult::PointLocus(_) => "a single point",
            LocusResult::Unbounded => "unbounded",
        }
    }

    pub fn into_sphere(self) -> Result<LocusSphere> {
        match self {
            LocusResult::Sphere(s) => Ok(s),
            other => Err(Error::BadLocus(other.describe())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ContactAngle {
    Finite {
        psi: f64,
    },
    /// Locus radius below 1: an arrangement holds a single sphere.
    Solitary,
}

impl ContactAngle {
    pub fn psi(&self) -> Option<f64> {
        match self {
            ContactAngle::Finite { psi } => Some(*psi),
            ContactAngle::Solitary => None,
        }
    }
}

/// Which side of a family member the unit spheres touch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    #[default]
    External,
    Internal,
}

/// `Z_0` followed by one surface per member beyond the first two.
pub fn constraint_surfaces(cf: &CanonicalForm) -> Vec<GenSphere> {
    constraint_surfaces_with(cf, Orientation::External)
}

pub fn constraint_surfaces_with(cf: &CanonicalForm, orientation: Orientation) -> Vec<GenSphere> {
    let members = &cf.canonical_members;
    let z0 = match (&members[0], &members[1], cf.case) {
        (GenSphere::Hyperplane { normal: n1, offset: o1 }, GenSphere::Hyperplane { normal: n2, offset: o2 }, _) => {
            let o2 = if n1.dot(n2) < 0.0 { -o2 } else { *o2 };
            GenSphere::Hyperplane { normal: n1.clone(), offset: 0.5 * (o1 + o2) }
        }
        (
            GenSphere::Sphere { center: c1, radius: r1 },
            GenSphere::Sphere { center: c2, radius: r2 },
            FamilyCase::NonTangent,
        ) => GenSphere::Sphere { center: (c1 + c2) * 0.5, radius: 0.5 * (r1 + r2) },
        _ => unreachable!("canonical form always holds two planes or two concentric spheres"),
    };
    let mut out = vec![z0];
    for s in &members[2..] {
        out.push(match s {
            GenSphere::Sphere { center, radius } => GenSphere::Sphere {
                center: center.clone(),
                radius: match orientation {
                    Orientation::External => radius + 1.0,
                    Orientation::Internal => (radius - 1.0).abs(),
                },
            },
            // the parallel plane at distance 1 on the side of the origin
            GenSphere::Hyperplane { normal, offset } => GenSphere::Hyperplane {
                normal: normal.clone(),
                offset: if *offset > 0.0 { offset - 1.0 } else { offset + 1.0 },
            },
        });
    }
    out
}

pub fn locus_sphere(cf: &CanonicalForm, tol: Tolerance) -> Result<LocusResult> {
    intersect_constraints(cf.ambient_dim, &constraint_surfaces(cf), tol)
}

struct Flat {
    origin: Point,
    basis: Matrix,
    radius: Option<f64>,
}

impl Flat {
    /// Drops direction `dir` (unit, inside the flat) from the basis.
    fn cut(&mut self, dir: &Vector) {
        let coords = self.basis.transpose() * dir;
        self.basis = &self.basis * complement_basis(&coords);
    }
}

/// Intersects all surfaces, starting from the whole of R^n.
pub fn intersect_constraints(n: usize, surfaces: &[GenSphere], tol: Tolerance) -> Result<LocusResult> {
    let mut flat = Flat { origin: Point::zeros(n), basis: Matrix::identity(n, n), radius: None };
    for (index, z) in surfaces.iter().enumerate() {
        let scale = 1.0 + flat.origin.norm() + flat.radius.unwrap_or(0.0);
        let eps = tol.eps(scale);
        // the surface restricted to the flat: a sphere (center, r^2) or a plane (unit dir, distance)
        let step = match z {
            GenSphere::Sphere { center, radius } => {
                let w = flat.basis.transpose() * (center - &flat.origin);
                let foot = &flat.origin + &flat.basis * &w;
                let h2 = (center - &foot).norm_squared();
                let r2 = radius * radius - h2;
                if r2 < -eps * scale {
                    return Ok(LocusResult::Empty);
                }
                let r = r2.max(0.0).sqrt();
                match flat.radius {
                    None => {
                        flat.origin = foot;
                        flat.radius = Some(r);
                        continue;
                    }
                    Some(big_r) => {
                        let diff = &foot - &flat.origin;
                        let dist = diff.norm();
                        if dist <= eps {
                            if (big_r - r).abs() <= eps {
                                return Err(Error::DegenerateConstraint { index });
                            }
                            return Ok(LocusResult::Empty);
                        }
                        let u = diff / dist;
                        let t = (dist * dist + big_r * big_r - r * r) / (2.0 * dist);
                        (u, t)
                    }
                }
            }
            GenSphere::Hyperplane { normal, offset } => {
                let w = flat.basis.transpose() * normal;
                let wn = w.norm();
                let signed = offset - normal.dot(&flat.origin);
                if wn <= 1e-12 {
                    if signed.abs() <= eps {
                        return Err(Error::DegenerateConstraint { index });
                    }
                    return Ok(LocusResult::Empty);
                }
                let u = (&flat.basis * &w) / wn;
                (u, signed / wn)
            }
        };
        let (u, t) = step;
        flat.origin += &u * t;
        flat.cut(&u);
        if let Some(big_r) = flat.radius {
            let r2 = big_r * big_r - t * t;
            if r2 < -eps * scale {
                return Ok(LocusResult::Empty);
            }
            flat.radius = Some(r2.max(0.0).sqrt());
        }
    }
    Ok(match flat.radius {
        None if flat.basis.ncols() == 0 => LocusResult::PointLocus(flat.origin),
        None => LocusResult::Unbounded,
        Some(r) if r <= tol.eps(1.0 + flat.origin.norm()).sqrt() => LocusResult::PointLocus(flat.origin),
        Some(_) if flat.basis.ncols() == 0 => LocusResult::Empty,
        Some(r) => LocusResult::Sphere(LocusSphere {
            ambient_dim: n,
            center: flat.origin,
            radius: r,
            flat_basis: flat.basis.column_iter().map(|c| c.into_owned()).collect(),
        }),
    })
}

/// `arccos(1 - 2/r^2)` for `r >= 1`, the angle subtended at the locus
/// center by two tangent unit spheres.
pub fn contact_angle_for_radius(r: f64) -> ContactAngle {
    if r >= 1.0 - 1e-12 {
        ContactAngle::Finite { psi: (1.0 - 2.0 / (r * r)).clamp(-1.0, 1.0).acos() }
    } else {
        ContactAngle::Solitary
    }
}

pub fn contact_angle(locus: &LocusSphere) -> ContactAngle {
    contact_angle_for_radius(locus.radius)
}

/// Central projection of a locus point onto the unit sphere of the flat,
/// in basis coordinates.
pub fn project_to_unit(locus: &LocusSphere, p: &Point, tol: Tolerance) -> Result<Vector> {
    let v = p - &locus.center;
    let coords = Vector::from_iterator(locus.dim(), locus.flat_basis.iter().map(|b| b.dot(&v)));
    let in_flat: Vector =
        locus.flat_basis.iter().zip(coords.iter()).map(|(b, c)| b * *c).fold(Vector::zeros(v.len()), |a, b| a + b);
    let off_flat = (&v - in_flat).norm();
    let radial = coords.norm() - locus.radius;
    let distance = off_flat.hypot(radial);
    if distance > tol.eps(locus.radius.max(1.0)) {
        return Err(Error::OffLocus { distance });
    }
    let len = coords.norm();
    Ok(coords / len)
}

/// Inverse of [`project_to_unit`]: `center + radius * sum_i x_i b_i`.
pub fn lift_from_unit(locus: &LocusSphere, x: &Vector) -> Point {
    let mut p = locus.center.clone();
    for (b, xi) in locus.flat_basis.iter().zip(x.iter()) {
        p += b * (locus.radius * xi);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonicalize::{canonical_transform, Family};
    use crate::linalg::vector;
    use std::f64::consts::PI;

    fn annulus() -> CanonicalForm {
        let f =
            Family::new(vec![GenSphere::sphere(vector(&[0.0, 0.0]), 1.0), GenSphere::sphere(vector(&[0.0, 0.0]), 3.0)])
                .unwrap();
        canonical_transform(&f, Tolerance::default()).unwrap()
    }

    fn hexlet_canonical() -> CanonicalForm {
        CanonicalForm {
            ambient_dim: 3,
            chain: Default::default(),
            canonical_members: vec![
                GenSphere::hyperplane(vector(&[0.0, 0.0, 1.0]), 1.0),
                GenSphere::hyperplane(vector(&[0.0, 0.0, 1.0]), -1.0),
                GenSphere::sphere(vector(&[0.0, 0.0, 0.0]), 1.0),
            ],
            case: FamilyCase::Tangent,
        }
    }

    #[test]
    fn annulus_constraint_is_mean_radius_sphere() {
        let z = constraint_surfaces(&annulus());
        assert_eq!(z.len(), 1);
        assert!(z[0].approx_eq(&GenSphere::sphere(vector(&[0.0, 0.0]), 2.0), 1e-15));
    }

    #[test]
    fn hexlet_constraints() {
        let z = constraint_surfaces(&hexlet_canonical());
        assert!(z[0].approx_eq(&GenSphere::hyperplane(vector(&[0.0, 0.0, 1.0]), 0.0), 1e-15));
        assert!(z[1].approx_eq(&GenSphere::sphere(vector(&[0.0, 0.0, 0.0]), 2.0), 1e-15));
        let internal = constraint_surfaces_with(&hexlet_canonical(), Orientation::Internal);
        assert_eq!(internal[1].radius(), Some(0.0));
    }

    #[test]
    fn annulus_locus_is_circle_of_radius_two() {
        let LocusResult::Sphere(l) = locus_sphere(&annulus(), Tolerance::default()).unwrap() else { panic!() };
        assert_eq!(l.dim(), 2);
        assert!((l.radius - 2.0).abs() < 1e-15);
        assert!(l.center.norm() < 1e-15);
    }

    #[test]
    fn hexlet_locus_is_circle_in_midplane() {
        let LocusResult::Sphere(l) = locus_sphere(&hexlet_canonical(), Tolerance::default()).unwrap() else { panic!() };
        assert_eq!(l.dim(), 2);
        assert!((l.radius - 2.0).abs() < 1e-15);
        let theta: f64 = 0.4;
        let p = lift_from_unit(&l, &vector(&[theta.cos(), theta.sin()]));
        assert!((p - vector(&[2.0 * theta.cos(), 2.0 * theta.sin(), 0.0])).norm() < 1e-15);
    }

    #[test]
    fn tangent_pair_locus_is_unbounded() {
        let mut cf = hexlet_canonical();
        cf.canonical_members.truncate(2);
        assert_eq!(constraint_surfaces(&cf).len(), 1);
        assert_eq!(locus_sphere(&cf, Tolerance::default()).unwrap(), LocusResult::Unbounded);
    }

    #[test]
    fn coincident_constraints_are_reported() {
        let z =
            vec![GenSphere::sphere(vector(&[0.0, 0.0, 0.0]), 2.0), GenSphere::sphere(vector(&[0.0, 0.0, 0.0]), 2.0)];
        assert_eq!(
            intersect_constraints(3, &z, Tolerance::default()).unwrap_err(),
            Error::DegenerateConstraint { index: 1 }
        );
    }

    #[test]
    fn far_apart_constraints_are_empty() {
        let z = vec![GenSphere::sphere(vector(&[0.0, 0.0]), 1.0), GenSphere::sphere(vector(&[5.0, 0.0]), 1.0)];
        assert_eq!(intersect_constraints(2, &z, Tolerance::default()).unwrap(), LocusResult::Empty);
    }

    #[test]
    fn touching_constraints_give_point_locus() {
        let z = vec![GenSphere::sphere(vector(&[0.0, 0.0]), 1.0), GenSphere::sphere(vector(&[2.0, 0.0]), 1.0)];
        let LocusResult::PointLocus(p) = intersect_constraints(2, &z, Tolerance::default()).unwrap() else { panic!() };
        assert!((p - vector(&[1.0, 0.0])).norm() < 1e-12);
    }

    #[test]
    fn contact_angle_values() {
        assert!((contact_angle_for_radius(2.0).psi().unwrap() - PI / 3.0).abs() < 1e-15);
        assert!((contact_angle_for_radius(2f64.sqrt()).psi().unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(contact_angle_for_radius(0.5), ContactAngle::Solitary);
    }

    #[test]
    fn projection_of_locus_point() {
        let LocusResult::Sphere(l) = locus_sphere(&annulus(), Tolerance::default()).unwrap() else { panic!() };
        let x = project_to_unit(&l, &vector(&[2.0, 0.0]), Tolerance::default()).unwrap();
        assert!((x - vector(&[1.0, 0.0])).norm() < 1e-15);
        assert!(matches!(project_to_unit(&l, &vector(&[2.5, 0.0]), Tolerance::default()), Err(Error::OffLocus { .. })));
    }
}
