//! Families of spheres, the S-family test, and the transform that puts the
//! first two members into canonical position: parallel hyperplanes
//! `x_n = -1`, `x_n = 1` when they touch, concentric spheres about the
//! origin with radii differing by 2 when they do not.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inversive::{
    classify_pair, GenSphere, Inversion, PairClass, Point, Similarity, Step, Tolerance, TransformChain,
};
use crate::linalg::{lex_cmp, reflect_onto, Matrix, Vector};
use crate::locus::{locus_sphere, LocusResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Family {
    pub ambient_dim: usize,
    pub members: Vec<GenSphere>,
}

impl Family {
    /// Builds a family, checking dimensions and each member's invariants.
    pub fn new(members: Vec<GenSphere>) -> Result<Self> {
        let ambient_dim = members.first().map(GenSphere::dim).ok_or(Error::BadParams("empty family".into()))?;
        let family = Family { ambient_dim, members };
        family.check()?;
        Ok(family)
    }

    pub fn check(&self) -> Result<()> {
        if self.members.len() < 2 {
            return Err(Error::BadParams(format!("family needs at least 2 members, got {}", self.members.len())));
        }
        for m in &self.members {
            if m.dim() != self.ambient_dim {
                return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: m.dim() });
            }
            m.validate()?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Dimension `n + 2 - m` of the space holding the corresponding codes.
    pub fn code_dim(&self) -> isize {
        self.ambient_dim as isize + 2 - self.members.len() as isize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyCase {
    /// First two members touch (possibly at infinity).
    Tangent,
    NonTangent,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Which of the three S-family conditions failed.
    pub condition: u8,
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SFamilyReport {
    pub is_s_family: bool,
    pub violations: Vec<Violation>,
    pub case: FamilyCase,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub ambient_dim: usize,
    pub chain: TransformChain,
    pub canonical_members: Vec<GenSphere>,
    pub case: FamilyCase,
}

/// Checks conditions (1) and (2); returns the case and any violations.
fn pairwise_conditions(f: &Family, tol: Tolerance) -> (FamilyCase, Vec<Violation>) {
    let mut violations = Vec::new();
    let case = match classify_pair(&f.members[0], &f.members[1], tol) {
        Ok(c) if c.is_tangent() => FamilyCase::Tangent,
        Ok(PairClass::Disjoint | PairClass::Nested) => FamilyCase::NonTangent,
        Ok(_) => {
            violations.push(Violation {
                condition: 1,
                indices: vec![0, 1],
                detail: "first two members intersect".into(),
            });
            FamilyCase::Invalid
        }
        Err(_) => {
            violations.push(Violation {
                condition: 1,
                indices: vec![0, 1],
                detail: "first two members coincide".into(),
            });
            FamilyCase::Invalid
        }
    };
    for (i, s) in f.members.iter().enumerate().skip(2) {
        let mut crossing = Vec::new();
        for j in 0..2 {
            match classify_pair(s, &f.members[j], tol) {
                Ok(PairClass::Intersecting) => crossing.push(j),
                Ok(_) => {}
                Err(_) => {
                    violations.push(Violation { condition: 2, indices: vec![i, j], detail: "members coincide".into() })
                }
            }
        }
        if crossing.len() == 2 {
            violations.push(Violation {
                condition: 2,
                indices: vec![i, 0, 1],
                detail: format!("member {i} intersects both of the first two members"),
            });
        }
    }
    (case, violations)
}

pub fn validate_s_family(f: &Family, tol: Tolerance) -> Result<SFamilyReport> {
    if f.members.len() < 2 {
        return Err(Error::BadParams("family needs at least 2 members".into()));
    }
    for m in &f.members {
        if m.dim() != f.ambient_dim {
            return Err(Error::DimensionMismatch { expected: f.ambient_dim, found: m.dim() });
        }
    }
    let (case, mut violations) = pairwise_conditions(f, tol);
    if violations.is_empty() {
        if f.members.len() >= f.ambient_dim + 2 {
            violations.push(Violation {
                condition: 3,
                indices: vec![],
                detail: format!("m = {} must be below n + 2 = {}", f.members.len(), f.ambient_dim + 2),
            });
        } else {
            let detail = match canonical_transform(f, tol).and_then(|cf| locus_sphere(&cf, tol)) {
                Ok(LocusResult::Sphere(_)) => None,
                Ok(LocusResult::Unbounded) => {
                    Some("locus of centers is unbounded: arrangements are infinite".to_string())
                }
                Ok(LocusResult::Empty) => Some("locus of centers is empty: no arrangements".to_string()),
                Ok(LocusResult::PointLocus(_)) => Some("locus of centers is a single point".to_string()),
                Err(e) => Some(e.to_string()),
            };
            if let Some(detail) = detail {
                violations.push(Violation { condition: 3, indices: vec![], detail });
            }
        }
    }
    Ok(SFamilyReport { is_s_family: violations.is_empty(), violations, case })
}

/// The two limiting points of a non-intersecting, non-tangent pair, ordered
/// along the direction from the first center towards the second. Inversion
/// in either one makes the pair concentric.
pub fn limiting_points(s1: &GenSphere, s2: &GenSphere) -> Result<(Point, Point)> {
    let tol = Tolerance::default();
    match classify_pair(s1, s2, tol)? {
        PairClass::ExternallyTangent(_) | PairClass::InternallyTangent(_) | PairClass::TangentAtInfinity => {
            return Err(Error::TangentPair)
        }
        PairClass::Intersecting => return Err(Error::IntersectingPair),
        PairClass::Disjoint | PairClass::Nested => {}
    }
    let (foot, dir, power) = match (s1, s2) {
        (GenSphere::Sphere { center: c1, radius: r1 }, GenSphere::Sphere { center: c2, radius: r2 }) => {
            let diff = c2 - c1;
            let d = diff.norm();
            if d <= tol.eps(r1.max(*r2)) {
                return Err(Error::ConcentricPair);
            }
            let u = diff / d;
            // foot of the radical hyperplane on the center line
            let t = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
            (c1 + &u * t, u, t * t - r1 * r1)
        }
        (GenSphere::Sphere { center, radius }, GenSphere::Hyperplane { normal, offset }) => {
            let signed = normal.dot(center) - offset;
            let u = normal * (-signed.signum());
            (center - normal * signed, u, signed * signed - radius * radius)
        }
        (GenSphere::Hyperplane { normal, offset }, GenSphere::Sphere { center, radius }) => {
            let signed = normal.dot(center) - offset;
            let u = normal * signed.signum();
            (center - normal * signed, u, signed * signed - radius * radius)
        }
        (GenSphere::Hyperplane { .. }, GenSphere::Hyperplane { .. }) => return Err(Error::IntersectingPair),
    };
    if power <= 0.0 {
        return Err(Error::TangentPair);
    }
    let h = power.sqrt();
    Ok((&foot - &dir * h, &foot + &dir * h))
}

fn is_exterior(p: &Point, s: &GenSphere) -> bool {
    match s {
        GenSphere::Sphere { center, radius } => (p - center).norm() > *radius,
        GenSphere::Hyperplane { .. } => true,
    }
}

/// Picks the limiting point lying outside both spheres when there is one,
/// otherwise the lexicographically smaller one.
fn choose_limiting_point(s1: &GenSphere, s2: &GenSphere, (a, b): (Point, Point)) -> Point {
    let ext_a = is_exterior(&a, s1) && is_exterior(&a, s2);
    let ext_b = is_exterior(&b, s1) && is_exterior(&b, s2);
    match (ext_a, ext_b) {
        (true, false) => a,
        (false, true) => b,
        _ => {
            if lex_cmp(&a, &b) != std::cmp::Ordering::Greater {
                a
            } else {
                b
            }
        }
    }
}

fn last_axis(n: usize) -> Vector {
    let mut e = Vector::zeros(n);
    e[n - 1] = 1.0;
    e
}

/// Computes the canonicalizing chain. Requires conditions (1) and (2) of the
/// S-family definition; condition (3) is not needed here, so the two-member
/// tangent family (whose locus is unbounded) is still accepted.
pub fn canonical_transform(f: &Family, tol: Tolerance) -> Result<CanonicalForm> {
    f.check()?;
    let (case, violations) = pairwise_conditions(f, tol);
    if let Some(v) = violations.first() {
        return Err(Error::NotSFamily(v.detail.clone()));
    }
    let n = f.ambient_dim;
    let (s1, s2) = (&f.members[0], &f.members[1]);
    // looser band for the two members known to pass through the inversion center
    let through = Tolerance::new(tol.rel, 1e-8);
    let mut chain = TransformChain::identity();

    let (c1, c2) = match case {
        FamilyCase::Tangent => {
            let (p1, p2) = match classify_pair(s1, s2, tol)? {
                PairClass::TangentAtInfinity => (s1.clone(), s2.clone()),
                class => {
                    let o = class.tangency_point().expect("tangent pair has a point").clone();
                    let inv = Inversion::new(o, 1.0)?;
                    let images = (inv.map_sphere_tol(s1, through), inv.map_sphere_tol(s2, through));
                    chain.push(Step::Inversion(inv));
                    images
                }
            };
            let (GenSphere::Hyperplane { normal: n1, offset: o1 }, GenSphere::Hyperplane { normal: n2, offset: o2 }) =
                (&p1, &p2)
            else {
                return Err(Error::NotSFamily("tangent members did not invert to hyperplanes".into()));
            };
            let o2 = if n1.dot(n2) < 0.0 { -o2 } else { *o2 };
            let gap = (o2 - o1).abs();
            let mid = 0.5 * (o1 + o2);
            let e_n = last_axis(n);
            let rotation = reflect_onto(n1, &e_n);
            let scale = 2.0 / gap;
            let sim = Similarity { scale, rotation, translation: &e_n * (-scale * mid) };
            let images = (sim.map_sphere(&p1), sim.map_sphere(&p2));
            chain.push(Step::Similarity(sim));
            images
        }
        FamilyCase::NonTangent => {
            let (q1, q2) = match limiting_points(s1, s2) {
                Ok(points) => {
                    let p = choose_limiting_point(s1, s2, points);
                    let inv = Inversion::new(p, 1.0)?;
                    let images = (inv.map_sphere(s1), inv.map_sphere(s2));
                    chain.push(Step::Inversion(inv));
                    images
                }
                Err(Error::ConcentricPair) => (s1.clone(), s2.clone()),
                Err(e) => return Err(e),
            };
            let (GenSphere::Sphere { center: k1, radius: a1 }, GenSphere::Sphere { center: k2, radius: a2 }) =
                (&q1, &q2)
            else {
                return Err(Error::NotSFamily("non-tangent members did not become spheres".into()));
            };
            let common = (k1 + k2) * 0.5;
            let scale = 2.0 / (a2 - a1).abs();
            let sim = Similarity { scale, rotation: Matrix::identity(n, n), translation: -common * scale };
            let images = (sim.map_sphere(&q1), sim.map_sphere(&q2));
            chain.push(Step::Similarity(sim));
            images
        }
        FamilyCase::Invalid => unreachable!("violations were checked"),
    };

    let mut canonical_members = vec![c1, c2];
    canonical_members.extend(f.members.iter().skip(2).map(|s| chain.map_sphere(s)));
    Ok(CanonicalForm { ambient_dim: n, chain, canonical_members, case })
}
