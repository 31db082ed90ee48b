//! S-family checks, canonical position and the locus sphere for a few
//! families, including one with a hyperplane member.

use kissing::canonicalize::{canonical_transform, validate_s_family, Family, FamilyCase};
use kissing::error::Result;
use kissing::inversive::{GenSphere, Tolerance};
use kissing::linalg::vector;
use kissing::locus::{contact_angle, locus_sphere, ContactAngle, LocusResult};

pub fn families() -> Vec<(&'static str, Family)> {
    let fam = |m: Vec<GenSphere>| Family::new(m).expect("valid members");
    vec![
        (
            "disjoint circles",
            fam(vec![GenSphere::sphere(vector(&[0.0, 0.0]), 1.0), GenSphere::sphere(vector(&[5.0, 0.0]), 2.0)]),
        ),
        (
            "touching spheres",
            fam(vec![
                GenSphere::sphere(vector(&[0.0, 0.0, 1.0]), 1.0),
                GenSphere::sphere(vector(&[0.0, 0.0, 3.0]), 1.0),
                GenSphere::sphere(vector(&[2.0 * 2f64.sqrt(), 0.0, 2.0]), 2.0),
            ]),
        ),
        (
            "plane and ball",
            fam(vec![
                GenSphere::hyperplane(vector(&[0.0, 0.0, 1.0]), 0.0),
                GenSphere::sphere(vector(&[0.0, 0.0, 4.0]), 1.0),
            ]),
        ),
        (
            "crossing circles",
            fam(vec![GenSphere::sphere(vector(&[0.0, 0.0]), 1.0), GenSphere::sphere(vector(&[1.0, 0.0]), 1.0)]),
        ),
    ]
}

/// `(name, case, contact angle)`; the angle is `None` when the family is
/// not an S-family.
pub fn run() -> Result<Vec<(&'static str, FamilyCase, Option<ContactAngle>)>> {
    let tol = Tolerance::default();
    let mut rows = Vec::new();
    for (name, f) in families() {
        let report = validate_s_family(&f, tol)?;
        if !report.is_s_family {
            rows.push((name, report.case, None));
            continue;
        }
        let cf = canonical_transform(&f, tol)?;
        let angle = match locus_sphere(&cf, tol)? {
            LocusResult::Sphere(s) => Some(contact_angle(&s)),
            _ => None,
        };
        rows.push((name, report.case, angle));
    }
    Ok(rows)
}

fn main() -> Result<()> {
    let tol = Tolerance::default();
    for (name, f) in families() {
        let report = validate_s_family(&f, tol)?;
        println!("{name}: S-family = {}, case {:?}", report.is_s_family, report.case);
        for v in &report.violations {
            println!("  condition ({}) fails: {}", v.condition, v.detail);
        }
        if !report.is_s_family {
            continue;
        }
        let cf = canonical_transform(&f, tol)?;
        println!("  chain of {} steps; canonical members:", cf.chain.len());
        for m in &cf.canonical_members {
            println!("    {}", serde_json::to_string(m).unwrap());
        }
        if let LocusResult::Sphere(s) = locus_sphere(&cf, tol)? {
            println!(
                "  locus: dimension {} sphere of radius {:.6}, contact angle {:?}",
                s.dim(),
                s.radius,
                contact_angle(&s)
            );
        }
    }
    Ok(())
}
