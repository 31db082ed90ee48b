//! Families of mutually tangent spheres and their kissing arrangements.

use serde::{Deserialize, Serialize};

use crate::canonicalize::Family;
use crate::codes::{kissing_number, SphericalCode};
use crate::correspondence::{arrangement_from_code, Arrangement, FamilyFrame, RotationParam};
use crate::error::{Error, Result};
use crate::inversive::{classify_pair, GenSphere, Inversion, Tolerance};
use crate::linalg::Vector;
use crate::locus::ContactAngle;

/// Agreement required between the computed contact angle and `psi_m`.
pub const SODDY_ANGLE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SoddyParams {
    pub m: usize,
    pub psi_m: f64,
    /// Locus radius, defined for `m >= 3`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_m: Option<f64>,
}

/// `psi_m = arccos(1/(m-1))` and `r_m = sqrt((2m-2)/(m-2))`.
pub fn soddy_params(m: usize) -> Result<SoddyParams> {
    if m < 2 {
        return Err(Error::BadM(m));
    }
    let mf = m as f64;
    let psi_m = (1.0 / (mf - 1.0)).acos();
    let r_m = (m >= 3).then(|| ((2.0 * mf - 2.0) / (mf - 2.0)).sqrt());
    if let Some(r) = r_m {
        let check = (1.0 - 2.0 / (r * r)).acos();
        debug_assert!((check - psi_m).abs() < 1e-12);
    }
    Ok(SoddyParams { m, psi_m, r_m })
}

/// One family of `m` pairwise externally tangent spheres in `R^n`.
///
/// Starts from the planes `x_n = 1`, `x_n = 3` and `m - 2` unit spheres
/// centered at `sqrt(2) e_j + 2 e_n`, then inverts about `2 e_n` with
/// `rho^2 = 2`. For `n = m = 3` this gives
/// `{(0,0,1),1}`, `{(0,0,3),1}`, `{(2 sqrt 2,0,2),2}`.
pub fn mutually_tangent_family(n: usize, m: usize) -> Result<Family> {
    if n < 2 || m < 3 || m >= n + 2 {
        return Err(Error::BadDims(format!("need 3 <= m < n + 2, got n = {n}, m = {m}")));
    }
    let mut members = Vec::with_capacity(m);
    let mut e_n = Vector::zeros(n);
    e_n[n - 1] = 1.0;
    members.push(GenSphere::hyperplane(e_n.clone(), 1.0));
    members.push(GenSphere::hyperplane(e_n.clone(), 3.0));
    for j in 0..m - 2 {
        let mut c = &e_n * 2.0;
        c[j] = 2f64.sqrt();
        members.push(GenSphere::sphere(c, 1.0));
    }
    let inv = Inversion::new(&e_n * 2.0, 2.0)?;
    Family::new(members.iter().map(|s| inv.map_sphere(s)).collect())
}

/// Whether every pair of members is tangent.
pub fn is_mutually_tangent(f: &Family, tol: Tolerance) -> bool {
    let ms = &f.members;
    (0..ms.len()).all(|i| (0..i).all(|j| matches!(classify_pair(&ms[i], &ms[j], tol), Ok(c) if c.is_tangent())))
}

/// Arrangement of `f` for the code `x`, after checking that the family's
/// contact angle is `psi_m`.
pub fn soddy_arrangement(f: &Family, x: &SphericalCode, tol: Tolerance) -> Result<Arrangement> {
    if !is_mutually_tangent(f, tol) {
        return Err(Error::NotMutuallyTangent);
    }
    let params = soddy_params(f.len())?;
    let frame = FamilyFrame::new(f, tol)?;
    let found = match frame.angle {
        ContactAngle::Finite { psi } => psi,
        ContactAngle::Solitary => std::f64::consts::PI,
    };
    if (found - params.psi_m).abs() > SODDY_ANGLE_TOL {
        return Err(Error::ContactAngleMismatch { expected: params.psi_m, found });
    }
    arrangement_from_code(f, x, &RotationParam::identity(frame.code_dim()), tol)
}

/// `S(n, m)` when it is a solved value of `A(n + 2 - m, psi_m)`.
pub fn cardinality_hint(n: usize, m: usize) -> Option<u64> {
    if m == n + 1 && n >= 2 {
        return Some(2);
    }
    if m == 3 && n >= 3 {
        return kissing_number(n - 1);
    }
    None
}
