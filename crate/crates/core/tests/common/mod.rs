//! Random geometry shared by the property and acceptance suites.

#![allow(dead_code)]

use kissing::canonicalize::Family;
use kissing::inversive::{GenSphere, Inversion, Similarity, Step, TransformChain};
use kissing::linalg::{Matrix, Vector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut StdRng, n: usize) -> Vector {
    Vector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal))
}

pub fn unit(rng: &mut StdRng, n: usize) -> Vector {
    loop {
        let v = gaussian(rng, n);
        if v.norm() > 1e-3 {
            return v.normalize();
        }
    }
}

/// Haar-random element of SO(d).
pub fn rotation(rng: &mut StdRng, d: usize) -> Matrix {
    let g = Matrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            for i in 0..d {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    if q.determinant() < 0.0 {
        for i in 0..d {
            q[(i, 0)] = -q[(i, 0)];
        }
    }
    q
}

/// Inversion about a random center followed by a random similarity, with
/// the center kept at least `clearance` away from every given sphere.
pub fn mobius(rng: &mut StdRng, n: usize, avoid: &[GenSphere], clearance: f64) -> TransformChain {
    let center = loop {
        let c = gaussian(rng, n) * 3.0;
        let clear = avoid.iter().all(|s| match s {
            GenSphere::Sphere { center, radius } => ((&c - center).norm() - radius).abs() > clearance,
            GenSphere::Hyperplane { normal, offset } => (normal.dot(&c) - offset).abs() > clearance,
        });
        if clear {
            break c;
        }
    };
    let inv = Inversion::new(center, rng.gen_range(0.5..4.0)).unwrap();
    let sim = Similarity::new(rng.gen_range(0.3..3.0), rotation(rng, n), gaussian(rng, n)).unwrap();
    TransformChain::new(vec![Step::Inversion(inv), Step::Similarity(sim)])
}

/// Radius of the locus sphere whose contact angle is `psi`.
pub fn locus_radius_for(psi: f64) -> f64 {
    1.0 / (psi / 2.0).sin()
}

/// An S-family in dimension `d` (two members) or `d + 1` (three members)
/// whose contact angle is `psi`, moved by a random conformal map.
pub fn family_with_angle(rng: &mut StdRng, d: usize, psi: f64) -> Family {
    let r = locus_radius_for(psi);
    let members = if rng.gen_bool(0.5) {
        let c = Vector::zeros(d);
        vec![GenSphere::sphere(c.clone(), r - 1.0), GenSphere::sphere(c, r + 1.0)]
    } else {
        // slab x_n in [-1, 1]; the third sphere may cross only the top plane,
        // and its grown copy cuts the midplane in a sphere of radius r
        let n = d + 1;
        let mut e = Vector::zeros(n);
        e[n - 1] = 1.0;
        let mut c = gaussian(rng, n);
        let rho = if r < 1.5 {
            c[n - 1] = 0.0;
            r - 1.0
        } else {
            let h = (r * r - 2.25) / 3.0;
            c[n - 1] = h;
            h + 0.5
        };
        vec![GenSphere::hyperplane(e.clone(), -1.0), GenSphere::hyperplane(e, 1.0), GenSphere::sphere(c, rho)]
    };
    let n = members[0].dim();
    let chain = mobius(rng, n, &members, 0.2);
    Family::new(members.iter().map(|s| chain.map_sphere(s)).collect()).unwrap()
}

/// Three mutually externally tangent spheres in R^3 with radii in
/// `[0.2, 5]`, in a random pose.
pub fn tangent_triple(rng: &mut StdRng) -> Family {
    let r: Vec<f64> = (0..3).map(|_| rng.gen_range(0.2..5.0)).collect();
    let (a, b, c) = (r[0] + r[1], r[0] + r[2], r[1] + r[2]);
    // c1 at the origin, c2 on the x axis, c3 in the xy plane
    let x = (a * a + b * b - c * c) / (2.0 * a);
    let y = (b * b - x * x).max(0.0).sqrt();
    let q = rotation(rng, 3);
    let t = gaussian(rng, 3) * 5.0;
    let place = |p: [f64; 3]| &q * Vector::from_column_slice(&p) + &t;
    Family::new(vec![
        GenSphere::sphere(place([0.0, 0.0, 0.0]), r[0]),
        GenSphere::sphere(place([a, 0.0, 0.0]), r[1]),
        GenSphere::sphere(place([x, y, 0.0]), r[2]),
    ])
    .unwrap()
}

/// A tangent pair in R^n: external, internal, or sphere against plane.
pub fn tangent_pair(rng: &mut StdRng, n: usize) -> (GenSphere, GenSphere) {
    let c1 = gaussian(rng, n) * 2.0;
    let r1 = rng.gen_range(0.3..3.0);
    let u = unit(rng, n);
    let r2 = rng.gen_range(0.3..3.0);
    match rng.gen_range(0..3) {
        0 => (GenSphere::sphere(c1.clone(), r1), GenSphere::sphere(&c1 + &u * (r1 + r2), r2)),
        1 => {
            let big = r1 + r2;
            (GenSphere::sphere(c1.clone(), big), GenSphere::sphere(&c1 + &u * (big - r2), r2))
        }
        _ => {
            let touch = &c1 + &u * r1;
            (GenSphere::sphere(c1, r1), GenSphere::hyperplane(u.clone(), u.dot(&touch)))
        }
    }
}

/// Up to `max` points in R^k pairwise at least 2 apart.
pub fn slab_centers(rng: &mut StdRng, k: usize, max: usize) -> Vec<Vector> {
    let target = rng.gen_range(1..=max);
    let mut out: Vec<Vector> = Vec::new();
    let mut tries = 0;
    while out.len() < target && tries < 2000 {
        tries += 1;
        let p = Vector::from_fn(k, |_, _| rng.gen_range(-6.0..6.0));
        if out.iter().all(|q| (q - &p).norm() >= 2.0) {
            out.push(p);
        }
    }
    out
}
