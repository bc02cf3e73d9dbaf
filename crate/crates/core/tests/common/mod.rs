//! Seeded random cones and bodies shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::Arc;

use coconvex::geometry::{validate_cone, vector, PolyhedralCone, Vector};
use coconvex::{wulff_shape, CFullBody};
use rand::Rng;

pub fn quadrant() -> Arc<PolyhedralCone> {
    Arc::new(validate_cone(&[vector(&[1.0, 0.0]), vector(&[0.0, 1.0])]).unwrap())
}

pub fn octant() -> Arc<PolyhedralCone> {
    Arc::new(
        validate_cone(&[
            vector(&[1.0, 0.0, 0.0]),
            vector(&[0.0, 1.0, 0.0]),
            vector(&[0.0, 0.0, 1.0]),
        ])
        .unwrap(),
    )
}

pub fn u_star() -> Vector {
    vector(&[-1.0, -1.0]) / std::f64::consts::SQRT_2
}

pub fn u1() -> Vector {
    vector(&[-2.0, -1.0]) / 5f64.sqrt()
}

pub fn u2() -> Vector {
    vector(&[-1.0, -2.0]) / 5f64.sqrt()
}

pub fn octant_u() -> Vector {
    -vector(&[1.0, 1.0, 1.0]) / 3f64.sqrt()
}

/// The three reference bodies with their exact coconvex volumes.
pub fn golden() -> Vec<(&'static str, CFullBody, f64)> {
    vec![
        (
            "quadrant single constraint",
            wulff_shape(&quadrant(), &[u_star()], &[1.0]).unwrap(),
            1.0,
        ),
        (
            "octant single constraint",
            wulff_shape(&octant(), &[octant_u()], &[1.0]).unwrap(),
            3f64.sqrt() / 2.0,
        ),
        (
            "quadrant two constraints",
            wulff_shape(&quadrant(), &[u1(), u2()], &[1.0, 1.0]).unwrap(),
            5.0 / 3.0,
        ),
    ]
}

/// A pointed cone in the plane (opening 0.5 to 2.5 rad) or in space (3 to 5
/// generators around a random axis).
pub fn random_cone<R: Rng>(rng: &mut R, n: usize) -> Arc<PolyhedralCone> {
    let gens: Vec<Vector> = match n {
        2 => {
            let a = rng.random_range(0.0..2.0 * PI);
            let open = rng.random_range(0.5..2.5);
            vec![
                vector(&[a.cos(), a.sin()]),
                vector(&[(a + open).cos(), (a + open).sin()]),
            ]
        }
        3 => {
            let axis = random_unit(rng, 3);
            let (e1, e2) = complement(&axis);
            let k = rng.random_range(3..=5);
            let tilt = rng.random_range(0.4..1.0f64);
            let phase = rng.random_range(0.0..2.0 * PI);
            (0..k)
                .map(|j| {
                    let phi =
                        phase + 2.0 * PI * (j as f64 + rng.random_range(-0.2..0.2)) / k as f64;
                    &axis * tilt.cos() + (&e1 * phi.cos() + &e2 * phi.sin()) * tilt.sin()
                })
                .collect()
        }
        _ => unimplemented!("random cones are drawn in two or three dimensions"),
    };
    Arc::new(validate_cone(&gens).unwrap())
}

fn random_unit<R: Rng>(rng: &mut R, n: usize) -> Vector {
    loop {
        let v = Vector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let norm = v.norm();
        if norm > 0.1 && norm <= 1.0 {
            return v / norm;
        }
    }
}

fn complement(axis: &Vector) -> (Vector, Vector) {
    let pick = if axis[0].abs() < 0.9 {
        vector(&[1.0, 0.0, 0.0])
    } else {
        vector(&[0.0, 1.0, 0.0])
    };
    let e1 = (&pick - axis * axis.dot(&pick)).normalize();
    let e2 = axis.cross(&e1);
    (e1, e2)
}

/// A direction well inside `Ω_C`: a positive combination of facet normals.
pub fn random_direction<R: Rng>(rng: &mut R, cone: &PolyhedralCone) -> Vector {
    let mut u = Vector::zeros(cone.dim());
    for nu in cone.facet_normals() {
        u += nu * rng.random_range(0.2..1.0);
    }
    u.normalize()
}

/// A canonical body with `1..=max_constraints` drawn constraints whose
/// facets all carry at least a `1e-3` share of the surface area.
pub fn random_body<R: Rng>(
    rng: &mut R,
    cone: &Arc<PolyhedralCone>,
    max_constraints: usize,
) -> CFullBody {
    loop {
        let m = rng.random_range(1..=max_constraints);
        let dirs: Vec<Vector> = (0..m).map(|_| random_direction(rng, cone)).collect();
        let f: Vec<f64> = (0..m).map(|_| rng.random_range(0.5..1.5)).collect();
        let Ok(body) = wulff_shape(cone, &dirs, &f) else {
            continue;
        };
        let Ok(body) = body.canonicalize() else {
            continue;
        };
        if well_shaped(&body) {
            return body;
        }
    }
}

pub fn well_shaped(body: &CFullBody) -> bool {
    let areas = body.facet_areas();
    let total: f64 = areas.iter().sum();
    areas.iter().all(|&a| a >= 1e-3 * total)
}

/// The same body with one offset raised by `factor`, re-canonicalised.
pub fn perturb(body: &CFullBody, index: usize, factor: f64) -> CFullBody {
    let mut f = body.offsets();
    f[index] *= factor;
    wulff_shape(body.cone(), &body.directions(), &f)
        .unwrap()
        .canonicalize()
        .unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
