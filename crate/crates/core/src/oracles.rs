//! Independent checks that share no formulas with the main code paths:
//! Monte-Carlo volume, cone-volume masses from origin simplices, and
//! central finite differences of the volume functional.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::body::CFullBody;
use crate::error::{Error, Result};
use crate::geometry::linalg::origin_simplex_volume;
use crate::geometry::{FacetTag, PolyhedralCone, Vector, EPS_GEO};
use crate::measure::{Atom, DiscreteMeasure};
use crate::solver::volume_functional;

/// Number of independent sample streams; fixed so results do not depend on
/// the thread count.
pub const MC_SHARDS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MCEstimate {
    pub estimate: f64,
    /// `box_volume · sqrt(p (1 - p) / N)` for hit fraction `p`.
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Rejection sampling of `C \ K` inside the bounding box of `C_t`.
pub fn mc_volume(body: &CFullBody, samples: u64, seed: u64) -> Result<MCEstimate> {
    if samples == 0 {
        return Err(Error::InvalidConfig("samples must be at least 1".into()));
    }
    let cone_part = body.cone().truncate(body.min_enclosing_t())?;
    let n = body.dim();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for v in &cone_part.vertices {
        for k in 0..n {
            lo[k] = lo[k].min(v[k]);
            hi[k] = hi[k].max(v[k]);
        }
    }
    let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();

    let hits: Vec<u64> = (0..MC_SHARDS)
        .into_par_iter()
        .map(|shard| {
            let quota = samples / MC_SHARDS + u64::from(shard < samples % MC_SHARDS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let mut x = Vector::zeros(n);
            let mut count = 0;
            for _ in 0..quota {
                for k in 0..n {
                    x[k] = rng.random_range(lo[k]..hi[k]);
                }
                if in_coconvex(body, &x) {
                    count += 1;
                }
            }
            count
        })
        .collect();
    let hit_count: u64 = hits.iter().sum();

    let p = hit_count as f64 / samples as f64;
    Ok(MCEstimate {
        estimate: p * box_volume,
        stderr: box_volume * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        seed,
    })
}

fn in_coconvex(body: &CFullBody, x: &Vector) -> bool {
    body.cone()
        .facet_normals()
        .iter()
        .all(|nu| nu.dot(x) <= 0.0)
        && body.constraints().iter().any(|c| x.dot(&c.u) > -c.f)
}

/// Cone-volume masses as sums of simplices with apex `o` over a
/// triangulation of each facet of `K` with normal in `Ω_C`.
pub fn brute_cone_volume(body: &CFullBody) -> DiscreteMeasure {
    let p = body.truncation();
    let offset = body.cone().facet_normals().len();
    let atoms = p
        .facets
        .iter()
        .enumerate()
        .filter(|(_, f)| f.tag == FacetTag::Omega && f.area > EPS_GEO)
        .map(|(i, f)| {
            let mass = p
                .triangulate_facet(i)
                .iter()
                .map(|simplex| {
                    let pts: Vec<&Vector> = simplex.iter().map(|&k| &p.vertices[k]).collect();
                    origin_simplex_volume(&pts)
                })
                .sum();
            Atom::new(body.constraints()[f.source - offset].u.clone(), mass)
        })
        .collect();
    DiscreteMeasure::from_atoms_unchecked(atoms)
}

/// Central differences `(V(f + h e_i) - V(f - h e_i)) / 2h` with one step
/// `h` for every coordinate.
pub fn fd_gradient(
    cone: &Arc<PolyhedralCone>,
    dirs: &[Vector],
    f: &[f64],
    step: f64,
) -> Result<Vec<f64>> {
    fd_gradient_steps(cone, dirs, f, &vec![step; f.len()])
}

/// As [`fd_gradient`], with a separate step per coordinate.
pub fn fd_gradient_steps(
    cone: &Arc<PolyhedralCone>,
    dirs: &[Vector],
    f: &[f64],
    steps: &[f64],
) -> Result<Vec<f64>> {
    if steps.len() != f.len() {
        return Err(Error::LengthMismatch(f.len(), steps.len()));
    }
    let mut grad = Vec::with_capacity(f.len());
    for (index, (&offset, &step)) in f.iter().zip(steps).enumerate() {
        if step.is_nan() || step <= 0.0 || offset - step <= 0.0 {
            return Err(Error::StepTooLarge {
                index,
                step,
                offset,
            });
        }
        let mut plus = f.to_vec();
        plus[index] += step;
        let mut minus = f.to_vec();
        minus[index] -= step;
        let d = volume_functional(cone, dirs, &plus)? - volume_functional(cone, dirs, &minus)?;
        grad.push(d / (2.0 * step));
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::wulff_shape;
    use crate::geometry::{validate_cone, vector};

    fn quadrant() -> Arc<PolyhedralCone> {
        Arc::new(validate_cone(&[vector(&[1.0, 0.0]), vector(&[0.0, 1.0])]).unwrap())
    }

    fn u_star() -> Vector {
        vector(&[-1.0, -1.0]) / std::f64::consts::SQRT_2
    }

    fn two_dirs() -> Vec<Vector> {
        let s5 = 5f64.sqrt();
        vec![vector(&[-2.0, -1.0]) / s5, vector(&[-1.0, -2.0]) / s5]
    }

    #[test]
    fn brute_masses() {
        let b = wulff_shape(&quadrant(), &[u_star()], &[1.0]).unwrap();
        let m = brute_cone_volume(&b);
        assert_eq!(m.len(), 1);
        assert!((m.masses()[0] - 1.0).abs() < 1e-12);

        let b = wulff_shape(&quadrant(), &two_dirs(), &[1.0, 1.0]).unwrap();
        for mass in brute_cone_volume(&b).masses() {
            assert!((mass - 5.0 / 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn finite_differences() {
        let c = quadrant();
        let g = fd_gradient(&c, &[u_star()], &[1.0], 1e-5).unwrap();
        assert!((g[0] - 2.0).abs() < 1e-8);
        let g = fd_gradient(&c, &two_dirs(), &[1.0, 1.0], 1e-5).unwrap();
        assert!(g.iter().all(|g| (g - 5.0 / 3.0).abs() < 1e-8));
        assert!(matches!(
            fd_gradient(&c, &[u_star()], &[1.0], 1.0),
            Err(Error::StepTooLarge { index: 0, .. })
        ));
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let b = wulff_shape(&quadrant(), &[u_star()], &[1.0]).unwrap();
        let a = mc_volume(&b, 100_000, 11).unwrap();
        assert_eq!(a, mc_volume(&b, 100_000, 11).unwrap());
        assert!((a.estimate - 1.0).abs() <= 4.0 * a.stderr);
        let one = mc_volume(&b, 1, 3).unwrap();
        // box of C_t at t = 2√2 is [0, 4]²
        assert!(one.estimate == 0.0 || (one.estimate - 16.0).abs() < 1e-12);
    }
}
