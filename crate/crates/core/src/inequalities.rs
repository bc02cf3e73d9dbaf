//! Numerical checks of the complemented Brunn-Minkowski inequality and of
//! Minkowski's first inequality for coconvex sets, with equality detection.

use crate::body::CFullBody;
use crate::error::{Error, Result};
use crate::geometry::{linalg::approx_eq, EPS_GEO};

/// Tolerances relative to the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `holds` accepts `slack >= -ineq · rhs`.
    pub ineq: f64,
    /// `equality` fires when `|slack| <= eq · rhs`.
    pub eq: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            ineq: 1e-9,
            eq: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityVerdict {
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    pub holds: bool,
    pub equality: bool,
    /// Absolute equality threshold actually applied.
    pub tol_eq: f64,
    /// Whether the two bodies are homothetic, decided from their Wulff data.
    pub homothetic: bool,
}

impl InequalityVerdict {
    fn new(lhs: f64, rhs: f64, tol: Tolerances, homothetic: bool) -> Self {
        let slack = rhs - lhs;
        let tol_ineq = tol.ineq * rhs.abs();
        let tol_eq = tol.eq * rhs.abs();
        let holds = slack >= -tol_ineq;
        Self {
            lhs,
            rhs,
            slack,
            holds,
            equality: holds && slack.abs() <= tol_eq,
            tol_eq,
            homothetic,
        }
    }
}

/// `V_n((1-λ)A_0 ⊕ λA_1)^{1/n} <= (1-λ)V_n(A_0)^{1/n} + λV_n(A_1)^{1/n}`.
pub fn bm_check(
    a0: &CFullBody,
    a1: &CFullBody,
    lambda: f64,
    tol: Tolerances,
) -> Result<InequalityVerdict> {
    if !a0.same_cone(a1) {
        return Err(Error::ConeMismatch);
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let n = a0.dim() as f64;
    let mix = a0.scale(1.0 - lambda)?.co_sum(&a1.scale(lambda)?)?;
    let lhs = mix.coconvex_volume().powf(1.0 / n);
    let rhs = (1.0 - lambda) * a0.coconvex_volume().powf(1.0 / n)
        + lambda * a1.coconvex_volume().powf(1.0 / n);
    Ok(InequalityVerdict::new(
        lhs,
        rhs,
        tol,
        homothety_factor(a0, a1, tol.eq)?.is_some(),
    ))
}

/// `V̄(A_0, …, A_0, A_1)^n <= V_n(A_0)^{n-1} V_n(A_1)`, with the mixed volume
/// evaluated as `(1/n) ∫ h̄(A_1, ·) dS_{n-1}(A_0, ·)`.
pub fn minkowski_first_check(
    a0: &CFullBody,
    a1: &CFullBody,
    tol: Tolerances,
) -> Result<InequalityVerdict> {
    if !a0.same_cone(a1) {
        return Err(Error::ConeMismatch);
    }
    let n = a0.dim();
    let mut mixed = 0.0;
    for atom in a0.surface_area_measure().atoms() {
        mixed += a1.coconvex_support(&atom.u)? * atom.mass;
    }
    mixed /= n as f64;
    let v0 = a0.coconvex_volume();
    let lhs = mixed.powi(n as i32);
    let rhs = v0.powi(n as i32 - 1) * a1.coconvex_volume();
    Ok(InequalityVerdict::new(
        lhs,
        rhs,
        tol,
        homothety_factor(a0, a1, tol.eq)?.is_some(),
    ))
}

/// Returns `α` with `A_0 = α A_1` when the canonical Wulff data agree after
/// scaling by `α = (V_n(A_0)/V_n(A_1))^{1/n}` (offsets to relative `rel_tol`).
pub fn homothety_factor(a0: &CFullBody, a1: &CFullBody, rel_tol: f64) -> Result<Option<f64>> {
    if !a0.same_cone(a1) {
        return Err(Error::ConeMismatch);
    }
    let n = a0.dim() as f64;
    let alpha = (a0.coconvex_volume() / a1.coconvex_volume()).powf(1.0 / n);
    let c0 = a0.canonicalize()?;
    let c1 = a1.scale(alpha)?.canonicalize()?;
    if c0.constraints().len() != c1.constraints().len() {
        return Ok(None);
    }
    let matches = c0.constraints().iter().all(|c| {
        c1.constraints()
            .iter()
            .find(|d| approx_eq(&c.u, &d.u, EPS_GEO))
            .is_some_and(|d| (c.f - d.f).abs() <= rel_tol * c.f.max(d.f))
    });
    Ok(matches.then_some(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::wulff_shape;
    use crate::geometry::{validate_cone, vector, PolyhedralCone};
    use std::sync::Arc;

    fn quadrant() -> Arc<PolyhedralCone> {
        Arc::new(validate_cone(&[vector(&[1.0, 0.0]), vector(&[0.0, 1.0])]).unwrap())
    }

    fn single() -> CFullBody {
        let u = vector(&[-1.0, -1.0]) / std::f64::consts::SQRT_2;
        wulff_shape(&quadrant(), &[u], &[1.0]).unwrap()
    }

    fn two_constraint() -> CFullBody {
        let s5 = 5f64.sqrt();
        wulff_shape(
            &quadrant(),
            &[vector(&[-2.0, -1.0]) / s5, vector(&[-1.0, -2.0]) / s5],
            &[1.0, 1.0],
        )
        .unwrap()
    }

    #[test]
    fn identical_bodies_give_equality() {
        let v = bm_check(&single(), &single(), 0.5, Tolerances::default()).unwrap();
        assert!(v.holds && v.equality && v.homothetic);
        assert!((v.lhs - 1.0).abs() < 1e-12 && (v.rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn homothetic_pair_gives_equality() {
        let a = two_constraint();
        let b = a.scale(3.0).unwrap();
        let v = bm_check(&a, &b, 0.25, Tolerances::default()).unwrap();
        assert!(v.holds && v.equality && v.homothetic);
        let m = minkowski_first_check(&a, &b, Tolerances::default()).unwrap();
        assert!(m.holds && m.equality);
        let f = homothety_factor(&b, &a, 1e-9).unwrap().unwrap();
        assert!((f - 3.0).abs() < 1e-12);
    }

    #[test]
    fn non_homothetic_pair_is_strict() {
        let v = bm_check(&single(), &two_constraint(), 0.5, Tolerances::default()).unwrap();
        assert!(v.holds && !v.equality && !v.homothetic);
        assert!(v.slack > 0.0);
        let m = minkowski_first_check(&single(), &two_constraint(), Tolerances::default()).unwrap();
        assert!(m.holds && !m.equality);
    }

    #[test]
    fn lambda_must_be_interior() {
        for l in [0.0, 1.0, -0.1, f64::NAN] {
            assert!(matches!(
                bm_check(&single(), &single(), l, Tolerances::default()),
                Err(Error::LambdaOutOfRange(_))
            ));
        }
    }
}
