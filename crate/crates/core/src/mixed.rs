//! Mixed volumes and mixed area measures by polarization of co-sums.

use crate::body::CFullBody;
use crate::error::{Error, Result};
use crate::geometry::{linalg::factorial, EPS_GEO};
use crate::measure::DiscreteMeasure;

fn check_same_cone(bodies: &[CFullBody]) -> Result<()> {
    if let Some((first, rest)) = bodies.split_first() {
        if rest.iter().any(|b| !first.same_cone(b)) {
            return Err(Error::ConeMismatch);
        }
    }
    Ok(())
}

/// Co-sums over every nonempty subset, indexed by bitmask. Entry `mask`
/// extends the entry without its highest bit, so each needs one co-sum.
fn subset_cosums(bodies: &[CFullBody]) -> Result<Vec<Option<CFullBody>>> {
    let m = bodies.len();
    let mut sums: Vec<Option<CFullBody>> = vec![None; 1 << m];
    for mask in 1usize..(1 << m) {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        let body = match &sums[rest] {
            None => bodies[top].clone(),
            Some(prev) => prev.co_sum(&bodies[top])?,
        };
        sums[mask] = Some(body);
    }
    Ok(sums)
}

fn sign(len: usize, size: usize) -> f64 {
    if (len - size).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `V̄(A_1, …, A_n) = (1/n!) Σ_{∅≠S⊆[n]} (-1)^{n-|S|} V_n(⊕_{i∈S} A_i)`.
pub fn mixed_volume(bodies: &[CFullBody]) -> Result<f64> {
    let n = bodies
        .first()
        .ok_or(Error::WrongArity {
            expected: 2,
            found: 0,
        })?
        .dim();
    if bodies.len() != n {
        return Err(Error::WrongArity {
            expected: n,
            found: bodies.len(),
        });
    }
    check_same_cone(bodies)?;
    let sums = subset_cosums(bodies)?;
    let total: f64 = sums
        .iter()
        .enumerate()
        .skip(1)
        .map(|(mask, b)| {
            let size = mask.count_ones() as usize;
            sign(n, size) * b.as_ref().expect("filled").coconvex_volume()
        })
        .sum();
    Ok(total / factorial(n))
}

/// Polarized surface area measure of `n - 1` bodies; the empty co-sum
/// contributes nothing.
pub fn mixed_area_measure(bodies: &[CFullBody]) -> Result<DiscreteMeasure> {
    let m = bodies.len();
    let n = bodies
        .first()
        .ok_or(Error::WrongArity {
            expected: 1,
            found: 0,
        })?
        .dim();
    if m + 1 != n {
        return Err(Error::WrongArity {
            expected: n - 1,
            found: m,
        });
    }
    check_same_cone(bodies)?;
    let sums = subset_cosums(bodies)?;
    let norm = factorial(m);
    let mut contributions = Vec::new();
    let mut scale: f64 = 0.0;
    for (mask, b) in sums.iter().enumerate().skip(1) {
        let s = sign(m, mask.count_ones() as usize) / norm;
        for atom in b.as_ref().expect("filled").surface_area_measure().atoms() {
            scale = scale.max(atom.mass.abs());
            contributions.push((atom.u.clone(), s * atom.mass));
        }
    }
    Ok(DiscreteMeasure::from_signed(
        contributions,
        EPS_GEO * scale.max(1.0),
    ))
}

/// `(1/n) ∫ h̄(A_1, u) dS̄(A_2, …, A_n)(u)`, the integral representation of
/// the mixed volume.
pub fn mixed_volume_by_integral(bodies: &[CFullBody]) -> Result<f64> {
    let (first, rest) = bodies.split_first().ok_or(Error::WrongArity {
        expected: 2,
        found: 0,
    })?;
    let n = first.dim();
    if bodies.len() != n {
        return Err(Error::WrongArity {
            expected: n,
            found: bodies.len(),
        });
    }
    check_same_cone(bodies)?;
    let measure = mixed_area_measure(rest)?;
    let mut total = 0.0;
    for atom in measure.atoms() {
        total += first.coconvex_support(&atom.u)? * atom.mass;
    }
    Ok(total / n as f64)
}
