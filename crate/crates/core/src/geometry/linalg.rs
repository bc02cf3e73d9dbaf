//! Small dense linear-algebra helpers shared by the kernel.

use nalgebra::{DMatrix, DVector};

/// A point or direction in the ambient space.
pub type Vector = DVector<f64>;

/// Builds a [`Vector`] from a coordinate slice.
pub fn vector(coords: &[f64]) -> Vector {
    DVector::from_column_slice(coords)
}

pub fn is_finite(v: &Vector) -> bool {
    v.iter().all(|x| x.is_finite())
}

pub fn approx_eq(a: &Vector, b: &Vector, tol: f64) -> bool {
    a.len() == b.len() && (a - b).amax() <= tol
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// Modified Gram-Schmidt with one reorthogonalisation pass. Vectors whose
/// residual norm falls below `tol` are treated as dependent and skipped.
pub fn orthonormal_basis<I>(vectors: I, tol: f64) -> Vec<Vector>
where
    I: IntoIterator<Item = Vector>,
{
    let mut basis: Vec<Vector> = Vec::new();
    for mut v in vectors {
        for _ in 0..2 {
            for b in &basis {
                let c = v.dot(b);
                v.axpy(-c, b, 1.0);
            }
        }
        let norm = v.norm();
        if norm > tol {
            basis.push(v / norm);
        }
    }
    basis
}

/// Dimension of the affine hull of `points`, or `None` for an empty set.
pub fn affine_rank(points: &[&Vector], tol: f64) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let basis = orthonormal_basis(rest.iter().map(|p| *p - *first), tol);
    Some(basis.len())
}

/// Unit normal of the hyperplane spanned by `dirs` (exactly `n - 1` vectors in
/// `R^n`), computed from signed cofactors. Returns `None` if the directions are
/// dependent.
pub fn hyperplane_normal(dirs: &[&Vector], tol: f64) -> Option<Vector> {
    let n = dirs.first()?.len();
    if dirs.len() + 1 != n {
        return None;
    }
    // normalise rows so the dependence test is scale free
    let rows: Vec<Vector> = dirs
        .iter()
        .map(|d| {
            let nrm = d.norm();
            if nrm > 0.0 {
                *d / nrm
            } else {
                (*d).clone()
            }
        })
        .collect();
    let mut normal = Vector::zeros(n);
    for col in 0..n {
        let minor = DMatrix::from_fn(n - 1, n - 1, |r, c| {
            let cc = if c < col { c } else { c + 1 };
            rows[r][cc]
        });
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        normal[col] = sign * minor.determinant();
    }
    let norm = normal.norm();
    if norm <= tol {
        None
    } else {
        Some(normal / norm)
    }
}

/// k-dimensional volume of the simplex with the given `k + 1` vertices, via
/// the Gram determinant of its edge vectors.
pub fn simplex_volume(points: &[&Vector]) -> f64 {
    let Some((first, rest)) = points.split_first() else {
        return 0.0;
    };
    let k = rest.len();
    if k == 0 {
        return 1.0;
    }
    let n = first.len();
    let edges = DMatrix::from_fn(n, k, |r, c| rest[c][r] - first[r]);
    let gram = edges.transpose() * &edges;
    gram.determinant().max(0.0).sqrt() / factorial(k)
}

/// Volume of the n-simplex with one vertex at the origin and the remaining
/// `n` vertices given, via a plain determinant.
pub fn origin_simplex_volume(points: &[&Vector]) -> f64 {
    let n = points.len();
    let m = DMatrix::from_fn(n, n, |r, c| points[c][r]);
    m.determinant().abs() / factorial(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cofactor_normal_is_orthogonal() {
        let a = vector(&[1.0, 2.0, 0.5]);
        let b = vector(&[-1.0, 0.0, 3.0]);
        let nrm = hyperplane_normal(&[&a, &b], 1e-12).unwrap();
        assert!(nrm.dot(&a).abs() < 1e-12);
        assert!(nrm.dot(&b).abs() < 1e-12);
        assert!((nrm.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dependent_directions_have_no_normal() {
        let a = vector(&[1.0, 2.0, 0.5]);
        let b = vector(&[2.0, 4.0, 1.0]);
        assert!(hyperplane_normal(&[&a, &b], 1e-12).is_none());
    }

    #[test]
    fn gram_volume_of_right_triangle_in_3d() {
        let o = vector(&[0.0, 0.0, 1.0]);
        let a = vector(&[2.0, 0.0, 1.0]);
        let b = vector(&[0.0, 3.0, 1.0]);
        assert!((simplex_volume(&[&o, &a, &b]) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn affine_rank_of_collinear_points() {
        let p: Vec<Vector> = (0..4)
            .map(|i| vector(&[i as f64, 2.0 * i as f64]))
            .collect();
        let refs: Vec<&Vector> = p.iter().collect();
        assert_eq!(affine_rank(&refs, 1e-9), Some(1));
    }
}
