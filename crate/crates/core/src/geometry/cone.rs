//! Pointed polyhedral cones and their polars.

use itertools::Itertools;
use microlp::{ComparisonOp, OptimizationDirection, Problem};

use super::linalg::{approx_eq, hyperplane_normal, is_finite, orthonormal_basis, Vector};
use super::polytope::{assemble_polytope, FacetTag, Halfspace, TruncatedPolytope};
use super::EPS_GEO;
use crate::error::{Error, Result};

/// A pointed, full-dimensional polyhedral cone `C` with apex at the origin.
///
/// Holds both descriptions: unit extreme rays and unit outer facet normals
/// `ν` with `C = {x : <x, ν> <= 0}`, plus a unit reference direction `w`
/// that is strictly positive on `C \ {o}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralCone {
    dim: usize,
    generators: Vec<Vector>,
    facet_normals: Vec<Vector>,
    w: Vector,
}

impl PolyhedralCone {
    pub fn new(generators: &[Vector]) -> Result<Self> {
        validate_cone(generators)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn facet_normals(&self) -> &[Vector] {
        &self.facet_normals
    }

    pub fn w(&self) -> &Vector {
        &self.w
    }

    pub fn polar(&self) -> PolyhedralCone {
        polar_cone(self)
    }

    /// Whether `u` is a unit vector in the interior of the polar cone.
    pub fn in_omega(&self, u: &Vector) -> Result<bool> {
        in_omega(self, u)
    }

    pub fn contains(&self, x: &Vector) -> bool {
        let scale = x.norm().max(1.0);
        self.facet_normals
            .iter()
            .all(|nu| nu.dot(x) <= EPS_GEO * scale)
    }

    /// `min -<g, u>` over unit generators `g` and the given directions; a
    /// lower bound for `-<x, u>` over unit `x` in the cone.
    pub fn angle_margin<'a, I>(&self, dirs: I) -> f64
    where
        I: IntoIterator<Item = &'a Vector>,
    {
        let mut a0 = f64::INFINITY;
        for u in dirs {
            for g in &self.generators {
                a0 = a0.min(-g.dot(u));
            }
        }
        a0
    }

    /// Halfspaces describing the cone itself.
    pub(crate) fn cone_halfspaces(&self) -> Vec<Halfspace> {
        self.facet_normals
            .iter()
            .map(|nu| Halfspace::tagged(nu.clone(), 0.0, FacetTag::Cone))
            .collect()
    }

    pub(crate) fn top_halfspace(&self, t: f64) -> Halfspace {
        Halfspace::tagged(self.w.clone(), t, FacetTag::Top)
    }

    /// The bounded piece `C_t = C ∩ {<x, w> <= t}`.
    pub fn truncate(&self, t: f64) -> Result<TruncatedPolytope> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::DegenerateInput(format!("truncation height {t}")));
        }
        let mut hs = self.cone_halfspaces();
        hs.push(self.top_halfspace(t));
        assemble_polytope(&hs, Some(t))
    }

    /// Vertices of the cross-section `C ∩ H_t`.
    pub fn section_vertices(&self, t: f64) -> Vec<Vector> {
        self.generators
            .iter()
            .map(|g| g * (t / g.dot(&self.w)))
            .collect()
    }
}

/// Validates generators and computes the dual description.
pub fn validate_cone(generators: &[Vector]) -> Result<PolyhedralCone> {
    let n = generators
        .first()
        .ok_or_else(|| Error::DegenerateInput("no generators".into()))?
        .len();
    if n < 2 {
        return Err(Error::DegenerateInput(
            "dimension must be at least 2".into(),
        ));
    }
    let mut unit: Vec<Vector> = Vec::new();
    for g in generators {
        if g.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.len(),
            });
        }
        let norm = g.norm();
        if !is_finite(g) || norm <= EPS_GEO {
            return Err(Error::DegenerateInput(
                "zero or non-finite generator".into(),
            ));
        }
        let g = g / norm;
        if !unit.iter().any(|h| approx_eq(h, &g, EPS_GEO)) {
            unit.push(g);
        }
    }

    let w = positive_direction(&unit)?;

    if orthonormal_basis(unit.iter().cloned(), EPS_GEO).len() < n {
        return Err(Error::NotFullDimensional);
    }

    let mut facet_normals: Vec<Vector> = Vec::new();
    for subset in unit.iter().combinations(n - 1) {
        let Some(nu) = hyperplane_normal(&subset, EPS_GEO) else {
            continue;
        };
        let dots: Vec<f64> = unit.iter().map(|g| g.dot(&nu)).collect();
        let oriented = if dots.iter().all(|&d| d <= EPS_GEO) {
            nu
        } else if dots.iter().all(|&d| d >= -EPS_GEO) {
            -nu
        } else {
            continue;
        };
        if !facet_normals
            .iter()
            .any(|f| approx_eq(f, &oriented, EPS_GEO))
        {
            facet_normals.push(oriented);
        }
    }

    // keep only extreme rays: tight on facets spanning an (n-1)-space
    let generators: Vec<Vector> = unit
        .into_iter()
        .filter(|g| {
            let tight = facet_normals
                .iter()
                .filter(|nu| nu.dot(g).abs() <= EPS_GEO)
                .cloned();
            orthonormal_basis(tight, EPS_GEO).len() >= n - 1
        })
        .collect();

    Ok(PolyhedralCone {
        dim: n,
        generators,
        facet_normals,
        w,
    })
}

/// Normalised sum of the unit generators when it is strictly positive on
/// all of them; otherwise the maximiser of the smallest generator product.
fn positive_direction(unit: &[Vector]) -> Result<Vector> {
    let sum = unit
        .iter()
        .fold(Vector::zeros(unit[0].len()), |acc, g| acc + g);
    let norm = sum.norm();
    if norm > EPS_GEO {
        let w = sum / norm;
        if unit.iter().all(|g| g.dot(&w) > EPS_GEO) {
            return Ok(w);
        }
    }

    let n = unit[0].len();
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let ws: Vec<_> = (0..n).map(|_| lp.add_var(0.0, (-1.0, 1.0))).collect();
    let s = lp.add_var(1.0, (f64::NEG_INFINITY, 1.0));
    for g in unit {
        let mut expr: Vec<_> = ws.iter().zip(g.iter()).map(|(v, c)| (*v, *c)).collect();
        expr.push((s, -1.0));
        lp.add_constraint(expr.as_slice(), ComparisonOp::Ge, 0.0);
    }
    let sol = lp.solve().map_err(|e| Error::Lp(e.to_string()))?;
    if sol[s] <= EPS_GEO {
        return Err(Error::NotPointed);
    }
    let w = Vector::from_iterator(n, ws.iter().map(|v| sol[*v]));
    let w = &w / w.norm();
    if unit.iter().all(|g| g.dot(&w) > EPS_GEO) {
        Ok(w)
    } else {
        Err(Error::NotPointed)
    }
}

/// The polar cone `C° = {x : <x, y> <= 0 for all y in C}`, generated by the
/// facet normals of `C`.
pub fn polar_cone(cone: &PolyhedralCone) -> PolyhedralCone {
    validate_cone(&cone.facet_normals)
        .expect("facet normals of a pointed full-dimensional cone generate a valid cone")
}

/// Membership in `Ω_C`: the unit vectors strictly negative on every generator.
pub fn in_omega(cone: &PolyhedralCone, u: &Vector) -> Result<bool> {
    if u.len() != cone.dim {
        return Err(Error::DimensionMismatch {
            expected: cone.dim,
            found: u.len(),
        });
    }
    let norm = u.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > EPS_GEO {
        return Err(Error::NotUnit(norm));
    }
    Ok(cone.generators.iter().all(|g| g.dot(u) < -EPS_GEO))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::linalg::vector;

    fn contains_approx(set: &[Vector], v: &Vector) -> bool {
        set.iter().any(|s| approx_eq(s, v, 1e-12))
    }

    #[test]
    fn quadrant() {
        let c = validate_cone(&[vector(&[1.0, 0.0]), vector(&[0.0, 1.0])]).unwrap();
        assert_eq!(c.facet_normals().len(), 2);
        assert!(contains_approx(c.facet_normals(), &vector(&[0.0, -1.0])));
        assert!(contains_approx(c.facet_normals(), &vector(&[-1.0, 0.0])));
        let r = 0.5f64.sqrt();
        assert!(approx_eq(c.w(), &vector(&[r, r]), 1e-15));
    }

    #[test]
    fn octant() {
        let c = validate_cone(&[
            vector(&[1.0, 0.0, 0.0]),
            vector(&[0.0, 1.0, 0.0]),
            vector(&[0.0, 0.0, 1.0]),
        ])
        .unwrap();
        assert_eq!(c.facet_normals().len(), 3);
        let r = 1.0 / 3f64.sqrt();
        assert!(approx_eq(c.w(), &vector(&[r, r, r]), 1e-15));
    }

    #[test]
    fn halfplane_is_not_pointed() {
        let err = validate_cone(&[vector(&[1.0, 0.0]), vector(&[-1.0, 0.0])]).unwrap_err();
        assert_eq!(err, Error::NotPointed);
    }

    #[test]
    fn zero_generator_is_degenerate() {
        let err = validate_cone(&[vector(&[1.0, 0.0]), vector(&[0.0, 0.0])]).unwrap_err();
        assert!(matches!(err, Error::DegenerateInput(_)));
    }

    #[test]
    fn flat_cone_is_not_full_dimensional() {
        let err = validate_cone(&[
            vector(&[1.0, 0.0, 0.0]),
            vector(&[0.0, 1.0, 0.0]),
            vector(&[1.0, 1.0, 0.0]),
        ])
        .unwrap_err();
        assert_eq!(err, Error::NotFullDimensional);
    }

    #[test]
    fn lp_fallback_finds_positive_direction() {
        // generator sum is nearly orthogonal to the lone generator on the right
        let gens = [
            vector(&[1.0, 0.05]),
            vector(&[-1.0, 1.0]),
            vector(&[-1.0, 0.99]),
            vector(&[-1.0, 0.98]),
        ];
        let c = validate_cone(&gens).unwrap();
        for g in c.generators() {
            assert!(g.dot(c.w()) > 0.0);
        }
        assert_eq!(c.generators().len(), 2);
    }

    #[test]
    fn interior_generators_are_dropped() {
        let c = validate_cone(&[
            vector(&[1.0, 0.0]),
            vector(&[1.0, 1.0]),
            vector(&[0.0, 1.0]),
        ])
        .unwrap();
        assert_eq!(c.generators().len(), 2);
    }

    #[test]
    fn polar_of_quadrant_is_nonpositive_quadrant() {
        let c = validate_cone(&[vector(&[1.0, 0.0]), vector(&[0.0, 1.0])]).unwrap();
        let p = polar_cone(&c);
        assert!(contains_approx(p.generators(), &vector(&[-1.0, 0.0])));
        assert!(contains_approx(p.generators(), &vector(&[0.0, -1.0])));
    }

    #[test]
    fn polar_of_octant_is_nonpositive_octant() {
        let c = validate_cone(&[
            vector(&[1.0, 0.0, 0.0]),
            vector(&[0.0, 1.0, 0.0]),
            vector(&[0.0, 0.0, 1.0]),
        ])
        .unwrap();
        let p = polar_cone(&c);
        assert_eq!(p.generators().len(), 3);
        for i in 0..3 {
            let mut e = Vector::zeros(3);
            e[i] = -1.0;
            assert!(contains_approx(p.generators(), &e));
        }
    }

    #[test]
    fn polar_of_skew_cone() {
        let c = validate_cone(&[vector(&[2.0, 1.0]), vector(&[1.0, 2.0])]).unwrap();
        let p = polar_cone(&c);
        let s5 = 5f64.sqrt();
        assert_eq!(p.generators().len(), 2);
        assert!(contains_approx(
            p.generators(),
            &(vector(&[1.0, -2.0]) / s5)
        ));
        assert!(contains_approx(
            p.generators(),
            &(vector(&[-2.0, 1.0]) / s5)
        ));
        // every polar generator is nonpositive on the original cone
        for y in p.generators() {
            for g in c.generators() {
                assert!(y.dot(g) <= 1e-12);
            }
        }
    }

    #[test]
    fn omega_membership() {
        let c = validate_cone(&[vector(&[1.0, 0.0]), vector(&[0.0, 1.0])]).unwrap();
        let r = 0.5f64.sqrt();
        assert!(in_omega(&c, &vector(&[-r, -r])).unwrap());
        assert!(!in_omega(&c, &vector(&[0.0, -1.0])).unwrap());
        assert!(!in_omega(&c, &vector(&[1.0, 0.0])).unwrap());
        assert!(matches!(
            in_omega(&c, &vector(&[-1.0, -1.0])),
            Err(Error::NotUnit(_))
        ));
    }

    #[test]
    fn truncated_quadrant_area() {
        let c = validate_cone(&[vector(&[1.0, 0.0]), vector(&[0.0, 1.0])]).unwrap();
        let p = c.truncate(1.0).unwrap();
        // triangle (0,0), (√2,0), (0,√2)
        assert!((p.volume() - 1.0).abs() < 1e-12);
    }
}
