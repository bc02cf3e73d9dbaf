//! C-full bodies given as coconvex Wulff shapes, and the operations of the
//! coconvex calculus on them.
//!
//! A body stores its Wulff data `(u_i, f_i)` over a fixed cone `C` and denotes
//!
//! ```text
//! K = C ∩ ⋂_i {x : <x, u_i> <= -f_i},      A = C \ K.
//! ```
//!
//! Every quantity (volume, measures, support values) is read off the bounded
//! polytope `K ∩ C_t`, where `t` is large enough that `A` lies strictly below
//! the truncating hyperplane.

use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::geometry::linalg::{approx_eq, hyperplane_normal, orthonormal_basis};
use crate::geometry::{
    assemble_polytope, Facet, FacetTag, Halfspace, PolyhedralCone, TruncatedPolytope, Vector,
    EPS_GEO,
};
use crate::measure::{Atom, DiscreteMeasure};

/// One Wulff constraint `<x, u> <= -f`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub u: Vector,
    pub f: f64,
}

#[derive(Debug, Clone)]
pub struct CFullBody {
    cone: Arc<PolyhedralCone>,
    constraints: Vec<Constraint>,
    truncation: TruncatedPolytope,
}

/// Builds the Wulff shape of `(C, dirs, f)`.
pub fn wulff_shape(cone: &Arc<PolyhedralCone>, dirs: &[Vector], f: &[f64]) -> Result<CFullBody> {
    if dirs.len() != f.len() {
        return Err(Error::LengthMismatch(dirs.len(), f.len()));
    }
    if dirs.is_empty() {
        return Err(Error::NoConstraints);
    }
    for (i, u) in dirs.iter().enumerate() {
        if !cone.in_omega(u)? {
            return Err(Error::DirectionOutsideOmega(i));
        }
        if dirs[..i].iter().any(|v| approx_eq(u, v, EPS_GEO)) {
            return Err(Error::DuplicateDirection(i));
        }
    }
    for (index, &value) in f.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonpositiveOffset { index, value });
        }
    }
    let constraints: Vec<Constraint> = dirs
        .iter()
        .zip(f)
        .map(|(u, &f)| Constraint { u: u.clone(), f })
        .collect();

    let t = enclosing_height(cone, &constraints);
    let mut hs = cone.cone_halfspaces();
    hs.extend(
        constraints
            .iter()
            .map(|c| Halfspace::tagged(c.u.clone(), -c.f, FacetTag::Omega)),
    );
    hs.push(cone.top_halfspace(t));
    let truncation = assemble_polytope(&hs, Some(t))?;

    Ok(CFullBody {
        cone: Arc::clone(cone),
        constraints,
        truncation,
    })
}

/// `2 · max_i f_i / a0`, with `a0 = min -<g, u_i>` over unit generators.
fn enclosing_height(cone: &PolyhedralCone, constraints: &[Constraint]) -> f64 {
    let a0 = cone.angle_margin(constraints.iter().map(|c| &c.u));
    let fmax = constraints.iter().map(|c| c.f).fold(0.0, f64::max);
    2.0 * fmax / a0
}

/// Support value `h_K(u) = max <u, x>` over `K`; negative for `u ∈ Ω_C`.
pub fn support_value(cone: &PolyhedralCone, body: &CFullBody, u: &Vector) -> Result<f64> {
    if cone != body.cone.as_ref() {
        return Err(Error::ConeMismatch);
    }
    body.support(u)
}

impl CFullBody {
    pub fn cone(&self) -> &Arc<PolyhedralCone> {
        &self.cone
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn directions(&self) -> Vec<Vector> {
        self.constraints.iter().map(|c| c.u.clone()).collect()
    }

    pub fn offsets(&self) -> Vec<f64> {
        self.constraints.iter().map(|c| c.f).collect()
    }

    /// The polytope `K ∩ C_t` at `t = min_enclosing_t()`.
    pub fn truncation(&self) -> &TruncatedPolytope {
        &self.truncation
    }

    /// A height `t` with `C \ K ⊂ int C_t`.
    pub fn min_enclosing_t(&self) -> f64 {
        self.truncation
            .t
            .expect("body truncations always carry their height")
    }

    /// `K ∩ C_t` for a user-chosen height. Heights below
    /// [`min_enclosing_t`](Self::min_enclosing_t) cut through `C \ K`.
    pub fn truncate(&self, t: f64) -> Result<TruncatedPolytope> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::DegenerateInput(format!("truncation height {t}")));
        }
        let mut hs = self.cone.cone_halfspaces();
        hs.extend(
            self.constraints
                .iter()
                .map(|c| Halfspace::tagged(c.u.clone(), -c.f, FacetTag::Omega)),
        );
        hs.push(self.cone.top_halfspace(t));
        assemble_polytope(&hs, Some(t))
    }

    pub fn support(&self, u: &Vector) -> Result<f64> {
        if !self.cone.in_omega(u)? {
            return Err(Error::DirectionOutsideOmega(0));
        }
        Ok(self.truncation.support(u))
    }

    /// `-h_K(u)`, the support function of the coconvex set `A`.
    pub fn coconvex_support(&self, u: &Vector) -> Result<f64> {
        self.support(u).map(|h| -h)
    }

    fn cone_facet_count(&self) -> usize {
        self.cone.facet_normals().len()
    }

    /// Facets with normal in `Ω_C` and area above `EPS_GEO`, paired with the
    /// index of the constraint they come from.
    pub fn omega_facets(&self) -> impl Iterator<Item = (usize, &Facet)> {
        let offset = self.cone_facet_count();
        self.truncation
            .facets
            .iter()
            .filter(|f| f.tag == FacetTag::Omega && f.area > EPS_GEO)
            .map(move |f| (f.source - offset, f))
    }

    /// Facet area at each constraint direction, zero where the constraint is
    /// slack or touches `K` in a lower-dimensional face.
    pub fn facet_areas(&self) -> Vec<f64> {
        let mut areas = vec![0.0; self.constraints.len()];
        for (i, f) in self.omega_facets() {
            areas[i] = f.area;
        }
        areas
    }

    fn cone_volume_terms(&self) -> Vec<(usize, f64)> {
        let n = self.dim() as f64;
        self.omega_facets()
            .map(|(i, f)| (i, -f.offset * f.area / n))
            .collect()
    }

    /// `V_n(C \ K) = (1/n) Σ_F (-h_K(u_F)) · area(F)` over the facets of `K`
    /// with normals in `Ω_C`.
    pub fn coconvex_volume(&self) -> f64 {
        self.cone_volume_terms().iter().map(|(_, v)| v).sum()
    }

    /// `(V_n(C_t), V_n(K ∩ C_t))` at the enclosing height; their difference
    /// is the coconvex volume.
    pub fn volume_cross_check(&self) -> Result<(f64, f64)> {
        let cone_part = self.cone.truncate(self.min_enclosing_t())?;
        Ok((cone_part.volume(), self.truncation.volume()))
    }

    pub fn surface_area_measure(&self) -> DiscreteMeasure {
        DiscreteMeasure::from_atoms_unchecked(
            self.omega_facets()
                .map(|(i, f)| Atom::new(self.constraints[i].u.clone(), f.area))
                .collect(),
        )
    }

    /// Cone-volume measure; its atoms are the summands of
    /// [`coconvex_volume`](Self::coconvex_volume) in the same order.
    pub fn cone_volume_measure(&self) -> DiscreteMeasure {
        DiscreteMeasure::from_atoms_unchecked(
            self.cone_volume_terms()
                .into_iter()
                .map(|(i, m)| Atom::new(self.constraints[i].u.clone(), m))
                .collect(),
        )
    }

    pub fn scale(&self, lambda: f64) -> Result<CFullBody> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::NonpositiveScale(lambda));
        }
        let f: Vec<f64> = self.constraints.iter().map(|c| c.f * lambda).collect();
        wulff_shape(&self.cone, &self.directions(), &f)
    }

    /// Rebuilds the Wulff data from the non-degenerate `Ω_C` facets, so that
    /// redundant constraints disappear and each offset equals `-h_K(u)`.
    pub fn canonicalize(&self) -> Result<CFullBody> {
        let (dirs, f): (Vec<Vector>, Vec<f64>) = self
            .omega_facets()
            .map(|(i, fct)| (self.constraints[i].u.clone(), -fct.offset))
            .unzip();
        wulff_shape(&self.cone, &dirs, &f)
    }

    pub fn same_cone(&self, other: &CFullBody) -> bool {
        Arc::ptr_eq(&self.cone, &other.cone) || self.cone == other.cone
    }

    /// The co-sum `A ⊕ B = C \ (K_A + K_B)`.
    ///
    /// Facet normals of `K_A + K_B` are normals of hyperplanes spanned by edge
    /// directions of the summands. Each candidate in `Ω_C` is kept when the
    /// Minkowski sum of the two support sets is (n-1)-dimensional, and gets
    /// offset `-(h_A(u) + h_B(u))`.
    pub fn co_sum(&self, other: &CFullBody) -> Result<CFullBody> {
        if !self.same_cone(other) {
            return Err(Error::ConeMismatch);
        }
        let n = self.dim();
        let pa = &self.truncation;
        let pb = &other.truncation;

        let mut candidates: Vec<Vector> = Vec::new();
        let push_candidate = |u: Vector, candidates: &mut Vec<Vector>| {
            let inside = self.cone.generators().iter().all(|g| g.dot(&u) < -EPS_GEO);
            if inside && !candidates.iter().any(|c| approx_eq(c, &u, EPS_GEO)) {
                candidates.push(u);
            }
        };
        for c in self.constraints.iter().chain(&other.constraints) {
            push_candidate(c.u.clone(), &mut candidates);
        }

        let mut edge_dirs: Vec<Vector> = Vec::new();
        for p in [pa, pb] {
            for (i, j) in p.edges() {
                let d = &p.vertices[j] - &p.vertices[i];
                let d = &d / d.norm();
                if !edge_dirs
                    .iter()
                    .any(|e| approx_eq(e, &d, EPS_GEO) || approx_eq(e, &-&d, EPS_GEO))
                {
                    edge_dirs.push(d);
                }
            }
        }
        for subset in edge_dirs.iter().combinations(n - 1) {
            if let Some(nu) = hyperplane_normal(&subset, 1e-12) {
                push_candidate(-&nu, &mut candidates);
                push_candidate(nu, &mut candidates);
            }
        }

        let tol = pa.tolerance().max(pb.tolerance());
        let mut dirs = Vec::new();
        let mut offsets = Vec::new();
        for u in candidates {
            let fa = pa.support_set(&u);
            let fb = pb.support_set(&u);
            let a0 = &pa.vertices[fa[0]];
            let b0 = &pb.vertices[fb[0]];
            let spans = fa[1..]
                .iter()
                .map(|&i| &pa.vertices[i] - a0)
                .chain(fb[1..].iter().map(|&i| &pb.vertices[i] - b0));
            if orthonormal_basis(spans, tol).len() == n - 1 {
                offsets.push(-(pa.support(&u) + pb.support(&u)));
                dirs.push(u);
            }
        }
        wulff_shape(&self.cone, &dirs, &offsets)?.canonicalize()
    }

    /// The bounded coconvex set `A_(ω)` cut out by the supporting halfspaces
    /// of `K` at the selected constraint directions.
    pub fn restrict_to_normals(&self, selection: &[Vector]) -> Result<CFullBody> {
        if selection.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut dirs = Vec::with_capacity(selection.len());
        let mut f = Vec::with_capacity(selection.len());
        for (i, u) in selection.iter().enumerate() {
            let c = self
                .constraints
                .iter()
                .find(|c| approx_eq(&c.u, u, EPS_GEO))
                .ok_or(Error::DirectionNotInBody(i))?;
            dirs.push(c.u.clone());
            f.push(-self.truncation.support(&c.u));
        }
        wulff_shape(&self.cone, &dirs, &f)?.canonicalize()
    }
}

/// Co-sum of a nonempty list of bodies, folded left to right.
pub fn co_sum_all<'a, I>(bodies: I) -> Result<CFullBody>
where
    I: IntoIterator<Item = &'a CFullBody>,
{
    let mut iter = bodies.into_iter();
    let first = iter.next().ok_or(Error::WrongArity {
        expected: 1,
        found: 0,
    })?;
    iter.try_fold(first.clone(), |acc, b| acc.co_sum(b))
}
