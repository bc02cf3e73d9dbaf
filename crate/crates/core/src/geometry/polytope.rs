//! Bounded H-polytopes: vertex enumeration, face structure, facet areas and
//! volumes.

use itertools::Itertools;
use microlp::{ComparisonOp, OptimizationDirection, Problem};
use nalgebra::DMatrix;

use super::linalg::{affine_rank, origin_simplex_volume, simplex_volume, Vector};
use super::EPS_GEO;
use crate::error::{Error, Result};

/// Role of a halfspace in a truncated coconvex body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FacetTag {
    /// Facet of the cone (offset 0).
    Cone,
    /// Constraint with normal in the interior of the polar cone.
    Omega,
    /// Truncating hyperplane `<x, w> = t`.
    Top,
    /// Halfspace with no coconvex meaning.
    Plain,
}

/// The halfspace `<normal, x> <= offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: f64,
    pub tag: FacetTag,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: f64) -> Self {
        Self {
            normal,
            offset,
            tag: FacetTag::Plain,
        }
    }

    pub fn tagged(normal: Vector, offset: f64, tag: FacetTag) -> Self {
        Self {
            normal,
            offset,
            tag,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    /// Outer unit normal.
    pub normal: Vector,
    /// Support value in direction `normal`.
    pub offset: f64,
    /// Sorted indices into [`TruncatedPolytope::vertices`].
    pub vertices: Vec<usize>,
    /// (n-1)-dimensional volume.
    pub area: f64,
    pub tag: FacetTag,
    /// Index of the input halfspace this facet came from.
    pub source: usize,
}

/// Vertex/facet description of a bounded full-dimensional polytope, most
/// often `K ∩ C_t` for a coconvex body.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedPolytope {
    /// Truncation height, when the polytope came from a truncation.
    pub t: Option<f64>,
    pub vertices: Vec<Vector>,
    pub facets: Vec<Facet>,
    tol: f64,
}

/// Converts a list of halfspaces into a bounded polytope.
///
/// The intersection must be nonempty, bounded and full-dimensional; each case
/// is detected with a small linear program before vertices are enumerated.
pub fn halfspace_to_vertices(halfspaces: &[Halfspace]) -> Result<TruncatedPolytope> {
    let normalized = normalize_halfspaces(halfspaces)?;
    let n = normalized[0].normal.len();
    let scale = offset_scale(&normalized);

    let depth = interior_depth(&normalized)?;
    if depth < -EPS_GEO * scale {
        return Err(Error::Empty);
    }
    if depth <= EPS_GEO * scale {
        return Err(Error::LowerDimensional);
    }
    for j in 0..n {
        for sign in [1.0, -1.0] {
            if recession_extent(&normalized, j, sign)? > EPS_GEO {
                return Err(Error::Unbounded);
            }
        }
    }
    assemble(normalized, None)
}

/// Builds the polytope without the LP pre-checks. Callers guarantee the
/// intersection is bounded; emptiness and degeneracy are still reported.
pub(crate) fn assemble_polytope(
    halfspaces: &[Halfspace],
    t: Option<f64>,
) -> Result<TruncatedPolytope> {
    let normalized = normalize_halfspaces(halfspaces)?;
    assemble(normalized, t)
}

fn normalize_halfspaces(halfspaces: &[Halfspace]) -> Result<Vec<Halfspace>> {
    let first = halfspaces
        .first()
        .ok_or_else(|| Error::DegenerateInput("no halfspaces".into()))?;
    let n = first.normal.len();
    if n < 2 {
        return Err(Error::DegenerateInput(
            "dimension must be at least 2".into(),
        ));
    }
    halfspaces
        .iter()
        .map(|h| {
            if h.normal.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: h.normal.len(),
                });
            }
            let norm = h.normal.norm();
            if !norm.is_finite() || norm <= EPS_GEO || !h.offset.is_finite() {
                return Err(Error::DegenerateInput(
                    "zero or non-finite halfspace".into(),
                ));
            }
            Ok(Halfspace::tagged(&h.normal / norm, h.offset / norm, h.tag))
        })
        .collect()
}

fn offset_scale(halfspaces: &[Halfspace]) -> f64 {
    halfspaces
        .iter()
        .map(|h| h.offset.abs())
        .fold(1.0, f64::max)
}

/// Largest `s <= 1` such that some point lies at depth `s` inside every
/// halfspace. Negative means empty.
fn interior_depth(halfspaces: &[Halfspace]) -> Result<f64> {
    let n = halfspaces[0].normal.len();
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let xs: Vec<_> = (0..n)
        .map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY)))
        .collect();
    let s = lp.add_var(1.0, (f64::NEG_INFINITY, 1.0));
    for h in halfspaces {
        let mut expr: Vec<_> = xs
            .iter()
            .zip(h.normal.iter())
            .map(|(v, c)| (*v, *c))
            .collect();
        expr.push((s, 1.0));
        lp.add_constraint(expr.as_slice(), ComparisonOp::Le, h.offset);
    }
    let sol = lp.solve().map_err(|e| Error::Lp(e.to_string()))?;
    Ok(sol[s])
}

/// Maximum of `sign * d_j` over the recession cone intersected with the unit box.
fn recession_extent(halfspaces: &[Halfspace], j: usize, sign: f64) -> Result<f64> {
    let n = halfspaces[0].normal.len();
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let ds: Vec<_> = (0..n)
        .map(|i| lp.add_var(if i == j { sign } else { 0.0 }, (-1.0, 1.0)))
        .collect();
    for h in halfspaces {
        let expr: Vec<_> = ds
            .iter()
            .zip(h.normal.iter())
            .map(|(v, c)| (*v, *c))
            .collect();
        lp.add_constraint(expr.as_slice(), ComparisonOp::Le, 0.0);
    }
    let sol = lp.solve().map_err(|e| Error::Lp(e.to_string()))?;
    Ok(sol.objective())
}

fn assemble(halfspaces: Vec<Halfspace>, t: Option<f64>) -> Result<TruncatedPolytope> {
    let n = halfspaces[0].normal.len();
    let scale = offset_scale(&halfspaces);
    let tol = EPS_GEO * scale;

    let mut vertices: Vec<Vector> = Vec::new();
    for subset in (0..halfspaces.len()).combinations(n) {
        let a = DMatrix::from_fn(n, n, |r, c| halfspaces[subset[r]].normal[c]);
        let lu = a.lu();
        if lu.determinant().abs() < 1e-12 {
            continue;
        }
        let b = Vector::from_iterator(n, subset.iter().map(|&i| halfspaces[i].offset));
        let Some(x) = lu.solve(&b) else { continue };
        if !x.iter().all(|c| c.is_finite()) {
            continue;
        }
        if halfspaces
            .iter()
            .all(|h| h.normal.dot(&x) <= h.offset + tol)
            && !vertices.iter().any(|v| (v - &x).amax() <= tol)
        {
            vertices.push(x);
        }
    }
    if vertices.is_empty() {
        return Err(Error::Empty);
    }
    let refs: Vec<&Vector> = vertices.iter().collect();
    if affine_rank(&refs, tol) != Some(n) {
        return Err(Error::LowerDimensional);
    }

    let mut facets: Vec<Facet> = Vec::new();
    for (source, h) in halfspaces.iter().enumerate() {
        let tight: Vec<usize> = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| (h.normal.dot(v) - h.offset).abs() <= tol)
            .map(|(i, _)| i)
            .collect();
        let pts: Vec<&Vector> = tight.iter().map(|&i| &vertices[i]).collect();
        if affine_rank(&pts, tol) != Some(n - 1) {
            continue;
        }
        if facets.iter().any(|f| f.vertices == tight) {
            continue;
        }
        facets.push(Facet {
            normal: h.normal.clone(),
            offset: h.offset,
            vertices: tight,
            area: 0.0,
            tag: h.tag,
            source,
        });
    }

    let mut polytope = TruncatedPolytope {
        t,
        vertices,
        facets,
        tol,
    };
    for i in 0..polytope.facets.len() {
        let area = polytope
            .triangulate_facet(i)
            .iter()
            .map(|s| {
                let pts: Vec<&Vector> = s.iter().map(|&v| &polytope.vertices[v]).collect();
                simplex_volume(&pts)
            })
            .sum();
        polytope.facets[i].area = area;
    }
    Ok(polytope)
}

impl TruncatedPolytope {
    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    /// Tolerance used for tightness and vertex merging.
    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Volume by the facet-cone formula `(1/n) Σ offset · area`.
    pub fn volume(&self) -> f64 {
        let n = self.dim() as f64;
        self.facets.iter().map(|f| f.offset * f.area).sum::<f64>() / n
    }

    /// Volume as a sum of simplices from a pulling triangulation.
    pub fn simplicial_volume(&self) -> f64 {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let apex = &self.vertices[0];
        self.triangulate_face(&all, self.dim())
            .iter()
            .map(|s| {
                let edges: Vec<Vector> = s[1..].iter().map(|&v| &self.vertices[v] - apex).collect();
                let refs: Vec<&Vector> = edges.iter().collect();
                origin_simplex_volume(&refs)
            })
            .sum()
    }

    /// `max <u, x>` over the vertices.
    pub fn support(&self, u: &Vector) -> f64 {
        self.vertices
            .iter()
            .map(|v| u.dot(v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Vertices attaining the support value in direction `u` within the
    /// polytope tolerance.
    pub fn support_set(&self, u: &Vector) -> Vec<usize> {
        let h = self.support(u);
        let tol = self.tol * u.norm().max(1.0);
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| u.dot(v) >= h - tol)
            .map(|(i, _)| i)
            .collect()
    }

    /// Simplices (as vertex index lists, `n` vertices each) triangulating facet `i`.
    pub fn triangulate_facet(&self, i: usize) -> Vec<Vec<usize>> {
        let verts = self.facets[i].vertices.clone();
        self.triangulate_face(&verts, self.dim() - 1)
    }

    /// One-dimensional faces as vertex index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, j) in (0..self.vertices.len()).tuple_combinations() {
            let mut face: Option<Vec<usize>> = None;
            for f in &self.facets {
                if f.vertices.binary_search(&i).is_ok() && f.vertices.binary_search(&j).is_ok() {
                    face = Some(match face {
                        None => f.vertices.clone(),
                        Some(cur) => intersect_sorted(&cur, &f.vertices),
                    });
                }
            }
            if let Some(face) = face {
                let pts: Vec<&Vector> = face.iter().map(|&v| &self.vertices[v]).collect();
                if affine_rank(&pts, self.tol) == Some(1) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Pulling triangulation of a `k`-face given by its sorted vertex set: cone
    /// from the first vertex over every subface that avoids it.
    pub(crate) fn triangulate_face(&self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut subfaces: Vec<Vec<usize>> = Vec::new();
        for f in &self.facets {
            let sub = intersect_sorted(face, &f.vertices);
            if sub.len() == face.len() || sub.len() < k || subfaces.contains(&sub) {
                continue;
            }
            let pts: Vec<&Vector> = sub.iter().map(|&v| &self.vertices[v]).collect();
            if affine_rank(&pts, self.tol) == Some(k - 1) {
                subfaces.push(sub);
            }
        }
        let mut simplices = Vec::new();
        for sub in subfaces.iter().filter(|s| !s.contains(&apex)) {
            for mut s in self.triangulate_face(sub, k - 1) {
                s.insert(0, apex);
                simplices.push(s);
            }
        }
        simplices
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
