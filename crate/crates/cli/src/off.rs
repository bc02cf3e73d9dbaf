//! OFF mesh export of a truncated body `K ∩ C_t`.

use std::fmt::Write;

use coconvex::geometry::{TruncatedPolytope, Vector};

/// Boundary of a polytope in the plane or in space as a triangle mesh. Planar
/// polytopes are embedded at `z = 0` as a single triangulated face.
pub fn to_off(p: &TruncatedPolytope) -> Option<String> {
    let (points, faces) = match p.dim() {
        2 => {
            let all: Vec<usize> = (0..p.vertices.len()).collect();
            let ring = cyclic_order(p, &all, None);
            let points = p
                .vertices
                .iter()
                .map(|v| [v[0], v[1], 0.0])
                .collect::<Vec<_>>();
            (points, fan(&ring))
        }
        3 => {
            let mut faces = Vec::new();
            for facet in &p.facets {
                let ring = cyclic_order(p, &facet.vertices, Some(&facet.normal));
                faces.extend(fan(&ring));
            }
            let points = p.vertices.iter().map(|v| [v[0], v[1], v[2]]).collect();
            (points, faces)
        }
        _ => return None,
    };

    let mut out = String::new();
    writeln!(out, "OFF").unwrap();
    writeln!(out, "{} {} 0", points.len(), faces.len()).unwrap();
    for [x, y, z] in &points {
        writeln!(out, "{x:?} {y:?} {z:?}").unwrap();
    }
    for [a, b, c] in &faces {
        writeln!(out, "3 {a} {b} {c}").unwrap();
    }
    Some(out)
}

fn fan(ring: &[usize]) -> Vec<[usize; 3]> {
    (1..ring.len().saturating_sub(1))
        .map(|k| [ring[0], ring[k], ring[k + 1]])
        .collect()
}

/// Sorts a convex polygon's vertices counter-clockwise, seen from the tip of
/// `normal` in space or from `+z` in the plane.
fn cyclic_order(p: &TruncatedPolytope, face: &[usize], normal: Option<&Vector>) -> Vec<usize> {
    let n = p.dim();
    let mut centre = Vector::zeros(n);
    for &i in face {
        centre += &p.vertices[i];
    }
    centre /= face.len() as f64;

    let angle: Box<dyn Fn(&Vector) -> f64> = match normal {
        None => Box::new(|d: &Vector| d[1].atan2(d[0])),
        Some(nrm) => {
            let e1 = (&p.vertices[face[0]] - &centre).normalize();
            let e2 = nrm.cross(&e1);
            Box::new(move |d: &Vector| d.dot(&e2).atan2(d.dot(&e1)))
        }
    };
    let mut keyed: Vec<(f64, usize)> = face
        .iter()
        .map(|&i| (angle(&(&p.vertices[i] - &centre)), i))
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, i)| i).collect()
}
