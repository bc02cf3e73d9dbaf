//! Finite atomic measures on `Ω_C`.

use crate::error::{Error, Result};
use crate::geometry::{linalg::approx_eq, PolyhedralCone, Vector, EPS_GEO};

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub u: Vector,
    pub mass: f64,
}

impl Atom {
    pub fn new(u: Vector, mass: f64) -> Self {
        Self { u, mass }
    }
}

/// A finite measure concentrated on finitely many directions.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    /// Checks that there is at least one atom, masses are positive and
    /// finite, and directions are pairwise distinct.
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        for (i, a) in atoms.iter().enumerate() {
            if !(a.mass > 0.0 && a.mass.is_finite()) {
                return Err(Error::InvalidMeasure(format!(
                    "atom {i} has non-positive or non-finite mass {}",
                    a.mass
                )));
            }
            if atoms[..i].iter().any(|b| approx_eq(&a.u, &b.u, EPS_GEO)) {
                return Err(Error::InvalidMeasure(format!(
                    "atom {i} repeats a direction"
                )));
            }
        }
        Ok(Self { atoms })
    }

    pub(crate) fn from_atoms_unchecked(atoms: Vec<Atom>) -> Self {
        Self { atoms }
    }

    /// Sums signed contributions per direction, dropping atoms whose net mass
    /// does not exceed `floor`.
    pub(crate) fn from_signed(contributions: Vec<(Vector, f64)>, floor: f64) -> Self {
        let mut merged: Vec<Atom> = Vec::new();
        for (u, m) in contributions {
            match merged.iter_mut().find(|a| approx_eq(&a.u, &u, EPS_GEO)) {
                Some(a) => a.mass += m,
                None => merged.push(Atom::new(u, m)),
            }
        }
        merged.retain(|a| a.mass > floor);
        Self { atoms: merged }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn directions(&self) -> Vec<Vector> {
        self.atoms.iter().map(|a| a.u.clone()).collect()
    }

    pub fn masses(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.mass).collect()
    }

    /// Sum of masses in atom order.
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    /// Mass of the atom at direction `u` (matched within `EPS_GEO`).
    pub fn mass_at(&self, u: &Vector) -> Option<f64> {
        self.atoms
            .iter()
            .find(|a| approx_eq(&a.u, u, EPS_GEO))
            .map(|a| a.mass)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom::new(a.u.clone(), a.mass * factor))
                .collect(),
        }
    }

    /// The measure restricted to the atoms with the given indices.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        let atoms = indices
            .iter()
            .map(|&i| {
                self.atoms
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidMeasure(format!("no atom with index {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(atoms)
    }

    /// Verifies every atom direction lies in `Ω_C`.
    pub fn check_support(&self, cone: &PolyhedralCone) -> Result<()> {
        for (i, a) in self.atoms.iter().enumerate() {
            let inside = cone
                .in_omega(&a.u)
                .map_err(|e| Error::InvalidMeasure(format!("atom {i}: {e}")))?;
            if !inside {
                return Err(Error::InvalidMeasure(format!(
                    "atom {i} lies outside the interior of the polar cone"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    #[test]
    fn rejects_bad_atoms() {
        assert!(DiscreteMeasure::new(vec![]).is_err());
        let u = vector(&[-0.6, -0.8]);
        assert!(DiscreteMeasure::new(vec![Atom::new(u.clone(), 0.0)]).is_err());
        assert!(DiscreteMeasure::new(vec![Atom::new(u.clone(), 1.0), Atom::new(u, 2.0)]).is_err());
    }

    #[test]
    fn signed_merge_cancels() {
        let u = vector(&[-0.6, -0.8]);
        let v = vector(&[-0.8, -0.6]);
        let m = DiscreteMeasure::from_signed(
            vec![
                (u.clone(), 2.0),
                (v.clone(), 1.0),
                (u.clone(), -0.5),
                (v, -1.0),
            ],
            1e-12,
        );
        assert_eq!(m.len(), 1);
        assert_eq!(m.mass_at(&u), Some(1.5));
    }
}
