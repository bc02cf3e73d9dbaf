//! Scene files: a cone, named bodies, named measures and solver settings.
//!
//! ```json
//! {
//!   "cone": { "generators": [[1, 0], [0, 1]] },
//!   "bodies": { "A": { "constraints": [{ "u": [-1, -1], "f": 1.0 }] } },
//!   "measures": { "phi": { "atoms": [{ "u": [-1, -1], "mass": 2.0 }] } },
//!   "config": { "max_iters": 2000 }
//! }
//! ```
//!
//! Directions whose norm is off by more than `1e-12` are normalised on load,
//! so writing a loaded scene back out is idempotent after the first pass.

use std::path::Path;
use std::sync::Arc;

use coconvex::geometry::{validate_cone, vector, PolyhedralCone, Vector};
use coconvex::solver::SolverConfig;
use coconvex::{wulff_shape, Atom, CFullBody, DiscreteMeasure};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

const NORM_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub cone: ConeSpec,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub bodies: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub measures: Map<String, Value>,
    #[serde(default, skip_serializing_if = "ConfigOverrides::is_empty")]
    pub config: ConfigOverrides,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub generators: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodySpec {
    pub constraints: Vec<ConstraintSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub u: Vec<f64>,
    pub f: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    pub atoms: Vec<AtomSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub u: Vec<f64>,
    pub mass: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backtrack: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub armijo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_offset: Option<f64>,
}

impl ConfigOverrides {
    fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    pub fn apply(&self, cfg: &mut SolverConfig) {
        if let Some(v) = self.max_iters {
            cfg.max_iters = v;
        }
        if let Some(v) = self.tol_residual {
            cfg.tol_residual = v;
        }
        if let Some(v) = self.step0 {
            cfg.step0 = v;
        }
        if let Some(v) = self.backtrack {
            cfg.backtrack = v;
        }
        if let Some(v) = self.armijo {
            cfg.armijo = v;
        }
        if let Some(v) = self.min_offset {
            cfg.min_offset = v;
        }
    }
}

/// A scene turned into domain objects.
pub struct Scene {
    pub file: SceneFile,
    pub cone: Arc<PolyhedralCone>,
    pub bodies: Vec<(String, CFullBody)>,
    pub measures: Vec<(String, DiscreteMeasure)>,
    /// Human-readable notes about directions that were normalised.
    pub warnings: Vec<String>,
}

impl Scene {
    pub fn body(&self, name: &str) -> Result<&CFullBody, CliError> {
        self.bodies
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, b)| b)
            .ok_or_else(|| CliError::Parse(format!("no body named '{name}' in the scene")))
    }

    pub fn measure(&self, name: &str) -> Result<&DiscreteMeasure, CliError> {
        self.measures
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| CliError::Parse(format!("no measure named '{name}' in the scene")))
    }
}

pub fn read(path: &Path) -> Result<Scene, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Scene, CliError> {
    let mut file: SceneFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("scene: {e}")))?;
    let mut warnings = Vec::new();

    let dim = file
        .cone
        .generators
        .first()
        .map(Vec::len)
        .ok_or_else(|| CliError::Parse("cone has no generators".into()))?;
    let generators: Vec<Vector> = file.cone.generators.iter().map(|g| vector(g)).collect();
    let cone = Arc::new(validate_cone(&generators)?);

    let mut bodies = Vec::new();
    for (name, value) in file.bodies.iter_mut() {
        let mut spec: BodySpec = serde_json::from_value(value.clone())
            .map_err(|e| CliError::Parse(format!("body '{name}': {e}")))?;
        let mut dirs = Vec::new();
        let mut f = Vec::new();
        for (i, c) in spec.constraints.iter_mut().enumerate() {
            let ctx = format!("body '{name}' constraint {i}");
            dirs.push(unit(&mut c.u, dim, &ctx, &mut warnings)?);
            f.push(c.f);
        }
        let body = wulff_shape(&cone, &dirs, &f)
            .map_err(|e| CliError::Domain(format!("body '{name}': {e}")))?;
        *value = to_value(&spec);
        bodies.push((name.clone(), body));
    }

    let mut measures = Vec::new();
    for (name, value) in file.measures.iter_mut() {
        let mut spec: MeasureSpec = serde_json::from_value(value.clone())
            .map_err(|e| CliError::Parse(format!("measure '{name}': {e}")))?;
        let mut atoms = Vec::new();
        for (i, a) in spec.atoms.iter_mut().enumerate() {
            let ctx = format!("measure '{name}' atom {i}");
            atoms.push(Atom::new(unit(&mut a.u, dim, &ctx, &mut warnings)?, a.mass));
        }
        let measure = DiscreteMeasure::new(atoms)
            .and_then(|m| m.check_support(&cone).map(|_| m))
            .map_err(|e| CliError::Domain(format!("measure '{name}': {e}")))?;
        *value = to_value(&spec);
        measures.push((name.clone(), measure));
    }

    Ok(Scene {
        file,
        cone,
        bodies,
        measures,
        warnings,
    })
}

fn to_value<T: Serialize>(spec: &T) -> Value {
    serde_json::to_value(spec).expect("scene specs serialise")
}

/// Checks the length of `u` and normalises it in place when its norm is off
/// by more than `NORM_SLACK`.
fn unit(
    u: &mut [f64],
    dim: usize,
    ctx: &str,
    warnings: &mut Vec<String>,
) -> Result<Vector, CliError> {
    if u.len() != dim {
        return Err(CliError::Parse(format!(
            "{ctx}: expected {dim} coordinates, found {}",
            u.len()
        )));
    }
    let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(CliError::Parse(format!("{ctx}: direction has norm {norm}")));
    }
    if (norm - 1.0).abs() > NORM_SLACK {
        warnings.push(format!("{ctx}: direction normalised (norm was {norm})"));
        u.iter_mut().for_each(|x| *x /= norm);
    }
    Ok(vector(u))
}

/// Canonical serialisation: pretty JSON with a trailing newline.
pub fn to_string(file: &SceneFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("scene files serialise");
    s.push('\n');
    s
}

pub fn body_spec(body: &CFullBody) -> BodySpec {
    BodySpec {
        constraints: body
            .constraints()
            .iter()
            .map(|c| ConstraintSpec {
                u: c.u.iter().copied().collect(),
                f: c.f,
            })
            .collect(),
    }
}

pub fn measure_spec(measure: &DiscreteMeasure) -> MeasureSpec {
    MeasureSpec {
        atoms: measure
            .atoms()
            .iter()
            .map(|a| AtomSpec {
                u: a.u.iter().copied().collect(),
                mass: a.mass,
            })
            .collect(),
    }
}
