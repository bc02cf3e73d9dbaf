//! Variational solvers for the discrete Minkowski problems on `Ω_C`.
//!
//! Both problems maximise a degree-zero homogeneous functional of the Wulff
//! offsets `f`. Iterates live in log coordinates `s = log f`, are lifted to
//! support values (`f ← -h_K(u)`, which leaves `K` unchanged and can only
//! raise the objective) and are renormalised to `V = 1` before each step.
//! Steps follow the exact gradient, divided per atom by its mass weight so
//! that small atoms converge at the same relative rate, with Barzilai-Borwein
//! lengths and Armijo backtracking.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::body::{wulff_shape, CFullBody};
use crate::error::{Error, Result};
use crate::geometry::{PolyhedralCone, Vector};
use crate::measure::DiscreteMeasure;

/// Starting offsets for the ascent.
#[derive(Debug, Clone, PartialEq)]
pub enum Init {
    Ones,
    /// `f_i = exp(U(-1, 1))` from a seeded ChaCha8 stream.
    Random {
        seed: u64,
    },
    Given(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Stop once the relative atom error of the rescaled body is below this.
    pub tol_residual: f64,
    /// Length of the very first trial step.
    pub step0: f64,
    /// Backtracking factor in `(0, 1)`.
    pub backtrack: f64,
    pub armijo: f64,
    pub init: Init,
    pub min_offset: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            tol_residual: 1e-9,
            step0: 1.0,
            backtrack: 0.5,
            armijo: 1e-4,
            init: Init::Ones,
            min_offset: 1e-8,
        }
    }
}

impl SolverConfig {
    fn validate(&self, atoms: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.max_iters == 0 {
            return bad("max_iters must be at least 1".into());
        }
        if self.tol_residual.is_nan() || self.tol_residual <= 0.0 {
            return bad(format!(
                "tol_residual must be positive, got {}",
                self.tol_residual
            ));
        }
        if !(self.step0 > 0.0 && self.step0.is_finite()) {
            return bad(format!("step0 must be positive, got {}", self.step0));
        }
        if !(self.backtrack > 0.0 && self.backtrack < 1.0) {
            return bad(format!(
                "backtrack must lie in (0, 1), got {}",
                self.backtrack
            ));
        }
        if !(self.armijo > 0.0 && self.armijo < 1.0) {
            return bad(format!("armijo must lie in (0, 1), got {}", self.armijo));
        }
        if self.min_offset.is_nan() || self.min_offset <= 0.0 {
            return bad(format!(
                "min_offset must be positive, got {}",
                self.min_offset
            ));
        }
        if let Init::Given(f) = &self.init {
            if f.len() != atoms {
                return Err(Error::LengthMismatch(atoms, f.len()));
            }
            if let Some((index, &value)) =
                f.iter().enumerate().find(|(_, v)| v.is_nan() || **v <= 0.0)
            {
                return Err(Error::NonpositiveOffset { index, value });
            }
        }
        Ok(())
    }

    fn initial_offsets(&self, m: usize) -> Vec<f64> {
        match &self.init {
            Init::Ones => vec![1.0; m],
            Init::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..m)
                    .map(|_| rng.random_range(-1.0..1.0f64).exp())
                    .collect()
            }
            Init::Given(f) => f.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverReport {
    pub body: CFullBody,
    /// Offsets of `body`, one per atom of the target measure.
    pub f: Vec<f64>,
    /// Factor applied to the normalised optimiser to produce `body`.
    pub scale_factor: f64,
    /// `max_i |mass_i(body) - φ_i| / φ_i`.
    pub residual: f64,
    pub iterations: usize,
    /// Objective value `Φ` at every accepted iterate.
    pub objective_trace: Vec<f64>,
    pub converged: bool,
}

/// `V(f) = V_n(C \ K_f)`.
pub fn volume_functional(cone: &Arc<PolyhedralCone>, dirs: &[Vector], f: &[f64]) -> Result<f64> {
    Ok(wulff_shape(cone, dirs, f)?.coconvex_volume())
}

/// Partial derivatives of `V` in `f`: the facet areas of `K_f`, zero at
/// slack constraints.
pub fn volume_gradient(cone: &Arc<PolyhedralCone>, dirs: &[Vector], f: &[f64]) -> Result<Vec<f64>> {
    Ok(wulff_shape(cone, dirs, f)?.facet_areas())
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Problem {
    Surface,
    ConeVolume,
}

/// One lifted, volume-normalised iterate.
struct Point {
    s: Vec<f64>,
    log_phi: f64,
    grad: Vec<f64>,
    /// Per-atom scale of the gradient; dividing by it balances small atoms.
    weight: Vec<f64>,
    residual: f64,
}

struct Objective<'a> {
    cone: &'a Arc<PolyhedralCone>,
    dirs: Vec<Vector>,
    /// Target masses; normalised to sum 1 for the cone-volume problem.
    c: Vec<f64>,
    problem: Problem,
    log_floor: f64,
}

impl Objective<'_> {
    fn n(&self) -> f64 {
        self.cone.dim() as f64
    }

    fn log_phi(&self, f: &[f64], v: f64) -> f64 {
        let tail = match self.problem {
            Problem::Surface => self.c.iter().zip(f).map(|(c, f)| c * f).sum::<f64>().ln(),
            Problem::ConeVolume => self.c.iter().zip(f).map(|(c, f)| c * f.ln()).sum(),
        };
        tail - v.ln() / self.n()
    }

    /// Objective at raw offsets, without lifting.
    fn value(&self, f: &[f64]) -> Result<f64> {
        let v = volume_functional(self.cone, &self.dirs, f)?;
        Ok(self.log_phi(f, v))
    }

    /// Lifts `f` to support values and normalises to `V = 1`.
    fn point(&self, f: &[f64]) -> Result<Point> {
        let n = self.n();
        let body = wulff_shape(self.cone, &self.dirs, f)?;
        let v = body.coconvex_volume();
        let mu = v.powf(-1.0 / n);
        let areas = body.facet_areas();
        let mut lifted = Vec::with_capacity(f.len());
        for u in &self.dirs {
            lifted.push(body.coconvex_support(u)? * mu);
        }
        // facet areas scale by mu^(n-1), volume becomes 1
        let a: Vec<f64> = areas.iter().map(|a| a * mu.powf(n - 1.0)).collect();
        let log_phi = self.log_phi(&lifted, 1.0);

        let (grad, weight, residual) = match self.problem {
            Problem::Surface => {
                let total: f64 = self.c.iter().zip(&lifted).map(|(c, f)| c * f).sum();
                let lambda = total / n;
                let grad = (0..f.len())
                    .map(|i| self.c[i] * lifted[i] / total - a[i] * lifted[i] / n)
                    .collect();
                let weight = (0..f.len())
                    .map(|i| self.c[i] * lifted[i] / total)
                    .collect();
                let residual = (0..f.len())
                    .map(|i| (lambda * a[i] - self.c[i]).abs() / self.c[i])
                    .fold(0.0, f64::max);
                (grad, weight, residual)
            }
            Problem::ConeVolume => {
                let mass: Vec<f64> = (0..f.len()).map(|i| a[i] * lifted[i] / n).collect();
                let grad = (0..f.len()).map(|i| self.c[i] - mass[i]).collect();
                let residual = (0..f.len())
                    .map(|i| (mass[i] - self.c[i]).abs() / self.c[i])
                    .fold(0.0, f64::max);
                (grad, self.c.clone(), residual)
            }
        };
        Ok(Point {
            s: lifted.iter().map(|f| f.ln()).collect(),
            log_phi,
            grad,
            weight,
            residual,
        })
    }

    fn offsets(&self, s: &[f64]) -> Vec<f64> {
        s.iter().map(|s| s.max(self.log_floor).exp()).collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Ascent {
    s: Vec<f64>,
    iterations: usize,
    trace: Vec<f64>,
}

fn ascend(obj: &Objective, f0: &[f64], cfg: &SolverConfig) -> Result<Ascent> {
    let mut x = obj.point(f0)?;
    let mut trace = vec![x.log_phi.exp()];
    let mut step = cfg.step0;
    let mut iterations = 0;

    while iterations < cfg.max_iters && x.residual > cfg.tol_residual {
        let dir: Vec<f64> = x.grad.iter().zip(&x.weight).map(|(g, w)| g / w).collect();
        let mut alpha = step;
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> =
                x.s.iter()
                    .zip(&dir)
                    .map(|(s, d)| (s + alpha * d).max(obj.log_floor))
                    .collect();
            let ds: Vec<f64> = trial.iter().zip(&x.s).map(|(a, b)| a - b).collect();
            let f = obj.offsets(&trial);
            let value = obj.value(&f)?;
            // rounding slack lets the ascent finish once gains reach machine precision
            let slack = 1e-14 * x.log_phi.abs().max(1.0);
            if value >= x.log_phi + cfg.armijo * dot(&x.grad, &ds) - slack {
                accepted = Some(f);
                break;
            }
            alpha *= cfg.backtrack;
        }
        let Some(f) = accepted else { break };
        let next = obj.point(&f)?;
        iterations += 1;

        let ds: Vec<f64> = next.s.iter().zip(&x.s).map(|(a, b)| a - b).collect();
        let dg: Vec<f64> = next.grad.iter().zip(&x.grad).map(|(a, b)| a - b).collect();
        let curvature = -dot(&ds, &dg);
        let metric: f64 = ds.iter().zip(&next.weight).map(|(d, w)| w * d * d).sum();
        step = if curvature > 0.0 {
            (metric / curvature).clamp(1e-10, 1e10)
        } else {
            (alpha * 2.0).min(1e10)
        };
        trace.push(next.log_phi.exp());
        x = next;
    }
    Ok(Ascent {
        s: x.s,
        iterations,
        trace,
    })
}

fn prepare<'a>(
    cone: &'a Arc<PolyhedralCone>,
    phi: &DiscreteMeasure,
    cfg: &SolverConfig,
    problem: Problem,
) -> Result<Objective<'a>> {
    if phi.is_empty() {
        return Err(Error::InvalidMeasure("no atoms".into()));
    }
    let phi = DiscreteMeasure::new(phi.atoms().to_vec())?;
    phi.check_support(cone)?;
    cfg.validate(phi.len())?;
    let mut c = phi.masses();
    if problem == Problem::ConeVolume {
        let total = phi.total_mass();
        c.iter_mut().for_each(|m| *m /= total);
    }
    Ok(Objective {
        cone,
        dirs: phi.directions(),
        c,
        problem,
        log_floor: cfg.min_offset.ln(),
    })
}

fn residual_against(measure: &DiscreteMeasure, phi: &DiscreteMeasure) -> f64 {
    phi.atoms()
        .iter()
        .map(|a| (measure.mass_at(&a.u).unwrap_or(0.0) - a.mass).abs() / a.mass)
        .fold(0.0, f64::max)
}

fn finish(
    obj: &Objective,
    phi: &DiscreteMeasure,
    ascent: Ascent,
    cfg: &SolverConfig,
) -> Result<SolverReport> {
    let n = obj.n();
    let f_hat = obj.offsets(&ascent.s);
    let normalised = wulff_shape(obj.cone, &obj.dirs, &f_hat)?;
    let v = normalised.coconvex_volume();
    let scale_factor = match obj.problem {
        Problem::Surface => {
            let lambda = obj.c.iter().zip(&f_hat).map(|(c, f)| c * f).sum::<f64>() / (n * v);
            lambda.powf(1.0 / (n - 1.0))
        }
        Problem::ConeVolume => (phi.total_mass() / v).powf(1.0 / n),
    };
    let body = normalised.scale(scale_factor)?;
    let measure = match obj.problem {
        Problem::Surface => body.surface_area_measure(),
        Problem::ConeVolume => body.cone_volume_measure(),
    };
    let residual = residual_against(&measure, phi);
    Ok(SolverReport {
        f: body.offsets(),
        body,
        scale_factor,
        residual,
        iterations: ascent.iterations,
        objective_trace: ascent.trace,
        converged: residual <= cfg.tol_residual,
    })
}

/// Finds the C-full body whose surface area measure is `phi` by maximising
/// `Φ(f) = V(f)^{-1/n} Σ c_i f_i` and rescaling the maximiser by
/// `λ^{1/(n-1)}`, `λ = Σ c_i f_i / (n V)`.
///
/// A run that exhausts its iteration budget returns a report with
/// `converged == false`.
pub fn solve_surface(
    cone: &Arc<PolyhedralCone>,
    phi: &DiscreteMeasure,
    cfg: &SolverConfig,
) -> Result<SolverReport> {
    let obj = prepare(cone, phi, cfg, Problem::Surface)?;
    let ascent = ascend(&obj, &cfg.initial_offsets(phi.len()), cfg)?;
    finish(&obj, phi, ascent, cfg)
}

/// Finds a C-full body whose cone-volume measure is `phi` by maximising
/// `Φ(f) = V(f)^{-1/n} exp(Σ c_i log f_i)` over normalised masses `c` and
/// rescaling the maximiser by `(φ(Ω_C) / V)^{1/n}`.
pub fn solve_cone_volume(
    cone: &Arc<PolyhedralCone>,
    phi: &DiscreteMeasure,
    cfg: &SolverConfig,
) -> Result<SolverReport> {
    let obj = prepare(cone, phi, cfg, Problem::ConeVolume)?;
    let ascent = ascend(&obj, &cfg.initial_offsets(phi.len()), cfg)?;
    finish(&obj, phi, ascent, cfg)
}

#[derive(Debug, Clone)]
pub struct ExhaustionReport {
    pub reports: Vec<SolverReport>,
    /// `distances[j][k]` is the largest `|h_{K_j}(u) - h_{K_k}(u)|` over the
    /// directions of the smaller of the two stages.
    pub distances: Vec<Vec<f64>>,
}

/// Solves the cone-volume problem for each restriction of `phi` to a stage
/// (a set of atom indices). Stages must be nested and the last one must
/// contain every atom.
pub fn exhaustion_experiment(
    cone: &Arc<PolyhedralCone>,
    phi: &DiscreteMeasure,
    stages: &[Vec<usize>],
    cfg: &SolverConfig,
) -> Result<ExhaustionReport> {
    validate_stages(stages, phi.len())?;
    let mut reports = Vec::with_capacity(stages.len());
    for stage in stages {
        let mut idx = stage.clone();
        idx.sort_unstable();
        reports.push(solve_cone_volume(cone, &phi.restrict(&idx)?, cfg)?);
    }

    let k = stages.len();
    let mut distances = vec![vec![0.0; k]; k];
    for j in 0..k {
        for l in j + 1..k {
            let mut d: f64 = 0.0;
            for &i in &stages[j] {
                let u = &phi.atoms()[i].u;
                d = d.max((reports[j].body.support(u)? - reports[l].body.support(u)?).abs());
            }
            distances[j][l] = d;
            distances[l][j] = d;
        }
    }
    Ok(ExhaustionReport { reports, distances })
}

fn validate_stages(stages: &[Vec<usize>], atoms: usize) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidStages(msg));
    if stages.is_empty() {
        return bad("no stages given".into());
    }
    for (j, stage) in stages.iter().enumerate() {
        if stage.is_empty() {
            return bad(format!("stage {j} is empty"));
        }
        if let Some(&i) = stage.iter().find(|&&i| i >= atoms) {
            return bad(format!("stage {j} names atom {i}, measure has {atoms}"));
        }
        let mut sorted = stage.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != stage.len() {
            return bad(format!("stage {j} repeats an atom"));
        }
        if j > 0 && !stages[j - 1].iter().all(|i| stage.contains(i)) {
            return bad(format!("stage {j} does not contain stage {}", j - 1));
        }
    }
    if stages.last().map_or(0, Vec::len) != atoms {
        return bad("the last stage must contain every atom".into());
    }
    Ok(())
}

/// Height `t` such that `C ∩ H_t ⊂ K` for every `K` determined by `dirs` with
/// `V_n(C \ K) = 1`: `t = ζρ + diam(C_ζ)/a0`, where `V_n(C_ζ) > 1`,
/// `ρ = max 1/<g, w>` and `a0` is the angle margin of `dirs`.
pub fn lemma7_height(cone: &PolyhedralCone, dirs: &[Vector]) -> Result<f64> {
    let n = cone.dim() as f64;
    let v1 = cone.truncate(1.0)?.volume();
    let zeta = (1.0001 / v1).powf(1.0 / n);
    let rho = cone
        .generators()
        .iter()
        .map(|g| 1.0 / g.dot(cone.w()))
        .fold(0.0, f64::max);
    let mut apex = cone.section_vertices(zeta);
    apex.push(Vector::zeros(cone.dim()));
    let mut diam: f64 = 0.0;
    for (i, p) in apex.iter().enumerate() {
        for q in &apex[i + 1..] {
            diam = diam.max((p - q).norm());
        }
    }
    let a0 = cone.angle_margin(dirs);
    if a0.is_nan() || a0 <= 0.0 {
        return Err(Error::DegenerateInput(
            "directions touch the boundary of the polar cone".into(),
        ));
    }
    Ok(zeta * rho + diam / a0)
}

/// Whether the section `C ∩ H_t` lies in `K` once `body` is scaled to unit
/// coconvex volume.
pub fn section_inside_normalised(body: &CFullBody, t: f64) -> Result<bool> {
    let n = body.dim() as f64;
    let unit = body.scale(body.coconvex_volume().powf(-1.0 / n))?;
    let section = unit.cone().section_vertices(t);
    Ok(section.iter().all(|x| {
        unit.constraints()
            .iter()
            .all(|c| x.dot(&c.u) <= -c.f + 1e-9 * x.norm().max(1.0))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{validate_cone, vector};
    use crate::measure::Atom;

    const S2: f64 = std::f64::consts::SQRT_2;

    fn quadrant() -> Arc<PolyhedralCone> {
        Arc::new(validate_cone(&[vector(&[1.0, 0.0]), vector(&[0.0, 1.0])]).unwrap())
    }

    fn octant() -> Arc<PolyhedralCone> {
        Arc::new(
            validate_cone(&[
                vector(&[1.0, 0.0, 0.0]),
                vector(&[0.0, 1.0, 0.0]),
                vector(&[0.0, 0.0, 1.0]),
            ])
            .unwrap(),
        )
    }

    fn u_star() -> Vector {
        vector(&[-1.0, -1.0]) / S2
    }

    fn u1() -> Vector {
        vector(&[-2.0, -1.0]) / 5f64.sqrt()
    }

    fn u2() -> Vector {
        vector(&[-1.0, -2.0]) / 5f64.sqrt()
    }

    fn measure(atoms: &[(Vector, f64)]) -> DiscreteMeasure {
        DiscreteMeasure::new(
            atoms
                .iter()
                .map(|(u, m)| Atom::new(u.clone(), *m))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn functional_and_gradient() {
        let c = quadrant();
        assert!((volume_functional(&c, &[u_star()], &[1.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((volume_functional(&c, &[u_star()], &[2.0]).unwrap() - 4.0).abs() < 1e-12);
        let two = [u1(), u2()];
        assert!((volume_functional(&c, &two, &[1.0, 1.0]).unwrap() - 5.0 / 3.0).abs() < 1e-12);
        let g = volume_gradient(&c, &two, &[1.0, 1.0]).unwrap();
        assert!(g.iter().all(|a| (a - 5.0 / 3.0).abs() < 1e-12));
        let g = volume_gradient(&c, &[u_star(), u1()], &[1.0, 0.1]).unwrap();
        assert!((g[0] - 2.0).abs() < 1e-12 && g[1] == 0.0);
    }

    #[test]
    fn surface_single_atoms() {
        let r = solve_surface(
            &quadrant(),
            &measure(&[(u_star(), 2.0)]),
            &SolverConfig::default(),
        )
        .unwrap();
        assert!(r.converged);
        assert!((r.f[0] - 1.0).abs() < 1e-8);

        let u = -vector(&[1.0, 1.0, 1.0]) / 3f64.sqrt();
        let phi = measure(&[(u, 1.5 * 3f64.sqrt())]);
        let r = solve_surface(&octant(), &phi, &SolverConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.f[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn surface_two_atoms() {
        let phi = measure(&[(u1(), 5.0 / 3.0), (u2(), 5.0 / 3.0)]);
        let cfg = SolverConfig {
            init: Init::Given(vec![1.0, 3.0]),
            ..SolverConfig::default()
        };
        let r = solve_surface(&quadrant(), &phi, &cfg).unwrap();
        assert!(r.converged, "residual {}", r.residual);
        assert!(r.f.iter().all(|f| (f - 1.0).abs() < 1e-8), "{:?}", r.f);
        for w in r.objective_trace.windows(2) {
            assert!(w[1] >= w[0] * (1.0 - 1e-13));
        }
    }

    #[test]
    fn cone_volume_cases() {
        let cfg = SolverConfig::default();
        let r = solve_cone_volume(&quadrant(), &measure(&[(u_star(), 1.0)]), &cfg).unwrap();
        assert!((r.f[0] - 1.0).abs() < 1e-8);
        let r = solve_cone_volume(&quadrant(), &measure(&[(u_star(), 4.0)]), &cfg).unwrap();
        assert!((r.f[0] - 2.0).abs() < 1e-8);
        let phi = measure(&[(u1(), 5.0 / 6.0), (u2(), 5.0 / 6.0)]);
        let r = solve_cone_volume(
            &quadrant(),
            &phi,
            &SolverConfig {
                init: Init::Random { seed: 7 },
                ..cfg
            },
        )
        .unwrap();
        assert!(r.converged);
        assert!(r.f.iter().all(|f| (f - 1.0).abs() < 1e-8), "{:?}", r.f);
    }

    #[test]
    fn exhaustion_stages() {
        let phi = measure(&[(u1(), 5.0 / 6.0), (u2(), 5.0 / 6.0)]);
        let cfg = SolverConfig::default();
        let ex = exhaustion_experiment(&quadrant(), &phi, &[vec![0], vec![0, 1], vec![1, 0]], &cfg)
            .unwrap();
        assert_eq!(ex.reports.len(), 3);
        // single atom at u1 cuts the triangle with legs √5f/2 and √5f, so V = 5f²/4
        let f = (5.0 / 6.0 * 4.0 / 5.0f64).sqrt();
        assert!((ex.reports[0].f[0] - f).abs() < 1e-8);
        assert!(ex.reports[1].f.iter().all(|f| (f - 1.0).abs() < 1e-8));
        assert!(ex.distances[1][2] < 1e-9);
        assert!(ex.distances[0][1] > 0.0);

        for stages in [
            vec![],
            vec![vec![0]],
            vec![vec![0, 1], vec![1]],
            vec![vec![0, 2]],
        ] {
            assert!(matches!(
                exhaustion_experiment(&quadrant(), &phi, &stages, &cfg),
                Err(Error::InvalidStages(_))
            ));
        }
    }

    #[test]
    fn lemma7_section_is_inside() {
        let c = quadrant();
        let phi = measure(&[(u1(), 5.0 / 3.0), (u2(), 1.0)]);
        let r = solve_surface(&c, &phi, &SolverConfig::default()).unwrap();
        let t = lemma7_height(&c, &phi.directions()).unwrap();
        assert!(section_inside_normalised(&r.body, t).unwrap());
    }

    #[test]
    fn config_is_validated() {
        let phi = measure(&[(u_star(), 1.0)]);
        let cfg = SolverConfig {
            backtrack: 1.5,
            ..SolverConfig::default()
        };
        assert!(matches!(
            solve_surface(&quadrant(), &phi, &cfg),
            Err(Error::InvalidConfig(_))
        ));
        let outside = measure(&[(vector(&[0.0, -1.0]), 1.0)]);
        assert!(matches!(
            solve_surface(&quadrant(), &outside, &SolverConfig::default()),
            Err(Error::InvalidMeasure(_))
        ));
    }
}
