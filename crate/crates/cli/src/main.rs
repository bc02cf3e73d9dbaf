mod off;
mod scene;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coconvex::oracles::mc_volume;
use coconvex::solver::{exhaustion_experiment, Init, SolverConfig, SolverReport};
use coconvex::{
    bm_check, minkowski_first_check, mixed_volume, mixed_volume_by_integral, solve_cone_volume,
    solve_surface, CFullBody, DiscreteMeasure, InequalityVerdict, Tolerances,
};
use serde_json::{json, Value};
use thiserror::Error;

use scene::Scene;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0}")]
    NonConvergence(String),
    #[error("{0}")]
    Violation(String),
}

impl From<coconvex::Error> for CliError {
    fn from(e: coconvex::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::NonConvergence(_) => 4,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "coconvex",
    version,
    about = "Coconvex Brunn-Minkowski calculus for polyhedral cones"
)]
struct Cli {
    /// Scene file (JSON) holding the cone, bodies and measures.
    #[arg(long, global = true)]
    scene: Option<PathBuf>,

    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    /// Only meaningful for `measures`.
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureKind {
    Surface,
    #[value(name = "conevolume")]
    ConeVolume,
}

#[derive(Subcommand)]
enum Command {
    /// Coconvex volume of a body.
    Volume { body: String },
    /// Surface area and cone-volume measures of a body.
    Measures {
        body: String,
        /// Measure written by `--format csv`.
        #[arg(long, value_enum, default_value_t = MeasureKind::Surface)]
        kind: MeasureKind,
    },
    /// Co-sum of two bodies.
    Cosum { a: String, b: String },
    /// Mixed volume of n bodies, given as a comma-separated list.
    Mixedvol {
        #[arg(value_delimiter = ',', required = true)]
        bodies: Vec<String>,
    },
    /// Inequality checks; exit status 1 when an inequality fails.
    Check {
        #[command(subcommand)]
        which: Check,
    },
    /// Recover a body from a measure; exit status 4 without convergence.
    Solve {
        #[arg(value_enum)]
        problem: MeasureKind,
        #[arg(long)]
        measure: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Cone-volume solves over nested stages, e.g. `--stages "0;0,1"`.
    Exhaust {
        #[arg(long)]
        measure: String,
        #[arg(long)]
        stages: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
    Oracle {
        #[command(subcommand)]
        which: Oracle,
    },
    Export {
        #[command(subcommand)]
        which: Export,
    },
    /// Print the scene in canonical form.
    Normalize,
}

#[derive(Subcommand)]
enum Check {
    /// Complemented Brunn-Minkowski inequality.
    Bm {
        a: String,
        b: String,
        #[arg(long)]
        lambda: f64,
    },
    /// Minkowski's first inequality for coconvex sets.
    Mink1 { a: String, b: String },
}

#[derive(Subcommand)]
enum Oracle {
    /// Monte-Carlo estimate of the coconvex volume.
    Mc {
        body: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, env = "COCONVEX_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Export {
    /// OFF mesh of the truncated body `K ∩ C_t`.
    Off {
        body: String,
        /// Truncation height; defaults to the smallest enclosing height.
        #[arg(long)]
        t: Option<f64>,
        /// Write to a file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct SolverArgs {
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Start from seeded random offsets instead of all ones.
    #[arg(long, env = "COCONVEX_SEED")]
    seed: Option<u64>,
}

impl SolverArgs {
    fn config(&self, scene: &Scene) -> SolverConfig {
        let mut cfg = SolverConfig::default();
        scene.file.config.apply(&mut cfg);
        if let Some(t) = self.tol {
            cfg.tol_residual = t;
        }
        if let Some(m) = self.max_iters {
            cfg.max_iters = m;
        }
        if let Some(seed) = self.seed {
            cfg.init = Init::Random { seed };
        }
        cfg
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let path = cli
        .scene
        .as_ref()
        .ok_or_else(|| CliError::Parse("--scene <FILE> is required".into()))?;
    let scene = scene::read(path)?;
    for w in &scene.warnings {
        eprintln!("warning: {w}");
    }
    let out = Output(cli.format);

    match &cli.command {
        Command::Volume { body } => {
            let b = scene.body(body)?;
            let v = b.coconvex_volume();
            out.emit(
                format!("{body}: volume {}", num(v)),
                json!({ "body": body, "volume": v }),
            );
        }
        Command::Measures { body, kind } => measures(&out, &scene, body, *kind)?,
        Command::Cosum { a, b } => {
            let sum = scene.body(a)?.co_sum(scene.body(b)?)?;
            let mut table = format!("{a} (+) {b}: volume {}\n", num(sum.coconvex_volume()));
            table.push_str(&constraint_table(&sum));
            out.emit(
                table,
                json!({
                    "volume": sum.coconvex_volume(),
                    "body": scene::body_spec(&sum),
                }),
            );
        }
        Command::Mixedvol { bodies } => {
            let args = bodies
                .iter()
                .map(|n| scene.body(n).cloned())
                .collect::<Result<Vec<CFullBody>, _>>()?;
            let v = mixed_volume(&args)?;
            let w = mixed_volume_by_integral(&args)?;
            out.emit(
                format!(
                    "mixed volume ({}): {}\nintegral form: {}",
                    bodies.join(", "),
                    num(v),
                    num(w)
                ),
                json!({ "bodies": bodies, "mixed_volume": v, "integral_form": w }),
            );
        }
        Command::Check { which } => {
            let (label, verdict) = match which {
                Check::Bm { a, b, lambda } => (
                    "brunn-minkowski",
                    bm_check(
                        scene.body(a)?,
                        scene.body(b)?,
                        *lambda,
                        Tolerances::default(),
                    )?,
                ),
                Check::Mink1 { a, b } => (
                    "minkowski first inequality",
                    minkowski_first_check(scene.body(a)?, scene.body(b)?, Tolerances::default())?,
                ),
            };
            out.emit(verdict_table(label, &verdict), verdict_json(&verdict));
            if !verdict.holds {
                return Err(CliError::Violation(format!(
                    "{label} violated: lhs {} > rhs {}",
                    verdict.lhs, verdict.rhs
                )));
            }
        }
        Command::Solve {
            problem,
            measure,
            solver,
        } => {
            let phi = scene.measure(measure)?;
            let cfg = solver.config(&scene);
            let report = match problem {
                MeasureKind::Surface => solve_surface(&scene.cone, phi, &cfg)?,
                MeasureKind::ConeVolume => solve_cone_volume(&scene.cone, phi, &cfg)?,
            };
            out.emit(report_table(&report), report_json(&report));
            if !report.converged {
                return Err(non_convergence(&report));
            }
        }
        Command::Exhaust {
            measure,
            stages,
            solver,
        } => {
            let phi = scene.measure(measure)?;
            let stages = parse_stages(stages)?;
            let ex = exhaustion_experiment(&scene.cone, phi, &stages, &solver.config(&scene))?;
            let mut table = String::new();
            for (j, (stage, r)) in stages.iter().zip(&ex.reports).enumerate() {
                table.push_str(&format!("stage {j} atoms {stage:?}\n{}\n", report_table(r)));
            }
            table.push_str("support distances\n");
            for row in &ex.distances {
                let cells: Vec<String> = row.iter().map(|d| format!("{:>12}", num(*d))).collect();
                table.push_str(&cells.join(" "));
                table.push('\n');
            }
            let reports: Vec<Value> = ex.reports.iter().map(report_json).collect();
            out.emit(
                table.trim_end().to_string(),
                json!({ "stages": stages, "reports": reports, "distances": ex.distances }),
            );
            if let Some(r) = ex.reports.iter().find(|r| !r.converged) {
                return Err(non_convergence(r));
            }
        }
        Command::Oracle {
            which:
                Oracle::Mc {
                    body,
                    samples,
                    seed,
                },
        } => {
            let b = scene.body(body)?;
            let est = mc_volume(b, *samples, *seed)?;
            let exact = b.coconvex_volume();
            out.emit(
                format!(
                    "{body}: estimate {} +- {} ({} samples, seed {})\nexact volume {}",
                    num(est.estimate),
                    num(est.stderr),
                    est.samples,
                    est.seed,
                    num(exact)
                ),
                json!({
                    "estimate": est.estimate,
                    "stderr": est.stderr,
                    "samples": est.samples,
                    "seed": est.seed,
                    "volume": exact,
                }),
            );
        }
        Command::Export {
            which: Export::Off { body, t, output },
        } => {
            let b = scene.body(body)?;
            let p = b.truncate(t.unwrap_or(b.min_enclosing_t()))?;
            let mesh = off::to_off(&p).ok_or_else(|| {
                CliError::Domain("OFF export needs a cone in 2 or 3 dimensions".into())
            })?;
            match output {
                Some(path) => std::fs::write(path, mesh).map_err(|e| {
                    CliError::Parse(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{mesh}"),
            }
        }
        Command::Normalize => print!("{}", scene::to_string(&scene.file)),
    }
    Ok(())
}

struct Output(Format);

impl Output {
    fn emit(&self, table: String, value: Value) {
        match self.0 {
            Format::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
            _ => println!("{table}"),
        }
    }
}

/// Shortest decimal that survives rounding to 12 significant digits.
fn num(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded:?}")
}

fn direction(u: &coconvex::geometry::Vector) -> String {
    let parts: Vec<String> = u.iter().map(|x| format!("{x:>9.6}")).collect();
    format!("({})", parts.join(", "))
}

fn constraint_table(body: &CFullBody) -> String {
    let mut s = String::from("direction                                  offset\n");
    for c in body.constraints() {
        s.push_str(&format!("{:<42} {}\n", direction(&c.u), num(c.f)));
    }
    s.trim_end().to_string()
}

fn measures(out: &Output, scene: &Scene, name: &str, kind: MeasureKind) -> Result<(), CliError> {
    let b = scene.body(name)?;
    let surface = b.surface_area_measure();
    let cone_volume = b.cone_volume_measure();
    match out.0 {
        Format::Csv => {
            let m = match kind {
                MeasureKind::Surface => &surface,
                MeasureKind::ConeVolume => &cone_volume,
            };
            print!("{}", csv(m, b.dim()));
        }
        Format::Json => out.emit(
            String::new(),
            json!({
                "body": name,
                "surface_area": scene::measure_spec(&surface),
                "cone_volume": scene::measure_spec(&cone_volume),
            }),
        ),
        Format::Table => {
            let mut s = format!(
                "{:<42} {:>18} {:>18}\n",
                "direction", "surface area", "cone volume"
            );
            for (a, c) in surface.atoms().iter().zip(cone_volume.atoms()) {
                s.push_str(&format!(
                    "{:<42} {:>18} {:>18}\n",
                    direction(&a.u),
                    num(a.mass),
                    num(c.mass)
                ));
            }
            s.push_str(&format!(
                "{:<42} {:>18} {:>18}",
                "total",
                num(surface.total_mass()),
                num(cone_volume.total_mass())
            ));
            out.emit(s, Value::Null);
        }
    }
    Ok(())
}

fn csv(m: &DiscreteMeasure, dim: usize) -> String {
    let mut header: Vec<String> = (1..=dim).map(|k| format!("direction_{k}")).collect();
    header.push("mass".into());
    let mut s = header.join(",");
    s.push('\n');
    for a in m.atoms() {
        let mut row: Vec<String> = a.u.iter().map(|x| format!("{x:?}")).collect();
        row.push(format!("{:?}", a.mass));
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn verdict_table(label: &str, v: &InequalityVerdict) -> String {
    let status = match (v.holds, v.equality) {
        (false, _) => "VIOLATED",
        (true, true) => "equality",
        (true, false) => "strict",
    };
    format!(
        "{label}: {status}\nlhs   {}\nrhs   {}\nslack {}\nhomothetic {}",
        num(v.lhs),
        num(v.rhs),
        num(v.slack),
        v.homothetic
    )
}

fn verdict_json(v: &InequalityVerdict) -> Value {
    json!({
        "lhs": v.lhs,
        "rhs": v.rhs,
        "slack": v.slack,
        "holds": v.holds,
        "equality": v.equality,
        "tol_eq": v.tol_eq,
        "homothetic": v.homothetic,
    })
}

fn report_table(r: &SolverReport) -> String {
    let mut s = format!(
        "converged {} after {} iterations, residual {}, scale factor {}\n",
        r.converged,
        r.iterations,
        num(r.residual),
        num(r.scale_factor)
    );
    s.push_str(&constraint_table(&r.body));
    s
}

fn report_json(r: &SolverReport) -> Value {
    json!({
        "converged": r.converged,
        "iterations": r.iterations,
        "residual": r.residual,
        "scale_factor": r.scale_factor,
        "f": r.f,
        "body": scene::body_spec(&r.body),
        "objective_trace": r.objective_trace,
    })
}

fn non_convergence(r: &SolverReport) -> CliError {
    CliError::NonConvergence(format!(
        "solver did not converge: residual {} after {} iterations",
        r.residual, r.iterations
    ))
}

/// `"0;0,1"` → `[[0], [0, 1]]`.
fn parse_stages(spec: &str) -> Result<Vec<Vec<usize>>, CliError> {
    spec.split(';')
        .map(|stage| {
            stage
                .split(',')
                .map(|i| {
                    i.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Parse(format!("bad atom index '{i}' in --stages")))
                })
                .collect()
        })
        .collect()
}
