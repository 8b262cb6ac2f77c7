//! `subdqi`: weights, verification suites, projection and convergence runs.

mod config;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use subdqi::analysis::{convergence_study, make_test_mesh, Hierarchy};
use subdqi::mesh::{load_obj, write_obj, HalfEdgeMesh, PolyMesh};
use subdqi::numeric::{Exact, Weight};
use subdqi::projector::{build_with, cc_weights, loop_weights, weights_for, Engine};
use subdqi::schemes::{limit_positions, loop_beta_exact, SchemeId};
use subdqi::Error;

use config::{Common, Resolved};

#[derive(Parser, Debug)]
#[command(name = "subdqi", version, about = "Quasi-interpolation projectors for subdivision surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the closed-form functional weights at one valence.
    Weights {
        #[command(flatten)]
        common: Common,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the consistency suites over a valence range.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Smallest valence checked.
        #[arg(long, default_value_t = 3)]
        min_valence: usize,
        /// Largest valence checked.
        #[arg(long, default_value_t = 12)]
        max_valence: usize,
    },
    /// Build the projector on a mesh and apply it to a function.
    Project {
        #[command(flatten)]
        common: Common,
        /// test (exp(-6 r^2)), one, x, y, xy or wave.
        #[arg(long)]
        function: Option<String>,
        /// Also write every functional (sample points and weights).
        #[arg(long)]
        functionals: bool,
    },
    /// Convergence study on a generated test mesh.
    Convergence {
        #[command(flatten)]
        common: Common,
    },
}

/// Failures mapped to exit codes: 1 for invalid input, 2 for numerical
/// checks that did not hold.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let root = match &e {
            Error::AtVertex { source, .. } => source.as_ref(),
            other => other,
        };
        match root {
            Error::SingularSystem(_)
            | Error::DegenerateFunction
            | Error::Evaluation { .. }
            | Error::UnsupportedBoundary(_) => Failure::Numerical(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Weights { common, json } => cmd_weights(&common.resolve()?, json),
        Command::Verify { common, min_valence, max_valence } => {
            let cfg = common.resolve()?;
            let schemes = match cfg.scheme_name.as_deref() {
                Some(_) => vec![cfg.scheme()?],
                None => vec![SchemeId::CatmullClark, SchemeId::Loop],
            };
            verify::run(&schemes, min_valence..=max_valence)
        }
        Command::Project { common, function, functionals } => {
            let cfg = common.resolve()?;
            let function = function.or(cfg.function.clone()).unwrap_or_else(|| "test".into());
            cmd_project(&cfg, &function, functionals)
        }
        Command::Convergence { common } => cmd_convergence(&common.resolve()?),
    }
}

fn exact_text(x: &Exact) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn cmd_weights(cfg: &Resolved, json: bool) -> Result<(), Failure> {
    let scheme = cfg.scheme()?;
    let n = cfg.valence.ok_or_else(|| Failure::Invalid("--valence is required".into()))?;
    if !(3..=12).contains(&n) {
        return Err(Error::UnsupportedValence(n).into());
    }
    let profile = weights_for(&scheme, n)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&profile).expect("serializable"));
        return Ok(());
    }
    let exact: Option<Vec<Exact>> = match &scheme {
        SchemeId::CatmullClark => Some(cc_weights::<Exact>(n).to_vec()),
        SchemeId::Loop => loop_beta_exact(n).map(|b| {
            let alpha = Exact::int(1) - Exact::int(n as i64) * b.clone();
            loop_weights(n, alpha, b).to_vec()
        }),
        SchemeId::ModifiedLoop(_) => None,
    };
    println!("scheme {} valence {n}", scheme.name());
    for (i, w) in profile.weights.iter().enumerate() {
        let e = exact.as_ref().map(|e| format!("  ({})", exact_text(&e[i]))).unwrap_or_default();
        println!("w{} {:?} x{} {:.16e}{e}", i + 1, profile.orbits[i], profile.orbit_sizes[i], w);
    }
    let total = profile.total();
    println!("sum {total:.16e}");
    if (total - 1.0).abs() > 1e-12 {
        return Err(Failure::Numerical(format!("weights sum to {total:e}")));
    }
    Ok(())
}

fn named_function(name: &str) -> Result<fn(&subdqi::Point3) -> f64, Failure> {
    Ok(match name {
        "test" => subdqi::analysis::test_function,
        "one" => |_| 1.0,
        "x" => |p| p.x,
        "y" => |p| p.y,
        "xy" => |p| p.x * p.y,
        "wave" => |p| (3.0 * p.x).sin() * (2.0 * p.y).cos(),
        other => return Err(Failure::Invalid(format!("unknown function '{other}'"))),
    })
}

fn load_mesh(cfg: &Resolved, scheme: &SchemeId) -> Result<PolyMesh, Failure> {
    match (&cfg.mesh, &cfg.generator) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            Ok(load_obj(&text)?)
        }
        (None, Some((family, n))) => {
            if *family != scheme.family() {
                return Err(Failure::Invalid(format!("generator family does not match scheme {}", scheme.name())));
            }
            Ok(make_test_mesh(*family, *n)?)
        }
        (None, None) => {
            let n = cfg.valence.unwrap_or(scheme.regular_valence());
            Ok(make_test_mesh(scheme.family(), n)?)
        }
        (Some(_), Some(_)) => Err(Failure::Invalid("give either --mesh or --gen, not both".into())),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Invalid(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct ProjectOutput<'a> {
    scheme: &'a str,
    function: &'a str,
    coefficients: Vec<Option<f64>>,
}

fn cmd_project(cfg: &Resolved, function: &str, functionals: bool) -> Result<(), Failure> {
    let scheme = cfg.scheme()?;
    let f = named_function(function)?;
    let poly = load_mesh(cfg, &scheme)?;
    let mesh = HalfEdgeMesh::new(&poly)?;
    let engine = Engine::new(mesh.clone(), scheme.clone())?;
    let qi = build_with(&engine)?;
    let c = qi.apply(f)?;
    let mut coefficients: Vec<Option<f64>> = c.iter().copied().map(Some).collect();
    for &v in &qi.skipped {
        coefficients[v] = None;
    }
    let out = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let doc = ProjectOutput { scheme: scheme.name(), function, coefficients };
    write_file(&out.join("coefficients.json"), &serde_json::to_string_pretty(&doc).expect("serializable"))?;
    if functionals {
        write_file(&out.join("functionals.json"), &qi.to_json())?;
    }
    // Height field of Q(f) over the limit positions, k levels deep.
    let depth = cfg.depth.unwrap_or(2);
    let hier = Hierarchy::new(mesh, &scheme, depth)?;
    let fine = hier.levels.last().expect("base level");
    let limit = limit_positions(fine, &scheme)?;
    let values = hier.limit_all(0, &c)?;
    let mut surface = fine.to_poly_mesh();
    for (p, (l, z)) in surface.vertices.iter_mut().zip(limit.iter().zip(&values)) {
        *p = subdqi::Point3::new(l.x, l.y, *z);
    }
    write_file(&out.join("fitted.obj"), &write_obj(&surface))?;
    let samples = hier.sample(0, &c)?;
    let max_err = hier.points.iter().zip(&samples).map(|(p, v)| (f(p) - v).abs()).fold(0.0, f64::max);
    println!(
        "{} functionals ({} skipped); max |Q(f) - f| over the active region at depth {depth}: {max_err:.16e}",
        qi.functionals.len(),
        qi.skipped.len()
    );
    Ok(())
}

fn cmd_convergence(cfg: &Resolved) -> Result<(), Failure> {
    let scheme = cfg.scheme()?;
    let n = cfg.valence.unwrap_or(scheme.regular_valence());
    let levels = cfg.levels.clone().unwrap_or_else(|| (1..=4).collect());
    if levels.len() < 2 {
        return Err(Failure::Invalid("at least two levels are needed".into()));
    }
    let depth = cfg.depth.unwrap_or(3);
    let report = convergence_study(&scheme, n, &levels, depth)?;
    let csv = report.to_csv();
    match &cfg.out {
        Some(out) => {
            write_file(&out.join("convergence.csv"), &csv)?;
            write_file(&out.join("convergence.json"), &report.to_json())?;
        }
        None => print!("{csv}"),
    }
    println!("fitted order L2 {:.16e}", report.fitted_order2);
    println!("fitted order Linf {:.16e}", report.fitted_order_inf);
    Ok(())
}
