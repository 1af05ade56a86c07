use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rotsurf::cli::{cmd_generate, cmd_torus, cmd_verify, exit_code_for, JobConfig};

/// Rotational cmc/chc surface generator for the 3-sphere and hyperbolic
/// 3-space: meshes, verification suites and embedded-torus closure.
#[derive(Parser)]
#[command(name = "rotsurf", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a surface mesh (OBJ) with profile CSV and JSON metadata.
    Generate(SpecArgs),
    /// Run the verification suites and write a report; exits 1 on failure.
    Verify(SpecArgs),
    /// Solve the S3 torus closure condition for given lobe counts.
    Torus(TorusArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// JSON config file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Ambient space: s3 or h3.
    #[arg(long)]
    space: Option<String>,
    /// Rotation kind: elliptic, hyperbolic or parabolic.
    #[arg(long)]
    rotation: Option<String>,
    /// Constant mean curvature H (>= 0).
    #[arg(long, conflicts_with = "chc")]
    cmc: Option<f64>,
    /// Constant harmonic mean curvature (|Hbar| >= 1, H3 only).
    #[arg(long)]
    chc: Option<f64>,
    /// Integration constant C.
    #[arg(long = "C", allow_hyphen_values = true)]
    c: Option<f64>,
    /// Grid resolution in the rotation direction.
    #[arg(long)]
    ntheta: Option<usize>,
    /// Grid resolution along the profile.
    #[arg(long)]
    nt: Option<usize>,
    /// Profile parameter range a:b (defaults to the profile domain).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    trange: Option<Range2>,
    /// Rotation parameter range a:b (defaults to a full turn where periodic).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    thetarange: Option<Range2>,
    /// Output directory (default: out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Projection for the R3 copy: stereo, poincare or none.
    #[arg(long)]
    project: Option<String>,
    /// Tolerance overrides, repeatable: --tol name=value.
    #[arg(long, value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    /// Radius perturbation for negative-control verification runs.
    #[arg(long, allow_hyphen_values = true)]
    perturb_r: Option<f64>,
    /// Base name for output files (default: surface).
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct TorusArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Lobe count or inclusive range, e.g. 5 or 5..6.
    #[arg(long)]
    n: Option<String>,
    /// C-bracket a:b to scan (defaults to the feasible interval).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    bracket: Option<Range2>,
    /// Export one OBJ mesh per closed torus found.
    #[arg(long)]
    export: bool,
}

#[derive(Clone, Copy)]
struct Range2([f64; 2]);

fn parse_range(text: &str) -> Result<Range2, String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("expected a:b, got '{text}'"))?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    Ok(Range2([lo, hi]))
}

fn parse_tol(text: &str) -> Result<(String, f64), String> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got '{text}'"))?;
    let v: f64 = value.trim().parse().map_err(|e| format!("bad tolerance: {e}"))?;
    Ok((name.trim().to_string(), v))
}

impl SpecArgs {
    fn into_config(self) -> Result<JobConfig, rotsurf::Error> {
        let flags = JobConfig {
            space: self.space,
            rotation: self.rotation,
            cmc: self.cmc,
            chc: self.chc,
            c: self.c,
            ntheta: self.ntheta,
            nt: self.nt,
            trange: self.trange.map(|r| r.0),
            thetarange: self.thetarange.map(|r| r.0),
            out: self.out,
            project: self.project,
            tol: self.tol.into_iter().collect(),
            perturb_r: self.perturb_r,
            name: self.name,
            ..Default::default()
        };
        Ok(match &self.config {
            Some(path) => JobConfig::load(path)?.merged_with(flags),
            None => flags,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => args.into_config().and_then(|cfg| {
            let paths = cmd_generate(&cfg)?;
            for p in paths {
                println!("{}", p.display());
            }
            Ok(ExitCode::SUCCESS)
        }),
        Command::Verify(args) => args.into_config().and_then(|cfg| {
            let (report, paths) = cmd_verify(&cfg)?;
            print!("{report}");
            for p in paths {
                println!("{}", p.display());
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }),
        Command::Torus(args) => {
            let TorusArgs { spec, n, bracket, export } = args;
            spec.into_config().and_then(|mut cfg| {
                if n.is_some() {
                    cfg.n = n;
                }
                if let Some(b) = bracket {
                    cfg.bracket = Some(b.0);
                }
                if export {
                    cfg.export_meshes = Some(true);
                }
                let run = cmd_torus(&cfg)?;
                println!("{:>3} {:>24} {:>9} {:>12}", "n", "C*", "embedded", "defect");
                for row in &run.rows {
                    println!(
                        "{:>3} {:>24.16e} {:>9} {:>12.3e}",
                        row.n, row.c_star, row.embedded, row.defect
                    );
                }
                for p in run.paths {
                    println!("{}", p.display());
                }
                Ok(ExitCode::SUCCESS)
            })
        }
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
