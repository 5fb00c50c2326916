//! Command-line front end: condense a dataset, verify the guarantees on
//! it, benchmark the phases, render a picture, or synthesize instances.
//!
//! Exit status: 0 on success, 1 when verification finds a mismatch, 2 on
//! usage, parse, or I/O problems.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nnthin::bench::{log_log_slope, render_tsv, run_bench};
use nnthin::checks::{run_instance_checks, CheckConfig};
use nnthin::generate::{generate, Family, GeneratorSpec};
use nnthin::io::{dataset_to_csv, emit_result, ingest_csv, write_dataset_csv, ResultDoc};
use nnthin::svg::write_svg;
use nnthin::{condense_with_report, Error, Result, Tolerances};

#[derive(Parser)]
#[command(
    name = "nnthin",
    version,
    about = "Thins nearest-neighbor training sets to the boundary-defining points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ToleranceArgs {
    /// Geometric tolerance, relative to the data's extent
    #[arg(long, default_value_t = Tolerances::default().eps_geom)]
    eps_geom: f64,
    /// Clearance the wall oracle demands before trusting a strict inequality
    #[arg(long, default_value_t = Tolerances::default().eps_strict)]
    eps_strict: f64,
    /// Relative window for excluding near-tie queries from sampling
    #[arg(long, default_value_t = Tolerances::default().eps_tie)]
    eps_tie: f64,
}

impl ToleranceArgs {
    fn build(&self) -> Result<Tolerances> {
        Tolerances::new(self.eps_geom, self.eps_strict, self.eps_tie)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyKind {
    GridHalfplane,
    GaussianClusters,
    ConcentricAnnuli,
    ConvexRing,
}

#[derive(Args, Clone, Copy)]
struct FamilyParams {
    /// Cluster center spacing (gaussian-clusters)
    #[arg(long, default_value_t = 12.0)]
    separation: f64,
    /// Cluster standard deviation (gaussian-clusters)
    #[arg(long, default_value_t = 1.0)]
    spread: f64,
    /// Radial label band width (concentric-annuli)
    #[arg(long, default_value_t = 2.0)]
    band_width: f64,
    /// Circle radius (convex-ring)
    #[arg(long, default_value_t = 10.0)]
    radius: f64,
}

impl FamilyParams {
    fn family(&self, kind: FamilyKind) -> Family {
        match kind {
            FamilyKind::GridHalfplane => Family::GridHalfplane,
            FamilyKind::GaussianClusters => Family::GaussianClusters {
                separation: self.separation,
                spread: self.spread,
            },
            FamilyKind::ConcentricAnnuli => Family::ConcentricAnnuli {
                band_width: self.band_width,
            },
            FamilyKind::ConvexRing => Family::ConvexRing {
                radius: self.radius,
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Find the boundary-defining subset of a CSV dataset
    Condense {
        /// Input CSV: coordinate columns then a label column
        #[arg(long)]
        input: PathBuf,
        /// Result document path; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Run every named check against one dataset
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled queries for the classification comparison
        #[arg(long, default_value_t = 10_000)]
        queries: usize,
        /// Wall-oracle bounding-box inflation factor for the boxed witness
        /// pass; remote walls are covered by the homogeneous pass either way
        #[arg(long, default_value_t = nnthin::oracle::DEFAULT_BOX_INFLATION)]
        inflate: f64,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Time the spanning-tree and expansion phases over growing datasets
    Bench {
        /// Dataset sizes, ascending
        #[arg(long, value_delimiter = ',', default_values_t = vec![500_usize, 1000, 2000, 4000])]
        sizes: Vec<usize>,
        /// Timing repetitions per size; the fastest run is kept
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, value_enum, default_value_t = FamilyKind::GaussianClusters)]
        family: FamilyKind,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        labels: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        params: FamilyParams,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Draw a 2-D dataset, its spanning tree, and the relevant points
    Render {
        #[arg(long)]
        input: PathBuf,
        /// SVG path
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Emit a synthetic dataset as CSV
    Generate {
        #[arg(long, value_enum)]
        family: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        labels: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV path; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        params: FamilyParams,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<u8> {
    match command {
        Command::Condense {
            input,
            output,
            seed,
            tol,
        } => {
            let tol = tol.build()?;
            let data = ingest_csv(&input)?;
            let report = condense_with_report(&data, seed, &tol)?;
            match output {
                Some(path) => emit_result(&data, &report.result, seed, &tol, &path)?,
                None => print!("{}", ResultDoc::new(&data, &report.result, seed, &tol).to_json()),
            }
            Ok(0)
        }
        Command::Verify {
            input,
            seed,
            queries,
            inflate,
            tol,
        } => {
            let tol = tol.build()?;
            if queries == 0 {
                return Err(Error::InvalidParameter(
                    "verification needs at least one query".into(),
                ));
            }
            if !(inflate.is_finite() && inflate > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "inflation factor must be positive and finite, got {inflate}"
                )));
            }
            let data = ingest_csv(&input)?;
            let cfg = CheckConfig {
                seed,
                queries,
                oracle_inflation: inflate,
            };
            let report = run_instance_checks(&data, &cfg, &tol)?;
            print!("{}", report.render_text());
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Bench {
            sizes,
            reps,
            family,
            dim,
            labels,
            seed,
            params,
            tol,
        } => {
            let tol = tol.build()?;
            let template = GeneratorSpec {
                family: params.family(family),
                n: 0,
                dim,
                label_count: labels,
                seed,
            };
            let rows = run_bench(&sizes, &template, reps, seed, &tol)?;
            print!("{}", render_tsv(&rows));
            if rows.len() >= 2 {
                let samples: Vec<(f64, f64)> =
                    rows.iter().map(|r| (r.n as f64, r.total_ms)).collect();
                println!("log-log slope: {:.3}", log_log_slope(&samples)?);
            }
            Ok(0)
        }
        Command::Render {
            input,
            output,
            seed,
            tol,
        } => {
            let tol = tol.build()?;
            let data = ingest_csv(&input)?;
            let report = condense_with_report(&data, seed, &tol)?;
            write_svg(&data, &report.result, &report.tree, &output)?;
            Ok(0)
        }
        Command::Generate {
            family,
            n,
            dim,
            labels,
            seed,
            output,
            params,
        } => {
            let spec = GeneratorSpec {
                family: params.family(family),
                n,
                dim,
                label_count: labels,
                seed,
            };
            let data = generate(&spec)?;
            match output {
                Some(path) => write_dataset_csv(&data, &path)?,
                None => print!("{}", dataset_to_csv(&data)),
            }
            Ok(0)
        }
    }
}
