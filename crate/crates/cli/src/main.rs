use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use cech_core::bench::{rows_to_csv, run_benchmark, samples_to_csv, summarize, BenchConfig};
use cech_core::io::{disks_to_csv, read_disks, write_disks, write_file};
use cech_core::oracle::{cross_check, DEFAULT_RESOLUTION};
use cech_core::report::{run, OutputPaths, RunOptions, Source};
use cech_core::scenario::{generate_scenario, ScenarioConfig};
use cech_core::{render, ComplexBuilder, ComplexKind, Tolerance, UNBOUNDED};
use clap::{Args, Parser, Subcommand};

/// Čech and Rips complexes of planar disks, with coverage homology.
#[derive(Parser)]
#[command(name = "cech", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a random deployment and write it as a disk file.
    Generate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Output disk file (.csv or .json); stdout as CSV when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Čech complex and report Betti numbers and vertex indices.
    Build {
        #[command(flatten)]
        build: BuildArgs,
        /// Build the Rips complex instead.
        #[arg(long)]
        rips: bool,
    },
    /// Build the Rips complex of the same disks.
    Rips {
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Draw the disks and their complex as SVG.
    Render {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        complex: ComplexArgs,
        #[arg(long)]
        rips: bool,
        /// Output SVG; stdout when omitted.
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Time construction over densities and dimension caps.
    Bench {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long, value_delimiter = ',', default_value = "1,1.5,2")]
        densities: Vec<f64>,
        #[arg(long, value_delimiter = ',', value_parser = parse_dmax, default_value = "2,10")]
        dmax: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        repeats: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = Tolerance::DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Summary CSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-run CSV.
        #[arg(long)]
        out_raw: Option<PathBuf>,
    },
    /// Compare a built complex with the brute-force oracle.
    Crosscheck {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        complex: ComplexArgs,
        /// Oracle grid resolution in plane units.
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: f64,
    },
}

#[derive(Args, Clone)]
struct RegionArgs {
    #[arg(long, default_value_t = 6.0)]
    width: f64,
    #[arg(long, default_value_t = 6.0)]
    height: f64,
    #[arg(long, default_value_t = 0.5)]
    rmin: f64,
    #[arg(long, default_value_t = 1.0)]
    rmax: f64,
}

#[derive(Args, Clone)]
struct ScenarioArgs {
    #[command(flatten)]
    region: RegionArgs,
    /// Expected cells per unit area.
    #[arg(long, default_value_t = 1.0)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Disks come from `--input` or, without it, from the scenario flags.
#[derive(Args, Clone)]
struct InputArgs {
    /// Disk file (.csv or .json).
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    scenario: ScenarioArgs,
}

#[derive(Args, Clone)]
struct ComplexArgs {
    /// Highest simplex dimension to build, or "full" for no cap.
    #[arg(long, value_parser = parse_dmax, default_value = "2")]
    dmax: usize,
    #[arg(long, default_value_t = Tolerance::DEFAULT_EPS)]
    eps: f64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Clone)]
struct BuildArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    complex: ComplexArgs,
    #[arg(long)]
    out_complex: Option<PathBuf>,
    /// Report JSON; printed to stdout either way.
    #[arg(long)]
    out_report: Option<PathBuf>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
}

fn parse_dmax(s: &str) -> Result<usize, String> {
    if s.eq_ignore_ascii_case("full") {
        return Ok(UNBOUNDED);
    }
    match s.parse::<usize>() {
        Ok(d) if d >= 1 => Ok(d),
        _ => Err(format!("expected an integer >= 1 or \"full\", got {s:?}")),
    }
}

impl ScenarioArgs {
    fn config(&self, dmax: usize) -> ScenarioConfig {
        ScenarioConfig {
            width: self.region.width,
            height: self.region.height,
            density: self.density,
            radius_min: self.region.rmin,
            radius_max: self.region.rmax,
            seed: self.seed,
            dmax,
        }
    }
}

impl InputArgs {
    fn source(&self, dmax: usize) -> Source {
        match &self.input {
            Some(path) => Source::File(path.clone()),
            None => Source::Generated(self.scenario.config(dmax)),
        }
    }

    fn disks(&self, dmax: usize) -> Result<cech_core::DiskSet> {
        Ok(match &self.input {
            Some(path) => read_disks(path)?,
            None => generate_scenario(&self.scenario.config(dmax))?,
        })
    }
}

impl ComplexArgs {
    fn options(&self, kind: ComplexKind) -> Result<RunOptions> {
        Ok(RunOptions {
            kind,
            dmax: self.dmax,
            tol: Tolerance::new(self.eps)?,
            threads: self.threads,
        })
    }
}

fn stdout(bytes: &[u8]) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes)?;
    out.flush()?;
    Ok(())
}

fn build(args: &BuildArgs, kind: ComplexKind) -> Result<()> {
    let opts = args.complex.options(kind)?;
    let output = run(&args.input.source(args.complex.dmax), &opts)?;
    output.write(&OutputPaths {
        complex: args.out_complex.clone(),
        report: args.out_report.clone(),
        svg: args.out_svg.clone(),
    })?;
    let mut text = serde_json::to_string_pretty(&output.report)?;
    text.push('\n');
    stdout(text.as_bytes())
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Generate { scenario, out } => {
            let ds = generate_scenario(&scenario.config(2))?;
            match out {
                Some(path) => write_disks(&ds, &path)?,
                None => stdout(disks_to_csv(&ds).as_bytes())?,
            }
        }
        Command::Build { build: args, rips } => build(
            &args,
            if rips {
                ComplexKind::Rips
            } else {
                ComplexKind::Cech
            },
        )?,
        Command::Rips { build: args } => build(&args, ComplexKind::Rips)?,
        Command::Render {
            input,
            complex,
            rips,
            out_svg,
        } => {
            let ds = input.disks(complex.dmax)?;
            let kind = if rips {
                ComplexKind::Rips
            } else {
                ComplexKind::Cech
            };
            let opts = complex.options(kind)?;
            let cx = cech_core::report::build_timed(&ds, &opts)?.0;
            match out_svg {
                Some(path) => render::write_svg(&ds, &cx, &path)?,
                None => stdout(render::render_svg(&ds, &cx).as_bytes())?,
            }
        }
        Command::Bench {
            region,
            densities,
            dmax,
            repeats,
            seed,
            eps,
            threads,
            out,
            out_raw,
        } => {
            if densities.is_empty() || dmax.is_empty() {
                bail!("--densities and --dmax need at least one value each");
            }
            let base = ScenarioArgs {
                region,
                density: 1.0,
                seed,
            }
            .config(2);
            let cfg = BenchConfig {
                densities,
                dmaxes: dmax,
                repeats,
                seed,
                base,
                tol: Tolerance::new(eps)?,
                threads,
            };
            let samples = run_benchmark(&cfg)?;
            let summary = rows_to_csv(&summarize(&samples));
            match out {
                Some(path) => write_file(&path, summary.as_bytes())?,
                None => stdout(summary.as_bytes())?,
            }
            if let Some(path) = out_raw {
                write_file(&path, samples_to_csv(&samples).as_bytes())?;
            }
        }
        Command::Crosscheck {
            input,
            complex,
            resolution,
        } => {
            if !(resolution.is_finite() && resolution > 0.0) {
                bail!("--resolution must be a positive number, got {resolution}");
            }
            let ds = input.disks(complex.dmax)?;
            let opts = complex.options(ComplexKind::Cech)?;
            let parallel = opts.threads != 1;
            let found = cech_core::with_threads(opts.threads, || -> Result<_> {
                let cx = ComplexBuilder::new(opts.dmax)
                    .tolerance(opts.tol)
                    .parallel(parallel)
                    .cech(&ds)?;
                let found = cross_check(&ds, &cx, resolution, parallel)?;
                Ok((cx.num_simplices(), found))
            })?;
            let (checked, disagreements) = found;
            for d in &disagreements {
                println!(
                    "disagreement {:?}: in complex {}, oracle {:?} (margin {:.3e})",
                    d.simplex.vertices(),
                    d.in_complex,
                    d.verdict.decision,
                    d.verdict.margin
                );
            }
            println!(
                "{} cells, {checked} simplices, {} disagreements",
                ds.len(),
                disagreements.len()
            );
            return Ok(disagreements.is_empty());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli).context("cech failed") {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
