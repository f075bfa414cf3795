//! One end-to-end run: load or generate disks, build, compute homology,
//! write outputs.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::complex::{CechComplex, ComplexBuilder, ComplexKind, DiskSet, UNBOUNDED};
use crate::geometry::Tolerance;
use crate::homology::{betti_numbers, max_betti_dim, VertexIndex};
use crate::scenario::{generate_scenario, ScenarioConfig};
use crate::{io, render, Result};

#[derive(Debug, Clone)]
pub enum Source {
    File(PathBuf),
    Generated(ScenarioConfig),
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub kind: ComplexKind,
    pub dmax: usize,
    pub tol: Tolerance,
    /// 1 runs on the calling thread; anything else builds on a rayon pool of
    /// that size (0 = one worker per core).
    pub threads: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            kind: ComplexKind::Cech,
            dmax: 2,
            tol: Tolerance::default(),
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub source: String,
    pub scenario: Option<ScenarioConfig>,
    pub kind: ComplexKind,
    pub dmax: Option<usize>,
    pub eps: f64,
    pub threads: usize,
    pub cells: usize,
    pub level_sizes: Vec<usize>,
    pub betti: Vec<usize>,
    pub ranks: Vec<usize>,
    pub vertex_indices: Vec<VertexIndex>,
    /// Wall-clock time of complex construction only.
    pub construction_ms: f64,
}

impl RunReport {
    /// The report with timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> RunReport {
        RunReport {
            construction_ms: 0.0,
            ..self.clone()
        }
    }
}

#[derive(Debug, Default, Clone)]
pub struct OutputPaths {
    pub complex: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

pub struct RunOutput {
    pub disks: DiskSet,
    pub complex: CechComplex,
    pub report: RunReport,
}

/// Builds the complex for `opts` on the requested number of threads and times
/// the construction alone.
pub fn build_timed(ds: &DiskSet, opts: &RunOptions) -> Result<(CechComplex, f64)> {
    let builder = ComplexBuilder::new(opts.dmax)
        .tolerance(opts.tol)
        .parallel(opts.threads != 1);
    crate::with_threads(opts.threads, || {
        let start = Instant::now();
        let cx = builder.build(ds, opts.kind)?;
        Ok((cx, start.elapsed().as_secs_f64() * 1e3))
    })
}

pub fn run_on(
    ds: DiskSet,
    source: String,
    scenario: Option<ScenarioConfig>,
    opts: &RunOptions,
) -> Result<RunOutput> {
    let (cx, ms) = build_timed(&ds, opts)?;
    let hom = betti_numbers(&cx, max_betti_dim(&cx))?;
    let report = RunReport {
        source,
        scenario,
        kind: opts.kind,
        dmax: (opts.dmax != UNBOUNDED).then_some(opts.dmax),
        eps: opts.tol.eps,
        threads: opts.threads,
        cells: ds.len(),
        level_sizes: hom.level_sizes,
        betti: hom.betti,
        ranks: hom.ranks,
        vertex_indices: hom.vertex_indices,
        construction_ms: ms,
    };
    Ok(RunOutput {
        disks: ds,
        complex: cx,
        report,
    })
}

pub fn run(source: &Source, opts: &RunOptions) -> Result<RunOutput> {
    match source {
        Source::File(path) => run_on(
            io::read_disks(path)?,
            path.display().to_string(),
            None,
            opts,
        ),
        Source::Generated(cfg) => run_on(
            generate_scenario(cfg)?,
            "generated".into(),
            Some(cfg.clone()),
            opts,
        ),
    }
}

impl RunOutput {
    pub fn write(&self, paths: &OutputPaths) -> Result<()> {
        if let Some(p) = &paths.complex {
            io::write_file(p, io::complex_to_json(&self.complex)?.as_bytes())?;
        }
        if let Some(p) = &paths.report {
            write_report(&self.report, p)?;
        }
        if let Some(p) = &paths.svg {
            render::write_svg(&self.disks, &self.complex, p)?;
        }
        Ok(())
    }
}

pub fn write_report(report: &RunReport, path: &Path) -> Result<()> {
    io::write_file(path, serde_json::to_string_pretty(report)?.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_reports_zeros() {
        let out = run_on(
            DiskSet::default(),
            "empty".into(),
            None,
            &RunOptions::default(),
        )
        .unwrap();
        assert_eq!(out.report.level_sizes, vec![0]);
        assert_eq!(out.report.betti, vec![0, 0]);
        assert!(out.report.construction_ms >= 0.0);
    }

    #[test]
    fn generated_runs_are_reproducible() {
        let cfg = ScenarioConfig {
            seed: 5,
            ..Default::default()
        };
        let opts = RunOptions {
            threads: 2,
            ..Default::default()
        };
        let a = run(&Source::Generated(cfg.clone()), &opts).unwrap();
        let b = run(&Source::Generated(cfg), &RunOptions::default()).unwrap();
        assert_eq!(a.report.betti.len(), 2);
        assert_eq!(a.complex, b.complex);
        assert_eq!(
            RunReport {
                threads: 0,
                ..a.report.without_timing()
            },
            RunReport {
                threads: 0,
                ..b.report.without_timing()
            }
        );
    }
}
