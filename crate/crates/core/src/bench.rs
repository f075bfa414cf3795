//! Construction-time sweeps over density and dimension cap.
//!
//! Each `(density, repeat)` pair draws one scenario, which is then built once
//! per dimension cap so the caps are compared on identical inputs. Only the
//! construction is timed.

use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::{dmax_label, ComplexKind};
use crate::geometry::Tolerance;
use crate::report::{build_timed, RunOptions};
use crate::scenario::{generate_scenario, ScenarioConfig};
use crate::Result;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub densities: Vec<f64>,
    pub dmaxes: Vec<usize>,
    pub repeats: usize,
    pub seed: u64,
    /// Region and radius range; density, seed and dmax are overridden.
    pub base: ScenarioConfig,
    pub tol: Tolerance,
    pub threads: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            densities: vec![1.0, 1.5, 2.0],
            dmaxes: vec![2, 10],
            repeats: 10,
            seed: 0,
            base: ScenarioConfig::default(),
            tol: Tolerance::default(),
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchSample {
    pub density: f64,
    #[serde(with = "crate::complex::dmax_serde")]
    pub dmax: usize,
    pub repeat: usize,
    pub cells: usize,
    /// Average number of neighbors per cell.
    pub mean_degree: f64,
    pub simplices: usize,
    pub ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub density: f64,
    #[serde(with = "crate::complex::dmax_serde")]
    pub dmax: usize,
    pub repeats: usize,
    pub mean_cells: f64,
    pub mean_degree: f64,
    pub mean_ms: f64,
    pub stddev_ms: f64,
}

/// Seed of the scenario used for repeat `repeat` at the `density_index`-th
/// density.
pub fn scenario_seed(seed: u64, density_index: usize, repeat: usize) -> u64 {
    seed.wrapping_add((density_index as u64).wrapping_mul(1_000_003))
        .wrapping_add(repeat as u64)
}

pub fn run_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchSample>> {
    let mut samples = Vec::new();
    for (di, &density) in cfg.densities.iter().enumerate() {
        for repeat in 0..cfg.repeats {
            let scenario = ScenarioConfig {
                density,
                seed: scenario_seed(cfg.seed, di, repeat),
                ..cfg.base.clone()
            };
            let ds = generate_scenario(&scenario)?;
            for &dmax in &cfg.dmaxes {
                let opts = RunOptions {
                    kind: ComplexKind::Cech,
                    dmax,
                    tol: cfg.tol,
                    threads: cfg.threads,
                };
                let (cx, ms) = build_timed(&ds, &opts)?;
                let edges = cx.level(1).map_or(0, <[_]>::len);
                let mean_degree = if ds.is_empty() {
                    0.0
                } else {
                    2.0 * edges as f64 / ds.len() as f64
                };
                samples.push(BenchSample {
                    density,
                    dmax,
                    repeat,
                    cells: ds.len(),
                    mean_degree,
                    simplices: cx.num_simplices(),
                    ms,
                });
            }
        }
    }
    Ok(samples)
}

fn mean(xs: impl Iterator<Item = f64>) -> (f64, usize) {
    let (sum, n) = xs.fold((0.0, 0), |(s, n), x| (s + x, n + 1));
    (if n == 0 { 0.0 } else { sum / n as f64 }, n)
}

/// One row per `(density, dmax)`, in first-seen order.
pub fn summarize(samples: &[BenchSample]) -> Vec<BenchRow> {
    let mut keys: Vec<(f64, usize)> = Vec::new();
    for s in samples {
        if !keys.iter().any(|&(d, m)| d == s.density && m == s.dmax) {
            keys.push((s.density, s.dmax));
        }
    }
    keys.into_iter()
        .map(|(density, dmax)| {
            let group: Vec<&BenchSample> = samples
                .iter()
                .filter(|s| s.density == density && s.dmax == dmax)
                .collect();
            let (mean_ms, n) = mean(group.iter().map(|s| s.ms));
            let var = if n > 1 {
                group.iter().map(|s| (s.ms - mean_ms).powi(2)).sum::<f64>() / (n - 1) as f64
            } else {
                0.0
            };
            BenchRow {
                density,
                dmax,
                repeats: n,
                mean_cells: mean(group.iter().map(|s| s.cells as f64)).0,
                mean_degree: mean(group.iter().map(|s| s.mean_degree)).0,
                mean_ms,
                stddev_ms: var.sqrt(),
            }
        })
        .collect()
}

pub const ROW_HEADER: &str = "density,dmax,repeats,mean_cells,mean_degree,mean_ms,stddev_ms";
pub const SAMPLE_HEADER: &str = "density,dmax,repeat,cells,mean_degree,simplices,ms";

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{ROW_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.3},{:.4},{:.6},{:.6}",
            r.density,
            dmax_label(r.dmax),
            r.repeats,
            r.mean_cells,
            r.mean_degree,
            r.mean_ms,
            r.stddev_ms
        );
    }
    out
}

pub fn samples_to_csv(samples: &[BenchSample]) -> String {
    let mut out = format!("{SAMPLE_HEADER}\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.4},{},{:.6}",
            s.density,
            dmax_label(s.dmax),
            s.repeat,
            s.cells,
            s.mean_degree,
            s.simplices,
            s.ms
        );
    }
    out
}
