//! Brute-force test of "do these disks share a point?".
//!
//! The common intersection of closed disks is the zero sublevel set of
//! `f(p) = max_i (|p - c_i| - r_i)`. `f` is 1-Lipschitz and any common point
//! lies inside the smallest disk, so a grid over that disk's bounding box
//! brackets the minimum of `f`. The grid is walked coarse to fine as a
//! quadtree: a cell of half-diagonal `h` whose center value exceeds the best
//! sample by more than `h` cannot hold the minimum and is dropped. Refinement
//! continues past `resolution` down to `resolution / 100`.
//!
//! This module is test machinery. It is slow and shares no code with the
//! candidate verification in [`crate::complex`].

use serde::Serialize;

use crate::complex::{CechComplex, ComplexBuilder, DiskSet, Simplex};
use crate::geometry::Disk;
use crate::Result;

pub const DEFAULT_RESOLUTION: f64 = 1e-3;
/// Ratio between the grid resolution and the final refinement step.
pub const REFINEMENT: f64 = 100.0;
/// Surviving cells per level before the search gives up as inconclusive.
const MAX_CELLS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleVerdict {
    pub decision: Decision,
    /// `f` at the best sample point; negative means strictly inside all disks.
    pub margin: f64,
}

/// Width of the band around zero in which no decision is made.
pub fn guard_band(resolution: f64) -> f64 {
    2.0 * resolution / REFINEMENT
}

fn slack(disks: &[Disk], x: f64, y: f64) -> f64 {
    disks
        .iter()
        .map(|d| (x - d.center.x).hypot(y - d.center.y) - d.radius)
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn common_point_exists(disks: &[Disk], resolution: f64) -> OracleVerdict {
    assert!(resolution > 0.0, "resolution must be positive");
    let guard = guard_band(resolution);
    let Some(smallest) = disks.iter().min_by(|a, b| a.radius.total_cmp(&b.radius)) else {
        // no constraints: any point will do
        return OracleVerdict {
            decision: Decision::Yes,
            margin: f64::NEG_INFINITY,
        };
    };
    let finest = resolution / REFINEMENT;

    // cells are (center x, center y); all cells of a level share one side
    let mut side = 2.0 * smallest.radius;
    let mut cells = vec![(smallest.center.x, smallest.center.y)];
    let mut best = f64::INFINITY;
    loop {
        let half_diag = side * std::f64::consts::FRAC_1_SQRT_2;
        let values: Vec<f64> = cells.iter().map(|&(x, y)| slack(disks, x, y)).collect();
        best = values.iter().copied().fold(best, f64::min);
        let lower = values.iter().copied().fold(f64::INFINITY, f64::min) - half_diag;

        if best <= -guard {
            return OracleVerdict {
                decision: Decision::Yes,
                margin: best,
            };
        }
        if lower > guard {
            return OracleVerdict {
                decision: Decision::No,
                margin: best,
            };
        }
        if side <= finest {
            break;
        }

        let quarter = side / 4.0;
        let mut next = Vec::with_capacity(cells.len() * 4);
        for (&(x, y), &v) in cells.iter().zip(&values) {
            if v - half_diag <= best {
                for (sx, sy) in [(-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0), (1.0, 1.0)] {
                    next.push((x + sx * quarter, y + sy * quarter));
                }
            }
        }
        if next.len() > MAX_CELLS {
            let decision = if best <= 0.0 {
                Decision::Yes
            } else {
                Decision::Inconclusive
            };
            return OracleVerdict {
                decision,
                margin: best,
            };
        }
        cells = next;
        side /= 2.0;
    }

    let decision = if best <= 0.0 {
        Decision::Yes
    } else if best > guard {
        Decision::No
    } else {
        Decision::Inconclusive
    };
    OracleVerdict {
        decision,
        margin: best,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub simplex: Simplex,
    pub in_complex: bool,
    pub verdict: OracleVerdict,
}

/// Compares membership of every simplex of `cx`, and of every clique of the
/// intersection graph up to `cx.dmax()`, with the oracle. Inconclusive
/// verdicts are skipped. Vertices are not checked.
pub fn cross_check(
    ds: &DiskSet,
    cx: &CechComplex,
    resolution: f64,
    parallel: bool,
) -> Result<Vec<Disagreement>> {
    let rips = ComplexBuilder::new(cx.dmax())
        .tolerance(cx.tolerance())
        .parallel(parallel)
        .rips(ds)?;
    let mut subjects: Vec<&Simplex> = cx.simplices().filter(|s| s.dim() >= 1).collect();
    subjects.extend(rips.simplices().filter(|s| s.dim() >= 1 && !cx.contains(s)));

    let check = |s: &&Simplex| -> Option<Disagreement> {
        let disks: Vec<Disk> = s
            .vertices()
            .iter()
            .map(|&v| *ds.get(v).expect("simplex vertex outside the disk set"))
            .collect();
        let verdict = common_point_exists(&disks, resolution);
        let in_complex = cx.contains(s);
        let disagrees = match verdict.decision {
            Decision::Yes => !in_complex,
            Decision::No => in_complex,
            Decision::Inconclusive => false,
        };
        disagrees.then(|| Disagreement {
            simplex: (*s).clone(),
            in_complex,
            verdict,
        })
    };

    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return Ok(subjects.par_iter().filter_map(check).collect());
    }
    Ok(subjects.iter().filter_map(check).collect())
}
