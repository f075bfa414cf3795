//! Generalized Čech complexes of planar disks with heterogeneous radii.
//!
//! The crate builds the nerve of a finite family of closed disks level by
//! level, computes its mod-2 Betti numbers and per-vertex indices, and offers
//! the Rips (clique) complex of the same disks for comparison. A brute-force
//! oracle, a Poisson scenario generator, file I/O, SVG rendering and a timing
//! harness round it out.
//!
//! ```
//! use cech_core::{ComplexBuilder, DiskSet, homology};
//!
//! // three cells around an uncovered gap
//! let ds = DiskSet::from_circles([(0.0, 0.0, 0.485), (0.9, 0.0, 0.485), (0.45, 0.8, 0.485)])?;
//! let cech = ComplexBuilder::new(2).cech(&ds)?;
//! let rips = ComplexBuilder::new(2).rips(&ds)?;
//! assert_eq!(homology::betti_numbers(&cech, 1)?.betti, vec![1, 1]);
//! assert_eq!(homology::betti_numbers(&rips, 1)?.betti, vec![1, 0]);
//! # Ok::<(), cech_core::Error>(())
//! ```

pub mod bench;
pub mod complex;
mod error;
pub mod geometry;
pub mod homology;
pub mod io;
pub mod oracle;
pub mod render;
pub mod report;
pub mod scenario;

pub use complex::{
    build_cech, build_one_simplices, build_rips, classify_candidate, enumerate_candidates,
    verify_candidate, CechComplex, ComplexBuilder, ComplexKind, DiskSet, Simplex, Verdict,
    UNBOUNDED,
};
pub use error::{Error, Result};
pub use geometry::{
    circle_intersection_points, disk_inside_disk, disks_intersect, point_in_disk,
    CircleIntersection, Disk, Point, Tolerance, VertexId,
};
pub use homology::{betti_numbers, boundary_matrix, vertex_index, HomologyReport, VertexIndex};

/// Runs `f` on a dedicated pool of `threads` workers (0 picks the rayon
/// default). Without the `parallel` feature `f` runs on the calling thread.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}
