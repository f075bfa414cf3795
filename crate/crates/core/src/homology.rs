//! Mod-2 boundary matrices, Betti numbers and vertex indices.
//!
//! Homology is taken with GF(2) coefficients, so orientation signs vanish and
//! a boundary column is just the indicator of a simplex's faces. For nerves of
//! planar disks this gives the same Betti numbers as integer coefficients.
//!
//! `beta_k = |S_k| - rank d_k - rank d_{k+1}`, with `rank d_0 = 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{CechComplex, Simplex};
use crate::geometry::VertexId;
use crate::{Error, Result};

const WORD: usize = 64;

/// Dense GF(2) matrix stored column-major as packed bit vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = rows.div_ceil(WORD);
        Gf2Matrix {
            rows,
            cols,
            words,
            data: vec![0; words * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn column(&self, c: usize) -> &[u64] {
        &self.data[c * self.words..(c + 1) * self.words]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        self.column(c)[r / WORD] >> (r % WORD) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        let w = &mut self.data[c * self.words + r / WORD];
        let mask = 1u64 << (r % WORD);
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn column_weight(&self, c: usize) -> usize {
        self.column(c).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// `self * rhs` over GF(2).
    pub fn mul(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Gf2Matrix::zeros(self.rows, rhs.cols);
        for c in 0..rhs.cols {
            let dst = c * out.words;
            for k in 0..rhs.rows {
                if rhs.get(k, c) {
                    let src = self.column(k);
                    for (d, s) in out.data[dst..dst + out.words].iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination on columns, pivoting on the highest set row.
    pub fn rank(&self) -> usize {
        let mut pivots: Vec<Option<Vec<u64>>> = vec![None; self.rows];
        let mut rank = 0;
        let mut col = vec![0u64; self.words];
        for c in 0..self.cols {
            col.copy_from_slice(self.column(c));
            while let Some(low) = highest_bit(&col) {
                match &pivots[low] {
                    Some(p) => col.iter_mut().zip(p).for_each(|(a, b)| *a ^= b),
                    None => {
                        pivots[low] = Some(col.clone());
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }
}

fn highest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .rposition(|&w| w != 0)
        .map(|i| i * WORD + (WORD - 1 - words[i].leading_zeros() as usize))
}

/// Boundary map `d_k : C_k -> C_{k-1}`. Rows follow the lexicographic order
/// of `S_{k-1}`, columns that of `S_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub dim: usize,
    pub matrix: Gf2Matrix,
}

impl BoundaryMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

fn index_of(level: &[Simplex], s: &Simplex) -> usize {
    level
        .binary_search(s)
        .expect("face missing from the level below: complex is not face-closed")
}

pub fn boundary_matrix(cx: &CechComplex, k: usize) -> Result<BoundaryMatrix> {
    if k == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let missing = |requested| Error::MissingLevel {
        requested,
        built: cx.built_dim(),
    };
    let lower = cx.known_level(k - 1).ok_or_else(|| missing(k - 1))?;
    let upper = cx.known_level(k).ok_or_else(|| missing(k))?;
    let mut matrix = Gf2Matrix::zeros(lower.len(), upper.len());
    for (c, s) in upper.iter().enumerate() {
        for f in s.faces() {
            matrix.set(index_of(lower, &f), c, true);
        }
    }
    Ok(BoundaryMatrix { dim: k, matrix })
}

/// Index of a vertex, possibly truncated by the dimension cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexIndex {
    pub value: usize,
    /// The condition still held at the highest built dimension, so the true
    /// index is at least `value`.
    pub at_least: bool,
}

impl VertexIndex {
    pub fn exact(value: usize) -> Self {
        VertexIndex {
            value,
            at_least: false,
        }
    }
}

impl fmt::Display for VertexIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.at_least {
            write!(f, ">={}", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// Index of every vertex: the largest `k` such that for each `i <= k` every
/// `(i-1)`-simplex containing the vertex is a face of some `i`-simplex.
pub fn vertex_indices(cx: &CechComplex) -> Vec<VertexIndex> {
    let n = cx.num_vertices();
    // first dimension i at which the condition fails for the vertex
    let mut fails_at: Vec<Option<usize>> = vec![None; n];
    let mut i = 1;
    let mut checked = 0;
    while let (Some(lower), Some(upper)) = (cx.known_level(i - 1), cx.known_level(i)) {
        if fails_at.iter().all(Option::is_some) {
            break;
        }
        let mut has_coface = vec![false; lower.len()];
        for s in upper {
            for f in s.faces() {
                has_coface[index_of(lower, &f)] = true;
            }
        }
        for (s, _) in lower.iter().zip(&has_coface).filter(|(_, &c)| !c) {
            for &v in s.vertices() {
                fails_at[v as usize].get_or_insert(i);
            }
        }
        checked = i;
        i += 1;
    }
    fails_at
        .into_iter()
        .map(|f| match f {
            Some(i) => VertexIndex::exact(i - 1),
            None => VertexIndex {
                value: checked,
                at_least: true,
            },
        })
        .collect()
}

pub fn vertex_index(cx: &CechComplex, v: VertexId) -> Result<VertexIndex> {
    if v as usize >= cx.num_vertices() {
        return Err(Error::UnknownVertex(v));
    }
    Ok(vertex_indices(cx)[v as usize])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    /// `beta_0..=beta_up_to`.
    pub betti: Vec<usize>,
    /// `|S_k|` for every stored level.
    pub level_sizes: Vec<usize>,
    /// `rank d_k` for `k = 0..=up_to + 1`.
    pub ranks: Vec<usize>,
    pub vertex_indices: Vec<VertexIndex>,
}

/// Betti numbers up to dimension `up_to`. Requires level `up_to + 1` to be
/// known, otherwise the top number would silently come out too large.
pub fn betti_numbers(cx: &CechComplex, up_to: usize) -> Result<HomologyReport> {
    if cx.known_level(up_to + 1).is_none() {
        return Err(Error::MissingLevel {
            requested: up_to + 1,
            built: cx.built_dim(),
        });
    }
    let mut ranks = vec![0];
    for k in 1..=up_to + 1 {
        ranks.push(boundary_matrix(cx, k)?.rank());
    }
    let betti = (0..=up_to)
        .map(|k| {
            let size = cx.known_level(k).map_or(0, <[_]>::len);
            size - ranks[k] - ranks[k + 1]
        })
        .collect();
    Ok(HomologyReport {
        betti,
        level_sizes: cx.level_sizes(),
        ranks,
        vertex_indices: vertex_indices(cx),
    })
}

/// Highest dimension reported for a complex: `dmax - 1` when capped, else
/// the top non-empty level.
pub fn max_betti_dim(cx: &CechComplex) -> usize {
    if cx.dmax() == crate::UNBOUNDED {
        cx.built_dim().saturating_sub(1)
    } else {
        cx.dmax() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_cech, build_rips, DiskSet, Tolerance, UNBOUNDED};

    fn ds(c: &[(f64, f64, f64)]) -> DiskSet {
        DiskSet::from_circles(c.iter().copied()).unwrap()
    }

    fn five(r0: f64, r4: f64) -> DiskSet {
        ds(&[
            (0.0, 1.05, r0),
            (-0.1, 0.15, 0.6),
            (0.6, 0.0, 0.6),
            (1.2, 0.2, 0.5),
            (0.9, 0.9, r4),
        ])
    }

    fn full(d: &DiskSet) -> CechComplex {
        build_cech(d, UNBOUNDED, Tolerance::default()).unwrap()
    }

    fn values(ix: &[VertexIndex]) -> Vec<usize> {
        ix.iter().map(|i| i.value).collect()
    }

    #[test]
    fn gf2_rank_basics() {
        let mut m = Gf2Matrix::zeros(3, 3);
        for (r, c) in [(0, 0), (1, 0), (1, 1), (2, 1), (0, 2), (2, 2)] {
            m.set(r, c, true);
        }
        // third column is the sum of the first two
        assert_eq!(m.rank(), 2);
        assert_eq!(Gf2Matrix::zeros(4, 0).rank(), 0);
        let mut wide = Gf2Matrix::zeros(130, 2);
        wide.set(129, 0, true);
        wide.set(0, 1, true);
        assert_eq!(wide.rank(), 2);
        assert!(wide.get(129, 0) && !wide.get(128, 0));
    }

    #[test]
    fn segment_boundary() {
        let cx = full(&ds(&[(0.0, 0.0, 1.0), (1.0, 0.0, 1.0)]));
        let d1 = boundary_matrix(&cx, 1).unwrap();
        assert_eq!((d1.matrix.rows(), d1.matrix.cols()), (2, 1));
        assert!(d1.matrix.get(0, 0) && d1.matrix.get(1, 0));
    }

    #[test]
    fn filled_triangle_boundary() {
        let cx = full(&ds(&[(0.0, 0.0, 1.0), (1.0, 0.0, 1.0), (0.5, 0.5, 1.0)]));
        let d2 = boundary_matrix(&cx, 2).unwrap();
        assert_eq!((d2.matrix.rows(), d2.matrix.cols()), (3, 1));
        assert_eq!(d2.matrix.column_weight(0), 3);
    }

    #[test]
    fn boundary_of_boundary_five_a() {
        let cx = full(&five(0.8, 0.8));
        for k in 2..=cx.built_dim() {
            let lower = boundary_matrix(&cx, k - 1).unwrap();
            let upper = boundary_matrix(&cx, k).unwrap();
            assert!(
                lower.matrix.mul(&upper.matrix).is_zero(),
                "d{} d{} != 0",
                k - 1,
                k
            );
            for c in 0..upper.matrix.cols() {
                assert_eq!(upper.matrix.column_weight(c), k + 1);
            }
        }
    }

    #[test]
    fn missing_level_is_an_error() {
        let cx = build_cech(&five(0.8, 0.8), 2, Tolerance::default()).unwrap();
        assert!(matches!(
            boundary_matrix(&cx, 3),
            Err(Error::MissingLevel { requested: 3, .. })
        ));
        assert!(matches!(
            betti_numbers(&cx, 2),
            Err(Error::MissingLevel { requested: 3, .. })
        ));
        assert!(betti_numbers(&cx, 1).is_ok());
        assert!(boundary_matrix(&cx, 0).is_err());
    }

    #[test]
    fn gap_triple_betti() {
        let d = ds(&[(0.0, 0.0, 0.485), (0.9, 0.0, 0.485), (0.45, 0.8, 0.485)]);
        let cech = build_cech(&d, 2, Tolerance::default()).unwrap();
        assert_eq!(betti_numbers(&cech, 1).unwrap().betti, vec![1, 1]);
        let rips = build_rips(&d, 2, Tolerance::default()).unwrap();
        assert_eq!(betti_numbers(&rips, 1).unwrap().betti, vec![1, 0]);
    }

    #[test]
    fn five_cell_examples() {
        let a = full(&five(0.8, 0.8));
        let rep = betti_numbers(&a, 1).unwrap();
        assert_eq!(rep.betti, vec![1, 0]);
        assert_eq!(values(&rep.vertex_indices), vec![3, 3, 2, 2, 2]);
        assert!(rep.vertex_indices.iter().all(|i| !i.at_least));
        assert_eq!(vertex_index(&a, 0).unwrap(), VertexIndex::exact(3));
        assert_eq!(vertex_index(&a, 3).unwrap(), VertexIndex::exact(2));

        let b = full(&five(0.5, 0.8));
        let rep = betti_numbers(&b, 1).unwrap();
        assert_eq!(rep.betti, vec![1, 0]);
        assert_eq!(values(&rep.vertex_indices), vec![2; 5]);

        let c = full(&five(0.5, 0.5));
        let rep = betti_numbers(&c, 1).unwrap();
        assert_eq!(rep.betti, vec![1, 1]);
        assert_eq!(values(&rep.vertex_indices), vec![1, 1, 1, 2, 1]);
        assert!(matches!(vertex_index(&c, 5), Err(Error::UnknownVertex(5))));
    }

    #[test]
    fn capped_index_is_flagged() {
        let cx = build_cech(&five(0.8, 0.8), 2, Tolerance::default()).unwrap();
        let ix = vertex_indices(&cx);
        assert_eq!(
            ix[0],
            VertexIndex {
                value: 2,
                at_least: true
            }
        );
        assert_eq!(ix[0].to_string(), ">=2");
    }

    #[test]
    fn isolated_vertex_has_index_zero() {
        let cx = full(&ds(&[(0.0, 0.0, 1.0), (1.0, 0.0, 1.0), (10.0, 0.0, 1.0)]));
        assert_eq!(vertex_index(&cx, 2).unwrap(), VertexIndex::exact(0));
        assert_eq!(vertex_index(&cx, 0).unwrap(), VertexIndex::exact(1));
        assert_eq!(betti_numbers(&cx, 1).unwrap().betti, vec![2, 0]);
    }

    #[test]
    fn empty_complex() {
        let cx = full(&DiskSet::default());
        let rep = betti_numbers(&cx, 1).unwrap();
        assert_eq!(rep.betti, vec![0, 0]);
        assert!(rep.vertex_indices.is_empty());
    }
}
