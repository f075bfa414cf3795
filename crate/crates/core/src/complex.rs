//! Level-by-level construction of the Čech and Rips complexes of a disk set.
//!
//! Level `S_0` holds one vertex per disk and `S_1` every intersecting pair.
//! Each higher level `S_k` is grown from `S_{k-1}`: a `(k-1)`-simplex is
//! extended by a neighbor with a larger id than all of its vertices, the
//! resulting `(k+1)`-set is kept as a candidate only when every one of its
//! faces is already in `S_{k-1}`, and the candidate is then verified
//! geometrically (Čech) or accepted outright (Rips). Extending only by larger
//! ids means every subset is produced exactly once and in lexicographic order.
//!
//! Construction stops at the first empty level or at the dimension cap,
//! whichever comes first.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::geometry::{
    circle_intersection_points, disk_inside_disk, disks_intersect, point_in_disk, Disk, Tolerance,
    VertexId,
};
use crate::{Error, Result};

/// Dimension cap meaning "build until a level comes out empty".
pub const UNBOUNDED: usize = usize::MAX;

/// `"full"` for [`UNBOUNDED`], the number otherwise.
pub fn dmax_label(dmax: usize) -> String {
    if dmax == UNBOUNDED {
        "full".into()
    } else {
        dmax.to_string()
    }
}

/// Serde adapter writing [`UNBOUNDED`] as `null`.
pub mod dmax_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::UNBOUNDED;

    pub fn serialize<S: Serializer>(dmax: &usize, s: S) -> Result<S::Ok, S::Error> {
        (*dmax != UNBOUNDED).then_some(*dmax).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
        Ok(Option::<usize>::deserialize(d)?.unwrap_or(UNBOUNDED))
    }
}

/// Disks labelled exactly `0..N`, stored in id order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiskSet {
    disks: Vec<Disk>,
}

impl DiskSet {
    /// Accepts disks in any order; ids must form `0..N` without gaps or repeats.
    pub fn new(mut disks: Vec<Disk>) -> Result<Self> {
        disks.sort_by_key(|d| d.id);
        for (expected, d) in disks.iter().enumerate() {
            if d.id as usize != expected {
                return Err(Error::InvalidDiskSet(format!(
                    "ids must be exactly 0..{}; found {} at position {expected}",
                    disks.len(),
                    d.id
                )));
            }
            // re-run the field checks for disks built by struct literal
            Disk::new(d.id, d.center.x, d.center.y, d.radius)?;
        }
        Ok(DiskSet { disks })
    }

    /// Assigns ids `0..N` in iteration order.
    pub fn from_circles(circles: impl IntoIterator<Item = (f64, f64, f64)>) -> Result<Self> {
        let disks = circles
            .into_iter()
            .enumerate()
            .map(|(i, (x, y, r))| Disk::new(i as VertexId, x, y, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiskSet { disks })
    }

    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    pub fn get(&self, id: VertexId) -> Option<&Disk> {
        self.disks.get(id as usize)
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    /// Same disks with every radius scaled by `factor`.
    pub fn scale_radii(&self, factor: f64) -> Result<Self> {
        let disks = self
            .disks
            .iter()
            .map(|d| Disk::new(d.id, d.center.x, d.center.y, d.radius * factor))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiskSet { disks })
    }

    fn disk(&self, v: VertexId) -> &Disk {
        &self.disks[v as usize]
    }
}

/// Strictly increasing, non-empty list of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts the vertices; rejects empty lists and repeated vertices.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(vertices));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The `dim + 1` codimension-one faces, in order of the dropped vertex.
    /// A vertex has no faces.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }
}

impl TryFrom<Vec<VertexId>> for Simplex {
    type Error = Error;

    fn try_from(v: Vec<VertexId>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<VertexId> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Cech,
    Rips,
}

/// Simplices grouped by dimension, plus the vertex adjacency of `S_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CechComplex {
    kind: ComplexKind,
    dmax: usize,
    tol: Tolerance,
    levels: Vec<Vec<Simplex>>,
    neighbors: Vec<Vec<VertexId>>,
}

impl CechComplex {
    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    /// Requested dimension cap ([`UNBOUNDED`] when uncapped).
    pub fn dmax(&self) -> usize {
        self.dmax
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// Stored levels `S_0..=S_L`. When construction stopped on an empty
    /// level, that empty level is the last entry.
    pub fn levels(&self) -> &[Vec<Simplex>] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> Option<&[Simplex]> {
        self.levels.get(k).map(Vec::as_slice)
    }

    /// True when construction ended on an empty level, so every dimension
    /// above the stored ones is known to be empty too.
    pub fn is_complete(&self) -> bool {
        self.levels.last().is_some_and(Vec::is_empty)
    }

    /// Level `k` if its contents are determined: stored, or implied empty by
    /// [`is_complete`](Self::is_complete).
    pub fn known_level(&self, k: usize) -> Option<&[Simplex]> {
        match self.levels.get(k) {
            Some(l) => Some(l),
            None if self.is_complete() => Some(&[]),
            None => None,
        }
    }

    /// Highest stored dimension (including a trailing empty level).
    pub fn built_dim(&self) -> usize {
        self.levels.len() - 1
    }

    /// Highest dimension holding at least one simplex, if any.
    pub fn top_dim(&self) -> Option<usize> {
        self.levels.iter().rposition(|l| !l.is_empty())
    }

    pub fn num_vertices(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors(&self, v: VertexId) -> Option<&[VertexId]> {
        self.neighbors.get(v as usize).map(Vec::as_slice)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn num_simplices(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.levels
            .get(s.dim())
            .is_some_and(|l| l.binary_search(s).is_ok())
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.levels.iter().flatten()
    }

    /// Level-wise inclusion, comparing every level either complex knows.
    pub fn is_subcomplex_of(&self, other: &CechComplex) -> bool {
        self.levels
            .iter()
            .enumerate()
            .all(|(k, level)| match other.known_level(k) {
                Some(theirs) => level.iter().all(|s| theirs.binary_search(s).is_ok()),
                None => level.is_empty(),
            })
    }

    /// Checks that every face of every stored simplex is stored too.
    pub fn is_face_closed(&self) -> bool {
        self.levels.iter().enumerate().skip(1).all(|(k, level)| {
            let below = &self.levels[k - 1];
            level
                .iter()
                .all(|s| s.faces().all(|f| below.binary_search(&f).is_ok()))
        })
    }

    /// Removes a simplex without touching its cofaces. Used to seed faults in
    /// tests of the cross-checker.
    #[cfg(test)]
    pub(crate) fn remove(&mut self, s: &Simplex) -> bool {
        match self
            .levels
            .get_mut(s.dim())
            .map(|l| (l.binary_search(s), l))
        {
            Some((Ok(i), l)) => {
                l.remove(i);
                true
            }
            _ => false,
        }
    }
}

/// Outcome of the geometric candidate test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The smallest disk lies inside every other disk.
    SmallestContained,
    /// Some boundary intersection point of two disks lies in all the others.
    SharedIntersectionPoint,
    /// The disks have no common point.
    Empty,
    /// Two disks of the candidate do not intersect, so it was never a valid
    /// candidate. Not a simplex.
    NotAdjacent(VertexId, VertexId),
}

impl Verdict {
    pub fn is_simplex(self) -> bool {
        matches!(
            self,
            Verdict::SmallestContained | Verdict::SharedIntersectionPoint
        )
    }
}

/// Decides whether the disks of `candidate` share a common point.
///
/// Candidates are expected to be pairwise adjacent. The first
/// non-intersecting pair found is reported as [`Verdict::NotAdjacent`]
/// instead of running the geometric test.
pub fn classify_candidate(ds: &DiskSet, candidate: &Simplex, tol: Tolerance) -> Result<Verdict> {
    let vs = candidate.vertices();
    for &v in vs {
        if ds.get(v).is_none() {
            return Err(Error::UnknownVertex(v));
        }
    }
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if !disks_intersect(ds.disk(a), ds.disk(b), tol) {
                return Ok(Verdict::NotAdjacent(a, b));
            }
        }
    }
    Ok(classify_adjacent(ds, vs, tol))
}

pub fn verify_candidate(ds: &DiskSet, candidate: &Simplex, tol: Tolerance) -> Result<bool> {
    classify_candidate(ds, candidate, tol).map(Verdict::is_simplex)
}

/// Core of the candidate test; assumes pairwise adjacency.
fn classify_adjacent(ds: &DiskSet, vs: &[VertexId], tol: Tolerance) -> Verdict {
    // smallest radius, ties to the smallest id
    let smallest = vs
        .iter()
        .map(|&v| ds.disk(v))
        .min_by(|a, b| a.radius.total_cmp(&b.radius).then(a.id.cmp(&b.id)))
        .expect("simplex is non-empty");
    if vs
        .iter()
        .filter(|&&v| v != smallest.id)
        .all(|&v| disk_inside_disk(smallest, ds.disk(v), tol))
    {
        return Verdict::SmallestContained;
    }

    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let hit = circle_intersection_points(ds.disk(a), ds.disk(b), tol)
                .points()
                .any(|p| {
                    vs.iter()
                        .filter(|&&t| t != a && t != b)
                        .all(|&t| point_in_disk(p, ds.disk(t), tol))
                });
            if hit {
                return Verdict::SharedIntersectionPoint;
            }
        }
    }
    Verdict::Empty
}

/// Every intersecting pair `(i, j)`, `i < j`, in lexicographic order.
pub fn build_one_simplices(ds: &DiskSet, tol: Tolerance) -> Vec<Simplex> {
    one_simplices(ds, tol, false)
}

fn one_simplices(ds: &DiskSet, tol: Tolerance, parallel: bool) -> Vec<Simplex> {
    let disks = ds.disks();
    let row = |i: usize| -> Vec<Simplex> {
        disks[i + 1..]
            .iter()
            .filter(|b| disks_intersect(&disks[i], b, tol))
            .map(|b| Simplex(vec![disks[i].id, b.id]))
            .collect()
    };
    map_concat(0..disks.len(), parallel, row)
}

/// Applies `f` to every index and concatenates the results in index order,
/// on the rayon pool when `parallel` is set and the feature is enabled.
fn map_concat<T: Send>(
    range: std::ops::Range<usize>,
    parallel: bool,
    f: impl Fn(usize) -> Vec<T> + Sync + Send,
) -> Vec<T> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        let parts: Vec<Vec<T>> = range.into_par_iter().map(f).collect();
        return parts.into_iter().flatten().collect();
    }
    let _ = parallel;
    range.flat_map(f).collect()
}

fn adjacency(n: usize, edges: &[Simplex]) -> Vec<Vec<VertexId>> {
    let mut nb = vec![Vec::new(); n];
    for e in edges {
        let (a, b) = (e.0[0], e.0[1]);
        nb[a as usize].push(b);
        nb[b as usize].push(a);
    }
    for l in &mut nb {
        l.sort_unstable();
    }
    nb
}

fn cmp_slice(s: &Simplex, probe: &[VertexId]) -> Ordering {
    s.0.as_slice().cmp(probe)
}

/// Candidates obtained by extending one `(k-1)`-simplex with a larger
/// neighbor of its last vertex, filtered by adjacency and face presence.
fn extensions<'a>(
    sigma: &'a Simplex,
    prev: &'a [Simplex],
    neighbors: &'a [Vec<VertexId>],
) -> impl Iterator<Item = Simplex> + 'a {
    let last = *sigma.0.last().expect("simplex is non-empty");
    let higher = &neighbors[last as usize];
    let start = higher.partition_point(|&w| w <= last);
    let mut face = Vec::with_capacity(sigma.0.len());
    higher[start..].iter().filter_map(move |&w| {
        let adjacent = sigma.0[..sigma.0.len() - 1]
            .iter()
            .all(|&v| neighbors[v as usize].binary_search(&w).is_ok());
        if !adjacent {
            return None;
        }
        // the face without `w` is sigma itself; check the others. Faces of an
        // adjacent triple are edges, which are all present.
        let checked_faces = if sigma.0.len() == 2 { 0 } else { sigma.0.len() };
        for skip in 0..checked_faces {
            face.clear();
            face.extend(
                sigma
                    .0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v),
            );
            face.push(w);
            if prev.binary_search_by(|s| cmp_slice(s, &face)).is_err() {
                return None;
            }
        }
        let mut vs = Vec::with_capacity(sigma.0.len() + 1);
        vs.extend_from_slice(&sigma.0);
        vs.push(w);
        Some(Simplex(vs))
    })
}

/// Candidate `k`-simplices of a complex whose levels `0..k` are built: every
/// pairwise-adjacent `(k+1)`-set whose faces are all in `S_{k-1}`, each once,
/// in lexicographic order.
pub fn enumerate_candidates(
    cx: &CechComplex,
    k: usize,
) -> Result<impl Iterator<Item = Simplex> + '_> {
    if k < 2 {
        return Err(Error::InvalidDimension(k));
    }
    let prev = cx.levels.get(k - 1).ok_or(Error::MissingLevel {
        requested: k - 1,
        built: cx.built_dim(),
    })?;
    let nb = &cx.neighbors;
    Ok(prev.iter().flat_map(move |s| extensions(s, prev, nb)))
}

/// Configures and runs complex construction.
#[derive(Debug, Clone, Copy)]
pub struct ComplexBuilder {
    dmax: usize,
    tol: Tolerance,
    parallel: bool,
}

impl ComplexBuilder {
    /// `dmax` is the highest dimension to build; pass [`UNBOUNDED`] to build
    /// until a level comes out empty.
    pub fn new(dmax: usize) -> Self {
        ComplexBuilder {
            dmax,
            tol: Tolerance::default(),
            parallel: false,
        }
    }

    pub fn tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    /// Verify candidates on the current rayon pool. Has no effect without the
    /// `parallel` feature. The result is identical either way.
    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    pub fn cech(&self, ds: &DiskSet) -> Result<CechComplex> {
        self.build(ds, ComplexKind::Cech)
    }

    pub fn rips(&self, ds: &DiskSet) -> Result<CechComplex> {
        self.build(ds, ComplexKind::Rips)
    }

    pub fn build(&self, ds: &DiskSet, kind: ComplexKind) -> Result<CechComplex> {
        if self.dmax < 1 {
            return Err(Error::InvalidDimension(self.dmax));
        }
        let n = ds.len();
        let s0: Vec<Simplex> = (0..n as VertexId).map(Simplex::vertex).collect();
        let mut levels = vec![s0];
        if n == 0 {
            return Ok(CechComplex {
                kind,
                dmax: self.dmax,
                tol: self.tol,
                levels,
                neighbors: vec![],
            });
        }

        let s1 = one_simplices(ds, self.tol, self.parallel);
        let neighbors = adjacency(n, &s1);
        levels.push(s1);

        let mut k = 2;
        while k <= self.dmax && !levels[k - 1].is_empty() {
            let prev = &levels[k - 1];
            let next = map_concat(0..prev.len(), self.parallel, |i| {
                extensions(&prev[i], prev, &neighbors)
                    .filter(|c| match kind {
                        ComplexKind::Cech => classify_adjacent(ds, &c.0, self.tol).is_simplex(),
                        ComplexKind::Rips => true,
                    })
                    .collect()
            });
            levels.push(next);
            k += 1;
        }
        Ok(CechComplex {
            kind,
            dmax: self.dmax,
            tol: self.tol,
            levels,
            neighbors,
        })
    }
}

/// Sequential Čech construction with the given cap and tolerance.
pub fn build_cech(ds: &DiskSet, dmax: usize, tol: Tolerance) -> Result<CechComplex> {
    ComplexBuilder::new(dmax).tolerance(tol).cech(ds)
}

/// Sequential Rips (clique) construction with the given cap and tolerance.
pub fn build_rips(ds: &DiskSet, dmax: usize, tol: Tolerance) -> Result<CechComplex> {
    ComplexBuilder::new(dmax).tolerance(tol).rips(ds)
}
