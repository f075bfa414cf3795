#![allow(dead_code)]

use cech_core::scenario::UniformSource;
use cech_core::{CechComplex, Disk, DiskSet, Simplex, VertexId};

/// Number of connected components of the intersection graph, by union-find
/// over the raw disks (does not look at the complex).
pub fn components(ds: &DiskSet, eps: f64) -> usize {
    let n = ds.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let d = ds.disks();
    for i in 0..n {
        for j in i + 1..n {
            let dist = d[i].center.dist(d[j].center);
            if dist <= d[i].radius + d[j].radius + eps {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Disk `i` of `ds` becomes disk `perm[i]`.
pub fn relabel(ds: &DiskSet, perm: &[usize]) -> DiskSet {
    let disks = ds
        .disks()
        .iter()
        .map(|d| Disk {
            id: perm[d.id as usize] as VertexId,
            ..*d
        })
        .collect();
    DiskSet::new(disks).unwrap()
}

/// Levels of a complex built on relabelled disks, mapped back to the
/// original ids and re-sorted.
pub fn unrelabel_levels(cx: &CechComplex, perm: &[usize]) -> Vec<Vec<Simplex>> {
    let mut inverse = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i as VertexId;
    }
    cx.levels()
        .iter()
        .map(|level| {
            let mut mapped: Vec<Simplex> = level
                .iter()
                .map(|s| {
                    Simplex::new(s.vertices().iter().map(|&v| inverse[v as usize]).collect())
                        .unwrap()
                })
                .collect();
            mapped.sort();
            mapped
        })
        .collect()
}

/// Fisher-Yates shuffle driven by the scenario RNG.
pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = UniformSource::new(seed);
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = ((rng.next_f64() * (i + 1) as f64) as usize).min(i);
        p.swap(i, j);
    }
    p
}

/// `count` disks with radii in `[0.5, 1]` and centers in a 2x2 box, redrawn
/// until every pair intersects.
pub fn pairwise_intersecting(count: usize, rng: &mut UniformSource) -> DiskSet {
    loop {
        let circles: Vec<(f64, f64, f64)> = (0..count)
            .map(|_| {
                (
                    2.0 * rng.next_f64(),
                    2.0 * rng.next_f64(),
                    0.5 + 0.5 * rng.next_f64(),
                )
            })
            .collect();
        let ok = circles.iter().enumerate().all(|(i, a)| {
            circles[i + 1..]
                .iter()
                .all(|b| (a.0 - b.0).hypot(a.1 - b.1) <= a.2 + b.2)
        });
        if ok {
            return DiskSet::from_circles(circles).unwrap();
        }
    }
}

pub fn alternating_sum(xs: &[usize]) -> i64 {
    xs.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}
