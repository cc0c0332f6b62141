use rand::RngCore;

use crate::accum::SampleAccumulator;
use crate::lattice::{BondSampler, Boundary, LatticeSpec};
use crate::unionfind::UnionFindForest;

/// Scratch space reused across percolation samples.
#[derive(Debug, Clone)]
pub struct PercolationWorkspace {
    pub uf: UnionFindForest,
    roots: Vec<u32>,
    touch: Vec<u8>,
    wet: Vec<bool>,
    seen: Vec<bool>,
    cluster: Vec<u32>,
}

impl PercolationWorkspace {
    pub fn new(spec: &LatticeSpec) -> Self {
        let n = spec.sites();
        PercolationWorkspace {
            uf: UnionFindForest::new(n),
            roots: Vec::with_capacity(n),
            touch: vec![0; n],
            wet: vec![false; n],
            seen: vec![false; n],
            cluster: Vec::with_capacity(n),
        }
    }
}

/// Samples every bond; bonds inside a wired column are always open.
pub fn sample_bonds<R: RngCore>(spec: &LatticeSpec, uf: &mut UnionFindForest, rng: &mut R) {
    let (w, h) = (spec.width, spec.height);
    let mut bond = BondSampler::new(spec.p_bond);
    let wired = spec.boundary != Boundary::FreeAll;
    uf.reset();
    for j in 0..h {
        for i in 0..w {
            let s = spec.index(i, j);
            if i + 1 < w && bond.open(rng) {
                uf.union(s, s + 1);
            }
            if j + 1 < h {
                let forced = wired && (i == 0 || i == w - 1);
                if forced || bond.open(rng) {
                    uf.union(s, s + w);
                }
            }
        }
    }
}

/// One independent configuration with wired left and right columns,
/// recorded into `acc`.
pub fn percolation_sample<R: RngCore>(
    spec: &LatticeSpec,
    ws: &mut PercolationWorkspace,
    rng: &mut R,
    acc: &mut SampleAccumulator,
) {
    sample_bonds(spec, &mut ws.uf, rng);
    ws.uf.roots(&mut ws.roots);
    let left = ws.roots[spec.index(0, 0)];
    let right = ws.roots[spec.index(spec.width - 1, 0)];
    acc.record_connectivity(&ws.roots, left, right);
}

/// One free-boundary configuration, grown from the left edge: clusters
/// are grown from every left-edge site with bonds drawn as they are first
/// examined, and the sites of clusters reaching the right edge are marked
/// wetted. A bond is never drawn twice: a closed bond from a grown cluster
/// to a site reached later by another cluster was already drawn closed.
pub fn free_bc_crossing_sample<R: RngCore>(
    spec: &LatticeSpec,
    ws: &mut PercolationWorkspace,
    rng: &mut R,
    acc: &mut SampleAccumulator,
) {
    let (w, h) = (spec.width, spec.height);
    let mut bond = BondSampler::new(spec.p_bond);
    ws.wet.fill(false);
    ws.seen.fill(false);
    let mut crossed = false;
    for j0 in 0..h {
        let seed = spec.index(0, j0);
        if ws.seen[seed] {
            continue;
        }
        ws.seen[seed] = true;
        ws.cluster.clear();
        ws.cluster.push(seed as u32);
        let mut reaches_right = w == 1;
        let mut head = 0;
        while head < ws.cluster.len() {
            let s = ws.cluster[head] as usize;
            head += 1;
            let (i, j) = (s % w, s / w);
            reaches_right |= i == w - 1;
            let mut visit = |t: usize, ws: &mut PercolationWorkspace, rng: &mut R| {
                if !ws.seen[t] && bond.open(rng) {
                    ws.seen[t] = true;
                    ws.cluster.push(t as u32);
                }
            };
            if i + 1 < w {
                visit(s + 1, ws, rng);
            }
            if i > 0 {
                visit(s - 1, ws, rng);
            }
            if j + 1 < h {
                visit(s + w, ws, rng);
            }
            if j > 0 {
                visit(s - w, ws, rng);
            }
        }
        if reaches_right {
            crossed = true;
            for &t in &ws.cluster {
                ws.wet[t as usize] = true;
            }
        }
    }
    acc.record_wetted(&ws.wet, crossed);
}

/// The same experiment through a full union-find labelling of the lattice.
pub fn free_bc_crossing_sample_uf<R: RngCore>(
    spec: &LatticeSpec,
    ws: &mut PercolationWorkspace,
    rng: &mut R,
    acc: &mut SampleAccumulator,
) {
    sample_bonds(spec, &mut ws.uf, rng);
    ws.uf.roots(&mut ws.roots);
    ws.touch.fill(0);
    for j in 0..spec.height {
        ws.touch[ws.roots[spec.index(0, j)] as usize] |= LEFT;
        ws.touch[ws.roots[spec.index(spec.width - 1, j)] as usize] |= RIGHT;
    }
    let mut crossed = false;
    for (s, &r) in ws.roots.iter().enumerate() {
        let wet = ws.touch[r as usize] == LEFT | RIGHT;
        ws.wet[s] = wet;
        crossed |= wet;
    }
    acc.record_wetted(&ws.wet, crossed);
}

const LEFT: u8 = 1;
const RIGHT: u8 = 2;
