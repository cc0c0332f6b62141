use rand::{Rng, RngCore};

use crate::accum::SampleAccumulator;
use crate::lattice::{BondSampler, Boundary, LatticeSpec};
use crate::unionfind::UnionFindForest;
use crate::{Result, SimError};

/// The spin fixed on the wired sides of the spin-cluster experiment.
pub const SPIN_A: u8 = 0;

/// Potts spins together with the scratch space of the cluster updates.
#[derive(Debug, Clone)]
pub struct PottsState {
    pub spins: Vec<u8>,
    uf: UnionFindForest,
    roots: Vec<u32>,
    new_spin: Vec<u8>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl PottsState {
    /// All spins A, except the top and bottom rows of the spin-cluster
    /// boundary, which start in the first non-A state.
    pub fn new(spec: &LatticeSpec) -> Self {
        let n = spec.sites();
        let mut spins = vec![SPIN_A; n];
        if spec.boundary == Boundary::WiredLrMutualSpin {
            for i in 1..spec.width - 1 {
                spins[spec.index(i, 0)] = 1;
                spins[spec.index(i, spec.height - 1)] = 1;
            }
        }
        PottsState {
            spins,
            uf: UnionFindForest::new(n),
            roots: Vec::with_capacity(n),
            new_spin: vec![0; n],
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    /// FK bonds given the spins: open with probability p between equal
    /// neighbours, always open inside the wired columns.
    fn sample_fk_bonds<R: RngCore>(&mut self, spec: &LatticeSpec, rng: &mut R) {
        let (w, h) = (spec.width, spec.height);
        let mut bond = BondSampler::new(spec.p_bond);
        self.uf.reset();
        for j in 0..h {
            for i in 0..w {
                let s = spec.index(i, j);
                if i + 1 < w && self.spins[s] == self.spins[s + 1] && bond.open(rng) {
                    self.uf.union(s, s + 1);
                }
                if j + 1 < h {
                    let forced = i == 0 || i == w - 1;
                    if forced || (self.spins[s] == self.spins[s + w] && bond.open(rng)) {
                        self.uf.union(s, s + w);
                    }
                }
            }
        }
        self.uf.roots(&mut self.roots);
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    fn assign(&mut self, r: usize, v: u8) {
        self.stamp[r] = self.epoch;
        self.new_spin[r] = v;
    }

    fn assigned(&self, r: usize) -> bool {
        self.stamp[r] == self.epoch
    }

    /// Gives every unassigned cluster a uniform spin in 0..q and writes the
    /// new spins back.
    fn resample_free<R: RngCore>(&mut self, q: u8, rng: &mut R) {
        for s in 0..self.spins.len() {
            let r = self.roots[s] as usize;
            if !self.assigned(r) {
                let v = rng.gen_range(0..q);
                self.assign(r, v);
            }
            self.spins[s] = self.new_spin[r];
        }
    }

    /// Swendsen-Wang sweep with the left and right columns wired
    /// independently. With `acc` given, the FK connectivity of this sweep
    /// is recorded before the spins are redrawn.
    pub fn sw_update_fk<R: RngCore>(&mut self, spec: &LatticeSpec, rng: &mut R, acc: Option<&mut SampleAccumulator>) {
        debug_assert_eq!(spec.boundary, Boundary::WiredLrIndependent);
        self.sample_fk_bonds(spec, rng);
        if let Some(acc) = acc {
            let left = self.roots[spec.index(0, 0)];
            let right = self.roots[spec.index(spec.width - 1, 0)];
            acc.record_connectivity(&self.roots, left, right);
        }
        self.resample_free(spec.q as u8, rng);
        debug_assert!(self.check_fk_wiring(spec).is_ok());
    }

    /// Boundary-respecting spin-cluster sweep: the FK cluster grown from
    /// the left column (which absorbs the right column if it reaches it)
    /// and the one grown from the right column become A; clusters touching
    /// the top or bottom row take a uniform non-A state; all others a
    /// uniform state.
    pub fn spin_cluster_update<R: RngCore>(&mut self, spec: &LatticeSpec, rng: &mut R) {
        debug_assert_eq!(spec.boundary, Boundary::WiredLrMutualSpin);
        let q = spec.q as u8;
        self.sample_fk_bonds(spec, rng);
        let left = self.roots[spec.index(0, 0)] as usize;
        let right = self.roots[spec.index(spec.width - 1, 0)] as usize;
        self.assign(left, SPIN_A);
        self.assign(right, SPIN_A);
        for j in [0, spec.height - 1] {
            for i in 1..spec.width - 1 {
                let r = self.roots[spec.index(i, j)] as usize;
                if !self.assigned(r) {
                    let v = 1 + rng.gen_range(0..q - 1);
                    self.assign(r, v);
                }
            }
        }
        self.resample_free(q, rng);
        debug_assert!(self.check_spin_boundary(spec).is_ok(), "{:?}", self.check_spin_boundary(spec));
    }

    /// Records the spin clusters (maximal like-spin connected sets) of the
    /// current configuration.
    pub fn measure_spin_clusters(&mut self, spec: &LatticeSpec, acc: &mut SampleAccumulator) {
        let (w, h) = (spec.width, spec.height);
        self.uf.reset();
        for j in 0..h {
            for i in 0..w {
                let s = spec.index(i, j);
                if i + 1 < w && self.spins[s] == self.spins[s + 1] {
                    self.uf.union(s, s + 1);
                }
                if j + 1 < h && self.spins[s] == self.spins[s + w] {
                    self.uf.union(s, s + w);
                }
            }
        }
        self.uf.roots(&mut self.roots);
        let left = self.roots[spec.index(0, 0)];
        let right = self.roots[spec.index(w - 1, 0)];
        acc.record_connectivity(&self.roots, left, right);
    }

    /// Each wired column carries a single spin.
    pub fn check_fk_wiring(&self, spec: &LatticeSpec) -> Result<()> {
        for i in [0, spec.width - 1] {
            let v = self.spins[spec.index(i, 0)];
            if (0..spec.height).any(|j| self.spins[spec.index(i, j)] != v) {
                return Err(SimError::InvariantViolation(format!("wired column {i} is not one cluster")));
            }
        }
        Ok(())
    }

    /// Left and right columns are A and no A site lies on the top or
    /// bottom row, so no A cluster touches them.
    pub fn check_spin_boundary(&self, spec: &LatticeSpec) -> Result<()> {
        for i in [0, spec.width - 1] {
            if (0..spec.height).any(|j| self.spins[spec.index(i, j)] != SPIN_A) {
                return Err(SimError::InvariantViolation(format!("column {i} is not fixed to A")));
            }
        }
        for j in [0, spec.height - 1] {
            if (1..spec.width - 1).any(|i| self.spins[spec.index(i, j)] == SPIN_A) {
                return Err(SimError::InvariantViolation(format!("an A cluster touches row {j}")));
            }
        }
        Ok(())
    }
}
