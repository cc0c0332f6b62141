//! Cluster Monte Carlo on an L_x x L_y square lattice: bond percolation,
//! Swendsen-Wang for the Q-state Potts model with wired sides, the
//! boundary-respecting spin-cluster update, and the free-boundary
//! crossing-cluster experiment.
//!
//! Lengths are in units of the rectangle's height. Free sides lie half a
//! lattice spacing outside the outermost sites (cell-center registration);
//! wired columns and the constrained rows of the spin-cluster boundary are
//! themselves the sides. See [`LatticeSpec::cell_center`].

pub mod accum;
mod error;
pub mod lattice;
pub mod percolation;
pub mod potts;
pub mod run;
pub mod unionfind;

pub use accum::{batch_means_stderr, center_value, Finalized, RhoColumn, SampleAccumulator};
pub use error::{Result, SimError};
pub use lattice::{critical_p_bond, BondSampler, Boundary, LatticeSpec, Model};
pub use run::{run, run_worker, run_worker_observed, worker_rng};
pub use unionfind::UnionFindForest;
