//! Exact conformal-field-theory predictions for cluster densities and
//! crossing probabilities of critical two-dimensional models in rectangles.
//!
//! Layers, bottom up: [`specfun`] (special functions), [`geometry`]
//! (aspect ratio, elliptic coordinates, model parameters), [`blocks`]
//! (conformal blocks and configuration weights), [`observables`]
//! (crossing probabilities, densities, the ratio rho) and [`closedform`]
//! (elementary reductions at special kappa, used as oracles).

pub mod blocks;
pub mod closedform;
mod error;
pub mod geometry;
pub mod observables;
pub mod oracle;
pub mod specfun;

pub use error::{Error, Result};

/// Scalar type used throughout.
pub type Real = f64;
