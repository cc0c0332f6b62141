//! Special functions: gamma, Gauss 2F1, Appell F1/F2, complete and
//! incomplete elliptic integrals, Jacobi elliptic functions and theta
//! functions.
//!
//! Every elliptic routine takes the *parameter* `m` (so that `K(m)` has
//! its singularity at `m = 1`), never the modulus `k = sqrt(m)`.
//!
//! Arguments that live in `[0, 1]` and may approach 1 can be passed as a
//! [`Frac`], which carries the value together with its complement so that
//! `1 - z` is never formed by cancellation.

mod appell;
mod elliptic;
mod gamma;
mod hyp2f1;
mod jacobi;
mod theta;

pub use appell::{appell_f1, appell_f1_contraction, appell_f1_frac, appell_f1_series, appell_f2};
pub use elliptic::{
    agm, carlson_rf, ellip_e, ellip_e_frac, ellip_f_incomplete, ellip_k, ellip_k_frac,
};
pub use gamma::{digamma, gamma, gamma_ratio, ln_gamma, rgamma, sinpi};
pub use hyp2f1::{hyp2f1, hyp2f1_frac};
pub use jacobi::{jacobi_complex, jacobi_elliptic, jacobi_frac, JacobiTriple};
pub use theta::{theta2, theta3, theta4};

/// Truncation control shared by every series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { rel_tol: 1e-13, max_terms: 200_000 }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> crate::Result<Self> {
        if !(rel_tol > 0.0) || max_terms < 1 {
            return Err(crate::Error::Domain(format!(
                "SeriesControl needs rel_tol > 0 and max_terms >= 1 (got {rel_tol}, {max_terms})"
            )));
        }
        Ok(SeriesControl { rel_tol, max_terms })
    }
}

/// A number in `[0, 1]` stored with its complement `1 - v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frac {
    pub v: f64,
    pub c: f64,
}

impl Frac {
    pub fn new(v: f64) -> Self {
        Frac { v, c: 1.0 - v }
    }

    /// Use when the complement is known more accurately than `1 - v`.
    pub fn with_comp(v: f64, c: f64) -> Self {
        Frac { v, c }
    }

    pub fn flip(self) -> Self {
        Frac { v: self.c, c: self.v }
    }
}

/// Neumaier compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Sum {
    s: f64,
    comp: f64,
}

impl Sum {
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.comp += (self.s - t) + x;
        } else {
            self.comp += (x - t) + self.s;
        }
        self.s = t;
    }

    pub fn value(&self) -> f64 {
        self.s + self.comp
    }
}

pub(crate) fn near_int(x: f64, tol: f64) -> Option<i64> {
    let r = x.round();
    if (x - r).abs() <= tol * r.abs().max(1.0) {
        Some(r as i64)
    } else {
        None
    }
}

pub(crate) fn nonpos_int(x: f64) -> Option<u64> {
    match near_int(x, 1e-14) {
        Some(k) if k <= 0 => Some((-k) as u64),
        _ => None,
    }
}
