//! Self-checks: closed forms at special kappa against the general-kappa
//! path, and the linear relations among the blocks.

use crate::blocks::{
    block_vector_frac, crossing_blocks_frac, crossing_weights, limit_at_pole, limit_block_vector,
    limit_crossing_blocks, limit_solutions, prefactor_f, Block, BlockVector, Solutions,
};
use crate::closedform::{
    gvi_double_argument, kappa83_weights, kappa8_weights, oracle_blocks, oracle_crossing, oracle_rho, oracle_u1,
    oracle_u2, SpecialKappa,
};
use crate::geometry::{bulk_point, model_params, ModelParams, RectGeometry};
use crate::specfun::Frac;
use crate::{Error, Result};

pub const XI_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
pub const M_GRID: [f64; 3] = [0.2, 0.5, 0.8];
pub const DIRECT_TOL: f64 = 1e-9;
pub const POLE_TOL: f64 = 1e-6;
/// Values smaller than this are compared in absolute terms.
const ABS_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Nothing to compare at this kappa.
    NoForms,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRow {
    pub label: String,
    pub checks: usize,
    pub worst: f64,
    pub worst_at: String,
    pub tolerance: f64,
}

impl OracleRow {
    fn new(label: String, tolerance: f64) -> Self {
        OracleRow { label, checks: 0, worst: 0.0, worst_at: String::new(), tolerance }
    }

    fn record(&mut self, got: f64, want: f64, at: impl FnOnce() -> String) {
        let r = (got - want).abs() / want.abs().max(ABS_FLOOR);
        self.checks += 1;
        // NaN counts as a failure
        if !(r <= self.worst) {
            self.worst = if r.is_nan() { f64::INFINITY } else { r };
            self.worst_at = at();
        }
    }

    pub fn status(&self) -> Status {
        if self.checks == 0 {
            Status::NoForms
        } else if self.worst <= self.tolerance {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

fn general_blocks(sk: SpecialKappa, xi: Frac, m: Frac) -> Result<BlockVector> {
    if sk.is_pole() {
        limit_block_vector(xi, m, sk.kappa())
    } else {
        block_vector_frac(xi, m, &model_params(sk.kappa())?)
    }
}

fn general_crossing(sk: SpecialKappa, m: Frac) -> Result<(f64, f64)> {
    if sk.is_pole() {
        limit_crossing_blocks(m, sk.kappa())
    } else {
        crossing_blocks_frac(m, &model_params(sk.kappa())?)
    }
}

fn general_solutions(sk: SpecialKappa, s: Frac, t: Frac) -> Result<(f64, f64)> {
    if sk.is_pole() {
        limit_solutions(s, t, sk.kappa())
    } else {
        let sol = Solutions::new(sk.kappa())?;
        Ok((sol.u1(s, t)?, sol.u2(s, t)?))
    }
}

fn general_rho(sk: SpecialKappa, xi: Frac, m: Frac) -> Result<f64> {
    let b = general_blocks(sk, xi, m)?;
    let (g11, g13) = general_crossing(sk, m.flip())?;
    Ok((b.gvi * b.gvi * g11 / (b.gii * b.giv * g13)).sqrt())
}

const ASPECTS: [f64; 2] = [1.0, 2.0];
const LATTICE_Y: [f64; 3] = [0.25, 0.5, 0.8];

fn skip_unsupported<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::UnsupportedBlock { .. }) | Err(Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Every printed closed form at one special kappa against the general path.
pub fn special_kappa_row(sk: SpecialKappa) -> Result<OracleRow> {
    let tol = if sk.is_pole() { POLE_TOL } else { DIRECT_TOL };
    let mut row = OracleRow::new(format!("kappa = {}", sk.label()), tol);
    for &mv in &M_GRID {
        let m = Frac::new(mv);
        for &xv in &XI_GRID {
            let xi = Frac::new(xv);
            if let Some(o) = skip_unsupported(oracle_blocks(sk, xi, m))? {
                let g = general_blocks(sk, xi, m)?;
                for b in Block::ALL {
                    if let Some(v) = o.get(b) {
                        row.record(v, g.get(b), || format!("{} at xi={xv}, m={mv}", b.name()));
                    }
                }
                if let Some(v) = o.gi_plus_gv {
                    row.record(v, g.gi + g.gv, || format!("G_I+G_V at xi={xv}, m={mv}"));
                }
            }
            let t = Frac::with_comp(xv * mv, 1.0 - xv * mv);
            let u1 = skip_unsupported(oracle_u1(sk, m, t))?;
            let u2 = skip_unsupported(oracle_u2(sk, m, t))?;
            if u1.is_some() || u2.is_some() {
                let (g1, g2) = general_solutions(sk, m, t)?;
                if let Some(v) = u1 {
                    row.record(v, g1, || format!("u1 at s={mv}, t={}", t.v));
                }
                if let Some(v) = u2 {
                    row.record(v, g2, || format!("u2 at s={mv}, t={}", t.v));
                }
            }
        }
    }
    for &mv in &XI_GRID {
        let m = Frac::new(mv);
        if let Some((o11, o13)) = skip_unsupported(oracle_crossing(sk, m))? {
            let (g11, g13) = general_crossing(sk, m)?;
            row.record(o11, g11, || format!("G_1,1 at m={mv}"));
            if let Some(v) = o13 {
                row.record(v, g13, || format!("G_1,3 at m={mv}"));
            }
        }
    }
    for &r in &ASPECTS {
        let geom = RectGeometry::from_aspect(r)?;
        for j in 1..10 {
            let x = r * j as f64 / 10.0;
            let p = bulk_point(x, 0.5, &geom)?;
            if let Some(v) = skip_unsupported(oracle_rho(sk, x, &geom))? {
                let g = general_rho(sk, p.xi_frac(), geom.m_frac())?;
                row.record(v, g, || format!("rho at x={x}, R={r}"));
            }
            if let Some(v) = skip_unsupported(gvi_double_argument(sk, x, &geom))? {
                let g = general_blocks(sk, p.xi_frac(), geom.m_frac())?;
                row.record(v, g.gvi, || format!("G_VI double argument at x={x}, R={r}"));
            }
            for &y in &LATTICE_Y {
                weight_checks(sk, x, y, &geom, &mut row)?;
            }
        }
    }
    Ok(row)
}

/// Elementary weights at kappa = 8 and 8/3 against f times the blocks.
fn weight_checks(sk: SpecialKappa, x: f64, y: f64, geom: &RectGeometry, row: &mut OracleRow) -> Result<()> {
    let p = bulk_point(x, y, geom)?;
    let (xi, psi, m) = (p.xi_frac(), p.psi_frac(), geom.m_frac());
    let at = || format!("weights at (x, y) = ({x}, {y}), R = {}", geom.r);
    match sk {
        SpecialKappa::Eight => {
            let mp = model_params(8.0)?;
            let w = kappa8_weights(&p, geom);
            let f = prefactor_f(&p, geom, &mp)?;
            let b = block_vector_frac(xi, m, &mp)?;
            let bt = block_vector_frac(psi, m.flip(), &mp)?;
            let (h, v) = crossing_weights(geom, &mp)?;
            row.record(w.prefactor, f, at);
            row.record(w.pi_h, h, at);
            row.record(w.pi_v, v, at);
            row.record(w.pi_a, f * b.gvi, at);
            row.record(w.pi_br, f * b.gi, at);
            row.record(w.pi_bl, f * b.gv, at);
            row.record(w.pi_bt, f * bt.gi, at);
            row.record(w.pi_bb, f * bt.gv, at);
            row.record(w.pi_abar, f * bt.gvi, at);
            // sum rules in the general path
            row.record(f * b.gvi, f * (bt.gi + bt.gv), at);
            row.record(f * bt.gvi, f * (b.gi + b.gv), at);
        }
        SpecialKappa::EightThirds => {
            let w = kappa83_weights(&p, geom);
            let g = limit_at_pole(8.0 / 3.0, |mp: &ModelParams| {
                let f = prefactor_f(&p, geom, mp)?;
                let b = block_vector_frac(xi, m, mp)?;
                let bt = block_vector_frac(psi, m.flip(), mp)?;
                let (h, v) = crossing_weights(geom, mp)?;
                Ok([f * b.gvi, f * (b.gi + b.gv), f * (bt.gi + bt.gv), f * bt.gvi, h, v])
            })?;
            row.record(w.pi_a, g[0], at);
            row.record(w.pi_b_lr, g[1], at);
            row.record(w.pi_b_tb, g[2], at);
            row.record(w.pi_abar, g[3], at);
            row.record(w.pi_h, g[4], at);
            row.record(w.pi_v, g[5], at);
            row.record(g[0] + g[2], 4.0 * g[4], at);
            row.record(g[3] + g[1], 4.0 * g[5], at);
        }
        _ => {}
    }
    Ok(())
}

/// Residuals of the linear relations among G_I..G_VI over the grid.
pub fn linear_relation_row(kappa: f64) -> Result<OracleRow> {
    let mp = model_params(kappa)?;
    let mut row = OracleRow::new(format!("relations, kappa = {kappa:.6}"), DIRECT_TOL);
    for &mv in &M_GRID {
        for &xv in &XI_GRID {
            let b = block_vector_frac(Frac::new(xv), Frac::new(mv), &mp)?;
            let res = b.relation_residuals(mp.n);
            for r in res {
                row.checks += 1;
                if !(r <= row.worst) {
                    row.worst = if r.is_nan() { f64::INFINITY } else { r };
                    row.worst_at = format!("xi={xv}, m={mv}");
                }
            }
        }
    }
    Ok(row)
}

/// The kappa values used for the block-relation checks.
pub const RELATION_KAPPAS: [f64; 5] = [3.0, 10.0 / 3.0, 24.0 / 5.0, 16.0 / 3.0, 6.0];

/// Every oracle row followed by every relation row.
pub fn run_all() -> Vec<(String, Result<OracleRow>)> {
    let mut out = Vec::new();
    for sk in SpecialKappa::ALL {
        out.push((format!("kappa = {}", sk.label()), special_kappa_row(sk)));
    }
    for k in RELATION_KAPPAS {
        out.push((format!("relations, kappa = {k:.6}"), linear_relation_row(k)));
    }
    out
}
