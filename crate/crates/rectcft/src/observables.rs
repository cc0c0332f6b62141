//! Crossing probabilities, cluster densities, the universal ratio rho and
//! the percolation densities with one side wired or a crossing cluster.
//!
//! Absolute densities carry one nonuniversal constant, set to 1 here; the
//! quantities meant for comparison with data are rho and center-normalized
//! profiles.

use num_complex::Complex64;

use crate::blocks::{self, block_vector_frac, crossing_weights, g11, g13, nearest_pole, prefactor_bracket, weight_set};
use crate::closedform::{self, SpecialKappa};
use crate::geometry::{bulk_point, model_params, BulkPoint, ModelParams, RectGeometry};
use crate::specfun::{appell_f1_frac, gamma, jacobi_complex, Frac, SeriesControl};
use crate::{Error, Result};

/// Within this fraction of R from the wired sides, rho is returned as its limit 1.
pub const RHO_EDGE: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wiring {
    /// Left and right sides wired separately (FK clusters).
    Independent,
    /// Left and right sides wired together (spin clusters).
    Mutual,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityTriple {
    pub p_left: f64,
    pub p_right: f64,
    pub p_both: f64,
    pub wiring: Wiring,
}

fn positive_n(mp: &ModelParams) -> Result<()> {
    if !(mp.n > 0.0) {
        return Err(Error::Domain(format!("loop fugacity n = {} must be positive", mp.n)));
    }
    Ok(())
}

/// Horizontal crossing probability: P_H = Pi_H / (Pi_H + n Pi_V) for
/// independent wiring, nPi_H / (n Pi_H + Pi_V) for mutual wiring.
pub fn crossing_probability(geom: &RectGeometry, mp: &ModelParams, w: Wiring) -> Result<f64> {
    positive_n(mp)?;
    let (h, v) = crossing_weights(geom, mp)?;
    let n = mp.n;
    Ok(match w {
        Wiring::Independent => h / (h + n * v),
        Wiring::Mutual => n * h / (n * h + v),
    })
}

pub fn density_triple(p: &BulkPoint, geom: &RectGeometry, mp: &ModelParams, w: Wiring) -> Result<DensityTriple> {
    positive_n(mp)?;
    let ws = weight_set(p, geom, mp)?;
    let n = mp.n;
    Ok(match w {
        Wiring::Independent => {
            let z = ws.pi_h + n * ws.pi_v;
            DensityTriple {
                p_left: (ws.pi_a + n * ws.pi_bl) / z,
                p_right: (ws.pi_a + n * ws.pi_br) / z,
                p_both: ws.pi_a / z,
                wiring: w,
            }
        }
        Wiring::Mutual => {
            let z = n * ws.pi_h + ws.pi_v;
            DensityTriple {
                p_left: (n * ws.pi_a + ws.pi_bl) / z,
                p_right: (n * ws.pi_a + ws.pi_br) / z,
                p_both: n * ws.pi_a / z,
                wiring: w,
            }
        }
    })
}

fn rho_from_blocks(xi: Frac, m: Frac, mp: &ModelParams) -> Result<f64> {
    let b = block_vector_frac(xi, m, mp)?;
    let mf = m.flip();
    rho_sqrt(b.gvi * b.gvi * g11(mf, mp)? / (b.gii * b.giv * g13(mf, mp)?), mp.kappa)
}

fn rho_sqrt(ratio: f64, kappa: f64) -> Result<f64> {
    if !(ratio >= 0.0) {
        return Err(Error::Domain(format!("rho is not real at kappa = {kappa} (block ratio {ratio})")));
    }
    Ok(ratio.sqrt())
}

/// rho(x) = sqrt(G_VI^2 G_{1,1}(1-m) / (G_II G_IV G_{1,3}(1-m))), independent of y.
pub fn rho(x: f64, geom: &RectGeometry, mp: &ModelParams) -> Result<f64> {
    let r = geom.r;
    if !(x > 0.0 && x < r) {
        return Err(Error::Domain(format!("x = {x} must lie strictly inside (0, {r})")));
    }
    if x < RHO_EDGE * r || x > (1.0 - RHO_EDGE) * r {
        return Ok(1.0);
    }
    let x = x.min(r - x);
    let p = bulk_point(x, 0.5, geom)?;
    let m = geom.m_frac();
    match nearest_pole(mp.kappa) {
        Some(pole) if (mp.kappa - pole).abs() < blocks::POLE_BAND => {
            let sk = SpecialKappa::from_kappa(pole).expect("poles are special values");
            match sk {
                SpecialKappa::Two => {
                    let b = blocks::limit_block_vector(p.xi_frac(), m, pole)?;
                    let (g11, g13) = blocks::limit_crossing_blocks(m.flip(), pole)?;
                    rho_sqrt(b.gvi * b.gvi * g11 / (b.gii * b.giv * g13), pole)
                }
                _ => closedform::oracle_rho(sk, x, geom),
            }
        }
        _ => rho_from_blocks(p.xi_frac(), m, mp),
    }
}

/// Plateau value rho(x, R -> infinity) from the OPE coefficient:
/// the displayed value C / sqrt(n), and the caption reading C / n with
/// C = sqrt(n) rho_inf.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoInfinity {
    pub displayed: f64,
    pub caption_reading: f64,
    pub ope_coefficient: f64,
}

pub fn rho_infinity(mp: &ModelParams) -> Result<f64> {
    rho_infinity_report(mp).map(|r| r.displayed)
}

pub fn rho_infinity_report(mp: &ModelParams) -> Result<RhoInfinity> {
    positive_n(mp)?;
    let k = mp.kappa;
    if (k - 8.0 / 3.0).abs() < 1e-9 {
        return Err(Error::Domain(
            "rho_infinity at kappa = 8/3: the limits R -> infinity and n -> 0 do not commute".into(),
        ));
    }
    let num = gamma((16.0 - k) / k)?.powi(2) * gamma(4.0 / k)?.powi(3);
    let den = mp.n * gamma((8.0 - k) / k)? * gamma((12.0 - k) / k)? * gamma(8.0 / k)?.powi(3);
    let displayed = (num / den).sqrt();
    let c = displayed * mp.n.sqrt();
    Ok(RhoInfinity { displayed, caption_reading: c / mp.n, ope_coefficient: c })
}

fn degenerate(v: f64, what: &'static str) -> Result<f64> {
    if !(v.abs() > 1e-12) {
        return Err(Error::DegenerateDenominator(what));
    }
    Ok(v)
}

/// rho from measured densities and crossing probability. Independent
/// wiring: P_lr / sqrt(P_l P_r P_H). Mutual wiring: the same quantity
/// after inverting the mutual-wiring formulas for the weights.
pub fn rho_from_measured(d: &DensityTriple, p_cross: f64, mp: &ModelParams) -> Result<f64> {
    for (v, name) in [(d.p_left, "p_left"), (d.p_right, "p_right"), (d.p_both, "p_both"), (p_cross, "p_cross")] {
        if !(v > 0.0 && v <= 1.0) {
            return Err(Error::Domain(format!("{name} = {v} outside (0, 1]")));
        }
    }
    match d.wiring {
        Wiring::Independent => {
            let den = degenerate(d.p_left * d.p_right * p_cross, "P_l P_r P_H")?;
            Ok(d.p_both / den.sqrt())
        }
        Wiring::Mutual => {
            positive_n(mp)?;
            let n2 = mp.n * mp.n;
            let dl = degenerate(n2 * d.p_left - (n2 - 1.0) * d.p_both, "n^2 P_l - (n^2 - 1) P_lr")?;
            let dr = degenerate(n2 * d.p_right - (n2 - 1.0) * d.p_both, "n^2 P_r - (n^2 - 1) P_lr")?;
            let rho2 = d.p_both * d.p_both * (n2 - (n2 - 1.0) * p_cross) / (dl * dr * p_cross);
            if !(rho2 >= 0.0) {
                return Err(Error::DegenerateDenominator("mutual-wiring inversion"));
            }
            Ok(rho2.sqrt())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn percolation_check(p: &BulkPoint) -> Result<()> {
    let g = blocks::BOUNDARY_GUARD;
    if !(p.xi >= g && p.xi_c >= g && p.psi >= g && p.psi_c >= g) {
        return Err(Error::BoundaryDivergence(format!("({}, {}) is on or next to the boundary", p.x, p.y)));
    }
    Ok(())
}

/// 2^{1/3} K'^{5/48} B^{-11/96}, the common factor of the percolation densities.
fn percolation_scale(p: &BulkPoint, geom: &RectGeometry) -> f64 {
    2f64.powf(1.0 / 3.0) * geom.k_1m.powf(5.0 / 48.0) * prefactor_bracket(p, geom).powf(-11.0 / 96.0)
}

/// The bracketed expressions raised to 1/6 in P_Cr and P_Cl.
fn wired_brackets(p: &BulkPoint, geom: &RectGeometry) -> (f64, f64) {
    let m = geom.m_frac();
    let (x, xc) = (p.xi, p.xi_c);
    let d = m.c + m.v * xc;
    let u = m.v + m.c * p.psi_c; // 1 - (1-m) psi
    let q = u + m.v / u;
    let right = d / xc + m.v * xc / d - q;
    let left = 1.0 / x + m.v * x - q;
    (right, left)
}

/// Density of clusters touching the wired side (percolation): P_Cr for
/// the right side, P_Cl for the left.
pub fn one_side_wired_density(p: &BulkPoint, geom: &RectGeometry, side: Side) -> Result<f64> {
    percolation_check(p)?;
    let (right, left) = wired_brackets(p, geom);
    let b = match side {
        Side::Right => right,
        Side::Left => left,
    };
    Ok(percolation_scale(p, geom) * b.powf(1.0 / 6.0))
}

/// The same densities from the complex-argument Jacobi form, with
/// z = (x + i y) K'. The measure Im[sn^2] / (2 |sn cn dn|) carries the
/// factor 2 of |w - conj w| = 2 Im w.
pub fn one_side_wired_density_complex(p: &BulkPoint, geom: &RectGeometry, side: Side) -> Result<f64> {
    percolation_check(p)?;
    let z = Complex64::new(p.x, p.y) * geom.k_1m;
    let (sn, cn, dn) = jacobi_complex(z, geom.m_frac());
    let measure = (sn * sn).im / (2.0 * (sn * cn * dn).norm());
    let angle = match side {
        Side::Right => (dn / cn).arg(),
        Side::Left => sn.arg(),
    };
    Ok(2f64.powf(1.0 / 3.0) * geom.k_1m.powf(5.0 / 48.0) * measure.powf(-5.0 / 48.0) * angle.sin().powf(1.0 / 3.0))
}

/// Density of sites on a horizontally crossing cluster (percolation with
/// free boundaries), P_Ax.
pub fn crossing_cluster_density(p: &BulkPoint, geom: &RectGeometry) -> Result<f64> {
    percolation_check(p)?;
    let (right, left) = wired_brackets(p, geom);
    let m = geom.m_frac();
    let (x, xc) = (p.xi, p.xi_c);
    let d = m.c + m.v * xc;
    let mxi = Frac::with_comp(m.v * x, d);
    let f1 = appell_f1_frac(1.0 / 3.0, 2.0 / 3.0, -2.0 / 3.0, 2.0 / 3.0, m, mxi, &SeriesControl::default())?;
    let third = m.c.powf(1.0 / 3.0) / (x * xc * d).powf(1.0 / 6.0) * f1;
    Ok(percolation_scale(p, geom) * (right.powf(1.0 / 6.0) + left.powf(1.0 / 6.0) - third))
}

/// P_Ax divided by its value at the center (R/2, 1/2).
pub fn crossing_cluster_density_normalized(p: &BulkPoint, geom: &RectGeometry) -> Result<f64> {
    let c = bulk_point(0.5 * geom.r, 0.5, geom)?;
    Ok(crossing_cluster_density(p, geom)? / crossing_cluster_density(&c, geom)?)
}

/// P_Ax by the block route, P_Cr + P_Cl - f (G_VI + G_I + G_V) at kappa = 6.
pub fn crossing_cluster_density_by_blocks(p: &BulkPoint, geom: &RectGeometry) -> Result<f64> {
    let mp = model_params(6.0)?;
    let w = weight_set(p, geom, &mp)?;
    Ok(one_side_wired_density(p, geom, Side::Right)? + one_side_wired_density(p, geom, Side::Left)?
        - (w.pi_a + w.pi_br + w.pi_bl))
}

/// P_Ar = f G_IV - P_Cl at kappa = 6; nonnegative, and vanishing as x -> 0.
pub fn right_attached_crossing_density(p: &BulkPoint, geom: &RectGeometry) -> Result<f64> {
    let mp = model_params(6.0)?;
    let f = blocks::prefactor_f(p, geom, &mp)?;
    let b = block_vector_frac(p.xi_frac(), geom.m_frac(), &mp)?;
    Ok(f * b.giv - one_side_wired_density(p, geom, Side::Left)?)
}
