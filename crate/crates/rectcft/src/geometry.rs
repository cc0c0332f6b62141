//! Model parameters, the rectangle's elliptic parameter and the bulk
//! coordinates xi, psi.
//!
//! The rectangle is `[0, R] x [0, 1]`. With `K = K(m)` and `K' = K(1 - m)`
//! the aspect ratio is `R = K / K'`, and a bulk point maps to
//! `xi = sn^2(x K' | m)`, `psi = sn^2(y K' | 1 - m)`.

use std::f64::consts::PI;

use crate::specfun::{ellip_k_frac, jacobi_frac, theta2, theta3, theta4, Frac};
use crate::{Error, Result};

/// Supported aspect ratios.
pub const ASPECT_RANGE: (f64, f64) = (0.05, 20.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub kappa: f64,
    /// Loop fugacity -2 cos(4 pi / kappa).
    pub n: f64,
    pub h12: f64,
    pub h13: f64,
    /// Bulk weight h_{1/2,0}.
    pub h120: f64,
    pub c_charge: f64,
    /// True iff 8/3 <= kappa <= 8, where the weights are densities.
    pub physical_density: bool,
}

pub fn model_params(kappa: f64) -> Result<ModelParams> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    let k = kappa;
    Ok(ModelParams {
        kappa,
        n: -2.0 * (4.0 * PI / k).cos(),
        h12: (6.0 - k) / (2.0 * k),
        h13: (8.0 - k) / k,
        h120: (8.0 - k) * (3.0 * k - 8.0) / (64.0 * k),
        c_charge: (3.0 * k - 8.0) * (6.0 - k) / (2.0 * k),
        physical_density: (8.0 / 3.0..=8.0).contains(&k),
    })
}

impl ModelParams {
    pub fn new(kappa: f64) -> Result<Self> {
        model_params(kappa)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectGeometry {
    pub r: f64,
    pub m: f64,
    /// 1 - m, carried separately because it underflows for long rectangles.
    pub m_c: f64,
    /// K(m)
    pub k_m: f64,
    /// K'(m) = K(1 - m)
    pub k_1m: f64,
}

impl RectGeometry {
    pub fn from_aspect(r: f64) -> Result<Self> {
        let m = m_frac_from_aspect(r)?;
        Ok(Self::build(r, m))
    }

    pub fn from_m(m: f64) -> Result<Self> {
        check_open_unit(m, "m")?;
        let m = Frac::new(m);
        Ok(Self::build(aspect_from_m_frac(m), m))
    }

    fn build(r: f64, m: Frac) -> Self {
        RectGeometry { r, m: m.v, m_c: m.c, k_m: ellip_k_frac(m), k_1m: ellip_k_frac(m.flip()) }
    }

    pub fn m_frac(&self) -> Frac {
        Frac::with_comp(self.m, self.m_c)
    }

    /// The rectangle turned on its side and rescaled: R -> 1/R, m -> 1 - m.
    pub fn transposed(&self) -> Self {
        RectGeometry { r: 1.0 / self.r, m: self.m_c, m_c: self.m, k_m: self.k_1m, k_1m: self.k_m }
    }
}

fn check_open_unit(v: f64, name: &str) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Domain(format!("{name} = {v} outside (0, 1)")));
    }
    Ok(())
}

/// Elliptic parameter m of the rectangle with aspect ratio R, from the
/// theta quotient m = theta4^4 / theta3^4 at nome exp(-pi R).
pub fn m_from_aspect(r: f64) -> Result<f64> {
    m_frac_from_aspect(r).map(|m| m.v)
}

/// As [`m_from_aspect`], returning m together with 1 - m.
pub fn m_frac_from_aspect(r: f64) -> Result<Frac> {
    let (lo, hi) = ASPECT_RANGE;
    if !(lo..=hi).contains(&r) {
        return Err(Error::Domain(format!("aspect ratio {r} outside [{lo}, {hi}]")));
    }
    // use the nome that is small: exp(-pi R) for R >= 1, exp(-pi / R) for R < 1
    let (rr, swap) = if r >= 1.0 { (r, false) } else { (1.0 / r, true) };
    let q = (-PI * rr).exp();
    let t3 = theta3(q)?.powi(4);
    let small = (theta2(q)?.powi(4)) / t3;
    let big = (theta4(q)?.powi(4)) / t3;
    let m = Frac::with_comp(big, small);
    Ok(if swap { m.flip() } else { m })
}

/// R = K(m) / K(1 - m).
pub fn aspect_from_m(m: f64) -> Result<f64> {
    check_open_unit(m, "m")?;
    Ok(aspect_from_m_frac(Frac::new(m)))
}

pub fn aspect_from_m_frac(m: Frac) -> f64 {
    ellip_k_frac(m) / ellip_k_frac(m.flip())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BulkPoint {
    pub x: f64,
    pub y: f64,
    pub xi: f64,
    pub psi: f64,
    /// 1 - xi
    pub xi_c: f64,
    /// 1 - psi
    pub psi_c: f64,
}

impl BulkPoint {
    pub fn xi_frac(&self) -> Frac {
        Frac::with_comp(self.xi, self.xi_c)
    }

    pub fn psi_frac(&self) -> Frac {
        Frac::with_comp(self.psi, self.psi_c)
    }
}

/// sn^2(t K' | m) for t in [0, span], span the side length with
/// sn^2(span K' | m) = 1, returned with its complement.
fn sn2_coordinate(t: f64, span: f64, kp: f64, m: Frac) -> Frac {
    if t <= 0.5 * span {
        let j = jacobi_frac(t * kp, m);
        Frac::with_comp(j.sn * j.sn, j.cn * j.cn)
    } else {
        // reflect through the quarter period: sn(K - u) = cd(u)
        let j = jacobi_frac((span - t) * kp, m);
        let d2 = j.dn * j.dn;
        Frac::with_comp(j.cn * j.cn / d2, m.c * j.sn * j.sn / d2)
    }
}

pub fn bulk_point(x: f64, y: f64, geom: &RectGeometry) -> Result<BulkPoint> {
    if !(0.0..=geom.r).contains(&x) || !(0.0..=1.0).contains(&y) {
        return Err(Error::Domain(format!("point ({x}, {y}) outside [0, {}] x [0, 1]", geom.r)));
    }
    let m = geom.m_frac();
    let xi = sn2_coordinate(x, geom.r, geom.k_1m, m);
    let psi = sn2_coordinate(y, 1.0, geom.k_1m, m.flip());
    Ok(BulkPoint { x, y, xi: xi.v, psi: psi.v, xi_c: xi.c, psi_c: psi.c })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mirror {
    /// x -> R - x
    X,
    /// y -> 1 - y
    Y,
    /// Exchange of the axes, R -> 1/R
    Diagonal,
}

/// (1 - u) / (1 - k u) with its complement u (1 - k) / (1 - k u).
fn mirror_coordinate(u: Frac, k: Frac) -> Frac {
    let d = k.c + k.v * u.c;
    Frac::with_comp(u.c / d, u.v * k.c / d)
}

/// Image of a point under a symmetry of the rectangle, together with the
/// image geometry (only the diagonal map changes it).
pub fn mirror_maps(p: &BulkPoint, geom: &RectGeometry, which: Mirror) -> (BulkPoint, RectGeometry) {
    let m = geom.m_frac();
    match which {
        Mirror::X => {
            let xi = mirror_coordinate(p.xi_frac(), m);
            (BulkPoint { x: geom.r - p.x, xi: xi.v, xi_c: xi.c, ..*p }, *geom)
        }
        Mirror::Y => {
            let psi = mirror_coordinate(p.psi_frac(), m.flip());
            (BulkPoint { y: 1.0 - p.y, psi: psi.v, psi_c: psi.c, ..*p }, *geom)
        }
        Mirror::Diagonal => {
            let q = BulkPoint {
                x: p.y / geom.r,
                y: p.x / geom.r,
                xi: p.psi,
                xi_c: p.psi_c,
                psi: p.xi,
                psi_c: p.xi_c,
            };
            (q, geom.transposed())
        }
    }
}
