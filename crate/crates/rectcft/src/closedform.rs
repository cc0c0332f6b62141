//! Elementary and elliptic-integral reductions of the blocks at special
//! kappa. They serve as independent oracles for the general-kappa path and
//! as the evaluation route at the poles.
//!
//! Forms at kappa = 8/3 are in the tilde normalization (divided by
//! -Gamma(2 - 8/kappa)), see [`crate::blocks::tilde_normalization`].

use std::f64::consts::{PI, SQRT_2};

use crate::geometry::{BulkPoint, RectGeometry};
use crate::specfun::{appell_f1_frac, carlson_rf, ellip_e_frac, ellip_k_frac, gamma, jacobi_frac, Frac, SeriesControl};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialKappa {
    Two,
    TwelveFifths,
    EightThirds,
    SixteenSevenths,
    Three,
    SixteenFifths,
    Four,
    TwentyFourFifths,
    SixteenThirds,
    Six,
    Eight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Dense,
    Dilute,
}

impl SpecialKappa {
    pub const ALL: [SpecialKappa; 11] = [
        SpecialKappa::Two,
        SpecialKappa::TwelveFifths,
        SpecialKappa::EightThirds,
        SpecialKappa::SixteenSevenths,
        SpecialKappa::Three,
        SpecialKappa::SixteenFifths,
        SpecialKappa::Four,
        SpecialKappa::TwentyFourFifths,
        SpecialKappa::SixteenThirds,
        SpecialKappa::Six,
        SpecialKappa::Eight,
    ];

    pub fn kappa(self) -> f64 {
        use SpecialKappa::*;
        match self {
            Two => 2.0,
            TwelveFifths => 12.0 / 5.0,
            EightThirds => 8.0 / 3.0,
            SixteenSevenths => 16.0 / 7.0,
            Three => 3.0,
            SixteenFifths => 16.0 / 5.0,
            Four => 4.0,
            TwentyFourFifths => 24.0 / 5.0,
            SixteenThirds => 16.0 / 3.0,
            Six => 6.0,
            Eight => 8.0,
        }
    }

    pub fn label(self) -> &'static str {
        use SpecialKappa::*;
        match self {
            Two => "2",
            TwelveFifths => "12/5",
            EightThirds => "8/3",
            SixteenSevenths => "16/7",
            Three => "3",
            SixteenFifths => "16/5",
            Four => "4",
            TwentyFourFifths => "24/5",
            SixteenThirds => "16/3",
            Six => "6",
            Eight => "8",
        }
    }

    pub fn from_kappa(kappa: f64) -> Option<Self> {
        Self::ALL.iter().copied().find(|s| (s.kappa() - kappa).abs() < 1e-9)
    }

    /// Dense (kappa > 4) or dilute (kappa <= 4) phase.
    pub fn branch(self) -> Branch {
        if self.kappa() > 4.0 {
            Branch::Dense
        } else {
            Branch::Dilute
        }
    }

    /// True for kappa in {4, 8/3, 2}, where the general path needs a limit.
    pub fn is_pole(self) -> bool {
        matches!(self, SpecialKappa::Two | SpecialKappa::EightThirds | SpecialKappa::Four)
    }
}

fn unsupported(sk: SpecialKappa, what: &'static str) -> Error {
    Error::UnsupportedBlock { kappa: sk.kappa(), what }
}

/// Blocks that have a printed closed form at the given kappa.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OracleBlocks {
    pub gi: Option<f64>,
    pub gii: Option<f64>,
    pub giii: Option<f64>,
    pub giv: Option<f64>,
    pub gv: Option<f64>,
    pub gvi: Option<f64>,
    /// G_I + G_V where only the sum has a closed form (kappa = 8/3).
    pub gi_plus_gv: Option<f64>,
}

impl OracleBlocks {
    pub fn get(&self, b: crate::blocks::Block) -> Option<f64> {
        use crate::blocks::Block;
        match b {
            Block::I => self.gi,
            Block::II => self.gii,
            Block::III => self.giii,
            Block::IV => self.giv,
            Block::V => self.gv,
            Block::VI => self.gvi,
        }
    }
}

/// F(phi | m) with sin^2 phi = u.
fn incomplete_f_sn2(u: Frac, m: Frac) -> Result<f64> {
    Ok(u.v.sqrt() * carlson_rf(u.c, m.c + m.v * u.c, 1.0)?)
}

/// tilde G_{1,1} at kappa = 8/3:
/// (1 - m + m^2)/pi E(m) - (2 - 3m + m^2)/(2 pi) K(m).
pub fn g11_tilde_83(m: Frac) -> f64 {
    let (e, k) = (ellip_e_frac(m), ellip_k_frac(m));
    let mv = m.v;
    (1.0 - mv + mv * mv) / PI * e - m.c * (1.0 + m.c) / (2.0 * PI) * k
}

/// d/dm of [`g11_tilde_83`].
pub fn g11_tilde_83_prime(m: Frac) -> f64 {
    let (e, k) = (ellip_e_frac(m), ellip_k_frac(m));
    let mv = m.v;
    let de = (e - k) / (2.0 * mv);
    let dk = (e - m.c * k) / (2.0 * mv * m.c);
    (2.0 * mv - 1.0) / PI * e + (1.0 - mv + mv * mv) / PI * de + (3.0 - 2.0 * mv) / (2.0 * PI) * k
        - m.c * (1.0 + m.c) / (2.0 * PI) * dk
}

/// G_{1,1} and G_{1,3} at kappa = 16/7 as functions of r = sqrt(1 - m).
fn g_167(r: f64, sign: f64) -> f64 {
    let p = 4.0 * r.powi(4) - sign * 10.0 * r.powi(3) + 11.0 * r * r - sign * 10.0 * r + 4.0;
    -((1.0 + sign * r) / 2.0).powf(2.5) * p
}

/// First and second m-derivatives of [`g_167`].
fn g_167_derivs(r: f64, sign: f64) -> (f64, f64) {
    let s = sign;
    let d1 = s * 13.0 * SQRT_2 / 32.0 * (1.0 + s * r).powf(1.5) * (4.0 * r.powi(3) - s * 6.0 * r * r + 3.0 * r - s * 2.0);
    let d2 = (2.0 * (1.0 + s * r)).sqrt() * 117.0 / 128.0 * (1.0 + s * 2.0 * r - 4.0 * r * r);
    (d1, d2)
}

/// (G_{1,1}(m), G_{1,3}(m)) from the printed forms; G_{1,3} is `None`
/// where only G_{1,1} has one.
pub fn oracle_crossing(sk: SpecialKappa, m: Frac) -> Result<(f64, Option<f64>)> {
    use SpecialKappa::*;
    let mv = m.v;
    let r = m.c.sqrt();
    Ok(match sk {
        Four => ((1.0 + m.c) / 2.0, Some(mv / 2.0)),
        Two => (1.0 - 2.0 * mv + mv.powi(3) - mv.powi(4) / 2.0, Some(-mv.powi(3) + mv.powi(4) / 2.0)),
        Eight => {
            let k = 2.0 / PI * ellip_k_frac(m);
            (k, Some(k))
        }
        SixteenThirds => (((1.0 + r) / 2.0).sqrt(), Some((mv / (2.0 * (1.0 + r))).sqrt())),
        SixteenFifths => {
            let one_minus_r = mv / (1.0 + r);
            (
                (2.0 - 3.0 * r + 2.0 * m.c) * ((1.0 + r) / 2.0).powf(1.5),
                Some((2.0 + 3.0 * r + 2.0 * m.c) * (one_minus_r / 2.0).powf(1.5)),
            )
        }
        SixteenSevenths => (g_167(r, 1.0), Some(g_167(r, -1.0))),
        EightThirds => {
            let g = g11_tilde_83(m);
            (g, Some(g))
        }
        Six => (1.0, None),
        Three => (1.0 - mv + mv * mv, None),
        TwelveFifths => ((1.0 - 2.0 * mv) * (1.0 + mv) * (1.0 - mv / 2.0), None),
        TwentyFourFifths => return Err(unsupported(sk, "G_1,1 / G_1,3")),
    })
}

/// Closed form of u1(s, t).
pub fn oracle_u1(sk: SpecialKappa, s: Frac, t: Frac) -> Result<f64> {
    use SpecialKappa::*;
    let (sv, tv) = (s.v, t.v);
    Ok(match sk {
        Four => (2.0 - sv - tv * (2.0 - tv)) / (2.0 * s.c),
        Two => (1.0 + sv - 3.0 * tv) / 2.0 + t.c.powi(5) / (2.0 * s.c.powi(3)) * (1.0 - 2.0 * sv + 2.0 * tv - sv * tv),
        Eight => 2.0 / PI * ellip_k_frac(s),
        SixteenThirds => {
            let r = s.c.sqrt();
            ((1.0 + r) / (2.0 * s.c)).sqrt() - tv * (1.0 / (2.0 * (1.0 + r) * s.c)).sqrt()
        }
        SixteenFifths => {
            let rs = sv.sqrt();
            let s32 = sv * rs;
            let t3 = tv.powi(3);
            let om = s.c / (1.0 + rs);
            (2.0 * (s32 - t3) / s32 * om.sqrt() - (tv - rs).powi(3) / (sv * om.powf(1.5))
                + 2.0 * (s32 + t3) / s32 * (1.0 + rs).sqrt()
                - (tv + rs).powi(3) / (sv * (1.0 + rs).powf(1.5)))
                / 4.0
        }
        SixteenSevenths => {
            let r = s.c.sqrt();
            let (g11, g13) = (g_167(r, 1.0), g_167(r, -1.0));
            let (g11p, g11pp) = g_167_derivs(r, 1.0);
            let (g13p, g13pp) = g_167_derivs(r, -1.0);
            let sc = s.c;
            let ss = sv * sc;
            let a = (1.0 - 5.0 * tv + 10.0 * tv * tv) / sc.powf(2.5) * g11 - 20.0 * tv * (1.0 - 4.0 * tv) / (13.0 * sc.powf(1.5)) * g11p
                + 160.0 * tv * tv / (117.0 * sc.sqrt()) * g11pp;
            let t3 = tv.powi(3);
            let b = t3 * (tv * tv - 5.0 * sv * tv + 10.0 * sv * sv) / ss.powf(2.5) * g13
                - 20.0 * t3 * (tv - 4.0 * sv) / (13.0 * ss.powf(1.5)) * g13p
                + 160.0 * t3 / (117.0 * ss.sqrt()) * g13pp;
            a - b
        }
        EightThirds => {
            let q = sv - 2.0 * sv * tv + tv * tv;
            q * q / (sv * sv * s.c * s.c) * g11_tilde_83(s)
                - 8.0 * tv * (sv - tv) * t.c / (5.0 * sv * s.c) * g11_tilde_83_prime(s)
        }
        _ => return Err(unsupported(sk, "u1")),
    })
}

/// Closed form of u2(s, t).
pub fn oracle_u2(sk: SpecialKappa, s: Frac, t: Frac) -> Result<f64> {
    use SpecialKappa::*;
    Ok(match sk {
        Four => 0.5,
        Two => (s.v + t.v - 3.0) / 2.0,
        // 2 / (pi sqrt s) F(arcsin sqrt s | t / s)
        Eight => 2.0 / PI * carlson_rf(s.c, t.c, 1.0)?,
        _ => return Err(unsupported(sk, "u2")),
    })
}

/// ds^2(2u | m) at sn^2(u | m) = u2.
fn ds2_double(u: Frac, m: Frac) -> f64 {
    let d = m.c + m.v * u.c;
    let num = m.c + m.v * u.c * u.c;
    num * num / (4.0 * u.v * u.c * d)
}

/// The blocks with a printed closed form at this kappa.
pub fn oracle_blocks(sk: SpecialKappa, xi: Frac, m: Frac) -> Result<OracleBlocks> {
    use SpecialKappa::*;
    let (x, xc) = (xi.v, xi.c);
    let (mv, mc) = (m.v, m.c);
    let d = mc + mv * xc;
    let mut o = OracleBlocks::default();
    match sk {
        Four => {
            let w = (4.0 * mv * mc * x * xc * d).sqrt();
            o.gi = Some(mv * mc * x * x / w);
            o.gii = Some(mc * (1.0 + mv * x * x) / w);
            o.giii = Some((d * d + mc) / w);
            o.giv = Some((d * d + mv * xc * xc) / w);
            o.gv = Some(mv * xc * xc / w);
            o.gvi = Some(mc * (mc + mv * xc * (1.0 + x)) / w);
        }
        Two => {
            let p = (x * xc * d).powf(1.5);
            o.gi = Some(-mv * mc * x.powi(5) * (2.0 + xc - mv * x) / (2.0 * p));
            o.gv = Some(-mv * xc.powi(5) * (2.0 - mv + x - 2.0 * mv * x) / (2.0 * mc * mc * p));
            let m3 = mv.powi(3);
            o.gvi = Some(
                -mc * (1.0 + mv - 3.0 * mv * x + 3.0 * m3 * x.powi(5) - m3 * x.powi(6) - m3 * mv * x.powi(6))
                    / (2.0 * mv * mv * p),
            );
        }
        Eight => {
            let q = 2.0 / PI * (mv * mc).powf(0.25);
            let mirror = Frac::with_comp(xc / d, x * mc / d);
            o.gi = Some(q * incomplete_f_sn2(xi, m)?);
            o.gv = Some(q * incomplete_f_sn2(mirror, m)?);
            o.gvi = Some(q * ellip_k_frac(m.flip()));
        }
        SixteenThirds => {
            let sm = mv.sqrt();
            let p = mc.powf(0.375) / (SQRT_2 * mv.powf(0.125) * (x * xc * d).powf(0.25));
            let plus = (1.0 + sm * x) / (1.0 + sm).sqrt();
            let one_minus_sm = mc / (1.0 + sm);
            let minus = (one_minus_sm + sm * xc) / one_minus_sm.sqrt();
            o.gii = Some(p * plus);
            o.giv = Some(p * minus);
            o.giii = Some(p * (plus + minus) / SQRT_2);
            o.gvi = Some(p * (plus - 32.0 * (mv * PI).sqrt() * x.powf(1.25) / (5.0 * gamma(0.25)?.powi(2)) * f1_163(xi, m)?));
        }
        SixteenFifths => {
            let rm = mv.sqrt();
            let om = mc / (1.0 + rm);
            let den = 2.0 * SQRT_2 * mv.powf(0.875) * (x * xc * d).powf(0.75) * mc.powf(0.875);
            let a = rm * x;
            let one_minus_a = om + rm * xc;
            let gii = om.powf(1.5) * (2.0 * (1.0 + rm).powi(2) * (1.0 + a.powi(3)) - rm * (1.0 + a).powi(3)) / den;
            let giv = (1.0 + rm).powf(1.5)
                * (2.0 * om * om * one_minus_a * (1.0 + a + a * a) + rm * one_minus_a.powi(3))
                / den;
            o.gii = Some(gii);
            o.giv = Some(giv);
            o.giii = Some((gii + giv) / SQRT_2);
        }
        EightThirds => {
            let ds2 = ds2_double(xi, m);
            let mm = (mv * mc).powf(1.25);
            let fm = m.flip();
            o.gvi = Some((4.0 * ds2 * g11_tilde_83(fm) + 1.6 * mv * mc * g11_tilde_83_prime(fm)) / mm);
            o.gi_plus_gv = Some((4.0 * ds2 * g11_tilde_83(m) - 1.6 * mv * mc * g11_tilde_83_prime(m)) / mm);
        }
        _ => return Err(unsupported(sk, "blocks")),
    }
    Ok(o)
}

/// F1(1/4; 3/4, 3/4; 9/4 | xi, m xi)
fn f1_163(xi: Frac, m: Frac) -> Result<f64> {
    let mxi = Frac::with_comp(m.v * xi.v, m.c + m.v * xi.c);
    appell_f1_frac(0.25, 0.75, 0.75, 2.25, xi, mxi, &SeriesControl::default())
}

/// G_VI from the double-argument Jacobi forms at kappa = 4 and 2.
pub fn gvi_double_argument(sk: SpecialKappa, x: f64, geom: &RectGeometry) -> Result<f64> {
    let m = geom.m_frac();
    let s2 = jacobi_frac(2.0 * x * geom.k_1m, m).sn;
    match sk {
        SpecialKappa::Four => Ok((m.c / (m.v * s2 * s2)).sqrt()),
        SpecialKappa::Two => Ok(-m.c * (4.0 + 4.0 * m.v - 3.0 * m.v * s2 * s2) / (m.v * m.v * s2.powi(3))),
        _ => Err(unsupported(sk, "double-argument G_VI")),
    }
}

/// Closed form of rho(x) where one exists (kappa = 16/3 keeps one F1).
pub fn oracle_rho(sk: SpecialKappa, x: f64, geom: &RectGeometry) -> Result<f64> {
    use SpecialKappa::*;
    match sk {
        Eight | EightThirds => Ok(1.0),
        Four => {
            let m = geom.m_frac();
            let cn = jacobi_frac(2.0 * x * geom.k_1m, m).cn;
            Ok(((1.0 + m.v) / (1.0 + m.v * cn * cn)).sqrt())
        }
        SixteenThirds => {
            let p = crate::geometry::bulk_point(x, 0.5, geom)?;
            let (xi, m) = (p.xi_frac(), geom.m_frac());
            let sm = m.v.sqrt();
            let one_minus = m.c / (1.0 + sm) + sm * xi.c;
            let one_minus_mxi2 = m.c + m.v * xi.c * (1.0 + xi.v);
            let lead = ((1.0 + sm * xi.v) / one_minus).sqrt();
            let corr = 32.0 * xi.v.powf(1.25) / (5.0 * gamma(0.25)?.powi(2))
                * (m.v * (1.0 + sm) * PI / one_minus_mxi2).sqrt()
                * f1_163(xi, m)?;
            Ok(lead - corr)
        }
        _ => Err(Error::Unsupported(format!("no closed form for rho at kappa = {}", sk.label()))),
    }
}

/// Configuration weights at kappa = 8, all elementary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kappa8Weights {
    pub prefactor: f64,
    pub pi_h: f64,
    pub pi_v: f64,
    pub pi_a: f64,
    pub pi_br: f64,
    pub pi_bl: f64,
    pub pi_bt: f64,
    pub pi_bb: f64,
    pub pi_abar: f64,
}

pub fn kappa8_weights(p: &BulkPoint, geom: &RectGeometry) -> Kappa8Weights {
    let r = geom.r;
    Kappa8Weights {
        prefactor: 1.0 / (geom.k_1m * (geom.m * geom.m_c).powf(0.25)),
        pi_h: 2.0 / PI,
        pi_v: 2.0 * r / PI,
        pi_a: 2.0 / PI,
        pi_br: 2.0 * p.x / PI,
        pi_bl: 2.0 * (r - p.x) / PI,
        pi_bt: 2.0 * p.y / PI,
        pi_bb: 2.0 * (1.0 - p.y) / PI,
        pi_abar: 2.0 * r / PI,
    }
}

/// Tilde-normalized weights at kappa = 8/3. Only the sums over the two
/// B-type configurations on opposite sides have closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kappa83Weights {
    pub prefactor: f64,
    pub pi_h: f64,
    pub pi_v: f64,
    pub pi_a: f64,
    /// Pi_Br + Pi_Bl
    pub pi_b_lr: f64,
    /// Pi_Bt + Pi_Bb
    pub pi_b_tb: f64,
    pub pi_abar: f64,
}

pub fn kappa83_weights(p: &BulkPoint, geom: &RectGeometry) -> Kappa83Weights {
    let m = geom.m_frac();
    let k5 = geom.k_1m.powi(5);
    let dsx = ds2_double(p.xi_frac(), m);
    let dsy = ds2_double(p.psi_frac(), m.flip());
    let den = dsx + dsy;
    let mmc = m.v * m.c;
    let pi_h = k5 * g11_tilde_83(m.flip());
    let pi_v = k5 * g11_tilde_83(m);
    // m-derivatives of the G~ parts, K'^5 held fixed
    let dpi_h = -k5 * g11_tilde_83_prime(m.flip());
    let dpi_v = k5 * g11_tilde_83_prime(m);
    Kappa83Weights {
        prefactor: k5 * mmc.powf(1.25) / den,
        pi_h,
        pi_v,
        pi_a: (4.0 * dsx * pi_h - 1.6 * mmc * dpi_h) / den,
        pi_b_lr: (4.0 * dsx * pi_v - 1.6 * mmc * dpi_v) / den,
        pi_b_tb: (4.0 * dsy * pi_h + 1.6 * mmc * dpi_h) / den,
        pi_abar: (4.0 * dsy * pi_v + 1.6 * mmc * dpi_v) / den,
    }
}
