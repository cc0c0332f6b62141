//! Conformal blocks G_I..G_VI of the bulk-point, four-corner correlator,
//! the crossing blocks G_{1,1}, G_{1,3}, the algebraic prefactor f, and
//! the configuration weights built from them.
//!
//! Every block is a power-law prefactor in (xi, m) times a single Appell
//! function. The lower parameter 2 - 8/kappa of the F1's and the Gamma
//! factor Gamma(2 - 8/kappa) are singular at kappa in {4, 8/3, 2}; within
//! [`POLE_BAND`] of these the evaluators return [`Error::PoleDispatch`].
//! [`limit_block_vector`] and [`limit_crossing_blocks`] give the values at
//! the poles themselves.

use crate::geometry::{BulkPoint, ModelParams, RectGeometry};
use crate::specfun::{appell_f1_frac, appell_f2, gamma, hyp2f1_frac, rgamma, Frac, SeriesControl};
use crate::{Error, Result};

pub const POLES: [f64; 3] = [4.0, 8.0 / 3.0, 2.0];
pub const POLE_BAND: f64 = 1e-7;
/// Points with xi or 1 - xi below this are refused.
pub const BOUNDARY_GUARD: f64 = 1e-6;
/// G_VI is summed as an F2 below this value of |x| + |y|, and taken as
/// G_II - n G_I above it.
pub const F2_CUTOFF: f64 = 0.95;
/// Half-step of the symmetric Richardson limit at a pole.
pub const LIMIT_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockVector {
    pub gi: f64,
    pub gii: f64,
    pub giii: f64,
    pub giv: f64,
    pub gv: f64,
    pub gvi: f64,
    pub xi: f64,
    pub m: f64,
    pub kappa: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl Block {
    pub const ALL: [Block; 6] = [Block::I, Block::II, Block::III, Block::IV, Block::V, Block::VI];

    pub fn name(self) -> &'static str {
        match self {
            Block::I => "G_I",
            Block::II => "G_II",
            Block::III => "G_III",
            Block::IV => "G_IV",
            Block::V => "G_V",
            Block::VI => "G_VI",
        }
    }
}

impl BlockVector {
    pub fn get(&self, b: Block) -> f64 {
        match b {
            Block::I => self.gi,
            Block::II => self.gii,
            Block::III => self.giii,
            Block::IV => self.giv,
            Block::V => self.gv,
            Block::VI => self.gvi,
        }
    }

    fn as_array(&self) -> [f64; 6] {
        [self.gi, self.gii, self.giii, self.giv, self.gv, self.gvi]
    }

    /// Residuals of G_VI = G_II - n G_I = G_IV - n G_V,
    /// 2 G_III = (2 - n^2)(G_I + G_V) + n (G_II + G_IV) and
    /// n G_I + G_IV = G_II + n G_V, each relative to the largest block.
    pub fn relation_residuals(&self, n: f64) -> [f64; 4] {
        let scale = self.as_array().iter().fold(0.0f64, |a, v| a.max(v.abs()));
        [
            (self.gvi - (self.gii - n * self.gi)).abs() / scale,
            (self.gvi - (self.giv - n * self.gv)).abs() / scale,
            (2.0 * self.giii - (2.0 - n * n) * (self.gi + self.gv) - n * (self.gii + self.giv)).abs() / scale,
            (n * self.gi + self.giv - self.gii - n * self.gv).abs() / scale,
        ]
    }
}

/// Error if kappa lies within [`POLE_BAND`] of a pole.
pub fn check_pole(kappa: f64) -> Result<()> {
    match nearest_pole(kappa) {
        Some(p) if (kappa - p).abs() < POLE_BAND => Err(Error::PoleDispatch { kappa, pole: p }),
        _ => Ok(()),
    }
}

/// The member of [`POLES`] closest to kappa, if within 1e-3.
pub fn nearest_pole(kappa: f64) -> Option<f64> {
    POLES.iter().copied().find(|p| (kappa - p).abs() <= LIMIT_STEP)
}

/// The factor -Gamma(2 - 8/kappa) divided out near kappa = 8/3. Blocks and
/// weights there are reported in this "tilde" normalization.
pub fn tilde_normalization(kappa: f64) -> Result<f64> {
    Ok(-gamma(2.0 - 8.0 / kappa)?)
}

fn check_xi_m(xi: Frac, m: Frac) -> Result<()> {
    if !(m.v > 0.0 && m.c > 0.0) {
        return Err(Error::Domain(format!("m = {} outside (0, 1)", m.v)));
    }
    if !(xi.v >= BOUNDARY_GUARD && xi.c >= BOUNDARY_GUARD) {
        return Err(Error::BoundaryDivergence(format!("xi = {} is within {BOUNDARY_GUARD} of the boundary", xi.v)));
    }
    Ok(())
}

/// The two Frobenius solutions u1, u2 of the underlying ODE system at a
/// given kappa.
#[derive(Debug, Clone, Copy)]
pub struct Solutions {
    kappa: f64,
    u2_norm: f64,
    ctl: SeriesControl,
}

impl Solutions {
    pub fn new(kappa: f64) -> Result<Self> {
        let k = kappa;
        let u2_norm = gamma(2.0 - 8.0 / k)? * gamma(16.0 / k - 1.0)? * rgamma(12.0 / k) * rgamma(1.0 - 4.0 / k);
        Ok(Solutions { kappa, u2_norm, ctl: SeriesControl::default() })
    }

    /// u1 = F1(1 - 4/k; 4/k, 2 - 16/k; 2 - 8/k | s, t)
    pub fn u1(&self, s: Frac, t: Frac) -> Result<f64> {
        let k = self.kappa;
        appell_f1_frac(1.0 - 4.0 / k, 4.0 / k, 2.0 - 16.0 / k, 2.0 - 8.0 / k, s, t, &self.ctl)
    }

    /// u2 = Gamma(2-8/k) Gamma(16/k-1) / (Gamma(12/k) Gamma(1-4/k)) F1(1 - 4/k; 4/k, 4/k; 12/k | s, t)
    pub fn u2(&self, s: Frac, t: Frac) -> Result<f64> {
        let k = self.kappa;
        Ok(self.u2_norm * appell_f1_frac(1.0 - 4.0 / k, 4.0 / k, 4.0 / k, 12.0 / k, s, t, &self.ctl)?)
    }
}

pub fn u1(kappa: f64, s: f64, t: f64) -> Result<f64> {
    Solutions::new(kappa)?.u1(Frac::new(s), Frac::new(t))
}

pub fn u2(kappa: f64, s: f64, t: f64) -> Result<f64> {
    Solutions::new(kappa)?.u2(Frac::new(s), Frac::new(t))
}

pub fn block_vector(xi: f64, m: f64, mp: &ModelParams) -> Result<BlockVector> {
    block_vector_frac(Frac::new(xi), Frac::new(m), mp)
}

/// All six blocks at (xi, m), both given with their complements.
pub fn block_vector_frac(xi: Frac, m: Frac, mp: &ModelParams) -> Result<BlockVector> {
    check_pole(mp.kappa)?;
    blocks_unchecked(xi, m, mp)
}

fn blocks_unchecked(xi: Frac, m: Frac, mp: &ModelParams) -> Result<BlockVector> {
    check_xi_m(xi, m)?;
    let k = mp.kappa;
    let sol = Solutions::new(k)?;
    let (x, xc) = (xi.v, xi.c);
    // 1 - m xi, formed without cancellation
    let d = m.c + m.v * xc;
    let mxi = Frac::with_comp(m.v * x, d);
    let a = 4.0 / k - 0.5;
    let mmc = m.v * m.c;

    let gi = mmc.powf(2.0 / k) * x.powf(8.0 / k - 0.5) / (xc * d).powf(a) * sol.u2(xi, mxi)?;

    let pre23 = m.c.powf(2.0 / k) / (m.v.powf(6.0 / k - 1.0) * (x * xc * d).powf(a));
    let gii = pre23 * sol.u1(m.flip(), mxi.flip())?;
    let giii = pre23 * sol.u1(m, mxi)?;

    let t4 = Frac::with_comp(m.c / d, m.v * xc / d);
    let giv = d.powf(12.0 / k - 1.5) / (mmc.powf(6.0 / k - 1.0) * (x * xc).powf(a)) * sol.u1(m.flip(), t4)?;

    let s5 = Frac::with_comp(m.v * xc / d, m.c / d);
    let t5 = Frac::with_comp(xc / d, x * m.c / d);
    let gv = m.v.powf(2.0 / k) * xc.powf(8.0 / k - 0.5) / (m.c.powf(6.0 / k - 1.0) * x.powf(a) * d.sqrt())
        * sol.u2(s5, t5)?;

    let y6 = x * m.c / d;
    let gvi = if xc + y6 < F2_CUTOFF {
        let norm = gamma(2.0 - 8.0 / k)? * gamma(16.0 / k - 1.0)? * gamma(4.0 / k)?
            * rgamma(1.0 - 4.0 / k)
            * rgamma(8.0 / k).powi(2);
        norm * mmc.powf(2.0 / k)
            * (x * xc / d).powf(8.0 / k - 0.5)
            * appell_f2(16.0 / k - 1.0, 4.0 / k, 4.0 / k, 8.0 / k, 8.0 / k, xc, y6, &sol.ctl)?
    } else {
        gii - mp.n * gi
    };
    Ok(BlockVector { gi, gii, giii, giv, gv, gvi, xi: x, m: m.v, kappa: k })
}

/// G_{1,1}(m) = 2F1(2 - 12/k, 1 - 4/k; 2 - 8/k | m).
pub fn g11(m: Frac, mp: &ModelParams) -> Result<f64> {
    let k = mp.kappa;
    hyp2f1_frac(2.0 - 12.0 / k, 1.0 - 4.0 / k, 2.0 - 8.0 / k, m, &SeriesControl::default())
}

/// G_{1,3}(m) = Gamma(12/k-1) Gamma(2-8/k) / (Gamma(8/k) Gamma(1-4/k)) m^{8/k-1} 2F1(1 - 4/k, 4/k; 8/k | m).
pub fn g13(m: Frac, mp: &ModelParams) -> Result<f64> {
    let k = mp.kappa;
    let norm = gamma(12.0 / k - 1.0)? * gamma(2.0 - 8.0 / k)? * rgamma(8.0 / k) * rgamma(1.0 - 4.0 / k);
    Ok(norm * m.v.powf(8.0 / k - 1.0) * hyp2f1_frac(1.0 - 4.0 / k, 4.0 / k, 8.0 / k, m, &SeriesControl::default())?)
}

/// (G_{1,1}(m), G_{1,3}(m)).
pub fn crossing_blocks(m: f64, mp: &ModelParams) -> Result<(f64, f64)> {
    crossing_blocks_frac(Frac::new(m), mp)
}

pub fn crossing_blocks_frac(m: Frac, mp: &ModelParams) -> Result<(f64, f64)> {
    check_pole(mp.kappa)?;
    crossing_unchecked(m, mp)
}

fn crossing_unchecked(m: Frac, mp: &ModelParams) -> Result<(f64, f64)> {
    if !(m.v > 0.0 && m.c > 0.0) {
        return Err(Error::Domain(format!("m = {} outside (0, 1)", m.v)));
    }
    Ok((g11(m, mp)?, g13(m, mp)?))
}

/// The bracket of the prefactor,
/// (1 - m xi^2)^2 / (xi (1-xi)(1-m xi)) + (same in psi, 1 - m) - 4.
pub(crate) fn prefactor_bracket(p: &BulkPoint, geom: &RectGeometry) -> f64 {
    let term = |u: Frac, k: Frac| {
        let d = k.c + k.v * u.c;
        let num = k.c + k.v * u.c * (1.0 + u.v);
        num * num / (u.v * u.c * d)
    };
    let m = geom.m_frac();
    term(p.xi_frac(), m) + term(p.psi_frac(), m.flip()) - 4.0
}

fn check_interior(p: &BulkPoint) -> Result<()> {
    let g = BOUNDARY_GUARD;
    if !(p.xi >= g && p.xi_c >= g && p.psi >= g && p.psi_c >= g) {
        return Err(Error::BoundaryDivergence(format!("({}, {}) is on or next to the boundary", p.x, p.y)));
    }
    Ok(())
}

/// f = c(m) B^{-h13/2 + h120}, c(m) = 2^{h13} K'^{8 h12 + 2 h120} (m (1-m))^{2 h12}.
pub fn prefactor_f(p: &BulkPoint, geom: &RectGeometry, mp: &ModelParams) -> Result<f64> {
    check_interior(p)?;
    let cm = 2f64.powf(mp.h13)
        * geom.k_1m.powf(8.0 * mp.h12 + 2.0 * mp.h120)
        * (geom.m * geom.m_c).powf(2.0 * mp.h12);
    Ok(cm * prefactor_bracket(p, geom).powf(-0.5 * mp.h13 + mp.h120))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSet {
    /// f G_VI: the point's cluster touches both sides.
    pub pi_a: f64,
    /// f G_I: attached to the right side only.
    pub pi_br: f64,
    /// f G_V: attached to the left side only.
    pub pi_bl: f64,
    pub pi_h: f64,
    pub pi_v: f64,
    pub prefactor: f64,
}

/// Pi_H = K'^{8 h12} G_{1,3}(1 - m) and Pi_V = K'^{8 h12} G_{1,3}(m).
pub fn crossing_weights(geom: &RectGeometry, mp: &ModelParams) -> Result<(f64, f64)> {
    check_pole(mp.kappa)?;
    let m = geom.m_frac();
    let s = geom.k_1m.powf(8.0 * mp.h12);
    Ok((s * g13(m.flip(), mp)?, s * g13(m, mp)?))
}

pub fn weight_set(p: &BulkPoint, geom: &RectGeometry, mp: &ModelParams) -> Result<WeightSet> {
    let f = prefactor_f(p, geom, mp)?;
    let b = block_vector_frac(p.xi_frac(), geom.m_frac(), mp)?;
    let (pi_h, pi_v) = crossing_weights(geom, mp)?;
    Ok(WeightSet { pi_a: f * b.gvi, pi_br: f * b.gi, pi_bl: f * b.gv, pi_h, pi_v, prefactor: f })
}

/// Symmetric Richardson limit at a pole kappa0 of a vector-valued
/// function of kappa. Near 8/3 each evaluation is first divided by
/// [`tilde_normalization`].
pub fn limit_at_pole<const N: usize, F>(kappa0: f64, eval: F) -> Result<[f64; N]>
where
    F: Fn(&ModelParams) -> Result<[f64; N]>,
{
    let tilde = (kappa0 - 8.0 / 3.0).abs() < LIMIT_STEP;
    let at = |k: f64| -> Result<[f64; N]> {
        let mp = crate::geometry::model_params(k)?;
        let mut v = eval(&mp)?;
        if tilde {
            let t = tilde_normalization(k)?;
            v.iter_mut().for_each(|e| *e /= t);
        }
        Ok(v)
    };
    let h = LIMIT_STEP;
    let avg = |h: f64| -> Result<[f64; N]> {
        let (a, b) = (at(kappa0 + h)?, at(kappa0 - h)?);
        Ok(std::array::from_fn(|i| 0.5 * (a[i] + b[i])))
    };
    let (a1, a2) = (avg(h)?, avg(2.0 * h)?);
    Ok(std::array::from_fn(|i| (4.0 * a1[i] - a2[i]) / 3.0))
}

/// Block vector at a pole kappa0 in {4, 8/3, 2}, as the two-sided limit
/// (tilde-normalized at 8/3).
pub fn limit_block_vector(xi: Frac, m: Frac, kappa0: f64) -> Result<BlockVector> {
    let v = limit_at_pole(kappa0, |mp| Ok(blocks_unchecked(xi, m, mp)?.as_array()))?;
    Ok(BlockVector { gi: v[0], gii: v[1], giii: v[2], giv: v[3], gv: v[4], gvi: v[5], xi: xi.v, m: m.v, kappa: kappa0 })
}

/// (G_{1,1}, G_{1,3}) at a pole kappa0, as the two-sided limit.
pub fn limit_crossing_blocks(m: Frac, kappa0: f64) -> Result<(f64, f64)> {
    let v = limit_at_pole(kappa0, |mp| {
        let (a, b) = crossing_unchecked(m, mp)?;
        Ok([a, b])
    })?;
    Ok((v[0], v[1]))
}

/// u1 and u2 at a pole kappa0, as the two-sided limit.
pub fn limit_solutions(s: Frac, t: Frac, kappa0: f64) -> Result<(f64, f64)> {
    let v = limit_at_pole(kappa0, |mp| {
        let sol = Solutions::new(mp.kappa)?;
        Ok([sol.u1(s, t)?, sol.u2(s, t)?])
    })?;
    Ok((v[0], v[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::model_params;

    #[test]
    fn reference_blocks() {
        // 40-digit mpmath at (xi, m) = (0.37, 0.62)
        let table: [(f64, [f64; 6]); 5] = [
            (
                3.0,
                [
                    0.11443445687586920881,
                    3.5134148672377164526,
                    5.800298781640386181,
                    5.6858643247645169722,
                    2.2868839144026697285,
                    3.3989804103618472438,
                ],
            ),
            (
                10.0 / 3.0,
                [
                    0.081317123894351633018,
                    1.7372554944812719318,
                    3.7833383065789708371,
                    3.3919486576653929981,
                    1.1039737396942146323,
                    1.6056816241528247761,
                ],
            ),
            (
                24.0 / 5.0,
                [
                    0.097804891832290146529,
                    0.81270105871867550326,
                    1.6759648066544145527,
                    1.4468571212677498519,
                    0.4639350652532313756,
                    0.64329801683637066414,
                ],
            ),
            (
                16.0 / 3.0,
                [
                    0.1177993520470445972,
                    0.77480270241449964598,
                    1.4196448567800357274,
                    1.2328783077970369976,
                    0.4417077189091697277,
                    0.6082092611108063596,
                ],
            ),
            (
                6.0,
                [
                    0.14992935778906343544,
                    0.76033475202229692379,
                    1.2057666791134223789,
                    1.0558373213243589434,
                    0.44543192709112545506,
                    0.61040539423323348835,
                ],
            ),
        ];
        for (k, want) in table {
            let b = block_vector(0.37, 0.62, &model_params(k).unwrap()).unwrap();
            for (blk, w) in Block::ALL.iter().zip(want) {
                let got = b.get(*blk);
                assert!(((got - w) / w).abs() < 1e-11, "kappa {k} {}: {got} vs {w}", blk.name());
            }
        }
    }

    #[test]
    fn reference_solutions() {
        let cases = [
            (6.0, 0.97, 0.999, 0.84141729532098965684, 0.82607669198795194277),
            (6.0, 0.95, 0.5, 1.9541260037530182633, 0.60361615778928599653),
            (3.0, 0.95, 0.99, 1.0137498937283106327, 1.0332069039687944505),
            (10.0 / 3.0, 0.2, 0.93, 0.69981617599082621753, 0.72834501525762385356),
        ];
        for (k, s, t, w1, w2) in cases {
            assert!(((u1(k, s, t).unwrap() - w1) / w1).abs() < 1e-11, "u1 kappa {k} ({s}, {t})");
            assert!(((u2(k, s, t).unwrap() - w2) / w2).abs() < 1e-11, "u2 kappa {k} ({s}, {t})");
        }
    }

    #[test]
    fn pole_dispatch() {
        let mp = model_params(4.0 + 5e-8).unwrap();
        assert!(matches!(block_vector(0.4, 0.5, &mp), Err(Error::PoleDispatch { .. })));
        assert!(block_vector(0.4, 0.5, &model_params(4.0 + 1e-4).unwrap()).is_ok());
        assert!(matches!(block_vector(1e-8, 0.5, &model_params(6.0).unwrap()), Err(Error::BoundaryDivergence(_))));
    }

    #[test]
    fn f2_route_matches_fallback() {
        for k in [3.0, 16.0 / 3.0, 6.0] {
            let mp = model_params(k).unwrap();
            for (xi, m) in [(0.37, 0.62), (0.6, 0.3), (0.8, 0.8)] {
                let b = block_vector(xi, m, &mp).unwrap();
                assert!((b.gvi - (b.gii - mp.n * b.gi)).abs() < 1e-10 * b.gii.abs(), "kappa {k} ({xi}, {m})");
            }
        }
    }
}
