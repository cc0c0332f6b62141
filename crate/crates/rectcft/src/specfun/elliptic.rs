//! Complete and incomplete elliptic integrals in the parameter convention.

use std::f64::consts::FRAC_PI_2;

use super::Frac;
use crate::{Error, Result};

/// Arithmetic-geometric mean of two non-negative numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    0.5 * (a + b)
}

fn check_m(m: f64, allow_one: bool) -> Result<()> {
    let ok = m >= 0.0 && (m < 1.0 || (allow_one && m == 1.0));
    if !ok {
        return Err(Error::Domain(format!("elliptic parameter m = {m} outside [0, 1)")));
    }
    Ok(())
}

/// Complete elliptic integral of the first kind K(m), m in [0, 1).
pub fn ellip_k(m: f64) -> Result<f64> {
    check_m(m, false)?;
    Ok(ellip_k_frac(Frac::new(m)))
}

/// K(m) from the parameter and its complement; `m.c` must be positive.
pub fn ellip_k_frac(m: Frac) -> f64 {
    FRAC_PI_2 / agm(1.0, m.c.sqrt())
}

/// Complete elliptic integral of the second kind E(m), m in [0, 1].
pub fn ellip_e(m: f64) -> Result<f64> {
    check_m(m, true)?;
    Ok(ellip_e_frac(Frac::new(m)))
}

/// E(m) from the parameter and its complement.
pub fn ellip_e_frac(m: Frac) -> f64 {
    if m.c == 0.0 {
        return 1.0;
    }
    let mut a = 1.0;
    let mut g = m.c.sqrt();
    let mut sum = 0.5 * m.v;
    let mut pow2 = 0.5;
    for _ in 0..64 {
        let cn = 0.5 * (a - g);
        pow2 *= 2.0;
        sum += pow2 * cn * cn;
        let an = 0.5 * (a + g);
        g = (a * g).sqrt();
        a = an;
        // the next c is of order cn^2, already below rounding
        if cn.abs() <= 1e-9 * a {
            break;
        }
    }
    FRAC_PI_2 / a * (1.0 - sum)
}

/// Carlson's symmetric integral R_F(x, y, z).
pub fn carlson_rf(x: f64, y: f64, z: f64) -> Result<f64> {
    if x < 0.0 || y < 0.0 || z < 0.0 || (x == 0.0 && y == 0.0) || (x == 0.0 && z == 0.0) || (y == 0.0 && z == 0.0) {
        return Err(Error::Domain(format!("R_F({x}, {y}, {z})")));
    }
    let (mut x, mut y, mut z) = (x, y, z);
    for _ in 0..100 {
        let mu = (x + y + z) / 3.0;
        let dx = 1.0 - x / mu;
        let dy = 1.0 - y / mu;
        let dz = 1.0 - z / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < 1e-4 {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return Ok((1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0 - 5.0 * e2 * e2 * e2 / 208.0
                + 3.0 * e3 * e3 / 104.0
                + e2 * e2 * e3 / 16.0)
                / mu.sqrt());
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
    }
    Err(Error::Convergence { what: "Carlson R_F", terms: 100 })
}

/// Incomplete elliptic integral of the first kind F(phi | m), phi in [0, pi/2].
pub fn ellip_f_incomplete(phi: f64, m: f64) -> Result<f64> {
    check_m(m, false)?;
    if !(0.0..=FRAC_PI_2 + 1e-15).contains(&phi) {
        return Err(Error::Domain(format!("F(phi | m) needs phi in [0, pi/2], got {phi}")));
    }
    if phi == 0.0 {
        return Ok(0.0);
    }
    let (s, c) = phi.sin_cos();
    let c = c.max(0.0);
    carlson_rf(c * c, 1.0 - m * s * s, 1.0).map(|r| s * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn reference_values() {
        let cases = [
            (0.5, 1.8540746773013719184, 1.3506438810476755025),
            (0.9, 2.5780921133481731882, 1.1047747327040733261),
            (0.999, 4.8411325605502970303, 1.0021707908344451659),
            (0.1, 1.6124413487202193982, 1.5307576368977632025),
        ];
        for (m, k, e) in cases {
            assert!(rel(ellip_k(m).unwrap(), k) < 1e-14, "K({m})");
            assert!(rel(ellip_e(m).unwrap(), e) < 1e-14, "E({m})");
        }
        assert!(rel(ellip_k(0.0).unwrap(), PI / 2.0) < 1e-16);
        assert!(rel(ellip_e(0.0).unwrap(), PI / 2.0) < 1e-16);
        assert_eq!(ellip_e(1.0).unwrap(), 1.0);
        assert!(ellip_k(1.0).is_err());
    }

    #[test]
    fn k_half_by_quadrature() {
        // composite Simpson on K(1/2) = int_0^{pi/2} (1 - sin^2 t / 2)^{-1/2} dt
        let n = 2000;
        let h = PI / 2.0 / n as f64;
        let f = |t: f64| 1.0 / (1.0 - 0.5 * t.sin().powi(2)).sqrt();
        let mut s = f(0.0) + f(PI / 2.0);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        assert!(rel(ellip_k(0.5).unwrap(), s * h / 3.0) < 1e-13);
    }

    #[test]
    fn incomplete_limits() {
        for m in [0.0, 0.3, 0.8, 0.99] {
            assert_eq!(ellip_f_incomplete(0.0, m).unwrap(), 0.0);
            assert!(rel(ellip_f_incomplete(PI / 2.0, m).unwrap(), ellip_k(m).unwrap()) < 1e-13);
        }
        // F(phi | 0) = phi
        assert!(rel(ellip_f_incomplete(0.7, 0.0).unwrap(), 0.7) < 1e-15);
    }

    #[test]
    fn legendre_relation() {
        for m in [0.05, 0.2, 0.5, 0.7, 0.95] {
            let (k, kp) = (ellip_k(m).unwrap(), ellip_k(1.0 - m).unwrap());
            let (e, ep) = (ellip_e(m).unwrap(), ellip_e(1.0 - m).unwrap());
            assert!((e * kp + ep * k - k * kp - PI / 2.0).abs() < 1e-12);
        }
    }
}
