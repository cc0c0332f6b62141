//! Jacobi elliptic functions by descending Landen (AGM) transformation.

use num_complex::Complex64;

use super::elliptic::ellip_k_frac;
use super::Frac;
use crate::{Error, Result};

const QUOTIENT_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

fn quot(num: f64, den: f64, name: &'static str) -> Result<f64> {
    if den.abs() < QUOTIENT_FLOOR {
        return Err(Error::QuotientPole(name));
    }
    Ok(num / den)
}

impl JacobiTriple {
    pub fn dc(&self) -> Result<f64> {
        quot(self.dn, self.cn, "dc")
    }
    pub fn cd(&self) -> Result<f64> {
        quot(self.cn, self.dn, "cd")
    }
    pub fn ns(&self) -> Result<f64> {
        quot(1.0, self.sn, "ns")
    }
    pub fn nc(&self) -> Result<f64> {
        quot(1.0, self.cn, "nc")
    }
    pub fn nd(&self) -> Result<f64> {
        quot(1.0, self.dn, "nd")
    }
    pub fn ds(&self) -> Result<f64> {
        quot(self.dn, self.sn, "ds")
    }
    pub fn cs(&self) -> Result<f64> {
        quot(self.cn, self.sn, "cs")
    }
    pub fn sc(&self) -> Result<f64> {
        quot(self.sn, self.cn, "sc")
    }
    pub fn sd(&self) -> Result<f64> {
        quot(self.sn, self.dn, "sd")
    }
}

/// sn, cn, dn of (u | m) for m in [0, 1].
pub fn jacobi_elliptic(u: f64, m: f64) -> Result<JacobiTriple> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::Domain(format!("Jacobi functions need m in [0, 1], got {m}")));
    }
    Ok(jacobi_frac(u, Frac::new(m)))
}

/// sn, cn, dn with the parameter given together with its complement.
pub fn jacobi_frac(u: f64, m: Frac) -> JacobiTriple {
    if m.v == 0.0 {
        let (s, c) = u.sin_cos();
        return JacobiTriple { sn: s, cn: c, dn: 1.0 };
    }
    if m.c == 0.0 {
        let sech = 1.0 / u.cosh();
        return JacobiTriple { sn: u.tanh(), cn: sech, dn: sech };
    }
    // reduce to [-2K, 2K]; sn and cn flip sign under u -> u - 2K, dn does not
    let k = ellip_k_frac(m);
    let mut u = u;
    let mut flip = false;
    if u.abs() > 2.0 * k {
        let n = (u / (2.0 * k)).round();
        u -= n * 2.0 * k;
        flip = (n as i64).rem_euclid(2) == 1;
    }
    let mut a = [0.0f64; 40];
    let mut c = [0.0f64; 40];
    a[0] = 1.0;
    let mut b = m.c.sqrt();
    c[0] = m.v.sqrt();
    let mut n = 0;
    while n < 39 && c[n].abs() > 1e-17 * a[n] {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
    }
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    for i in (1..=n).rev() {
        phi = 0.5 * (phi + (c[i] / a[i] * phi.sin()).asin());
    }
    let (s, co) = phi.sin_cos();
    let dn = (m.c + m.v * co * co).sqrt();
    let (sn, cn) = if flip { (-s, -co) } else { (s, co) };
    JacobiTriple { sn, cn, dn }
}

/// sn, cn, dn at complex argument via the addition formulas, for real m in (0, 1).
pub fn jacobi_complex(z: Complex64, m: Frac) -> (Complex64, Complex64, Complex64) {
    let r = jacobi_frac(z.re, m);
    let i = jacobi_frac(z.im, m.flip());
    let (s, c, d) = (r.sn, r.cn, r.dn);
    let (s1, c1, d1) = (i.sn, i.cn, i.dn);
    let den = c1 * c1 + m.v * s * s * s1 * s1;
    let sn = Complex64::new(s * d1, c * d * s1 * c1) / den;
    let cn = Complex64::new(c * c1, -s * d * s1 * d1) / den;
    let dn = Complex64::new(d * c1 * d1, -m.v * s * c * s1) / den;
    (sn, cn, dn)
}

#[cfg(test)]
mod tests {
    use super::super::ellip_k;
    use super::*;

    #[test]
    fn circular_and_hyperbolic_limits() {
        let j = jacobi_elliptic(0.8, 0.0).unwrap();
        assert!((j.sn - 0.8f64.sin()).abs() < 1e-16 && j.dn == 1.0);
        let j = jacobi_elliptic(0.8, 1.0).unwrap();
        assert!((j.sn - 0.8f64.tanh()).abs() < 1e-16);
    }

    #[test]
    fn quarter_period() {
        for m in [0.1, 0.5, 0.9, 0.999] {
            let k = ellip_k(m).unwrap();
            let j = jacobi_elliptic(k, m).unwrap();
            assert!((j.sn - 1.0).abs() < 1e-14 && j.cn.abs() < 1e-7, "m={m}: {:?}", j);
            assert!((j.dn - (1.0 - m).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn pythagorean_identities() {
        for iu in 0..50 {
            let u = -6.0 + 0.25 * iu as f64;
            for im in 0..9 {
                let m = 0.05 + 0.11 * im as f64;
                let j = jacobi_elliptic(u, m).unwrap();
                assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() < 1e-12);
                assert!((j.dn * j.dn + m * j.sn * j.sn - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn periodicity_and_reference() {
        // sn(0.7 | 0.3) from 30-digit mpmath
        let j = jacobi_elliptic(0.7, 0.3).unwrap();
        assert!((j.sn - 0.6323047763108645).abs() < 1e-14);
        let k = ellip_k(0.3).unwrap();
        let j4 = jacobi_elliptic(0.7 + 4.0 * k, 0.3).unwrap();
        assert!((j4.sn - j.sn).abs() < 1e-13 && (j4.cn - j.cn).abs() < 1e-13);
        let j2 = jacobi_elliptic(0.7 + 2.0 * k, 0.3).unwrap();
        assert!((j2.sn + j.sn).abs() < 1e-13 && (j2.cn + j.cn).abs() < 1e-13);
    }

    #[test]
    fn complex_matches_real_axis() {
        let m = Frac::new(0.4);
        let (sn, cn, dn) = jacobi_complex(Complex64::new(0.9, 0.0), m);
        let j = jacobi_frac(0.9, m);
        assert!((sn.re - j.sn).abs() < 1e-15 && sn.im.abs() < 1e-15);
        assert!((cn.re - j.cn).abs() < 1e-15 && (dn.re - j.dn).abs() < 1e-15);
        // sn(iy | m) = i sc(y | 1-m)
        let (sn, _, _) = jacobi_complex(Complex64::new(0.0, 0.6), m);
        let jc = jacobi_frac(0.6, m.flip());
        assert!((sn.im - jc.sn / jc.cn).abs() < 1e-14 && sn.re.abs() < 1e-15);
    }

    #[test]
    fn quotient_pole() {
        let j = jacobi_elliptic(0.0, 0.5).unwrap();
        assert!(matches!(j.ns(), Err(Error::QuotientPole("ns"))));
        assert!(j.dc().is_ok());
    }
}
