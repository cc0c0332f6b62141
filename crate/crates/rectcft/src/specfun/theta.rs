//! Jacobi theta functions at zero argument, as series in the nome q.

use crate::{Error, Result};

fn check_q(q: f64) -> Result<()> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::Domain(format!("nome q = {q} outside [0, 1)")));
    }
    Ok(())
}

/// theta_2(q) = 2 q^{1/4} sum_{n>=0} q^{n(n+1)}.
pub fn theta2(q: f64) -> Result<f64> {
    check_q(q)?;
    if q == 0.0 {
        return Ok(0.0);
    }
    let mut s = 0.0;
    for n in 0.. {
        let t = q.powi(n * (n + 1));
        s += t;
        if t < 1e-17 * s {
            break;
        }
    }
    Ok(2.0 * q.powf(0.25) * s)
}

/// theta_3(q) = 1 + 2 sum_{n>=1} q^{n^2}.
pub fn theta3(q: f64) -> Result<f64> {
    check_q(q)?;
    let mut s = 0.0;
    for n in 1.. {
        let t = q.powi(n * n);
        if t < 1e-17 {
            break;
        }
        s += t;
    }
    Ok(1.0 + 2.0 * s)
}

/// theta_4(q) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2}.
pub fn theta4(q: f64) -> Result<f64> {
    check_q(q)?;
    let mut s = 0.0;
    for n in 1.. {
        let t = q.powi(n * n);
        if t < 1e-17 {
            break;
        }
        s += if n % 2 == 1 { -t } else { t };
    }
    Ok(1.0 + 2.0 * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn empty_sums() {
        assert_eq!(theta3(0.0).unwrap(), 1.0);
        assert_eq!(theta4(0.0).unwrap(), 1.0);
        assert!(theta3(1.0).is_err());
    }

    #[test]
    fn square_is_self_dual() {
        let q = (-PI).exp();
        let r = (theta4(q).unwrap() / theta3(q).unwrap()).powi(4);
        assert!((r - 0.5).abs() < 1e-15);
    }

    #[test]
    fn jacobi_identity() {
        // theta3^4 = theta2^4 + theta4^4
        for q in [0.01, 0.2, 0.5, 0.8] {
            let (t2, t3, t4) = (theta2(q).unwrap(), theta3(q).unwrap(), theta4(q).unwrap());
            assert!((t3.powi(4) - t2.powi(4) - t4.powi(4)).abs() < 1e-12 * t3.powi(4));
            assert!(t4 / t3 < 1.0);
        }
    }
}
