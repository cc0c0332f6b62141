//! Appell F1 and F2 on the real unit square.

use super::hyp2f1::hyp2f1_frac;
use super::{nonpos_int, Frac, SeriesControl, Sum};
use crate::{Error, Result};

const BOUNDARY: f64 = 1e-12;
const CROSSOVER: f64 = 0.9;

fn check_arg(z: Frac, name: &str) -> Result<()> {
    if !(z.v > -1.0 + BOUNDARY) || !(z.c > BOUNDARY) {
        return Err(Error::Domain(format!("Appell F1 needs |{name}| < 1, got {}", z.v)));
    }
    Ok(())
}

fn check_c(c: f64, what: &str) -> Result<()> {
    if nonpos_int(c).is_some() {
        return Err(Error::ParameterPole(format!("{what} with c = {c}")));
    }
    Ok(())
}

/// Appell F1(a; b1, b2; c | x, y) for |x|, |y| < 1.
pub fn appell_f1(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64, ctl: &SeriesControl) -> Result<f64> {
    appell_f1_frac(a, b1, b2, c, Frac::new(x), Frac::new(y), ctl)
}

/// As [`appell_f1`], with both arguments carrying their complements.
///
/// The double series is summed when both arguments are at most 0.9 in
/// magnitude; otherwise the single sum over 2F1's in the larger argument
/// is used.
pub fn appell_f1_frac(
    a: f64,
    b1: f64,
    b2: f64,
    c: f64,
    x: Frac,
    y: Frac,
    ctl: &SeriesControl,
) -> Result<f64> {
    check_arg(x, "x")?;
    check_arg(y, "y")?;
    if x.v == 0.0 {
        return hyp2f1_frac(a, b2, c, y, ctl);
    }
    if y.v == 0.0 {
        return hyp2f1_frac(a, b1, c, x, ctl);
    }
    if x.v == y.v {
        return hyp2f1_frac(a, b1 + b2, c, x, ctl);
    }
    check_c(c, "F1")?;
    if x.v.abs().max(y.v.abs()) <= CROSSOVER {
        series(a, b1, b2, c, x.v, y.v, ctl)
    } else {
        contraction(a, b1, b2, c, x, y, ctl)
    }
}

/// F1 by direct double summation.
pub fn appell_f1_series(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64, ctl: &SeriesControl) -> Result<f64> {
    check_arg(Frac::new(x), "x")?;
    check_arg(Frac::new(y), "y")?;
    check_c(c, "F1")?;
    series(a, b1, b2, c, x, y, ctl)
}

/// F1 by the single sum over 2F1's, the outer sum running over the
/// argument of smaller magnitude.
pub fn appell_f1_contraction(
    a: f64,
    b1: f64,
    b2: f64,
    c: f64,
    x: f64,
    y: f64,
    ctl: &SeriesControl,
) -> Result<f64> {
    let (x, y) = (Frac::new(x), Frac::new(y));
    check_arg(x, "x")?;
    check_arg(y, "y")?;
    check_c(c, "F1")?;
    contraction(a, b1, b2, c, x, y, ctl)
}

fn series(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64, ctl: &SeriesControl) -> Result<f64> {
    let n0 = (1.0 - a.min(b1).min(b2).min(c)).max(0.0);
    let mut total = Sum::default();
    let mut row_head = 1.0;
    let mut prev_row = f64::NAN;
    let mut terms = 0usize;
    for i in 0.. {
        let fi = i as f64;
        let mut row = Sum::default();
        let mut t = row_head;
        row.add(t);
        if t != 0.0 {
            for j in 0.. {
                let fj = j as f64;
                let r = (a + fi + fj) * (b2 + fj) / ((c + fi + fj) * (fj + 1.0)) * y;
                t *= r;
                terms += 1;
                if terms > ctl.max_terms {
                    return Err(Error::Convergence { what: "F1 double series", terms: ctl.max_terms });
                }
                if t == 0.0 {
                    break;
                }
                row.add(t);
                let ra = r.abs().max(y.abs());
                if fj >= n0 && ra < 1.0 && t.abs() * ra / (1.0 - ra) <= 0.01 * ctl.rel_tol * row.value().abs() {
                    break;
                }
            }
        }
        let rv = row.value();
        total.add(rv);
        if row_head == 0.0 {
            break;
        }
        let ratio = (rv / prev_row).abs().max(x.abs());
        if fi >= n0 && i > 1 && ratio < 1.0 && rv.abs() * ratio / (1.0 - ratio) <= 0.1 * ctl.rel_tol * total.value().abs() {
            break;
        }
        prev_row = rv;
        row_head *= (a + fi) * (b1 + fi) / ((c + fi) * (fi + 1.0)) * x;
    }
    Ok(total.value())
}

fn contraction(a: f64, b1: f64, b2: f64, c: f64, x: Frac, y: Frac, ctl: &SeriesControl) -> Result<f64> {
    // F1 = sum_i (a)_i (b1)_i / ((c)_i i!) x^i 2F1(a+i, b2; c+i; y)
    let (b1, b2, x, y) = if x.v.abs() <= y.v.abs() { (b1, b2, x, y) } else { (b2, b1, y, x) };
    let n0 = (1.0 - a.min(b1).min(c)).max(0.0);
    let mut total = Sum::default();
    let mut coef = 1.0;
    let mut prev = f64::NAN;
    for i in 0..ctl.max_terms {
        let fi = i as f64;
        if coef == 0.0 {
            return Ok(total.value());
        }
        let term = coef * hyp2f1_frac(a + fi, b2, c + fi, y, ctl)?;
        total.add(term);
        // the term ratio tends to |x| and may approach it from below
        let ratio = (term / prev).abs().max(x.v.abs());
        if fi >= n0 && i > 1 && ratio < 1.0 && term.abs() * ratio / (1.0 - ratio) <= 0.1 * ctl.rel_tol * total.value().abs() {
            return Ok(total.value());
        }
        prev = term;
        coef *= (a + fi) * (b1 + fi) / ((c + fi) * (fi + 1.0)) * x.v;
    }
    Err(Error::Convergence { what: "F1 single sum", terms: ctl.max_terms })
}

/// Appell F2(a; b1, b2; c1, c2 | x, y), summed directly inside |x| + |y| < 1.
pub fn appell_f2(
    a: f64,
    b1: f64,
    b2: f64,
    c1: f64,
    c2: f64,
    x: f64,
    y: f64,
    ctl: &SeriesControl,
) -> Result<f64> {
    if !(x.abs() + y.abs() < 1.0) {
        return Err(Error::Domain(format!("F2 series needs |x| + |y| < 1, got {x}, {y}")));
    }
    check_c(c1, "F2")?;
    check_c(c2, "F2")?;
    let n0 = (1.0 - a.min(b1).min(b2).min(c1).min(c2)).max(0.0);
    let mut total = Sum::default();
    let mut row_head = 1.0;
    let mut prev_row = f64::NAN;
    let mut terms = 0usize;
    for i in 0.. {
        let fi = i as f64;
        let mut row = Sum::default();
        let mut t = row_head;
        row.add(t);
        if t != 0.0 {
            for j in 0.. {
                let fj = j as f64;
                let r = (a + fi + fj) * (b2 + fj) / ((c2 + fj) * (fj + 1.0)) * y;
                t *= r;
                terms += 1;
                if terms > ctl.max_terms {
                    return Err(Error::Convergence { what: "F2 double series", terms: ctl.max_terms });
                }
                if t == 0.0 {
                    break;
                }
                row.add(t);
                let ra = r.abs().max(y.abs());
                if fj >= n0 && ra < 1.0 && t.abs() * ra / (1.0 - ra) <= 0.01 * ctl.rel_tol * row.value().abs() {
                    break;
                }
            }
        }
        let rv = row.value();
        total.add(rv);
        if row_head == 0.0 {
            break;
        }
        // rows grow like (x / (1 - y))^i
        let ratio = (rv / prev_row).abs().max(x.abs() / (1.0 - y.abs()));
        if fi >= n0 && i > 1 && ratio < 1.0 && rv.abs() * ratio / (1.0 - ratio) <= 0.1 * ctl.rel_tol * total.value().abs() {
            break;
        }
        prev_row = rv;
        row_head *= (a + fi) * (b1 + fi) / ((c1 + fi) * (fi + 1.0)) * x;
    }
    Ok(total.value())
}

#[cfg(test)]
mod tests {
    use super::super::hyp2f1;
    use super::*;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn reductions() {
        let c = ctl();
        assert_eq!(appell_f1(0.3, 0.4, 0.5, 1.7, 0.0, 0.0, &c).unwrap(), 1.0);
        let z = 0.63;
        let f = hyp2f1(0.3, 0.4, 1.7, z, &c).unwrap();
        assert!(rel(appell_f1_series(0.3, 0.4, 0.5, 1.7, z, 0.0, &c).unwrap(), f) < 1e-13);
        let g = hyp2f1(0.3, 0.9, 1.7, z, &c).unwrap();
        assert!(rel(appell_f1_series(0.3, 0.4, 0.5, 1.7, z, z, &c).unwrap(), g) < 1e-12);
        assert_eq!(appell_f2(0.3, 0.4, 0.5, 1.7, 1.2, 0.0, 0.0, &c).unwrap(), 1.0);
        assert!(rel(appell_f2(0.3, 0.4, 0.5, 1.7, 1.2, z, 0.0, &c).unwrap(), f) < 1e-13);
    }

    #[test]
    fn reference_values() {
        let c = ctl();
        // the F1 appearing in the percolation crossing-cluster density
        let v = appell_f1(1.0 / 3.0, 2.0 / 3.0, -2.0 / 3.0, 2.0 / 3.0, 0.3, 0.15, &c).unwrap();
        assert!(rel(v, 1.0646194485543592818) < 1e-12);
        let v = appell_f2(1.3, 0.7, 0.4, 1.5, 2.2, 0.3, 0.45, &c).unwrap();
        assert!(rel(v, 1.4662922323801798601) < 1e-12);
    }

    #[test]
    fn brute_force_double_sum() {
        // independent naive double loop with a fixed 400x400 cap
        let (a, b1, b2, cc, x, y) = (1.0 / 3.0, 2.0 / 3.0, -2.0 / 3.0, 2.0 / 3.0, 0.3, 0.15);
        let mut total = 0.0;
        let mut pi = 1.0;
        for i in 0..400 {
            let mut t = pi;
            for j in 0..400 {
                total += t;
                let (fi, fj) = (i as f64, j as f64);
                t *= (a + fi + fj) * (b2 + fj) / ((cc + fi + fj) * (fj + 1.0)) * y;
            }
            let fi = i as f64;
            pi *= (a + fi) * (b1 + fi) / ((cc + fi) * (fi + 1.0)) * x;
        }
        let v = appell_f1(a, b1, b2, cc, x, y, &ctl()).unwrap();
        assert!(rel(v, total) < 1e-10);
    }

    #[test]
    fn routes_agree() {
        let c = ctl();
        let pts = [0.1, 0.35, 0.6, 0.8];
        for &x in &pts {
            for &y in &pts {
                for &(a, b1, b2, cc) in &[(1.0 / 3.0, 2.0 / 3.0, 0.5, 1.5), (-0.2, 0.8, -0.7, 1.6), (0.25, 0.75, 0.75, 2.25)] {
                    let s = appell_f1_series(a, b1, b2, cc, x, y, &c).unwrap();
                    let k = appell_f1_contraction(a, b1, b2, cc, x, y, &c).unwrap();
                    assert!(rel(s, k) < 1e-10, "({a},{b1},{b2},{cc}) at ({x},{y}): {s} vs {k}");
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        let c = ctl();
        assert!(matches!(appell_f1(0.3, 0.4, 0.5, 1.7, 1.0, 0.2, &c), Err(Error::Domain(_))));
        assert!(matches!(appell_f1(0.3, 0.4, 0.5, -1.0, 0.1, 0.2, &c), Err(Error::ParameterPole(_))));
        assert!(matches!(appell_f2(0.3, 0.4, 0.5, 1.7, 1.2, 0.6, 0.4, &c), Err(Error::Domain(_))));
    }
}
