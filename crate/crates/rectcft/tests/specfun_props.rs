use std::f64::consts::PI;

use proptest::prelude::*;
use rectcft::geometry::{aspect_from_m, m_from_aspect};
use rectcft::specfun::*;

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

#[test]
fn f1_contraction_matches_double_series() {
    let grid = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8];
    let params = [(0.4, 0.3, 0.5, 1.7), (1.0 / 3.0, 2.0 / 3.0, -2.0 / 3.0, 2.0 / 3.0), (-0.25, 1.5, 0.75, 2.25)];
    for (a, b1, b2, c) in params {
        for &x in &grid {
            for &y in &grid {
                let s = appell_f1_series(a, b1, b2, c, x, y, &ctl()).unwrap();
                let t = appell_f1_contraction(a, b1, b2, c, x, y, &ctl()).unwrap();
                assert!((s - t).abs() <= 1e-10 * s.abs().max(1.0), "({a},{b1},{b2},{c}) at ({x},{y}): {s} vs {t}");
            }
        }
    }
}

#[test]
fn f2_reduces_to_2f1_on_axis() {
    let a = appell_f2(0.7, 0.3, -0.4, 1.6, 0.9, 0.45, 0.0, &ctl()).unwrap();
    let b = hyp2f1(0.7, 0.3, 1.6, 0.45, &ctl()).unwrap();
    assert!((a - b).abs() < 1e-13);
}

#[test]
fn legendre_relation() {
    for i in 1..100 {
        let m = i as f64 / 100.0;
        let l = ellip_e(m).unwrap() * ellip_k(1.0 - m).unwrap() + ellip_e(1.0 - m).unwrap() * ellip_k(m).unwrap()
            - ellip_k(m).unwrap() * ellip_k(1.0 - m).unwrap();
        assert!((l - PI / 2.0).abs() < 1e-12, "m = {m}");
    }
}

#[test]
fn jacobi_identities_on_grid() {
    for j in 1..=9 {
        let m = j as f64 / 10.0;
        let k = ellip_k(m).unwrap();
        for i in 0..50 {
            let u = -3.0 + 6.0 * i as f64 / 49.0;
            let a = jacobi_elliptic(u, m).unwrap();
            assert!((a.sn * a.sn + a.cn * a.cn - 1.0).abs() < 1e-13);
            assert!((a.dn * a.dn + m * a.sn * a.sn - 1.0).abs() < 1e-13);
            let b = jacobi_elliptic(u + 4.0 * k, m).unwrap();
            assert!((a.sn - b.sn).abs() < 1e-11 && (a.cn - b.cn).abs() < 1e-11, "u={u}, m={m}");
            let c = jacobi_elliptic(u + 2.0 * k, m).unwrap();
            assert!((a.sn + c.sn).abs() < 1e-11 && (a.dn - c.dn).abs() < 1e-11, "u={u}, m={m}");
            if (0.0..k).contains(&u) {
                let f = ellip_f_incomplete(a.sn.asin(), m).unwrap();
                assert!((f - u).abs() < 1e-11, "u={u}, m={m}");
            }
        }
        assert!((jacobi_elliptic(k, m).unwrap().sn - 1.0).abs() < 1e-14);
    }
}

#[test]
fn theta_self_duality() {
    let q = (-PI).exp();
    let (t2, t3, t4) = (theta2(q).unwrap(), theta3(q).unwrap(), theta4(q).unwrap());
    assert!((t4.powi(4) / t3.powi(4) - 0.5).abs() < 1e-14);
    assert!((t2.powi(4) + t4.powi(4) - t3.powi(4)).abs() < 1e-14);
    assert_eq!(theta3(0.0).unwrap(), 1.0);
    assert_eq!(theta4(0.0).unwrap(), 1.0);
    assert!(theta3(1.0).is_err());
}

#[test]
fn aspect_roundtrips() {
    for r in [0.2, 0.5, 1.0, 2.0, 3.0, 5.0] {
        let m = m_from_aspect(r).unwrap();
        assert!((aspect_from_m(m).unwrap() - r).abs() <= 1e-10, "R = {r}");
        assert!((m_from_aspect(1.0 / r).unwrap() - (1.0 - m)).abs() <= 1e-10);
    }
}

#[test]
fn evaluations_are_pure() {
    let a = appell_f1(0.4, 0.3, 0.5, 1.7, 0.93, 0.6, &ctl()).unwrap();
    let b = appell_f1(0.4, 0.3, 0.5, 1.7, 0.93, 0.6, &ctl()).unwrap();
    assert_eq!(a.to_bits(), b.to_bits());
}

#[test]
fn exhausted_series_is_an_error() {
    let tight = SeriesControl::new(1e-13, 3).unwrap();
    assert!(hyp2f1(0.5, 0.5, 1.5, 0.5, &tight).is_err());
    assert!(SeriesControl::new(0.0, 10).is_err());
    assert!(SeriesControl::new(1e-13, 0).is_err());
}

proptest! {
    #[test]
    fn f1_on_the_diagonal_is_2f1(a in -1.0f64..1.5, b1 in -1.0f64..1.5, b2 in -1.0f64..1.5,
                                 c in 0.3f64..3.0, z in -0.9f64..0.9) {
        let f1 = appell_f1_series(a, b1, b2, c, z, z, &ctl()).unwrap();
        let f = hyp2f1(a, b1 + b2, c, z, &ctl()).unwrap();
        prop_assert!((f1 - f).abs() <= 1e-11 * f.abs().max(1.0), "{} vs {}", f1, f);
    }

    #[test]
    fn f1_single_sum_on_the_diagonal_is_2f1(a in -1.0f64..1.5, b1 in -1.0f64..1.5, b2 in -1.0f64..1.5,
                                            c in 0.3f64..3.0, z in 0.5f64..0.95) {
        let f1 = appell_f1_contraction(a, b1, b2, c, z, z, &ctl()).unwrap();
        let f = hyp2f1(a, b1 + b2, c, z, &ctl()).unwrap();
        prop_assert!((f1 - f).abs() <= 1e-11 * f.abs().max(1.0), "{} vs {}", f1, f);
    }

    #[test]
    fn f1_with_one_vanishing_argument(a in -1.0f64..1.5, b1 in -1.0f64..1.5, b2 in -1.0f64..1.5,
                                      c in 0.3f64..3.0, z in -0.9f64..0.95) {
        let f1 = appell_f1(a, b1, b2, c, z, 0.0, &ctl()).unwrap();
        prop_assert_eq!(f1, hyp2f1(a, b1, c, z, &ctl()).unwrap());
    }

    #[test]
    fn euler_transformation(a in -1.0f64..1.5, b in -1.0f64..1.5, c in 0.3f64..3.0, z in 0.0f64..0.9) {
        // 2F1(a, b; c; z) = (1 - z)^{c-a-b} 2F1(c-a, c-b; c; z)
        let l = hyp2f1(a, b, c, z, &ctl()).unwrap();
        let r = (1.0 - z).powf(c - a - b) * hyp2f1(c - a, c - b, c, z, &ctl()).unwrap();
        prop_assert!((l - r).abs() <= 1e-11 * l.abs().max(1.0));
    }

    #[test]
    fn gamma_recurrence(x in 0.05f64..20.0) {
        let g = gamma(x).unwrap();
        prop_assert!((gamma(x + 1.0).unwrap() - x * g).abs() <= 1e-13 * (x * g).abs());
    }

    #[test]
    fn reflection(x in 0.01f64..0.99) {
        let p = gamma(x).unwrap() * gamma(1.0 - x).unwrap() * sinpi(x);
        prop_assert!((p - PI).abs() < 1e-12);
    }

    #[test]
    fn jacobi_triple_identities(u in -20.0f64..20.0, m in 0.0f64..1.0) {
        let j = jacobi_elliptic(u, m).unwrap();
        prop_assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() < 1e-12);
        prop_assert!((j.dn * j.dn + m * j.sn * j.sn - 1.0).abs() < 1e-12);
    }

    #[test]
    fn legendre_anywhere(m in 1e-6f64..(1.0 - 1e-6)) {
        let l = ellip_e(m).unwrap() * ellip_k(1.0 - m).unwrap() + ellip_e(1.0 - m).unwrap() * ellip_k(m).unwrap()
            - ellip_k(m).unwrap() * ellip_k(1.0 - m).unwrap();
        prop_assert!((l - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn theta_quotient_is_below_one(q in 1e-6f64..0.9) {
        prop_assert!(theta4(q).unwrap() / theta3(q).unwrap() < 1.0);
    }
}
