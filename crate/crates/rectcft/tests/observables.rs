use proptest::prelude::*;
use rectcft::geometry::*;
use rectcft::observables::*;

fn geom(r: f64) -> RectGeometry {
    RectGeometry::from_aspect(r).unwrap()
}

fn mp(k: f64) -> ModelParams {
    model_params(k).unwrap()
}

#[test]
fn rho_reference_values() {
    // 25-digit mpmath evaluations of the block ratio
    let cases = [
        (6.0, 0.5, 1.0, 1.0250974308093697),
        (16.0 / 3.0, 0.7, 2.0, 1.0760290660585879),
        (24.0 / 5.0, 0.3, 1.0, 1.0825651303947643),
        (10.0 / 3.0, 1.2, 3.0, 2.0732197305170578),
        (3.0, 0.6, 1.2, 1.6326000075823211),
    ];
    for (k, x, r, want) in cases {
        let got = rho(x, &geom(r), &mp(k)).unwrap();
        assert!((got - want).abs() < 1e-10 * want, "kappa={k}: {got} vs {want}");
    }
}

#[test]
fn crossing_reference_values() {
    // (kappa, R, P_H, mutual-wiring P_H)
    let cases = [
        (16.0 / 3.0, 2.0, 0.086427233725889792, 0.15910358474628546),
        (24.0 / 5.0, 1.5, 0.12958947165946714, 0.30874755096657556),
        (3.0, 1.5, 0.050924530241329961, 0.050924530241329961),
        (10.0 / 3.0, 2.0, 0.0053990239910327005, 0.014012418567890707),
    ];
    for (k, r, ind, mutual) in cases {
        let a = crossing_probability(&geom(r), &mp(k), Wiring::Independent).unwrap();
        let b = crossing_probability(&geom(r), &mp(k), Wiring::Mutual).unwrap();
        assert!((a - ind).abs() < 1e-11 * ind && (b - mutual).abs() < 1e-11 * mutual, "kappa={k}: {a}, {b}");
    }
}

#[test]
fn percolation_crossing_is_cardy() {
    let p = crossing_probability(&geom(1.0), &mp(6.0), Wiring::Independent).unwrap();
    assert!((p - 0.5).abs() < 1e-13);
    for r in [0.5, 2.0, 3.0] {
        let g = geom(r);
        let (h, _) = rectcft::blocks::crossing_weights(&g, &mp(6.0)).unwrap();
        let p = crossing_probability(&g, &mp(6.0), Wiring::Mutual).unwrap();
        assert!((p - h).abs() < 1e-13);
    }
    assert!(crossing_probability(&geom(1.0), &mp(2.0), Wiring::Independent).is_err());
}

#[test]
fn crossing_interchange_under_transpose() {
    let k = mp(16.0 / 3.0);
    let g = geom(1.7);
    // the weights share a factor K'^{8 h12}, so only their ratio is invariant
    let (ph, pv) = rectcft::blocks::crossing_weights(&g, &k).unwrap();
    let (th, tv) = rectcft::blocks::crossing_weights(&g.transposed(), &k).unwrap();
    assert!((ph / pv - tv / th).abs() < 1e-10 * ph / pv);
    let h = crossing_probability(&g, &k, Wiring::Independent).unwrap();
    assert!((h - tv / (tv + k.n * th)).abs() < 1e-10);
}

#[test]
fn rho_infinity_values() {
    let cases = [(6.0, 1.02993), (16.0 / 3.0, 1.07871), (24.0 / 5.0, 1.15470)];
    for (k, want) in cases {
        assert!((rho_infinity(&mp(k)).unwrap() - want).abs() < 5e-6, "kappa={k}");
    }
    let q3 = rho_infinity_report(&mp(10.0 / 3.0)).unwrap();
    assert!((q3.caption_reading - 2.0 * q3.ope_coefficient / (1.0 + 5f64.sqrt())).abs() < 1e-12);
    assert!(matches!(rho_infinity(&mp(8.0 / 3.0)), Err(rectcft::Error::Domain(_))));
}

#[test]
fn rho_is_one_for_n_zero() {
    for k in [8.0, 8.0 / 3.0] {
        for r in [0.5, 1.0, 2.5] {
            for s in [0.1, 0.37, 0.5, 0.8] {
                let v = rho(s * r, &geom(r), &mp(k)).unwrap();
                assert!((v - 1.0).abs() < 1e-9, "kappa={k}, R={r}: {v}");
            }
        }
    }
}

#[test]
fn rho_is_not_real_at_kappa_2() {
    assert!(matches!(rho(0.5, &geom(1.0), &mp(2.0)), Err(rectcft::Error::Domain(_))));
}

#[test]
fn rho_plateau_for_fk_models() {
    // the spin models at 3 and 10/3 sit further from their plateau at R = 3
    for k in [16.0 / 3.0, 24.0 / 5.0, 6.0] {
        let v = rho(1.5, &geom(3.0), &mp(k)).unwrap();
        assert!((v - rho_infinity(&mp(k)).unwrap()).abs() < 2e-3, "kappa={k}: {v}");
    }
}

#[test]
fn rho_approaches_one_monotonically() {
    for k in [3.0, 10.0 / 3.0, 24.0 / 5.0, 16.0 / 3.0, 6.0] {
        let g = geom(2.0);
        let mut last = 0.0;
        for i in 0..20 {
            let x = g.r * (0.3 - 0.014 * i as f64);
            let d = (rho(x, &g, &mp(k)).unwrap() - 1.0).abs();
            if i > 0 {
                assert!(d < last, "kappa={k}, x={x}");
            }
            last = d;
        }
        assert_eq!(rho(0.004 * g.r, &g, &mp(k)).unwrap(), 1.0);
        assert!((rho(0.005 * g.r + 1e-9, &g, &mp(k)).unwrap() - 1.0).abs() < 1e-3);
    }
}

#[test]
fn measured_rho_inverts_theory() {
    let g = geom(1.5);
    for k in [6.0, 16.0 / 3.0, 24.0 / 5.0, 10.0 / 3.0] {
        let k = mp(k);
        for x in [0.3, 0.75, 1.1] {
            let want = rho(x, &g, &k).unwrap();
            for w in [Wiring::Independent, Wiring::Mutual] {
                let d = density_triple(&bulk_point(x, 0.5, &g).unwrap(), &g, &k, w).unwrap();
                assert!(d.p_both <= d.p_left.min(d.p_right) + 1e-12 && d.p_both > 0.0);
                // densities carry a free overall constant; rho is scale-free
                let s = 0.5 / d.p_left.max(d.p_right);
                let d = DensityTriple { p_left: s * d.p_left, p_right: s * d.p_right, p_both: s * d.p_both, wiring: w };
                let pc = crossing_probability(&g, &k, w).unwrap();
                let got = rho_from_measured(&d, pc, &k).unwrap();
                assert!((got - want).abs() < 1e-10 * want, "{w:?}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn mutual_form_reduces_at_n_one() {
    let d = DensityTriple { p_left: 0.3, p_right: 0.4, p_both: 0.2, wiring: Wiring::Mutual };
    let a = rho_from_measured(&d, 0.35, &mp(6.0)).unwrap();
    let b = rho_from_measured(&DensityTriple { wiring: Wiring::Independent, ..d }, 0.35, &mp(6.0)).unwrap();
    assert!((a - b).abs() < 1e-14);
    assert!(rho_from_measured(&DensityTriple { p_left: 1.2, ..d }, 0.35, &mp(6.0)).is_err());
    let bad = DensityTriple { p_left: 0.2, p_right: 0.4, p_both: 0.2 * 2.0 / (2.0 - 1.0), wiring: Wiring::Mutual };
    assert!(rho_from_measured(&bad, 0.35, &mp(16.0 / 3.0)).is_err());
}

#[test]
fn percolation_reference_values() {
    // (x, y, R, P_Cr, P_Cl, P_Ax)
    let cases = [
        (0.7, 0.3, 2.0, 0.43561019278139675, 0.81879931191740796, 0.25509768541097255),
        (0.5, 0.5, 1.0, 1.0485209097093612, 1.0485209097093612, 0.73796422697200135),
        (0.25, 0.6, 1.5, 0.46032980271954841, 1.3436793190997843, 0.40895743124077301),
    ];
    for (x, y, r, cr, cl, ax) in cases {
        let g = geom(r);
        let p = bulk_point(x, y, &g).unwrap();
        for (got, want) in [
            (one_side_wired_density(&p, &g, Side::Right).unwrap(), cr),
            (one_side_wired_density(&p, &g, Side::Left).unwrap(), cl),
            (crossing_cluster_density(&p, &g).unwrap(), ax),
            (one_side_wired_density_complex(&p, &g, Side::Right).unwrap(), cr),
            (one_side_wired_density_complex(&p, &g, Side::Left).unwrap(), cl),
        ] {
            assert!((got - want).abs() < 1e-10 * want, "({x}, {y}, {r}): {got} vs {want}");
        }
    }
}

#[test]
fn attached_crossing_density_vanishes_at_the_left_side() {
    let g = geom(1.5);
    for y in [0.3, 0.5] {
        let mut last = f64::INFINITY;
        for x in [0.4, 0.2, 0.1, 0.05, 0.02, 0.01] {
            let v = right_attached_crossing_density(&bulk_point(x, y, &g).unwrap(), &g).unwrap();
            assert!(v >= 0.0 && v < last, "x={x}, y={y}: {v}");
            last = v;
        }
        assert!(last < 1e-2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn percolation_mirror_symmetries(r in 0.5f64..3.0, sx in 0.05f64..0.95, y in 0.05f64..0.95) {
        let g = geom(r);
        let p = bulk_point(sx * r, y, &g).unwrap();
        let (px, _) = mirror_maps(&p, &g, Mirror::X);
        let (py, _) = mirror_maps(&p, &g, Mirror::Y);
        let cr = one_side_wired_density(&p, &g, Side::Right).unwrap();
        prop_assert!((one_side_wired_density(&px, &g, Side::Left).unwrap() - cr).abs() < 1e-10 * cr);
        prop_assert!((one_side_wired_density(&py, &g, Side::Right).unwrap() - cr).abs() < 1e-10 * cr);
        let ax = crossing_cluster_density(&p, &g).unwrap();
        prop_assert!(ax >= 0.0);
        prop_assert!((crossing_cluster_density(&px, &g).unwrap() - ax).abs() < 1e-9 * ax);
        prop_assert!((crossing_cluster_density(&py, &g).unwrap() - ax).abs() < 1e-9 * ax);
        prop_assert!((crossing_cluster_density_by_blocks(&p, &g).unwrap() - ax).abs() < 1e-9 * ax.max(1e-3));
        let c = one_side_wired_density_complex(&p, &g, Side::Right).unwrap();
        prop_assert!((c - cr).abs() < 1e-10 * cr);
    }

    #[test]
    fn rho_is_mirror_symmetric(k in prop_oneof![2.8f64..3.9, 4.1f64..7.9], r in 0.5f64..3.0, s in 0.05f64..0.95) {
        let g = geom(r);
        let a = rho(s * r, &g, &mp(k)).unwrap();
        let b = rho((1.0 - s) * r, &g, &mp(k)).unwrap();
        prop_assert!((a - b).abs() < 1e-9 * a);
        prop_assert!(a >= 1.0 - 1e-9);
    }
}
