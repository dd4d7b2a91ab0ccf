// reference digits are kept as printed by the oracle
#![allow(clippy::excessive_precision)]

mod common;

use bogotherm::specfun::{
    bessel_i_scaled, bessel_k, bose_g, residual_gr6682, residual_i1_identity,
    residual_k_integral_rep, SpecFunConfig,
};
use common::{log_grid, rel_err, scaled_i1_oracle, zeta_three_halves_oracle};
use proptest::prelude::*;
use std::f64::consts::PI;

// reference values computed with mpmath at 30 digits
const K_GOLDEN: [(f64, f64, f64); 7] = [
    (0.25, 1.0, 0.430_739_774_448_585_52),
    (0.5, 4.0, 0.011_477_624_576_608_053),
    (0.1, 0.01, 4.934_666_009_755_597_1),
    (0.9, 7.5, 2.621_591_848_704_273_8e-4),
    (1.0, 0.3, 3.055_992_033_457_325_1),
    (1.0, 12.0, 2.290_757_464_767_187_8e-6),
    (0.75, 30.0, 2.152_237_744_711_505_2e-14),
];

const I_SCALED_GOLDEN: [(f64, f64, f64); 8] = [
    (0.0, 0.5, 0.645_035_270_449_150_07),
    (0.0, 20.0, 0.089_780_311_884_826_022),
    (0.0, 100.0, 0.039_944_379_299_096_683),
    (0.5, 3.0, 0.229_758_503_397_538_61),
    (1.0, 1e-3, 4.995_003_123_542_213_5e-4),
    (1.0, 15.0, 0.100_374_175_045_166_66),
    (1.0, 40.0, 0.062_482_229_074_442_061),
    (1.0, 1000.0, 0.012_610_930_256_928_629),
];

const BOSE_GOLDEN: [(f64, f64, f64); 5] = [
    (1.5, 0.5, 0.624_837_020_819_913_85),
    (1.5, 0.999, 2.501_708_465_341_355_6),
    (1.5, 1.0, 2.612_375_348_685_488_3),
    (2.5, 0.9, 1.139_003_025_202_156_8),
    (3.0, 0.99999, 1.202_040_454_387_331_2),
];

#[test]
fn bessel_k_matches_reference_values() {
    for (nu, x, want) in K_GOLDEN {
        let got = bessel_k(nu, x).unwrap();
        assert!(rel_err(got, want) < 1e-13, "K_{nu}({x}) = {got}, want {want}");
    }
}

#[test]
fn scaled_bessel_i_matches_reference_values() {
    for (nu, x, want) in I_SCALED_GOLDEN {
        let got = bessel_i_scaled(nu, x).unwrap();
        assert!(rel_err(got, want) < 1e-13, "e^-x I_{nu}({x}) = {got}, want {want}");
    }
}

#[test]
fn scaled_i1_matches_angular_integral() {
    for x in log_grid(1e-3, 200.0, 25) {
        let got = bessel_i_scaled(1.0, x).unwrap();
        let want = scaled_i1_oracle(x);
        assert!(rel_err(got, want) < 1e-12, "x = {x}: {got} vs {want}");
    }
}

#[test]
fn bose_function_matches_reference_values() {
    for (s, z, want) in BOSE_GOLDEN {
        let got = bose_g(s, z).unwrap();
        assert!(rel_err(got, want) < 1e-12, "g_{s}({z}) = {got}, want {want}");
    }
}

#[test]
fn bose_function_just_below_one() {
    let got = bose_g(1.5, (-1e-6f64).exp()).unwrap();
    assert!(rel_err(got, 2.608_831_901_338_082_2) < 1e-11);
}

#[test]
fn zeta_three_halves_from_bose_integral() {
    let oracle = zeta_three_halves_oracle();
    let got = bose_g(1.5, 1.0).unwrap();
    assert!(rel_err(got, oracle) < 1e-12, "{got} vs {oracle}");
    assert!(rel_err(got, 2.612_375) < 1e-6);
}

#[test]
fn half_order_k_is_elementary() {
    for x in [0.1, 1.0, 10.0] {
        let k = bessel_k(0.5, x).unwrap();
        let e = k / (PI / (2.0 * x)).sqrt();
        assert!(rel_err(e, (-x).exp()) < 1e-12, "x = {x}");
    }
}

#[test]
fn scaled_i1_large_argument_asymptote() {
    let v = bessel_i_scaled(1.0, 100.0).unwrap();
    assert!(rel_err(v, 1.0 / (200.0 * PI).sqrt()) < 0.02);
}

#[test]
fn i1_identity_residuals_on_log_grid() {
    for u in log_grid(1e-3, 1e3, 20) {
        let r = residual_i1_identity(u).unwrap();
        assert!(r <= 1e-8, "u = {u}: {r}");
    }
}

#[test]
fn k_integral_rep_residuals_on_log_grid() {
    for nu in [0.1, 0.25, 0.5, 0.75, 0.9] {
        for x in log_grid(1e-2, 10.0, 20) {
            let r = residual_k_integral_rep(nu, x).unwrap();
            assert!(r <= 1e-7, "nu = {nu}, x = {x}: {r}");
        }
    }
}

#[test]
fn gr6682_residuals_on_log_grid() {
    for (mu, nu) in [(0.0, 0.0), (0.0, 0.5), (0.5, 0.0), (0.5, 0.5), (1.0, 0.0)] {
        for x in log_grid(1e-2, 1e2, 20) {
            let r = residual_gr6682(mu, nu, x).unwrap();
            assert!(r <= 1e-8, "mu = {mu}, nu = {nu}, x = {x}: {r}");
        }
    }
}

#[test]
fn unreachable_tolerance_is_reported() {
    let cfg = SpecFunConfig {
        quad_rel_tol: 1e-14,
        ..SpecFunConfig::default()
    };
    let r = bogotherm::specfun::residual_k_integral_rep_with(0.25, 5.0, &cfg);
    assert!(matches!(r, Err(bogotherm::Error::Tolerance { .. })), "{r:?}");
}

#[test]
fn invalid_arguments_are_rejected() {
    assert!(bessel_k(0.0, 1.0).is_err());
    assert!(bessel_k(1.5, 1.0).is_err());
    assert!(bessel_k(0.5, -1.0).is_err());
    assert!(bessel_i_scaled(2.0, 1.0).is_err());
    assert!(bessel_i_scaled(1.0, -1.0).is_err());
    assert!(bose_g(1.5, 1.1).is_err());
    assert!(bose_g(1.0, 0.5).is_err());
}

fn direct_bose(s: f64, z: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    let mut zj = 1.0;
    for j in 1..=terms {
        zj *= z;
        if zj < 1e-300 {
            break;
        }
        sum += zj / (j as f64).powf(s);
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaled_i1_is_bounded(x in 0.0f64..1e4) {
        let v = bessel_i_scaled(1.0, x).unwrap();
        prop_assert!((0.0..0.5).contains(&v));
    }

    #[test]
    fn scaled_i1_rises_near_zero(x in 1e-3f64..1.0) {
        let lo = bessel_i_scaled(1.0, x).unwrap();
        let hi = bessel_i_scaled(1.0, 1.01 * x).unwrap();
        prop_assert!(hi > lo);
    }

    #[test]
    fn bose_agrees_with_long_partial_sum(s in 1.01f64..4.0, z in 0.0f64..0.99) {
        let got = bose_g(s, z).unwrap();
        let want = direct_bose(s, z, 1_000_000);
        prop_assert!((got - want).abs() <= 1e-10 * want.max(1e-300), "{} vs {}", got, want);
    }

    #[test]
    fn bose_is_increasing_in_fugacity(s in 1.1f64..4.0, z in 0.01f64..0.98) {
        prop_assert!(bose_g(s, z + 0.01).unwrap() > bose_g(s, z).unwrap());
    }

    #[test]
    fn k_decreases_in_argument(nu in 0.01f64..1.0, x in 0.01f64..50.0) {
        prop_assert!(bessel_k(nu, 1.1 * x).unwrap() < bessel_k(nu, x).unwrap());
    }
}
