mod common;

use bogotherm::bogoliubov::{
    bulk_depletion_finite_t, bulk_depletion_zero_t, bulk_energy_density, depletion_finite_t,
    depletion_zero_t, depletion_zero_t_deviation, energy_density_deviation, f_kernel,
    ground_state_energy, ground_state_energy_density, phi, BogoliubovParams, QuadratureConfig, J,
    XI,
};
use bogotherm::free_gas::excited_number_at_zero;
use bogotherm::ConvexDomain;
use common::{depletion_constant_oracle, energy_constant_oracle, rel_err, tanh_sinh};
use proptest::prelude::*;
use std::f64::consts::PI;

// box-minus-bulk deviations from an independent scipy/mpmath computation
// (QUADPACK on decade panels, Jacobi θ at 30 digits, analytic large-t tails)
const DEVIATION_GOLDEN: [(&str, f64, f64, f64); 4] = [
    ("energy", 0.5, 8.0, -1.515_299_989_734_06e-3),
    ("energy", 1.0, 3.0, -5.259_657_385_866_38e-3),
    ("depletion", 0.5, 8.0, 2.463_662_870_108_699_6e-3),
    ("depletion", 2.0, 3.0, 2.141_826_091_578_423_8e-2),
];

fn params(a: f64) -> BogoliubovParams {
    BogoliubovParams::from_coupling(a).unwrap()
}

fn cube(l: f64) -> ConvexDomain {
    ConvexDomain::cube(l).unwrap()
}

#[test]
fn energy_constant_from_double_integral() {
    let oracle = energy_constant_oracle();
    let closed = 32.0 * (2.0 * PI).sqrt() / 15.0;
    assert!(rel_err(oracle, closed) < 1e-9, "{oracle}");
    assert!(rel_err(J, closed) < 1e-15);
    assert!(rel_err(J, oracle) < 1e-6);
}

#[test]
fn depletion_constant_from_bessel_integral() {
    let oracle = depletion_constant_oracle();
    // with the angular form of I₁ the u-integral is elementary
    let fubini = tanh_sinh(|th| th.sin().powi(2) / (2f64.sqrt() * (0.5 * th).sin()), 0.0, PI, 1e-14)
        / PI.sqrt();
    let closed = 4.0 * 2f64.sqrt() / (3.0 * PI.sqrt());
    assert!(rel_err(oracle, closed) < 1e-9, "{oracle}");
    assert!(rel_err(fubini, closed) < 1e-12, "{fubini}");
    assert!(rel_err(XI, oracle) < 1e-6);
    assert!((XI - 1.063_845).abs() < 1.5e-6);
}

#[test]
fn phi_is_the_x_average_of_f() {
    for t in [1e-3, 0.1, 1.0, 7.0, 50.0] {
        let avg = tanh_sinh(|x| f_kernel(t, x).unwrap(), 0.0, 1.0, 1e-14);
        assert!(rel_err(phi(t), avg) < 1e-12, "t = {t}");
    }
}

#[test]
fn bulk_zero_temperature_depletion_at_unit_coupling() {
    let n = bulk_depletion_zero_t(&params(1.0)).unwrap();
    assert!(rel_err(n, 2f64.sqrt() / (12.0 * PI * PI)) < 1e-12);
    assert!(rel_err(n, 0.011_940_816) < 1e-5);
}

#[test]
fn bulk_energy_density_value() {
    let p = BogoliubovParams::new(2.0, 0.5).unwrap();
    let a = 1.0;
    let want = 0.5 * 2.0 * 0.25 - a / (2.0 * PI) * (a / (4.0 * PI)).powf(1.5) * J;
    assert!(rel_err(bulk_energy_density(&p).unwrap(), want) < 1e-15);
}

#[test]
fn deviations_match_independent_quadrature() {
    let q = QuadratureConfig::default();
    for (what, a, l, want) in DEVIATION_GOLDEN {
        let got = match what {
            "energy" => energy_density_deviation(&cube(l), &params(a), &q).unwrap(),
            _ => depletion_zero_t_deviation(&cube(l), &params(a), &q).unwrap(),
        };
        assert!(rel_err(got, want) < 1e-6, "{what} a = {a}, L = {l}: {got} vs {want}");
    }
}

#[test]
fn totals_are_bulk_plus_deviation() {
    let q = QuadratureConfig::default();
    let p = BogoliubovParams::new(0.5, 1.0).unwrap();
    let c = cube(5.0);
    let e = ground_state_energy_density(&c, &p, &q).unwrap();
    let d = energy_density_deviation(&c, &p, &q).unwrap();
    assert!(rel_err(e, bulk_energy_density(&p).unwrap() + d) < 1e-14);
    assert!(rel_err(ground_state_energy(&c, &p, &q).unwrap(), 125.0 * e) < 1e-14);
    let n = depletion_zero_t(&c, &p, &q).unwrap();
    let nd = depletion_zero_t_deviation(&c, &p, &q).unwrap();
    assert!(rel_err(n, bulk_depletion_zero_t(&p).unwrap() + nd) < 1e-14);
}

#[test]
fn deviations_depend_only_on_coupling_times_area() {
    // (L, a, β) → (2L, a/4, 4β) scales energy density by 2⁻⁵, depletion by 2⁻³
    let q = QuadratureConfig::default();
    let (l, a, beta) = (3.0, 0.8, 1.5);
    let p1 = params(a).with_beta(beta).unwrap();
    let p2 = params(a / 4.0).with_beta(4.0 * beta).unwrap();
    let e1 = energy_density_deviation(&cube(l), &p1, &q).unwrap();
    let e2 = energy_density_deviation(&cube(2.0 * l), &p2, &q).unwrap();
    assert!(rel_err(e2, e1 / 32.0) < 1e-8, "{e1} {e2}");
    let n1 = depletion_zero_t_deviation(&cube(l), &p1, &q).unwrap();
    let n2 = depletion_zero_t_deviation(&cube(2.0 * l), &p2, &q).unwrap();
    assert!(rel_err(n2, n1 / 8.0) < 1e-8, "{n1} {n2}");
    let t1 = depletion_finite_t(&cube(l), &p1, &q).unwrap().total;
    let t2 = depletion_finite_t(&cube(2.0 * l), &p2, &q).unwrap().total;
    assert!(rel_err(t2, t1 / 8.0) < 1e-7, "{t1} {t2}");
}

#[test]
fn finite_temperature_reduces_to_free_gas_occupancy() {
    // as a → 0 the thermal sum is the excited-mode Bose occupancy at μβ = −βa
    // with thermal wavelength λ = √(πβ); the integral term is O(√a)
    let (l, beta, a) = (4.0, 0.7, 1e-14);
    let p = params(a).with_beta(beta).unwrap();
    let r = depletion_finite_t(&cube(l), &p, &QuadratureConfig::default()).unwrap();
    // μβ = −βa shifts the excited occupancies by a relative O(1e-14)
    let excited = excited_number_at_zero(l, (PI * beta).sqrt()).unwrap();
    let v = l * l * l;
    assert!(rel_err(r.thermal_term * v, excited) < 1e-6, "{} vs {}", r.thermal_term * v, excited);
    assert!(r.integral_term.abs() < 1e-6 * r.thermal_term);
    // the zero mode 1/(V(e^{βa}−1)) dominates the total here
    let parts = r.thermal_term + r.integral_term + r.zero_mode_term;
    assert!(rel_err(r.total, parts) < 1e-14);
    assert!(rel_err(r.zero_mode_term, 1.0 / (v * (beta * a).exp_m1())) < 1e-12);
}

#[test]
fn bulk_finite_temperature_at_vanishing_coupling() {
    let beta = 2.0;
    let n = bulk_depletion_finite_t(&params(1e-16).with_beta(beta).unwrap()).unwrap();
    let want = (4.0 * PI * beta).powf(-1.5) * 2.612_375_348_685_488;
    assert!(rel_err(n, want) < 1e-6);
}

#[test]
fn zero_mode_switch_changes_total_by_zero_mode_term() {
    let p = params(0.5).with_beta(1.0).unwrap();
    let on = QuadratureConfig::default();
    let off = QuadratureConfig {
        include_zero_mode: false,
        ..on
    };
    let a = depletion_finite_t(&cube(4.0), &p, &on).unwrap();
    let b = depletion_finite_t(&cube(4.0), &p, &off).unwrap();
    assert!(a.zero_mode_included && !b.zero_mode_included);
    let expect = 1.0 / (64.0 * 0.5f64.exp_m1());
    assert!(rel_err(a.zero_mode_term, expect) < 1e-14);
    assert!(rel_err(a.total - b.total, expect) < 1e-9);
}

#[test]
fn results_do_not_depend_on_the_tail_cut() {
    let p = params(0.5).with_beta(1.0).unwrap();
    let base = QuadratureConfig::default();
    let wide = QuadratureConfig {
        tail_cut_factor: 80.0,
        t_split: 0.3,
        ..base
    };
    let c = cube(6.0);
    let e = |q: &QuadratureConfig| energy_density_deviation(&c, &p, q).unwrap();
    let n = |q: &QuadratureConfig| depletion_zero_t_deviation(&c, &p, q).unwrap();
    let t = |q: &QuadratureConfig| depletion_finite_t(&c, &p, q).unwrap().deviation;
    assert!(rel_err(e(&wide), e(&base)) < 1e-7);
    assert!(rel_err(n(&wide), n(&base)) < 1e-7);
    assert!(rel_err(t(&wide), t(&base)) < 1e-6);
}

#[test]
fn missing_temperature_and_bad_config_are_rejected() {
    let q = QuadratureConfig::default();
    assert!(depletion_finite_t(&cube(2.0), &params(1.0), &q).is_err());
    let bad = QuadratureConfig {
        rel_tol: 0.0,
        ..q
    };
    assert!(energy_density_deviation(&cube(2.0), &params(1.0), &bad).is_err());
    assert!(energy_density_deviation(&ConvexDomain::ball(1.0).unwrap(), &params(1.0), &q).is_err());
    assert!(BogoliubovParams::new(-1.0, 1.0).is_err());
}

/// Box value relative to bulk at `L = 64/√a`, measured against the bulk
/// correction (the interaction part of the energy, the full depletion).
#[test]
fn large_box_values_are_close_to_bulk() {
    let q = QuadratureConfig::default();
    let a = 1.0;
    let p = params(a).with_beta(1.0).unwrap();
    let c = cube(64.0 / a.sqrt());
    let correction = a / (2.0 * PI) * (a / (4.0 * PI)).powf(1.5) * J;
    let e = energy_density_deviation(&c, &p, &q).unwrap().abs() / correction;
    let n0 = depletion_zero_t_deviation(&c, &p, &q).unwrap().abs() / bulk_depletion_zero_t(&p).unwrap();
    let nt = depletion_finite_t(&c, &p, &q).unwrap().deviation.abs() / bulk_depletion_finite_t(&p).unwrap();
    println!("relative gaps at L = 64/sqrt(a): energy {e:.4}, zero-T {n0:.4}, finite-T {nt:.4}");
    assert!(e <= 0.05 && n0 <= 0.05 && nt <= 0.05, "energy {e}, zero-T {n0}, finite-T {nt}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn quantities_have_the_expected_signs(a in 0.05f64..4.0, l in 1.0f64..12.0) {
        let q = QuadratureConfig::default();
        let p = params(a).with_beta(1.0).unwrap();
        let c = cube(l);
        // the interaction integral lowers the energy below its mean-field value
        prop_assert!(ground_state_energy_density(&c, &p, &q).unwrap() < 0.5 * p.u0 * p.n0 * p.n0);
        prop_assert!(depletion_zero_t(&c, &p, &q).unwrap() >= 0.0);
        prop_assert!(depletion_finite_t(&c, &p, &q).unwrap().total >= 0.0);
    }
}
