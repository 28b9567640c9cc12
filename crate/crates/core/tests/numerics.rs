mod common;

use std::f64::consts::PI;

use common::*;
use num_complex::Complex;
use proptest::prelude::*;
use qdl::algebra::{quasi_homogeneous_weights, rat, GaussRational, MPoly, Monomial, Var};
use qdl::elliptic::{
    agm, dedekind_eta, heat_trace_unit, kronecker_invariant, periods_agm, reduce_basis, zeta_prime_zero_unit, zeta_zero_unit,
    LAPLACIAN_SCALE,
};
use qdl::family::deligne_rr_constant;
use qdl::numeric::lstsq::lstsq;
use qdl::numeric::quadrature::{integrate, integrate_with_breaks, QuadOptions};
use qdl::numeric::roots::polynomial_roots;
use qdl::numeric::zeta::zeta_prime_minus_one;
use qdl::ComplexD;

fn c(re: f64, im: f64) -> ComplexD {
    Complex::new(re, im)
}

#[test]
fn eta_at_i_from_gamma_quarter() {
    let eta = dedekind_eta(c(0.0, 1.0)).unwrap();
    assert!((eta.re - eta_i()).abs() < 1e-12, "{eta} vs {}", eta_i());
    assert!(eta.im.abs() < 1e-14);
}

#[test]
fn eta_modular_relations() {
    let tau = c(0.31, 0.77);
    let e = dedekind_eta(tau).unwrap();
    let shifted = dedekind_eta(tau + 1.0).unwrap();
    assert!((shifted - e * Complex::from_polar(1.0, PI / 12.0)).norm() < 1e-13);
    let inv = dedekind_eta(-tau.inv()).unwrap();
    assert!((inv - (c(0.0, -1.0) * tau).sqrt() * e).norm() < 1e-13);
    let k = kronecker_invariant(tau).unwrap();
    assert!((k - kronecker_invariant(-tau.inv()).unwrap()).abs() < 1e-13);
}

#[test]
fn special_moduli() {
    let lem = periods_agm(c(4.0, 0.0), c(0.0, 0.0)).unwrap();
    assert!((lem.tau - c(0.0, 1.0)).norm() < 1e-10, "{}", lem.tau);
    let (w1, w2) = real_periods(1.0, 0.0, -1.0);
    assert!((lem.area - w1 * w2).abs() < 1e-10 * lem.area, "{} vs {}", lem.area, w1 * w2);

    let equi = periods_agm(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    assert!((equi.tau - Complex::from_polar(1.0, PI / 3.0)).norm() < 1e-10, "{}", equi.tau);

    // 4X³ − 13X + 6 = 4(X − 3/2)(X − 1/2)(X + 2)
    let t = periods_agm(c(13.0, 0.0), c(-6.0, 0.0)).unwrap();
    let (w1, w2) = real_periods(1.5, 0.5, -2.0);
    let oracle = to_fundamental_domain(c(0.0, w2 / w1));
    assert!((t.tau - oracle).norm() < 1e-10, "{} vs {oracle}", t.tau);
    assert!((t.area - w1 * w2).abs() < 1e-10 * t.area);
}

#[test]
fn complex_invariants_stay_in_fundamental_domain() {
    for (g2, g3) in [(c(1.0, 2.0), c(-0.5, 0.3)), (c(-3.0, 0.1), c(2.0, -1.0)), (c(0.2, 0.0), c(0.0, 1.5))] {
        let t = periods_agm(g2, g3).unwrap();
        assert!(t.tau.re.abs() <= 0.5 + 1e-12 && t.tau.norm() >= 1.0 - 1e-12, "{}", t.tau);
        assert!((t.area - (t.omega1.conj() * t.omega2).im.abs()).abs() < 1e-10 * t.area);
    }
    assert!(periods_agm(c(3.0, 0.0), c(1.0, 0.0)).is_err(), "g2³ = 27 g3²");
}

#[test]
fn agm_and_reduction() {
    let m = agm(c(1.0, 0.0), c(2f64.sqrt(), 0.0));
    assert!((m.re - agm_real(1.0, 2f64.sqrt())).abs() < 1e-15);
    let (w1, w2) = reduce_basis(c(1.0, 0.0), c(7.3, 0.01));
    let det = (w1.conj() * w2).im;
    assert!((det.abs() - 0.01).abs() < 1e-12);
    assert!(w1.norm() <= w2.norm() + 1e-12);
}

#[test]
fn zeta_zero_against_eigenvalue_sum() {
    for tau in [c(0.0, 1.0), Complex::from_polar(1.0, PI / 3.0), c(0.3, 2.5), c(-0.2, 1.1)] {
        let oracle = zeta_zero_eigen(tau, LAPLACIAN_SCALE);
        assert!((oracle + 1.0).abs() < 1e-6, "oracle {oracle}");
        let lib = zeta_zero_unit(tau).unwrap();
        assert!((lib - oracle).abs() < 1e-3);
        assert!((heat_trace_unit(tau, 0.01).unwrap() - heat_trace_eigen(tau, LAPLACIAN_SCALE, 0.01)).abs() < 1e-9);
    }
}

#[test]
fn zeta_prime_against_heat_integral() {
    for tau in [c(0.0, 1.0), Complex::from_polar(1.0, PI / 3.0), c(0.3, 2.5)] {
        let oracle = zeta_prime_zero_heat(tau) - LAPLACIAN_SCALE.ln();
        let lib = zeta_prime_zero_unit(tau).unwrap();
        assert!((lib - oracle).abs() < 1e-10, "{tau}: {lib} vs {oracle}");
    }
}

#[test]
fn deligne_constant() {
    assert_eq!(deligne_rr_constant::<f64>(1, 1), 0.0);
    assert_eq!(deligne_rr_constant::<f64>(1, 5), 0.0);
    let (z, dz) = zeta_euler_maclaurin(-1.0);
    assert!((z + 1.0 / 12.0).abs() < 1e-12);
    assert!((zeta_prime_minus_one::<f64>() - dz).abs() < 1e-12);
    let oracle = 2.0 * (dz / z + 0.5);
    assert!((deligne_rr_constant::<f64>(0, 1) - oracle).abs() < 1e-10);
    assert!((deligne_rr_constant::<f64>(0, 1) - 4.970_107_6).abs() < 1e-6);
    assert!((deligne_rr_constant::<f64>(2, 1) + oracle).abs() < 1e-10);
}

#[test]
fn quadrature_against_tanh_sinh() {
    let f = |x: f64| (1.0 + x * x).ln() / (1.0 + x).sqrt();
    let r = integrate(f, 0.0, 3.0, QuadOptions { abs_tol: 1e-13, rel_tol: 1e-13, max_intervals: 500 });
    assert!(r.converged);
    assert!((r.value - tanh_sinh(f, 0.0, 3.0)).abs() < 1e-12);
    // a kink at x = 1 handled by a break point
    let g = |x: f64| (x - 1.0).abs().sqrt();
    let r = integrate_with_breaks(g, 0.0, 2.0, &[1.0], QuadOptions { abs_tol: 1e-12, rel_tol: 1e-12, max_intervals: 500 });
    assert!((r.value - 4.0 / 3.0).abs() < 1e-11);
}

#[test]
fn roots_and_lstsq() {
    // (z − 1)(z − i)(z + 2) = z³ + (1 − i)z² − (2 + i)z + 2i
    let roots = polynomial_roots(&[c(0.0, 2.0), c(-2.0, -1.0), c(1.0, -1.0), c(1.0, 0.0)]).unwrap();
    assert_eq!(roots.len(), 3);
    for want in [c(1.0, 0.0), c(0.0, 1.0), c(-2.0, 0.0)] {
        assert!(roots.iter().any(|r| (r - want).norm() < 1e-12), "{want} missing from {roots:?}");
    }
    let a: Vec<Vec<f64>> = (0..10).map(|k| vec![1.0, k as f64]).collect();
    let b: Vec<f64> = (0..10).map(|k| 3.0 - 0.5 * k as f64).collect();
    let s = lstsq(&a, &b).unwrap();
    assert!((s.coefficients[0] - 3.0).abs() < 1e-13 && (s.coefficients[1] + 0.5).abs() < 1e-13);
    assert!(s.residual_rms < 1e-13);
}

fn scale_x(f: &qdl::Poly, lx: i64, ly: i64) -> qdl::Poly {
    let sx = MPoly::term(GaussRational::real(rat(lx, 1)), Monomial::var(Var::X));
    let sy = MPoly::term(GaussRational::real(rat(ly, 1)), Monomial::var(Var::Y));
    f.substitute_all(&[(Var::X, sx), (Var::Y, sy)])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn weights_invariant_under_scaling(p in 2u32..9, q in 2u32..9, lx in 1i64..5, ly in 1i64..5, lf in 1i64..7) {
        let f = poly(&format!("x^{p} + y^{q}"));
        let w = quasi_homogeneous_weights(&f).unwrap().unwrap();
        prop_assert_eq!(&w.w1, &rat(1, p as i64));
        prop_assert_eq!(&w.w2, &rat(1, q as i64));
        let g = &scale_x(&f, lx, ly) * &poly(&lf.to_string());
        prop_assert_eq!(quasi_homogeneous_weights(&g).unwrap().unwrap(), w);
    }

    #[test]
    fn eta_invariant_is_modular(re in -0.5f64..0.5, im in 0.3f64..3.0, n in -3i32..3) {
        let tau = c(re, im);
        let k = kronecker_invariant(tau).unwrap();
        let moved = -(tau + n as f64).inv();
        prop_assert!((kronecker_invariant(moved).unwrap() - k).abs() < 1e-11 * k.max(1.0));
    }
}
