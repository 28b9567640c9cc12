//! Periods of `y² = 4x³ − g2·x − g3` by the arithmetic-geometric mean, the
//! Dedekind eta function, the zeta-regularized determinant of a flat torus
//! and the Quillen log-norm along a Weierstrass family.
//!
//! The Laplacian is the `∂̄`-Laplacian on functions, half the Hodge
//! Laplacian of the flat metric. For a torus of unit area and modulus `τ`
//! this gives `ζ'(0) = −log(2·Im τ·|η(τ)|⁴)`, a modular invariant.

use num_complex::Complex;
use serde::Serialize;

use crate::algebra::{MPoly, Var};
use crate::error::{Error, Result};
use crate::numeric::roots::polynomial_roots;
use crate::scalar::{Field, Real};
use crate::weierstrass::WeierstrassModel;

/// Ratio between the Hodge Laplacian and the Laplacian used for `ζ'(0)`.
pub const LAPLACIAN_SCALE: f64 = 2.0;

/// Relative discriminant below which a cubic is treated as singular.
pub const DISCRIMINANT_TOL: f64 = 1e-13;

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct TorusData<T> {
    pub omega1: Complex<T>,
    pub omega2: Complex<T>,
    /// `ω2/ω1` in the standard fundamental domain.
    pub tau: Complex<T>,
    pub area: T,
    /// `|g2³ − 27g3²| / (|g2|³ + 27|g3|²)`; small values mean a nearly singular cubic.
    pub relative_discriminant: T,
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct QuillenSample<T> {
    pub t: Complex<T>,
    pub tau: Complex<T>,
    pub area: T,
    pub log_l2: T,
    pub zeta_prime_zero: T,
    pub log_quillen: T,
}

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Arithmetic-geometric mean with the optimal choice of square roots.
pub fn agm<T: Real>(mut a: Complex<T>, mut b: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    for _ in 0..200 {
        if (a - b).norm() <= T::epsilon() * T::lit(4.0) * a.norm() {
            break;
        }
        let a1 = (a + b) * half;
        let mut g = (a * b).sqrt();
        if (a1 - g).norm() > (a1 + g).norm() {
            g = -g;
        }
        a = a1;
        b = g;
    }
    a
}

/// `τ` into `{−1/2 < Re τ ≤ 1/2, |τ| ≥ 1}`, with `Re τ ≥ 0` on the unit
/// circle, acting on the basis `(ω1, ω2)`.
pub fn reduce_basis<T: Real>(mut w1: Complex<T>, mut w2: Complex<T>) -> (Complex<T>, Complex<T>) {
    if (w2 / w1).im < T::zero() {
        w2 = -w2;
    }
    for _ in 0..200 {
        let tau = w2 / w1;
        let n = tau.re.round();
        w2 = w2 - w1 * n;
        let tau = w2 / w1;
        if tau.norm_sqr() < T::one() - T::epsilon() * T::lit(16.0) {
            let old = w1;
            w1 = w2;
            w2 = -old;
        } else {
            break;
        }
    }
    // boundary identifications, up to rounding
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(64.0));
    if (w2 / w1).re < -T::lit(0.5) + tol {
        w2 = w2 + w1;
    }
    let tau = w2 / w1;
    if (tau.norm_sqr() - T::one()).abs() < tol && tau.re < -tol {
        let old = w1;
        w1 = w2;
        w2 = -old;
    }
    (w1, w2)
}

/// Lattice of `dx/y` on `y² = 4x³ − g2·x − g3`.
pub fn periods_agm<T: Real>(g2: Complex<T>, g3: Complex<T>) -> Result<TorusData<T>> {
    if [g2.re, g2.im, g3.re, g3.im].iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite Weierstrass invariants".into()));
    }
    let disc = g2 * g2 * g2 - g3 * g3 * T::lit(27.0);
    let scale = g2.norm().powi(3) + T::lit(27.0) * g3.norm_sqr();
    let relative_discriminant = if scale > T::zero() { disc.norm() / scale } else { T::zero() };
    if relative_discriminant <= T::lit(DISCRIMINANT_TOL).max(T::epsilon() * T::lit(100.0)) {
        return Err(Error::Conditioning(format!(
            "cubic is singular to working precision (relative discriminant {:e})",
            relative_discriminant.to_f64_lossy()
        )));
    }

    let zero = Complex::new(T::zero(), T::zero());
    let coeffs = [-g3, -g2, zero, c(4.0, 0.0)];
    let mut e = polynomial_roots(&coeffs)?;
    // Newton polish
    for r in &mut e {
        for _ in 0..3 {
            let p = ((*r * *r * T::lit(4.0)) - g2) * *r - g3;
            let dp = *r * *r * T::lit(12.0) - g2;
            if dp.norm() > T::zero() {
                *r = *r - p / dp;
            }
        }
    }
    e.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.im.partial_cmp(&a.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    let (e1, e2, e3) = (e[0], e[1], e[2]);
    let a = (e1 - e3).sqrt();
    let mut b = (e1 - e2).sqrt();
    let mut cc = (e2 - e3).sqrt();
    if (a - b).norm() > (a + b).norm() {
        b = -b;
    }
    let i = Complex::new(T::zero(), T::one());
    if (cc - i * b).norm() > (cc + i * b).norm() {
        cc = -cc;
    }
    let pi = Complex::new(T::PI(), T::zero());
    let w1 = pi / agm(a, b);
    let w2 = pi / agm(cc, i * b);
    let (omega1, omega2) = reduce_basis(w1, w2);
    let tau = omega2 / omega1;
    let area = (omega1.conj() * omega2).im.abs();
    if !(area > T::zero()) || !area.is_finite() {
        return Err(Error::Conditioning("degenerate period lattice".into()));
    }
    Ok(TorusData { omega1, omega2, tau, area, relative_discriminant })
}

fn eta_product<T: Real>(tau: Complex<T>) -> Complex<T> {
    let two_pi_i = Complex::new(T::zero(), T::lit(2.0) * T::PI());
    let q = (two_pi_i * tau).exp();
    let mut prod = Complex::new(T::one(), T::zero());
    let mut qn = q;
    let tiny = T::lit(1e-17).max(T::epsilon() * T::lit(0.1));
    for _ in 0..10_000 {
        prod = prod * (Complex::new(T::one(), T::zero()) - qn);
        if qn.norm() < tiny {
            break;
        }
        qn = qn * q;
    }
    (two_pi_i * tau / T::lit(24.0)).exp() * prod
}

/// Dedekind eta `q^{1/24} Π (1 − qⁿ)`, evaluated after moving `τ` into the
/// fundamental domain with `η(τ+1) = e^{iπ/12}η(τ)`, `η(−1/τ) = √(−iτ)·η(τ)`.
pub fn dedekind_eta<T: Real>(tau: Complex<T>) -> Result<Complex<T>> {
    if !(tau.im > T::zero()) || !tau.re.is_finite() {
        return Err(Error::Domain("eta needs Im τ > 0".into()));
    }
    let mut factor = Complex::new(T::one(), T::zero());
    let mut z = tau;
    let minus_i = Complex::new(T::zero(), -T::one());
    for _ in 0..200 {
        let n = z.re.round();
        if n != T::zero() {
            // η(z) = e^{iπn/12} η(z − n)
            factor = factor * Complex::from_polar(T::one(), T::PI() * n / T::lit(12.0));
            z = Complex::new(z.re - n, z.im);
        }
        if z.norm_sqr() < T::one() - T::epsilon() * T::lit(16.0) {
            // η(z) = η(−1/z) / √(−iz)
            factor = factor / (minus_i * z).sqrt();
            z = -z.inv();
        } else {
            break;
        }
    }
    Ok(factor * eta_product(z))
}

/// `ζ'(0)` of the `∂̄`-Laplacian on the flat torus of modulus `τ` and area `A`:
/// `−log(2·Im τ·|η(τ)|⁴) − log A`.
pub fn zeta_prime_zero_flat_torus<T: Real>(tau: Complex<T>, area: T) -> Result<T> {
    if !(area > T::zero()) {
        return Err(Error::Domain("torus area must be positive".into()));
    }
    Ok(zeta_prime_zero_unit(tau)? - area.ln())
}

/// `ζ'_unit(0) = −log(c·Im τ·|η(τ)|⁴)` for the unit-area torus.
pub fn zeta_prime_zero_unit<T: Real>(tau: Complex<T>) -> Result<T> {
    let eta = dedekind_eta(tau)?;
    let log_eta = eta.norm().ln();
    Ok(-(T::lit(LAPLACIAN_SCALE).ln() + tau.im.ln() + T::lit(4.0) * log_eta))
}

/// The modular invariant `Im τ·|η(τ)|⁴`.
pub fn kronecker_invariant<T: Real>(tau: Complex<T>) -> Result<T> {
    Ok(tau.im * dedekind_eta(tau)?.norm().powi(4))
}

/// `Σ_{a,b} exp(−u·|a + bτ|²/Im τ)` over the unit-area lattice, truncated where terms fall below `e^{−45}`.
fn lattice_gaussian_sum<T: Real>(tau: Complex<T>, u: T) -> T {
    let y = tau.im;
    let cut = T::lit(45.0);
    let bmax = (cut / (u * y)).sqrt().ceil().to_f64_lossy() as i64;
    let mut total = T::zero();
    for b in -bmax..=bmax {
        let bt = T::lit(b as f64);
        let centre = -(bt * tau.re);
        let half = (cut * y / u).sqrt();
        let (lo, hi) = ((centre - half).floor().to_f64_lossy() as i64, (centre + half).ceil().to_f64_lossy() as i64);
        for a in lo..=hi {
            let re = T::lit(a as f64) + bt * tau.re;
            let im = bt * y;
            total = total + (-(u * (re * re + im * im) / y)).exp();
        }
    }
    total
}

/// Heat trace `Σ e^{−sλ}` of the Laplacian (normalized by [`LAPLACIAN_SCALE`]) on the
/// unit-area torus, from the Poisson-dual lattice sum.
pub fn heat_trace_unit<T: Real>(tau: Complex<T>, s: T) -> Result<T> {
    if !(tau.im > T::zero()) || !(s > T::zero()) {
        return Err(Error::Domain("heat trace needs Im τ > 0 and s > 0".into()));
    }
    let c = T::lit(LAPLACIAN_SCALE);
    let four_pi_s = T::lit(4.0) * T::PI() * s;
    Ok(c / four_pi_s * lattice_gaussian_sum(tau, c / (T::lit(4.0) * s)))
}

/// `ζ(0) = a₀ − dim ker Δ`, with the constant heat coefficient `a₀` read off
/// [`heat_trace_unit`] at small time (it vanishes on a flat torus, so this is `−1`).
pub fn zeta_zero_unit<T: Real>(tau: Complex<T>) -> Result<T> {
    let c = T::lit(LAPLACIAN_SCALE);
    if !(tau.im > T::zero()) {
        return Err(Error::Domain("ζ(0) needs Im τ > 0".into()));
    }
    let (w1, w2) = reduce_basis(Complex::new(T::one(), T::zero()), tau);
    let tau = w2 / w1;
    // after reduction the shortest lattice vector has |γ|² = 1/Im τ; keep e^{−c|γ|²/4s} below e^{−40}
    let s = c / (tau.im * T::lit(4.0 * 40.0));
    let leading = c / (T::lit(4.0) * T::PI() * s);
    Ok(heat_trace_unit(tau, s)? - leading - T::one())
}

/// Complex evaluation of the invariants of a Weierstrass family.
#[derive(Clone, Debug)]
pub struct FamilyEvaluator {
    c4: Vec<Complex<f64>>,
    c6: Vec<Complex<f64>>,
    disc: Vec<Complex<f64>>,
}

fn dense_in_t<K: Field>(p: &MPoly<K>) -> Vec<Complex<f64>> {
    let mut out = vec![Complex::new(0.0, 0.0); p.degree_in(Var::T) as usize + 1];
    for (m, c) in p.terms() {
        let (re, im) = c.to_complex_f64();
        out[m.exp(Var::T) as usize] += Complex::new(re, im);
    }
    out
}

fn horner(c: &[Complex<f64>], t: Complex<f64>) -> Complex<f64> {
    c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, a| acc * t + a)
}

impl FamilyEvaluator {
    pub fn new<K: Field>(m: &WeierstrassModel<K>) -> Self {
        let inv = m.invariants();
        Self { c4: dense_in_t(&inv.c4), c6: dense_in_t(&inv.c6), disc: dense_in_t(&inv.discriminant) }
    }

    /// `(g2, g3) = (c4/12, c6/216)`, the invariants of `η² = 4X³ − g2·X − g3`
    /// with `η = 2y + a1·x + a3`, so that `dX/η` is the invariant differential.
    pub fn g2_g3(&self, t: Complex<f64>) -> (Complex<f64>, Complex<f64>) {
        (horner(&self.c4, t) / 12.0, horner(&self.c6, t) / 216.0)
    }

    pub fn discriminant(&self, t: Complex<f64>) -> Complex<f64> {
        horner(&self.disc, t)
    }

    /// Quillen log-norm of the section `1 ⊗ ω` over the fiber at `t`.
    pub fn sample(&self, t: Complex<f64>) -> Result<QuillenSample<f64>> {
        let d = self.discriminant(t);
        let scale: f64 = self.disc.iter().enumerate().map(|(k, a)| a.norm() * t.norm().powi(k as i32)).sum();
        if d.norm() <= DISCRIMINANT_TOL * scale {
            return Err(Error::Domain(format!("fiber at t = {t} is singular")));
        }
        let (g2, g3) = self.g2_g3(t);
        let torus = periods_agm(g2, g3)?;
        let log_l2 = torus.area.ln();
        let zeta_prime_zero = zeta_prime_zero_flat_torus(torus.tau, torus.area)?;
        Ok(QuillenSample {
            t,
            tau: torus.tau,
            area: torus.area,
            log_l2,
            zeta_prime_zero,
            log_quillen: log_l2 + 0.5 * zeta_prime_zero,
        })
    }
}

/// Quillen log-norm sample of the family `m` at `t`.
pub fn quillen_log_norm<K: Field>(m: &WeierstrassModel<K>, t: Complex<f64>) -> Result<QuillenSample<f64>> {
    FamilyEvaluator::new(m).sample(t)
}

/// Among `τ_red + n` and `−1/τ_red + n` (`|n| ≤ 2`), the representative closest to `prev`.
pub fn track_tau<T: Real>(prev: Complex<T>, tau_reduced: Complex<T>) -> Complex<T> {
    let mut best = tau_reduced;
    let mut best_d = (tau_reduced - prev).norm();
    let inv = -tau_reduced.inv();
    for base in [tau_reduced, inv] {
        for n in -2..=2 {
            let cand = base + Complex::new(T::lit(n as f64), T::zero());
            let d = (cand - prev).norm();
            if d < best_d {
                best = cand;
                best_d = d;
            }
        }
    }
    best
}

/// Samples along a path with `τ` continued by [`track_tau`] from one sample to the next.
pub fn quillen_samples_along<K: Field>(m: &WeierstrassModel<K>, ts: &[Complex<f64>]) -> Result<Vec<QuillenSample<f64>>> {
    let ev = FamilyEvaluator::new(m);
    let mut out: Vec<QuillenSample<f64>> = Vec::with_capacity(ts.len());
    for &t in ts {
        let mut s = ev.sample(t)?;
        if let Some(prev) = out.last() {
            s.tau = track_tau(prev.tau, s.tau);
        }
        out.push(s);
    }
    Ok(out)
}
