//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's algorithms; only its coefficient types and
//! parser are used to build inputs.
#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex;
use num_traits::{One, Zero};
use qdl::algebra::{GaussRational, Var};
use qdl::io::parse_poly;
use qdl::Poly;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

pub struct Germ {
    pub name: &'static str,
    pub expr: &'static str,
    pub mu: usize,
    pub nondegenerate: bool,
}

/// ADE normal forms with their textbook Milnor numbers.
pub fn ade_table() -> Vec<(String, String, usize)> {
    let mut out = Vec::new();
    for n in 1..=8usize {
        out.push((format!("A{n}"), format!("y^2 + x^{}", n + 1), n));
    }
    for n in 4..=8usize {
        out.push((format!("D{n}"), format!("x^2*y + y^{}", n - 1), n));
    }
    out.push(("E6".into(), "x^3 + y^4".into(), 6));
    out.push(("E7".into(), "x^3 + x*y^3".into(), 7));
    out.push(("E8".into(), "x^3 + y^5".into(), 8));
    out
}

/// Plane germs beyond the ADE list. `μ` values are the classical ones; for
/// the degenerate germ the value is frozen from [`truncated_colength`].
pub fn germ_suite() -> Vec<Germ> {
    vec![
        Germ { name: "cusp", expr: "y^2 - x^3", mu: 2, nondegenerate: true },
        Germ { name: "cusp+x4", expr: "y^2 - x^3 - x^4", mu: 2, nondegenerate: true },
        Germ { name: "X9", expr: "x^4 + y^4", mu: 9, nondegenerate: true },
        Germ { name: "T255", expr: "x^2*y^2 + x^5 + y^5", mu: 11, nondegenerate: true },
        Germ { name: "E7", expr: "x^3 + x*y^3", mu: 7, nondegenerate: true },
        Germ { name: "node", expr: "y^2 - x^2", mu: 1, nondegenerate: true },
        Germ { name: "E6'", expr: "y^3 - x^4 + x^2*y^2", mu: 6, nondegenerate: true },
        Germ { name: "y3x5", expr: "y^3 - x^5 + x^2*y^2", mu: 8, nondegenerate: true },
        Germ { name: "W", expr: "(y^2 - x^3)^2 + x^7", mu: 17, nondegenerate: false },
    ]
}

pub fn poly(s: &str) -> Poly {
    parse_poly(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn dense_xy(p: &Poly) -> HashMap<(u32, u32), GaussRational> {
    p.terms().map(|(m, c)| ((m.exp(Var::X), m.exp(Var::Y)), c.clone())).collect()
}

/// Rank of a dense matrix over `Q(i)` by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<GaussRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, pivot);
        let inv = GaussRational::one() / rows[r][col].clone();
        let prow: Vec<GaussRational> = rows[r].iter().map(|c| c.clone() * inv.clone()).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in col..ncols {
                    let v = rows[i][j].clone() - factor.clone() * prow[j].clone();
                    rows[i][j] = v;
                }
            }
        }
        rows[r] = prow;
        r += 1;
    }
    r
}

/// `dim C[x, y] / (I + m^N)` for `I` generated by `gens`, by linear algebra on
/// the monomials of degree `< N`. Equals the local colength once `m^N ⊂ I` locally.
pub fn truncated_colength(gens: &[Poly], n: u32) -> usize {
    let monos: Vec<(u32, u32)> = (0..n).flat_map(|d| (0..=d).map(move |a| (a, d - a))).collect();
    let index: HashMap<(u32, u32), usize> = monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let g = dense_xy(g);
        for &(a, b) in &monos {
            let mut row = vec![GaussRational::zero(); monos.len()];
            let mut any = false;
            for (&(ga, gb), c) in &g {
                if let Some(&j) = index.get(&(ga + a, gb + b)) {
                    row[j] = row[j].clone() + c.clone();
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    monos.len() - rank(rows)
}

pub fn jacobian(f: &Poly) -> Vec<Poly> {
    vec![f.derivative(Var::X), f.derivative(Var::Y)]
}

/// Milnor number by truncated linear algebra, checked stable between two truncations.
pub fn oracle_milnor(f: &Poly, expected_bound: usize) -> usize {
    let j = jacobian(f);
    let a = truncated_colength(&j, expected_bound as u32 + 2);
    let b = truncated_colength(&j, expected_bound as u32 + 3);
    assert_eq!(a, b, "truncated colength not stable");
    a
}

pub fn oracle_tjurina(f: &Poly, expected_bound: usize) -> usize {
    let mut g = jacobian(f);
    g.push(f.clone());
    truncated_colength(&g, expected_bound as u32 + 3)
}

// ---------------------------------------------------------------- dual numbers

#[derive(Clone, Copy, Debug)]
pub struct Dual(pub f64, pub f64);

impl Dual {
    fn add(self, o: Dual) -> Dual {
        Dual(self.0 + o.0, self.1 + o.1)
    }
    fn mul(self, o: Dual) -> Dual {
        Dual(self.0 * o.0, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: Dual) -> Dual {
        Dual(self.0 / o.0, (self.1 * o.0 - self.0 * o.1) / (o.0 * o.0))
    }
    fn scale(self, c: f64) -> Dual {
        Dual(self.0 * c, self.1 * c)
    }
    /// `n^{−s}` for real `n > 0`.
    fn pow_neg(n: f64, s: Dual) -> Dual {
        let v = (-s.0 * n.ln()).exp();
        Dual(v, -v * n.ln() * s.1)
    }
}

/// `ζ(s)` and `ζ'(s)` by Euler–Maclaurin with cutoff 10 and Bernoulli numbers to `B14`.
pub fn zeta_euler_maclaurin(s: f64) -> (f64, f64) {
    const B: [f64; 7] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0];
    let n = 10.0;
    let s = Dual(s, 1.0);
    let mut acc = Dual(0.0, 0.0);
    for k in 1..10 {
        acc = acc.add(Dual::pow_neg(k as f64, s));
    }
    acc = acc.add(Dual::pow_neg(n, Dual(s.0 - 1.0, s.1)).div(Dual(s.0 - 1.0, s.1)));
    acc = acc.add(Dual::pow_neg(n, s).scale(0.5));
    // B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    for (k, b) in B.iter().enumerate() {
        let k = k + 1;
        if k > 1 {
            let j = (2 * k - 3) as f64;
            rising = rising.mul(Dual(s.0 + j, 1.0)).mul(Dual(s.0 + j + 1.0, 1.0));
            fact *= ((2 * k - 1) * (2 * k)) as f64;
        }
        let tail = Dual::pow_neg(n, Dual(s.0 + (2 * k - 1) as f64, 1.0));
        acc = acc.add(rising.mul(tail).scale(b / fact));
    }
    (acc.0, acc.1)
}

// ---------------------------------------------------------------- quadrature

/// Tanh-sinh quadrature on `[a, b]`; tolerates integrable endpoint singularities.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let h: f64 = 1.0 / 64.0;
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for k in -(6 * 64)..=(6 * 64) {
        let x = k as f64 * h;
        let u = 0.5 * PI * x.sinh();
        let w = 0.5 * PI * x.cosh() / u.cosh().powi(2);
        let y = u.tanh();
        // distance to the nearer endpoint, computed without cancellation
        let gap = half / (u.abs().exp() * u.cosh());
        if gap <= 0.0 || w < 1e-300 {
            continue;
        }
        let pt = if y < 0.0 { a + gap } else { b - gap };
        if pt <= a || pt >= b {
            continue;
        }
        sum += w * f(pt);
    }
    sum * h * half
}

// ---------------------------------------------------------------- elliptic

pub fn agm_real(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let (na, nb) = (0.5 * (a + b), (a * b).sqrt());
        a = na;
        b = nb;
    }
    a
}

/// `Γ(1/4)` from `AGM(1, √2)`.
pub fn gamma_quarter() -> f64 {
    ((2.0 * PI).powf(1.5) / agm_real(1.0, 2f64.sqrt())).sqrt()
}

/// `η(i) = Γ(1/4) / (2π^{3/4})`.
pub fn eta_i() -> f64 {
    gamma_quarter() / (2.0 * PI.powf(0.75))
}

/// `∫_0^∞ du / √((u² + a)(u² + b))`, through `u = tan θ`.
fn period_integral(a: f64, b: f64) -> f64 {
    tanh_sinh(
        |th| {
            let (s, c) = th.sin_cos();
            1.0 / ((s * s + a * c * c) * (s * s + b * c * c)).sqrt()
        },
        0.0,
        0.5 * PI,
    )
}

/// Periods `(ω1, ω2)` of `4X³ − g2 X − g3` with three real roots `e1 > e2 > e3`.
pub fn real_periods(e1: f64, e2: f64, e3: f64) -> (f64, f64) {
    (2.0 * period_integral(e1 - e2, e1 - e3), 2.0 * period_integral(e1 - e3, e2 - e3))
}

/// Moves `τ` into `|Re τ| ≤ 1/2, |τ| ≥ 1`.
pub fn to_fundamental_domain(mut tau: Complex<f64>) -> Complex<f64> {
    for _ in 0..100 {
        tau.re -= tau.re.round();
        if tau.norm_sqr() < 1.0 - 1e-15 {
            tau = -tau.inv();
        } else {
            break;
        }
    }
    tau
}

// ---------------------------------------------------------------- flat torus

/// Eigenvalues `4π²|a + bτ|²/(c·Im τ)` of the unit-area torus Laplacian divided by `c`.
pub fn heat_trace_eigen(tau: Complex<f64>, c: f64, s: f64) -> f64 {
    let bound = 60;
    let mut sum = 0.0;
    for a in -bound..=bound {
        for b in -bound..=bound {
            let g = Complex::new(a as f64, 0.0) + tau * b as f64;
            let lambda = 4.0 * PI * PI * g.norm_sqr() / (c * tau.im);
            sum += (-s * lambda).exp();
        }
    }
    sum
}

/// `ζ(0)` from the eigenvalue sum: the constant term of `Θ(s)` minus the zero mode.
pub fn zeta_zero_eigen(tau: Complex<f64>, c: f64) -> f64 {
    let s = 0.002;
    heat_trace_eigen(tau, c, s) - c / (4.0 * PI * s) - 1.0
}

fn lattice_sum_nonzero(tau: Complex<f64>, u: f64) -> f64 {
    // Σ_{γ ≠ 0} exp(−|γ|²/(4u)) over the unit-area lattice
    let bound = 40;
    let mut sum = 0.0;
    for a in -bound..=bound {
        for b in -bound..=bound {
            if a == 0 && b == 0 {
                continue;
            }
            let g = Complex::new(a as f64, 0.0) + tau * b as f64;
            sum += (-g.norm_sqr() / (tau.im * 4.0 * u)).exp();
        }
    }
    sum
}

/// `ζ'(0)` of the unit-area flat torus Laplacian (unscaled) from the heat-trace
/// integral `∫₀¹ E/t + ∫₁^∞ (Θ − 1)/t − 1/(4π) − γ`, `E = Θ − 1/(4πt)`.
pub fn zeta_prime_zero_heat(tau: Complex<f64>) -> f64 {
    let tau = to_fundamental_domain(tau);
    let small = tanh_sinh(|t| if t < 1e-3 { 0.0 } else { lattice_sum_nonzero(tau, t) / (4.0 * PI * t * t) }, 0.0, 1.0);
    let large = tanh_sinh(|t| (heat_trace_eigen(tau, 1.0, t) - 1.0) / t, 1.0, 6.0);
    small + large - 1.0 / (4.0 * PI) - EULER_GAMMA
}

// ---------------------------------------------------------------- fiber area

/// Area of `{y² = x³ + t, |x| < R}` from the angular average
/// `(1/2π)∫ dθ / |a + b e^{iθ}| = 1 / AGM(a + b, |a − b|)`.
pub fn cusp_fiber_area(t: f64, r: f64) -> f64 {
    let t = t.abs();
    let g = |rho: f64| {
        let a = rho.powi(3);
        rho.powi(5) / agm_real(a + t, (a - t).abs())
    };
    let split = t.cbrt();
    let body = if split < r { tanh_sinh(g, 0.0, split) + tanh_sinh(g, split, r) } else { tanh_sinh(g, 0.0, r) };
    2.0 * PI * r * r + 9.0 * PI * body
}
