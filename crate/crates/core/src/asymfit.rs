//! Fiber integrals near an isolated plane-curve singularity and least-squares
//! analysis of their small-`|t|` behavior: log-slope fits, fits against a
//! declared exponent basis, and a model-free exponent scan.

use std::cmp::Ordering;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::rational::serde_str;
use crate::algebra::{discriminant, quasi_homogeneous_weights, rational_to_f64, MPoly, Rational, Var};
use crate::error::{Error, Result};
use crate::numeric::lstsq::lstsq;
use crate::numeric::quadrature::{integrate_with_breaks, QuadOptions};
use crate::numeric::roots::polynomial_roots;
use crate::scalar::{Field, Real};

/// Two candidate exponents closer than this make the basis collinear.
pub const COLLISION_GAP: f64 = 1e-3;
/// Upper bound on the number of non-constant basis terms in [`fit_exponents`].
pub const MAX_BASIS_TERMS: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplingPattern<T> {
    /// Circle radii, strictly decreasing.
    pub radii: Vec<T>,
    pub angles_per_circle: usize,
    /// Free-form notes, e.g. contour perturbations applied by the integrator.
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Samples<T> {
    /// `(t, F(t))`, sorted by decreasing radius then angle.
    pub points: Vec<(Complex<T>, T)>,
    pub pattern: SamplingPattern<T>,
}

impl<T: Real> Samples<T> {
    /// Validates finiteness and sorts; radii are read off the points.
    pub fn new(mut points: Vec<(Complex<T>, T)>, angles_per_circle: usize, notes: Vec<String>) -> Result<Self> {
        if points.iter().any(|(t, v)| !v.is_finite() || !t.re.is_finite() || !t.im.is_finite()) {
            return Err(Error::Domain("non-finite sample".into()));
        }
        points.sort_by(|a, b| cmp_samples(a.0, b.0));
        let mut radii: Vec<T> = Vec::new();
        for (t, _) in &points {
            let r = t.norm();
            if radii.last().is_none_or(|&last| !same_radius(last, r)) {
                radii.push(r);
            }
        }
        Ok(Self { points, pattern: SamplingPattern { radii, angles_per_circle, notes } })
    }

    /// `(radius, mean value)` per circle, radii decreasing.
    pub fn circle_means(&self) -> Vec<(T, T)> {
        let mut out: Vec<(T, T, usize)> = Vec::new();
        for (t, v) in &self.points {
            let r = t.norm();
            match out.last_mut() {
                Some(last) if same_radius(last.0, r) => {
                    last.1 = last.1 + *v;
                    last.2 += 1;
                }
                _ => out.push((r, *v, 1)),
            }
        }
        out.into_iter().map(|(r, s, n)| (r, s / T::from_usize_lossy(n))).collect()
    }

    /// Samples on the circle of smallest radius.
    fn smallest_circle(&self) -> Vec<(Complex<T>, T)> {
        let rmin = *self.pattern.radii.last().expect("nonempty");
        self.points.iter().copied().filter(|(t, _)| same_radius(t.norm(), rmin)).collect()
    }

    /// Discrete Fourier coefficients `c_k = mean_j F(t_j) e^{−ik·arg t_j}` per circle, `|k| ≤ max_k`.
    pub fn angular_modes(&self, max_k: usize) -> Vec<(T, Vec<(i64, Complex<T>)>)> {
        let mut out = Vec::new();
        for &r in &self.pattern.radii {
            let pts: Vec<_> = self.points.iter().filter(|(t, _)| same_radius(t.norm(), r)).collect();
            let n = T::from_usize_lossy(pts.len());
            let mut modes = Vec::new();
            for k in -(max_k as i64)..=(max_k as i64) {
                let mut acc = Complex::new(T::zero(), T::zero());
                for (t, v) in &pts {
                    let phase = -t.arg() * T::lit(k as f64);
                    acc = acc + Complex::from_polar(*v, phase);
                }
                modes.push((k, acc / n));
            }
            out.push((r, modes));
        }
        out
    }
}

fn same_radius<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= T::lit(1e-12) * a.abs().max(b.abs())
}

fn cmp_samples<T: Real>(a: Complex<T>, b: Complex<T>) -> Ordering {
    let (ra, rb) = (a.norm(), b.norm());
    if same_radius(ra, rb) {
        a.arg().partial_cmp(&b.arg()).unwrap_or(Ordering::Equal)
    } else {
        rb.partial_cmp(&ra).unwrap_or(Ordering::Equal)
    }
}

/// Evaluates `f` on `angles` equally spaced points of each circle, in parallel;
/// the result does not depend on completion order.
pub fn sample_circles<T, F>(radii: &[T], angles: usize, phase: T, f: F) -> Result<Samples<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<T> + Sync,
{
    if angles == 0 || radii.is_empty() {
        return Err(Error::Domain("need at least one radius and one angle".into()));
    }
    for w in radii.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::Domain("radii must be strictly decreasing".into()));
        }
    }
    let ts: Vec<Complex<T>> = radii
        .iter()
        .flat_map(|&r| {
            (0..angles).map(move |k| {
                let theta = phase + T::lit(2.0) * T::PI() * T::from_usize_lossy(k) / T::from_usize_lossy(angles);
                Complex::from_polar(r, theta)
            })
        })
        .collect();
    let values: Vec<Result<(Complex<T>, T)>> = ts.par_iter().map(|&t| f(t).map(|v| (t, v))).collect();
    let points = values.into_iter().collect::<Result<Vec<_>>>()?;
    Samples::new(points, angles, Vec::new())
}

/// Geometric progression of `count` radii from `start` down to `end`.
pub fn geometric_radii(start: f64, end: f64, count: usize) -> Result<Vec<f64>> {
    if !(start > end && end > 0.0) || count < 2 {
        return Err(Error::Domain("radii need start > end > 0 and count ≥ 2".into()));
    }
    let ratio = (end / start).powf(1.0 / (count - 1) as f64);
    Ok((0..count).map(|k| if k + 1 == count { end } else { start * ratio.powi(k as i32) }).collect())
}

// ---------------------------------------------------------------------------
// fiber integrals

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Integrand {
    /// Euclidean area form of `C²` restricted to the fiber.
    EuclideanArea,
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct FiberIntegral {
    pub value: f64,
    pub error_estimate: f64,
    /// Radius actually used (after any perturbation away from branch points).
    pub radius: f64,
    pub perturbed: bool,
}

/// Precomputed data for integrating over fibers `{f = t}` of a germ monic in `y`.
#[derive(Clone, Debug)]
pub struct FiberIntegrator {
    /// `f`, `f_x`, `f_y` as polynomials in `y` with coefficients in `x` (dense, complex).
    f: Vec<Vec<Complex<f64>>>,
    fx: Vec<Vec<Complex<f64>>>,
    fy: Vec<Vec<Complex<f64>>>,
    /// `Disc_y(f − t)` as coefficients in `x` of polynomials in `t`.
    disc: Vec<Vec<Complex<f64>>>,
    weight_x: Option<f64>,
}

fn dense_xy<K: Field>(p: &MPoly<K>) -> Vec<Vec<Complex<f64>>> {
    let dy = p.degree_in(Var::Y) as usize;
    let dx = p.degree_in(Var::X) as usize;
    let mut out = vec![vec![Complex::new(0.0, 0.0); dx + 1]; dy + 1];
    for (m, c) in p.terms() {
        let (re, im) = c.to_complex_f64();
        out[m.exp(Var::Y) as usize][m.exp(Var::X) as usize] += Complex::new(re, im);
    }
    out
}

fn dense_xt<K: Field>(p: &MPoly<K>) -> Vec<Vec<Complex<f64>>> {
    let dx = p.degree_in(Var::X) as usize;
    let dt = p.degree_in(Var::T) as usize;
    let mut out = vec![vec![Complex::new(0.0, 0.0); dt + 1]; dx + 1];
    for (m, c) in p.terms() {
        let (re, im) = c.to_complex_f64();
        out[m.exp(Var::X) as usize][m.exp(Var::T) as usize] += Complex::new(re, im);
    }
    out
}

fn horner(c: &[Complex<f64>], z: Complex<f64>) -> Complex<f64> {
    c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, a| acc * z + a)
}

fn eval_in_y(p: &[Vec<Complex<f64>>], x: Complex<f64>, y: Complex<f64>) -> Complex<f64> {
    p.iter().rev().fold(Complex::new(0.0, 0.0), |acc, cx| acc * y + horner(cx, x))
}

impl FiberIntegrator {
    pub fn new<K: Field>(f: &MPoly<K>) -> Result<Self> {
        f.require_vars(&[Var::X, Var::Y])?;
        let d = f.degree_in(Var::Y);
        if d == 0 {
            return Err(Error::Precondition("f must involve y".into()));
        }
        let lead = f.coeff_of_power(Var::Y, d);
        if lead.variables().contains(&Var::X) {
            return Err(Error::Precondition("f must be monic in y up to a constant (branched cover of the x-disc)".into()));
        }
        let ft = f - &MPoly::t();
        let disc = discriminant(&ft, Var::Y)?;
        let weight_x = quasi_homogeneous_weights(f).ok().flatten().map(|w| rational_to_f64(&w.w1));
        Ok(Self {
            f: dense_xy(f),
            fx: dense_xy(&f.derivative(Var::X)),
            fy: dense_xy(&f.derivative(Var::Y)),
            disc: dense_xt(&disc),
            weight_x,
        })
    }

    /// Branch points of the projection `{f = t} → x`.
    pub fn branch_points(&self, t: Complex<f64>) -> Result<Vec<Complex<f64>>> {
        let coeffs: Vec<Complex<f64>> = self.disc.iter().map(|ct| horner(ct, t)).collect();
        if coeffs.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::Domain(format!("fiber at t = {t} is singular along a curve")));
        }
        polynomial_roots(&coeffs)
    }

    /// Sum over the `y`-sheets above `x` of `1 + |f_x/f_y|²`.
    pub fn density(&self, x: Complex<f64>, t: Complex<f64>) -> Result<f64> {
        let mut coeffs: Vec<Complex<f64>> = self.f.iter().map(|cx| horner(cx, x)).collect();
        coeffs[0] -= t;
        let ys = polynomial_roots(&coeffs)?;
        let mut s = 0.0;
        for y in ys {
            let fx = eval_in_y(&self.fx, x, y);
            let fy = eval_in_y(&self.fy, x, y);
            s += 1.0 + fx.norm_sqr() / fy.norm_sqr();
        }
        Ok(s)
    }

    /// `∫_{f = t, |x| ≤ radius}` of the chosen form, to absolute accuracy `tol`.
    pub fn integrate(&self, t: Complex<f64>, radius: f64, integrand: Integrand, tol: f64) -> Result<FiberIntegral> {
        let Integrand::EuclideanArea = integrand;
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Domain("radius must be positive".into()));
        }
        if let Some(w1) = self.weight_x {
            let bound = radius.powf(1.0 / w1) / 4.0;
            if t.norm() > bound {
                return Err(Error::Precondition(format!("|t| = {} exceeds radius^(1/w1)/4 = {bound}", t.norm())));
            }
        }
        let branch = self.branch_points(t)?;
        let (radius, perturbed) = avoid_branch_radius(radius, &branch);

        let mut radial_breaks: Vec<f64> = branch.iter().map(|b| b.norm()).filter(|&r| r > 0.0 && r < radius).collect();
        radial_breaks.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        radial_breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        let angular_breaks: Vec<f64> = branch
            .iter()
            .filter(|b| b.norm() > 0.0)
            .map(|b| b.arg().rem_euclid(2.0 * std::f64::consts::PI))
            .collect();

        let area_scale = std::f64::consts::PI * radius * radius;
        let outer_opts = QuadOptions { abs_tol: tol, rel_tol: 0.0, max_intervals: 4000 };
        // The angular integral diverges like log|ρ − ρ_b| at a branch radius ρ_b, where the
        // outer rule also puts little weight; the inner tolerance relaxes like
        // sqrt(radius/|ρ − ρ_b|), which keeps the weighted sum over dyadic shells bounded.
        let relax = |rho: f64| {
            let d = radial_breaks.iter().fold(radius, |m, &b| m.min((rho - b).abs())).max(f64::MIN_POSITIVE);
            (radius / d).sqrt()
        };

        let failure: std::cell::RefCell<Option<Error>> = std::cell::RefCell::new(None);
        let inner_err = std::cell::Cell::new(0.0f64);
        let outer = integrate_with_breaks(
            |rho: f64| {
                let scale = relax(rho);
                let inner_opts = QuadOptions { abs_tol: 0.3 * tol * scale / (radius * rho), rel_tol: 0.0, max_intervals: 1000 };
                let res = integrate_with_breaks(
                    |theta: f64| {
                        let x = Complex::from_polar(rho, theta);
                        match self.density(x, t) {
                            Ok(v) => v,
                            Err(e) => {
                                failure.borrow_mut().get_or_insert(e);
                                0.0
                            }
                        }
                    },
                    0.0,
                    2.0 * std::f64::consts::PI,
                    &angular_breaks,
                    inner_opts,
                );
                inner_err.set(inner_err.get().max(res.error * radius * rho / scale));
                res.value * rho
            },
            0.0,
            radius,
            &radial_breaks,
            outer_opts,
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        let error_estimate = outer.error + inner_err.get();
        // The inner proxy is a per-node bound taken without the outer weights and
        // overstates the total by a large factor near branch radii.
        let floor = tol.max(1e-14 * area_scale);
        if !outer.converged || !outer.value.is_finite() || inner_err.get() > 100.0 * floor {
            return Err(Error::Accuracy { message: "adaptive fiber quadrature did not converge".into(), achieved: error_estimate });
        }
        Ok(FiberIntegral { value: outer.value, error_estimate, radius, perturbed })
    }
}

/// Moves the radius by at most 1% when a branch point sits on the contour.
fn avoid_branch_radius(radius: f64, branch: &[Complex<f64>]) -> (f64, bool) {
    let clear = |r: f64| branch.iter().all(|b| (b.norm() - r).abs() > 1e-3 * r);
    if clear(radius) {
        return (radius, false);
    }
    for k in 1..=10 {
        for s in [1.0, -1.0] {
            let r = radius * (1.0 + s * 0.001 * k as f64);
            if clear(r) {
                return (r, true);
            }
        }
    }
    (radius, false)
}

/// `∫` of the Euclidean area form over `{f = t} ∩ {|x| ≤ radius}`, summed over `y`-sheets.
pub fn integrate_milnor_fiber<K: Field>(f: &MPoly<K>, t: Complex<f64>, radius: f64, integrand: Integrand, tol: f64) -> Result<FiberIntegral> {
    FiberIntegrator::new(f)?.integrate(t, radius, integrand, tol)
}

// ---------------------------------------------------------------------------
// fits

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum SlopeModel {
    /// `c₁·log|t| + c₀`
    SlopeConst,
    /// `c₁·log|t| + c₀ + c₂·log log(1/|t|)`
    SlopeConstLogLog,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisTerm {
    Constant,
    LogAbsT,
    LogLog,
    /// `t^m · conj(t)^{m'} · |t|^r · (log|t|)^h`; after angle averaging only `m = m'` survives,
    /// entering through `exponent = r + m + m'`.
    Power {
        m: u32,
        m_bar: u32,
        #[serde(with = "serde_str")]
        r: Rational,
        h: u32,
    },
}

impl BasisTerm {
    fn eval<T: Real>(&self, radius: T) -> T {
        let l = radius.ln();
        match self {
            BasisTerm::Constant => T::one(),
            BasisTerm::LogAbsT => l,
            BasisTerm::LogLog => (-l).ln(),
            BasisTerm::Power { m, m_bar, r, h } => {
                let e = T::lit(rational_to_f64(r)) + T::from_usize_lossy((*m + *m_bar) as usize);
                radius.powf(e) * l.powi(*h as i32)
            }
        }
    }

    /// Total `|t|`-exponent of a power term.
    pub fn exponent(&self) -> Option<Rational> {
        match self {
            BasisTerm::Power { m, m_bar, r, .. } => Some(r + Rational::from_integer(((m + m_bar) as i64).into())),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct FitResult<T> {
    pub basis: Vec<BasisTerm>,
    pub coefficients: Vec<T>,
    /// Whether each coefficient clears the noise threshold (always true for slope fits).
    pub significant: Vec<bool>,
    /// RMS residual on the held-out smallest-radius circle.
    pub residual_rms: T,
    pub training_rms: T,
    /// Condition number of the (column-scaled) normal equations.
    pub condition_estimate: T,
}

impl<T: Real> FitResult<T> {
    pub fn coefficient(&self, term: &BasisTerm) -> Option<T> {
        self.basis.iter().position(|b| b == term).map(|k| self.coefficients[k])
    }

    /// Smallest exponent among significant power terms.
    pub fn leading_exponent(&self) -> Option<Rational> {
        self.basis
            .iter()
            .zip(&self.significant)
            .filter(|(_, &s)| s)
            .filter_map(|(b, _)| b.exponent())
            .min()
    }
}

fn split_held_out<T: Real>(s: &Samples<T>) -> Result<(Vec<(T, T)>, Vec<(T, T)>)> {
    let means = s.circle_means();
    if means.len() < 2 {
        return Err(Error::Fit("rank-deficient design: a single radius".into()));
    }
    if means.len() < 4 {
        return Err(Error::Precondition(format!("fits need at least 4 circles, got {}", means.len())));
    }
    let train = means[..means.len() - 1].to_vec();
    let held: Vec<(T, T)> = s.smallest_circle().into_iter().map(|(t, v)| (t.norm(), v)).collect();
    Ok((train, held))
}

fn fit_basis<T: Real>(s: &Samples<T>, basis: Vec<BasisTerm>) -> Result<(FitResult<T>, Vec<(T, T)>)> {
    fit_basis_with_errors(s, basis).map(|(f, t, _)| (f, t))
}

/// Fits on all but the smallest circle; returns the training means and standard errors too.
fn fit_basis_with_errors<T: Real>(s: &Samples<T>, basis: Vec<BasisTerm>) -> Result<(FitResult<T>, Vec<(T, T)>, Vec<T>)> {
    let (train, held) = split_held_out(s)?;
    if train.len() < basis.len() {
        return Err(Error::Fit(format!("{} training circles for {} basis terms", train.len(), basis.len())));
    }
    let a: Vec<Vec<T>> = train.iter().map(|&(r, _)| basis.iter().map(|b| b.eval(r)).collect()).collect();
    let b: Vec<T> = train.iter().map(|&(_, v)| v).collect();
    let sol = lstsq(&a, &b)?;
    let predict = |r: T| basis.iter().zip(&sol.coefficients).fold(T::zero(), |acc, (bt, &c)| acc + c * bt.eval(r));
    let ss = held.iter().fold(T::zero(), |acc, &(r, v)| {
        let e = predict(r) - v;
        acc + e * e
    });
    let residual_rms = (ss / T::from_usize_lossy(held.len())).sqrt();
    let n = basis.len();
    Ok((
        FitResult {
            basis,
            coefficients: sol.coefficients,
            significant: vec![true; n],
            residual_rms,
            training_rms: sol.residual_rms,
            condition_estimate: sol.condition,
        },
        train,
        sol.standard_errors,
    ))
}

/// Least-squares fit of the angle-averaged values against `log|t|` (and optionally
/// `log log(1/|t|)`); the smallest circle is held out for the residual.
pub fn fit_log_slope<T: Real>(s: &Samples<T>, model: SlopeModel) -> Result<FitResult<T>> {
    let mut basis = vec![BasisTerm::LogAbsT, BasisTerm::Constant];
    if model == SlopeModel::SlopeConstLogLog {
        if s.pattern.radii.first().is_some_and(|&r| r >= T::one()) {
            return Err(Error::Domain("log log(1/|t|) needs |t| < 1".into()));
        }
        basis.push(BasisTerm::LogLog);
    }
    Ok(fit_basis(s, basis)?.0)
}

/// Fit over `{1} ∪ {|t|^e (log|t|)^h : e ∈ candidates, h ≤ max_h}`.
///
/// A term is significant when its coefficient exceeds ten standard errors and
/// its largest contribution exceeds ten times the residual. Candidate
/// exponents are nearly collinear, so insignificant terms are removed one at
/// a time (weakest first) and the rest refitted; removed terms report zero.
pub fn fit_exponents<T: Real>(s: &Samples<T>, candidates: &[Rational], max_h: u32) -> Result<FitResult<T>> {
    let mut exps: Vec<Rational> = candidates.to_vec();
    exps.sort();
    exps.dedup();
    for w in exps.windows(2) {
        if rational_to_f64(&(&w[1] - &w[0])) < COLLISION_GAP {
            return Err(Error::Conditioning(format!("basis collision: exponents {} and {} are within {COLLISION_GAP}", w[0], w[1])));
        }
    }
    // truncation by magnitude at the largest radius keeps the smallest exponents
    let per_exp = max_h as usize + 1;
    exps.truncate((MAX_BASIS_TERMS / per_exp).max(1));

    let mut basis = vec![BasisTerm::Constant];
    for e in &exps {
        for h in 0..=max_h {
            basis.push(BasisTerm::Power { m: 0, m_bar: 0, r: e.clone(), h });
        }
    }
    let (full, _) = fit_basis(s, basis.clone())?;
    let ten = T::lit(10.0);
    let mut active: Vec<usize> = (0..basis.len()).collect();
    loop {
        let sub: Vec<BasisTerm> = active.iter().map(|&k| basis[k].clone()).collect();
        let (fit, train, se) = fit_basis_with_errors(s, sub)?;
        let noise = fit.residual_rms.max(fit.training_rms).max(T::epsilon());
        let score = |j: usize| -> T {
            let c = fit.coefficients[j];
            let peak = train.iter().fold(T::zero(), |m, &(r, _)| m.max((c * fit.basis[j].eval(r)).abs()));
            let t_stat = if se[j] > T::zero() { c.abs() / se[j] } else { T::infinity() };
            (t_stat / ten).min(peak / (ten * noise))
        };
        let weakest = (1..fit.basis.len())
            .map(|j| (j, score(j)))
            .filter(|&(_, sc)| sc < T::one())
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal));
        match weakest {
            Some((j, _)) => {
                active.remove(j);
            }
            None => {
                let mut coefficients = vec![T::zero(); basis.len()];
                let mut significant = vec![false; basis.len()];
                for (j, &k) in active.iter().enumerate() {
                    coefficients[k] = fit.coefficients[j];
                    significant[k] = true;
                }
                return Ok(FitResult {
                    basis,
                    coefficients,
                    significant,
                    residual_rms: fit.residual_rms,
                    training_rms: fit.training_rms,
                    condition_estimate: full.condition_estimate,
                });
            }
        }
    }
}

/// Whether `e = r + k` for some Barlet exponent `r` and integer `k ≥ 0`, or `e ∈ N`.
pub fn in_predicted_set(e: &Rational, barlet: &[Rational]) -> bool {
    if e.is_integer() && *e >= Rational::from_integer(0.into()) {
        return true;
    }
    barlet.iter().any(|r| {
        let d = e - r;
        d.is_integer() && d >= Rational::from_integer(0.into())
    })
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct ScanResult<T> {
    /// Slope of `log|F − F̂(0)|` against `log|t|`.
    pub exponent: T,
    /// Bootstrap standard error of the exponent.
    pub std_error: T,
    /// Exponent of the best `F̂(0) + a·|t|^e` model.
    pub model_exponent: T,
    /// Extrapolated constant `F̂(0)`.
    pub constant: T,
    /// `|t|^e (a + b·log|t|)` fits far better than a pure power.
    pub log_correction: bool,
    pub residual_rms: T,
}

/// `(sse, [F0, a, (b)])` of the linear fit at fixed exponent.
fn scan_sse<T: Real>(data: &[(T, T)], e: T, with_log: bool) -> Option<(T, Vec<T>)> {
    let a: Vec<Vec<T>> = data
        .iter()
        .map(|&(r, _)| {
            let p = r.powf(e);
            if with_log { vec![T::one(), p, p * r.ln()] } else { vec![T::one(), p] }
        })
        .collect();
    let b: Vec<T> = data.iter().map(|&(_, v)| v).collect();
    let sol = lstsq(&a, &b).ok()?;
    let n = T::from_usize_lossy(data.len());
    Some((sol.residual_rms * sol.residual_rms * n, sol.coefficients))
}

fn minimize_exponent<T: Real>(data: &[(T, T)], lo: T, hi: T, step: T, with_log: bool) -> Option<T> {
    let sse = |e: T| scan_sse(data, e, with_log).map_or(T::infinity(), |s| s.0);
    let mut best = lo;
    let mut best_v = T::infinity();
    let mut e = lo;
    while e <= hi {
        let v = sse(e);
        if v < best_v {
            best_v = v;
            best = e;
        }
        e = e + step;
    }
    if !best_v.is_finite() {
        return None;
    }
    // golden section on the bracketing cell
    let (mut a, mut b) = ((best - step).max(lo * T::lit(0.5)), best + step);
    let g = T::lit(0.618_033_988_749_894_9);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (sse(c), sse(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = sse(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = sse(d);
        }
        if (b - a).abs() < T::lit(1e-10) {
            break;
        }
    }
    Some((a + b) * T::lit(0.5))
}

/// Model-free estimate of the leading non-constant exponent of the
/// angle-averaged data, with a bootstrap error bar from `seed`.
pub fn exponent_scan<T: Real>(s: &Samples<T>, seed: u64) -> Result<ScanResult<T>> {
    let data = s.circle_means();
    if data.len() < 6 {
        return Err(Error::Precondition(format!("exponent scan needs at least 6 radii, got {}", data.len())));
    }
    let (rmax, rmin) = (data[0].0, data[data.len() - 1].0);
    if rmax / rmin < T::lit(8.0) * (T::one() - T::lit(1e-9)) {
        return Err(Error::Precondition("exponent scan needs radii spanning a factor of at least 8".into()));
    }
    let (lo, hi, step) = (T::lit(0.01), T::lit(4.0), T::lit(0.01));
    let fail = || Error::Fit("scan inconclusive: no admissible exponent".into());
    let e_pow = minimize_exponent(&data, lo, hi, step, false).ok_or_else(fail)?;
    let (sse_pow, coef) = scan_sse(&data, e_pow, false).ok_or_else(fail)?;
    let e_log = minimize_exponent(&data, lo, hi, step, true).ok_or_else(fail)?;
    let (sse_log, _) = scan_sse(&data, e_log, true).ok_or_else(fail)?;

    let mean = data.iter().fold(T::zero(), |a, &(_, v)| a + v) / T::from_usize_lossy(data.len());
    let spread = data.iter().fold(T::zero(), |a, &(_, v)| a + (v - mean) * (v - mean));
    let log_correction = sse_pow > spread * T::lit(1e-16) && sse_log < sse_pow * T::lit(1e-4);

    let constant = coef[0];
    // |F − F̂(0)| must decay monotonically as the radius shrinks
    let dev: Vec<(T, T)> = data.iter().map(|&(r, v)| (r, (v - constant).abs())).collect();
    if dev.windows(2).any(|w| !(w[1].1 < w[0].1)) || dev.iter().any(|&(_, d)| !(d > T::zero())) {
        return Err(Error::Fit("scan inconclusive: |F − F(0)| does not decay monotonically".into()));
    }
    let a: Vec<Vec<T>> = dev.iter().map(|&(r, _)| vec![r.ln(), T::one()]).collect();
    let b: Vec<T> = dev.iter().map(|&(_, d)| d.ln()).collect();
    let reg = lstsq(&a, &b)?;
    let exponent = if log_correction { e_log } else { reg.coefficients[0] };

    // residual bootstrap around the power model
    let model = |r: T| coef[0] + coef[1] * r.powf(e_pow);
    let resid: Vec<T> = data.iter().map(|&(r, v)| v - model(r)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws: Vec<T> = Vec::new();
    let window = T::lit(0.25);
    for _ in 0..100 {
        let boot: Vec<(T, T)> = data.iter().map(|&(r, _)| (r, model(r) + resid[rng.random_range(0..resid.len())])).collect();
        let local_lo = (e_pow - window).max(lo);
        if let Some(e) = minimize_exponent(&boot, local_lo, e_pow + window, step, false) {
            draws.push(e);
        }
    }
    let n = T::from_usize_lossy(draws.len().max(1));
    let m = draws.iter().fold(T::zero(), |a, &e| a + e) / n;
    let var = draws.iter().fold(T::zero(), |a, &e| a + (e - m) * (e - m)) / n;
    let residual_rms = (sse_pow / T::from_usize_lossy(data.len())).sqrt();
    Ok(ScanResult { exponent, std_error: var.sqrt(), model_exponent: e_pow, constant, log_correction, residual_rms })
}
