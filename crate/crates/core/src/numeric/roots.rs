//! Roots of complex polynomials (Aberth–Ehrlich iteration).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

fn horner<T: Real>(c: &[Complex<T>], z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut p = Complex::new(T::zero(), T::zero());
    let mut dp = p;
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + *a;
    }
    (p, dp)
}

/// All complex roots of `Σ c_k z^k` (constant term first), with multiplicity.
pub fn polynomial_roots<T: Real>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|a| a.norm() == T::zero()) {
        c.pop();
    }
    if c.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(Error::Domain("non-finite polynomial coefficient".into()));
    }
    let n = c.len().saturating_sub(1);
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-c[0] / c[1]]),
        2 => {
            let (a, b, cc) = (c[2], c[1], c[0]);
            let disc = (b * b - a * cc * T::lit(4.0)).sqrt();
            // avoid cancellation
            let q = if (b.conj() * disc).re >= T::zero() { -(b + disc) * T::lit(0.5) } else { -(b - disc) * T::lit(0.5) };
            if q.norm() == T::zero() {
                return Ok(vec![q, q]);
            }
            return Ok(vec![q / a, cc / q]);
        }
        _ => {}
    }
    let lead = c[n];
    let monic: Vec<Complex<T>> = c.iter().map(|a| *a / lead).collect();
    // Cauchy bound for the initial circle
    let bound = T::one() + monic[..n].iter().fold(T::zero(), |m, a| m.max(a.norm()));
    let radius = bound * T::lit(0.5);
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let theta = T::lit(2.0) * T::PI() * T::from_usize_lossy(k) / T::from_usize_lossy(n) + T::lit(0.4);
            Complex::from_polar(radius, theta)
        })
        .collect();
    let tol = T::epsilon() * T::lit(4.0);
    for _ in 0..500 {
        let mut max_step = T::zero();
        for i in 0..n {
            let (p, dp) = horner(&monic, z[i]);
            if p.norm() == T::zero() {
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex::new(T::zero(), T::zero());
            for j in 0..n {
                if j != i {
                    sum = sum + (z[i] - z[j]).inv();
                }
            }
            let step = ratio / (Complex::new(T::one(), T::zero()) - ratio * sum);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] = z[i] - step;
                max_step = max_step.max(step.norm() / (T::one() + z[i].norm()));
            }
        }
        if max_step <= tol {
            return Ok(z);
        }
    }
    // multiple roots converge linearly; accept if residuals are small
    let worst = z.iter().fold(T::zero(), |m, &r| m.max(horner(&monic, r).0.norm()));
    if worst <= T::epsilon().sqrt() * bound.powi(n as i32) {
        Ok(z)
    } else {
        Err(Error::Accuracy { message: "polynomial root iteration did not converge".into(), achieved: worst.to_f64_lossy() })
    }
}
