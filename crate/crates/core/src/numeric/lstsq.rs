//! Dense linear least squares by Householder QR, with a condition estimate
//! from one-sided Jacobi singular values.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct LstsqSolution<T> {
    pub coefficients: Vec<T>,
    /// Root-mean-square of the training residual.
    pub residual_rms: T,
    /// `(σ_max / σ_min)²` of the column-scaled design: the condition number of
    /// the normal equations.
    pub condition: T,
    /// Standard error of each coefficient, from the training residual with
    /// `rows − cols` degrees of freedom (zero for a square system).
    pub standard_errors: Vec<T>,
}

/// Singular values of the `rows × cols` matrix (row-major), descending.
pub fn singular_values<T: Real>(a: &[Vec<T>]) -> Vec<T> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // columns as vectors
    let mut cols: Vec<Vec<T>> = (0..n).map(|j| (0..m).map(|i| a[i][j]).collect()).collect();
    let eps = T::epsilon();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
                for i in 0..m {
                    alpha = alpha + cols[p][i] * cols[p][i];
                    beta = beta + cols[q][i] * cols[q][i];
                    gamma = gamma + cols[p][i] * cols[q][i];
                }
                if gamma.abs() <= eps * (alpha * beta).sqrt() || gamma == T::zero() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let u = cols[p][i];
                    let v = cols[q][i];
                    cols[p][i] = c * u - s * v;
                    cols[q][i] = s * u + c * v;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = cols.iter().map(|c| c.iter().fold(T::zero(), |s, &v| s + v * v).sqrt()).collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

/// Minimizes `‖A·c − b‖₂` for `A` given row-major (`rows ≥ cols`).
///
/// Columns are scaled to unit norm before factorization; a numerically
/// rank-deficient design is a fit error.
pub fn lstsq<T: Real>(a: &[Vec<T>], b: &[T]) -> Result<LstsqSolution<T>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m != b.len() {
        return Err(Error::Internal("design and data lengths differ".into()));
    }
    if n == 0 || m < n {
        return Err(Error::Fit(format!("rank-deficient design: {m} equations for {n} unknowns")));
    }
    if a.iter().flatten().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::Fit("non-finite entries in the least-squares system".into()));
    }

    let scale: Vec<T> = (0..n)
        .map(|j| {
            let s = a.iter().fold(T::zero(), |acc, row| acc + row[j] * row[j]).sqrt();
            if s > T::zero() { s } else { T::one() }
        })
        .collect();
    let scaled: Vec<Vec<T>> = a.iter().map(|row| row.iter().zip(&scale).map(|(&v, &s)| v / s).collect()).collect();

    let sv = singular_values(&scaled);
    let (smax, smin) = (sv[0], sv[n - 1]);
    let tiny = T::epsilon() * T::from_usize_lossy(m.max(n)) * T::lit(10.0);
    if smin <= tiny * smax {
        return Err(Error::Fit("rank-deficient design matrix".into()));
    }
    let condition = (smax / smin) * (smax / smin);

    // Householder QR applied to [A | b]
    let mut r = scaled;
    let mut y = b.to_vec();
    for k in 0..n {
        let norm = (k..m).fold(T::zero(), |s, i| s + r[i][k] * r[i][k]).sqrt();
        if norm == T::zero() {
            return Err(Error::Fit("rank-deficient design matrix".into()));
        }
        let alpha = if r[k][k] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (k..m).map(|i| r[i][k]).collect();
        v[0] = v[0] - alpha;
        let vnorm2 = v.iter().fold(T::zero(), |s, &x| s + x * x);
        if vnorm2 > T::zero() {
            for j in k..n {
                let dot = (k..m).fold(T::zero(), |s, i| s + v[i - k] * r[i][j]);
                let f = T::lit(2.0) * dot / vnorm2;
                for i in k..m {
                    r[i][j] = r[i][j] - f * v[i - k];
                }
            }
            let dot = (k..m).fold(T::zero(), |s, i| s + v[i - k] * y[i]);
            let f = T::lit(2.0) * dot / vnorm2;
            for i in k..m {
                y[i] = y[i] - f * v[i - k];
            }
        }
    }
    let mut c = vec![T::zero(); n];
    for k in (0..n).rev() {
        let s = (k + 1..n).fold(y[k], |s, j| s - r[k][j] * c[j]);
        c[k] = s / r[k][k];
    }
    let coefficients: Vec<T> = c.iter().zip(&scale).map(|(&v, &s)| v / s).collect();
    let ss = a.iter().zip(b).fold(T::zero(), |acc, (row, &bi)| {
        let pred = row.iter().zip(&coefficients).fold(T::zero(), |s, (&x, &w)| s + x * w);
        acc + (pred - bi) * (pred - bi)
    });
    let residual_rms = (ss / T::from_usize_lossy(m)).sqrt();
    // diag (AᵀA)⁻¹ = row norms² of R⁻¹ for the scaled design
    let mut rinv = vec![vec![T::zero(); n]; n];
    for j in 0..n {
        rinv[j][j] = T::one() / r[j][j];
        for i in (0..j).rev() {
            let s = (i + 1..=j).fold(T::zero(), |s, k| s + r[i][k] * rinv[k][j]);
            rinv[i][j] = -s / r[i][i];
        }
    }
    let sigma = if m > n { (ss / T::from_usize_lossy(m - n)).sqrt() } else { T::zero() };
    let standard_errors = (0..n)
        .map(|j| sigma * rinv[j].iter().fold(T::zero(), |s, &v| s + v * v).sqrt() / scale[j])
        .collect();
    Ok(LstsqSolution { coefficients, residual_rms, condition, standard_errors })
}
