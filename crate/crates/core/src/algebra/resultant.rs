//! Resultants and discriminants with respect to one variable.

use super::monomial::Var;
use super::poly::MPoly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Coefficients of `p` as a polynomial in `v`, highest power first.
fn coefficients_in<K: Field>(p: &MPoly<K>, v: Var) -> Vec<MPoly<K>> {
    let d = p.degree_in(v);
    (0..=d).rev().map(|k| p.coeff_of_power(v, k)).collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
fn bareiss_det<K: Field>(mut a: Vec<Vec<MPoly<K>>>) -> Result<MPoly<K>> {
    let n = a.len();
    if n == 0 {
        return Ok(MPoly::one());
    }
    let mut sign_flip = false;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(MPoly::zero());
            };
            a.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Internal("Bareiss step not exact".into()))?;
            }
            a[i][k] = MPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign_flip { -det } else { det })
}

/// Sylvester resultant of `p` and `q` with respect to `v`.
pub fn resultant<K: Field>(p: &MPoly<K>, q: &MPoly<K>, v: Var) -> Result<MPoly<K>> {
    if p.is_zero() || q.is_zero() {
        return Ok(MPoly::zero());
    }
    let m = p.degree_in(v) as usize;
    let n = q.degree_in(v) as usize;
    if m == 0 && n == 0 {
        return Ok(MPoly::one());
    }
    if m == 0 {
        return Ok(p.pow(n as u32));
    }
    if n == 0 {
        return Ok(q.pow(m as u32));
    }
    let size = m + n;
    if size > 64 {
        return Err(Error::Limit(format!("Sylvester matrix of size {size} exceeds 64")));
    }
    let pc = coefficients_in(p, v);
    let qc = coefficients_in(q, v);
    let mut rows = vec![vec![MPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in pc.iter().enumerate() {
            rows[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().enumerate() {
            rows[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(rows)
}

/// `Res_v(p, ∂p/∂v)`; vanishes exactly where `p` has a repeated root in `v`
/// (the leading coefficient factor is kept).
pub fn discriminant<K: Field>(p: &MPoly<K>, v: Var) -> Result<MPoly<K>> {
    resultant(p, &p.derivative(v), v)
}

/// `p(x + x0, y + y0, t)`.
pub fn translate<K: Field>(p: &MPoly<K>, x0: &K, y0: &K) -> MPoly<K> {
    let sx = &MPoly::x() + &MPoly::constant(x0.clone());
    let sy = &MPoly::y() + &MPoly::constant(y0.clone());
    p.substitute_all(&[(Var::X, sx), (Var::Y, sy)])
}
