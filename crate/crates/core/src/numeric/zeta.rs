//! `ζ'(−1)` from `ζ'(2)` through the functional equation.

use crate::scalar::Real;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_4;

/// Sum of the alternating series `Σ_{k≥0} (−1)^k a(k)` by the
/// Cohen–Rodriguez Villegas–Zagier acceleration with `n` terms.
pub fn alternating_sum<T: Real, F: Fn(usize) -> T>(a: F, n: usize) -> T {
    let three_plus = T::lit(3.0) + T::lit(8.0).sqrt();
    let d = three_plus.powi(n as i32);
    let d = (d + d.recip()) * T::lit(0.5);
    let mut b = -T::one();
    let mut c = -d;
    let mut s = T::zero();
    let nn = T::from_usize_lossy(n);
    for k in 0..n {
        c = b - c;
        s = s + c * a(k);
        let kk = T::from_usize_lossy(k);
        b = (kk + nn) * (kk - nn) * b / ((kk + T::lit(0.5)) * (kk + T::one()));
    }
    s / d
}

/// `ζ'(2)` via the alternating series for `η'(2)`:
/// `ζ'(2) = 2η'(2) − (π²/6)·ln 2`, `η'(2) = −Σ_{n≥1} (−1)^{n−1} ln n / n²`.
pub fn zeta_prime_two<T: Real>() -> T {
    let s = alternating_sum(
        |k| {
            let n = T::from_usize_lossy(k + 1);
            n.ln() / (n * n)
        },
        40,
    );
    let eta_prime = -s;
    let pi = T::PI();
    T::lit(2.0) * eta_prime - pi * pi / T::lit(6.0) * T::LN_2()
}

/// `ζ'(−1) = (1 − γ − ln 2π)/12 + ζ'(2)/(2π²)`.
pub fn zeta_prime_minus_one<T: Real>() -> T {
    let pi = T::PI();
    let gamma = T::lit(EULER_GAMMA);
    (T::one() - gamma - (T::lit(2.0) * pi).ln()) / T::lit(12.0) + zeta_prime_two::<T>() / (T::lit(2.0) * pi * pi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_log_two() {
        // 1 - 1/2 + 1/3 - ... = ln 2
        let s: f64 = alternating_sum(|k| 1.0 / (k as f64 + 1.0), 30);
        assert!((s - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn zeta_prime_values() {
        assert!((zeta_prime_two::<f64>() + 0.937_548_254_315_843_8).abs() < 1e-14);
        assert!((zeta_prime_minus_one::<f64>() + 0.165_421_143_700_450_9).abs() < 1e-14);
        assert!((zeta_prime_minus_one::<f32>() + 0.165_421_14).abs() < 1e-5);
    }
}
