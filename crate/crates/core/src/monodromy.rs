//! Spectrum and monodromy of quasi-homogeneous isolated plane-curve germs.
//!
//! For weights `(w1, w2)` the spectrum is `{(α+1)w1 + (β+1)w2}` over a
//! monomial basis `x^α y^β` of the Milnor algebra; the monodromy eigenvalues
//! are `exp(2πiσ)`. Writing them as `exp(πi·r)` gives `r ≡ 2σ (mod 2)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::rational::serde_str_vec;
use crate::algebra::{frac, quasi_homogeneous_weights, rat_int, rem_euclid, weighted_degree, MPoly, Rational, UPoly, Weights};
use crate::error::{Error, Result};
use crate::local_algebra::{milnor_number, Colength};
use crate::scalar::Field;

/// Spectrum values in `(0, 2)`, sorted, with multiplicity.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Spectrum {
    pub weights: Weights,
    #[serde(with = "serde_str_vec")]
    pub values: Vec<Rational>,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct MonodromyData {
    pub spectrum: Spectrum,
    /// `σ mod 1`, sorted, with multiplicity.
    #[serde(with = "serde_str_vec")]
    pub eigenvalue_args: Vec<Rational>,
    /// Integer coefficients of `det(λ − T)`, constant term first.
    #[serde(serialize_with = "serialize_bigints")]
    pub char_poly: Vec<BigInt>,
    /// `(d, e)`: the characteristic polynomial is `Π Φ_d^e`.
    pub cyclotomic_factors: Vec<(u64, usize)>,
    /// Distinct `r ∈ (0, 2)` with `exp(πi·r)` an eigenvalue.
    #[serde(with = "serde_str_vec")]
    pub barlet_exponents: Vec<Rational>,
    /// Spectrum values whose `r` lands on `0` (eigenvalue `1`), kept out of `(0, 2)`.
    #[serde(with = "serde_str_vec")]
    pub excluded: Vec<Rational>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

/// Spectrum of a quasi-homogeneous germ with isolated singularity.
pub fn spectrum_quasihomogeneous<K: Field>(f: &MPoly<K>) -> Result<Spectrum> {
    let weights = quasi_homogeneous_weights(f)?
        .ok_or_else(|| Error::Unsupported("germ is not quasi-homogeneous; spectrum only implemented for weighted-homogeneous germs".into()))?;
    let data = milnor_number(f)?;
    if data.mu == Colength::Infinite {
        return Err(Error::Precondition("spectrum needs an isolated singularity".into()));
    }
    let shift = &weights.w1 + &weights.w2;
    let mut values: Vec<Rational> = data.algebra_basis.iter().map(|m| weighted_degree(m, &weights) + &shift).collect();
    values.sort();
    Ok(Spectrum { weights, values })
}

/// The `n`-th cyclotomic polynomial over the integers, constant term first.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic index must be positive");
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    coeffs[0] = -Rational::one();
    coeffs[n as usize] = Rational::one();
    let mut p = UPoly::new(coeffs);
    for d in 1..n {
        if n % d == 0 {
            let phi = UPoly::new(cyclotomic(d).into_iter().map(Rational::from_integer).collect());
            p = p.div_rem(&phi).0;
        }
    }
    p.coeffs().iter().map(|c| c.to_integer()).collect()
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Groups arguments in `[0, 1)` into complete cyclotomic orbits and returns
/// `(d, e_d)` pairs, failing if some orbit is incomplete.
pub fn cyclotomic_grouping(args: &[Rational]) -> Result<Vec<(u64, usize)>> {
    let mut by_den: BTreeMap<u64, BTreeMap<u64, usize>> = BTreeMap::new();
    for a in args {
        let d = a
            .denom()
            .to_u64()
            .ok_or_else(|| Error::Internal("eigenvalue order does not fit in 64 bits".into()))?;
        let n = a.numer().to_u64().ok_or_else(|| Error::Internal(format!("argument {a} outside [0, 1)")))?;
        *by_den.entry(d).or_default().entry(n).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    for (d, nums) in by_den {
        let phi = euler_phi(d);
        let e = *nums.values().next().expect("nonempty");
        let complete = nums.len() as u64 == phi && nums.values().all(|&c| c == e);
        if !complete {
            return Err(Error::Internal(format!("eigenvalues of order {d} do not form complete Galois orbits")));
        }
        out.push((d, e));
    }
    Ok(out)
}

/// Monodromy data of a quasi-homogeneous germ: eigenvalue arguments, exact
/// characteristic polynomial and the exponents `r ∈ (0, 2)`.
pub fn monodromy_eigenvalues<K: Field>(f: &MPoly<K>) -> Result<MonodromyData> {
    let spectrum = spectrum_quasihomogeneous(f)?;
    let mut eigenvalue_args: Vec<Rational> = spectrum.values.iter().map(frac).collect();
    eigenvalue_args.sort();

    let cyclotomic_factors = cyclotomic_grouping(&eigenvalue_args)?;
    let mut char_poly = vec![BigInt::one()];
    for &(d, e) in &cyclotomic_factors {
        let phi = cyclotomic(d);
        for _ in 0..e {
            char_poly = poly_mul(&char_poly, &phi);
        }
    }
    if char_poly.len() != eigenvalue_args.len() + 1 {
        return Err(Error::Internal("characteristic polynomial degree differs from μ".into()));
    }

    let two = rat_int(2);
    let mut barlet_exponents = Vec::new();
    let mut excluded = Vec::new();
    for s in &spectrum.values {
        let r = rem_euclid(&(s * &two), &two);
        if r.is_zero() {
            excluded.push(s.clone());
        } else {
            barlet_exponents.push(r);
        }
    }
    barlet_exponents.sort();
    barlet_exponents.dedup();

    Ok(MonodromyData { spectrum, eigenvalue_args, char_poly, cyclotomic_factors, barlet_exponents, excluded })
}

/// Human-readable `λ^2 - λ + 1`.
pub fn format_char_poly(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => "λ".to_string(),
            _ => format!("λ^{k}"),
        };
        if mono.is_empty() || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
