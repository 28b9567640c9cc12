//! Quasi-homogeneous weights of plane-curve germs.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, Var};
use super::poly::MPoly;
use super::rational::{rat_int, Rational};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Weights `(w1, w2)` of `x` and `y`, normalized so the germ has weighted degree 1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Weights {
    #[serde(with = "super::rational::serde_str")]
    pub w1: Rational,
    #[serde(with = "super::rational::serde_str")]
    pub w2: Rational,
}

impl Weights {
    pub fn new(w1: Rational, w2: Rational) -> Self {
        Self { w1, w2 }
    }
}

/// `Σ exponent_i · w_i` over the `x, y` exponents.
pub fn weighted_degree(m: &Monomial, w: &Weights) -> Rational {
    &w.w1 * rat_int(m.exp(Var::X) as i64) + &w.w2 * rat_int(m.exp(Var::Y) as i64)
}

/// Positive weights making every term of `f` weighted-homogeneous of degree 1.
///
/// Returns `Ok(None)` when the support does not admit such weights (or admits
/// a family of them that cannot be pinned down, e.g. a single pure power).
pub fn quasi_homogeneous_weights<K: Field>(f: &MPoly<K>) -> Result<Option<Weights>> {
    if f.is_zero() {
        return Err(Error::Domain("zero polynomial has no weights".into()));
    }
    f.require_vars(&[Var::X, Var::Y])?;
    if !f.constant_term().is_zero() {
        return Err(Error::Domain("germ has a constant term".into()));
    }

    let rows: Vec<(i64, i64)> = f.terms().map(|(m, _)| (m.exp(Var::X) as i64, m.exp(Var::Y) as i64)).collect();

    // find two linearly independent exponent vectors
    let pivot = rows[0];
    let second = rows.iter().copied().find(|r| pivot.0 * r.1 - pivot.1 * r.0 != 0);

    let candidate = match second {
        Some(r) => {
            let det = rat_int(pivot.0 * r.1 - pivot.1 * r.0);
            // solve a w1 + b w2 = 1, c w1 + d w2 = 1
            let w1 = rat_int(r.1 - pivot.1) / &det;
            let w2 = rat_int(pivot.0 - r.0) / &det;
            Weights::new(w1, w2)
        }
        None => {
            // all exponents proportional: only a mixed monomial direction pins the weights
            if rows.len() != 1 && rows.iter().any(|r| *r != pivot) {
                return Ok(None);
            }
            let (a, b) = pivot;
            if a == 0 || b == 0 {
                return Ok(None);
            }
            let w = Rational::new(1.into(), (a + b).into());
            Weights::new(w.clone(), w)
        }
    };

    if !candidate.w1.is_positive() || !candidate.w2.is_positive() {
        return Ok(None);
    }
    let one = rat_int(1);
    let all_degree_one = f.terms().all(|(m, _)| weighted_degree(m, &candidate) == one);
    Ok(all_degree_one.then_some(candidate))
}
