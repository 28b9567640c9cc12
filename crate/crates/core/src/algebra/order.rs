//! Degree-compatible term orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, NVARS};

/// Term order used to pick leading monomials.
///
/// `LocalDegRevLex` is the local (negative) degree order: lower total degree
/// is *larger*, so `1 > x > x² > …`. Ties are broken by reverse
/// lexicographic comparison on `x > y > t` in both orders.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum TermOrder {
    GlobalDegRevLex,
    LocalDegRevLex,
}

impl TermOrder {
    /// `Greater` means `a` is the larger (more leading) monomial.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let by_degree = a.degree().cmp(&b.degree());
        let by_degree = match self {
            TermOrder::GlobalDegRevLex => by_degree,
            TermOrder::LocalDegRevLex => by_degree.reverse(),
        };
        by_degree.then_with(|| revlex(a, b))
    }

    pub fn is_local(&self) -> bool {
        matches!(self, TermOrder::LocalDegRevLex)
    }
}

/// Reverse lexicographic tie-break: the monomial with the smaller exponent in
/// the last differing variable is larger.
fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for k in (0..NVARS).rev() {
        match a.0[k].cmp(&b.0[k]) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}
