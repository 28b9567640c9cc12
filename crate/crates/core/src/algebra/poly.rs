//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{Monomial, Var, NVARS};
use super::order::TermOrder;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Polynomial in `x, y, t` stored as a map from monomial to nonzero coefficient.
///
/// Storage is order-agnostic; leading terms are taken with respect to an
/// explicit [`TermOrder`] on demand.
#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<K> {
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> Default for MPoly<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Field> MPoly<K> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: K, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(K::one(), Monomial::var(v))
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn t() -> Self {
        Self::var(Var::T)
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, combining repeats.
    pub fn from_terms<I: IntoIterator<Item = (K, Monomial)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (c, m) in it {
            p.add_term(c, m);
        }
        p
    }

    pub fn add_term(&mut self, c: K, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn constant_term(&self) -> K {
        self.coeff(&Monomial::ONE)
    }

    /// Maximum total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Minimum total degree (order at the origin); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|m| m.exp(*v) > 0))
            .collect()
    }

    /// Fails with a context error if a variable outside `allowed` occurs.
    pub fn require_vars(&self, allowed: &[Var]) -> Result<()> {
        for v in self.variables() {
            if !allowed.contains(&v) {
                let names: Vec<&str> = allowed.iter().map(|v| v.name()).collect();
                return Err(Error::Context(format!(
                    "variable {} not in context {{{}}}",
                    v.name(),
                    names.join(", ")
                )));
            }
        }
        Ok(())
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: TermOrder) -> Vec<(Monomial, K)> {
        let mut v: Vec<(Monomial, K)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn leading_monomial(&self, order: TermOrder) -> Option<Monomial> {
        self.terms.keys().copied().max_by(|a, b| order.cmp(a, b))
    }

    pub fn leading_term(&self, order: TermOrder) -> Option<(Monomial, K)> {
        let m = self.leading_monomial(order)?;
        Some((m, self.terms[&m].clone()))
    }

    /// `deg(p) − deg(LM(p))`, the écart used by Mora's reduction.
    pub fn ecart(&self, order: TermOrder) -> u32 {
        match self.leading_monomial(order) {
            Some(lm) => self.total_degree() - lm.degree(),
            None => 0,
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())).collect(),
        }
    }

    /// Multiplies by `c · m`.
    pub fn mul_term(&self, c: &K, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone() * c.clone())).collect(),
        }
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: TermOrder) -> Self {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut d = *m;
            d.0[v.index()] -= 1;
            p.add_term(c.clone() * K::from_i64(e as i64), d);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Evaluates at a point of `K³` (entries indexed by [`Var`]).
    pub fn evaluate(&self, point: &[K; NVARS]) -> K {
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in Var::ALL {
                for _ in 0..m.exp(v) {
                    term = term * point[v.index()].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Replaces `v` by the polynomial `q`.
    pub fn substitute(&self, v: Var, q: &MPoly<K>) -> Self {
        let mut powers: Vec<MPoly<K>> = vec![Self::one()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * q;
                powers.push(next);
            }
            let mut rest = *m;
            rest.0[v.index()] = 0;
            out = &out + &powers[e].mul_term(c, &rest);
        }
        out
    }

    /// Replaces several variables at once (simultaneous substitution).
    pub fn substitute_all(&self, subs: &[(Var, MPoly<K>)]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::term(c.clone(), Monomial::ONE);
            let mut rest = *m;
            for (v, q) in subs {
                let e = m.exp(*v);
                rest.0[v.index()] = 0;
                if e > 0 {
                    term = &term * &q.pow(e);
                }
            }
            out = &out + &term.mul_term(&K::one(), &rest);
        }
        out
    }

    /// Substitutes a constant for `v`.
    pub fn eval_var(&self, v: Var, value: &K) -> Self {
        self.substitute(v, &Self::constant(value.clone()))
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_of_power(&self, v: Var, k: u32) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            if m.exp(v) == k {
                let mut r = *m;
                r.0[v.index()] = 0;
                p.add_term(c.clone(), r);
            }
        }
        p
    }

    /// Smallest exponent of `v` among the terms; `None` for zero.
    pub fn min_exponent(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    /// Divides every term by `m`; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(Self { terms })
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let order = TermOrder::GlobalDegRevLex;
        let (lm, lc) = divisor.leading_term(order)?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading_term(order) {
            let shift = m.div(&lm)?;
            let factor = c * lc_inv.clone();
            rem = &rem - &divisor.mul_term(&factor, &shift);
            quot.add_term(factor, shift);
        }
        Some(quot)
    }

    pub fn map_coeffs<L: Field, F: Fn(&K) -> L>(&self, f: F) -> MPoly<L> {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (f(c), *m)))
    }
}

impl<K: Field> Zero for MPoly<K> {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<K: Field> One for MPoly<K> {
    fn one() -> Self {
        MPoly::one()
    }
}

impl<'a, K: Field> Add<&'a MPoly<K>> for &'a MPoly<K> {
    type Output = MPoly<K>;
    fn add(self, rhs: &MPoly<K>) -> MPoly<K> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), *m);
        }
        out
    }
}

impl<K: Field> Add for MPoly<K> {
    type Output = MPoly<K>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a, K: Field> Sub<&'a MPoly<K>> for &'a MPoly<K> {
    type Output = MPoly<K>;
    fn sub(self, rhs: &MPoly<K>) -> MPoly<K> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c.clone(), *m);
        }
        out
    }
}

impl<K: Field> Sub for MPoly<K> {
    type Output = MPoly<K>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a, K: Field> Mul<&'a MPoly<K>> for &'a MPoly<K> {
    type Output = MPoly<K>;
    fn mul(self, rhs: &MPoly<K>) -> MPoly<K> {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ca.clone() * cb.clone(), ma.mul(mb));
            }
        }
        out
    }
}

impl<K: Field> Mul for MPoly<K> {
    type Output = MPoly<K>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<K: Field> Neg for MPoly<K> {
    type Output = MPoly<K>;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<'a, K: Field> Neg for &'a MPoly<K> {
    type Output = MPoly<K>;
    fn neg(self) -> MPoly<K> {
        self.clone().neg()
    }
}

/// Splits a coefficient into a sign and a magnitude for printing.
pub trait SignedDisplay {
    /// `true` when the coefficient prints better as `- |c|`.
    fn prints_negative(&self) -> bool;
}

impl SignedDisplay for super::Rational {
    fn prints_negative(&self) -> bool {
        use num_traits::Signed;
        self.is_negative()
    }
}

impl SignedDisplay for super::GaussRational {
    fn prints_negative(&self) -> bool {
        use num_traits::Signed;
        (self.im.is_zero() && self.re.is_negative()) || (self.re.is_zero() && self.im.is_negative())
    }
}

impl<K: Field + SignedDisplay> fmt::Display for MPoly<K> {
    /// Canonical form: terms in descending global degree-reverse-lex order,
    /// `*` between factors, re-readable by [`crate::io::parse_poly`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms(TermOrder::GlobalDegRevLex).into_iter().enumerate() {
            let negative = c.prints_negative();
            let mag = if negative { -c } else { c };
            let sign = match (k, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let body = if m.is_one() {
                mag.to_string()
            } else if mag.is_one() {
                m.to_string()
            } else {
                format!("{mag}*{m}")
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

/// Compares two monomials by `order`, exposing `Ordering` for callers that
/// need to sort staircases.
pub fn cmp_monomials(order: TermOrder, a: &Monomial, b: &Monomial) -> Ordering {
    order.cmp(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, GaussRational, Rational};

    type P = MPoly<Rational>;

    fn x() -> P {
        P::x()
    }
    fn y() -> P {
        P::y()
    }

    #[test]
    fn ring_identity() {
        let p = &(&x() + &y()) * &(&x() - &y());
        let q = &x().pow(2) - &y().pow(2);
        assert_eq!(p, q);
    }

    #[test]
    fn power_rule() {
        let f = &y().pow(2) - &x().pow(3);
        assert_eq!(f.derivative(Var::X), x().pow(2).scale(&rat(-3, 1)));
    }

    #[test]
    fn evaluation() {
        let f = &x().pow(3) + &P::t();
        let v = f.evaluate(&[rat(1, 1), rat(0, 1), rat(2, 1)]);
        assert_eq!(v, rat(3, 1));
    }

    #[test]
    fn exact_division() {
        let a = &x() + &y();
        let b = &x() - &y().scale(&rat(2, 1));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!((&prod + &P::one()).div_exact(&a), None);
    }

    #[test]
    fn substitution_composes() {
        let f = &y().pow(2) - &x().pow(3);
        let shifted = f.substitute(Var::X, &(&x() + &P::one()));
        assert_eq!(shifted.eval_var(Var::X, &rat(-1, 1)), f.eval_var(Var::X, &rat(0, 1)));
    }

    #[test]
    fn display_is_canonical() {
        let f: MPoly<GaussRational> = MPoly::from_terms([
            (GaussRational::from(1), Monomial::xy(0, 2)),
            (GaussRational::from(-1), Monomial::xy(3, 0)),
            (GaussRational::new(rat(1, 2), rat(-1, 1)), Monomial::ONE),
        ]);
        assert_eq!(f.to_string(), "-x^3 + y^2 + (1/2 - i)");
    }
}
