//! Dense univariate polynomials, used for edge polynomials and root searches.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Var;
use super::poly::MPoly;
use super::rational::Rational;
use crate::scalar::Field;

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> UPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// Reads `p` as a polynomial in `v`; `None` if another variable occurs.
    pub fn from_mpoly(p: &MPoly<K>, v: Var) -> Option<Self> {
        let mut coeffs = vec![K::zero(); p.degree_in(v) as usize + 1];
        for (m, c) in p.terms() {
            if m.support().any(|w| w != v) {
                return None;
            }
            coeffs[m.exp(v) as usize] = c.clone();
        }
        Some(Self::new(coeffs))
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * K::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                Self::new(self.coeffs.iter().map(|c| c.clone() * inv.clone()).collect())
            }
            None => Self::zero(),
        }
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().and_then(K::inv).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].clone() - c.clone() * dc.clone();
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True when the polynomial has no repeated root over the algebraic closure.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Roots lying in the coefficient field, found through linear factors of
    /// the squarefree part: degree-one parts are solved directly and, for
    /// rational coefficient vectors, candidates from the rational root test
    /// are tried. Returns `None` when the squarefree part does not split into
    /// linear factors that these checks can find.
    pub fn linear_factor_roots(&self) -> Option<Vec<K>> {
        let mut p = self.squarefree_part();
        let mut roots = Vec::new();
        loop {
            match p.degree() {
                None | Some(0) => return Some(roots),
                Some(1) => {
                    let c = &p.coeffs;
                    roots.push(-(c[0].clone() / c[1].clone()));
                    return Some(roots);
                }
                Some(_) => {
                    let r = p.rational_root_candidates()?.into_iter().find(|r| p.eval(r).is_zero())?;
                    let lin = Self::new(vec![-r.clone(), K::one()]);
                    p = p.div_rem(&lin).0;
                    roots.push(r);
                }
            }
        }
    }

    /// Rational-root-test candidates, available when all coefficients are rational.
    fn rational_root_candidates(&self) -> Option<Vec<K>> {
        let mut rats: Vec<Rational> = Vec::new();
        for c in &self.coeffs {
            rats.push(c.as_rational()?);
        }
        let lcm = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = rats.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
        // strip a zero root
        let first_nz = ints.iter().position(|c| !c.is_zero())?;
        let mut cands: Vec<K> = Vec::new();
        if first_nz > 0 {
            cands.push(K::zero());
        }
        let a0 = ints[first_nz].abs();
        let an = ints.last()?.abs();
        let pdiv = small_divisors(&a0)?;
        let qdiv = small_divisors(&an)?;
        for p in &pdiv {
            for q in &qdiv {
                for s in [1i64, -1] {
                    let r = Rational::new(p * BigInt::from(s), q.clone());
                    cands.push(K::from_rational(r));
                }
            }
        }
        Some(cands)
    }
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let n = n.to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}
