//! Monomials in the fixed variable set `x, y, t`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of ambient variables.
pub const NVARS: usize = 3;

/// Ambient variables, in their canonical order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X = 0,
    Y = 1,
    T = 2,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::T => "t",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "t" => Some(Var::T),
            _ => None,
        }
    }
}

/// Exponent vector `x^a y^b t^c`.
///
/// The derived `Ord` is plain lexicographic on the exponent array and is only
/// used for storage; algorithmic comparisons go through [`super::TermOrder`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn new(x: u32, y: u32, t: u32) -> Self {
        Monomial([x, y, t])
    }

    pub fn xy(a: u32, b: u32) -> Self {
        Monomial([a, b, 0])
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    /// `self / other`; `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(m))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        Monomial(m)
    }

    /// If the monomial is a pure power of one variable, that variable.
    pub fn pure_power_of(&self) -> Option<Var> {
        let nz: Vec<Var> = Var::ALL.into_iter().filter(|v| self.exp(*v) > 0).collect();
        match nz.as_slice() {
            [v] => Some(*v),
            _ => None,
        }
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = Var> + '_ {
        Var::ALL.into_iter().filter(move |v| self.exp(*v) > 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::xy(2, 1);
        let b = Monomial::xy(1, 3);
        assert!(Monomial::xy(1, 1).divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b), Monomial::xy(2, 3));
        assert_eq!(a.div(&Monomial::xy(2, 0)), Some(Monomial::xy(0, 1)));
        assert_eq!(a.div(&b), None);
        assert_eq!(a.to_string(), "x^2*y");
        assert_eq!(Monomial::var_pow(Var::T, 4).pure_power_of(), Some(Var::T));
    }
}
