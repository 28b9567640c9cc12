//! Weierstrass models `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` with
//! coefficients polynomial in `t`: invariants, minimal models, Kodaira types
//! and the du Val type of the total space at `t = 0`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{GaussRational, MPoly, Var};
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq, Debug)]
pub struct WeierstrassModel<K = GaussRational> {
    pub a1: MPoly<K>,
    pub a2: MPoly<K>,
    pub a3: MPoly<K>,
    pub a4: MPoly<K>,
    pub a6: MPoly<K>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct WeierstrassInvariants<K = GaussRational> {
    pub b2: MPoly<K>,
    pub b4: MPoly<K>,
    pub b6: MPoly<K>,
    pub b8: MPoly<K>,
    pub c4: MPoly<K>,
    pub c6: MPoly<K>,
    pub discriminant: MPoly<K>,
    /// `j = j_num / j_den = c4³ / Δ`.
    pub j_num: MPoly<K>,
    pub j_den: MPoly<K>,
}

fn c<K: Field>(n: i64) -> MPoly<K> {
    MPoly::constant(K::from_i64(n))
}

fn raw_invariants<K: Field>(a1: &MPoly<K>, a2: &MPoly<K>, a3: &MPoly<K>, a4: &MPoly<K>, a6: &MPoly<K>) -> WeierstrassInvariants<K> {
    let b2 = &(a1 * a1) + &(&c(4) * a2);
    let b4 = &(&c(2) * a4) + &(a1 * a3);
    let b6 = &(a3 * a3) + &(&c(4) * a6);
    let b8 = &(&(&(&(a1 * a1) * a6) + &(&(&c(4) * a2) * a6)) - &(&(a1 * a3) * a4)) + &(&(&(a2 * a3) * a3) - &(a4 * a4));
    let c4 = &(&b2 * &b2) - &(&c(24) * &b4);
    let c6 = &(&(-&(&(&b2 * &b2) * &b2)) + &(&(&c(36) * &b2) * &b4)) - &(&c(216) * &b6);
    let discriminant = &(&(&(-&(&(&b2 * &b2) * &b8)) - &(&(&c(8) * &b4) * &(&b4 * &b4))) - &(&(&c(27) * &b6) * &b6))
        + &(&(&(&c(9) * &b2) * &b4) * &b6);
    let j_num = &(&c4 * &c4) * &c4;
    let j_den = discriminant.clone();
    WeierstrassInvariants { b2, b4, b6, b8, c4, c6, discriminant, j_num, j_den }
}

impl<K: Field> WeierstrassModel<K> {
    /// Builds a model from `[a1, a2, a3, a4, a6]`, rejecting coefficients in
    /// `x`/`y` and models with identically vanishing discriminant.
    pub fn new(a: [MPoly<K>; 5]) -> Result<Self> {
        for p in &a {
            p.require_vars(&[Var::T])?;
        }
        let [a1, a2, a3, a4, a6] = a;
        let inv = raw_invariants(&a1, &a2, &a3, &a4, &a6);
        if inv.discriminant.is_zero() {
            return Err(Error::Domain("degenerate model: discriminant vanishes identically".into()));
        }
        Ok(Self { a1, a2, a3, a4, a6 })
    }

    /// Short model `y² = x³ + a4·x + a6`.
    pub fn short(a4: MPoly<K>, a6: MPoly<K>) -> Result<Self> {
        Self::new([MPoly::zero(), MPoly::zero(), MPoly::zero(), a4, a6])
    }

    pub fn coefficients(&self) -> [&MPoly<K>; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn invariants(&self) -> WeierstrassInvariants<K> {
        raw_invariants(&self.a1, &self.a2, &self.a3, &self.a4, &self.a6)
    }

    /// `y² + a1·xy + a3·y − x³ − a2·x² − a4·x − a6` in `x, y, t`.
    pub fn equation(&self) -> MPoly<K> {
        let (x, y) = (MPoly::<K>::x(), MPoly::<K>::y());
        let lhs = &(&(&y * &y) + &(&(&self.a1 * &x) * &y)) + &(&self.a3 * &y);
        let rhs = &(&(&(&x * &x) * &x) + &(&(&self.a2 * &x) * &x)) + &(&(&self.a4 * &x) + &self.a6);
        &lhs - &rhs
    }

    /// Orders at `t = 0` of `(c4, c6, Δ)`; `None` for an identically zero invariant.
    pub fn valuations(&self) -> (Option<u32>, Option<u32>, u32) {
        let inv = self.invariants();
        let d = inv.discriminant.min_exponent(Var::T).expect("nonzero discriminant");
        (inv.c4.min_exponent(Var::T), inv.c6.min_exponent(Var::T), d)
    }

    /// Whether the model is minimal at `t = 0`.
    pub fn is_minimal(&self) -> bool {
        let (o4, o6, od) = self.valuations();
        !(o4.is_none_or(|v| v >= 4) && o6.is_none_or(|v| v >= 6) && od >= 12)
    }
}

/// Standard invariants `b2..b8`, `c4`, `c6`, `Δ` and `j`.
pub fn invariants<K: Field>(m: &WeierstrassModel<K>) -> WeierstrassInvariants<K> {
    m.invariants()
}

/// Order of vanishing at `t = 0`.
pub fn ord0<K: Field>(p: &MPoly<K>) -> Result<u32> {
    p.min_exponent(Var::T).ok_or_else(|| Error::Domain("order of the zero polynomial".into()))
}

fn divide_by_t_power<K: Field>(p: &MPoly<K>, k: u32) -> Option<MPoly<K>> {
    if p.is_zero() {
        return Some(MPoly::zero());
    }
    p.div_monomial(&crate::algebra::Monomial::var_pow(Var::T, k))
}

/// Rescales `(x, y) → (t²x, t³y)` while the model is not minimal.
///
/// When some `a_i` is not divisible by `t^i`, the model is first replaced by
/// the isomorphic short form `a4 = −c4/48`, `a6 = −c6/864`, for which
/// divisibility follows from the valuations of `c4` and `c6`. Returns the
/// minimal model and the total power of `t` removed.
pub fn minimalize<K: Field>(m: &WeierstrassModel<K>) -> Result<(WeierstrassModel<K>, u32)> {
    let mut cur = m.clone();
    let mut u = 0u32;
    while !cur.is_minimal() {
        let step = |w: &WeierstrassModel<K>| -> Option<WeierstrassModel<K>> {
            Some(WeierstrassModel {
                a1: divide_by_t_power(&w.a1, 1)?,
                a2: divide_by_t_power(&w.a2, 2)?,
                a3: divide_by_t_power(&w.a3, 3)?,
                a4: divide_by_t_power(&w.a4, 4)?,
                a6: divide_by_t_power(&w.a6, 6)?,
            })
        };
        cur = match step(&cur) {
            Some(next) => next,
            None => {
                let inv = cur.invariants();
                let short = WeierstrassModel {
                    a1: MPoly::zero(),
                    a2: MPoly::zero(),
                    a3: MPoly::zero(),
                    a4: inv.c4.scale(&(-K::one() / K::from_i64(48))),
                    a6: inv.c6.scale(&(-K::one() / K::from_i64(864))),
                };
                step(&short).ok_or_else(|| Error::Internal("short model not divisible despite valuations".into()))?
            }
        };
        u += 1;
    }
    Ok((cur, u))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum KodairaKind {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaKind {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, KodairaKind::In(_))
    }

    /// `χ(singular fiber of the Weierstrass model) − χ(smooth fiber)`:
    /// a nodal cubic has `χ = 1`, a cuspidal cubic `χ = 2`.
    pub fn chi_difference(self) -> u32 {
        match self {
            KodairaKind::I0 => 0,
            KodairaKind::In(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for KodairaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaKind::I0 => write!(f, "I0"),
            KodairaKind::In(n) => write!(f, "I{n}"),
            KodairaKind::II => write!(f, "II"),
            KodairaKind::III => write!(f, "III"),
            KodairaKind::IV => write!(f, "IV"),
            KodairaKind::I0Star => write!(f, "I0*"),
            KodairaKind::InStar(n) => write!(f, "I{n}*"),
            KodairaKind::IVStar => write!(f, "IV*"),
            KodairaKind::IIIStar => write!(f, "III*"),
            KodairaKind::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum AdeFamily {
    A,
    D,
    E,
}

/// A rational double point `A_n`, `D_n` or `E_n`; its Milnor number is `n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DuVal {
    pub family: AdeFamily,
    pub index: u32,
}

impl DuVal {
    pub fn mu(self) -> u32 {
        self.index
    }
}

impl fmt::Display for DuVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            AdeFamily::A => 'A',
            AdeFamily::D => 'D',
            AdeFamily::E => 'E',
        };
        write!(f, "{c}{}", self.index)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct KodairaType {
    pub kind: KodairaKind,
    pub euler_number: u32,
    /// Singularity of the total space; `None` when it is smooth.
    pub du_val: Option<DuVal>,
}

fn du_val_of(kind: KodairaKind) -> Option<DuVal> {
    use AdeFamily::*;
    let dv = |family, index| Some(DuVal { family, index });
    match kind {
        KodairaKind::I0 | KodairaKind::II => None,
        KodairaKind::In(n) if n >= 2 => dv(A, n - 1),
        KodairaKind::In(_) => None,
        KodairaKind::III => dv(A, 1),
        KodairaKind::IV => dv(A, 2),
        KodairaKind::I0Star => dv(D, 4),
        KodairaKind::InStar(n) => dv(D, 4 + n),
        KodairaKind::IVStar => dv(E, 6),
        KodairaKind::IIIStar => dv(E, 7),
        KodairaKind::IIStar => dv(E, 8),
    }
}

/// Kodaira type at `t = 0` of a minimal model (characteristic-zero table).
pub fn kodaira_type<K: Field>(m: &WeierstrassModel<K>) -> Result<KodairaType> {
    if !m.is_minimal() {
        return Err(Error::Precondition("model is not minimal at t = 0; run minimalize first".into()));
    }
    let (o4, _o6, od) = m.valuations();
    let kind = if od == 0 {
        KodairaKind::I0
    } else if o4 == Some(0) {
        KodairaKind::In(od)
    } else if o4 == Some(2) && od > 6 {
        KodairaKind::InStar(od - 6)
    } else {
        match od {
            2 => KodairaKind::II,
            3 => KodairaKind::III,
            4 => KodairaKind::IV,
            6 => KodairaKind::I0Star,
            8 => KodairaKind::IVStar,
            9 => KodairaKind::IIIStar,
            10 => KodairaKind::IIStar,
            _ => {
                return Err(Error::Internal(format!(
                    "valuations (ord c4 = {o4:?}, ord Δ = {od}) match no Kodaira type"
                )))
            }
        }
    };
    Ok(KodairaType { kind, euler_number: od, du_val: du_val_of(kind) })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DeltaFCheck {
    pub ord_delta: u32,
    pub mu_duval: u32,
    pub chi_fiber_diff: u32,
    pub consistent: bool,
}

/// Compares `ord₀Δ` with `μ(total space) + χ(X₀) − χ(X_t)` on a minimal model.
pub fn delta_f_check<K: Field>(m: &WeierstrassModel<K>) -> Result<DeltaFCheck> {
    let k = kodaira_type(m)?;
    let mu_duval = k.du_val.map_or(0, DuVal::mu);
    let chi_fiber_diff = k.kind.chi_difference();
    Ok(DeltaFCheck {
        ord_delta: k.euler_number,
        mu_duval,
        chi_fiber_diff,
        consistent: k.euler_number == mu_duval + chi_fiber_diff,
    })
}
