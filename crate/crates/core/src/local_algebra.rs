//! Standard bases in the localization at the origin and the invariants read
//! off from them: Milnor number, Tjurina number, and a monomial basis of the
//! Milnor algebra.
//!
//! Reduction uses Mora's weak normal form: among reducers whose leading
//! monomial divides the current leading monomial, the one of smallest écart
//! is chosen (oldest first on ties), and the current polynomial is itself
//! added to the reducer set whenever its écart is smaller than the chosen
//! reducer's.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{MPoly, Monomial, TermOrder, Var};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Hard cap on the total degree of intermediate polynomials.
pub const DEGREE_CAP: u32 = 64;

/// Safety valve on the number of s-pairs processed by [`standard_basis`].
const MAX_PAIRS: usize = 20_000;

/// Dimension of a local quotient algebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Colength {
    Finite(usize),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<usize> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Colength::Finite(_))
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for Colength {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Colength::Finite(n) => s.serialize_u64(*n as u64),
            Colength::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// A standard basis together with the minimal generators of its leading ideal.
#[derive(Clone, Debug)]
pub struct StandardBasis<K> {
    pub generators: Vec<MPoly<K>>,
    pub order: TermOrder,
    pub leading_staircase: Vec<Monomial>,
}

impl<K: Field> StandardBasis<K> {
    /// Monomials outside the leading ideal in the given variables, or `None`
    /// when that set is infinite (some variable has no pure power among the
    /// staircase generators).
    pub fn quotient_monomials(&self, vars: &[Var]) -> Option<Vec<Monomial>> {
        staircase_complement(&self.leading_staircase, vars)
    }

    pub fn colength(&self, vars: &[Var]) -> Colength {
        match self.quotient_monomials(vars) {
            Some(b) => Colength::Finite(b.len()),
            None => Colength::Infinite,
        }
    }
}

/// Milnor data of an isolated (or non-isolated) germ.
#[derive(Clone, Debug)]
pub struct MilnorData {
    pub mu: Colength,
    /// Monomials under the staircase of the Jacobian ideal, by increasing degree.
    pub algebra_basis: Vec<Monomial>,
    pub tjurina: Colength,
}

struct Reducer<K> {
    poly: MPoly<K>,
    lm: Monomial,
    lc: K,
    ecart: u32,
}

fn check_degree<K: Field>(p: &MPoly<K>) -> Result<()> {
    let d = p.total_degree();
    if d > DEGREE_CAP {
        return Err(Error::DegreeLimit { degree: d, limit: DEGREE_CAP });
    }
    Ok(())
}

/// Weak normal form of `g` with respect to `basis`.
///
/// The result is zero or has a leading monomial not divisible by any leading
/// monomial of `basis`; it agrees with `u·g` modulo the ideal for some unit `u`
/// of the local ring. For a global order this is ordinary top-reduction.
pub fn mora_normal_form<K: Field>(g: &MPoly<K>, basis: &[MPoly<K>], order: TermOrder) -> Result<MPoly<K>> {
    let mut reducers: Vec<Reducer<K>> = basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let (lm, lc) = p.leading_term(order).expect("nonzero");
            Reducer { poly: p.clone(), lm, lc, ecart: p.ecart(order) }
        })
        .collect();
    if reducers.is_empty() {
        return Ok(g.clone());
    }

    let mut h = g.clone();
    loop {
        let Some((lm_h, lc_h)) = h.leading_term(order) else {
            return Ok(h);
        };
        // minimal écart, oldest insertion wins ties
        let chosen = reducers
            .iter()
            .enumerate()
            .filter(|(_, r)| r.lm.divides(&lm_h))
            .min_by_key(|(k, r)| (r.ecart, *k))
            .map(|(k, _)| k);
        let Some(k) = chosen else {
            return Ok(h);
        };
        let ecart_h = h.ecart(order);
        let lc_h_copy = lc_h.clone();
        let (shift, factor, reducer_ecart) = {
            let r = &reducers[k];
            (lm_h.div(&r.lm).expect("divisible"), lc_h / r.lc.clone(), r.ecart)
        };
        let next = &h - &reducers[k].poly.mul_term(&factor, &shift);
        if reducer_ecart > ecart_h {
            reducers.push(Reducer { poly: h.clone(), lm: lm_h, lc: lc_h_copy, ecart: ecart_h });
        }
        h = next;
        check_degree(&h)?;
    }
}

/// s-polynomial of `f` and `g` under `order`.
pub fn s_polynomial<K: Field>(f: &MPoly<K>, g: &MPoly<K>, order: TermOrder) -> MPoly<K> {
    let (mf, cf) = f.leading_term(order).expect("nonzero");
    let (mg, cg) = g.leading_term(order).expect("nonzero");
    let l = mf.lcm(&mg);
    let a = f.mul_term(&cg, &l.div(&mf).expect("lcm"));
    let b = g.mul_term(&cf, &l.div(&mg).expect("lcm"));
    &a - &b
}

/// Standard basis of the ideal generated by `gens` in the local ring at the
/// origin (local degree-reverse-lexicographic order).
pub fn standard_basis<K: Field>(gens: &[MPoly<K>]) -> Result<StandardBasis<K>> {
    standard_basis_with_order(gens, TermOrder::LocalDegRevLex)
}

/// Standard basis for an arbitrary degree-compatible order; with
/// [`TermOrder::GlobalDegRevLex`] this is a Gröbner basis.
pub fn standard_basis_with_order<K: Field>(gens: &[MPoly<K>], order: TermOrder) -> Result<StandardBasis<K>> {
    let mut basis: Vec<MPoly<K>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic(order)).collect();
    if basis.is_empty() {
        return Err(Error::Domain("standard basis of the zero ideal".into()));
    }
    for g in &basis {
        check_degree(g)?;
    }

    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pairs.push_back((i, j));
        }
    }
    let mut processed = 0usize;
    while let Some((i, j)) = pairs.pop_front() {
        processed += 1;
        if processed > MAX_PAIRS {
            return Err(Error::Limit(format!("standard basis exceeded {MAX_PAIRS} s-pairs")));
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        check_degree(&s)?;
        let r = mora_normal_form(&s, &basis, order)?;
        if r.is_zero() {
            continue;
        }
        let r = r.monic(order);
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            pairs.push_back((i, k));
        }
    }

    let lms: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial(order).expect("nonzero")).collect();
    Ok(StandardBasis { generators: basis, order, leading_staircase: minimal_monomials(&lms) })
}

/// Minimal generators of the monomial ideal spanned by `ms`, sorted.
pub fn minimal_monomials(ms: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for (k, m) in ms.iter().enumerate() {
        let dominated = ms
            .iter()
            .enumerate()
            .any(|(j, d)| d.divides(m) && (d != m || j < k));
        if !dominated {
            out.push(*m);
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.0.cmp(&a.0)));
    out
}

/// Monomials in `vars` not divisible by any staircase generator, by
/// increasing degree (ties: higher power of the earlier variable first).
pub fn staircase_complement(staircase: &[Monomial], vars: &[Var]) -> Option<Vec<Monomial>> {
    if staircase.iter().any(Monomial::is_one) {
        return Some(Vec::new());
    }
    // the box bound in each variable comes from its pure power
    let mut bounds = Vec::with_capacity(vars.len());
    for v in vars {
        let b = staircase
            .iter()
            .filter(|m| m.pure_power_of() == Some(*v))
            .map(|m| m.exp(*v))
            .min()?;
        bounds.push(b);
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; vars.len()];
    'outer: loop {
        let mut m = Monomial::ONE;
        for (v, e) in vars.iter().zip(&exps) {
            m.0[v.index()] = *e;
        }
        if !staircase.iter().any(|s| s.divides(&m)) {
            out.push(m);
        }
        for k in (0..vars.len()).rev() {
            exps[k] += 1;
            if exps[k] < bounds[k] {
                continue 'outer;
            }
            exps[k] = 0;
        }
        break;
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.0.cmp(&a.0)));
    Some(out)
}

fn require_germ<K: Field>(f: &MPoly<K>, vars: &[Var]) -> Result<()> {
    f.require_vars(vars)?;
    if f.is_zero() {
        return Err(Error::Domain("zero polynomial is not an isolated germ".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::Domain("germ does not vanish at the origin".into()));
    }
    Ok(())
}

/// Colength of the ideal generated by `gens` in the local ring in `vars`.
pub fn local_colength<K: Field>(gens: &[MPoly<K>], vars: &[Var]) -> Result<Colength> {
    if gens.iter().all(MPoly::is_zero) {
        return Ok(Colength::Infinite);
    }
    Ok(standard_basis(gens)?.colength(vars))
}

fn jacobian<K: Field>(f: &MPoly<K>, vars: &[Var]) -> Vec<MPoly<K>> {
    vars.iter().map(|v| f.derivative(*v)).collect()
}

fn milnor_in<K: Field>(f: &MPoly<K>, vars: &[Var]) -> Result<MilnorData> {
    require_germ(f, vars)?;
    let jac = jacobian(f, vars);
    let (mu, algebra_basis) = if jac.iter().all(MPoly::is_zero) {
        (Colength::Infinite, Vec::new())
    } else {
        let sb = standard_basis(&jac)?;
        match sb.quotient_monomials(vars) {
            Some(b) => (Colength::Finite(b.len()), b),
            None => (Colength::Infinite, Vec::new()),
        }
    };
    let tjurina = tjurina_in(f, vars)?;
    Ok(MilnorData { mu, algebra_basis, tjurina })
}

fn tjurina_in<K: Field>(f: &MPoly<K>, vars: &[Var]) -> Result<Colength> {
    require_germ(f, vars)?;
    let mut gens = vec![f.clone()];
    gens.extend(jacobian(f, vars));
    local_colength(&gens, vars)
}

/// Milnor number `dim C{x,y}/(∂f/∂x, ∂f/∂y)` of a plane-curve germ with a
/// monomial basis of the Milnor algebra, plus the Tjurina number.
pub fn milnor_number<K: Field>(f: &MPoly<K>) -> Result<MilnorData> {
    milnor_in(f, &[Var::X, Var::Y])
}

/// Tjurina number `dim C{x,y}/(f, ∂f/∂x, ∂f/∂y)`.
pub fn tjurina_number<K: Field>(f: &MPoly<K>) -> Result<Colength> {
    tjurina_in(f, &[Var::X, Var::Y])
}

/// Milnor number of a surface germ in `x, y, t` (used for total spaces of families).
pub fn milnor_number_surface<K: Field>(f: &MPoly<K>) -> Result<MilnorData> {
    milnor_in(f, &[Var::X, Var::Y, Var::T])
}
