//! Degeneration data of one-parameter families of curves: Milnor numbers of
//! the special fiber, the discriminant order `Δ_f = μ_X + χ(X₀) − χ(X_t)`,
//! the predicted log-slope `rk E · Δ_f / 12`, and the Deligne–Riemann–Roch
//! constant.

use serde::Serialize;

use crate::algebra::rational::serde_str;
use crate::algebra::{rat, resultant, translate, GaussRational, MPoly, Rational, TermOrder, UPoly, Var};
use crate::error::{Error, Result};
use crate::local_algebra::{milnor_number, milnor_number_surface, standard_basis_with_order, Colength};
use crate::numeric::zeta::zeta_prime_minus_one;
use crate::scalar::{Field, Real};
use crate::weierstrass::{kodaira_type, minimalize, KodairaType, WeierstrassModel};

/// Local model `f(x, y, t) = 0` of a family over a disc; the special fiber is `t = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct FamilyModel<K = GaussRational> {
    pub f: MPoly<K>,
    /// Singular points of the special fiber; `None` when neither supplied nor found.
    pub singular_points: Option<Vec<(K, K)>>,
    pub rank_e: u32,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct DegenerationReport {
    pub mu_total: Option<u32>,
    pub mu_x: u32,
    pub chi_difference: i64,
    pub chi_special: Option<i64>,
    pub chi_generic: Option<i64>,
    pub delta_f: i64,
    pub rank_e: u32,
    #[serde(with = "serde_str")]
    pub predicted_slope: Rational,
}

impl<K: Field> FamilyModel<K> {
    /// Validates `f`, rejects non-reduced special fibers and either verifies
    /// the supplied singular points exactly or tries to find them.
    pub fn new(f: MPoly<K>, points: Option<Vec<(K, K)>>, rank_e: u32) -> Result<Self> {
        f.require_vars(&[Var::X, Var::Y, Var::T])?;
        if rank_e == 0 {
            return Err(Error::Domain("rank of E must be positive".into()));
        }
        let g = f.eval_var(Var::T, &K::zero());
        if g.is_zero() {
            return Err(Error::Domain("special fiber is the whole plane (f vanishes at t = 0)".into()));
        }
        check_reduced(&g)?;
        let singular_points = match points {
            Some(pts) => {
                for (x0, y0) in &pts {
                    if !is_singular_point(&g, x0, y0) {
                        return Err(Error::Validation(format!(
                            "({x0}, {y0}) is not a singular point of the special fiber"
                        )));
                    }
                }
                Some(pts)
            }
            None => match find_singular_points(&g) {
                Ok(pts) => Some(pts),
                Err(Error::Unsupported(_)) => None,
                Err(e) => return Err(e),
            },
        };
        Ok(Self { f, singular_points, rank_e })
    }

    pub fn special_fiber(&self) -> MPoly<K> {
        self.f.eval_var(Var::T, &K::zero())
    }
}

fn is_singular_point<K: Field>(g: &MPoly<K>, x0: &K, y0: &K) -> bool {
    let pt = [x0.clone(), y0.clone(), K::zero()];
    [g.clone(), g.derivative(Var::X), g.derivative(Var::Y)].iter().all(|p| p.evaluate(&pt).is_zero())
}

/// Rejects special fibers with a multiple component (singular along a curve).
fn check_reduced<K: Field>(g: &MPoly<K>) -> Result<()> {
    let gens = [g.clone(), g.derivative(Var::X), g.derivative(Var::Y)];
    let gb = standard_basis_with_order(&gens, TermOrder::GlobalDegRevLex)?;
    if gb.colength(&[Var::X, Var::Y]) == Colength::Infinite {
        return Err(Error::Unsupported(
            "special fiber is non-reduced or singular along a curve; contributions of non-reduced components are outside this model".into(),
        ));
    }
    Ok(())
}

fn univariate_gcd<K: Field>(polys: &[MPoly<K>], v: Var) -> Result<Option<UPoly<K>>> {
    let mut acc: Option<UPoly<K>> = None;
    for p in polys.iter().filter(|p| !p.is_zero()) {
        let u = UPoly::from_mpoly(p, v).ok_or_else(|| Error::Internal("expected a univariate polynomial".into()))?;
        acc = Some(match acc {
            None => u,
            Some(a) => a.gcd(&u),
        });
    }
    Ok(acc)
}

/// Solves `g = g_x = g_y = 0` when the eliminants split into linear factors
/// over the coefficient field; otherwise an unsupported-input error asks for
/// the points to be supplied.
pub fn find_singular_points<K: Field>(g: &MPoly<K>) -> Result<Vec<(K, K)>> {
    g.require_vars(&[Var::X, Var::Y])?;
    let gx = g.derivative(Var::X);
    let gy = g.derivative(Var::Y);
    let elim = [
        resultant(g, &gx, Var::Y)?,
        resultant(g, &gy, Var::Y)?,
        resultant(&gx, &gy, Var::Y)?,
    ];
    let Some(rx) = univariate_gcd(&elim, Var::X)? else {
        return Err(Error::Unsupported("elimination of y degenerates; supply singular points".into()));
    };
    let xs = rx
        .linear_factor_roots()
        .ok_or_else(|| Error::Unsupported("x-coordinates of singular points are not in the coefficient field; supply them".into()))?;
    let mut out = Vec::new();
    for x0 in xs {
        let sub = [g, &gx, &gy].map(|p| p.eval_var(Var::X, &x0));
        let Some(ry) = univariate_gcd(&sub, Var::Y)? else {
            return Err(Error::Unsupported("singular locus contains a vertical line".into()));
        };
        let ys = ry
            .linear_factor_roots()
            .ok_or_else(|| Error::Unsupported("y-coordinates of singular points are not in the coefficient field; supply them".into()))?;
        for y0 in ys {
            if is_singular_point(g, &x0, &y0) {
                out.push((x0.clone(), y0));
            }
        }
    }
    Ok(out)
}

/// Sum of the Milnor numbers of the special fiber at its singular points.
pub fn total_milnor<K: Field>(fam: &FamilyModel<K>) -> Result<u32> {
    let pts = fam
        .singular_points
        .as_ref()
        .ok_or_else(|| Error::InsufficientData("singular points of the special fiber are unknown".into()))?;
    let g = fam.special_fiber();
    let mut total = 0u32;
    for (x0, y0) in pts {
        if !is_singular_point(&g, x0, y0) {
            return Err(Error::Validation(format!("({x0}, {y0}) is not a singular point of the special fiber")));
        }
        let germ = translate(&g, x0, y0);
        match milnor_number(&germ)?.mu {
            Colength::Finite(m) => total += m as u32,
            Colength::Infinite => {
                return Err(Error::Unsupported(format!("non-isolated singularity at ({x0}, {y0})")));
            }
        }
    }
    Ok(total)
}

/// Milnor number of the total space `{F = 0} ⊂ C³` at `(x0, y0, 0)`; zero where it is smooth.
pub fn total_space_milnor<K: Field>(total: &MPoly<K>, x0: &K, y0: &K) -> Result<u32> {
    let germ = translate(total, x0, y0);
    if !germ.constant_term().is_zero() {
        return Err(Error::Validation(format!("({x0}, {y0}, 0) is not on the total space")));
    }
    match milnor_number_surface(&germ)?.mu {
        Colength::Finite(m) => Ok(m as u32),
        Colength::Infinite => Err(Error::Unsupported("total space has a non-isolated singularity".into())),
    }
}

/// `Δ_f = μ_X + (χ(X₀) − χ(X_t))` and the slope `rk E · Δ_f / 12`.
///
/// Without an explicit `chi_difference` the Euler characteristic jump is
/// taken as the total Milnor number of the special fiber, which holds for a
/// reduced fiber with isolated singularities.
pub fn delta_f<K: Field>(fam: &FamilyModel<K>, mu_x: u32, chi_difference: Option<i64>) -> Result<DegenerationReport> {
    let mu_total = if fam.singular_points.is_some() { Some(total_milnor(fam)?) } else { None };
    let chi = match (chi_difference, mu_total) {
        (Some(c), _) => c,
        (None, Some(m)) => m as i64,
        (None, None) => {
            return Err(Error::InsufficientData(
                "χ(X₀) − χ(X_t) is neither supplied nor computable (unknown singular points)".into(),
            ))
        }
    };
    let delta = mu_x as i64 + chi;
    Ok(DegenerationReport {
        mu_total,
        mu_x,
        chi_difference: chi,
        chi_special: None,
        chi_generic: None,
        delta_f: delta,
        rank_e: fam.rank_e,
        predicted_slope: rat(fam.rank_e as i64 * delta, 12),
    })
}

/// `rk E · (2 − 2g) · (ζ'(−1)/ζ(−1) + 1/2)` with `ζ(−1) = −1/12`.
pub fn deligne_rr_constant<T: Real>(genus: u32, rank_e: u32) -> T {
    let factor = T::from_usize_lossy(rank_e as usize) * (T::lit(2.0) - T::lit(2.0) * T::from_usize_lossy(genus as usize));
    if factor.is_zero() {
        return T::zero();
    }
    let ratio = zeta_prime_minus_one::<T>() / T::lit(-1.0 / 12.0);
    factor * (ratio + T::lit(0.5))
}

/// Degeneration data of a Weierstrass family at `t = 0`, computed by two routes.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct WeierstrassDegeneration {
    pub kodaira: KodairaType,
    pub u_order: u32,
    pub ord_delta: u32,
    /// `μ` of the total space from the du Val table.
    pub mu_duval: u32,
    /// `μ` of the total space from a local standard basis in `x, y, t`.
    pub mu_total_space: u32,
    pub report: DegenerationReport,
    /// `ord₀Δ = Δ_f` and both `μ` routes agree.
    pub consistent: bool,
}

/// Minimalizes `m` and assembles `Δ_f` for the (rank one) Weierstrass family.
pub fn weierstrass_degeneration<K: Field>(m: &WeierstrassModel<K>) -> Result<WeierstrassDegeneration> {
    let (min, u_order) = minimalize(m)?;
    let kodaira = kodaira_type(&min)?;
    let mu_duval = kodaira.du_val.map_or(0, |d| d.mu());
    let chi_difference = kodaira.kind.chi_difference() as i64;

    let total = min.equation();
    let fiber = total.eval_var(Var::T, &K::zero());
    let points = find_singular_points(&fiber)?;
    let mut mu_total_space = 0;
    let mut mu_fiber = 0;
    for (x0, y0) in &points {
        mu_total_space += total_space_milnor(&total, x0, y0)?;
        if let Colength::Finite(mu) = milnor_number(&translate(&fiber, x0, y0))?.mu {
            mu_fiber += mu as u32;
        }
    }
    let delta = mu_duval as i64 + chi_difference;
    let report = DegenerationReport {
        mu_total: Some(mu_fiber),
        mu_x: mu_duval,
        chi_difference,
        chi_special: Some(chi_difference),
        chi_generic: Some(0),
        delta_f: delta,
        rank_e: 1,
        predicted_slope: rat(delta, 12),
    };
    let consistent = delta == kodaira.euler_number as i64 && mu_duval == mu_total_space;
    Ok(WeierstrassDegeneration { kodaira, u_order, ord_delta: kodaira.euler_number, mu_duval, mu_total_space, report, consistent })
}
