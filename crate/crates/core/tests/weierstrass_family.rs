mod common;

use common::poly;
use proptest::prelude::*;
use qdl::algebra::{rat, Var};
use qdl::error::Error;
use qdl::family::{delta_f, total_milnor, weierstrass_degeneration, FamilyModel};
use qdl::weierstrass::{delta_f_check, kodaira_type, minimalize, AdeFamily, KodairaKind, WeierstrassModel};
use qdl::Poly;

fn short(a4: &str, a6: &str) -> WeierstrassModel {
    WeierstrassModel::short(poly(a4), poly(a6)).unwrap()
}

fn k(n: i64) -> Poly {
    poly(&n.to_string())
}

fn ord(p: &Poly) -> Option<u32> {
    p.min_exponent(Var::T)
}

/// Kodaira symbol from `(ord c4, ord c6, ord Δ)` of a minimal model (residue characteristic 0).
fn tate_table(o4: Option<u32>, o6: Option<u32>, od: u32) -> KodairaKind {
    let o4 = o4.unwrap_or(u32::MAX);
    let o6 = o6.unwrap_or(u32::MAX);
    match od {
        0 => KodairaKind::I0,
        n if o4 == 0 => KodairaKind::In(n),
        n if o4 == 2 && o6 == 3 && n > 6 => KodairaKind::InStar(n - 6),
        2 => KodairaKind::II,
        3 => KodairaKind::III,
        4 => KodairaKind::IV,
        6 => KodairaKind::I0Star,
        8 => KodairaKind::IVStar,
        9 => KodairaKind::IIIStar,
        10 => KodairaKind::IIStar,
        _ => panic!("not a minimal model"),
    }
}

#[test]
fn isotrivial_cusp_families() {
    let expected = [
        (KodairaKind::II, None),
        (KodairaKind::IV, Some((AdeFamily::A, 2))),
        (KodairaKind::I0Star, Some((AdeFamily::D, 4))),
        (KodairaKind::IVStar, Some((AdeFamily::E, 6))),
        (KodairaKind::IIStar, Some((AdeFamily::E, 8))),
    ];
    for (kk, (kind, du_val)) in (1..=5u32).zip(expected) {
        let m = short("0", &format!("t^{kk}"));
        let ty = kodaira_type(&m).unwrap();
        assert_eq!(ty.kind, kind, "k = {kk}");
        assert_eq!(ty.du_val.map(|d| (d.family, d.index)), du_val);
        let check = delta_f_check(&m).unwrap();
        assert_eq!(check.ord_delta, 2 * kk);
        assert_eq!(check.mu_duval + check.chi_fiber_diff, 2 * kk);
        assert!(check.consistent);
        let deg = weierstrass_degeneration(&m).unwrap();
        assert!(deg.consistent, "k = {kk}");
        assert_eq!(deg.mu_total_space, 2 * (kk - 1));
        assert_eq!(deg.report.predicted_slope, rat(kk as i64, 6));
    }
}

#[test]
fn nodal_and_nonminimal_models() {
    let node = short("-3", "2 + t");
    let ty = kodaira_type(&node).unwrap();
    assert_eq!(ty.kind, KodairaKind::In(1));
    assert!(delta_f_check(&node).unwrap().consistent);
    assert_eq!(weierstrass_degeneration(&node).unwrap().report.delta_f, 1);

    let big = short("0", "t^7");
    let (min, u) = minimalize(&big).unwrap();
    assert_eq!(u, 1);
    assert_eq!(min, short("0", "t"));

    let smooth = short("t^4", "t^6 + t^7");
    let (min, u) = minimalize(&smooth).unwrap();
    assert_eq!(u, 1);
    assert_eq!(kodaira_type(&min).unwrap().kind, KodairaKind::I0);
}

#[test]
fn translated_model_goes_through_short_form() {
    // y² = (x + 1)³ + t⁷: same invariants as x³ + t⁷, but a2 = 3 is not divisible by t²
    let m = WeierstrassModel::new([k(0), k(3), k(0), k(3), poly("1 + t^7")]).unwrap();
    assert!(!m.is_minimal());
    let (min, u) = minimalize(&m).unwrap();
    assert_eq!(u, 1);
    assert_eq!(kodaira_type(&min).unwrap().kind, KodairaKind::II);
}

#[test]
fn discriminant_of_short_model() {
    let m = short("-3", "2 + t");
    let (a4, a6) = (poly("-3"), poly("2 + t"));
    let direct = &k(-16) * &(&(&k(4) * &a4.pow(3)) + &(&k(27) * &a6.pow(2)));
    assert_eq!(m.invariants().discriminant, direct);
}

#[test]
fn zero_discriminant_rejected() {
    assert!(matches!(WeierstrassModel::short(k(0), k(0)), Err(Error::Domain(_))));
}

#[test]
fn family_cusp_and_node() {
    let fam = FamilyModel::new(poly("y^2 - x^3 - t"), None, 1).unwrap();
    assert_eq!(total_milnor(&fam).unwrap(), 2);
    let r = delta_f(&fam, 0, None).unwrap();
    assert_eq!(r.delta_f, 2);
    assert_eq!(r.predicted_slope, rat(1, 6));

    let fam = FamilyModel::new(poly("y^2 - x^2 - t"), None, 2).unwrap();
    let r = delta_f(&fam, 0, None).unwrap();
    assert_eq!(r.delta_f, 1);
    assert_eq!(r.predicted_slope, rat(2, 12));
}

#[test]
fn family_validation() {
    use qdl::algebra::GaussRational;
    let one = GaussRational::real(rat(1, 1));
    let zero = GaussRational::real(rat(0, 1));
    let bad = FamilyModel::new(poly("y^2 - x^3 - t"), Some(vec![(one, zero)]), 1);
    assert!(matches!(bad, Err(Error::Validation(_))));
    assert!(FamilyModel::new(poly("y^2 - t"), None, 1).is_err());
    assert!(FamilyModel::new(poly("y^2 - x^3 - t"), None, 0).is_err());
}

fn small_poly_in_t() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 1..4).prop_map(|cs| {
        let mut p = Poly::zero();
        for (e, c) in cs.into_iter().enumerate() {
            p = &p + &poly(&format!("{c}*t^{e}"));
        }
        p
    })
}

fn model_strategy() -> impl Strategy<Value = WeierstrassModel> {
    (small_poly_in_t(), small_poly_in_t(), small_poly_in_t(), small_poly_in_t(), small_poly_in_t(), 0u32..3, 0u32..5)
        .prop_filter_map("degenerate", |(a1, a2, a3, a4, a6, s4, s6)| {
            let t4 = poly(&format!("t^{s4}"));
            let t6 = poly(&format!("t^{s6}"));
            WeierstrassModel::new([a1, a2, a3, &a4 * &t4, &a6 * &t6]).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn c4_cubed_minus_c6_squared(m in model_strategy()) {
        let inv = m.invariants();
        let lhs = &inv.c4.pow(3) - &inv.c6.pow(2);
        prop_assert_eq!(lhs, &k(1728) * &inv.discriminant);
    }

    #[test]
    fn minimalize_idempotent(m in model_strategy()) {
        let (once, _) = minimalize(&m).unwrap();
        let (twice, u) = minimalize(&once).unwrap();
        prop_assert_eq!(u, 0);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn kodaira_matches_table(m in model_strategy()) {
        let (min, _) = minimalize(&m).unwrap();
        let inv = min.invariants();
        let expected = tate_table(ord(&inv.c4), ord(&inv.c6), ord(&inv.discriminant).unwrap());
        let ty = kodaira_type(&min).unwrap();
        prop_assert_eq!(ty.kind, expected);
        prop_assert!(delta_f_check(&min).unwrap().consistent);
    }
}
