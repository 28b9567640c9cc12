mod common;

use std::cmp::Ordering;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use qdl::algebra::{rat, GaussRational, MPoly, Monomial, TermOrder, Var};
use qdl::local_algebra::{milnor_number, standard_basis, tjurina_number, Colength};
use qdl::monodromy::{monodromy_eigenvalues, spectrum_quasihomogeneous};
use qdl::newton_polygon::{branch_count_and_delta, convenient_completion, is_nondegenerate, newton_number, newton_polygon};
use qdl::Poly;

fn mu(f: &Poly) -> usize {
    milnor_number(f).unwrap().mu.finite().expect("isolated")
}

fn kouchnirenko(f: &Poly, mu_hint: usize) -> i64 {
    let p = newton_polygon(f).unwrap();
    if p.convenient {
        newton_number(&p).unwrap()
    } else {
        let g = convenient_completion(f, mu_hint as u32 + 2);
        newton_number(&newton_polygon(&g).unwrap()).unwrap()
    }
}

#[test]
fn ade_milnor_numbers() {
    for (name, expr, expected) in ade_table() {
        let f = poly(&expr);
        assert_eq!(mu(&f), expected, "{name}");
        assert_eq!(oracle_milnor(&f, expected), expected, "{name} oracle");
    }
}

#[test]
fn suite_against_truncated_linear_algebra() {
    for g in germ_suite() {
        let f = poly(g.expr);
        let m = mu(&f);
        assert_eq!(m, g.mu, "{}", g.name);
        assert_eq!(oracle_milnor(&f, g.mu), g.mu, "{} oracle", g.name);
        let tau = tjurina_number(&f).unwrap().finite().unwrap();
        assert_eq!(tau, oracle_tjurina(&f, g.mu), "{} tjurina", g.name);
        assert!(tau <= m);
        assert_eq!(is_nondegenerate(&f).unwrap(), g.nondegenerate, "{}", g.name);
        if g.nondegenerate {
            assert_eq!(kouchnirenko(&f, m), m as i64, "{} Kouchnirenko", g.name);
        }
    }
}

#[test]
fn degenerate_germ_exceeds_newton_number() {
    let f = poly("(y^2 - x^3)^2 + x^7");
    assert!(kouchnirenko(&f, 17) < 17);
}

#[test]
fn quasi_homogeneous_tjurina_equals_milnor() {
    for (name, expr, m) in ade_table() {
        let f = poly(&expr);
        assert_eq!(tjurina_number(&f).unwrap(), Colength::Finite(m), "{name}");
    }
}

#[test]
fn non_isolated_is_infinite() {
    let f = poly("y^2*x^2");
    assert_eq!(milnor_number(&f).unwrap().mu, Colength::Infinite);
}

#[test]
fn milnor_algebra_basis_of_e6() {
    let d = milnor_number(&poly("x^3 + y^4")).unwrap();
    let mut basis = d.algebra_basis.clone();
    basis.sort_by_key(|m| (m.exp(Var::X), m.exp(Var::Y)));
    let expected: Vec<Monomial> = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)].iter().map(|&(a, b)| Monomial::xy(a, b)).collect();
    assert_eq!(basis, expected);
}

#[test]
fn branches_and_delta() {
    // μ = 2δ − r + 1 (Milnor's formula)
    for (expr, r, delta) in [("y^2 - x^3", 1, 1), ("y^2 - x^2", 2, 1), ("x^4 + y^4", 4, 6), ("y^3 - x^5 + x^2*y^2", 1, 4)] {
        let f = poly(expr);
        let b = branch_count_and_delta(&f).unwrap();
        assert_eq!((b.branch_count, b.delta), (r, delta), "{expr}");
        assert_eq!(mu(&f) as i64, 2 * delta as i64 - r as i64 + 1);
    }
}

/// Characteristic polynomial `λ² − tr T·λ + det T` of the explicit cusp monodromy matrix.
fn cusp_matrix_char_poly() -> Vec<BigInt> {
    let t = [[0i64, 1], [-1, 1]];
    let tr = t[0][0] + t[1][1];
    let det = t[0][0] * t[1][1] - t[0][1] * t[1][0];
    vec![det.into(), (-tr).into(), 1.into()]
}

#[test]
fn cusp_monodromy_matches_matrix() {
    let d = monodromy_eigenvalues(&poly("y^2 - x^3")).unwrap();
    assert_eq!(d.char_poly, cusp_matrix_char_poly());
    assert_eq!(d.cyclotomic_factors, vec![(6, 1)]);
    assert_eq!(d.eigenvalue_args, vec![rat(1, 6), rat(5, 6)]);
    assert_eq!(d.spectrum.values, vec![rat(5, 6), rat(7, 6)]);
    assert_eq!(d.barlet_exponents, vec![rat(1, 3), rat(5, 3)]);
}

#[test]
fn e8_monodromy_is_phi15() {
    // spectrum i/3 + j/5: the eigenvalues are the primitive 15th roots of unity
    let d = monodromy_eigenvalues(&poly("x^3 + y^5")).unwrap();
    assert_eq!(d.cyclotomic_factors, vec![(15, 1)]);
    assert_eq!(d.char_poly.len(), 9);
}

#[test]
fn a1_eigenvalue_one_is_excluded() {
    let d = monodromy_eigenvalues(&poly("x^2 + y^2")).unwrap();
    assert_eq!(d.spectrum.values, vec![rat(1, 1)]);
    assert!(d.barlet_exponents.is_empty());
    assert_eq!(d.excluded, vec![rat(1, 1)]);
}

#[test]
fn spectrum_rejects_non_quasi_homogeneous() {
    assert!(spectrum_quasihomogeneous(&poly("(y^2 - x^3)^2 + x^7")).is_err());
}

#[test]
fn local_order_exhaustive() {
    let monos: Vec<Monomial> = (0..=10u32).flat_map(|d| (0..=d).map(move |a| Monomial::xy(a, d - a))).collect();
    let o = TermOrder::LocalDegRevLex;
    let one = Monomial::xy(0, 0);
    for a in &monos {
        if !a.is_one() {
            assert_eq!(o.cmp(&one, a), Ordering::Greater);
        }
        for b in &monos {
            let ab = o.cmp(a, b);
            assert_eq!(ab, o.cmp(b, a).reverse());
            assert_eq!(ab == Ordering::Equal, a == b);
            for c in [Monomial::xy(1, 0), Monomial::xy(0, 1), Monomial::xy(2, 3)] {
                assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab, "multiplicative");
            }
            if ab == Ordering::Greater {
                for c in &monos {
                    if o.cmp(b, c) == Ordering::Greater {
                        assert_eq!(o.cmp(a, c), Ordering::Greater, "transitive");
                    }
                }
            }
        }
    }
}

fn suite_poly() -> impl Strategy<Value = (Poly, usize)> {
    prop::sample::select(germ_suite().into_iter().filter(|g| g.mu <= 11).map(|g| (g.expr, g.mu)).collect::<Vec<_>>())
        .prop_map(|(e, m)| (poly(e), m))
}

fn lin(c: i64, v: Var) -> Poly {
    MPoly::term(GaussRational::real(rat(c, 1)), Monomial::var(v))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn milnor_invariant_under_linear_change((f, m) in suite_poly(), a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3) {
        prop_assume!(a * d - b * c != 0);
        let g = f.substitute_all(&[(Var::X, &lin(a, Var::X) + &lin(b, Var::Y)), (Var::Y, &lin(c, Var::X) + &lin(d, Var::Y))]);
        prop_assert_eq!(mu(&g), m);
    }

    #[test]
    fn newton_number_symmetric_under_swap((f, m) in suite_poly()) {
        let g = f.substitute_all(&[(Var::X, Poly::y()), (Var::Y, Poly::x())]);
        prop_assert_eq!(kouchnirenko(&f, m), kouchnirenko(&g, m));
    }

    #[test]
    fn standard_basis_independent_of_generator_order((f, _m) in suite_poly(), rot in 0usize..3) {
        let mut gens = vec![f.derivative(Var::X), f.derivative(Var::Y), f.clone()];
        let a = standard_basis(&gens).unwrap();
        gens.rotate_left(rot);
        let b = standard_basis(&gens).unwrap();
        let mut sa = a.leading_staircase.clone();
        let mut sb = b.leading_staircase.clone();
        sa.sort();
        sb.sort();
        prop_assert_eq!(sa, sb);
    }

    #[test]
    fn tjurina_at_most_milnor(a in 1u32..6, b in 2u32..7, mixed in prop::sample::select(vec![0i64, 1, 3, 5])) {
        // 2 is avoided: x⁴ + y⁴ + 2x²y² is a square
        let f = poly(&format!("x^{} + y^{} + {mixed}*x^2*y^2", a + 1, b));
        let m = mu(&f);
        let t = tjurina_number(&f).unwrap().finite().unwrap();
        prop_assert!(t <= m);
    }

    #[test]
    fn spectrum_symmetric(p in 2u32..8, q in 2u32..8) {
        let f = poly(&format!("x^{p} + y^{q}"));
        let s = spectrum_quasihomogeneous(&f).unwrap().values;
        let mut mirrored: Vec<_> = s.iter().map(|v| rat(2, 1) - v).collect();
        mirrored.sort();
        prop_assert_eq!(s.len() as u32, (p - 1) * (q - 1));
        prop_assert_eq!(mirrored, s);
    }
}
