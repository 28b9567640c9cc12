//! Newton polygons of plane-curve germs, Kouchnirenko's Newton number,
//! Newton nondegeneracy and the branch count / delta invariant.

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{MPoly, Monomial, UPoly, Var};
use crate::error::{Error, Result};
use crate::local_algebra::{milnor_number, Colength};
use crate::scalar::Field;

/// A lattice point `(α, β)` standing for `x^α y^β`.
pub type Point = (u32, u32);

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Edge {
    /// Endpoint on the `y`-axis side (smaller `α`).
    pub start: Point,
    /// Endpoint on the `x`-axis side.
    pub end: Point,
    /// Primitive step `(p, -q)` from `start` towards `end`.
    pub direction: (i64, i64),
    pub lattice_length: u32,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NewtonPolygon {
    pub support: Vec<Point>,
    pub vertices: Vec<Point>,
    /// Compact edges from the `y`-axis side to the `x`-axis side (steepest first).
    pub compact_edges: Vec<Edge>,
    pub convenient: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct BranchData {
    pub branch_count: u32,
    pub delta: u32,
}

fn cross(o: Point, a: Point, b: Point) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

fn plane_support<K: Field>(f: &MPoly<K>) -> Result<Vec<Point>> {
    f.require_vars(&[Var::X, Var::Y])?;
    if f.is_zero() {
        return Err(Error::Domain("zero polynomial has no Newton polygon".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::Domain("germ does not vanish at the origin".into()));
    }
    let mut pts: Vec<Point> = f.terms().map(|(m, _)| (m.exp(Var::X), m.exp(Var::Y))).collect();
    pts.sort();
    Ok(pts)
}

/// Newton polygon of a germ in `x, y`.
pub fn newton_polygon<K: Field>(f: &MPoly<K>) -> Result<NewtonPolygon> {
    let support = plane_support(f)?;

    // lowest point in each column; the hull only sees those
    let mut columns: Vec<Point> = Vec::new();
    for &p in &support {
        match columns.last() {
            Some(q) if q.0 == p.0 => {}
            _ => columns.push(p),
        }
    }
    let mut hull: Vec<Point> = Vec::new();
    for &p in &columns {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    // keep the descending part, up to the first point of minimal height
    let min_beta = hull.iter().map(|p| p.1).min().expect("nonempty");
    let stop = hull.iter().position(|p| p.1 == min_beta).expect("present");
    hull.truncate(stop + 1);

    let compact_edges = hull
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let dx = b.0 as i64 - a.0 as i64;
            let dy = b.1 as i64 - a.1 as i64;
            let g = dx.gcd(&dy);
            Edge { start: a, end: b, direction: (dx / g, dy / g), lattice_length: g as u32 }
        })
        .collect();

    let convenient = hull.first().is_some_and(|p| p.0 == 0) && hull.last().is_some_and(|p| p.1 == 0);
    Ok(NewtonPolygon { support, vertices: hull, compact_edges, convenient })
}

/// Kouchnirenko number `2S − a − b + 1` of a convenient polygon, where `S` is
/// the area enclosed by the polygon and the axes and `a`, `b` are its
/// intercepts on the `x`- and `y`-axes.
pub fn newton_number(p: &NewtonPolygon) -> Result<i64> {
    if !p.convenient {
        return Err(Error::Precondition("Newton number needs a convenient polygon (touching both axes)".into()));
    }
    let b = p.vertices.first().expect("nonempty").1 as i64;
    let a = p.vertices.last().expect("nonempty").0 as i64;
    // shoelace over origin, vertices; twice the area
    let mut twice_area = 0i64;
    let mut ring: Vec<Point> = vec![(0, 0)];
    ring.extend(p.vertices.iter().copied());
    for k in 0..ring.len() {
        let (x0, y0) = ring[k];
        let (x1, y1) = ring[(k + 1) % ring.len()];
        twice_area += x0 as i64 * y1 as i64 - x1 as i64 * y0 as i64;
    }
    Ok(twice_area.abs() - a - b + 1)
}

/// Edge polynomial of `e` as a polynomial in `u = x^p / y^q`.
pub fn edge_polynomial<K: Field>(f: &MPoly<K>, e: &Edge) -> UPoly<K> {
    let mut coeffs = vec![K::zero(); e.lattice_length as usize + 1];
    for (j, c) in coeffs.iter_mut().enumerate() {
        let a = e.start.0 as i64 + j as i64 * e.direction.0;
        let b = e.start.1 as i64 + j as i64 * e.direction.1;
        *c = f.coeff(&Monomial::xy(a as u32, b as u32));
    }
    UPoly::new(coeffs)
}

/// Newton nondegeneracy: every compact-edge polynomial is squarefree in the torus.
///
/// Germs with a nonzero constant term, or in other variables, are reported as errors.
pub fn is_nondegenerate<K: Field>(f: &MPoly<K>) -> Result<bool> {
    let poly = newton_polygon(f)?;
    Ok(poly.compact_edges.iter().all(|e| edge_polynomial(f, e).is_squarefree()))
}

/// `f + x^n + y^n`, a convenient germ with the same Milnor number as `f` when
/// `n ≥ μ(f) + 2` (finite determinacy).
pub fn convenient_completion<K: Field>(f: &MPoly<K>, n: u32) -> MPoly<K> {
    let mut g = f.clone();
    g.add_term(K::one(), Monomial::xy(n, 0));
    g.add_term(K::one(), Monomial::xy(0, n));
    g
}

/// Branch count `r` and delta invariant of a nondegenerate germ with finite
/// Milnor number, using `μ = 2δ − r + 1`.
///
/// `r` is the sum of the compact-edge lattice lengths plus one for each
/// coordinate axis contained in the curve (non-convenient germs).
pub fn branch_count_and_delta<K: Field>(f: &MPoly<K>) -> Result<BranchData> {
    let poly = newton_polygon(f)?;
    if !poly.compact_edges.iter().all(|e| edge_polynomial(f, e).is_squarefree()) {
        return Err(Error::Unsupported(
            "germ is Newton degenerate; branch count cannot be read off the polygon, supply r manually".into(),
        ));
    }
    let mu = match milnor_number(f)?.mu {
        Colength::Finite(m) => m as i64,
        Colength::Infinite => {
            return Err(Error::Precondition("branch data needs an isolated singularity".into()));
        }
    };
    let mut r: i64 = poly.compact_edges.iter().map(|e| e.lattice_length as i64).sum();
    let first = poly.vertices.first().expect("nonempty");
    let last = poly.vertices.last().expect("nonempty");
    if first.0 > 0 {
        r += 1; // x divides f
    }
    if last.1 > 0 {
        r += 1; // y divides f
    }
    let twice_delta = mu + r - 1;
    if twice_delta < 0 || twice_delta % 2 != 0 {
        return Err(Error::Internal(format!("μ + r − 1 = {twice_delta} is not a non-negative even number")));
    }
    Ok(BranchData { branch_count: r as u32, delta: (twice_delta / 2) as u32 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type P = MPoly<Rational>;

    fn x() -> P {
        P::x()
    }
    fn y() -> P {
        P::y()
    }

    #[test]
    fn cusp_and_node_polygons() {
        let cusp = newton_polygon(&(&y().pow(2) - &x().pow(3))).unwrap();
        assert_eq!(cusp.compact_edges.len(), 1);
        assert_eq!(cusp.compact_edges[0].start, (0, 2));
        assert_eq!(cusp.compact_edges[0].end, (3, 0));
        assert_eq!(cusp.compact_edges[0].lattice_length, 1);
        assert!(cusp.convenient);
        assert_eq!(newton_number(&cusp).unwrap(), 2);

        let node = newton_polygon(&(&x().pow(2) + &y().pow(2))).unwrap();
        assert_eq!(node.compact_edges[0].lattice_length, 2);
        assert_eq!(newton_number(&node).unwrap(), 1);

        let e6 = newton_polygon(&(&x().pow(3) + &y().pow(4))).unwrap();
        assert_eq!(newton_number(&e6).unwrap(), 6);
    }

    #[test]
    fn two_edges_through_xy() {
        let f = &(&x().pow(3) + &(&x() * &y())) + &y().pow(3);
        let p = newton_polygon(&f).unwrap();
        assert_eq!(p.vertices, vec![(0, 3), (1, 1), (3, 0)]);
        assert_eq!(p.compact_edges.len(), 2);
        assert_eq!(newton_number(&p).unwrap(), 1);
    }

    #[test]
    fn interior_points_are_ignored() {
        // x^2 y^2 lies above the hull of y^4 + x^4
        let f = &(&x().pow(4) + &y().pow(4)) + &(&x().pow(2) * &y().pow(2));
        let p = newton_polygon(&f).unwrap();
        assert_eq!(p.vertices, vec![(0, 4), (4, 0)]);
    }

    #[test]
    fn non_convenient_polygon() {
        let f = &x() * &y();
        let p = newton_polygon(&f).unwrap();
        assert!(!p.convenient);
        assert!(p.compact_edges.is_empty());
        assert!(matches!(newton_number(&p), Err(Error::Precondition(_))));
        assert!(is_nondegenerate(&f).unwrap());
        assert!(newton_polygon(&P::zero()).is_err());
    }

    #[test]
    fn degenerate_edge_is_detected() {
        let f = &(&y() - &x()).pow(2) - &x().pow(3);
        assert!(!is_nondegenerate(&f).unwrap());
        assert!(is_nondegenerate(&(&y().pow(2) - &x().pow(3))).unwrap());
        assert!(matches!(branch_count_and_delta(&f), Err(Error::Unsupported(_))));
    }

    #[test]
    fn branch_data() {
        let cusp = &y().pow(2) - &x().pow(3);
        assert_eq!(branch_count_and_delta(&cusp).unwrap(), BranchData { branch_count: 1, delta: 1 });
        let node = &x().pow(2) + &y().pow(2);
        assert_eq!(branch_count_and_delta(&node).unwrap(), BranchData { branch_count: 2, delta: 1 });
        let tacnode = &y().pow(2) - &x().pow(4);
        assert_eq!(branch_count_and_delta(&tacnode).unwrap(), BranchData { branch_count: 2, delta: 2 });
        // D4 = y(x^2 + y^2): three lines
        let d4 = &y() * &(&x().pow(2) + &y().pow(2));
        assert_eq!(branch_count_and_delta(&d4).unwrap(), BranchData { branch_count: 3, delta: 3 });
        // E7 = x(x^2 + y^3): a line and a cusp
        let e7 = &x() * &(&x().pow(2) + &y().pow(3));
        assert_eq!(branch_count_and_delta(&e7).unwrap().branch_count, 2);
    }
}
