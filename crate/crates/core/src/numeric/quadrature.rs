//! Globally adaptive Gauss–Kronrod (7, 15) quadrature.

use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: T,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_intervals: usize,
}

impl<T: Real> Default for QuadOptions<T> {
    fn default() -> Self {
        Self { abs_tol: T::lit(1e-10), rel_tol: T::lit(1e-10), max_intervals: 2000 }
    }
}

/// One Kronrod panel: `(estimate, error estimate)` with the QUADPACK error heuristic.
fn gk15<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let half = T::lit(0.5);
    let c = (a + b) * half;
    let h = (b - a) * half;
    let fc = f(c);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    let mut vals = [(T::zero(), T::zero()); 7];
    for j in 0..7 {
        let dx = h * T::lit(XGK[j]);
        let (f1, f2) = (f(c - dx), f(c + dx));
        vals[j] = (f1, f2);
        kronrod = kronrod + (f1 + f2) * T::lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * T::lit(WG[j / 2]);
        }
    }
    let mean = kronrod * half;
    let mut resasc = T::lit(WGK[7]) * (fc - mean).abs();
    let mut resabs = T::lit(WGK[7]) * fc.abs();
    for j in 0..7 {
        resasc = resasc + T::lit(WGK[j]) * ((vals[j].0 - mean).abs() + (vals[j].1 - mean).abs());
        resabs = resabs + T::lit(WGK[j]) * (vals[j].0.abs() + vals[j].1.abs());
    }
    let h_abs = h.abs();
    let (resasc, resabs) = (resasc * h_abs, resabs * h_abs);
    let mut err = ((kronrod - gauss) * h).abs();
    if resasc > T::zero() && err > T::zero() {
        err = resasc * T::one().min((T::lit(200.0) * err / resasc).powf(T::lit(1.5)));
    }
    let floor = T::lit(50.0) * T::epsilon() * resabs;
    if floor > err {
        err = floor;
    }
    (kronrod * h, err)
}

/// Integrates `f` over `[a, b]`, splitting first at the interior `breakpoints`
/// (where `f` may be singular or non-smooth).
pub fn integrate_with_breaks<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    breakpoints: &[T],
    opts: QuadOptions<T>,
) -> QuadResult<T> {
    let mut cuts: Vec<T> = vec![a];
    let mut inner: Vec<T> = breakpoints.iter().copied().filter(|&p| p > a && p < b).collect();
    inner.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    cuts.extend(inner);
    cuts.push(b);
    cuts.dedup();

    let mut intervals: Vec<(T, T, T, T)> = Vec::new();
    for w in cuts.windows(2) {
        let (v, e) = gk15(&mut f, w[0], w[1]);
        intervals.push((w[0], w[1], v, e));
    }
    let mut evaluations = 15 * intervals.len();
    loop {
        let total: T = intervals.iter().fold(T::zero(), |s, iv| s + iv.2);
        let err: T = intervals.iter().fold(T::zero(), |s, iv| s + iv.3);
        let tol = opts.abs_tol.max(opts.rel_tol * total.abs());
        if err <= tol || !err.is_finite() || intervals.len() >= opts.max_intervals {
            return QuadResult { value: total, error: err, evaluations, converged: err <= tol };
        }
        let (k, _) = intervals
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |best, (k, iv)| if iv.3 > best.1 { (k, iv.3) } else { best });
        let (lo, hi, _, _) = intervals.swap_remove(k);
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            // interval no longer splittable at this precision
            return QuadResult { value: total, error: err, evaluations, converged: false };
        }
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        evaluations += 30;
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
}

pub fn integrate<T: Real, F: FnMut(T) -> T>(f: F, a: T, b: T, opts: QuadOptions<T>) -> QuadResult<T> {
    integrate_with_breaks(f, a, b, &[], opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x: f64| x.powi(5) - 2.0 * x, 0.0, 2.0, QuadOptions::default());
        assert!((r.value - (64.0 / 6.0 - 4.0)).abs() < 1e-13);
        assert!(r.converged);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 -ln x dx = 1
        let opts = QuadOptions { abs_tol: 1e-12, rel_tol: 1e-12, max_intervals: 500 };
        let r = integrate(|x: f64| -x.ln(), 0.0, 1.0, opts);
        assert!((r.value - 1.0).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn interior_kink_with_breakpoint() {
        let opts = QuadOptions::default();
        let r = integrate_with_breaks(|x: f64| (x - 0.3).abs(), 0.0, 1.0, &[0.3], opts);
        assert!((r.value - (0.045 + 0.245)).abs() < 1e-14);
        let r32 = integrate(|x: f32| x * x, 0.0f32, 1.0, QuadOptions::default());
        assert!((r32.value - 1.0 / 3.0).abs() < 1e-6);
    }
}
