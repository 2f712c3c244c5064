//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Real};

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

pub const MAX_SUBDIVISIONS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T: Real> {
    pub value: Complex<T>,
    pub error: T,
    pub intervals: usize,
}

#[derive(Clone, Copy)]
struct Segment<T: Real> {
    a: T,
    b: T,
    value: Complex<T>,
    error: T,
}

// max-heap on the error estimate
impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real> Eq for Segment<T> {}
impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.a.partial_cmp(&self.a).unwrap_or(Ordering::Equal))
    }
}

fn kronrod15<T: Real, F: Fn(T) -> Complex<T>>(f: &F, a: T, b: T) -> Segment<T> {
    let half: T = lit(0.5);
    let center = (a + b) * half;
    let half_len = (b - a) * half;
    let f_center = f(center);
    let mut res_k = f_center * lit::<T>(WGK[7]);
    let mut res_g = f_center * lit::<T>(WG[3]);
    let mut res_abs = f_center.norm() * lit::<T>(WGK[7]);
    let mut samples = [(Complex::new(T::zero(), T::zero()), Complex::new(T::zero(), T::zero())); 7];
    for (j, sample) in samples.iter_mut().enumerate() {
        let dx = half_len * lit::<T>(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        *sample = (f1, f2);
        let w = lit::<T>(WGK[j]);
        res_k = res_k + (f1 + f2) * w;
        res_abs = res_abs + (f1.norm() + f2.norm()) * w;
        if j % 2 == 1 {
            res_g = res_g + (f1 + f2) * lit::<T>(WG[j / 2]);
        }
    }
    let mean = res_k * half;
    let mut res_asc = (f_center - mean).norm() * lit::<T>(WGK[7]);
    for (j, &(f1, f2)) in samples.iter().enumerate() {
        res_asc = res_asc + ((f1 - mean).norm() + (f2 - mean).norm()) * lit::<T>(WGK[j]);
    }
    let scale = half_len.abs();
    let value = res_k * half_len;
    res_abs = res_abs * scale;
    res_asc = res_asc * scale;
    let mut error = ((res_k - res_g) * half_len).norm();
    if res_asc != T::zero() && error != T::zero() {
        let r = (lit::<T>(200.0) * error / res_asc).powf(lit(1.5));
        error = res_asc * r.min(T::one());
    }
    let floor = lit::<T>(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (lit::<T>(50.0) * T::epsilon()) && floor > error {
        error = floor;
    }
    Segment { a, b, value, error }
}

/// Integrates `f` over `[a, b]` to absolute error `tol`.
pub fn adaptive_quad<T: Real, F: Fn(T) -> Complex<T>>(f: F, a: T, b: T, tol: T) -> Result<QuadResult<T>> {
    adaptive_quad_points(f, &[a, b], tol)
}

/// Integrates over `[points[0], points[last]]`, using the interior points as
/// initial breakpoints (kinks, discontinuities of the integrand).
pub fn adaptive_quad_points<T: Real, F: Fn(T) -> Complex<T>>(f: F, points: &[T], tol: T) -> Result<QuadResult<T>> {
    if points.len() < 2 {
        return domain("adaptive_quad", "need at least two integration limits");
    }
    if !(tol > T::zero()) {
        return domain("adaptive_quad", "tolerance must be positive");
    }
    if points.iter().any(|p| !p.is_finite()) || points.windows(2).any(|w| w[1] < w[0]) {
        return domain("adaptive_quad", "limits must be finite and non-decreasing");
    }
    let mut heap: BinaryHeap<Segment<T>> = points
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| kronrod15(&f, w[0], w[1]))
        .collect();
    if heap.is_empty() {
        return Ok(QuadResult { value: Complex::new(T::zero(), T::zero()), error: T::zero(), intervals: 0 });
    }
    let mut total_err = heap.iter().fold(T::zero(), |acc, s| acc + s.error);
    while total_err > tol {
        if heap.len() >= MAX_SUBDIVISIONS {
            let value = heap.iter().fold(Complex::new(T::zero(), T::zero()), |acc, s| acc + s.value);
            return Err(Error::NonConvergence {
                estimate: (value.re.to_f64().unwrap_or(f64::NAN), value.im.to_f64().unwrap_or(f64::NAN)),
                error_estimate: total_err.to_f64().unwrap_or(f64::NAN),
            });
        }
        let seg = heap.pop().expect("non-empty heap");
        let mid = (seg.a + seg.b) * lit(0.5);
        if seg.error == T::zero() || mid <= seg.a || mid >= seg.b {
            // interval cannot be split further in this precision
            heap.push(Segment { error: T::zero(), ..seg });
            total_err = heap.iter().fold(T::zero(), |acc, s| acc + s.error);
            if heap.peek().is_none_or(|s| s.error == T::zero()) {
                break;
            }
            continue;
        }
        let left = kronrod15(&f, seg.a, mid);
        let right = kronrod15(&f, mid, seg.b);
        total_err = total_err - seg.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
        // the running sum drifts; refresh it now and then
        if heap.len().is_multiple_of(512) || total_err <= tol {
            total_err = heap.iter().fold(T::zero(), |acc, s| acc + s.error);
        }
    }
    let mut segments = heap.into_vec();
    // deterministic summation order
    segments.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(Ordering::Equal));
    let value = segments.iter().fold(Complex::new(T::zero(), T::zero()), |acc, s| acc + s.value);
    let error = segments.iter().fold(T::zero(), |acc, s| acc + s.error);
    Ok(QuadResult { value, error, intervals: segments.len() })
}
