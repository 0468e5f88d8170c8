//! Adaptive Gauss-Kronrod quadrature on finite intervals.
//!
//! A 21-point Kronrod rule provides the local estimate and error; intervals
//! are bisected worst-first until the summed error estimate drops below the
//! requested absolute tolerance. Callers map improper integrals onto finite
//! windows (log or tangent substitutions) before integrating.

use crate::error::{domain, Error, Result};
use std::collections::BinaryHeap;

/// Default cap on the number of subintervals.
pub const DEFAULT_MAX_SEGMENTS: usize = 4096;

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub segments: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Integrate `f` over `[a, b]` to absolute tolerance `abs_tol`.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_segments: usize,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(domain(format!("bad integration interval [{a}, {b}]")));
    }
    if !abs_tol.is_finite() || abs_tol <= 0.0 {
        return Err(domain(format!("abs_tol must be positive, got {abs_tol}")));
    }

    let mut active: BinaryHeap<Segment> = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    let first = kronrod21(&f, a, b)?;
    let mut err_sum = first.error;
    active.push(first);

    while err_sum > abs_tol {
        if active.len() + frozen.len() >= max_segments {
            return Err(Error::Convergence(format!(
                "quadrature budget of {max_segments} segments exhausted (error {err_sum:.3e} > tol {abs_tol:.3e})"
            )));
        }
        let Some(worst) = active.pop() else {
            // Every segment is saturated by roundoff; report what we have.
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) || worst.error == 0.0 {
            frozen.push(worst);
            continue;
        }
        err_sum -= worst.error;
        let left = kronrod21(&f, worst.a, mid)?;
        let right = kronrod21(&f, mid, worst.b)?;
        err_sum += left.error + right.error;
        active.push(left);
        active.push(right);
    }

    let mut value = 0.0;
    let mut segments = 0;
    for seg in frozen.iter().chain(active.iter()) {
        value += seg.value;
        segments += 1;
    }
    Ok(QuadResult {
        value,
        abs_error: err_sum,
        segments,
    })
}

// 21-point Kronrod nodes/weights with the embedded 10-point Gauss rule
// (QUADPACK dqk21 constants).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut res_kronrod = fc * WGK[10];
    let mut res_gauss = 0.0;
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0f64; 10];
    let mut fv2 = [0.0f64; 10];

    // Odd Kronrod indices coincide with the embedded Gauss nodes.
    for (j, wg) in WG.iter().enumerate() {
        let idx = 2 * j + 1;
        let dx = half * XGK[idx];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[idx] = f1;
        fv2[idx] = f2;
        res_gauss += wg * (f1 + f2);
        res_kronrod += WGK[idx] * (f1 + f2);
        res_abs += WGK[idx] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let idx = 2 * j;
        let dx = half * XGK[idx];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[idx] = f1;
        fv2[idx] = f2;
        res_kronrod += WGK[idx] * (f1 + f2);
        res_abs += WGK[idx] * (f1.abs() + f2.abs());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let raw_err = (res_kronrod - res_gauss) * half;
    let value = res_kronrod * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();

    if !value.is_finite() {
        return Err(domain(format!(
            "integrand produced a non-finite value on [{a}, {b}]"
        )));
    }
    Ok(Segment {
        a,
        b,
        value,
        error: rescale_error(raw_err, res_abs, res_asc),
    })
}

// QUADPACK's conservative error rescaling.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_nearly_exact() {
        let r = adaptive(|x| x * x, 0.0, 1.0, 1e-12, 64).unwrap();
        assert_relative_eq!(r.value, 1.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn sine_over_period() {
        let r = adaptive(f64::sin, 0.0, std::f64::consts::PI, 1e-12, 128).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-13);
    }

    #[test]
    fn gaussian_mass() {
        let r = adaptive(|x| (-x * x).exp(), -8.0, 8.0, 1e-12, 256).unwrap();
        assert_relative_eq!(r.value, std::f64::consts::PI.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn integrable_log_singularity() {
        let r = adaptive(|x| x.ln(), f64::MIN_POSITIVE, 1.0, 1e-10, 2048).unwrap();
        assert_relative_eq!(r.value, -1.0, epsilon = 1e-9);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // An oscillatory integrand cannot reach near-zero tolerance with a
        // three-segment budget.
        let res = adaptive(|x| (50.0 * x).sin(), 0.0, 1.0, 1e-16, 3);
        assert!(matches!(res, Err(Error::Convergence(_))));
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(adaptive(|x| x, 1.0, 0.0, 1e-8, 16).is_err());
        assert!(adaptive(|x| x, 0.0, f64::INFINITY, 1e-8, 16).is_err());
        assert!(adaptive(|x| x, 0.0, 1.0, 0.0, 16).is_err());
    }
}
