//! High-SNR capacity machinery for the additive channel Y = X + N under a
//! second-moment constraint: the Max-Ent upper bound, the conditionally
//! Gaussian achievable lower bound, the exact asymptotic offset, and the
//! entropy-power equivalent of the noise.
//!
//! Everything is expressed in the sigma = 1 gauge, where the mixing time is
//! IG(lambda/u, lambda^2) and the per-axis noise variance is lambda/u.

use crate::entropy::{entropy_closed_form_d3, entropy_quadrature, mutual_info_tn};
use crate::error::{domain, Error, Result};
use crate::ndfhl::{cauchy_entropy, NdfhlParams};
use crate::rng::derive_seed;
use serde::Serialize;
use std::io::Write;

const LN_2PI: f64 = 1.837_877_066_409_345_3;

/// Capacity bounds at one power point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityReport {
    pub power: f64,
    pub upper: f64,
    pub lower: f64,
    /// Achievable rates are nonnegative; the raw lower bound is an
    /// asymptotic device and may dip below zero at small power.
    pub lower_clamped: f64,
    pub gap: f64,
    pub offset_c_star: f64,
    pub params: NdfhlParams,
}

/// h(N): the d = 3 closed form when available, radial quadrature otherwise.
pub fn noise_entropy(params: &NdfhlParams, tol: f64) -> Result<f64> {
    if params.u() <= 0.0 {
        return Err(domain("noise entropy under drift requires u > 0"));
    }
    if params.d() == 3 {
        Ok(entropy_closed_form_d3(params.lambda(), params.u())?.value)
    } else {
        Ok(entropy_quadrature(params, tol)?.value)
    }
}

fn check_power(power: f64) -> Result<()> {
    if !(power.is_finite() && power > 0.0) {
        return Err(domain(format!("power must be finite and > 0, got {power}")));
    }
    Ok(())
}

/// Max-Ent upper bound (p/2) log(2 pi e (P/p + lambda/u)) - h(N).
pub fn capacity_upper(params: &NdfhlParams, power: f64, tol: f64) -> Result<f64> {
    check_power(power)?;
    let variance = params.variance()?;
    let p = params.p() as f64;
    Ok(0.5 * p * (LN_2PI + 1.0 + (power / p + variance).ln()) - noise_entropy(params, tol)?)
}

/// Gaussian-input lower bound E[(p/2) log(1 + P/(p T))] - I(T; N).
///
/// The expectation is computed by adaptive quadrature against the mixing
/// density; when `mc_budget > 0` an independent Monte-Carlo evaluation of the
/// same expectation cross-checks the quadrature at four standard errors.
pub fn capacity_lower(
    params: &NdfhlParams,
    power: f64,
    tol: f64,
    mc_budget: usize,
    seed: u64,
) -> Result<f64> {
    check_power(power)?;
    let p = params.p() as f64;
    let mixing = params.mixing_law()?;
    let rate = |t: f64| 0.5 * p * (power / (p * t)).ln_1p();
    let conditional = mixing.expect(rate, tol)?;

    if mc_budget > 0 {
        let draws = mixing.sample(mc_budget.max(1_000), derive_seed(seed, 0xCAFE))?;
        let n = draws.len() as f64;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for t in draws {
            let v = rate(t);
            sum += v;
            sum_sq += v * v;
        }
        let mean = sum / n;
        let se = ((sum_sq / n - mean * mean).max(0.0) / n).sqrt();
        if (conditional - mean).abs() > 4.0 * se + tol {
            return Err(Error::Convergence(format!(
                "quadrature/Monte-Carlo cross-check failed: {conditional} vs {mean} (se {se:.3e})"
            )));
        }
    }

    Ok(conditional - mutual_info_tn(params, tol)?)
}

/// Exact high-power offset c* = (p/2) log(2 pi e / p) - h(N), so that
/// C(P) = (p/2) log P + c* + o(1).
pub fn refined_offset(params: &NdfhlParams, tol: f64) -> Result<f64> {
    let p = params.p() as f64;
    Ok(0.5 * p * (LN_2PI + 1.0 - p.ln()) - noise_entropy(params, tol)?)
}

/// Entropy power of the noise, (1/2pi e) exp(2 h(N) / p): the variance of
/// the AWGN channel with the same high-SNR capacity.
pub fn effective_noise_power(params: &NdfhlParams, tol: f64) -> Result<f64> {
    let p = params.p() as f64;
    Ok((2.0 * noise_entropy(params, tol)? / p - LN_2PI - 1.0).exp())
}

/// Uniform conditioning-gap bound I(V; sqrt(V) Z) with V the mixing time;
/// independent of the input power by construction.
pub fn conditioning_gap_bound(params: &NdfhlParams, tol: f64) -> Result<f64> {
    mutual_info_tn(params, tol)
}

/// Asymptotic capacity offset L(u) along a drift grid for fixed (d, lambda),
/// with the Cauchy endpoint (0, L(0)) appended from the closed-form entropy.
pub fn offset_curve(d: u32, lambda: f64, u_grid: &[f64], tol: f64) -> Result<Vec<(f64, f64)>> {
    let mut curve = Vec::with_capacity(u_grid.len() + 1);
    for &u in u_grid {
        if u <= 0.0 {
            return Err(domain(format!("u-grid entries must be positive, got {u}")));
        }
        let params = NdfhlParams::new(d, lambda, u)?;
        curve.push((u, refined_offset(&params, tol)?));
    }
    let p = d
        .checked_sub(1)
        .filter(|&p| p >= 1)
        .ok_or_else(|| domain(format!("ambient dimension must be >= 2, got {d}")))?;
    let pf = p as f64;
    curve.push((
        0.0,
        0.5 * pf * (LN_2PI + 1.0 - pf.ln()) - cauchy_entropy(p, lambda)?,
    ));
    Ok(curve)
}

/// Builds the full report at one power point.
pub fn report(
    params: &NdfhlParams,
    power: f64,
    tol: f64,
    mc_budget: usize,
    seed: u64,
) -> Result<CapacityReport> {
    let upper = capacity_upper(params, power, tol)?;
    let lower = capacity_lower(params, power, tol, mc_budget, seed)?;
    Ok(CapacityReport {
        power,
        upper,
        lower,
        lower_clamped: lower.max(0.0),
        gap: upper - lower,
        offset_c_star: refined_offset(params, tol)?,
        params: *params,
    })
}

/// CSV rows `d,lambda,u,P,upper,lower,gap,c_star`.
pub fn write_reports_csv<W: Write>(reports: &[CapacityReport], w: &mut W) -> std::io::Result<()> {
    writeln!(w, "d,lambda,u,P,upper,lower,gap,c_star")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.params.d(),
            crate::fmt17(r.params.lambda()),
            crate::fmt17(r.params.u()),
            crate::fmt17(r.power),
            crate::fmt17(r.upper),
            crate::fmt17(r.lower),
            crate::fmt17(r.gap),
            crate::fmt17(r.offset_c_star)
        )?;
    }
    Ok(())
}

/// JSON with the same fields as the CSV schema.
pub fn reports_to_json(reports: &[CapacityReport]) -> serde_json::Value {
    serde_json::Value::Array(
        reports
            .iter()
            .map(|r| {
                serde_json::json!({
                    "d": r.params.d(),
                    "lambda": r.params.lambda(),
                    "u": r.params.u(),
                    "P": r.power,
                    "upper": r.upper,
                    "lower": r.lower,
                    "gap": r.gap,
                    "c_star": r.offset_c_star,
                })
            })
            .collect(),
    )
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle values carry 17 digits
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TOL: f64 = 1e-9;

    fn d3() -> NdfhlParams {
        NdfhlParams::new(3, 1.0, 1.0).unwrap()
    }

    #[test]
    fn upper_bound_anchor() {
        // log(2 pi e * 51) - h(N), h from the d = 3 closed form.
        let c = capacity_upper(&d3(), 100.0, TOL).unwrap();
        assert_relative_eq!(c, 4.0526862833656307, epsilon = 1e-9);
        // Nonnegative already at vanishing power.
        let c0 = capacity_upper(&d3(), 1e-12, TOL).unwrap();
        assert_relative_eq!(c0, 0.1208606506413050, epsilon = 1e-9);
        assert!(c0 >= 0.0);
        assert!(capacity_upper(&d3(), 0.0, TOL).is_err());
        assert!(capacity_upper(&NdfhlParams::new(3, 1.0, 0.0).unwrap(), 1.0, TOL).is_err());
    }

    #[test]
    fn upper_bound_prelog_slope() {
        for d in [2u32, 3, 4] {
            let params = NdfhlParams::new(d, 1.0, 1.0).unwrap();
            let c6 = capacity_upper(&params, 1e6, TOL).unwrap();
            let c8 = capacity_upper(&params, 1e8, TOL).unwrap();
            let slope = (c8 - c6) / 100.0f64.ln();
            assert!(
                (slope - (d - 1) as f64 / 2.0).abs() < 1e-4,
                "d={d}: slope {slope}"
            );
        }
    }

    #[test]
    fn refined_offset_anchor() {
        let c = refined_offset(&d3(), TOL).unwrap();
        assert_relative_eq!(c, -0.5722865299186404, epsilon = 1e-9);
    }

    #[test]
    fn offset_consistency_with_mixing_moments() {
        // c* = (p/2) log(1/p) - (p/2) E[log T] - I(T; N).
        let params = d3();
        let p = 2.0f64;
        let mean_log = params.mixing_law().unwrap().mean_log(1e-10).unwrap();
        let mi = mutual_info_tn(&params, TOL).unwrap();
        let via_moments = 0.5 * p * (1.0 / p).ln() - 0.5 * p * mean_log - mi;
        let direct = refined_offset(&params, TOL).unwrap();
        assert!(
            (via_moments - direct).abs() < 2e-6,
            "{via_moments} vs {direct}"
        );
    }

    #[test]
    fn effective_noise_power_anchor() {
        let enp = effective_noise_power(&d3(), TOL).unwrap();
        assert_relative_eq!(enp, 0.8861574364599382, epsilon = 1e-9);
        // Entropy power never exceeds the variance.
        for &(d, lambda, u) in &[(2u32, 1.0, 1.0), (3, 2.0, 0.5), (4, 1.0, 3.0)] {
            let params = NdfhlParams::new(d, lambda, u).unwrap();
            assert!(
                effective_noise_power(&params, TOL).unwrap() <= lambda / u + 1e-12,
                "d={d}"
            );
        }
        // Gaussian limit: entropy power converges to the variance.
        let ballistic = NdfhlParams::new(3, 1.0, 1e3).unwrap();
        let enp = effective_noise_power(&ballistic, TOL).unwrap();
        assert!((enp - 1e-3).abs() / 1e-3 < 0.01, "enp = {enp}");
    }

    #[test]
    fn lower_bound_reaches_the_offset() {
        let params = d3();
        let lower = capacity_lower(&params, 1e6, TOL, 0, 0).unwrap();
        let target = 1e6f64.ln() + refined_offset(&params, TOL).unwrap();
        assert!((lower - target).abs() <= 2e-3, "{lower} vs {target}");
    }

    #[test]
    fn lower_bound_monotone_in_power() {
        let params = d3();
        let mut prev = f64::NEG_INFINITY;
        for exp in 0..=8 {
            let c = capacity_lower(&params, 10f64.powi(exp), TOL, 0, 0).unwrap();
            assert!(c > prev);
            prev = c;
        }
    }

    #[test]
    fn lower_bound_mc_cross_check_runs() {
        let params = d3();
        let with_mc = capacity_lower(&params, 100.0, 1e-8, 50_000, 3).unwrap();
        let without = capacity_lower(&params, 100.0, 1e-8, 0, 0).unwrap();
        assert_relative_eq!(with_mc, without, epsilon = 1e-12);
    }

    #[test]
    fn low_power_lower_bound_clamps_to_zero() {
        let params = d3();
        let r = report(&params, 1e-9, TOL, 0, 0).unwrap();
        // Raw bound tends to -I(T;N) <= 0 as P -> 0.
        assert!(r.lower < 0.0);
        assert_eq!(r.lower_clamped, 0.0);
        assert_relative_eq!(r.lower, -mutual_info_tn(&params, TOL).unwrap(), epsilon = 1e-4);
    }

    #[test]
    fn bounds_are_ordered_across_the_power_grid() {
        for &(d, lambda, u) in &[(2u32, 1.0, 1.0), (3, 1.0, 1.0), (4, 0.5, 2.0)] {
            let params = NdfhlParams::new(d, lambda, u).unwrap();
            for exp in [0, 2, 4, 6, 8] {
                let r = report(&params, 10f64.powi(exp), TOL, 0, 0).unwrap();
                assert!(
                    r.gap >= -1e-9,
                    "d={d} P=1e{exp}: upper {} < lower {}",
                    r.upper,
                    r.lower
                );
            }
        }
    }

    #[test]
    fn gap_obeys_the_inverse_power_envelope() {
        // At high power the gap shrinks at least like
        // (p/2) (p lambda/u) (2/P), up to quadrature tolerance.
        for &(d, lambda, u) in &[(2u32, 1.0, 1.0), (3, 1.0, 1.0), (4, 2.0, 0.5)] {
            let params = NdfhlParams::new(d, lambda, u).unwrap();
            let p = (d - 1) as f64;
            for exp in [4, 6, 8] {
                let power = 10f64.powi(exp);
                let r = report(&params, power, TOL, 0, 0).unwrap();
                let envelope = 0.5 * p * (p * lambda / u) * 2.0 / power + 1e-6;
                assert!(
                    r.gap <= envelope,
                    "d={d} P=1e{exp}: gap {} > envelope {envelope}",
                    r.gap
                );
            }
        }
    }

    #[test]
    fn conditioning_gap_properties() {
        let params = d3();
        let gap = conditioning_gap_bound(&params, TOL).unwrap();
        assert_relative_eq!(gap, mutual_info_tn(&params, TOL).unwrap(), epsilon = 1e-12);
        assert!(gap >= 0.0);
        let ballistic = NdfhlParams::new(3, 1.0, 1e3).unwrap();
        assert!(conditioning_gap_bound(&ballistic, TOL).unwrap() <= 2e-3);
    }

    #[test]
    fn offset_curve_reaches_the_cauchy_endpoint() {
        let curve = offset_curve(2, 1.0, &[1.0, 0.1, 1e-3], 1e-8).unwrap();
        assert_eq!(curve.len(), 4);
        let (u_end, l_end) = curve[3];
        assert_eq!(u_end, 0.0);
        assert_relative_eq!(l_end, -1.1120857137646181, epsilon = 1e-9);
        // Continuity into the endpoint.
        assert!((curve[2].1 - l_end).abs() <= 0.05);
        // Scale law at the endpoint: L drops by log(lambda).
        let curve2 = offset_curve(2, 2.0, &[1.0], 1e-8).unwrap();
        assert_relative_eq!(curve2[1].1, -1.8052328943245634, epsilon = 1e-9);
        assert!(offset_curve(2, 1.0, &[0.0], 1e-8).is_err());
    }

    #[test]
    fn report_serialization() {
        let r = report(&d3(), 100.0, TOL, 0, 0).unwrap();
        let mut buf = Vec::new();
        write_reports_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("d,lambda,u,P,upper,lower,gap,c_star\n"));
        assert_eq!(text.lines().count(), 2);
        let json = reports_to_json(&[r]);
        assert_eq!(json[0]["d"], 3);
        assert!(json[0]["upper"].as_f64().unwrap() > 0.0);
    }
}
