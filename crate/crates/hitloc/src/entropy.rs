//! Differential entropy of the boundary-hitting noise: deterministic radial
//! quadrature, a Monte-Carlo plug-in estimator, the d = 3 closed form, and
//! the conditional-Gaussian / Max-Ent sandwich bounds. Everything is in nats.

use crate::error::{domain, Error, Result};
use crate::ndfhl::{cauchy_entropy, ln_cauchy_pdf_at_radius, NdfhlParams};
use crate::quad;
use crate::rng::run_chunked;
use crate::special::{e1_scaled, sphere_surface_area};
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use std::io::Write;

const LN_2PI: f64 = 1.837_877_066_409_345_3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyMethod {
    Quadrature,
    MonteCarlo,
    ClosedFormD3,
    BoundLower,
    BoundUpper,
    CauchyClosedForm,
}

impl EntropyMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Quadrature => "quadrature",
            Self::MonteCarlo => "monte_carlo",
            Self::ClosedFormD3 => "closed_form_d3",
            Self::BoundLower => "bound_lower",
            Self::BoundUpper => "bound_upper",
            Self::CauchyClosedForm => "cauchy_closed_form",
        }
    }
}

impl std::fmt::Display for EntropyMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A differential-entropy value with its producing method and an
/// absolute-error estimate (zero for closed forms).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub value: f64,
    pub method: EntropyMethod,
    pub error: f64,
    pub params: NdfhlParams,
}

/// h(N) = -S_{p-1} int r^{p-1} f(r) ln f(r) dr, within `tol` nats.
///
/// For u > 0 the radial integral is truncated where the semi-heavy tail
/// envelope bounds the remainder by tol/10; the u = 0 branch integrates the
/// Cauchy density under r = lambda tan(theta), which makes the integral
/// proper.
pub fn entropy_quadrature(params: &NdfhlParams, tol: f64) -> Result<EntropyEstimate> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(domain(format!("tol must be positive, got {tol}")));
    }
    let p = params.p();
    let surface = sphere_surface_area(p)?;
    let lambda = params.lambda();

    if params.is_cauchy_limit() {
        let integrand = |theta: f64| {
            let r = lambda * theta.tan();
            let ln_f = ln_cauchy_pdf_at_radius(p, lambda, r).unwrap_or(f64::NAN);
            let f = ln_f.exp();
            let jac = lambda / (theta.cos() * theta.cos());
            -surface * r.powi(p as i32 - 1) * f * ln_f * jac
        };
        let theta_hi = std::f64::consts::FRAC_PI_2 - 1e-12;
        let cut1 = std::f64::consts::FRAC_PI_4;
        let cut2 = 10.0f64.atan();
        let mut value = 0.0;
        let mut err = 0.0;
        for (a, b) in [(0.0, cut1), (cut1, cut2), (cut2, theta_hi)] {
            let r = quad::adaptive(integrand, a, b, tol * 0.3, quad::DEFAULT_MAX_SEGMENTS)?;
            value += r.value;
            err += r.abs_error;
        }
        // Algebraic-tail remainder beyond r = lambda / 1e-12.
        let r_max = lambda * 1e12;
        let ln_c = ln_cauchy_pdf_at_radius(p, lambda, 0.0)?;
        let tail = surface
            * ln_c.exp()
            * lambda.powi(p as i32 + 1)
            * ((p as f64 + 1.0) * (r_max.ln() + 1.0) + ln_c.abs())
            / r_max;
        return Ok(EntropyEstimate {
            value,
            method: EntropyMethod::Quadrature,
            error: err + tail,
            params: *params,
        });
    }

    let u = params.u();
    let integrand = |r: f64| {
        let ln_f = params.ln_pdf_at_radius(r).unwrap_or(f64::NAN);
        let f = ln_f.exp();
        if f == 0.0 {
            return 0.0;
        }
        -surface * r.powi(p as i32 - 1) * f * ln_f
    };

    let r_star = truncation_radius(params, surface, tol)?;
    let mid = (2.0 * lambda).max(5.0 / u).min(0.5 * r_star).max(lambda * 1.5);
    let mut value = 0.0;
    let mut err = 0.0;
    for (a, b) in [(0.0, lambda), (lambda, mid), (mid, r_star)] {
        let r = quad::adaptive(integrand, a, b, tol * 0.3, quad::DEFAULT_MAX_SEGMENTS)?;
        value += r.value;
        err += r.abs_error;
    }
    Ok(EntropyEstimate {
        value,
        method: EntropyMethod::Quadrature,
        error: err + tol * 0.1,
        params: *params,
    })
}

// Doubles R until the exponential-envelope bound on the remaining mass of
// |f ln f| drops below tol/10, then applies a safety factor 2. Beyond the
// returned radius the integrand decays at least like e^{-u r / 2}.
fn truncation_radius(params: &NdfhlParams, surface: f64, tol: f64) -> Result<f64> {
    let u = params.u();
    let lambda = params.lambda();
    let p = params.p();
    let magnitude = |r: f64| -> f64 {
        let ln_f = match params.ln_pdf_at_radius(r) {
            Ok(v) => v,
            Err(_) => return 0.0,
        };
        let f = ln_f.exp();
        surface * r.powi(p as i32 - 1) * f * (ln_f.abs() + 1.0)
    };
    let mut r = (4.0 * lambda).max(10.0 / u).max(4.0 * (p as f64 + 1.0) / u);
    while magnitude(r) * 2.0 / u > tol / 10.0 {
        r *= 2.0;
        if r > 1e300 {
            return Err(Error::Convergence(
                "tail truncation radius diverged".to_string(),
            ));
        }
    }
    Ok(2.0 * r)
}

/// Plug-in estimator -mean(ln f(N_i)); unbiased for -E[ln f] with a
/// standard-error field. Requires u > 0 and at least 10^4 samples.
pub fn entropy_mc(params: &NdfhlParams, n_samples: usize, seed: u64) -> Result<EntropyEstimate> {
    if params.u() <= 0.0 {
        return Err(domain("plug-in entropy estimator requires u > 0"));
    }
    if n_samples < 10_000 {
        return Err(domain(format!(
            "need at least 1e4 samples for the plug-in estimator, got {n_samples}"
        )));
    }
    let mixing = params.mixing_law()?;
    let p = params.p() as usize;
    let body = *params;
    let partials = run_chunked(n_samples, seed, move |rng, _start, len| {
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..len {
            let scale = mixing.sample_one(rng).sqrt();
            let mut sq = 0.0;
            for _ in 0..p {
                let z: f64 = StandardNormal.sample(rng);
                sq += z * z;
            }
            let r = scale * sq.sqrt();
            let v = -body.ln_pdf_at_radius(r).expect("finite radius");
            sum += v;
            sum_sq += v * v;
        }
        (sum, sum_sq)
    });
    let (sum, sum_sq) = partials
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (s, q)| (a + s, b + q));
    let n = n_samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    Ok(EntropyEstimate {
        value: mean,
        method: EntropyMethod::MonteCarlo,
        error: (var / n).sqrt(),
        params: *params,
    })
}

/// Exact entropy for d = 3 in terms of the exponential integral:
/// log(2 pi e^3) + 2 log(lambda) - log(1 + s) + s (G(1+s) - 3 G(s)),
/// where s = lambda u and G(x) = e^x E1(x). Stable for s up to ~700.
pub fn entropy_closed_form_d3(lambda: f64, u: f64) -> Result<EntropyEstimate> {
    let params = NdfhlParams::new(3, lambda, u)?;
    if u <= 0.0 {
        return Err(domain("closed form requires u > 0"));
    }
    let s = lambda * u;
    let value = LN_2PI + 3.0 + 2.0 * lambda.ln() - s.ln_1p()
        + s * (e1_scaled(1.0 + s)? - 3.0 * e1_scaled(s)?);
    Ok(EntropyEstimate {
        value,
        method: EntropyMethod::ClosedFormD3,
        error: 0.0,
        params,
    })
}

/// Conditional-entropy lower bound h(N | T) = (p/2) log(2 pi e) +
/// (p/2) E[log T] in the sigma = 1 gauge.
pub fn entropy_lower(params: &NdfhlParams, tol: f64) -> Result<EntropyEstimate> {
    let half_p = params.p() as f64 / 2.0;
    let mean_log = params.mixing_law()?.mean_log(tol / half_p)?;
    Ok(EntropyEstimate {
        value: half_p * (LN_2PI + 1.0 + mean_log),
        method: EntropyMethod::BoundLower,
        error: tol,
        params: *params,
    })
}

/// Max-Ent upper bound (p/2) log(2 pi e lambda / u); undefined at u = 0
/// where the variance diverges.
pub fn entropy_upper(params: &NdfhlParams) -> Result<EntropyEstimate> {
    if params.u() <= 0.0 {
        return Err(domain("Max-Ent upper bound explodes at u = 0"));
    }
    let half_p = params.p() as f64 / 2.0;
    Ok(EntropyEstimate {
        value: half_p * (LN_2PI + 1.0 + (params.lambda() / params.u()).ln()),
        method: EntropyMethod::BoundUpper,
        error: 0.0,
        params: *params,
    })
}

/// Jensen gap of the mixing time, (p/2)(log E[T] - E[log T]); equals the
/// width of the entropy sandwich and is nonnegative.
pub fn jensen_gap(params: &NdfhlParams, tol: f64) -> Result<f64> {
    let half_p = params.p() as f64 / 2.0;
    let mixing = params.mixing_law()?;
    let gap = half_p * (mixing.mean().ln() - mixing.mean_log(tol / half_p)?);
    Ok(gap.max(0.0))
}

/// Shape penalty I(N; T) = h(N) - h(N | T), clamped at zero within the
/// quadrature tolerance.
pub fn mutual_info_tn(params: &NdfhlParams, tol: f64) -> Result<f64> {
    let h = entropy_quadrature(params, tol)?.value;
    let lower = entropy_lower(params, tol)?.value;
    Ok((h - lower).max(0.0))
}

// ---------------------------------------------------------------------------
// Sweep serialization
// ---------------------------------------------------------------------------

/// One row of an entropy sweep; serializes to `d,lambda,u,h,method,error`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropySweepRow {
    pub d: u32,
    pub lambda: f64,
    pub u: f64,
    pub h: f64,
    pub method: EntropyMethod,
    pub error: f64,
}

/// Entropy over a drift grid for each dimension, with a trailing u = 0 row
/// per dimension carrying the Cauchy entropy g(p).
pub fn entropy_sweep(
    ds: &[u32],
    lambda: f64,
    u_grid: &[f64],
    tol: f64,
) -> Result<Vec<EntropySweepRow>> {
    let mut rows = Vec::with_capacity(ds.len() * (u_grid.len() + 1));
    for &d in ds {
        for &u in u_grid {
            let params = NdfhlParams::new(d, lambda, u)?;
            let est = entropy_quadrature(&params, tol)?;
            rows.push(EntropySweepRow {
                d,
                lambda,
                u,
                h: est.value,
                method: est.method,
                error: est.error,
            });
        }
        let p = d - 1;
        rows.push(EntropySweepRow {
            d,
            lambda,
            u: 0.0,
            h: cauchy_entropy(p, lambda)?,
            method: EntropyMethod::CauchyClosedForm,
            error: 0.0,
        });
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[EntropySweepRow], w: &mut W) -> std::io::Result<()> {
    writeln!(w, "d,lambda,u,h,method,error")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            row.d,
            crate::fmt17(row.lambda),
            crate::fmt17(row.u),
            crate::fmt17(row.h),
            row.method,
            crate::fmt17(row.error)
        )?;
    }
    Ok(())
}
