//! The inverse-Gaussian first-hitting-time law: density, exact sampler,
//! Laplace transform, logarithmic and inverse moments, and differential
//! entropy.

use crate::error::{domain, require_finite, Result};
use crate::quad;
use crate::rng::run_chunked;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Inverse-Gaussian parameters: mean `nu` and shape `kappa`, both positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IgParams {
    nu: f64,
    kappa: f64,
}

/// Physical transport description: boundary separation `lambda`, normalized
/// drift speed `u` (sign encodes direction), and diffusion coefficient
/// `sigma2`. The physical drift velocity is `mu = u * sigma2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalTransport {
    pub lambda: f64,
    pub u: f64,
    pub sigma2: f64,
}

impl PhysicalTransport {
    pub fn new(lambda: f64, u: f64, sigma2: f64) -> Result<Self> {
        require_finite("lambda", lambda)?;
        require_finite("u", u)?;
        require_finite("sigma2", sigma2)?;
        if lambda <= 0.0 {
            return Err(domain(format!("lambda must be > 0, got {lambda}")));
        }
        if sigma2 <= 0.0 {
            return Err(domain(format!("sigma2 must be > 0, got {sigma2}")));
        }
        Ok(Self { lambda, u, sigma2 })
    }

    /// Drift velocity mu = u * sigma2.
    pub fn mu(&self) -> f64 {
        self.u * self.sigma2
    }
}

/// Hitting-time law of a positively drifted transport:
/// nu = lambda / (u sigma2), kappa = lambda^2 / sigma2.
pub fn ig_from_physical(phys: &PhysicalTransport) -> Result<IgParams> {
    if phys.u <= 0.0 {
        return Err(domain(format!(
            "hitting time is defective or degenerate for u <= 0 (got u = {})",
            phys.u
        )));
    }
    IgParams::new(
        phys.lambda / (phys.u * phys.sigma2),
        phys.lambda * phys.lambda / phys.sigma2,
    )
}

impl IgParams {
    pub fn new(nu: f64, kappa: f64) -> Result<Self> {
        require_finite("nu", nu)?;
        require_finite("kappa", kappa)?;
        if nu <= 0.0 {
            return Err(domain(format!("nu must be > 0, got {nu}")));
        }
        if kappa <= 0.0 {
            return Err(domain(format!("kappa must be > 0, got {kappa}")));
        }
        Ok(Self { nu, kappa })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn mean(&self) -> f64 {
        self.nu
    }

    pub fn variance(&self) -> f64 {
        self.nu.powi(3) / self.kappa
    }

    /// E[1/T] = 1/nu + 1/kappa.
    pub fn mean_inverse(&self) -> f64 {
        1.0 / self.nu + 1.0 / self.kappa
    }

    pub fn ln_pdf(&self, t: f64) -> Result<f64> {
        require_finite("t", t)?;
        if t <= 0.0 {
            return Err(domain(format!("IG density requires t > 0, got {t}")));
        }
        let dev = t - self.nu;
        Ok(0.5 * (self.kappa.ln() - (2.0 * std::f64::consts::PI).ln() - 3.0 * t.ln())
            - self.kappa * dev * dev / (2.0 * self.nu * self.nu * t))
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        Ok(self.ln_pdf(t)?.exp())
    }

    /// Laplace transform E[e^{-sT}] for s >= 0.
    pub fn laplace(&self, s: f64) -> Result<f64> {
        require_finite("s", s)?;
        if s < 0.0 {
            return Err(domain(format!("Laplace transform requires s >= 0, got {s}")));
        }
        let ratio = self.kappa / self.nu;
        Ok((ratio * (1.0 - (1.0 + 2.0 * self.nu * self.nu * s / self.kappa).sqrt())).exp())
    }

    /// i.i.d. draws, exact and rejection-free, deterministic per seed.
    ///
    /// Michael, Schucany & Haas (1976): a chi-square root plus a quadratic
    /// selection step.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<f64>> {
        if count == 0 {
            return Err(domain("count must be >= 1"));
        }
        let params = *self;
        let chunks = run_chunked(count, seed, move |rng, _start, len| {
            let mut out = Vec::with_capacity(len);
            for _ in 0..len {
                out.push(params.sample_one(rng));
            }
            out
        });
        Ok(chunks.concat())
    }

    pub(crate) fn sample_one(&self, rng: &mut ChaCha12Rng) -> f64 {
        let z: f64 = StandardNormal.sample(rng);
        let w = self.nu * z * z / self.kappa;
        // Rationalized root of the MSH quadratic; no cancellation for large w.
        let x = 2.0 * self.nu / (2.0 + w + (w * (w + 4.0)).sqrt());
        let u: f64 = rng.random();
        if u <= self.nu / (self.nu + x) {
            x
        } else {
            self.nu * self.nu / x
        }
    }

    /// E[g(T)] by adaptive quadrature under the substitution t = e^y, split
    /// at the mean; absolute error at most `tol`.
    pub fn expect<F: Fn(f64) -> f64>(&self, g: F, tol: f64) -> Result<f64> {
        if !tol.is_finite() || tol <= 0.0 {
            return Err(domain(format!("tol must be positive, got {tol}")));
        }
        // Windows where the density exponent has not yet underflowed:
        // kappa/(2t) <= 760 + kappa/nu on the left, symmetric on the right.
        let budget = 760.0 + self.kappa / self.nu;
        let t_lo = self.kappa / (2.0 * budget);
        let t_hi = 2.0 * self.nu * self.nu * budget / self.kappa;
        let ln_nu = self.nu.ln();
        let y_lo = t_lo.ln().min(ln_nu - 1.0);
        let y_hi = t_hi.ln().max(ln_nu + 1.0);

        let integrand = |y: f64| {
            let t = y.exp();
            let ln_f = match self.ln_pdf(t) {
                Ok(v) => v,
                Err(_) => return 0.0,
            };
            let w = (ln_f + y).exp();
            if w == 0.0 {
                0.0
            } else {
                g(t) * w
            }
        };
        let left = quad::adaptive(integrand, y_lo, ln_nu, 0.5 * tol, quad::DEFAULT_MAX_SEGMENTS)?;
        let right = quad::adaptive(integrand, ln_nu, y_hi, 0.5 * tol, quad::DEFAULT_MAX_SEGMENTS)?;
        Ok(left.value + right.value)
    }

    /// E[log T], absolute error at most `tol`.
    pub fn mean_log(&self, tol: f64) -> Result<f64> {
        self.expect(f64::ln, tol)
    }

    /// E[|log T|]; finite for every valid parameter pair.
    pub fn mean_abs_log(&self, tol: f64) -> Result<f64> {
        self.expect(|t| t.ln().abs(), tol)
    }

    /// Differential entropy h(T) in nats:
    /// -log C + (3/2) E[log T] + kappa/(2 nu) + (kappa/2) E[1/T],
    /// with C = sqrt(kappa/2pi) e^{kappa/nu}.
    pub fn entropy(&self, tol: f64) -> Result<f64> {
        let ln_c = 0.5 * (self.kappa / (2.0 * std::f64::consts::PI)).ln() + self.kappa / self.nu;
        Ok(-ln_c
            + 1.5 * self.mean_log(tol)?
            + self.kappa / (2.0 * self.nu)
            + 0.5 * self.kappa * self.mean_inverse())
    }
}
