//! The boundary-hitting noise family NDFHL(d, lambda, u): density,
//! characteristic function, exact sampler, moments, the defective
//! reverse-drift variant, the Cauchy limit law, and the NIG parameter
//! mapping.
//!
//! The family lives on R^p with p = d - 1 and is isotropic: everything
//! depends on a point only through its norm. Sampling uses the latent
//! Gaussian variance mixture sqrt(T) Z with T inverse-Gaussian, in the
//! sigma = 1 gauge where the mixing law is IG(lambda/u, lambda^2).

use crate::error::{domain, require_finite, Result};
use crate::ig::IgParams;
use crate::rng::run_chunked;
use crate::special::{bessel_k_scaled, digamma, log_gamma};
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use std::io::Write;

const LN_2PI: f64 = 1.837_877_066_409_345_3;

/// Parameters of the boundary-hitting noise law: ambient dimension `d >= 2`,
/// separation `lambda > 0`, and normalized drift `u >= 0`. `u = 0` selects
/// the Cauchy-limit branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NdfhlParams {
    d: u32,
    lambda: f64,
    u: f64,
}

impl NdfhlParams {
    pub fn new(d: u32, lambda: f64, u: f64) -> Result<Self> {
        if d < 2 {
            return Err(domain(format!("ambient dimension must be >= 2, got {d}")));
        }
        require_finite("lambda", lambda)?;
        require_finite("u", u)?;
        if lambda <= 0.0 {
            return Err(domain(format!("lambda must be > 0, got {lambda}")));
        }
        if u < 0.0 {
            return Err(domain(format!(
                "u must be >= 0 (use SignedDriftParams for reverse drift), got {u}"
            )));
        }
        Ok(Self { d, lambda, u })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// Noise dimension p = d - 1.
    pub fn p(&self) -> u32 {
        self.d - 1
    }

    pub fn is_cauchy_limit(&self) -> bool {
        self.u == 0.0
    }

    /// Mixing law of the latent hitting time in the sigma = 1 gauge:
    /// IG(lambda/u, lambda^2). Requires u > 0.
    pub fn mixing_law(&self) -> Result<IgParams> {
        if self.u <= 0.0 {
            return Err(domain("mixing time is improper at u = 0"));
        }
        IgParams::new(self.lambda / self.u, self.lambda * self.lambda)
    }

    /// Distance from the release point to a boundary location:
    /// rho(n) = sqrt(|n|^2 + lambda^2).
    pub fn rho(&self, n: &[f64]) -> f64 {
        norm(n).hypot(self.lambda)
    }

    fn check_point(&self, n: &[f64]) -> Result<()> {
        if n.len() != self.p() as usize {
            return Err(domain(format!(
                "point dimension {} does not match p = {}",
                n.len(),
                self.p()
            )));
        }
        for &x in n {
            require_finite("coordinate", x)?;
        }
        Ok(())
    }

    /// Density at a point, u > 0 branch. For the u = 0 limit use
    /// [`NdfhlParams::pdf_dispatch`].
    pub fn pdf(&self, n: &[f64]) -> Result<f64> {
        self.check_point(n)?;
        self.pdf_at_radius(norm(n))
    }

    pub fn pdf_at_radius(&self, r: f64) -> Result<f64> {
        Ok(self.ln_pdf_at_radius(r)?.exp())
    }

    /// Log density at radius r; stable for lambda * u up to ~700.
    pub fn ln_pdf_at_radius(&self, r: f64) -> Result<f64> {
        require_finite("radius", r)?;
        if self.u <= 0.0 {
            return Err(domain(
                "density branch requires u > 0; use pdf_dispatch for the Cauchy limit",
            ));
        }
        let rho = r.hypot(self.lambda);
        if self.d == 3 {
            // Elementary form: lambda (1 + u rho) e^{-u (rho - lambda)} / (2 pi rho^3).
            Ok(self.lambda.ln() - LN_2PI - 3.0 * rho.ln() + (self.u * rho).ln_1p()
                - self.u * (rho - self.lambda))
        } else {
            self.ln_pdf_bessel_at_radius(r)
        }
    }

    /// The Bessel-kernel route, valid for every d; the d = 3 fast path must
    /// agree with this to full precision.
    pub(crate) fn ln_pdf_bessel_at_radius(&self, r: f64) -> Result<f64> {
        let half_d = self.d as f64 / 2.0;
        let rho = r.hypot(self.lambda);
        let z = self.u * rho;
        let ln_k_scaled = bessel_k_scaled(half_d, z)?.ln();
        Ok(self.lambda.ln() - (half_d - 1.0) * std::f64::consts::LN_2
            - half_d * std::f64::consts::PI.ln()
            + half_d * (self.u.ln() - rho.ln())
            + self.lambda * self.u
            - z
            + ln_k_scaled)
    }

    /// Density with the u = 0 case dispatched to the Cauchy branch; the
    /// Bessel formula is never evaluated in the limit.
    pub fn pdf_dispatch(&self, n: &[f64]) -> Result<f64> {
        if self.is_cauchy_limit() {
            self.check_point(n)?;
            cauchy_pdf_at_radius(self.p(), self.lambda, norm(n))
        } else {
            self.pdf(n)
        }
    }

    /// Characteristic function value at a frequency vector; real-valued and
    /// in (0, 1] by isotropy.
    pub fn cf(&self, omega: &[f64]) -> Result<f64> {
        self.check_point(omega)?;
        Ok(self.cf_at_radius(norm(omega)))
    }

    /// CF at |omega| = w: exp(-lambda (sqrt(u^2 + w^2) - u)), evaluated in a
    /// cancellation-free form.
    pub fn cf_at_radius(&self, w: f64) -> f64 {
        let excess = w * w / (self.u.hypot(w) + self.u);
        (-self.lambda * excess).exp()
    }

    /// Per-axis variance lambda / u; the second moment diverges at u = 0.
    pub fn variance(&self) -> Result<f64> {
        if self.u <= 0.0 {
            return Err(domain("noise power diverges as u -> 0"));
        }
        Ok(self.lambda / self.u)
    }

    /// Covariance matrix (lambda/u) I_p, row-major.
    pub fn covariance(&self) -> Result<Vec<f64>> {
        let v = self.variance()?;
        let p = self.p() as usize;
        let mut m = vec![0.0; p * p];
        for j in 0..p {
            m[j * p + j] = v;
        }
        Ok(m)
    }

    /// Draws `count` points via the variance-mixture representation;
    /// deterministic for a given seed.
    pub fn sample(&self, count: usize, seed: u64) -> Result<SampleBatch> {
        if count == 0 {
            return Err(domain("count must be >= 1"));
        }
        let mixing = self.mixing_law()?;
        let p = self.p() as usize;
        let chunks = run_chunked(count, seed, move |rng, _start, len| {
            let mut pts = Vec::with_capacity(len * p);
            for _ in 0..len {
                let scale = mixing.sample_one(rng).sqrt();
                for _ in 0..p {
                    let z: f64 = StandardNormal.sample(rng);
                    pts.push(scale * z);
                }
            }
            pts
        });
        Ok(SampleBatch {
            params: *self,
            seed,
            count,
            points: chunks.concat(),
        })
    }

    /// The isotropic NIG parameter tuple this law coincides with.
    pub fn nig_identification(&self) -> Result<NigParams> {
        if self.u <= 0.0 {
            return Err(domain("NIG identification requires u > 0"));
        }
        Ok(NigParams {
            alpha: self.u,
            beta: vec![0.0; self.p() as usize],
            delta: self.lambda,
            mu: vec![0.0; self.p() as usize],
            dim: self.p(),
        })
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

// ---------------------------------------------------------------------------
// Cauchy limit branch
// ---------------------------------------------------------------------------

/// Isotropic multivariate Cauchy density with scale `lambda` on R^p.
pub fn cauchy_pdf(p: u32, lambda: f64, x: &[f64]) -> Result<f64> {
    if x.len() != p as usize {
        return Err(domain(format!(
            "point dimension {} does not match p = {p}",
            x.len()
        )));
    }
    for &v in x {
        require_finite("coordinate", v)?;
    }
    cauchy_pdf_at_radius(p, lambda, norm(x))
}

pub fn cauchy_pdf_at_radius(p: u32, lambda: f64, r: f64) -> Result<f64> {
    Ok(ln_cauchy_pdf_at_radius(p, lambda, r)?.exp())
}

pub fn ln_cauchy_pdf_at_radius(p: u32, lambda: f64, r: f64) -> Result<f64> {
    if p < 1 {
        return Err(domain(format!("p must be >= 1, got {p}")));
    }
    require_finite("lambda", lambda)?;
    require_finite("r", r)?;
    if lambda <= 0.0 {
        return Err(domain(format!("lambda must be > 0, got {lambda}")));
    }
    let half = (p as f64 + 1.0) / 2.0;
    let t = r / lambda;
    Ok(log_gamma(half)? - half * std::f64::consts::PI.ln() - p as f64 * lambda.ln()
        - half * (t * t).ln_1p())
}

/// Differential entropy of the isotropic p-dimensional Cauchy law with scale
/// `lambda`, in nats.
pub fn cauchy_entropy(p: u32, lambda: f64) -> Result<f64> {
    if p < 1 {
        return Err(domain(format!("p must be >= 1, got {p}")));
    }
    require_finite("lambda", lambda)?;
    if lambda <= 0.0 {
        return Err(domain(format!("lambda must be > 0, got {lambda}")));
    }
    let half = (p as f64 + 1.0) / 2.0;
    Ok(half * std::f64::consts::PI.ln() + p as f64 * lambda.ln() - log_gamma(half)?
        + half * (digamma(half)? - digamma(0.5)?))
}

// ---------------------------------------------------------------------------
// Reverse drift
// ---------------------------------------------------------------------------

/// Probability that a particle with signed normalized drift ever reaches the
/// boundary: 1 for u >= 0, e^{-2 lambda |u|} otherwise.
pub fn hit_probability(lambda: f64, u_signed: f64) -> Result<f64> {
    require_finite("lambda", lambda)?;
    require_finite("u_signed", u_signed)?;
    if lambda <= 0.0 {
        return Err(domain(format!("lambda must be > 0, got {lambda}")));
    }
    if u_signed >= 0.0 {
        Ok(1.0)
    } else {
        Ok((-2.0 * lambda * u_signed.abs()).exp())
    }
}

/// Drift with a sign: the proper law over |u| plus the direction. Reverse
/// drift (u < 0) makes the hitting law defective with total mass
/// e^{-2 lambda |u|}, while the spatial shape matches the |u| law exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignedDriftParams {
    base: NdfhlParams,
    u_signed: f64,
}

impl SignedDriftParams {
    pub fn new(d: u32, lambda: f64, u_signed: f64) -> Result<Self> {
        require_finite("u_signed", u_signed)?;
        Ok(Self {
            base: NdfhlParams::new(d, lambda, u_signed.abs())?,
            u_signed,
        })
    }

    pub fn base(&self) -> &NdfhlParams {
        &self.base
    }

    pub fn u_signed(&self) -> f64 {
        self.u_signed
    }

    pub fn hit_probability(&self) -> f64 {
        hit_probability(self.base.lambda(), self.u_signed).expect("validated at construction")
    }

    /// Unnormalized hitting density for reverse drift; integrates to the hit
    /// probability.
    pub fn defective_pdf(&self, n: &[f64]) -> Result<f64> {
        if self.u_signed >= 0.0 {
            return Err(domain(format!(
                "defective density requires reverse drift (u < 0), got u = {}",
                self.u_signed
            )));
        }
        Ok(self.hit_probability() * self.base.pdf(n)?)
    }

    pub fn defective_pdf_at_radius(&self, r: f64) -> Result<f64> {
        if self.u_signed >= 0.0 {
            return Err(domain(format!(
                "defective density requires reverse drift (u < 0), got u = {}",
                self.u_signed
            )));
        }
        Ok(self.hit_probability() * self.base.pdf_at_radius(r)?)
    }
}

// ---------------------------------------------------------------------------
// NIG mapping
// ---------------------------------------------------------------------------

/// Isotropic normal-inverse-Gaussian parameter tuple; documentation-grade
/// mapping of the boundary-hitting law onto the standard parameterization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NigParams {
    pub alpha: f64,
    pub beta: Vec<f64>,
    pub delta: f64,
    pub mu: Vec<f64>,
    pub dim: u32,
}

impl NigParams {
    /// Dispersion matrix; always the identity here.
    pub fn dispersion(&self) -> Vec<f64> {
        let p = self.dim as usize;
        let mut m = vec![0.0; p * p];
        for j in 0..p {
            m[j * p + j] = 1.0;
        }
        m
    }

    /// Order of the Bessel kernel in the radial density: (p + 1) / 2.
    pub fn kernel_order(&self) -> f64 {
        (self.dim as f64 + 1.0) / 2.0
    }
}

// ---------------------------------------------------------------------------
// Sample batches
// ---------------------------------------------------------------------------

/// A seeded matrix of noise draws in R^p with generation metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    params: NdfhlParams,
    seed: u64,
    count: usize,
    points: Vec<f64>,
}

impl SampleBatch {
    /// Wraps externally generated rows (e.g. path-simulation output) whose
    /// law is described by `params`.
    pub fn from_rows(params: NdfhlParams, seed: u64, points: Vec<f64>, count: usize) -> Result<Self> {
        if points.len() != count * params.p() as usize {
            return Err(domain(format!(
                "expected {} values for {count} rows of dimension {}, got {}",
                count * params.p() as usize,
                params.p(),
                points.len()
            )));
        }
        Ok(Self {
            params,
            seed,
            count,
            points,
        })
    }

    pub fn params(&self) -> &NdfhlParams {
        &self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn dim(&self) -> usize {
        self.params.p() as usize
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let p = self.dim();
        &self.points[i * p..(i + 1) * p]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.points.chunks_exact(self.dim())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.points
    }

    /// CSV with header `x1,...,xp` and 17-significant-digit decimals.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        let p = self.dim();
        let header: Vec<String> = (1..=p).map(|j| format!("x{j}")).collect();
        writeln!(w, "{}", header.join(","))?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|&x| crate::fmt17(x)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    /// Sidecar metadata: `{d, lambda, u, seed, count}`.
    pub fn metadata_json(&self) -> serde_json::Value {
        serde_json::json!({
            "d": self.params.d(),
            "lambda": self.params.lambda(),
            "u": self.params.u(),
            "seed": self.seed,
            "count": self.count,
        })
    }

    pub fn write_metadata<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "{}", self.metadata_json())
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle values carry 17 digits
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn parameter_validation() {
        assert!(NdfhlParams::new(1, 1.0, 1.0).is_err());
        assert!(NdfhlParams::new(2, 0.0, 1.0).is_err());
        assert!(NdfhlParams::new(2, 1.0, -1.0).is_err());
        let p = NdfhlParams::new(4, 2.0, 0.5).unwrap();
        assert_eq!(p.p(), 3);
        assert!(NdfhlParams::new(2, 1.0, 0.0).unwrap().is_cauchy_limit());
    }

    #[test]
    fn pdf_anchors() {
        // d=3 at the origin: (1/2pi) * 2 = 1/pi.
        let d3 = NdfhlParams::new(3, 1.0, 1.0).unwrap();
        assert_relative_eq!(
            d3.pdf(&[0.0, 0.0]).unwrap(),
            std::f64::consts::FRAC_1_PI,
            max_relative = 1e-13
        );
        // d=2 at the origin: (1/pi) e K_1(1), frozen from the Bessel oracle.
        let d2 = NdfhlParams::new(2, 1.0, 1.0).unwrap();
        assert_relative_eq!(d2.pdf(&[0.0]).unwrap(), 0.5208038299916700, max_relative = 1e-12);
        // d=4 at radius 1, frozen from the high-precision density.
        let d4 = NdfhlParams::new(4, 1.0, 1.0).unwrap();
        assert_relative_eq!(
            d4.pdf_at_radius(1.0).unwrap(),
            0.04706126147341592,
            max_relative = 1e-12
        );
    }

    #[test]
    fn d3_elementary_matches_bessel_route() {
        let params = NdfhlParams::new(3, 1.3, 0.7).unwrap();
        for &r in &[0.0, 0.3, 1.0, 4.0, 20.0, 80.0] {
            let fast = params.ln_pdf_at_radius(r).unwrap();
            let bessel = params.ln_pdf_bessel_at_radius(r).unwrap();
            assert_relative_eq!(fast.exp(), bessel.exp(), max_relative = 1e-12);
        }
    }

    #[test]
    fn pdf_rejects_bad_points() {
        let params = NdfhlParams::new(3, 1.0, 1.0).unwrap();
        assert!(params.pdf(&[0.0]).is_err());
        assert!(params.pdf(&[f64::NAN, 0.0]).is_err());
        assert!(NdfhlParams::new(3, 1.0, 0.0).unwrap().pdf(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn isotropy_is_exact_under_signed_permutations() {
        let params = NdfhlParams::new(4, 1.0, 2.0).unwrap();
        let n = [0.3, -1.2, 0.7];
        let f = params.pdf(&n).unwrap();
        assert_eq!(f, params.pdf(&[-1.2, 0.7, 0.3]).unwrap());
        assert_eq!(f, params.pdf(&[-0.3, 1.2, -0.7]).unwrap());
    }

    #[test]
    fn cauchy_anchors() {
        assert_relative_eq!(
            cauchy_pdf(1, 1.0, &[0.0]).unwrap(),
            std::f64::consts::FRAC_1_PI,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            cauchy_pdf(2, 1.0, &[0.0, 0.0]).unwrap(),
            0.5 * std::f64::consts::FRAC_1_PI,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            cauchy_pdf(1, 2.0, &[0.0]).unwrap(),
            0.5 * std::f64::consts::FRAC_1_PI,
            max_relative = 1e-13
        );
    }

    #[test]
    fn dispatch_selects_cauchy_branch() {
        let d3 = NdfhlParams::new(3, 1.0, 0.0).unwrap();
        assert_relative_eq!(
            d3.pdf_dispatch(&[0.0, 0.0]).unwrap(),
            0.5 * std::f64::consts::FRAC_1_PI,
            max_relative = 1e-13
        );
        let d2 = NdfhlParams::new(2, 1.0, 0.0).unwrap();
        assert_relative_eq!(
            d2.pdf_dispatch(&[0.0]).unwrap(),
            std::f64::consts::FRAC_1_PI,
            max_relative = 1e-13
        );
    }

    #[test]
    fn dispatch_is_continuous_at_small_drift() {
        for d in [2u32, 3] {
            let small = NdfhlParams::new(d, 1.0, 1e-6).unwrap();
            let zero = NdfhlParams::new(d, 1.0, 0.0).unwrap();
            for &r in &[0.0, 1.0, 3.0] {
                let mut x = vec![0.0; (d - 1) as usize];
                x[0] = r;
                let diff = (small.pdf_dispatch(&x).unwrap() - zero.pdf_dispatch(&x).unwrap()).abs();
                assert!(diff <= 1e-4, "d={d} r={r}: diff {diff}");
            }
        }
    }

    #[test]
    fn cf_anchors() {
        let params = NdfhlParams::new(3, 1.0, 1.0).unwrap();
        assert_eq!(params.cf(&[0.0, 0.0]).unwrap(), 1.0);
        assert_relative_eq!(
            params.cf_at_radius(3.0f64.sqrt()),
            (-1.0f64).exp(),
            max_relative = 1e-14
        );
        let cauchy = NdfhlParams::new(2, 1.0, 0.0).unwrap();
        assert_relative_eq!(cauchy.cf_at_radius(1.0), (-1.0f64).exp(), max_relative = 1e-14);
        // Gaussian regime: exponent must match lambda w^2 / (2u) closely.
        let ballistic = NdfhlParams::new(3, 1.0, 1e3).unwrap();
        let w: f64 = 2.0;
        assert_relative_eq!(
            ballistic.cf_at_radius(w).ln(),
            -w * w / (2.0 * 1e3),
            max_relative = 1e-6
        );
    }

    #[test]
    fn covariance_matrix() {
        let c = NdfhlParams::new(3, 2.0, 4.0).unwrap().covariance().unwrap();
        assert_eq!(c, vec![0.5, 0.0, 0.0, 0.5]);
        let c = NdfhlParams::new(2, 1.0, 1.0).unwrap().covariance().unwrap();
        assert_eq!(c, vec![1.0]);
        let c = NdfhlParams::new(4, 3.0, 1.0).unwrap().covariance().unwrap();
        let trace: f64 = (0..3).map(|j| c[j * 3 + j]).sum();
        assert_relative_eq!(trace, 9.0, max_relative = 1e-14);
        assert!(NdfhlParams::new(3, 1.0, 0.0).unwrap().covariance().is_err());
    }

    #[test]
    fn hit_probability_anchors() {
        assert_relative_eq!(
            hit_probability(1.0, -0.5).unwrap(),
            (-1.0f64).exp(),
            max_relative = 1e-14
        );
        assert_eq!(hit_probability(1.0, 2.0).unwrap(), 1.0);
        assert_relative_eq!(
            hit_probability(2.0, -1.0).unwrap(),
            (-4.0f64).exp(),
            max_relative = 1e-14
        );
        assert!(hit_probability(0.0, 1.0).is_err());
    }

    #[test]
    fn defective_density_factorizes() {
        let sp = SignedDriftParams::new(3, 1.0, -1.0).unwrap();
        assert_relative_eq!(
            sp.defective_pdf(&[0.0, 0.0]).unwrap(),
            (-2.0f64).exp() * std::f64::consts::FRAC_1_PI,
            max_relative = 1e-13
        );
        // Shape identity: defective / P_hit equals the proper |u| law.
        let p_hit = sp.hit_probability();
        for &r in &[0.0, 0.5, 2.0, 10.0] {
            let lhs = sp.defective_pdf_at_radius(r).unwrap() / p_hit;
            let rhs = sp.base().pdf_at_radius(r).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
        // Forward drift has no defective branch.
        assert!(SignedDriftParams::new(3, 1.0, 0.5)
            .unwrap()
            .defective_pdf(&[0.0, 0.0])
            .is_err());
    }

    #[test]
    fn cauchy_entropy_anchors() {
        assert_relative_eq!(
            cauchy_entropy(1, 1.0).unwrap(),
            (4.0 * std::f64::consts::PI).ln(),
            epsilon = 1e-12
        );
        assert_relative_eq!(cauchy_entropy(2, 1.0).unwrap(), 4.8378770664093455, epsilon = 1e-11);
        assert_relative_eq!(cauchy_entropy(3, 1.0).unwrap(), 7.0620484939385816, epsilon = 1e-11);
        // Scale law: g picks up p log lambda.
        assert_relative_eq!(
            cauchy_entropy(1, 2.0).unwrap(),
            (4.0 * std::f64::consts::PI).ln() + 2.0f64.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn nig_identification_mapping() {
        let nig = NdfhlParams::new(3, 1.0, 2.0).unwrap().nig_identification().unwrap();
        assert_eq!(nig.alpha, 2.0);
        assert_eq!(nig.delta, 1.0);
        assert_eq!(nig.beta, vec![0.0, 0.0]);
        assert_eq!(nig.mu, vec![0.0, 0.0]);
        assert_eq!(nig.dispersion(), vec![1.0, 0.0, 0.0, 1.0]);
        assert_eq!(nig.kernel_order(), 1.5);

        let nig = NdfhlParams::new(2, 5.0, 0.1).unwrap().nig_identification().unwrap();
        assert_eq!((nig.alpha, nig.delta), (0.1, 5.0));
        // Kernel order equals d/2 = (p+1)/2.
        assert_eq!(nig.kernel_order(), 1.0);
    }

    #[test]
    fn sampling_is_deterministic() {
        let params = NdfhlParams::new(3, 2.0, 4.0).unwrap();
        let a = params.sample(257, 11).unwrap();
        let b = params.sample(257, 11).unwrap();
        assert_eq!(a.as_slice(), b.as_slice());
        assert_eq!(a.count(), 257);
        assert_eq!(a.dim(), 2);
        assert_ne!(a.as_slice(), params.sample(257, 12).unwrap().as_slice());
        assert!(params.sample(0, 11).is_err());
        assert!(NdfhlParams::new(3, 1.0, 0.0).unwrap().sample(10, 1).is_err());
    }

    #[test]
    fn csv_round_trip_shape() {
        let params = NdfhlParams::new(3, 1.0, 1.0).unwrap();
        let batch = params.sample(3, 5).unwrap();
        let mut buf = Vec::new();
        batch.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x1,x2"));
        assert_eq!(lines.count(), 3);
        let meta = batch.metadata_json();
        assert_eq!(meta["d"], 3);
        assert_eq!(meta["count"], 3);
        assert_eq!(meta["seed"], 5);
    }
}
