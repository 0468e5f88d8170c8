//! Independent physics- and statistics-level oracles: raw first-hitting
//! path simulation with Brownian-bridge crossing correction, empirical
//! characteristic-function gates, convolution-closure and divisibility
//! checks, and the vanishing-drift sweep.
//!
//! Every check is reproducible bit-for-bit for a fixed (seed, config): paths
//! and sample chunks draw from per-index ChaCha streams and partial results
//! are combined in index order.

use crate::entropy::entropy_quadrature;
use crate::error::{domain, Error, Result};
use crate::ig::{IgParams, PhysicalTransport};
use crate::ndfhl::{cauchy_entropy, NdfhlParams, SampleBatch};
use crate::rng::{derive_seed, stream_rng, thread_pool};
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use std::io::Write;

/// Configuration of the raw drift-diffusion first-hitting simulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SdeConfig {
    pub d: u32,
    pub phys: PhysicalTransport,
    pub dt: f64,
    pub max_steps: usize,
    pub bridge_correction: bool,
}

impl SdeConfig {
    /// The step cap defaults to 50 expected hitting times.
    pub fn new(d: u32, phys: PhysicalTransport, dt: f64, bridge_correction: bool) -> Result<Self> {
        if d < 2 {
            return Err(domain(format!("ambient dimension must be >= 2, got {d}")));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(domain(format!("dt must be finite and > 0, got {dt}")));
        }
        if phys.u <= 0.0 {
            return Err(domain(format!(
                "path simulation requires forward drift u > 0, got {}",
                phys.u
            )));
        }
        let nu = phys.lambda / phys.mu();
        let max_steps = (50.0 * nu / dt).ceil() as usize;
        Ok(Self {
            d,
            phys,
            dt,
            max_steps,
            bridge_correction,
        })
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }
}

/// Outcome of one statistical gate; `pass` holds exactly when
/// `statistic <= threshold`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub check_name: String,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
    pub metadata: serde_json::Value,
}

impl ValidationReport {
    pub fn new(
        check_name: impl Into<String>,
        statistic: f64,
        threshold: f64,
        metadata: serde_json::Value,
    ) -> Self {
        Self {
            check_name: check_name.into(),
            statistic,
            threshold,
            pass: statistic <= threshold,
            metadata,
        }
    }

    /// Whether the observed outcome contradicts the expectation recorded in
    /// the metadata (negative controls are expected to fail).
    pub fn violated(&self) -> bool {
        let expected_fail = self.metadata.get("expected").and_then(|v| v.as_str()) == Some("fail");
        if expected_fail {
            self.pass
        } else {
            !self.pass
        }
    }
}

/// JSON lines, one object per check.
pub fn write_reports_json_lines<W: Write>(
    reports: &[ValidationReport],
    w: &mut W,
) -> std::io::Result<()> {
    for r in reports {
        writeln!(w, "{}", serde_json::to_string(r).expect("report serializes"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Path simulation
// ---------------------------------------------------------------------------

/// Euler-Maruyama first-hitting paths absorbed at x1 = lambda, recording the
/// hit time and the transverse location. With `bridge_correction` each step
/// also applies the Brownian-bridge crossing probability
/// exp(-2 (lambda - x)(lambda - x') / (sigma^2 dt)) to catch intra-step hits.
///
/// Errors with [`Error::NonTermination`] if more than 0.1% of the paths
/// exhaust the step cap; surviving stragglers are dropped from the output.
pub fn sde_hitting_sample(
    cfg: &SdeConfig,
    count: usize,
    seed: u64,
) -> Result<(Vec<f64>, SampleBatch)> {
    if count == 0 {
        return Err(domain("count must be >= 1"));
    }
    let p = (cfg.d - 1) as usize;
    const PATH_CHUNK: usize = 128;
    let n_chunks = count.div_ceil(PATH_CHUNK);
    let cfg = *cfg;
    let chunks: Vec<Vec<PathOutcome>> = thread_pool().install(|| {
        (0..n_chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * PATH_CHUNK;
                let len = PATH_CHUNK.min(count - start);
                (0..len)
                    .map(|i| {
                        let mut rng = stream_rng(seed, (start + i) as u64);
                        simulate_path(&cfg, p, &mut rng)
                    })
                    .collect()
            })
            .collect()
    });

    let mut times = Vec::with_capacity(count);
    let mut points = Vec::with_capacity(count * p);
    let mut unfinished = 0usize;
    for path in chunks.into_iter().flatten() {
        match path {
            Some((t, loc)) => {
                times.push(t);
                points.extend_from_slice(&loc);
            }
            None => unfinished += 1,
        }
    }
    if unfinished * 1000 > count {
        return Err(Error::NonTermination {
            unfinished,
            total: count,
        });
    }
    let params = NdfhlParams::new(cfg.d, cfg.phys.lambda, cfg.phys.u)?;
    let finished = times.len();
    let batch = SampleBatch::from_rows(params, seed, points, finished)?;
    Ok((times, batch))
}

/// Hit time and transverse location, or None when the step cap runs out.
type PathOutcome = Option<(f64, Vec<f64>)>;

fn simulate_path(cfg: &SdeConfig, p: usize, rng: &mut ChaCha12Rng) -> PathOutcome {
    let lambda = cfg.phys.lambda;
    let sigma2 = cfg.phys.sigma2;
    let sigma = sigma2.sqrt();
    let drift = cfg.phys.mu();
    let dt = cfg.dt;
    let sq_dt = dt.sqrt();

    let mut x = 0.0f64;
    let mut y = vec![0.0f64; p];
    let mut y_next = vec![0.0f64; p];
    let mut t = 0.0f64;

    for _ in 0..cfg.max_steps {
        let xi: f64 = StandardNormal.sample(rng);
        let x_next = x + drift * dt + sigma * sq_dt * xi;
        for j in 0..p {
            let z: f64 = StandardNormal.sample(rng);
            y_next[j] = y[j] + sigma * sq_dt * z;
        }

        let theta = if x_next >= lambda {
            let dx = x_next - x;
            if dx > 0.0 {
                Some(((lambda - x) / dx).clamp(0.0, 1.0))
            } else {
                Some(1.0)
            }
        } else if cfg.bridge_correction {
            let p_cross = (-2.0 * (lambda - x) * (lambda - x_next) / (sigma2 * dt)).exp();
            let w: f64 = rng.random();
            // Crossing time inside the step is unresolved; the midpoint
            // keeps the bias at O(dt).
            (w < p_cross).then_some(0.5)
        } else {
            None
        };

        if let Some(theta) = theta {
            // Transverse location at the crossing instant: a Brownian
            // bridge between the step endpoints.
            let bridge_sd = sigma * (dt * theta * (1.0 - theta)).sqrt();
            let mut loc = Vec::with_capacity(p);
            for j in 0..p {
                let eta: f64 = StandardNormal.sample(rng);
                loc.push(y[j] + theta * (y_next[j] - y[j]) + bridge_sd * eta);
            }
            return Some((t + theta * dt, loc));
        }

        x = x_next;
        std::mem::swap(&mut y, &mut y_next);
        t += dt;
    }
    None
}

// ---------------------------------------------------------------------------
// Characteristic-function gates
// ---------------------------------------------------------------------------

/// Deterministic frequency grid: 20 norms spread over [0.1, 5], directions
/// alternating between coordinate axes and the normalized all-ones vector.
pub fn default_omega_grid(p: u32) -> Vec<Vec<f64>> {
    let p = p as usize;
    let norms: Vec<f64> = (0..20).map(|i| 0.1 + i as f64 * (5.0 - 0.1) / 19.0).collect();
    norms
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let mut v = vec![0.0; p];
            if i % 2 == 0 {
                v[(i / 2) % p] = w;
            } else {
                let c = w / (p as f64).sqrt();
                for (j, slot) in v.iter_mut().enumerate() {
                    *slot = if j % 2 == 0 { c } else { -c };
                }
            }
            v
        })
        .collect()
}

fn empirical_cf(batch: &SampleBatch, grid: &[Vec<f64>]) -> Vec<f64> {
    let n = batch.count() as f64;
    thread_pool().install(|| {
        grid.par_iter()
            .map(|omega| {
                let mut sum = 0.0;
                for row in batch.rows() {
                    let dot: f64 = row.iter().zip(omega).map(|(x, w)| x * w).sum();
                    sum += dot.cos();
                }
                sum / n
            })
            .collect()
    })
}

/// Max over the grid of |empirical real CF - model CF|, gated at
/// 4 / sqrt(count).
pub fn empirical_cf_check(
    batch: &SampleBatch,
    params: &NdfhlParams,
    grid: &[Vec<f64>],
) -> Result<ValidationReport> {
    if grid.is_empty() {
        return Err(domain("omega grid must be nonempty"));
    }
    for omega in grid {
        if omega.len() != batch.dim() {
            return Err(domain("omega grid dimension does not match the batch"));
        }
    }
    let ecf = empirical_cf(batch, grid);
    let mut stat = 0.0f64;
    for (omega, e) in grid.iter().zip(&ecf) {
        let model = params.cf(omega)?;
        stat = stat.max((e - model).abs());
    }
    let threshold = 4.0 / (batch.count() as f64).sqrt();
    Ok(ValidationReport::new(
        format!(
            "empirical_cf(d={},lambda={},u={})",
            params.d(),
            params.lambda(),
            params.u()
        ),
        stat,
        threshold,
        json!({"count": batch.count(), "grid_points": grid.len(), "expected": "pass"}),
    ))
}

/// Two-sample CF distance on a shared grid, which cancels grid bias; gated
/// at 4 (1/sqrt(n_a) + 1/sqrt(n_b)).
pub fn two_sample_cf_check(
    name: impl Into<String>,
    a: &SampleBatch,
    b: &SampleBatch,
    grid: &[Vec<f64>],
) -> Result<ValidationReport> {
    if a.dim() != b.dim() {
        return Err(domain("batch dimensions differ"));
    }
    let ea = empirical_cf(a, grid);
    let eb = empirical_cf(b, grid);
    let stat = ea
        .iter()
        .zip(&eb)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let threshold = 4.0 * (1.0 / (a.count() as f64).sqrt() + 1.0 / (b.count() as f64).sqrt());
    Ok(ValidationReport::new(
        name,
        stat,
        threshold,
        json!({"count_a": a.count(), "count_b": b.count(), "expected": "pass"}),
    ))
}

/// Pointwise sum of two equally sized batches, labeled with the law the sum
/// should follow.
pub fn sum_batches(a: &SampleBatch, b: &SampleBatch, label: NdfhlParams) -> Result<SampleBatch> {
    if a.count() != b.count() || a.dim() != b.dim() {
        return Err(domain("batch shapes differ"));
    }
    if label.p() as usize != a.dim() {
        return Err(domain("label dimension does not match the batches"));
    }
    let points: Vec<f64> = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| x + y)
        .collect();
    SampleBatch::from_rows(label, a.seed(), points, a.count())
}

/// Sums independent batches with separations lambda1 and lambda2 and gates
/// the result against the law with separation lambda1 + lambda2.
pub fn convolution_closure_check(
    lambda1: f64,
    lambda2: f64,
    u: f64,
    d: u32,
    count: usize,
    seed: u64,
) -> Result<ValidationReport> {
    let a = NdfhlParams::new(d, lambda1, u)?.sample(count, derive_seed(seed, 1))?;
    let b = NdfhlParams::new(d, lambda2, u)?.sample(count, derive_seed(seed, 2))?;
    let target = NdfhlParams::new(d, lambda1 + lambda2, u)?;
    let sum = sum_batches(&a, &b, target)?;
    let mut report = empirical_cf_check(&sum, &target, &default_omega_grid(target.p()))?;
    report.check_name = format!("convolution_closure(d={d},lambda={lambda1}+{lambda2},u={u})");
    Ok(report)
}

/// Sums k independent copies drawn at separation lambda/k and gates against
/// the full-separation law.
pub fn divisibility_check(
    params: &NdfhlParams,
    k: u32,
    count: usize,
    seed: u64,
) -> Result<ValidationReport> {
    if k < 2 {
        return Err(domain(format!("divisibility order must be >= 2, got {k}")));
    }
    let piece = NdfhlParams::new(params.d(), params.lambda() / k as f64, params.u())?;
    let mut acc = piece.sample(count, derive_seed(seed, 100))?;
    for j in 1..k {
        let next = piece.sample(count, derive_seed(seed, 100 + j as u64))?;
        acc = sum_batches(&acc, &next, *params)?;
    }
    let mut report = empirical_cf_check(&acc, params, &default_omega_grid(params.p()))?;
    report.check_name = format!(
        "divisibility(d={},lambda={},u={},k={k})",
        params.d(),
        params.lambda(),
        params.u()
    );
    Ok(report)
}

// ---------------------------------------------------------------------------
// Vanishing-drift sweep
// ---------------------------------------------------------------------------

/// For each drift in a descending list, reports the entropy distance to the
/// Cauchy value g(p) and the CF sup-distance to exp(-lambda w); each entry
/// is gated against the previous one, so the sequence must decrease.
pub fn cauchy_limit_sweep(
    d: u32,
    lambda: f64,
    u_list: &[f64],
    tol: f64,
) -> Result<Vec<ValidationReport>> {
    if u_list.is_empty() {
        return Err(domain("u list must be nonempty"));
    }
    let p = d.checked_sub(1).filter(|&p| p >= 1).ok_or_else(|| {
        domain(format!("ambient dimension must be >= 2, got {d}"))
    })?;
    let g_p = cauchy_entropy(p, lambda)?;
    let norms: Vec<f64> = (0..20).map(|i| 0.1 + i as f64 * (5.0 - 0.1) / 19.0).collect();

    let mut reports = Vec::with_capacity(2 * u_list.len() + 1);
    let mut prev_h = f64::MAX;
    let mut prev_cf = f64::MAX;
    let mut last_h_dist = f64::MAX;
    for &u in u_list {
        if u <= 0.0 {
            return Err(domain(format!("sweep drifts must be positive, got {u}")));
        }
        let params = NdfhlParams::new(d, lambda, u)?;
        let h = entropy_quadrature(&params, tol)?.value;
        let h_dist = (h - g_p).abs();
        reports.push(ValidationReport::new(
            format!("cauchy_limit_entropy(d={d},u={u})"),
            h_dist,
            prev_h,
            json!({"h": h, "g_p": g_p, "expected": "pass"}),
        ));
        prev_h = h_dist;
        last_h_dist = h_dist;

        let cf_dist = norms
            .iter()
            .map(|&w| (params.cf_at_radius(w) - (-lambda * w).exp()).abs())
            .fold(0.0, f64::max);
        reports.push(ValidationReport::new(
            format!("cauchy_limit_cf(d={d},u={u})"),
            cf_dist,
            prev_cf,
            json!({"expected": "pass"}),
        ));
        prev_cf = cf_dist;
    }
    reports.push(ValidationReport::new(
        format!("cauchy_limit_entropy_final(d={d})"),
        last_h_dist,
        0.05,
        json!({"g_p": g_p, "expected": "pass"}),
    ));
    Ok(reports)
}

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

/// Knobs for the full validation suite.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: usize,
    pub sde_paths: usize,
    pub sde_dt: f64,
    /// Adds deliberately mismatched gates that must fail, demonstrating the
    /// gates discriminate.
    pub include_negative_controls: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            count: 1_000_000,
            sde_paths: 50_000,
            sde_dt: 1e-3,
            include_negative_controls: false,
        }
    }
}

/// Runs every positive gate (and, optionally, the negative controls).
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<ValidationReport>> {
    let seed = cfg.seed;
    let count = cfg.count;
    let mut reports = Vec::new();

    // Empirical CF gates over a spread of parameter settings.
    let settings: [(u32, f64, f64); 6] = [
        (2, 1.0, 1.0),
        (3, 1.0, 1.0),
        (4, 1.0, 1.0),
        (3, 2.0, 4.0),
        (2, 2.0, 0.5),
        (3, 0.5, 0.2),
    ];
    let mut moment_batch = None;
    for (i, &(d, lambda, u)) in settings.iter().enumerate() {
        let params = NdfhlParams::new(d, lambda, u)?;
        let batch = params.sample(count, derive_seed(seed, 10 + i as u64))?;
        reports.push(empirical_cf_check(&batch, &params, &default_omega_grid(params.p()))?);
        if (d, lambda, u) == (3, 2.0, 4.0) {
            moment_batch = Some(batch);
        }
    }

    // Moment gates on the (3, 2, 4) batch: mean 0, per-axis variance 0.5.
    if let Some(batch) = moment_batch {
        reports.extend(moment_checks(&batch));
    }

    // Closure and divisibility.
    reports.push(convolution_closure_check(0.5, 0.5, 1.0, 3, count, derive_seed(seed, 20))?);
    reports.push(convolution_closure_check(1.0, 2.0, 1.0, 2, count, derive_seed(seed, 21))?);
    let base = NdfhlParams::new(3, 1.0, 1.0)?;
    reports.push(divisibility_check(&base, 2, count, derive_seed(seed, 22))?);
    reports.push(divisibility_check(&base, 5, count, derive_seed(seed, 23))?);

    // Laplace transform of the mixing law against Monte Carlo.
    reports.extend(laplace_checks(count, derive_seed(seed, 30))?);

    // Heavy-drift-limit of the Laplace transform (deterministic).
    reports.push(levy_limit_check()?);

    // Raw path simulation against the analytic law.
    reports.extend(sde_checks(cfg)?);

    // Vanishing-drift sweep.
    reports.extend(cauchy_limit_sweep(2, 1.0, &[1.0, 0.1, 0.01, 1e-3], 1e-8)?);

    if cfg.include_negative_controls {
        reports.extend(negative_controls(count.min(1_000_000), derive_seed(seed, 90))?);
    }
    Ok(reports)
}

fn moment_checks(batch: &SampleBatch) -> Vec<ValidationReport> {
    let p = batch.dim();
    let n = batch.count() as f64;
    let target = batch.params().lambda() / batch.params().u();
    let mut mean = vec![0.0; p];
    for row in batch.rows() {
        for (m, x) in mean.iter_mut().zip(row) {
            *m += x;
        }
    }
    for m in &mut mean {
        *m /= n;
    }
    let mut var = vec![0.0; p];
    let mut m4 = vec![0.0; p];
    for row in batch.rows() {
        for j in 0..p {
            let dev = row[j] - mean[j];
            var[j] += dev * dev;
            m4[j] += dev.powi(4);
        }
    }
    for j in 0..p {
        var[j] /= n - 1.0;
        m4[j] /= n;
    }

    let mean_stat = mean.iter().fold(0.0f64, |a, &m| a.max(m.abs()));
    let mean_thr = var
        .iter()
        .map(|&v| 4.0 * (v / n).sqrt())
        .fold(0.0, f64::max);
    let var_stat = var.iter().fold(0.0f64, |a, &v| a.max((v - target).abs()));
    let var_thr = (0..p)
        .map(|j| 4.0 * ((m4[j] - var[j] * var[j]).max(0.0) / n).sqrt())
        .fold(0.0, f64::max);
    let label = format!(
        "(d={},lambda={},u={})",
        batch.params().d(),
        batch.params().lambda(),
        batch.params().u()
    );
    vec![
        ValidationReport::new(
            format!("sample_mean{label}"),
            mean_stat,
            mean_thr,
            json!({"expected": "pass"}),
        ),
        ValidationReport::new(
            format!("sample_variance{label}"),
            var_stat,
            var_thr,
            json!({"target": target, "expected": "pass"}),
        ),
    ]
}

fn laplace_checks(count: usize, seed: u64) -> Result<Vec<ValidationReport>> {
    let ig = IgParams::new(1.0, 1.0)?;
    let draws = ig.sample(count, seed)?;
    let n = count as f64;
    let mut reports = Vec::new();
    for &s in &[0.1, 1.0, 10.0] {
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for &t in &draws {
            let v = (-s * t).exp();
            sum += v;
            sum_sq += v * v;
        }
        let mean = sum / n;
        let se = ((sum_sq / n - mean * mean).max(0.0) / n).sqrt();
        let exact = ig.laplace(s)?;
        reports.push(ValidationReport::new(
            format!("ig_laplace_mc(s={s})"),
            (mean - exact).abs(),
            4.0 * se,
            json!({"exact": exact, "expected": "pass"}),
        ));
    }
    Ok(reports)
}

/// With the shape fixed and the mean pushed to nu = 1e4 kappa, the Laplace
/// transform must approach exp(-sqrt(2 kappa s)) uniformly on [0.01, 10].
fn levy_limit_check() -> Result<ValidationReport> {
    let kappa = 1.0;
    let ig = IgParams::new(1e4 * kappa, kappa)?;
    let mut stat = 0.0f64;
    for i in 0..20 {
        let s = 0.01 * (10.0f64 / 0.01).powf(i as f64 / 19.0);
        let limit = (-(2.0 * kappa * s).sqrt()).exp();
        stat = stat.max((ig.laplace(s)? - limit).abs());
    }
    Ok(ValidationReport::new(
        "ig_levy_limit_laplace",
        stat,
        1e-3,
        json!({"nu_over_kappa": 1e4, "expected": "pass"}),
    ))
}

fn sde_checks(cfg: &SuiteConfig) -> Result<Vec<ValidationReport>> {
    let phys = PhysicalTransport::new(1.0, 1.0, 1.0)?;
    let sde = SdeConfig::new(3, phys, cfg.sde_dt, true)?;
    let (times, batch) = sde_hitting_sample(&sde, cfg.sde_paths, derive_seed(cfg.seed, 40))?;
    let n = times.len() as f64;

    let t_mean = times.iter().sum::<f64>() / n;
    let t_var = times.iter().map(|&t| (t - t_mean) * (t - t_mean)).sum::<f64>() / (n - 1.0);
    let nu = phys.lambda / phys.mu();
    let mut reports = vec![ValidationReport::new(
        "sde_hit_time_mean",
        (t_mean - nu).abs(),
        4.0 * (t_var / n).sqrt() + 2.0 * cfg.sde_dt,
        json!({"paths": times.len(), "expected": "pass"}),
    )];

    // Hit-time variance against nu^3 / kappa.
    let kappa = phys.lambda * phys.lambda / phys.sigma2;
    let var_target = nu.powi(3) / kappa;
    let m4 = times
        .iter()
        .map(|&t| ((t - t_mean) * (t - t_mean) - t_var).powi(2))
        .sum::<f64>()
        / n;
    reports.push(ValidationReport::new(
        "sde_hit_time_variance",
        (t_var - var_target).abs(),
        4.0 * (m4 / n).sqrt() + 2.0 * cfg.sde_dt,
        json!({"target": var_target, "expected": "pass"}),
    ));

    // Per-axis hit-location variance against lambda/u.
    let mut moment = moment_checks(&batch);
    if let Some(var_check) = moment.pop() {
        reports.push(ValidationReport::new(
            "sde_hit_location_variance",
            var_check.statistic,
            var_check.threshold + 2.0 * cfg.sde_dt,
            json!({"expected": "pass"}),
        ));
    }

    // Two-sample CF distance against the variance-mixture sampler.
    let reference = batch
        .params()
        .sample(batch.count(), derive_seed(cfg.seed, 41))?;
    reports.push(two_sample_cf_check(
        "sde_vs_mixture_cf",
        &batch,
        &reference,
        &default_omega_grid(batch.params().p()),
    )?);
    Ok(reports)
}

fn negative_controls(count: usize, seed: u64) -> Result<Vec<ValidationReport>> {
    let mut reports = Vec::new();

    // Wrong drift: same separation, doubled drift.
    let truth = NdfhlParams::new(3, 1.0, 1.0)?;
    let batch = truth.sample(count, derive_seed(seed, 1))?;
    let wrong = NdfhlParams::new(3, 1.0, 2.0)?;
    let mut r = empirical_cf_check(&batch, &wrong, &default_omega_grid(2))?;
    r.check_name = "negative_control_cf_mismatch".to_string();
    r.metadata = json!({"expected": "fail"});
    reports.push(r);

    // Convolution tested against the wrong total separation.
    let a = NdfhlParams::new(3, 1.0, 1.0)?.sample(count, derive_seed(seed, 2))?;
    let b = NdfhlParams::new(3, 2.0, 1.0)?.sample(count, derive_seed(seed, 3))?;
    let wrong_total = NdfhlParams::new(3, 2.5, 1.0)?;
    let sum = sum_batches(&a, &b, wrong_total)?;
    let mut r = empirical_cf_check(&sum, &wrong_total, &default_omega_grid(2))?;
    r.check_name = "negative_control_convolution".to_string();
    r.metadata = json!({"expected": "fail"});
    reports.push(r);

    // Halved pieces summed, tested against doubled drift.
    let piece = NdfhlParams::new(3, 0.5, 1.0)?;
    let s1 = piece.sample(count, derive_seed(seed, 4))?;
    let s2 = piece.sample(count, derive_seed(seed, 5))?;
    let wrong_u = NdfhlParams::new(3, 1.0, 2.0)?;
    let sum = sum_batches(&s1, &s2, wrong_u)?;
    let mut r = empirical_cf_check(&sum, &wrong_u, &default_omega_grid(2))?;
    r.check_name = "negative_control_divisibility".to_string();
    r.metadata = json!({"expected": "fail"});
    reports.push(r);

    Ok(reports)
}
