//! Independent oracles shared by the integration suites. These deliberately
//! avoid the library's evaluation paths: Bessel K goes through its integral
//! representation, E1 through direct quadrature of its defining integral,
//! and digamma through finite differences of log-gamma.

// Each test binary compiles this module separately and uses a subset.
#![allow(dead_code)]

/// Composite Simpson rule with `n` panels (n even).
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Simpson with panel doubling until successive estimates agree.
pub fn simpson_converged<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let mut n = 64;
    let mut prev = simpson(f, a, b, n);
    loop {
        n *= 2;
        let cur = simpson(f, a, b, n);
        if (cur - prev).abs() <= rel_tol * cur.abs().max(1e-300) || n > 1 << 22 {
            return cur;
        }
        prev = cur;
    }
}

/// K_nu(x) from the integral representation
/// int_0^inf e^{-x cosh t} cosh(nu t) dt.
pub fn bessel_k_integral(nu: f64, x: f64) -> f64 {
    // Beyond x cosh(t) ~ 745 the integrand underflows to zero.
    let t_max = (1500.0 / x).max(2.0).ln() + (2.0f64).ln().max(1.0) + 5.0;
    let f = |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh();
    simpson_converged(&f, 0.0, t_max, 1e-13)
}

/// E1(x) = int_x^inf e^{-t} / t dt by direct quadrature.
pub fn e1_quadrature(x: f64) -> f64 {
    let upper = (x + 745.0).min(745.0).max(x + 5.0);
    let f = |t: f64| (-t).exp() / t;
    simpson_converged(&f, x, upper, 1e-13)
}

/// Digamma by a five-point central difference of log-gamma; accurate to
/// roughly 1e-10 for moderate arguments.
pub fn digamma_finite_diff(x: f64) -> f64 {
    let h = 1e-3 * x.abs().max(1.0);
    let lg = |y: f64| hitloc::special::log_gamma(y).unwrap();
    (lg(x - 2.0 * h) - 8.0 * lg(x - h) + 8.0 * lg(x + h) - lg(x + 2.0 * h)) / (12.0 * h)
}

/// Sample mean and standard error of the mean.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Mean and standard error of g(x) over the slice.
pub fn mean_se_of<F: Fn(f64) -> f64>(xs: &[f64], g: F) -> (f64, f64) {
    let n = xs.len() as f64;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for &x in xs {
        let v = g(x);
        sum += v;
        sum_sq += v * v;
    }
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    (mean, (var / n).sqrt())
}
