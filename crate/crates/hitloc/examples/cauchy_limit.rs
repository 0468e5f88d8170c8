//! Convergence to the Cauchy regime as the drift vanishes: the hitting-time
//! law approaches its heavy-tailed limit in Laplace transform, and the noise
//! CF and entropy approach their Cauchy counterparts.

use hitloc::ndfhl::{cauchy_entropy, NdfhlParams};
use hitloc::validation::cauchy_limit_sweep;
use hitloc::IgParams;

fn main() -> hitloc::Result<()> {
    // Mixing-time side: IG(nu, kappa) with nu >> kappa has Laplace transform
    // close to exp(-sqrt(2 kappa s)).
    println!("Laplace transform vs heavy-tail limit (kappa = 1, nu = 1e4):");
    let ig = IgParams::new(1e4, 1.0)?;
    for s in [0.01, 0.1, 1.0, 10.0] {
        let exact = ig.laplace(s)?;
        let limit = (-(2.0f64 * s).sqrt()).exp();
        println!("  s = {s:<5}: {exact:.8} vs {limit:.8}");
    }

    // Noise side: CF distance and entropy distance both shrink with u.
    println!("\nnoise law, d = 2, lambda = 1:");
    let g1 = cauchy_entropy(1, 1.0)?;
    println!("  Cauchy entropy g(1) = {g1:.7} (= log 4 pi)");
    for report in cauchy_limit_sweep(2, 1.0, &[1.0, 0.1, 0.01, 0.001], 1e-8)? {
        println!(
            "  {:<34} stat = {:.6e} pass = {}",
            report.check_name, report.statistic, report.pass
        );
    }

    // The CF converges everywhere: exp(-lambda(sqrt(u^2+w^2)-u)) -> exp(-lambda w).
    let small = NdfhlParams::new(2, 1.0, 1e-3)?;
    println!("\n  cf(1; u=1e-3) = {:.8} vs Cauchy {:.8}", small.cf_at_radius(1.0), (-1.0f64).exp());
    Ok(())
}
