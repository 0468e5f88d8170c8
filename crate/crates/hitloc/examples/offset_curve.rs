//! The asymptotic capacity offset L(u) = (p/2) log(2 pi e / p) - h(N) along
//! a drift sweep, continuing into the infinite-variance Cauchy endpoint at
//! u = 0, where it is set by the closed-form Cauchy entropy.

use hitloc::capacity::offset_curve;

fn main() -> hitloc::Result<()> {
    for (d, lambda) in [(2u32, 1.0), (2, 2.0), (3, 1.0)] {
        let grid: Vec<f64> = (0..10).map(|i| 10f64.powf(1.0 - i as f64 / 3.0)).collect();
        let curve = offset_curve(d, lambda, &grid, 1e-8)?;
        println!("d = {d}, lambda = {lambda}:");
        for (u, l) in &curve {
            if *u == 0.0 {
                println!("  u = 0          L = {l:+.6}   <- Cauchy endpoint");
            } else {
                println!("  u = {u:<10.4} L = {l:+.6}");
            }
        }
        println!();
    }
    Ok(())
}
