//! Differential entropy as a function of the drift: quadrature values
//! descend continuously to the Cauchy entropy g(p) as u vanishes, even
//! though the noise variance diverges in that limit.

use hitloc::entropy::{entropy_lower, entropy_quadrature, entropy_upper};
use hitloc::ndfhl::{cauchy_entropy, NdfhlParams};

fn main() -> hitloc::Result<()> {
    println!("{:>4} {:>10} {:>12} {:>12} {:>12}", "d", "u", "lower", "h", "upper");
    for d in [2u32, 3, 4] {
        for &u in &[10.0, 1.0, 0.1, 0.01, 0.001] {
            let params = NdfhlParams::new(d, 1.0, u)?;
            let h = entropy_quadrature(&params, 1e-8)?.value;
            let lo = entropy_lower(&params, 1e-9)?.value;
            let hi = entropy_upper(&params)?.value;
            println!("{d:>4} {u:>10.3} {lo:>12.6} {h:>12.6} {hi:>12.6}");
        }
        let g = cauchy_entropy(d - 1, 1.0)?;
        println!("{d:>4} {:>10} {:>12} {g:>12.6} {:>12}  <- Cauchy limit g(p)", "0", "-", "inf");
    }

    println!("\nGaussian regime: the sandwich closes as u grows.");
    let params = NdfhlParams::new(3, 1.0, 1000.0)?;
    let h = entropy_quadrature(&params, 1e-8)?.value;
    let hi = entropy_upper(&params)?.value;
    println!("u = 1000: upper - h = {:.2e} nats", hi - h);
    Ok(())
}
