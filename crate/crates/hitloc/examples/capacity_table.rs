//! High-SNR capacity bounds of the additive boundary-noise channel: the gap
//! between the Max-Ent upper bound and the Gaussian-input lower bound
//! vanishes, and both approach (p/2) log P + c*.

use hitloc::capacity::{effective_noise_power, refined_offset, report};
use hitloc::ndfhl::NdfhlParams;

fn main() -> hitloc::Result<()> {
    let params = NdfhlParams::new(3, 1.0, 1.0)?;
    let c_star = refined_offset(&params, 1e-9)?;
    println!("NDFHL(3, 1, 1) channel on R^2, c* = {c_star:.6} nats");
    println!(
        "effective noise power = {:.6} (variance lambda/u = 1)",
        effective_noise_power(&params, 1e-9)?
    );
    println!();
    println!(
        "{:>10} {:>12} {:>12} {:>12} {:>14}",
        "P", "upper", "lower", "gap", "lower-asymptote"
    );
    for exp in [0, 1, 2, 3, 4, 6, 8] {
        let power = 10f64.powi(exp);
        let r = report(&params, power, 1e-9, 0, 0)?;
        let asymptote = power.ln() + c_star;
        println!(
            "{power:>10.0e} {:>12.6} {:>12.6} {:>12.3e} {:>14.6}",
            r.upper, r.lower, r.gap, asymptote
        );
    }
    println!("\n(pre-log is p/2 = 1 here; the last column is (p/2) log P + c*)");
    Ok(())
}
