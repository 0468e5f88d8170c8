//! Evaluate the noise density and characteristic function across regimes:
//! the elementary d = 3 form, the Bessel-kernel form for other dimensions,
//! and the Cauchy branch at zero drift.

use hitloc::ndfhl::NdfhlParams;

fn main() -> hitloc::Result<()> {
    let d3 = NdfhlParams::new(3, 1.0, 1.0)?;
    println!("NDFHL(d=3, lambda=1, u=1) on R^2");
    println!("  pdf(0)          = {:.12}  (= 1/pi)", d3.pdf(&[0.0, 0.0])?);
    println!("  pdf(|n|=2)      = {:.12}", d3.pdf_at_radius(2.0)?);
    println!("  cf(|w|=sqrt(3)) = {:.12}  (= 1/e)", d3.cf_at_radius(3f64.sqrt()));

    let d2 = NdfhlParams::new(2, 1.0, 1.0)?;
    println!("\nNDFHL(d=2, lambda=1, u=1) on R (Bessel K_1 kernel)");
    println!("  pdf(0)          = {:.12}", d2.pdf(&[0.0])?);

    // Zero drift dispatches to the isotropic Cauchy law; the Bessel formula
    // is never evaluated there.
    let cauchy = NdfhlParams::new(3, 1.0, 0.0)?;
    println!("\nNDFHL(d=3, lambda=1, u=0): Cauchy branch");
    println!("  pdf(0)          = {:.12}  (= 1/(2 pi))", cauchy.pdf_dispatch(&[0.0, 0.0])?);
    println!("  cf(|w|=1)       = {:.12}  (= 1/e)", cauchy.cf_at_radius(1.0));

    // Strong drift approaches a Gaussian with variance lambda/u per axis.
    let ballistic = NdfhlParams::new(3, 1.0, 1000.0)?;
    let w = 2.0;
    println!("\nNDFHL(d=3, lambda=1, u=1000): near-Gaussian regime");
    println!("  cf(|w|=2)       = {:.12}", ballistic.cf_at_radius(w));
    println!("  Gaussian ref    = {:.12}", (-w * w / 2000.0f64).exp());

    // The covariance is (lambda/u) I in every case with u > 0.
    println!("\ncovariance of NDFHL(4, 3, 1): {:?}", NdfhlParams::new(4, 3.0, 1.0)?.covariance()?);
    Ok(())
}
