//! Reverse drift makes the hitting law defective: the particle escapes with
//! positive probability, yet the spatial shape of the successful hits is
//! identical to the forward-drift law.

use hitloc::ndfhl::{hit_probability, SignedDriftParams};

fn main() -> hitloc::Result<()> {
    println!("hit probabilities (lambda = 1):");
    for u in [2.0, 0.5, 0.0, -0.5, -1.0, -2.0] {
        println!("  u = {u:+.1}: P_hit = {:.6}", hit_probability(1.0, u)?);
    }

    let reverse = SignedDriftParams::new(3, 1.0, -1.0)?;
    println!("\ndefective NDFHL(d=3, lambda=1, u=-1):");
    println!("  total mass       = {:.6}  (= e^-2)", reverse.hit_probability());
    println!("  defective pdf(0) = {:.6}", reverse.defective_pdf(&[0.0, 0.0])?);

    // Conditioning on a hit recovers the forward law exactly.
    println!("\nshape identity (defective / P_hit vs forward |u| law):");
    for r in [0.0, 0.5, 1.0, 2.0, 5.0] {
        let conditioned = reverse.defective_pdf_at_radius(r)? / reverse.hit_probability();
        let forward = reverse.base().pdf_at_radius(r)?;
        println!("  r = {r:3.1}: {conditioned:.12} vs {forward:.12}");
    }
    Ok(())
}
