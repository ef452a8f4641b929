//! Spectral curve and rational map of an axially symmetric charge-2 monopole.

use monopole_adhm::observables::{rational_map, spectral_curve};
use monopole_adhm::quat::C64;
use monopole_adhm::symmetry::{family_axial, Sign};

fn main() -> anyhow::Result<()> {
    let f = family_axial(0.25, Sign::Plus, Sign::Plus)?;
    let curve = spectral_curve(&f.data)?;
    for (p, row) in curve.coefficients.iter().enumerate() {
        for (q, c) in row.iter().enumerate() {
            if c.norm() > 1e-12 {
                println!("eta^{p} zeta^{q}: {c:.17}");
            }
        }
    }
    let r = rational_map(&f.data)?;
    println!("lambda = {:.17}, rank {}", r.lambda, r.rank);
    for z in [C64::new(0.3, 0.0), C64::new(1.0, -2.0)] {
        println!("R({z}) = {:.17}", r.evaluate(z)?);
    }
    Ok(())
}
