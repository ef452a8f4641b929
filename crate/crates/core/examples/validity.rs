//! Constraint checks on ADHM data, and what happens when they fail.

use monopole_adhm::adhm::Domain;
use monopole_adhm::symmetry::{axial_data, family_axial, Sign};

fn main() -> anyhow::Result<()> {
    let good = family_axial(0.3, Sign::Plus, Sign::Plus)?;
    let report = good.data.validate(Domain::Ball, 0);
    println!("A=0.3 valid={} min eig {:.6} margin {:e}", report.valid, report.delta_min_eig, report.margin);
    println!("  dual residual {:e}", good.data.dual_residual()?);

    // A = 0 gives a degenerate Δ somewhere in the ball
    let bad = axial_data(0.0, Sign::Plus, Sign::Plus)?;
    let report = bad.validate(Domain::AxialHalfDisc, 0);
    println!("A=0   valid={} min eig {:e} at {:?}", report.valid, report.delta_min_eig, report.argmin);
    match family_axial(0.0, Sign::Plus, Sign::Plus) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
