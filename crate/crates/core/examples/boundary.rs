//! Higgs eigenvalues at the boundary sphere and their split under the axial rotation.

use monopole_adhm::fields::Fields;
use monopole_adhm::symmetry::{family_sp2_explicit, family_sp4_explicit};

fn main() -> anyhow::Result<()> {
    for inst in [family_sp2_explicit()?, family_sp4_explicit()?] {
        let f = Fields::new(&inst.data)?;
        let b = f.boundary_spectrum([0.0, 0.0, 1.0], 0.02, 4)?;
        println!("{}: boundary eigenvalues {:?} (error ~{:.1e})", inst.family, b.values, b.error_estimate);
        let g = f.graded_boundary(&inst.generating.axis_generator(), 0.999)?;
        println!("  +1/2 eigenspace splits as ({}, {})", g.positive, g.negative);
    }
    Ok(())
}
