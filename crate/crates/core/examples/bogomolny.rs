//! Finite-difference check of the Bogomolny equation.

use monopole_adhm::fields::Fields;
use monopole_adhm::symmetry::{family_mzero, family_sp2_explicit};

fn main() -> anyhow::Result<()> {
    for inst in [family_mzero(1)?, family_sp2_explicit()?] {
        let f = Fields::new(&inst.data)?;
        for h in [4e-3, 2e-3, 1e-3] {
            let rep = f.bogomolny([0.2, -0.1, 0.3], h)?;
            println!("{} h={h:e}: residual {:.3e} (relative {:.3e})", inst.family, rep.residual, rep.relative);
        }
    }
    Ok(())
}
