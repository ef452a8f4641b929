//! Sweep the one-parameter families and print the validity margins.

use monopole_adhm::symmetry::{family_axial, family_irrep, family_n2n, family_nn, Sign};

fn main() -> anyhow::Result<()> {
    for a in [0.1, 0.25, 0.4, 0.5] {
        let f = family_axial(a, Sign::Plus, Sign::Plus)?;
        println!("axial A={a}: margin {:.3e}", f.validity.delta_min_eig);
    }
    for kappa in [0.05, 0.2, 0.4] {
        for br in [Sign::Plus, Sign::Minus] {
            let f = family_irrep(4, kappa, br)?;
            println!("irrep k=4 kappa={kappa} {br}: margin {:.3e}", f.validity.delta_min_eig);
        }
    }
    let f = family_n2n(3, 0.3, Sign::Plus, Sign::Minus)?;
    println!("n2n n=3: k={} valid={}", f.data.k(), f.validity.valid);
    let f = family_nn(5, 0.2, Sign::Plus)?;
    println!("nn n=5: k={} valid={}", f.data.k(), f.validity.valid);
    Ok(())
}
