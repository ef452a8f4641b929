//! Higgs field norm and energy density along a ray.

use monopole_adhm::fields::Fields;
use monopole_adhm::symmetry::family_sp2_explicit;

fn main() -> anyhow::Result<()> {
    let f = Fields::new(&family_sp2_explicit()?.data)?;
    println!("{:>6} {:>24} {:>24}", "r", "|Phi|^2", "energy");
    for i in 0..=10 {
        let r = 0.095 * i as f64;
        let x = [0.0, 0.0, r];
        println!("{r:6.3} {:24.17e} {:24.17e}", f.higgs_norm_sq(x)?, f.energy_density(x, 1e-3)?);
    }
    Ok(())
}
