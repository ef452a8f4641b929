//! Irreducible representations, their real forms, and decomposition.

use monopole_adhm::suirrep::{commutant_basis, complex_irrep, decompose, real_irrep, ReprTriple};

fn main() -> anyhow::Result<()> {
    for n in 1..=6 {
        let rep = complex_irrep(n)?;
        println!("n={n}: relation residual {:e}", rep.relation_residual());
    }

    // real forms exist for odd n (real type) and n divisible by 4 (quaternionic pairs)
    for n in [3, 4, 5, 8] {
        let rep = real_irrep(n)?;
        println!("real n={n}: real={} skew defect {:e}, decomposes as {:?}", rep.is_real(1e-12), rep.skew_defect(), decompose(&rep)?);
    }
    println!("commutant of the real 4-dim rep has dimension {}", commutant_basis(4)?.len());

    let sum = ReprTriple::direct_sum(&[real_irrep(3)?, ReprTriple::trivial(1), real_irrep(5)?]);
    println!("3 + 1 + 5 -> {:?}", decompose(&sum)?);
    Ok(())
}
