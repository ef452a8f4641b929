//! Which Sp(n) can carry a spherically symmetric monopole with given summands.

use monopole_adhm::symmetry::{check_structure_group, family_sp2_explicit, induced_structure_rep, structure_group_bounds, ExclusionOptions, Generating};

fn main() -> anyhow::Result<()> {
    let sp2 = family_sp2_explicit()?;
    if let Generating::Spherical(rep) = &sp2.generating {
        let ind = induced_structure_rep(&sp2.data, rep)?;
        println!("sp2 example: structure rep {:?} (residual {:.1e})", ind.summands, ind.residual);
    }

    let opts = ExclusionOptions::default();
    for (s, n) in [(&[3, 1][..], 1), (&[3, 1], 2), (&[4], 1), (&[4], 2)] {
        let v = check_structure_group(s, n, &opts)?;
        println!("{s:?} Sp({n}): {}", serde_json::to_string(&v)?);
    }
    println!("bounds for 7+9: {:?}", structure_group_bounds(&[7, 9])?);
    Ok(())
}
