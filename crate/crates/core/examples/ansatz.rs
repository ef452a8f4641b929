//! General spherically symmetric M for a choice of summands.

use monopole_adhm::symmetry::{equivariant_triple_count, structure_ansatz, symmetric_parameter_count, Ansatz, AnsatzSpec};

fn main() -> anyhow::Result<()> {
    for s in [&[3, 1][..], &[3, 3], &[5, 3], &[4], &[4, 4], &[8, 4]] {
        let ans = Ansatz::new(s)?;
        println!(
            "{s:?}: k={} triples={} symmetric={} directions={:?}",
            ans.k(),
            equivariant_triple_count(s),
            symmetric_parameter_count(s),
            ans.labels()
        );
    }

    let spec = AnsatzSpec { summands: vec![3, 1], params: [("a".to_string(), 1.0 / 3f64.sqrt())].into() };
    let (m, _) = structure_ansatz(&spec)?;
    println!("M for 3+1 with a = 1/sqrt(3): max entry {:.17}, asymmetry {:e}", m.max_abs(), m.asymmetry());
    Ok(())
}
