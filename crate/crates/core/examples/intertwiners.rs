//! Intertwining triple between irreps of dimension n+2 and n.

use monopole_adhm::bweb::{compute_b, realize_b_real, verify_identities};

fn main() -> anyhow::Result<()> {
    for n in 1..=6 {
        let t = compute_b(n, 0.0)?;
        let r = verify_identities(&t);
        println!("n={n}: max identity residual {:e}", r.max());
    }
    for n in [1, 3, 5] {
        let t = realize_b_real(n)?;
        println!("real n={n}: imaginary part {:e}, residual {:e}", t.max_imag(), verify_identities(&t).max());
    }
    let t = compute_b(1, 0.0)?;
    for (a, b) in t.b.iter().enumerate() {
        println!("B_{} =\n{b:.6}", a + 1);
    }
    Ok(())
}
