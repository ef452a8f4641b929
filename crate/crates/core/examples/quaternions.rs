//! Quaternion arithmetic and the 2x2 complex embedding.

use monopole_adhm::quat::{QMatrix, Quaternion};

fn main() {
    let p = Quaternion::new(1.0, 2.0, -0.5, 0.25);
    let q = Quaternion::imag([0.0, 1.0, 1.0]);
    println!("p q       = {:?}", p * q);
    println!("q p       = {:?}", q * p);
    println!("|p q|     = {:.17}", (p * q).norm());
    println!("|p| |q|   = {:.17}", p.norm() * q.norm());

    // embedding is a ring homomorphism
    let lhs = (p * q).embed();
    let rhs = p.embed() * q.embed();
    println!("embed defect = {:e}", (lhs - rhs).camax());

    let m = QMatrix::from_fn(2, 2, |r, c| if r == c { Quaternion::ONE } else { Quaternion::unit(r + c) });
    let inv = m.inverse().expect("invertible");
    let id = m.checked_mul(&inv).unwrap();
    println!("M M^-1 - I = {:e}", id.max_abs_diff(&QMatrix::identity(2)));
}
