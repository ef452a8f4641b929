//! Independent reference values shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use monopole_adhm::linalg::{cyclic_partner, null_space};
use monopole_adhm::observables::SpectralCurve;
use monopole_adhm::quat::{RMatrix, C64};
use monopole_adhm::symmetry::Ansatz;

/// Solutions of `[Y_a, X_b] = ε_abc X_c` over all real `k × k` triples,
/// optionally restricted to symmetric `X_b`, by direct linear algebra.
pub fn brute_force_count(summands: &[usize], symmetric: bool) -> usize {
    let ans = Ansatz::new(summands).unwrap();
    let y = ans.generators().real_parts();
    let k = ans.k();
    let unknowns = 3 * k * k;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for r in 0..k {
                for c in 0..k {
                    let mut row = vec![0.0; unknowns];
                    // (Y_a X_b - X_b Y_a)_{rc}
                    for s in 0..k {
                        row[b * k * k + s * k + c] += y[a][(r, s)];
                        row[b * k * k + r * k + s] -= y[a][(s, c)];
                    }
                    if let Some((cc, sign)) = cyclic_partner(a, b) {
                        row[cc * k * k + r * k + c] -= sign;
                    }
                    rows.push(row);
                }
            }
        }
    }
    if symmetric {
        for b in 0..3 {
            for r in 0..k {
                for c in r + 1..k {
                    let mut row = vec![0.0; unknowns];
                    row[b * k * k + r * k + c] = 1.0;
                    row[b * k * k + c * k + r] = -1.0;
                    rows.push(row);
                }
            }
        }
    }
    let m = RMatrix::from_fn(rows.len(), unknowns, |r, c| rows[r][c]);
    null_space(&m, 1e-9).ncols()
}

pub fn sp2_norm_sq(r: f64) -> f64 {
    let (r2, r4, r6, r8) = (r * r, r.powi(4), r.powi(6), r.powi(8));
    (5.0 * r8 + 12.0 * r6 + 30.0 * r4 + 12.0 * r2 + 5.0) * r2 / ((3.0 * r4 + 2.0 * r2 + 3.0).powi(2) * (r2 + 1.0).powi(2))
}

pub fn sp4_norm_sq(r: f64) -> f64 {
    let p = |e: i32| r.powi(e);
    (p(12) + 9.0 * p(10) + 33.0 * p(8) + 58.0 * p(6) + 33.0 * p(4) + 9.0 * p(2) + 1.0)
        / (16.0 * (p(4) + p(2) + 1.0).powi(2) * (p(2) + 1.0).powi(2))
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

pub fn sp2_energy(r: f64) -> f64 {
    let s = r * r;
    let num = horner(&[135.0, 840.0, 5252.0, 13304.0, 18282.0, 13304.0, 5252.0, 840.0, 135.0], s);
    (1.0 - s).powi(4) / (2.0 * (1.0 + s).powi(4)) * num / (3.0 * s * s + 2.0 * s + 3.0).powi(4)
}

pub fn sp4_energy(r: f64) -> f64 {
    let s = r * r;
    let num = horner(&[5.0, 70.0, 381.0, 942.0, 1260.0, 942.0, 381.0, 70.0, 5.0], s);
    3.0 * (1.0 - s).powi(4) / (32.0 * (1.0 + s).powi(4)) * num / (s * s + s + 1.0).powi(4)
}

/// Spectral curve of the axial charge-2 family.
pub fn axial_quartic(a: f64) -> SpectralCurve {
    let s = (1.0 - 4.0 * a * a).sqrt();
    let z = C64::new(0.0, 0.0);
    let r = |x: f64| C64::new(x, 0.0);
    let raw = vec![
        vec![z, z, r(-2.0 * s + 2.0 * (1.0 - 2.0 * a * a))],
        vec![z, r(-4.0 * a * a), z],
        vec![r(2.0 * s + 2.0 * (1.0 - 2.0 * a * a)), z, z],
    ];
    SpectralCurve::from_coefficients(2, raw).unwrap()
}

/// Rational map of the axial charge-2 family.
pub fn axial_rational(a: f64, z: C64) -> C64 {
    let s = (1.0 - 4.0 * a * a).sqrt();
    let num = C64::new(0.0, 1.0) * (2.0 * a * a - 1.0 - s) * (s - 1.0);
    num / (z * z * 2.0 * a * (2.0 * a * a - 1.0 + s))
}
