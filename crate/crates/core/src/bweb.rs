//! Intertwiners `B_a : V_n → V_{n+2}` between irreducible sp(1) representations.
//!
//! The triple satisfies `Y⁺_a B_b - B_b Y⁻_a = ε_abc B_c` and is unique up to a
//! phase. It is built from the ladder operator `S = i·Y2 + Y3`, which lowers
//! the `i·Y1` weight by one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{cyclic_partner, hermitian_eigh, max_abs};
use crate::quat::{CMatrix, RMatrix, C64};
use crate::suirrep::{self, decompose, ReprTriple};

/// Triple `(B1, B2, B3)` together with the representations it intertwines.
#[derive(Clone, Debug)]
pub struct IntertwinerTriple {
    pub n: usize,
    pub b: [CMatrix; 3],
    pub plus: ReprTriple,
    pub minus: ReprTriple,
    pub theta: f64,
}

impl IntertwinerTriple {
    /// Real parts of `B_a`, for triples produced by [`realize_b_real`].
    pub fn real_parts(&self) -> [RMatrix; 3] {
        std::array::from_fn(|a| self.b[a].map(|z| z.re))
    }

    pub fn max_imag(&self) -> f64 {
        self.b.iter().map(crate::linalg::max_imag).fold(0.0, f64::max)
    }
}

/// Lowering operator `S = i·Y2 + Y3`.
pub fn lowering(rep: &ReprTriple) -> CMatrix {
    rep.generator(1) * C64::new(0.0, 1.0) + rep.generator(2)
}

/// Unit eigenvector of `i·Y1` with the top weight `(N-1)/2`, phased so its
/// largest component is real and positive.
pub fn highest_weight_vector(rep: &ReprTriple) -> Result<nalgebra::DVector<C64>> {
    let n = rep.dim();
    let (vals, vecs) = hermitian_eigh(&(rep.generator(0) * C64::new(0.0, 1.0)));
    let top = (n as f64 - 1.0) / 2.0;
    let got = vals[n - 1];
    if (got - top).abs() > 1e-8 {
        return Err(Error::NotIrreducible(format!("top weight {got} instead of {top}")));
    }
    if n > 1 && (vals[n - 2] - top).abs() < 0.5 {
        return Err(Error::NotIrreducible("top weight is degenerate".into()));
    }
    let v = vecs.column(n - 1).into_owned();
    let mut best = 0;
    for i in 1..n {
        if v[i].norm() > v[best].norm() + 1e-12 {
            best = i;
        }
    }
    let phase = v[best] / C64::new(v[best].norm(), 0.0);
    Ok(v / phase)
}

fn ensure_irreducible(rep: &ReprTriple) -> Result<()> {
    let d = decompose(rep)?;
    if d.len() != 1 {
        return Err(Error::NotIrreducible(format!("summands {d:?}")));
    }
    Ok(())
}

/// `B` for the complex irreps of dimensions `n + 2` and `n`, with phase `e^{iθ}`.
pub fn compute_b(n: usize, theta: f64) -> Result<IntertwinerTriple> {
    compute_b_with(&suirrep::complex_irrep(n + 2)?, &suirrep::complex_irrep(n)?, theta)
}

/// `B` for given irreducible triples of dimensions `n + 2` (`plus`) and `n` (`minus`).
pub fn compute_b_with(plus: &ReprTriple, minus: &ReprTriple, theta: f64) -> Result<IntertwinerTriple> {
    let n = minus.dim();
    if n == 0 || plus.dim() != n + 2 {
        return Err(Error::DimensionMismatch(format!("need dimensions (n+2, n), got ({}, {n})", plus.dim())));
    }
    ensure_irreducible(plus)?;
    ensure_irreducible(minus)?;
    let (vp, vm) = (highest_weight_vector(plus)?, highest_weight_vector(minus)?);
    let (sp, sm) = (lowering(plus), lowering(minus));
    let nf = n as f64;
    let mut b1 = CMatrix::zeros(n + 2, n);
    let mut up = &sp * &vp;
    let mut down = vm.clone();
    for j in 0..n {
        let w = (nf - j as f64) / down.norm_squared();
        b1 += (&up * down.adjoint()) * C64::new(w, 0.0);
        up = &sp * up;
        down = &sm * down;
    }
    b1 *= C64::from_polar(2f64.sqrt() / (nf * (nf + 1.0)), theta);
    let b2 = plus.generator(2) * &b1 - &b1 * minus.generator(2);
    let b3 = &b1 * minus.generator(1) - plus.generator(1) * &b1;
    Ok(IntertwinerTriple { n, b: [b1, b2, b3], plus: plus.clone(), minus: minus.clone(), theta })
}

/// Residuals of the seven quadratic and linear identities satisfied by `B`.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub residuals: [f64; 7],
}

impl IdentityReport {
    pub fn max(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Check, in order:
/// 1. `Y⁺_a B_b - B_b Y⁻_a = ε_abc B_c`
/// 2. `Σ B_a B_a^dagger = I`
/// 3. `Σ B_a^dagger B_a = ((n+2)/n) I`
/// 4. `B_a B_b^dagger - B_b B_a^dagger = -(2/(n+1)) ε_abc Y⁺_c`
/// 5. `B_a^dagger B_b - B_b^dagger B_a = (2(n+2)/(n(n+1))) ε_abc Y⁻_c`
/// 6. `Y⁺_a B_b - Y⁺_b B_a = ((n+3)/2) ε_abc B_c`
/// 7. `B_a Y⁻_b - B_b Y⁻_a = -((n-1)/2) ε_abc B_c`
pub fn verify_identities(t: &IntertwinerTriple) -> IdentityReport {
    let nf = t.n as f64;
    let (b, yp, ym) = (&t.b, t.plus.generators(), t.minus.generators());
    let eps_sum = |a: usize, c: usize, mats: &[CMatrix; 3], s: f64| -> Option<CMatrix> {
        cyclic_partner(a, c).map(|(l, e)| mats[l].scale(e * s))
    };
    let mut r = [0.0f64; 7];
    for a in 0..3 {
        for c in 0..3 {
            let z_b = CMatrix::zeros(t.n + 2, t.n);
            let e_b = eps_sum(a, c, b, 1.0).unwrap_or_else(|| z_b.clone());
            r[0] = r[0].max(max_abs(&(&yp[a] * &b[c] - &b[c] * &ym[a] - &e_b)));
            let e_yp = eps_sum(a, c, yp, -2.0 / (nf + 1.0)).unwrap_or_else(|| CMatrix::zeros(t.n + 2, t.n + 2));
            r[3] = r[3].max(max_abs(&(&b[a] * b[c].adjoint() - &b[c] * b[a].adjoint() - e_yp)));
            let e_ym = eps_sum(a, c, ym, 2.0 * (nf + 2.0) / (nf * (nf + 1.0))).unwrap_or_else(|| CMatrix::zeros(t.n, t.n));
            r[4] = r[4].max(max_abs(&(b[a].adjoint() * &b[c] - b[c].adjoint() * &b[a] - e_ym)));
            let e6 = eps_sum(a, c, b, (nf + 3.0) / 2.0).unwrap_or_else(|| z_b.clone());
            r[5] = r[5].max(max_abs(&(&yp[a] * &b[c] - &yp[c] * &b[a] - e6)));
            let e7 = eps_sum(a, c, b, -(nf - 1.0) / 2.0).unwrap_or(z_b);
            r[6] = r[6].max(max_abs(&(&b[a] * &ym[c] - &b[c] * &ym[a] - e7)));
        }
    }
    let sum_bbd = b.iter().fold(CMatrix::zeros(t.n + 2, t.n + 2), |acc, m| acc + m * m.adjoint());
    r[1] = max_abs(&(sum_bbd - CMatrix::identity(t.n + 2, t.n + 2)));
    let sum_bdb = b.iter().fold(CMatrix::zeros(t.n, t.n), |acc, m| acc + m.adjoint() * m);
    r[2] = max_abs(&(sum_bdb - CMatrix::identity(t.n, t.n) * C64::new((nf + 2.0) / nf, 0.0)));
    IdentityReport { residuals: r }
}

/// Real triple `B` intertwining `real_irrep(n + 2)` and `real_irrep(n)`, `n` odd.
pub fn realize_b_real(n: usize) -> Result<IntertwinerTriple> {
    if n.is_multiple_of(2) {
        return Err(Error::NoRealForm(n));
    }
    realize_b_real_with(&suirrep::real_irrep(n + 2)?, &suirrep::real_irrep(n)?)
}

fn imaginary_norm(b: &[CMatrix; 3], theta: f64) -> f64 {
    let ph = C64::from_polar(1.0, theta);
    b.iter().flat_map(|m| m.iter()).map(|z| (z * ph).im.powi(2)).sum::<f64>().sqrt()
}

/// Choose the phase making `B` real for given real triples, then fix the sign
/// so the largest-magnitude entry of `B1` is negative.
pub fn realize_b_real_with(plus: &ReprTriple, minus: &ReprTriple) -> Result<IntertwinerTriple> {
    if !plus.is_real(1e-12) || !minus.is_real(1e-12) {
        return Err(Error::PreconditionFailed("generators must be real".into()));
    }
    let base = compute_b_with(plus, minus, 0.0)?;
    let grid = 360;
    let step = 2.0 * std::f64::consts::PI / grid as f64;
    let mut best = (0.0, f64::INFINITY);
    for s in 0..grid {
        let th = s as f64 * step;
        let f = imaginary_norm(&base.b, th);
        if f < best.1 {
            best = (th, f);
        }
    }
    // golden-section refinement on a bracket of one grid step each side
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (best.0 - step, best.0 + step);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (imaginary_norm(&base.b, x1), imaginary_norm(&base.b, x2));
    for _ in 0..200 {
        if hi - lo < 1e-16 {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = imaginary_norm(&base.b, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = imaginary_norm(&base.b, x2);
        }
    }
    let mut theta = if f1 < f2 { x1 } else { x2 };
    let residual = imaginary_norm(&base.b, theta);
    if residual > 1e-10 {
        return Err(Error::PhaseSearchFailed(residual));
    }
    let ph = C64::from_polar(1.0, theta);
    let mut real: [RMatrix; 3] = std::array::from_fn(|a| base.b[a].map(|z| (z * ph).re));
    let mut idx = 0;
    let flat = real[0].as_slice();
    for i in 1..flat.len() {
        if flat[i].abs() > flat[idx].abs() + 1e-12 {
            idx = i;
        }
    }
    if flat[idx] > 0.0 {
        for m in real.iter_mut() {
            *m = -m.clone();
        }
        theta += std::f64::consts::PI;
    }
    let theta = theta.rem_euclid(2.0 * std::f64::consts::PI);
    Ok(IntertwinerTriple {
        n: base.n,
        b: real.map(|m| crate::linalg::to_complex(&m)),
        plus: plus.clone(),
        minus: minus.clone(),
        theta,
    })
}
