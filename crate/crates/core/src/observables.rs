//! Spectral curve and rational map of a monopole, computed from `M`.

use serde::Serialize;

use crate::adhm::AdhmData;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_apply, hermitian_eigh, hermitian_eigenvalues, to_complex};
use crate::quat::{CMatrix, C64};
use crate::tol;

/// `det(ηζ(M1 - iM2) + ζ(I - M3) - η(I + M3) - (M1 + iM2))`.
pub fn curve_determinant(d: &AdhmData, eta: C64, zeta: C64) -> Result<C64> {
    let [m1, m2, m3] = d.m_parts()?;
    let k = d.k();
    let i = C64::new(0.0, 1.0);
    let (m1, m2, m3) = (to_complex(&m1), to_complex(&m2), to_complex(&m3));
    let id = CMatrix::identity(k, k);
    let minus = &m1 - &m2 * i;
    let plus = &m1 + &m2 * i;
    let a = minus * (eta * zeta) + (&id - &m3) * zeta - (&id + &m3) * eta - plus;
    Ok(a.determinant())
}

/// Coefficients `c[p][q]` of `η^p ζ^q`, scaled so the first coefficient of
/// largest modulus equals one.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralCurve {
    pub k: usize,
    pub coefficients: Vec<Vec<C64>>,
    /// The factor divided out by the normalisation.
    pub scale: C64,
}

impl SpectralCurve {
    pub fn evaluate(&self, eta: C64, zeta: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        let mut ep = C64::new(1.0, 0.0);
        for row in &self.coefficients {
            let mut zq = C64::new(1.0, 0.0);
            for c in row {
                acc += c * ep * zq;
                zq *= zeta;
            }
            ep *= eta;
        }
        acc
    }

    /// Largest coefficient difference to another normalised curve.
    pub fn max_difference(&self, other: &SpectralCurve) -> f64 {
        let mut worst: f64 = 0.0;
        let n = self.coefficients.len().max(other.coefficients.len());
        for p in 0..n {
            for q in 0..n {
                let a = self.coefficients.get(p).and_then(|r| r.get(q)).copied().unwrap_or_default();
                let b = other.coefficients.get(p).and_then(|r| r.get(q)).copied().unwrap_or_default();
                worst = worst.max((a - b).norm());
            }
        }
        worst
    }

    /// Normalised curve from raw coefficients.
    pub fn from_coefficients(k: usize, raw: Vec<Vec<C64>>) -> Result<Self> {
        let mut best = C64::new(0.0, 0.0);
        for row in &raw {
            for c in row {
                if c.norm() > best.norm() * (1.0 + 1e-12) {
                    best = *c;
                }
            }
        }
        if best.norm() == 0.0 {
            return Err(Error::ConstructionInvalid("spectral curve vanishes identically".into()));
        }
        let coefficients = raw.into_iter().map(|row| row.into_iter().map(|c| c / best).collect()).collect();
        Ok(Self { k, coefficients, scale: best })
    }
}

/// Interpolate the determinant on the `(k+1) × (k+1)` grid of roots of unity.
pub fn spectral_curve(d: &AdhmData) -> Result<SpectralCurve> {
    let k = d.k();
    let n = k + 1;
    let roots: Vec<C64> = (0..n).map(|a| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * a as f64 / n as f64)).collect();
    let mut values = vec![vec![C64::new(0.0, 0.0); n]; n];
    for a in 0..n {
        for b in 0..n {
            values[a][b] = curve_determinant(d, roots[a], roots[b])?;
        }
    }
    // c[p][q] = N^{-2} Σ_ab V[a][b] w_a^{-p} w_b^{-q}
    let nn = (n * n) as f64;
    let mut raw = vec![vec![C64::new(0.0, 0.0); n]; n];
    for p in 0..n {
        for q in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..n {
                for b in 0..n {
                    acc += values[a][b] * roots[(a * p) % n].conj() * roots[(b * q) % n].conj();
                }
            }
            raw[p][q] = acc / nn;
        }
    }
    SpectralCurve::from_coefficients(k, raw)
}

/// `R(z) = λ v^dagger (z - A)^{-1} conj(v)` with `A = S (M1 + iM2) S`,
/// `S = (I - M3)^{-1/2}`, and `(λ, v)` the largest-modulus eigenpair of `H`.
#[derive(Clone, Debug, Serialize)]
pub struct RationalMap {
    pub lambda: f64,
    /// Unit eigenvector, phased so its last nonzero component is real and positive.
    pub v: Vec<C64>,
    /// Eigenvalues of `H`, ascending.
    pub spectrum: Vec<f64>,
    pub rank: usize,
    #[serde(skip)]
    pub a: CMatrix,
}

impl RationalMap {
    pub fn evaluate(&self, z: C64) -> Result<C64> {
        let k = self.v.len();
        let shifted = CMatrix::identity(k, k) * z - &self.a;
        let vbar = nalgebra::DVector::from_iterator(k, self.v.iter().map(|c| c.conj()));
        let sol = shifted.lu().solve(&vbar).ok_or_else(|| Error::PreconditionFailed(format!("z = {z} is a pole")))?;
        let v = nalgebra::DVector::from_column_slice(&self.v);
        Ok(v.dotc(&sol) * self.lambda)
    }
}

pub fn rational_map(d: &AdhmData) -> Result<RationalMap> {
    if d.n() != 1 {
        return Err(Error::Unsupported(format!("rational map requires n = 1, got n = {}", d.n())));
    }
    let [m1, m2, m3] = d.m_parts()?;
    let k = d.k();
    let i = C64::new(0.0, 1.0);
    let id = CMatrix::identity(k, k);
    let one_minus = &id - to_complex(&m3);
    let low = hermitian_eigenvalues(&one_minus).first().copied().unwrap_or(0.0);
    if low <= tol::structural() {
        return Err(Error::PreconditionFailed(format!("I - M3 is not positive definite (min eigenvalue {low:e})")));
    }
    let s = hermitian_apply(&one_minus, |x| 1.0 / x.sqrt());
    let inv = hermitian_apply(&one_minus, |x| 1.0 / x);
    let plus = to_complex(&m1) + to_complex(&m2) * i;
    let minus = plus.adjoint();
    let inner = &id + to_complex(&m3) - &minus * &inv * &plus;
    let h = &s * inner * &s;
    let (vals, vecs) = hermitian_eigh(&h);
    let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let rank = vals.iter().filter(|v| v.abs() > 1e-10 * scale).count();
    if rank == 0 {
        return Err(Error::RankZeroH);
    }
    let idx = (0..vals.len()).fold(0, |b, j| if vals[j].abs() > vals[b].abs() * (1.0 + 1e-12) { j } else { b });
    let mut v: Vec<C64> = vecs.column(idx).iter().copied().collect();
    if let Some(last) = v.iter().rev().find(|c| c.norm() > 1e-12).copied() {
        let ph = last.conj() / last.norm();
        for c in v.iter_mut() {
            *c *= ph;
        }
    }
    let a = &s * plus * &s;
    Ok(RationalMap { lambda: vals[idx], v, spectrum: vals, rank, a })
}
