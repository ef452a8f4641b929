//! ADHM-type data `(L, M)` for hyperbolic monopoles and its group actions.
//!
//! `L` is `n × k`, `M = M1 i + M2 j + M3 k` is `k × k` with real symmetric
//! components. The data is admissible when `L L^dagger > 0`,
//! `L^dagger L - M² = I_k`, and `Δ(X)^dagger Δ(X)` is nonsingular on the closed
//! unit ball, where `Δ(X) = [L; M - X·I_k]` and `X = x1 i + x2 j + x3 k`.

use nalgebra::QR;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, orthogonality_defect};
use crate::quat::{CMatrix, QMatrix, Quaternion, RMatrix};
use crate::tol;

/// A point `X = x1 i + x2 j + x3 k` of the ball.
pub type Point = [f64; 3];

pub fn point_quaternion(x: Point) -> Quaternion {
    Quaternion::imag(x)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AdhmJson", into = "AdhmJson")]
pub struct AdhmData {
    l: QMatrix,
    m: QMatrix,
}

#[derive(Serialize, Deserialize)]
struct AdhmJson {
    n: usize,
    k: usize,
    #[serde(rename = "L")]
    l: QMatrix,
    #[serde(rename = "M")]
    m: QMatrix,
}

impl TryFrom<AdhmJson> for AdhmData {
    type Error = Error;
    fn try_from(j: AdhmJson) -> Result<Self> {
        let d = AdhmData::new(j.l, j.m)?;
        if d.n() != j.n || d.k() != j.k {
            return Err(Error::DimensionMismatch(format!("declared (n, k) = ({}, {}) but matrices give ({}, {})", j.n, j.k, d.n(), d.k())));
        }
        Ok(d)
    }
}

impl From<AdhmData> for AdhmJson {
    fn from(d: AdhmData) -> Self {
        AdhmJson { n: d.n(), k: d.k(), l: d.l, m: d.m }
    }
}

impl AdhmData {
    pub fn new(l: QMatrix, m: QMatrix) -> Result<Self> {
        if !m.is_square() || l.cols() != m.rows() {
            return Err(Error::DimensionMismatch(format!("L is {:?}, M is {:?}", l.shape(), m.shape())));
        }
        Ok(AdhmData { l, m })
    }

    /// Build from real component matrices `M1, M2, M3`.
    pub fn from_parts(l: QMatrix, m_parts: &[RMatrix; 3]) -> Result<Self> {
        Self::new(l, QMatrix::from_imaginary_parts(m_parts)?)
    }

    pub fn n(&self) -> usize {
        self.l.rows()
    }

    pub fn k(&self) -> usize {
        self.m.rows()
    }

    pub fn l(&self) -> &QMatrix {
        &self.l
    }

    pub fn m(&self) -> &QMatrix {
        &self.m
    }

    pub fn m_parts(&self) -> Result<[RMatrix; 3]> {
        self.m.imaginary_parts(tol::structural())
    }

    pub fn gram(&self) -> QMatrix {
        &self.l * &self.l.dagger()
    }

    /// Smallest eigenvalue of `L L^dagger`.
    pub fn gram_min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.gram().embed()).first().copied().unwrap_or(0.0)
    }

    /// Largest entry of `L^dagger L - M² - I`.
    pub fn algebraic_residual(&self) -> f64 {
        let r = &(&(&self.l.dagger() * &self.l) - &(&self.m * &self.m)) - &QMatrix::identity(self.k());
        r.max_abs()
    }

    /// Largest entry of `L L^dagger - μ² - I_n`.
    pub fn dual_residual(&self) -> Result<f64> {
        let mu = self.mu()?;
        let r = &(&self.gram() - &(&mu * &mu)) - &QMatrix::identity(self.n());
        Ok(r.max_abs())
    }

    /// `μ = L M L^dagger (L L^dagger)^{-1}`.
    pub fn mu(&self) -> Result<QMatrix> {
        let g = self.gram();
        let emin = hermitian_eigenvalues(&g.embed()).first().copied().unwrap_or(0.0);
        if emin <= 1e-12 * g.max_abs().max(1.0) {
            return Err(Error::SingularGram(emin));
        }
        Ok(&(&(&self.l * &self.m) * &self.l.dagger()) * &g.inverse()?)
    }

    /// `Δ(X) = [L; M - X·I_k]`.
    pub fn delta(&self, x: Point) -> QMatrix {
        let lower = &self.m - &QMatrix::scalar_identity(point_quaternion(x), self.k());
        QMatrix::vstack(&self.l, &lower).expect("column counts agree")
    }

    /// Gauge action `(q, Q)`: `L ↦ q L Q^T`, `M ↦ Q M Q^T`.
    pub fn gauge_act(&self, q: &QMatrix, big_q: &RMatrix) -> Result<AdhmData> {
        if q.shape() != (self.n(), self.n()) || big_q.shape() != (self.k(), self.k()) {
            return Err(Error::DimensionMismatch("gauge element size".into()));
        }
        let defect = (&q.dagger() * q).max_abs_diff(&QMatrix::identity(self.n()));
        if defect > tol::structural() {
            return Err(Error::NotUnitary(defect));
        }
        let od = orthogonality_defect(big_q);
        if od > tol::structural() {
            return Err(Error::NotOrthogonal(od));
        }
        let qq = QMatrix::from_real(big_q);
        let qt = QMatrix::from_real(&big_q.transpose());
        AdhmData::new(&(q * &self.l) * &qt, &(&qq * &self.m) * &qt)
    }

    /// Rotation by a unit quaternion: `L ↦ p L p^dagger`, `M ↦ p M p^dagger`.
    pub fn rotate_act(&self, p: Quaternion) -> Result<AdhmData> {
        if !p.is_unit(tol::structural()) {
            return Err(Error::NotUnitQuaternion(p.norm()));
        }
        let pc = p.conj();
        AdhmData::new(self.l.map(|e| p * e * pc), self.m.map(|e| p * e * pc))
    }

    /// The unique `q = p (L L^dagger)^{-1} L p^dagger Q L^dagger` with
    /// `q L Q^T = p L p^dagger`, given `Q M Q^T = p M p^dagger`.
    pub fn equivariance_q(&self, p: Quaternion, big_q: &RMatrix) -> Result<QMatrix> {
        if !p.is_unit(tol::structural()) {
            return Err(Error::NotUnitQuaternion(p.norm()));
        }
        let qq = QMatrix::from_real(big_q);
        let lhs = &(&qq * &self.m) * &QMatrix::from_real(&big_q.transpose());
        let rhs = self.m.map(|e| p * e * p.conj());
        let gap = lhs.max_abs_diff(&rhs);
        if gap > tol::structural() {
            return Err(Error::PreconditionFailed(format!("Q M Q^T differs from p M p^dagger by {gap:e}")));
        }
        let ginv = self.gram().inverse()?;
        let inner = &(&(&ginv * &self.l.right_scale(p.conj())) * &qq) * &self.l.dagger();
        Ok(inner.left_scale(p))
    }

    /// Smallest eigenvalue of `Δ(X)^dagger Δ(X)`.
    pub fn delta_min_eigenvalue(&self, x: Point) -> f64 {
        let d = self.delta(x).embed();
        hermitian_eigenvalues(&(d.adjoint() * d)).first().copied().unwrap_or(0.0)
    }

    /// Membership report over a sampled domain.
    pub fn validate(&self, domain: Domain, samples: usize) -> ValidityReport {
        let tol = tol::structural();
        let samples = if samples == 0 { domain.default_samples() } else { samples };
        let asymmetry = self.m.asymmetry();
        let max_real = self.m.max_real_part();
        let gram_min = self.gram_min_eigenvalue();
        let alg = self.algebraic_residual();
        let ltl = (&self.l.dagger() * &self.l).embed();
        let em = self.m.embed();
        let k = self.k();
        let points = domain.points(samples);
        let (delta_min, argmin) = points
            .par_iter()
            .map(|&x| {
                let xm = QMatrix::scalar_identity(point_quaternion(x), k).embed();
                let d: CMatrix = &em - xm;
                let h = &ltl + d.adjoint() * d;
                (hermitian_eigenvalues(&h)[0], x)
            })
            .reduce(|| (f64::INFINITY, [0.0; 3]), |a, b| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
        let symmetric_ok = asymmetry <= tol;
        let imaginary_ok = max_real <= tol;
        let valid = symmetric_ok && imaginary_ok && alg <= tol && gram_min > tol::MARGIN && delta_min > tol::MARGIN;
        ValidityReport {
            symmetric_ok,
            imaginary_ok,
            asymmetry,
            max_real_part: max_real,
            lldagger_min_eig: gram_min,
            algebraic_residual: alg,
            delta_min_eig: delta_min,
            argmin,
            domain,
            samples,
            tolerance: tol,
            margin: tol::MARGIN,
            valid,
        }
    }
}

/// Region on which nonsingularity of `Δ^dagger Δ` is sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Cartesian grid of the closed unit ball.
    Ball,
    /// Polar grid of `{x2 j + x3 k : x2 ≥ 0, |X| ≤ 1}`, enough for axial symmetry.
    AxialHalfDisc,
    /// The segment `x3 k`, `x3 ∈ [0, 1]`, enough for spherical symmetry.
    Ray,
}

impl Domain {
    pub fn default_samples(&self) -> usize {
        match self {
            Domain::Ball => 41,
            Domain::AxialHalfDisc => 201,
            Domain::Ray => 2001,
        }
    }

    pub fn points(&self, samples: usize) -> Vec<Point> {
        let s = samples.max(2);
        let t = |i: usize| i as f64 / (s - 1) as f64;
        match self {
            Domain::Ray => (0..s).map(|i| [0.0, 0.0, t(i)]).collect(),
            Domain::AxialHalfDisc => {
                let mut v = Vec::with_capacity(s * s);
                for i in 0..s {
                    let r = t(i);
                    for j in 0..s {
                        let phi = std::f64::consts::PI * t(j);
                        v.push([0.0, r * phi.sin().max(0.0), r * phi.cos()]);
                    }
                }
                v
            }
            Domain::Ball => {
                let c = |i: usize| -1.0 + 2.0 * t(i);
                let mut v = Vec::new();
                for a in 0..s {
                    for b in 0..s {
                        for d in 0..s {
                            let x = [c(a), c(b), c(d)];
                            if x.iter().map(|y| y * y).sum::<f64>() <= 1.0 + 1e-12 {
                                v.push(x);
                            }
                        }
                    }
                }
                v
            }
        }
    }
}

impl std::str::FromStr for Domain {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ball" => Ok(Domain::Ball),
            "axial" | "half-disc" | "axial_half_disc" => Ok(Domain::AxialHalfDisc),
            "ray" => Ok(Domain::Ray),
            _ => Err(format!("unknown domain {s:?} (expected ball, axial or ray)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub symmetric_ok: bool,
    pub imaginary_ok: bool,
    pub asymmetry: f64,
    pub max_real_part: f64,
    pub lldagger_min_eig: f64,
    pub algebraic_residual: f64,
    pub delta_min_eig: f64,
    pub argmin: Point,
    pub domain: Domain,
    pub samples: usize,
    pub tolerance: f64,
    pub margin: f64,
    pub valid: bool,
}

/// Uniformly distributed unit quaternion.
pub fn random_unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = Quaternion::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = q.norm();
        if n > 1e-3 && n <= 1.0 {
            return q / n;
        }
    }
}

/// Random element of Sp(n) (orthonormalized random columns).
pub fn random_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> QMatrix {
    loop {
        let a = QMatrix::from_fn(n, n, |_, _| Quaternion::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        if let Ok(q) = a.orthonormalize_columns(1e-6) {
            return q;
        }
    }
}

/// Random orthogonal `k × k` matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(k: usize, rng: &mut R) -> RMatrix {
    let a = RMatrix::from_fn(k, k, |_, _| rng.gen_range(-1.0..1.0));
    let qr = QR::new(a);
    let (q, r) = (qr.q(), qr.r());
    let signs = RMatrix::from_diagonal(&nalgebra::DVector::from_iterator(k, (0..k).map(|i| if r[(i, i)] < 0.0 { -1.0 } else { 1.0 })));
    q * signs
}
