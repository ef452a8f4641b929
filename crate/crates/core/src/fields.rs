//! Higgs field, energy density and gauge field reconstructed from ADHM data.
//!
//! At each point `X` of the ball the `(n+k) × n` quaternionic frame `ψ`
//! spans the kernel of `Δ(X)^dagger` with `ψ^dagger ψ = I`. The Higgs field
//! is `Φ = ½ ψ^dagger [[-μ, L], [-L^dagger, M]] ψ`, anti-Hermitian `n × n`.

use rayon::prelude::*;
use serde::Serialize;

use crate::adhm::{AdhmData, Point};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigh, hermitian_eigenvalues, polar_unitary};
use crate::quat::{CMatrix, QMatrix, Quaternion, RMatrix, C64};

/// Conformal factor `2 / (1 - R²)` of the ball model.
pub fn conformal_factor(x: Point) -> f64 {
    2.0 / (1.0 - x.iter().map(|v| v * v).sum::<f64>())
}

fn norm(x: Point) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn shift(x: Point, axis: usize, h: f64) -> Point {
    let mut y = x;
    y[axis] += h;
    y
}

/// `|Φ|² = -tr(Φ²) / n`, computed from the complex form.
pub fn higgs_norm_sq(phi: &QMatrix) -> f64 {
    let e = phi.embed();
    -(&e * &e).trace().re / e.nrows() as f64
}

/// Eigenvalues `λ` of the Higgs field (`Φ` has eigenvalues `iλ` on `C^{2n}`), ascending.
pub fn higgs_eigenvalues(phi: &QMatrix) -> Vec<f64> {
    hermitian_eigenvalues(&(phi.embed() * C64::new(0.0, -1.0)))
}

/// Field evaluator for one set of data; precomputes the constant operator.
#[derive(Clone, Debug)]
pub struct Fields {
    data: AdhmData,
    operator: QMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldSample {
    pub x: Point,
    pub r: f64,
    pub higgs_norm_sq: f64,
    pub energy_density: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundarySpectrum {
    pub direction: Point,
    /// Extrapolated limit of the eigenvalues `λ` as `R → 1`, ascending.
    pub values: Vec<f64>,
    /// Radii and eigenvalues used for the extrapolation.
    pub samples: Vec<(f64, Vec<f64>)>,
    /// Difference between the two highest-order extrapolants.
    pub error_estimate: f64,
}

/// Boundary eigenvalues graded by the isotropy of a point on the `k` axis.
#[derive(Clone, Debug, Serialize)]
pub struct GradedSpectrum {
    pub radius: f64,
    /// Eigenvalues of the Higgs field restricted to the `+i` eigenspace of the
    /// lifted half-turn, ascending.
    pub restricted: Vec<f64>,
    pub positive: usize,
    pub negative: usize,
    /// `‖[G, Φ]‖` for the isotropy generator `G`.
    pub commutator: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BogomolnyReport {
    pub x: Point,
    pub h: f64,
    /// `max_ij ‖F_ij + Ω ε_ijl D_l Φ‖_F`.
    pub residual: f64,
    /// `max_ij ‖F_ij‖_F`.
    pub curvature_scale: f64,
    pub relative: f64,
}

/// Connection and curvature at a point, from central differences of the gauge-aligned frame.
#[derive(Clone, Debug)]
pub struct GaugeFields {
    pub higgs: QMatrix,
    pub connection: [QMatrix; 3],
    /// `F_ij` for `(i, j) = (0, 1), (1, 2), (2, 0)`.
    pub curvature: [QMatrix; 3],
    /// Covariant derivatives `D_l Φ`.
    pub covariant: [QMatrix; 3],
}

impl Fields {
    pub fn new(data: &AdhmData) -> Result<Self> {
        let mu = data.mu()?;
        let (n, k) = (data.n(), data.k());
        let mut op = QMatrix::zeros(n + k, n + k);
        op.set_block(0, 0, &-&mu);
        op.set_block(0, n, data.l());
        op.set_block(n, 0, &-&data.l().dagger());
        op.set_block(n, n, data.m());
        Ok(Self { data: data.clone(), operator: op })
    }

    pub fn data(&self) -> &AdhmData {
        &self.data
    }

    /// Orthonormal quaternionic frame of `ker Δ(X)^dagger`.
    pub fn frame(&self, x: Point) -> Result<QMatrix> {
        let n = self.data.n();
        let delta = self.data.delta(x);
        let e = (&delta * &delta.dagger()).embed();
        let (vals, vecs) = hermitian_eigh(&e);
        let scale = vals.last().copied().unwrap_or(1.0).abs().max(1.0);
        let cut = 1e-9 * scale;
        let found = vals.iter().filter(|&&v| v <= cut).count();
        if found != 2 * n || vals.get(2 * n).is_none_or(|&v| v <= cut) {
            return Err(Error::KernelDimensionMismatch { expected: n, found: found / 2 });
        }
        let mut cols: Vec<QMatrix> = Vec::with_capacity(n);
        for c in 0..2 * n {
            if cols.len() == n {
                break;
            }
            let mut q = QMatrix::column_from_complex(vecs.column(c).into_owned().as_slice());
            for _ in 0..2 {
                for u in &cols {
                    let p = &u.dagger() * &q;
                    q = &q - &(u * &p);
                }
            }
            let nrm = q.frobenius_norm();
            if nrm > 1e-6 {
                cols.push(q.scale(1.0 / nrm));
            }
        }
        if cols.len() != n {
            return Err(Error::KernelDimensionMismatch { expected: n, found: cols.len() });
        }
        let mut psi = QMatrix::zeros(n + self.data.k(), n);
        for (c, col) in cols.iter().enumerate() {
            psi.set_block(0, c, col);
        }
        Ok(psi)
    }

    fn higgs_in_frame(&self, psi: &QMatrix) -> QMatrix {
        (&(&psi.dagger() * &self.operator) * psi).scale(0.5)
    }

    pub fn higgs(&self, x: Point) -> Result<QMatrix> {
        Ok(self.higgs_in_frame(&self.frame(x)?))
    }

    pub fn higgs_norm_sq(&self, x: Point) -> Result<f64> {
        Ok(higgs_norm_sq(&self.higgs(x)?))
    }

    pub fn higgs_eigenvalues(&self, x: Point) -> Result<Vec<f64>> {
        Ok(higgs_eigenvalues(&self.higgs(x)?))
    }

    fn check_stencil(x: Point, reach: f64) -> Result<()> {
        let r = norm(x) + reach;
        if r >= 1.0 {
            return Err(Error::StencilOutsideBall(r));
        }
        Ok(())
    }

    /// Energy density `Ω^{-3} ∂_i (Ω ∂_i |Φ|²)`: a conservative stencil at
    /// widths `h` and `h/2`, combined by one Richardson step (fourth order).
    pub fn energy_density(&self, x: Point, h: f64) -> Result<f64> {
        Self::check_stencil(x, h)?;
        let coarse = self.conservative_laplacian(x, h)?;
        let fine = self.conservative_laplacian(x, h / 2.0)?;
        Ok((4.0 * fine - coarse) / 3.0 / conformal_factor(x).powi(3))
    }

    fn conservative_laplacian(&self, x: Point, h: f64) -> Result<f64> {
        let f0 = self.higgs_norm_sq(x)?;
        let mut acc = 0.0;
        for i in 0..3 {
            let fp = self.higgs_norm_sq(shift(x, i, h))?;
            let fm = self.higgs_norm_sq(shift(x, i, -h))?;
            let op = conformal_factor(shift(x, i, h / 2.0));
            let om = conformal_factor(shift(x, i, -h / 2.0));
            acc += op * (fp - f0) - om * (f0 - fm);
        }
        Ok(acc / (h * h))
    }

    /// Energy density for a spherically symmetric `|Φ|²`, sampled along
    /// the `k` axis with the radial form of the same operator.
    pub fn energy_density_radial(&self, r: f64, h: f64) -> Result<f64> {
        if r < 2.0 * h {
            return self.energy_density([0.0, 0.0, r], h);
        }
        Self::check_stencil([0.0, 0.0, r], h)?;
        let f = |s: f64| self.higgs_norm_sq([0.0, 0.0, s]);
        let om = |s: f64| s * s * conformal_factor([0.0, 0.0, s]);
        let lap = |h: f64| -> Result<f64> {
            let (fp, f0, fm) = (f(r + h)?, f(r)?, f(r - h)?);
            Ok((om(r + h / 2.0) * (fp - f0) - om(r - h / 2.0) * (f0 - fm)) / (h * h * r * r))
        };
        let (coarse, fine) = (lap(h)?, lap(h / 2.0)?);
        Ok((4.0 * fine - coarse) / 3.0 / conformal_factor([0.0, 0.0, r]).powi(3))
    }

    pub fn sample(&self, x: Point, h: f64) -> Result<FieldSample> {
        Ok(FieldSample { x, r: norm(x), higgs_norm_sq: self.higgs_norm_sq(x)?, energy_density: self.energy_density(x, h)? })
    }

    /// Samples at many points in parallel.
    pub fn profile(&self, points: &[Point], h: f64) -> Result<Vec<FieldSample>> {
        points.par_iter().map(|&x| self.sample(x, h)).collect()
    }

    /// Limit of the Higgs eigenvalues along a ray, by polynomial
    /// extrapolation in `1 - R` from radii `1 - t0 / 2^m`.
    pub fn boundary_spectrum(&self, direction: Point, t0: f64, levels: usize) -> Result<BoundarySpectrum> {
        let nd = norm(direction);
        if nd == 0.0 || levels < 2 {
            return Err(Error::PreconditionFailed("need a nonzero direction and at least two levels".into()));
        }
        let u = direction.map(|v| v / nd);
        let mut ts = Vec::with_capacity(levels);
        let mut samples = Vec::with_capacity(levels);
        for m in 0..levels {
            let t = t0 / 2f64.powi(m as i32);
            let r = 1.0 - t;
            ts.push(t);
            samples.push((r, self.higgs_eigenvalues(u.map(|v| v * r))?));
        }
        let dim = samples[0].1.len();
        let mut values = Vec::with_capacity(dim);
        let mut err: f64 = 0.0;
        for i in 0..dim {
            let ys: Vec<f64> = samples.iter().map(|s| s.1[i]).collect();
            let (best, prev) = neville_at_zero(&ts, &ys);
            values.push(best);
            err = err.max((best - prev).abs());
        }
        Ok(BoundarySpectrum { direction: u, values, samples, error_estimate: err })
    }

    /// Isotropy generator at `x3 k` for rotations about the `k` axis
    /// generated by `y3` on `R^k`: `G = ψ^dagger diag(y, k/2 + Y) ψ` with
    /// `y = (L L^dagger)^{-1} L (k/2 + Y) L^dagger`.
    pub fn isotropy_generator(&self, psi: &QMatrix, y3: &RMatrix) -> Result<QMatrix> {
        let (n, k) = (self.data.n(), self.data.k());
        if y3.shape() != (k, k) {
            return Err(Error::DimensionMismatch(format!("generator is {:?}, k = {k}", y3.shape())));
        }
        let l = self.data.l();
        let t = &QMatrix::scalar_identity(Quaternion::imag([0.0, 0.0, 0.5]), k) + &QMatrix::from_real(y3);
        let ys = &(&(&self.data.gram().inverse()? * l) * &t) * &l.dagger();
        let mut big = QMatrix::zeros(n + k, n + k);
        big.set_block(0, 0, &ys);
        big.set_block(n, n, &t);
        Ok(&(&psi.dagger() * &big) * psi)
    }

    /// Signs of the boundary eigenvalues on the `+i` eigenspace of
    /// `exp(-π G)`, the lift of the half-turn fixing the point `radius · k`.
    pub fn graded_boundary(&self, y3: &RMatrix, radius: f64) -> Result<GradedSpectrum> {
        let x = [0.0, 0.0, radius];
        let psi = self.frame(x)?;
        let phi = self.higgs_in_frame(&psi);
        let g = self.isotropy_generator(&psi, y3)?;
        let commutator = phi.commutator(&g).frobenius_norm();
        let eg = g.embed() * C64::new(0.0, 1.0);
        let (hs, vecs) = hermitian_eigh(&eg);
        // exp(-π G) has eigenvalue exp(iπ h) on the h-eigenspace of iG
        let keep: Vec<usize> = (0..hs.len())
            .filter(|&i| (C64::from_polar(1.0, std::f64::consts::PI * hs[i]) - C64::new(0.0, 1.0)).norm() < 1e-6)
            .collect();
        let p = CMatrix::from_fn(vecs.nrows(), keep.len(), |r, c| vecs[(r, keep[c])]);
        let restricted_op = p.adjoint() * (phi.embed() * C64::new(0.0, -1.0)) * &p;
        let restricted = hermitian_eigenvalues(&restricted_op);
        let positive = restricted.iter().filter(|&&v| v > 0.0).count();
        let negative = restricted.iter().filter(|&&v| v < 0.0).count();
        Ok(GradedSpectrum { radius, restricted, positive, negative, commutator })
    }

    fn aligned(&self, x: Point, reference: &QMatrix) -> Result<QMatrix> {
        let psi = self.frame(x)?;
        let overlap = (&reference.dagger() * &psi).embed();
        let u = QMatrix::unembed(&polar_unitary(&overlap, 1e-8)?, 1e-8)?;
        Ok(&psi * &u.dagger())
    }

    /// Connection `A_i = ψ^dagger ∂_i ψ`, curvature and `DΦ` at `x`.
    pub fn gauge_fields(&self, x: Point, h: f64) -> Result<GaugeFields> {
        Self::check_stencil(x, h)?;
        let psi0 = self.frame(x)?;
        let phi0 = self.higgs_in_frame(&psi0);
        let mut dpsi: Vec<QMatrix> = Vec::with_capacity(3);
        let mut dphi: Vec<QMatrix> = Vec::with_capacity(3);
        for i in 0..3 {
            let pp = self.aligned(shift(x, i, h), &psi0)?;
            let pm = self.aligned(shift(x, i, -h), &psi0)?;
            dphi.push((&self.higgs_in_frame(&pp) - &self.higgs_in_frame(&pm)).scale(0.5 / h));
            dpsi.push((&pp - &pm).scale(0.5 / h));
        }
        let a: [QMatrix; 3] = std::array::from_fn(|i| &psi0.dagger() * &dpsi[i]);
        let pairs = [(0, 1), (1, 2), (2, 0)];
        let curvature = pairs.map(|(i, j)| {
            let dd = &(&dpsi[i].dagger() * &dpsi[j]) - &(&dpsi[j].dagger() * &dpsi[i]);
            &dd + &a[i].commutator(&a[j])
        });
        let covariant: [QMatrix; 3] = std::array::from_fn(|l| &dphi[l] + &a[l].commutator(&phi0));
        Ok(GaugeFields { higgs: phi0, connection: a, curvature, covariant })
    }

    /// Residual of the Bogomolny equation `F_ij = -Ω ε_ijl D_l Φ`.
    pub fn bogomolny(&self, x: Point, h: f64) -> Result<BogomolnyReport> {
        let g = self.gauge_fields(x, h)?;
        let omega = conformal_factor(x);
        let pairs = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
        let mut residual: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for (idx, &(_, _, l)) in pairs.iter().enumerate() {
            let f = &g.curvature[idx];
            residual = residual.max((f + &g.covariant[l].scale(omega)).frobenius_norm());
            scale = scale.max(f.frobenius_norm());
        }
        let relative = if scale > 0.0 { residual / scale } else { residual };
        Ok(BogomolnyReport { x, h, residual, curvature_scale: scale, relative })
    }
}

/// Neville extrapolation to `t = 0`; returns the value from all points
/// and the value from all but the coarsest.
fn neville_at_zero(ts: &[f64], ys: &[f64]) -> (f64, f64) {
    fn extrapolate(ts: &[f64], ys: &[f64]) -> f64 {
        let m = ts.len();
        let mut p = ys.to_vec();
        for level in 1..m {
            for i in 0..m - level {
                let (ti, tj) = (ts[i], ts[i + level]);
                p[i] = (tj * p[i] - ti * p[i + 1]) / (tj - ti);
            }
        }
        p[0]
    }
    (extrapolate(ts, ys), extrapolate(&ts[1..], &ys[1..]))
}

/// Unit-norm check used by callers that validate frames.
pub fn frame_defect(psi: &QMatrix) -> f64 {
    (&psi.dagger() * psi).max_abs_diff(&QMatrix::identity(psi.cols()))
}

/// `Δ(X)^dagger ψ`, zero for a kernel frame.
pub fn kernel_defect(d: &AdhmData, x: Point, psi: &QMatrix) -> f64 {
    (&d.delta(x).dagger() * psi).max_abs()
}
