//! Quaternions and quaternionic matrices.
//!
//! Column vectors form a right ℍ-module: scalars act on the right, matrices on
//! the left. The complex embedding writes `q = a + b·j` with `a, b ∈ span(1, i)`
//! and sends it to the block `[[a, b], [-conj(b), conj(a)]]`; for an `r × c`
//! matrix `A + B·j` the embedding is `[[A, B], [-conj(B), conj(A)]]`
//! (size `2r × 2c`). It is a ring homomorphism taking `dagger` to the
//! conjugate transpose.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type RMatrix = DMatrix<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const ONE: Quaternion = Quaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const I: Quaternion = Quaternion { w: 0.0, x: 1.0, y: 0.0, z: 0.0 };
    pub const J: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 1.0, z: 0.0 };
    pub const K: Quaternion = Quaternion { w: 0.0, x: 0.0, y: 0.0, z: 1.0 };

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion { w, x: 0.0, y: 0.0, z: 0.0 }
    }

    /// Pure imaginary quaternion `v[0] i + v[1] j + v[2] k`.
    pub const fn imag(v: [f64; 3]) -> Self {
        Quaternion { w: 0.0, x: v[0], y: v[1], z: v[2] }
    }

    /// The imaginary unit with index `a` (0 → i, 1 → j, 2 → k).
    pub fn unit(a: usize) -> Self {
        match a {
            0 => Self::I,
            1 => Self::J,
            2 => Self::K,
            _ => panic!("imaginary unit index {a} out of range"),
        }
    }

    /// Build from the complex pair `(a, b)` with `q = a + b·j`.
    pub fn from_complex_pair(a: C64, b: C64) -> Self {
        Quaternion::new(a.re, a.im, b.re, b.im)
    }

    /// The `a` part of `q = a + b·j`.
    pub fn a(&self) -> C64 {
        C64::new(self.w, self.x)
    }

    /// The `b` part of `q = a + b·j`.
    pub fn b(&self) -> C64 {
        C64::new(self.y, self.z)
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn inverse(&self) -> Self {
        self.conj() / self.norm_sqr()
    }

    pub fn imag_part(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Quaternion exponential.
    pub fn exp(&self) -> Self {
        let v = (self.x * self.x + self.y * self.y + self.z * self.z).sqrt();
        let ew = self.w.exp();
        if v < 1e-300 {
            return Quaternion::real(ew);
        }
        let s = ew * v.sin() / v;
        Quaternion::new(ew * v.cos(), s * self.x, s * self.y, s * self.z)
    }

    /// The 2×2 complex block of the embedding.
    pub fn embed(&self) -> CMatrix {
        let (a, b) = (self.a(), self.b());
        CMatrix::from_row_slice(2, 2, &[a, b, -b.conj(), a.conj()])
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}

/// Dense row-major quaternionic matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QMatrixJson", into = "QMatrixJson")]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
struct QMatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 4]>,
}

impl TryFrom<QMatrixJson> for QMatrix {
    type Error = Error;
    fn try_from(j: QMatrixJson) -> Result<Self> {
        if j.entries.len() != j.rows * j.cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                j.entries.len(),
                j.rows,
                j.cols
            )));
        }
        Ok(QMatrix {
            rows: j.rows,
            cols: j.cols,
            data: j.entries.into_iter().map(Quaternion::from).collect(),
        })
    }
}

impl From<QMatrix> for QMatrixJson {
    fn from(m: QMatrix) -> Self {
        QMatrixJson { rows: m.rows, cols: m.cols, entries: m.data.into_iter().map(Into::into).collect() }
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar_identity(Quaternion::ONE, n)
    }

    /// `q · I_n`.
    pub fn scalar_identity(q: Quaternion, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = q;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != nc) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(QMatrix { rows: nr, cols: nc, data: rows.concat() })
    }

    /// Embed a real matrix.
    pub fn from_real(m: &RMatrix) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| Quaternion::real(m[(r, c)]))
    }

    /// `M1 i + M2 j + M3 k` from real component matrices.
    pub fn from_imaginary_parts(parts: &[RMatrix; 3]) -> Result<Self> {
        let (r, c) = parts[0].shape();
        if parts.iter().any(|p| p.shape() != (r, c)) {
            return Err(Error::DimensionMismatch("component shapes differ".into()));
        }
        Ok(Self::from_fn(r, c, |i, j| Quaternion::imag([parts[0][(i, j)], parts[1][(i, j)], parts[2][(i, j)]])))
    }

    /// `Y1 i + Y2 j + Y3 k` for a triple of real matrices.
    pub fn quaternionify(parts: &[RMatrix; 3]) -> Result<Self> {
        Self::from_imaginary_parts(parts)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Plain transpose, no conjugation.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&q| f(q)).collect() }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|q| q * s)
    }

    /// Entrywise `q · A`.
    pub fn left_scale(&self, q: Quaternion) -> Self {
        self.map(|e| q * e)
    }

    /// Entrywise `A · q`.
    pub fn right_scale(&self, q: Quaternion) -> Self {
        self.map(|e| e * q)
    }

    pub fn checked_mul(&self, o: &QMatrix) -> Result<QMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self[(r, t)];
                if a == Quaternion::ZERO {
                    continue;
                }
                for c in 0..o.cols {
                    out.data[r * o.cols + c] += a * o[(t, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, o: &QMatrix) -> Result<QMatrix> {
        self.zip(o, |a, b| a + b)
    }

    pub fn checked_sub(&self, o: &QMatrix) -> Result<QMatrix> {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &QMatrix, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Result<QMatrix> {
        if self.shape() != o.shape() {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.shape(), o.shape())));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    /// `A B - B A`.
    pub fn commutator(&self, o: &QMatrix) -> QMatrix {
        &(self * o) - &(o * self)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(Quaternion::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Quaternion::norm).fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `o`.
    pub fn max_abs_diff(&self, o: &QMatrix) -> f64 {
        assert_eq!(self.shape(), o.shape());
        self.data.iter().zip(&o.data).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max)
    }

    /// Largest `|A_ij - A_ji|` (plain transpose).
    pub fn asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in r + 1..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)]).norm());
            }
        }
        worst
    }

    /// Largest `|A - A^dagger|` entry.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.dagger())
    }

    /// Largest real-part magnitude.
    pub fn max_real_part(&self) -> f64 {
        self.data.iter().map(|q| q.w.abs()).fold(0.0, f64::max)
    }

    /// Sum of the real parts of the diagonal.
    pub fn real_trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].w).sum()
    }

    /// The four real component matrices `(w, x, y, z)`.
    pub fn components(&self) -> [RMatrix; 4] {
        let g = |f: fn(&Quaternion) -> f64| RMatrix::from_fn(self.rows, self.cols, |r, c| f(&self[(r, c)]));
        [g(|q| q.w), g(|q| q.x), g(|q| q.y), g(|q| q.z)]
    }

    /// Components `(M1, M2, M3)` of a pure imaginary matrix.
    pub fn imaginary_parts(&self, tol: f64) -> Result<[RMatrix; 3]> {
        let re = self.max_real_part();
        if re > tol {
            return Err(Error::NotPureImaginary(re));
        }
        let [_, x, y, z] = self.components();
        Ok([x, y, z])
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> QMatrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "submatrix out of bounds");
        Self::from_fn(nr, nc, |r, c| self[(r0 + r, c0 + c)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &QMatrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of bounds");
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)];
            }
        }
    }

    /// Stack `top` over `bottom`.
    pub fn vstack(top: &QMatrix, bottom: &QMatrix) -> Result<QMatrix> {
        if top.cols != bottom.cols {
            return Err(Error::DimensionMismatch(format!("vstack {} vs {} columns", top.cols, bottom.cols)));
        }
        let mut data = top.data.clone();
        data.extend_from_slice(&bottom.data);
        Ok(QMatrix { rows: top.rows + bottom.rows, cols: top.cols, data })
    }

    pub fn block_diag(blocks: &[QMatrix]) -> QMatrix {
        let nr = blocks.iter().map(|b| b.rows).sum();
        let nc = blocks.iter().map(|b| b.cols).sum();
        let mut out = QMatrix::zeros(nr, nc);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn column(&self, c: usize) -> QMatrix {
        self.submatrix(0, c, self.rows, 1)
    }

    /// Complex embedding `[[A, B], [-conj(B), conj(A)]]`.
    pub fn embed(&self) -> CMatrix {
        let (r, c) = (self.rows, self.cols);
        let mut e = CMatrix::zeros(2 * r, 2 * c);
        for i in 0..r {
            for j in 0..c {
                let q = self[(i, j)];
                let (a, b) = (q.a(), q.b());
                e[(i, j)] = a;
                e[(i, c + j)] = b;
                e[(r + i, j)] = -b.conj();
                e[(r + i, c + j)] = a.conj();
            }
        }
        e
    }

    /// Inverse of [`QMatrix::embed`]; fails if the block structure is off by more than `tol`.
    pub fn unembed(e: &CMatrix, tol: f64) -> Result<QMatrix> {
        let (m, n) = e.shape();
        if m % 2 != 0 || n % 2 != 0 {
            return Err(Error::DimensionMismatch(format!("embedding of odd shape {m}x{n}")));
        }
        let (r, c) = (m / 2, n / 2);
        let scale = e.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let mut defect: f64 = 0.0;
        let out = QMatrix::from_fn(r, c, |i, j| {
            let a = e[(i, j)];
            let b = e[(i, c + j)];
            defect = defect.max((e[(r + i, j)] + b.conj()).norm()).max((e[(r + i, c + j)] - a.conj()).norm());
            Quaternion::from_complex_pair(a, b)
        });
        if defect > tol * scale {
            return Err(Error::PreconditionFailed(format!("not a quaternionic embedding (defect {defect:e})")));
        }
        Ok(out)
    }

    /// Quaternionic column vector from a complex vector `(p; q)` of length `2m`,
    /// read as the first column of an embedded column.
    pub fn column_from_complex(v: &[C64]) -> QMatrix {
        let m = v.len() / 2;
        QMatrix::from_fn(m, 1, |i, _| Quaternion::from_complex_pair(v[i], -v[m + i].conj()))
    }

    /// Inverse of a square matrix through the embedding.
    pub fn inverse(&self) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let inv = self
            .embed()
            .try_inverse()
            .ok_or_else(|| Error::PreconditionFailed("singular quaternionic matrix".into()))?;
        QMatrix::unembed(&inv, 1e-8)
    }

    /// Quaternionic modified Gram-Schmidt (two passes) on the columns.
    /// Orthonormal input is returned unchanged up to rounding.
    pub fn orthonormalize_columns(&self, tol: f64) -> Result<QMatrix> {
        let mut cols: Vec<Vec<Quaternion>> = (0..self.cols).map(|c| (0..self.rows).map(|r| self[(r, c)]).collect()).collect();
        let scale = self.frobenius_norm().max(1.0);
        for j in 0..cols.len() {
            for _pass in 0..2 {
                for i in 0..j {
                    // v_j -= w_i (w_i^dagger v_j)
                    let mut coef = Quaternion::ZERO;
                    for r in 0..self.rows {
                        coef += cols[i][r].conj() * cols[j][r];
                    }
                    for r in 0..self.rows {
                        let d = cols[i][r] * coef;
                        cols[j][r] -= d;
                    }
                }
            }
            let nrm = cols[j].iter().map(Quaternion::norm_sqr).sum::<f64>().sqrt();
            if nrm <= tol * scale {
                return Err(Error::RankDeficient(nrm));
            }
            for q in cols[j].iter_mut() {
                *q = *q / nrm;
            }
        }
        Ok(QMatrix::from_fn(self.rows, self.cols, |r, c| cols[c][r]))
    }
}

impl<'a> Mul<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        self.checked_mul(o).expect("quaternionic matrix product")
    }
}

impl<'a> Add<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn add(self, o: &QMatrix) -> QMatrix {
        self.checked_add(o).expect("quaternionic matrix sum")
    }
}

impl<'a> Sub<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn sub(self, o: &QMatrix) -> QMatrix {
        self.checked_sub(o).expect("quaternionic matrix difference")
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.map(|q| -q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, -Quaternion::ONE);
        assert_eq!(i * j * k, -Quaternion::ONE);
    }

    #[test]
    fn embedding_of_units() {
        let j = Quaternion::J.embed();
        assert_eq!(j, CMatrix::from_row_slice(2, 2, &[C64::new(0., 0.), C64::new(1., 0.), C64::new(-1., 0.), C64::new(0., 0.)]));
        let k = Quaternion::K.embed();
        assert_eq!(k[(0, 1)], C64::new(0., 1.));
    }

    #[test]
    fn unit_exponential() {
        let p = Quaternion::imag([0.0, 0.0, std::f64::consts::FRAC_PI_4]).exp();
        assert!(p.is_unit(1e-15));
        assert!((p.w - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn rank_deficient_columns() {
        let m = QMatrix::from_fn(3, 2, |r, c| if c == 0 { Quaternion::real(r as f64 + 1.0) } else { Quaternion::J * (r as f64 + 1.0) });
        assert!(matches!(m.orthonormalize_columns(1e-12), Err(Error::RankDeficient(_))));
    }

    #[test]
    fn json_shape() {
        let m = QMatrix::scalar_identity(Quaternion::K, 1);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":1,"entries":[[0.0,0.0,0.0,1.0]]}"#);
        let back: QMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<QMatrix>(r#"{"rows":2,"cols":1,"entries":[[0,0,0,1]]}"#).is_err());
    }
}
