//! Irreducible representations of sp(1) ≅ su(2).
//!
//! A representation is a triple `(Y1, Y2, Y3)` of skew-Hermitian matrices with
//! `[Y_a, Y_b] = ε_abc Y_c`. The complex irrep of dimension `n` is written in
//! the weight basis of `i·Y1`, with eigenvalues `(n-1)/2, …, -(n-1)/2` down the
//! diagonal and non-negative real raising entries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, commutator, complex_block_diag, cyclic_partner, hermitian_eigh, max_abs, max_imag};
use crate::quat::{CMatrix, QMatrix, RMatrix, C64};
use crate::tol;

/// Generators `(Y1, Y2, Y3)` of a representation of sp(1).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ReprJson", into = "ReprJson")]
pub struct ReprTriple {
    gens: [CMatrix; 3],
}

#[derive(Serialize, Deserialize)]
struct CMatrixJson {
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ReprJson {
    dim: usize,
    real: bool,
    generators: Vec<CMatrixJson>,
}

fn cmatrix_to_json(m: &CMatrix) -> CMatrixJson {
    let (rows, cols) = m.shape();
    let mut re = Vec::with_capacity(rows * cols);
    let mut im = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            re.push(m[(r, c)].re);
            im.push(m[(r, c)].im);
        }
    }
    CMatrixJson { rows, cols, re, im }
}

fn cmatrix_from_json(j: &CMatrixJson) -> Result<CMatrix> {
    if j.re.len() != j.rows * j.cols || j.im.len() != j.rows * j.cols {
        return Err(Error::DimensionMismatch("complex matrix entry count".into()));
    }
    Ok(CMatrix::from_fn(j.rows, j.cols, |r, c| C64::new(j.re[r * j.cols + c], j.im[r * j.cols + c])))
}

impl TryFrom<ReprJson> for ReprTriple {
    type Error = Error;
    fn try_from(j: ReprJson) -> Result<Self> {
        if j.generators.len() != 3 {
            return Err(Error::DimensionMismatch(format!("{} generators", j.generators.len())));
        }
        let g: Vec<CMatrix> = j.generators.iter().map(cmatrix_from_json).collect::<Result<_>>()?;
        ReprTriple::new([g[0].clone(), g[1].clone(), g[2].clone()])
    }
}

impl From<ReprTriple> for ReprJson {
    fn from(r: ReprTriple) -> Self {
        ReprJson {
            dim: r.dim(),
            real: r.is_real(tol::STRUCTURAL),
            generators: r.gens.iter().map(cmatrix_to_json).collect(),
        }
    }
}

impl ReprTriple {
    pub fn new(gens: [CMatrix; 3]) -> Result<Self> {
        let n = gens[0].nrows();
        if gens.iter().any(|g| g.shape() != (n, n)) {
            return Err(Error::DimensionMismatch("generators must be square of equal size".into()));
        }
        Ok(ReprTriple { gens })
    }

    pub fn from_real(gens: [RMatrix; 3]) -> Result<Self> {
        Self::new(gens.map(|g| linalg::to_complex(&g)))
    }

    /// The zero representation (trivial summands only).
    pub fn trivial(n: usize) -> Self {
        ReprTriple { gens: std::array::from_fn(|_| CMatrix::zeros(n, n)) }
    }

    pub fn dim(&self) -> usize {
        self.gens[0].nrows()
    }

    pub fn generators(&self) -> &[CMatrix; 3] {
        &self.gens
    }

    pub fn generator(&self, a: usize) -> &CMatrix {
        &self.gens[a]
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.gens.iter().all(|g| max_imag(g) <= tol)
    }

    pub fn real_parts(&self) -> [RMatrix; 3] {
        std::array::from_fn(|a| self.gens[a].map(|z| z.re))
    }

    /// Largest `|[Y_a, Y_b] - ε_abc Y_c|` entry over all pairs.
    pub fn relation_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                let mut r = commutator(&self.gens[a], &self.gens[b]);
                if let Some((c, s)) = cyclic_partner(a, b) {
                    r -= self.gens[c].scale(s);
                }
                worst = worst.max(max_abs(&r));
            }
        }
        worst
    }

    /// Largest `|Y_a + Y_a^dagger|` entry.
    pub fn skew_defect(&self) -> f64 {
        self.gens.iter().map(|g| max_abs(&(g + g.adjoint()))).fold(0.0, f64::max)
    }

    /// Casimir `-(Y1² + Y2² + Y3²)`.
    pub fn casimir(&self) -> CMatrix {
        -self.gens.iter().map(|g| g * g).fold(CMatrix::zeros(self.dim(), self.dim()), |acc, m| acc + m)
    }

    /// Change of basis `U^dagger Y U`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Self {
        ReprTriple { gens: std::array::from_fn(|a| u.adjoint() * &self.gens[a] * u) }
    }

    pub fn direct_sum(parts: &[ReprTriple]) -> Self {
        ReprTriple {
            gens: std::array::from_fn(|a| complex_block_diag(&parts.iter().map(|p| p.gens[a].clone()).collect::<Vec<_>>())),
        }
    }

    /// `Y1 i + Y2 j + Y3 k` for a real triple.
    pub fn quaternion_matrix(&self) -> Result<QMatrix> {
        let imag = self.gens.iter().map(max_imag).fold(0.0, f64::max);
        if imag > tol::STRUCTURAL {
            return Err(Error::PreconditionFailed(format!("triple is not real (imaginary part {imag:e})")));
        }
        QMatrix::from_imaginary_parts(&self.real_parts())
    }

    fn validate(&self) -> Result<()> {
        let scale = self.gens.iter().map(max_abs).fold(1.0, f64::max);
        let res = self.relation_residual().max(self.skew_defect());
        if res > 1e-8 * scale {
            return Err(Error::InvalidRepresentation(res));
        }
        Ok(())
    }
}

/// Angular-momentum matrices `(J1, J+)` for dimension `n`: `J1 = diag((n-1)/2, …)`
/// and the raising operator with `J+ e_r = c_r e_{r-1}`.
fn weight_operators(n: usize) -> (CMatrix, CMatrix) {
    let j = (n as f64 - 1.0) / 2.0;
    let m: Vec<f64> = (0..n).map(|r| j - r as f64).collect();
    let j1 = CMatrix::from_fn(n, n, |r, c| if r == c { C64::new(m[r], 0.0) } else { C64::new(0.0, 0.0) });
    let mut jp = CMatrix::zeros(n, n);
    for r in 1..n {
        jp[(r - 1, r)] = C64::new((j * (j + 1.0) - m[r] * (m[r] + 1.0)).sqrt(), 0.0);
    }
    (j1, jp)
}

/// Complex irreducible representation of dimension `n ≥ 1`.
pub fn complex_irrep(n: usize) -> Result<ReprTriple> {
    if n == 0 {
        return Err(Error::PreconditionFailed("dimension must be positive".into()));
    }
    let (j1, jp) = weight_operators(n);
    let jm = jp.adjoint();
    let i = C64::new(0.0, 1.0);
    let j2 = (&jp + &jm).scale(0.5);
    let j3 = (&jp - &jm) * C64::new(0.0, -0.5);
    // Y_a = -i J_a
    ReprTriple::new([j1 * (-i), j2 * (-i), j3 * (-i)])
}

/// The antiunitary structure `v ↦ T·conj(v)` commuting with the complex irrep,
/// returned as the unitary `T = exp(-iπ J3)`. `T·conj(T) = (-1)^{n-1}`.
pub fn conjugation_structure(n: usize) -> Result<CMatrix> {
    let rep = complex_irrep(n)?;
    let j3 = &rep.gens[2] * C64::new(0.0, 1.0);
    let (vals, vecs) = hermitian_eigh(&j3);
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        vals.iter().map(|&l| C64::from_polar(1.0, -std::f64::consts::PI * l)),
    ));
    Ok(&vecs * d * vecs.adjoint())
}

/// Unitary `U` and the complex irrep `y` of dimension `n/2` with
/// `real_irrep(n) = U^dagger diag(y, y) U`, for `4 | n`. `det U = 1`.
#[derive(Clone, Debug)]
pub struct QuaternionicFrame {
    pub u: CMatrix,
    pub half: ReprTriple,
}

pub fn quaternionic_frame(n: usize) -> Result<QuaternionicFrame> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::NoRealForm(n));
    }
    let m = n / 2;
    let half = complex_irrep(m)?;
    let t = conjugation_structure(m)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (one, i) = (C64::new(s, 0.0), C64::new(0.0, s));
    let mut w = CMatrix::zeros(n, n);
    for r in 0..m {
        w[(r, r)] = one;
        w[(r, m + r)] = i;
        w[(m + r, r)] = one;
        w[(m + r, m + r)] = -i;
    }
    let mut u = complex_block_diag(&[CMatrix::identity(m, m), t]) * w;
    let det = u.determinant();
    let phase = C64::from_polar(1.0, -det.arg() / n as f64);
    u *= phase;
    Ok(QuaternionicFrame { u, half })
}

/// Real irreducible representation of dimension `n` (n odd or divisible by 4),
/// given by real skew-symmetric generators.
pub fn real_irrep(n: usize) -> Result<ReprTriple> {
    if n == 0 || !(n % 2 == 1 || n.is_multiple_of(4)) {
        return Err(Error::NoRealForm(n));
    }
    if n.is_multiple_of(4) {
        // realification of the quaternionic irrep of dimension n/2
        let y = complex_irrep(n / 2)?;
        let m = n / 2;
        let gens = std::array::from_fn(|a| {
            let g = &y.gens[a];
            RMatrix::from_fn(n, n, |r, c| {
                let (br, bc) = (r / m, c / m);
                let z = g[(r % m, c % m)];
                match (br, bc) {
                    (0, 0) | (1, 1) => z.re,
                    (0, 1) => -z.im,
                    _ => z.im,
                }
            })
        });
        return ReprTriple::from_real(gens);
    }
    let y = complex_irrep(n)?;
    let t = conjugation_structure(n)?;
    let fix = |v: &nalgebra::DVector<C64>| -> nalgebra::DVector<C64> { &t * v.map(|z| z.conj()) };
    let mut basis: Vec<nalgebra::DVector<C64>> = Vec::with_capacity(n);
    for r in 0..n {
        let mut e = nalgebra::DVector::<C64>::zeros(n);
        e[r] = C64::new(1.0, 0.0);
        let ie = &e * C64::new(0.0, 1.0);
        for cand in [&e + fix(&e), &ie + fix(&ie)] {
            if basis.len() == n {
                break;
            }
            let mut c = cand;
            for _ in 0..2 {
                for u in &basis {
                    let p = u.dotc(&c).re;
                    c -= u * C64::new(p, 0.0);
                }
            }
            let nrm = c.norm();
            if nrm > 1e-8 {
                basis.push(c / C64::new(nrm, 0.0));
            }
        }
    }
    if basis.len() != n {
        return Err(Error::NoRealForm(n));
    }
    let p = CMatrix::from_columns(&basis);
    let rep = y.conjugate_by(&p);
    let imag = rep.gens.iter().map(max_imag).fold(0.0, f64::max);
    if imag > 1e-10 {
        return Err(Error::NoRealForm(n));
    }
    ReprTriple::from_real(rep.real_parts())
}

/// The defining 2-dimensional triple `F(υ_a)` with `υ = (i/2, j/2, k/2)` and
/// `F(a i + b j + c k) = [[a i, b + c i], [-b + c i, -a i]]`.
pub fn fundamental() -> ReprTriple {
    let c = |re: f64, im: f64| C64::new(re, im);
    let f = |a: f64, b: f64, cc: f64| CMatrix::from_row_slice(2, 2, &[c(0.0, a), c(b, cc), c(-b, cc), c(0.0, -a)]);
    ReprTriple { gens: [f(0.5, 0.0, 0.0), f(0.0, 0.5, 0.0), f(0.0, 0.0, 0.5)] }
}

/// Real 3-dimensional generators acting as infinitesimal rotations, in the
/// basis where `y1` rotates the first two axes.
pub fn so3_generators() -> ReprTriple {
    let y1 = RMatrix::from_row_slice(3, 3, &[0., 1., 0., -1., 0., 0., 0., 0., 0.]);
    let y2 = RMatrix::from_row_slice(3, 3, &[0., 0., -1., 0., 0., 0., 1., 0., 0.]);
    let y3 = RMatrix::from_row_slice(3, 3, &[0., 0., 0., 0., 0., 1., 0., -1., 0.]);
    ReprTriple::from_real([y1, y2, y3]).expect("3x3 generators")
}

/// Dimensions of the irreducible summands (descending, with multiplicity).
pub fn decompose(rep: &ReprTriple) -> Result<Vec<usize>> {
    rep.validate()?;
    let (vals, _) = hermitian_eigh(&rep.casimir());
    let mut out = Vec::new();
    let mut i = 0;
    while i < vals.len() {
        let mut j = i + 1;
        while j < vals.len() && (vals[j] - vals[i]).abs() <= 1e-6 * (1.0 + vals[i].abs()) {
            j += 1;
        }
        let c = vals[i..j].iter().sum::<f64>() / (j - i) as f64;
        let m = (4.0 * c + 1.0).max(0.0).sqrt();
        let mr = m.round();
        if (m - mr).abs() > 1e-6 || mr < 1.0 {
            return Err(Error::NotIrreducible(format!("Casimir eigenvalue {c} is not (m²-1)/4")));
        }
        let m = mr as usize;
        if (j - i) % m != 0 {
            return Err(Error::NotIrreducible(format!("isotypic block of size {} for dimension {m}", j - i)));
        }
        out.extend(std::iter::repeat_n(m, (j - i) / m));
        i = j;
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Real matrices commuting with `real_irrep(n)`: `{I}` for odd `n`, and
/// `{I, X1, X2, X3}` for `4 | n` with `X_r = U^dagger (A_r ⊗ I) U`,
/// `A_1 = diag(i, -i)`, `A_2 = [[0, 1], [-1, 0]]`, `A_3 = [[0, i], [i, 0]]`.
pub fn commutant_basis(n: usize) -> Result<Vec<RMatrix>> {
    if n == 0 || !(n % 2 == 1 || n.is_multiple_of(4)) {
        return Err(Error::NoRealForm(n));
    }
    let mut out = vec![RMatrix::identity(n, n)];
    if n % 2 == 1 {
        return Ok(out);
    }
    let frame = quaternionic_frame(n)?;
    let m = n / 2;
    let (o, i) = (C64::new(1.0, 0.0), C64::new(0.0, 1.0));
    for blocks in [[i, C64::default(), C64::default(), -i], [C64::default(), o, -o, C64::default()], [C64::default(), i, i, C64::default()]] {
        let mut a = CMatrix::zeros(n, n);
        for r in 0..m {
            a[(r, r)] = blocks[0];
            a[(r, m + r)] = blocks[1];
            a[(m + r, r)] = blocks[2];
            a[(m + r, m + r)] = blocks[3];
        }
        let x = frame.u.adjoint() * a * &frame.u;
        let imag = max_imag(&x);
        if imag > 1e-10 {
            return Err(Error::NoRealForm(n));
        }
        out.push(x.map(|z| z.re));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_irreps_satisfy_relations() {
        for n in 1..=9 {
            let r = complex_irrep(n).unwrap();
            assert!(r.relation_residual() < 1e-12, "n={n}");
            assert!(r.skew_defect() < 1e-14);
            let c = (n as f64 * n as f64 - 1.0) / 4.0;
            let cas = r.casimir() - CMatrix::identity(n, n) * C64::new(c, 0.0);
            assert!(max_abs(&cas) < 1e-12);
        }
    }

    #[test]
    fn weight_diagonal() {
        let r = complex_irrep(4).unwrap();
        let w = r.generator(0) * C64::new(0.0, 1.0);
        for (k, expect) in [1.5, 0.5, -0.5, -1.5].iter().enumerate() {
            assert!((w[(k, k)].re - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn no_real_form_for_two_mod_four() {
        assert_eq!(real_irrep(2), Err(Error::NoRealForm(2)));
        assert_eq!(real_irrep(6), Err(Error::NoRealForm(6)));
        assert!(real_irrep(0).is_err());
    }

    #[test]
    fn real_irreps_are_real_skew() {
        for n in [1, 3, 4, 5, 7, 8, 9, 12] {
            let r = real_irrep(n).unwrap();
            assert!(r.is_real(0.0));
            assert!(r.relation_residual() < 1e-12, "n={n}");
            assert!(r.skew_defect() < 1e-13);
        }
    }

    #[test]
    fn four_dim_casimir() {
        let r = real_irrep(4).unwrap();
        let cas = r.casimir() - CMatrix::identity(4, 4) * C64::new(0.75, 0.0);
        assert!(max_abs(&cas) < 1e-14);
        assert_eq!(decompose(&r).unwrap(), vec![2, 2]);
    }

    #[test]
    fn quaternionic_frame_reproduces_real_form() {
        for n in [4, 8, 12] {
            let f = quaternionic_frame(n).unwrap();
            let r = real_irrep(n).unwrap();
            let d = ReprTriple::direct_sum(&[f.half.clone(), f.half.clone()]).conjugate_by(&f.u);
            for a in 0..3 {
                assert!(max_abs(&(d.generator(a) - r.generator(a))) < 1e-13);
            }
            assert!(linalg::unitarity_defect(&f.u) < 1e-13);
            assert!((f.u.determinant() - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn decompose_rejects_non_representations() {
        let mut g = complex_irrep(3).unwrap().gens;
        g[0] *= C64::new(2.0, 0.0);
        assert!(matches!(decompose(&ReprTriple::new(g).unwrap()), Err(Error::InvalidRepresentation(_))));
    }

    #[test]
    fn fundamental_is_two_dimensional_irrep() {
        let f = fundamental();
        assert!(f.relation_residual() < 1e-15);
        assert_eq!(decompose(&f).unwrap(), vec![2]);
    }
}
