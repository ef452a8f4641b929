//! Dense linear-algebra helpers on top of nalgebra.

use nalgebra::{SymmetricEigen, SVD};

use crate::error::{Error, Result};
use crate::quat::{CMatrix, RMatrix, C64};

/// Levi-Civita symbol on indices `0..3`.
pub fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// The index `c` completing `(a, b)` to a permutation, with its sign.
pub fn cyclic_partner(a: usize, b: usize) -> Option<(usize, f64)> {
    if a == b || a > 2 || b > 2 {
        return None;
    }
    let c = 3 - a - b;
    Some((c, levi_civita(a, b, c)))
}

pub fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(|x| C64::new(x, 0.0))
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn real_commutator(a: &RMatrix, b: &RMatrix) -> RMatrix {
    a * b - b * a
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_imag(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let sym = (m + m.adjoint()).scale(0.5);
    let mut v: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Eigen-decomposition of a real symmetric matrix, eigenvalues ascending.
pub fn symmetric_eigh(m: &RMatrix) -> (Vec<f64>, RMatrix) {
    let sym = (m + m.transpose()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = RMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// `f(H)` for Hermitian `H`.
pub fn hermitian_apply(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (vals, vecs) = hermitian_eigh(m);
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(vals.len(), vals.iter().map(|&x| C64::new(f(x), 0.0))));
    &vecs * d * vecs.adjoint()
}

/// Unitary polar factor `W (W^dagger W)^{-1/2}`.
pub fn polar_unitary(w: &CMatrix, tol: f64) -> Result<CMatrix> {
    let g = w.adjoint() * w;
    let (vals, _) = hermitian_eigh(&g);
    let smin = vals.first().copied().unwrap_or(0.0).max(0.0).sqrt();
    if smin <= tol {
        return Err(Error::GaugeAlignmentFailed(smin));
    }
    Ok(w * hermitian_apply(&g, |x| 1.0 / x.sqrt()))
}

/// Singular values (descending) and right singular vectors of `a`, padding
/// wide matrices with zero rows so the full right basis is available.
fn full_right_svd_real(a: &RMatrix) -> (Vec<f64>, RMatrix) {
    let (m, n) = a.shape();
    let padded = if m < n {
        let mut p = RMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = SVD::new(padded, false, true);
    let vt = svd.v_t.expect("right singular vectors");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let sv = order.iter().map(|&i| svd.singular_values[i]).collect();
    let v = RMatrix::from_fn(n, order.len(), |r, c| vt[(order[c], r)]);
    (sv, v)
}

/// Orthonormal basis (as columns) of the null space of a real matrix.
/// Singular values at most `rel_tol · max(1, σ_max)` count as zero.
pub fn null_space(a: &RMatrix, rel_tol: f64) -> RMatrix {
    let n = a.ncols();
    if n == 0 {
        return RMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return RMatrix::identity(n, n);
    }
    let (sv, v) = full_right_svd_real(a);
    let cut = rel_tol * sv.first().copied().unwrap_or(0.0).max(1.0);
    let rank = sv.iter().filter(|&&s| s > cut).count();
    v.columns(rank, n - rank).into_owned()
}

/// Smallest singular value of a real matrix (over its column space).
pub fn min_singular_value(a: &RMatrix) -> f64 {
    let (sv, _) = full_right_svd_real(a);
    sv.get(a.ncols().saturating_sub(1)).copied().unwrap_or(0.0)
}

/// Orthonormal basis of the null space of a complex matrix.
pub fn null_space_complex(a: &CMatrix, rel_tol: f64) -> CMatrix {
    let (m, n) = a.shape();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let padded = if m < n {
        let mut p = CMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = SVD::new(padded, false, true);
    let vt = svd.v_t.expect("right singular vectors");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let smax = order.first().map_or(0.0, |&i| svd.singular_values[i]).max(1.0);
    let rank = order.iter().filter(|&&i| svd.singular_values[i] > rel_tol * smax).count();
    CMatrix::from_fn(n, n - rank, |r, c| vt[(order[rank + c], r)].conj())
}

/// Orthonormal basis of a real subspace given by spanning columns.
pub fn orthonormal_span(a: &RMatrix, rel_tol: f64) -> RMatrix {
    if a.ncols() == 0 {
        return a.clone();
    }
    let svd = SVD::new(a.clone(), true, false);
    let u = svd.u.expect("left singular vectors");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max).max(1e-300);
    let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > rel_tol * smax).collect();
    RMatrix::from_fn(a.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

/// Matrix exponential of a real matrix.
pub fn real_exp(m: &RMatrix) -> RMatrix {
    m.clone().exp()
}

/// Block-diagonal real matrix.
pub fn real_block_diag(blocks: &[RMatrix]) -> RMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let c: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = RMatrix::zeros(n, c);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        out.view_mut((r0, c0), b.shape()).copy_from(b);
        r0 += b.nrows();
        c0 += b.ncols();
    }
    out
}

/// Block-diagonal complex matrix.
pub fn complex_block_diag(blocks: &[CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let c: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMatrix::zeros(n, c);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        out.view_mut((r0, c0), b.shape()).copy_from(b);
        r0 += b.nrows();
        c0 += b.ncols();
    }
    out
}

/// Largest deviation of `U^dagger U` from the identity.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.ncols();
    max_abs(&(u.adjoint() * u - CMatrix::identity(n, n)))
}

pub fn orthogonality_defect(q: &RMatrix) -> f64 {
    let n = q.ncols();
    (q.transpose() * q - RMatrix::identity(n, n)).amax()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_wide_matrix() {
        let a = RMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let ns = null_space(&a, 1e-12);
        assert_eq!(ns.ncols(), 2);
        assert!((&a * &ns).amax() < 1e-14);
    }

    #[test]
    fn eigh_is_sorted() {
        let m = to_complex(&RMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, -1.0]));
        let (v, _) = hermitian_eigh(&m);
        assert_eq!(v, vec![-1.0, 3.0]);
    }
}
