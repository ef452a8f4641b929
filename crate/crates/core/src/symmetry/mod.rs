//! Rotational symmetry of ADHM data: criteria, the general spherically
//! symmetric ansatz, explicit families and structure-group constraints.

mod ansatz;
mod families;
mod structure;

pub use ansatz::{
    equivariant_triple_count, structure_ansatz, symmetric_parameter_count, Ansatz, AnsatzDirection, AnsatzSpec,
};
pub use families::{
    axial_data, axial_generator, family_axial, family_irrep, family_mzero, family_n2n, family_nn, family_sp2_explicit,
    family_sp4_explicit, FamilyInstance, Generating, Sign,
};
pub use structure::{
    check_structure_group, induced_structure_rep, quaternionic_irrep, structure_group_bounds, ExclusionOptions,
    InducedRep, StructureGroupBounds, StructureVerdict,
};

use crate::adhm::AdhmData;
use crate::error::{Error, Result};
use crate::linalg::cyclic_partner;
use crate::quat::{QMatrix, Quaternion, RMatrix};
use crate::suirrep::ReprTriple;

/// `‖[M, Y] - [k/2, M]‖_F`: zero iff the data is symmetric under rotations
/// about the `k` axis generated by the real skew matrix `Y`.
pub fn axial_residual(d: &AdhmData, y: &RMatrix) -> Result<f64> {
    if y.shape() != (d.k(), d.k()) {
        return Err(Error::DimensionMismatch(format!("generator is {:?}, k = {}", y.shape(), d.k())));
    }
    let yq = QMatrix::from_real(y);
    let m = d.m();
    let half_k = Quaternion::imag([0.0, 0.0, 0.5]);
    let lhs = m.commutator(&yq);
    let rhs = &m.left_scale(half_k) - &m.right_scale(half_k);
    Ok((&lhs - &rhs).frobenius_norm())
}

/// `Σ_ab ‖[Y_a, M_b] - ε_abc M_c‖_F` for real component matrices.
pub fn spherical_residual_parts(m: &[RMatrix; 3], rep: &[RMatrix; 3]) -> f64 {
    spherical_residual_parts_rect(m, rep, rep)
}

/// `Σ_ab ‖Y⁺_a X_b - X_b Y⁻_a - ε_abc X_c‖_F` for rectangular `X`.
pub fn spherical_residual_parts_rect(x: &[RMatrix; 3], plus: &[RMatrix; 3], minus: &[RMatrix; 3]) -> f64 {
    let mut total = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let mut r = &plus[a] * &x[b] - &x[b] * &minus[a];
            if let Some((c, s)) = cyclic_partner(a, b) {
                r -= x[c].scale(s);
            }
            total += r.norm();
        }
    }
    total
}

/// Spherical-symmetry residual of `M` against a real representation of dimension `k`.
pub fn spherical_residual(d: &AdhmData, rep: &ReprTriple) -> Result<f64> {
    if rep.dim() != d.k() {
        return Err(Error::DimensionMismatch(format!("representation of dimension {} for k = {}", rep.dim(), d.k())));
    }
    if !rep.is_real(crate::tol::structural()) {
        return Err(Error::PreconditionFailed("representation must be real".into()));
    }
    let [_, x, y, z] = d.m().components();
    Ok(spherical_residual_parts(&[x, y, z], &rep.real_parts()))
}
