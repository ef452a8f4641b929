//! Explicit families of symmetric data, each returned with the generator of
//! its symmetry and already validated on the reduced sampling domain.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::adhm::{AdhmData, Domain, ValidityReport};
use crate::bweb::realize_b_real;
use crate::error::{Error, Result};
use crate::linalg::real_block_diag;
use crate::quat::{QMatrix, Quaternion, RMatrix};
use crate::suirrep::{commutant_basis, real_irrep, so3_generators, ReprTriple};

/// Branch or orientation choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            _ => Err(format!("expected + or -, got {s:?}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+" } else { "-" })
    }
}

/// The infinitesimal symmetry of an instance.
#[derive(Clone, Debug)]
pub enum Generating {
    /// Rotations about the `k` axis, generated by a real skew `k × k` matrix.
    Axial(RMatrix),
    /// Full rotations, generated by a real representation on `R^k`.
    Spherical(ReprTriple),
}

impl Generating {
    /// Generator of rotations about the `k` axis.
    pub fn axis_generator(&self) -> RMatrix {
        match self {
            Generating::Axial(y) => y.clone(),
            Generating::Spherical(rep) => rep.real_parts()[2].clone(),
        }
    }

    pub fn reduced_domain(&self) -> Domain {
        match self {
            Generating::Axial(_) => Domain::AxialHalfDisc,
            Generating::Spherical(_) => Domain::Ray,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family: String,
    pub params: BTreeMap<String, f64>,
    pub data: AdhmData,
    pub generating: Generating,
    pub validity: ValidityReport,
}

impl FamilyInstance {
    fn build(family: &str, params: &[(&str, f64)], data: AdhmData, generating: Generating) -> Result<Self> {
        let domain = generating.reduced_domain();
        let validity = data.validate(domain, 0);
        if !validity.valid {
            return Err(Error::ConstructionInvalid(format!(
                "{family}: algebraic residual {:.3e}, min eig(LL†) {:.3e}, min eig(Δ†Δ) {:.3e}",
                validity.algebraic_residual, validity.lldagger_min_eig, validity.delta_min_eig
            )));
        }
        Ok(Self {
            family: family.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            data,
            generating,
            validity,
        })
    }
}

fn out_of_range(name: &str, value: f64, lo: f64, hi: f64) -> Error {
    Error::OutOfRange { name: name.into(), value, lo, hi }
}

/// `Σ_a Y_a e_a` as a quaternionic matrix, with `e = (i, j, k)`.
fn quaternionic_generator(y: &[RMatrix; 3]) -> QMatrix {
    QMatrix::from_imaginary_parts(y).expect("generators are square")
}

fn scalar_plus(alpha: f64, beta: f64, y: &[RMatrix; 3]) -> QMatrix {
    let n = y[0].nrows();
    &QMatrix::identity(n).scale(alpha) + &quaternionic_generator(y).scale(beta)
}

/// Charge-2 axial data without range checks: `M1 = Aσx`, `M2 = s_y A σz`,
/// `M3 = s_3 sqrt(1 - 4A²)`, `L = sqrt(2) A [1, -s_y k]`.
pub fn axial_data(a: f64, sy: Sign, s3: Sign) -> Result<AdhmData> {
    let s = (1.0 - 4.0 * a * a).max(0.0).sqrt();
    let m1 = RMatrix::from_row_slice(2, 2, &[0.0, a, a, 0.0]);
    let m2 = RMatrix::from_row_slice(2, 2, &[a, 0.0, 0.0, -a]).scale(sy.value());
    let m3 = RMatrix::identity(2, 2).scale(s3.value() * s);
    let c = std::f64::consts::SQRT_2 * a;
    let l = QMatrix::from_rows(&[vec![Quaternion::real(c), Quaternion::K * (-sy.value() * c)]])?;
    AdhmData::from_parts(l, &[m1, m2, m3])
}

/// Generator of the axial symmetry of [`axial_data`].
pub fn axial_generator(sy: Sign) -> RMatrix {
    RMatrix::from_row_slice(2, 2, &[0.0, 0.5, -0.5, 0.0]).scale(sy.value())
}

/// Axially symmetric charge-2 data, `0 < |A| ≤ 1/2`.
pub fn family_axial(a: f64, sy: Sign, s3: Sign) -> Result<FamilyInstance> {
    if !(a.abs() > 0.0 && a.abs() <= 0.5) {
        return Err(out_of_range("A", a, -0.5, 0.5));
    }
    let data = axial_data(a, sy, s3)?;
    FamilyInstance::build(
        "axial",
        &[("A", a), ("sign_y", sy.value()), ("sign_3", s3.value())],
        data,
        Generating::Axial(axial_generator(sy)),
    )
}

/// `M_a = κ Y_a X1` on a single summand of dimension `k` divisible by four,
/// `0 < κ < 4/(k+2)`.
pub fn family_irrep(k: usize, kappa: f64, branch: Sign) -> Result<FamilyInstance> {
    if k == 0 || !k.is_multiple_of(4) {
        return Err(Error::UnsupportedSummand(k));
    }
    let kf = k as f64;
    let hi = 4.0 / (kf + 2.0);
    if !(kappa > 0.0 && kappa < hi) {
        return Err(out_of_range("kappa", kappa, 0.0, hi));
    }
    let rep = real_irrep(k)?;
    let y = rep.real_parts();
    let x1 = commutant_basis(k)?.swap_remove(1);
    let m: [RMatrix; 3] = std::array::from_fn(|a| (&y[a] * &x1).scale(kappa));
    let big_a = 16.0 - (kf * kf + 4.0) * kappa * kappa;
    let disc = (big_a * big_a - 16.0 * kf * kf * kappa.powi(4)).max(0.0).sqrt();
    let beta_sq = match branch {
        Sign::Plus => (big_a + disc) / (2.0 * kf * kf),
        Sign::Minus => 8.0 * kappa.powi(4) / (big_a + disc),
    };
    let beta = beta_sq.sqrt();
    let alpha = -(beta_sq + kappa * kappa) / (2.0 * beta);
    let data = AdhmData::from_parts(scalar_plus(alpha, beta, &y), &m)?;
    FamilyInstance::build(
        "irrep",
        &[("k", kf), ("kappa", kappa), ("branch", branch.value())],
        data,
        Generating::Spherical(rep),
    )
}

/// Summands `{n+2, n}` with `n` odd: `M` off-diagonal through the real
/// intertwiner `B`, `0 < a < sqrt((n+1)/(2(n+2)))`. The two branches choose
/// the roots for the two diagonal blocks of `L` independently.
pub fn family_n2n(n: usize, a: f64, upper: Sign, lower: Sign) -> Result<FamilyInstance> {
    if n.is_multiple_of(2) {
        return Err(Error::UnsupportedSummand(n));
    }
    let nf = n as f64;
    let hi = ((nf + 1.0) / (2.0 * (nf + 2.0))).sqrt();
    if !(a > 0.0 && a < hi) {
        return Err(out_of_range("a", a, 0.0, hi));
    }
    let b = realize_b_real(n)?;
    let bt = b.real_parts();
    let (plus, minus) = (b.plus.real_parts(), b.minus.real_parts());
    let k = 2 * n + 2;
    let m: [RMatrix; 3] = std::array::from_fn(|i| {
        let mut out = RMatrix::zeros(k, k);
        out.view_mut((0, n + 2), (n + 2, n)).copy_from(&bt[i].scale(a));
        out.view_mut((n + 2, 0), (n, n + 2)).copy_from(&bt[i].transpose().scale(a));
        out
    });
    let root = ((nf + 1.0) * (nf + 1.0 - 2.0 * (nf + 2.0) * a * a)).max(0.0).sqrt();
    let beta = match upper {
        Sign::Plus => (nf + 1.0 + root) / ((nf + 1.0) * (nf + 2.0)),
        Sign::Minus => 2.0 * a * a / (nf + 1.0 + root),
    };
    let delta = match lower {
        Sign::Plus => (nf + 1.0 + root) / (nf * (nf + 1.0)),
        Sign::Minus => 2.0 * (nf + 2.0) * a * a / (nf * (nf + 1.0 + root)),
    };
    let alpha = -(beta * beta + 2.0 * a * a / (nf + 1.0)) / (2.0 * beta);
    let gamma = (2.0 * (nf + 2.0) * a * a / (nf * (nf + 1.0)) - delta * delta) / (2.0 * delta);
    let l = QMatrix::block_diag(&[scalar_plus(alpha, beta, &plus), scalar_plus(gamma, delta, &minus)]);
    let data = AdhmData::from_parts(l, &m)?;
    let rep = ReprTriple::direct_sum(&[b.plus.clone(), b.minus.clone()]);
    FamilyInstance::build(
        "n2n",
        &[("n", nf), ("a", a), ("branch_upper", upper.value()), ("branch_lower", lower.value())],
        data,
        Generating::Spherical(rep),
    )
}

/// Summands `{n, n}` with `n ≥ 3` odd: `M_a = a [[0, Y_a], [-Y_a, 0]]`,
/// `0 < a < 2/(n+1)`.
pub fn family_nn(n: usize, a: f64, branch: Sign) -> Result<FamilyInstance> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::UnsupportedSummand(n));
    }
    let nf = n as f64;
    let hi = 2.0 / (nf + 1.0);
    if !(a > 0.0 && a < hi) {
        return Err(out_of_range("a", a, 0.0, hi));
    }
    let rep = real_irrep(n)?;
    let y = rep.real_parts();
    let m: [RMatrix; 3] = std::array::from_fn(|i| {
        let mut out = RMatrix::zeros(2 * n, 2 * n);
        out.view_mut((0, n), (n, n)).copy_from(&y[i].scale(a));
        out.view_mut((n, 0), (n, n)).copy_from(&y[i].scale(-a));
        out
    });
    let p = 4.0 - a * a * (nf * nf + 1.0);
    let disc = (16.0 + (nf * nf - 1.0).powi(2) * a.powi(4) - 8.0 * (nf * nf + 1.0) * a * a).max(0.0).sqrt();
    let beta_sq = match branch {
        Sign::Plus => (p + disc) / (2.0 * nf * nf),
        Sign::Minus => 2.0 * a.powi(4) / (p + disc),
    };
    let beta = beta_sq.sqrt();
    let alpha = -(beta_sq + a * a) / (2.0 * beta);
    let doubled: [RMatrix; 3] = std::array::from_fn(|i| real_block_diag(&[y[i].clone(), y[i].clone()]));
    let data = AdhmData::from_parts(scalar_plus(alpha, beta, &doubled), &m)?;
    let full = ReprTriple::direct_sum(&[rep.clone(), rep]);
    FamilyInstance::build("nn", &[("n", nf), ("a", a), ("branch", branch.value())], data, Generating::Spherical(full))
}

/// Charge-4 data with structure group Sp(2) and summands `{3, 1}`.
pub fn family_sp2_explicit() -> Result<FamilyInstance> {
    let (s2, s3, s32) = (2f64.sqrt(), 3f64.sqrt(), 1.5f64.sqrt());
    let q = |w: f64, x: f64, y: f64, z: f64| Quaternion::new(w, x, y, z) / s3;
    let o = Quaternion::ZERO;
    let l = QMatrix::from_rows(&[
        vec![q(s2, 0.0, 0.0, 0.0), q(0.0, -1.0 / s2, 0.0, 0.0), q(0.0, 0.0, 1.0 / s2, 0.0), o],
        vec![o, q(s32, 0.0, 0.0, 0.0), q(0.0, 0.0, 0.0, -s32), o],
    ])?;
    let pair = |r: usize| {
        let mut m = RMatrix::zeros(4, 4);
        m[(r, 3)] = 1.0 / s3;
        m[(3, r)] = 1.0 / s3;
        m
    };
    let data = AdhmData::from_parts(l, &[pair(2), pair(1), pair(0)])?;
    let rep = ReprTriple::direct_sum(&[so3_generators(), ReprTriple::trivial(1)]);
    FamilyInstance::build("sp2", &[], data, Generating::Spherical(rep))
}

/// Charge-6 data with structure group Sp(4) and summands `{3, 3}`.
pub fn family_sp4_explicit() -> Result<FamilyInstance> {
    let sp2 = family_sp2_explicit()?;
    let l2 = sp2.data.l().submatrix(0, 0, 2, 3).scale(3f64.sqrt() / 2.0);
    let l = QMatrix::block_diag(&[l2.clone(), l2]);
    let y = so3_generators().real_parts();
    let m: [RMatrix; 3] = std::array::from_fn(|i| {
        let mut out = RMatrix::zeros(6, 6);
        out.view_mut((0, 3), (3, 3)).copy_from(&y[i].scale(0.5));
        out.view_mut((3, 0), (3, 3)).copy_from(&y[i].scale(-0.5));
        out
    });
    let data = AdhmData::from_parts(l, &m)?;
    let rep = ReprTriple::direct_sum(&[so3_generators(), so3_generators()]);
    FamilyInstance::build("sp4", &[], data, Generating::Spherical(rep))
}

/// `L = I_k`, `M = 0`: charge `k` with structure group Sp(k).
pub fn family_mzero(k: usize) -> Result<FamilyInstance> {
    if k == 0 {
        return Err(Error::PreconditionFailed("k must be positive".into()));
    }
    let data = AdhmData::new(QMatrix::identity(k), QMatrix::zeros(k, k))?;
    FamilyInstance::build("mzero", &[("k", k as f64)], data, Generating::Spherical(ReprTriple::trivial(k)))
}
