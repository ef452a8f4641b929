//! General symmetric `M` for a given decomposition of the real `k`-dimensional
//! representation into irreducible summands.
//!
//! Each pair of summands `(a, b)` contributes a fixed set of directions:
//!
//! | summands                    | block `(a, b)`          | block `(b, a)`  | count |
//! |-----------------------------|-------------------------|-----------------|-------|
//! | odd, `n_a = n_b + 2`        | `λ B`                   | `λ Bᵀ`          | 1     |
//! | odd, `n_a = n_b ≥ 3`, a ≠ b | `λ Y`                   | `-λ Y`          | 1     |
//! | `4 | n_a`, a = b            | `Y X_r`, r = 1..3       |                 | 3     |
//! | `4 | n_a = n_b`, a ≠ b      | `Y`, `Y X_r`            | `-Y`, `Y X_r`   | 4     |
//! | `4 | n_b`, `n_a = n_b + 4`  | 4-dim real span         | transpose       | 4     |
//!
//! Blocks are ordered by descending dimension.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bweb::{compute_b_with, realize_b_real_with};
use crate::error::{Error, Result};
use crate::linalg::null_space;
use crate::quat::{CMatrix, QMatrix, RMatrix, C64};
use crate::suirrep::{commutant_basis, decompose, quaternionic_frame, real_irrep, ReprTriple};

/// Summand dimensions plus named coefficients for the directions of the ansatz.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub summands: Vec<usize>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

/// One free direction: the three real `k × k` components it contributes to `M`.
#[derive(Clone, Debug)]
pub struct AnsatzDirection {
    pub label: String,
    pub parts: [RMatrix; 3],
}

#[derive(Clone, Debug)]
pub struct Ansatz {
    summands: Vec<usize>,
    offsets: Vec<usize>,
    blocks: Vec<ReprTriple>,
    generators: ReprTriple,
    directions: Vec<AnsatzDirection>,
}

fn check_summand(n: usize) -> Result<()> {
    if n == 0 || !(n % 2 == 1 || n.is_multiple_of(4)) {
        return Err(Error::UnsupportedSummand(n));
    }
    Ok(())
}

impl Ansatz {
    /// Ansatz for the standard real irreducible generators of each summand.
    pub fn new(summands: &[usize]) -> Result<Self> {
        let blocks = summands.iter().map(|&n| check_summand(n).and_then(|_| real_irrep(n))).collect::<Result<Vec<_>>>()?;
        Self::with_blocks(blocks)
    }

    /// Ansatz for user-supplied real irreducible generators. Summands of
    /// dimension divisible by four must use the standard generators, and
    /// summands of equal dimension must share generators.
    pub fn with_blocks(mut blocks: Vec<ReprTriple>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::PreconditionFailed("at least one summand is required".into()));
        }
        for b in &blocks {
            check_summand(b.dim())?;
            if !b.is_real(1e-12) {
                return Err(Error::PreconditionFailed("generators must be real".into()));
            }
            let expected = if b.dim() % 2 == 1 { vec![b.dim()] } else { vec![b.dim() / 2; 2] };
            if decompose(b)? != expected {
                return Err(Error::NotIrreducible(format!("summand of dimension {}", b.dim())));
            }
            if b.dim() % 4 == 0 {
                let std = real_irrep(b.dim())?;
                if max_gen_diff(b, &std) > 1e-12 {
                    return Err(Error::PreconditionFailed(format!(
                        "summand of dimension {} must use the standard generators",
                        b.dim()
                    )));
                }
            }
        }
        blocks.sort_by_key(|b| std::cmp::Reverse(b.dim()));
        for w in blocks.windows(2) {
            if w[0].dim() == w[1].dim() && max_gen_diff(&w[0], &w[1]) > 1e-12 {
                return Err(Error::PreconditionFailed("equal summands must share generators".into()));
            }
        }
        let summands: Vec<usize> = blocks.iter().map(|b| b.dim()).collect();
        let mut offsets = Vec::with_capacity(summands.len());
        let mut acc = 0;
        for &n in &summands {
            offsets.push(acc);
            acc += n;
        }
        let generators = ReprTriple::direct_sum(&blocks);
        let mut out = Self { summands, offsets, blocks, generators, directions: Vec::new() };
        out.directions = out.build_directions()?;
        Ok(out)
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn k(&self) -> usize {
        self.summands.iter().sum()
    }

    pub fn generators(&self) -> &ReprTriple {
        &self.generators
    }

    pub fn directions(&self) -> &[AnsatzDirection] {
        &self.directions
    }

    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.directions.iter().map(|d| d.label.clone()).collect()
    }

    /// Real components of `M = Σ c_d · direction_d`.
    pub fn assemble(&self, coeffs: &[f64]) -> Result<[RMatrix; 3]> {
        if coeffs.len() != self.directions.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} directions",
                coeffs.len(),
                self.directions.len()
            )));
        }
        let k = self.k();
        let mut parts: [RMatrix; 3] = std::array::from_fn(|_| RMatrix::zeros(k, k));
        for (c, d) in coeffs.iter().zip(&self.directions) {
            for a in 0..3 {
                parts[a] += d.parts[a].scale(*c);
            }
        }
        Ok(parts)
    }

    /// `M` from named coefficients; missing names are zero. When the ansatz
    /// has a single direction it may also be addressed as `a`.
    pub fn assemble_named(&self, params: &BTreeMap<String, f64>) -> Result<QMatrix> {
        let labels = self.labels();
        let mut coeffs = vec![0.0; labels.len()];
        for (name, &v) in params {
            if let Some(i) = labels.iter().position(|l| l == name) {
                coeffs[i] = v;
            } else if name == "a" && labels.len() == 1 {
                coeffs[0] = v;
            } else {
                return Err(Error::PreconditionFailed(format!(
                    "unknown parameter {name:?}; expected one of {labels:?}"
                )));
            }
        }
        QMatrix::from_imaginary_parts(&self.assemble(&coeffs)?)
    }

    fn embed_pair(&self, a: usize, b: usize, ab: &[RMatrix; 3], ba: Option<&[RMatrix; 3]>) -> [RMatrix; 3] {
        let k = self.k();
        std::array::from_fn(|i| {
            let mut m = RMatrix::zeros(k, k);
            m.view_mut((self.offsets[a], self.offsets[b]), ab[i].shape()).copy_from(&ab[i]);
            if let Some(ba) = ba {
                m.view_mut((self.offsets[b], self.offsets[a]), ba[i].shape()).copy_from(&ba[i]);
            }
            m
        })
    }

    fn build_directions(&self) -> Result<Vec<AnsatzDirection>> {
        let mut out = Vec::new();
        let p = self.summands.len();
        for a in 0..p {
            for b in a..p {
                let (na, nb) = (self.summands[a], self.summands[b]);
                let (ya, yb) = (self.blocks[a].real_parts(), self.blocks[b].real_parts());
                let tag = |s: &str| format!("{s}_{}_{}", a + 1, b + 1);
                if na % 2 == 1 && nb % 2 == 1 {
                    if na == nb + 2 {
                        let bt = realize_b_real_with(&self.blocks[a], &self.blocks[b])?.real_parts();
                        let btt = bt.clone().map(|m| m.transpose());
                        out.push(AnsatzDirection { label: tag("lambda"), parts: self.embed_pair(a, b, &bt, Some(&btt)) });
                    } else if na == nb && na >= 3 && a != b {
                        let neg = ya.clone().map(|m| -m);
                        out.push(AnsatzDirection { label: tag("lambda"), parts: self.embed_pair(a, b, &ya, Some(&neg)) });
                    }
                } else if na % 4 == 0 && nb % 4 == 0 {
                    let x = commutant_basis(na)?;
                    if a == b {
                        for r in 1..4 {
                            let m = ya.clone().map(|y| &y * &x[r]);
                            out.push(AnsatzDirection {
                                label: format!("kappa_{}_{}", a + 1, r),
                                parts: self.embed_pair(a, a, &m, None),
                            });
                        }
                    } else if na == nb {
                        for r in 0..4 {
                            let (ab, ba) = if r == 0 {
                                (ya.clone(), ya.clone().map(|y| -y))
                            } else {
                                let m = ya.clone().map(|y| &y * &x[r]);
                                (m.clone(), m)
                            };
                            out.push(AnsatzDirection {
                                label: format!("kappa_{}_{}_{}", a + 1, b + 1, r),
                                parts: self.embed_pair(a, b, &ab, Some(&ba)),
                            });
                        }
                    } else if na == nb + 4 {
                        for (r, ab) in quaternionic_step_intertwiners(na, nb, &ya, &yb)?.into_iter().enumerate() {
                            let ba = ab.clone().map(|m| m.transpose());
                            out.push(AnsatzDirection {
                                label: format!("kappa_{}_{}_{}", a + 1, b + 1, r),
                                parts: self.embed_pair(a, b, &ab, Some(&ba)),
                            });
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

fn max_gen_diff(x: &ReprTriple, y: &ReprTriple) -> f64 {
    (0..3).map(|a| crate::linalg::max_abs(&(x.generator(a) - y.generator(a)))).fold(0.0, f64::max)
}

/// Real `n_a × n_b` intertwining triples between the standard real irreps of
/// dimensions `n_a = n_b + 4` (both divisible by four), as the real subspace
/// of `U_a^dagger (E ⊗ B) U_b` over all complex 2×2 matrices `E`.
fn quaternionic_step_intertwiners(na: usize, nb: usize, ya: &[RMatrix; 3], yb: &[RMatrix; 3]) -> Result<Vec<[RMatrix; 3]>> {
    let (fa, fb) = (quaternionic_frame(na)?, quaternionic_frame(nb)?);
    let bt = compute_b_with(&fa.half, &fb.half, 0.0)?;
    let (ha, hb) = (na / 2, nb / 2);
    let mut cands: Vec<[CMatrix; 3]> = Vec::with_capacity(8);
    for r in 0..4 {
        for phase in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
            cands.push(std::array::from_fn(|i| {
                let mut e = CMatrix::zeros(na, nb);
                let (br, bc) = (r / 2, r % 2);
                e.view_mut((br * ha, bc * hb), (ha, hb)).copy_from(&(&bt.b[i] * phase));
                fa.u.adjoint() * e * &fb.u
            }));
        }
    }
    let rows = 3 * na * nb;
    let sys = RMatrix::from_fn(rows, cands.len(), |r, c| {
        let (i, rest) = (r / (na * nb), r % (na * nb));
        cands[c][i][(rest / nb, rest % nb)].im
    });
    let ns = null_space(&sys, 1e-10);
    if ns.ncols() != 4 {
        return Err(Error::ConstructionInvalid(format!("expected 4 real intertwiners, found {}", ns.ncols())));
    }
    let mut out = Vec::with_capacity(4);
    for col in 0..4 {
        let parts: [RMatrix; 3] = std::array::from_fn(|i| {
            let mut m = RMatrix::zeros(na, nb);
            for (c, cand) in cands.iter().enumerate() {
                m += cand[i].map(|z| z.re).scale(ns[(c, col)]);
            }
            m
        });
        let resid = crate::symmetry::spherical_residual_parts_rect(&parts, ya, yb);
        if resid > 1e-9 {
            return Err(Error::ConstructionInvalid(format!("intertwiner residual {resid:.3e}")));
        }
        out.push(parts);
    }
    Ok(out)
}

/// Dimension of all real triples `X` with `[Y_a, X_b] = ε_abc X_c`, before
/// imposing symmetry of the blocks: the number of trivial summands of
/// `End(V) ⊗ R³`.
pub fn equivariant_triple_count(summands: &[usize]) -> usize {
    let mut n = 0;
    for &a in summands {
        for &b in summands {
            let odd = a % 2 == 1 && b % 2 == 1;
            let quat = a % 4 == 0 && b % 4 == 0;
            if odd && (a.abs_diff(b) == 2 || (a == b && a >= 3)) {
                n += 1;
            }
            if quat && (a == b || a.abs_diff(b) == 4) {
                n += 4;
            }
        }
    }
    n
}

/// Number of free real parameters in the symmetric ansatz.
pub fn symmetric_parameter_count(summands: &[usize]) -> usize {
    let mut n = 0;
    for (i, &a) in summands.iter().enumerate() {
        for (j, &b) in summands.iter().enumerate().skip(i) {
            let odd = a % 2 == 1 && b % 2 == 1;
            let quat = a % 4 == 0 && b % 4 == 0;
            if odd && (a.abs_diff(b) == 2 || (a == b && a >= 3 && i != j)) {
                n += 1;
            }
            if quat {
                if i == j {
                    n += 3;
                } else if a == b || a.abs_diff(b) == 4 {
                    n += 4;
                }
            }
        }
    }
    n
}

/// Build `M` from named parameters, returning it with the ansatz used.
pub fn structure_ansatz(spec: &AnsatzSpec) -> Result<(QMatrix, Ansatz)> {
    let ans = Ansatz::new(&spec.summands)?;
    let m = ans.assemble_named(&spec.params)?;
    Ok((m, ans))
}
