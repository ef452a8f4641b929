//! Constraints on the structure group Sp(n) of spherically symmetric data.
//!
//! Symmetry forces `L` to intertwine `V ⊗ C²` (the complexified summands
//! twisted by the defining representation) with a quaternionic
//! representation `W` of dimension `n`. Since `L` has full row rank, every
//! irreducible of `W` must occur in `V ⊗ C²`, which bounds `n` from below.
//! For a fixed `n` each admissible `W` is tested by solving the linear
//! intertwining equations and then minimising `‖L^dagger L - M² - I‖` over
//! the symmetric ansatz.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ansatz::Ansatz;
use crate::adhm::AdhmData;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, null_space};
use crate::quat::{CMatrix, QMatrix, Quaternion, RMatrix, C64};
use crate::suirrep::{complex_irrep, conjugation_structure, decompose, real_irrep, ReprTriple};
use crate::tol;

const UPSILON: [Quaternion; 3] = [
    Quaternion::imag([0.5, 0.0, 0.0]),
    Quaternion::imag([0.0, 0.5, 0.0]),
    Quaternion::imag([0.0, 0.0, 0.5]),
];

/// `(υ_a I + Y_a)` acting on `L` from the right.
fn twisted(l: &QMatrix, y: &[RMatrix; 3], a: usize) -> QMatrix {
    &l.right_scale(UPSILON[a]) + &(l * &QMatrix::from_real(&y[a]))
}

/// The Sp(n) representation induced on the structure group by symmetric data.
#[derive(Clone, Debug)]
pub struct InducedRep {
    /// `y_a = (L L^dagger)^{-1} L (υ_a + Y_a) L^dagger`.
    pub y: [QMatrix; 3],
    /// `max_a ‖y_a L - L (υ_a + Y_a)‖_F`; zero when the data is symmetric.
    pub residual: f64,
    /// Complex `2n`-dimensional form of `y`.
    pub complex: ReprTriple,
    /// Irreducible summands of `complex`, descending.
    pub summands: Vec<usize>,
}

pub fn induced_structure_rep(d: &AdhmData, gens: &ReprTriple) -> Result<InducedRep> {
    if gens.dim() != d.k() {
        return Err(Error::DimensionMismatch(format!("representation of dimension {} for k = {}", gens.dim(), d.k())));
    }
    if !gens.is_real(tol::structural()) {
        return Err(Error::PreconditionFailed("representation must be real".into()));
    }
    let ginv = d.gram().inverse()?;
    let yr = gens.real_parts();
    let l = d.l();
    let mut residual: f64 = 0.0;
    let y: [QMatrix; 3] = std::array::from_fn(|a| {
        let t = twisted(l, &yr, a);
        let ya = &(&ginv * &t) * &l.dagger();
        residual = residual.max((&(&ya * l) - &t).frobenius_norm());
        ya
    });
    let complex = ReprTriple::new(std::array::from_fn(|a| y[a].embed()))?;
    let summands = decompose(&complex)?;
    Ok(InducedRep { y, residual, complex, summands })
}

/// Quaternionic form of the complex irrep of even dimension `m`: an
/// `m/2 × m/2` quaternionic triple whose complex embedding is `V_m`.
pub fn quaternionic_irrep(m: usize) -> Result<[QMatrix; 3]> {
    if m == 0 || m % 2 == 1 {
        return Err(Error::PreconditionFailed(format!("dimension {m} has no quaternionic form")));
    }
    let y = complex_irrep(m)?;
    let t = conjugation_structure(m)?;
    let kmap = |v: &DVector<C64>| -> DVector<C64> { &t * v.map(|z| z.conj()) };
    let mut first: Vec<DVector<C64>> = Vec::new();
    let mut span: Vec<DVector<C64>> = Vec::new();
    for r in 0..m {
        if first.len() == m / 2 {
            break;
        }
        let mut v = DVector::<C64>::zeros(m);
        v[r] = C64::new(1.0, 0.0);
        for _ in 0..2 {
            for u in &span {
                let p = u.dotc(&v);
                v -= u * p;
            }
        }
        let nrm = v.norm();
        if nrm < 1e-8 {
            continue;
        }
        let u = v / C64::new(nrm, 0.0);
        let ku = kmap(&u);
        span.push(u.clone());
        span.push(ku);
        first.push(u);
    }
    if first.len() != m / 2 {
        return Err(Error::RankDeficient(0.0));
    }
    let mut cols = first.clone();
    cols.extend(first.iter().map(kmap));
    let p = CMatrix::from_columns(&cols);
    let rep = y.conjugate_by(&p);
    let mut out = Vec::with_capacity(3);
    for g in rep.generators() {
        out.push(QMatrix::unembed(g, 1e-10)?);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// Lower and upper bounds on `n` for the given summands.
#[derive(Clone, Debug, Serialize)]
pub struct StructureGroupBounds {
    pub summands: Vec<usize>,
    pub k: usize,
    /// Complex irreducibles of `V ⊗ C²`, descending, with multiplicity.
    pub twisted_irreps: Vec<usize>,
    pub n_min: usize,
    pub n_max: usize,
}

fn complex_summands(summands: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for &s in summands {
        if s == 0 || !(s % 2 == 1 || s % 4 == 0) {
            return Err(Error::UnsupportedSummand(s));
        }
        if s % 2 == 1 {
            out.push(s);
        } else {
            out.extend([s / 2, s / 2]);
        }
    }
    Ok(out)
}

fn twisted_irreps(summands: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for m in complex_summands(summands)? {
        out.push(m + 1);
        if m > 1 {
            out.push(m - 1);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Quaternionic dimension of the smallest quaternionic representation containing `V_j`.
fn quaternionic_size(j: usize) -> usize {
    if j.is_multiple_of(2) {
        j / 2
    } else {
        j
    }
}

pub fn structure_group_bounds(summands: &[usize]) -> Result<StructureGroupBounds> {
    let tw = twisted_irreps(summands)?;
    let n_min = tw.iter().map(|&j| quaternionic_size(j)).min().unwrap_or(0);
    Ok(StructureGroupBounds { summands: summands.to_vec(), k: summands.iter().sum(), twisted_irreps: tw, n_min, n_max: summands.iter().sum() })
}

/// Quaternionic irreducible building blocks: an even `j` is quaternionic
/// itself, an odd `j` enters as `V_j ⊕ V_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Atom {
    j: usize,
}

impl Atom {
    fn size(self) -> usize {
        quaternionic_size(self.j)
    }

    fn complex_content(self) -> Vec<usize> {
        if self.j.is_multiple_of(2) {
            vec![self.j]
        } else {
            vec![self.j, self.j]
        }
    }

    fn generators(self) -> Result<[QMatrix; 3]> {
        if self.j.is_multiple_of(2) {
            quaternionic_irrep(self.j)
        } else {
            let r = real_irrep(self.j)?.real_parts();
            Ok(std::array::from_fn(|a| QMatrix::from_real(&r[a])))
        }
    }
}

fn enumerate_reps(n: usize) -> Vec<Vec<Atom>> {
    let mut atoms: Vec<Atom> = (1..=n).flat_map(|s| {
        let mut v = vec![Atom { j: 2 * s }];
        if s % 2 == 1 {
            v.push(Atom { j: s });
        }
        v
    }).collect();
    atoms.sort();
    let mut out = Vec::new();
    fn rec(atoms: &[Atom], start: usize, left: usize, cur: &mut Vec<Atom>, out: &mut Vec<Vec<Atom>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..atoms.len() {
            if atoms[i].size() <= left {
                cur.push(atoms[i]);
                rec(atoms, i, left - atoms[i].size(), cur, out);
                cur.pop();
            }
        }
    }
    rec(&atoms, 0, n, &mut Vec::new(), &mut out);
    out
}

fn is_submultiset(small: &[usize], big: &[usize]) -> bool {
    let mut pool = big.to_vec();
    for s in small {
        match pool.iter().position(|x| x == s) {
            Some(i) => {
                pool.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExclusionOptions {
    pub restarts: usize,
    pub max_iter: usize,
    pub seed: u64,
    /// Smallest residual below which a candidate counts as realisable.
    pub feasible_tol: f64,
    /// Best residual above which a candidate counts as excluded.
    pub excluded_tol: f64,
}

impl Default for ExclusionOptions {
    fn default() -> Self {
        Self { restarts: 48, max_iter: 400, seed: 0, feasible_tol: 1e-9, excluded_tol: 1e-4 }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StructureVerdict {
    /// No symmetric data with this structure group exists.
    Excluded { n: usize, reason: String, best_residual: Option<f64> },
    /// A solution of the algebraic constraints was found.
    NotExcluded { n: usize, witness: Vec<usize>, residual: f64, lldagger_min_eig: f64 },
    Inconclusive { n: usize, best_residual: f64 },
}

impl StructureVerdict {
    pub fn is_excluded(&self) -> bool {
        matches!(self, StructureVerdict::Excluded { .. })
    }
}

fn flatten(q: &QMatrix) -> Vec<f64> {
    q.entries().iter().flat_map(|e| [e.w, e.x, e.y, e.z]).collect()
}

/// Residual `L^dagger L - M² - I` as a quadratic map of the coordinates.
struct Quadratic {
    dl: usize,
    dm: usize,
    ll: Vec<Vec<Vec<f64>>>,
    mm: Vec<Vec<Vec<f64>>>,
    id: Vec<f64>,
    basis_l: Vec<QMatrix>,
}

impl Quadratic {
    fn residual(&self, x: &[f64]) -> Vec<f64> {
        let mut r: Vec<f64> = self.id.iter().map(|v| -v).collect();
        for p in 0..self.dl {
            for q in 0..self.dl {
                let c = x[p] * x[q];
                for (ri, v) in r.iter_mut().zip(&self.ll[p][q]) {
                    *ri += c * v;
                }
            }
        }
        for u in 0..self.dm {
            for v in 0..self.dm {
                let c = x[self.dl + u] * x[self.dl + v];
                for (ri, w) in r.iter_mut().zip(&self.mm[u][v]) {
                    *ri -= c * w;
                }
            }
        }
        r
    }

    fn jacobian(&self, x: &[f64]) -> RMatrix {
        let rows = self.id.len();
        let mut j = RMatrix::zeros(rows, self.dl + self.dm);
        for p in 0..self.dl {
            for q in 0..self.dl {
                for r in 0..rows {
                    j[(r, p)] += x[q] * (self.ll[p][q][r] + self.ll[q][p][r]);
                }
            }
        }
        for u in 0..self.dm {
            for v in 0..self.dm {
                for r in 0..rows {
                    j[(r, self.dl + u)] -= x[self.dl + v] * (self.mm[u][v][r] + self.mm[v][u][r]);
                }
            }
        }
        j
    }

    fn l_of(&self, x: &[f64]) -> QMatrix {
        let mut l = self.basis_l[0].scale(x[0]);
        for p in 1..self.dl {
            l = &l + &self.basis_l[p].scale(x[p]);
        }
        l
    }
}

fn levenberg_marquardt(f: &Quadratic, mut x: Vec<f64>, max_iter: usize) -> (Vec<f64>, f64) {
    let cost = |x: &[f64]| f.residual(x).iter().map(|v| v * v).sum::<f64>();
    let mut c = cost(&x);
    let mut lambda = 1e-3;
    let nv = x.len();
    for _ in 0..max_iter {
        if c < 1e-28 {
            break;
        }
        let r = DVector::from_vec(f.residual(&x));
        let j = f.jacobian(&x);
        let jt = j.transpose();
        let a = &jt * &j;
        let g = &jt * &r;
        let mut improved = false;
        while lambda < 1e12 {
            let mut damped = a.clone();
            for i in 0..nv {
                damped[(i, i)] += lambda * (a[(i, i)] + 1e-9);
            }
            let Some(step) = damped.lu().solve(&(-&g)) else {
                lambda *= 4.0;
                continue;
            };
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let ct = cost(&trial);
            if ct < c {
                x = trial;
                c = ct;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    (x, c.sqrt())
}

/// Decide whether Sp(n) can be the structure group of spherically symmetric
/// data with the given summands (standard generators).
pub fn check_structure_group(summands: &[usize], n: usize, opts: &ExclusionOptions) -> Result<StructureVerdict> {
    let bounds = structure_group_bounds(summands)?;
    if n == 0 || n > bounds.k {
        return Ok(StructureVerdict::Excluded { n, reason: format!("n must lie in 1..={}", bounds.k), best_residual: None });
    }
    let candidates: Vec<Vec<Atom>> = enumerate_reps(n)
        .into_iter()
        .filter(|w| {
            let content: Vec<usize> = w.iter().flat_map(|a| a.complex_content()).collect();
            is_submultiset(&content, &bounds.twisted_irreps)
        })
        .collect();
    if candidates.is_empty() {
        return Ok(StructureVerdict::Excluded {
            n,
            reason: format!("no quaternionic representation of dimension {n} is a quotient of {:?}", bounds.twisted_irreps),
            best_residual: None,
        });
    }
    let ansatz = Ansatz::new(summands)?;
    let k = ansatz.k();
    let yr = ansatz.generators().real_parts();
    let m_dirs: Vec<QMatrix> =
        ansatz.directions().iter().map(|d| QMatrix::from_imaginary_parts(&d.parts)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best = f64::INFINITY;
    for w in &candidates {
        let gens: Vec<[QMatrix; 3]> = w.iter().map(|a| a.generators()).collect::<Result<_>>()?;
        let wy: [QMatrix; 3] = std::array::from_fn(|a| QMatrix::block_diag(&gens.iter().map(|g| g[a].clone()).collect::<Vec<_>>()));
        // real-linear map L ↦ (y_a L - L (υ_a + Y_a))_a on R^{4nk}
        let unknowns = 4 * n * k;
        let unit = |idx: usize| {
            let mut l = QMatrix::zeros(n, k);
            let e = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K][idx % 4];
            l[((idx / 4) / k, (idx / 4) % k)] = e;
            l
        };
        let mut sys = RMatrix::zeros(3 * 4 * n * k, unknowns);
        for c in 0..unknowns {
            let l = unit(c);
            for a in 0..3 {
                let img = flatten(&(&(&wy[a] * &l) - &twisted(&l, &yr, a)));
                for (r, v) in img.iter().enumerate() {
                    sys[(a * 4 * n * k + r, c)] = *v;
                }
            }
        }
        let ns = null_space(&sys, 1e-10);
        if ns.ncols() == 0 {
            continue;
        }
        let basis_l: Vec<QMatrix> = (0..ns.ncols())
            .map(|c| QMatrix::from_fn(n, k, |r, s| {
                let b = 4 * (r * k + s);
                Quaternion::new(ns[(b, c)], ns[(b + 1, c)], ns[(b + 2, c)], ns[(b + 3, c)])
            }))
            .collect();
        let dl = basis_l.len();
        let dm = m_dirs.len();
        let ll = (0..dl).map(|p| (0..dl).map(|q| flatten(&(&basis_l[p].dagger() * &basis_l[q]))).collect()).collect();
        let mm = (0..dm).map(|u| (0..dm).map(|v| flatten(&(&m_dirs[u] * &m_dirs[v]))).collect()).collect();
        let f = Quadratic { dl, dm, ll, mm, id: flatten(&QMatrix::identity(k)), basis_l };
        for _ in 0..opts.restarts {
            let x0: Vec<f64> = (0..dl + dm).map(|_| rng.gen_range(-1.5..1.5)).collect();
            let (x, res) = levenberg_marquardt(&f, x0, opts.max_iter);
            best = best.min(res);
            if res < opts.feasible_tol {
                let l = f.l_of(&x);
                let gmin = hermitian_eigenvalues(&(&l * &l.dagger()).embed()).first().copied().unwrap_or(0.0);
                if gmin > tol::MARGIN {
                    let witness = w.iter().flat_map(|a| a.complex_content()).collect();
                    return Ok(StructureVerdict::NotExcluded { n, witness, residual: res, lldagger_min_eig: gmin });
                }
            }
        }
    }
    if best > opts.excluded_tol {
        let reason = if best.is_finite() {
            "the algebraic constraint has no solution on any admissible representation".to_string()
        } else {
            "no admissible representation admits a nonzero equivariant L".to_string()
        };
        Ok(StructureVerdict::Excluded { n, reason, best_residual: best.is_finite().then_some(best) })
    } else {
        Ok(StructureVerdict::Inconclusive { n, best_residual: best })
    }
}
