mod common;

use common::{sp2_norm_sq, sp4_norm_sq};
use monopole_adhm::adhm::{random_orthogonal, random_symplectic, random_unit_quaternion, Point};
use monopole_adhm::fields::{frame_defect, kernel_defect, Fields};
use monopole_adhm::quat::Quaternion;
use monopole_adhm::symmetry::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn explicit_higgs_profiles() {
    let sp2 = Fields::new(&family_sp2_explicit().unwrap().data).unwrap();
    let sp4 = Fields::new(&family_sp4_explicit().unwrap().data).unwrap();
    for r in [0.0, 0.1, 0.5, 0.9, 0.99] {
        for dir in [[0.0, 0.0, 1.0], [0.6, 0.0, 0.8], [0.48, 0.6, 0.64]] {
            let x: Point = dir.map(|v| v * r);
            assert!((sp2.higgs_norm_sq(x).unwrap() - sp2_norm_sq(r)).abs() < 1e-12, "sp2 r={r}");
            assert!((sp4.higgs_norm_sq(x).unwrap() - sp4_norm_sq(r)).abs() < 1e-12, "sp4 r={r}");
        }
    }
}

#[test]
fn frames_are_orthonormal_kernels() {
    let f = family_n2n(3, 0.3, Sign::Plus, Sign::Minus).unwrap();
    let fields = Fields::new(&f.data).unwrap();
    for x in [[0.1, -0.2, 0.3], [0.0, 0.0, 0.95], [-0.5, 0.5, 0.5]] {
        let psi = fields.frame(x).unwrap();
        assert!(frame_defect(&psi) < 1e-12);
        assert!(kernel_defect(&f.data, x, &psi) < 1e-12);
    }
}

#[test]
fn energy_density_at_origin() {
    let sp2 = Fields::new(&family_sp2_explicit().unwrap().data).unwrap();
    let sp4 = Fields::new(&family_sp4_explicit().unwrap().data).unwrap();
    assert!((sp2.energy_density([0.0; 3], 1e-3).unwrap() - 5.0 / 6.0).abs() < 1e-5);
    assert!((sp4.energy_density([0.0; 3], 1e-3).unwrap() - 15.0 / 32.0).abs() < 1e-5);
    // the radial form agrees with the full stencil away from the origin
    for r in [0.2, 0.5, 0.8] {
        let a = sp2.energy_density([0.0, 0.0, r], 1e-3).unwrap();
        let b = sp2.energy_density_radial(r, 1e-3).unwrap();
        assert!((a - b).abs() < 1e-5 * (1.0 + a.abs()), "r={r}: {a} vs {b}");
    }
    assert!(sp2.energy_density([0.0, 0.0, 0.9995], 1e-3).is_err());
}

#[test]
fn boundary_eigenvalues_are_half_integers() {
    for f in [family_sp2_explicit().unwrap(), family_sp4_explicit().unwrap()] {
        let fields = Fields::new(&f.data).unwrap();
        for dir in [[0.0, 0.0, 1.0], [1.0, 1.0, 0.0]] {
            let b = fields.boundary_spectrum(dir, 0.02, 4).unwrap();
            for v in &b.values {
                assert!((v.abs() - 0.5).abs() < 1e-5, "{}: {:?}", f.family, b.values);
            }
        }
    }
}

#[test]
fn graded_boundary_multiplicities() {
    let expected = [(family_sp2_explicit().unwrap(), (1, 1)), (family_sp4_explicit().unwrap(), (3, 1))];
    for (f, (p, m)) in expected {
        let fields = Fields::new(&f.data).unwrap();
        let g = fields.graded_boundary(&f.generating.axis_generator(), 0.999).unwrap();
        assert!(g.commutator < 1e-10, "{}", g.commutator);
        assert_eq!((g.positive, g.negative), (p, m), "{}: {:?}", f.family, g.restricted);
    }
}

#[test]
fn bogomolny_equation_holds() {
    let fams = [
        family_mzero(1).unwrap(),
        family_sp2_explicit().unwrap(),
        family_sp4_explicit().unwrap(),
        family_axial(0.3, Sign::Plus, Sign::Plus).unwrap(),
        family_irrep(4, 0.3, Sign::Plus).unwrap(),
    ];
    for f in fams {
        let fields = Fields::new(&f.data).unwrap();
        let rep = fields.bogomolny([0.1, 0.2, 0.3], 1e-3).unwrap();
        assert!(rep.relative < 1e-4, "{}: {rep:?}", f.family);
    }
}

#[test]
fn higgs_norm_is_gauge_invariant_and_rotation_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = family_n2n(1, 0.35, Sign::Plus, Sign::Plus).unwrap();
    let base = Fields::new(&f.data).unwrap();
    let gauged = f.data.gauge_act(&random_symplectic(f.data.n(), &mut rng), &random_orthogonal(f.data.k(), &mut rng)).unwrap();
    let gauged = Fields::new(&gauged).unwrap();
    let p = random_unit_quaternion(&mut rng);
    let rotated = Fields::new(&f.data.rotate_act(p).unwrap()).unwrap();
    for x in [[0.1, 0.2, 0.3], [-0.4, 0.1, 0.7]] {
        let v = base.higgs_norm_sq(x).unwrap();
        assert!((gauged.higgs_norm_sq(x).unwrap() - v).abs() < 1e-12);
        let px = (p * Quaternion::imag(x) * p.conj()).imag_part();
        assert!((rotated.higgs_norm_sq(px).unwrap() - v).abs() < 1e-12);
    }
}
