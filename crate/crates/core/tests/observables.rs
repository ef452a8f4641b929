mod common;

use common::{axial_quartic, axial_rational};
use monopole_adhm::adhm::AdhmData;
use monopole_adhm::observables::{curve_determinant, rational_map, spectral_curve};
use monopole_adhm::quat::{QMatrix, RMatrix, C64};
use monopole_adhm::symmetry::{axial_data, family_axial, family_sp2_explicit, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn axial_curve_matches_quartic() {
    for a in [0.1, 0.25, 0.4, 0.5] {
        for sy in [Sign::Plus, Sign::Minus] {
            let f = family_axial(a, sy, Sign::Plus).unwrap();
            let c = spectral_curve(&f.data).unwrap();
            assert!(c.max_difference(&axial_quartic(a)) < 1e-9, "A={a}");
        }
    }
}

#[test]
fn axial_rational_map_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for a in [0.1, 0.25, 0.3, 0.4, 0.5] {
        let f = family_axial(a, Sign::Plus, Sign::Plus).unwrap();
        let r = rational_map(&f.data).unwrap();
        let s = (1.0 - 4.0 * a * a).sqrt();
        assert!((r.lambda - (1.0 - 2.0 * a * a + s) / (2.0 * a * a)).abs() < 1e-10);
        assert_eq!(r.rank, 1);
        for _ in 0..10 {
            let z = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let got = r.evaluate(z).unwrap();
            let want = axial_rational(a, z);
            assert!((got - want).norm() < 1e-10 * (1.0 + want.norm()), "A={a} z={z}: {got} vs {want}");
        }
    }
}

#[test]
fn curve_interpolation_matches_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let k = 4;
    let sym = |rng: &mut ChaCha8Rng| {
        let m = RMatrix::from_fn(k, k, |_, _| rng.gen_range(-1.0..1.0));
        (&m + m.transpose()).scale(0.5)
    };
    let parts = [sym(&mut rng), sym(&mut rng), sym(&mut rng)];
    let d = AdhmData::from_parts(QMatrix::zeros(1, k), &parts).unwrap();
    let c = spectral_curve(&d).unwrap();
    for _ in 0..20 {
        let eta = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let zeta = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let direct = curve_determinant(&d, eta, zeta).unwrap();
        let interp = c.evaluate(eta, zeta) * c.scale;
        assert!((direct - interp).norm() < 1e-9 * (1.0 + direct.norm()));
    }
}

#[test]
fn rational_map_preconditions() {
    let sp2 = family_sp2_explicit().unwrap();
    assert!(matches!(rational_map(&sp2.data), Err(monopole_adhm::error::Error::Unsupported(_))));
    let zero = axial_data(0.0, Sign::Plus, Sign::Plus).unwrap();
    assert!(rational_map(&zero).is_err());
}
