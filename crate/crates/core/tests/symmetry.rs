mod common;

use common::brute_force_count;
use monopole_adhm::adhm::AdhmData;
use monopole_adhm::quat::{QMatrix, RMatrix};
use monopole_adhm::suirrep::{so3_generators, ReprTriple};
use monopole_adhm::symmetry::*;

const CASES: [&[usize]; 8] = [&[3, 1], &[3, 3], &[5, 3], &[4], &[4, 4], &[8, 4], &[5, 1], &[3, 3, 1]];

#[test]
fn ansatz_counts_match_brute_force() {
    for s in CASES {
        assert_eq!(equivariant_triple_count(s), brute_force_count(s, false), "{s:?} before symmetry");
        assert_eq!(symmetric_parameter_count(s), brute_force_count(s, true), "{s:?} after symmetry");
        assert_eq!(Ansatz::new(s).unwrap().dimension(), symmetric_parameter_count(s), "{s:?}");
    }
}

#[test]
fn ansatz_counts_frozen() {
    assert_eq!(equivariant_triple_count(&[3, 1]), 3);
    assert_eq!(equivariant_triple_count(&[3, 3]), 4);
    assert_eq!(equivariant_triple_count(&[4]), 4);
    let post: Vec<usize> = [&[3, 1][..], &[3, 3], &[5, 3], &[4], &[4, 4], &[8, 4]].iter().map(|s| symmetric_parameter_count(s)).collect();
    assert_eq!(post, vec![1, 1, 1, 3, 10, 10]);
}

#[test]
fn ansatz_rejects_even_summands() {
    assert!(matches!(Ansatz::new(&[2]), Err(monopole_adhm::error::Error::UnsupportedSummand(2))));
    assert!(matches!(Ansatz::new(&[6, 1]), Err(monopole_adhm::error::Error::UnsupportedSummand(6))));
}

#[test]
fn named_parameters() {
    let spec = AnsatzSpec { summands: vec![3, 1], params: [("a".to_string(), 0.5)].into() };
    let (m, ans) = structure_ansatz(&spec).unwrap();
    assert_eq!(ans.labels(), vec!["lambda_1_2".to_string()]);
    assert!(m.max_abs() > 0.0);
    let bad = AnsatzSpec { summands: vec![4], params: [("a".to_string(), 0.5)].into() };
    assert!(structure_ansatz(&bad).is_err());
}

#[test]
fn ansatz_reproduces_explicit_sp2_up_to_gauge() {
    let sp2 = family_sp2_explicit().unwrap();
    let ans = Ansatz::with_blocks(vec![so3_generators(), ReprTriple::trivial(1)]).unwrap();
    let m = QMatrix::from_imaginary_parts(&ans.assemble(&[1.0 / 3f64.sqrt()]).unwrap()).unwrap();
    let mut q = RMatrix::identity(4, 4);
    q[(3, 3)] = -1.0;
    let gauged = AdhmData::new(QMatrix::zeros(1, 4), m).unwrap().gauge_act(&QMatrix::identity(1), &q).unwrap();
    assert!(gauged.m().max_abs_diff(sp2.data.m()) < 1e-14);
}

#[test]
fn induced_structure_representations() {
    let sp2 = family_sp2_explicit().unwrap();
    let Generating::Spherical(rep) = &sp2.generating else { panic!() };
    let ind = induced_structure_rep(&sp2.data, rep).unwrap();
    assert!(ind.residual < 1e-12);
    assert_eq!(ind.summands, vec![4]);

    let sp4 = family_sp4_explicit().unwrap();
    let Generating::Spherical(rep) = &sp4.generating else { panic!() };
    let ind = induced_structure_rep(&sp4.data, rep).unwrap();
    assert!(ind.residual < 1e-12);
    assert_eq!(ind.summands, vec![4, 4]);
}

#[test]
fn structure_group_exclusions() {
    let opts = ExclusionOptions::default();
    let v = check_structure_group(&[3, 1], 1, &opts).unwrap();
    println!("{v:?}");
    assert!(v.is_excluded());
    let v = check_structure_group(&[3, 1], 2, &opts).unwrap();
    assert!(matches!(v, StructureVerdict::NotExcluded { .. }), "{v:?}");
    assert!(check_structure_group(&[4], 1, &opts).unwrap().is_excluded());
    let v = check_structure_group(&[4], 2, &opts).unwrap();
    println!("{v:?}");
    assert!(v.is_excluded(), "{v:?}");
    for n in 1..3 {
        assert!(check_structure_group(&[7, 9], n, &opts).unwrap().is_excluded());
    }
    assert_eq!(structure_group_bounds(&[7, 9]).unwrap().n_min, 3);
}
