//! End-to-end pipeline checks on the larger algebras, pinned to the
//! transcript invariants.

use liecert::liealg::{build_algebra, LieAlgebra};
use liecert::propp::{verify_orbit, CheckMethod, MatrixVerdict, VerifyOptions};
use liecert::ratmat::Subspace;
use liecert::rootsystem::{build_root_system, SimpleType};
use liecert::sl2::Characteristic;
use liecert::subalg;

fn algebra(name: &str) -> LieAlgebra {
    build_algebra(build_root_system(SimpleType::parse(name).unwrap()))
}

#[test]
fn e7_orbit5_parametric_three_by_six() {
    let lie = algebra("E7");
    let c = Characteristic {
        labels: vec![0, 0, 0, 2, 0, 0, 2],
    };
    let out = verify_orbit(&lie, &c, VerifyOptions::default()).unwrap();
    assert_eq!(out.dim_centralizer, 21);
    assert_eq!(out.dim_centre, 4);
    assert_eq!(out.centre_weights, vec![2, 10, 10, 10]);
    assert_eq!(out.m_r, 10);
    assert!(out.property_holds);
    let checks: Vec<_> = out.nontrivial_checks().collect();
    assert_eq!(checks.len(), 1);
    assert_eq!((checks[0].m_i, checks[0].m_k), (10, Some(2)));
    assert_eq!(
        (checks[0].rows, checks[0].cols, checks[0].num_params),
        (3, 6, 3)
    );
    assert_eq!(checks[0].method, CheckMethod::Groebner);
    assert_eq!(checks[0].verdict, MatrixVerdict::SurjectiveAll);
    // Neutral element coordinates, as a multiset.
    let coords = liecert::sl2::cartan_coordinate_multiset(&lie, &out.triple.h);
    let mut expect: Vec<_> = [10, 15, 20, 30, 23, 16, 9]
        .iter()
        .map(|&n| liecert::ratmat::rat_int(n))
        .collect();
    expect.sort();
    assert_eq!(coords, expect);
}

#[test]
fn e8_orbit10_parametric_four_by_ten() {
    let lie = algebra("E8");
    let c = Characteristic {
        labels: vec![0, 0, 0, 0, 2, 0, 0, 0],
    };
    let out = verify_orbit(&lie, &c, VerifyOptions::default()).unwrap();
    assert_eq!(out.dim_centralizer, 40);
    assert_eq!(out.dim_centre, 5);
    assert_eq!(out.centre_weights, vec![2, 10, 10, 10, 10]);
    assert_eq!(out.m_r, 10);
    assert!(out.property_holds);
    let checks: Vec<_> = out.nontrivial_checks().collect();
    assert_eq!(checks.len(), 1);
    assert_eq!((checks[0].m_i, checks[0].m_k), (10, Some(2)));
    assert_eq!(
        (checks[0].rows, checks[0].cols, checks[0].num_params),
        (4, 10, 4)
    );
    assert_eq!(checks[0].verdict, MatrixVerdict::SurjectiveAll);
}

#[test]
fn e6_orbit1_subspace_examples() {
    // Centralizer kernel dimension, top-weight intersection, and the
    // one-row completion from the worked example.
    let lie = algebra("E6");
    let c = Characteristic {
        labels: vec![2, 2, 2, 0, 2, 2],
    };
    let out = verify_orbit(&lie, &c, VerifyOptions::default()).unwrap();
    let ge = subalg::centralizer(&lie, &out.triple.e);
    assert_eq!(ge.dim(), 8);

    // g^e intersected with the full weight-16 coordinate space has dim 1.
    let weights = lie.ad_h_weights(&out.triple.h).unwrap();
    let rows: Vec<Vec<_>> = (0..lie.dim())
        .filter(|&i| weights[i] == 16)
        .map(|i| liecert::liealg::Element::basis_vector(i).to_dense(lie.dim()))
        .collect();
    let g16 = Subspace::from_rows(lie.dim(), liecert::ratmat::QMatrix::from_rows(rows));
    let cap = ge.intersect(&g16).unwrap();
    assert_eq!(cap.dim(), 1);

    // z cap g^e_10 is a line inside the 2-dimensional g^e_10: one
    // completion row.
    let z = subalg::lie_centre(&lie, &ge).unwrap();
    let zg = subalg::grade_by_h(&lie, &out.triple.h, &z).unwrap();
    let geg = subalg::grade_by_h(&lie, &out.triple.h, &ge).unwrap();
    let inner = zg.piece_subspace(10);
    let outer = geg.piece_subspace(10);
    assert_eq!((inner.dim(), outer.dim()), (1, 2));
    let completion = Subspace::extend_basis(&inner, &outer).unwrap();
    assert_eq!(completion.rows(), 1);
}
