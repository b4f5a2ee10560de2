use std::sync::Arc;

use coring_kit::algebra::{check_algebra, group_algebra, Algebra, Group};
use coring_kit::comodule::{
    check_comodule, colinear_hom_basis, induced_comodule, is_cosmooth_global, is_smooth, kappa_map,
    lambda_map, Comodule,
};
use coring_kit::constructions::{
    dual_numbers_coalgebra, endomorphism_comatrix, fix_gr, fix_gr_modules, fixed_points,
    matrix_comatrix, sweedler_coring, trivial_coring,
};
use coring_kit::coring::{
    check_coring, find_cointegral, find_cosplit_element, find_frobenius_element, left_dual_ring,
    right_dual_ring, Supplement,
};
use coring_kit::linalg::{Field, Matrix};
use coring_kit::modules::{central_elements, RightModule};

fn q() -> Field {
    Field::Rational
}

#[test]
fn fix_gr_is_a_six_dimensional_coring() {
    let gc = fix_gr(q());
    assert_eq!(gc.coring.dim(), 6);
    assert!(check_coring(&gc.coring).is_pass());
    assert_eq!(central_elements(gc.coring.bimodule()).unwrap().len(), 4);
    assert_eq!(fixed_points(&gc.xs), vec![0]);
}

#[test]
fn fix_gr_delta_lies_in_the_cointegral_space() {
    let gc = fix_gr(q());
    let solution = find_cointegral(&gc.coring).unwrap().expect("coseparable");
    let delta = gc.delta_cointegral().unwrap();
    assert!(solution.contains(delta.matrix()));
}

#[test]
fn fix_gr_cosplit_and_frobenius() {
    let gc = fix_gr(q());
    let e = find_cosplit_element(&gc.coring).unwrap().expect("cosplit");
    assert_eq!(gc.coring.counit().apply(&e), gc.coring.algebra().unit());
    let delta = gc.delta_cointegral().unwrap();
    // δ(e ⊗ (1 ⊗ x)) = 1 for every x forces e = Σ_x 1 ⊗ x, which is central
    // and satisfies both identities.
    let e = find_frobenius_element(&gc.coring, &delta).unwrap().expect("Frobenius");
    let mut sum = vec![q().zero(); 6];
    for x in 0..3 {
        for (s, v) in sum.iter_mut().zip(gc.unit_at(x)) {
            *s += &v;
        }
    }
    assert_eq!(e, sum);
}

#[test]
fn fix_gr_kappa_and_smoothness() {
    let gc = fix_gr(q());
    let delta = gc.delta_cointegral().unwrap();
    let sup = Supplement::new(&gc.coring, delta, gc.unit_at(0)).unwrap();
    for (name, gm) in fix_gr_modules(&gc).unwrap() {
        let m = gc.graded_comodule(&gm).unwrap();
        assert!(check_comodule(&m).is_pass(), "{name}");
        let kappa = kappa_map(&m, &sup).unwrap();
        let mut expected = Matrix::zeros(q(), m.dim(), m.dim());
        for (i, &g) in gm.grades.iter().enumerate() {
            if g == 0 {
                expected.set(i, i, q().one());
            }
        }
        assert_eq!(kappa, expected, "{name}");
        let smooth = is_smooth(&m, &sup).unwrap().is_some();
        assert_eq!(smooth, gm.is_concentrated_in(0), "{name}");
    }
    assert!(is_cosmooth_global(&gc.coring, &sup).unwrap().is_none());
    let lambda = lambda_map(&gc.coring, &sup);
    assert_eq!(lambda.rows(), 2);
}

#[test]
fn trivial_corings_are_frobenius() {
    for a in [
        group_algebra(q(), &Group::cyclic(2)),
        Algebra::matrix_algebra(q(), 2),
        Algebra::ground(q()),
    ] {
        let c = Arc::new(trivial_coring(Arc::new(a)).unwrap());
        assert!(check_coring(&c).is_pass());
        let sol = find_cointegral(&c).unwrap().expect("coseparable");
        let e = find_frobenius_element(&c, &sol.cointegral).unwrap().expect("Frobenius");
        assert_eq!(e, c.algebra().unit());
        let sup = Supplement::new(&c, sol.cointegral.clone(), e).unwrap();
        assert!(is_cosmooth_global(&c, &sup).unwrap().is_some());
        let reg = Comodule::regular(c.clone()).unwrap();
        assert!(is_smooth(&reg, &sup).unwrap().is_some());
        assert!(check_algebra(&right_dual_ring(&c).unwrap().algebra).is_pass());
        assert!(check_algebra(&left_dual_ring(&c).unwrap().algebra).is_pass());
    }
}

#[test]
fn dual_rings_of_fix_gr_have_dimension_six() {
    let gc = fix_gr(q());
    let right = right_dual_ring(&gc.coring).unwrap();
    let left = left_dual_ring(&gc.coring).unwrap();
    assert_eq!(right.dim(), 6);
    assert_eq!(left.dim(), 6);
    let reg = Comodule::regular(gc.coring.clone()).unwrap();
    assert_eq!(colinear_hom_basis(&reg, &reg).unwrap().len(), 6);
}

#[test]
fn comatrix_fixtures_pass() {
    let (c, p) = matrix_comatrix(q(), 2).unwrap();
    assert_eq!(c.dim(), 4);
    assert!(check_coring(&c).is_pass());
    assert!(check_comodule(&p).is_pass());
    assert!(find_cointegral(&c).unwrap().is_some());

    let a = Arc::new(group_algebra(q(), &Group::cyclic(2)));
    let (c, p) = sweedler_coring(a).unwrap();
    assert_eq!(c.dim(), 4);
    assert!(check_coring(&c).is_pass());
    assert!(check_comodule(&p).is_pass());

    let (c, p) = endomorphism_comatrix(q(), 2).unwrap();
    assert!(check_coring(&c).is_pass());
    assert!(check_comodule(&p).is_pass());
}

#[test]
fn induced_comodules_pass() {
    let gc = fix_gr(q());
    let a2 = RightModule::free(gc.coring.algebra().clone(), 2);
    let m = induced_comodule(&gc.coring, &a2).unwrap();
    assert_eq!(m.dim(), 12);
    assert!(check_comodule(&m).is_pass());
}

#[test]
fn dual_numbers_are_not_coseparable() {
    let c = dual_numbers_coalgebra(q()).unwrap();
    assert!(check_coring(&c).is_pass());
    assert!(find_cointegral(&c).unwrap().is_none());
}
