use std::sync::Arc;

use coring_kit::algebra::{group_algebra, Algebra, GradedAlgebra, Group};
use coring_kit::comodule::{
    adjunction_iso, check_comodule, colinear_hom_basis, induced_comodule, is_colinear,
    is_cosmooth_global, is_relative_injective, kappa_map, lambda_map, nu_map, r_map, r_regular,
    Comodule,
};
use coring_kit::constructions::{
    fix_gr, fix_gr_modules, fixed_points, grading_coring, matrix_comatrix, trivial_coring, GSet,
    GradedModule,
};
use coring_kit::coring::{
    check_cointegral, check_coring, find_cointegral, find_cosplit_element, find_frobenius_element,
    is_central, is_frobenius_element, left_dual_ring, right_dual_ring, Supplement,
};
use coring_kit::linalg::{combine, inverse, Field, Matrix, Scalar};
use coring_kit::modules::{
    associator, bimodule_map_basis, induced_map, right_linear_hom_basis, simple_tensor, unit_iso,
    Bimodule, RightModule, TensorSpace, UnitSide,
};

fn q() -> Field {
    Field::Rational
}

fn kc2() -> Arc<Algebra> {
    Arc::new(group_algebra(q(), &Group::cyclic(2)))
}

/// A fixed nontrivial combination of a hom basis.
fn some_map(basis: &[Matrix], rows: usize, cols: usize, salt: i64) -> Matrix {
    let coeffs: Vec<Scalar> = (0..basis.len())
        .map(|i| q().int((i as i64 * 3 + salt) % 5 - 2))
        .collect();
    combine(q(), basis, &coeffs, rows, cols)
}

#[test]
fn simple_tensors_are_balanced_and_bilinear() {
    let a = kc2();
    let m = RightModule::free(a.clone(), 2);
    let c = Bimodule::regular(a.clone());
    let t = TensorSpace::pair(&m, &c).unwrap();
    let zero = vec![q().zero(); 2];
    let v = q().vector(&[1, -2, 0, 3]);
    assert!(simple_tensor(&t, &v, &zero).iter().all(Scalar::is_zero));
    for k in 0..a.dim() {
        let n = q().vector(&[2, 5]);
        let va = m.action(k).apply(&v);
        let an = c.left_action(k).apply(&n);
        assert_eq!(simple_tensor(&t, &va, &n), simple_tensor(&t, &v, &an));
    }
}

#[test]
fn induced_maps_are_functorial() {
    let a = kc2();
    let m = RightModule::free(a.clone(), 2);
    let c = Bimodule::regular(a.clone());
    let t = TensorSpace::pair(&m, &c).unwrap();
    let id_m = Matrix::identity(q(), 4);
    let id_c = Matrix::identity(q(), 2);
    assert!(induced_map(&t, &t, &[&id_m, &id_c]).unwrap().is_identity());

    let fs = right_linear_hom_basis(&m, &m).unwrap();
    let gs = bimodule_map_basis(&c, &c).unwrap();
    let (f1, f2) = (some_map(&fs, 4, 4, 1), some_map(&fs, 4, 4, 2));
    let (g1, g2) = (some_map(&gs, 2, 2, 3), some_map(&gs, 2, 2, 4));
    let composite = induced_map(&t, &t, &[&(&f2 * &f1), &(&g2 * &g1)]).unwrap();
    let stepwise = induced_map(&t, &t, &[&f2, &g2]).unwrap() * induced_map(&t, &t, &[&f1, &g1]).unwrap();
    assert_eq!(composite, stepwise);
}

#[test]
fn unit_identification_is_natural() {
    let k = Arc::new(Algebra::ground(q()));
    let m = RightModule::free(k.clone(), 3);
    let t = TensorSpace::pair(&m, &Bimodule::regular(k)).unwrap();
    let (fwd, inv) = unit_iso(&t, UnitSide::Right).unwrap();
    assert!(fwd.is_identity() && inv.is_identity());

    let a = kc2();
    let m = RightModule::free(a.clone(), 2);
    let n = RightModule::regular(a.clone());
    let reg = Bimodule::regular(a.clone());
    let tm = TensorSpace::pair(&m, &reg).unwrap();
    let tn = TensorSpace::pair(&n, &reg).unwrap();
    let (um, um_inv) = unit_iso(&tm, UnitSide::Right).unwrap();
    let (un, _) = unit_iso(&tn, UnitSide::Right).unwrap();
    assert!((&um * &um_inv).is_identity() && (&um_inv * &um).is_identity());
    let f = some_map(&right_linear_hom_basis(&m, &n).unwrap(), 2, 4, 1);
    let f_a = induced_map(&tm, &tn, &[&f, &Matrix::identity(q(), 2)]).unwrap();
    assert_eq!(&f * &um, &un * &f_a);
}

#[test]
fn associator_round_trips_on_the_triple_product() {
    let gc = fix_gr(q());
    let c = &gc.coring;
    let flat = c.triple_space();
    let inner = c.pair_space();
    let nested = TensorSpace::pair(&inner.as_bimodule().unwrap(), c.bimodule()).unwrap();
    let (to_flat, to_nested) = associator(flat, inner, &nested).unwrap();
    assert!((&to_flat * &to_nested).is_identity());
    assert!((&to_nested * &to_flat).is_identity());
}

#[test]
fn trivial_coring_examples() {
    let a = kc2();
    let c = Arc::new(trivial_coring(a.clone()).unwrap());
    assert_eq!(right_dual_ring(&c).unwrap().dim(), a.dim());
    assert_eq!(left_dual_ring(&c).unwrap().dim(), a.dim());
    let sol = find_cointegral(&c).unwrap().unwrap();
    // δ(a_i ⊗ a_j) = a_i a_j.
    let on_pairs = sol.cointegral.on_raw_pairs(&c);
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(on_pairs.column(i * 2 + j), a.product(i, j).to_vec());
        }
    }
    let reg = Comodule::regular(c.clone()).unwrap();
    assert_eq!(colinear_hom_basis(&reg, &reg).unwrap().len(), a.dim());
    let h = is_relative_injective(&reg).unwrap().unwrap();
    assert_eq!(Some(h), inverse(reg.coaction()));

    let m = induced_comodule(&c, &RightModule::free(a.clone(), 2)).unwrap();
    let nu = nu_map(&m, &sol.cointegral).unwrap();
    assert_eq!(nu, unit_iso(m.tensor_space(), UnitSide::Right).unwrap().0);

    let sup = Supplement::new(&c, sol.cointegral, a.unit().to_vec()).unwrap();
    assert_eq!(&lambda_map(&c, &sup), c.counit());
    assert!(kappa_map(&m, &sup).unwrap().is_identity());
    for n in [RightModule::regular(a.clone()), RightModule::free(a.clone(), 2)] {
        assert!(r_map(&c, &sup, &n).unwrap().is_identity());
    }
}

#[test]
fn fix_mat_cointegral_and_frobenius_verify() {
    let (c, p) = matrix_comatrix(q(), 2).unwrap();
    let sol = find_cointegral(&c).unwrap().expect("feasible");
    assert!(check_cointegral(&c, sol.cointegral.matrix()).unwrap().is_pass());
    if let Some(e) = find_frobenius_element(&c, &sol.cointegral).unwrap() {
        assert!(is_frobenius_element(&c, &sol.cointegral, &e));
    }
    assert!(is_relative_injective(&p).unwrap().is_some());
}

#[test]
fn cosplit_fails_when_the_counit_kills_central_elements() {
    // Over F_2, kC2 ⊗ k{x, y} with a free orbit: the central elements are
    // spanned by a ⊗ x + a ⊗ y, whose counit is 2a = 0.
    let f2 = Field::prime(2).unwrap();
    let group = Arc::new(Group::cyclic(2));
    let ga = GradedAlgebra::group_algebra(f2, group.clone());
    let gc = grading_coring(&ga, &GSet::regular(group)).unwrap();
    assert!(check_coring(&gc.coring).is_pass());
    assert!(find_cosplit_element(&gc.coring).unwrap().is_none());
    assert!(fixed_points(&gc.xs).is_empty());
}

#[test]
fn induced_comodule_examples() {
    let gc = fix_gr(q());
    let c = &gc.coring;
    let a = c.algebra().clone();
    let induced = induced_comodule(c, &RightModule::regular(a.clone())).unwrap();
    let reg = Comodule::regular(c.clone()).unwrap();
    let iso = &c.left_unit().0;
    assert!(inverse(iso).is_some());
    assert!(is_colinear(iso, &induced, &reg).unwrap());
    let zero = induced_comodule(c, &RightModule::zero(a)).unwrap();
    assert_eq!(zero.dim(), 0);
    assert!(check_comodule(&zero).is_pass());
}

#[test]
fn colinear_maps_preserve_grades() {
    let gc = fix_gr(q());
    let modules = fix_gr_modules(&gc).unwrap();
    let get = |name: &str| {
        let gm = &modules.iter().find(|(n, _)| n == name).unwrap().1;
        gc.graded_comodule(gm).unwrap()
    };
    let (mz, mx) = (get("Mz"), get("Mx"));
    assert!(colinear_hom_basis(&mz, &mx).unwrap().is_empty());
    assert!(colinear_hom_basis(&mx, &mz).unwrap().is_empty());
    // Left multiplication by g moves grade x to grade y, so only scalars survive.
    assert_eq!(colinear_hom_basis(&mx, &mx).unwrap().len(), 1);
}

#[test]
fn adjunction_round_trips() {
    let gc = fix_gr(q());
    let c = &gc.coring;
    let a = RightModule::regular(c.algebra().clone());
    let reg = Comodule::regular(c.clone()).unwrap();
    let adj = adjunction_iso(&reg, &a).unwrap();
    assert_eq!(adj.colinear_basis.len(), adj.linear_basis.len());
    assert!((&adj.forward * &adj.backward).is_identity());
    assert!((&adj.backward * &adj.forward).is_identity());
    for (_, gm) in fix_gr_modules(&gc).unwrap() {
        let m = gc.graded_comodule(&gm).unwrap();
        let adj = adjunction_iso(&m, &RightModule::free(c.algebra().clone(), 2)).unwrap();
        assert!((&adj.forward * &adj.backward).is_identity());
        assert!((&adj.backward * &adj.forward).is_identity());
    }
}

#[test]
fn nu_retracts_every_coaction_over_fix_gr() {
    let gc = fix_gr(q());
    let delta = gc.delta_cointegral().unwrap();
    let reg = Comodule::regular(gc.coring.clone()).unwrap();
    let nu = nu_map(&reg, &delta).unwrap();
    assert!((&nu * gc.coring.coproduct()).is_identity());
    for (name, gm) in fix_gr_modules(&gc).unwrap() {
        let m = gc.graded_comodule(&gm).unwrap();
        let nu = nu_map(&m, &delta).unwrap();
        assert!((&nu * m.coaction()).is_identity(), "{name}");
        let induced = induced_comodule(&gc.coring, m.module()).unwrap();
        assert!(is_colinear(&nu, &induced, &m).unwrap(), "{name}");
    }
}

#[test]
fn lambda_and_r_on_fix_gr() {
    let gc = fix_gr(q());
    let c = &gc.coring;
    let delta = gc.delta_cointegral().unwrap();
    let z = 0;
    let sup = Supplement::new(c, delta.clone(), gc.unit_at(z)).unwrap();
    // λ(a ⊗ x) = a δ_{z,x}; r_A projects onto the z-component.
    let lambda = lambda_map(c, &sup);
    let r = r_regular(c, &sup).unwrap();
    let mut projection = Matrix::zeros(q(), 6, 6);
    for i in 0..2 {
        for x in 0..3 {
            let expected = if x == z {
                q().unit_vector(2, i)
            } else {
                vec![q().zero(); 2]
            };
            assert_eq!(lambda.column(i * 3 + x), expected);
            if x == z {
                projection.set(i * 3 + x, i * 3 + x, q().one());
            }
        }
    }
    assert_eq!(r, projection);
    let a = RightModule::regular(c.algebra().clone());
    r_map(c, &sup, &a).unwrap();

    let zero = Supplement::new(c, delta.clone(), vec![q().zero(); 6]).unwrap();
    assert!(lambda_map(c, &zero).is_zero());

    let e = find_frobenius_element(c, &delta).unwrap().unwrap();
    let frob = Supplement::new(c, delta, e).unwrap();
    assert_eq!(&lambda_map(c, &frob), c.counit());
    for (_, gm) in fix_gr_modules(&gc).unwrap() {
        assert!(r_map(c, &frob, &gm.module).unwrap().is_identity());
        let m = gc.graded_comodule(&gm).unwrap();
        assert!(kappa_map(&m, &frob).unwrap().is_identity());
    }
    assert_eq!(&is_cosmooth_global(c, &frob).unwrap().unwrap(), c.counit());
}

#[test]
fn kappa_of_the_zero_comodule_is_empty() {
    let gc = fix_gr(q());
    let sup = Supplement::new(&gc.coring, gc.delta_cointegral().unwrap(), gc.unit_at(0)).unwrap();
    let m = gc.graded_comodule(&GradedModule::zero(&gc)).unwrap();
    assert_eq!(kappa_map(&m, &sup).unwrap().shape(), (0, 0));
}

#[test]
fn grading_coring_edge_cases() {
    let c2 = Arc::new(Group::cyclic(2));
    let ga = GradedAlgebra::group_algebra(q(), c2.clone());
    // One fixed point: the trivial coring of A.
    let gc = grading_coring(&ga, &GSet::trivial(c2.clone(), 1)).unwrap();
    assert_eq!(gc.coring.dim(), 2);
    assert!(check_coring(&gc.coring).is_pass());
    assert_eq!(fixed_points(&gc.xs), vec![0]);
    let e = gc.unit_at(0);
    assert!(is_central(&gc.coring, &e));
    assert_eq!(gc.coring.counit().apply(&e), gc.coring.algebra().unit());

    // Trivial group: any X, every grade assignment is a grading.
    let trivial = Arc::new(Group::trivial());
    let a = Arc::new(Algebra::matrix_algebra(q(), 2));
    let ga = GradedAlgebra::trivially_graded(a.clone(), trivial.clone());
    let xs = GSet::trivial(trivial, 2);
    assert_eq!(fixed_points(&xs), vec![0, 1]);
    let gc = grading_coring(&ga, &xs).unwrap();
    assert_eq!(gc.coring.dim(), 8);
    assert!(check_coring(&gc.coring).is_pass());
    let sol = find_cointegral(&gc.coring).unwrap().unwrap();
    assert!(sol.contains(gc.delta_cointegral().unwrap().matrix()));
    let m = RightModule::free(a.clone(), 1);
    let gm = GradedModule::new(&gc, m, vec![1, 0, 1, 0]);
    assert!(gm.is_err(), "M_2(k) mixes rows, so grades must be constant on columns");
    let gm = GradedModule::new(&gc, RightModule::free(a, 2), vec![0, 0, 0, 0, 1, 1, 1, 1]).unwrap();
    assert!(check_comodule(&gc.graded_comodule(&gm).unwrap()).is_pass());

    // A free orbit has no fixed points.
    assert!(fixed_points(&GSet::regular(c2)).is_empty());
}
