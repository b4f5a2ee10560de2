use std::sync::Arc;

use proptest::prelude::*;

use coring_kit::algebra::{check_algebra, group_algebra, Algebra, Group};
use coring_kit::comodule::{
    adjunction_iso, is_cosmooth_global, is_relative_injective, is_smooth, kappa_map, lambda_map,
    nu_map, r_map,
};
use coring_kit::coring::{
    check_cointegral, find_cointegral, find_frobenius_element, left_dual_ring, left_dual_product,
    right_dual_product, right_dual_ring,
};
use coring_kit::linalg::{
    kernel_basis, quotient_by, rref, solve, Field, Matrix, Scalar,
};
use coring_kit::modules::{
    induced_map, right_linear_hom_basis, simple_tensor, Bimodule, RightModule, TensorSpace,
};
use coring_kit::oracle::{
    default_comodule_family, default_family, injectivity_extension_check, smooth_oracle,
    theta_surjective,
};
use coring_kit::random::{random_module, rng, sweep_instance};

fn q() -> Field {
    Field::Rational
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        Matrix::from_flat(q(), rows, cols, v.into_iter().map(|x| q().int(x)).collect())
    })
}

fn shaped_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))
}

fn small_algebra(index: usize) -> Arc<Algebra> {
    let a = match index % 5 {
        0 => group_algebra(q(), &Group::cyclic(2)),
        1 => group_algebra(q(), &Group::cyclic(3)),
        2 => Algebra::truncated_polynomial(q(), 2),
        3 => Algebra::upper_triangular(q()),
        _ => Algebra::matrix_algebra(q(), 2),
    };
    Arc::new(a)
}

proptest! {
    #[test]
    fn kernel_vectors_are_killed(m in shaped_matrix()) {
        for v in kernel_basis(&m) {
            prop_assert!(m.apply(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solutions_reproduce_the_right_hand_side(m in shaped_matrix(), x in prop::collection::vec(-3i64..=3, 4)) {
        let x = Matrix::from_flat(q(), m.cols(), 1, x[..m.cols()].iter().map(|&v| q().int(v)).collect());
        let b = &m * &x;
        let sol = solve(&m, &b).unwrap().expect("consistent by construction");
        prop_assert_eq!(&m * &sol, b);
    }

    #[test]
    fn rref_is_idempotent(m in shaped_matrix()) {
        let (r, pivots) = rref(&m);
        let (r2, pivots2) = rref(&r);
        prop_assert_eq!(r, r2);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn quotients_split(m in shaped_matrix()) {
        let relations: Vec<Vec<Scalar>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let quotient = quotient_by(q(), m.cols(), relations.clone());
        prop_assert!((quotient.projection() * quotient.section()).is_identity());
        for r in &relations {
            prop_assert!(quotient.project(r).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn cyclic_group_algebras_pass(n in 1usize..6) {
        let a = group_algebra(q(), &Group::cyclic(n));
        prop_assert_eq!(a.dim(), n);
        prop_assert!(check_algebra(&a).is_pass());
        prop_assert!(check_algebra(&a.opposite()).is_pass());
        prop_assert_eq!(a.opposite().opposite(), a);
    }

    #[test]
    fn tensors_balance_and_descend(index in 0usize..5, seed in any::<u64>(), v in prop::collection::vec(-2i64..=2, 8)) {
        let a = small_algebra(index);
        let mut r = rng(seed);
        let m = random_module(&mut r, &a, 4);
        let n = random_module(&mut r, &a, 4);
        let c = Bimodule::regular(a.clone());
        let t = TensorSpace::pair(&m, &c).unwrap();
        let x: Vec<Scalar> = v.iter().take(m.dim()).map(|&k| q().int(k)).collect();
        let y: Vec<Scalar> = v.iter().rev().take(a.dim()).map(|&k| q().int(k)).collect();
        for k in 0..a.dim() {
            let xa = m.action(k).apply(&x);
            let ay = c.left_action(k).apply(&y);
            prop_assert_eq!(simple_tensor(&t, &xa, &y), simple_tensor(&t, &x, &ay));
        }
        // Descent soundness: induced ∘ π = π ∘ (f ⊗ g).
        let tn = TensorSpace::pair(&n, &c).unwrap();
        let basis = right_linear_hom_basis(&m, &n).unwrap();
        for f in &basis {
            prop_assert!(f.rows() == n.dim() && f.cols() == m.dim());
            for (k, act) in m.actions().iter().enumerate() {
                prop_assert_eq!(f * act, n.action(k) * f);
            }
            let id = Matrix::identity(q(), a.dim());
            let induced = induced_map(&t, &tn, &[f, &id]).unwrap();
            prop_assert_eq!(&induced * t.projection(), tn.projection() * f.kron(&id));
        }
        let flat: Vec<Vec<Scalar>> = basis.iter().map(|f| f.entries().to_vec()).collect();
        let stacked = Matrix::from_rows(q(), m.dim() * n.dim(), flat);
        prop_assert_eq!(stacked.rank(), basis.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn coring_level_invariants(seed in 0u64..10_000) {
        let Some(inst) = sweep_instance(q(), seed).unwrap() else {
            return Ok(());
        };
        let c = &inst.coring;
        let sup = &inst.supplement;
        prop_assert!(check_cointegral(c, sup.cointegral.matrix()).unwrap().is_pass());
        if let Some(sol) = find_cointegral(c).unwrap() {
            prop_assert!(check_cointegral(c, sol.cointegral.matrix()).unwrap().is_pass());
            prop_assert!(sol.contains(sup.cointegral.matrix()));
        }
        let right = right_dual_ring(c).unwrap();
        prop_assert!(check_algebra(&right.algebra).is_pass());
        prop_assert_eq!(&right.element(right.algebra.unit()), c.counit());
        let left = left_dual_ring(c).unwrap();
        prop_assert!(check_algebra(&left.algebra).is_pass());
        prop_assert_eq!(&left.element(left.algebra.unit()), c.counit());
        for b in &right.basis {
            prop_assert_eq!(&right_dual_product(c, c.counit(), b).unwrap(), b);
            prop_assert_eq!(&right_dual_product(c, b, c.counit()).unwrap(), b);
        }
        for b in &left.basis {
            prop_assert_eq!(&left_dual_product(c, c.counit(), b).unwrap(), b);
        }
        if let Some(e) = find_frobenius_element(c, &sup.cointegral).unwrap() {
            let frob = coring_kit::coring::Supplement::new(c, sup.cointegral.clone(), e).unwrap();
            prop_assert_eq!(&lambda_map(c, &frob), c.counit());
            prop_assert!(is_cosmooth_global(c, &frob).unwrap().is_some());
            for (_, m) in &inst.comodules {
                prop_assert!(is_smooth(m, &frob).unwrap().is_some());
            }
        }
        if let Some(xi) = is_cosmooth_global(c, sup).unwrap() {
            let lambda = lambda_map(c, sup);
            prop_assert_eq!(&right_dual_product(c, &xi, &lambda).unwrap(), c.counit());
        }
    }

    #[test]
    fn comodule_level_invariants(seed in 0u64..10_000) {
        let Some(inst) = sweep_instance(q(), seed).unwrap() else {
            return Ok(());
        };
        let c = &inst.coring;
        let sup = &inst.supplement;
        for (name, m) in &inst.comodules {
            let nu = nu_map(m, &sup.cointegral).unwrap();
            prop_assert!((&nu * m.coaction()).is_identity(), "{}", name);
            prop_assert!(is_relative_injective(m).unwrap().is_some(), "{}", name);
            let kappa = kappa_map(m, sup).unwrap();
            let smooth = is_smooth(m, sup).unwrap();
            if let Some(lambda) = &smooth {
                prop_assert!((lambda * &kappa).is_identity());
            }
            let family: Vec<RightModule> = default_family(m, &inst.fixture_modules, seed)
                .into_iter()
                .map(|(_, n)| n)
                .collect();
            // ϑ(f) = f ∘ κ and the two r_N constructions are asserted inside.
            for n in family.iter().take(3) {
                r_map(c, sup, n).unwrap();
                theta_surjective(m, n, sup).unwrap();
                let adj = adjunction_iso(m, n).unwrap();
                prop_assert!((&adj.forward * &adj.backward).is_identity());
                prop_assert!((&adj.backward * &adj.forward).is_identity());
            }
            prop_assert_eq!(smooth_oracle(m, &family, sup).unwrap(), smooth.is_some(), "{}", name);
            let comodules: Vec<_> = default_comodule_family(m, &inst.comodules)
                .unwrap()
                .into_iter()
                .map(|(_, n)| n)
                .collect();
            prop_assert!(injectivity_extension_check(m, &comodules).unwrap(), "{}", name);
        }
    }
}
