//! Seeded pseudo-random modules, basis changes and coring instances for the
//! oracle families and the criterion/oracle sweep.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{group_algebra, Algebra, GradedAlgebra, Group};
use crate::comodule::{induced_comodule, Comodule};
use crate::constructions::{
    dual_coalgebra, dual_coalgebra_comodule, endomorphism_comatrix, grading_coring,
    matrix_comatrix, sweedler_coring, trivial_coring, GSet, GradedModule, GradingCoring,
};
use crate::coring::{find_cointegral, Cointegral, Coring, Supplement};
use crate::error::Result;
use crate::linalg::{inverse, quotient_by, solve, Field, Matrix, Scalar};
use crate::modules::{central_elements, RightModule};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    field.int(rng.gen_range(-2..=2))
}

pub fn random_vector(rng: &mut ChaCha8Rng, field: Field, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| small(rng, field)).collect()
}

/// A random invertible matrix with small entries, with its inverse.
pub fn random_invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> (Matrix, Matrix) {
    loop {
        let entries = (0..n * n).map(|_| small(rng, field)).collect();
        let m = Matrix::from_flat(field, n, n, entries);
        if let Some(inv) = inverse(&m) {
            return (m, inv);
        }
    }
}

/// The submodule of `A^rank` generated by one random vector, or the
/// quotient by it, in a random basis.
pub fn random_module(rng: &mut ChaCha8Rng, a: &Arc<Algebra>, max_dim: usize) -> RightModule {
    let field = a.field();
    for _ in 0..32 {
        let rank = rng.gen_range(1..=2);
        if a.dim() * rank > max_dim + a.dim() {
            continue;
        }
        let free = RightModule::free(a.clone(), rank);
        let v = random_vector(rng, field, free.dim());
        if v.iter().all(Scalar::is_zero) {
            continue;
        }
        let generators: Vec<Vec<Scalar>> =
            free.actions().iter().map(|r| r.apply(&v)).collect();
        let module = if rng.gen_bool(0.5) {
            submodule(&free, &generators)
        } else {
            quotient_module(&free, generators)
        };
        if module.dim() == 0 || module.dim() > max_dim {
            continue;
        }
        let (change, change_inv) = random_invertible(rng, field, module.dim());
        return module.change_basis(&change, &change_inv);
    }
    RightModule::regular(a.clone())
}

/// The submodule spanned by `generators`, which must be closed under the
/// action.
fn submodule(m: &RightModule, generators: &[Vec<Scalar>]) -> RightModule {
    let field = m.field();
    let span = crate::linalg::rref(&Matrix::from_rows(field, m.dim(), generators.to_vec())).0;
    let rows: Vec<Vec<Scalar>> = (0..span.rows())
        .map(|r| span.row(r).to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let basis = Matrix::from_columns(field, m.dim(), &rows);
    let action = m
        .actions()
        .iter()
        .map(|r| {
            solve(&basis, &(r * &basis))
                .expect("shapes agree")
                .expect("generated submodules are closed")
        })
        .collect();
    RightModule::new(m.algebra().clone(), rows.len(), action).expect("restriction is a module")
}

fn quotient_module(m: &RightModule, generators: Vec<Vec<Scalar>>) -> RightModule {
    let q = quotient_by(m.field(), m.dim(), generators);
    let action = m
        .actions()
        .iter()
        .map(|r| q.projection() * r * q.section())
        .collect();
    RightModule::new(m.algebra().clone(), q.dim(), action).expect("quotients are modules")
}

/// One randomly generated coseparable coring with a supplement and a few
/// comodules, within the sweep bounds (`dim A ≤ 4`, `dim C ≤ 8`,
/// `dim M ≤ 6`).
#[derive(Clone, Debug)]
pub struct SweepInstance {
    pub label: String,
    pub coring: Arc<Coring>,
    pub supplement: Supplement,
    pub comodules: Vec<(String, Comodule)>,
    /// Fixture modules added to the oracle family (e.g. simple graded ones).
    pub fixture_modules: Vec<(String, RightModule)>,
}

pub const MAX_ALGEBRA_DIM: usize = 4;
pub const MAX_CORING_DIM: usize = 8;
pub const MAX_COMODULE_DIM: usize = 6;

/// Random member of the cointegral solution space and a random nonzero
/// central element; `None` if either is unavailable.
fn random_supplement(rng: &mut ChaCha8Rng, c: &Coring) -> Result<Option<Supplement>> {
    let field = c.field();
    let Some(solution) = find_cointegral(c)? else {
        return Ok(None);
    };
    let mut delta = solution.cointegral.matrix().clone();
    for d in &solution.directions {
        let t = small(rng, field);
        if !t.is_zero() {
            delta = &delta + &d.scale(&t);
        }
    }
    let delta = Cointegral::new(c, delta)?;
    let central = central_elements(c.bimodule())?;
    if central.is_empty() {
        return Ok(None);
    }
    let e = loop {
        let t = random_vector(rng, field, central.len());
        let e: Vec<Scalar> = (0..c.dim())
            .map(|i| {
                central
                    .iter()
                    .zip(&t)
                    .fold(field.zero(), |acc, (z, ti)| acc + &z[i] * ti)
            })
            .collect();
        if e.iter().any(|x| !x.is_zero()) {
            break e;
        }
    };
    Ok(Some(Supplement::new(c, delta, e)?))
}

fn conjugated(rng: &mut ChaCha8Rng, m: &Comodule) -> Result<Comodule> {
    let (change, change_inv) = random_invertible(rng, m.field(), m.dim());
    m.change_basis(&change, &change_inv)
}

fn random_gset(rng: &mut ChaCha8Rng, group: Arc<Group>, max_points: usize) -> GSet {
    let g = group.order();
    loop {
        let mut action: Vec<Vec<usize>> = Vec::new();
        let orbits = rng.gen_range(1..=3);
        for _ in 0..orbits {
            let base = action.len();
            if g > 1 && rng.gen_bool(0.5) {
                for x in 0..g {
                    action.push((0..g).map(|s| base + group.mul(x, s)).collect());
                }
            } else {
                action.push(vec![base; g]);
            }
        }
        if action.is_empty() || action.len() > max_points {
            continue;
        }
        let labels = (0..action.len()).map(|i| format!("x{i}")).collect();
        return GSet::new(group.clone(), labels, action).expect("unions of orbits are G-sets");
    }
}

fn grading_instance(rng: &mut ChaCha8Rng, field: Field) -> Result<Option<SweepInstance>> {
    let order = *[1usize, 2, 3].choose(rng).expect("nonempty");
    let group = Arc::new(Group::cyclic(order));
    let ga = if rng.gen_bool(0.5) {
        GradedAlgebra::group_algebra(field, group.clone())
    } else {
        GradedAlgebra::trivially_graded(Arc::new(Algebra::ground(field)), group.clone())
    };
    let n = ga.algebra().dim();
    let xs = random_gset(rng, group.clone(), MAX_CORING_DIM / n);
    let gc = grading_coring(&ga, &xs)?;
    let Some(supplement) = random_supplement(rng, &gc.coring)? else {
        return Ok(None);
    };
    let mut comodules = Vec::new();
    let mut fixture_modules = Vec::new();
    for x in 0..xs.len() {
        let gm = gc.shifted_free(x)?;
        fixture_modules.push((format!("A({})", xs.labels()[x]), gm.module.clone()));
    }
    for k in 0..3 {
        let gm = random_graded_module(rng, &gc)?;
        if gm.module.dim() == 0 {
            continue;
        }
        let m = gc.graded_comodule(&gm)?;
        comodules.push((format!("graded{k}"), conjugated(rng, &m)?));
    }
    let label = format!(
        "grading coring, |G| = {order}, dim A = {n}, |X| = {}",
        xs.len()
    );
    Ok(Some(SweepInstance {
        label,
        coring: gc.coring.clone(),
        supplement,
        comodules,
        fixture_modules,
    }))
}

fn random_graded_module(rng: &mut ChaCha8Rng, gc: &GradingCoring) -> Result<GradedModule> {
    let n = gc.coring.algebra().dim();
    let mut gm = GradedModule::zero(gc);
    let parts = rng.gen_range(1..=(MAX_COMODULE_DIM / n).clamp(1, 3));
    for _ in 0..parts {
        let x = rng.gen_range(0..gc.xs.len());
        gm = gm.direct_sum(gc, &gc.shifted_free(x)?)?;
    }
    Ok(gm)
}

fn small_algebras(field: Field) -> Vec<(&'static str, Algebra)> {
    vec![
        ("kC2", group_algebra(field, &Group::cyclic(2))),
        ("kC3", group_algebra(field, &Group::cyclic(3))),
        ("k[x]/x^2", Algebra::truncated_polynomial(field, 2)),
        ("M2(k)", Algebra::matrix_algebra(field, 2)),
        ("T2(k)", Algebra::upper_triangular(field)),
    ]
}

fn trivial_instance(rng: &mut ChaCha8Rng, field: Field) -> Result<Option<SweepInstance>> {
    let (name, a) = small_algebras(field)
        .choose(rng)
        .cloned()
        .expect("nonempty");
    let a = Arc::new(a);
    let coring = Arc::new(trivial_coring(a.clone())?);
    let Some(supplement) = random_supplement(rng, &coring)? else {
        return Ok(None);
    };
    let mut comodules = Vec::new();
    for k in 0..3 {
        let n = random_module(rng, &a, MAX_COMODULE_DIM);
        let m = induced_comodule(&coring, &n)?;
        if m.dim() <= MAX_COMODULE_DIM {
            comodules.push((format!("induced{k}"), m));
        }
    }
    Ok(Some(SweepInstance {
        label: format!("trivial coring of {name}"),
        coring,
        supplement,
        comodules,
        fixture_modules: Vec::new(),
    }))
}

fn coalgebra_instance(rng: &mut ChaCha8Rng, field: Field) -> Result<Option<SweepInstance>> {
    let choices: Vec<(&str, Algebra)> = vec![
        ("kC2", group_algebra(field, &Group::cyclic(2))),
        ("kC3", group_algebra(field, &Group::cyclic(3))),
        ("M2(k)", Algebra::matrix_algebra(field, 2)),
        ("k^3", Algebra::diagonal(field, 3)),
    ];
    let (name, b) = choices.choose(rng).cloned().expect("nonempty");
    let coring = Arc::new(dual_coalgebra(&b)?);
    let Some(supplement) = random_supplement(rng, &coring)? else {
        return Ok(None);
    };
    // Left B-modules are right modules over the opposite algebra.
    let b_op = Arc::new(b.opposite());
    let mut comodules = vec![(
        "regular".to_string(),
        dual_coalgebra_comodule(coring.clone(), b.left_mults())?,
    )];
    for k in 0..2 {
        let n = random_module(rng, &b_op, MAX_COMODULE_DIM);
        let m = dual_coalgebra_comodule(coring.clone(), n.actions())?;
        comodules.push((format!("module{k}"), m));
    }
    Ok(Some(SweepInstance {
        label: format!("dual coalgebra of {name}"),
        coring,
        supplement,
        comodules,
        fixture_modules: Vec::new(),
    }))
}

fn comatrix_instance(rng: &mut ChaCha8Rng, field: Field) -> Result<Option<SweepInstance>> {
    let (label, (coring, p)) = match rng.gen_range(0..3) {
        0 => ("comatrix coring of k^2", matrix_comatrix(field, 2)?),
        1 => (
            "Sweedler coring of kC2",
            sweedler_coring(Arc::new(group_algebra(field, &Group::cyclic(2))))?,
        ),
        _ => ("comatrix coring of k^2 over M2(k)", endomorphism_comatrix(field, 2)?),
    };
    let Some(supplement) = random_supplement(rng, &coring)? else {
        return Ok(None);
    };
    let mut comodules = vec![("P".to_string(), conjugated(rng, &p)?)];
    if 2 * p.dim() <= MAX_COMODULE_DIM {
        comodules.push(("P+P".to_string(), p.direct_sum(&p)?));
    }
    let n = random_module(rng, coring.algebra(), 2);
    let induced = induced_comodule(&coring, &n)?;
    if induced.dim() <= MAX_COMODULE_DIM {
        comodules.push(("induced".to_string(), induced));
    }
    Ok(Some(SweepInstance {
        label: label.to_string(),
        coring,
        supplement,
        comodules,
        fixture_modules: Vec::new(),
    }))
}

/// Instance number `seed`; `None` when the drawn coring has no cointegral
/// or no nonzero central element.
pub fn sweep_instance(field: Field, seed: u64) -> Result<Option<SweepInstance>> {
    let mut rng = rng(seed);
    let instance = match seed % 4 {
        0 => grading_instance(&mut rng, field)?,
        1 => trivial_instance(&mut rng, field)?,
        2 => coalgebra_instance(&mut rng, field)?,
        _ => comatrix_instance(&mut rng, field)?,
    };
    Ok(instance.filter(|i| {
        i.coring.algebra().dim() <= MAX_ALGEBRA_DIM
            && i.coring.dim() <= MAX_CORING_DIM
            && i.comodules.iter().all(|(_, m)| m.dim() <= MAX_COMODULE_DIM)
    }))
}
