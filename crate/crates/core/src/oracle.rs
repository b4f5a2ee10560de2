//! Brute-force surjectivity checks of the smooth/cosmooth definitions over
//! finite test families, cross-checking the linear criteria.

use std::sync::Arc;

use crate::comodule::{
    colinear_hom_basis, induced_comodule, induced_counit, kappa_map, lift_to_induced, r_map,
    Comodule,
};
use crate::coring::Supplement;
use crate::error::{Error, Result};
use crate::linalg::{coordinates_in_span, is_surjective, Field, Matrix};
use crate::modules::{right_linear_hom_basis, RightModule};
use crate::random::{random_module, rng};

/// Matrix of a linear map between hom spaces given by their bases.
fn map_on_bases(
    field: Field,
    source: &[Matrix],
    target: &[Matrix],
    image: impl Fn(&Matrix) -> Result<Matrix>,
    context: &str,
) -> Result<Matrix> {
    let columns = source
        .iter()
        .map(|f| {
            coordinates_in_span(field, target, &image(f)?)
                .ok_or_else(|| Error::Invariant(format!("{context}: image left the hom space")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(field, target.len(), &columns))
}

/// `ϑ(f) = (N ⊗ ε) ∘ r_N ∘ (f ⊗ C) ∘ ρ` on `Hom_A(M, N)`, checked against
/// `f ∘ κ_M`.
fn theta_matrix(m: &Comodule, n: &RightModule, sup: &Supplement) -> Result<Matrix> {
    let coring = m.coring();
    let basis = right_linear_hom_basis(m.module(), n)?;
    let induced = induced_comodule(coring, n)?;
    let counit = induced_counit(&induced, n)?;
    let r = r_map(coring, sup, n)?;
    let kappa = kappa_map(m, sup)?;
    let theta = |f: &Matrix| -> Result<Matrix> {
        let value = &counit * &r * lift_to_induced(m, n, f)?;
        if value != f * &kappa {
            return Err(Error::Invariant("theta(f) differs from f composed with kappa".into()));
        }
        Ok(value)
    };
    map_on_bases(m.field(), &basis, &basis, theta, "theta")
}

pub fn theta_surjective(m: &Comodule, n: &RightModule, sup: &Supplement) -> Result<bool> {
    Ok(is_surjective(&theta_matrix(m, n, sup)?))
}

/// Surjectivity of `g ↦ r_N ∘ g` on `Hom^C(M, N ⊗_A C)`, solved directly.
pub fn composition_with_r_surjective(
    m: &Comodule,
    n: &RightModule,
    sup: &Supplement,
) -> Result<bool> {
    let coring = m.coring();
    let induced = induced_comodule(coring, n)?;
    let basis = colinear_hom_basis(m, &induced)?;
    let r = r_map(coring, sup, n)?;
    let map = map_on_bases(m.field(), &basis, &basis, |g| Ok(&r * g), "r_N composition")?;
    Ok(is_surjective(&map))
}

fn nonempty<T>(family: &[T]) -> Result<()> {
    if family.is_empty() {
        return Err(Error::Incompatible("the test family is empty".into()));
    }
    Ok(())
}

/// Per-member results of [`smooth_oracle`].
pub fn smooth_oracle_members(
    m: &Comodule,
    family: &[RightModule],
    sup: &Supplement,
) -> Result<Vec<bool>> {
    nonempty(family)?;
    family
        .iter()
        .map(|n| {
            let theta = theta_surjective(m, n, sup)?;
            let direct = composition_with_r_surjective(m, n, sup)?;
            if theta != direct {
                return Err(Error::Invariant(
                    "theta route and direct colinear route disagree".into(),
                ));
            }
            Ok(theta)
        })
        .collect()
}

pub fn smooth_oracle(m: &Comodule, family: &[RightModule], sup: &Supplement) -> Result<bool> {
    Ok(smooth_oracle_members(m, family, sup)?.into_iter().all(|b| b))
}

/// Surjectivity of `φ(f) = f ∘ r_N` on `Hom^C(N ⊗_A C, M)`.
pub fn phi_surjective(m: &Comodule, n: &RightModule, sup: &Supplement) -> Result<bool> {
    let coring = m.coring();
    let induced = induced_comodule(coring, n)?;
    let basis = colinear_hom_basis(&induced, m)?;
    let r = r_map(coring, sup, n)?;
    let map = map_on_bases(m.field(), &basis, &basis, |f| Ok(f * &r), "phi")?;
    Ok(is_surjective(&map))
}

/// Per-member results of [`cosmooth_oracle`].
pub fn cosmooth_oracle_members(
    m: &Comodule,
    family: &[RightModule],
    sup: &Supplement,
) -> Result<Vec<bool>> {
    nonempty(family)?;
    family.iter().map(|n| phi_surjective(m, n, sup)).collect()
}

pub fn cosmooth_oracle(m: &Comodule, family: &[RightModule], sup: &Supplement) -> Result<bool> {
    Ok(cosmooth_oracle_members(m, family, sup)?.into_iter().all(|b| b))
}

/// Surjectivity of `g ↦ g ∘ ρ^N` from `Hom^C(N ⊗_A C, M)` to `Hom^C(N, M)`.
pub fn extends_along_coaction(m: &Comodule, n: &Comodule) -> Result<bool> {
    let coring = m.coring();
    let induced = induced_comodule(coring, n.module())?;
    let source = colinear_hom_basis(&induced, m)?;
    let target = colinear_hom_basis(n, m)?;
    let map = map_on_bases(
        m.field(),
        &source,
        &target,
        |g| Ok(g * n.coaction()),
        "restriction along the coaction",
    )?;
    Ok(is_surjective(&map))
}

/// Per-member results of [`injectivity_extension_check`].
pub fn injectivity_extension_members(m: &Comodule, family: &[Comodule]) -> Result<Vec<bool>> {
    family.iter().map(|n| extends_along_coaction(m, n)).collect()
}

pub fn injectivity_extension_check(m: &Comodule, family: &[Comodule]) -> Result<bool> {
    Ok(injectivity_extension_members(m, family)?.into_iter().all(|b| b))
}

pub const RANDOM_FAMILY_SIZE: usize = 5;
const RANDOM_MODULE_DIM: usize = 4;

/// `A`, `A²`, `C_A`, the given fixture modules, `M`'s own module and up to
/// five seeded random modules.
pub fn default_family(
    m: &Comodule,
    fixtures: &[(String, RightModule)],
    seed: u64,
) -> Vec<(String, RightModule)> {
    let coring = m.coring();
    let a = coring.algebra();
    let mut family = vec![
        ("A".to_string(), RightModule::regular(a.clone())),
        ("A^2".to_string(), RightModule::free(a.clone(), 2)),
        ("C".to_string(), coring.as_right_module()),
    ];
    family.extend(fixtures.iter().cloned());
    family.push(("M".to_string(), m.module().clone()));
    family.extend(random_family(a, seed));
    family
}

pub fn random_family(a: &Arc<crate::algebra::Algebra>, seed: u64) -> Vec<(String, RightModule)> {
    let mut rng = rng(seed);
    (0..RANDOM_FAMILY_SIZE)
        .map(|k| {
            (
                format!("random{k}"),
                random_module(&mut rng, a, RANDOM_MODULE_DIM),
            )
        })
        .collect()
}

/// `C`, `A ⊗_A C`, the given comodules and `M` itself.
pub fn default_comodule_family(
    m: &Comodule,
    fixtures: &[(String, Comodule)],
) -> Result<Vec<(String, Comodule)>> {
    let coring = m.coring();
    let mut family = vec![
        ("C".to_string(), Comodule::regular(coring.clone())?),
        (
            "A⊗C".to_string(),
            induced_comodule(coring, &RightModule::regular(coring.algebra().clone()))?,
        ),
    ];
    family.extend(fixtures.iter().cloned());
    family.push(("M".to_string(), m.clone()));
    Ok(family)
}
