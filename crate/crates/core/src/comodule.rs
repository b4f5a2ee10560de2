//! Right comodules over a coring, colinear maps, relative injectivity and
//! the smoothness and cosmoothness deciders for a supplemented coseparable
//! coring.

use std::fmt;
use std::sync::Arc;

use crate::algebra::same_algebra;
use crate::coring::{
    first_differing_column, right_dual_product, right_dual_ring, Cointegral, Coring, Supplement,
};
use crate::error::{Error, Result};
use crate::linalg::{combine, coordinates_in_span, Field, Matrix, RowReducer, Scalar};
use crate::modules::{
    commutation_rows, induced_map, right_linear_hom_basis, unit_iso, Bimodule, RightModule,
    TensorSpace, UnitSide,
};
use crate::verdict::Verdict;

/// A right comodule: a right module with a coaction into `M ⊗_A C`
/// (quotient coordinates).
#[derive(Clone, Debug)]
pub struct Comodule {
    coring: Arc<Coring>,
    module: RightModule,
    coaction: Matrix,
    mc: TensorSpace,
    mcc: TensorSpace,
}

impl Comodule {
    pub fn new(coring: Arc<Coring>, module: RightModule, coaction: Matrix) -> Result<Self> {
        if !same_algebra(module.algebra(), coring.algebra()) {
            return Err(Error::Incompatible(
                "comodule and coring live over different algebras".into(),
            ));
        }
        let c = coring.bimodule();
        let mc = TensorSpace::pair(&module, c)?;
        let mcc = TensorSpace::new(vec![(&module).into(), c.into(), c.into()])?;
        if coaction.shape() != (mc.dim(), module.dim()) {
            return Err(Error::Dimension {
                context: format!("coaction should be {}x{}", mc.dim(), module.dim()),
                expected: mc.dim() * module.dim(),
                found: coaction.rows() * coaction.cols(),
            });
        }
        Ok(Comodule {
            coring,
            module,
            coaction,
            mc,
            mcc,
        })
    }

    /// Coaction given on raw `M ⊗ C` coordinates (`dim M · dim C × dim M`).
    pub fn from_raw_coaction(coring: Arc<Coring>, module: RightModule, raw: &Matrix) -> Result<Self> {
        let expected = (module.dim() * coring.dim(), module.dim());
        if raw.shape() != expected {
            return Err(Error::Dimension {
                context: format!("raw coaction should be {}x{}", expected.0, expected.1),
                expected: expected.0 * expected.1,
                found: raw.rows() * raw.cols(),
            });
        }
        let mc = TensorSpace::pair(&module, coring.bimodule())?;
        let coaction = mc.projection() * raw;
        Self::new(coring, module, coaction)
    }

    /// `C` with coaction `Δ`.
    pub fn regular(coring: Arc<Coring>) -> Result<Self> {
        let module = coring.as_right_module();
        let coaction = coring.coproduct().clone();
        Self::new(coring, module, coaction)
    }

    pub fn coring(&self) -> &Arc<Coring> {
        &self.coring
    }

    pub fn module(&self) -> &RightModule {
        &self.module
    }

    pub fn field(&self) -> Field {
        self.module.field()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    /// `M ⊗_A C`.
    pub fn tensor_space(&self) -> &TensorSpace {
        &self.mc
    }

    /// The flat `M ⊗_A C ⊗_A C`.
    pub fn triple_space(&self) -> &TensorSpace {
        &self.mcc
    }

    /// Same comodule in the basis given by the columns of `change`.
    pub fn change_basis(&self, change: &Matrix, change_inv: &Matrix) -> Result<Self> {
        let module = self.module.change_basis(change, change_inv);
        let mc = TensorSpace::pair(&module, self.coring.bimodule())?;
        let id = Matrix::identity(self.field(), self.coring.dim());
        let conv = induced_map(&self.mc, &mc, &[change_inv, &id])?;
        let coaction = conv * &self.coaction * change;
        Self::new(self.coring.clone(), module, coaction)
    }

    /// `M ⊕ N`.
    pub fn direct_sum(&self, other: &Comodule) -> Result<Self> {
        if !Arc::ptr_eq(&self.coring, &other.coring) {
            return Err(Error::Incompatible("comodules over different corings".into()));
        }
        let module = self.module.direct_sum(&other.module)?;
        let mc = TensorSpace::pair(&module, self.coring.bimodule())?;
        let field = self.field();
        let (m, n, c) = (self.dim(), other.dim(), self.coring.dim());
        let mut raw = Matrix::zeros(field, (m + n) * c, m + n);
        let lift_m = self.mc.section() * &self.coaction;
        let lift_n = other.mc.section() * &other.coaction;
        for col in 0..m {
            for row in 0..m * c {
                raw.set(row, col, lift_m.get(row, col).clone());
            }
        }
        for col in 0..n {
            for row in 0..n * c {
                raw.set(m * c + row, m + col, lift_n.get(row, col).clone());
            }
        }
        let coaction = mc.projection() * &raw;
        Self::new(self.coring.clone(), module, coaction)
    }

    fn right_unit_space(&self) -> Result<TensorSpace> {
        TensorSpace::pair(&self.module, &Bimodule::regular(self.coring.algebra().clone()))
    }

    /// `M ⊗ ε` followed by `M ⊗_A A ≅ M`.
    pub fn counit_map(&self) -> Result<Matrix> {
        let ma = self.right_unit_space()?;
        let id = Matrix::identity(self.field(), self.dim());
        let m = induced_map(&self.mc, &ma, &[&id, self.coring.counit()])?;
        Ok(unit_iso(&ma, UnitSide::Right)?.0 * m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComoduleLaw {
    RightLinear,
    Counit,
    Coassociativity,
}

impl fmt::Display for ComoduleLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComoduleLaw::RightLinear => "coaction is right A-linear",
            ComoduleLaw::Counit => "counit law",
            ComoduleLaw::Coassociativity => "coassociativity",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleViolation {
    pub law: ComoduleLaw,
    pub basis: usize,
}

impl fmt::Display for ComoduleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails on basis vector m{}", self.law, self.basis)
    }
}

pub fn check_comodule(m: &Comodule) -> Verdict<ComoduleViolation> {
    let fail = |law, basis| Verdict::Fail(ComoduleViolation { law, basis });
    let right = m.mc.right_action().expect("coring factor acts on the right");
    for (x, y) in m.module.actions().iter().zip(right) {
        if let Some(j) = first_differing_column(&(&m.coaction * x), &(y * &m.coaction)) {
            return fail(ComoduleLaw::RightLinear, j);
        }
    }
    let id = Matrix::identity(m.field(), m.dim());
    match m.counit_map() {
        Ok(counit) => {
            if let Some(j) = first_differing_column(&(counit * &m.coaction), &id) {
                return fail(ComoduleLaw::Counit, j);
            }
        }
        Err(_) => return fail(ComoduleLaw::Counit, 0),
    }
    match coaction_extensions(m) {
        Ok((rho_c, m_delta)) => {
            if let Some(j) =
                first_differing_column(&(rho_c * &m.coaction), &(m_delta * &m.coaction))
            {
                return fail(ComoduleLaw::Coassociativity, j);
            }
        }
        Err(_) => return fail(ComoduleLaw::Coassociativity, 0),
    }
    Verdict::Pass
}

/// `ρ ⊗ C` and `M ⊗ Δ` from `M ⊗_A C` into the flat `M ⊗_A C ⊗_A C`.
fn coaction_extensions(m: &Comodule) -> Result<(Matrix, Matrix)> {
    let field = m.field();
    let lift = m.mc.section() * &m.coaction;
    let id_c = Matrix::identity(field, m.coring.dim());
    let id_m = Matrix::identity(field, m.dim());
    let rho_c = induced_map(&m.mc, &m.mcc, &[&lift, &id_c])?;
    let m_delta = induced_map(&m.mc, &m.mcc, &[&id_m, &m.coring.raw_coproduct()])?;
    Ok((rho_c, m_delta))
}

/// `N ⊗_A C` with coaction `N ⊗ Δ`.
pub fn induced_comodule(coring: &Arc<Coring>, n: &RightModule) -> Result<Comodule> {
    let field = coring.field();
    let nc = TensorSpace::pair(n, coring.bimodule())?;
    let module = nc.as_right_module()?;
    let mc = TensorSpace::pair(&module, coring.bimodule())?;
    let id_c = Matrix::identity(field, coring.dim());
    let id_n = Matrix::identity(field, n.dim());
    let raw = mc.projection()
        * nc.projection().kron(&id_c)
        * id_n.kron(&coring.raw_coproduct());
    let coaction = nc.descend(&raw)?;
    Comodule::new(coring.clone(), module, coaction)
}

/// Basis of right-linear `f : M → N` with `ρ^N f = (f ⊗ C) ρ^M`.
pub fn colinear_hom_basis(m: &Comodule, n: &Comodule) -> Result<Vec<Matrix>> {
    if !Arc::ptr_eq(&m.coring, &n.coring) {
        return Err(Error::Incompatible("comodules over different corings".into()));
    }
    let field = m.field();
    let (dm, dn, dc) = (m.dim(), n.dim(), m.coring.dim());
    let unknowns = dn * dm;
    let mut reducer = RowReducer::new(field, unknowns);
    let pairs: Vec<_> = m.module.actions().iter().zip(n.module.actions()).collect();
    commutation_rows(field, dm, dn, &pairs, |row| {
        reducer.insert(row);
    });
    // (f ⊗ C) is linearised as π_N kron(f, 1) σ_M, which agrees with the
    // descended map on right-linear f.
    let lift = m.mc.section() * &m.coaction;
    let proj = n.mc.projection();
    let rows = n.mc.dim();
    let mut coeff = vec![Matrix::zeros(field, rows, dm); unknowns];
    for r in 0..dn {
        for u in 0..dm {
            let block = &mut coeff[r * dm + u];
            for row in 0..rows {
                let x = n.coaction.get(row, r);
                if !x.is_zero() {
                    *block.entry_mut(row, u) += x;
                }
            }
            for t in 0..dc {
                for row in 0..rows {
                    let p = proj.get(row, r * dc + t);
                    if p.is_zero() {
                        continue;
                    }
                    for col in 0..dm {
                        let s = lift.get(u * dc + t, col);
                        if !s.is_zero() {
                            block.entry_mut(row, col).sub_product(p, s);
                        }
                    }
                }
            }
        }
    }
    for row in 0..rows {
        for col in 0..dm {
            reducer.insert(coeff.iter().map(|b| b.get(row, col).clone()).collect());
        }
    }
    Ok(reducer
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::from_flat(field, dn, dm, v))
        .collect())
}

/// Whether a right-linear `f : M → N` commutes with the coactions.
pub fn is_colinear(f: &Matrix, m: &Comodule, n: &Comodule) -> Result<bool> {
    if f.shape() != (n.dim(), m.dim()) {
        return Ok(false);
    }
    let linear = m
        .module
        .actions()
        .iter()
        .zip(n.module.actions())
        .all(|(x, y)| &(f * x) == &(y * f));
    if !linear {
        return Ok(false);
    }
    let id = Matrix::identity(m.field(), m.coring.dim());
    let f_c = induced_map(&m.mc, &n.mc, &[f, &id])?;
    Ok(&n.coaction * f == f_c * &m.coaction)
}

/// The defining adjunction `Hom^C(M, N ⊗_A C) ≅ Hom_A(M, N)` as mutually
/// inverse coordinate matrices between the two computed bases.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub induced: Comodule,
    pub colinear_basis: Vec<Matrix>,
    pub linear_basis: Vec<Matrix>,
    /// `g ↦ (N ⊗ ε) ∘ g`.
    pub forward: Matrix,
    /// `f ↦ (f ⊗ C) ∘ ρ`.
    pub backward: Matrix,
}

/// `N ⊗ ε` followed by `N ⊗_A A ≅ N`, on the induced comodule.
pub fn induced_counit(induced: &Comodule, n: &RightModule) -> Result<Matrix> {
    let coring = &induced.coring;
    let field = coring.field();
    let nc = TensorSpace::pair(n, coring.bimodule())?;
    let na = TensorSpace::pair(n, &Bimodule::regular(coring.algebra().clone()))?;
    let id = Matrix::identity(field, n.dim());
    let m = induced_map(&nc, &na, &[&id, coring.counit()])?;
    Ok(unit_iso(&na, UnitSide::Right)?.0 * m)
}

/// `(f ⊗ C) ∘ ρ^M : M → N ⊗_A C` for a right-linear `f : M → N`.
pub fn lift_to_induced(m: &Comodule, n: &RightModule, f: &Matrix) -> Result<Matrix> {
    let nc = TensorSpace::pair(n, m.coring.bimodule())?;
    let id = Matrix::identity(m.field(), m.coring.dim());
    Ok(induced_map(&m.mc, &nc, &[f, &id])? * &m.coaction)
}

pub fn adjunction_iso(m: &Comodule, n: &RightModule) -> Result<Adjunction> {
    let field = m.field();
    let induced = induced_comodule(&m.coring, n)?;
    let colinear_basis = colinear_hom_basis(m, &induced)?;
    let linear_basis = right_linear_hom_basis(&m.module, n)?;
    let counit = induced_counit(&induced, n)?;
    let coords = |basis: &[Matrix], target: &Matrix| {
        coordinates_in_span(field, basis, target)
            .ok_or_else(|| Error::Invariant("adjunction image left the hom space".into()))
    };
    let forward_cols = colinear_basis
        .iter()
        .map(|g| coords(&linear_basis, &(&counit * g)))
        .collect::<Result<Vec<_>>>()?;
    let backward_cols = linear_basis
        .iter()
        .map(|f| coords(&colinear_basis, &lift_to_induced(m, n, f)?))
        .collect::<Result<Vec<_>>>()?;
    let forward = Matrix::from_columns(field, linear_basis.len(), &forward_cols);
    let backward = Matrix::from_columns(field, colinear_basis.len(), &backward_cols);
    Ok(Adjunction {
        induced,
        colinear_basis,
        linear_basis,
        forward,
        backward,
    })
}

/// Some colinear `h : M ⊗_A C → M` with `h ∘ ρ = 1`.
pub fn is_relative_injective(m: &Comodule) -> Result<Option<Matrix>> {
    let field = m.field();
    let induced = induced_comodule(&m.coring, &m.module)?;
    let basis = colinear_hom_basis(&induced, m)?;
    let composites: Vec<Matrix> = basis.iter().map(|h| h * &m.coaction).collect();
    let id = Matrix::identity(field, m.dim());
    let Some(t) = coordinates_in_span(field, &composites, &id) else {
        return Ok(None);
    };
    let h = combine(field, &basis, &t, m.dim(), induced.dim());
    if &h * &m.coaction != id || !is_colinear(&h, &induced, m)? {
        return Err(Error::Invariant("retraction failed re-verification".into()));
    }
    Ok(Some(h))
}

/// `ν_M = (M ⊗ δ) ∘ (ρ ⊗ C) : M ⊗_A C → M`.
pub fn nu_map(m: &Comodule, delta: &Cointegral) -> Result<Matrix> {
    let field = m.field();
    let coring = &m.coring;
    let (rho_c, _) = coaction_extensions(m)?;
    let ma = m.right_unit_space()?;
    let id = Matrix::identity(field, m.dim());
    let on_pairs = delta.on_raw_pairs(coring);
    let m_delta = induced_map(&m.mcc, &ma, &[&id, &on_pairs])?;
    let nu = unit_iso(&ma, UnitSide::Right)?.0 * m_delta * rho_c;
    if &nu * &m.coaction != id {
        return Err(Error::Invariant("nu is not a retraction of the coaction".into()));
    }
    Ok(nu)
}

/// `λ(c) = δ(e ⊗ c)`.
pub fn lambda_map(c: &Coring, sup: &Supplement) -> Matrix {
    let field = c.field();
    let columns: Vec<Vec<Scalar>> = (0..c.dim())
        .map(|j| {
            let cj = field.unit_vector(c.dim(), j);
            sup.cointegral.matrix().apply(&c.simple_pair(&sup.element, &cj))
        })
        .collect();
    Matrix::from_columns(field, c.algebra().dim(), &columns)
}

/// `r_A(c) = Σ e_1 δ(e_2 ⊗ c)` from the expanded coproduct of `e`.
fn r_regular_direct(c: &Coring, sup: &Supplement) -> Matrix {
    let field = c.field();
    let d = c.dim();
    let w = c.raw_coproduct().apply(&sup.element);
    let on_pairs = sup.cointegral.on_raw_pairs(c);
    let columns: Vec<Vec<Scalar>> = (0..d)
        .map(|r| {
            let mut v = vec![field.zero(); d];
            for i in 0..d {
                for j in 0..d {
                    let wij = &w[i * d + j];
                    if wij.is_zero() {
                        continue;
                    }
                    for k in 0..c.algebra().dim() {
                        let coeff = on_pairs.get(k, j * d + r);
                        if coeff.is_zero() {
                            continue;
                        }
                        let scale = wij * coeff;
                        let image = c.bimodule().right_action(k).column(i);
                        for (slot, x) in v.iter_mut().zip(&image) {
                            slot.add_product(&scale, x);
                        }
                    }
                }
            }
            v
        })
        .collect();
    Matrix::from_columns(field, d, &columns)
}

/// `r_A = (λ ⊗ C) ∘ Δ` through `A ⊗_A C ≅ C`.
pub fn r_regular(c: &Coring, sup: &Supplement) -> Result<Matrix> {
    let lambda = lambda_map(c, sup);
    let id = Matrix::identity(c.field(), c.dim());
    let m = induced_map(c.pair_space(), c.a_c(), &[&lambda, &id])?;
    Ok(&c.left_unit().0 * m * c.coproduct())
}

/// `r_N : N ⊗_A C → N ⊗_A C`, `n ⊗ c ↦ Σ n ⊗ e_1 δ(e_2 ⊗ c)`, computed
/// from the expanded formula and cross-checked against `N ⊗ r_A`.
pub fn r_map(c: &Coring, sup: &Supplement, n: &RightModule) -> Result<Matrix> {
    let field = c.field();
    let nc = TensorSpace::pair(n, c.bimodule())?;
    let id_n = Matrix::identity(field, n.dim());
    let direct_regular = r_regular_direct(c, sup);
    let raw = nc.projection() * id_n.kron(&direct_regular);
    let direct = nc.descend(&raw)?;
    let via_regular = induced_map(&nc, &nc, &[&id_n, &r_regular(c, sup)?])?;
    if direct != via_regular {
        return Err(Error::Invariant(
            "the two constructions of r_N disagree".into(),
        ));
    }
    Ok(direct)
}

/// `κ_M(m) = Σ m_0 δ(e ⊗ m_1)`.
pub fn kappa_map(m: &Comodule, sup: &Supplement) -> Result<Matrix> {
    let field = m.field();
    let coring = &m.coring;
    let lambda = lambda_map(coring, sup);
    let (dm, dc) = (m.dim(), coring.dim());
    let mut raw = Matrix::zeros(field, dm, dm * dc);
    for s in 0..dm {
        for t in 0..dc {
            for k in 0..coring.algebra().dim() {
                let coeff = lambda.get(k, t);
                if coeff.is_zero() {
                    continue;
                }
                for row in 0..dm {
                    let x = m.module.action(k).get(row, s);
                    if !x.is_zero() {
                        raw.entry_mut(row, s * dc + t).add_product(coeff, x);
                    }
                }
            }
        }
    }
    Ok(m.mc.descend(&raw)? * &m.coaction)
}

/// A right-linear `λ_M` with `λ_M ∘ κ_M = 1`, or `None` when `M` is not
/// formally smooth.
pub fn is_smooth(m: &Comodule, sup: &Supplement) -> Result<Option<Matrix>> {
    let field = m.field();
    let kappa = kappa_map(m, sup)?;
    let basis = right_linear_hom_basis(&m.module, &m.module)?;
    let composites: Vec<Matrix> = basis.iter().map(|h| h * &kappa).collect();
    let id = Matrix::identity(field, m.dim());
    let Some(t) = coordinates_in_span(field, &composites, &id) else {
        return Ok(None);
    };
    let retraction = combine(field, &basis, &t, m.dim(), m.dim());
    let linear = m
        .module
        .actions()
        .iter()
        .all(|x| &(&retraction * x) == &(x * &retraction));
    if &retraction * &kappa != id || !linear {
        return Err(Error::Invariant("smoothness certificate failed re-verification".into()));
    }
    Ok(Some(retraction))
}

/// A left inverse `ξ` of `λ` in `C*`, certifying that every comodule is
/// formally cosmooth.
pub fn is_cosmooth_global(c: &Coring, sup: &Supplement) -> Result<Option<Matrix>> {
    let field = c.field();
    let lambda = lambda_map(c, sup);
    let ring = right_dual_ring(c)?;
    let products = ring
        .basis
        .iter()
        .map(|xi| right_dual_product(c, xi, &lambda))
        .collect::<Result<Vec<_>>>()?;
    let Some(t) = coordinates_in_span(field, &products, c.counit()) else {
        return Ok(None);
    };
    let xi = ring.element(&t);
    if &right_dual_product(c, &xi, &lambda)? != c.counit() {
        return Err(Error::Invariant("cosmoothness certificate failed re-verification".into()));
    }
    Ok(Some(xi))
}
