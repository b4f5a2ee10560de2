//! Corings over a finite-dimensional algebra: axioms, the two dual rings,
//! and the linear solvers for cosplit, cointegral and Frobenius data.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{combine, coordinates_in_span, solve_vector, Field, LinearSystem, Matrix, Scalar};
use crate::modules::{
    central_elements, commutation_rows, induced_map, left_linear_hom_basis,
    right_linear_hom_basis, unit_iso, Bimodule, RightModule, TensorSpace, UnitSide,
};
use crate::verdict::Verdict;

/// An `A`-coring. The coproduct lands in quotient coordinates of `C ⊗_A C`.
#[derive(Clone, Debug)]
pub struct Coring {
    algebra: Arc<Algebra>,
    bimodule: Bimodule,
    coproduct: Matrix,
    counit: Matrix,
    pair: TensorSpace,
    triple: TensorSpace,
    a_c: TensorSpace,
    c_a: TensorSpace,
    left_unit: (Matrix, Matrix),
    right_unit: (Matrix, Matrix),
}

impl Coring {
    pub fn new(bimodule: Bimodule, coproduct: Matrix, counit: Matrix) -> Result<Self> {
        let algebra = bimodule.left_algebra().clone();
        if !same_algebra(&algebra, bimodule.right_algebra()) {
            return Err(Error::Incompatible(
                "a coring needs the same algebra on both sides".into(),
            ));
        }
        let regular = Bimodule::regular(algebra.clone());
        let pair = TensorSpace::pair(&bimodule, &bimodule)?;
        let triple = TensorSpace::new(vec![(&bimodule).into(), (&bimodule).into(), (&bimodule).into()])?;
        let a_c = TensorSpace::pair(&regular, &bimodule)?;
        let c_a = TensorSpace::pair(&bimodule, &regular)?;
        let c = bimodule.dim();
        if coproduct.shape() != (pair.dim(), c) {
            return Err(Error::Dimension {
                context: format!("coproduct should be {}x{c}", pair.dim()),
                expected: pair.dim() * c,
                found: coproduct.rows() * coproduct.cols(),
            });
        }
        if counit.shape() != (algebra.dim(), c) {
            return Err(Error::Dimension {
                context: format!("counit should be {}x{c}", algebra.dim()),
                expected: algebra.dim() * c,
                found: counit.rows() * counit.cols(),
            });
        }
        let left_unit = unit_iso(&a_c, UnitSide::Left)?;
        let right_unit = unit_iso(&c_a, UnitSide::Right)?;
        Ok(Coring {
            algebra,
            bimodule,
            coproduct,
            counit,
            pair,
            triple,
            a_c,
            c_a,
            left_unit,
            right_unit,
        })
    }

    /// Same as [`Coring::new`] with the coproduct given on raw `C ⊗ C`
    /// coordinates (`dim C² × dim C`); it is projected to the quotient.
    pub fn from_raw_coproduct(bimodule: Bimodule, raw: Matrix, counit: Matrix) -> Result<Self> {
        let c = bimodule.dim();
        if raw.shape() != (c * c, c) {
            return Err(Error::Dimension {
                context: format!("raw coproduct should be {}x{c}", c * c),
                expected: c * c * c,
                found: raw.rows() * raw.cols(),
            });
        }
        let pair = TensorSpace::pair(&bimodule, &bimodule)?;
        let coproduct = pair.projection() * &raw;
        Self::new(bimodule, coproduct, counit)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.bimodule.dim()
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn coproduct(&self) -> &Matrix {
        &self.coproduct
    }

    /// A lift of the coproduct to raw `C ⊗ C` coordinates.
    pub fn raw_coproduct(&self) -> Matrix {
        self.pair.section() * &self.coproduct
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    /// `C ⊗_A C`.
    pub fn pair_space(&self) -> &TensorSpace {
        &self.pair
    }

    /// The flat `C ⊗_A C ⊗_A C`.
    pub fn triple_space(&self) -> &TensorSpace {
        &self.triple
    }

    /// `A ⊗_A C` and its identification with `C`.
    pub fn a_c(&self) -> &TensorSpace {
        &self.a_c
    }

    pub fn c_a(&self) -> &TensorSpace {
        &self.c_a
    }

    /// `(A ⊗_A C → C, C → A ⊗_A C)`.
    pub fn left_unit(&self) -> &(Matrix, Matrix) {
        &self.left_unit
    }

    /// `(C ⊗_A A → C, C → C ⊗_A A)`.
    pub fn right_unit(&self) -> &(Matrix, Matrix) {
        &self.right_unit
    }

    pub fn as_right_module(&self) -> RightModule {
        self.bimodule.as_right_module()
    }

    fn identity(&self) -> Matrix {
        Matrix::identity(self.field(), self.dim())
    }

    /// `Δ ⊗ C` and `C ⊗ Δ` from `C ⊗_A C` to the flat triple product.
    pub fn coproduct_extensions(&self) -> Result<(Matrix, Matrix)> {
        let raw = self.raw_coproduct();
        let id = self.identity();
        let left = induced_map(&self.pair, &self.triple, &[&raw, &id])?;
        let right = induced_map(&self.pair, &self.triple, &[&id, &raw])?;
        Ok((left, right))
    }

    /// `ε ⊗ C` followed by `A ⊗_A C ≅ C`.
    pub fn counit_left(&self) -> Result<Matrix> {
        let m = induced_map(&self.pair, &self.a_c, &[&self.counit, &self.identity()])?;
        Ok(&self.left_unit.0 * &m)
    }

    /// `C ⊗ ε` followed by `C ⊗_A A ≅ C`.
    pub fn counit_right(&self) -> Result<Matrix> {
        let m = induced_map(&self.pair, &self.c_a, &[&self.identity(), &self.counit])?;
        Ok(&self.right_unit.0 * &m)
    }

    /// Quotient coordinates of `x ⊗ y` in `C ⊗_A C`.
    pub fn simple_pair(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.pair.simple(&[x, y])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoringLaw {
    CoproductLeftLinear,
    CoproductRightLinear,
    CounitLeftLinear,
    CounitRightLinear,
    Coassociativity,
    LeftCounit,
    RightCounit,
}

impl fmt::Display for CoringLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoringLaw::CoproductLeftLinear => "coproduct is left A-linear",
            CoringLaw::CoproductRightLinear => "coproduct is right A-linear",
            CoringLaw::CounitLeftLinear => "counit is left A-linear",
            CoringLaw::CounitRightLinear => "counit is right A-linear",
            CoringLaw::Coassociativity => "coassociativity",
            CoringLaw::LeftCounit => "left counit law",
            CoringLaw::RightCounit => "right counit law",
        };
        f.write_str(s)
    }
}

/// First violated law and the basis vector of `C` on which it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoringViolation {
    pub law: CoringLaw,
    pub basis: usize,
}

impl fmt::Display for CoringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails on basis vector c{}", self.law, self.basis)
    }
}

/// First column on which two equally shaped matrices differ.
pub(crate) fn first_differing_column(a: &Matrix, b: &Matrix) -> Option<usize> {
    (0..a.cols()).find(|&c| (0..a.rows()).any(|r| a.get(r, c) != b.get(r, c)))
}

/// First column `j` such that `f · X_i ≠ Y_i · f` on `e_j` for some `i`.
pub(crate) fn linearity_failure(f: &Matrix, pairs: &[(&Matrix, &Matrix)]) -> Option<usize> {
    pairs
        .iter()
        .filter_map(|(x, y)| first_differing_column(&(f * *x), &(*y * f)))
        .min()
}

pub fn check_coring(c: &Coring) -> Verdict<CoringViolation> {
    match coring_violation(c) {
        Ok(None) => Verdict::Pass,
        Ok(Some(v)) => Verdict::Fail(v),
        // A failed descent means Δ is not balanced, which linearity covers.
        Err(_) => Verdict::Fail(CoringViolation {
            law: CoringLaw::CoproductRightLinear,
            basis: 0,
        }),
    }
}

fn coring_violation(c: &Coring) -> Result<Option<CoringViolation>> {
    let a = &c.algebra;
    let b = &c.bimodule;
    let fail = |law, basis| Ok(Some(CoringViolation { law, basis }));
    let pairs: Vec<_> = b
        .left_actions()
        .iter()
        .zip(c.pair.left_action().expect("bimodule factors"))
        .collect();
    if let Some(j) = linearity_failure(&c.coproduct, &pairs) {
        return fail(CoringLaw::CoproductLeftLinear, j);
    }
    let pairs: Vec<_> = b
        .right_actions()
        .iter()
        .zip(c.pair.right_action().expect("bimodule factors"))
        .collect();
    if let Some(j) = linearity_failure(&c.coproduct, &pairs) {
        return fail(CoringLaw::CoproductRightLinear, j);
    }
    let pairs: Vec<_> = b.left_actions().iter().zip(a.left_mults()).collect();
    if let Some(j) = linearity_failure(&c.counit, &pairs) {
        return fail(CoringLaw::CounitLeftLinear, j);
    }
    let pairs: Vec<_> = b.right_actions().iter().zip(a.right_mults()).collect();
    if let Some(j) = linearity_failure(&c.counit, &pairs) {
        return fail(CoringLaw::CounitRightLinear, j);
    }
    let (d_left, d_right) = c.coproduct_extensions()?;
    if let Some(j) = first_differing_column(&(&d_left * &c.coproduct), &(&d_right * &c.coproduct)) {
        return fail(CoringLaw::Coassociativity, j);
    }
    let id = c.identity();
    if let Some(j) = first_differing_column(&(c.counit_left()? * &c.coproduct), &id) {
        return fail(CoringLaw::LeftCounit, j);
    }
    if let Some(j) = first_differing_column(&(c.counit_right()? * &c.coproduct), &id) {
        return fail(CoringLaw::RightCounit, j);
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualSide {
    /// `C*`: right-linear maps `C → A`.
    Right,
    /// `*C`: left-linear maps `C → A`.
    Left,
}

/// A dual ring realised on a basis of maps `C → A`.
#[derive(Clone, Debug)]
pub struct DualRing {
    pub side: DualSide,
    pub algebra: Algebra,
    /// Basis maps, each `dim A × dim C`.
    pub basis: Vec<Matrix>,
}

impl DualRing {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a map in the basis, if it lies in the span.
    pub fn coordinates(&self, map: &Matrix) -> Option<Vec<Scalar>> {
        coordinates_in_span(self.algebra.field(), &self.basis, map)
    }

    pub fn element(&self, coords: &[Scalar]) -> Matrix {
        let field = self.algebra.field();
        let (r, c) = self.basis.first().map_or((0, 0), Matrix::shape);
        combine(field, &self.basis, coords, r, c)
    }
}

/// `ξ ξ' = ξ ∘ (ξ' ⊗ C) ∘ Δ` in `C*`.
pub fn right_dual_product(c: &Coring, xi: &Matrix, xi2: &Matrix) -> Result<Matrix> {
    let m = induced_map(&c.pair, &c.a_c, &[xi2, &c.identity()])?;
    Ok(xi * &c.left_unit.0 * &m * &c.coproduct)
}

/// `r s = r ∘ (C ⊗ s) ∘ Δ` in `*C`.
pub fn left_dual_product(c: &Coring, r: &Matrix, s: &Matrix) -> Result<Matrix> {
    let m = induced_map(&c.pair, &c.c_a, &[&c.identity(), s])?;
    Ok(r * &c.right_unit.0 * &m * &c.coproduct)
}

fn dual_ring(c: &Coring, side: DualSide) -> Result<DualRing> {
    let field = c.field();
    let basis = match side {
        DualSide::Right => right_linear_hom_basis(
            &c.as_right_module(),
            &RightModule::regular(c.algebra.clone()),
        )?,
        DualSide::Left => {
            left_linear_hom_basis(&c.bimodule, &Bimodule::regular(c.algebra.clone()))?
        }
    };
    let d = basis.len();
    let mut products = Vec::with_capacity(d * d);
    for x in &basis {
        for y in &basis {
            let p = match side {
                DualSide::Right => right_dual_product(c, x, y)?,
                DualSide::Left => left_dual_product(c, x, y)?,
            };
            let coords = coordinates_in_span(field, &basis, &p).ok_or_else(|| {
                Error::Invariant("dual-ring product left the space of linear maps".into())
            })?;
            products.push(coords);
        }
    }
    let unit = coordinates_in_span(field, &basis, &c.counit)
        .ok_or_else(|| Error::Invariant("the counit is not a linear map C -> A".into()))?;
    let prefix = match side {
        DualSide::Right => "xi",
        DualSide::Left => "r",
    };
    let labels = (0..d).map(|i| format!("{prefix}{i}")).collect();
    let algebra = Algebra::new(field, labels, products, unit)
        .map_err(|e| Error::Invariant(format!("dual ring is not an algebra: {e}")))?;
    Ok(DualRing {
        side,
        algebra,
        basis,
    })
}

/// `C*` with unit `ε`.
pub fn right_dual_ring(c: &Coring) -> Result<DualRing> {
    dual_ring(c, DualSide::Right)
}

/// `*C` with unit `ε`.
pub fn left_dual_ring(c: &Coring) -> Result<DualRing> {
    dual_ring(c, DualSide::Left)
}

/// Some `e ∈ C^A` with `ε(e) = 1`.
pub fn find_cosplit_element(c: &Coring) -> Result<Option<Vec<Scalar>>> {
    let field = c.field();
    let central = central_elements(&c.bimodule)?;
    let z = Matrix::from_columns(field, c.dim(), &central);
    let system = &c.counit * &z;
    let Some(t) = solve_vector(&system, c.algebra.unit())? else {
        return Ok(None);
    };
    let e = z.apply(&t);
    if !is_central(c, &e) || c.counit.apply(&e) != c.algebra.unit() {
        return Err(Error::Invariant("cosplit element failed re-verification".into()));
    }
    Ok(Some(e))
}

pub fn is_central(c: &Coring, e: &[Scalar]) -> bool {
    e.len() == c.dim()
        && c.bimodule
            .left_actions()
            .iter()
            .zip(c.bimodule.right_actions())
            .all(|(l, r)| l.apply(e) == r.apply(e))
}

/// A verified cointegral `δ : C ⊗_A C → A`, in quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cointegral {
    delta: Matrix,
}

impl Cointegral {
    pub fn new(c: &Coring, delta: Matrix) -> Result<Self> {
        match check_cointegral(c, &delta)? {
            Verdict::Pass => Ok(Cointegral { delta }),
            Verdict::Fail(law) => Err(Error::Invariant(format!("not a cointegral: {law}"))),
        }
    }

    /// From values on raw pairs `c_i ⊗ c_j` (`dim A × dim C²`).
    pub fn from_raw_pairs(c: &Coring, raw: &Matrix) -> Result<Self> {
        let delta = c.pair.descend(raw)?;
        Self::new(c, delta)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.delta
    }

    /// Values on raw pairs, `δ ∘ π`.
    pub fn on_raw_pairs(&self, c: &Coring) -> Matrix {
        &self.delta * c.pair.projection()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CointegralLaw {
    Shape,
    LeftLinear,
    RightLinear,
    Retraction,
    Compatibility,
}

impl fmt::Display for CointegralLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CointegralLaw::Shape => "wrong shape",
            CointegralLaw::LeftLinear => "not left A-linear",
            CointegralLaw::RightLinear => "not right A-linear",
            CointegralLaw::Retraction => "delta composed with the coproduct is not the counit",
            CointegralLaw::Compatibility => {
                "(C x delta)(Delta x C) != (delta x C)(C x Delta)"
            }
        };
        f.write_str(s)
    }
}

/// `C ⊗ δ` and `δ ⊗ C` on the flat triple product, landing in `C`.
fn delta_extensions(c: &Coring, delta: &Matrix) -> Result<(Matrix, Matrix)> {
    let on_pairs = delta * c.pair.projection();
    let id = c.identity();
    let right = induced_map(&c.triple, &c.c_a, &[&id, &on_pairs])?;
    let left = induced_map(&c.triple, &c.a_c, &[&on_pairs, &id])?;
    Ok((&c.right_unit.0 * &right, &c.left_unit.0 * &left))
}

/// Substitution check of the three cointegral constraint families.
pub fn check_cointegral(c: &Coring, delta: &Matrix) -> Result<Verdict<CointegralLaw>> {
    if delta.shape() != (c.algebra.dim(), c.pair.dim()) {
        return Ok(Verdict::Fail(CointegralLaw::Shape));
    }
    let left: Vec<_> = c
        .pair
        .left_action()
        .expect("bimodule factors")
        .iter()
        .zip(c.algebra.left_mults())
        .collect();
    if linearity_failure(delta, &left).is_some() {
        return Ok(Verdict::Fail(CointegralLaw::LeftLinear));
    }
    let right: Vec<_> = c
        .pair
        .right_action()
        .expect("bimodule factors")
        .iter()
        .zip(c.algebra.right_mults())
        .collect();
    if linearity_failure(delta, &right).is_some() {
        return Ok(Verdict::Fail(CointegralLaw::RightLinear));
    }
    if &(delta * &c.coproduct) != &c.counit {
        return Ok(Verdict::Fail(CointegralLaw::Retraction));
    }
    let (c_delta, delta_c) = delta_extensions(c, delta)?;
    let (d_left, d_right) = c.coproduct_extensions()?;
    if c_delta * d_left != delta_c * d_right {
        return Ok(Verdict::Fail(CointegralLaw::Compatibility));
    }
    Ok(Verdict::Pass)
}

/// The full affine space of cointegrals: a canonical member plus a basis
/// of the homogeneous directions.
#[derive(Clone, Debug)]
pub struct CointegralSolution {
    pub cointegral: Cointegral,
    pub directions: Vec<Matrix>,
}

impl CointegralSolution {
    pub fn solution_dim(&self) -> usize {
        self.directions.len()
    }

    /// Whether `delta` lies in the solution space.
    pub fn contains(&self, delta: &Matrix) -> bool {
        let field = delta.field();
        let diff = delta - self.cointegral.matrix();
        diff.is_zero() || coordinates_in_span(field, &self.directions, &diff).is_some()
    }
}

/// Solves for every `δ` satisfying bilinearity, `δ Δ = ε` and the two-sided
/// compatibility; `None` when the coring is not coseparable.
pub fn find_cointegral(c: &Coring) -> Result<Option<CointegralSolution>> {
    let field = c.field();
    let n = c.algebra.dim();
    let dim_c = c.dim();
    let q2 = c.pair.dim();
    let unknowns = n * q2;
    let mut system = LinearSystem::new(field, unknowns);

    let mut homogeneous = Vec::new();
    let pairs: Vec<_> = c
        .pair
        .left_action()
        .expect("bimodule factors")
        .iter()
        .zip(c.algebra.left_mults())
        .chain(
            c.pair
                .right_action()
                .expect("bimodule factors")
                .iter()
                .zip(c.algebra.right_mults()),
        )
        .collect();
    commutation_rows(field, q2, n, &pairs, |row| homogeneous.push(row));

    // δ Δ = ε: unknown (r, u) enters entry (r, col) with coefficient Δ[u][col].
    let mut retraction = Matrix::zeros(field, n * dim_c, unknowns);
    let mut rhs = Vec::with_capacity(n * dim_c);
    for r in 0..n {
        for col in 0..dim_c {
            for u in 0..q2 {
                let v = c.coproduct.get(u, col);
                if !v.is_zero() {
                    retraction.set(r * dim_c + col, r * q2 + u, v.clone());
                }
            }
            rhs.push(c.counit.get(r, col).clone());
        }
    }

    // Compatibility is linear in δ once bilinearity holds. For the unknown
    // δ = E(k, u) the two sides are R_k W_u and L_k V_u, where W_u, V_u
    // contract the raw triple lifts of Δ ⊗ C and C ⊗ Δ against row u of
    // the pair projection.
    let (d_left, d_right) = c.coproduct_extensions()?;
    let t1 = c.triple.section() * &d_left;
    let t2 = c.triple.section() * &d_right;
    let proj = c.pair.projection();
    let cc = dim_c * dim_c;
    let mut compat_columns = Vec::with_capacity(unknowns);
    let mut w = vec![Matrix::zeros(field, dim_c, q2); q2];
    let mut v = vec![Matrix::zeros(field, dim_c, q2); q2];
    for u in 0..q2 {
        for qr in 0..cc {
            let coeff = proj.get(u, qr);
            if coeff.is_zero() {
                continue;
            }
            for p in 0..dim_c {
                // W_u[p][col] += π[u][(q, r)] T1[(p, q, r)][col]
                let row1 = p * cc + qr;
                // V_u[r][col] += π[u][(p, q)] T2[(p, q, r)][col]
                let row2 = qr * dim_c + p;
                for col in 0..q2 {
                    let x = t1.get(row1, col);
                    if !x.is_zero() {
                        w[u].entry_mut(p, col).add_product(coeff, x);
                    }
                    let y = t2.get(row2, col);
                    if !y.is_zero() {
                        v[u].entry_mut(p, col).add_product(coeff, y);
                    }
                }
            }
        }
    }
    for k in 0..n {
        let rk = c.bimodule.right_action(k);
        let lk = c.bimodule.left_action(k);
        for u in 0..q2 {
            let col = rk * &w[u] - lk * &v[u];
            compat_columns.push(col.into_entries());
        }
    }
    let compat = Matrix::from_columns(field, dim_c * q2, &compat_columns);

    system.push_homogeneous(Matrix::from_rows(field, unknowns, homogeneous));
    system.push_block(retraction, rhs);
    system.push_homogeneous(compat);

    let Some((particular, kernel)) = system.solve() else {
        return Ok(None);
    };
    let delta = Matrix::from_flat(field, n, q2, particular);
    let cointegral = Cointegral::new(c, delta)?;
    let directions = kernel
        .into_iter()
        .map(|k| Matrix::from_flat(field, n, q2, k))
        .collect();
    Ok(Some(CointegralSolution {
        cointegral,
        directions,
    }))
}

/// Some `e ∈ C^A` with `δ(c ⊗ e) = δ(e ⊗ c) = ε(c)` for all `c`.
pub fn find_frobenius_element(c: &Coring, delta: &Cointegral) -> Result<Option<Vec<Scalar>>> {
    let field = c.field();
    let dim_c = c.dim();
    let central = central_elements(&c.bimodule)?;
    let mut columns = Vec::with_capacity(central.len());
    for z in &central {
        let mut col = Vec::new();
        for j in 0..dim_c {
            let cj = field.unit_vector(dim_c, j);
            col.extend(delta.matrix().apply(&c.simple_pair(&cj, z)));
        }
        for j in 0..dim_c {
            let cj = field.unit_vector(dim_c, j);
            col.extend(delta.matrix().apply(&c.simple_pair(z, &cj)));
        }
        columns.push(col);
    }
    let n = c.algebra.dim();
    let mut rhs = Vec::with_capacity(2 * n * dim_c);
    for _ in 0..2 {
        for j in 0..dim_c {
            rhs.extend(c.counit.column(j));
        }
    }
    let system = Matrix::from_columns(field, rhs.len(), &columns);
    let Some(t) = solve_vector(&system, &rhs)? else {
        return Ok(None);
    };
    let z = Matrix::from_columns(field, dim_c, &central);
    let e = z.apply(&t);
    if !is_frobenius_element(c, delta, &e) {
        return Err(Error::Invariant("Frobenius element failed re-verification".into()));
    }
    Ok(Some(e))
}

pub fn is_frobenius_element(c: &Coring, delta: &Cointegral, e: &[Scalar]) -> bool {
    let field = c.field();
    is_central(c, e)
        && (0..c.dim()).all(|j| {
            let cj = field.unit_vector(c.dim(), j);
            let eps = c.counit.column(j);
            delta.matrix().apply(&c.simple_pair(&cj, e)) == eps
                && delta.matrix().apply(&c.simple_pair(e, &cj)) == eps
        })
}

/// Cointegral plus a central element: the data fixing the supplemented
/// structure used by the smoothness deciders.
#[derive(Clone, Debug)]
pub struct Supplement {
    pub cointegral: Cointegral,
    pub element: Vec<Scalar>,
}

impl Supplement {
    pub fn new(c: &Coring, cointegral: Cointegral, element: Vec<Scalar>) -> Result<Self> {
        if !is_central(c, &element) {
            return Err(Error::Invariant("supplement element is not A-central".into()));
        }
        Ok(Supplement {
            cointegral,
            element,
        })
    }
}
