//! Right modules and bimodules given by action matrices, hom-space solvers,
//! and balanced tensor products realised as explicit quotient spaces.

mod hom;
mod tensor;

pub(crate) use hom::commutation_rows;
pub use hom::{
    bimodule_map_basis, central_elements, commuting_maps, left_linear_hom_basis,
    right_linear_hom_basis,
};
pub use tensor::{associator, induced_map, simple_tensor, unit_iso, Factor, TensorSpace, UnitSide};

use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

fn combination(field: Field, dim: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = &out + &m.scale(c);
        }
    }
    out
}

fn check_action_shapes(what: &str, dim: usize, algebra: &Algebra, mats: &[Matrix]) -> Result<()> {
    if mats.len() != algebra.dim() {
        return Err(Error::InvalidModule(format!(
            "{what}: {} action matrices for an algebra of dimension {}",
            mats.len(),
            algebra.dim()
        )));
    }
    if let Some(i) = mats.iter().position(|m| m.shape() != (dim, dim)) {
        return Err(Error::InvalidModule(format!(
            "{what}: action matrix for {} is not {dim}x{dim}",
            algebra.labels()[i]
        )));
    }
    Ok(())
}

/// `R_j R_i = Σ_k c[i][j][k] R_k` and `Σ u_k R_k = 1`.
fn check_right_laws(what: &str, dim: usize, algebra: &Algebra, mats: &[Matrix]) -> Result<()> {
    let field = algebra.field();
    check_action_shapes(what, dim, algebra, mats)?;
    if !combination(field, dim, mats, algebra.unit()).is_identity() {
        return Err(Error::InvalidModule(format!("{what}: the unit does not act as the identity")));
    }
    let n = algebra.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = &mats[j] * &mats[i];
            let rhs = combination(field, dim, mats, algebra.product(i, j));
            if lhs != rhs {
                return Err(Error::InvalidModule(format!(
                    "{what}: (m {0}) {1} != m ({0} {1})",
                    algebra.labels()[i],
                    algebra.labels()[j]
                )));
            }
        }
    }
    Ok(())
}

/// `L_i L_j = Σ_k c[i][j][k] L_k` and `Σ u_k L_k = 1`.
fn check_left_laws(what: &str, dim: usize, algebra: &Algebra, mats: &[Matrix]) -> Result<()> {
    let field = algebra.field();
    check_action_shapes(what, dim, algebra, mats)?;
    if !combination(field, dim, mats, algebra.unit()).is_identity() {
        return Err(Error::InvalidModule(format!("{what}: the unit does not act as the identity")));
    }
    let n = algebra.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = &mats[i] * &mats[j];
            let rhs = combination(field, dim, mats, algebra.product(i, j));
            if lhs != rhs {
                return Err(Error::InvalidModule(format!(
                    "{what}: {0} ({1} m) != ({0} {1}) m",
                    algebra.labels()[i],
                    algebra.labels()[j]
                )));
            }
        }
    }
    Ok(())
}

/// A right `A`-module: `coords(m · a_j) = action[j] · coords(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl RightModule {
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        check_right_laws("right module", dim, &algebra, &action)?;
        Ok(RightModule {
            algebra,
            dim,
            action,
        })
    }

    /// `A_A`.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let action = algebra.right_mults().to_vec();
        RightModule {
            dim: algebra.dim(),
            algebra,
            action,
        }
    }

    pub fn free(algebra: Arc<Algebra>, rank: usize) -> Self {
        (0..rank).fold(Self::zero(algebra.clone()), |acc, _| {
            acc.direct_sum(&Self::regular(algebra.clone()))
                .expect("same algebra")
        })
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let field = algebra.field();
        let action = vec![Matrix::zeros(field, 0, 0); algebra.dim()];
        RightModule {
            algebra,
            dim: 0,
            action,
        }
    }

    pub fn direct_sum(&self, other: &RightModule) -> Result<Self> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::Incompatible("direct sum over different algebras".into()));
        }
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| block_diagonal(a, b))
            .collect();
        Ok(RightModule {
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            action,
        })
    }

    /// Same module in the basis given by the columns of `change`
    /// (`new coords = change^{-1} · old coords`).
    pub fn change_basis(&self, change: &Matrix, change_inv: &Matrix) -> Self {
        let action = self.action.iter().map(|r| change_inv * r * change).collect();
        RightModule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            action,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, j: usize) -> &Matrix {
        &self.action[j]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of `m ↦ m · a` for an arbitrary algebra element.
    pub fn action_by(&self, a: &[Scalar]) -> Matrix {
        combination(self.field(), self.dim, &self.action, a)
    }
}

pub(crate) fn block_diagonal(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field();
    let mut m = Matrix::zeros(field, a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    m
}

/// An `(A, B)`-bimodule with commuting left `A`- and right `B`-actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    left_algebra: Arc<Algebra>,
    right_algebra: Arc<Algebra>,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(
        left_algebra: Arc<Algebra>,
        right_algebra: Arc<Algebra>,
        dim: usize,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Self> {
        check_left_laws("bimodule left action", dim, &left_algebra, &left)?;
        check_right_laws("bimodule right action", dim, &right_algebra, &right)?;
        for (i, l) in left.iter().enumerate() {
            for (j, r) in right.iter().enumerate() {
                if &(l * r) != &(r * l) {
                    return Err(Error::InvalidModule(format!(
                        "bimodule: ({} m) {} != {} (m {})",
                        left_algebra.labels()[i],
                        right_algebra.labels()[j],
                        left_algebra.labels()[i],
                        right_algebra.labels()[j]
                    )));
                }
            }
        }
        Ok(Bimodule {
            left_algebra,
            right_algebra,
            dim,
            left,
            right,
        })
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        Bimodule {
            dim: algebra.dim(),
            left: algebra.left_mults().to_vec(),
            right: algebra.right_mults().to_vec(),
            left_algebra: algebra.clone(),
            right_algebra: algebra,
        }
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right_algebra
    }

    pub fn field(&self) -> Field {
        self.left_algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_action(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right_action(&self, j: usize) -> &Matrix {
        &self.right[j]
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right
    }

    pub fn left_action_by(&self, a: &[Scalar]) -> Matrix {
        combination(self.field(), self.dim, &self.left, a)
    }

    pub fn right_action_by(&self, a: &[Scalar]) -> Matrix {
        combination(self.field(), self.dim, &self.right, a)
    }

    pub fn as_right_module(&self) -> RightModule {
        RightModule {
            algebra: self.right_algebra.clone(),
            dim: self.dim,
            action: self.right.clone(),
        }
    }
}
