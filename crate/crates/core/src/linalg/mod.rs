//! Exact field arithmetic and the dense linear algebra everything else
//! reduces to. No floating point: every structural question downstream is
//! an exact rank or feasibility question.

mod matrix;
mod reduce;
mod scalar;

pub use matrix::Matrix;
pub use reduce::{
    combine, coordinates_in_span, inverse, is_surjective, kernel_basis, quotient_by,
    quotient_from_reducer, rref, solve, solve_vector, Quotient, RowReducer,
};
pub use scalar::{Field, Scalar, MAX_PRIME};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{context}: expected dimension {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unrecognised field `{0}` (expected `q` or `fp:<p>`)")]
    BadField(String),
    #[error("cannot read `{0}` as a field element")]
    BadScalar(String),
}

/// Builds the coefficient matrix of a linear operator given its values on
/// the standard basis of the unknowns.
pub fn operator_matrix(
    field: Field,
    out_dim: usize,
    unknowns: usize,
    mut image_of: impl FnMut(usize) -> Vec<Scalar>,
) -> Matrix {
    let columns: Vec<Vec<Scalar>> = (0..unknowns).map(&mut image_of).collect();
    Matrix::from_columns(field, out_dim, &columns)
}

/// Accumulates stacked constraint blocks `A x = b` over a fixed set of
/// unknowns.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Field,
    unknowns: usize,
    coefficients: Matrix,
    rhs: Vec<Scalar>,
}

impl LinearSystem {
    pub fn new(field: Field, unknowns: usize) -> Self {
        LinearSystem {
            field,
            unknowns,
            coefficients: Matrix::zeros(field, 0, unknowns),
            rhs: Vec::new(),
        }
    }

    pub fn push_block(&mut self, coefficients: Matrix, rhs: Vec<Scalar>) {
        assert_eq!(coefficients.cols(), self.unknowns, "unknown count mismatch");
        assert_eq!(coefficients.rows(), rhs.len(), "rhs length mismatch");
        self.coefficients = self.coefficients.vstack(&coefficients);
        self.rhs.extend(rhs);
    }

    pub fn push_homogeneous(&mut self, coefficients: Matrix) {
        let rows = coefficients.rows();
        self.push_block(coefficients, vec![self.field.zero(); rows]);
    }

    pub fn coefficients(&self) -> &Matrix {
        &self.coefficients
    }

    /// Canonical particular solution plus a basis of the homogeneous
    /// solution space.
    pub fn solve(&self) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
        let particular = solve_vector(&self.coefficients, &self.rhs).expect("rows agree")?;
        Some((particular, kernel_basis(&self.coefficients)))
    }
}
