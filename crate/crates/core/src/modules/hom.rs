use super::{Bimodule, RightModule};
use crate::algebra::same_algebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Field, Matrix, RowReducer, Scalar};

/// Feeds one equation row per entry of `f·X − Y·f = 0` for every pair
/// `(X, Y)`, with `f` (`tgt_dim × src_dim`) flattened row-major.
pub(crate) fn commutation_rows(
    field: Field,
    src_dim: usize,
    tgt_dim: usize,
    pairs: &[(&Matrix, &Matrix)],
    mut sink: impl FnMut(Vec<Scalar>),
) {
    let unknowns = tgt_dim * src_dim;
    for (x, y) in pairs {
        for r in 0..tgt_dim {
            for c in 0..src_dim {
                let mut row = vec![field.zero(); unknowns];
                // (f X)[r][c] = Σ_u f[r][u] X[u][c]
                for u in 0..src_dim {
                    let v = x.get(u, c);
                    if !v.is_zero() {
                        row[r * src_dim + u] += v;
                    }
                }
                // (Y f)[r][c] = Σ_u Y[r][u] f[u][c]
                for u in 0..tgt_dim {
                    let v = y.get(r, u);
                    if !v.is_zero() {
                        row[u * src_dim + c] -= v;
                    }
                }
                sink(row);
            }
        }
    }
}

/// Basis of `{f : tgt_dim × src_dim | f·X = Y·f for every (X, Y)}`, with `X`
/// acting on the source and `Y` on the target. Canonically ordered by the
/// pivot pattern of the commutation system.
pub fn commuting_maps(
    field: Field,
    src_dim: usize,
    tgt_dim: usize,
    pairs: &[(&Matrix, &Matrix)],
) -> Vec<Matrix> {
    let mut reducer = RowReducer::new(field, tgt_dim * src_dim);
    commutation_rows(field, src_dim, tgt_dim, pairs, |row| {
        reducer.insert(row);
    });
    reducer
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::from_flat(field, tgt_dim, src_dim, v))
        .collect()
}

pub fn right_linear_hom_basis(m: &RightModule, n: &RightModule) -> Result<Vec<Matrix>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Incompatible("modules over different algebras".into()));
    }
    let pairs: Vec<_> = m.actions().iter().zip(n.actions()).collect();
    Ok(commuting_maps(m.field(), m.dim(), n.dim(), &pairs))
}

/// Left-linear maps between the left structures of two bimodules.
pub fn left_linear_hom_basis(m: &Bimodule, n: &Bimodule) -> Result<Vec<Matrix>> {
    if !same_algebra(m.left_algebra(), n.left_algebra()) {
        return Err(Error::Incompatible("modules over different algebras".into()));
    }
    let pairs: Vec<_> = m.left_actions().iter().zip(n.left_actions()).collect();
    Ok(commuting_maps(m.field(), m.dim(), n.dim(), &pairs))
}

pub fn bimodule_map_basis(m: &Bimodule, n: &Bimodule) -> Result<Vec<Matrix>> {
    if !same_algebra(m.left_algebra(), n.left_algebra())
        || !same_algebra(m.right_algebra(), n.right_algebra())
    {
        return Err(Error::Incompatible("bimodules over different algebras".into()));
    }
    let pairs: Vec<_> = m
        .left_actions()
        .iter()
        .zip(n.left_actions())
        .chain(m.right_actions().iter().zip(n.right_actions()))
        .collect();
    Ok(commuting_maps(m.field(), m.dim(), n.dim(), &pairs))
}

/// Basis of `C^A = {c : a c = c a for all a}`.
pub fn central_elements(c: &Bimodule) -> Result<Vec<Vec<Scalar>>> {
    if !same_algebra(c.left_algebra(), c.right_algebra()) {
        return Err(Error::Incompatible(
            "central elements need the same algebra on both sides".into(),
        ));
    }
    let field = c.field();
    let mut system = Matrix::zeros(field, 0, c.dim());
    for (l, r) in c.left_actions().iter().zip(c.right_actions()) {
        system = system.vstack(&(l - r));
    }
    Ok(kernel_basis(&system))
}
