use std::sync::Arc;

use super::{Bimodule, RightModule};
use crate::algebra::{same_algebra, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{quotient_from_reducer, Field, Matrix, Quotient, RowReducer, Scalar};

/// One tensor factor: its dimension and whichever actions it carries.
#[derive(Clone, Debug)]
pub struct Factor {
    dim: usize,
    left: Option<(Arc<Algebra>, Vec<Matrix>)>,
    right: Option<(Arc<Algebra>, Vec<Matrix>)>,
}

impl Factor {
    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl From<&RightModule> for Factor {
    fn from(m: &RightModule) -> Self {
        Factor {
            dim: m.dim(),
            left: None,
            right: Some((m.algebra().clone(), m.actions().to_vec())),
        }
    }
}

impl From<&Bimodule> for Factor {
    fn from(m: &Bimodule) -> Self {
        Factor {
            dim: m.dim(),
            left: Some((m.left_algebra().clone(), m.left_actions().to_vec())),
            right: Some((m.right_algebra().clone(), m.right_actions().to_vec())),
        }
    }
}

/// Flat balanced tensor product `F_0 ⊗ F_1 ⊗ … ⊗ F_n` of the factors.
///
/// Raw coordinates are the row-major multi-index of the field tensor
/// product. The space itself is the quotient of the raw space by every
/// adjacent balancing relation `(x a) ⊗ y − x ⊗ (a y)` at once, so iterated
/// tensor products have a single home.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    factors: Vec<Factor>,
    quotient: Quotient,
    left: Option<(Arc<Algebra>, Vec<Matrix>)>,
    right: Option<(Arc<Algebra>, Vec<Matrix>)>,
}

/// `e_before ⊗ s ⊗ e_after` for every basis multi-index around a relation
/// vector `s` of a pair of adjacent factors.
fn embed_pair_relations(
    field: Field,
    before: usize,
    after: usize,
    pair_relations: &[Vec<Scalar>],
    reducer: &mut RowReducer,
) {
    let pair_len = pair_relations.first().map_or(0, Vec::len);
    let width = before * pair_len * after;
    for b in 0..before {
        for a in 0..after {
            for s in pair_relations {
                let mut v = vec![field.zero(); width];
                for (k, x) in s.iter().enumerate() {
                    if !x.is_zero() {
                        v[(b * pair_len + k) * after + a] = x.clone();
                    }
                }
                reducer.insert(v);
            }
        }
    }
}

impl TensorSpace {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Incompatible("tensor product of no factors".into()));
        }
        let field = factors
            .iter()
            .find_map(|f| f.left.as_ref().or(f.right.as_ref()).map(|(a, _)| a.field()))
            .ok_or_else(|| Error::Incompatible("tensor factors carry no actions".into()))?;
        let dims: Vec<usize> = factors.iter().map(|f| f.dim).collect();
        let raw: usize = dims.iter().product();
        let mut reducer = RowReducer::new(field, raw);
        for i in 0..factors.len().saturating_sub(1) {
            let (Some((ra, rmats)), Some((la, lmats))) = (&factors[i].right, &factors[i + 1].left)
            else {
                return Err(Error::Incompatible(format!(
                    "factors {i} and {} cannot be balanced: missing action",
                    i + 1
                )));
            };
            if !same_algebra(ra, la) {
                return Err(Error::Incompatible(format!(
                    "factors {i} and {} act through different algebras",
                    i + 1
                )));
            }
            let (dl, dr) = (dims[i], dims[i + 1]);
            let mut pair = RowReducer::new(field, dl * dr);
            for (r, l) in rmats.iter().zip(lmats) {
                for p in 0..dl {
                    for q in 0..dr {
                        let mut v = vec![field.zero(); dl * dr];
                        for s in 0..dl {
                            let x = r.get(s, p);
                            if !x.is_zero() {
                                v[s * dr + q] += x;
                            }
                        }
                        for t in 0..dr {
                            let y = l.get(t, q);
                            if !y.is_zero() {
                                v[p * dr + t] -= y;
                            }
                        }
                        pair.insert(v);
                    }
                }
            }
            let (pair_rows, _) = pair.into_sorted();
            let before: usize = dims[..i].iter().product();
            let after: usize = dims[i + 2..].iter().product();
            embed_pair_relations(field, before, after, &pair_rows, &mut reducer);
        }
        let quotient = quotient_from_reducer(reducer);
        let mut space = TensorSpace {
            factors,
            quotient,
            left: None,
            right: None,
        };
        space.left = space.induced_outer_action(true)?;
        space.right = space.induced_outer_action(false)?;
        Ok(space)
    }

    pub fn pair(first: impl Into<Factor>, second: impl Into<Factor>) -> Result<Self> {
        Self::new(vec![first.into(), second.into()])
    }

    /// Left action of the first factor or right action of the last,
    /// descended to the quotient.
    fn induced_outer_action(&self, left: bool) -> Result<Option<(Arc<Algebra>, Vec<Matrix>)>> {
        let field = self.field();
        let dims: Vec<usize> = self.factors.iter().map(|f| f.dim).collect();
        let outer = if left {
            self.factors[0].left.as_ref()
        } else {
            self.factors.last().unwrap().right.as_ref()
        };
        let Some((algebra, mats)) = outer else {
            return Ok(None);
        };
        let induced = mats
            .iter()
            .map(|m| {
                let raw = if left {
                    let rest: usize = dims[1..].iter().product();
                    m.kron(&Matrix::identity(field, rest))
                } else {
                    let rest: usize = dims[..dims.len() - 1].iter().product();
                    Matrix::identity(field, rest).kron(m)
                };
                self.descend(&(self.projection() * &raw))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Some((algebra.clone(), induced)))
    }

    pub fn field(&self) -> Field {
        self.quotient.relation_basis().field()
    }

    pub fn factor_dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim).collect()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn raw_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    pub fn projection(&self) -> &Matrix {
        self.quotient.projection()
    }

    pub fn section(&self) -> &Matrix {
        self.quotient.section()
    }

    pub fn relation_basis(&self) -> &Matrix {
        self.quotient.relation_basis()
    }

    pub fn left_action(&self) -> Option<&[Matrix]> {
        self.left.as_ref().map(|(_, m)| m.as_slice())
    }

    pub fn right_action(&self) -> Option<&[Matrix]> {
        self.right.as_ref().map(|(_, m)| m.as_slice())
    }

    /// Quotient coordinates of `v_0 ⊗ v_1 ⊗ …`.
    pub fn simple(&self, vectors: &[&[Scalar]]) -> Vec<Scalar> {
        assert_eq!(vectors.len(), self.factors.len(), "one vector per factor");
        let field = self.field();
        let mut raw = vec![field.one()];
        for (v, f) in vectors.iter().zip(&self.factors) {
            assert_eq!(v.len(), f.dim, "vector does not match its factor");
            raw = raw
                .iter()
                .flat_map(|x| v.iter().map(move |y| x * y))
                .collect();
        }
        self.quotient.project(&raw)
    }

    /// Descends a linear map given on raw coordinates to the quotient,
    /// after checking that it kills every balancing relation.
    pub fn descend(&self, raw_map: &Matrix) -> Result<Matrix> {
        if raw_map.cols() != self.raw_dim() {
            return Err(Error::Dimension {
                context: "map on raw tensor coordinates".into(),
                expected: self.raw_dim(),
                found: raw_map.cols(),
            });
        }
        let rel = self.relation_basis();
        for r in 0..rel.rows() {
            if raw_map.apply(rel.row(r)).iter().any(|x| !x.is_zero()) {
                return Err(Error::Descent {
                    witness: rel.row(r).to_vec(),
                });
            }
        }
        Ok(raw_map * self.section())
    }

    pub fn as_right_module(&self) -> Result<RightModule> {
        let (algebra, mats) = self
            .right
            .clone()
            .ok_or_else(|| Error::Incompatible("tensor product has no right action".into()))?;
        RightModule::new(algebra, self.dim(), mats)
    }

    pub fn as_bimodule(&self) -> Result<Bimodule> {
        let (la, lm) = self
            .left
            .clone()
            .ok_or_else(|| Error::Incompatible("tensor product has no left action".into()))?;
        let (ra, rm) = self
            .right
            .clone()
            .ok_or_else(|| Error::Incompatible("tensor product has no right action".into()))?;
        Bimodule::new(la, ra, self.dim(), lm, rm)
    }
}

/// `projection(m ⊗ n)` in a two-factor tensor space.
pub fn simple_tensor(t: &TensorSpace, m: &[Scalar], n: &[Scalar]) -> Vec<Scalar> {
    t.simple(&[m, n])
}

/// Descends `f_0 ⊗ f_1 ⊗ …` from `source` to `target`. Each `f_i` may land
/// in raw coordinates of several consecutive target factors; only the
/// Kronecker product has to match the raw shapes.
pub fn induced_map(source: &TensorSpace, target: &TensorSpace, maps: &[&Matrix]) -> Result<Matrix> {
    let raw = Matrix::kron_all(source.field(), maps);
    if raw.rows() != target.raw_dim() || raw.cols() != source.raw_dim() {
        return Err(Error::Dimension {
            context: "Kronecker product of factor maps".into(),
            expected: target.raw_dim() * source.raw_dim(),
            found: raw.rows() * raw.cols(),
        });
    }
    source.descend(&(target.projection() * &raw))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitSide {
    /// `M ⊗_A A → M`, `m ⊗ a ↦ m a`.
    Right,
    /// `A ⊗_A M → M`, `a ⊗ m ↦ a m`.
    Left,
}

/// The canonical identification of `M ⊗_A A` (or `A ⊗_A M`) with `M`, as a
/// pair of mutually inverse matrices.
pub fn unit_iso(t: &TensorSpace, side: UnitSide) -> Result<(Matrix, Matrix)> {
    if t.factors.len() != 2 {
        return Err(Error::Incompatible("unit identification needs two factors".into()));
    }
    let field = t.field();
    let (module, regular) = match side {
        UnitSide::Right => (&t.factors[0], &t.factors[1]),
        UnitSide::Left => (&t.factors[1], &t.factors[0]),
    };
    let regular_action = match side {
        UnitSide::Right => regular.left.as_ref(),
        UnitSide::Left => regular.right.as_ref(),
    };
    let Some((algebra, mats)) = regular_action else {
        return Err(Error::Incompatible("regular factor carries no action".into()));
    };
    let expected = match side {
        UnitSide::Right => algebra.left_mults(),
        UnitSide::Left => algebra.right_mults(),
    };
    if regular.dim != algebra.dim() || mats.as_slice() != expected {
        return Err(Error::Incompatible("factor is not the regular module".into()));
    }
    let module_action = match side {
        UnitSide::Right => module.right.as_ref(),
        UnitSide::Left => module.left.as_ref(),
    };
    let Some((_, actions)) = module_action else {
        return Err(Error::Incompatible("module factor carries no action".into()));
    };
    let m = module.dim;
    let n = algebra.dim();
    let mut raw = Matrix::zeros(field, m, m * n);
    for p in 0..m {
        for k in 0..n {
            let col = match side {
                UnitSide::Right => p * n + k,
                UnitSide::Left => k * m + p,
            };
            for r in 0..m {
                raw.set(r, col, actions[k].get(r, p).clone());
            }
        }
    }
    let forward = t.descend(&raw)?;
    let unit = Matrix::column_vector(field, algebra.unit());
    let id = Matrix::identity(field, m);
    let embed = match side {
        UnitSide::Right => id.kron(&unit),
        UnitSide::Left => unit.kron(&id),
    };
    let inverse = t.projection() * &embed;
    Ok((forward, inverse))
}

/// Comparison between the flat triple product `X ⊗ Y ⊗ Z` and the nested
/// `(X ⊗ Y) ⊗ Z`, as `(nested → flat, flat → nested)`.
pub fn associator(
    flat: &TensorSpace,
    inner: &TensorSpace,
    nested: &TensorSpace,
) -> Result<(Matrix, Matrix)> {
    let field = flat.field();
    let last = *flat
        .factor_dims()
        .last()
        .ok_or_else(|| Error::Incompatible("empty tensor product".into()))?;
    let id = Matrix::identity(field, last);
    let to_flat = induced_map(nested, flat, &[inner.section(), &id])?;
    let to_nested = induced_map(flat, nested, &[inner.projection(), &id])?;
    Ok((to_flat, to_nested))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, Group};

    fn kc2() -> Arc<Algebra> {
        Arc::new(group_algebra(Field::Rational, &Group::cyclic(2)))
    }

    #[test]
    fn a_tensor_a_is_a() {
        let a = kc2();
        let reg = Bimodule::regular(a.clone());
        let t = TensorSpace::pair(&reg, &reg).unwrap();
        assert_eq!(t.dim(), 2);
        let q = Field::Rational;
        // g ⊗ g = 1 ⊗ 1
        let g = q.vector(&[0, 1]);
        let one = q.vector(&[1, 0]);
        assert_eq!(simple_tensor(&t, &g, &g), simple_tensor(&t, &one, &one));
        let (fwd, inv) = unit_iso(&t, UnitSide::Right).unwrap();
        assert_eq!(fwd.apply(&simple_tensor(&t, &g, &g)), one);
        assert!((&fwd * &inv).is_identity());
        assert!((&inv * &fwd).is_identity());
    }

    #[test]
    fn tensor_over_ground_field_has_no_relations() {
        let k = Arc::new(Algebra::ground(Field::Rational));
        let m = RightModule::free(k.clone(), 2);
        let n = Bimodule::regular(k.clone());
        let t = TensorSpace::pair(&m, &n).unwrap();
        assert_eq!(t.dim(), 2);
        let m3 = Bimodule::new(
            k.clone(),
            k.clone(),
            3,
            vec![Matrix::identity(Field::Rational, 3)],
            vec![Matrix::identity(Field::Rational, 3)],
        )
        .unwrap();
        assert_eq!(TensorSpace::pair(&m, &m3).unwrap().dim(), 6);
    }

    #[test]
    fn non_linear_map_fails_to_descend() {
        let a = kc2();
        let q = Field::Rational;
        let reg = Bimodule::regular(a.clone());
        let t = TensorSpace::pair(&reg, &reg).unwrap();
        // g: swap would be A-linear; a projection onto the first coordinate is not.
        let f = Matrix::identity(q, 2);
        let g = Matrix::from_ints(q, &[&[1, 0], &[0, 0]]);
        let err = induced_map(&t, &t, &[&f, &g]).unwrap_err();
        assert!(matches!(err, Error::Descent { .. }));
    }
}
