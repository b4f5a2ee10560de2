use super::{Field, LinalgError, Matrix, Scalar};

/// Incremental Gauss-Jordan elimination.
///
/// Rows are kept fully reduced: every stored row has a leading one at its
/// pivot and zeros in every other stored pivot column.
#[derive(Clone, Debug)]
pub struct RowReducer {
    field: Field,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl RowReducer {
    pub fn new(field: Field, width: usize) -> Self {
        RowReducer {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: vec![None; width],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` modulo the current row space, in place.
    pub fn reduce(&self, v: &mut [Scalar]) {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        // Stored rows vanish on each other's pivots, so the coefficient of
        // each row is read off `v` before any subtraction.
        let hits: Vec<(usize, Scalar)> = self
            .pivots
            .iter()
            .zip(0..)
            .filter(|(&p, _)| !v[p].is_zero())
            .map(|(&p, i)| (i, v[p].clone()))
            .collect();
        for (i, coeff) in hits {
            for (slot, x) in v.iter_mut().zip(&self.rows[i]) {
                if !x.is_zero() {
                    slot.sub_product(&coeff, x);
                }
            }
        }
    }

    /// Adds `v` to the row space. Returns `false` if it was already there.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv().expect("pivot is nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let coeff = row[pivot].clone();
            for (slot, x) in row.iter_mut().zip(&v) {
                if !x.is_zero() {
                    slot.sub_product(&coeff, x);
                }
            }
        }
        self.row_of_pivot[pivot] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(pivot);
        true
    }

    /// Rows sorted by pivot column, with the pivot list.
    pub fn into_sorted(self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let pivots = order.iter().map(|&i| self.pivots[i]).collect();
        let mut rows: Vec<Option<Vec<Scalar>>> = self.rows.into_iter().map(Some).collect();
        let rows = order.iter().map(|&i| rows[i].take().unwrap()).collect();
        (rows, pivots)
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// Reduced row echelon form and the ordered pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let field = m.field();
    let mut reducer = RowReducer::new(field, m.cols());
    for r in 0..m.rows() {
        reducer.insert(m.row(r).to_vec());
    }
    let (rows, pivots) = reducer.into_sorted();
    let mut out = Matrix::zeros(field, m.rows(), m.cols());
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    (out, pivots)
}

/// Canonical basis of `{v : m v = 0}`, one vector per non-pivot column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut reducer = RowReducer::new(m.field(), m.cols());
    for r in 0..m.rows() {
        reducer.insert(m.row(r).to_vec());
    }
    reducer.kernel_basis()
}

impl RowReducer {
    /// Canonical basis of the orthogonal complement of the row space:
    /// the solutions of `row · v = 0` for every inserted row.
    pub fn kernel_basis(self) -> Vec<Vec<Scalar>> {
        let field = self.field;
        let width = self.width;
        let (rows, pivots) = self.into_sorted();
        let mut is_pivot = vec![false; width];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..width)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![field.zero(); width];
                v[free] = field.one();
                for (row, &p) in rows.iter().zip(&pivots) {
                    v[p] = -&row[free];
                }
                v
            })
            .collect()
    }
}

/// Some `X` with `m X = b`, free variables set to zero; `Ok(None)` when the
/// system is inconsistent.
pub fn solve(m: &Matrix, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
    if m.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch {
            context: "solve",
            expected: m.rows(),
            found: b.rows(),
        });
    }
    let field = m.field();
    let n = m.cols();
    let (r, pivots) = rref(&m.hstack(b));
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(field, n, b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for k in 0..b.cols() {
            x.set(p, k, r.get(i, n + k).clone());
        }
    }
    Ok(Some(x))
}

/// Single right-hand-side convenience over [`solve`].
pub fn solve_vector(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    let rhs = Matrix::column_vector(m.field(), b);
    Ok(solve(m, &rhs)?.map(|x| x.column(0)))
}

pub fn is_surjective(m: &Matrix) -> bool {
    m.rank() == m.rows()
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if m.rows() != m.cols() {
        return None;
    }
    let x = solve(m, &Matrix::identity(m.field(), m.rows())).ok()??;
    Some(x)
}

/// A quotient `k^n / span(relations)` with a fixed coordinate basis.
///
/// The quotient basis is the set of non-pivot coordinates of the rref of the
/// relation space, so `section` is the inclusion of those coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    ambient: usize,
    projection: Matrix,
    section: Matrix,
    relation_basis: Matrix,
    kept: Vec<usize>,
}

impl Quotient {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.kept.len()
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn section(&self) -> &Matrix {
        &self.section
    }

    /// Rows form the rref basis of the relation space.
    pub fn relation_basis(&self) -> &Matrix {
        &self.relation_basis
    }

    /// Ambient coordinates that survive as quotient coordinates.
    pub fn kept_coordinates(&self) -> &[usize] {
        &self.kept
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.apply(v)
    }
}

pub fn quotient_by<I>(field: Field, ambient: usize, relations: I) -> Quotient
where
    I: IntoIterator<Item = Vec<Scalar>>,
{
    let mut reducer = RowReducer::new(field, ambient);
    for r in relations {
        reducer.insert(r);
    }
    quotient_from_reducer(reducer)
}

pub fn quotient_from_reducer(reducer: RowReducer) -> Quotient {
    let field = reducer.field();
    let ambient = reducer.width;
    let (rows, pivots) = reducer.into_sorted();
    let mut is_pivot = vec![false; ambient];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let kept: Vec<usize> = (0..ambient).filter(|&c| !is_pivot[c]).collect();
    let q = kept.len();
    let mut projection = Matrix::zeros(field, q, ambient);
    let mut section = Matrix::zeros(field, ambient, q);
    for (t, &f) in kept.iter().enumerate() {
        projection.set(t, f, field.one());
        section.set(f, t, field.one());
        for (row, &p) in rows.iter().zip(&pivots) {
            if !row[f].is_zero() {
                projection.set(t, p, -&row[f]);
            }
        }
    }
    let relation_basis = Matrix::from_rows(field, ambient, rows);
    Quotient {
        ambient,
        projection,
        section,
        relation_basis,
        kept,
    }
}

/// Coordinates of `target` in the span of `basis` (all of one shape).
pub fn coordinates_in_span(
    field: Field,
    basis: &[Matrix],
    target: &Matrix,
) -> Option<Vec<Scalar>> {
    let len = target.rows() * target.cols();
    let columns: Vec<Vec<Scalar>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let system = Matrix::from_columns(field, len, &columns);
    solve_vector(&system, target.entries()).expect("shapes agree")
}

/// `Σ coeffs[i] · basis[i]`.
pub fn combine(field: Field, basis: &[Matrix], coeffs: &[Scalar], rows: usize, cols: usize) -> Matrix {
    let mut out = Matrix::zeros(field, rows, cols);
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        out = &out + &b.scale(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Matrix::from_ints(q(), &[&[2, 4], &[1, 2]]));
        assert_eq!(r, Matrix::from_ints(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let id = Matrix::identity(q(), 3);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));

        let (r, p) = rref(&Matrix::from_ints(q(), &[&[0, 1], &[1, 0]]));
        assert!(r.is_identity());
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            kernel_basis(&Matrix::from_ints(q(), &[&[1, 1]])),
            vec![q().vector(&[-1, 1])]
        );
        assert!(kernel_basis(&Matrix::identity(q(), 2)).is_empty());
        assert_eq!(
            kernel_basis(&Matrix::zeros(q(), 1, 2)),
            vec![q().vector(&[1, 0]), q().vector(&[0, 1])]
        );
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_ints(q(), &[&[3, 1], &[-2, 5]]);
        assert_eq!(solve(&Matrix::identity(q(), 2), &b).unwrap(), Some(b));

        let x = solve(
            &Matrix::from_ints(q(), &[&[1, 1]]),
            &Matrix::from_ints(q(), &[&[1]]),
        )
        .unwrap()
        .unwrap();
        assert_eq!(x, Matrix::from_ints(q(), &[&[1], &[0]]));

        assert_eq!(
            solve(&Matrix::from_ints(q(), &[&[0]]), &Matrix::from_ints(q(), &[&[1]])).unwrap(),
            None
        );
        assert!(matches!(
            solve(&Matrix::identity(q(), 2), &Matrix::zeros(q(), 3, 1)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn surjectivity_examples() {
        assert!(is_surjective(&Matrix::identity(q(), 3)));
        assert!(!is_surjective(&Matrix::from_ints(q(), &[&[1, 0], &[0, 0]])));
        assert!(is_surjective(&Matrix::from_ints(q(), &[&[1, 2, 3]])));
    }

    #[test]
    fn quotient_examples() {
        let diag = quotient_by(q(), 2, vec![q().vector(&[1, -1])]);
        assert_eq!(diag.dim(), 1);
        assert_eq!(diag.project(&q().vector(&[1, 0])), diag.project(&q().vector(&[0, 1])));

        let none = quotient_by(q(), 3, Vec::new());
        assert!(none.projection().is_identity());
        assert!(none.section().is_identity());

        let all = quotient_by(q(), 2, vec![q().vector(&[1, 1]), q().vector(&[1, -1])]);
        assert_eq!(all.dim(), 0);
    }

    #[test]
    fn quotient_over_prime_field() {
        let f = Field::prime(3).unwrap();
        let quo = quotient_by(f, 3, vec![f.vector(&[1, 1, 1])]);
        assert_eq!(quo.dim(), 2);
        assert!((quo.projection() * quo.section()).is_identity());
        assert!(quo.project(&f.vector(&[1, 1, 1])).iter().all(Scalar::is_zero));
    }
}
