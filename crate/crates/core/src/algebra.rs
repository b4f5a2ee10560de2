//! Finite-dimensional unital associative algebras given by structure
//! constants, finite groups by multiplication table, and group-graded
//! algebras.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::verdict::Verdict;

/// First failing axiom of a structure-constant table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraViolation {
    Shape(String),
    Associativity { triple: (usize, usize, usize) },
    LeftUnit { basis: usize },
    RightUnit { basis: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::Shape(s) => write!(f, "malformed table: {s}"),
            AlgebraViolation::Associativity { triple: (i, j, k) } => {
                write!(f, "(b{i} b{j}) b{k} != b{i} (b{j} b{k})")
            }
            AlgebraViolation::LeftUnit { basis } => write!(f, "1 * b{basis} != b{basis}"),
            AlgebraViolation::RightUnit { basis } => write!(f, "b{basis} * 1 != b{basis}"),
        }
    }
}

/// `b_i · b_j = Σ_k c[i][j][k] b_k`, stored as `products[i * dim + j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    products: Vec<Vec<Scalar>>,
    unit: Vec<Scalar>,
    left_mult: Vec<Matrix>,
    right_mult: Vec<Matrix>,
}

fn multiplication_matrices(
    field: Field,
    dim: usize,
    products: &[Vec<Scalar>],
) -> (Vec<Matrix>, Vec<Matrix>) {
    let mut left = vec![Matrix::zeros(field, dim, dim); dim];
    let mut right = vec![Matrix::zeros(field, dim, dim); dim];
    for i in 0..dim {
        for j in 0..dim {
            for (k, c) in products[i * dim + j].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                left[i].set(k, j, c.clone());
                right[j].set(k, i, c.clone());
            }
        }
    }
    (left, right)
}

/// Verifies shape, associativity on all basis triples and the unit laws on
/// all basis elements.
pub fn check_structure_constants(
    field: Field,
    dim: usize,
    products: &[Vec<Scalar>],
    unit: &[Scalar],
) -> Verdict<AlgebraViolation> {
    if products.len() != dim * dim {
        return Verdict::Fail(AlgebraViolation::Shape(format!(
            "expected {} products, found {}",
            dim * dim,
            products.len()
        )));
    }
    if let Some(bad) = products.iter().position(|p| p.len() != dim) {
        return Verdict::Fail(AlgebraViolation::Shape(format!(
            "product {bad} has the wrong length"
        )));
    }
    if unit.len() != dim {
        return Verdict::Fail(AlgebraViolation::Shape("unit has the wrong length".into()));
    }
    let (left, right) = multiplication_matrices(field, dim, products);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let lhs = right[k].apply(&products[i * dim + j]);
                let rhs = left[i].apply(&products[j * dim + k]);
                if lhs != rhs {
                    return Verdict::Fail(AlgebraViolation::Associativity { triple: (i, j, k) });
                }
            }
        }
    }
    for b in 0..dim {
        let e = field.unit_vector(dim, b);
        let left_unit: Vec<Scalar> = right[b].apply(unit);
        if left_unit != e {
            return Verdict::Fail(AlgebraViolation::LeftUnit { basis: b });
        }
        let right_unit = left[b].apply(unit);
        if right_unit != e {
            return Verdict::Fail(AlgebraViolation::RightUnit { basis: b });
        }
    }
    Verdict::Pass
}

impl Algebra {
    /// Builds and eagerly verifies an algebra; invalid tables are rejected.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        products: Vec<Vec<Scalar>>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let dim = labels.len();
        if let Verdict::Fail(v) = check_structure_constants(field, dim, &products, &unit) {
            return Err(Error::InvalidAlgebra(v.to_string()));
        }
        let (left_mult, right_mult) = multiplication_matrices(field, dim, &products);
        Ok(Algebra {
            field,
            labels,
            products,
            unit,
            left_mult,
            right_mult,
        })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        Self::new(
            field,
            vec!["1".into()],
            vec![vec![field.one()]],
            vec![field.one()],
        )
        .expect("k is an algebra")
    }

    /// Full matrix algebra `M_n(k)` on matrix units `e_ij` (index `i * n + j`).
    pub fn matrix_algebra(field: Field, n: usize) -> Self {
        let dim = n * n;
        let mut products = vec![vec![field.zero(); dim]; dim * dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    products[(i * n + j) * dim + (j * n + l)][i * n + l] = field.one();
                }
            }
        }
        let mut unit = vec![field.zero(); dim];
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        let labels = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1)))
            .collect();
        Self::new(field, labels, products, unit).expect("matrix units form an algebra")
    }

    /// `k[x]/(x^n)` on the monomial basis.
    pub fn truncated_polynomial(field: Field, n: usize) -> Self {
        let mut products = vec![vec![field.zero(); n]; n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    products[i * n + j][i + j] = field.one();
                }
            }
        }
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        Self::new(field, labels, products, field.unit_vector(n, 0))
            .expect("truncated polynomials form an algebra")
    }

    /// Upper triangular 2x2 matrices on `e11, e12, e22`.
    pub fn upper_triangular(field: Field) -> Self {
        let z = || vec![field.zero(); 3];
        let e = |i| field.unit_vector(3, i);
        // e11 e11 = e11, e11 e12 = e12, e12 e22 = e12, e22 e22 = e22
        let products = vec![
            e(0), e(1), z(),
            z(), z(), e(1),
            z(), z(), e(2),
        ];
        Self::new(
            field,
            vec!["e11".into(), "e12".into(), "e22".into()],
            products,
            field.vector(&[1, 0, 1]),
        )
        .expect("upper triangular matrices form an algebra")
    }

    /// `k × k × … × k` with orthogonal idempotents.
    pub fn diagonal(field: Field, n: usize) -> Self {
        let mut products = vec![vec![field.zero(); n]; n * n];
        for i in 0..n {
            products[i * n + i][i] = field.one();
        }
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        Self::new(field, labels, products, vec![field.one(); n]).expect("diagonal algebra")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i * self.dim() + j]
    }

    pub fn structure_constants(&self) -> &[Vec<Scalar>] {
        &self.products
    }

    /// Matrix of `x ↦ b_i x`.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.left_mult[i]
    }

    /// Matrix of `x ↦ x b_j`.
    pub fn right_mult(&self, j: usize) -> &Matrix {
        &self.right_mult[j]
    }

    pub fn left_mults(&self) -> &[Matrix] {
        &self.left_mult
    }

    pub fn right_mults(&self) -> &[Matrix] {
        &self.right_mult
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let partial = self.left_mult[i].apply(y);
            for (o, p) in out.iter_mut().zip(&partial) {
                o.add_product(xi, p);
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.field.unit_vector(self.dim(), i)
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_mult_by(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.dim());
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = &m + &self.left_mult[i].scale(xi);
            }
        }
        m
    }

    /// Matrix of right multiplication by an arbitrary element.
    pub fn right_mult_by(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.dim());
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = &m + &self.right_mult[i].scale(xi);
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Same algebra with `b_i ·_op b_j = b_j · b_i`.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let products = (0..n * n)
            .map(|ij| self.products[(ij % n) * n + ij / n].clone())
            .collect();
        Self::new(self.field, self.labels.clone(), products, self.unit.clone())
            .expect("the opposite of an algebra is an algebra")
    }
}

pub fn check_algebra(a: &Algebra) -> Verdict<AlgebraViolation> {
    check_structure_constants(a.field, a.dim(), &a.products, &a.unit)
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A finite group given by its multiplication table over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl Group {
    /// Checks closure, associativity, identity and inverses.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let not_group = |axiom, witness: String| Err(Error::NotAGroup { axiom, witness });
        if n == 0 {
            return not_group("nonemptiness", "no elements".into());
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return not_group("closure", "table is not square".into());
        }
        if let Some((i, j)) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| table[i][j] >= n)
        {
            return not_group("closure", format!("{}*{} is undefined", labels[i], labels[j]));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return not_group(
                            "associativity",
                            format!("({0}{1}){2} != {0}({1}{2})", labels[a], labels[b], labels[c]),
                        );
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        else {
            return not_group("identity", "no two-sided identity".into());
        };
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverses.push(h),
                None => return not_group("inverses", format!("{} has no inverse", labels[g])),
            }
        }
        Ok(Group {
            labels,
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n` on `e, g, g^2, …`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::new(labels, table).expect("cyclic groups are groups")
    }

    /// Direct product with lexicographic element order.
    pub fn product(&self, other: &Group) -> Self {
        let m = other.order();
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}.{b}")))
            .collect();
        let n = self.order() * m;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.table[x / m][y / m] * m + other.table[x % m][y % m])
                    .collect()
            })
            .collect();
        Self::new(labels, table).expect("direct products of groups are groups")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// `kG` with basis indexed by the group elements.
pub fn group_algebra(field: Field, group: &Group) -> Algebra {
    let n = group.order();
    let mut products = vec![vec![field.zero(); n]; n * n];
    for g in 0..n {
        for h in 0..n {
            products[g * n + h][group.mul(g, h)] = field.one();
        }
    }
    Algebra::new(
        field,
        group.labels().to_vec(),
        products,
        field.unit_vector(n, group.identity()),
    )
    .expect("group algebras are algebras")
}

/// An algebra whose basis elements are homogeneous for a group grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    algebra: Arc<Algebra>,
    group: Arc<Group>,
    degrees: Vec<usize>,
}

impl GradedAlgebra {
    /// Checks `A_σ A_τ ⊆ A_στ` on basis pairs and that `1 ∈ A_e`.
    pub fn new(algebra: Arc<Algebra>, group: Arc<Group>, degrees: Vec<usize>) -> Result<Self> {
        let n = algebra.dim();
        if degrees.len() != n {
            return Err(Error::Grading(format!(
                "{} degrees for {} basis elements",
                degrees.len(),
                n
            )));
        }
        if let Some(&d) = degrees.iter().find(|&&d| d >= group.order()) {
            return Err(Error::Grading(format!("degree index {d} is not a group element")));
        }
        for i in 0..n {
            for j in 0..n {
                let target = group.mul(degrees[i], degrees[j]);
                if let Some(k) = algebra
                    .product(i, j)
                    .iter()
                    .enumerate()
                    .position(|(k, c)| !c.is_zero() && degrees[k] != target)
                {
                    return Err(Error::Grading(format!(
                        "{}*{} has a component along {} outside degree {}",
                        algebra.labels()[i],
                        algebra.labels()[j],
                        algebra.labels()[k],
                        group.labels()[target]
                    )));
                }
            }
        }
        if let Some(k) = algebra
            .unit()
            .iter()
            .enumerate()
            .position(|(k, c)| !c.is_zero() && degrees[k] != group.identity())
        {
            return Err(Error::Grading(format!(
                "the unit has a component along {} outside the neutral degree",
                algebra.labels()[k]
            )));
        }
        Ok(GradedAlgebra {
            algebra,
            group,
            degrees,
        })
    }

    /// `kG` graded by `deg(g) = g`.
    pub fn group_algebra(field: Field, group: Arc<Group>) -> Self {
        let algebra = Arc::new(group_algebra(field, &group));
        let degrees = (0..group.order()).collect();
        Self::new(algebra, group, degrees).expect("kG is G-graded")
    }

    /// Everything in the neutral component.
    pub fn trivially_graded(algebra: Arc<Algebra>, group: Arc<Group>) -> Self {
        let degrees = vec![group.identity(); algebra.dim()];
        Self::new(algebra, group, degrees).expect("trivial grading is a grading")
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn degree(&self, basis: usize) -> usize {
        self.degrees[basis]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }
}
