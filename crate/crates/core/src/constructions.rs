//! Concrete corings and comodules: the trivial coring of an algebra, the
//! coring attached to a group-graded algebra and a G-set, comatrix corings,
//! and coalgebras over the ground field.

use std::sync::Arc;

use crate::algebra::{Algebra, GradedAlgebra, Group};
use crate::comodule::Comodule;
use crate::coring::{Cointegral, Coring};
use crate::error::{Error, Result};
use crate::linalg::{coordinates_in_span, Field, Matrix, Scalar};
use crate::modules::{right_linear_hom_basis, unit_iso, Bimodule, RightModule, TensorSpace, UnitSide};

/// `C = A` with `Δ` the inverse of `A ⊗_A A ≅ A` and `ε = 1`.
pub fn trivial_coring(a: Arc<Algebra>) -> Result<Coring> {
    let field = a.field();
    let reg = Bimodule::regular(a.clone());
    let pair = TensorSpace::pair(&reg, &reg)?;
    let (_, inverse) = unit_iso(&pair, UnitSide::Right)?;
    Coring::new(reg, inverse, Matrix::identity(field, a.dim()))
}

/// A finite right G-set: `action[x][σ] = x·σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: Arc<Group>,
    labels: Vec<String>,
    action: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: Arc<Group>, labels: Vec<String>, action: Vec<Vec<usize>>) -> Result<Self> {
        let s = labels.len();
        let g = group.order();
        if action.len() != s || action.iter().any(|row| row.len() != g) {
            return Err(Error::Grading(format!(
                "action table must be {s} rows of {g} entries"
            )));
        }
        if let Some(x) = action.iter().flatten().find(|&&x| x >= s) {
            return Err(Error::Grading(format!("action value {x} is not an element of X")));
        }
        let e = group.identity();
        for x in 0..s {
            if action[x][e] != x {
                return Err(Error::Grading(format!(
                    "{} is moved by the identity",
                    labels[x]
                )));
            }
            for a in 0..g {
                for b in 0..g {
                    if action[action[x][a]][b] != action[x][group.mul(a, b)] {
                        return Err(Error::Grading(format!(
                            "({}·{})·{} != {}·({}{})",
                            labels[x],
                            group.labels()[a],
                            group.labels()[b],
                            labels[x],
                            group.labels()[a],
                            group.labels()[b]
                        )));
                    }
                }
            }
        }
        Ok(GSet {
            group,
            labels,
            action,
        })
    }

    /// `G` acting on itself by right multiplication.
    pub fn regular(group: Arc<Group>) -> Self {
        let labels = group.labels().to_vec();
        let action = group.table().to_vec();
        GSet::new(group, labels, action).expect("right multiplication is an action")
    }

    /// `n` points, all fixed.
    pub fn trivial(group: Arc<Group>, n: usize) -> Self {
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        let action = (0..n).map(|x| vec![x; group.order()]).collect();
        GSet::new(group, labels, action).expect("trivial action")
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn act(&self, x: usize, g: usize) -> usize {
        self.action[x][g]
    }
}

/// Points fixed by every group element.
pub fn fixed_points(xs: &GSet) -> Vec<usize> {
    (0..xs.len())
        .filter(|&x| xs.action[x].iter().all(|&y| y == x))
        .collect()
}

/// The coring `A ⊗ kX` of a graded algebra and a G-set, together with the
/// bookkeeping needed to name its elements. Basis `a_i ⊗ x` sits at index
/// `i * |X| + x`.
#[derive(Clone, Debug)]
pub struct GradingCoring {
    pub coring: Arc<Coring>,
    pub graded: GradedAlgebra,
    pub xs: GSet,
}

pub fn grading_coring(ga: &GradedAlgebra, xs: &GSet) -> Result<GradingCoring> {
    if ga.group().table() != xs.group().table() {
        return Err(Error::Grading(
            "graded algebra and G-set use different groups".into(),
        ));
    }
    let a = ga.algebra().clone();
    let field = a.field();
    let n = a.dim();
    let s = xs.len();
    let id_x = Matrix::identity(field, s);
    let left = a.left_mults().iter().map(|l| l.kron(&id_x)).collect();
    let right = (0..n)
        .map(|j| {
            let mut perm = Matrix::zeros(field, s, s);
            for x in 0..s {
                perm.set(xs.act(x, ga.degree(j)), x, field.one());
            }
            a.right_mult(j).kron(&perm)
        })
        .collect();
    let dim = n * s;
    let bimodule = Bimodule::new(a.clone(), a.clone(), dim, left, right)?;
    let mut raw = Matrix::zeros(field, dim * dim, dim);
    let mut counit = Matrix::zeros(field, n, dim);
    for i in 0..n {
        for x in 0..s {
            let col = i * s + x;
            // (a_i ⊗ x) ⊗ (1 ⊗ x)
            for (l, u) in a.unit().iter().enumerate() {
                if !u.is_zero() {
                    raw.set(col * dim + l * s + x, col, u.clone());
                }
            }
            counit.set(i, col, field.one());
        }
    }
    let coring = Coring::from_raw_coproduct(bimodule, raw, counit)?;
    Ok(GradingCoring {
        coring: Arc::new(coring),
        graded: ga.clone(),
        xs: xs.clone(),
    })
}

impl GradingCoring {
    pub fn field(&self) -> Field {
        self.coring.field()
    }

    /// Coordinates of `a ⊗ x`.
    pub fn element(&self, a: &[Scalar], x: usize) -> Vec<Scalar> {
        let s = self.xs.len();
        let mut v = vec![self.field().zero(); self.coring.dim()];
        for (i, c) in a.iter().enumerate() {
            v[i * s + x] = c.clone();
        }
        v
    }

    /// `1 ⊗ z`.
    pub fn unit_at(&self, z: usize) -> Vec<Scalar> {
        self.element(self.coring.algebra().unit(), z)
    }

    /// `a ⊗ x ⊗ y ↦ a δ_{x,y}`, i.e. `(a_i ⊗ x) ⊗ (a_j ⊗ y) ↦ a_i a_j δ_{x σ_j, y}`.
    pub fn delta_cointegral(&self) -> Result<Cointegral> {
        let a = self.coring.algebra();
        let field = self.field();
        let (n, s) = (a.dim(), self.xs.len());
        let dim = n * s;
        let mut raw = Matrix::zeros(field, n, dim * dim);
        for i in 0..n {
            for x in 0..s {
                for j in 0..n {
                    let y = self.xs.act(x, self.graded.degree(j));
                    let col = (i * s + x) * dim + (j * s + y);
                    for (k, c) in a.product(i, j).iter().enumerate() {
                        raw.set(k, col, c.clone());
                    }
                }
            }
        }
        Cointegral::from_raw_pairs(&self.coring, &raw)
    }

    /// `A(x)`: the regular module with `a_i` placed in degree `x · deg(a_i)`.
    pub fn shifted_free(&self, x: usize) -> Result<GradedModule> {
        let a = self.coring.algebra().clone();
        let grades = (0..a.dim())
            .map(|i| self.xs.act(x, self.graded.degree(i)))
            .collect();
        GradedModule::new(self, RightModule::regular(a), grades)
    }

    /// Right coaction `m_x ↦ m_x ⊗ (1 ⊗ x)`.
    pub fn graded_comodule(&self, gm: &GradedModule) -> Result<Comodule> {
        let field = self.field();
        let d = gm.module.dim();
        let c = self.coring.dim();
        let mut raw = Matrix::zeros(field, d * c, d);
        for m in 0..d {
            let tag = self.unit_at(gm.grades[m]);
            for (t, v) in tag.iter().enumerate() {
                if !v.is_zero() {
                    raw.set(m * c + t, m, v.clone());
                }
            }
        }
        Comodule::from_raw_coaction(self.coring.clone(), gm.module.clone(), &raw)
    }
}

/// A right module with each basis vector assigned a point of `X`, stored
/// with the basis sorted by grade.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub module: RightModule,
    pub grades: Vec<usize>,
}

impl GradedModule {
    /// Checks `M_x A_σ ⊆ M_{xσ}` on basis pairs, then sorts the basis by
    /// grade (stable in the original order).
    pub fn new(gc: &GradingCoring, module: RightModule, grades: Vec<usize>) -> Result<Self> {
        let d = module.dim();
        if grades.len() != d {
            return Err(Error::Grading(format!(
                "{} grades for a module of dimension {d}",
                grades.len()
            )));
        }
        if let Some(&x) = grades.iter().find(|&&x| x >= gc.xs.len()) {
            return Err(Error::Grading(format!("grade {x} is not a point of X")));
        }
        for m in 0..d {
            for j in 0..module.algebra().dim() {
                let target = gc.xs.act(grades[m], gc.graded.degree(j));
                if let Some(r) =
                    (0..d).find(|&r| !module.action(j).get(r, m).is_zero() && grades[r] != target)
                {
                    return Err(Error::Grading(format!(
                        "m{m} (degree {}) times {} has a component m{r} outside degree {}",
                        gc.xs.labels()[grades[m]],
                        module.algebra().labels()[j],
                        gc.xs.labels()[target]
                    )));
                }
            }
        }
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by_key(|&m| grades[m]);
        let field = module.field();
        let mut change = Matrix::zeros(field, d, d);
        for (new, &old) in order.iter().enumerate() {
            change.set(old, new, field.one());
        }
        let module = module.change_basis(&change, &change.transpose());
        let grades = order.iter().map(|&m| grades[m]).collect();
        Ok(GradedModule { module, grades })
    }

    pub fn zero(gc: &GradingCoring) -> Self {
        GradedModule {
            module: RightModule::zero(gc.coring.algebra().clone()),
            grades: Vec::new(),
        }
    }

    pub fn direct_sum(&self, gc: &GradingCoring, other: &GradedModule) -> Result<Self> {
        let module = self.module.direct_sum(&other.module)?;
        let grades = self.grades.iter().chain(&other.grades).copied().collect();
        GradedModule::new(gc, module, grades)
    }

    /// Whether every basis vector has grade `x`.
    pub fn is_concentrated_in(&self, x: usize) -> bool {
        self.grades.iter().all(|&g| g == x)
    }
}

/// `C = P* ⊗_B P` for a `(B, A)`-bimodule `P` with a dual basis
/// `Σ p_i ⊗ ξ_i`; also returns `P` as a right comodule.
pub fn comatrix_coring(
    b: Arc<Algebra>,
    a: Arc<Algebra>,
    p: &Bimodule,
    dual_basis: &[(Vec<Scalar>, Matrix)],
) -> Result<(Arc<Coring>, Comodule)> {
    let field = a.field();
    if !crate::algebra::same_algebra(p.left_algebra(), &b)
        || !crate::algebra::same_algebra(p.right_algebra(), &a)
    {
        return Err(Error::Incompatible("P must be a (B, A)-bimodule".into()));
    }
    let dp = p.dim();
    let n = a.dim();
    for (i, (v, xi)) in dual_basis.iter().enumerate() {
        if v.len() != dp || xi.shape() != (n, dp) {
            return Err(Error::Dimension {
                context: format!("dual basis pair {i}"),
                expected: dp,
                found: v.len(),
            });
        }
    }
    for l in 0..dp {
        let mut sum = vec![field.zero(); dp];
        for (v, xi) in dual_basis {
            for k in 0..n {
                let coeff = xi.get(k, l);
                if coeff.is_zero() {
                    continue;
                }
                for (slot, x) in sum.iter_mut().zip(p.right_action(k).apply(v)) {
                    slot.add_product(coeff, &x);
                }
            }
        }
        if sum != field.unit_vector(dp, l) {
            return Err(Error::DualBasis { index: l });
        }
    }

    let p_right = p.as_right_module();
    let dual = right_linear_hom_basis(&p_right, &RightModule::regular(a.clone()))?;
    let ds = dual.len();
    let coords = |m: &Matrix| {
        coordinates_in_span(field, &dual, m)
            .ok_or_else(|| Error::Invariant("map left the dual module".into()))
    };
    let to_columns = |f: &dyn Fn(&Matrix) -> Matrix| -> Result<Matrix> {
        let cols = dual.iter().map(|x| coords(&f(x))).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(field, ds, &cols))
    };
    let left = a
        .left_mults()
        .iter()
        .map(|l| to_columns(&|x| l * x))
        .collect::<Result<Vec<_>>>()?;
    let right = p
        .left_actions()
        .iter()
        .map(|lb| to_columns(&|x| x * lb))
        .collect::<Result<Vec<_>>>()?;
    let pstar = Bimodule::new(a.clone(), b.clone(), ds, left, right)?;
    let space = TensorSpace::pair(&pstar, p)?;
    let cbim = space.as_bimodule()?;
    let dc = cbim.dim();
    let xi_coords = dual_basis
        .iter()
        .map(|(_, xi)| coords(xi))
        .collect::<Result<Vec<_>>>()?;

    let pair = TensorSpace::pair(&cbim, &cbim)?;
    let mut raw_delta = Matrix::zeros(field, pair.dim(), ds * dp);
    let mut raw_counit = Matrix::zeros(field, n, ds * dp);
    for k in 0..ds {
        let ek = field.unit_vector(ds, k);
        for l in 0..dp {
            let el = field.unit_vector(dp, l);
            let col = k * dp + l;
            for ((v, _), xc) in dual_basis.iter().zip(&xi_coords) {
                let first = space.simple(&[&ek, v]);
                let second = space.simple(&[xc, &el]);
                let image = pair.simple(&[&first, &second]);
                for (r, x) in image.iter().enumerate() {
                    *raw_delta.entry_mut(r, col) += x;
                }
            }
            for r in 0..n {
                raw_counit.set(r, col, dual[k].get(r, l).clone());
            }
        }
    }
    let coproduct = space.descend(&raw_delta)?;
    let counit = space.descend(&raw_counit)?;
    let coring = Arc::new(Coring::new(cbim, coproduct, counit)?);

    let pc = TensorSpace::pair(&p_right, coring.bimodule())?;
    let mut coaction = Matrix::zeros(field, pc.dim(), dp);
    for l in 0..dp {
        let el = field.unit_vector(dp, l);
        for ((v, _), xc) in dual_basis.iter().zip(&xi_coords) {
            let c = space.simple(&[xc, &el]);
            let image = pc.simple(&[v, &c]);
            for (r, x) in image.iter().enumerate() {
                *coaction.entry_mut(r, l) += x;
            }
        }
    }
    debug_assert_eq!(dc, coring.dim());
    let comodule = Comodule::new(coring.clone(), p_right, coaction)?;
    Ok((coring, comodule))
}

/// `P = k^n` over `B = A = k` with the standard dual basis: the matrix
/// coalgebra.
pub fn matrix_comatrix(field: Field, n: usize) -> Result<(Arc<Coring>, Comodule)> {
    let k = Arc::new(Algebra::ground(field));
    let id = Matrix::identity(field, n);
    let p = Bimodule::new(k.clone(), k.clone(), n, vec![id.clone()], vec![id])?;
    comatrix_coring(k.clone(), k, &p, &standard_dual_basis(field, n, 1))
}

/// `e_i ⊗ e_i^T` for a free module over `k` of rank `n`, with the
/// functionals valued in a one-dimensional algebra.
fn standard_dual_basis(field: Field, n: usize, algebra_dim: usize) -> Vec<(Vec<Scalar>, Matrix)> {
    (0..n)
        .map(|i| {
            let mut xi = Matrix::zeros(field, algebra_dim, n);
            xi.set(0, i, field.one());
            (field.unit_vector(n, i), xi)
        })
        .collect()
}

/// `P = A` over `B = k`: the Sweedler coring `A ⊗_k A`.
pub fn sweedler_coring(a: Arc<Algebra>) -> Result<(Arc<Coring>, Comodule)> {
    let field = a.field();
    let k = Arc::new(Algebra::ground(field));
    let n = a.dim();
    let id = Matrix::identity(field, n);
    let p = Bimodule::new(k.clone(), a.clone(), n, vec![id.clone()], a.right_mults().to_vec())?;
    let dual = vec![(a.unit().to_vec(), id)];
    comatrix_coring(k, a, &p, &dual)
}

/// `P = k^n` over `B = M_n(k)`, `A = k`.
pub fn endomorphism_comatrix(field: Field, n: usize) -> Result<(Arc<Coring>, Comodule)> {
    let k = Arc::new(Algebra::ground(field));
    let b = Arc::new(Algebra::matrix_algebra(field, n));
    let units = (0..n * n)
        .map(|ij| {
            let mut m = Matrix::zeros(field, n, n);
            m.set(ij / n, ij % n, field.one());
            m
        })
        .collect();
    let p = Bimodule::new(b.clone(), k.clone(), n, units, vec![Matrix::identity(field, n)])?;
    comatrix_coring(b, k, &p, &standard_dual_basis(field, n, 1))
}

/// The dual coalgebra `B*` over `k` on the dual basis `β^k`:
/// `Δ(β^k) = Σ c[i][j][k] β^i ⊗ β^j`, `ε(β^k) = u_k`.
pub fn dual_coalgebra(b: &Algebra) -> Result<Coring> {
    let field = b.field();
    let k = Arc::new(Algebra::ground(field));
    let n = b.dim();
    let id = Matrix::identity(field, n);
    let bim = Bimodule::new(k.clone(), k, n, vec![id.clone()], vec![id])?;
    let mut raw = Matrix::zeros(field, n * n, n);
    for i in 0..n {
        for j in 0..n {
            for (kk, c) in b.product(i, j).iter().enumerate() {
                if !c.is_zero() {
                    raw.set(i * n + j, kk, c.clone());
                }
            }
        }
    }
    let counit = Matrix::from_rows(field, n, vec![b.unit().to_vec()]);
    Coring::from_raw_coproduct(bim, raw, counit)
}

/// A left `B`-module as a right `B*`-comodule, `ρ(m) = Σ_i b_i m ⊗ β^i`.
pub fn dual_coalgebra_comodule(coring: Arc<Coring>, left_actions: &[Matrix]) -> Result<Comodule> {
    let field = coring.field();
    let c = coring.dim();
    if left_actions.len() != c {
        return Err(Error::Dimension {
            context: "one left action per basis element of B".into(),
            expected: c,
            found: left_actions.len(),
        });
    }
    let d = left_actions.first().map_or(0, Matrix::rows);
    let mut raw = Matrix::zeros(field, d * c, d);
    for (i, l) in left_actions.iter().enumerate() {
        for m in 0..d {
            for r in 0..d {
                let v = l.get(r, m);
                if !v.is_zero() {
                    raw.set(r * c + i, m, v.clone());
                }
            }
        }
    }
    let module = RightModule::free(coring.algebra().clone(), d);
    Comodule::from_raw_coaction(coring, module, &raw)
}

/// The coalgebra `k{g, d}` with `g` grouplike, `Δd = g ⊗ d + d ⊗ g` and
/// `ε(d) = 0`. It admits no cointegral.
pub fn dual_numbers_coalgebra(field: Field) -> Result<Coring> {
    dual_coalgebra(&Algebra::truncated_polynomial(field, 2))
}

/// `k g` inside the dual-numbers coalgebra, `ρ(m) = m ⊗ g`; not relatively
/// injective.
pub fn grouplike_line(coring: Arc<Coring>) -> Result<Comodule> {
    let field = coring.field();
    let module = RightModule::free(coring.algebra().clone(), 1);
    let raw = Matrix::from_rows(field, 1, vec![field.vector(&[1]), field.vector(&[0])]);
    Comodule::from_raw_coaction(coring, module, &raw)
}

/// `C_2 = {e, g}` acting on `{z, x, y}` with `z` fixed and `x ↔ y`.
pub fn c2_three_point_set() -> GSet {
    let group = Arc::new(Group::cyclic(2));
    let labels = vec!["z".to_string(), "x".to_string(), "y".to_string()];
    GSet::new(group, labels, vec![vec![0, 0], vec![1, 2], vec![2, 1]])
        .expect("swap of two points is an action")
}

/// The grading coring of `kC_2` (naturally graded) over `{z, x, y}`.
pub fn fix_gr(field: Field) -> GradingCoring {
    let xs = c2_three_point_set();
    let ga = GradedAlgebra::group_algebra(field, xs.group().clone());
    grading_coring(&ga, &xs).expect("the three-point grading coring is well formed")
}

/// Graded modules over [`fix_gr`] used throughout the tests: `A(z)`, `A(x)`,
/// their sum, the zero module, and the one-dimensional modules at `z` on
/// which `g` acts by `±1`.
pub fn fix_gr_modules(gc: &GradingCoring) -> Result<Vec<(String, GradedModule)>> {
    let field = gc.field();
    let a = gc.coring.algebra().clone();
    let z = gc.xs.label_index("z").expect("z is a point");
    let x = gc.xs.label_index("x").expect("x is a point");
    let az = gc.shifted_free(z)?;
    let ax = gc.shifted_free(x)?;
    let mixed = az.direct_sum(gc, &ax)?;
    let line = |sign: i64| -> Result<GradedModule> {
        let module = RightModule::new(
            a.clone(),
            1,
            vec![Matrix::identity(field, 1), Matrix::from_ints(field, &[&[sign]])],
        )?;
        GradedModule::new(gc, module, vec![z])
    };
    Ok(vec![
        ("Mz".to_string(), az),
        ("Mx".to_string(), ax),
        ("Mmixed".to_string(), mixed),
        ("Mzero".to_string(), GradedModule::zero(gc)),
        ("Lz+".to_string(), line(1)?),
        ("Lz-".to_string(), line(-1)?),
    ])
}
