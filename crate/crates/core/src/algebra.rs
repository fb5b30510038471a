//! Superalgebras given by structure constants.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{is_zero_vec, unit_vec, zero_vec, Field};
use crate::matrix::Matrix;
use crate::modp::Fp;
use crate::scalar::Scalar;
use crate::subspace::{component, homogeneous_parity, GradedSubspace, Parity, Span};

/// Coordinates of an element in an algebra's basis.
pub type Element = Vec<Scalar>;

/// How products are evaluated. Full matrix superalgebras keep their coordinate
/// vectors in row-major `e_ij` order, so products can go through dense matrix
/// multiplication instead of the `dim⁴`-sized constant table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Table,
    Matrix { n: usize },
    MatrixPlus { n: usize },
}

/// Sparse structure constants: `table[i * dim + j]` lists `(k, c)` with
/// `b_i b_j = Σ c b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableAlgebra<F: Field> {
    ctx: F::Ctx,
    parities: Vec<Parity>,
    table: Vec<Vec<(usize, F)>>,
    shape: Shape,
    supercommutative: bool,
}

impl<F: Field> TableAlgebra<F> {
    pub fn new(ctx: &F::Ctx, parities: Vec<Parity>, table: Vec<Vec<(usize, F)>>, shape: Shape) -> Result<Self> {
        let d = parities.len();
        if table.len() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, got: table.len() });
        }
        for i in 0..d {
            for j in 0..d {
                let want = parities[i].add(parities[j]);
                for (k, c) in &table[i * d + j] {
                    if *k >= d {
                        return Err(Error::DimensionMismatch { expected: d, got: *k });
                    }
                    if !c.is_zero() && parities[*k] != want {
                        return Err(Error::BadParameter(format!(
                            "constant c[{i}][{j}][{k}] = {c} violates the grading"
                        )));
                    }
                }
            }
        }
        let table: Vec<Vec<(usize, F)>> = table
            .into_iter()
            .map(|mut e| {
                e.retain(|(_, c)| !c.is_zero());
                e.sort_by_key(|(k, _)| *k);
                e
            })
            .collect();
        let mut alg = TableAlgebra { ctx: ctx.clone(), parities, table, shape, supercommutative: false };
        alg.supercommutative = alg.basis_supercommutative();
        Ok(alg)
    }

    fn basis_supercommutative(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in i..d {
                let flip = self.parities[i].sign_flip(self.parities[j]);
                let a = &self.table[i * d + j];
                let b = &self.table[j * d + i];
                if a.len() != b.len() {
                    return false;
                }
                for ((k, x), (l, y)) in a.iter().zip(b) {
                    let y = if flip { y.negate() } else { y.clone() };
                    if k != l || *x != y {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_supercommutative(&self) -> bool {
        self.supercommutative
    }

    /// `b_i b_j` as a sparse list.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.table[i * self.dim() + j]
    }

    pub fn basis_product_dense(&self, i: usize, j: usize) -> Vec<F> {
        let mut v = zero_vec::<F>(&self.ctx, self.dim());
        for (k, c) in self.basis_product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn table(&self) -> &[Vec<(usize, F)>] {
        &self.table
    }

    pub fn mul(&self, u: &[F], v: &[F]) -> Vec<F> {
        match self.shape {
            Shape::Table => self.mul_table(u, v),
            Shape::Matrix { n } => matmul_flat(&self.ctx, n, u, v),
            Shape::MatrixPlus { n } => {
                // u∘v = ½(uv + vu) − v₁u₁, expanding the sign rule by parity components
                let uv = matmul_flat(&self.ctx, n, u, v);
                let vu = matmul_flat(&self.ctx, n, v, u);
                let u1 = component(u, &self.parities, Parity::Odd);
                let v1 = component(v, &self.parities, Parity::Odd);
                let odd = matmul_flat(&self.ctx, n, &v1, &u1);
                let half = F::from_i64(&self.ctx, 2).inverse().expect("char ≠ 2");
                uv.iter().zip(&vu).zip(&odd).map(|((a, b), c)| a.plus(b).times(&half).minus(c)).collect()
            }
        }
    }

    fn mul_table(&self, u: &[F], v: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = zero_vec::<F>(&self.ctx, d);
        let vs: Vec<(usize, &F)> = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &vs {
                let ab = a.times(b);
                for (k, c) in &self.table[i * d + j] {
                    out[*k].add_mul(&ab, c);
                }
            }
        }
        out
    }

    /// Sparse product of sparse vectors through the table.
    pub fn mul_sparse(&self, u: &[(usize, F)], v: &[(usize, F)]) -> Vec<(usize, F)> {
        let d = self.dim();
        let mut acc = zero_vec::<F>(&self.ctx, d);
        for (i, a) in u {
            for (j, b) in v {
                let ab = a.times(b);
                for (k, c) in &self.table[i * d + j] {
                    acc[*k].add_mul(&ab, c);
                }
            }
        }
        sparsify(acc)
    }
}

impl TableAlgebra<Scalar> {
    pub fn reduce_mod_p(&self, p: u64) -> Result<TableAlgebra<Fp>> {
        let table = self
            .table
            .iter()
            .map(|e| e.iter().map(|(k, c)| Ok((*k, Fp::reduce(c, p)?))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        TableAlgebra::new(&p, self.parities.clone(), table, self.shape)
    }
}

pub fn sparsify<F: Field>(v: Vec<F>) -> Vec<(usize, F)> {
    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

fn matmul_flat<F: Field>(ctx: &F::Ctx, n: usize, a: &[F], b: &[F]) -> Vec<F> {
    let mut out = zero_vec::<F>(ctx, n * n);
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_zero() {
                    out[i * n + j].add_mul(x, y);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizationKind {
    /// Inside `M_{p,q}` with the grading read off from the module parities.
    Matrix,
    /// Inside `Q_n ⊂ M_{n,n}`.
    Queer,
}

/// A faithful matrix model: basis element `i` acts as `matrices[i]` on a
/// graded module with the given parities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub matrices: Vec<Matrix<Scalar>>,
    pub module_parities: Vec<Parity>,
    pub kind: RealizationKind,
}

impl Realization {
    pub fn module_dim(&self) -> usize {
        self.module_parities.len()
    }

    pub fn apply(&self, u: &[Scalar]) -> Matrix<Scalar> {
        let n = self.module_dim();
        let mut m = Matrix::zeros(&(), n, n);
        for (c, b) in u.iter().zip(&self.matrices) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    /// Parity of a homogeneous matrix in the module grading.
    pub fn matrix_parity(&self, m: &Matrix<Scalar>) -> Option<Parity> {
        let mut seen = None;
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m[(i, j)].is_zero() {
                    continue;
                }
                let p = self.module_parities[i].add(self.module_parities[j]);
                match seen {
                    None => seen = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }
}

/// A finite-dimensional superalgebra over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superalgebra {
    name: String,
    labels: Vec<String>,
    alg: TableAlgebra<Scalar>,
    realization: Option<Realization>,
}

impl Superalgebra {
    pub fn new(name: impl Into<String>, labels: Vec<String>, alg: TableAlgebra<Scalar>) -> Self {
        let labels = if labels.len() == alg.dim() {
            labels
        } else {
            (0..alg.dim()).map(|i| format!("b{i}")).collect()
        };
        Superalgebra { name: name.into(), labels, alg, realization: None }
    }

    /// Builds from dense-index sparse constants, validating the grading.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        parities: Vec<Parity>,
        table: Vec<Vec<(usize, Scalar)>>,
    ) -> Result<Self> {
        Ok(Self::new(name, labels, TableAlgebra::new(&(), parities, table, Shape::Table)?))
    }

    /// Builds from products of basis pairs given as closures over indices.
    pub fn from_fn(
        name: impl Into<String>,
        labels: Vec<String>,
        parities: Vec<Parity>,
        mut f: impl FnMut(usize, usize) -> Vec<(usize, Scalar)>,
    ) -> Result<Self> {
        let d = parities.len();
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                table.push(f(i, j));
            }
        }
        Self::from_table(name, labels, parities, table)
    }

    pub fn with_realization(mut self, r: Realization) -> Self {
        self.realization = Some(r);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_shape(mut self, shape: Shape) -> Self {
        self.alg.shape = shape;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn parities(&self) -> &[Parity] {
        self.alg.parities()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.alg.parities()[i]
    }

    pub fn dims(&self) -> (usize, usize) {
        let odd = self.parities().iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }

    pub fn table(&self) -> &TableAlgebra<Scalar> {
        &self.alg
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn shape(&self) -> Shape {
        self.alg.shape()
    }

    pub fn is_supercommutative(&self) -> bool {
        self.alg.is_supercommutative()
    }

    pub fn basis(&self, i: usize) -> Element {
        unit_vec(&(), self.dim(), i)
    }

    pub fn zero(&self) -> Element {
        zero_vec(&(), self.dim())
    }

    /// Index of the basis vector carrying a label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Element from `(label, coefficient)` pairs. Panics on an unknown label.
    pub fn elem(&self, terms: &[(&str, Scalar)]) -> Element {
        let mut v = self.zero();
        for (l, c) in terms {
            let i = self.index_of(l).unwrap_or_else(|| panic!("no basis label {l} in {}", self.name));
            v[i] = &v[i] + c;
        }
        v
    }

    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Element> {
        for w in [u, v] {
            if w.len() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), got: w.len() });
            }
        }
        Ok(self.alg.mul(u, v))
    }

    /// Unchecked product for callers that already hold valid coordinates.
    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Element {
        self.alg.mul(u, v)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.alg.basis_product(i, j)
    }

    pub fn homogeneous_parity(&self, v: &[Scalar]) -> Option<Parity> {
        homogeneous_parity(v, self.parities())
    }

    /// Dense constants `c[i][j][k]`.
    pub fn dense_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| self.alg.basis_product_dense(i, j)).collect()).collect()
    }

    pub fn reduce_mod_p(&self, p: u64) -> Result<TableAlgebra<Fp>> {
        crate::modp::check_prime(p)?;
        self.alg.reduce_mod_p(p)
    }

    /// The two-sided unit, if any.
    pub fn unit(&self) -> Option<Element> {
        let d = self.dim();
        if let Shape::Matrix { n } | Shape::MatrixPlus { n } = self.shape() {
            let mut v = self.zero();
            for i in 0..n {
                v[i * n + i] = Scalar::ONE;
            }
            return Some(v);
        }
        // Unknown x: rows of the augmented system x·b_j = b_j and b_j·x = b_j,
        // fed into an incremental echelon form until the solution is pinned.
        let mut sys = Span::<Scalar>::new(&(), d + 1);
        'outer: for j in 0..d {
            for left in [true, false] {
                let mut rows = vec![vec![Scalar::ZERO; d + 1]; d];
                for i in 0..d {
                    let prod = if left { self.basis_product(i, j) } else { self.basis_product(j, i) };
                    for (k, c) in prod {
                        rows[*k][i] = c.clone();
                    }
                }
                rows[j][d] = Scalar::ONE;
                for row in rows {
                    if let Some(r) = sys.insert(row) {
                        if r.iter().take(d).all(Scalar::is_zero) {
                            return None;
                        }
                    }
                    if sys.dim() == d {
                        break 'outer;
                    }
                }
            }
        }
        let mut x = self.zero();
        for (row, &p) in sys.rows().iter().zip(sys.pivots()) {
            x[p] = row[d].clone();
        }
        let works = (0..d).all(|j| {
            let b = self.basis(j);
            self.mul(&x, &b) == b && self.mul(&b, &x) == b
        });
        works.then_some(x)
    }

    pub fn is_unital(&self) -> bool {
        self.unit().is_some()
    }
}

/// A linear map between superalgebras, as a `target.dim × source.dim` matrix
/// whose columns are images of basis vectors.
#[derive(Clone, Debug)]
pub struct GradedLinearMap {
    pub source: Arc<Superalgebra>,
    pub target: Arc<Superalgebra>,
    pub matrix: Matrix<Scalar>,
    pub parity_shift: Parity,
    pub unital: bool,
}

impl GradedLinearMap {
    pub fn new(source: Arc<Superalgebra>, target: Arc<Superalgebra>, images: &[Element]) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), got: images.len() });
        }
        let matrix = Matrix::from_columns(&(), target.dim(), images)?;
        Ok(GradedLinearMap { source, target, matrix, parity_shift: Parity::Even, unital: false })
    }

    pub fn unital(mut self) -> Self {
        self.unital = true;
        self
    }

    pub fn identity(a: Arc<Superalgebra>) -> Self {
        let d = a.dim();
        GradedLinearMap {
            source: a.clone(),
            target: a,
            matrix: Matrix::identity(&(), d),
            parity_shift: Parity::Even,
            unital: false,
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Element {
        self.matrix.mul_vec(v)
    }

    pub fn image(&self, i: usize) -> Element {
        self.matrix.column(i)
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.is_square() && self.matrix.rank() == self.source.dim()
    }
}

/// A linear map on an associative superalgebra, claimed to be a superinvolution.
#[derive(Clone, Debug)]
pub struct Superinvolution {
    pub algebra: Arc<Superalgebra>,
    pub map: Matrix<Scalar>,
}

impl Superinvolution {
    pub fn apply(&self, v: &[Scalar]) -> Element {
        self.map.mul_vec(v)
    }
}

/// Re-expresses the products of a homogeneous subspace in its own echelon
/// basis. Returns the induced algebra and the inclusion map.
pub fn induced_subalgebra(
    parent: &Arc<Superalgebra>,
    sub: &GradedSubspace<Scalar>,
    name: impl Into<String>,
) -> Result<(Superalgebra, GradedLinearMap)> {
    let basis = sub.basis();
    let parities = sub.basis_parities();
    let pivots = sub.basis_pivots();
    let d = basis.len();
    let mut table = Vec::with_capacity(d * d);
    for u in &basis {
        for v in &basis {
            let w = parent.mul(u, v);
            let coords: Vec<Scalar> = pivots.iter().map(|&p| w[p].clone()).collect();
            let mut residual = w.clone();
            for (c, b) in coords.iter().zip(&basis) {
                crate::field::axpy(&mut residual, &-c, b);
            }
            if !is_zero_vec(&residual) {
                return Err(Error::NotASubalgebra("subspace is not closed under the product".into()));
            }
            table.push(sparsify(coords));
        }
    }
    let labels = (0..d).map(|i| format!("h{i}")).collect();
    let mut alg = Superalgebra::from_table(name, labels, parities, table)?;
    if let Some(r) = parent.realization() {
        alg.realization = Some(Realization {
            matrices: basis.iter().map(|b| r.apply(b)).collect(),
            module_parities: r.module_parities.clone(),
            kind: r.kind,
        });
    }
    let alg = Arc::new(alg);
    let map = GradedLinearMap::new(alg.clone(), parent.clone(), &basis)?;
    let alg = Arc::try_unwrap(alg).unwrap_or_else(|a| (*a).clone());
    Ok((alg, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Superalgebra {
        // F·1 ⊕ F·x with x odd and x² = 0
        Superalgebra::from_fn("dual", vec!["1".into(), "x".into()], vec![Parity::Even, Parity::Odd], |i, j| {
            if i + j <= 1 {
                vec![(i + j, Scalar::ONE)]
            } else {
                vec![]
            }
        })
        .unwrap()
    }

    #[test]
    fn grading_is_validated() {
        let bad = Superalgebra::from_fn("bad", vec![], vec![Parity::Even, Parity::Odd], |_, _| vec![(1, Scalar::ONE)]);
        assert!(bad.is_err());
    }

    #[test]
    fn unit_is_found() {
        let a = small();
        assert_eq!(a.unit(), Some(a.basis(0)));
        assert!(a.is_supercommutative());
        assert_eq!(a.mul(&a.basis(1), &a.zero()), a.zero());
    }

    #[test]
    fn dimension_mismatch_reported() {
        let a = small();
        assert!(matches!(a.multiply(&[Scalar::ONE], &a.basis(0)), Err(Error::DimensionMismatch { .. })));
    }
}
