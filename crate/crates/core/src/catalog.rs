//! Constructors for the named superalgebras, superinvolutions and superforms.

use std::sync::Arc;

use crate::algebra::{Realization, RealizationKind, Shape, Superalgebra, Superinvolution};
use crate::axioms::{hermitian_part, plus_algebra};
use crate::error::{Error, Result};
use crate::grassmann::{degree, left_derivative, mono_label, mono_mul};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::Parity;

pub const MAX_GRASSMANN: usize = 10;
pub const MAX_KANTOR: usize = 6;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn one() -> Scalar {
    Scalar::ONE
}

fn half() -> Scalar {
    Scalar::half()
}

/// The Kaplansky superalgebra `K₃ = Fe ⊕ (Fx + Fy)`.
pub fn kaplansky() -> Superalgebra {
    let par = vec![Parity::Even, Parity::Odd, Parity::Odd];
    Superalgebra::from_fn("K3", labels(&["e", "x", "y"]), par, |i, j| match (i, j) {
        (0, 0) => vec![(0, one())],
        (0, 1) | (1, 0) => vec![(1, half())],
        (0, 2) | (2, 0) => vec![(2, half())],
        (1, 2) => vec![(0, one())],
        (2, 1) => vec![(0, -one())],
        _ => vec![],
    })
    .expect("graded table")
}

/// `D_t = (Fe + Ff) ⊕ (Fu + Fv)`, `u·v = e + tf`.
pub fn d_t(t: &Scalar) -> Result<Superalgebra> {
    if t.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let par = vec![Parity::Even, Parity::Even, Parity::Odd, Parity::Odd];
    let t = t.clone();
    Superalgebra::from_fn(format!("D_{t}"), labels(&["e", "f", "u", "v"]), par, |i, j| match (i, j) {
        (0, 0) => vec![(0, one())],
        (1, 1) => vec![(1, one())],
        (0, 2) | (2, 0) | (1, 2) | (2, 1) => vec![(2, half())],
        (0, 3) | (3, 0) | (1, 3) | (3, 1) => vec![(3, half())],
        (2, 3) => vec![(0, one()), (1, t.clone())],
        (3, 2) => vec![(0, -one()), (1, -t.clone())],
        _ => vec![],
    })
}

/// A nondegenerate supersymmetric form on `V = V₀ ⊕ V₁` with `dim V₀ = p`,
/// `dim V₁ = 2q`, in the standard basis (identity on `V₀`, `[[0, I], [−I, 0]]`
/// on `V₁`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperformSpace {
    pub p: usize,
    pub q: usize,
    pub gram: Matrix<Scalar>,
}

impl SuperformSpace {
    pub fn standard(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::EmptyForm);
        }
        let n = p + 2 * q;
        let gram = Matrix::from_fn(&(), n, n, |i, j| {
            if i < p || j < p {
                return if i == j { one() } else { Scalar::ZERO };
            }
            let (a, b) = (i - p, j - p);
            if a < q && b == a + q {
                one()
            } else if a >= q && b + q == a {
                -one()
            } else {
                Scalar::ZERO
            }
        });
        Ok(SuperformSpace { p, q, gram })
    }

    pub fn parities(&self) -> Vec<Parity> {
        let mut v = vec![Parity::Even; self.p];
        v.extend(vec![Parity::Odd; 2 * self.q]);
        v
    }
}

/// The superalgebra of a superform, `J = (F1 + V₀) ⊕ V₁`.
pub fn superform_algebra(p: usize, q: usize) -> Result<Superalgebra> {
    let space = SuperformSpace::standard(p, q)?;
    let n = p + 2 * q;
    let mut par = vec![Parity::Even];
    par.extend(space.parities());
    let mut names = vec!["1".to_string()];
    names.extend((1..=p).map(|i| format!("v{i}")));
    names.extend((1..=2 * q).map(|i| format!("w{i}")));
    Superalgebra::from_fn(format!("superform({p},{q})"), names, par, |i, j| {
        if i == 0 {
            vec![(j, one())]
        } else if j == 0 {
            vec![(i, one())]
        } else {
            let c = space.gram[(i - 1, j - 1)].clone();
            if c.is_zero() {
                vec![]
            } else {
                vec![(0, c)]
            }
        }
    })
    .map(|a| {
        debug_assert_eq!(a.dim(), 1 + n);
        a
    })
}

fn unit_label(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{},{}", i + 1, j + 1)
    }
}

/// `End(V)` for a graded module with the given parities, basis `e_ij`
/// row-major; `e_ij` is odd iff the two indices have different parities.
pub fn endomorphism_algebra(name: impl Into<String>, module: &[Parity]) -> Superalgebra {
    let n = module.len();
    let par: Vec<Parity> = (0..n * n).map(|k| module[k / n].add(module[k % n])).collect();
    let names = (0..n * n).map(|k| unit_label(n, k / n, k % n)).collect();
    let alg = Superalgebra::from_fn(name, names, par, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        if j == k {
            vec![(i * n + l, one())]
        } else {
            vec![]
        }
    })
    .expect("graded table")
    .with_shape(Shape::Matrix { n });
    let matrices = (0..n * n).map(|k| Matrix::unit(n, k / n, k % n)).collect();
    alg.with_realization(Realization { matrices, module_parities: module.to_vec(), kind: RealizationKind::Matrix })
}

pub fn module_parities(p: usize, q: usize) -> Vec<Parity> {
    let mut v = vec![Parity::Even; p];
    v.extend(vec![Parity::Odd; q]);
    v
}

/// `M_{p,q}(F)`.
pub fn matrix_superalgebra(p: usize, q: usize) -> Result<Superalgebra> {
    if p + q == 0 {
        return Err(Error::BadParameter("M_{p,q} needs p + q ≥ 1".into()));
    }
    Ok(endomorphism_algebra(format!("M({p},{q})"), &module_parities(p, q)))
}

/// `Q_n(F)`: even `(a, a)` diagonal blocks `A_ij`, odd `(b, b)` antidiagonal
/// blocks `B_ij`.
pub fn q_n(n: usize) -> Result<Superalgebra> {
    if n == 0 {
        return Err(Error::BadParameter("Q_n needs n ≥ 1".into()));
    }
    let m = n * n;
    let mut par = vec![Parity::Even; m];
    par.extend(vec![Parity::Odd; m]);
    let mut names: Vec<String> = (0..m).map(|k| format!("a{}{}", k / n + 1, k % n + 1)).collect();
    names.extend((0..m).map(|k| format!("b{}{}", k / n + 1, k % n + 1)));
    let alg = Superalgebra::from_fn(format!("Q({n})"), names, par, |x, y| {
        let (ox, ix) = (x / m, x % m);
        let (oy, iy) = (y / m, y % m);
        let (i, j) = (ix / n, ix % n);
        let (k, l) = (iy / n, iy % n);
        if j != k {
            return vec![];
        }
        let odd = ox ^ oy;
        vec![(odd * m + i * n + l, one())]
    })?;
    let matrices = (0..2 * m)
        .map(|x| {
            let (o, ix) = (x / m, x % m);
            let (i, j) = (ix / n, ix % n);
            let mut mat = Matrix::zeros(&(), 2 * n, 2 * n);
            if o == 0 {
                mat[(i, j)] = one();
                mat[(n + i, n + j)] = one();
            } else {
                mat[(i, n + j)] = one();
                mat[(n + i, j)] = one();
            }
            mat
        })
        .collect();
    Ok(alg.with_realization(Realization {
        matrices,
        module_parities: module_parities(n, n),
        kind: RealizationKind::Queer,
    }))
}

/// The Grassmann superalgebra on `n` generators, basis indexed by monomial
/// bitmask.
pub fn grassmann(n: usize) -> Result<Superalgebra> {
    if n == 0 {
        return Err(Error::BadParameter("grassmann needs n ≥ 1".into()));
    }
    if n > MAX_GRASSMANN {
        return Err(Error::TooLarge(format!("grassmann({n}) exceeds n ≤ {MAX_GRASSMANN}")));
    }
    let d = 1 << n;
    let par = (0..d).map(|a| Parity::from_bit((degree(a) % 2) as u8)).collect();
    let names = (0..d).map(mono_label).collect();
    Superalgebra::from_fn(format!("G({n})"), names, par, |a, b| match mono_mul(a, b) {
        Some((m, neg)) => vec![(m, if neg { -one() } else { one() })],
        None => vec![],
    })
}

/// `{f, g} = Σ_i (-1)^{f̄} ∂f/∂e_i ∂g/∂e_i` on monomials, as a sparse list.
fn kantor_bracket(n: usize, a: usize, b: usize) -> Vec<(usize, Scalar)> {
    let mut acc = vec![Scalar::ZERO; 1 << n];
    let fa = degree(a) % 2 == 1;
    for i in 0..n {
        let (Some((da, sa)), Some((db, sb))) = (left_derivative(a, i), left_derivative(b, i)) else {
            continue;
        };
        if let Some((m, sm)) = mono_mul(da, db) {
            let neg = fa ^ sa ^ sb ^ sm;
            if neg {
                acc[m] -= &one();
            } else {
                acc[m] += &one();
            }
        }
    }
    crate::algebra::sparsify(acc)
}

/// The Kantor double `J = G + Gx` of the Grassmann algebra on `n` generators.
/// Indices `0..2ⁿ` are `G`, indices `2ⁿ + mask` are `mask·x`.
pub fn kantor_double(n: usize) -> Result<Superalgebra> {
    if n == 0 {
        return Err(Error::BadParameter("kantor needs n ≥ 1".into()));
    }
    if n > MAX_KANTOR {
        return Err(Error::TooLarge(format!("kantor({n}) exceeds n ≤ {MAX_KANTOR}")));
    }
    let g = 1usize << n;
    let par = (0..2 * g)
        .map(|k| {
            let deg = degree(k % g) as u8;
            Parity::from_bit(if k < g { deg } else { deg + 1 })
        })
        .collect();
    let names = (0..2 * g).map(|k| if k < g { mono_label(k) } else { format!("{}x", mono_label(k - g)) }).collect();
    let sign = |neg: bool| if neg { -one() } else { one() };
    Superalgebra::from_fn(format!("Kantor({n})"), names, par, |x, y| match (x < g, y < g) {
        (true, true) => mono_mul(x, y).map(|(m, s)| vec![(m, sign(s))]).unwrap_or_default(),
        // a(bx) = (ab)x
        (true, false) => mono_mul(x, y - g).map(|(m, s)| vec![(g + m, sign(s))]).unwrap_or_default(),
        // (bx)a = (-1)^{ā}(ba)x
        (false, true) => {
            let fa = degree(y) % 2 == 1;
            mono_mul(x - g, y).map(|(m, s)| vec![(g + m, sign(s ^ fa))]).unwrap_or_default()
        }
        // (ax)(bx) = (-1)^{b̄}{a, b}
        (false, false) => {
            let fb = degree(y - g) % 2 == 1;
            kantor_bracket(n, x - g, y - g).into_iter().map(|(k, c)| (k, if fb { -c } else { c })).collect()
        }
    })
}

/// `J + F·1` with a formal identity appended as the last basis vector.
pub fn unital_hull(j: &Superalgebra) -> Result<Superalgebra> {
    if j.is_unital() {
        return Err(Error::AlreadyUnital(j.name().to_string()));
    }
    let d = j.dim();
    let mut par = j.parities().to_vec();
    par.push(Parity::Even);
    let mut names = j.labels().to_vec();
    names.push("1".into());
    Superalgebra::from_fn(format!("hull({})", j.name()), names, par, |a, b| {
        if a == d {
            vec![(b, one())]
        } else if b == d {
            vec![(a, one())]
        } else {
            j.basis_product(a, b).to_vec()
        }
    })
}

/// Builds the coordinate map of a block-matrix rule on `M_{n,k}` (both block
/// sizes taken from the module parities, which must be sorted even-first).
fn block_rule_map(
    alg: &Superalgebra,
    rule: impl Fn(&Matrix<Scalar>) -> Matrix<Scalar>,
) -> Matrix<Scalar> {
    let n = alg.realization().expect("matrix algebra").module_dim();
    let cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|k| rule(&Matrix::unit(n, k / n, k % n)).into_entries())
        .collect();
    Matrix::from_columns(&(), n * n, &cols).expect("square")
}

fn split(x: &Matrix<Scalar>, p: usize) -> [Matrix<Scalar>; 4] {
    let n = x.rows();
    [
        x.submatrix(0, 0, p, p),
        x.submatrix(0, p, p, n - p),
        x.submatrix(p, 0, n - p, p),
        x.submatrix(p, p, n - p, n - p),
    ]
}

/// `[[a, b], [c, d]] ↦ [[dᵗ, −bᵗ], [cᵗ, aᵗ]]` on `M_{n,n}`.
pub fn transpose_superinvolution(n: usize) -> Result<Superinvolution> {
    if n == 0 {
        return Err(Error::BadParameter("transpose superinvolution needs n ≥ 1".into()));
    }
    let alg = matrix_superalgebra(n, n)?;
    let map = block_rule_map(&alg, |x| {
        let [a, b, c, d] = split(x, n);
        let minus = Scalar::from_int(-1);
        Matrix::from_blocks(
            &(),
            &[vec![d.transpose(), b.transpose().scale(&minus)], vec![c.transpose(), a.transpose()]],
        )
        .expect("block shapes agree")
    });
    Ok(Superinvolution { algebra: Arc::new(alg), map })
}

/// `q = [[0, I_m], [−I_m, 0]]`.
pub fn symplectic_q(m: usize) -> Matrix<Scalar> {
    Matrix::from_fn(&(), 2 * m, 2 * m, |i, j| {
        if i < m && j == i + m {
            one()
        } else if i >= m && j + m == i {
            -one()
        } else {
            Scalar::ZERO
        }
    })
}

/// `[[a, b], [c, d]] ↦ [[aᵗ, cᵗq], [−qᵗbᵗ, qᵗdᵗq]]` on `M_{n,2m}`.
pub fn orthosymplectic_superinvolution(n: usize, m: usize) -> Result<Superinvolution> {
    if m == 0 {
        return Err(Error::BadParameter("orthosymplectic superinvolution needs m ≥ 1".into()));
    }
    let alg = matrix_superalgebra(n, 2 * m)?;
    let q = symplectic_q(m);
    let qt = q.transpose();
    let map = block_rule_map(&alg, |x| {
        let [a, b, c, d] = split(x, n);
        let minus = Scalar::from_int(-1);
        Matrix::from_blocks(
            &(),
            &[
                vec![a.transpose(), c.transpose().mul(&q)],
                vec![qt.mul(&b.transpose()).scale(&minus), qt.mul(&d.transpose()).mul(&q)],
            ],
        )
        .expect("block shapes agree")
    });
    Ok(Superinvolution { algebra: Arc::new(alg), map })
}

/// The adjoint involution `f ↦ f*` of an even nondegenerate form on the
/// module of a matrix algebra, `(fv, w) = (-1)^{f̄v̄}(v, f*w)`. With Gram
/// matrix `G` and `S = diag((-1)^{v̄})` this is `f* = G⁻¹ S^{f̄} fᵀ G`.
pub fn superinvolution_from_form(alg: Arc<Superalgebra>, gram: &Matrix<Scalar>) -> Result<Superinvolution> {
    let r = alg.realization().ok_or_else(|| Error::NoRealization(alg.name().to_string()))?;
    let module = r.module_parities.clone();
    let n = module.len();
    if alg.shape() != (Shape::Matrix { n }) {
        return Err(Error::BadParameter("form adjoint needs a full matrix algebra".into()));
    }
    if gram.rows() != n || gram.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: gram.rows() });
    }
    for i in 0..n {
        for j in 0..n {
            if !gram[(i, j)].is_zero() && module[i] != module[j] {
                return Err(Error::BadParameter("form is not even".into()));
            }
        }
    }
    let ginv = gram.inverse().ok_or(Error::DegenerateForm)?;
    let s = Matrix::diag(&module.iter().map(|p| if p.is_odd() { -one() } else { one() }).collect::<Vec<_>>());
    let cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|k| {
            let f = Matrix::unit(n, k / n, k % n);
            let odd = alg.parity(k).is_odd();
            let ft = f.transpose();
            let inner = if odd { s.mul(&ft) } else { ft };
            ginv.mul(&inner).mul(gram).into_entries()
        })
        .collect();
    let map = Matrix::from_columns(&(), n * n, &cols)?;
    Ok(Superinvolution { algebra: alg, map })
}

/// `p(n) = H(M_{n,n}, transpose)`.
pub fn p_n(n: usize) -> Result<Superalgebra> {
    let s = transpose_superinvolution(n)?;
    Ok(hermitian_part(&s.algebra.clone(), &s, format!("p({n})"))?.algebra)
}

/// `osp_{n,2m} = H(M_{n,2m}, orthosymplectic)`.
pub fn osp(n: usize, m: usize) -> Result<Superalgebra> {
    let s = orthosymplectic_superinvolution(n, m)?;
    Ok(hermitian_part(&s.algebra.clone(), &s, format!("osp({n}|{})", 2 * m))?.algebra)
}

/// A catalog build: the algebra plus a superinvolution when the spec asks
/// for one.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub algebra: Superalgebra,
    pub superinvolution: Option<Superinvolution>,
}

impl From<Superalgebra> for CatalogEntry {
    fn from(algebra: Superalgebra) -> Self {
        CatalogEntry { algebra, superinvolution: None }
    }
}

/// The spec grammar, with a one-line description per form.
pub fn catalog_list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("K3", "Kaplansky superalgebra, dim 3"),
        ("Dt:<t>", "D_t for a nonzero rational t, dim 4"),
        ("superform:<p>,<q>", "superalgebra of a superform, dim V0 = p, dim V1 = 2q"),
        ("M:<p>,<q>", "associative matrix superalgebra M_{p,q}"),
        ("Q:<n>", "associative queer superalgebra Q_n"),
        ("grassmann:<n>", "associative Grassmann superalgebra on n generators"),
        ("kantor:<n>", "Kantor double of the Grassmann algebra on n generators"),
        ("p:<n>", "H(M_{n,n}, transpose)"),
        ("osp:<n>,<m>", "H(M_{n,2m}, orthosymplectic)"),
        ("hull:<spec>", "unital hull of a non-unital algebra"),
        ("plus:<spec>", "A+ of an associative algebra"),
        ("Mt:<n>", "M_{n,n} carrying the transpose superinvolution"),
        ("Mosp:<n>,<m>", "M_{n,2m} carrying the orthosymplectic superinvolution"),
    ]
}

fn parse_usize(s: &str, spec: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::UnknownSpec(spec.to_string()))
}

fn parse_pair(s: &str, spec: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(',').ok_or_else(|| Error::UnknownSpec(spec.to_string()))?;
    Ok((parse_usize(a, spec)?, parse_usize(b, spec)?))
}

/// Builds an algebra from the catalog grammar.
pub fn build(spec: &str) -> Result<CatalogEntry> {
    let spec = spec.trim();
    if spec == "K3" {
        return Ok(kaplansky().into());
    }
    let (head, arg) = spec.split_once(':').ok_or_else(|| Error::UnknownSpec(spec.to_string()))?;
    let entry: CatalogEntry = match head {
        "Dt" => d_t(&arg.parse::<Scalar>()?)?.into(),
        "superform" => {
            let (p, q) = parse_pair(arg, spec)?;
            superform_algebra(p, q)?.into()
        }
        "M" => {
            let (p, q) = parse_pair(arg, spec)?;
            matrix_superalgebra(p, q)?.into()
        }
        "Q" => q_n(parse_usize(arg, spec)?)?.into(),
        "grassmann" => grassmann(parse_usize(arg, spec)?)?.into(),
        "kantor" => kantor_double(parse_usize(arg, spec)?)?.into(),
        "p" => p_n(parse_usize(arg, spec)?)?.into(),
        "osp" => {
            let (n, m) = parse_pair(arg, spec)?;
            osp(n, m)?.into()
        }
        "hull" => unital_hull(&build(arg)?.algebra)?.into(),
        "plus" => plus_algebra(&build(arg)?.algebra)?.into(),
        "Mt" => {
            let s = transpose_superinvolution(parse_usize(arg, spec)?)?;
            CatalogEntry { algebra: (*s.algebra).clone(), superinvolution: Some(s) }
        }
        "Mosp" => {
            let (n, m) = parse_pair(arg, spec)?;
            let s = orthosymplectic_superinvolution(n, m)?;
            CatalogEntry { algebra: (*s.algebra).clone(), superinvolution: Some(s) }
        }
        _ => return Err(Error::UnknownSpec(spec.to_string())),
    };
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_associative, check_jordan_super, check_superinvolution, hermitian_part, is_graded_ideal};
    use crate::subspace::GradedSubspace;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn multiply_examples() {
        let d2 = d_t(&Scalar::from_int(2)).unwrap();
        let uv = d2.multiply(&d2.basis(2), &d2.basis(3)).unwrap();
        assert_eq!(uv, d2.elem(&[("e", one()), ("f", Scalar::from_int(2))]));
        let k = kaplansky();
        assert_eq!(k.mul(&k.basis(0), &k.basis(1)), k.elem(&[("x", half())]));
        assert_eq!(k.mul(&k.basis(1), &k.zero()), k.zero());
    }

    #[test]
    fn kaplansky_shape() {
        let k = kaplansky();
        assert_eq!(k.dims(), (1, 2));
        assert!(!k.is_unital());
        assert!(check_jordan_super(&k).passed());
    }

    #[test]
    fn dt_parameters() {
        assert!(matches!(d_t(&Scalar::ZERO), Err(Error::ZeroParameter)));
        for t in [s(2, 1), s(-1, 1), s(-2, 3)] {
            let d = d_t(&t).unwrap();
            assert!(check_jordan_super(&d).passed(), "D_{t}");
            // (e+f)·u = ½u + ½u = u
            let ef = d.elem(&[("e", one()), ("f", one())]);
            assert_eq!(d.unit(), Some(ef));
        }
    }

    #[test]
    fn superform_shapes() {
        assert!(matches!(superform_algebra(0, 0), Err(Error::EmptyForm)));
        let j = superform_algebra(1, 1).unwrap();
        assert_eq!(j.dim(), 4);
        assert!(j.is_unital());
        // v·w + w·v = 2(v,w)·1 for odd v, w: here (w1,w2) = 1, (w2,w1) = -1
        let (w1, w2) = (j.basis(2), j.basis(3));
        let diff: Vec<Scalar> = j.mul(&w1, &w2).iter().zip(&j.mul(&w2, &w1)).map(|(a, b)| a - b).collect();
        assert_eq!(diff, j.elem(&[("1", Scalar::from_int(2))]));
        for (p, q) in [(1, 1), (2, 1), (3, 2)] {
            assert!(check_jordan_super(&superform_algebra(p, q).unwrap()).passed());
        }
    }

    #[test]
    fn matrix_superalgebra_shapes() {
        let m = matrix_superalgebra(1, 1).unwrap();
        assert_eq!(m.dims(), (2, 2));
        assert!(check_associative(&m).passed());
        assert!(!check_jordan_super(&m).passed());
        assert_eq!(matrix_superalgebra(2, 1).unwrap().dims().0, 5);
        // e12 ∘ e21 = ½(e11 − e22)
        let plus = plus_algebra(&m).unwrap();
        let prod = plus.mul(&m.basis(1), &m.basis(2));
        assert_eq!(prod, plus.elem(&[("e11", half()), ("e22", -half())]));
        // the fast path agrees with the table
        assert_eq!(prod, plus.table().basis_product_dense(1, 2));
    }

    #[test]
    fn queer_shapes() {
        let q2 = q_n(2).unwrap();
        assert_eq!(q2.dim(), 8);
        assert!(check_associative(&q2).passed());
        assert!(check_jordan_super(&plus_algebra(&q2).unwrap()).passed());
        // u = (I, I) odd: u² = 1 and u lies in the (ungraded) center
        let u = q2.elem(&[("b11", one()), ("b22", one())]);
        assert_eq!(q2.mul(&u, &u), q2.unit().unwrap());
        for i in 0..q2.dim() {
            let b = q2.basis(i);
            assert_eq!(q2.mul(&u, &b), q2.mul(&b, &u));
        }
        assert_eq!(q_n(1).unwrap().dims(), (1, 1));
    }

    #[test]
    fn grassmann_shapes() {
        let g = grassmann(2).unwrap();
        assert_eq!(g.dim(), 4);
        let (e1, e2) = (g.basis(1), g.basis(2));
        let e12 = g.mul(&e1, &e2);
        assert_eq!(g.mul(&e2, &e1), e12.iter().map(|x| -x).collect::<Vec<_>>());
        assert_eq!(g.mul(&e1, &e1), g.zero());
        assert_eq!(g.unit(), Some(g.basis(0)));
        assert!(matches!(grassmann(11), Err(Error::TooLarge(_))));
    }

    #[test]
    fn kantor_shapes() {
        let k = kantor_double(1).unwrap();
        assert_eq!(k.dim(), 4);
        let x = k.elem(&[("1x", one())]);
        assert_eq!(k.mul(&x, &x), k.zero());
        for n in 1..=3 {
            let rep = check_jordan_super(&kantor_double(n).unwrap());
            assert!(rep.passed(), "{}", rep.summary());
        }
        assert!(matches!(kantor_double(7), Err(Error::TooLarge(_))));
    }

    #[test]
    fn hull_shapes() {
        let k = kaplansky();
        let h = unital_hull(&k).unwrap();
        assert_eq!(h.dim(), 4);
        let inner = GradedSubspace::from_homogeneous(&(), h.parities(), &(0..3).map(|i| h.basis(i)).collect::<Vec<_>>()).unwrap();
        assert!(is_graded_ideal(&h, &inner));
        assert_eq!(h.mul(&h.basis(3), &h.basis(1)), h.basis(1));
        assert!(matches!(unital_hull(&h), Err(Error::AlreadyUnital(_))));
    }

    #[test]
    fn superinvolution_shapes() {
        for n in 1..=3 {
            assert!(check_superinvolution(&transpose_superinvolution(n).unwrap()).passed());
        }
        for (n, m) in [(1, 1), (2, 1), (3, 1), (2, 2)] {
            assert!(check_superinvolution(&orthosymplectic_superinvolution(n, m).unwrap()).passed());
        }
        assert_eq!(p_n(2).unwrap().dim(), 8);
        assert_eq!(p_n(1).unwrap().dims(), (1, 1));
        assert_eq!(osp(1, 1).unwrap().dims(), (2, 2));
    }

    #[test]
    fn plain_transpose_is_not_a_superinvolution() {
        let alg = Arc::new(matrix_superalgebra(1, 1).unwrap());
        let map = block_rule_map(&alg, |x| x.transpose());
        let rep = check_superinvolution(&Superinvolution { algebra: alg, map });
        assert!(!rep.passed());
    }

    #[test]
    fn form_adjoint_matches_block_rule() {
        for (n, m) in [(1, 1), (2, 1), (0, 1)] {
            let block = orthosymplectic_superinvolution(n, m).unwrap();
            let mut gram = Matrix::identity(&(), n + 2 * m);
            let q = symplectic_q(m);
            for i in 0..2 * m {
                for j in 0..2 * m {
                    gram[(n + i, n + j)] = q[(i, j)].clone();
                }
            }
            let adj = superinvolution_from_form(block.algebra.clone(), &gram).unwrap();
            assert_eq!(adj.map, block.map);
        }
        let alg = Arc::new(matrix_superalgebra(1, 0).unwrap());
        assert!(matches!(superinvolution_from_form(alg, &Matrix::zeros(&(), 1, 1)), Err(Error::DegenerateForm)));
    }

    #[test]
    fn hermitian_part_of_identity_map_is_everything() {
        let alg = Arc::new(matrix_superalgebra(1, 1).unwrap());
        let s = Superinvolution { algebra: alg.clone(), map: Matrix::identity(&(), 4) };
        // the identity is not an anti-automorphism of M_{1,1}, so it is refused
        assert!(hermitian_part(&alg, &s, "h").is_err());
        let k = Arc::new(grassmann(1).unwrap());
        let s = Superinvolution { algebra: k.clone(), map: Matrix::identity(&(), 2) };
        let h = hermitian_part(&k, &s, "h").unwrap();
        assert_eq!(h.algebra.dim(), 2);
    }

    #[test]
    fn grammar() {
        assert_eq!(build("Dt:-2").unwrap().algebra.dim(), 4);
        assert_eq!(build("osp:1,1").unwrap().algebra.dim(), 4);
        assert!(matches!(build("Dt:0"), Err(Error::ZeroParameter)));
        assert!(matches!(build("nope"), Err(Error::UnknownSpec(_))));
        assert_eq!(build("hull:K3").unwrap().algebra.dim(), 4);
        assert!(build("Mt:2").unwrap().superinvolution.is_some());
    }
}
