//! `osp(1,2)`, its irreducible modules `V(m)`, the invariant form on them,
//! and the representation-level embedding of `D_t` into `End(V(m))⁺`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, GradedLinearMap, Superalgebra, Superinvolution};
use crate::axioms::{check_graded_hom, check_superinvolution, peirce_decompose, plus_algebra, VerificationReport};
use crate::catalog::{d_t, endomorphism_algebra, q_n, superinvolution_from_form};
use crate::error::{Error, Result};
use crate::generation::closure;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::{GradedSubspace, Parity};

pub const H: usize = 0;
pub const E: usize = 1;
pub const F: usize = 2;
pub const X: usize = 3;
pub const Y: usize = 4;

pub const OSP_LABELS: [&str; 5] = ["h", "e", "f", "x", "y"];

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn osp_parity(i: usize) -> Parity {
    if i >= X {
        Parity::Odd
    } else {
        Parity::Even
    }
}

fn supercommutator(a: &Matrix<Scalar>, b: &Matrix<Scalar>, flip: bool) -> Matrix<Scalar> {
    let (ab, ba) = (a.mul(b), b.mul(a));
    if flip {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

/// Coordinates of `m` in the span of `basis`, if it lies there.
pub fn coordinates_in(basis: &[Matrix<Scalar>], m: &Matrix<Scalar>) -> Option<Vec<Scalar>> {
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    Matrix::from_columns(&(), m.rows() * m.cols(), &cols).ok()?.solve(m.entries())
}

/// `osp(1,2)` with its bracket as the product and the 3×3 matrices it was
/// read off from.
#[derive(Clone, Debug)]
pub struct OspAlgebra {
    pub algebra: Superalgebra,
    pub matrices: Vec<Matrix<Scalar>>,
}

impl OspAlgebra {
    pub fn bracket(&self, a: usize, b: usize) -> Element {
        self.algebra.table().basis_product_dense(a, b)
    }
}

pub fn osp12() -> OspAlgebra {
    let matrices = vec![
        Matrix::from_ints(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
        Matrix::from_ints(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]),
        Matrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]),
        Matrix::from_ints(&[&[0, 0, -1], &[1, 0, 0], &[0, 0, 0]]),
        Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[1, 0, 0]]),
    ];
    let par: Vec<Parity> = (0..5).map(osp_parity).collect();
    let labels = OSP_LABELS.iter().map(|s| s.to_string()).collect();
    let algebra = Superalgebra::from_fn("osp(1,2)", labels, par, |a, b| {
        let flip = osp_parity(a).sign_flip(osp_parity(b));
        let c = supercommutator(&matrices[a], &matrices[b], flip);
        let coords = coordinates_in(&matrices, &c).expect("osp(1,2) is closed under the bracket");
        coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
    })
    .expect("graded bracket");
    OspAlgebra { algebra, matrices }
}

/// Super-anticommutativity and the super Jacobi identity on basis triples.
pub fn check_lie_super(g: &Superalgebra) -> VerificationReport {
    let mut rep = VerificationReport::new("lie-super", g.name());
    let n = g.dim();
    let br = |u: &[Scalar], v: &[Scalar]| g.mul(u, v);
    for a in 0..n {
        for b in 0..n {
            let flip = g.parity(a).sign_flip(g.parity(b));
            let ab = g.basis_product(a, b).to_vec();
            let ba = g.table().basis_product_dense(b, a);
            let want: Vec<Scalar> = ba.iter().map(|x| if flip { x.clone() } else { -x }).collect();
            rep.require(
                crate::algebra::sparsify(want) == ab,
                format!("({}, {})", g.label(a), g.label(b)),
                "[a,b] ≠ -(-1)^{āb̄}[b,a]",
            );
            for c in 0..n {
                let (ea, eb, ec) = (g.basis(a), g.basis(b), g.basis(c));
                let lhs = br(&ea, &br(&eb, &ec));
                let mut rhs = br(&br(&ea, &eb), &ec);
                let t = br(&eb, &br(&ea, &ec));
                for (r, x) in rhs.iter_mut().zip(&t) {
                    if flip {
                        *r -= x;
                    } else {
                        *r += x;
                    }
                }
                rep.require(
                    lhs == rhs,
                    format!("({}, {}, {})", g.label(a), g.label(b), g.label(c)),
                    "super Jacobi fails",
                );
            }
        }
    }
    rep
}

/// The irreducible module `V(m)` with basis `e₀, …, e_{2m}`; column `i` of
/// each matrix is the image of `eᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VmModule {
    pub m: usize,
    pub opposite_parity: bool,
    pub rho: Vec<Matrix<Scalar>>,
}

pub fn vm_module(m: usize) -> VmModule {
    let n = 2 * m + 1;
    let mi = m as i64;
    let mut rho = vec![Matrix::zeros(&(), n, n); 5];
    for i in 0..n {
        rho[H][(i, i)] = int(mi - i as i64);
        if i + 2 < n {
            rho[F][(i + 2, i)] = Scalar::ONE;
        }
        if i + 1 < n {
            rho[Y][(i + 1, i)] = Scalar::ONE;
        }
        let k = (i / 2) as i64;
        if i % 2 == 0 {
            if k > 0 {
                rho[X][(i - 1, i)] = int(-k);
                rho[E][(i - 2, i)] = int(k * (mi - k + 1));
            }
        } else {
            rho[X][(i - 1, i)] = int(mi - k);
            if k > 0 {
                rho[E][(i - 2, i)] = int(k * (mi - k));
            }
        }
    }
    VmModule { m, opposite_parity: false, rho }
}

impl VmModule {
    pub fn dim(&self) -> usize {
        2 * self.m + 1
    }

    /// `V(m)^op`: the same action with all parities flipped.
    pub fn opposite(&self) -> VmModule {
        VmModule { opposite_parity: !self.opposite_parity, ..self.clone() }
    }

    pub fn parity(&self, i: usize) -> Parity {
        Parity::from_bit(((i % 2 == 1) ^ self.opposite_parity) as u8)
    }

    pub fn parities(&self) -> Vec<Parity> {
        (0..self.dim()).map(|i| self.parity(i)).collect()
    }

    /// Even-indexed basis vectors first: `e₀, e₂, …, e_{2m}, e₁, e₃, …`.
    pub fn sorted_order(&self) -> Vec<usize> {
        (0..self.dim()).step_by(2).chain((1..self.dim()).step_by(2)).collect()
    }

    /// A matrix on `V(m)` rewritten in the sorted basis.
    pub fn to_sorted(&self, a: &Matrix<Scalar>) -> Matrix<Scalar> {
        let perm = self.sorted_order();
        Matrix::from_fn(&(), a.rows(), a.cols(), |i, j| a[(perm[i], perm[j])].clone())
    }

    /// `ρ_xρ_y − ρ_yρ_x`.
    pub fn xy_minus_yx(&self) -> Matrix<Scalar> {
        self.rho[X].mul(&self.rho[Y]).sub(&self.rho[Y].mul(&self.rho[X]))
    }

    pub fn rho_of(&self, coords: &[Scalar]) -> Matrix<Scalar> {
        let n = self.dim();
        coords
            .iter()
            .zip(&self.rho)
            .filter(|(c, _)| !c.is_zero())
            .fold(Matrix::zeros(&(), n, n), |acc, (c, r)| acc.add(&r.scale(c)))
    }
}

/// `ρ_{[a,b]} = ρ_aρ_b − (−1)^{āb̄}ρ_bρ_a` on every unordered basis pair.
pub fn check_rep(module: &VmModule) -> VerificationReport {
    let g = osp12();
    let mut rep = VerificationReport::new("representation", format!("V({})", module.m));
    for a in 0..5 {
        for b in a..5 {
            let flip = osp_parity(a).sign_flip(osp_parity(b));
            let lhs = module.rho_of(&g.bracket(a, b));
            let rhs = supercommutator(&module.rho[a], &module.rho[b], flip);
            rep.require(lhs == rhs, format!("({},{})", OSP_LABELS[a], OSP_LABELS[b]), "bracket not preserved");
        }
    }
    rep
}

/// Monic minimal polynomial, coefficients from the constant term up.
pub fn minimal_polynomial(a: &Matrix<Scalar>) -> Vec<Scalar> {
    let n = a.rows();
    let mut powers = vec![Matrix::identity(&(), n)];
    loop {
        let next = powers.last().unwrap().mul(a);
        if let Some(c) = coordinates_in(&powers, &next) {
            let mut poly: Vec<Scalar> = c.iter().map(|x| -x).collect();
            poly.push(Scalar::ONE);
            return poly;
        }
        powers.push(next);
    }
}

pub fn minimal_poly_xyyx(module: &VmModule) -> Vec<Scalar> {
    minimal_polynomial(&module.xy_minus_yx())
}

/// Renders `[c₀, c₁, …]` as `X^2 + X - 2`.
pub fn format_poly(coeffs: &[Scalar]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => "X".into(),
            _ => format!("X^{k}"),
        };
        if k == 0 || !abs.is_one() {
            out.push_str(&abs.to_string());
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantForm {
    pub module: VmModule,
    pub gram: Matrix<Scalar>,
}

fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::ONE
    } else {
        Scalar::ONE
    }
}

/// The invariant form on `V(m)`, or on `V(m)^op` with
/// `(u|v)′ = (−1)^{|u|}(u|v)` when the module has opposite parity.
pub fn vm_form(module: &VmModule) -> InvariantForm {
    let m = module.m;
    let n = module.dim();
    let mut gram = Matrix::zeros(&(), n, n);
    for r in 0..=m {
        gram[(2 * r, 2 * (m - r))] = sign(r % 2 == 1);
    }
    for r in 0..m {
        gram[(2 * r + 1, 2 * (m - r) - 1)] = sign(r % 2 == 1);
    }
    if module.opposite_parity {
        for i in 0..n {
            for j in 0..n {
                if i % 2 == 1 {
                    gram[(i, j)] = -&gram[(i, j)];
                }
            }
        }
    }
    InvariantForm { module: module.clone(), gram }
}

impl InvariantForm {
    pub fn pair(&self, i: usize, j: usize) -> &Scalar {
        &self.gram[(i, j)]
    }

    /// `(u|v) = ε(−1)^{|u||v|}(v|u)` on basis pairs, `ε = 1` for
    /// supersymmetric and `−1` for superskew.
    pub fn has_symmetry(&self, skew: bool) -> bool {
        let n = self.module.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let odd = self.module.parity(i).is_odd() && self.module.parity(j).is_odd();
                let s = sign(odd ^ skew);
                self.gram[(i, j)] == &s * &self.gram[(j, i)]
            })
        })
    }

    pub fn is_supersymmetric(&self) -> bool {
        self.has_symmetry(false)
    }

    pub fn is_superskew(&self) -> bool {
        self.has_symmetry(true)
    }

    pub fn is_even(&self) -> bool {
        let n = self.module.dim();
        (0..n).all(|i| (0..n).all(|j| self.gram[(i, j)].is_zero() || self.module.parity(i) == self.module.parity(j)))
    }

    /// `(zv|w) = (−1)^{|v|}(v|zw)` for all basis `v, w`.
    pub fn supersymmetric_operator(&self, z: &Matrix<Scalar>) -> bool {
        let lhs = z.transpose().mul(&self.gram);
        let s = Matrix::diag(&self.module.parities().iter().map(|p| sign(p.is_odd())).collect::<Vec<_>>());
        lhs == s.mul(&self.gram).mul(z)
    }

    /// `(zv|w) = −(v|zw)` for all basis `v, w`.
    pub fn skew_operator(&self, z: &Matrix<Scalar>) -> bool {
        z.transpose().mul(&self.gram) == self.gram.mul(z).scale(&-Scalar::ONE)
    }

    /// The Gram matrix in the sorted basis.
    pub fn sorted_gram(&self) -> Matrix<Scalar> {
        self.module.to_sorted(&self.gram)
    }
}

/// Dimension of the space of even Gram matrices for which `ρ_x` and `ρ_y`
/// are supersymmetric.
pub fn invariant_form_space_dim(module: &VmModule) -> usize {
    let n = module.dim();
    let par = module.parities();
    let var = |i: usize, j: usize| i * n + j;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if par[i] != par[j] {
                let mut r = vec![Scalar::ZERO; n * n];
                r[var(i, j)] = Scalar::ONE;
                rows.push(r);
            }
        }
    }
    for z in [X, Y] {
        let rz = &module.rho[z];
        for v in 0..n {
            let s = sign(par[v].is_odd());
            for w in 0..n {
                // Σ_k ρ[k][v] G[k][w] − s Σ_k G[v][k] ρ[k][w]
                let mut r = vec![Scalar::ZERO; n * n];
                for k in 0..n {
                    r[var(k, w)] += &rz[(k, v)];
                    r[var(v, k)] -= &(&s * &rz[(k, w)]);
                }
                rows.push(r);
            }
        }
    }
    let sys = Matrix::from_rows(&(), n * n, &rows).expect("row length");
    n * n - sys.rank()
}

/// The two parameters `−m/(m+1)` and `−(m+1)/m` realized on `V(m)`.
pub fn embedding_parameters(m: usize) -> [Scalar; 2] {
    let (a, b) = (m as i64, m as i64 + 1);
    [Scalar::new(-a, b), Scalar::new(-b, a)]
}

/// `D_t → End(V(m))⁺` through Shestakov's formulas, with `End(V(m))` in the
/// sorted basis.
#[derive(Clone, Debug)]
pub struct DtEmbedding {
    pub m: usize,
    pub t: Scalar,
    /// `V(m)` for even `m`, `V(m)^op` for odd `m`.
    pub module: VmModule,
    pub form: InvariantForm,
    pub end: Arc<Superalgebra>,
    pub map: GradedLinearMap,
    /// Images of `e, f, u, v` in the original basis of `V(m)`.
    pub images: Vec<Matrix<Scalar>>,
}

impl DtEmbedding {
    pub fn superinvolution(&self) -> Result<Superinvolution> {
        superinvolution_from_form(self.end.clone(), &self.form.sorted_gram())
    }
}

pub fn embed_dt(m: usize, t: &Scalar) -> Result<DtEmbedding> {
    if m == 0 {
        return Err(Error::BadParameter("V(0) carries no embedding of D_t (m ≥ 1)".into()));
    }
    if !embedding_parameters(m).contains(t) {
        return Err(Error::BadParameter(format!("t = {t} is neither -m/(m+1) nor -(m+1)/m for m = {m}")));
    }
    let base = vm_module(m);
    let module = if m % 2 == 1 { base.opposite() } else { base };
    let n = module.dim();
    let id = Matrix::identity(&(), n);
    let a = module.xy_minus_yx();
    let one = Scalar::ONE;
    let tp1 = &one + t;
    let ie = id.scale(t).add(&a.scale(&tp1)).scale(&(t - &one).recip().expect("t ≠ 1"));
    let if_ = id.add(&a.scale(&tp1)).scale(&(&one - t).recip().expect("t ≠ 1"));
    let iu = module.rho[X].scale(&int(2));
    let iv = module.rho[Y].scale(&-&tp1);
    let images = vec![ie, if_, iu, iv];
    let sorted: Vec<Vec<Scalar>> = images.iter().map(|x| module.to_sorted(x).into_entries()).collect();
    let end_parities: Vec<Parity> = module.sorted_order().iter().map(|&i| module.parity(i)).collect();
    let name = if module.opposite_parity { format!("End(V({m})^op)") } else { format!("End(V({m}))") };
    let end = Arc::new(endomorphism_algebra(name, &end_parities));
    let src = Arc::new(d_t(t)?);
    let map = GradedLinearMap::new(src, end.clone(), &sorted)?.unital();
    let form = vm_form(&module);
    Ok(DtEmbedding { m, t: t.clone(), module, form, end, map, images })
}

/// The embedding criteria: homomorphism, hermitian images, `B′ = End(V)`,
/// and `(p, q) = (m+1, m)` with `t ∈ {−p/q, −q/p}`.
pub fn verify_embedding_claims(m: usize) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("embedding", format!("D_t → End(V({m}))⁺"));
    let full = (2 * m + 1) * (2 * m + 1);
    for t in embedding_parameters(m) {
        let emb = embed_dt(m, &t)?;
        let tag = format!("t={t}");
        let hom = check_graded_hom(&emb.map, true);
        rep.require(hom.passed(), format!("{tag}: homomorphism"), hom.summary());
        let star = emb.superinvolution()?;
        let sr = check_superinvolution(&star);
        rep.require(sr.passed(), format!("{tag}: form adjoint"), sr.summary());
        for (k, name) in ["e", "f", "u", "v"].iter().enumerate() {
            let x = emb.map.image(k);
            rep.require(star.apply(&x) == x, format!("{tag}: {name}* = {name}"), "image is not hermitian");
        }
        let gens: Vec<Element> = (0..4).map(|k| emb.map.image(k)).collect();
        let b_prime = closure(emb.end.table(), &gens).dim();
        rep.require(b_prime == full, format!("{tag}: B′ = End(V)"), format!("closure dim {b_prime}, want {full}"));
        let (p, q) = emb.end.realization().map(|r| count_parities(&r.module_parities)).unwrap_or((0, 0));
        let (p, q) = if emb.module.opposite_parity { (q, p) } else { (p, q) };
        rep.require(p == m + 1 && q == m, format!("{tag}: (p,q)"), format!("got ({p},{q})"));
        let (pi, qi) = (p as i64, q as i64);
        rep.require(
            t == Scalar::new(-pi, qi) || t == Scalar::new(-qi, pi),
            format!("{tag}: t ∈ {{−p/q, −q/p}}"),
            "parameter mismatch",
        );
    }
    rep.note(format!("B′ dimension (2m+1)² = {full}"));
    Ok(rep)
}

fn count_parities(ps: &[Parity]) -> (usize, usize) {
    let odd = ps.iter().filter(|p| p.is_odd()).count();
    (ps.len() - odd, odd)
}

/// Blocks `a, c ∈ M_{s×m}`, `b, d ∈ M_{m×s}` of the odd elements `u, v`.
#[derive(Clone, Debug)]
pub struct QnBlocks {
    pub a: Matrix<Scalar>,
    pub b: Matrix<Scalar>,
    pub c: Matrix<Scalar>,
    pub d: Matrix<Scalar>,
}

impl QnBlocks {
    pub fn random(s: usize, m: usize, seed: u64) -> QnBlocks {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gen = |r: usize, c: usize| Matrix::from_fn(&(), r, c, |_, _| int(rng.gen_range(-3..=3)));
        QnBlocks { a: gen(s, m), b: gen(m, s), c: gen(s, m), d: gen(m, s) }
    }

    pub fn zero(s: usize, m: usize) -> QnBlocks {
        QnBlocks {
            a: Matrix::zeros(&(), s, m),
            b: Matrix::zeros(&(), m, s),
            c: Matrix::zeros(&(), s, m),
            d: Matrix::zeros(&(), m, s),
        }
    }
}

/// `Q_n` coordinates of `(A, B)`.
fn qn_element(n: usize, a: &Matrix<Scalar>, b: &Matrix<Scalar>) -> Element {
    let mut v = a.entries().to_vec();
    v.extend_from_slice(b.entries());
    debug_assert_eq!(v.len(), 2 * n * n);
    v
}

fn corner(n: usize, s: usize, top_right: &Matrix<Scalar>, bottom_left: &Matrix<Scalar>) -> Matrix<Scalar> {
    let mut out = Matrix::zeros(&(), n, n);
    for i in 0..s {
        for j in s..n {
            out[(i, j)] = top_right[(i, j - s)].clone();
        }
    }
    for i in s..n {
        for j in 0..s {
            out[(i, j)] = bottom_left[(i - s, j)].clone();
        }
    }
    out
}

/// Certifies that `e, f, u, v` as in the canonical form of a unital `D_t`
/// inside `Q_n⁺` generate a proper associative subalgebra, missing every
/// odd `(x, x)`-corner with `x ∈ M_s`.
pub fn peirce_obstruction_qn(n: usize, s: usize, blocks: &QnBlocks) -> Result<VerificationReport> {
    if s == 0 || s >= n {
        return Err(Error::BadBlocks(format!("need 1 ≤ s < n, got s = {s}, n = {n}")));
    }
    let m = n - s;
    let shapes = [(&blocks.a, s, m), (&blocks.b, m, s), (&blocks.c, s, m), (&blocks.d, m, s)];
    if shapes.iter().any(|(x, r, c)| x.rows() != *r || x.cols() != *c) {
        return Err(Error::BadBlocks(format!("a, c must be {s}×{m} and b, d must be {m}×{s}")));
    }
    let q = q_n(n)?;
    let qplus = plus_algebra(&q)?;
    let mut rep = VerificationReport::new("peirce-obstruction", format!("Q({n}), s = {s}"));
    let zero = Matrix::zeros(&(), n, n);
    let diag = |lo: usize, hi: usize| Matrix::from_fn(&(), n, n, |i, j| if i == j && lo <= i && i < hi { Scalar::ONE } else { Scalar::ZERO });
    let e = qn_element(n, &diag(0, s), &zero);
    let f = qn_element(n, &diag(s, n), &zero);
    let u = qn_element(n, &zero, &corner(n, s, &blocks.a, &blocks.b));
    let v = qn_element(n, &zero, &corner(n, s, &blocks.c, &blocks.d));

    let pe = peirce_decompose(&qplus, &e)?;
    let pf = peirce_decompose(&qplus, &f)?;
    rep.require(pe.half == pf.half, "J½(e) = J½(f)", "Peirce half spaces differ");
    let odd_half = pe.half.odd_basis();
    rep.require(odd_half.len() == 2 * s * m, "odd J½ dimension", format!("{} ≠ 2sm", odd_half.len()));
    for (name, x) in [("u", &u), ("v", &v)] {
        rep.require(pe.half.contains(x)? && pf.half.contains(x)?, format!("{name} ∈ A₁ ∩ J½(e) ∩ J½(f)"), "not in the Peirce space");
    }

    let res = closure(q.table(), &[e, f, u, v]);
    let full = 2 * n * n;
    rep.require(res.dim() < full, "B′ ≠ Q_n", format!("closure has dimension {}", res.dim()));
    let excluded: Vec<Element> = (0..s * s)
        .map(|k| {
            let mut x = Matrix::zeros(&(), n, n);
            x[(k / s, k % s)] = Scalar::ONE;
            qn_element(n, &zero, &x)
        })
        .collect();
    let b_prime = res.subspace(q.parities()).ok_or_else(|| Error::BadBlocks("closure is not graded".into()))?;
    let corner_space = GradedSubspace::from_homogeneous(&(), q.parities(), &excluded)?;
    let meet = b_prime.intersection_dim(&corner_space)?;
    rep.require(meet == 0, "excluded corner", format!("B′ meets the (x, x) corner in dimension {meet}"));
    rep.note(format!("B′ has dimension {} of {full}", res.dim()));
    Ok(rep)
}
