//! Identity checks on superalgebras, and the constructions that depend on
//! them (plus algebras, hermitian parts, Peirce spaces, Grassmann envelopes).

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    induced_subalgebra, sparsify, Element, GradedLinearMap, Shape, Superalgebra, Superinvolution, TableAlgebra,
};
use crate::error::{Error, Result};
use crate::field::{add_vec, is_zero_vec, sub_vec, Field};
use crate::grassmann::{degree, mono_mul};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::{GradedSubspace, Parity};

/// How many failing cases a report keeps.
const MAX_FAILURES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub subject: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, subject: impl Into<String>) -> Self {
        VerificationReport { check: check.into(), subject: subject.into(), cases: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, case: impl Into<String>, detail: impl Into<String>) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(Failure { case: case.into(), detail: detail.into() });
        }
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn require(&mut self, ok: bool, case: impl Into<String>, detail: impl Into<String>) {
        self.cases += 1;
        if !ok {
            self.fail(case, detail);
        }
    }

    /// Folds another report's cases and failures into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.cases += other.cases;
        for f in other.failures {
            self.fail(format!("{}: {}", other.check, f.case), f.detail);
        }
        self.notes.extend(other.notes);
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => format!("{} on {}: pass ({} cases)", self.check, self.subject, self.cases),
            Some(f) => format!("{} on {}: FAIL at {} ({})", self.check, self.subject, f.case, f.detail),
        }
    }
}

type Sparse = Vec<(usize, Scalar)>;

fn unit_sparse(i: usize) -> Sparse {
    vec![(i, Scalar::ONE)]
}

/// `L_a b = (-1)^{āb̄} L_b a` on all basis pairs.
pub fn check_supercommutative(a: &Superalgebra) -> VerificationReport {
    let mut rep = VerificationReport::new("supercommutativity", a.name());
    let d = a.dim();
    for i in 0..d {
        for j in i..d {
            let flip = a.parity(i).sign_flip(a.parity(j));
            let ab = a.table().basis_product_dense(i, j);
            let ba = a.table().basis_product_dense(j, i);
            let ba = if flip { ba.iter().map(|x| -x).collect() } else { ba };
            rep.require(ab == ba, format!("({}, {})", a.label(i), a.label(j)), "ab ≠ (-1)^{āb̄} ba");
        }
    }
    rep
}

/// A sparse operator stored by columns: `cols[w]` is the image of basis
/// vector `w`, sorted by index with zeros removed.
#[derive(Clone, PartialEq, Eq)]
struct Op {
    cols: Vec<Sparse>,
}

/// Dense scratch space for sparse accumulation.
struct Acc {
    dense: Vec<Scalar>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Acc {
    fn new(d: usize) -> Acc {
        Acc { dense: vec![Scalar::ZERO; d], touched: Vec::new(), mark: vec![false; d] }
    }

    fn add(&mut self, k: usize, a: &Scalar, b: &Scalar) {
        if !self.mark[k] {
            self.mark[k] = true;
            self.touched.push(k);
        }
        self.dense[k].add_mul(a, b);
    }

    fn take(&mut self) -> Sparse {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &k in &self.touched {
            let c = std::mem::replace(&mut self.dense[k], Scalar::ZERO);
            self.mark[k] = false;
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        self.touched.clear();
        out
    }
}

/// `L_i` for every basis element.
fn left_ops(t: &TableAlgebra<Scalar>) -> Vec<Op> {
    let d = t.dim();
    (0..d).map(|i| Op { cols: (0..d).map(|w| t.basis_product(i, w).to_vec()).collect() }).collect()
}

/// `L_x = Σ c_k L_k`.
fn op_of(ls: &[Op], x: &[(usize, Scalar)], acc: &mut Acc) -> Op {
    let d = ls.len();
    let cols = (0..d)
        .map(|w| {
            for (k, c) in x {
                for (m, e) in &ls[*k].cols[w] {
                    acc.add(*m, c, e);
                }
            }
            acc.take()
        })
        .collect();
    Op { cols }
}

fn compose(a: &Op, b: &Op, acc: &mut Acc) -> Op {
    let cols = b
        .cols
        .iter()
        .map(|col| {
            for (k, c) in col {
                for (m, e) in &a.cols[*k] {
                    acc.add(*m, c, e);
                }
            }
            acc.take()
        })
        .collect();
    Op { cols }
}

/// `Σ ± op` with `true` meaning minus.
fn signed_sum(terms: &[(bool, &Op)], acc: &mut Acc) -> Op {
    let d = terms[0].1.cols.len();
    let one = Scalar::ONE;
    let minus = -Scalar::ONE;
    let cols = (0..d)
        .map(|w| {
            for (neg, op) in terms {
                let s = if *neg { &minus } else { &one };
                for (m, e) in &op.cols[w] {
                    acc.add(*m, s, e);
                }
            }
            acc.take()
        })
        .collect();
    Op { cols }
}

fn first_difference(x: &Op, y: &Op) -> Option<usize> {
    (0..x.cols.len()).find(|&w| x.cols[w] != y.cols[w])
}

/// Supercommutativity plus the three equalities among the four operator
/// expressions of the Jordan superidentity, on every basis triple, as
/// operators on the whole algebra.
pub fn check_jordan_super(a: &Superalgebra) -> VerificationReport {
    let mut rep = check_supercommutative(a);
    rep.check = "jordan".into();
    let d = a.dim();
    let t = a.table();
    let bit = |i: usize| a.parity(i).is_odd();
    let ls = left_ops(t);
    let (pairs, lprod): (Vec<Op>, Vec<Op>) = {
        let mut acc = Acc::new(d);
        let mut pairs = Vec::with_capacity(d * d);
        let mut lprod = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                pairs.push(compose(&ls[i], &ls[j], &mut acc));
                lprod.push(op_of(&ls, t.basis_product(i, j), &mut acc));
            }
        }
        (pairs, lprod)
    };
    let p = |i: usize, j: usize| &pairs[i * d + j];
    let lp = |i: usize, j: usize| &lprod[i * d + j];

    let mut bad: Vec<(usize, usize, usize, String)> = (0..d)
        .into_par_iter()
        .flat_map_iter(|ia| {
            let mut acc = Acc::new(d);
            let mut found = Vec::new();
            for ib in 0..d {
                for ic in 0..d {
                    let (pa, pb, pc) = (bit(ia), bit(ib), bit(ic));
                    let (ab_, ac_, bc_) = (pa & pb, pa & pc, pb & pc);
                    let (la, lb, lc) = (&ls[ia], &ls[ib], &ls[ic]);
                    let ac_b = t.mul_sparse(t.basis_product(ia, ic), &unit_sparse(ib));
                    let a_bc = t.mul_sparse(&unit_sparse(ia), t.basis_product(ib, ic));
                    let s1 = {
                        let x = compose(la, p(ib, ic), &mut acc);
                        let y = compose(lc, p(ib, ia), &mut acc);
                        let z = op_of(&ls, &ac_b, &mut acc);
                        signed_sum(&[(false, &x), (ab_ ^ ac_ ^ bc_, &y), (bc_, &z)], &mut acc)
                    };
                    let s2 = {
                        let x = compose(lp(ia, ib), lc, &mut acc);
                        let y = compose(lp(ia, ic), lb, &mut acc);
                        let z = compose(lp(ib, ic), la, &mut acc);
                        signed_sum(&[(false, &x), (bc_, &y), (ab_ ^ ac_, &z)], &mut acc)
                    };
                    let s3 = {
                        let x = compose(lb, p(ia, ic), &mut acc);
                        let y = compose(lc, p(ia, ib), &mut acc);
                        let z = op_of(&ls, &a_bc, &mut acc);
                        signed_sum(&[(ab_, &x), (ac_ ^ bc_, &y), (false, &z)], &mut acc)
                    };
                    let s4 = {
                        let x = compose(lc, lp(ia, ib), &mut acc);
                        let y = compose(lb, lp(ia, ic), &mut acc);
                        let z = compose(la, lp(ib, ic), &mut acc);
                        signed_sum(&[(ac_ ^ bc_, &x), (ab_, &y), (false, &z)], &mut acc)
                    };
                    let which = [("first = second", &s1, &s2), ("second = third", &s2, &s3), ("third = fourth", &s3, &s4)]
                        .into_iter()
                        .find_map(|(eq, x, y)| first_difference(x, y).map(|w| format!("{eq} fails on basis vector {w}")));
                    if let Some(detail) = which {
                        found.push((ia, ib, ic, detail));
                    }
                }
            }
            found
        })
        .collect();
    bad.sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
    rep.cases += d * d * d;
    for (ia, ib, ic, detail) in bad {
        rep.fail(format!("({}, {}, {})", a.label(ia), a.label(ib), a.label(ic)), detail);
    }
    rep
}

/// `(ab)c = a(bc)` on every basis triple.
pub fn check_associative(a: &Superalgebra) -> VerificationReport {
    let mut rep = VerificationReport::new("associativity", a.name());
    let d = a.dim();
    let t = a.table();
    let mut bad: Vec<(usize, usize, usize)> = (0..d)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut found = Vec::new();
            for j in 0..d {
                let ij = t.basis_product(i, j).to_vec();
                for k in 0..d {
                    let left = t.mul_sparse(&ij, &unit_sparse(k));
                    let right = t.mul_sparse(&unit_sparse(i), t.basis_product(j, k));
                    if left != right {
                        found.push((i, j, k));
                    }
                }
            }
            found
        })
        .collect();
    bad.sort();
    rep.cases = d * d * d;
    for (i, j, k) in bad {
        rep.fail(format!("({}, {}, {})", a.label(i), a.label(j), a.label(k)), "(ab)c ≠ a(bc)");
    }
    rep
}

/// `A⁺`: same space, product `x∘y = ½(xy + (-1)^{x̄ȳ} yx)`.
pub fn plus_algebra(a: &Superalgebra) -> Result<Superalgebra> {
    let shape = match a.shape() {
        Shape::Matrix { n } => Shape::MatrixPlus { n },
        Shape::Table => {
            if !check_associative(a).passed() {
                return Err(Error::NotAssociative(a.name().to_string()));
            }
            Shape::Table
        }
        Shape::MatrixPlus { .. } => return Err(Error::NotAssociative(a.name().to_string())),
    };
    let d = a.dim();
    let half = Scalar::half();
    let mut table = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let flip = a.parity(i).sign_flip(a.parity(j));
            let mut v = a.table().basis_product_dense(i, j);
            for (k, c) in a.basis_product(j, i) {
                if flip {
                    v[*k] -= c;
                } else {
                    v[*k] += c;
                }
            }
            table.push(sparsify(v.into_iter().map(|x| &x * &half).collect()));
        }
    }
    let alg = TableAlgebra::new(&(), a.parities().to_vec(), table, shape)?;
    let mut plus = Superalgebra::new(format!("{}+", a.name()), a.labels().to_vec(), alg);
    if let Some(r) = a.realization() {
        plus = plus.with_realization(r.clone());
    }
    Ok(plus)
}

/// Parity preservation, `s² = 1`, and `(xy)* = (-1)^{x̄ȳ} y*x*` on basis pairs.
pub fn check_superinvolution(s: &Superinvolution) -> VerificationReport {
    let a = &s.algebra;
    let d = a.dim();
    let mut rep = VerificationReport::new("superinvolution", a.name());
    if s.map.rows() != d || s.map.cols() != d {
        rep.require(false, "shape", format!("map is {}×{}, algebra has dim {d}", s.map.rows(), s.map.cols()));
        return rep;
    }
    for j in 0..d {
        for i in 0..d {
            if !s.map[(i, j)].is_zero() && a.parity(i) != a.parity(j) {
                rep.require(false, format!("({})", a.label(j)), "map does not preserve parity");
            }
        }
    }
    rep.require(s.map.mul(&s.map) == Matrix::identity(&(), d), "square", "map² ≠ identity");
    let images: Vec<Element> = (0..d).map(|i| s.map.column(i)).collect();
    for i in 0..d {
        for j in 0..d {
            let flip = a.parity(i).sign_flip(a.parity(j));
            let lhs = s.apply(&a.table().basis_product_dense(i, j));
            let mut rhs = a.mul(&images[j], &images[i]);
            if flip {
                rhs = rhs.iter().map(|x| -x).collect();
            }
            rep.require(
                lhs == rhs,
                format!("({}, {})", a.label(i), a.label(j)),
                "(xy)* ≠ (-1)^{x̄ȳ} y*x*",
            );
        }
    }
    rep
}

/// Result of `hermitian_part`.
#[derive(Clone, Debug)]
pub struct HermitianPart {
    pub algebra: Superalgebra,
    pub inclusion: GradedLinearMap,
    pub hermitian: GradedSubspace<Scalar>,
    pub skew: GradedSubspace<Scalar>,
    pub plus: Arc<Superalgebra>,
}

fn graded_eigenspace(parities: &[Parity], m: &Matrix<Scalar>, lambda: &Scalar) -> GradedSubspace<Scalar> {
    let d = m.rows();
    let shifted = m.sub(&Matrix::identity(&(), d).scale(lambda));
    GradedSubspace::graded_hull(&(), parities, &shifted.nullspace()).expect("lengths agree")
}

/// Fixed points of `s` as a Jordan subalgebra of `A⁺`, with the skew part.
pub fn hermitian_part(a: &Superalgebra, s: &Superinvolution, name: impl Into<String>) -> Result<HermitianPart> {
    let rep = check_superinvolution(s);
    if !rep.passed() {
        return Err(Error::InvalidSuperinvolution(rep.summary()));
    }
    let plus = Arc::new(plus_algebra(a)?);
    let hermitian = graded_eigenspace(a.parities(), &s.map, &Scalar::ONE);
    let skew = graded_eigenspace(a.parities(), &s.map, &Scalar::from_int(-1));
    let (algebra, inclusion) = induced_subalgebra(&plus, &hermitian, name)?;
    Ok(HermitianPart { algebra, inclusion, hermitian, skew, plus })
}

/// Dense matrix of left multiplication by `e`.
pub fn left_mult_matrix(a: &Superalgebra, e: &[Scalar]) -> Matrix<Scalar> {
    let d = a.dim();
    let cols: Vec<Element> = (0..d).map(|j| a.mul(e, &a.basis(j))).collect();
    Matrix::from_columns(&(), d, &cols).expect("square")
}

#[derive(Clone, Debug)]
pub struct Peirce {
    pub one: GradedSubspace<Scalar>,
    pub half: GradedSubspace<Scalar>,
    pub zero: GradedSubspace<Scalar>,
}

/// Eigenspaces of `L_e` for 1, ½, 0.
pub fn peirce_decompose(j: &Superalgebra, e: &[Scalar]) -> Result<Peirce> {
    if e.len() != j.dim() {
        return Err(Error::DimensionMismatch { expected: j.dim(), got: e.len() });
    }
    if j.homogeneous_parity(e) != Some(Parity::Even) || j.mul(e, e) != e {
        return Err(Error::NotIdempotent);
    }
    let l = left_mult_matrix(j, e);
    let one = graded_eigenspace(j.parities(), &l, &Scalar::ONE);
    let half = graded_eigenspace(j.parities(), &l, &Scalar::half());
    let zero = graded_eigenspace(j.parities(), &l, &Scalar::ZERO);
    if one.dim() + half.dim() + zero.dim() != j.dim() {
        return Err(Error::NotPeirceDecomposable);
    }
    Ok(Peirce { one, half, zero })
}

/// `φ(ab) = φ(a)φ(b)` on basis pairs, grading, and unit preservation when
/// the map is declared unital. With `jordan`, target products are taken in
/// the super-Jordan sense.
pub fn check_graded_hom(phi: &GradedLinearMap, jordan: bool) -> VerificationReport {
    let (src, tgt) = (&phi.source, &phi.target);
    let mut rep = VerificationReport::new("homomorphism", format!("{} → {}", src.name(), tgt.name()));
    if phi.matrix.rows() != tgt.dim() || phi.matrix.cols() != src.dim() {
        rep.require(false, "shape", "matrix does not match the algebras");
        return rep;
    }
    let images: Vec<Element> = (0..src.dim()).map(|i| phi.image(i)).collect();
    for (i, img) in images.iter().enumerate() {
        let want = src.parity(i).add(phi.parity_shift);
        let ok = is_zero_vec(img) || tgt.homogeneous_parity(img) == Some(want);
        rep.require(ok, format!("({})", src.label(i)), "image has the wrong parity");
    }
    let tgt_product = |x: &Element, y: &Element, flip: bool| -> Element {
        if !jordan || tgt.is_supercommutative() {
            return tgt.mul(x, y);
        }
        let xy = tgt.mul(x, y);
        let yx = tgt.mul(y, x);
        let s = if flip { sub_vec(&xy, &yx) } else { add_vec(&xy, &yx) };
        s.iter().map(|c| c * &Scalar::half()).collect()
    };
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let flip = src.parity(i).sign_flip(src.parity(j));
            let lhs = phi.apply(&src.table().basis_product_dense(i, j));
            let rhs = tgt_product(&images[i], &images[j], flip);
            rep.require(lhs == rhs, format!("({}, {})", src.label(i), src.label(j)), "φ(ab) ≠ φ(a)φ(b)");
        }
    }
    if phi.unital {
        match (src.unit(), tgt.unit()) {
            (Some(u), Some(v)) => rep.require(phi.apply(&u) == v, "unit", "φ(1) ≠ 1"),
            _ => rep.require(false, "unit", "declared unital but an algebra has no unit"),
        }
    }
    rep
}

/// `J·S ⊆ S` and `S·J ⊆ S`.
pub fn is_graded_ideal(j: &Superalgebra, s: &GradedSubspace<Scalar>) -> bool {
    for v in s.basis() {
        for i in 0..j.dim() {
            let b = j.basis(i);
            if !s.contains(&j.mul(&b, &v)).unwrap_or(false) || !s.contains(&j.mul(&v, &b)).unwrap_or(false) {
                return false;
            }
        }
    }
    true
}

/// Least `k` with `S^k = 0`, where `S^1 = S` and `S^k = S^{k-1}·S`.
pub fn nilpotency_index(j: &Superalgebra, s: &GradedSubspace<Scalar>) -> Result<usize> {
    if !is_graded_ideal(j, s) {
        return Err(Error::NotAnIdeal);
    }
    let gens = s.basis();
    let mut power = gens.clone();
    let cap = j.dim() + 1;
    for k in 1..=cap {
        if power.is_empty() {
            return Ok(k);
        }
        let mut next = crate::subspace::Span::new(&(), j.dim());
        for p in &power {
            for g in &gens {
                next.insert(j.mul(p, g));
                next.insert(j.mul(g, p));
            }
        }
        power = next.echelon_basis();
    }
    Err(Error::NotNilpotent(power.len()))
}

/// Trace of the realizing matrix.
pub fn matrix_trace(a: &Superalgebra, u: &[Scalar]) -> Result<Scalar> {
    let r = a.realization().ok_or_else(|| Error::NoRealization(a.name().to_string()))?;
    Ok(r.apply(u).trace())
}

/// Even part of `G(n) ⊗ J` with `(g⊗a)(h⊗b) = (-1)^{āh̄} gh ⊗ ab`.
pub fn grassmann_envelope(j: &Superalgebra, n: usize) -> Result<TableAlgebra<Scalar>> {
    if n == 0 || n > 10 {
        return Err(Error::BadParameter(format!("envelope generator count {n} outside 1..=10")));
    }
    let mut basis = Vec::new();
    for g in 0..(1usize << n) {
        for a in 0..j.dim() {
            if (degree(g) % 2 == 1) == j.parity(a).is_odd() {
                basis.push((g, a));
            }
        }
    }
    let index = |g: usize, a: usize| basis.iter().position(|&x| x == (g, a));
    let d = basis.len();
    let mut table = Vec::with_capacity(d * d);
    for &(g, a) in &basis {
        for &(h, b) in &basis {
            let mut entry = Vec::new();
            if let Some((gh, neg)) = mono_mul(g, h) {
                let flip = neg ^ (j.parity(a).is_odd() && degree(h) % 2 == 1);
                for (k, c) in j.basis_product(a, b) {
                    let idx = index(gh, *k).expect("product stays in the even part");
                    entry.push((idx, if flip { -c } else { c.clone() }));
                }
            }
            table.push(entry);
        }
    }
    TableAlgebra::new(&(), vec![Parity::Even; d], table, Shape::Table)
}

/// Commutativity and the Jordan identity in the Grassmann envelope: the
/// linearized identity `Σ_cyc [L_{xy}, L_z] = 0` on all basis triples, plus
/// the quadratic form `(xy)(xx) = x(y(xx))` on seeded random pairs.
pub fn grassmann_envelope_check(j: &Superalgebra, n: usize) -> Result<VerificationReport> {
    let env = grassmann_envelope(j, n)?;
    let d = env.dim();
    let mut rep = VerificationReport::new("grassmann-envelope", format!("G({n}) ⊗ {}", j.name()));
    for x in 0..d {
        for y in x..d {
            rep.require(
                env.basis_product(x, y) == env.basis_product(y, x),
                format!("commutativity ({x}, {y})"),
                "xy ≠ yx",
            );
        }
    }
    if !rep.passed() {
        return Ok(rep);
    }
    let ls = left_ops(&env);
    let lprod: Vec<Op> = {
        let mut acc = Acc::new(d);
        (0..d * d).map(|k| op_of(&ls, env.basis_product(k / d, k % d), &mut acc)).collect()
    };
    let bad: Vec<(usize, usize, usize)> = (0..d)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut acc = Acc::new(d);
            let mut found = Vec::new();
            for y in x..d {
                for z in y..d {
                    let mut terms = Vec::with_capacity(6);
                    for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
                        let lpq = &lprod[p * d + q];
                        terms.push((false, compose(lpq, &ls[r], &mut acc)));
                        terms.push((true, compose(&ls[r], lpq, &mut acc)));
                    }
                    let refs: Vec<(bool, &Op)> = terms.iter().map(|(s, o)| (*s, o)).collect();
                    if signed_sum(&refs, &mut acc).cols.iter().any(|c| !c.is_empty()) {
                        found.push((x, y, z));
                    }
                }
            }
            found
        })
        .collect();
    rep.cases += d * (d + 1) * (d + 2) / 6;
    let mut bad = bad;
    bad.sort();
    for (x, y, z) in bad {
        rep.fail(format!("linearized ({x}, {y}, {z})"), "Σ_cyc [L_xy, L_z] ≠ 0");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x454e56);
    for t in 0..200 {
        let mut sample = || -> Vec<Scalar> { (0..d).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect() };
        let x = sample();
        let y = sample();
        let xx = env.mul(&x, &x);
        let lhs = env.mul(&env.mul(&x, &y), &xx);
        let rhs = env.mul(&x, &env.mul(&y, &xx));
        rep.require(lhs == rhs, format!("random pair {t}"), "(xy)(xx) ≠ x(y(xx))");
    }
    Ok(rep)
}

/// Whether the subspace is closed under the product (basis-pair test).
pub fn is_subalgebra(j: &Superalgebra, s: &GradedSubspace<Scalar>) -> bool {
    let b = s.basis();
    b.iter().all(|u| b.iter().all(|v| s.contains(&j.mul(u, v)).unwrap_or(false)))
}

/// Induced algebra on a closed subspace, or `NotASubalgebra`.
pub fn subalgebra(parent: &Arc<Superalgebra>, s: &GradedSubspace<Scalar>, name: &str) -> Result<Superalgebra> {
    Ok(induced_subalgebra(parent, s, name)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_like(ex: Scalar) -> Superalgebra {
        // e | x, y with e² = e, e·x = x·e = ex·x, e·y = y·e = ½y, x·y = e = -y·x
        let par = vec![Parity::Even, Parity::Odd, Parity::Odd];
        Superalgebra::from_fn("k3", vec!["e".into(), "x".into(), "y".into()], par, |i, j| match (i, j) {
            (0, 0) => vec![(0, Scalar::ONE)],
            (0, 1) | (1, 0) => vec![(1, ex.clone())],
            (0, 2) | (2, 0) => vec![(2, Scalar::half())],
            (1, 2) => vec![(0, Scalar::ONE)],
            (2, 1) => vec![(0, -Scalar::ONE)],
            _ => vec![],
        })
        .unwrap()
    }

    #[test]
    fn kaplansky_passes_and_corruption_fails() {
        assert!(check_jordan_super(&k3_like(Scalar::half())).passed());
        let bad = check_jordan_super(&k3_like(Scalar::ONE));
        assert!(!bad.passed());
        assert!(bad.first_failure().is_some());
    }

    #[test]
    fn kaplansky_is_not_associative() {
        // (x·y)·x = e·x = ½x, x·(y·x) = x·(−e) = −½x
        let rep = check_associative(&k3_like(Scalar::half()));
        assert!(!rep.passed());
        assert!(rep.failures.iter().any(|f| f.case == "(x, y, x)"));
    }

    #[test]
    fn envelope_matches_direct_check() {
        assert!(grassmann_envelope_check(&k3_like(Scalar::half()), 2).unwrap().passed());
        assert!(!grassmann_envelope_check(&k3_like(Scalar::ONE), 2).unwrap().passed());
        // even part of G(2) ⊗ K3: G₀ ⊗ Fe plus G₁ ⊗ (Fx + Fy) = 2 + 4
        assert_eq!(grassmann_envelope(&k3_like(Scalar::half()), 2).unwrap().dim(), 6);
    }

    #[test]
    fn kaplansky_peirce() {
        let k = k3_like(Scalar::half());
        let p = peirce_decompose(&k, &k.basis(0)).unwrap();
        assert_eq!((p.one.dim(), p.half.dim(), p.zero.dim()), (1, 2, 0));
        assert!(matches!(peirce_decompose(&k, &k.basis(1)), Err(Error::NotIdempotent)));
    }
}
