//! Maximal subalgebras: one constructor per classified family, negative
//! controls, and mod-p hunters for the open uniqueness questions.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Superalgebra, Superinvolution};
use crate::axioms::{hermitian_part, matrix_trace, nilpotency_index, plus_algebra, subalgebra, HermitianPart, VerificationReport};
use crate::catalog::{
    d_t, endomorphism_algebra, kaplansky, matrix_superalgebra, module_parities, orthosymplectic_superinvolution,
    q_n, superform_algebra, superinvolution_from_form, symplectic_q, transpose_superinvolution,
};
use crate::error::{Error, Result};
use crate::field::{add_vec, axpy, scale_vec, unit_vec};
use crate::generation::{check_proper_subalgebra, closure, exhaustive_subalgebra_scan_mod_p, naive_closure};
use crate::matrix::Matrix;
use crate::modp::{check_prime, Fp};
use crate::osp::{embed_dt, embedding_parameters};
use crate::scalar::Scalar;
use crate::subspace::{GradedSubspace, Parity, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expected {
    Maximal,
    NotMaximal,
    Open,
}

/// An associative algebra `A` with `J ⊆ A⁺`; columns of `inclusion` are the
/// images of the basis of `J`.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub algebra: Arc<Superalgebra>,
    pub inclusion: Matrix<Scalar>,
}

impl Envelope {
    fn identity(a: Arc<Superalgebra>) -> Envelope {
        let d = a.dim();
        Envelope { algebra: a, inclusion: Matrix::identity(&(), d) }
    }

    fn from_hermitian(a: Arc<Superalgebra>, hp: &HermitianPart) -> Envelope {
        Envelope { algebra: a, inclusion: hp.inclusion.matrix.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct MaximalFamily {
    pub id: String,
    pub ambient_spec: String,
    pub anchor: String,
    pub ambient: Arc<Superalgebra>,
    pub sub: GradedSubspace<Scalar>,
    pub expected: Expected,
    pub envelope: Option<Envelope>,
    pub notes: Vec<String>,
}

impl MaximalFamily {
    /// Checks that `sub` is a proper subalgebra of `ambient`.
    pub fn new(
        id: impl Into<String>,
        ambient_spec: impl Into<String>,
        anchor: impl Into<String>,
        ambient: Arc<Superalgebra>,
        sub: GradedSubspace<Scalar>,
        expected: Expected,
    ) -> Result<Self> {
        check_proper_subalgebra(&ambient, &sub)?;
        Ok(MaximalFamily {
            id: id.into(),
            ambient_spec: ambient_spec.into(),
            anchor: anchor.into(),
            ambient,
            sub,
            expected,
            envelope: None,
            notes: Vec::new(),
        })
    }

    fn with_envelope(mut self, env: Envelope) -> Self {
        self.envelope = Some(env);
        self
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn codim(&self) -> usize {
        self.ambient.dim() - self.sub.dim()
    }

    /// `B` in envelope coordinates.
    pub fn sub_in_envelope(&self) -> Option<Vec<Element>> {
        let env = self.envelope.as_ref()?;
        Some(self.sub.basis().iter().map(|b| env.inclusion.mul_vec(b)).collect())
    }

    /// `dim B′`, when an envelope is known.
    pub fn b_prime_dim(&self) -> Option<usize> {
        let env = self.envelope.as_ref()?;
        Some(closure(env.algebra.table(), &self.sub_in_envelope()?).dim())
    }

    /// `B` as an algebra in its own echelon basis.
    pub fn sub_algebra(&self) -> Result<Superalgebra> {
        subalgebra(&self.ambient, &self.sub, &format!("{} ⊂ {}", self.id, self.ambient.name()))
    }
}

fn span_indices(alg: &Superalgebra, idx: impl IntoIterator<Item = usize>) -> Result<GradedSubspace<Scalar>> {
    let vs: Vec<Element> = idx.into_iter().map(|i| alg.basis(i)).collect();
    GradedSubspace::from_homogeneous(&(), alg.parities(), &vs)
}

fn span_vectors(alg: &Superalgebra, vs: &[Element]) -> Result<GradedSubspace<Scalar>> {
    GradedSubspace::graded_hull(&(), alg.parities(), vs)
}

fn random_coeffs(rng: &mut ChaCha8Rng, k: usize) -> Vec<Scalar> {
    loop {
        let c: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
        if c.iter().any(|&x| x != 0) {
            return c.into_iter().map(Scalar::from_int).collect();
        }
    }
}

fn combination(alg: &Superalgebra, idx: &[usize], coeffs: &[Scalar]) -> Element {
    let mut v = alg.zero();
    for (&i, c) in idx.iter().zip(coeffs) {
        v[i] += c;
    }
    v
}

/// A basis of the kernel of `φ` restricted to the coordinates `idx`.
fn hyperplane(alg: &Superalgebra, idx: &[usize], phi: &[Scalar]) -> Vec<Element> {
    let row = Matrix::from_rows(&(), idx.len(), &[phi.to_vec()]).expect("row length");
    row.nullspace().iter().map(|k| combination(alg, idx, k)).collect()
}

fn indices_of(alg: &Superalgebra, p: Parity) -> Vec<usize> {
    (0..alg.dim()).filter(|&i| alg.parity(i) == p).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum EasyKind {
    Kaplansky,
    Dt(Scalar),
    Superform(usize, usize),
}

/// The families `J₀ ⊕ M₁` (and `F1 + J₁`, `(F1 + M₀) ⊕ J₁` where they
/// apply), with the first-coordinates choice followed by `variants` seeded
/// random choices of the free subspace.
pub fn easy_maximals(kind: &EasyKind, variants: usize, seed: u64) -> Result<Vec<MaximalFamily>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (spec, base, j) = match kind {
        EasyKind::Kaplansky => ("K3".to_string(), "thm2.1.i.K3".to_string(), kaplansky()),
        EasyKind::Dt(t) => (format!("Dt:{t}"), format!("thm2.1.ii.Dt:{t}"), d_t(t)?),
        EasyKind::Superform(p, q) => {
            (format!("superform:{p},{q}"), format!("thm2.1.iii.superform:{p},{q}"), superform_algebra(*p, *q)?)
        }
    };
    let j = Arc::new(j);
    let even = indices_of(&j, Parity::Even);
    let odd = indices_of(&j, Parity::Odd);
    let mut out = Vec::new();
    let odd_hyperplane = |tag: &str, phi: Vec<Scalar>| -> Result<MaximalFamily> {
        let mut vs: Vec<Element> = even.iter().map(|&i| j.basis(i)).collect();
        vs.extend(hyperplane(&j, &odd, &phi));
        MaximalFamily::new(
            format!("{base}{tag}"),
            spec.clone(),
            "M = J₀ ⊕ M₁ with dim M₁ = dim J₁ − 1",
            j.clone(),
            span_vectors(&j, &vs)?,
            Expected::Maximal,
        )
    };
    let superform_tag = if matches!(kind, EasyKind::Superform(..)) { ".odd" } else { "" };
    if !odd.is_empty() {
        let mut last = vec![Scalar::ZERO; odd.len()];
        *last.last_mut().unwrap() = Scalar::ONE;
        out.push(odd_hyperplane(superform_tag, last)?);
        for r in 1..=variants {
            let phi = random_coeffs(&mut rng, odd.len());
            out.push(odd_hyperplane(&format!("{superform_tag}.r{r}"), phi)?.note("seeded random M₁"));
        }
    }
    match kind {
        EasyKind::Dt(t) if t.is_one() => {
            let one = add_vec(&j.basis(0), &j.basis(1));
            let mut vs = vec![one];
            vs.extend(odd.iter().map(|&i| j.basis(i)));
            out.push(MaximalFamily::new(
                format!("{base}.unit"),
                spec.clone(),
                "t = 1: M = F·1 + J₁",
                j.clone(),
                span_vectors(&j, &vs)?,
                Expected::Maximal,
            )?);
        }
        EasyKind::Superform(p, _) if *p >= 1 => {
            // V₀ coordinates are the even indices after the unit
            let v0: Vec<usize> = even[1..].to_vec();
            let even_hyperplane = |tag: &str, phi: Vec<Scalar>| -> Result<MaximalFamily> {
                let mut vs = vec![j.basis(0)];
                vs.extend(hyperplane(&j, &v0, &phi));
                vs.extend(odd.iter().map(|&i| j.basis(i)));
                MaximalFamily::new(
                    format!("{base}.even{tag}"),
                    spec.clone(),
                    "M = (F·1 + M₀) ⊕ J₁ with dim M₀ = dim V₀ − 1",
                    j.clone(),
                    span_vectors(&j, &vs)?,
                    Expected::Maximal,
                )
            };
            let mut last = vec![Scalar::ZERO; v0.len()];
            *last.last_mut().unwrap() = Scalar::ONE;
            out.push(even_hyperplane("", last)?);
            for r in 1..=variants {
                let phi = random_coeffs(&mut rng, v0.len());
                out.push(even_hyperplane(&format!(".r{r}"), phi)?.note("seeded random M₀"));
            }
        }
        _ => {}
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Transpose { n: usize },
    Orthosymplectic { n: usize, m: usize },
}

fn flavor_superinvolution(flavor: Flavor) -> Result<(Superinvolution, String)> {
    Ok(match flavor {
        Flavor::Transpose { n } => (transpose_superinvolution(n)?, format!("p:{n}")),
        Flavor::Orthosymplectic { n, m } => (orthosymplectic_superinvolution(n, m)?, format!("osp:{n},{m}")),
    })
}

/// `H(A, *)` inside `A⁺`.
pub fn hermitian_maximal_in_plus(flavor: Flavor) -> Result<MaximalFamily> {
    let (s, tag) = flavor_superinvolution(flavor)?;
    let a = s.algebra.clone();
    let hp = hermitian_part(&a, &s, tag.clone())?;
    Ok(MaximalFamily::new(
        format!("thm4.3.{tag}"),
        format!("plus:{}", a_spec(&a)),
        "B = H(A, *) for a superinvolution *",
        hp.plus.clone(),
        hp.hermitian.clone(),
        Expected::Maximal,
    )?
    .with_envelope(Envelope::identity(a)))
}

fn a_spec(a: &Superalgebra) -> String {
    a.name().replace("M(", "M:").replace(')', "")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocCase {
    /// `C = eAe + eAf + fAf` in `M_{p,q}`, `e` the first `k0` even and first
    /// `k1` odd diagonal units.
    OneA { p: usize, q: usize, k0: usize, k1: usize },
    /// `C = C_A(u) ≅ Q_p` in `M_{p,p}`, `u = [[0, I], [I, 0]]`.
    OneB { p: usize },
    /// `C = C₀ + C₀u` in `Q_n`, `C₀` the block upper triangular matrices
    /// with diagonal blocks of sizes `k`, `n − k`.
    TwoA { n: usize, k: usize },
    /// `C = A₀` in `Q_n`.
    TwoB { n: usize },
    /// `C = D₀ + D₁u` in `Q_n` for the `M_{r, n−r}` grading of `A₀`.
    TwoC { n: usize, r: usize },
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameter(msg.into())
}

/// `C⁺ ⊂ A⁺` for a maximal associative subalgebra `C`.
pub fn assoc_maximal_family(case: AssocCase) -> Result<MaximalFamily> {
    let (id, anchor, a, idx): (String, &str, Superalgebra, Vec<usize>) = match case {
        AssocCase::OneA { p, q, k0, k1 } => {
            if k0 > p || k1 > q || k0 + k1 == 0 || k0 + k1 == p + q {
                return Err(bad("need 0 < rank e < p + q"));
            }
            let a = matrix_superalgebra(p, q)?;
            let n = p + q;
            let in_e = |i: usize| i < k0 || (p..p + k1).contains(&i);
            let idx = (0..n * n).filter(|&x| !(!in_e(x / n) && in_e(x % n))).collect();
            (format!("thm4.4.1a.M:{p},{q}.e{k0},{k1}"), "C = eAe + eAf + fAf", a, idx)
        }
        AssocCase::OneB { p } => {
            let a = matrix_superalgebra(p, p)?;
            let n = 2 * p;
            let u = Matrix::from_fn(&(), n, n, |i, j| if (i + p) % n == j { Scalar::ONE } else { Scalar::ZERO });
            // the commutant of u, read off as a nullspace
            let cols: Vec<Vec<Scalar>> = (0..n * n)
                .map(|k| {
                    let x = Matrix::unit(n, k / n, k % n);
                    x.mul(&u).sub(&u.mul(&x)).into_entries()
                })
                .collect();
            let map = Matrix::from_columns(&(), n * n, &cols)?;
            let ker = map.nullspace();
            let sub = GradedSubspace::graded_hull(&(), a.parities(), &ker)?;
            let fam = finish_assoc(format!("thm4.4.1b.M:{p},{p}"), "C = C_A(u), u odd, u² = 1", a, sub)?;
            return Ok(fam);
        }
        AssocCase::TwoA { n, k } => {
            if k == 0 || k >= n {
                return Err(bad("need 0 < k < n"));
            }
            let a = q_n(n)?;
            let m = n * n;
            let keep = |ix: usize| !(ix / n >= k && ix % n < k);
            let idx = (0..2 * m).filter(|&x| keep(x % m)).collect();
            (format!("thm4.4.2a.Q:{n}.k{k}"), "C = C₀ + C₀u with C₀ maximal in A₀", a, idx)
        }
        AssocCase::TwoB { n } => {
            let a = q_n(n)?;
            let idx = (0..n * n).collect();
            (format!("thm4.4.2b.Q:{n}"), "C = A₀", a, idx)
        }
        AssocCase::TwoC { n, r } => {
            if r == 0 || r >= n {
                return Err(bad("need 0 < r < n"));
            }
            let a = q_n(n)?;
            let m = n * n;
            let same = |ix: usize| (ix / n < r) == (ix % n < r);
            let idx = (0..2 * m).filter(|&x| if x < m { same(x) } else { !same(x - m) }).collect();
            (format!("thm4.4.2c.Q:{n}.r{r}"), "C = D₀ + D₁u", a, idx)
        }
    };
    let sub = span_indices(&a, idx)?;
    finish_assoc(id, anchor, a, sub)
}

fn finish_assoc(id: String, anchor: &str, a: Superalgebra, sub: GradedSubspace<Scalar>) -> Result<MaximalFamily> {
    let spec = a_spec(&a);
    let a = Arc::new(a);
    let plus = Arc::new(plus_algebra(&a)?);
    Ok(MaximalFamily::new(id, format!("plus:{spec}"), anchor, plus, sub, Expected::Maximal)?
        .with_envelope(Envelope::identity(a)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HermCase {
    /// Transpose superinvolution on `M_{n,n}`, `n = i + j`; `C = eAe + fAf`.
    I1 { i: usize, j: usize },
    /// Orthosymplectic on `M_{i+j, 2(k+l)}`; `C = eAe + fAf`.
    I2 { i: usize, j: usize, k: usize, l: usize },
    /// Transpose on `M_{n,n}` with blocks `(s1, s2, s3)` of each parity;
    /// `C = eA + Ae* + ff*Aff*`.
    II1 { s1: usize, s2: usize, s3: usize },
    /// Orthosymplectic form with even blocks `(r1, r2, r2)` and odd blocks
    /// `(s4, s5, s4, s5)`; `C = eA + Ae* + ff*Aff*`.
    II2 { r1: usize, r2: usize, s4: usize, s5: usize },
}

fn block_ranges(sizes: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let r = start..start + s;
            start += s;
            r
        })
        .collect()
}

fn idempotent(n: usize, set: &[usize]) -> Element {
    let mut v = vec![Scalar::ZERO; n * n];
    for &i in set {
        v[i * n + i] = Scalar::ONE;
    }
    v
}

fn union(ranges: &[&std::ops::Range<usize>]) -> Vec<usize> {
    ranges.iter().flat_map(|r| (*r).clone()).collect()
}

/// `H(gAg, *)′ = gAg` for the diagonal idempotent on `set`.
fn corner_is_full(s: &Superinvolution, set: &[usize]) -> bool {
    let a = &s.algebra;
    let n = a.realization().map(|r| r.module_dim()).unwrap_or(0);
    let mut herm = Vec::new();
    for &i in set {
        for &j in set {
            let x = a.basis(i * n + j);
            let h = add_vec(&x, &s.apply(&x));
            if h.iter().any(|c| !c.is_zero()) {
                herm.push(h);
            }
        }
    }
    closure(a.table(), &herm).dim() == set.len() * set.len()
}

/// `H(C, *) ⊂ H(A, *)` for a maximal `*`-stable `C` with `B′ ≠ A`.
pub fn herm_maximal_family(case: HermCase) -> Result<MaximalFamily> {
    let (s, id, anchor, e, estar, corners, in_c): (Superinvolution, String, &str, Vec<usize>, Vec<usize>, Vec<Vec<usize>>, Box<dyn Fn(usize, usize) -> bool>);
    match case {
        HermCase::I1 { i, j } => {
            let n = i + j;
            s = transpose_superinvolution(n)?;
            let b = block_ranges(&[i, j, i, j]);
            let ev = union(&[&b[0], &b[2]]);
            let fv = union(&[&b[1], &b[3]]);
            id = format!("thm5.2.i.p:{n}");
            anchor = "C = eAe + fAf, e* = e (transpose)";
            estar = ev.clone();
            let ec = ev.clone();
            in_c = Box::new(move |a, c| ec.contains(&a) == ec.contains(&c));
            e = ev.clone();
            corners = vec![ev, fv];
        }
        HermCase::I2 { i, j, k, l } => {
            let (n, m) = (i + j, k + l);
            s = orthosymplectic_superinvolution(n, m)?;
            let b = block_ranges(&[i, j, k, l, k, l]);
            let ev = union(&[&b[0], &b[2], &b[4]]);
            let fv = union(&[&b[1], &b[3], &b[5]]);
            id = format!("thm5.2.i.osp:{n},{m}");
            anchor = "C = eAe + fAf, e* = e (orthosymplectic)";
            estar = ev.clone();
            let ec = ev.clone();
            in_c = Box::new(move |a, c| ec.contains(&a) == ec.contains(&c));
            e = ev.clone();
            corners = vec![ev, fv];
        }
        HermCase::II1 { s1, s2, s3 } => {
            let n = s1 + s2 + s3;
            s = transpose_superinvolution(n)?;
            let b = block_ranges(&[s1, s2, s3, s1, s2, s3]);
            let ev = union(&[&b[0], &b[5]]);
            let es = union(&[&b[2], &b[3]]);
            let g = union(&[&b[1], &b[4]]);
            id = format!("thm5.2.ii.p:{n}");
            anchor = "C = eA + Ae* + ff*Aff* (transpose)";
            let (ec, sc, gc) = (ev.clone(), es.clone(), g.clone());
            in_c = Box::new(move |a, c| ec.contains(&a) || sc.contains(&c) || (gc.contains(&a) && gc.contains(&c)));
            e = ev;
            estar = es;
            corners = vec![g];
        }
        HermCase::II2 { r1, r2, s4, s5 } => {
            let n = r1 + 2 * r2;
            let m = s4 + s5;
            let a = Arc::new(endomorphism_algebra(format!("M({n},{})", 2 * m), &module_parities(n, 2 * m)));
            let mut gram = Matrix::zeros(&(), n + 2 * m, n + 2 * m);
            for x in 0..r1 {
                gram[(x, x)] = Scalar::ONE;
            }
            for x in 0..r2 {
                gram[(r1 + x, r1 + r2 + x)] = Scalar::ONE;
                gram[(r1 + r2 + x, r1 + x)] = Scalar::ONE;
            }
            let q = symplectic_q(m);
            for x in 0..2 * m {
                for y in 0..2 * m {
                    gram[(n + x, n + y)] = q[(x, y)].clone();
                }
            }
            s = superinvolution_from_form(a, &gram)?;
            let b = block_ranges(&[r1, r2, r2, s4, s5, s4, s5]);
            let g = union(&[&b[0], &b[3], &b[5]]);
            let ev = union(&[&b[1], &b[4]]);
            let es = union(&[&b[2], &b[6]]);
            id = format!("thm5.2.ii.osp:{n},{m}");
            anchor = "C = eA + Ae* + ff*Aff* (orthosymplectic)";
            let (ec, sc, gc) = (ev.clone(), es.clone(), g.clone());
            in_c = Box::new(move |a, c| ec.contains(&a) || sc.contains(&c) || (gc.contains(&a) && gc.contains(&c)));
            e = ev;
            estar = es;
            corners = vec![g];
        }
    }
    let a = s.algebra.clone();
    let n = a.realization().map(|r| r.module_dim()).unwrap_or(0);
    let ei = idempotent(n, &e);
    if s.apply(&ei) != idempotent(n, &estar) {
        return Err(Error::InvalidSuperinvolution(format!("{id}: e* is not the expected idempotent")));
    }
    for c in &corners {
        if !corner_is_full(&s, c) {
            return Err(Error::SideConditionViolated(format!(
                "{id}: H(gAg, *)′ ≠ gAg for the corner of rank {} (quaternion-sized)",
                c.len()
            )));
        }
    }
    let hp = hermitian_part(&a, &s, format!("H({})", a.name()))?;
    let mut vs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if in_c(x, y) {
                let u = a.basis(x * n + y);
                let h = scale_vec(&add_vec(&u, &s.apply(&u)), &Scalar::half());
                if h.iter().any(|c| !c.is_zero()) {
                    let coords = hp.hermitian.coordinates(&h).ok_or_else(|| Error::NotASubalgebra(id.clone()))?;
                    vs.push(coords);
                }
            }
        }
    }
    let h = Arc::new(hp.algebra.clone());
    let sub = span_vectors(&h, &vs)?;
    Ok(MaximalFamily::new(id, format!("H:{}", a_spec(&a)), anchor, h, sub, Expected::Maximal)?
        .with_envelope(Envelope::from_hermitian(a, &hp)))
}

/// `B = span{e₁₁, e₂₂, e₁₂ + e₂₁} ⊂ M_{1,1}⁺`.
pub fn nonss_example_m11() -> Result<MaximalFamily> {
    let a = Arc::new(matrix_superalgebra(1, 1)?);
    let plus = Arc::new(plus_algebra(&a)?);
    let vs = vec![a.basis(0), a.basis(3), add_vec(&a.basis(1), &a.basis(2))];
    let sub = span_vectors(&plus, &vs)?;
    Ok(MaximalFamily::new("ex4.3", "plus:M:1,1", "B′ = A, B not semisimple", plus, sub, Expected::Maximal)?
        .with_envelope(Envelope::identity(a)))
}

/// `B = {[[a, −b, b], [b, d, 0], [b, 0, d]]} ⊂ osp_{1,2}`.
pub fn nonss_example_osp12() -> Result<MaximalFamily> {
    let s = orthosymplectic_superinvolution(1, 1)?;
    let a = s.algebra.clone();
    let hp = hermitian_part(&a, &s, "osp(1|2)")?;
    let m = |rows: &[&[i64]]| Matrix::from_ints(rows).into_entries();
    let vs = [
        m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
        m(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        m(&[&[0, -1, 1], &[1, 0, 0], &[1, 0, 0]]),
    ];
    let coords: Vec<Element> = vs
        .iter()
        .map(|v| hp.hermitian.coordinates(v).ok_or_else(|| Error::NotASubalgebra("ex5.3".into())))
        .collect::<Result<_>>()?;
    let h = Arc::new(hp.algebra.clone());
    let sub = span_vectors(&h, &coords)?;
    Ok(MaximalFamily::new("ex5.3", "osp:1,1", "B′ = A, radical = odd part", h, sub, Expected::Maximal)?
        .with_envelope(Envelope::from_hermitian(a, &hp)))
}

/// The odd part of a non-semisimple example, as an ideal of `B`, with its
/// nilpotency index.
pub fn odd_radical_index(fam: &MaximalFamily) -> Result<usize> {
    let b = fam.sub_algebra()?;
    let odd: Vec<Element> = indices_of(&b, Parity::Odd).into_iter().map(|i| b.basis(i)).collect();
    let rad = GradedSubspace::from_homogeneous(&(), b.parities(), &odd)?;
    nilpotency_index(&b, &rad)
}

/// Deliberately wrong families, each contained in a larger proper
/// subalgebra.
pub fn negative_controls() -> Result<Vec<MaximalFamily>> {
    let d1 = Arc::new(d_t(&Scalar::ONE)?);
    let k3 = Arc::new(kaplansky());
    let s = transpose_superinvolution(1)?;
    let a = s.algebra.clone();
    let hp = hermitian_part(&a, &s, "p(1)")?;
    Ok(vec![
        MaximalFamily::new("neg.Dt:1.Fe", "Dt:1", "Fe ⊊ J₀ ⊊ D₁", d1.clone(), span_indices(&d1, [0])?, Expected::NotMaximal)?,
        MaximalFamily::new("neg.K3.Fe", "K3", "Fe ⊊ Fe + Fx ⊊ K₃", k3.clone(), span_indices(&k3, [0])?, Expected::NotMaximal)?,
        MaximalFamily::new(
            "neg.M:1,1.p1",
            "plus:M:1,1",
            "H(M_{1,1}, transpose) for the quaternion superalgebra",
            hp.plus.clone(),
            hp.hermitian.clone(),
            Expected::NotMaximal,
        )?
        .with_envelope(Envelope::identity(a)),
    ])
}

/// The image of `D_t` in `H(End V(m), *)` through the embedding of `V(m)`.
pub fn dt_in_hermitian(m: usize, t: &Scalar) -> Result<MaximalFamily> {
    let emb = embed_dt(m, t)?;
    let s = emb.superinvolution()?;
    let hp = hermitian_part(&emb.end, &s, format!("H({})", emb.end.name()))?;
    let coords: Vec<Element> = (0..4)
        .map(|k| hp.hermitian.coordinates(&emb.map.image(k)).ok_or_else(|| Error::NotASubalgebra("D_t image".into())))
        .collect::<Result<_>>()?;
    let h = Arc::new(hp.algebra.clone());
    let sub = span_vectors(&h, &coords)?;
    Ok(MaximalFamily::new(
        format!("q5.1.m:{m}.t:{t}"),
        format!("H:End(V({m}))"),
        "is D_t maximal in H(End V, *)?",
        h,
        sub,
        Expected::Open,
    )?
    .with_envelope(Envelope::from_hermitian(emb.end.clone(), &hp)))
}

/// Both parameters for `V(m)`.
pub fn dt_in_hermitian_both(m: usize) -> Result<Vec<MaximalFamily>> {
    embedding_parameters(m).iter().map(|t| dt_in_hermitian(m, t)).collect()
}

/// Random odd pairs satisfy `tr(u∘v) = 0`; even idempotent basis elements
/// have nonzero trace.
pub fn trace_obstruction(a: &Superalgebra, samples: usize, seed: u64) -> Result<VerificationReport> {
    let plus = plus_algebra(a)?;
    let mut rep = VerificationReport::new("trace-obstruction", a.name());
    let odd = indices_of(a, Parity::Odd);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let u = combination(a, &odd, &random_coeffs(&mut rng, odd.len()));
        let v = combination(a, &odd, &random_coeffs(&mut rng, odd.len()));
        let tr = matrix_trace(a, &plus.mul(&u, &v))?;
        rep.require(tr.is_zero(), format!("sample {k}"), format!("tr(u∘v) = {tr}"));
    }
    for i in indices_of(a, Parity::Even) {
        let b = a.basis(i);
        if a.mul(&b, &b) == b {
            let tr = matrix_trace(a, &b)?;
            rep.require(!tr.is_zero(), format!("({})", a.label(i)), "idempotent with zero trace");
        }
    }
    Ok(rep)
}

/// All `k`-dimensional subspaces of `F_p^n`, as reduced echelon bases.
pub fn subspaces_mod_p(p: u64, n: usize, k: usize) -> Vec<Vec<Vec<Fp>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    choose(n, k, 0, &mut pivots, &mut |piv: &[usize]| {
        let free: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| ((c + 1)..n).filter(|j| !piv.contains(j)).map(move |j| (r, j)))
            .collect();
        let total = p.pow(free.len() as u32);
        for mut idx in 0..total {
            let mut rows = vec![vec![Fp::new(0, p); n]; k];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = Fp::new(1, p);
            }
            for &(r, j) in &free {
                rows[r][j] = Fp::new(idx % p, p);
                idx /= p;
            }
            out.push(rows);
        }
    });
    out
}

fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        cur.push(i);
        choose(n, k, i + 1, cur, f);
        cur.pop();
    }
}

fn lift(p: u64, n: usize, idx: &[usize], v: &[Fp]) -> Vec<Fp> {
    let mut out = vec![Fp::new(0, p); n];
    for (&i, c) in idx.iter().zip(v) {
        out[i] = *c;
    }
    out
}

fn span_fp(p: u64, n: usize, vs: &[Vec<Fp>]) -> Span<Fp> {
    let mut s = Span::new(&p, n);
    for v in vs {
        s.insert(v.clone());
    }
    s
}

/// Largest dimension of a nonzero graded nilpotent ideal of `S` (0 if none).
fn nilpotent_ideal_dim(jp: &crate::algebra::TableAlgebra<Fp>, s: &[Vec<Fp>]) -> usize {
    let p = *jp.ctx();
    let n = jp.dim();
    let par = jp.parities();
    let (s0, s1): (Vec<Vec<Fp>>, Vec<Vec<Fp>>) =
        s.iter().cloned().partition(|v| crate::subspace::homogeneous_parity(v, par) == Some(Parity::Even));
    let coords0 = s0.len();
    let coords1 = s1.len();
    let mut best = 0;
    for d0 in 0..=coords0 {
        for d1 in 0..=coords1 {
            if d0 + d1 == 0 || d0 + d1 <= best {
                continue;
            }
            for a in subspaces_mod_p(p, coords0, d0) {
                for b in subspaces_mod_p(p, coords1, d1) {
                    let mut ideal: Vec<Vec<Fp>> = Vec::new();
                    for row in &a {
                        let mut v = vec![Fp::new(0, p); n];
                        for (c, w) in row.iter().zip(&s0) {
                            axpy(&mut v, c, w);
                        }
                        ideal.push(v);
                    }
                    for row in &b {
                        let mut v = vec![Fp::new(0, p); n];
                        for (c, w) in row.iter().zip(&s1) {
                            axpy(&mut v, c, w);
                        }
                        ideal.push(v);
                    }
                    let span = span_fp(p, n, &ideal);
                    let is_ideal = s.iter().all(|x| ideal.iter().all(|i| span.contains(&jp.mul(x, i)) && span.contains(&jp.mul(i, x))));
                    if !is_ideal {
                        continue;
                    }
                    let mut power = ideal.clone();
                    let mut nilpotent = false;
                    for _ in 0..=n {
                        let next = span_fp(p, n, &power.iter().flat_map(|x| ideal.iter().flat_map(move |i| [jp.mul(x, i), jp.mul(i, x)])).collect::<Vec<_>>());
                        if next.dim() == 0 {
                            nilpotent = true;
                            break;
                        }
                        power = next.rows().to_vec();
                    }
                    if nilpotent {
                        best = best.max(d0 + d1);
                    }
                }
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntFind {
    pub dims: (usize, usize),
    pub basis: Vec<Vec<u64>>,
    pub nilpotent_ideal_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntReport {
    pub ambient: String,
    pub p: u64,
    pub max_codim: usize,
    pub subalgebras_examined: usize,
    pub found: Vec<HuntFind>,
}

/// Every graded subalgebra `S` of `J` over `F_p` with codimension at most
/// `max_codim` that is maximal, has `S′ = A`, and has a nonzero nilpotent
/// ideal. Evidence only: the search is over `F_p` and up to equality, not
/// isomorphism.
pub fn hunt_nonsemisimple_maximals(j: &Superalgebra, env: &Envelope, p: u64, max_codim: usize) -> Result<HuntReport> {
    check_prime(p)?;
    let jp = j.reduce_mod_p(p)?;
    let ap = env.algebra.reduce_mod_p(p)?;
    let incl = env.inclusion.reduce_mod_p(p)?;
    let n = j.dim();
    let even = indices_of(j, Parity::Even);
    let odd = indices_of(j, Parity::Odd);
    let mut report = HuntReport {
        ambient: j.name().to_string(),
        p,
        max_codim,
        subalgebras_examined: 0,
        found: Vec::new(),
    };
    for codim in 1..=max_codim.min(n) {
        for d0 in 0..=even.len() {
            let Some(d1) = (n - codim).checked_sub(d0) else { continue };
            if d1 > odd.len() {
                continue;
            }
            for a in subspaces_mod_p(p, even.len(), d0) {
                for b in subspaces_mod_p(p, odd.len(), d1) {
                    let mut vs: Vec<Vec<Fp>> = a.iter().map(|r| lift(p, n, &even, r)).collect();
                    vs.extend(b.iter().map(|r| lift(p, n, &odd, r)));
                    if naive_closure(&jp, &vs).len() != vs.len() {
                        continue;
                    }
                    report.subalgebras_examined += 1;
                    let images: Vec<Vec<Fp>> = vs.iter().map(|v| incl.mul_vec(v)).collect();
                    if closure(&ap, &images).dim() != ap.dim() {
                        continue;
                    }
                    if codim > 1 {
                        let sub = GradedSubspace::graded_hull(&p, jp.parities(), &vs)?;
                        if !exhaustive_subalgebra_scan_mod_p(&jp, &sub)?.is_empty() {
                            continue;
                        }
                    }
                    let nil = nilpotent_ideal_dim(&jp, &vs);
                    if nil > 0 {
                        report.found.push(HuntFind {
                            dims: (d0, d1),
                            basis: vs.iter().map(|v| v.iter().map(|x| x.residue()).collect()).collect(),
                            nilpotent_ideal_dim: nil,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Hunter over `M_{1,1}⁺`.
pub fn hunt_m11(p: u64) -> Result<HuntReport> {
    let a = Arc::new(matrix_superalgebra(1, 1)?);
    let plus = plus_algebra(&a)?;
    hunt_nonsemisimple_maximals(&plus, &Envelope::identity(a), p, 2)
}

/// Hunter over `osp_{1,2}`.
pub fn hunt_osp12(p: u64) -> Result<HuntReport> {
    let s = orthosymplectic_superinvolution(1, 1)?;
    let a = s.algebra.clone();
    let hp = hermitian_part(&a, &s, "osp(1|2)")?;
    hunt_nonsemisimple_maximals(&hp.algebra, &Envelope::from_hermitian(a, &hp), p, 2)
}

/// Unit vector helper for tests and callers assembling elements by index.
pub fn basis_vector(n: usize, i: usize) -> Element {
    unit_vec::<Scalar>(&(), n, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generation::{maximality_check, scan_mod_p, Mode, Verdict};

    #[test]
    fn easy_family_shapes() {
        let k3 = easy_maximals(&EasyKind::Kaplansky, 3, 1).unwrap();
        assert_eq!(k3.len(), 4);
        assert_eq!(k3[0].sub.dims(), (1, 1));
        let d1 = easy_maximals(&EasyKind::Dt(Scalar::ONE), 0, 1).unwrap();
        assert_eq!(d1.len(), 2);
        assert_eq!(d1[1].sub.dims(), (1, 2));
        let sf = easy_maximals(&EasyKind::Superform(2, 1), 0, 1).unwrap();
        assert_eq!(sf.iter().map(|f| f.sub.dims()).collect::<Vec<_>>(), vec![(3, 1), (2, 2)]);
    }

    #[test]
    fn hermitian_and_assoc_families() {
        let p2 = hermitian_maximal_in_plus(Flavor::Transpose { n: 2 }).unwrap();
        assert_eq!((p2.sub.dim(), p2.ambient.dim()), (8, 16));
        assert_eq!(p2.b_prime_dim(), Some(16));
        let osp = hermitian_maximal_in_plus(Flavor::Orthosymplectic { n: 1, m: 1 }).unwrap();
        assert_eq!(osp.sub.dims(), (2, 2));
        let one_a = assoc_maximal_family(AssocCase::OneA { p: 1, q: 1, k0: 1, k1: 0 }).unwrap();
        assert_eq!(one_a.sub.dim(), 3);
        let one_b = assoc_maximal_family(AssocCase::OneB { p: 2 }).unwrap();
        assert_eq!((one_b.sub.dim(), one_b.ambient.dim()), (8, 16));
        let two_a = assoc_maximal_family(AssocCase::TwoA { n: 2, k: 1 }).unwrap();
        assert_eq!(two_a.sub.dim(), 6);
        let two_b = assoc_maximal_family(AssocCase::TwoB { n: 2 }).unwrap();
        assert_eq!(two_b.sub.dims(), (4, 0));
        let two_c = assoc_maximal_family(AssocCase::TwoC { n: 2, r: 1 }).unwrap();
        assert_eq!(two_c.sub.dims(), (2, 2));
        for fam in [one_a, one_b, two_a, two_b, two_c] {
            // C is an associative subalgebra, so B′ stays inside it
            assert_eq!(fam.b_prime_dim(), Some(fam.sub.dim()), "{}", fam.id);
        }
    }

    #[test]
    fn hermitian_families_and_side_conditions() {
        let i1 = herm_maximal_family(HermCase::I1 { i: 2, j: 2 }).unwrap();
        assert_eq!(i1.ambient.dim(), 32);
        assert_eq!(i1.sub.dim(), 16);
        let ii1 = herm_maximal_family(HermCase::II1 { s1: 1, s2: 2, s3: 0 }).unwrap();
        assert!(ii1.sub.dim() < ii1.ambient.dim());
        assert!(matches!(
            herm_maximal_family(HermCase::II1 { s1: 1, s2: 1, s3: 1 }),
            Err(Error::SideConditionViolated(_))
        ));
        assert!(matches!(herm_maximal_family(HermCase::I1 { i: 1, j: 2 }), Err(Error::SideConditionViolated(_))));
        herm_maximal_family(HermCase::I2 { i: 1, j: 1, k: 1, l: 0 }).unwrap();
        herm_maximal_family(HermCase::II2 { r1: 1, r2: 1, s4: 1, s5: 0 }).unwrap();
    }

    #[test]
    fn nonsemisimple_examples() {
        let ex = nonss_example_m11().unwrap();
        assert_eq!(ex.sub.dim(), 3);
        assert_eq!(ex.b_prime_dim(), Some(4));
        assert_eq!(odd_radical_index(&ex).unwrap(), 2);
        let ex = nonss_example_osp12().unwrap();
        assert_eq!((ex.sub.dim(), ex.ambient.dim()), (3, 4));
        // the odd-odd block of B′ is spanned by diag(0,1,1) and X², and
        // (0, 1, -1) spans a right B′-stable line
        assert_eq!(ex.b_prime_dim(), Some(5));
        assert_eq!(odd_radical_index(&ex).unwrap(), 2);
    }

    #[test]
    fn negative_controls_find_counterexamples() {
        for fam in negative_controls().unwrap() {
            let r = maximality_check(&fam.ambient, &fam.sub, Mode::ComplementBasis).unwrap();
            assert_eq!(r.verdict, Verdict::CounterexampleFound, "{}", fam.id);
        }
    }

    #[test]
    fn superform_scan_agrees() {
        for fam in easy_maximals(&EasyKind::Dt(Scalar::ONE), 0, 1).unwrap() {
            assert!(scan_mod_p(&fam.ambient, &fam.sub, 5).unwrap().is_empty(), "{}", fam.id);
        }
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomials: [4 choose 2]_5 = 806, [3 choose 1]_7 = 57
        assert_eq!(subspaces_mod_p(5, 4, 2).len(), 806);
        assert_eq!(subspaces_mod_p(7, 3, 1).len(), 57);
        assert_eq!(subspaces_mod_p(5, 3, 0).len(), 1);
    }

    #[test]
    fn hunters_find_the_known_examples() {
        let m11 = hunt_m11(5).unwrap();
        assert!(!m11.found.is_empty());
        assert!(m11.found.iter().all(|f| f.dims == (2, 1)));
        let osp = hunt_osp12(5).unwrap();
        assert!(osp.subalgebras_examined > 0);
        assert!(osp.found.is_empty());
    }

    #[test]
    fn traces() {
        for a in [matrix_superalgebra(2, 2).unwrap(), q_n(2).unwrap()] {
            assert!(trace_obstruction(&a, 20, 3).unwrap().passed());
        }
    }
}
