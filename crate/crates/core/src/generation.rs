//! Subalgebra generation and the maximality verifier.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Superalgebra, TableAlgebra};
use crate::error::{Error, Result};
use crate::field::{is_zero_vec, Field};
use crate::matrix::Matrix;
use crate::modp::{check_prime, Fp};
use crate::scalar::Scalar;
use crate::subspace::{component, homogeneous_parity, GradedSubspace, Parity, Span};

/// Seed used when none is given: the ASCII bytes of "J0RDAN".
pub const DEFAULT_SEED: u64 = 0x4A30_5244_414E;

/// Default number of random trials in randomized mode.
pub const DEFAULT_TRIALS: usize = 200;

#[derive(Clone, Debug)]
pub struct ClosureResult<F: Field> {
    pub span: Span<F>,
    pub rounds: usize,
    pub products_computed: usize,
    pub graded: bool,
}

impl<F: Field> ClosureResult<F> {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// The closure as a graded subspace, when it is graded.
    pub fn subspace(&self, parities: &[Parity]) -> Option<GradedSubspace<F>> {
        if !self.graded {
            return None;
        }
        GradedSubspace::graded_hull(self.span.ctx(), parities, self.span.rows()).ok()
    }
}

fn is_graded<F: Field>(span: &Span<F>, parities: &[Parity]) -> bool {
    span.rows().iter().all(|r| {
        homogeneous_parity(r, parities).is_some() || span.contains(&component(r, parities, Parity::Even))
    })
}

/// Closure of `base + span(extra)` under the algebra product, assuming
/// `base` is already closed. Each round multiplies the vectors added in the
/// previous round against everything found so far, in both orders unless
/// the algebra is supercommutative and both factors are homogeneous.
pub fn closure_extending<F: Field>(alg: &TableAlgebra<F>, base: &Span<F>, extra: &[Vec<F>]) -> ClosureResult<F> {
    let n = alg.dim();
    let parities = alg.parities();
    let mut span = base.clone();
    let mut all: Vec<(Vec<F>, bool)> =
        span.rows().iter().map(|r| (r.clone(), homogeneous_parity(r, parities).is_some())).collect();
    let mut frontier: Vec<Vec<F>> = Vec::new();
    for v in extra {
        if let Some(row) = span.insert(v.clone()) {
            frontier.push(row.clone());
        }
    }
    let mut rounds = 0;
    let mut products = 0;
    let symmetric = alg.is_supercommutative();
    'rounds: while !frontier.is_empty() && span.dim() < n {
        rounds += 1;
        let mut next = Vec::new();
        for v in std::mem::take(&mut frontier) {
            let hv = homogeneous_parity(&v, parities).is_some();
            all.push((v.clone(), hv));
            for (w, hw) in all.iter() {
                let mut outs = vec![alg.mul(&v, w)];
                if !(symmetric && hv && *hw) {
                    outs.push(alg.mul(w, &v));
                }
                for out in outs {
                    products += 1;
                    if let Some(row) = span.insert(out) {
                        next.push(row.clone());
                        if span.dim() == n {
                            break 'rounds;
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    let graded = is_graded(&span, parities);
    ClosureResult { span, rounds, products_computed: products, graded }
}

/// The subalgebra generated by the given vectors.
pub fn closure<F: Field>(alg: &TableAlgebra<F>, gens: &[Vec<F>]) -> ClosureResult<F> {
    closure_extending(alg, &Span::new(alg.ctx(), alg.dim()), gens)
}

/// `Jalg⟨S⟩` in a Jordan superalgebra.
pub fn jordan_closure(j: &Superalgebra, gens: &[Vec<Scalar>]) -> ClosureResult<Scalar> {
    closure(j.table(), gens)
}

/// `B′`: the associative subalgebra generated by the vectors.
pub fn assoc_closure(a: &Superalgebra, gens: &[Vec<Scalar>]) -> ClosureResult<Scalar> {
    closure(a.table(), gens)
}

fn span_of<F: Field>(alg: &TableAlgebra<F>, b: &GradedSubspace<F>) -> Span<F> {
    let mut s = Span::new(alg.ctx(), alg.dim());
    for v in b.basis() {
        s.insert(v);
    }
    s
}

/// Whether `B ∪ {x}` generates the whole algebra.
pub fn generates(j: &Superalgebra, b: &GradedSubspace<Scalar>, x: &[Scalar]) -> (bool, ClosureResult<Scalar>) {
    let res = closure_extending(j.table(), &span_of(j.table(), b), &[x.to_vec()]);
    (res.dim() == j.dim(), res)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Mode {
    ComplementBasis,
    Randomized { trials: usize, seed: u64 },
    ExhaustiveModP { p: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::ComplementBasis => write!(f, "basis"),
            Mode::Randomized { trials, seed } => write!(f, "random:{trials}:{seed}"),
            Mode::ExhaustiveModP { p } => write!(f, "modp:{p}"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    /// `basis`, `random[:<trials>[:<seed>]]`, or `modp:<p>`.
    fn from_str(s: &str) -> Result<Mode> {
        let bad = || Error::Parse(format!("unknown mode {s:?}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["basis"] => Ok(Mode::ComplementBasis),
            ["random"] => Ok(Mode::Randomized { trials: DEFAULT_TRIALS, seed: DEFAULT_SEED }),
            ["random", t] => Ok(Mode::Randomized { trials: t.parse().map_err(|_| bad())?, seed: DEFAULT_SEED }),
            ["random", t, seed] => Ok(Mode::Randomized {
                trials: t.parse().map_err(|_| bad())?,
                seed: parse_seed(seed).ok_or_else(bad)?,
            }),
            ["modp", p] => Ok(Mode::ExhaustiveModP { p: p.parse().map_err(|_| bad())? }),
            _ => Err(bad()),
        }
    }
}

fn parse_seed(s: &str) -> Option<u64> {
    match s.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(hex, 16).ok(),
        None => s.parse().ok(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    AllGenerate,
    CounterexampleFound,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::AllGenerate => "AllGenerate",
            Verdict::CounterexampleFound => "CounterexampleFound",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

/// One tested complement vector. Coordinates are rationals, or residues in
/// exhaustive mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub source: String,
    pub vector: Vec<String>,
    pub parity: u8,
    pub closure_dim: usize,
    pub generates: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityReport {
    pub algebra: String,
    pub ambient_dims: (usize, usize),
    pub sub_dims: (usize, usize),
    pub mode: Mode,
    pub verdict: Verdict,
    pub vectors_tested: usize,
    pub counterexamples: usize,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl MaximalityReport {
    /// First counterexample, if any.
    pub fn counterexample(&self) -> Option<&Witness> {
        self.witnesses.iter().find(|w| !w.generates)
    }
}

/// Cap on witnesses kept from an exhaustive enumeration.
const MAX_MODP_WITNESSES: usize = 8;

fn strings<F: Field>(v: &[F]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Checks that `B` is a proper subalgebra: closed, and not everything.
pub fn check_proper_subalgebra(j: &Superalgebra, b: &GradedSubspace<Scalar>) -> Result<()> {
    if b.parities() != j.parities() {
        return Err(Error::DimensionMismatch { expected: j.dim(), got: b.ambient_dim() });
    }
    if b.dim() >= j.dim() {
        return Err(Error::NotASubalgebra("subspace is the whole algebra".into()));
    }
    let res = closure(j.table(), &b.basis());
    if res.dim() != b.dim() {
        return Err(Error::NotASubalgebra(format!(
            "closure has dimension {} but the subspace has dimension {}",
            res.dim(),
            b.dim()
        )));
    }
    Ok(())
}

fn test_vector(j: &Superalgebra, base: &Span<Scalar>, x: Vec<Scalar>, source: &str) -> Witness {
    let res = closure_extending(j.table(), base, &[x.clone()]);
    Witness {
        source: source.into(),
        parity: j.homogeneous_parity(&x).unwrap_or(Parity::Even).bit(),
        vector: strings(&x),
        closure_dim: res.dim(),
        generates: res.dim() == j.dim(),
    }
}

/// Runs the requested maximality mode for `B ⊂ J`.
pub fn maximality_check(j: &Superalgebra, b: &GradedSubspace<Scalar>, mode: Mode) -> Result<MaximalityReport> {
    check_proper_subalgebra(j, b)?;
    let mut report = MaximalityReport {
        algebra: j.name().to_string(),
        ambient_dims: j.dims(),
        sub_dims: b.dims(),
        mode,
        verdict: Verdict::AllGenerate,
        vectors_tested: 0,
        counterexamples: 0,
        witnesses: Vec::new(),
        notes: Vec::new(),
    };
    let codim = j.dim() - b.dim();
    match mode {
        Mode::ComplementBasis | Mode::Randomized { .. } => {
            if codim == 1 {
                report.notes.push("codimension 1: a proper subalgebra of codimension 1 is maximal".into());
                return Ok(report);
            }
            report.notes.push(
                "evidence only: generation by sampled vectors is necessary, not sufficient, for maximality".into(),
            );
            let base = span_of(j.table(), b);
            let comp = b.complement();
            let mut candidates: Vec<(Vec<Scalar>, &str)> =
                comp.basis().into_iter().map(|w| (w, "complement-basis")).collect();
            if let Mode::Randomized { trials, seed } = mode {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let blocks: Vec<Vec<Vec<Scalar>>> = [comp.even_basis(), comp.odd_basis()]
                    .into_iter()
                    .filter(|blk| !blk.is_empty())
                    .collect();
                for _ in 0..trials {
                    let blk = &blocks[rng.gen_range(0..blocks.len())];
                    let v = loop {
                        let coeffs: Vec<i64> = blk.iter().map(|_| rng.gen_range(-3..=3)).collect();
                        if coeffs.iter().any(|&c| c != 0) {
                            let mut v = j.zero();
                            for (c, w) in coeffs.iter().zip(blk) {
                                crate::field::axpy(&mut v, &Scalar::from_int(*c), w);
                            }
                            break v;
                        }
                    };
                    candidates.push((v, "random"));
                }
            }
            let witnesses: Vec<Witness> =
                candidates.into_par_iter().map(|(x, src)| test_vector(j, &base, x, src)).collect();
            report.vectors_tested = witnesses.len();
            report.counterexamples = witnesses.iter().filter(|w| !w.generates).count();
            report.witnesses = witnesses;
        }
        Mode::ExhaustiveModP { p } => {
            check_prime(p)?;
            let jp = j.reduce_mod_p(p)?;
            let bp = b.reduce_mod_p(p)?;
            let closed = closure(&jp, &bp.basis());
            if bp.dims() != b.dims() || closed.dim() != bp.dim() {
                report.verdict = Verdict::Inconclusive;
                report.notes.push(format!("the subalgebra does not reduce to a subalgebra of the same dimension mod {p}"));
                return Ok(report);
            }
            report.notes.push(format!("proof over F_{p}: every nonzero homogeneous complement vector was tested up to scalars"));
            let found = enumerate_mod_p(&jp, &bp)?;
            report.vectors_tested = found.0;
            report.counterexamples = found.1.len();
            report.witnesses = found
                .1
                .into_iter()
                .take(MAX_MODP_WITNESSES)
                .map(|(v, dim)| Witness {
                    source: format!("mod {p}"),
                    parity: jp_parity(&jp, &v),
                    vector: strings(&v),
                    closure_dim: dim,
                    generates: false,
                })
                .collect();
        }
    }
    if report.counterexamples > 0 {
        report.verdict = Verdict::CounterexampleFound;
    }
    Ok(report)
}

fn jp_parity(jp: &TableAlgebra<Fp>, v: &[Fp]) -> u8 {
    homogeneous_parity(v, jp.parities()).unwrap_or(Parity::Even).bit()
}

/// Number of projective points of `F_p^k`.
pub fn projective_count(p: u64, k: usize) -> u64 {
    if k == 0 {
        0
    } else {
        (p.pow(k as u32) - 1) / (p - 1)
    }
}

/// The `idx`-th projective point of `F_p^k` (first nonzero coordinate 1), in
/// a fixed order: grouped by the position of the leading 1, then by the
/// base-p digits of the tail.
pub fn projective_point(p: u64, k: usize, mut idx: u64) -> Vec<u64> {
    for lead in 0..k {
        let tail = (k - lead - 1) as u32;
        let count = p.pow(tail);
        if idx < count {
            let mut v = vec![0; k];
            v[lead] = 1;
            for pos in (lead + 1..k).rev() {
                v[pos] = idx % p;
                idx /= p;
            }
            return v;
        }
        idx -= count;
    }
    panic!("projective index out of range");
}

/// Tests every projective homogeneous complement vector; returns the count
/// and the non-generating ones with their closure dimensions, in enumeration
/// order (even block first).
fn enumerate_mod_p(jp: &TableAlgebra<Fp>, bp: &GradedSubspace<Fp>) -> Result<(usize, Vec<(Vec<Fp>, usize)>)> {
    let p = *jp.ctx();
    let base = span_of(jp, bp);
    let comp = bp.complement();
    let mut jobs: Vec<(Vec<Vec<Fp>>, u64)> = Vec::new();
    for blk in [comp.even_basis(), comp.odd_basis()] {
        let k = blk.len();
        if k == 0 {
            continue;
        }
        let count = projective_count(p, k);
        if count > 50_000_000 {
            return Err(Error::TooLarge(format!("{count} projective vectors mod {p}")));
        }
        jobs.push((blk, count));
    }
    let n = jp.dim();
    let mut tested = 0usize;
    let mut bad = Vec::new();
    for (blk, count) in jobs {
        let k = blk.len();
        let found: Vec<(u64, Vec<Fp>, usize)> = (0..count)
            .into_par_iter()
            .filter_map(|idx| {
                let coeffs = projective_point(p, k, idx);
                let mut v = vec![Fp::new(0, p); n];
                for (c, w) in coeffs.iter().zip(&blk) {
                    crate::field::axpy(&mut v, &Fp::new(*c, p), w);
                }
                let res = closure_extending(jp, &base, &[v.clone()]);
                (res.dim() < n).then(|| (idx, v, res.dim()))
            })
            .collect();
        tested += count as usize;
        let mut found = found;
        found.sort_by_key(|(i, _, _)| *i);
        bad.extend(found.into_iter().map(|(_, v, d)| (v, d)));
    }
    Ok((tested, bad))
}

/// Largest codimension the independent scan accepts.
pub const SCAN_MAX_CODIM: usize = 6;
/// Largest prime the independent scan accepts.
pub const SCAN_MAX_PRIME: u64 = 7;
const SCAN_MAX_RESULTS: usize = 5000;

/// Closure by brute force: multiply every pair of the current basis in both
/// orders and re-echelonize from scratch until the rank stops growing.
pub fn naive_closure(alg: &TableAlgebra<Fp>, gens: &[Vec<Fp>]) -> Vec<Vec<Fp>> {
    let p = *alg.ctx();
    let n = alg.dim();
    let echelon = |rows: &[Vec<Fp>]| -> Vec<Vec<Fp>> {
        if rows.is_empty() {
            return Vec::new();
        }
        Matrix::from_rows(&p, n, rows).expect("row length").rref().0.row_vectors()
    };
    let mut basis = echelon(gens);
    loop {
        let mut rows = basis.clone();
        for a in &basis {
            for b in &basis {
                rows.push(alg.mul(a, b));
            }
        }
        let next = echelon(&rows);
        if next.len() == basis.len() {
            return basis;
        }
        basis = next;
    }
}

fn canonical_key(rows: &[Vec<Fp>]) -> Vec<Vec<u64>> {
    rows.iter().map(|r| r.iter().map(|x| x.residue()).collect()).collect()
}

/// Every proper subalgebra strictly between `B` and `J` over `F_p`, found by
/// closing `T ∪ {w}` for each intermediate `T` and every projective
/// homogeneous complement vector `w`. Empty means `B` is maximal over `F_p`.
pub fn exhaustive_subalgebra_scan_mod_p(
    jp: &TableAlgebra<Fp>,
    b: &GradedSubspace<Fp>,
) -> Result<Vec<GradedSubspace<Fp>>> {
    let p = *jp.ctx();
    let n = jp.dim();
    if n - b.dim() > SCAN_MAX_CODIM || p > SCAN_MAX_PRIME {
        return Err(Error::TooLarge(format!(
            "scan limited to codimension ≤ {SCAN_MAX_CODIM} and p ≤ {SCAN_MAX_PRIME} (got {} and {p})",
            n - b.dim()
        )));
    }
    let parities = jp.parities().to_vec();
    let start = naive_closure(jp, &b.basis());
    if start.len() != b.dim() {
        return Err(Error::NotASubalgebra("B is not closed mod p".into()));
    }
    let mut seen: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
    seen.insert(canonical_key(&start));
    let mut queue: VecDeque<Vec<Vec<Fp>>> = VecDeque::from([start]);
    let mut found: Vec<Vec<Vec<Fp>>> = Vec::new();
    while let Some(t) = queue.pop_front() {
        let ts = GradedSubspace::graded_hull(&p, &parities, &t)?;
        let comp = ts.complement();
        for blk in [comp.even_basis(), comp.odd_basis()] {
            let k = blk.len();
            for idx in 0..projective_count(p, k) {
                let coeffs = projective_point(p, k, idx);
                let mut w = vec![Fp::new(0, p); n];
                for (c, v) in coeffs.iter().zip(&blk) {
                    crate::field::axpy(&mut w, &Fp::new(*c, p), v);
                }
                let mut gens = t.clone();
                gens.push(w);
                let c = naive_closure(jp, &gens);
                if c.len() < n && seen.insert(canonical_key(&c)) {
                    found.push(c.clone());
                    queue.push_back(c);
                    if found.len() > SCAN_MAX_RESULTS {
                        return Err(Error::TooLarge("too many intermediate subalgebras".into()));
                    }
                }
            }
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| canonical_key(a).cmp(&canonical_key(b))));
    found.into_iter().map(|rows| GradedSubspace::graded_hull(&p, &parities, &rows)).collect()
}

/// Convenience wrapper reducing `J` and `B` first.
pub fn scan_mod_p(j: &Superalgebra, b: &GradedSubspace<Scalar>, p: u64) -> Result<Vec<GradedSubspace<Fp>>> {
    check_prime(p)?;
    exhaustive_subalgebra_scan_mod_p(&j.reduce_mod_p(p)?, &b.reduce_mod_p(p)?)
}

/// True when a report's verdict is consistent with the scan: no intermediate
/// subalgebra iff all complement vectors generate.
pub fn agrees_with_scan(report: &MaximalityReport, scan: &[GradedSubspace<Fp>]) -> bool {
    match report.verdict {
        Verdict::AllGenerate => scan.is_empty(),
        Verdict::CounterexampleFound => !scan.is_empty(),
        Verdict::Inconclusive => true,
    }
}

/// Vector of rationals from strings (for replaying witnesses).
pub fn parse_vector(v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| s.parse()).collect()
}

/// Whether a vector is nonzero.
pub fn nonzero<F: Field>(v: &[F]) -> bool {
    !is_zero_vec(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{d_t, kaplansky, superform_algebra};

    fn sub(j: &Superalgebra, idx: &[usize]) -> GradedSubspace<Scalar> {
        GradedSubspace::from_homogeneous(&(), j.parities(), &idx.iter().map(|&i| j.basis(i)).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn kaplansky_closures() {
        let k = kaplansky();
        assert_eq!(jordan_closure(&k, &[k.basis(1)]).dim(), 1);
        let all = jordan_closure(&k, &[k.basis(1), k.basis(2)]);
        assert_eq!(all.dim(), 3);
        assert!(all.graded);
        let (ok, _) = generates(&k, &sub(&k, &[0, 1]), &k.basis(2));
        assert!(ok);
        let (ok, _) = generates(&k, &sub(&k, &[0, 1]), &k.basis(1));
        assert!(!ok);
    }

    #[test]
    fn inhomogeneous_closure_reports_grading() {
        let k = kaplansky();
        // e + x: (e+x)² = e + x, so the span is closed but not graded
        let v = k.elem(&[("e", Scalar::ONE), ("x", Scalar::ONE)]);
        let res = jordan_closure(&k, &[v]);
        assert_eq!(res.dim(), 1);
        assert!(!res.graded);
    }

    #[test]
    fn mode_grammar() {
        assert_eq!("basis".parse::<Mode>().unwrap(), Mode::ComplementBasis);
        assert_eq!("random:200:7".parse::<Mode>().unwrap(), Mode::Randomized { trials: 200, seed: 7 });
        assert_eq!("modp:5".parse::<Mode>().unwrap(), Mode::ExhaustiveModP { p: 5 });
        for m in ["basis", "random:10:3", "modp:7"] {
            assert_eq!(m.parse::<Mode>().unwrap().to_string(), m);
        }
        assert!("nope".parse::<Mode>().is_err());
    }

    #[test]
    fn projective_enumeration_is_complete() {
        for (p, k) in [(5u64, 1usize), (5, 2), (7, 3)] {
            let count = projective_count(p, k);
            let pts: BTreeSet<Vec<u64>> = (0..count).map(|i| projective_point(p, k, i)).collect();
            assert_eq!(pts.len() as u64, count);
            for v in &pts {
                assert_eq!(v.iter().find(|&&x| x != 0), Some(&1));
            }
        }
    }

    #[test]
    fn theorem_examples() {
        let d2 = d_t(&Scalar::from_int(2)).unwrap();
        let r = maximality_check(&d2, &sub(&d2, &[0, 1, 2]), Mode::ExhaustiveModP { p: 5 }).unwrap();
        assert_eq!(r.verdict, Verdict::AllGenerate);
        let sf = superform_algebra(2, 1).unwrap();
        let r = maximality_check(&sf, &sub(&sf, &[0, 1, 3, 4]), Mode::ExhaustiveModP { p: 7 }).unwrap();
        assert_eq!(r.verdict, Verdict::AllGenerate);
        assert!(matches!(
            maximality_check(&d2, &sub(&d2, &[0, 1, 2]), Mode::ExhaustiveModP { p: 2 }),
            Err(Error::BadPrime(2, _))
        ));
    }

    #[test]
    fn wrong_family_is_caught() {
        let d1 = d_t(&Scalar::ONE).unwrap();
        let b = sub(&d1, &[0]);
        let r = maximality_check(&d1, &b, Mode::ComplementBasis).unwrap();
        assert_eq!(r.verdict, Verdict::CounterexampleFound);
        let scan = scan_mod_p(&d1, &b, 5).unwrap();
        let j0 = sub(&d1, &[0, 1]).reduce_mod_p(5).unwrap();
        assert!(scan.contains(&j0));
        let r5 = maximality_check(&d1, &b, Mode::ExhaustiveModP { p: 5 }).unwrap();
        assert!(agrees_with_scan(&r5, &scan));
    }

    #[test]
    fn not_a_subalgebra_is_rejected() {
        let k = kaplansky();
        assert!(matches!(
            maximality_check(&k, &sub(&k, &[1, 2]), Mode::ComplementBasis),
            Err(Error::NotASubalgebra(_))
        ));
    }
}
