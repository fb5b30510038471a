//! The claims registry: every classified family, negative control and open
//! question, with a driver that runs the maximality verifier on each.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{
    assoc_maximal_family, dt_in_hermitian, easy_maximals, herm_maximal_family, hermitian_maximal_in_plus, hunt_m11,
    hunt_osp12, negative_controls, nonss_example_m11, nonss_example_osp12, AssocCase, EasyKind, Expected, Flavor,
    HermCase, HuntReport, MaximalFamily,
};
use crate::generation::{closure, closure_extending, generates, maximality_check, parse_vector, MaximalityReport, Mode, Verdict, Witness, DEFAULT_SEED};
use crate::modp::Fp;
use crate::osp::embedding_parameters;
use crate::scalar::Scalar;
use crate::subspace::Span;

/// Largest complement the exhaustive mode is run on inside the registry.
pub const REGISTRY_MODP_MAX_CODIM: usize = 6;
/// Seeded random variants per easy family.
pub const EASY_VARIANTS: usize = 3;

type Builder = Arc<dyn Fn() -> Result<Subject> + Send + Sync>;

pub enum Subject {
    Family(Box<MaximalFamily>),
    Hunt(HuntReport),
}

#[derive(Clone)]
pub struct Claim {
    pub id: String,
    pub anchor: String,
    pub expected: Expected,
    build: Builder,
}

impl std::fmt::Debug for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Claim").field("id", &self.id).field("expected", &self.expected).finish()
    }
}

impl Claim {
    fn family(fam: MaximalFamily) -> Claim {
        let fam = Arc::new(fam);
        Claim {
            id: fam.id.clone(),
            anchor: fam.anchor.clone(),
            expected: fam.expected,
            build: {
                let fam = fam.clone();
                Arc::new(move || Ok(Subject::Family(Box::new((*fam).clone()))))
            },
        }
    }

    fn lazy(
        id: impl Into<String>,
        anchor: &str,
        expected: Expected,
        f: impl Fn() -> Result<MaximalFamily> + Send + Sync + 'static,
    ) -> Claim {
        Claim {
            id: id.into(),
            anchor: anchor.to_string(),
            expected,
            build: Arc::new(move || Ok(Subject::Family(Box::new(f()?)))),
        }
    }

    fn hunt(id: &str, anchor: &str, f: impl Fn() -> Result<HuntReport> + Send + Sync + 'static) -> Claim {
        Claim {
            id: id.to_string(),
            anchor: anchor.to_string(),
            expected: Expected::Open,
            build: Arc::new(move || Ok(Subject::Hunt(f()?))),
        }
    }

    pub fn build(&self) -> Result<Subject> {
        (self.build)()
    }

    /// Builds the family, for claims that are families.
    pub fn build_family(&self) -> Result<MaximalFamily> {
        match self.build()? {
            Subject::Family(f) => Ok(*f),
            Subject::Hunt(_) => Err(Error::BadParameter(format!("{} is a hunter, not a family", self.id))),
        }
    }
}

fn easy(kind: EasyKind) -> Result<Vec<Claim>> {
    Ok(easy_maximals(&kind, EASY_VARIANTS, DEFAULT_SEED)?.into_iter().map(Claim::family).collect())
}

fn assoc_id(case: AssocCase) -> String {
    match case {
        AssocCase::OneA { p, q, k0, k1 } if k1 == 0 => format!("thm4.4.1a.M:{p},{q}.e{k0}"),
        AssocCase::OneA { p, q, k0, k1 } => format!("thm4.4.1a.M:{p},{q}.e{k0},{k1}"),
        AssocCase::OneB { p } => format!("thm4.4.1b.M:{p},{p}"),
        AssocCase::TwoA { n, k } => format!("thm4.4.2a.Q:{n}.k{k}"),
        AssocCase::TwoB { n } => format!("thm4.4.2b.Q:{n}"),
        AssocCase::TwoC { n, r } => format!("thm4.4.2c.Q:{n}.r{r}"),
    }
}

/// All claims in their fixed order. Ids are unique.
pub fn registry() -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    out.extend(easy(EasyKind::Kaplansky)?);
    for t in [Scalar::ONE, Scalar::from_int(2), Scalar::from_int(-2)] {
        out.extend(easy(EasyKind::Dt(t))?);
    }
    for (p, q) in [(1, 1), (2, 1)] {
        out.extend(easy(EasyKind::Superform(p, q))?);
    }
    for flavor in [Flavor::Transpose { n: 2 }, Flavor::Orthosymplectic { n: 1, m: 1 }] {
        let id = match flavor {
            Flavor::Transpose { n } => format!("thm4.3.p:{n}"),
            Flavor::Orthosymplectic { n, m } => format!("thm4.3.osp:{n},{m}"),
        };
        out.push(Claim::lazy(id, "B = H(A, *)", Expected::Maximal, move || hermitian_maximal_in_plus(flavor)));
    }
    for case in [
        AssocCase::OneA { p: 1, q: 1, k0: 1, k1: 0 },
        AssocCase::OneA { p: 2, q: 1, k0: 1, k1: 1 },
        AssocCase::OneA { p: 2, q: 2, k0: 1, k1: 0 },
        AssocCase::OneB { p: 2 },
        AssocCase::TwoA { n: 2, k: 1 },
        AssocCase::TwoB { n: 2 },
        AssocCase::TwoC { n: 2, r: 1 },
    ] {
        out.push(Claim::lazy(assoc_id(case), "B = C⁺, C maximal associative", Expected::Maximal, move || {
            let mut f = assoc_maximal_family(case)?;
            f.id = assoc_id(case);
            Ok(f)
        }));
    }
    for case in [
        HermCase::I1 { i: 2, j: 2 },
        HermCase::II1 { s1: 1, s2: 2, s3: 0 },
        HermCase::I2 { i: 1, j: 1, k: 1, l: 0 },
        HermCase::II2 { r1: 1, r2: 1, s4: 1, s5: 0 },
    ] {
        let id = match case {
            HermCase::I1 { i, j } => format!("thm5.2.i.p:{}", i + j),
            HermCase::I2 { i, j, k, l } => format!("thm5.2.i.osp:{},{}", i + j, k + l),
            HermCase::II1 { s1, s2, s3 } => format!("thm5.2.ii.p:{}", s1 + s2 + s3),
            HermCase::II2 { r1, r2, s4, s5 } => format!("thm5.2.ii.osp:{},{}", r1 + 2 * r2, s4 + s5),
        };
        out.push(Claim::lazy(id, "B = H(C, *), C maximal *-stable", Expected::Maximal, move || {
            herm_maximal_family(case)
        }));
    }
    out.push(Claim::lazy("ex4.3", "B′ = A, B not semisimple", Expected::Maximal, nonss_example_m11));
    out.push(Claim::lazy("ex5.3", "B′ = A, radical = odd part", Expected::Maximal, nonss_example_osp12));
    out.extend(negative_controls()?.into_iter().map(Claim::family));
    for m in [2usize, 3] {
        for t in embedding_parameters(m) {
            let id = format!("q5.1.m:{m}.t:{t}");
            out.push(Claim::lazy(id, "is D_t maximal in H(End V, *)?", Expected::Open, move || {
                dt_in_hermitian(m, &t)
            }));
        }
    }
    out.push(Claim::hunt("q4.3.hunt.M:1,1.p5", "other non-semisimple maximals in A⁺ with B′ = A?", || hunt_m11(5)));
    out.push(Claim::hunt("q5.3.hunt.osp:1,1.p5", "other non-semisimple maximals in H(A, *) with B′ = A?", || {
        hunt_osp12(5)
    }));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Evidence,
    Skipped,
    Error,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Evidence => "EVIDENCE",
            Status::Skipped => "SKIPPED",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub anchor: String,
    pub expected: Expected,
    pub status: Status,
    pub reports: Vec<MaximalityReport>,
    pub hunt: Option<HuntReport>,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegistrySummary {
    pub modes: Vec<Mode>,
    pub results: Vec<ClaimResult>,
}

impl RegistrySummary {
    pub fn count(&self, s: Status) -> usize {
        self.results.iter().filter(|r| r.status == s).count()
    }

    /// True when some non-open claim failed or errored.
    pub fn failed(&self) -> bool {
        self.results.iter().any(|r| matches!(r.status, Status::Fail | Status::Error))
    }

    pub fn table(&self) -> String {
        let w = self.results.iter().map(|r| r.id.len()).max().unwrap_or(2).max(5);
        let mut s = format!("{:<w$}  {:<9} {:<11} {:>8}  detail\n", "claim", "status", "expected", "ms");
        for r in &self.results {
            s.push_str(&format!(
                "{:<w$}  {:<9} {:<11} {:>8}  {}\n",
                r.id,
                r.status.to_string(),
                format!("{:?}", r.expected),
                r.millis,
                r.detail
            ));
        }
        s.push_str(&format!(
            "{} claims: {} pass, {} fail, {} evidence, {} skipped, {} error\n",
            self.results.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Evidence),
            self.count(Status::Skipped),
            self.count(Status::Error)
        ));
        s
    }
}

/// Claims whose id matches the glob (all when `None`).
pub fn select(claims: Vec<Claim>, filter: Option<&str>) -> Result<Vec<Claim>> {
    let Some(f) = filter else { return Ok(claims) };
    let pat = glob::Pattern::new(f).map_err(|e| Error::Parse(format!("bad filter {f:?}: {e}")))?;
    Ok(claims.into_iter().filter(|c| pat.matches(&c.id)).collect())
}

/// Re-runs one witness: true when the recomputed closure dimension and
/// the generation flag match the recorded ones.
pub fn replay_witness(fam: &MaximalFamily, w: &Witness) -> Result<bool> {
    match w.source.strip_prefix("mod ") {
        None => {
            let x = parse_vector(&w.vector)?;
            let (gen, res) = generates(&fam.ambient, &fam.sub, &x);
            Ok(gen == w.generates && res.dim() == w.closure_dim)
        }
        Some(p) => {
            let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad witness source {:?}", w.source)))?;
            let jp = fam.ambient.reduce_mod_p(p)?;
            let x: Vec<Fp> = w
                .vector
                .iter()
                .map(|s| s.parse::<u64>().map(|r| Fp::new(r, p)).map_err(|_| Error::Parse(s.clone())))
                .collect::<Result<_>>()?;
            let bp = fam.sub.reduce_mod_p(p)?;
            let base = closure(&jp, &bp.basis()).span;
            let res = closure_extending(&jp, &Span::clone(&base), &[x]);
            Ok((res.dim() == jp.dim()) == w.generates && res.dim() == w.closure_dim)
        }
    }
}

fn run_family(claim: &Claim, fam: &MaximalFamily, modes: &[Mode]) -> (Status, Vec<MaximalityReport>, String) {
    let mut reports = Vec::new();
    let mut notes = Vec::new();
    for &mode in modes {
        let mode = match (claim.expected, mode) {
            (Expected::Open, Mode::ExhaustiveModP { .. }) => {
                notes.push("open claim: basis mode instead of modp".to_string());
                Mode::ComplementBasis
            }
            _ => mode,
        };
        if matches!(mode, Mode::ExhaustiveModP { .. }) && fam.codim() > REGISTRY_MODP_MAX_CODIM {
            notes.push(format!("{mode} skipped: codimension {} > {REGISTRY_MODP_MAX_CODIM}", fam.codim()));
            continue;
        }
        match maximality_check(&fam.ambient, &fam.sub, mode) {
            Ok(r) => reports.push(r),
            Err(e @ Error::BadPrime(..)) => return (Status::Error, reports, e.to_string()),
            Err(e) => notes.push(format!("{mode}: {e}")),
        }
    }
    let dims = format!("{:?} in {:?}", fam.sub.dims(), fam.ambient.dims());
    let verdicts: Vec<String> = reports.iter().map(|r| format!("{}={}", r.mode, r.verdict)).collect();
    let mut detail = format!("{dims} {}", verdicts.join(" "));
    if !notes.is_empty() {
        detail.push_str(&format!(" ({})", notes.join("; ")));
    }
    let any_cex = reports.iter().any(|r| r.verdict == Verdict::CounterexampleFound);
    let all_gen = !reports.is_empty() && reports.iter().all(|r| r.verdict == Verdict::AllGenerate);
    let status = match claim.expected {
        Expected::Open => Status::Evidence,
        Expected::Maximal if any_cex => Status::Fail,
        Expected::Maximal if all_gen => Status::Pass,
        Expected::Maximal => Status::Skipped,
        Expected::NotMaximal => {
            let replays = reports
                .iter()
                .filter_map(|r| r.counterexample())
                .all(|w| replay_witness(fam, w).unwrap_or(false));
            if any_cex && replays {
                Status::Pass
            } else if reports.is_empty() {
                Status::Skipped
            } else {
                Status::Fail
            }
        }
    };
    (status, reports, detail)
}

/// Runs one claim in the given modes.
pub fn run_claim(claim: &Claim, modes: &[Mode]) -> ClaimResult {
    let start = Instant::now();
    let (status, reports, hunt, detail) = match claim.build() {
        Err(e) => (Status::Error, Vec::new(), None, e.to_string()),
        Ok(Subject::Hunt(h)) => {
            let detail = format!(
                "{} closed graded subalgebras of codim ≤ {} over F_{}; {} with B′ = A, maximal, non-semisimple",
                h.subalgebras_examined,
                h.max_codim,
                h.p,
                h.found.len()
            );
            (Status::Evidence, Vec::new(), Some(h), detail)
        }
        Ok(Subject::Family(fam)) => {
            let (s, r, d) = run_family(claim, &fam, modes);
            (s, r, None, d)
        }
    };
    ClaimResult {
        id: claim.id.clone(),
        anchor: claim.anchor.clone(),
        expected: claim.expected,
        status,
        reports,
        hunt,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

/// Runs every selected claim in parallel; results keep registry order.
pub fn run_registry(filter: Option<&str>, modes: &[Mode]) -> Result<RegistrySummary> {
    let claims = select(registry()?, filter)?;
    let results = claims.par_iter().map(|c| run_claim(c, modes)).collect();
    Ok(RegistrySummary { modes: modes.to_vec(), results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn ids_are_unique_and_cover_every_theorem() {
        let claims = registry().unwrap();
        let ids: BTreeSet<&str> = claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), claims.len());
        for prefix in ["thm2.1.i.", "thm2.1.ii.", "thm2.1.iii.", "thm4.3.", "thm4.4.1a", "thm4.4.1b", "thm4.4.2a", "thm4.4.2b", "thm4.4.2c", "thm5.2.i.", "thm5.2.ii.", "ex4.3", "ex5.3", "q5.1.", "neg."] {
            assert!(ids.iter().any(|i| i.starts_with(prefix)), "{prefix}");
        }
        assert!(ids.contains("thm2.1.i.K3"));
        assert!(ids.contains("thm5.2.ii.p:3"));
        assert!(ids.contains("thm4.4.1a.M:2,2.e1"));
    }

    #[test]
    fn filter_is_a_glob() {
        let c = select(registry().unwrap(), Some("thm2.1.ii.Dt:1*")).unwrap();
        assert_eq!(c.len(), 5);
        assert!(select(registry().unwrap(), Some("[")).is_err());
    }

    #[test]
    fn easy_claims_pass_mod_5() {
        let s = run_registry(Some("thm2.1.*"), &[Mode::ExhaustiveModP { p: 5 }]).unwrap();
        assert!(s.results.iter().all(|r| r.status == Status::Pass), "{}", s.table());
    }

    #[test]
    fn negative_controls_pass_as_controls() {
        let s = run_registry(Some("neg.*"), &[Mode::ComplementBasis]).unwrap();
        assert_eq!(s.results.len(), 3);
        assert!(s.results.iter().all(|r| r.status == Status::Pass), "{}", s.table());
    }

    #[test]
    fn open_claims_are_evidence() {
        let s = run_registry(Some("q5.1.m:2*"), &[Mode::ExhaustiveModP { p: 5 }]).unwrap();
        assert_eq!(s.results.len(), 2);
        assert!(s.results.iter().all(|r| r.status == Status::Evidence));
        assert!(!s.failed());
    }

    #[test]
    fn bad_prime_is_an_error() {
        let s = run_registry(Some("thm2.1.i.K3"), &[Mode::ExhaustiveModP { p: 2 }]).unwrap();
        assert_eq!(s.results[0].status, Status::Error);
        assert!(s.failed());
    }
}
