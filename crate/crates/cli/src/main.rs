//! `superjordan`: build algebras, check identities, run closures, maximality
//! checks and the claims registry.
//!
//! Exit codes: 0 pass, 1 a mathematical check failed, 2 usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use superjordan::algebra::Superalgebra;
use superjordan::axioms::{check_associative, check_jordan_super, check_superinvolution, grassmann_envelope_check};
use superjordan::catalog::{build, catalog_list, endomorphism_algebra, CatalogEntry};
use superjordan::generation::{closure, maximality_check, Mode, Verdict};
use superjordan::io::{read_algebra, write_algebra, AlgebraFile, ReportFile};
use superjordan::osp::{
    check_rep, embed_dt, format_poly, minimal_poly_xyyx, verify_embedding_claims, vm_form, vm_module,
};
use superjordan::registry::{registry, run_registry, select};
use superjordan::{Error, GradedSubspace, Scalar};

#[derive(Parser)]
#[command(name = "superjordan", version, about = "Exact toolkit for simple special Jordan superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog grammar or build an algebra file.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check an identity on an algebra file.
    Check {
        what: CheckKind,
        file: PathBuf,
        /// Generators of the Grassmann algebra for `envelope`.
        #[arg(long, default_value_t = 2)]
        grassmann: usize,
    },
    /// Dimension of the subalgebra generated by some elements.
    Closure {
        #[arg(long)]
        algebra: PathBuf,
        /// An element: `[c1,c2,...]` coordinates or a label sum like `e12+e21`.
        #[arg(long = "span", required = true)]
        span: Vec<String>,
        /// Associative closure (inside the matrix realization when the
        /// algebra itself is not associative).
        #[arg(long)]
        assoc: bool,
        /// Print an echelon basis of the closure.
        #[arg(long)]
        dump: bool,
    },
    /// Maximality check of a subalgebra.
    Maximal {
        #[arg(long, required_unless_present = "claim", conflicts_with = "claim")]
        algebra: Option<PathBuf>,
        #[arg(long = "sub", requires = "algebra")]
        sub: Vec<String>,
        /// A registered claim instead of `--algebra`/`--sub`.
        #[arg(long)]
        claim: Option<String>,
        /// `basis`, `random[:<trials>[:<seed>]]` or `modp:<p>`.
        #[arg(long, default_value = "basis")]
        mode: String,
        /// Write the report file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run a report file and compare verdict and witnesses.
    Replay {
        report: PathBuf,
        #[arg(long, required_unless_present = "claim", conflicts_with = "claim")]
        algebra: Option<PathBuf>,
        #[arg(long)]
        claim: Option<String>,
    },
    /// The claims registry.
    Registry {
        #[command(subcommand)]
        action: RegistryAction,
    },
    /// osp(1,2) modules.
    Osp {
        #[command(subcommand)]
        action: OspAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Build {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Jordan,
    Associative,
    Superinvolution,
    Envelope,
}

#[derive(Subcommand)]
enum RegistryAction {
    Run {
        #[arg(long)]
        filter: Option<String>,
        /// Repeatable; defaults to `basis`.
        #[arg(long = "mode")]
        modes: Vec<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    List {
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Subcommand)]
enum OspAction {
    Vm {
        #[arg(long)]
        m: usize,
        /// Print the invariant form.
        #[arg(long)]
        form: bool,
        /// Verify the embedding of D_t for this t.
        #[arg(long, allow_hyphen_values = true)]
        embed: Option<String>,
    },
}

/// A failed check (exit 1) or a usage error (exit 2).
enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    if let Some(n) = std::env::var("SUPERJORDAN_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Catalog { action: CatalogAction::List } => {
            for (spec, what) in catalog_list() {
                println!("{spec:<20} {what}");
            }
            Ok(())
        }
        Command::Catalog { action: CatalogAction::Build { spec, out } } => {
            let e = build(&spec)?;
            match out {
                Some(path) => {
                    write_algebra(&path, &e)?;
                    println!("{}: dim {} {:?} -> {}", e.algebra.name(), e.algebra.dim(), e.algebra.dims(), path.display());
                }
                None => println!("{}", AlgebraFile::from_entry(&e).to_canonical_json()?),
            }
            Ok(())
        }
        Command::Check { what, file, grassmann } => cmd_check(what, &read_algebra(&file)?, grassmann),
        Command::Closure { algebra, span, assoc, dump } => cmd_closure(&read_algebra(&algebra)?.algebra, &span, assoc, dump),
        Command::Maximal { algebra, sub, claim, mode, out } => {
            let mode: Mode = mode.parse()?;
            let (id, j, b) = subject(algebra, &sub, claim)?;
            let start = Instant::now();
            let report = maximality_check(&j, &b, mode)?;
            let file = ReportFile::new(id, &b, report, start.elapsed().as_millis());
            print_report(&file);
            if let Some(path) = out {
                std::fs::write(&path, file.to_canonical_json()?).map_err(Error::from)?;
            }
            match file.report.verdict {
                Verdict::CounterexampleFound => Err(Failure::Check("CounterexampleFound".into())),
                _ => Ok(()),
            }
        }
        Command::Replay { report, algebra, claim } => {
            let file = ReportFile::from_json(&std::fs::read_to_string(&report).map_err(Error::from)?)?;
            let j = match (algebra, claim) {
                (Some(p), _) => read_algebra(&p)?.algebra,
                (None, Some(id)) => (*claim_family(&id)?.ambient).clone(),
                (None, None) => return Err(Failure::Usage("need --algebra or --claim".into())),
            };
            if file.replay(&j)? {
                println!("replay {}: {} reproduced", file.claim, file.verdict);
                Ok(())
            } else {
                Err(Failure::Check(format!("replay {}: verdict or witnesses differ", file.claim)))
            }
        }
        Command::Registry { action: RegistryAction::List { filter } } => {
            for c in select(registry()?, filter.as_deref())? {
                println!("{:<32} {:<11} {}", c.id, format!("{:?}", c.expected), c.anchor);
            }
            Ok(())
        }
        Command::Registry { action: RegistryAction::Run { filter, modes, json } } => {
            let modes: Vec<Mode> = if modes.is_empty() {
                vec![Mode::ComplementBasis]
            } else {
                modes.iter().map(|m| m.parse()).collect::<Result<_, _>>()?
            };
            let summary = run_registry(filter.as_deref(), &modes)?;
            if summary.results.is_empty() {
                return Err(Failure::Usage(format!("no claim matches {:?}", filter.unwrap_or_default())));
            }
            print!("{}", summary.table());
            if let Some(path) = json {
                let v = serde_json::to_value(&summary).map_err(Error::from)?;
                std::fs::write(&path, serde_json::to_string(&v).map_err(Error::from)?).map_err(Error::from)?;
            }
            if summary.failed() {
                Err(Failure::Check("registry: some claims failed".into()))
            } else {
                Ok(())
            }
        }
        Command::Osp { action: OspAction::Vm { m, form, embed } } => cmd_vm(m, form, embed),
    }
}

fn claim_family(id: &str) -> Result<superjordan::families::MaximalFamily, Failure> {
    let claims = registry()?;
    let c = claims
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Failure::Usage(format!("no claim {id:?} (see `registry list`)")))?;
    Ok(c.build_family()?)
}

fn subject(
    algebra: Option<PathBuf>,
    sub: &[String],
    claim: Option<String>,
) -> Result<(String, Superalgebra, GradedSubspace<Scalar>), Failure> {
    if let Some(id) = claim {
        let fam = claim_family(&id)?;
        return Ok((id, (*fam.ambient).clone(), fam.sub));
    }
    let path = algebra.ok_or_else(|| Failure::Usage("need --algebra or --claim".into()))?;
    let j = read_algebra(&path)?.algebra;
    if sub.is_empty() {
        return Err(Failure::Usage("need at least one --sub element".into()));
    }
    let vs = sub.iter().map(|s| parse_element(&j, s)).collect::<Result<Vec<_>, _>>()?;
    let b = GradedSubspace::graded_hull(&(), j.parities(), &vs)?;
    Ok((path.display().to_string(), j, b))
}

fn print_report(file: &ReportFile) {
    let r = &file.report;
    println!("{} ({}): {}", file.claim, r.mode, r.verdict);
    println!("  B {:?} in J {:?}, {} vectors tested, {} do not generate", r.sub_dims, r.ambient_dims, r.vectors_tested, r.counterexamples);
    if let Some(w) = r.counterexample() {
        println!("  witness [{}] ({}) closes to dim {}", w.vector.join(","), w.source, w.closure_dim);
    }
    for n in &r.notes {
        println!("  note: {n}");
    }
}

/// `[1,0,-1/2]` or a label sum such as `e12+e21`, `2*e11-1/2*x`.
fn parse_element(a: &Superalgebra, s: &str) -> Result<Vec<Scalar>, Failure> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let v: Vec<Scalar> = inner.split(',').map(|c| c.trim().parse()).collect::<Result<_, _>>()?;
        if v.len() != a.dim() {
            return Err(Failure::Usage(format!("{s}: expected {} coordinates", a.dim())));
        }
        return Ok(v);
    }
    let mut v = a.zero();
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        // a sign splits terms unless it follows '*' or '/' or opens the string
        if (ch == '+' || ch == '-') && i > 0 && !s[..i].ends_with(['*', '/']) {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    for term in terms {
        let term = term.trim();
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-Scalar::ONE, b),
            None => (Scalar::ONE, term.strip_prefix('+').unwrap_or(term)),
        };
        let (coef, label) = match body.rsplit_once('*') {
            Some((c, l)) => (c.trim().parse::<Scalar>()?, l.trim()),
            None => (Scalar::ONE, body.trim()),
        };
        let i = a
            .index_of(label)
            .ok_or_else(|| Failure::Usage(format!("unknown basis label {label:?} (have {})", a.labels().join(" "))))?;
        v[i] += &(&sign * &coef);
    }
    Ok(v)
}

fn cmd_check(what: CheckKind, e: &CatalogEntry, grassmann: usize) -> Outcome {
    let rep = match what {
        CheckKind::Jordan => check_jordan_super(&e.algebra),
        CheckKind::Associative => check_associative(&e.algebra),
        CheckKind::Envelope => grassmann_envelope_check(&e.algebra, grassmann)?,
        CheckKind::Superinvolution => {
            let s = e
                .superinvolution
                .as_ref()
                .ok_or_else(|| Failure::Usage("the file has no superinvolution block".into()))?;
            check_superinvolution(s)
        }
    };
    if rep.passed() {
        println!("{}", rep.summary());
        Ok(())
    } else {
        Err(Failure::Check(rep.summary()))
    }
}

fn cmd_closure(a: &Superalgebra, span: &[String], assoc: bool, dump: bool) -> Outcome {
    let gens = span.iter().map(|s| parse_element(a, s)).collect::<Result<Vec<_>, _>>()?;
    let associative = check_associative(a).passed();
    let res = if assoc && !associative {
        let r = a
            .realization()
            .ok_or_else(|| Failure::Usage(format!("{} is not associative and has no matrix realization", a.name())))?;
        let end = endomorphism_algebra("End", &r.module_parities);
        let images: Vec<Vec<Scalar>> = gens.iter().map(|g| r.apply(g).into_entries()).collect();
        println!("associative closure inside End of the {}-dimensional module (dim {})", r.module_dim(), end.dim());
        closure(end.table(), &images)
    } else {
        closure(a.table(), &gens)
    };
    println!("closure dim {} of {} ({} rounds, {} products)", res.dim(), if assoc && !associative { a.realization().map(|r| r.module_dim().pow(2)).unwrap_or(0) } else { a.dim() }, res.rounds, res.products_computed);
    if dump {
        for row in res.span.rows() {
            println!("  [{}]", row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
        }
    }
    Ok(())
}

fn cmd_vm(m: usize, form: bool, embed: Option<String>) -> Outcome {
    let module = vm_module(m);
    println!("V({m}): dim {}, parities {:?}", module.dim(), module.parities().iter().map(|p| p.bit()).collect::<Vec<_>>());
    for (name, rho) in ["h", "e", "f", "x", "y"].iter().zip(&module.rho) {
        println!("rho_{name} =\n{rho}");
    }
    println!("minimal polynomial of xy - yx: {}", format_poly(&minimal_poly_xyyx(&module)));
    let rep = check_rep(&module);
    println!("{}", rep.summary());
    if !rep.passed() {
        return Err(Failure::Check("representation check failed".into()));
    }
    if form {
        let f = vm_form(&module);
        println!("invariant form (supersymmetric: {}, superskew: {}, even: {}) =\n{}", f.is_supersymmetric(), f.is_superskew(), f.is_even(), f.gram);
    }
    if let Some(t) = embed {
        let t: Scalar = t.parse()?;
        let emb = embed_dt(m, &t)?;
        let gens: Vec<Vec<Scalar>> = (0..4).map(|k| emb.map.image(k)).collect();
        let dim = closure(emb.end.table(), &gens).dim();
        println!("D_{t} -> {}: closure dim {dim} of {}", emb.end.name(), emb.end.dim());
        let rep = verify_embedding_claims(m)?;
        println!("{}", rep.summary());
        if !rep.passed() {
            return Err(Failure::Check("embedding claims failed".into()));
        }
    }
    Ok(())
}
