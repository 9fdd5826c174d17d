use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use f1forge::acceptance::{run_suite, suite_names, CriterionReport, DEFAULT_SEED};
use f1forge::delta::{durov_check, normalize, term_equal, Equality};
use f1forge::differentials::{partial_n, truncated_presentation};
use f1forge::genring::axiom_suite;
use f1forge::rig::check_rig_axioms;
use f1forge::spectra::{Involution, Spectral, Spectrum};
use f1forge::zeta::{zeta_padic, zeta_real, LocalFactor, Mode};
use f1forge::{Error, GenRing, Report, Rig, RuleSet, Term};
use serde::Serialize;
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "f1forge", version, about = "Generalized rings, the δ-calculus, zeta volumes and spectra")]
struct Cli {
    /// Human-readable text instead of one JSON record per line.
    #[arg(long, global = true)]
    human: bool,
    /// Seed for every randomized computation.
    #[arg(long, global = true, env = "F1FORGE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zeta volumes at a prime or at the real place.
    #[command(subcommand)]
    Zeta(ZetaCmd),
    /// Tree-pair terms of the δ-calculus.
    #[command(subcommand)]
    Term(TermCmd),
    /// The arithmetic derivative of n in the prime basis.
    Dlog { n: u64 },
    /// Presentations of the bracket group.
    #[command(subcommand)]
    Omega(OmegaCmd),
    /// Randomized law checks.
    #[command(subcommand)]
    Axioms(AxiomsCmd),
    /// Ideals, primes and topology of a finite generalized ring.
    #[command(subcommand)]
    Spec(SpecCmd),
    /// Runs an acceptance suite by name or number, or `all`.
    Suite {
        name: String,
        /// Include wall-clock times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum ZetaCmd {
    Padic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        n: u64,
        /// exact or mc
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
    Real {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        n: u64,
        /// closed, quad or mc
        #[arg(long, default_value = "closed")]
        mode: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
}

#[derive(Args)]
struct RuleFlags {
    /// Allow the total-commutativity move.
    #[arg(long)]
    total_comm: bool,
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
}

impl RuleFlags {
    fn rules(&self) -> RuleSet {
        if self.total_comm {
            RuleSet::with_total_comm()
        } else {
            RuleSet::base()
        }
    }
}

#[derive(Subcommand)]
enum TermCmd {
    /// Normal form under the directed rules.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        rules: RuleFlags,
    },
    /// Bounded equality search between two terms.
    Eq {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        rules: RuleFlags,
    },
    /// Integer matrix of a term.
    Eval { input: PathBuf },
    /// Derives δ₁ = δ₂ with total commutativity (or searches without it).
    Durov {
        /// Search with the base rules only.
        #[arg(long)]
        base: bool,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum OmegaCmd {
    Present {
        #[arg(long)]
        bound: u64,
        /// Also impose `{ca, cb} = c{a, b}`.
        #[arg(long)]
        with_homogeneity: bool,
    },
}

#[derive(Subcommand)]
enum AxiomsCmd {
    /// Checks a generalized ring (`G:nat`, `F{C2}`, ...) or a bare rig (`nat`, `zmod:6`, ...).
    Check {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum SpecCmd {
    Enumerate {
        #[arg(long)]
        ring: String,
        /// native or swap
        #[arg(long, default_value = "native")]
        involution: String,
    },
}

/// Output sink plus the exit status accumulated while running.
struct Out {
    human: bool,
    lines: Vec<String>,
    failed: bool,
}

impl Out {
    fn record<T: Serialize>(&mut self, value: &T, human: impl FnOnce() -> String) -> Result<()> {
        let line = if self.human { human() } else { serde_json::to_string(value)? };
        self.lines.push(line);
        Ok(())
    }
}

fn read_term(path: &Path) -> Result<Term> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(Term::from_json(&value)?)
}

fn factor_line(f: &LocalFactor) -> String {
    let mut s = format!(
        "{} s={} n={} mode={:?}: value {:.15} limit {:.15} |err| {:.3e}",
        f.place, f.s, f.n, f.mode, f.value, f.limit, f.abs_err_vs_limit
    );
    if let Some(e) = &f.exact {
        s += &format!(" exact {e}");
    }
    if let Some(se) = f.std_err {
        s += &format!(" std_err {se:.3e}");
    }
    s
}

fn report_lines(out: &mut Out, report: &Report) -> Result<()> {
    for law in &report.laws {
        out.failed |= !law.passed;
        let record = json!({"subject": report.subject, "law": law.law, "trials": law.trials, "passed": law.passed,
                            "counterexample": law.counterexample});
        out.record(&record, || {
            let status = if law.passed { "PASS" } else { "FAIL" };
            let w = law.counterexample.as_deref().map(|w| format!(" ({w})")).unwrap_or_default();
            format!("{status} {} {} [{} trials]{w}", report.subject, law.law, law.trials)
        })?;
    }
    Ok(())
}

fn spectrum_text(s: &Spectrum) -> String {
    let set = |v: &[String]| format!("{{{}}}", v.join(", "));
    let mut lines = vec![format!("ring {} (involution {:?}), {} scalars", s.ring, s.involution, s.carrier.len())];
    lines.push(format!("ideals: {}", s.ideals.iter().map(|i| set(&i.elements)).collect::<Vec<_>>().join(" ")));
    for (k, p) in s.primes.iter().enumerate() {
        let sym = if p.symmetric { " symmetric" } else { "" };
        lines.push(format!("prime {k}: {}{sym}", set(&p.ideal.elements)));
    }
    for (k, p) in s.symmetric_primes.iter().enumerate() {
        lines.push(format!("symmetric prime {k}: {}", set(&p.ideal.elements)));
    }
    let sets = |v: &[Vec<usize>]| v.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join(" ");
    lines.push(format!("closed sets: {}", sets(&s.closed_sets)));
    lines.push(format!("symmetric closed sets: {}", sets(&s.symmetric_closed_sets)));
    for d in &s.basic_opens {
        lines.push(format!("D({}) = {:?}", d.f, d.points));
    }
    let pi: Vec<String> = s.pi.iter().map(|q| q.map_or("-".into(), |q| q.to_string())).collect();
    lines.push(format!("pi: [{}]", pi.join(", ")));
    for c in &s.checks {
        lines.push(format!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.law));
    }
    lines.join("\n")
}

fn criterion_record(r: &CriterionReport, timings: bool) -> serde_json::Value {
    let mut v = json!({"id": r.id, "suite": r.suite, "title": r.title, "passed": r.passed, "checks": r.checks});
    if timings {
        v["seconds"] = json!(r.seconds);
        v["budget_seconds"] = json!(r.budget_seconds);
    }
    v
}

fn run(cli: &Cli, out: &mut Out) -> Result<()> {
    let seed = cli.seed;
    match &cli.command {
        Command::Zeta(z) => {
            let f = match z {
                ZetaCmd::Padic { p, s, n, mode, samples } => {
                    zeta_padic(*p, *s, *n, Mode::parse(mode)?, *samples, seed)?
                }
                ZetaCmd::Real { s, n, mode, samples } => zeta_real(*s, *n, Mode::parse(mode)?, *samples, seed)?,
            };
            out.record(&f, || factor_line(&f))?;
        }
        Command::Term(t) => match t {
            TermCmd::Reduce { input, rules } => {
                let term = read_term(input)?;
                let nf = normalize(&term, &rules.rules(), rules.budget)?;
                let record = json!({"input": term.to_string(), "normal_form": nf.to_json(), "display": nf.to_string(),
                                    "size": nf.size(), "eval": nf.eval()});
                out.record(&record, || format!("{term}\n=> {nf}"))?;
            }
            TermCmd::Eq { left, right, rules } => {
                let (a, b) = (read_term(left)?, read_term(right)?);
                let eq = term_equal(&a, &b, &rules.rules(), rules.budget)?;
                out.failed = !matches!(eq, Equality::Equal { .. });
                out.record(&eq, || match &eq {
                    Equality::Equal { trace } => {
                        let steps: Vec<String> = trace.iter().map(|s| format!("  {}: {}", s.rule, s.term)).collect();
                        format!("equal\n{}", steps.join("\n"))
                    }
                    Equality::NotEqual { left, right } => format!("not equal: {left:?} vs {right:?}"),
                    Equality::NotIdentified { explored, exhausted } => {
                        format!(
                            "not identified after {explored} states{}",
                            if *exhausted { " (search space exhausted)" } else { "" }
                        )
                    }
                })?;
            }
            TermCmd::Eval { input } => {
                let term = read_term(input)?;
                let e = term.eval();
                out.record(&json!({"term": term.to_string(), "eval": e}), || {
                    e.iter()
                        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                        .collect::<Vec<_>>()
                        .join("\n")
                })?;
            }
            TermCmd::Durov { base, budget } => {
                let rules = if *base { RuleSet::base() } else { RuleSet::with_total_comm() };
                let trace = durov_check(&rules, *budget)?;
                out.failed = !trace.identified;
                out.record(&trace, || {
                    let mut lines = vec![if trace.identified {
                        "δ1 = δ2".to_string()
                    } else {
                        format!("δ1 and δ2 not identified ({} states explored)", trace.explored)
                    }];
                    lines.extend(trace.steps.iter().map(|s| format!("  {}: {}", s.rule, s.term)));
                    lines.join("\n")
                })?;
            }
        },
        Command::Dlog { n } => {
            let d = partial_n(*n);
            out.record(&json!({"n": n, "d": d.to_string()}), || d.to_string())?;
        }
        Command::Omega(OmegaCmd::Present { bound, with_homogeneity }) => {
            let p = truncated_presentation(*bound, *with_homogeneity)?;
            out.failed = !p.well_defined;
            out.record(&p, || {
                let free = p.factors.iter().filter(|&&f| f == 0).count();
                let mut parts: Vec<String> = p.factors.iter().filter(|&&f| f != 0).map(|f| format!("Z/{f}")).collect();
                if free > 0 {
                    parts.push(if free == 1 { "Z".into() } else { format!("Z^{free}") });
                }
                let group = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
                format!(
                    "B={} generators={} relations={} group={} image_rank={} well_defined={}",
                    p.bound,
                    p.generators.len(),
                    p.relations,
                    group,
                    p.image_rank,
                    p.well_defined
                )
            })?;
        }
        Command::Axioms(AxiomsCmd::Check { ring, trials }) => {
            let report = match GenRing::parse(ring) {
                Ok(g) => axiom_suite(&g, *trials, seed),
                Err(_) => {
                    check_rig_axioms(&Rig::parse(ring).map_err(|_| Error::UnknownRing(ring.clone()))?, *trials, seed)
                }
            };
            report_lines(out, &report)?;
        }
        Command::Spec(SpecCmd::Enumerate { ring, involution }) => {
            let spec = Spectral::new(&GenRing::parse(ring)?, Involution::parse(involution)?)?.enumerate()?;
            out.failed = !spec.passed();
            out.record(&spec, || spectrum_text(&spec))?;
        }
        Command::Suite { name, timings } => {
            let names: Vec<String> =
                if name == "all" { suite_names().into_iter().map(String::from).collect() } else { vec![name.clone()] };
            for n in names {
                let r = run_suite(&n, seed)?;
                out.failed |= !r.passed;
                out.record(&criterion_record(&r, *timings), || {
                    let mut s = format!(
                        "{} criterion {} [{}] {}",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.id,
                        r.suite,
                        r.title
                    );
                    if *timings {
                        s += &format!(" ({:.2}s of {:.0}s)", r.seconds, r.budget_seconds);
                    }
                    for c in r.checks.iter().filter(|c| !c.passed) {
                        s += &format!("\n    {}: {}", c.law, c.counterexample.as_deref().unwrap_or(""));
                    }
                    s
                })?;
            }
        }
    }
    Ok(())
}

/// Bad input exits 2; failures of a computation exit 1.
fn is_usage_error(e: &anyhow::Error) -> bool {
    if e.downcast_ref::<std::io::Error>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<Error>(),
        Some(
            Error::Domain(_)
                | Error::Parse(_)
                | Error::UnknownRig(_)
                | Error::UnknownRing(_)
                | Error::Malformed(_)
                | Error::Term(_)
                | Error::Dimension { .. }
                | Error::Carrier { .. }
                | Error::InvalidBijection(_)
                | Error::NotEnumerable(_)
                | Error::Monoid(_)
        )
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out { human: cli.human, lines: Vec::new(), failed: false };
    let result = run(&cli, &mut out);
    let mut text = out.lines.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| anyhow!(e)),
    };
    match result.and(written) {
        Ok(()) if out.failed => ExitCode::from(1),
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}
