//! The acceptance suites: one named check per criterion, each reporting its
//! sub-checks, its runtime and whether it stayed within its time budget.

use crate::delta::{apply_random_rule, durov_check, normalize, term_equal, term_from_integer, Equality, RuleSet, Term};
use crate::differentials::{bracket, check_identities, partial_n, truncated_presentation, OmegaElem};
use crate::error::{Error, Result};
use crate::finite_ring::TableRig;
use crate::genring::{axiom_suite, check_underlying_agrees, field_with_one_element, make_fm, make_g, Monoid};
use crate::genring::{Elem, GenRing};
use crate::norms::{
    abs_p, fullness_witness_padic, fullness_witness_real, norm_padic, norm_real, tameness_padic, tameness_real,
};
use crate::report::LawReport;
use crate::rig::{Rig, RigElem};
use crate::spectra::{localize, Involution, Spectral};
use crate::zeta::{zeta_padic, zeta_real, Mode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use std::sync::Arc;
use std::time::Instant;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub suite: String,
    pub title: String,
    pub passed: bool,
    pub seconds: f64,
    pub budget_seconds: f64,
    pub checks: Vec<LawReport>,
}

struct Suite {
    id: u8,
    name: &'static str,
    title: &'static str,
    budget: f64,
    run: fn(u64) -> Result<Vec<LawReport>>,
}

const SUITES: [Suite; 9] = [
    Suite {
        id: 1,
        name: "zeta-convergence",
        title: "p-adic zeta volumes converge to the local factor",
        budget: 5.0,
        run: zeta_convergence,
    },
    Suite { id: 2, name: "zeta-mc", title: "p-adic exact value against Monte Carlo", budget: 60.0, run: zeta_mc },
    Suite {
        id: 3,
        name: "zeta-real",
        title: "real zeta volumes: closed form, limit and quadrature",
        budget: 10.0,
        run: zeta_real_suite,
    },
    Suite { id: 4, name: "axioms", title: "generalized-ring axiom suite", budget: 30.0, run: axioms },
    Suite {
        id: 5,
        name: "delta-soundness",
        title: "δ-calculus rewrites preserve evaluation",
        budget: 30.0,
        run: delta_soundness,
    },
    Suite { id: 6, name: "durov", title: "total commutativity collapses δ₁ and δ₂", budget: 10.0, run: durov },
    Suite {
        id: 7,
        name: "differentials",
        title: "arithmetic differential identities and presentation",
        budget: 20.0,
        run: differentials,
    },
    Suite {
        id: 8,
        name: "spectra",
        title: "spectra agree with the ordinary prime spectrum",
        budget: 20.0,
        run: spectra,
    },
    Suite { id: 9, name: "norms", title: "fullness and tameness recover the norms", budget: 10.0, run: norms },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Runs one suite by name or by number.
pub fn run_suite(name: &str, seed: u64) -> Result<CriterionReport> {
    let suite = SUITES.iter().find(|s| s.name == name || s.id.to_string() == name).ok_or_else(|| {
        Error::Domain(format!("unknown suite `{name}` (expected one of: {})", suite_names().join(", ")))
    })?;
    let start = Instant::now();
    let mut checks = (suite.run)(seed)?;
    let seconds = start.elapsed().as_secs_f64();
    checks.push(check("runtime", 1, seconds <= suite.budget, || format!("{seconds:.2}s exceeds {:.0}s", suite.budget)));
    Ok(CriterionReport {
        id: suite.id,
        suite: suite.name.to_string(),
        title: suite.title.to_string(),
        passed: checks.iter().all(|c| c.passed),
        seconds,
        budget_seconds: suite.budget,
        checks,
    })
}

pub fn run_all(seed: u64) -> Result<Vec<CriterionReport>> {
    SUITES.iter().map(|s| run_suite(s.name, seed)).collect()
}

fn check(name: impl Into<String>, trials: usize, ok: bool, why: impl FnOnce() -> String) -> LawReport {
    if ok {
        LawReport::pass(name, trials)
    } else {
        LawReport::fail(name, trials, why())
    }
}

/// The first failure among `trials` cases, if any.
fn first_failure<T>(cases: impl IntoIterator<Item = T>, f: impl Fn(&T) -> Option<String>) -> (usize, Option<String>) {
    let mut count = 0;
    for c in cases {
        count += 1;
        if let Some(w) = f(&c) {
            return (count, Some(w));
        }
    }
    (count, None)
}

fn law_from(name: &str, (trials, failure): (usize, Option<String>)) -> LawReport {
    match failure {
        None => LawReport::pass(name, trials),
        Some(w) => LawReport::fail(name, trials, w),
    }
}

fn zeta_convergence(seed: u64) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        for s in [2u32, 3, 4] {
            let errs: Vec<f64> = (1..=12)
                .map(|n| zeta_padic(p, s as f64, n, Mode::Exact, 0, seed).map(|f| f.abs_err_vs_limit))
                .collect::<Result<_>>()?;
            let last = errs[11];
            let monotone = errs.windows(2).all(|w| w[1] <= w[0]);
            out.push(check(format!("p={p} s={s}"), 12, last <= 1e-2 && monotone, || {
                format!("error at n=12 is {last:.3e}; errors {errs:?}")
            }));
        }
    }
    Ok(out)
}

fn zeta_mc(seed: u64) -> Result<Vec<LawReport>> {
    let exact = zeta_padic(2, 2.0, 8, Mode::Exact, 0, seed)?;
    let mc = zeta_padic(2, 2.0, 8, Mode::Mc, 1_000_000, seed)?;
    let se = mc.std_err.unwrap_or(f64::NAN);
    let dev = (mc.value - exact.value).abs();
    Ok(vec![check("p=2 s=2 n=8", 1_000_000, dev <= 4.0 * se, || {
        format!(
            "mc {} vs exact {} ({}), {:.2} standard errors",
            mc.value,
            exact.value,
            exact.exact.clone().unwrap_or_default(),
            dev / se
        )
    })])
}

fn zeta_real_suite(seed: u64) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    for n in [2u64, 10, 100, 1000] {
        let v = zeta_real(3.0, n, Mode::Closed, 0, seed)?.value;
        out.push(check(format!("s=3 n={n}"), 1, (v - 1.0).abs() <= 1e-9, || format!("value {v}")));
    }
    let v = zeta_real(2.0, 10_000, Mode::Closed, 0, seed)?.value;
    let target = (2.0 / std::f64::consts::PI).sqrt();
    out.push(check("s=2 n=10000", 1, (v - target).abs() <= 1e-3, || format!("value {v} vs {target}")));
    let mut worst = (0.0f64, String::new());
    for s in [1.5, 2.0, 3.0, 4.0] {
        for n in [2u64, 10, 100] {
            let c = zeta_real(s, n, Mode::Closed, 0, seed)?.value;
            let q = zeta_real(s, n, Mode::Quad, 0, seed)?.value;
            let rel = (c - q).abs() / c.abs();
            if rel > worst.0 {
                worst = (rel, format!("s={s} n={n}: closed {c} quadrature {q}"));
            }
        }
    }
    out.push(check("closed-vs-quadrature", 12, worst.0 <= 1e-9, || worst.1.clone()));
    Ok(out)
}

fn axioms(seed: u64) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    for name in ["nat", "int", "zmod:6", "bool-max", "trop-max"] {
        let rig = Rig::parse(name)?;
        for law in axiom_suite(&make_g(rig.clone()), 1000, seed).laws {
            out.push(LawReport { law: format!("G:{name} {}", law.law), ..law });
        }
        for law in check_underlying_agrees(&rig, 1000, seed).laws {
            out.push(LawReport { law: format!("U:{name}~G:{name} {}", law.law), ..law });
        }
    }
    Ok(out)
}

fn delta_soundness(seed: u64) -> Result<Vec<LawReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rules = RuleSet::with_total_comm();
    let mut rewrites = 0usize;
    let mut failure = None;
    let fresh = |rng: &mut ChaCha8Rng| {
        let n = rng.random_range(1..=3u8);
        let (ny, nx) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let pairs = rng.random_range(0..=8);
        Term::random(n, ny, nx, pairs, rng)
    };
    let mut t = fresh(&mut rng);
    let mut target = t.eval();
    let mut steps = 0;
    while rewrites < 10_000 && failure.is_none() {
        match apply_random_rule(&t, &rules, &mut rng) {
            Some((m, next)) => {
                rewrites += 1;
                steps += 1;
                if next.eval() != target {
                    failure = Some(format!("{} on {t} gave {next}", m.name()));
                }
                t = next;
            }
            None => steps = usize::MAX,
        }
        if steps >= 10 || t.size() > 40 {
            t = fresh(&mut rng);
            target = t.eval();
            steps = 0;
        }
    }
    let mut out = vec![law_from("random-rewrites", (rewrites, failure))];

    let ks: Vec<i64> = (-20..=20).collect();
    let pairs: Vec<(i64, i64)> = ks.iter().flat_map(|&a| ks.iter().map(move |&b| (a, b))).collect();
    let int = |k: i64| term_from_integer(k);
    out.push(law_from(
        "integer-addition",
        first_failure(&pairs, |&&(a, b)| {
            let s = int(a).add_i(1, &int(b)).ok()?;
            (s.eval() != vec![vec![a + b]]).then(|| format!("{a} + {b} evaluates to {:?}", s.eval()))
        }),
    ));
    out.push(law_from(
        "integer-multiplication",
        first_failure(&pairs, |&&(a, b)| {
            let p = int(a).multiply(&int(b)).ok()?;
            (p.eval() != vec![vec![a * b]]).then(|| format!("{a} * {b} evaluates to {:?}", p.eval()))
        }),
    ));
    out.push(law_from(
        "integer-transpose",
        first_failure(&ks, |&&k| (int(k).transpose().eval() != vec![vec![k]]).then(|| format!("transpose of {k}"))),
    ));
    out.push(law_from(
        "integer-cancellation",
        first_failure(&pairs, |&&(a, b)| {
            let s = int(a).add_i(1, &int(b)).ok()?;
            match normalize(&s, &RuleSet::base(), 10_000) {
                Ok(nf) if nf == int(a + b).canonical() => None,
                Ok(nf) => Some(format!("{a} + {b} normalizes to {nf}")),
                Err(e) => Some(format!("{a} + {b}: {e}")),
            }
        }),
    ));
    Ok(out)
}

fn durov(_seed: u64) -> Result<Vec<LawReport>> {
    let (d1, d2) = (Term::delta(2, 1), Term::delta(2, 2));
    let with_tc = term_equal(&d1, &d2, &RuleSet::with_total_comm(), 10_000)?;
    let trace_len = match &with_tc {
        Equality::Equal { trace } => Some(trace.len()),
        _ => None,
    };
    let derivation = durov_check(&RuleSet::with_total_comm(), 10_000)?;
    let base = term_equal(&d1, &d2, &RuleSet::base(), 10_000)?;
    Ok(vec![
        check("equal-with-total-commutativity", 1, trace_len.is_some_and(|l| l <= 10), || {
            format!("verdict {} trace {trace_len:?}", with_tc.verdict())
        }),
        check(
            "derivation-replays",
            derivation.steps.len(),
            derivation.identified && derivation.steps.len() <= 10,
            || format!("{} steps, identified {}", derivation.steps.len(), derivation.identified),
        ),
        check("base-rules-not-identified", 1, matches!(base, Equality::NotIdentified { .. }), || {
            format!("verdict {}", base.verdict())
        }),
    ])
}

fn differentials(seed: u64) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    let pairs: Vec<(u64, u64)> = (0..=500u64).flat_map(|n| (0..=500u64).map(move |m| (n, m))).collect();
    let d: Vec<OmegaElem> = (0..=1000u64).map(partial_n).collect();
    out.push(law_from(
        "leibniz",
        first_failure(&pairs, |&&(n, m)| {
            let r = d[m as usize].scale(n as i128).add(&d[n as usize].scale(m as i128));
            (partial_n(n * m) != r).then(|| format!("n={n} m={m}"))
        }),
    ));
    out.push(law_from(
        "almost-additivity",
        first_failure(&pairs, |&&(n, m)| {
            let r = d[n as usize].add(&d[m as usize]).add(&bracket(n, m));
            (d[(n + m) as usize] != r || bracket(n, m) != bracket(m, n)).then(|| format!("n={n} m={m}"))
        }),
    ));
    let mut sum = OmegaElem::zero();
    let mut failure = None;
    for n in 0..=10_000u64 {
        if sum != partial_n(n) {
            failure = Some(format!("n={n}: {sum} vs {}", partial_n(n)));
            break;
        }
        sum = sum.add(&bracket(1, n));
    }
    out.push(law_from("telescoping-sum", (10_001, failure)));
    let report = check_identities(1000, 1000, seed)?;
    out.extend(report.laws.into_iter().filter(|l| l.law == "cocycle" || l.law == "homogeneity"));
    let pres = truncated_presentation(12, true)?;
    out.push(check("presentation-B12", pres.relations, pres.well_defined, || {
        "a relation row is not annihilated".into()
    }));
    Ok(out)
}

fn spectra(_seed: u64) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    let cat = TableRig::catalogue();
    let mut failure = None;
    for t in &cat {
        let ring = GenRing::G(Rig::Table(Arc::new(t.clone())));
        let spec = Spectral::new(&ring, Involution::Native)?.enumerate()?;
        let mut got = spec.prime_members();
        got.sort();
        let mut want = t.primes_brute_force();
        want.sort();
        if got != want || !spec.passed() {
            failure = Some(format!("{}: {got:?} vs {want:?}", t.name));
            break;
        }
    }
    out.push(law_from("catalogue-oracle", (cat.len(), failure)));
    for ring in [field_with_one_element(), make_fm(Monoid::cyclic(2)?)] {
        let spec = Spectral::new(&ring, Involution::Native)?.enumerate()?;
        let ok = spec.primes.len() == 1 && spec.primes[0].ideal.elements == ["0"] && spec.passed();
        out.push(check(format!("spec {}", ring.label()), 1, ok, || {
            format!("{:?}", spec.primes.iter().map(|p| &p.ideal.elements).collect::<Vec<_>>())
        }));
    }
    let two = Elem::G(vec![RigElem::Int(2)]);
    let loc = localize(&make_g(Rig::Int), std::slice::from_ref(&two))?;
    let ok = loc.ring == make_g(Rig::ZInv(vec![2])) && loc.inverts_s()?;
    out.push(check("localize Z at 2", 1, ok, || format!("got {}", loc.ring.label())));
    Ok(out)
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.random_range(-200..=200);
    let den: i64 = rng.random_range(1..=200);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn norms(seed: u64) -> Result<Vec<LawReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let mut failure = None;
        for i in 0..1000 {
            let dim = rng.random_range(1..=5);
            let mut v: Vec<BigRational> = (0..dim).map(|_| random_rational(&mut rng)).collect();
            if v.iter().all(|x| x == &BigRational::from_integer(0.into())) {
                v[0] = BigRational::one();
            }
            let norm = norm_padic(p, &v)?;
            let w = fullness_witness_padic(p, &v, 16, seed + i)?;
            let t = tameness_padic(p, &v, 16, seed + i)?;
            let full_ok = w.scaled_norm == BigRational::one() && abs_p(p, &w.d).recip() == norm && w.infimum_ok;
            let tame_ok = t.tame == (norm <= BigRational::one()) && t.consistent;
            if !(full_ok && tame_ok) {
                failure = Some(format!("{v:?}"));
                break;
            }
        }
        out.push(law_from(&format!("p={p}"), (1000, failure)));
    }
    let mut failure = None;
    for i in 0..1000 {
        let dim = rng.random_range(1..=5);
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-200.0..200.0) / rng.random_range(1.0..200.0)).collect();
        let norm = norm_real(&v)?;
        if norm == 0.0 {
            continue;
        }
        let w = fullness_witness_real(&v, 16, seed + i)?;
        let t = tameness_real(&v, 16, seed + i)?;
        let full_ok = (w.scaled_norm - 1.0).abs() <= 1e-9 && ((1.0 / w.d) - norm).abs() <= 1e-9 * norm && w.infimum_ok;
        let tame_ok = t.tame == (norm <= 1.0 + 1e-12) && t.consistent;
        if !(full_ok && tame_ok) {
            failure = Some(format!("{v:?}"));
            break;
        }
    }
    out.push(law_from("real", (1000, failure)));
    // Cauchy-Schwarz: pairs in the unit ball contract into [-1, 1]
    let mut failure = None;
    for _ in 0..10_000 {
        let dim = rng.random_range(1..=6);
        let mut ball = || {
            let g: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let r = norm_real(&g).unwrap_or(1.0).max(f64::MIN_POSITIVE);
            let radius = rng.random::<f64>().powf(1.0 / dim as f64);
            g.into_iter().map(|x| x / r * radius).collect::<Vec<f64>>()
        };
        let (b, v) = (ball(), ball());
        let dot: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
        if dot.abs() > 1.0 + 1e-12 {
            failure = Some(format!("⟨{b:?}, {v:?}⟩ = {dot}"));
            break;
        }
    }
    out.push(law_from("contraction-closure", (10_000, failure)));
    Ok(out)
}
