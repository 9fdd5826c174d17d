//! Differentials of `ℕ`: the derivation `∂`, bracket symbols `{a,b}` and a
//! truncated presentation of the module they generate.

use crate::error::{Error, Result};
use crate::report::{run_law, Report};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// A symbol `{a,b}` stored with `a ≤ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BracketSym {
    pub a: u64,
    pub b: u64,
}

impl BracketSym {
    pub fn new(a: u64, b: u64) -> BracketSym {
        BracketSym { a: a.min(b), b: a.max(b) }
    }

    /// `{a,0}` is zero.
    pub fn is_zero(&self) -> bool {
        self.a == 0
    }
}

/// An integer combination of the basis elements `∂(p)`, `p` prime.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OmegaElem {
    coeffs: BTreeMap<u64, i128>,
}

impl OmegaElem {
    pub fn zero() -> OmegaElem {
        OmegaElem::default()
    }

    /// The basis element `∂(p)`.
    pub fn basis(p: u64) -> Result<OmegaElem> {
        if !crate::rig::is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(OmegaElem { coeffs: BTreeMap::from([(p, 1)]) })
    }

    pub fn coeff(&self, p: u64) -> i128 {
        self.coeffs.get(&p).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, i128> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, p: u64, c: i128) {
        let e = self.coeffs.entry(p).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn add(&self, other: &OmegaElem) -> OmegaElem {
        let mut out = self.clone();
        for (&p, &c) in &other.coeffs {
            out.add_term(p, c);
        }
        out
    }

    pub fn scale(&self, k: i128) -> OmegaElem {
        if k == 0 {
            return OmegaElem::zero();
        }
        OmegaElem { coeffs: self.coeffs.iter().map(|(&p, &c)| (p, c * k)).collect() }
    }

    pub fn sub(&self, other: &OmegaElem) -> OmegaElem {
        self.add(&other.scale(-1))
    }
}

impl fmt::Display for OmegaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&p, &c)) in self.coeffs.iter().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if mag == 1 {
                write!(f, "d({p})")?;
            } else {
                write!(f, "{mag}*d({p})")?;
            }
        }
        Ok(())
    }
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `∂(n) = Σ_p v_p(n)·(n/p)·∂(p)`; `∂(0) = ∂(1) = 0`.
pub fn partial_n(n: u64) -> OmegaElem {
    let mut out = OmegaElem::zero();
    if n < 2 {
        return out;
    }
    for (p, e) in factorize(n) {
        out.add_term(p, e as i128 * (n / p) as i128);
    }
    out
}

/// `{a,b} = ∂(a+b) − ∂(a) − ∂(b)`.
pub fn bracket(a: u64, b: u64) -> OmegaElem {
    partial_n(a + b).sub(&partial_n(a)).sub(&partial_n(b))
}

/// Checks cocycle, homogeneity, Leibniz, almost-additivity and the
/// telescoping sum on random operands up to `bound`.
pub fn check_identities(bound: u64, trials: usize, seed: u64) -> Result<Report> {
    if bound < 3 {
        return Err(Error::Domain("bound must be at least 3".into()));
    }
    let mut report = Report::new("differentials");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = |k: usize| -> Vec<Vec<u64>> {
        (0..trials).map(|_| (0..k).map(|_| rng.random_range(0..=bound)).collect()).collect()
    };
    let triples = draws(3);
    report.push(run_law("cocycle", trials, |i| {
        let [a, b, c] = [triples[i][0], triples[i][1], triples[i][2]];
        let l = bracket(a, b + c).add(&bracket(b, c));
        let r = bracket(a + b, c).add(&bracket(a, b));
        (l == r).then_some(()).ok_or_else(|| format!("a={a} b={b} c={c}: {l} vs {r}"))
    }));
    report.push(run_law("homogeneity", trials, |i| {
        let [a, b, c] = [triples[i][0], triples[i][1], triples[i][2]];
        let l = bracket(c * a, c * b);
        let r = bracket(a, b).scale(c as i128);
        (l == r).then_some(()).ok_or_else(|| format!("c={c} a={a} b={b}: {l} vs {r}"))
    }));
    report.push(run_law("leibniz", trials, |i| {
        let [n, m] = [triples[i][0], triples[i][1]];
        let l = partial_n(n * m);
        let r = partial_n(m).scale(n as i128).add(&partial_n(n).scale(m as i128));
        (l == r).then_some(()).ok_or_else(|| format!("n={n} m={m}: {l} vs {r}"))
    }));
    report.push(run_law("almost-additivity", trials, |i| {
        let [n, m] = [triples[i][0], triples[i][1]];
        if bracket(n, m) != bracket(m, n) {
            return Err(format!("{{{n},{m}}} is not symmetric"));
        }
        if !bracket(n, 0).is_zero() {
            return Err(format!("{{{n},0}} is not zero"));
        }
        let l = partial_n(n + m);
        let r = partial_n(n).add(&partial_n(m)).add(&bracket(n, m));
        (l == r).then_some(()).ok_or_else(|| format!("n={n} m={m}"))
    }));
    let ns = draws(1);
    report.push(run_law("telescoping-sum", trials, |i| {
        let n = ns[i][0];
        let s = (0..n).fold(OmegaElem::zero(), |acc, k| acc.add(&bracket(1, k)));
        let want = partial_n(n);
        (s == want).then_some(()).ok_or_else(|| format!("n={n}: {s} vs {want}"))
    }));
    Ok(report)
}

/// Result of presenting the bracket group truncated at `a + b ≤ B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub bound: u64,
    pub with_homogeneity: bool,
    pub generators: Vec<BracketSym>,
    pub relations: usize,
    /// Invariant factors of the quotient, `0` for each free summand, units dropped.
    pub factors: Vec<i128>,
    /// Rank of the image of the evaluation map in the prime basis.
    pub image_rank: usize,
    /// Whether the evaluation map kills every relation.
    pub well_defined: bool,
    /// The commutativity relation enters only through homogeneity.
    pub note: String,
}

/// Largest matrix the presentation will build.
pub const MAX_GENERATORS: usize = 600;

pub fn truncated_presentation(bound: u64, with_homogeneity: bool) -> Result<Presentation> {
    if bound < 2 {
        return Err(Error::Domain("bound must be at least 2".into()));
    }
    let mut generators = Vec::new();
    for a in 1..=bound / 2 {
        for b in a..=bound - a {
            generators.push(BracketSym::new(a, b));
        }
    }
    if generators.len() > MAX_GENERATORS {
        return Err(Error::TooLarge(format!("{} generators at bound {bound}", generators.len())));
    }
    let col: BTreeMap<BracketSym, usize> = generators.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut rows: Vec<Vec<i128>> = Vec::new();
    let mut push = |terms: &[(i128, u64, u64)]| {
        let mut row = vec![0i128; generators.len()];
        for &(c, a, b) in terms {
            let s = BracketSym::new(a, b);
            if !s.is_zero() {
                row[col[&s]] += c;
            }
        }
        if row.iter().any(|&v| v != 0) {
            rows.push(row);
        }
    };
    for a in 1..bound {
        for b in 1..bound {
            for c in 1..bound {
                if a + b + c <= bound {
                    push(&[(1, a, b + c), (1, b, c), (-1, a + b, c), (-1, a, b)]);
                }
            }
        }
    }
    if with_homogeneity {
        for c in 2..=bound {
            for a in 1..=bound {
                for b in a..=bound {
                    if c * (a + b) <= bound {
                        push(&[(1, c * a, c * b), (-(c as i128), a, b)]);
                    }
                }
            }
        }
    }
    let evals: Vec<OmegaElem> = generators.iter().map(|g| bracket(g.a, g.b)).collect();
    let well_defined = rows
        .iter()
        .all(|row| row.iter().zip(&evals).fold(OmegaElem::zero(), |acc, (&c, e)| acc.add(&e.scale(c))).is_zero());
    let primes: Vec<u64> = (2..=bound).filter(|&p| crate::rig::is_prime(p)).collect();
    let eval_matrix: Vec<Vec<i128>> = evals.iter().map(|e| primes.iter().map(|&p| e.coeff(p)).collect()).collect();
    let image_rank = smith_diagonal(eval_matrix)?.len();
    let relations = rows.len();
    let diag = smith_diagonal(rows)?;
    let free = generators.len() - diag.len();
    let mut factors: Vec<i128> = diag.into_iter().filter(|&d| d != 1).collect();
    factors.extend(std::iter::repeat_n(0, free));
    Ok(Presentation {
        bound,
        with_homogeneity,
        generators,
        relations,
        factors,
        image_rank,
        well_defined,
        note: "commutativity is imposed only through its homogeneity consequence".into(),
    })
}

/// Nonzero diagonal of the Smith normal form, normalized so each entry
/// divides the next.
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Result<Vec<i128>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let ovf = || Error::Overflow("smith normal form");
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &v) in row.iter().enumerate().skip(t) {
                    if v != 0 && pivot.is_none_or(|(pi, pj)| v.abs() < m[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return Ok(normalize_diagonal(diag));
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    let (top, rest) = m.split_at_mut(i);
                    for (x, &y) in rest[0][t..cols].iter_mut().zip(&top[t][t..cols]) {
                        *x = x.checked_sub(q.checked_mul(y).ok_or_else(ovf)?).ok_or_else(ovf)?;
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        let s = q.checked_mul(row[t]).ok_or_else(ovf)?;
                        row[j] = row[j].checked_sub(s).ok_or_else(ovf)?;
                    }
                }
                clean &= m[t][j] == 0;
            }
            if clean {
                diag.push(p.abs());
                break;
            }
        }
    }
    Ok(normalize_diagonal(diag))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Replaces pairs `(d_i, d_j)` by `(gcd, lcm)` until the chain divides.
fn normalize_diagonal(mut d: Vec<i128>) -> Vec<i128> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = gcd(d[i], d[j]);
            let l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}
