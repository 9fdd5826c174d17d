//! Commutative rigs used as coefficients.
//!
//! Exact carriers (`nat`, `int`, `zmod:<m>`, finite tables) hold `i128`
//! values, `rat` and the localizations `int[1/p,..]` hold big rationals, and
//! the max-rigs `unit-max` and `trop-max` hold `f64`. Float products may
//! round, so equality on the max-rigs is relative to [`REAL_TOL`].

use crate::error::{Error, Result};
use crate::finite_ring::TableRig;
use crate::report::{run_law, LawReport, Report};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub const REAL_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub enum RigElem {
    Int(i128),
    Rat(BigRational),
    Real(f64),
}

impl PartialEq for RigElem {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (RigElem::Int(a), RigElem::Int(b)) => a == b,
            (RigElem::Rat(a), RigElem::Rat(b)) => a == b,
            (RigElem::Real(a), RigElem::Real(b)) => a.to_bits() == b.to_bits(),
            _ => false,
        }
    }
}

impl Eq for RigElem {}

impl Hash for RigElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            RigElem::Int(a) => (0u8, a).hash(state),
            RigElem::Rat(a) => (1u8, a).hash(state),
            RigElem::Real(a) => (2u8, a.to_bits()).hash(state),
        }
    }
}

impl PartialOrd for RigElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RigElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (RigElem::Int(a), RigElem::Int(b)) => a.cmp(b),
            (RigElem::Rat(a), RigElem::Rat(b)) => a.cmp(b),
            (RigElem::Real(a), RigElem::Real(b)) => a.total_cmp(b),
            (RigElem::Int(_), _) => Less,
            (_, RigElem::Int(_)) => Greater,
            (RigElem::Rat(_), _) => Less,
            (_, RigElem::Rat(_)) => Greater,
        }
    }
}

impl fmt::Display for RigElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigElem::Int(a) => write!(f, "{a}"),
            RigElem::Rat(a) => write!(f, "{a}"),
            RigElem::Real(a) => write!(f, "{a}"),
        }
    }
}

impl RigElem {
    pub fn as_int(&self) -> Option<i128> {
        match self {
            RigElem::Int(a) => Some(*a),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RigElem::Int(a) => *a as f64,
            RigElem::Rat(a) => a.to_f64().unwrap_or(f64::NAN),
            RigElem::Real(a) => *a,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Rig {
    Nat,
    Int,
    ZMod(u64),
    Rat,
    BoolMax,
    UnitMax,
    TropMax,
    /// ℤ with the listed primes inverted.
    ZInv(Vec<u64>),
    /// Finite commutative rig given by tables.
    Table(Arc<TableRig>),
}

impl fmt::Display for Rig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("rig arithmetic"))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Rig {
    /// Parses a CLI rig name.
    pub fn parse(name: &str) -> Result<Rig> {
        let name = name.trim();
        match name {
            "nat" => return Ok(Rig::Nat),
            "int" => return Ok(Rig::Int),
            "rat" => return Ok(Rig::Rat),
            "bool-max" => return Ok(Rig::BoolMax),
            "unit-max" => return Ok(Rig::UnitMax),
            "trop-max" => return Ok(Rig::TropMax),
            _ => {}
        }
        if let Some(m) = name.strip_prefix("zmod:") {
            let m: u64 = m.parse().map_err(|_| Error::UnknownRig(name.to_string()))?;
            if !(1..=(1 << 31)).contains(&m) {
                return Err(Error::UnknownRig(name.to_string()));
            }
            return Ok(Rig::ZMod(m));
        }
        if let Some(t) = name.strip_prefix("table:") {
            return TableRig::catalogue()
                .into_iter()
                .find(|r| r.name == t)
                .map(|r| Rig::Table(Arc::new(r)))
                .ok_or_else(|| Error::UnknownRig(name.to_string()));
        }
        if let Some(rest) = name.strip_prefix("int[1/").and_then(|r| r.strip_suffix(']')) {
            let mut ps = Vec::new();
            for p in rest.split(',') {
                let p: u64 =
                    p.trim().trim_start_matches("1/").parse().map_err(|_| Error::UnknownRig(name.to_string()))?;
                if !is_prime(p) {
                    return Err(Error::UnknownRig(name.to_string()));
                }
                ps.push(p);
            }
            ps.sort_unstable();
            ps.dedup();
            return Ok(Rig::ZInv(ps));
        }
        Err(Error::UnknownRig(name.to_string()))
    }

    pub fn name(&self) -> String {
        match self {
            Rig::Nat => "nat".into(),
            Rig::Int => "int".into(),
            Rig::ZMod(m) => format!("zmod:{m}"),
            Rig::Rat => "rat".into(),
            Rig::BoolMax => "bool-max".into(),
            Rig::UnitMax => "unit-max".into(),
            Rig::TropMax => "trop-max".into(),
            Rig::ZInv(ps) => {
                let inv: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                format!("int[1/{}]", inv.join(",1/"))
            }
            Rig::Table(t) => t.name.clone(),
        }
    }

    /// Every registered rig available by name.
    pub fn registered() -> Vec<Rig> {
        vec![Rig::Nat, Rig::Int, Rig::ZMod(6), Rig::Rat, Rig::BoolMax, Rig::UnitMax, Rig::TropMax]
    }

    pub fn is_ring(&self) -> bool {
        match self {
            Rig::Int | Rig::ZMod(_) | Rig::Rat | Rig::ZInv(_) => true,
            Rig::Table(t) => t.neg.is_some(),
            _ => false,
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Rig::UnitMax | Rig::TropMax)
    }

    pub fn has_idempotent_add(&self) -> bool {
        matches!(self, Rig::BoolMax | Rig::UnitMax | Rig::TropMax)
    }

    pub fn zero(&self) -> RigElem {
        match self {
            Rig::Rat | Rig::ZInv(_) => RigElem::Rat(BigRational::zero()),
            Rig::UnitMax | Rig::TropMax => RigElem::Real(0.0),
            Rig::Table(t) => RigElem::Int(t.zero as i128),
            _ => RigElem::Int(0),
        }
    }

    pub fn one(&self) -> RigElem {
        match self {
            Rig::ZMod(1) => RigElem::Int(0),
            Rig::Rat | Rig::ZInv(_) => RigElem::Rat(BigRational::one()),
            Rig::UnitMax | Rig::TropMax => RigElem::Real(1.0),
            Rig::Table(t) => RigElem::Int(t.one as i128),
            _ => RigElem::Int(1),
        }
    }

    /// Image of the integer `k` (of the natural number `k` for rigs without
    /// negatives, where negative `k` is rejected).
    pub fn from_int(&self, k: i64) -> Result<RigElem> {
        let neg_err = || Error::Carrier { rig: self.name(), value: k.to_string() };
        match self {
            Rig::Nat => {
                if k < 0 {
                    Err(neg_err())
                } else {
                    Ok(RigElem::Int(k as i128))
                }
            }
            Rig::Int => Ok(RigElem::Int(k as i128)),
            Rig::ZMod(m) => Ok(RigElem::Int((k as i128).rem_euclid(*m as i128))),
            Rig::Rat | Rig::ZInv(_) => Ok(RigElem::Rat(BigRational::from_integer(BigInt::from(k)))),
            Rig::BoolMax => {
                if k < 0 {
                    Err(neg_err())
                } else {
                    Ok(RigElem::Int((k > 0) as i128))
                }
            }
            Rig::UnitMax | Rig::TropMax => {
                if k < 0 {
                    Err(neg_err())
                } else {
                    Ok(RigElem::Real(if k > 0 { 1.0 } else { 0.0 }))
                }
            }
            Rig::Table(t) => {
                let mut acc = t.zero;
                for _ in 0..k.unsigned_abs() {
                    acc = t.add[acc][t.one];
                }
                if k < 0 {
                    let neg = t.neg.as_ref().ok_or_else(neg_err)?;
                    acc = neg[acc];
                }
                Ok(RigElem::Int(acc as i128))
            }
        }
    }

    pub fn contains(&self, a: &RigElem) -> bool {
        match (self, a) {
            (Rig::Nat, RigElem::Int(v)) => *v >= 0,
            (Rig::Int, RigElem::Int(_)) => true,
            (Rig::ZMod(m), RigElem::Int(v)) => *v >= 0 && *v < *m as i128,
            (Rig::Rat, RigElem::Rat(_)) => true,
            (Rig::ZInv(ps), RigElem::Rat(v)) => {
                let mut d = v.denom().clone();
                for p in ps {
                    let p = BigInt::from(*p);
                    while (&d % &p).is_zero() {
                        d /= &p;
                    }
                }
                d.is_one()
            }
            (Rig::BoolMax, RigElem::Int(v)) => *v == 0 || *v == 1,
            (Rig::UnitMax, RigElem::Real(v)) => v.is_finite() && (0.0..=1.0).contains(v),
            (Rig::TropMax, RigElem::Real(v)) => v.is_finite() && *v >= 0.0,
            (Rig::Table(t), RigElem::Int(v)) => *v >= 0 && (*v as usize) < t.size(),
            _ => false,
        }
    }

    fn check(&self, a: &RigElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::Carrier { rig: self.name(), value: a.to_string() })
        }
    }

    pub fn add(&self, a: &RigElem, b: &RigElem) -> Result<RigElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (Rig::Nat | Rig::Int, RigElem::Int(x), RigElem::Int(y)) => RigElem::Int(checked(x.checked_add(*y))?),
            (Rig::ZMod(m), RigElem::Int(x), RigElem::Int(y)) => RigElem::Int((x + y) % *m as i128),
            (Rig::BoolMax, RigElem::Int(x), RigElem::Int(y)) => RigElem::Int(*x.max(y)),
            (Rig::Rat | Rig::ZInv(_), RigElem::Rat(x), RigElem::Rat(y)) => RigElem::Rat(x + y),
            (Rig::UnitMax | Rig::TropMax, RigElem::Real(x), RigElem::Real(y)) => RigElem::Real(x.max(*y)),
            (Rig::Table(t), RigElem::Int(x), RigElem::Int(y)) => RigElem::Int(t.add[*x as usize][*y as usize] as i128),
            _ => unreachable!("carrier already checked"),
        })
    }

    pub fn mul(&self, a: &RigElem, b: &RigElem) -> Result<RigElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (Rig::Nat | Rig::Int, RigElem::Int(x), RigElem::Int(y)) => RigElem::Int(checked(x.checked_mul(*y))?),
            (Rig::ZMod(m), RigElem::Int(x), RigElem::Int(y)) => RigElem::Int((x * y) % *m as i128),
            (Rig::BoolMax, RigElem::Int(x), RigElem::Int(y)) => RigElem::Int(x * y),
            (Rig::Rat | Rig::ZInv(_), RigElem::Rat(x), RigElem::Rat(y)) => RigElem::Rat(x * y),
            (Rig::UnitMax | Rig::TropMax, RigElem::Real(x), RigElem::Real(y)) => RigElem::Real(x * y),
            (Rig::Table(t), RigElem::Int(x), RigElem::Int(y)) => RigElem::Int(t.mul[*x as usize][*y as usize] as i128),
            _ => unreachable!("carrier already checked"),
        })
    }

    /// Additive inverse, for rings only.
    pub fn neg(&self, a: &RigElem) -> Result<RigElem> {
        self.check(a)?;
        match (self, a) {
            (Rig::Int, RigElem::Int(x)) => Ok(RigElem::Int(-x)),
            (Rig::ZMod(m), RigElem::Int(x)) => Ok(RigElem::Int((*m as i128 - x) % *m as i128)),
            (Rig::Rat | Rig::ZInv(_), RigElem::Rat(x)) => Ok(RigElem::Rat(-x)),
            (Rig::Table(t), RigElem::Int(x)) => match &t.neg {
                Some(n) => Ok(RigElem::Int(n[*x as usize] as i128)),
                None => Err(Error::Domain(format!("{} has no negation", self.name()))),
            },
            _ => Err(Error::Domain(format!("{} has no negation", self.name()))),
        }
    }

    /// Equality of carrier values; relative tolerance on the max-rigs.
    pub fn same(&self, a: &RigElem, b: &RigElem) -> bool {
        match (a, b) {
            (RigElem::Real(x), RigElem::Real(y)) => x == y || (x - y).abs() <= REAL_TOL * x.abs().max(y.abs()).max(1.0),
            _ => a == b,
        }
    }

    /// The full carrier when it is finite.
    pub fn enumerate(&self) -> Option<Vec<RigElem>> {
        match self {
            Rig::ZMod(m) if *m <= 4096 => Some((0..*m as i128).map(RigElem::Int).collect()),
            Rig::BoolMax => Some(vec![RigElem::Int(0), RigElem::Int(1)]),
            Rig::Table(t) => Some((0..t.size() as i128).map(RigElem::Int).collect()),
            _ => None,
        }
    }

    /// Random carrier element; small values and the units 0, 1 are favoured.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> RigElem {
        let special = rng.random_range(0..6u32);
        if special == 0 {
            return self.zero();
        }
        if special == 1 {
            return self.one();
        }
        match self {
            Rig::Nat => RigElem::Int(rng.random_range(0..=20)),
            Rig::Int => RigElem::Int(rng.random_range(-20..=20)),
            Rig::ZMod(m) => RigElem::Int(rng.random_range(0..*m as i128)),
            Rig::Rat => {
                let n: i64 = rng.random_range(-20..=20);
                let d: i64 = rng.random_range(1..=12);
                RigElem::Rat(BigRational::new(n.into(), d.into()))
            }
            Rig::ZInv(ps) => {
                let n: i64 = rng.random_range(-20..=20);
                let mut d = BigInt::one();
                for p in ps {
                    d *= BigInt::from(*p).pow(rng.random_range(0..4u32));
                }
                RigElem::Rat(BigRational::new(n.into(), d))
            }
            Rig::BoolMax => RigElem::Int(rng.random_range(0..=1)),
            Rig::UnitMax => RigElem::Real(rng.random::<f64>()),
            Rig::TropMax => RigElem::Real(rng.random::<f64>() * 8.0),
            Rig::Table(t) => RigElem::Int(rng.random_range(0..t.size() as i128)),
        }
    }

    /// Parses a single element literal for this rig.
    pub fn parse_elem(&self, s: &str) -> Result<RigElem> {
        let s = s.trim();
        let bad = || Error::Malformed(format!("`{s}` for rig {}", self.name()));
        let v = match self {
            Rig::Rat | Rig::ZInv(_) => {
                let r = match s.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                        if d.is_zero() {
                            return Err(bad());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
                };
                RigElem::Rat(r)
            }
            Rig::UnitMax | Rig::TropMax => RigElem::Real(s.parse().map_err(|_| bad())?),
            Rig::Table(t) => match t.labels.iter().position(|l| l == s) {
                Some(i) => RigElem::Int(i as i128),
                None => RigElem::Int(s.parse().map_err(|_| bad())?),
            },
            _ => RigElem::Int(s.parse().map_err(|_| bad())?),
        };
        self.check(&v)?;
        Ok(v)
    }

    /// Converts a JSON value (number or string) to an element.
    pub fn elem_from_json(&self, v: &serde_json::Value) -> Result<RigElem> {
        match v {
            serde_json::Value::Number(n) => self.parse_elem(&n.to_string()),
            serde_json::Value::String(s) => self.parse_elem(s),
            _ => Err(Error::Malformed(v.to_string())),
        }
    }

    pub fn elem_to_json(&self, a: &RigElem) -> serde_json::Value {
        match a {
            RigElem::Int(v) => match (self, i64::try_from(*v)) {
                (Rig::Table(t), _) => serde_json::Value::String(t.labels[*v as usize].clone()),
                (_, Ok(v)) => serde_json::Value::from(v),
                (_, Err(_)) => serde_json::Value::String(v.to_string()),
            },
            RigElem::Rat(r) => {
                if r.is_integer() {
                    match r.to_integer().to_i64() {
                        Some(v) => serde_json::Value::from(v),
                        None => serde_json::Value::String(r.to_string()),
                    }
                } else {
                    serde_json::Value::String(r.to_string())
                }
            }
            RigElem::Real(x) => serde_json::Value::from(*x),
        }
    }

    /// Whether `a` has a multiplicative inverse in the carrier.
    pub fn inverse(&self, a: &RigElem) -> Option<RigElem> {
        match (self, a) {
            (Rig::Nat | Rig::Int, RigElem::Int(x)) if x.abs() == 1 => Some(a.clone()),
            (Rig::BoolMax, RigElem::Int(1)) => Some(a.clone()),
            (Rig::ZMod(m), RigElem::Int(x)) => {
                let m = *m as i128;
                let g = x.extended_gcd(&m);
                (g.gcd == 1).then(|| RigElem::Int(g.x.rem_euclid(m)))
            }
            (Rig::Rat, RigElem::Rat(x)) if !x.is_zero() => Some(RigElem::Rat(x.recip())),
            (Rig::ZInv(_), RigElem::Rat(x)) if !x.is_zero() => {
                let inv = RigElem::Rat(x.recip());
                self.contains(&inv).then_some(inv)
            }
            (Rig::UnitMax, RigElem::Real(x)) if *x == 1.0 => Some(a.clone()),
            (Rig::TropMax, RigElem::Real(x)) if *x > 0.0 => Some(RigElem::Real(1.0 / x)),
            (Rig::Table(t), RigElem::Int(x)) => {
                (0..t.size()).find(|&y| t.mul[*x as usize][y] == t.one).map(|y| RigElem::Int(y as i128))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &RigElem) -> bool {
        self.same(a, &self.zero())
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a RigElem>>(&self, it: I) -> Result<RigElem> {
        let mut acc = self.zero();
        for x in it {
            acc = self.add(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn rat_value(a: &RigElem) -> Option<&BigRational> {
        match a {
            RigElem::Rat(r) => Some(r),
            _ => None,
        }
    }
}

/// Minimal interface for the randomized rig-axiom checker, so that
/// deliberately broken structures can be fed to it as well.
pub trait RigOps {
    type E: Clone + fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Result<Self::E>;
    fn same(&self, a: &Self::E, b: &Self::E) -> bool;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::E;
    fn label(&self) -> String;
}

impl RigOps for Rig {
    type E = RigElem;
    fn zero(&self) -> RigElem {
        Rig::zero(self)
    }
    fn one(&self) -> RigElem {
        Rig::one(self)
    }
    fn add(&self, a: &RigElem, b: &RigElem) -> Result<RigElem> {
        Rig::add(self, a, b)
    }
    fn mul(&self, a: &RigElem, b: &RigElem) -> Result<RigElem> {
        Rig::mul(self, a, b)
    }
    fn same(&self, a: &RigElem, b: &RigElem) -> bool {
        Rig::same(self, a, b)
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> RigElem {
        Rig::sample(self, rng)
    }
    fn label(&self) -> String {
        self.name()
    }
}

/// Randomized check of the commutative-rig axioms, deterministic in `seed`.
pub fn check_rig_axioms<R: RigOps>(r: &R, trials: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(r.label());
    let mut triples: Vec<(R::E, R::E, R::E)> = Vec::with_capacity(trials);
    for _ in 0..trials {
        triples.push((r.sample(&mut rng), r.sample(&mut rng), r.sample(&mut rng)));
    }
    type Law<'a, E> = Box<dyn Fn(&E, &E, &E) -> Result<(E, E)> + 'a>;
    let laws: Vec<(&str, Law<R::E>)> = vec![
        ("add-commutative", Box::new(|a, b, _| Ok((r.add(a, b)?, r.add(b, a)?)))),
        ("add-associative", Box::new(|a, b, c| Ok((r.add(a, &r.add(b, c)?)?, r.add(&r.add(a, b)?, c)?)))),
        ("add-unit", Box::new(|a, _, _| Ok((r.add(a, &r.zero())?, a.clone())))),
        ("mul-commutative", Box::new(|a, b, _| Ok((r.mul(a, b)?, r.mul(b, a)?)))),
        ("mul-associative", Box::new(|a, b, c| Ok((r.mul(a, &r.mul(b, c)?)?, r.mul(&r.mul(a, b)?, c)?)))),
        ("mul-unit", Box::new(|a, _, _| Ok((r.mul(a, &r.one())?, a.clone())))),
        ("zero-absorbing", Box::new(|a, _, _| Ok((r.mul(a, &r.zero())?, r.zero())))),
        ("distributive", Box::new(|a, b, c| Ok((r.mul(a, &r.add(b, c)?)?, r.add(&r.mul(a, b)?, &r.mul(a, c)?)?)))),
    ];
    for (name, law) in laws {
        report.push(run_law(name, trials, |t| {
            let (a, b, c) = &triples[t];
            match law(a, b, c) {
                Ok((x, y)) if r.same(&x, &y) => Ok(()),
                Ok((x, y)) => Err(format!("a={a:?} b={b:?} c={c:?}: {x:?} != {y:?}")),
                Err(e) => Err(format!("a={a:?} b={b:?} c={c:?}: {e}")),
            }
        }));
    }
    report
}

pub fn law_names() -> [&'static str; 8] {
    [
        "add-commutative",
        "add-associative",
        "add-unit",
        "mul-commutative",
        "mul-associative",
        "mul-unit",
        "zero-absorbing",
        "distributive",
    ]
}

/// Idempotency of addition and, for rings, additive inverses.
pub fn check_rig_extras(r: &Rig, trials: usize, seed: u64) -> Vec<LawReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut out = Vec::new();
    if r.has_idempotent_add() {
        out.push(run_law("add-idempotent", trials, |_| {
            let a = r.sample(&mut rng);
            match r.add(&a, &a) {
                Ok(s) if r.same(&s, &a) => Ok(()),
                other => Err(format!("a={a:?}: a+a={other:?}")),
            }
        }));
    }
    if r.is_ring() {
        out.push(run_law("additive-inverse", trials, |_| {
            let a = r.sample(&mut rng);
            let n = r.neg(&a).map_err(|e| e.to_string())?;
            match r.add(&a, &n) {
                Ok(s) if r.is_zero(&s) => Ok(()),
                other => Err(format!("a={a:?}: a+(-a)={other:?}")),
            }
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(v: i128) -> RigElem {
        RigElem::Int(v)
    }

    #[test]
    fn examples() {
        assert_eq!(Rig::BoolMax.add(&i(1), &i(1)).unwrap(), i(1));
        assert_eq!(Rig::Nat.add(&i(2), &i(3)).unwrap(), i(5));
        let t = Rig::TropMax;
        assert_eq!(t.add(&RigElem::Real(0.5), &RigElem::Real(0.7)).unwrap(), RigElem::Real(0.7));
        let p = t.mul(&RigElem::Real(0.5), &RigElem::Real(0.7)).unwrap();
        assert!(t.same(&p, &RigElem::Real(0.35)));
        assert_eq!(Rig::ZMod(6).mul(&i(2), &i(3)).unwrap(), i(0));
        for r in Rig::registered() {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let a = r.sample(&mut rng);
            assert!(r.same(&r.mul(&a, &r.one()).unwrap(), &a));
        }
    }

    #[test]
    fn carrier_violations() {
        assert!(matches!(Rig::UnitMax.add(&RigElem::Real(1.5), &RigElem::Real(0.1)), Err(Error::Carrier { .. })));
        assert!(Rig::Nat.mul(&i(-1), &i(2)).is_err());
        assert!(Rig::BoolMax.add(&i(2), &i(0)).is_err());
        assert!(Rig::ZMod(4).add(&i(4), &i(0)).is_err());
        assert!(Rig::Nat.add(&RigElem::Real(1.0), &i(0)).is_err());
    }

    #[test]
    fn parse_names_round_trip() {
        for name in ["nat", "int", "zmod:6", "rat", "bool-max", "unit-max", "trop-max", "int[1/2]", "int[1/2,1/3]"] {
            assert_eq!(Rig::parse(name).unwrap().name(), name);
        }
        assert!(Rig::parse("zmod:x").is_err());
        assert!(Rig::parse("int[1/4]").is_err());
        assert!(Rig::parse("reals").is_err());
        assert_eq!(Rig::parse("table:F4").unwrap().name(), "F4");
        assert!(Rig::parse("table:F5").is_err());
    }

    #[test]
    fn all_registered_rigs_pass_axioms() {
        for r in Rig::registered().into_iter().chain([Rig::ZMod(4), Rig::ZInv(vec![2])]) {
            let rep = check_rig_axioms(&r, 10_000, 3);
            assert!(rep.passed(), "{rep}");
            for l in check_rig_extras(&r, 1000, 3) {
                assert!(l.passed, "{} {:?}", r, l);
            }
        }
    }

    struct Broken;
    impl RigOps for Broken {
        type E = i64;
        fn zero(&self) -> i64 {
            0
        }
        fn one(&self) -> i64 {
            1
        }
        fn add(&self, a: &i64, b: &i64) -> Result<i64> {
            Ok(a - b)
        }
        fn mul(&self, a: &i64, b: &i64) -> Result<i64> {
            Ok(a * b)
        }
        fn same(&self, a: &i64, b: &i64) -> bool {
            a == b
        }
        fn sample(&self, rng: &mut ChaCha8Rng) -> i64 {
            rng.random_range(-5..5)
        }
        fn label(&self) -> String {
            "broken".into()
        }
    }

    #[test]
    fn subtraction_is_not_a_rig() {
        let rep = check_rig_axioms(&Broken, 1000, 0);
        let law = rep.law("add-commutative").unwrap();
        assert!(!law.passed);
        assert!(law.counterexample.is_some());
    }

    #[test]
    fn determinism() {
        assert_eq!(check_rig_axioms(&Rig::Rat, 50, 9), check_rig_axioms(&Rig::Rat, 50, 9));
    }

    #[test]
    fn int_negation_and_inverses() {
        assert!(Rig::Int.is_ring());
        assert!(!Rig::Nat.is_ring());
        assert_eq!(Rig::Int.neg(&i(7)).unwrap(), i(-7));
        assert_eq!(Rig::ZMod(7).inverse(&i(3)), Some(i(5)));
        assert_eq!(Rig::ZMod(6).inverse(&i(3)), None);
        let half = RigElem::Rat(BigRational::new(1.into(), 2.into()));
        assert!(Rig::ZInv(vec![2]).contains(&half));
        assert!(!Rig::ZInv(vec![2]).contains(&RigElem::Rat(BigRational::new(1.into(), 3.into()))));
    }
}
