//! Ideals, primes and the Zariski topology of generalized rings with a finite
//! scalar carrier, together with localization and kernels of homomorphisms.
//!
//! Subsets of the carrier `A_[1]` are `u64` bitmasks over the enumeration
//! order of `GenRing::enumerate(1)`, so carriers hold at most 64 scalars.

use crate::error::{Error, Result};
use crate::fin::PartialBijection;
use crate::finite_ring::TableRig;
use crate::genring::{Elem, FiberVec, GenRing, GenRingOps};
use crate::report::LawReport;
use crate::rig::{Rig, RigElem};
use num_traits::ToPrimitive;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

pub const DEFAULT_CAP: usize = 64;
/// Index sets up to this size are checked by the ideal closure.
pub const DEFAULT_BOUND: usize = 4;
/// Sampled instances per ideal and per size `3..=bound`.
const STABILITY_TRIALS: usize = 64;
/// The equivalence-ideal closure is quartic in the carrier; keep it small.
pub const EQUIVALENCE_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Involution {
    /// `a ↦ 1 ⫽ a`.
    Native,
    /// `(a, b) ↦ (b, a)` on `A Π A`.
    Swap,
}

impl Involution {
    pub fn parse(s: &str) -> Result<Involution> {
        match s {
            "native" => Ok(Involution::Native),
            "swap" => Ok(Involution::Swap),
            _ => Err(Error::Domain(format!("unknown involution `{s}` (expected native or swap)"))),
        }
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn identity_family(a: Vec<Elem>) -> Result<FiberVec> {
    let n = a.len();
    FiberVec::new((0..n).collect(), n, a)
}

/// `(b ⊳ (a_x)) ⫽ d`, the generating operation of ideals.
fn sandwich(ring: &GenRing, b: &Elem, a: &[Elem], d: &Elem) -> Result<Elem> {
    let c = ring.mul(b, &identity_family(a.to_vec())?)?;
    ring.contract(&c, &FiberVec::single(d.clone()))
}

fn scalar_label(ring: &GenRing, a: &Elem) -> String {
    match (ring, a) {
        (GenRing::G(r) | GenRing::U(r), Elem::G(v)) if v.len() == 1 => match r.elem_to_json(&v[0]) {
            serde_json::Value::String(s) => s,
            other => other.to_string(),
        },
        (GenRing::FM(_), Elem::FM { entry: None, .. }) => "0".into(),
        (GenRing::FM(m), Elem::FM { entry: Some((k, _)), .. }) => m.label(*k).to_string(),
        (GenRing::Product(x, y), Elem::Pair(p, q)) => format!("({},{})", scalar_label(x, p), scalar_label(y, q)),
        _ => a.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealSet {
    #[serde(skip)]
    mask: u64,
    pub elements: Vec<String>,
}

impl IdealSet {
    /// Carrier indices, increasing.
    pub fn members(&self) -> Vec<usize> {
        bits(self.mask).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.mask >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecPoint {
    pub ideal: IdealSet,
    /// Generated by its symmetric elements.
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicOpen {
    pub f: String,
    /// Indices into the list of points.
    pub points: Vec<usize>,
}

/// An equivalence relation on the scalar carrier, stored as one mask per row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivIdeal {
    #[serde(skip)]
    rows: Vec<u64>,
    pub classes: Vec<Vec<String>>,
}

impl EquivIdeal {
    fn from_rows(rows: Vec<u64>, labels: &[String]) -> EquivIdeal {
        let mut seen = 0u64;
        let mut classes = Vec::new();
        for (a, &row) in rows.iter().enumerate() {
            if seen >> a & 1 == 0 {
                seen |= row;
                classes.push(bits(row).map(|b| labels[b].clone()).collect());
            }
        }
        EquivIdeal { rows, classes }
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rows.get(a).is_some_and(|r| r >> b & 1 == 1)
    }

    pub fn is_equivalence(&self) -> bool {
        let n = self.rows.len();
        (0..n).all(|a| self.related(a, a))
            && (0..n).all(|a| (0..n).all(|b| self.related(a, b) == self.related(b, a)))
            && (0..n).all(|a| bits(self.rows[a]).all(|b| self.rows[b] & !self.rows[a] == 0))
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(a, &r)| r == 1 << a)
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub ring: String,
    pub involution: Involution,
    pub carrier: Vec<String>,
    pub ideals: Vec<IdealSet>,
    pub primes: Vec<SpecPoint>,
    pub symmetric_primes: Vec<SpecPoint>,
    /// Each `V(𝔞)` as a set of indices into `primes`.
    pub closed_sets: Vec<Vec<usize>>,
    pub basic_opens: Vec<BasicOpen>,
    pub symmetric_closed_sets: Vec<Vec<usize>>,
    pub symmetric_basic_opens: Vec<BasicOpen>,
    /// `π(𝔭)` as an index into `symmetric_primes`.
    pub pi: Vec<Option<usize>>,
    pub checks: Vec<LawReport>,
}

impl Spectrum {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Carrier indices of each prime, in the listed order.
    pub fn prime_members(&self) -> Vec<Vec<usize>> {
        self.primes.iter().map(|p| p.ideal.members()).collect()
    }
}

/// Closed sets, basic opens and the lattice/basis checks over a point set.
struct Topology {
    closed: Vec<u64>,
    opens: Vec<(usize, u64)>,
    lattice_ok: bool,
    basis_ok: bool,
}

fn topology(points: &[u64], ideals: &[u64], fs: &[usize]) -> Topology {
    let all = full_mask(points.len());
    let v = |a: u64| points.iter().enumerate().filter(|(_, &p)| p & a == a).fold(0u64, |m, (k, _)| m | 1 << k);
    let closed: BTreeSet<u64> = ideals.iter().map(|&a| v(a)).collect();
    let lattice_ok = closed.contains(&all)
        && closed.iter().all(|&c| closed.iter().all(|&d| closed.contains(&(c & d)) && closed.contains(&(c | d))));
    let opens: Vec<(usize, u64)> = fs
        .iter()
        .map(|&f| (f, points.iter().enumerate().filter(|(_, &p)| p >> f & 1 == 0).fold(0u64, |m, (k, _)| m | 1 << k)))
        .collect();
    let basis_ok = opens.iter().all(|(_, o)| closed.contains(&(all & !o)))
        && closed.iter().all(|&c| {
            let open = all & !c;
            opens.iter().filter(|(_, o)| o & !open == 0).fold(0u64, |m, (_, o)| m | o) == open
        });
    Topology { closed: closed.into_iter().collect(), opens, lattice_ok, basis_ok }
}

fn point_list(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

/// Scalar carrier of a finite generalized ring with the tables needed to
/// close subsets into ideals.
pub struct Spectral {
    ring: GenRing,
    involution: Involution,
    bound: usize,
    elems: Vec<Elem>,
    labels: Vec<String>,
    index: HashMap<Elem, usize>,
    zero: usize,
    one: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    sym: u64,
    /// Results of the generating operation over `X = ∅`, `|X| = 1` and `|X| = 2`.
    t0: u64,
    t1: Vec<u64>,
    t2: Vec<Vec<u64>>,
}

impl Spectral {
    pub fn new(ring: &GenRing, involution: Involution) -> Result<Spectral> {
        Spectral::with_limits(ring, involution, DEFAULT_CAP, DEFAULT_BOUND)
    }

    pub fn with_limits(ring: &GenRing, involution: Involution, cap: usize, bound: usize) -> Result<Spectral> {
        let elems = ring.enumerate(1).ok_or_else(|| Error::NotEnumerable(ring.label()))?;
        let n = elems.len();
        if n > cap.min(64) {
            return Err(Error::TooLarge(format!("{} has {n} scalars (cap {})", ring.label(), cap.min(64))));
        }
        if bound < 2 {
            return Err(Error::Domain("the closure bound must be at least 2".into()));
        }
        let deg2 = ring.enumerate(2).ok_or_else(|| Error::NotEnumerable(ring.label()))?;
        let index: HashMap<Elem, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let find = |e: Elem| {
            index
                .get(&e)
                .copied()
                .ok_or_else(|| Error::Malformed(format!("{e} is outside the carrier of {}", ring.label())))
        };
        let zero = find(ring.zero(1))?;
        let one = find(ring.one())?;
        let mul = elems
            .iter()
            .map(|a| elems.iter().map(|b| find(ring.mul(a, &FiberVec::single(b.clone()))?)).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        let inv = match (involution, ring) {
            (Involution::Native, _) => {
                elems.iter().map(|a| find(ring.scalar_involution(a)?)).collect::<Result<Vec<_>>>()?
            }
            (Involution::Swap, GenRing::Product(x, y)) if x == y => elems
                .iter()
                .map(|a| match a {
                    Elem::Pair(p, q) => find(Elem::pair((**q).clone(), (**p).clone())),
                    _ => Err(Error::Malformed(format!("{a} is not a pair"))),
                })
                .collect::<Result<Vec<_>>>()?,
            (Involution::Swap, _) => {
                return Err(Error::Domain("the swap involution needs a ring of the form A Π A".into()))
            }
        };
        let sym = (0..n).filter(|&a| inv[a] == a).fold(0u64, |m, a| m | 1 << a);
        let empty = ring.zero(0);
        let t0 = 1u64 << find(sandwich(ring, &empty, &[], &empty)?)?;
        let t1 = elems
            .par_iter()
            .map(|a| {
                let mut m = 0u64;
                for b in &elems {
                    for d in &elems {
                        m |= 1 << find(sandwich(ring, b, std::slice::from_ref(a), d)?)?;
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<u64>>>()?;
        let t2 = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let fam = identity_family(vec![elems[i].clone(), elems[j].clone()])?;
                        let cs: HashSet<Elem> = deg2.iter().map(|b| ring.mul(b, &fam)).collect::<Result<_>>()?;
                        let mut m = 0u64;
                        for c in &cs {
                            for d in &deg2 {
                                m |= 1 << find(ring.contract(c, &FiberVec::single(d.clone()))?)?;
                            }
                        }
                        Ok(m)
                    })
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = elems.iter().map(|e| scalar_label(ring, e)).collect();
        Ok(Spectral {
            ring: ring.clone(),
            involution,
            bound,
            elems,
            labels,
            index,
            zero,
            one,
            mul,
            inv,
            sym,
            t0,
            t1,
            t2,
        })
    }

    pub fn ring(&self) -> &GenRing {
        &self.ring
    }

    pub fn carrier(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn index_of(&self, a: &Elem) -> Result<usize> {
        self.index
            .get(a)
            .copied()
            .ok_or_else(|| Error::Malformed(format!("{a} is not a scalar of {}", self.ring.label())))
    }

    /// Index of the scalar with the given label.
    pub fn index_of_label(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Parse(format!("`{label}` is not a scalar of {}", self.ring.label())))
    }

    fn set(&self, mask: u64) -> IdealSet {
        IdealSet { mask, elements: bits(mask).map(|i| self.labels[i].clone()).collect() }
    }

    /// An arbitrary subset, not necessarily an ideal.
    pub fn subset(&self, elems: &[Elem]) -> Result<IdealSet> {
        let mut mask = 0u64;
        for e in elems {
            mask |= 1 << self.index_of(e)?;
        }
        Ok(self.set(mask))
    }

    fn close(&self, mut mask: u64) -> u64 {
        mask |= self.t0;
        loop {
            let mut next = mask;
            for a in bits(mask) {
                next |= self.t1[a];
                for b in bits(mask) {
                    next |= self.t2[a][b];
                }
            }
            if next == mask {
                return mask;
            }
            mask = next;
        }
    }

    /// Samples the generating operation over `3 ≤ |X| ≤ bound` and reports
    /// whether every result stays in the ideal.
    fn stable_beyond_two(&self, mask: u64, seed: u64) -> Result<bool> {
        let members: Vec<usize> = bits(mask).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ mask);
        for len in 3..=self.bound {
            for _ in 0..STABILITY_TRIALS {
                let b = self.ring.sample(len, &mut rng);
                let d = self.ring.sample(len, &mut rng);
                let a: Vec<Elem> = (0..len)
                    .map(|_| self.elems[*members.choose(&mut rng).expect("ideals contain 0")].clone())
                    .collect();
                if mask >> self.index_of(&sandwich(&self.ring, &b, &a, &d)?)? & 1 == 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn ideal_generate(&self, gens: &[Elem]) -> Result<IdealSet> {
        let mask = self.close(self.subset(gens)?.mask);
        if !self.stable_beyond_two(mask, 0x1dea1)? {
            return Err(Error::NotIdeal(format!("closure of {gens:?} is not stable at |X| ≤ {}", self.bound)));
        }
        Ok(self.set(mask))
    }

    pub fn is_ideal(&self, a: &IdealSet) -> bool {
        self.close(a.mask) == a.mask
    }

    fn require_ideal(&self, a: &IdealSet) -> Result<()> {
        if self.is_ideal(a) {
            Ok(())
        } else {
            Err(Error::NotIdeal(format!("{{{}}}", a.elements.join(", "))))
        }
    }

    fn prime_mask(&self, p: u64) -> bool {
        let s: Vec<usize> = (0..self.elems.len()).filter(|&a| p >> a & 1 == 0).collect();
        p >> self.one & 1 == 0 && s.iter().all(|&a| s.iter().all(|&b| p >> self.mul[a][b] & 1 == 0))
    }

    fn symmetric_mask(&self, p: u64) -> bool {
        self.close(p & self.sym) == p
    }

    fn symmetric_prime_mask(&self, p: u64) -> bool {
        let s: Vec<usize> = bits(self.sym & !p).collect();
        self.symmetric_mask(p)
            && p >> self.one & 1 == 0
            && s.iter().all(|&a| s.iter().all(|&b| p >> self.mul[a][b] & 1 == 0))
    }

    /// The complement of `𝔭` is multiplicative.
    pub fn is_prime(&self, p: &IdealSet) -> Result<bool> {
        self.require_ideal(p)?;
        Ok(self.prime_mask(p.mask))
    }

    pub fn is_symmetric(&self, p: &IdealSet) -> Result<bool> {
        self.require_ideal(p)?;
        Ok(self.symmetric_mask(p.mask))
    }

    /// A symmetric ideal whose symmetric complement is multiplicative.
    pub fn is_symmetric_prime(&self, p: &IdealSet) -> Result<bool> {
        self.require_ideal(p)?;
        Ok(self.symmetric_prime_mask(p.mask))
    }

    /// The image of `p` under the involution.
    pub fn transpose(&self, p: &IdealSet) -> IdealSet {
        self.set(bits(p.mask).fold(0u64, |m, a| m | 1 << self.inv[a]))
    }

    fn all_ideals(&self) -> Vec<u64> {
        let n = self.elems.len();
        let start = self.close(0);
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for a in 0..n {
                if i >> a & 1 == 0 {
                    let j = self.close(i | 1 << a);
                    if seen.insert(j) {
                        queue.push_back(j);
                    }
                }
            }
        }
        let mut ideals: Vec<u64> = seen.into_iter().collect();
        ideals.sort_by_key(|m| (m.count_ones(), m.reverse_bits()));
        ideals
    }

    pub fn ideals(&self) -> Vec<IdealSet> {
        self.all_ideals().into_iter().map(|m| self.set(m)).collect()
    }

    /// Every ideal, prime and symmetric prime, with the closed sets, basic
    /// opens and the projection to symmetric primes.
    pub fn enumerate(&self) -> Result<Spectrum> {
        let n = self.elems.len();
        let ideals = self.all_ideals();
        let stable = ideals
            .par_iter()
            .map(|&m| self.stable_beyond_two(m, 0x5eed))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        let full = full_mask(n);
        let primes: Vec<u64> = ideals.iter().copied().filter(|&p| self.prime_mask(p)).collect();
        let sym_primes: Vec<u64> = ideals.iter().copied().filter(|&p| self.symmetric_prime_mask(p)).collect();
        if primes.len() > 64 || sym_primes.len() > 64 {
            return Err(Error::TooLarge("more than 64 points".into()));
        }
        let proper: Vec<u64> = ideals.iter().copied().filter(|&a| a != full).collect();
        let maximal_among = |set: &[u64]| -> Vec<u64> {
            set.iter().copied().filter(|&a| !set.iter().any(|&b| b != a && b & a == a)).collect()
        };
        let maximal = maximal_among(&proper);
        let sym_proper: Vec<u64> = proper.iter().copied().filter(|&a| self.symmetric_mask(a)).collect();
        let maximal_sym = maximal_among(&sym_proper);

        let all_f: Vec<usize> = (0..n).collect();
        let sym_f: Vec<usize> = bits(self.sym).collect();
        let top = topology(&primes, &ideals, &all_f);
        let top_sym = topology(&sym_primes, &ideals, &sym_f);
        let pi: Vec<Option<usize>> =
            primes.iter().map(|&p| sym_primes.iter().position(|&q| q == self.close(p & self.sym))).collect();
        let pi_continuous = pi.iter().all(Option::is_some)
            && top_sym.closed.iter().all(|&c| {
                let pre = pi
                    .iter()
                    .enumerate()
                    .filter(|(_, q)| q.is_some_and(|q| c >> q & 1 == 1))
                    .fold(0u64, |m, (k, _)| m | 1 << k);
                top.closed.contains(&pre)
            });

        let nonzero = self.one != self.zero;
        let law = |name: &str, ok: bool, trials: usize, why: &str| {
            if ok {
                LawReport::pass(name, trials)
            } else {
                LawReport::fail(name, trials, why)
            }
        };
        let checks = vec![
            law("closure-stable", stable, ideals.len(), "an ideal is not closed at a larger index set"),
            law(
                "maximal-ideals-prime",
                maximal.iter().all(|&m| self.prime_mask(m))
                    && maximal_sym.iter().all(|&m| self.symmetric_prime_mask(m)),
                maximal.len() + maximal_sym.len(),
                "a maximal ideal is not prime",
            ),
            law(
                "spectrum-nonempty",
                !nonzero || (!primes.is_empty() && !sym_primes.is_empty()),
                1,
                "a nonzero ring with no prime",
            ),
            law(
                "closed-sets-lattice",
                top.lattice_ok && top_sym.lattice_ok,
                top.closed.len() + top_sym.closed.len(),
                "V-sets not closed under finite unions and intersections",
            ),
            law("basic-opens-basis", top.basis_ok && top_sym.basis_ok, n, "basic opens do not generate the topology"),
            law("pi-continuous", pi_continuous, primes.len(), "π is undefined or not continuous"),
        ];

        let point = |p: u64| SpecPoint { ideal: self.set(p), symmetric: self.symmetric_mask(p) };
        let opens = |t: &Topology| {
            t.opens.iter().map(|&(f, o)| BasicOpen { f: self.labels[f].clone(), points: point_list(o) }).collect()
        };
        Ok(Spectrum {
            ring: self.ring.label(),
            involution: self.involution,
            carrier: self.labels.clone(),
            ideals: ideals.iter().map(|&m| self.set(m)).collect(),
            primes: primes.iter().map(|&p| point(p)).collect(),
            symmetric_primes: sym_primes.iter().map(|&p| point(p)).collect(),
            closed_sets: top.closed.iter().map(|&c| point_list(c)).collect(),
            basic_opens: opens(&top),
            symmetric_closed_sets: top_sym.closed.iter().map(|&c| point_list(c)).collect(),
            symmetric_basic_opens: opens(&top_sym),
            pi,
            checks,
        })
    }

    /// The equivalence ideal generated by the pairs `(a, 0)`, `a ∈ 𝔞`: the
    /// least equivalence relation on scalars containing them and closed under
    /// `(b ⊳ (p_x)) ⫽ d` with `b, d` acting diagonally, `|X| ≤ 2`.
    pub fn equivalence_of_ideal(&self, ideal: &IdealSet) -> Result<EquivIdeal> {
        self.require_ideal(ideal)?;
        let n = self.elems.len();
        if n > EQUIVALENCE_CAP {
            return Err(Error::TooLarge(format!("equivalence closure limited to {EQUIVALENCE_CAP} scalars")));
        }
        let deg2 = self.ring.enumerate(2).ok_or_else(|| Error::NotEnumerable(self.ring.label()))?;
        let outcomes = |a: &[Elem], pool: &[Elem]| -> Result<Vec<usize>> {
            let mut out = Vec::with_capacity(pool.len() * pool.len());
            for b in pool {
                for d in pool {
                    out.push(self.index_of(&sandwich(&self.ring, b, a, d)?)?);
                }
            }
            Ok(out)
        };
        let r1 =
            self.elems.iter().map(|a| outcomes(std::slice::from_ref(a), &self.elems)).collect::<Result<Vec<_>>>()?;
        let r2 = (0..n)
            .into_par_iter()
            .map(|i| (0..n).map(|j| outcomes(&[self.elems[i].clone(), self.elems[j].clone()], &deg2)).collect())
            .collect::<Result<Vec<Vec<Vec<usize>>>>>()?;

        let mut rows: Vec<u64> = (0..n).map(|a| 1u64 << a).collect();
        for a in bits(ideal.mask) {
            rows[a] |= 1 << self.zero;
            rows[self.zero] |= 1 << a;
        }
        loop {
            let before = rows.clone();
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| bits(rows[a]).map(move |b| (a, b))).collect();
            for &(a, a2) in &pairs {
                for (x, y) in r1[a].iter().zip(&r1[a2]) {
                    rows[*x] |= 1 << y;
                }
                for &(b, b2) in &pairs {
                    for (x, y) in r2[a][b].iter().zip(&r2[a2][b2]) {
                        rows[*x] |= 1 << y;
                    }
                }
            }
            // symmetric and transitive closure
            for a in 0..n {
                for b in bits(rows[a]) {
                    rows[b] |= 1 << a;
                }
            }
            for k in 0..n {
                for a in 0..n {
                    if rows[a] >> k & 1 == 1 {
                        rows[a] |= rows[k];
                    }
                }
            }
            if rows == before {
                return Ok(EquivIdeal::from_rows(rows, &self.labels));
            }
        }
    }

    /// `{a : (a, 0) ∈ ℰ}`.
    pub fn ideal_of_equivalence(&self, e: &EquivIdeal) -> IdealSet {
        self.set((0..self.elems.len()).filter(|&a| e.related(a, self.zero)).fold(0u64, |m, a| m | 1 << a))
    }

    /// Whether localizing at the symmetric complement of `𝔭` gives a ring
    /// with exactly one maximal symmetric ideal.
    pub fn stalk_is_local(&self, p: &IdealSet) -> Result<bool> {
        if !self.is_symmetric_prime(p)? {
            return Err(Error::Domain(format!("{{{}}} is not a symmetric prime", p.elements.join(", "))));
        }
        let s: Vec<Elem> = bits(self.sym & !p.mask).map(|a| self.elems[a].clone()).collect();
        let local = localize(&self.ring, &s)?;
        let spec = Spectral::new(&local.ring, Involution::Native)?;
        let ideals = spec.all_ideals();
        let full = full_mask(spec.elems.len());
        let sym_proper: Vec<u64> = ideals.into_iter().filter(|&a| a != full && spec.symmetric_mask(a)).collect();
        let maximal = sym_proper.iter().filter(|&&a| !sym_proper.iter().any(|&b| b != a && b & a == a)).count();
        Ok(maximal == 1)
    }
}

/// `S⁻¹A` with the canonical map `φ_S`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub ring: GenRing,
    /// The multiplicative set generated by the input, as labels.
    pub s: Vec<String>,
    source: GenRing,
    s_elems: Vec<Elem>,
    map: LocMap,
}

#[derive(Clone, Debug)]
enum LocMap {
    Identity,
    /// `ℤ` or `ℤ[1/N]` into a larger `ℤ[1/N']`.
    Integers,
    Table(Vec<usize>),
}

fn prime_factors(mut k: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= k {
        if k.is_multiple_of(p) {
            out.push(p as u64);
            while k.is_multiple_of(p) {
                k /= p;
            }
        }
        p += 1;
    }
    if k > 1 {
        out.push(k as u64);
    }
    out
}

fn single_coord(a: &Elem) -> Result<&RigElem> {
    match a {
        Elem::G(v) if v.len() == 1 => Ok(&v[0]),
        _ => Err(Error::Malformed(format!("{a} is not a scalar"))),
    }
}

fn table_of(r: &Rig) -> Option<TableRig> {
    match r {
        Rig::ZMod(m) => Some(TableRig::zmod(*m as usize)),
        Rig::Table(t) => Some((**t).clone()),
        _ => None,
    }
}

/// Fractions `r/s` over a finite commutative rig: `(r,s) ~ (r',s')` iff
/// `u·r·s' = u·r'·s` for some `u ∈ S`.
fn fraction_table(t: &TableRig, s: &[usize]) -> Result<(TableRig, Vec<usize>)> {
    let n = t.size();
    let m = &t.mul;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|r| s.iter().map(move |&d| (r, d))).collect();
    let equiv = |(r, d): (usize, usize), (r2, d2): (usize, usize)| s.iter().any(|&u| m[u][m[r][d2]] == m[u][m[r2][d]]);
    let rep = |p: (usize, usize)| pairs.iter().position(|&q| equiv(p, q)).expect("a pair is equivalent to itself");
    let reps: Vec<usize> = (0..pairs.len()).filter(|&i| rep(pairs[i]) == i).collect();
    let label = |&i: &usize| {
        let (r, d) = pairs[i];
        match (0..n).find(|&r2| equiv((r, d), (r2, t.one))) {
            Some(r2) => t.labels[r2].clone(),
            None => format!("{}/{}", t.labels[r], t.labels[d]),
        }
    };
    let name = format!("{}[1/{}]", t.name, s.iter().map(|&d| t.labels[d].as_str()).collect::<Vec<_>>().join(","));
    let table = TableRig::from_ops(
        &name,
        reps.clone(),
        rep((t.zero, t.one)),
        rep((t.one, t.one)),
        |&a, &b| {
            let ((r, d), (r2, d2)) = (pairs[a], pairs[b]);
            rep((t.add[m[r][d2]][m[r2][d]], m[d][d2]))
        },
        |&a, &b| {
            let ((r, d), (r2, d2)) = (pairs[a], pairs[b]);
            rep((m[r][r2], m[d][d2]))
        },
        label,
    )?;
    let phi = (0..n).map(|r| reps.iter().position(|&i| i == rep((r, t.one))).expect("class representative")).collect();
    Ok((table, phi))
}

/// Localizes at the multiplicative set generated by the symmetric scalars `s`.
pub fn localize(ring: &GenRing, s: &[Elem]) -> Result<Localization> {
    for a in s {
        if a.len() != 1 {
            return Err(Error::Dimension { expected: 1, found: a.len() });
        }
        if ring.scalar_involution(a)? != *a {
            return Err(Error::Domain(format!("{a} is not symmetric")));
        }
    }
    let done = |ring: GenRing, labels: Vec<String>, s_elems: Vec<Elem>, map: LocMap, source: &GenRing| Localization {
        ring,
        s: labels,
        source: source.clone(),
        s_elems,
        map,
    };
    match ring {
        GenRing::G(r @ (Rig::Int | Rig::ZInv(_))) => {
            let mut primes: BTreeSet<u64> = match r {
                Rig::ZInv(ps) => ps.iter().copied().collect(),
                _ => BTreeSet::new(),
            };
            for a in s {
                let v = match single_coord(a)? {
                    RigElem::Int(k) => *k,
                    RigElem::Rat(q) if q.is_integer() => q.numer().to_i128().ok_or(Error::Overflow("localization"))?,
                    other => return Err(Error::Domain(format!("{other} is not an integer"))),
                };
                if v == 0 {
                    return Err(Error::Domain(
                        "S contains 0, so it is not a multiplicative set of nonzero divisors".into(),
                    ));
                }
                primes.extend(prime_factors(v.unsigned_abs()));
            }
            let labels = s.iter().map(|a| scalar_label(ring, a)).collect();
            let target = match (r, primes.is_empty()) {
                (Rig::Int, true) => return Ok(done(ring.clone(), labels, s.to_vec(), LocMap::Identity, ring)),
                _ => GenRing::G(Rig::ZInv(primes.into_iter().collect())),
            };
            Ok(done(target, labels, s.to_vec(), LocMap::Integers, ring))
        }
        GenRing::G(r) if table_of(r).is_some() => {
            let t = table_of(r).expect("checked");
            let idx = |a: &Elem| -> Result<usize> {
                match single_coord(a)? {
                    RigElem::Int(k) if *k >= 0 && (*k as usize) < t.size() => Ok(*k as usize),
                    other => Err(Error::Carrier { rig: r.name(), value: other.to_string() }),
                }
            };
            let mut closed: BTreeSet<usize> = BTreeSet::from([t.one]);
            for a in s {
                closed.insert(idx(a)?);
            }
            loop {
                let mt = &t.mul;
                let next: BTreeSet<usize> = closed
                    .iter()
                    .flat_map(|&a| closed.iter().map(move |&b| mt[a][b]))
                    .chain(closed.iter().copied())
                    .collect();
                if next == closed {
                    break;
                }
                closed = next;
            }
            let members: Vec<usize> = closed.into_iter().collect();
            let (table, phi) = fraction_table(&t, &members)?;
            let labels = members.iter().map(|&i| t.labels[i].clone()).collect();
            let s_elems = members.iter().map(|&i| Elem::G(vec![RigElem::Int(i as i128)])).collect();
            Ok(done(GenRing::G(Rig::Table(Arc::new(table))), labels, s_elems, LocMap::Table(phi), ring))
        }
        GenRing::FM(mon) => {
            let mut labels = Vec::new();
            for a in s {
                match a {
                    Elem::FM { entry: Some((k, _)), .. } if (0..mon.size()).any(|j| mon.mul(*k, j) == mon.unit()) => {
                        labels.push(mon.label(*k).to_string())
                    }
                    _ => {
                        return Err(Error::Domain(format!(
                            "{a} is not a unit; only units can be inverted in {}",
                            ring.label()
                        )))
                    }
                }
            }
            Ok(done(ring.clone(), labels, s.to_vec(), LocMap::Identity, ring))
        }
        _ => Err(Error::Domain(format!(
            "localization of {} is not supported (use G over int, zinv, zmod or a finite table, or F{{M}})",
            ring.label()
        ))),
    }
}

impl Localization {
    pub fn source(&self) -> &GenRing {
        &self.source
    }

    /// `φ_S`, degreewise.
    pub fn phi(&self, a: &Elem) -> Result<Elem> {
        match (&self.map, a) {
            (LocMap::Identity, _) => Ok(a.clone()),
            (LocMap::Integers, Elem::G(v)) => Ok(Elem::G(
                v.iter()
                    .map(|e| match e {
                        RigElem::Int(k) => Ok(RigElem::Rat(num_rational::BigRational::from_integer((*k).into()))),
                        RigElem::Rat(_) => Ok(e.clone()),
                        other => Err(Error::Carrier { rig: self.source.label(), value: other.to_string() }),
                    })
                    .collect::<Result<_>>()?,
            )),
            (LocMap::Table(phi), Elem::G(v)) => Ok(Elem::G(
                v.iter()
                    .map(|e| match e {
                        RigElem::Int(k) if *k >= 0 && (*k as usize) < phi.len() => {
                            Ok(RigElem::Int(phi[*k as usize] as i128))
                        }
                        other => Err(Error::Carrier { rig: self.source.label(), value: other.to_string() }),
                    })
                    .collect::<Result<_>>()?,
            )),
            _ => Err(Error::Malformed(format!("{a} is not an element of {}", self.source.label()))),
        }
    }

    /// Every `φ_S(s)` is a unit of the localization.
    pub fn inverts_s(&self) -> Result<bool> {
        for s in &self.s_elems {
            let image = self.phi(s)?;
            let unit = match (&self.ring, &image) {
                (GenRing::G(r), Elem::G(v)) => r.inverse(&v[0]).is_some(),
                (GenRing::FM(_), Elem::FM { entry: Some(_), .. }) => true,
                _ => false,
            };
            if !unit {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A homomorphism between finite generalized rings, given on scalars and
/// extended coordinatewise.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: GenRing,
    target: GenRing,
    carrier: Vec<Elem>,
    index: HashMap<Elem, usize>,
    images: Vec<Elem>,
}

impl RingHom {
    pub fn from_scalars(source: &GenRing, target: &GenRing, f: impl Fn(&Elem) -> Result<Elem>) -> Result<RingHom> {
        if !matches!(source, GenRing::G(_) | GenRing::U(_) | GenRing::FM(_)) {
            return Err(Error::Domain(format!("homomorphisms out of {} are not supported", source.label())));
        }
        let carrier = source.enumerate(1).ok_or_else(|| Error::NotEnumerable(source.label()))?;
        let images = carrier.iter().map(&f).collect::<Result<Vec<_>>>()?;
        let index = carrier.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(RingHom { source: source.clone(), target: target.clone(), carrier, index, images })
    }

    pub fn identity(ring: &GenRing) -> Result<RingHom> {
        RingHom::from_scalars(ring, ring, |a| Ok(a.clone()))
    }

    fn image_of_scalar(&self, a: &Elem) -> Result<&Elem> {
        let i = self
            .index
            .get(a)
            .ok_or_else(|| Error::Malformed(format!("{a} is not a scalar of {}", self.source.label())))?;
        Ok(&self.images[*i])
    }

    pub fn apply(&self, a: &Elem) -> Result<Elem> {
        match a {
            Elem::G(v) => {
                let mut out = Vec::with_capacity(v.len());
                for e in v {
                    match self.image_of_scalar(&Elem::G(vec![e.clone()]))? {
                        Elem::G(w) if w.len() == 1 => out.push(w[0].clone()),
                        other => {
                            return Err(Error::NotHomomorphism(format!("scalar image {other} is not a coordinate")))
                        }
                    }
                }
                Ok(Elem::G(out))
            }
            Elem::FM { len, entry: None } => Ok(self.target.zero(*len)),
            Elem::FM { len, entry: Some((m, x)) } => {
                let scalar = self.image_of_scalar(&Elem::FM { len: 1, entry: Some((*m, 0)) })?;
                self.target.act(&PartialBijection::new(1, *len, vec![(0, *x)])?, scalar)
            }
            other => Err(Error::Malformed(format!("{other} is not an element of {}", self.source.label()))),
        }
    }

    fn apply_fib(&self, b: &FiberVec) -> Result<FiberVec> {
        FiberVec::new(b.map().to_vec(), b.target(), b.fibers().iter().map(|e| self.apply(e)).collect::<Result<_>>()?)
    }

    /// Checks unit, multiplication and contraction on sampled instances over
    /// every map `f : X → Y` with `|X|, |Y| ∈ {1, 2}`.
    pub fn check(&self, trials: usize, seed: u64) -> Result<()> {
        let fail = |what: &str, w: String| Err(Error::NotHomomorphism(format!("{what}: {w}")));
        if !self.target.same(&self.apply(&self.source.one())?, &self.target.one()) {
            return fail("unit", self.apply(&self.source.one())?.to_string());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for ny in 1..=2usize {
            for nx in 1..=2usize {
                for code in 0..ny.pow(nx as u32) {
                    let map: Vec<usize> = (0..nx).map(|i| code / ny.pow(i as u32) % ny).collect();
                    for _ in 0..trials {
                        let a = self.source.sample(ny, &mut rng);
                        let b = self.source.sample_fib(&map, ny, &mut rng);
                        let lhs = self.apply(&self.source.mul(&a, &b)?)?;
                        let rhs = self.target.mul(&self.apply(&a)?, &self.apply_fib(&b)?)?;
                        if !self.target.same(&lhs, &rhs) {
                            return fail("multiplication", format!("{a} ⊳ {b}"));
                        }
                        let c = self.source.sample(nx, &mut rng);
                        let lhs = self.apply(&self.source.contract(&c, &b)?)?;
                        let rhs = self.target.contract(&self.apply(&c)?, &self.apply_fib(&b)?)?;
                        if !self.target.same(&lhs, &rhs) {
                            return fail("contraction", format!("{c} ⫽ {b}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Kernel {
    /// `KER(φ)` on scalars.
    pub relation: EquivIdeal,
    /// `|A_X / KER_X|` for `|X| = 1, 2`.
    pub classes: [usize; 2],
    /// `|φ(A_X)|` for `|X| = 1, 2`.
    pub image_sizes: [usize; 2],
    #[serde(serialize_with = "ser_ring")]
    pub quotient: Option<GenRing>,
    pub checks: Vec<LawReport>,
}

fn ser_ring<S: serde::Serializer>(r: &Option<GenRing>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.label()),
        None => s.serialize_none(),
    }
}

/// `KER(φ) = A Π_B A` and the quotient `A / KER(φ)`, with the factorization
/// through the image checked on `|X| ≤ 2`.
pub fn ker_and_quotient(phi: &RingHom) -> Result<Kernel> {
    phi.check(64, 0x4e7)?;
    let a = &phi.source;
    let n = phi.carrier.len();
    if n > 64 {
        return Err(Error::TooLarge(format!("{} has {n} scalars", a.label())));
    }
    let labels: Vec<String> = phi.carrier.iter().map(|e| scalar_label(a, e)).collect();
    let rows: Vec<u64> = (0..n)
        .map(|i| (0..n).filter(|&j| phi.target.same(&phi.images[i], &phi.images[j])).fold(0u64, |m, j| m | 1 << j))
        .collect();
    let relation = EquivIdeal::from_rows(rows, &labels);

    let deg2 = a.enumerate(2).ok_or_else(|| Error::NotEnumerable(a.label()))?;
    let images2: Vec<Elem> = deg2.iter().map(|e| phi.apply(e)).collect::<Result<_>>()?;
    let distinct = |v: &[Elem]| v.iter().collect::<HashSet<_>>().len();
    let classes = [relation.classes.len(), distinct(&images2)];
    let image_sizes = [distinct(&phi.images), distinct(&images2)];

    // KER is closed under the operations of A Π A: related inputs give related outputs
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e7);
    let mut subring = true;
    for _ in 0..256 {
        let pick = |rng: &mut ChaCha8Rng, pool: &[Elem], images: &[Elem]| {
            let i = rand::Rng::random_range(rng, 0..pool.len());
            let partners: Vec<usize> = (0..pool.len()).filter(|&j| images[j] == images[i]).collect();
            (pool[i].clone(), pool[*partners.choose(rng).expect("related to itself")].clone())
        };
        let (b, b2) = pick(&mut rng, &deg2, &images2);
        let (x, x2) = pick(&mut rng, &phi.carrier, &phi.images);
        let (y, y2) = pick(&mut rng, &phi.carrier, &phi.images);
        let (d, d2) = pick(&mut rng, &deg2, &images2);
        let lhs = sandwich(a, &b, &[x, y], &d)?;
        let rhs = sandwich(a, &b2, &[x2, y2], &d2)?;
        subring &= phi.target.same(&phi.apply(&lhs)?, &phi.apply(&rhs)?);
    }

    let quotient = if relation.is_diagonal() && classes[1] == deg2.len() {
        Some(a.clone())
    } else if let GenRing::G(r) = a {
        match table_of(r) {
            Some(t) => {
                let rep = |i: usize| relation.rows[i].trailing_zeros() as usize;
                let reps: Vec<usize> = (0..n).filter(|&i| rep(i) == i).collect();
                let q = TableRig::from_ops(
                    &format!("{}/ker", t.name),
                    reps,
                    rep(t.zero),
                    rep(t.one),
                    |&x, &y| rep(t.add[x][y]),
                    |&x, &y| rep(t.mul[x][y]),
                    |&x| t.labels[x].clone(),
                )?;
                Some(GenRing::G(Rig::Table(Arc::new(q))))
            }
            None => None,
        }
    } else {
        None
    };

    let law = |name: &str, ok: bool, trials: usize, why: &str| {
        if ok {
            LawReport::pass(name, trials)
        } else {
            LawReport::fail(name, trials, why)
        }
    };
    let checks = vec![
        law("kernel-equivalence", relation.is_equivalence(), relation.pair_count(), "not an equivalence relation"),
        law("kernel-subring", subring, 256, "related inputs gave unrelated outputs"),
        law("factorization", classes == image_sizes, 2, "A/KER and φ(A) differ in size"),
    ];
    Ok(Kernel { relation, classes, image_sizes, quotient, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genring::{field_with_one_element, make_fm, product_ring, Monoid};
    use proptest::prelude::*;

    fn g(name: &str) -> GenRing {
        GenRing::parse(name).unwrap()
    }

    fn scalar(k: i128) -> Elem {
        Elem::G(vec![RigElem::Int(k)])
    }

    fn table(t: TableRig) -> GenRing {
        GenRing::G(Rig::Table(Arc::new(t)))
    }

    #[test]
    fn generated_ideals() {
        let s = Spectral::new(&g("G:zmod:6"), Involution::Native).unwrap();
        assert_eq!(s.ideal_generate(&[scalar(2)]).unwrap().members(), vec![0, 2, 4]);
        assert_eq!(s.ideal_generate(&[]).unwrap().members(), vec![0]);
        assert_eq!(s.ideal_generate(&[scalar(2), scalar(3)]).unwrap().len(), 6);
        let f = Spectral::new(&field_with_one_element(), Involution::Native).unwrap();
        assert_eq!(f.carrier(), ["0", "1"]);
        assert_eq!(f.ideal_generate(&[f.elements()[1].clone()]).unwrap().len(), 2);
    }

    #[test]
    fn primality() {
        let s = Spectral::new(&g("G:zmod:6"), Involution::Native).unwrap();
        let two = s.ideal_generate(&[scalar(2)]).unwrap();
        assert!(s.is_prime(&two).unwrap());
        assert!(!s.is_prime(&s.ideal_generate(&[]).unwrap()).unwrap());
        assert!(!s.is_prime(&s.ideal_generate(&[scalar(1)]).unwrap()).unwrap());
        let not_ideal = s.subset(&[scalar(0), scalar(2)]).unwrap();
        assert!(matches!(s.is_prime(&not_ideal), Err(Error::NotIdeal(_))));
    }

    #[test]
    fn small_spectra() {
        let spec = Spectral::new(&g("G:zmod:6"), Involution::Native).unwrap().enumerate().unwrap();
        assert_eq!(spec.prime_members(), vec![vec![0, 3], vec![0, 2, 4]]);
        assert_eq!(spec.ideals.len(), 4);
        assert!(spec.passed(), "{:?}", spec.checks);
        for ring in [field_with_one_element(), make_fm(Monoid::cyclic(2).unwrap())] {
            let spec = Spectral::new(&ring, Involution::Native).unwrap().enumerate().unwrap();
            assert_eq!(spec.primes.len(), 1);
            assert_eq!(spec.primes[0].ideal.elements, ["0"]);
            assert_eq!(spec.symmetric_primes.len(), 1);
            assert!(spec.passed());
        }
    }

    #[test]
    fn agrees_with_ordinary_spectrum() {
        for t in TableRig::catalogue() {
            let ring = table(t.clone());
            let spec = Spectral::new(&ring, Involution::Native).unwrap().enumerate().unwrap();
            let mut ideals: Vec<Vec<usize>> = spec.ideals.iter().map(|i| i.members()).collect();
            ideals.sort();
            let mut expected = t.ideals_brute_force();
            expected.sort();
            assert_eq!(ideals, expected, "{}", t.name);
            let mut primes = spec.prime_members();
            primes.sort();
            let mut expected = t.primes_brute_force();
            expected.sort();
            assert_eq!(primes, expected, "{}", t.name);
            // trivial involution: symmetric primes are the primes and π is the identity
            assert_eq!(spec.symmetric_primes, spec.primes);
            assert!(spec.pi.iter().enumerate().all(|(k, q)| *q == Some(k)));
            assert!(spec.passed(), "{}: {:?}", t.name, spec.checks);
        }
    }

    #[test]
    fn swap_involution() {
        let ring = product_ring(g("G:zmod:2"), g("G:zmod:2"));
        let s = Spectral::new(&ring, Involution::Swap).unwrap();
        let spec = s.enumerate().unwrap();
        assert_eq!(spec.primes.len(), 2);
        assert_eq!(spec.symmetric_primes.len(), 1);
        assert_eq!(spec.symmetric_primes[0].ideal.elements, ["(0,0)"]);
        for p in &spec.symmetric_primes {
            assert_eq!(s.transpose(&p.ideal), p.ideal);
        }
        assert_eq!(spec.pi, vec![Some(0), Some(0)]);
        assert!(spec.passed());
        assert!(Spectral::new(&g("G:zmod:4"), Involution::Swap).is_err());
    }

    #[test]
    fn nonfinite_carrier() {
        assert!(matches!(Spectral::new(&g("G:int"), Involution::Native), Err(Error::NotEnumerable(_))));
        assert!(matches!(Spectral::with_limits(&g("G:zmod:12"), Involution::Native, 10, 4), Err(Error::TooLarge(_))));
    }

    #[test]
    fn integer_localization() {
        let loc = localize(&g("G:int"), &[scalar(2)]).unwrap();
        assert_eq!(loc.ring, GenRing::G(Rig::ZInv(vec![2])));
        assert!(loc.inverts_s().unwrap());
        let image = loc.phi(&scalar(6)).unwrap();
        assert_eq!(image, Elem::G(vec![Rig::ZInv(vec![2]).from_int(6).unwrap()]));
        let id = localize(&g("G:int"), &[scalar(1)]).unwrap();
        assert_eq!(id.ring, g("G:int"));
        assert_eq!(id.phi(&scalar(5)).unwrap(), scalar(5));
        assert!(localize(&g("G:int"), &[scalar(0)]).is_err());
        assert_eq!(localize(&g("G:int"), &[scalar(12)]).unwrap().ring, GenRing::G(Rig::ZInv(vec![2, 3])));
    }

    #[test]
    fn finite_localization() {
        let loc = localize(&g("G:zmod:6"), &[scalar(3)]).unwrap();
        let GenRing::G(Rig::Table(t)) = &loc.ring else { panic!("expected a table") };
        assert_eq!(t.size(), 2);
        assert!(loc.inverts_s().unwrap());
        assert_eq!(loc.s, ["1", "3"]);
        let trivial = localize(&g("G:zmod:6"), &[]).unwrap();
        let GenRing::G(Rig::Table(t)) = &trivial.ring else { panic!("expected a table") };
        assert_eq!(t.size(), 6);
        let zero = localize(&g("G:zmod:4"), &[scalar(2)]).unwrap();
        let GenRing::G(Rig::Table(t)) = &zero.ring else { panic!("expected a table") };
        assert_eq!(t.size(), 1);
        let c2 = make_fm(Monoid::cyclic(2).unwrap());
        let gen = Elem::FM { len: 1, entry: Some((1, 0)) };
        assert_eq!(localize(&c2, &[gen]).unwrap().ring, c2);
        assert!(localize(&g("G:nat"), &[scalar(2)]).is_err());
    }

    #[test]
    fn local_stalks() {
        for t in TableRig::catalogue().into_iter().filter(|t| t.size() <= 8) {
            let s = Spectral::new(&table(t.clone()), Involution::Native).unwrap();
            for p in s.enumerate().unwrap().symmetric_primes {
                assert!(s.stalk_is_local(&p.ideal).unwrap(), "{} at {:?}", t.name, p.ideal.elements);
            }
        }
    }

    fn reduction(m: u64, k: u64) -> RingHom {
        let target = Rig::ZMod(k);
        RingHom::from_scalars(&g(&format!("G:zmod:{m}")), &GenRing::G(target.clone()), |a| {
            Ok(Elem::G(vec![target.from_int(single_coord(a)?.as_int().unwrap() as i64)?]))
        })
        .unwrap()
    }

    #[test]
    fn kernels() {
        let ker = ker_and_quotient(&reduction(6, 3)).unwrap();
        assert_eq!(ker.relation.classes, vec![vec!["0", "3"], vec!["1", "4"], vec!["2", "5"]]);
        assert_eq!(ker.classes, [3, 9]);
        let Some(GenRing::G(Rig::Table(q))) = &ker.quotient else { panic!("expected a table quotient") };
        assert_eq!(q.size(), 3);
        assert!(ker.checks.iter().all(|c| c.passed));

        let id = ker_and_quotient(&RingHom::identity(&g("G:zmod:6")).unwrap()).unwrap();
        assert!(id.relation.is_diagonal());
        assert_eq!(id.quotient, Some(g("G:zmod:6")));
        let f = ker_and_quotient(&RingHom::identity(&field_with_one_element()).unwrap()).unwrap();
        assert_eq!(f.quotient, Some(field_with_one_element()));

        // doubling is not multiplicative
        let target = Rig::ZMod(6);
        let bad = RingHom::from_scalars(&g("G:zmod:6"), &g("G:zmod:6"), |a| {
            Ok(Elem::G(vec![target.from_int(2 * single_coord(a)?.as_int().unwrap() as i64)?]))
        })
        .unwrap();
        assert!(matches!(ker_and_quotient(&bad), Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn galois_round_trip() {
        let s = Spectral::new(&g("G:zmod:6"), Involution::Native).unwrap();
        let ker = ker_and_quotient(&reduction(6, 3)).unwrap();
        let three = s.ideal_generate(&[scalar(3)]).unwrap();
        assert_eq!(s.equivalence_of_ideal(&three).unwrap(), ker.relation);
        assert_eq!(s.ideal_of_equivalence(&ker.relation), three);
        for ideal in s.ideals() {
            let e = s.equivalence_of_ideal(&ideal).unwrap();
            assert!(e.is_equivalence());
            assert_eq!(s.ideal_of_equivalence(&e), ideal);
        }
        let big = Spectral::new(&g("G:zmod:12"), Involution::Native).unwrap();
        let zero = big.ideal_generate(&[]).unwrap();
        assert!(matches!(big.equivalence_of_ideal(&zero), Err(Error::TooLarge(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn generated_ideals_are_closed(m in 2u64..=12, gens in proptest::collection::vec(0i128..12, 0..3)) {
            let s = Spectral::new(&g(&format!("G:zmod:{m}")), Involution::Native).unwrap();
            let gens: Vec<Elem> = gens.into_iter().map(|k| scalar(k % m as i128)).collect();
            let ideal = s.ideal_generate(&gens).unwrap();
            prop_assert!(s.is_ideal(&ideal));
            // in Z/m the ideal generated by a set is generated by the gcd with m
            let d = gens.iter().fold(m as i128, |acc, e| num_integer::gcd(acc, single_coord(e).unwrap().as_int().unwrap()));
            prop_assert_eq!(ideal.len() as i128, m as i128 / d);
        }
    }
}
