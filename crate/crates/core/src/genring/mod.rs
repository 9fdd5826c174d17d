//! Generalized rings: functors `X ↦ A_X` with multiplication
//! `⊳ : A_Y × A_f → A_X` and contraction `⫽ : A_X × A_f → A_Y` for total maps
//! `f : X → Y`, where `A_f = ∏_y A_{f⁻¹(y)}`.

mod laws;
mod monoid;

pub use laws::{
    axiom_law_names, axiom_suite, check_additivity_chain, check_homomorphism, check_initial_object, check_module_laws,
    check_scalar_laws, check_underlying_agrees, pullback, random_map,
};
pub use monoid::Monoid;

use crate::error::{Error, Result};
use crate::fin::PartialBijection;
use crate::fring::RigMatrix;
use crate::rig::{Rig, RigElem};
use rand::Rng;
use std::fmt;

/// An element of `A_X`. The index set is implicit in the length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    /// A vector in `B^X`.
    G(Vec<RigElem>),
    /// `m·e_x` or the adjoined zero of `𝔽{M}_X`.
    FM {
        len: usize,
        entry: Option<(usize, usize)>,
    },
    Pair(Box<Elem>, Box<Elem>),
    /// `(a, m) ∈ B^X × B^X`.
    SqZero(Vec<RigElem>, Vec<RigElem>),
}

impl Elem {
    pub fn len(&self) -> usize {
        match self {
            Elem::G(v) | Elem::SqZero(v, _) => v.len(),
            Elem::FM { len, .. } => *len,
            Elem::Pair(a, _) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_vec(&self) -> Option<&[RigElem]> {
        match self {
            Elem::G(v) => Some(v),
            _ => None,
        }
    }

    pub fn pair(a: Elem, b: Elem) -> Elem {
        Elem::Pair(Box::new(a), Box::new(b))
    }

    fn split(&self) -> Result<(&Elem, &Elem)> {
        match self {
            Elem::Pair(a, b) => Ok((a, b)),
            other => Err(Error::Malformed(format!("expected a pair, found {other}"))),
        }
    }
}

fn join(v: &[RigElem]) -> String {
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::G(v) => write!(f, "({})", join(v)),
            Elem::FM { len, entry: None } => write!(f, "0_{len}"),
            Elem::FM { len, entry: Some((m, x)) } => write!(f, "m{m}·e{x}/{len}"),
            Elem::Pair(a, b) => write!(f, "<{a};{b}>"),
            Elem::SqZero(a, m) => write!(f, "(({}) + ε({}))", join(a), join(m)),
        }
    }
}

/// An element of `A_f`: one element of `A_{f⁻¹(y)}` per `y`, each fiber
/// listed in increasing order of `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberVec {
    map: Vec<usize>,
    target: usize,
    fibers: Vec<Elem>,
}

/// The fibers `f⁻¹(y)` of `map : [map.len()] → [target]`, each sorted.
pub fn fibers_of(map: &[usize], target: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); target];
    for (x, &y) in map.iter().enumerate() {
        out[y].push(x);
    }
    out
}

/// Position of each `x` inside its fiber.
fn positions(map: &[usize], target: usize) -> Vec<usize> {
    let mut count = vec![0; target];
    map.iter()
        .map(|&y| {
            count[y] += 1;
            count[y] - 1
        })
        .collect()
}

impl FiberVec {
    pub fn new(map: Vec<usize>, target: usize, fibers: Vec<Elem>) -> Result<FiberVec> {
        if let Some(&y) = map.iter().find(|&&y| y >= target) {
            return Err(Error::Dimension { expected: target, found: y + 1 });
        }
        if fibers.len() != target {
            return Err(Error::Dimension { expected: target, found: fibers.len() });
        }
        for (fib, e) in fibers_of(&map, target).iter().zip(&fibers) {
            if fib.len() != e.len() {
                return Err(Error::Dimension { expected: fib.len(), found: e.len() });
            }
        }
        Ok(FiberVec { map, target, fibers })
    }

    /// `a ∈ A_X` viewed in `A_{X → [1]}`.
    pub fn single(a: Elem) -> FiberVec {
        FiberVec { map: vec![0; a.len()], target: 1, fibers: vec![a] }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn source(&self) -> usize {
        self.map.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn fibers(&self) -> &[Elem] {
        &self.fibers
    }

    pub fn fiber(&self, y: usize) -> &Elem {
        &self.fibers[y]
    }

    fn split(&self) -> Result<(FiberVec, FiberVec)> {
        let mut l = Vec::with_capacity(self.target);
        let mut r = Vec::with_capacity(self.target);
        for e in &self.fibers {
            let (a, b) = e.split()?;
            l.push(a.clone());
            r.push(b.clone());
        }
        Ok((
            FiberVec { map: self.map.clone(), target: self.target, fibers: l },
            FiberVec { map: self.map.clone(), target: self.target, fibers: r },
        ))
    }
}

impl fmt::Display for FiberVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let map: Vec<String> = self.map.iter().map(|y| y.to_string()).collect();
        let fib: Vec<String> = self.fibers.iter().map(|e| e.to_string()).collect();
        write!(f, "f=[{}]->{} b=[{}]", map.join(","), self.target, fib.join(" "))
    }
}

/// The two operations of a generalized ring, plus what the law suite needs
/// to sample and compare elements.
pub trait GenRingOps {
    fn name(&self) -> String;
    fn zero(&self, len: usize) -> Elem;
    fn one(&self) -> Elem;
    fn mul(&self, a: &Elem, b: &FiberVec) -> Result<Elem>;
    fn contract(&self, a: &Elem, b: &FiberVec) -> Result<Elem>;
    fn sample(&self, len: usize, rng: &mut dyn rand::RngCore) -> Elem;
    fn same(&self, a: &Elem, b: &Elem) -> bool;

    /// Fiberwise multiplication `A_g × A_f → A_{g∘f}`.
    fn mul_fib(&self, ag: &FiberVec, af: &FiberVec) -> Result<FiberVec> {
        if ag.source() != af.target() {
            return Err(Error::Dimension { expected: ag.source(), found: af.target() });
        }
        let gf: Vec<usize> = af.map.iter().map(|&y| ag.map[y]).collect();
        let mut out = Vec::with_capacity(ag.target());
        for (z, ys) in fibers_of(&ag.map, ag.target()).iter().enumerate() {
            out.push(self.mul(&ag.fibers[z], &restrict(af, ys))?);
        }
        FiberVec::new(gf, ag.target(), out)
    }

    /// Fiberwise contraction `A_{g∘f} × A_f → A_g`.
    fn contract_fib(&self, d: &FiberVec, af: &FiberVec, g: &[usize], gt: usize) -> Result<FiberVec> {
        if g.len() != af.target() {
            return Err(Error::Dimension { expected: g.len(), found: af.target() });
        }
        let gf: Vec<usize> = af.map.iter().map(|&y| g[y]).collect();
        if gf != d.map || gt != d.target() {
            return Err(Error::Malformed("contraction over mismatched maps".into()));
        }
        let mut out = Vec::with_capacity(gt);
        for (z, ys) in fibers_of(g, gt).iter().enumerate() {
            out.push(self.contract(&d.fibers[z], &restrict(af, ys))?);
        }
        FiberVec::new(g.to_vec(), gt, out)
    }

    fn same_fib(&self, a: &FiberVec, b: &FiberVec) -> bool {
        a.map == b.map && a.target == b.target && a.fibers.iter().zip(&b.fibers).all(|(x, y)| self.same(x, y))
    }

    fn sample_fib(&self, map: &[usize], target: usize, rng: &mut dyn rand::RngCore) -> FiberVec {
        let fibers = fibers_of(map, target).iter().map(|fib| self.sample(fib.len(), rng)).collect();
        FiberVec { map: map.to_vec(), target, fibers }
    }
}

/// The part of `af` over the sorted subset `ys` of its target, as a family
/// over `f⁻¹(ys) → ys` with both sides renumbered in increasing order.
fn restrict(af: &FiberVec, ys: &[usize]) -> FiberVec {
    let mut local = vec![usize::MAX; af.target()];
    for (i, &y) in ys.iter().enumerate() {
        local[y] = i;
    }
    let map = af.map.iter().filter(|&&y| local[y] != usize::MAX).map(|&y| local[y]).collect();
    FiberVec { map, target: ys.len(), fibers: ys.iter().map(|&y| af.fibers[y].clone()).collect() }
}

/// The registered instances.
#[derive(Clone, Debug, PartialEq)]
pub enum GenRing {
    /// `𝒢(B)_X = B^X`.
    G(Rig),
    /// `𝒰(𝔽(B))`, computed through block matrices.
    U(Rig),
    /// `𝔽{M}_X = M × X ∐ {0_X}`; the trivial monoid gives 𝔽.
    FM(Monoid),
    Product(Box<GenRing>, Box<GenRing>),
    /// `𝒢(B) π M` with the module `M_X = B^X`.
    SqZero(Rig),
}

pub fn make_g(rig: Rig) -> GenRing {
    GenRing::G(rig)
}

pub fn make_fm(monoid: Monoid) -> GenRing {
    GenRing::FM(monoid)
}

pub fn field_with_one_element() -> GenRing {
    GenRing::FM(Monoid::trivial())
}

pub fn product_ring(a: GenRing, b: GenRing) -> GenRing {
    GenRing::Product(Box::new(a), Box::new(b))
}

pub fn square_zero_extension(rig: Rig) -> GenRing {
    GenRing::SqZero(rig)
}

pub fn underlying_genring(rig: Rig) -> GenRing {
    GenRing::U(rig)
}

fn split_top_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

impl GenRing {
    /// Names: `G:<rig>`, `U:<rig>`, `SQ:<rig>`, `F`, `F{<monoid>}`, `prod(<ring>,<ring>)`.
    pub fn parse(s: &str) -> Result<GenRing> {
        let s = s.trim();
        let unknown = || Error::UnknownRing(s.to_string());
        if let Some(r) = s.strip_prefix("G:") {
            return Ok(GenRing::G(Rig::parse(r)?));
        }
        if let Some(r) = s.strip_prefix("U:") {
            return Ok(GenRing::U(Rig::parse(r)?));
        }
        if let Some(r) = s.strip_prefix("SQ:") {
            return Ok(GenRing::SqZero(Rig::parse(r)?));
        }
        if s == "F" {
            return Ok(field_with_one_element());
        }
        if let Some(m) = s.strip_prefix("F{").and_then(|m| m.strip_suffix('}')) {
            return Ok(GenRing::FM(Monoid::parse(m)?));
        }
        if let Some(inner) = s.strip_prefix("prod(").and_then(|m| m.strip_suffix(')')) {
            let (a, b) = split_top_comma(inner).ok_or_else(unknown)?;
            return Ok(product_ring(GenRing::parse(a)?, GenRing::parse(b)?));
        }
        Err(unknown())
    }

    pub fn label(&self) -> String {
        match self {
            GenRing::G(r) => format!("G:{}", r.name()),
            GenRing::U(r) => format!("U:{}", r.name()),
            GenRing::SqZero(r) => format!("SQ:{}", r.name()),
            GenRing::FM(m) if m.size() == 1 => "F".into(),
            GenRing::FM(m) => format!("F{{{}}}", m.name()),
            GenRing::Product(a, b) => format!("prod({},{})", a.label(), b.label()),
        }
    }

    /// Whether the commutativity laws are expected to hold.
    pub fn is_flagged_commutative(&self) -> bool {
        match self {
            GenRing::SqZero(_) => false,
            GenRing::Product(a, b) => a.is_flagged_commutative() && b.is_flagged_commutative(),
            _ => true,
        }
    }

    fn check(&self, a: &Elem) -> Result<()> {
        let ok = match (self, a) {
            (GenRing::G(r) | GenRing::U(r), Elem::G(v)) => v.iter().all(|e| r.contains(e)),
            (GenRing::SqZero(r), Elem::SqZero(v, m)) => v.len() == m.len() && v.iter().chain(m).all(|e| r.contains(e)),
            (GenRing::FM(mon), Elem::FM { len, entry }) => entry.is_none_or(|(m, x)| m < mon.size() && x < *len),
            (GenRing::Product(ra, rb), Elem::Pair(a, b)) => {
                ra.check(a)?;
                rb.check(b)?;
                a.len() == b.len()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Malformed(format!("{a} is not an element of {}", self.label())))
        }
    }

    fn check_fib(&self, b: &FiberVec) -> Result<()> {
        b.fibers.iter().try_for_each(|e| self.check(e))
    }

    /// Every element of `A_X`, when the carrier is finite.
    pub fn enumerate(&self, len: usize) -> Option<Vec<Elem>> {
        fn vectors(elems: &[RigElem], len: usize) -> Vec<Vec<RigElem>> {
            let mut out = vec![Vec::new()];
            for _ in 0..len {
                out = out
                    .into_iter()
                    .flat_map(|v| elems.iter().map(move |e| [v.clone(), vec![e.clone()]].concat()))
                    .collect();
            }
            out
        }
        match self {
            GenRing::G(r) | GenRing::U(r) => Some(vectors(&r.enumerate()?, len).into_iter().map(Elem::G).collect()),
            GenRing::SqZero(r) => {
                let vs = vectors(&r.enumerate()?, len);
                Some(vs.iter().flat_map(|a| vs.iter().map(move |m| Elem::SqZero(a.clone(), m.clone()))).collect())
            }
            GenRing::FM(mon) => {
                let mut out = vec![Elem::FM { len, entry: None }];
                for x in 0..len {
                    for m in 0..mon.size() {
                        out.push(Elem::FM { len, entry: Some((m, x)) });
                    }
                }
                Some(out)
            }
            GenRing::Product(a, b) => {
                let (ea, eb) = (a.enumerate(len)?, b.enumerate(len)?);
                Some(ea.iter().flat_map(|x| eb.iter().map(move |y| Elem::pair(x.clone(), y.clone()))).collect())
            }
        }
    }

    /// Pushes `a ∈ A_X` forward along a partial bijection `X → Y`.
    pub fn act(&self, phi: &PartialBijection, a: &Elem) -> Result<Elem> {
        if a.len() != phi.source().size() {
            return Err(Error::Dimension { expected: phi.source().size(), found: a.len() });
        }
        let ny = phi.target().size();
        let push = |r: &Rig, v: &[RigElem]| {
            let mut out = vec![r.zero(); ny];
            for &(x, y) in phi.pairs() {
                out[y] = v[x].clone();
            }
            out
        };
        Ok(match (self, a) {
            (GenRing::G(r) | GenRing::U(r), Elem::G(v)) => Elem::G(push(r, v)),
            (GenRing::SqZero(r), Elem::SqZero(v, m)) => Elem::SqZero(push(r, v), push(r, m)),
            (GenRing::FM(_), Elem::FM { entry, .. }) => {
                Elem::FM { len: ny, entry: entry.and_then(|(m, x)| phi.apply(x).map(|y| (m, y))) }
            }
            (GenRing::Product(ra, rb), Elem::Pair(x, y)) => Elem::pair(ra.act(phi, x)?, rb.act(phi, y)?),
            _ => return Err(Error::Malformed(format!("{a} is not an element of {}", self.label()))),
        })
    }

    /// The basis element `1_x ∈ A_X`.
    pub fn basis(&self, len: usize, x: usize) -> Elem {
        let inc = PartialBijection::new(1, len, vec![(0, x)]).expect("index in range");
        self.act(&inc, &self.one()).expect("one has length 1")
    }

    /// `a^t = 1 ⫽ a` on scalars.
    pub fn scalar_involution(&self, a: &Elem) -> Result<Elem> {
        if a.len() != 1 {
            return Err(Error::Dimension { expected: 1, found: a.len() });
        }
        self.contract(&self.one(), &FiberVec::new(vec![0], 1, vec![a.clone()])?)
    }

    /// `a ↦ (a ⫽ 1_x)_x`.
    pub fn coefficient_map(&self, a: &Elem) -> Result<Vec<Elem>> {
        (0..a.len()).map(|x| self.contract(a, &FiberVec::single(self.basis(a.len(), x)))).collect()
    }
}

fn unwrap_g(e: &Elem) -> &[RigElem] {
    match e {
        Elem::G(v) => v,
        _ => unreachable!("checked before use"),
    }
}

fn unwrap_sq(e: &Elem) -> (&[RigElem], &[RigElem]) {
    match e {
        Elem::SqZero(a, m) => (a, m),
        _ => unreachable!("checked before use"),
    }
}

/// `⊕_y b_y` as a `Y × X` matrix composed with the permutation back to `X`.
fn block_matrix(r: &Rig, b: &FiberVec) -> Result<RigMatrix> {
    let mut m = RigMatrix::zero(r, 0, 0);
    for e in &b.fibers {
        m = m.direct_sum(&RigMatrix::row(r, unwrap_g(e).to_vec()))?;
    }
    let order: Vec<usize> = fibers_of(&b.map, b.target).concat();
    let perm = PartialBijection::new(b.source(), b.source(), order.iter().enumerate().map(|(i, &x)| (x, i)).collect())?;
    m.compose(&perm.as_matrix(r))
}

fn row_of(m: &RigMatrix) -> Elem {
    Elem::G(m.data().first().cloned().unwrap_or_default())
}

impl GenRingOps for GenRing {
    fn name(&self) -> String {
        self.label()
    }

    fn zero(&self, len: usize) -> Elem {
        match self {
            GenRing::G(r) | GenRing::U(r) => Elem::G(vec![r.zero(); len]),
            GenRing::SqZero(r) => Elem::SqZero(vec![r.zero(); len], vec![r.zero(); len]),
            GenRing::FM(_) => Elem::FM { len, entry: None },
            GenRing::Product(a, b) => Elem::pair(a.zero(len), b.zero(len)),
        }
    }

    fn one(&self) -> Elem {
        match self {
            GenRing::G(r) | GenRing::U(r) => Elem::G(vec![r.one()]),
            GenRing::SqZero(r) => Elem::SqZero(vec![r.one()], vec![r.zero()]),
            GenRing::FM(m) => Elem::FM { len: 1, entry: Some((m.unit(), 0)) },
            GenRing::Product(a, b) => Elem::pair(a.one(), b.one()),
        }
    }

    fn mul(&self, a: &Elem, b: &FiberVec) -> Result<Elem> {
        if a.len() != b.target {
            return Err(Error::Dimension { expected: b.target, found: a.len() });
        }
        self.check(a)?;
        self.check_fib(b)?;
        let pos = positions(&b.map, b.target);
        Ok(match self {
            GenRing::G(r) => {
                let a = unwrap_g(a);
                let out = b.map.iter().zip(&pos).map(|(&y, &p)| r.mul(&a[y], &unwrap_g(&b.fibers[y])[p]));
                Elem::G(out.collect::<Result<_>>()?)
            }
            GenRing::U(r) => row_of(&RigMatrix::row(r, unwrap_g(a).to_vec()).compose(&block_matrix(r, b)?)?),
            GenRing::SqZero(r) => {
                let (a1, m1) = unwrap_sq(a);
                let (mut ao, mut mo) = (Vec::with_capacity(pos.len()), Vec::with_capacity(pos.len()));
                for (&y, &p) in b.map.iter().zip(&pos) {
                    let (a2, m2) = unwrap_sq(&b.fibers[y]);
                    ao.push(r.mul(&a1[y], &a2[p])?);
                    mo.push(r.add(&r.mul(&m1[y], &a2[p])?, &r.mul(&a1[y], &m2[p])?)?);
                }
                Elem::SqZero(ao, mo)
            }
            GenRing::FM(mon) => {
                let len = b.source();
                let entry = match a {
                    Elem::FM { entry: Some((m, y)), .. } => match b.fibers[*y] {
                        Elem::FM { entry: Some((m2, p)), .. } => {
                            Some((mon.mul(*m, m2), fibers_of(&b.map, b.target)[*y][p]))
                        }
                        _ => None,
                    },
                    _ => None,
                };
                Elem::FM { len, entry }
            }
            GenRing::Product(ra, rb) => {
                let (a1, a2) = a.split()?;
                let (b1, b2) = b.split()?;
                Elem::pair(ra.mul(a1, &b1)?, rb.mul(a2, &b2)?)
            }
        })
    }

    fn contract(&self, a: &Elem, b: &FiberVec) -> Result<Elem> {
        if a.len() != b.source() {
            return Err(Error::Dimension { expected: b.source(), found: a.len() });
        }
        self.check(a)?;
        self.check_fib(b)?;
        let pos = positions(&b.map, b.target);
        Ok(match self {
            GenRing::G(r) => {
                let a = unwrap_g(a);
                let mut out = vec![r.zero(); b.target];
                for (x, (&y, &p)) in b.map.iter().zip(&pos).enumerate() {
                    out[y] = r.add(&out[y], &r.mul(&a[x], &unwrap_g(&b.fibers[y])[p])?)?;
                }
                Elem::G(out)
            }
            GenRing::U(r) => {
                row_of(&RigMatrix::row(r, unwrap_g(a).to_vec()).compose(&block_matrix(r, b)?.transpose())?)
            }
            GenRing::SqZero(r) => {
                let (a1, m1) = unwrap_sq(a);
                let (mut ao, mut mo) = (vec![r.zero(); b.target], vec![r.zero(); b.target]);
                for (x, (&y, &p)) in b.map.iter().zip(&pos).enumerate() {
                    let (a2, m2) = unwrap_sq(&b.fibers[y]);
                    ao[y] = r.add(&ao[y], &r.mul(&a1[x], &a2[p])?)?;
                    let t = r.add(&r.mul(&m1[x], &a2[p])?, &r.mul(&m2[p], &a1[x])?)?;
                    mo[y] = r.add(&mo[y], &t)?;
                }
                Elem::SqZero(ao, mo)
            }
            GenRing::FM(mon) => {
                let entry = match a {
                    Elem::FM { entry: Some((m, x)), .. } => {
                        let y = b.map[*x];
                        match b.fibers[y] {
                            Elem::FM { entry: Some((m2, p)), .. } if p == pos[*x] => {
                                Some((mon.mul(*m, mon.inv(m2)), y))
                            }
                            _ => None,
                        }
                    }
                    _ => None,
                };
                Elem::FM { len: b.target, entry }
            }
            GenRing::Product(ra, rb) => {
                let (a1, a2) = a.split()?;
                let (b1, b2) = b.split()?;
                Elem::pair(ra.contract(a1, &b1)?, rb.contract(a2, &b2)?)
            }
        })
    }

    fn sample(&self, len: usize, rng: &mut dyn rand::RngCore) -> Elem {
        match self {
            GenRing::G(r) | GenRing::U(r) => Elem::G((0..len).map(|_| r.sample(rng)).collect()),
            GenRing::SqZero(r) => {
                Elem::SqZero((0..len).map(|_| r.sample(rng)).collect(), (0..len).map(|_| r.sample(rng)).collect())
            }
            GenRing::FM(m) => {
                let entry = (len > 0 && rng.random_range(0..5) > 0)
                    .then(|| (rng.random_range(0..m.size()), rng.random_range(0..len)));
                Elem::FM { len, entry }
            }
            GenRing::Product(a, b) => Elem::pair(a.sample(len, rng), b.sample(len, rng)),
        }
    }

    fn same(&self, a: &Elem, b: &Elem) -> bool {
        match (self, a, b) {
            (GenRing::Product(ra, rb), Elem::Pair(a1, a2), Elem::Pair(b1, b2)) => ra.same(a1, b1) && rb.same(a2, b2),
            (GenRing::SqZero(r), Elem::SqZero(a1, m1), Elem::SqZero(a2, m2)) => {
                same_vec(r, a1, a2) && same_vec(r, m1, m2)
            }
            (GenRing::G(r) | GenRing::U(r), Elem::G(x), Elem::G(y)) => same_vec(r, x, y),
            _ => a == b,
        }
    }
}

fn same_vec(r: &Rig, a: &[RigElem], b: &[RigElem]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| r.same(x, y))
}

/// Scalar rig of an instance built on a rig, if any.
pub fn base_rig(ring: &GenRing) -> Option<&Rig> {
    match ring {
        GenRing::G(r) | GenRing::U(r) | GenRing::SqZero(r) => Some(r),
        _ => None,
    }
}
