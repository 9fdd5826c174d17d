//! Tree-pair terms `(F_y, G_x, σ, ε)` for elements of `(ℤ^{⊗n})_{Y,X}`.
//!
//! A leaf of `F` and its image under `σ` in `G` carry the same pair id, so
//! `σ` is implicit; `eps[p]` is the sign of pair `p`. An empty root is a zero
//! row (or column).

mod canon;
mod json;
mod rules;
mod search;

pub use json::{TermFile, TreeFile};
pub use rules::{apply_random_rule, normalize, successors, Move, RuleSet};
pub use search::{durov_check, term_equal, DurovTrace, Equality, TraceStep};

use crate::error::{Error, Result};
use rand::Rng;
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(usize),
    /// An internal vertex labeled by a tensor factor `1..=n`.
    Node(u8, Vec<Tree>),
}

impl Tree {
    pub fn node(label: u8, children: Vec<Tree>) -> Tree {
        Tree::Node(label, children)
    }

    /// A single vertex over `leaves`, or the leaf itself when there is one.
    pub fn comb(label: u8, leaves: impl IntoIterator<Item = usize>) -> Option<Tree> {
        let mut v: Vec<Tree> = leaves.into_iter().map(Tree::Leaf).collect();
        match v.len() {
            0 => None,
            1 => v.pop(),
            _ => Some(Tree::Node(label, v)),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(p) => out.push(*p),
            Tree::Node(_, ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(_, ch) => 1 + ch.iter().map(Tree::vertex_count).sum::<usize>(),
        }
    }

    fn map_leaves(&self, f: &mut impl FnMut(usize) -> usize) -> Tree {
        match self {
            Tree::Leaf(p) => Tree::Leaf(f(*p)),
            Tree::Node(l, ch) => Tree::Node(*l, ch.iter().map(|c| c.map_leaves(f)).collect()),
        }
    }

    fn relabel(&self, g: &[u8]) -> Tree {
        match self {
            Tree::Leaf(p) => Tree::Leaf(*p),
            Tree::Node(l, ch) => Tree::Node(g[*l as usize - 1], ch.iter().map(|c| c.relabel(g)).collect()),
        }
    }

    /// Grafts `graft(p)` at every leaf `p`; `None` removes the leaf.
    fn graft(&self, graft: &mut impl FnMut(usize) -> Option<Tree>) -> Option<Tree> {
        match self {
            Tree::Leaf(p) => graft(*p),
            Tree::Node(l, ch) => {
                let kept: Vec<Tree> = ch.iter().filter_map(|c| c.graft(graft)).collect();
                (!kept.is_empty()).then_some(Tree::Node(*l, kept))
            }
        }
    }

    /// Removes internal vertices left without children.
    fn prune(&self) -> Option<Tree> {
        self.graft(&mut |p| Some(Tree::Leaf(p)))
    }

    /// Elides every unary vertex.
    fn elide_units(&self) -> Tree {
        match self {
            Tree::Leaf(p) => Tree::Leaf(*p),
            Tree::Node(_, ch) if ch.len() == 1 => ch[0].elide_units(),
            Tree::Node(l, ch) => Tree::Node(*l, ch.iter().map(Tree::elide_units).collect()),
        }
    }

    fn max_label(&self) -> u8 {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(l, ch) => ch.iter().map(Tree::max_label).fold(*l, u8::max),
        }
    }

    fn min_arity(&self) -> usize {
        match self {
            Tree::Leaf(_) => usize::MAX,
            Tree::Node(_, ch) => ch.iter().map(Tree::min_arity).fold(ch.len(), usize::min),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(p) => write!(f, "{p}"),
            Tree::Node(l, ch) => {
                write!(f, "{l}(")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A tree-pair term of shape `Y × X` over `n` tensor factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    n: u8,
    f: Vec<Option<Tree>>,
    g: Vec<Option<Tree>>,
    eps: Vec<i8>,
}

impl fmt::Display for Term {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |forest: &[Option<Tree>]| {
            forest.iter().map(|t| t.as_ref().map_or("0".to_string(), |t| t.to_string())).collect::<Vec<_>>().join(" | ")
        };
        let neg: Vec<String> =
            self.eps.iter().enumerate().filter(|(_, &e)| e < 0).map(|(p, _)| p.to_string()).collect();
        write!(fm, "F[{}] G[{}]", side(&self.f), side(&self.g))?;
        if !neg.is_empty() {
            write!(fm, " neg[{}]", neg.join(","))?;
        }
        Ok(())
    }
}

impl Term {
    /// Builds a term, checking labels and that every pair occurs exactly once on each side.
    pub fn new(n: u8, f: Vec<Option<Tree>>, g: Vec<Option<Tree>>, eps: Vec<i8>) -> Result<Term> {
        let t = Term { n, f, g, eps };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Term(m));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.eps.iter().any(|&e| e != 1 && e != -1) {
            return bad("signs must be +1 or -1".into());
        }
        for (name, forest) in [("F", &self.f), ("G", &self.g)] {
            let mut seen = vec![false; self.eps.len()];
            for t in forest.iter().flatten() {
                if t.max_label() > self.n {
                    return bad(format!("{name} uses a label above n={}", self.n));
                }
                if t.min_arity() == 0 {
                    return bad(format!("{name} has a vertex without children"));
                }
                for p in t.leaves() {
                    if p >= seen.len() || seen[p] {
                        return bad(format!("{name} leaf {p} is out of range or repeated"));
                    }
                    seen[p] = true;
                }
            }
            if seen.iter().any(|s| !s) {
                return bad(format!("{name} is missing a leaf"));
            }
        }
        Ok(())
    }

    /// Renumbers pairs by order of appearance in `F`.
    fn compact(n: u8, f: Vec<Option<Tree>>, g: Vec<Option<Tree>>, eps: &HashMap<usize, i8>) -> Term {
        let mut ids = HashMap::new();
        let mut new_eps = Vec::new();
        let f: Vec<Option<Tree>> = f
            .iter()
            .map(|t| {
                t.as_ref().map(|t| {
                    t.map_leaves(&mut |p| {
                        *ids.entry(p).or_insert_with(|| {
                            new_eps.push(eps[&p]);
                            new_eps.len() - 1
                        })
                    })
                })
            })
            .collect();
        let g = g.iter().map(|t| t.as_ref().map(|t| t.map_leaves(&mut |p| ids[&p]))).collect();
        Term { n, f, g, eps: new_eps }
    }

    pub fn zero(n: u8, ny: usize, nx: usize) -> Term {
        Term { n, f: vec![None; ny], g: vec![None; nx], eps: Vec::new() }
    }

    /// The integer `k` over `n` factors: a `|k|`-leaf comb on both sides with
    /// matched leaves, all signed `sign(k)`.
    pub fn integer(n: u8, k: i64) -> Term {
        let m = k.unsigned_abs() as usize;
        if m == 0 {
            return Term::zero(n, 1, 1);
        }
        let sign = if k < 0 { -1 } else { 1 };
        Term { n, f: vec![Tree::comb(1, 0..m)], g: vec![Tree::comb(1, 0..m)], eps: vec![sign; m] }
    }

    /// The generator `δ_i ∈ A_{[1],[2]}`.
    pub fn delta(n: u8, i: u8) -> Term {
        Term { n, f: vec![Tree::comb(i, 0..2)], g: vec![Some(Tree::Leaf(0)), Some(Tree::Leaf(1))], eps: vec![1, 1] }
    }

    /// The partial bijection `x ↦ perm[x]` as a term `Y × X`.
    pub fn bijection(n: u8, ny: usize, pairs: &[(usize, usize)]) -> Result<Term> {
        let nx = pairs.iter().map(|p| p.0 + 1).max().unwrap_or(0);
        let mut f = vec![None; ny];
        let mut g = vec![None; nx];
        for (p, &(x, y)) in pairs.iter().enumerate() {
            if y >= ny || f[y].is_some() || g[x].is_some() {
                return Err(Error::Term(format!("({x},{y}) is not part of a partial bijection")));
            }
            f[y] = Some(Tree::Leaf(p));
            g[x] = Some(Tree::Leaf(p));
        }
        let eps = vec![1; pairs.len()];
        let t = Term { n, f, g, eps };
        Ok(Term::compact(t.n, t.f.clone(), t.g.clone(), &t.eps.iter().copied().enumerate().collect()))
    }

    /// A random term with `pairs` leaf pairs spread over `ny` rows and `nx` columns.
    pub fn random<R: Rng + ?Sized>(n: u8, ny: usize, nx: usize, pairs: usize, rng: &mut R) -> Term {
        let grow = |leaves: Vec<usize>, rng: &mut R| -> Option<Tree> {
            let mut items: Vec<Tree> = leaves.into_iter().map(Tree::Leaf).collect();
            while items.len() > 1 {
                let k = rng.random_range(2..=items.len().min(3));
                let mut group = Vec::with_capacity(k);
                for _ in 0..k {
                    group.push(items.swap_remove(rng.random_range(0..items.len())));
                }
                items.push(Tree::Node(rng.random_range(1..=n), group));
            }
            items.pop()
        };
        let (mut rows, mut cols) = (vec![vec![]; ny], vec![vec![]; nx]);
        if ny > 0 && nx > 0 {
            for p in 0..pairs {
                rows[rng.random_range(0..ny)].push(p);
                cols[rng.random_range(0..nx)].push(p);
            }
        }
        let used = if ny > 0 && nx > 0 { pairs } else { 0 };
        let eps: HashMap<usize, i8> = (0..used).map(|p| (p, if rng.random_bool(0.5) { 1 } else { -1 })).collect();
        let f = rows.into_iter().map(|r| grow(r, rng)).collect();
        let g = cols.into_iter().map(|c| grow(c, rng)).collect();
        Term::compact(n, f, g, &eps)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.f.len()
    }

    pub fn cols(&self) -> usize {
        self.g.len()
    }

    pub fn f(&self) -> &[Option<Tree>] {
        &self.f
    }

    pub fn g(&self) -> &[Option<Tree>] {
        &self.g
    }

    pub fn eps(&self) -> &[i8] {
        &self.eps
    }

    pub fn is_zero(&self) -> bool {
        self.eps.is_empty()
    }

    pub fn pair_count(&self) -> usize {
        self.eps.len()
    }

    /// Vertices of both forests, counting each matched leaf pair once.
    pub fn size(&self) -> usize {
        let count = |forest: &[Option<Tree>]| forest.iter().flatten().map(Tree::vertex_count).sum::<usize>();
        count(&self.f) + count(&self.g) - self.eps.len()
    }

    /// Entry `(y, x)` is the signed number of pairs from `F_y` to `G_x`.
    pub fn eval(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.g.len()]; self.f.len()];
        let mut col = vec![0; self.eps.len()];
        for (x, t) in self.g.iter().enumerate() {
            for p in t.iter().flat_map(Tree::leaves) {
                col[p] = x;
            }
        }
        for (y, t) in self.f.iter().enumerate() {
            for p in t.iter().flat_map(Tree::leaves) {
                out[y][col[p]] += self.eps[p] as i64;
            }
        }
        out
    }

    /// Composition `self ∘ other` for `self : Y × X` and `other : X × Z`:
    /// every `F` leaf over `G_x` receives a copy of `other.F_x`, and every
    /// `other.G` leaf over `other.F_x` receives a copy of `G_x`.
    pub fn multiply(&self, other: &Term) -> Result<Term> {
        if self.n != other.n {
            return Err(Error::Term(format!("factor counts differ: {} vs {}", self.n, other.n)));
        }
        if self.cols() != other.rows() {
            return Err(Error::Dimension { expected: self.cols(), found: other.rows() });
        }
        let (c1, c2) = (self.column_of(), other.row_of());
        let (m1, m2) = (self.eps.len(), other.eps.len());
        let id = |p: usize, q: usize| p * m2.max(1) + q;
        let mut eps = HashMap::new();
        for (p, cp) in c1.iter().enumerate().take(m1) {
            for (q, cq) in c2.iter().enumerate().take(m2) {
                if cp == cq {
                    eps.insert(id(p, q), self.eps[p] * other.eps[q]);
                }
            }
        }
        let f = self
            .f
            .iter()
            .map(|t| {
                t.as_ref()
                    .and_then(|t| t.graft(&mut |p| other.f[c1[p]].as_ref().map(|s| s.map_leaves(&mut |q| id(p, q)))))
            })
            .collect();
        let g = other
            .g
            .iter()
            .map(|t| {
                t.as_ref()
                    .and_then(|t| t.graft(&mut |q| self.g[c2[q]].as_ref().map(|s| s.map_leaves(&mut |p| id(p, q)))))
            })
            .collect();
        let _ = m1;
        Ok(Term::compact(self.n, f, g, &eps))
    }

    /// `G_x` index of each pair.
    fn column_of(&self) -> Vec<usize> {
        let mut col = vec![0; self.eps.len()];
        for (x, t) in self.g.iter().enumerate() {
            for p in t.iter().flat_map(Tree::leaves) {
                col[p] = x;
            }
        }
        col
    }

    /// `F_y` index of each pair.
    fn row_of(&self) -> Vec<usize> {
        let mut row = vec![0; self.eps.len()];
        for (y, t) in self.f.iter().enumerate() {
            for p in t.iter().flat_map(Tree::leaves) {
                row[p] = y;
            }
        }
        row
    }

    /// `(G, F, σ⁻¹, ε∘σ⁻¹)`.
    pub fn transpose(&self) -> Term {
        let eps = self.eps.iter().copied().enumerate().collect();
        Term::compact(self.n, self.g.clone(), self.f.clone(), &eps)
    }

    /// `t₁ +₍ᵢ₎ t₂`: joins `F₁_y, F₂_y` (and `G₁_x, G₂_x`) under a new label-`i` vertex.
    pub fn add_i(&self, i: u8, other: &Term) -> Result<Term> {
        if self.n != other.n || i == 0 || i > self.n {
            return Err(Error::Term(format!("factor {i} is not available for n={}", self.n)));
        }
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(Error::Term("addition needs equal shapes".into()));
        }
        let off = self.eps.len();
        let join = |a: &Option<Tree>, b: &Option<Tree>| match (a, b) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.map_leaves(&mut |q| q + off)),
            (Some(a), Some(b)) => Some(Tree::Node(i, vec![a.clone(), b.map_leaves(&mut |q| q + off)])),
        };
        let f = self.f.iter().zip(&other.f).map(|(a, b)| join(a, b)).collect();
        let g = self.g.iter().zip(&other.g).map(|(a, b)| join(a, b)).collect();
        let eps = self.eps.iter().chain(&other.eps).copied().enumerate().collect();
        Ok(Term::compact(self.n, f, g, &eps))
    }

    /// Block sum: `F = F₁ ++ F₂`, `G = G₁ ++ G₂`.
    pub fn direct_sum(&self, other: &Term) -> Result<Term> {
        if self.n != other.n {
            return Err(Error::Term("factor counts differ".into()));
        }
        let off = self.eps.len();
        let shift = |forest: &[Option<Tree>]| -> Vec<Option<Tree>> {
            forest.iter().map(|t| t.as_ref().map(|t| t.map_leaves(&mut |q| q + off))).collect()
        };
        let f = self.f.iter().cloned().chain(shift(&other.f)).collect();
        let g = self.g.iter().cloned().chain(shift(&other.g)).collect();
        let eps = self.eps.iter().chain(&other.eps).copied().enumerate().collect();
        Ok(Term::compact(self.n, f, g, &eps))
    }

    /// Applies a permutation `g` of `{1..n}` (given as `g[i-1] = g(i)`) to every label.
    pub fn relabel(&self, g: &[u8]) -> Result<Term> {
        let mut sorted = g.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=self.n).collect::<Vec<u8>>() {
            return Err(Error::Term(format!("{g:?} is not a permutation of 1..={}", self.n)));
        }
        let map = |forest: &[Option<Tree>]| forest.iter().map(|t| t.as_ref().map(|t| t.relabel(g))).collect();
        Ok(Term { n: self.n, f: map(&self.f), g: map(&self.g), eps: self.eps.clone() })
    }

    /// Composes with the inclusion of the columns in `keep` (in the given
    /// order). Emptied vertices are removed; unary vertices are kept.
    pub fn restrict_cols(&self, keep: &[usize]) -> Result<Term> {
        if let Some(&x) = keep.iter().find(|&&x| x >= self.cols()) {
            return Err(Error::Dimension { expected: self.cols(), found: x + 1 });
        }
        let g: Vec<Option<Tree>> = keep.iter().map(|&x| self.g[x].clone()).collect();
        let kept: std::collections::HashSet<usize> = g.iter().flatten().flat_map(Tree::leaves).collect();
        let f = self
            .f
            .iter()
            .map(|t| t.as_ref().and_then(|t| t.graft(&mut |p| kept.contains(&p).then_some(Tree::Leaf(p)))))
            .collect();
        let eps = self.eps.iter().copied().enumerate().collect();
        Ok(Term::compact(self.n, f, g, &eps))
    }

    /// The same term with every unary vertex elided.
    pub fn without_units(&self) -> Term {
        let el = |forest: &[Option<Tree>]| forest.iter().map(|t| t.as_ref().map(Tree::elide_units)).collect();
        Term { n: self.n, f: el(&self.f), g: el(&self.g), eps: self.eps.clone() }
    }

    /// Canonical representative of the isomorphism class.
    pub fn canonical(&self) -> Term {
        canon::canonical(self)
    }

    /// Integer-coded canonical encoding; equal for isomorphic terms.
    pub fn encoding(&self) -> Vec<i32> {
        canon::encode(&self.canonical())
    }

    pub(crate) fn from_raw(n: u8, f: Vec<Option<Tree>>, g: Vec<Option<Tree>>, eps: Vec<i8>) -> Term {
        Term { n, f, g, eps }
    }

    pub(crate) fn with_forests(&self, f: Vec<Option<Tree>>, g: Vec<Option<Tree>>) -> Term {
        let eps = self.eps.iter().copied().enumerate().collect();
        let pruned = |forest: Vec<Option<Tree>>| forest.into_iter().map(|t| t.and_then(|t| t.prune())).collect();
        Term::compact(self.n, pruned(f), pruned(g), &eps)
    }
}

pub fn term_from_integer(k: i64) -> Term {
    Term::integer(1, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_evaluate() {
        assert_eq!(term_from_integer(1).eval(), vec![vec![1]]);
        let t3 = term_from_integer(3);
        assert_eq!(t3.f()[0], Some(Tree::Node(1, vec![Tree::Leaf(0), Tree::Leaf(1), Tree::Leaf(2)])));
        assert_eq!(t3.eval(), vec![vec![3]]);
        assert!(term_from_integer(0).is_zero());
        assert_eq!(term_from_integer(-4).eval(), vec![vec![-4]]);
    }

    #[test]
    fn delta_generator() {
        let d = Term::delta(2, 1);
        assert_eq!(d.eval(), vec![vec![1, 1]]);
        assert_eq!(d.transpose().eval(), vec![vec![1], vec![1]]);
        assert_eq!(d.transpose().transpose(), d);
        assert_eq!(d.relabel(&[2, 1]).unwrap(), Term::delta(2, 2));
        assert_eq!(d.relabel(&[1, 2]).unwrap(), d);
        assert!(d.relabel(&[1, 1]).is_err());
    }

    #[test]
    fn multiply_evaluates_products() {
        let p = term_from_integer(2).multiply(&term_from_integer(3)).unwrap();
        assert_eq!(p.eval(), vec![vec![6]]);
        let d = Term::delta(1, 1);
        let dd = d.multiply(&d.transpose()).unwrap();
        assert_eq!(dd.eval(), vec![vec![2]]);
        assert!(d.multiply(&d).is_err());
        let z = Term::zero(1, 2, 1);
        assert!(d.multiply(&z).unwrap().is_zero());
    }

    #[test]
    fn addition_and_sums() {
        let s = term_from_integer(2).add_i(1, &term_from_integer(3)).unwrap();
        assert_eq!(s.eval(), vec![vec![5]]);
        let z = term_from_integer(0);
        assert_eq!(term_from_integer(2).add_i(1, &z).unwrap(), term_from_integer(2));
        assert!(term_from_integer(2).add_i(2, &z).is_err());
        let ds = Term::delta(2, 1).direct_sum(&Term::delta(2, 2)).unwrap();
        assert_eq!(ds.eval(), vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
    }

    #[test]
    fn validation_rejects_bad_data() {
        let leaf = |p| Some(Tree::Leaf(p));
        assert!(Term::new(1, vec![leaf(0)], vec![leaf(0)], vec![1]).is_ok());
        assert!(Term::new(1, vec![leaf(0)], vec![leaf(1)], vec![1, 1]).is_err());
        assert!(Term::new(1, vec![Some(Tree::Node(2, vec![Tree::Leaf(0)]))], vec![leaf(0)], vec![1]).is_err());
        assert!(Term::new(1, vec![leaf(0)], vec![leaf(0)], vec![2]).is_err());
        assert!(Term::new(1, vec![Some(Tree::Node(1, vec![]))], vec![None], vec![]).is_err());
    }

    #[test]
    fn restriction() {
        let l = Term::delta(2, 1).multiply(&Term::delta(2, 2).direct_sum(&Term::delta(2, 2)).unwrap()).unwrap();
        assert_eq!(l.eval(), vec![vec![1, 1, 1, 1]]);
        let r = l.restrict_cols(&[1, 2]).unwrap();
        assert_eq!(r.eval(), vec![vec![1, 1]]);
        assert_eq!(r.to_string(), "F[1(2(0),2(1))] G[0 | 1]");
        assert_eq!(r.without_units().to_string(), "F[1(0,1)] G[0 | 1]");
    }

    #[test]
    fn bijection_terms() {
        let t = Term::bijection(1, 3, &[(0, 2), (1, 0)]).unwrap();
        assert_eq!(t.eval(), vec![vec![0, 1], vec![0, 0], vec![1, 0]]);
        assert!(Term::bijection(1, 2, &[(0, 1), (1, 1)]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn random_terms_are_valid(seed in 0u64..10_000, ny in 1usize..4, nx in 1usize..4, pairs in 0usize..9) {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let t = Term::random(2, ny, nx, pairs, &mut rng);
            proptest::prop_assert!(t.validate().is_ok());
            proptest::prop_assert_eq!(t.pair_count(), pairs);
            proptest::prop_assert_eq!(Term::from_json(&t.to_json()).unwrap(), t.clone());
            proptest::prop_assert_eq!(t.transpose().transpose(), t.clone());
            let tt = t.transpose().eval();
            let e = t.eval();
            for y in 0..ny {
                for x in 0..nx {
                    proptest::prop_assert_eq!(e[y][x], tt[x][y]);
                }
            }
        }

        #[test]
        fn multiply_matches_matrix_product(seed in 0u64..10_000, a in 1usize..3, b in 1usize..3, c in 1usize..3) {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let s = Term::random(2, a, b, 4, &mut rng);
            let t = Term::random(2, b, c, 4, &mut rng);
            let (es, et, ep) = (s.eval(), t.eval(), s.multiply(&t).unwrap().eval());
            for y in 0..a {
                for z in 0..c {
                    let want: i64 = (0..b).map(|x| es[y][x] * et[x][z]).sum();
                    proptest::prop_assert_eq!(ep[y][z], want);
                }
            }
        }
    }

    #[test]
    fn size_counts_pairs_once() {
        assert_eq!(term_from_integer(3).size(), 5);
        assert_eq!(Term::delta(2, 1).size(), 3);
    }
}
