//! Single-step rewrites and the directed normalizer.

use super::{Term, Tree};
use crate::error::{Error, Result};
use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;
use std::collections::HashMap;

/// Which relations the rewriter may use. Everything but total
/// commutativity is on by default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RuleSet {
    pub unit: bool,
    pub iso: bool,
    pub assoc: bool,
    pub cancel: bool,
    pub comm: bool,
    pub total_comm: bool,
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet { unit: true, iso: true, assoc: true, cancel: true, comm: true, total_comm: false }
    }
}

impl RuleSet {
    pub fn base() -> RuleSet {
        RuleSet::default()
    }

    pub fn with_total_comm() -> RuleSet {
        RuleSet { total_comm: true, ..RuleSet::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Move {
    UnitElide,
    UnitInsert,
    Flatten,
    Unflatten,
    Cancel,
    Commute,
    TotalCommute,
    Restrict,
    Canonicalize,
}

impl Move {
    pub fn name(self) -> &'static str {
        match self {
            Move::UnitElide => "unit-elide",
            Move::UnitInsert => "unit-insert",
            Move::Flatten => "flatten",
            Move::Unflatten => "unflatten",
            Move::Cancel => "cancel",
            Move::Commute => "commute",
            Move::TotalCommute => "total-commute",
            Move::Restrict => "restrict",
            Move::Canonicalize => "canonicalize",
        }
    }
}

/// All results of applying `local` at one vertex of `t`.
fn rewrites(t: &Tree, local: &dyn Fn(&Tree) -> Vec<Tree>) -> Vec<Tree> {
    let mut out = local(t);
    if let Tree::Node(l, ch) = t {
        for (i, c) in ch.iter().enumerate() {
            for r in rewrites(c, local) {
                let mut next = ch.clone();
                next[i] = r;
                out.push(Tree::Node(*l, next));
            }
        }
    }
    out
}

fn side_moves(t: &Term, mv: Move, local: &dyn Fn(&Tree) -> Vec<Tree>) -> Vec<(Move, Term)> {
    let mut out = Vec::new();
    for f_side in [true, false] {
        let forest = if f_side { &t.f } else { &t.g };
        for (r, root) in forest.iter().enumerate() {
            let Some(root) = root else { continue };
            for v in rewrites(root, local) {
                let (mut f, mut g) = (t.f.clone(), t.g.clone());
                if f_side {
                    f[r] = Some(v);
                } else {
                    g[r] = Some(v);
                }
                out.push((mv, t.with_forests(f, g)));
            }
        }
    }
    out
}

fn elide_local(t: &Tree) -> Vec<Tree> {
    match t {
        Tree::Node(_, ch) if ch.len() == 1 => vec![ch[0].clone()],
        _ => vec![],
    }
}

fn flatten_local(t: &Tree) -> Vec<Tree> {
    let Tree::Node(l, ch) = t else { return vec![] };
    let mut out = Vec::new();
    for (i, c) in ch.iter().enumerate() {
        if let Tree::Node(m, gch) = c {
            if m == l {
                let mut next = ch[..i].to_vec();
                next.extend(gch.iter().cloned());
                next.extend(ch[i + 1..].iter().cloned());
                out.push(Tree::Node(*l, next));
            }
        }
    }
    out
}

fn unflatten_local(t: &Tree) -> Vec<Tree> {
    let Tree::Node(l, ch) = t else { return vec![] };
    let mut out = Vec::new();
    if ch.len() >= 3 {
        for i in 0..ch.len() {
            for j in i + 1..ch.len() {
                let mut next: Vec<Tree> =
                    ch.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, c)| c.clone()).collect();
                next.push(Tree::Node(*l, vec![ch[i].clone(), ch[j].clone()]));
                out.push(Tree::Node(*l, next));
            }
        }
    }
    out
}

/// `i[j[t_a1..t_am]]_a ↦ j[i[t_1b..t_kb]]_b` in aligned form (equal arities)
/// and staggered form (each grandchild in its own column).
fn total_comm_local(t: &Tree) -> Vec<Tree> {
    let Tree::Node(i, ch) = t else { return vec![] };
    if ch.len() < 2 {
        return vec![];
    }
    let mut j = None;
    let mut rows = Vec::new();
    for c in ch {
        match c {
            Tree::Node(m, g) if m != i && j.is_none_or(|j| j == *m) => {
                j = Some(*m);
                rows.push(g);
            }
            _ => return vec![],
        }
    }
    let j = j.expect("at least two children");
    let mut out = Vec::new();
    let m = rows[0].len();
    if rows.iter().all(|r| r.len() == m) {
        out.push(Tree::Node(j, (0..m).map(|b| Tree::Node(*i, rows.iter().map(|r| r[b].clone()).collect())).collect()));
    }
    let staggered = rows.iter().flat_map(|r| r.iter().map(|c| Tree::Node(*i, vec![c.clone()]))).collect();
    out.push(Tree::Node(j, staggered));
    out
}

fn unit_insert_moves(t: &Term) -> Vec<(Move, Term)> {
    let n = t.n;
    side_moves(t, Move::UnitInsert, &move |s: &Tree| (1..=n).map(|l| Tree::Node(l, vec![s.clone()])).collect())
}

/// `(root, path of the parent)` on the `G` side for every pair.
fn g_parents(t: &Term) -> Vec<Option<(usize, Vec<usize>, u8)>> {
    fn walk(tree: &Tree, root: usize, path: &mut Vec<usize>, out: &mut [Option<(usize, Vec<usize>, u8)>]) {
        if let Tree::Node(l, ch) = tree {
            for (k, c) in ch.iter().enumerate() {
                match c {
                    Tree::Leaf(p) => out[*p] = Some((root, path.clone(), *l)),
                    _ => {
                        path.push(k);
                        walk(c, root, path, out);
                        path.pop();
                    }
                }
            }
        }
    }
    let mut out = vec![None; t.eps.len()];
    for (x, r) in t.g.iter().enumerate() {
        if let Some(r) = r {
            walk(r, x, &mut vec![], &mut out);
        }
    }
    out
}

/// Opposite-sign leaf pairs under a label-`i` vertex on each side.
fn cancel_moves(t: &Term, first_only: bool) -> Vec<(Move, Term)> {
    let gp = g_parents(t);
    let mut found = Vec::new();
    fn walk(tree: &Tree, t: &Term, gp: &[Option<(usize, Vec<usize>, u8)>], found: &mut Vec<(usize, usize)>) {
        let Tree::Node(l, ch) = tree else { return };
        let leaves: Vec<usize> =
            ch.iter().filter_map(|c| if let Tree::Leaf(p) = c { Some(*p) } else { None }).collect();
        for (a, &p) in leaves.iter().enumerate() {
            for &q in &leaves[a + 1..] {
                if t.eps[p] != t.eps[q]
                    && gp[p].is_some()
                    && gp[p] == gp[q]
                    && gp[p].as_ref().is_some_and(|g| g.2 == *l)
                {
                    found.push((p, q));
                }
            }
        }
        ch.iter().for_each(|c| walk(c, t, gp, found));
    }
    for r in t.f.iter().flatten() {
        walk(r, t, &gp, &mut found);
    }
    if first_only {
        found.truncate(1);
    }
    found
        .into_iter()
        .map(|(p, q)| {
            let drop = |forest: &[Option<Tree>]| -> Vec<Option<Tree>> {
                forest
                    .iter()
                    .map(|r| r.as_ref().and_then(|r| r.graft(&mut |x| (x != p && x != q).then_some(Tree::Leaf(x)))))
                    .collect()
            };
            (Move::Cancel, t.with_forests(drop(&t.f), drop(&t.g)))
        })
        .collect()
}

/// Tree with leaves renamed by `cell`, children sorted, for shape comparison.
fn labeled_shape(t: &Tree, cell: &[usize]) -> Tree {
    match t {
        Tree::Leaf(p) => Tree::Leaf(cell[*p]),
        Tree::Node(l, ch) => {
            let mut v: Vec<Tree> = ch.iter().map(|c| labeled_shape(c, cell)).collect();
            v.sort();
            Tree::Node(*l, v)
        }
    }
}

/// `F₀ ⊳ (i-cells)` over `G_x = j[k copies of G₀_x]` becomes
/// `F_y = i[k copies of F₀_y]` over `G₀ ⊳ (j-cells)`.
fn commute_a_to_b(t: &Term) -> Option<Term> {
    if t.eps.is_empty() {
        return None;
    }
    let mut cell = vec![usize::MAX; t.eps.len()];
    let mut cell_sign = Vec::new();
    let mut shape: Option<(u8, usize)> = None;
    // F₀: every vertex with a leaf child is an all-leaf cell of uniform label and arity
    fn strip(
        tree: &Tree,
        t: &Term,
        cell: &mut [usize],
        signs: &mut Vec<i8>,
        shape: &mut Option<(u8, usize)>,
    ) -> Option<Tree> {
        let Tree::Node(l, ch) = tree else { return None };
        if ch.iter().any(|c| matches!(c, Tree::Leaf(_))) {
            let ps: Vec<usize> =
                ch.iter().filter_map(|c| if let Tree::Leaf(p) = c { Some(*p) } else { None }).collect();
            if ps.len() != ch.len() || ps.len() < 2 || shape.is_some_and(|s| s != (*l, ps.len())) {
                return None;
            }
            *shape = Some((*l, ps.len()));
            let s = t.eps[ps[0]];
            if ps.iter().any(|&p| t.eps[p] != s) {
                return None;
            }
            let c = signs.len();
            signs.push(s);
            ps.iter().for_each(|&p| cell[p] = c);
            return Some(Tree::Leaf(c));
        }
        let kids = ch.iter().map(|c| strip(c, t, cell, signs, shape)).collect::<Option<Vec<_>>>()?;
        Some(Tree::Node(*l, kids))
    }
    let mut f0 = Vec::new();
    for r in &t.f {
        f0.push(match r {
            None => None,
            Some(r) => Some(strip(r, t, &mut cell, &mut cell_sign, &mut shape)?),
        });
    }
    let (i, k) = shape?;
    let mut j = None;
    let mut g0 = Vec::new();
    for r in &t.g {
        let Some(r) = r else {
            g0.push(None);
            continue;
        };
        let Tree::Node(l, copies) = r else { return None };
        if copies.len() != k || j.is_some_and(|j| j != *l) {
            return None;
        }
        j = Some(*l);
        let first = labeled_shape(&copies[0], &cell);
        if copies[1..].iter().any(|c| labeled_shape(c, &cell) != first) {
            return None;
        }
        g0.push(Some(first));
    }
    let j = j?;
    let id = |c: usize, b: usize| c * k + b;
    let f = f0
        .iter()
        .map(|r| r.as_ref().map(|r| Tree::Node(i, (0..k).map(|b| r.map_leaves(&mut |c| id(c, b))).collect())))
        .collect();
    let g = g0
        .iter()
        .map(|r| {
            r.as_ref()
                .and_then(|r| r.graft(&mut |c| Some(Tree::Node(j, (0..k).map(|b| Tree::Leaf(id(c, b))).collect()))))
        })
        .collect();
    let eps = (0..cell_sign.len())
        .flat_map(|c| (0..k).map(move |b| (c, b)))
        .map(|(c, b)| (id(c, b), cell_sign[c]))
        .collect::<HashMap<_, _>>();
    Some(Term::compact(t.n, f, g, &eps))
}

fn commute_moves(t: &Term) -> Vec<(Move, Term)> {
    let mut out = Vec::new();
    if let Some(b) = commute_a_to_b(t) {
        out.push((Move::Commute, b));
    }
    if let Some(a) = commute_a_to_b(&t.transpose()) {
        out.push((Move::Commute, a.transpose()));
    }
    out
}

/// Every single rewrite enabled by `rules`, before canonicalization.
pub fn successors(t: &Term, rules: &RuleSet) -> Vec<(Move, Term)> {
    let mut out = Vec::new();
    if rules.unit {
        out.extend(side_moves(t, Move::UnitElide, &elide_local));
        out.extend(unit_insert_moves(t));
    }
    if rules.assoc {
        out.extend(side_moves(t, Move::Flatten, &flatten_local));
        out.extend(side_moves(t, Move::Unflatten, &unflatten_local));
    }
    if rules.cancel {
        out.extend(cancel_moves(t, false));
    }
    if rules.comm {
        out.extend(commute_moves(t));
    }
    if rules.total_comm {
        out.extend(side_moves(t, Move::TotalCommute, &total_comm_local));
    }
    out
}

/// Applies one uniformly chosen rewrite of a uniformly chosen applicable kind.
pub fn apply_random_rule<R: Rng + ?Sized>(t: &Term, rules: &RuleSet, rng: &mut R) -> Option<(Move, Term)> {
    let mut by_kind: Vec<Vec<(Move, Term)>> = Vec::new();
    let all = successors(t, rules);
    for kind in [
        Move::UnitElide,
        Move::UnitInsert,
        Move::Flatten,
        Move::Unflatten,
        Move::Cancel,
        Move::Commute,
        Move::TotalCommute,
    ] {
        let v: Vec<(Move, Term)> = all.iter().filter(|(m, _)| *m == kind).cloned().collect();
        if !v.is_empty() {
            by_kind.push(v);
        }
    }
    if rules.iso {
        by_kind.push(vec![(Move::Canonicalize, t.canonical())]);
    }
    by_kind.choose(rng).and_then(|v| v.choose(rng)).cloned()
}

fn key(t: &Term) -> (usize, Vec<i32>) {
    (t.size(), t.encoding())
}

/// One directed reduction step, if any applies.
fn reduce_once(t: &Term, rules: &RuleSet) -> Option<(Move, Term)> {
    if rules.unit {
        let e = t.without_units();
        if e != *t {
            return Some((Move::UnitElide, e));
        }
    }
    if rules.assoc {
        if let Some(m) = side_moves(t, Move::Flatten, &flatten_local).into_iter().next() {
            return Some(m);
        }
    }
    if rules.cancel {
        if let Some(m) = cancel_moves(t, true).into_iter().next() {
            return Some(m);
        }
    }
    let mut directed = Vec::new();
    if rules.comm {
        directed.extend(commute_moves(t));
    }
    if rules.total_comm {
        directed.extend(side_moves(t, Move::TotalCommute, &total_comm_local));
    }
    if !directed.is_empty() {
        let here = key(t);
        let best = directed
            .into_iter()
            .map(|(m, s)| {
                let s = if rules.unit { s.without_units() } else { s };
                (key(&s), m, s)
            })
            .filter(|(k, _, _)| *k < here)
            .min_by(|a, b| a.0.cmp(&b.0));
        if let Some((_, m, s)) = best {
            return Some((m, s));
        }
    }
    if rules.iso {
        let c = t.canonical();
        if c != *t {
            return Some((Move::Canonicalize, c));
        }
    }
    None
}

/// Rewrites to a normal form: units elided, same-label vertices merged,
/// cancelling pairs removed, commutativity moves taken while they shrink the
/// term, then canonical. Fails with [`Error::Budget`] after `budget` steps.
pub fn normalize(t: &Term, rules: &RuleSet, budget: usize) -> Result<Term> {
    Ok(normalize_traced(t, rules, budget)?.0)
}

pub(crate) fn normalize_traced(t: &Term, rules: &RuleSet, budget: usize) -> Result<(Term, Vec<(Move, Term)>)> {
    let mut cur = t.clone();
    let mut trace = Vec::new();
    while let Some((m, next)) = reduce_once(&cur, rules) {
        if trace.len() >= budget {
            return Err(Error::Budget(budget));
        }
        trace.push((m, next.clone()));
        cur = next;
    }
    Ok((cur, trace))
}
