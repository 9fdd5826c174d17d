//! Bounded equality search and the total-commutativity derivation.

use super::rules::{normalize_traced, successors, Move, RuleSet};
use super::{Term, Tree};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

/// Extra vertices a search state may carry beyond the larger input.
const SIZE_SLACK: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: String,
    pub term: String,
}

impl TraceStep {
    fn new(rule: &str, t: &Term) -> TraceStep {
        TraceStep { rule: rule.to_string(), term: t.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Equality {
    Equal {
        trace: Vec<TraceStep>,
    },
    /// The evaluations differ, so no rule set can identify the terms.
    NotEqual {
        left: Vec<Vec<i64>>,
        right: Vec<Vec<i64>>,
    },
    /// The search ran out of budget (or of states) without a connection.
    NotIdentified {
        explored: usize,
        exhausted: bool,
    },
}

impl Equality {
    pub fn verdict(&self) -> &'static str {
        match self {
            Equality::Equal { .. } => "equal",
            Equality::NotEqual { .. } => "not-equal",
            Equality::NotIdentified { .. } => "not-identified",
        }
    }
}

fn inverse_name(m: Move) -> &'static str {
    match m {
        Move::UnitElide => Move::UnitInsert.name(),
        Move::UnitInsert => Move::UnitElide.name(),
        Move::Flatten => Move::Unflatten.name(),
        Move::Unflatten => Move::Flatten.name(),
        Move::Cancel => "uncancel",
        other => other.name(),
    }
}

struct State {
    side: usize,
    parent: Option<usize>,
    mv: Move,
    term: Term,
}

struct Graph {
    states: Vec<State>,
}

impl Graph {
    /// Steps from the root of `idx`'s side down to `idx`.
    fn chain(&self, idx: usize) -> Vec<TraceStep> {
        let mut out = Vec::new();
        let mut cur = idx;
        while let Some(p) = self.states[cur].parent {
            out.push(TraceStep::new(self.states[cur].mv.name(), &self.states[cur].term));
            cur = p;
        }
        out.reverse();
        out
    }

    /// Steps from `idx` back up to the root of its side.
    fn climb(&self, idx: usize) -> Vec<TraceStep> {
        let mut out = Vec::new();
        let mut cur = idx;
        while let Some(p) = self.states[cur].parent {
            out.push(TraceStep::new(inverse_name(self.states[cur].mv), &self.states[p].term));
            cur = p;
        }
        out
    }
}

fn prepare(t: &Term, rules: &RuleSet) -> Term {
    if rules.iso {
        t.canonical()
    } else {
        t.clone()
    }
}

/// Decides `t₁ = t₂` under `rules`: unequal evaluations refute, equal normal
/// forms confirm, and otherwise a bidirectional breadth-first search over
/// single rewrites runs until `budget` states have been expanded.
pub fn term_equal(t1: &Term, t2: &Term, rules: &RuleSet, budget: usize) -> Result<Equality> {
    if t1.n != t2.n || t1.rows() != t2.rows() || t1.cols() != t2.cols() {
        return Err(Error::Term("terms have different shapes or factor counts".into()));
    }
    let (left, right) = (t1.eval(), t2.eval());
    if left != right {
        return Ok(Equality::NotEqual { left, right });
    }
    let (n1, tr1) = normalize_traced(t1, rules, budget)?;
    let (n2, tr2) = normalize_traced(t2, rules, budget)?;
    let mut trace = vec![TraceStep::new("start", t1)];
    trace.extend(tr1.iter().map(|(m, t)| TraceStep::new(m.name(), t)));
    let mut back: Vec<TraceStep> = Vec::new();
    let mut prev = t2.clone();
    for (m, t) in &tr2 {
        back.push(TraceStep::new(inverse_name(*m), &prev));
        prev = t.clone();
    }
    back.reverse();
    let finish = |mut trace: Vec<TraceStep>, middle: Vec<TraceStep>| {
        trace.extend(middle);
        trace.extend(back.iter().cloned());
        Ok(Equality::Equal { trace })
    };
    if n1 == n2 {
        return finish(trace, vec![]);
    }

    let cap = n1.size().max(n2.size()) + SIZE_SLACK;
    let roots = [prepare(&n1, rules), prepare(&n2, rules)];
    let mut g = Graph { states: Vec::new() };
    let mut index: HashMap<Vec<i32>, usize> = HashMap::new();
    let mut frontier = [vec![], vec![]];
    for (side, r) in roots.into_iter().enumerate() {
        index.insert(r.encoding(), side);
        g.states.push(State { side, parent: None, mv: Move::Canonicalize, term: r });
        frontier[side].push(side);
    }
    let mut explored = 0;
    loop {
        let side = match (frontier[0].is_empty(), frontier[1].is_empty()) {
            (true, true) => return Ok(Equality::NotIdentified { explored, exhausted: true }),
            (false, true) => 0,
            (true, false) => 1,
            _ => usize::from(frontier[1].len() < frontier[0].len()),
        };
        let mut level = std::mem::take(&mut frontier[side]);
        let room = budget.saturating_sub(explored);
        let cut = level.len() > room;
        level.truncate(room);
        explored += level.len();
        let expanded: Vec<Vec<(Move, Term, Vec<i32>)>> = level
            .par_iter()
            .map(|&id| {
                successors(&g.states[id].term, rules)
                    .into_iter()
                    .filter(|(_, t)| t.size() <= cap)
                    .map(|(m, t)| {
                        let t = prepare(&t, rules);
                        let e = t.encoding();
                        (m, t, e)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&id, list) in level.iter().zip(expanded) {
            for (m, t, e) in list {
                match index.get(&e) {
                    Some(&o) if g.states[o].side != side => {
                        let (a, b) = if side == 0 { (id, o) } else { (o, id) };
                        let mut middle = g.chain(a);
                        let joint = if side == 0 { m.name() } else { inverse_name(m) };
                        middle.push(TraceStep::new(joint, &g.states[b].term));
                        middle.extend(g.climb(b));
                        return finish(trace, middle);
                    }
                    Some(_) => {}
                    None => {
                        index.insert(e, g.states.len());
                        next.push(g.states.len());
                        g.states.push(State { side, parent: Some(id), mv: m, term: t });
                    }
                }
            }
        }
        frontier[side] = next;
        if cut || explored >= budget {
            return Ok(Equality::NotIdentified { explored, exhausted: false });
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DurovTrace {
    /// Whether `δ₁ = δ₂` was derived.
    pub identified: bool,
    pub steps: Vec<TraceStep>,
    pub explored: usize,
}

/// Tries to identify `δ₁` and `δ₂` in `ℤ ⊗ ℤ`. With total commutativity the
/// derivation regroups `δ₁ ∘ (δ₂ ⊕ δ₂)`, restricts to the two middle columns
/// and elides units; without it a bounded search is run instead.
pub fn durov_check(rules: &RuleSet, budget: usize) -> Result<DurovTrace> {
    let d1 = Term::delta(2, 1);
    let d2 = Term::delta(2, 2);
    if !rules.total_comm {
        return Ok(match term_equal(&d1, &d2, rules, budget)? {
            Equality::Equal { trace } => DurovTrace { identified: true, steps: trace, explored: 0 },
            Equality::NotIdentified { explored, .. } => DurovTrace { identified: false, steps: vec![], explored },
            Equality::NotEqual { .. } => DurovTrace { identified: false, steps: vec![], explored: 0 },
        });
    }
    let left = d1.multiply(&d2.direct_sum(&d2)?)?;
    let mut steps = vec![TraceStep::new("start", &left)];
    let Some(Tree::Node(1, ch)) = &left.f[0] else {
        return Err(Error::Term("unexpected shape of δ₁ ∘ (δ₂ ⊕ δ₂)".into()));
    };
    let regrouped = Tree::Node(
        2,
        (0..2)
            .map(|b| {
                Tree::Node(
                    1,
                    ch.iter()
                        .map(|c| match c {
                            Tree::Node(_, g) => g[b].clone(),
                            leaf => leaf.clone(),
                        })
                        .collect(),
                )
            })
            .collect(),
    );
    let right = left.with_forests(vec![Some(regrouped)], left.g.clone());
    steps.push(TraceStep::new(Move::TotalCommute.name(), &right));

    // the regrouped term is δ₂ ∘ (δ₁ ⊕ δ₁) with the middle columns swapped
    let swap = Term::bijection(2, 4, &[(0, 0), (1, 2), (2, 1), (3, 3)])?;
    let expected = d2.multiply(&d1.direct_sum(&d1)?)?.multiply(&swap)?;
    if right.canonical() != expected.canonical() {
        return Err(Error::Term("regrouping did not produce δ₂ ∘ (δ₁ ⊕ δ₁)".into()));
    }

    let (l2, r2) = (left.restrict_cols(&[1, 2])?, right.restrict_cols(&[1, 2])?);
    steps.push(TraceStep::new(Move::Restrict.name(), &l2));
    steps.push(TraceStep::new(Move::Restrict.name(), &r2));
    let (l3, r3) = (l2.without_units(), r2.without_units());
    steps.push(TraceStep::new(Move::UnitElide.name(), &l3));
    steps.push(TraceStep::new(Move::UnitElide.name(), &r3));
    let (l4, r4) = (l3.canonical(), r3.canonical());
    steps.push(TraceStep::new(Move::Canonicalize.name(), &l4));
    steps.push(TraceStep::new(Move::Canonicalize.name(), &r4));
    let identified = l4 == d1.canonical() && r4 == d2.canonical();
    Ok(DurovTrace { identified, steps, explored: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::term_from_integer;

    #[test]
    fn integer_equalities() {
        let five = term_from_integer(5);
        let sum = term_from_integer(2).add_i(1, &term_from_integer(3)).unwrap();
        let r = term_equal(&five, &sum, &RuleSet::base(), 1000).unwrap();
        assert_eq!(r.verdict(), "equal");
        let r = term_equal(&five, &term_from_integer(4), &RuleSet::base(), 1000).unwrap();
        assert_eq!(r.verdict(), "not-equal");
    }

    #[test]
    fn deltas_need_total_commutativity() {
        let (d1, d2) = (Term::delta(2, 1), Term::delta(2, 2));
        let r = term_equal(&d1, &d2, &RuleSet::base(), 2000).unwrap();
        assert_eq!(r.verdict(), "not-identified");
        let r = term_equal(&d1, &d2, &RuleSet::with_total_comm(), 2000).unwrap();
        let Equality::Equal { trace } = r else { panic!("expected a derivation, got {r:?}") };
        assert!(trace.len() <= 10, "{trace:?}");
    }

    #[test]
    fn durov_derivation() {
        let d = durov_check(&RuleSet::with_total_comm(), 10_000).unwrap();
        assert!(d.identified);
        assert!(d.steps.len() <= 10);
        assert_eq!(d.steps[1].rule, "total-commute");
    }

    #[test]
    fn base_rules_exhaust_without_identifying() {
        let d = durov_check(&RuleSet::base(), 10_000).unwrap();
        assert!(!d.identified);
        assert!(d.explored > 0 && d.steps.is_empty());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        assert!(term_equal(&Term::delta(2, 1), &Term::integer(2, 1), &RuleSet::base(), 10).is_err());
    }
}
