//! Canonical forms by colour refinement with individualization.
//!
//! The term is viewed as one graph: internal vertices of `F` and `G` plus one
//! node per matched leaf pair. Sibling order is free, roots are fixed by index.

use super::{Term, Tree};

/// Leaves of the individualization tree explored before settling.
const LEAF_BUDGET: usize = 256;

const PAIR: u8 = 0;
const FSIDE: u8 = 1;
const GSIDE: u8 = 2;

struct Node {
    kind: u8,
    label: u8,
    sign: i8,
    pf: Option<usize>,
    pg: Option<usize>,
    rf: Option<usize>,
    rg: Option<usize>,
    children: Vec<usize>,
}

struct Graph {
    n: u8,
    nodes: Vec<Node>,
    pairs: usize,
    f_roots: Vec<Option<usize>>,
    g_roots: Vec<Option<usize>>,
}

impl Graph {
    fn build(t: &Term) -> Graph {
        let nodes = t
            .eps
            .iter()
            .map(|&sign| Node { kind: PAIR, label: 0, sign, pf: None, pg: None, rf: None, rg: None, children: vec![] })
            .collect();
        let mut g = Graph { n: t.n, nodes, pairs: t.eps.len(), f_roots: vec![], g_roots: vec![] };
        g.f_roots = t.f.iter().enumerate().map(|(y, r)| r.as_ref().map(|r| g.add(r, FSIDE, None, Some(y)))).collect();
        g.g_roots = t.g.iter().enumerate().map(|(x, r)| r.as_ref().map(|r| g.add(r, GSIDE, None, Some(x)))).collect();
        g
    }

    fn add(&mut self, t: &Tree, side: u8, parent: Option<usize>, root: Option<usize>) -> usize {
        match t {
            Tree::Leaf(p) => {
                let node = &mut self.nodes[*p];
                if side == FSIDE {
                    (node.pf, node.rf) = (parent, root);
                } else {
                    (node.pg, node.rg) = (parent, root);
                }
                *p
            }
            Tree::Node(label, ch) => {
                let idx = self.nodes.len();
                let (pf, pg, rf, rg) =
                    if side == FSIDE { (parent, None, root, None) } else { (None, parent, None, root) };
                self.nodes.push(Node { kind: side, label: *label, sign: 0, pf, pg, rf, rg, children: vec![] });
                let children = ch.iter().map(|c| self.add(c, side, Some(idx), None)).collect();
                self.nodes[idx].children = children;
                idx
            }
        }
    }
}

/// Replaces colours by ranks of their signatures; returns the class count.
fn rank(sigs: Vec<Vec<u32>>) -> (Vec<u32>, usize) {
    let mut order: Vec<usize> = (0..sigs.len()).collect();
    order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
    let mut colors = vec![0u32; sigs.len()];
    let mut next = 0u32;
    for (i, &v) in order.iter().enumerate() {
        if i > 0 && sigs[v] != sigs[order[i - 1]] {
            next += 1;
        }
        colors[v] = next;
    }
    let classes = if sigs.is_empty() { 0 } else { next as usize + 1 };
    (colors, classes)
}

fn initial_colors(g: &Graph) -> Vec<u32> {
    let opt = |o: Option<usize>| o.map_or(0, |v| v as u32 + 1);
    let sigs = g
        .nodes
        .iter()
        .map(|n| vec![n.kind as u32, n.label as u32, (n.sign + 1) as u32, opt(n.rf), opt(n.rg)])
        .collect();
    rank(sigs).0
}

fn refine(g: &Graph, colors: &mut Vec<u32>) {
    let mut classes = colors.iter().collect::<std::collections::HashSet<_>>().len();
    loop {
        let c = &*colors;
        let opt = |o: Option<usize>| o.map_or(0, |v| c[v] + 1);
        let sigs = g
            .nodes
            .iter()
            .enumerate()
            .map(|(v, n)| {
                let mut ch: Vec<u32> = n.children.iter().map(|&w| c[w]).collect();
                ch.sort_unstable();
                let mut sig = vec![c[v], opt(n.pf), opt(n.pg)];
                sig.extend(ch);
                sig
            })
            .collect();
        let (next, count) = rank(sigs);
        *colors = next;
        if count == classes {
            return;
        }
        classes = count;
    }
}

/// Smallest colour shared by two siblings, if any.
fn target_color(g: &Graph, colors: &[u32]) -> Option<u32> {
    let mut best: Option<u32> = None;
    for n in &g.nodes {
        let mut ch: Vec<u32> = n.children.iter().map(|&w| colors[w]).collect();
        ch.sort_unstable();
        for w in ch.windows(2) {
            if w[0] == w[1] {
                best = Some(best.map_or(w[0], |b| b.min(w[0])));
            }
        }
    }
    best
}

/// The term read off with siblings ordered by colour.
fn emit(g: &Graph, colors: &[u32]) -> Term {
    let mut number = vec![usize::MAX; g.pairs];
    let mut eps = Vec::with_capacity(g.pairs);
    fn walk(g: &Graph, colors: &[u32], v: usize, f_side: bool, number: &mut [usize], eps: &mut Vec<i8>) -> Tree {
        let node = &g.nodes[v];
        if node.kind == PAIR {
            if f_side {
                number[v] = eps.len();
                eps.push(node.sign);
            }
            return Tree::Leaf(number[v]);
        }
        let mut ch = node.children.clone();
        ch.sort_by_key(|&w| colors[w]);
        Tree::Node(node.label, ch.into_iter().map(|w| walk(g, colors, w, f_side, number, eps)).collect())
    }
    let f = g.f_roots.iter().map(|r| r.map(|r| walk(g, colors, r, true, &mut number, &mut eps))).collect();
    let gg = g.g_roots.iter().map(|r| r.map(|r| walk(g, colors, r, false, &mut number, &mut eps))).collect();
    Term::from_raw(g.n, f, gg, eps)
}

/// Token stream of a term in its stored order.
pub(super) fn encode(t: &Term) -> Vec<i32> {
    fn tree(t: &Tree, f_side: bool, eps: &[i8], out: &mut Vec<i32>) {
        match t {
            Tree::Leaf(p) => {
                out.push(-1);
                out.push(if f_side { eps[*p] as i32 } else { *p as i32 });
            }
            Tree::Node(l, ch) => {
                out.extend([-2, *l as i32, ch.len() as i32]);
                ch.iter().for_each(|c| tree(c, f_side, eps, out));
            }
        }
    }
    let mut out = vec![t.n as i32, t.f.len() as i32, t.g.len() as i32];
    for (forest, f_side) in [(&t.f, true), (&t.g, false)] {
        for r in forest {
            match r {
                Some(r) => tree(r, f_side, &t.eps, &mut out),
                None => out.push(-3),
            }
        }
    }
    out
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<i32>, Term)>,
    leaves: usize,
}

impl Search<'_> {
    fn run(&mut self, colors: Vec<u32>) {
        let Some(c) = target_color(self.g, &colors) else {
            let t = emit(self.g, &colors);
            let e = encode(&t);
            if self.best.as_ref().is_none_or(|(b, _)| e < *b) {
                self.best = Some((e, t));
            }
            self.leaves += 1;
            return;
        };
        let mut cell: Vec<usize> = (0..colors.len()).filter(|&v| colors[v] == c).collect();
        // leaf pairs with the same parents and sign are interchangeable
        let mut seen = std::collections::HashSet::new();
        cell.retain(|&v| {
            let n = &self.g.nodes[v];
            n.kind != PAIR || seen.insert((n.pf, n.pg, n.rf, n.rg, n.sign))
        });
        let top = colors.iter().max().copied().unwrap_or(0) + 1;
        for v in cell {
            if self.leaves >= LEAF_BUDGET && self.best.is_some() {
                return;
            }
            let mut next = colors.clone();
            next[v] = top;
            refine(self.g, &mut next);
            self.run(next);
        }
    }
}

pub(super) fn canonical(t: &Term) -> Term {
    let g = Graph::build(t);
    let mut colors = initial_colors(&g);
    refine(&g, &mut colors);
    let mut s = Search { g: &g, best: None, leaves: 0 };
    s.run(colors);
    s.best.expect("search visits at least one leaf").1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::term_from_integer;

    fn leaf(p: usize) -> Tree {
        Tree::Leaf(p)
    }

    #[test]
    fn sibling_order_is_forgotten() {
        let a = Term::new(
            2,
            vec![Some(Tree::node(1, vec![Tree::node(2, vec![leaf(0), leaf(1)]), leaf(2)]))],
            vec![Some(leaf(0)), Some(leaf(1)), Some(leaf(2))],
            vec![1, 1, -1],
        )
        .unwrap();
        let b = Term::new(
            2,
            vec![Some(Tree::node(1, vec![leaf(0), Tree::node(2, vec![leaf(2), leaf(1)])]))],
            vec![Some(leaf(2)), Some(leaf(1)), Some(leaf(0))],
            vec![-1, 1, 1],
        )
        .unwrap();
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.canonical().canonical(), a.canonical());
    }

    #[test]
    fn root_order_matters() {
        let a = Term::delta(2, 1);
        let b = Term::new(
            2,
            vec![Some(Tree::node(1, vec![leaf(0), leaf(1)]))],
            vec![Some(leaf(0)), Some(leaf(1))],
            vec![1, -1],
        )
        .unwrap();
        let c = Term::new(
            2,
            vec![Some(Tree::node(1, vec![leaf(0), leaf(1)]))],
            vec![Some(leaf(1)), Some(leaf(0))],
            vec![1, -1],
        )
        .unwrap();
        assert_ne!(a.encoding(), b.encoding());
        assert_ne!(b.encoding(), c.encoding());
        assert_eq!(b.canonical().canonical(), b.canonical());
    }

    #[test]
    fn matching_is_part_of_the_class() {
        // 1(2(a,b),2(c,d)) over G = 1(2(a,c),2(b,d)) versus 1(2(a,b),2(c,d))
        let f = Some(Tree::node(1, vec![Tree::node(2, vec![leaf(0), leaf(1)]), Tree::node(2, vec![leaf(2), leaf(3)])]));
        let crossed = Term::new(
            2,
            vec![f.clone()],
            vec![Some(Tree::node(
                1,
                vec![Tree::node(2, vec![leaf(0), leaf(2)]), Tree::node(2, vec![leaf(1), leaf(3)])],
            ))],
            vec![1; 4],
        )
        .unwrap();
        let straight = Term::new(2, vec![f.clone()], vec![f.clone()], vec![1; 4]).unwrap();
        let relabeled = Term::new(
            2,
            vec![f],
            vec![Some(Tree::node(
                1,
                vec![Tree::node(2, vec![leaf(3), leaf(2)]), Tree::node(2, vec![leaf(1), leaf(0)])],
            ))],
            vec![1; 4],
        )
        .unwrap();
        assert_ne!(crossed.encoding(), straight.encoding());
        assert_eq!(straight.encoding(), relabeled.encoding());
    }

    #[test]
    fn large_combs_are_cheap() {
        let t = term_from_integer(40);
        assert_eq!(t.canonical(), t);
    }
}
