//! JSON form of terms. Leaves are numbered by pre-order over each forest;
//! `sigma` lists `[f_leaf, g_leaf]` pairs and `eps` the sign of each `F` leaf.

use super::{Term, Tree};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TreeFile {
    /// Must be the string `"leaf"`.
    Leaf(String),
    Node {
        label: u8,
        children: Vec<TreeFile>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermFile {
    pub n: u8,
    #[serde(rename = "Y")]
    pub y: usize,
    #[serde(rename = "X")]
    pub x: usize,
    #[serde(rename = "F")]
    pub f: Vec<Option<TreeFile>>,
    #[serde(rename = "G")]
    pub g: Vec<Option<TreeFile>>,
    pub sigma: Vec<[usize; 2]>,
    pub eps: Vec<i8>,
    #[serde(default)]
    pub zero: bool,
}

fn to_file(t: &Tree, rename: &dyn Fn(usize) -> usize, out: &mut Vec<usize>) -> TreeFile {
    match t {
        Tree::Leaf(p) => {
            out.push(rename(*p));
            TreeFile::Leaf("leaf".into())
        }
        Tree::Node(l, ch) => {
            TreeFile::Node { label: *l, children: ch.iter().map(|c| to_file(c, rename, out)).collect() }
        }
    }
}

fn from_file(t: &TreeFile, next: &mut usize, ids: &[usize]) -> Result<Tree> {
    match t {
        TreeFile::Leaf(s) if s == "leaf" => {
            let id = *ids.get(*next).ok_or_else(|| Error::Term(format!("leaf {next} has no partner in sigma")))?;
            *next += 1;
            Ok(Tree::Leaf(id))
        }
        TreeFile::Leaf(s) => Err(Error::Term(format!("expected \"leaf\", found \"{s}\""))),
        TreeFile::Node { label, children } => {
            Ok(Tree::Node(*label, children.iter().map(|c| from_file(c, next, ids)).collect::<Result<_>>()?))
        }
    }
}

impl Term {
    pub fn to_file(&self) -> TermFile {
        // pairs are already numbered in F pre-order after compaction, but do not rely on it
        let mut f_order = Vec::new();
        let f = self.f.iter().map(|r| r.as_ref().map(|r| to_file(r, &|p| p, &mut f_order))).collect();
        let mut g_order = Vec::new();
        let g = self.g.iter().map(|r| r.as_ref().map(|r| to_file(r, &|p| p, &mut g_order))).collect();
        let mut g_pos = vec![0; self.eps.len()];
        for (i, &p) in g_order.iter().enumerate() {
            g_pos[p] = i;
        }
        let sigma = f_order.iter().enumerate().map(|(i, &p)| [i, g_pos[p]]).collect();
        let eps = f_order.iter().map(|&p| self.eps[p]).collect();
        TermFile { n: self.n, y: self.rows(), x: self.cols(), f, g, sigma, eps, zero: self.is_zero() }
    }

    pub fn from_file(file: &TermFile) -> Result<Term> {
        if file.f.len() != file.y || file.g.len() != file.x {
            return Err(Error::Term(format!("expected {} F roots and {} G roots", file.y, file.x)));
        }
        let m = file.eps.len();
        if file.sigma.len() != m {
            return Err(Error::Term(format!("sigma has {} entries for {m} leaves", file.sigma.len())));
        }
        let mut g_ids = vec![usize::MAX; m];
        for &[fl, gl] in &file.sigma {
            if fl >= m || gl >= m || g_ids[gl] != usize::MAX {
                return Err(Error::Term(format!("sigma entry [{fl},{gl}] is not part of a bijection")));
            }
            g_ids[gl] = fl;
        }
        let f_ids: Vec<usize> = (0..m).collect();
        let mut next = 0;
        let f = file
            .f
            .iter()
            .map(|r| r.as_ref().map(|r| from_file(r, &mut next, &f_ids)).transpose())
            .collect::<Result<Vec<_>>>()?;
        if next != m {
            return Err(Error::Term(format!("F has {next} leaves but eps has {m}")));
        }
        let mut next = 0;
        let g = file
            .g
            .iter()
            .map(|r| r.as_ref().map(|r| from_file(r, &mut next, &g_ids)).transpose())
            .collect::<Result<Vec<_>>>()?;
        if next != m {
            return Err(Error::Term(format!("G has {next} leaves but eps has {m}")));
        }
        let t = Term::new(file.n, f, g, file.eps.clone())?;
        if file.zero != t.is_zero() {
            return Err(Error::Term("zero flag disagrees with the forests".into()));
        }
        Ok(t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_file()).expect("terms serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Term> {
        let file: TermFile = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Term::from_file(&file)
    }
}
