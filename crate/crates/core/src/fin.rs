//! Finite sets as index ranges and partial bijections between them.

use crate::error::{Error, Result};
use crate::fring::RigMatrix;
use crate::rig::Rig;
#[cfg(test)]
use crate::rig::RigElem;
use serde::{Deserialize, Serialize};

/// The finite set `{0, .., size-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinSet(pub usize);

impl FinSet {
    pub fn size(self) -> usize {
        self.0
    }
}

/// A partial bijection `source -> target`, stored as `(x, y)` pairs sorted by `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBijection")]
pub struct PartialBijection {
    source: usize,
    target: usize,
    pairs: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawBijection {
    source: usize,
    target: usize,
    pairs: Vec<(usize, usize)>,
}

impl TryFrom<RawBijection> for PartialBijection {
    type Error = Error;
    fn try_from(r: RawBijection) -> Result<Self> {
        PartialBijection::new(r.source, r.target, r.pairs)
    }
}

impl PartialBijection {
    pub fn new(source: usize, target: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        let mut seen_x = vec![false; source];
        let mut seen_y = vec![false; target];
        for &(x, y) in &pairs {
            if x >= source || y >= target {
                return Err(Error::InvalidBijection(format!("pair ({x},{y}) out of range for [{source}]->[{target}]")));
            }
            if seen_x[x] || seen_y[y] {
                return Err(Error::InvalidBijection(format!("pair ({x},{y}) repeats an index")));
            }
            seen_x[x] = true;
            seen_y[y] = true;
        }
        Ok(PartialBijection { source, target, pairs })
    }

    pub fn identity(n: usize) -> Self {
        PartialBijection { source: n, target: n, pairs: (0..n).map(|i| (i, i)).collect() }
    }

    pub fn empty(source: usize, target: usize) -> Self {
        PartialBijection { source, target, pairs: Vec::new() }
    }

    /// Inclusion of `[n]` as the block starting at `offset` inside `[total]`.
    pub fn inclusion(n: usize, offset: usize, total: usize) -> Result<Self> {
        PartialBijection::new(n, total, (0..n).map(|i| (i, i + offset)).collect())
    }

    pub fn source(&self) -> FinSet {
        FinSet(self.source)
    }

    pub fn target(&self) -> FinSet {
        FinSet(self.target)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.pairs.binary_search_by_key(&x, |p| p.0).ok().map(|i| self.pairs[i].1)
    }

    /// `self ∘ phi`, defined when `phi.target == self.source`.
    pub fn compose(&self, phi: &PartialBijection) -> Result<PartialBijection> {
        if phi.target != self.source {
            return Err(Error::Dimension { expected: self.source, found: phi.target });
        }
        let pairs = phi.pairs.iter().filter_map(|&(x, y)| self.apply(y).map(|z| (x, z))).collect();
        PartialBijection::new(phi.source, self.target, pairs)
    }

    pub fn transpose(&self) -> PartialBijection {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        PartialBijection { source: self.target, target: self.source, pairs }
    }

    /// Block sum on `X0 ⊔ X1 -> Y0 ⊔ Y1`; the second summand is offset.
    pub fn direct_sum(&self, other: &PartialBijection) -> PartialBijection {
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().map(|&(x, y)| (x + self.source, y + self.target)));
        PartialBijection { source: self.source + other.source, target: self.target + other.target, pairs }
    }

    /// 0/1 matrix with entry `(y, x) = 1` iff `self(x) = y`, over `bool-max`.
    pub fn as_boolean_matrix(&self) -> RigMatrix {
        self.as_matrix(&Rig::BoolMax)
    }

    /// The same 0/1 matrix over an arbitrary rig.
    pub fn as_matrix(&self, rig: &Rig) -> RigMatrix {
        let mut data = vec![vec![rig.zero(); self.source]; self.target];
        for &(x, y) in &self.pairs {
            data[y][x] = rig.one();
        }
        RigMatrix::from_rows_unchecked(rig.clone(), self.target, self.source, data)
    }

    /// Every partial bijection `[source] -> [target]`.
    pub fn enumerate(source: usize, target: usize) -> Vec<PartialBijection> {
        fn go(
            x: usize,
            source: usize,
            target: usize,
            used: &mut Vec<bool>,
            acc: &mut Vec<(usize, usize)>,
            out: &mut Vec<PartialBijection>,
        ) {
            if x == source {
                out.push(PartialBijection { source, target, pairs: acc.clone() });
                return;
            }
            go(x + 1, source, target, used, acc, out);
            for y in 0..target {
                if !used[y] {
                    used[y] = true;
                    acc.push((x, y));
                    go(x + 1, source, target, used, acc, out);
                    acc.pop();
                    used[y] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(0, source, target, &mut vec![false; target], &mut Vec::new(), &mut out);
        out
    }
}

#[cfg(test)]
/// Boolean value of a 0/1 entry, used by tests comparing against matrices.
pub(crate) fn is_one(e: &RigElem) -> bool {
    matches!(e, RigElem::Int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pb(s: usize, t: usize, p: &[(usize, usize)]) -> PartialBijection {
        PartialBijection::new(s, t, p.to_vec()).unwrap()
    }

    /// Composition via the boolean matrix product.
    fn compose_oracle(psi: &PartialBijection, phi: &PartialBijection) -> Vec<(usize, usize)> {
        let (a, b) = (psi.as_boolean_matrix(), phi.as_boolean_matrix());
        let mut out = Vec::new();
        for z in 0..psi.target().size() {
            for x in 0..phi.source().size() {
                if (0..phi.target().size()).any(|y| is_one(a.get(z, y)) && is_one(b.get(y, x))) {
                    out.push((x, z));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn compose_examples() {
        let phi = pb(2, 2, &[(0, 1)]);
        let psi = pb(2, 2, &[(1, 0)]);
        assert_eq!(psi.compose(&phi).unwrap(), pb(2, 2, &[(0, 0)]));
        let psi2 = pb(2, 2, &[(0, 0)]);
        assert_eq!(psi2.compose(&phi).unwrap(), PartialBijection::empty(2, 2));
        assert!(pb(3, 2, &[]).compose(&pb(2, 2, &[])).is_err());
    }

    #[test]
    fn validation() {
        assert!(PartialBijection::new(2, 2, vec![(0, 0), (1, 0)]).is_err());
        assert!(PartialBijection::new(2, 2, vec![(0, 0), (0, 1)]).is_err());
        assert!(PartialBijection::new(1, 2, vec![(1, 0)]).is_err());
    }

    #[test]
    fn boolean_matrix_example() {
        let m = pb(2, 2, &[(0, 1)]).as_boolean_matrix();
        assert_eq!(m.to_i128_rows(), vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(PartialBijection::identity(2).as_boolean_matrix().to_i128_rows(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn direct_sum_examples() {
        let one = pb(1, 1, &[(0, 0)]);
        assert_eq!(one.direct_sum(&one), PartialBijection::identity(2));
        let phi = pb(2, 3, &[(0, 2), (1, 0)]);
        assert_eq!(phi.direct_sum(&PartialBijection::empty(0, 0)), phi);
        assert_eq!(PartialBijection::empty(0, 0).direct_sum(&phi), phi);
    }

    #[test]
    fn exhaustive_small_laws() {
        let sizes = 0..=3usize;
        let all = |s, t| PartialBijection::enumerate(s, t);
        for x in sizes.clone() {
            for y in sizes.clone() {
                for phi in all(x, y) {
                    assert_eq!(phi.transpose().transpose(), phi);
                    assert_eq!(PartialBijection::identity(y).compose(&phi).unwrap(), phi);
                    assert_eq!(phi.compose(&PartialBijection::identity(x)).unwrap(), phi);
                    for z in sizes.clone() {
                        for psi in all(y, z) {
                            let c = psi.compose(&phi).unwrap();
                            assert_eq!(c.pairs().to_vec(), compose_oracle(&psi, &phi));
                            assert_eq!(c.transpose(), phi.transpose().compose(&psi.transpose()).unwrap());
                            assert_eq!(
                                c.as_boolean_matrix(),
                                psi.as_boolean_matrix().compose(&phi.as_boolean_matrix()).unwrap()
                            );
                        }
                    }
                }
            }
        }
        assert_eq!(PartialBijection::identity(3).transpose(), PartialBijection::identity(3));
    }

    #[test]
    fn associativity_exhaustive() {
        for phi in PartialBijection::enumerate(2, 3) {
            for psi in PartialBijection::enumerate(3, 2) {
                for chi in PartialBijection::enumerate(2, 3) {
                    let l = chi.compose(&psi.compose(&phi).unwrap()).unwrap();
                    let r = chi.compose(&psi).unwrap().compose(&phi).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn faithful_on_matrices() {
        let all = PartialBijection::enumerate(3, 3);
        let mats: std::collections::HashSet<_> = all.iter().map(|p| p.as_boolean_matrix().to_i128_rows()).collect();
        assert_eq!(mats.len(), all.len());
        assert_eq!(all.len(), 34);
    }

    #[test]
    fn serde_format() {
        let phi = pb(2, 3, &[(1, 0), (0, 2)]);
        let s = serde_json::to_string(&phi).unwrap();
        assert_eq!(s, r#"{"source":2,"target":3,"pairs":[[0,2],[1,0]]}"#);
        let back: PartialBijection = serde_json::from_str(&s).unwrap();
        assert_eq!(back, phi);
        assert!(serde_json::from_str::<PartialBijection>(r#"{"source":1,"target":1,"pairs":[[0,0],[0,0]]}"#).is_err());
    }

    fn arb_pb() -> impl Strategy<Value = PartialBijection> {
        (0usize..5, 0usize..5, any::<u64>()).prop_map(|(s, t, seed)| {
            let all = PartialBijection::enumerate(s, t);
            all[(seed % all.len() as u64) as usize].clone()
        })
    }

    proptest! {
        #[test]
        fn direct_sum_transpose(a in arb_pb(), b in arb_pb()) {
            prop_assert_eq!(a.direct_sum(&b).transpose(), a.transpose().direct_sum(&b.transpose()));
        }

        #[test]
        fn direct_sum_associative(a in arb_pb(), b in arb_pb(), c in arb_pb()) {
            prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        }

        #[test]
        fn direct_sum_functorial(a in arb_pb(), b in arb_pb(), seed in any::<u64>()) {
            let pick = |s: usize, t: usize, k: u64| {
                let all = PartialBijection::enumerate(s, t);
                all[(k % all.len() as u64) as usize].clone()
            };
            let c = pick(a.target().size(), 2, seed);
            let d = pick(b.target().size(), 3, seed / 7);
            prop_assert_eq!(
                c.direct_sum(&d).compose(&a.direct_sum(&b)).unwrap(),
                c.compose(&a).unwrap().direct_sum(&d.compose(&b).unwrap())
            );
        }
    }
}
