//! The 𝔽-ring with involution 𝔽(B): matrices over a rig with composition,
//! block sum and transpose.
//!
//! Products of finite sets `Y×W` are ordered lexicographically with the first
//! factor major, and `⊕_Z a` is the block-diagonal matrix with `|Z|` copies
//! of `a`, indexed by `Z×Y` and `Z×X`.

use crate::error::{Error, Result};
use crate::fin::PartialBijection;
use crate::report::{run_law, Report};
use crate::rig::{Rig, RigElem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct RigMatrix {
    rig: Rig,
    rows: usize,
    cols: usize,
    data: Vec<Vec<RigElem>>,
}

impl fmt::Display for RigMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .data
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}x{}[{}]", self.rows, self.cols, rows.join(","))
    }
}

/// JSON literal `{rig, rows, cols, data}`.
#[derive(Serialize, Deserialize)]
pub struct MatrixLiteral {
    pub rig: String,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<serde_json::Value>>,
}

impl RigMatrix {
    pub fn new(rig: Rig, rows: usize, cols: usize, data: Vec<Vec<RigElem>>) -> Result<Self> {
        if data.len() != rows {
            return Err(Error::Dimension { expected: rows, found: data.len() });
        }
        for r in &data {
            if r.len() != cols {
                return Err(Error::Dimension { expected: cols, found: r.len() });
            }
            for e in r {
                if !rig.contains(e) {
                    return Err(Error::Carrier { rig: rig.name(), value: e.to_string() });
                }
            }
        }
        Ok(RigMatrix { rig, rows, cols, data })
    }

    pub(crate) fn from_rows_unchecked(rig: Rig, rows: usize, cols: usize, data: Vec<Vec<RigElem>>) -> Self {
        RigMatrix { rig, rows, cols, data }
    }

    pub fn from_ints(rig: &Rig, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| rig.from_int(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RigMatrix::new(rig.clone(), rows.len(), cols, data)
    }

    pub fn zero(rig: &Rig, rows: usize, cols: usize) -> Self {
        RigMatrix { rig: rig.clone(), rows, cols, data: vec![vec![rig.zero(); cols]; rows] }
    }

    pub fn identity(rig: &Rig, n: usize) -> Self {
        PartialBijection::identity(n).as_matrix(rig)
    }

    /// The row `δ = (1,1)`.
    pub fn delta(rig: &Rig) -> Self {
        RigMatrix { rig: rig.clone(), rows: 1, cols: 2, data: vec![vec![rig.one(), rig.one()]] }
    }

    pub fn scalar(rig: &Rig, a: RigElem) -> Self {
        RigMatrix { rig: rig.clone(), rows: 1, cols: 1, data: vec![vec![a]] }
    }

    pub fn row(rig: &Rig, v: Vec<RigElem>) -> Self {
        RigMatrix { rig: rig.clone(), rows: 1, cols: v.len(), data: vec![v] }
    }

    pub fn rig(&self) -> &Rig {
        &self.rig
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, y: usize, x: usize) -> &RigElem {
        &self.data[y][x]
    }

    pub fn data(&self) -> &[Vec<RigElem>] {
        &self.data
    }

    pub fn to_i128_rows(&self) -> Vec<Vec<i128>> {
        self.data.iter().map(|r| r.iter().map(|e| e.as_int().unwrap_or(i128::MIN)).collect()).collect()
    }

    /// Entrywise equality with the rig's tolerance.
    pub fn same(&self, other: &RigMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.iter().zip(b).all(|(x, y)| self.rig.same(x, y)))
    }

    fn check_rig(&self, other: &RigMatrix) -> Result<()> {
        if self.rig != other.rig {
            return Err(Error::RigMismatch(self.rig.name(), other.rig.name()));
        }
        Ok(())
    }

    /// `self ∘ b` for `self: Z×Y`, `b: Y×X`.
    pub fn compose(&self, b: &RigMatrix) -> Result<RigMatrix> {
        self.check_rig(b)?;
        if self.cols != b.rows {
            return Err(Error::Dimension { expected: self.cols, found: b.rows });
        }
        let r = &self.rig;
        let mut data = Vec::with_capacity(self.rows);
        for z in 0..self.rows {
            let mut row = Vec::with_capacity(b.cols);
            for x in 0..b.cols {
                let mut acc = r.zero();
                for y in 0..self.cols {
                    acc = r.add(&acc, &r.mul(&self.data[z][y], &b.data[y][x])?)?;
                }
                row.push(acc);
            }
            data.push(row);
        }
        Ok(RigMatrix { rig: r.clone(), rows: self.rows, cols: b.cols, data })
    }

    pub fn direct_sum(&self, b: &RigMatrix) -> Result<RigMatrix> {
        self.check_rig(b)?;
        let (rows, cols) = (self.rows + b.rows, self.cols + b.cols);
        let mut out = RigMatrix::zero(&self.rig, rows, cols);
        for y in 0..self.rows {
            for x in 0..self.cols {
                out.data[y][x] = self.data[y][x].clone();
            }
        }
        for y in 0..b.rows {
            for x in 0..b.cols {
                out.data[self.rows + y][self.cols + x] = b.data[y][x].clone();
            }
        }
        Ok(out)
    }

    /// `⊕_{[n]} self`.
    pub fn repeat_sum(&self, n: usize) -> RigMatrix {
        let mut out = RigMatrix::zero(&self.rig, self.rows * n, self.cols * n);
        for k in 0..n {
            for y in 0..self.rows {
                for x in 0..self.cols {
                    out.data[k * self.rows + y][k * self.cols + x] = self.data[y][x].clone();
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RigMatrix {
        let data = (0..self.cols).map(|x| (0..self.rows).map(|y| self.data[y][x].clone()).collect()).collect();
        RigMatrix { rig: self.rig.clone(), rows: self.cols, cols: self.rows, data }
    }

    /// Kronecker product indexed by `Y×W` and `X×Z`, first factor major.
    pub fn kron(&self, b: &RigMatrix) -> Result<RigMatrix> {
        self.check_rig(b)?;
        let r = &self.rig;
        let mut out = RigMatrix::zero(r, self.rows * b.rows, self.cols * b.cols);
        for y in 0..self.rows {
            for w in 0..b.rows {
                for x in 0..self.cols {
                    for z in 0..b.cols {
                        out.data[y * b.rows + w][x * b.cols + z] = r.mul(&self.data[y][x], &b.data[w][z])?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_literal(&self) -> MatrixLiteral {
        MatrixLiteral {
            rig: self.rig.name(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|e| self.rig.elem_to_json(e)).collect()).collect(),
        }
    }

    pub fn from_literal(lit: &MatrixLiteral) -> Result<RigMatrix> {
        let rig = Rig::parse(&lit.rig)?;
        let data = lit
            .data
            .iter()
            .map(|r| r.iter().map(|v| rig.elem_from_json(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RigMatrix::new(rig, lit.rows, lit.cols, data)
    }

    pub fn random<R: Rng>(rig: &Rig, rows: usize, cols: usize, rng: &mut R) -> RigMatrix {
        let data = (0..rows).map(|_| (0..cols).map(|_| rig.sample(rng)).collect()).collect();
        RigMatrix { rig: rig.clone(), rows, cols, data }
    }
}

/// The permutation matrix `S×T <- T×S` swapping the factors of a product.
pub fn swap_matrix(rig: &Rig, s: usize, t: usize) -> RigMatrix {
    let mut m = RigMatrix::zero(rig, s * t, s * t);
    for i in 0..s {
        for j in 0..t {
            m.data[i * t + j][j * s + i] = rig.one();
        }
    }
    m
}

/// `a₁ + a₂` computed as `δ ∘ (a₁ ⊕ a₂) ∘ δ^t`.
pub fn scalar_add_via_delta(rig: &Rig, a1: &RigElem, a2: &RigElem) -> Result<RigElem> {
    let d = RigMatrix::delta(rig);
    let s = RigMatrix::scalar(rig, a1.clone()).direct_sum(&RigMatrix::scalar(rig, a2.clone()))?;
    Ok(d.compose(&s)?.compose(&d.transpose())?.data[0][0].clone())
}

/// Both sides of the total-commutativity identity, as matrices in `A_{Y×W, X×Z}`.
pub fn total_commutative_sides(a: &RigMatrix, b: &RigMatrix) -> Result<(RigMatrix, RigMatrix)> {
    let r = a.rig();
    let (y, x, w, z) = (a.rows, a.cols, b.rows, b.cols);
    // (⊕_W a) ∘ (⊕_X b): X×Z -> X×W -> W×X -> W×Y -> Y×W
    let lhs =
        swap_matrix(r, y, w).compose(&a.repeat_sum(w))?.compose(&swap_matrix(r, w, x))?.compose(&b.repeat_sum(x))?;
    // (⊕_Y b) ∘ (⊕_Z a): X×Z -> Z×X -> Z×Y -> Y×Z -> Y×W
    let rhs =
        b.repeat_sum(y).compose(&swap_matrix(r, y, z))?.compose(&a.repeat_sum(z))?.compose(&swap_matrix(r, z, x))?;
    Ok((lhs, rhs))
}

fn dims(rng: &mut ChaCha8Rng, lo: usize) -> usize {
    rng.random_range(lo..=4)
}

/// Randomized check of the commutativity identity of 𝔽-rings.
pub fn check_fring_commutative(rig: &Rig, trials: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("F({})", rig.name()));
    report.push(run_law("commutative", trials, |_| {
        let (y, x, z) = (dims(&mut rng, 1), dims(&mut rng, 1), dims(&mut rng, 1));
        let a = RigMatrix::random(rig, y, x, &mut rng);
        let b = RigMatrix::random(rig, 1, z, &mut rng);
        let d = RigMatrix::random(rig, z, 1, &mut rng);
        let run = || -> Result<[RigMatrix; 3]> {
            let bd = b.compose(&d)?;
            let first = a.compose(&bd.repeat_sum(x))?;
            let second = bd.repeat_sum(y).compose(&a)?;
            // ⊕_Z a is indexed by Z×Y, Z×X; ⊕_Y b needs Y×Z and ⊕_X d gives X×Z
            let third = b
                .repeat_sum(y)
                .compose(&swap_matrix(rig, y, z))?
                .compose(&a.repeat_sum(z))?
                .compose(&swap_matrix(rig, z, x))?
                .compose(&d.repeat_sum(x))?;
            Ok([first, second, third])
        };
        match run() {
            Ok([p, q, s]) if p.same(&q) && q.same(&s) => Ok(()),
            Ok([p, q, s]) => Err(format!("a={a} b={b} d={d}: {p} / {q} / {s}")),
            Err(e) => Err(format!("a={a} b={b} d={d}: {e}")),
        }
    }));
    report
}

/// Randomized check of total commutativity against the Kronecker product.
pub fn check_total_commutative(rig: &Rig, trials: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("F({})", rig.name()));
    report.push(run_law("total-commutative", trials, |_| {
        let a = RigMatrix::random(rig, dims(&mut rng, 0), dims(&mut rng, 0), &mut rng);
        let b = RigMatrix::random(rig, dims(&mut rng, 0), dims(&mut rng, 0), &mut rng);
        match total_commutative_sides(&a, &b) {
            Ok((l, r)) if l.same(&r) => Ok(()),
            Ok((l, r)) => Err(format!("a={a} b={b}: {l} != {r}")),
            Err(e) => Err(format!("a={a} b={b}: {e}")),
        }
    }));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn nat(rows: &[&[i64]]) -> RigMatrix {
        RigMatrix::from_ints(&Rig::Nat, rows).unwrap()
    }

    #[test]
    fn compose_examples() {
        let d = RigMatrix::delta(&Rig::Nat);
        assert_eq!(d.compose(&d.transpose()).unwrap(), nat(&[&[2]]));
        let a = nat(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.compose(&RigMatrix::identity(&Rig::Nat, 3)).unwrap(), a);
        let b = Rig::BoolMax;
        let m = RigMatrix::from_ints(&b, &[&[1, 1], &[0, 1]]).unwrap();
        let v = RigMatrix::from_ints(&b, &[&[1], &[1]]).unwrap();
        assert_eq!(m.compose(&v).unwrap(), RigMatrix::from_ints(&b, &[&[1], &[1]]).unwrap());
        assert!(a.compose(&a).is_err());
        assert!(a.compose(&RigMatrix::identity(&Rig::Int, 3)).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let one = nat(&[&[1]]);
        assert_eq!(one.direct_sum(&one).unwrap(), RigMatrix::identity(&Rig::Nat, 2));
        let d = RigMatrix::delta(&Rig::Nat);
        assert_eq!(d.direct_sum(&d).unwrap(), nat(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
    }

    #[test]
    fn delta_block_factorization() {
        let d = RigMatrix::delta(&Rig::Nat);
        assert_eq!(d.transpose(), nat(&[&[1], &[1]]));
        let dtd = d.transpose().compose(&d).unwrap();
        assert_eq!(dtd, nat(&[&[1, 1], &[1, 1]]));
        let dd = d.direct_sum(&d).unwrap();
        // the displayed right factor [[1,0],[0,1],[1,0],[0,1]]
        let shown = nat(&[&[1, 0], &[0, 1], &[1, 0], &[0, 1]]);
        assert_eq!(dd.compose(&shown).unwrap(), dtd);
        // the swap of [2]×[2] between δ⊕δ and its transpose
        let p = swap_matrix(&Rig::Nat, 2, 2);
        assert_eq!(dd.compose(&p).unwrap().compose(&dd.transpose()).unwrap(), dtd);
        // the displayed right factor is (δ⊕δ)^t with its rows reindexed by the swap
        assert_eq!(p.compose(&dd.transpose()).unwrap(), shown);
        assert_ne!(dd.transpose(), shown);
    }

    #[test]
    fn scalar_addition() {
        let i = |v| RigElem::Int(v);
        assert_eq!(scalar_add_via_delta(&Rig::Nat, &i(2), &i(3)).unwrap(), i(5));
        assert_eq!(scalar_add_via_delta(&Rig::BoolMax, &i(1), &i(1)).unwrap(), i(1));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for r in Rig::registered() {
            for _ in 0..50 {
                let (a, b) = (r.sample(&mut rng), r.sample(&mut rng));
                assert!(r.same(&scalar_add_via_delta(&r, &a, &b).unwrap(), &r.add(&a, &b).unwrap()));
                assert!(r.same(&scalar_add_via_delta(&r, &a, &r.zero()).unwrap(), &a));
            }
        }
    }

    #[test]
    fn commutativity_suites() {
        for r in [Rig::Nat, Rig::BoolMax, Rig::ZMod(6), Rig::Int, Rig::TropMax] {
            let rep = check_fring_commutative(&r, 500, 11);
            assert!(rep.passed(), "{rep}");
            let rep = check_total_commutative(&r, 500, 12);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn central_scalar_case() {
        let r = Rig::Nat;
        let a = nat(&[&[1, 2], &[3, 4], &[5, 6]]);
        let one = nat(&[&[1]]);
        let bd = one.compose(&one).unwrap();
        assert_eq!(a.compose(&bd.repeat_sum(2)).unwrap(), a);
        assert_eq!(bd.repeat_sum(3).compose(&a).unwrap(), a);
        let (l, rr) = total_commutative_sides(&a, &RigMatrix::identity(&r, 2)).unwrap();
        assert_eq!(l, rr);
    }

    #[test]
    fn total_commutative_is_kronecker() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = RigMatrix::random(&Rig::ZMod(6), rng.random_range(0..4), rng.random_range(0..4), &mut rng);
            let b = RigMatrix::random(&Rig::ZMod(6), rng.random_range(0..4), rng.random_range(0..4), &mut rng);
            let (l, r) = total_commutative_sides(&a, &b).unwrap();
            assert_eq!(l, a.kron(&b).unwrap());
            assert_eq!(r, a.kron(&b).unwrap());
        }
    }

    #[test]
    fn literal_round_trip() {
        let a = nat(&[&[1, 2, 3], &[4, 5, 6]]);
        let s = serde_json::to_string(&a.to_literal()).unwrap();
        assert_eq!(s, r#"{"rig":"nat","rows":2,"cols":3,"data":[[1,2,3],[4,5,6]]}"#);
        let back = RigMatrix::from_literal(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, a);
        let bad: MatrixLiteral = serde_json::from_str(r#"{"rig":"bool-max","rows":1,"cols":1,"data":[[2]]}"#).unwrap();
        assert!(RigMatrix::from_literal(&bad).is_err());
    }

    #[test]
    fn embedding_of_partial_bijections() {
        for phi in PartialBijection::enumerate(2, 3) {
            for psi in PartialBijection::enumerate(3, 2) {
                let r = Rig::Int;
                assert_eq!(
                    psi.compose(&phi).unwrap().as_matrix(&r),
                    psi.as_matrix(&r).compose(&phi.as_matrix(&r)).unwrap()
                );
                assert_eq!(
                    phi.direct_sum(&psi).as_matrix(&r),
                    phi.as_matrix(&r).direct_sum(&psi.as_matrix(&r)).unwrap()
                );
                assert_eq!(phi.transpose().as_matrix(&r), phi.as_matrix(&r).transpose());
            }
        }
    }

    #[test]
    fn empty_object_is_initial_and_final() {
        let a = nat(&[&[1, 2]]);
        let z = RigMatrix::zero(&Rig::Nat, 2, 0);
        assert_eq!(a.compose(&z).unwrap(), RigMatrix::zero(&Rig::Nat, 1, 0));
        let e = RigMatrix::zero(&Rig::Nat, 0, 0);
        assert_eq!(a.direct_sum(&e).unwrap(), a);
    }

    fn arb_mat(max: usize) -> impl Strategy<Value = RigMatrix> {
        (0..=max, 0..=max, any::<u64>()).prop_map(|(r, c, s)| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            RigMatrix::random(&Rig::Int, r, c, &mut rng)
        })
    }

    proptest! {
        #[test]
        fn transpose_laws(a in arb_mat(4), b in arb_mat(4), seed in any::<u64>()) {
            prop_assert_eq!(a.transpose().transpose(), a.clone());
            prop_assert_eq!(a.direct_sum(&b).unwrap().transpose(), a.transpose().direct_sum(&b.transpose()).unwrap());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = RigMatrix::random(&Rig::Int, a.cols(), 3, &mut rng);
            prop_assert_eq!(a.compose(&c).unwrap().transpose(), c.transpose().compose(&a.transpose()).unwrap());
        }

        #[test]
        fn compose_associative(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d: Vec<usize> = (0..4).map(|_| rng.random_range(0..4)).collect();
            let a = RigMatrix::random(&Rig::Int, d[0], d[1], &mut rng);
            let b = RigMatrix::random(&Rig::Int, d[1], d[2], &mut rng);
            let c = RigMatrix::random(&Rig::Int, d[2], d[3], &mut rng);
            prop_assert_eq!(a.compose(&b).unwrap().compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
        }
    }
}
