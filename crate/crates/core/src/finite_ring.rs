//! Finite commutative rigs given by operation tables, with a catalogue of
//! every commutative ring with unit of order at most 12 (up to isomorphism).

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::hash::Hash;

#[derive(Clone, Debug, PartialEq)]
pub struct TableRig {
    pub name: String,
    pub labels: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
    pub neg: Option<Vec<usize>>,
}

impl TableRig {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Builds tables from an explicit element list and operations.
    pub fn from_ops<T, A, M, L>(
        name: &str,
        elems: Vec<T>,
        zero: T,
        one: T,
        add: A,
        mul: M,
        label: L,
    ) -> Result<TableRig>
    where
        T: Clone + Eq + Hash,
        A: Fn(&T, &T) -> T,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let index: HashMap<T, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != elems.len() {
            return Err(Error::Domain(format!("{name}: duplicate elements")));
        }
        let find =
            |t: &T| index.get(t).copied().ok_or_else(|| Error::Domain(format!("{name}: operation leaves the carrier")));
        let n = elems.len();
        let mut at = vec![vec![0; n]; n];
        let mut mt = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                at[i][j] = find(&add(&elems[i], &elems[j]))?;
                mt[i][j] = find(&mul(&elems[i], &elems[j]))?;
            }
        }
        let z = find(&zero)?;
        let neg: Option<Vec<usize>> = (0..n).map(|i| (0..n).find(|&j| at[i][j] == z)).collect();
        let t = TableRig {
            name: name.to_string(),
            labels: elems.iter().map(label).collect(),
            add: at,
            mul: mt,
            zero: z,
            one: find(&one)?,
            neg,
        };
        t.verify()?;
        Ok(t)
    }

    /// Exhaustive check of the commutative-rig axioms.
    pub fn verify(&self) -> Result<()> {
        let n = self.size();
        let (a, m) = (&self.add, &self.mul);
        let fail = |law: &str| Err(Error::Domain(format!("{}: {law} fails", self.name)));
        for x in 0..n {
            if a[x][self.zero] != x || m[x][self.one] != x || m[x][self.zero] != self.zero {
                return fail("units");
            }
            for y in 0..n {
                if a[x][y] != a[y][x] || m[x][y] != m[y][x] {
                    return fail("commutativity");
                }
                for z in 0..n {
                    if a[a[x][y]][z] != a[x][a[y][z]] || m[m[x][y]][z] != m[x][m[y][z]] {
                        return fail("associativity");
                    }
                    if m[x][a[y][z]] != a[m[x][y]][m[x][z]] {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zmod(m: usize) -> TableRig {
        let elems: Vec<usize> = (0..m).collect();
        TableRig::from_ops(
            &format!("Z/{m}"),
            elems,
            0,
            1 % m,
            |x, y| (x + y) % m,
            |x, y| (x * y) % m,
            |x| x.to_string(),
        )
        .expect("Z/m is a ring")
    }

    pub fn product(a: &TableRig, b: &TableRig) -> TableRig {
        let mut elems = Vec::new();
        for i in 0..a.size() {
            for j in 0..b.size() {
                elems.push((i, j));
            }
        }
        TableRig::from_ops(
            &format!("{}x{}", a.name, b.name),
            elems,
            (a.zero, b.zero),
            (a.one, b.one),
            |x, y| (a.add[x.0][y.0], b.add[x.1][y.1]),
            |x, y| (a.mul[x.0][y.0], b.mul[x.1][y.1]),
            |x| format!("({},{})", a.labels[x.0], b.labels[x.1]),
        )
        .expect("products of rigs are rigs")
    }

    /// `base[x]/(f)` for a monic `f`, coefficients listed from the constant
    /// term up (the leading 1 omitted).
    pub fn poly_quotient(name: &str, base: &TableRig, f: &[usize]) -> Result<TableRig> {
        let d = f.len();
        let neg = base.neg.as_ref().ok_or_else(|| Error::Domain("polynomial quotient needs a ring".into()))?;
        let mut elems: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..d {
            elems =
                elems.into_iter().flat_map(|v| (0..base.size()).map(move |c| [v.clone(), vec![c]].concat())).collect();
        }
        let add = |x: &Vec<usize>, y: &Vec<usize>| x.iter().zip(y).map(|(a, b)| base.add[*a][*b]).collect::<Vec<_>>();
        let mul = |x: &Vec<usize>, y: &Vec<usize>| {
            let mut prod = vec![base.zero; 2 * d];
            for i in 0..d {
                for j in 0..d {
                    prod[i + j] = base.add[prod[i + j]][base.mul[x[i]][y[j]]];
                }
            }
            // x^d = -(f_0 + f_1 x + ... + f_{d-1} x^{d-1})
            for k in (d..2 * d).rev() {
                let c = prod[k];
                prod[k] = base.zero;
                for (i, fi) in f.iter().enumerate() {
                    let t = base.mul[c][neg[*fi]];
                    prod[k - d + i] = base.add[prod[k - d + i]][t];
                }
            }
            prod.truncate(d);
            prod
        };
        let mut zero = vec![base.zero; d];
        let mut one = zero.clone();
        one[0] = base.one;
        zero.truncate(d);
        TableRig::from_ops(name, elems, zero, one, add, mul, |v| {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != base.zero)
                .map(|(i, c)| match i {
                    0 => base.labels[*c].clone(),
                    1 => format!("{}x", base.labels[*c]),
                    _ => format!("{}x^{i}", base.labels[*c]),
                })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join("+")
            }
        })
    }

    /// `ℤ/m ⊕ (ℤ/2)^k` with `x·y = 0` on the second summand and ℤ/m acting by
    /// reduction mod 2 (`m` even).
    pub fn idealization(name: &str, m: usize, k: usize) -> Result<TableRig> {
        let mut elems = Vec::new();
        for a in 0..m {
            for bits in 0..(1usize << k) {
                elems.push((a, bits));
            }
        }
        TableRig::from_ops(
            name,
            elems,
            (0, 0),
            (1 % m, 0),
            |x, y| ((x.0 + y.0) % m, x.1 ^ y.1),
            |x, y| ((x.0 * y.0) % m, (if x.0 % 2 == 1 { y.1 } else { 0 }) ^ (if y.0 % 2 == 1 { x.1 } else { 0 })),
            |x| format!("{}+{:0width$b}e", x.0, x.1, width = k),
        )
    }

    /// `ℤ/4[x]/(2x, x^2 - 2)`.
    pub fn z4_ramified() -> TableRig {
        let mut elems = Vec::new();
        for a in 0..4usize {
            for b in 0..2usize {
                elems.push((a, b));
            }
        }
        TableRig::from_ops(
            "Z/4[x]/(2x,x^2-2)",
            elems,
            (0, 0),
            (1, 0),
            |x, y| ((x.0 + y.0) % 4, (x.1 + y.1) % 2),
            |x, y| ((x.0 * y.0 + 2 * x.1 * y.1) % 4, (x.0 * y.1 + x.1 * y.0) % 2),
            |x| format!("{}+{}x", x.0, x.1),
        )
        .expect("ring")
    }

    /// Every commutative ring with unit of order `≤ 12`, one per isomorphism class.
    pub fn catalogue() -> Vec<TableRig> {
        let z = TableRig::zmod;
        let f2 = z(2);
        let f3 = z(3);
        let pq = |n: &str, b: &TableRig, f: &[usize]| TableRig::poly_quotient(n, b, f).expect("ring");
        let f4 = pq("F4", &f2, &[1, 1]);
        let f2e = pq("F2[x]/(x^2)", &f2, &[0, 0]);
        let f8 = pq("F8", &f2, &[1, 1, 0]);
        let f2x3 = pq("F2[x]/(x^3)", &f2, &[0, 0, 0]);
        let f9 = pq("F9", &f3, &[1, 0]);
        let f3e = pq("F3[x]/(x^2)", &f3, &[0, 0]);
        let p = TableRig::product;
        let mut out = vec![z(1)];
        for m in 2..=12 {
            out.push(z(m));
        }
        out.extend([
            f4.clone(),
            f2e.clone(),
            p(&f2, &f2),
            f8,
            f2x3,
            TableRig::idealization("F2[x,y]/(x,y)^2", 2, 2).expect("ring"),
            TableRig::idealization("Z/4[x]/(2x,x^2)", 4, 1).expect("ring"),
            TableRig::z4_ramified(),
            p(&z(4), &f2),
            p(&f4, &f2),
            p(&f2e, &f2),
            p(&p(&f2, &f2), &f2),
            f9,
            f3e,
            p(&f3, &f3),
            p(&f4, &f3),
            p(&f2e, &f3),
            p(&p(&f2, &f2), &f3),
        ]);
        out
    }

    /// All ideals by exhaustive search over subsets: contain 0, closed under
    /// `+` and under multiplication by the ring. Sorted index lists.
    pub fn ideals_brute_force(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        assert!(n <= 20, "subset search is exponential");
        let mut out = Vec::new();
        for mask in 0u32..1 << n {
            let has = |x: usize| mask >> x & 1 == 1;
            if !has(self.zero) {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&x| has(x)).collect();
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| has(self.add[a][b])) && (0..n).all(|r| has(self.mul[r][a])));
            if closed {
                out.push(members);
            }
        }
        out
    }

    /// Proper ideals `P` with `ab ∈ P ⇒ a ∈ P or b ∈ P`.
    pub fn primes_brute_force(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        self.ideals_brute_force()
            .into_iter()
            .filter(|p| {
                !p.contains(&self.one)
                    && (0..n).all(|a| (0..n).all(|b| !p.contains(&self.mul[a][b]) || p.contains(&a) || p.contains(&b)))
            })
            .collect()
    }

    /// Index of `a - b` in a ring.
    pub fn sub(&self, a: usize, b: usize) -> Option<usize> {
        self.neg.as_ref().map(|n| self.add[a][n[b]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_is_rings() {
        let cat = TableRig::catalogue();
        assert_eq!(cat.len(), 30);
        for r in &cat {
            assert!(r.neg.is_some(), "{}", r.name);
            r.verify().unwrap();
        }
    }

    #[test]
    fn brute_force_spectra() {
        assert_eq!(TableRig::zmod(6).ideals_brute_force(), vec![vec![0], vec![0, 3], vec![0, 2, 4], (0..6).collect()]);
        assert_eq!(TableRig::zmod(6).primes_brute_force(), vec![vec![0, 3], vec![0, 2, 4]]);
        assert_eq!(TableRig::zmod(7).primes_brute_force(), vec![vec![0]]);
        assert!(TableRig::zmod(1).primes_brute_force().is_empty());
    }

    #[test]
    fn f4_has_inverses() {
        let f4 = TableRig::poly_quotient("F4", &TableRig::zmod(2), &[1, 1]).unwrap();
        for x in 0..4 {
            if x != f4.zero {
                assert!((0..4).any(|y| f4.mul[x][y] == f4.one));
            }
        }
    }

    #[test]
    fn distinct_rings_of_order_four() {
        // nilpotents, idempotents and characteristic separate the order-4 rings
        let nil = |r: &TableRig| (0..r.size()).filter(|&x| x != r.zero && r.mul[x][x] == r.zero).count();
        let cat = TableRig::catalogue();
        let four: Vec<_> = cat.iter().filter(|r| r.size() == 4).collect();
        let mut sig: Vec<(usize, usize, bool)> = four
            .iter()
            .map(|r| (nil(r), (0..4).filter(|&x| r.mul[x][x] == x).count(), r.add[r.one][r.one] == r.zero))
            .collect();
        sig.sort();
        sig.dedup();
        assert_eq!(sig.len(), 4);
    }
}
