use crate::error::{Error, Result};

/// A finite commutative monoid with an involution, given by its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
    inv: Vec<usize>,
}

impl Monoid {
    pub fn new(
        name: &str,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        unit: usize,
        inv: Vec<usize>,
    ) -> Result<Monoid> {
        let n = labels.len();
        let bad = |what: &str| Err(Error::Monoid(format!("{name}: {what}")));
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad("table shape");
        }
        if unit >= n || inv.len() != n || inv.iter().any(|&v| v >= n) {
            return bad("unit or involution out of range");
        }
        for a in 0..n {
            if table[a][unit] != a {
                return bad("unit law");
            }
            if inv[inv[a]] != a {
                return bad("involution is not involutive");
            }
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return bad("not commutative");
                }
                if inv[table[a][b]] != table[inv[a]][inv[b]] {
                    return bad("involution is not multiplicative");
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(Monoid { name: name.to_string(), labels, table, unit, inv })
    }

    pub fn trivial() -> Monoid {
        Monoid::new("1", vec!["1".into()], vec![vec![0]], 0, vec![0]).expect("trivial monoid")
    }

    /// `{+1, -1}` with the identity involution.
    pub fn signs() -> Monoid {
        Monoid::new("pm1", vec!["+1".into(), "-1".into()], vec![vec![0, 1], vec![1, 0]], 0, vec![0, 1]).expect("signs")
    }

    /// The cyclic group `C_n = {1, g, .., g^(n-1)}` with `g^t = g^-1`.
    pub fn cyclic(n: usize) -> Result<Monoid> {
        if n == 0 {
            return Err(Error::Monoid("C0 is empty".into()));
        }
        let labels = (0..n).map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        });
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        Monoid::new(&format!("C{n}"), labels.collect(), table, 0, inv)
    }

    pub fn parse(s: &str) -> Result<Monoid> {
        match s {
            "1" | "" => Ok(Monoid::trivial()),
            "pm1" | "+-1" | "±1" => Ok(Monoid::signs()),
            _ => match s.strip_prefix('C').and_then(|n| n.parse().ok()) {
                Some(n) => Monoid::cyclic(n),
                None => Err(Error::Monoid(format!("unknown monoid `{s}`"))),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_verify() {
        assert_eq!(Monoid::trivial().size(), 1);
        assert_eq!(Monoid::signs().mul(1, 1), 0);
        let c3 = Monoid::cyclic(3).unwrap();
        assert_eq!(c3.inv(1), 2);
        assert_eq!(Monoid::parse("C2").unwrap().inv(1), 1);
        assert!(Monoid::parse("D4").is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        // left projection is associative but not commutative and has no unit
        let t = vec![vec![0, 0], vec![1, 1]];
        assert!(Monoid::new("proj", vec!["a".into(), "b".into()], t, 0, vec![0, 1]).is_err());
        let swap_inv = Monoid::new("bad", vec!["1".into(), "z".into()], vec![vec![0, 1], vec![1, 1]], 0, vec![1, 0]);
        assert!(swap_inv.is_err());
    }
}
