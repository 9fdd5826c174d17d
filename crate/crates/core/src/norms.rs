//! Norms at a prime and at the real place, with the fullness and tameness
//! checks that characterize the unit balls.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

/// `v_p(x)` for nonzero `x`.
pub fn valuation(p: u64, x: &BigRational) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let pp = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut k = 0i64;
        while (&n % &pp).is_zero() {
            n /= &pp;
            k += 1;
        }
        k
    };
    Some(count(x.numer()) - count(x.denom()))
}

fn pow_rat(p: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base, (-e) as usize).recip()
    }
}

fn check_prime(p: u64) -> Result<()> {
    if crate::rig::is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not prime")))
    }
}

/// `|x|_p = p^{-v_p(x)}`, with `|0|_p = 0`.
pub fn abs_p(p: u64, x: &BigRational) -> BigRational {
    valuation(p, x).map_or_else(BigRational::zero, |v| pow_rat(p, -v))
}

/// `max_x |v_x|_p`; zero for the empty or zero vector.
pub fn norm_padic(p: u64, v: &[BigRational]) -> Result<BigRational> {
    check_prime(p)?;
    Ok(v.iter().map(|x| abs_p(p, x)).max().unwrap_or_else(BigRational::zero))
}

/// Euclidean norm.
pub fn norm_real(v: &[f64]) -> Result<f64> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("vector has a non-finite entry".into()));
    }
    Ok(v.iter().map(|x| x * x).sum::<f64>().sqrt())
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PadicWitness {
    /// `d = p^e` with `|d|_p⁻¹ = ‖v‖`.
    #[serde(serialize_with = "ser_rat")]
    pub d: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub scaled_norm: BigRational,
    /// No sampled `d'` with `‖d'v‖ ≤ 1` has `|d'|⁻¹ < ‖v‖`.
    pub infimum_ok: bool,
}

/// A scalar `d` with `‖d·v‖ ≤ 1` and `|d|⁻¹ = ‖v‖`.
pub fn fullness_witness_padic(p: u64, v: &[BigRational], trials: usize, seed: u64) -> Result<PadicWitness> {
    let norm = norm_padic(p, v)?;
    if norm.is_zero() {
        return Err(Error::Domain("the zero vector has no fullness witness".into()));
    }
    let e = -v.iter().filter_map(|x| valuation(p, x)).min().expect("nonzero vector");
    let d = pow_rat(p, e);
    let scaled: Vec<BigRational> = v.iter().map(|x| x * &d).collect();
    let scaled_norm = norm_padic(p, &scaled)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let infimum_ok = (0..trials).all(|_| {
        let k = rng.random_range(-8i64..=8) + e;
        let unit = loop {
            let u: i64 = rng.random_range(1..1000);
            if u % p as i64 != 0 {
                break u;
            }
        };
        let cand = pow_rat(p, k) * BigRational::from_integer(BigInt::from(unit));
        let inside =
            norm_padic(p, &v.iter().map(|x| x * &cand).collect::<Vec<_>>()).is_ok_and(|n| n <= BigRational::one());
        !inside || abs_p(p, &cand).recip() >= norm
    });
    Ok(PadicWitness { d, scaled_norm, infimum_ok })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealWitness {
    pub d: f64,
    pub scaled_norm: f64,
    pub infimum_ok: bool,
}

pub fn fullness_witness_real(v: &[f64], trials: usize, seed: u64) -> Result<RealWitness> {
    let norm = norm_real(v)?;
    if norm == 0.0 {
        return Err(Error::Domain("the zero vector has no fullness witness".into()));
    }
    let d = 1.0 / norm;
    let scaled_norm = norm_real(&v.iter().map(|x| x * d).collect::<Vec<_>>())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let infimum_ok = (0..trials).all(|_| {
        let cand = d * rng.random_range(0.01..2.0);
        let inside = norm * cand <= 1.0;
        !inside || 1.0 / cand >= norm * (1.0 - 1e-12)
    });
    Ok(RealWitness { d, scaled_norm, infimum_ok })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tameness {
    /// `‖v‖ ≤ 1`.
    pub tame: bool,
    pub norm: f64,
    /// Largest `|⟨b, v⟩|` seen over sampled unit-ball `b` (and the aligned one).
    pub sup_estimate: f64,
    /// The samples agree with the norm: never above it, and the sup reaches it.
    pub consistent: bool,
}

fn to_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::INFINITY)
}

/// Contracting `v` against the p-adic unit ball stays in the unit ball iff `‖v‖_p ≤ 1`.
pub fn tameness_padic(p: u64, v: &[BigRational], trials: usize, seed: u64) -> Result<Tameness> {
    let norm = norm_padic(p, v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sup = BigRational::zero();
    let mut ok = true;
    for t in 0..=trials {
        let b: Vec<BigRational> = if t == 0 {
            // the coordinate vector at a largest entry attains the sup
            let best = v.iter().enumerate().max_by_key(|(_, x)| abs_p(p, x)).map(|(i, _)| i);
            (0..v.len()).map(|i| if Some(i) == best { BigRational::one() } else { BigRational::zero() }).collect()
        } else {
            (0..v.len())
                .map(|_| BigRational::from_integer(BigInt::from(rng.random_range(-10_000i64..=10_000))))
                .collect()
        };
        let dot: BigRational = b.iter().zip(v).map(|(a, x)| a * x).sum();
        let a = abs_p(p, &dot);
        ok &= a <= norm;
        sup = sup.max(a);
    }
    let one = BigRational::one();
    Ok(Tameness { tame: norm <= one, norm: to_f64(&norm), sup_estimate: to_f64(&sup), consistent: ok && sup == norm })
}

/// Cauchy-Schwarz: `|⟨b, v⟩| ≤ 1` on the unit ball iff `‖v‖₂ ≤ 1`.
pub fn tameness_real(v: &[f64], trials: usize, seed: u64) -> Result<Tameness> {
    let norm = norm_real(v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = 1e-12 * norm.max(1.0);
    let mut sup = 0.0f64;
    let mut ok = true;
    for t in 0..=trials {
        let b: Vec<f64> = if t == 0 {
            v.iter().map(|x| if norm > 0.0 { x / norm } else { 0.0 }).collect()
        } else {
            let g: Vec<f64> = (0..v.len()).map(|_| rng.sample(StandardNormal)).collect();
            let r = norm_real(&g)?.max(f64::MIN_POSITIVE);
            let radius: f64 = rng.random::<f64>().powf(1.0 / v.len().max(1) as f64);
            g.iter().map(|x| x / r * radius).collect()
        };
        let dot = b.iter().zip(v).map(|(a, x)| a * x).sum::<f64>().abs();
        ok &= dot <= norm + tol;
        sup = sup.max(dot);
    }
    Ok(Tameness {
        tame: norm <= 1.0 + 1e-12,
        norm,
        sup_estimate: sup,
        consistent: ok && (sup - norm).abs() <= 1e-9 * norm.max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn padic_norms() {
        assert_eq!(norm_padic(2, &[q(1, 2), q(3, 1)]).unwrap(), q(2, 1));
        assert_eq!(norm_padic(2, &[q(0, 1), q(0, 1)]).unwrap(), q(0, 1));
        assert_eq!(norm_padic(2, &[]).unwrap(), q(0, 1));
        assert_eq!(norm_padic(5, &vec![q(1, 1); 4]).unwrap(), q(1, 1));
        assert_eq!(norm_padic(3, &[q(18, 5)]).unwrap(), q(1, 9));
        assert!(norm_padic(4, &[q(1, 1)]).is_err());
    }

    #[test]
    fn real_norms() {
        assert_eq!(norm_real(&[3.0, 4.0]).unwrap(), 5.0);
        assert!((norm_real(&[0.6, 0.8]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(norm_real(&[]).unwrap(), 0.0);
        assert!(norm_real(&[f64::NAN]).is_err());
    }

    #[test]
    fn witnesses() {
        let w = fullness_witness_padic(2, &[q(3, 2), q(1, 2)], 500, 1).unwrap();
        assert_eq!(w.d, q(2, 1));
        assert_eq!(w.scaled_norm, q(1, 1));
        assert!(w.infimum_ok);
        let w = fullness_witness_padic(3, &[q(1, 3), q(1, 1)], 100, 1).unwrap();
        assert_eq!(w.d, q(3, 1));
        let w = fullness_witness_padic(3, &[q(1, 1), q(2, 1)], 100, 1).unwrap();
        assert_eq!(w.d, q(1, 1));
        assert!(fullness_witness_padic(3, &[q(0, 1)], 10, 1).is_err());
        let w = fullness_witness_real(&[3.0, 4.0], 500, 2).unwrap();
        assert!((w.d - 0.2).abs() < 1e-15 && (w.scaled_norm - 1.0).abs() < 1e-12 && w.infimum_ok);
        assert!(fullness_witness_real(&[0.0], 10, 1).is_err());
    }

    #[test]
    fn tameness() {
        let t = tameness_real(&[0.6, 0.8], 1000, 3).unwrap();
        assert!(t.tame && t.consistent);
        let t = tameness_real(&[1.1, 0.0], 1000, 3).unwrap();
        assert!(!t.tame && t.consistent && (t.sup_estimate - 1.1).abs() < 1e-12);
        let t = tameness_padic(3, &[q(1, 3), q(1, 1)], 200, 4).unwrap();
        assert!(!t.tame && t.consistent);
        let t = tameness_padic(3, &[q(3, 1), q(1, 1)], 200, 4).unwrap();
        assert!(t.tame && t.consistent);
    }

    proptest::proptest! {
        #[test]
        fn witness_scales_into_ball(p in proptest::sample::select(vec![2u64, 3, 5, 7]), nums in proptest::collection::vec((-50i64..50, 1i64..50), 1..5)) {
            let v: Vec<BigRational> = nums.iter().map(|&(a, b)| q(a, b)).collect();
            proptest::prop_assume!(v.iter().any(|x| !x.is_zero()));
            let w = fullness_witness_padic(p, &v, 20, 0).unwrap();
            proptest::prop_assert_eq!(w.scaled_norm, q(1, 1));
            proptest::prop_assert_eq!(abs_p(p, &w.d).recip(), norm_padic(p, &v).unwrap());
        }

        #[test]
        fn real_witness_scales_onto_sphere(v in proptest::collection::vec(-100.0f64..100.0, 1..6)) {
            proptest::prop_assume!(v.iter().any(|&x| x.abs() > 1e-6));
            let w = fullness_witness_real(&v, 20, 0).unwrap();
            proptest::prop_assert!(w.scaled_norm <= 1.0 + 1e-12);
            proptest::prop_assert!((1.0 / w.d - norm_real(&v).unwrap()).abs() <= 1e-9 * norm_real(&v).unwrap());
        }
    }
}
