//! Local factors `L_[n](s) = E|a₁+…+aₙ|^{s−1}` over the unit sphere at a
//! prime and at the real place, and their limits as `n → ∞`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Mc,
    Closed,
    Quad,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "exact" => Ok(Mode::Exact),
            "mc" => Ok(Mode::Mc),
            "closed" => Ok(Mode::Closed),
            "quad" | "quadrature" => Ok(Mode::Quad),
            _ => Err(Error::Domain(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalFactor {
    /// `"p=2"` or `"real"`.
    pub place: String,
    pub s: f64,
    pub n: u64,
    pub mode: Mode,
    pub value: f64,
    pub limit: f64,
    pub abs_err_vs_limit: f64,
    /// Exact rational value when available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_exact: Option<String>,
    /// Standard error of a Monte Carlo estimate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_err: Option<f64>,
}

impl LocalFactor {
    fn new(place: String, s: f64, n: u64, mode: Mode, value: f64, limit: f64) -> LocalFactor {
        LocalFactor {
            place,
            s,
            n,
            mode,
            value,
            limit,
            abs_err_vs_limit: (value - limit).abs(),
            exact: None,
            limit_exact: None,
            std_err: None,
        }
    }
}

/// Samples per parallel work unit; fixing it keeps results independent of the thread count.
const CHUNK: usize = 4096;

/// Mean and standard error of `f` over `samples` draws, split into seeded chunks.
fn monte_carlo(samples: usize, seed: u64, f: impl Fn(&mut ChaCha8Rng) -> f64 + Sync) -> (f64, f64) {
    let chunks = samples.div_ceil(CHUNK);
    let sums: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let m = CHUNK.min(samples - c * CHUNK);
            (0..m).fold((0.0, 0.0), |(s1, s2), _| {
                let x = f(&mut rng);
                (s1 + x, s2 + x * x)
            })
        })
        .collect();
    let (s1, s2) = sums.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = s1 / n;
    let var = (s2 / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

fn rat(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// `(1 − p⁻¹) / (1 − p^{−s})`.
pub fn padic_limit(p: u64, s: f64) -> f64 {
    let pf = p as f64;
    (1.0 - 1.0 / pf) / (1.0 - pf.powf(-s))
}

/// Probability that the coordinate sum is divisible by `p` on the sphere:
/// `(p^{n−1} − 1)/(p^n − 1)`.
fn alpha(p: u64, n: u64) -> BigRational {
    let pb = BigInt::from(p);
    let num = num_traits::pow(pb.clone(), (n - 1) as usize) - 1;
    let den = num_traits::pow(pb, n as usize) - 1;
    rat(num, den)
}

/// Exact `L = (1 − α) + α·p^{1−s}(1 − p⁻¹)/(1 − p^{−s})`: off the event
/// `p | Σaᵢ` the integrand is 1, and on it `Σaᵢ/p` is Haar-uniform on `ℤ_p`.
fn padic_exact(p: u64, s: i64, n: u64) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let pr = BigRational::from_integer(BigInt::from(p));
    let ps = num_traits::pow(pr.clone(), s as usize);
    let uniform = (&one - pr.recip()) / (&one - ps.recip());
    let a = alpha(p, n);
    let value = (&one - &a) + &a * num_traits::pow(pr.recip(), (s - 1) as usize) * &uniform;
    (value, uniform)
}

fn padic_exact_real_s(p: u64, s: f64, n: u64) -> f64 {
    let a = alpha(p, n).to_f64().unwrap_or(1.0 / p as f64);
    let pf = p as f64;
    (1.0 - a) + a * pf.powf(1.0 - s) * padic_limit(p, s)
}

/// Digits kept per coordinate in Monte Carlo mode: `p^D ≤ 2^100`, so the
/// truncated tail weighs at most `p^{−D(s−1)}`.
fn mc_digits(p: u64) -> u32 {
    (100.0 / (p as f64).log2()).floor() as u32
}

pub fn zeta_padic(p: u64, s: f64, n: u64, mode: Mode, samples: usize, seed: u64) -> Result<LocalFactor> {
    if !crate::rig::is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if !s.is_finite() || s <= 1.0 {
        return Err(Error::Domain(format!("s = {s} must exceed 1 (the integral diverges otherwise)")));
    }
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let place = format!("p={p}");
    let limit = padic_limit(p, s);
    match mode {
        Mode::Exact => {
            let mut f;
            if s.fract() == 0.0 && s <= 64.0 {
                let (value, lim) = padic_exact(p, s as i64, n);
                f = LocalFactor::new(place, s, n, mode, value.to_f64().unwrap_or(f64::NAN), limit);
                f.exact = Some(value.to_string());
                f.limit_exact = Some(lim.to_string());
            } else {
                f = LocalFactor::new(place, s, n, mode, padic_exact_real_s(p, s, n), limit);
            }
            Ok(f)
        }
        Mode::Mc => {
            if samples < 2 {
                return Err(Error::Domain("Monte Carlo needs at least 2 samples".into()));
            }
            let digits = mc_digits(p);
            let modulus = (p as u128).pow(digits);
            let (mean, se) = monte_carlo(samples, seed, |rng| {
                let sum = loop {
                    let mut sum = 0u128;
                    let mut unit = false;
                    for _ in 0..n {
                        let a = rng.random_range(0..modulus);
                        unit |= a % p as u128 != 0;
                        sum = (sum + a) % modulus;
                    }
                    if unit {
                        break sum;
                    }
                };
                let mut v = 0u32;
                let mut x = sum;
                while v < digits && x % p as u128 == 0 {
                    x /= p as u128;
                    v += 1;
                }
                (p as f64).powf(-(v as f64) * (s - 1.0))
            });
            let mut f = LocalFactor::new(place, s, n, mode, mean, limit);
            f.std_err = Some(se);
            Ok(f)
        }
        _ => Err(Error::Domain("p-adic factors support modes exact and mc".into())),
    }
}

/// `2^{(s−1)/2} Γ(s/2) / Γ(1/2)`, the Gaussian moment `E|N(0,1)|^{s−1}`.
pub fn real_limit(s: f64) -> f64 {
    ((s - 1.0) / 2.0 * std::f64::consts::LN_2 + ln_gamma(s / 2.0) - ln_gamma(0.5)).exp()
}

fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// `n^{(s−1)/2} B(s/2, (n−1)/2) / B(1/2, (n−1)/2)` from the marginal of `Σaᵢ/√n`.
fn real_closed(s: f64, n: u64) -> f64 {
    if n == 1 {
        return 1.0;
    }
    let m = (n as f64 - 1.0) / 2.0;
    ((s - 1.0) / 2.0 * (n as f64).ln() + ln_beta(s / 2.0, m) - ln_beta(0.5, m)).exp()
}

/// Tanh-sinh quadrature on `[0, 1]`; `f` receives `x` and `1 − x` so that
/// endpoint singularities can be evaluated without cancellation.
pub fn tanh_sinh(f: impl Fn(f64, f64) -> f64, tol: f64) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let node = |t: f64| -> Option<(f64, f64, f64)> {
        let u = 2.0 * half_pi * t.sinh();
        let x = 1.0 / (1.0 + (-u).exp());
        let y = 1.0 / (1.0 + u.exp());
        let w = 2.0 * half_pi * t.cosh() * x * y;
        (x > 0.0 && y > 0.0 && w > 0.0).then_some((x, y, w))
    };
    let tmax = 6.5;
    let eval = |t: f64| node(t).map_or(0.0, |(x, y, w)| w * f(x, y));
    // nodes at t = (start + k·step), mirrored
    let sweep = |start: f64, step: f64| -> f64 {
        let mut total = 0.0;
        let mut t = start;
        while t <= tmax {
            total += if t == 0.0 { eval(0.0) } else { eval(t) + eval(-t) };
            t += step;
        }
        total
    };
    let mut h = 1.0;
    let mut sum = sweep(0.0, h);
    let mut est = sum * h;
    for _ in 0..12 {
        sum += sweep(h / 2.0, h);
        h /= 2.0;
        let next = sum * h;
        if (next - est).abs() <= tol * next.abs() {
            return next;
        }
        est = next;
    }
    est
}

fn real_quadrature(s: f64, n: u64) -> f64 {
    if n == 1 {
        return 1.0;
    }
    // with u = t², E|√n t|^{s−1} = n^{(s−1)/2} ∫u^{s/2−1}(1−u)^{(n−3)/2} / ∫u^{−1/2}(1−u)^{(n−3)/2}
    let b = (n as f64 - 3.0) / 2.0;
    let a = s / 2.0 - 1.0;
    let peak = |a: f64| {
        let u = if a + b > 0.0 { (a / (a + b)).clamp(1e-300, 1.0 - 1e-16) } else { 0.5 };
        a * u.ln() + b * (1.0 - u).ln()
    };
    let integral = |a: f64| {
        let shift = if a > 0.0 && b > 0.0 { peak(a) } else { 0.0 };
        let v = tanh_sinh(|x, y| (a * x.ln() + b * y.ln() - shift).exp(), 1e-13);
        (v, shift)
    };
    let (num, sn) = integral(a);
    let (den, sd) = integral(-0.5);
    ((s - 1.0) / 2.0 * (n as f64).ln() + num.ln() + sn - den.ln() - sd).exp()
}

pub fn zeta_real(s: f64, n: u64, mode: Mode, samples: usize, seed: u64) -> Result<LocalFactor> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if !s.is_finite() || (n == 1 && s <= 1.0) || s <= 0.0 {
        return Err(Error::Domain(format!("s = {s} is outside the convergent range for n = {n}")));
    }
    let limit = real_limit(s);
    let place = "real".to_string();
    match mode {
        Mode::Closed => Ok(LocalFactor::new(place, s, n, mode, real_closed(s, n), limit)),
        Mode::Quad => Ok(LocalFactor::new(place, s, n, mode, real_quadrature(s, n), limit)),
        Mode::Mc => {
            if samples < 2 {
                return Err(Error::Domain("Monte Carlo needs at least 2 samples".into()));
            }
            let (mean, se) = monte_carlo(samples, seed, |rng| {
                let (mut sum, mut sq) = (0.0f64, 0.0f64);
                for _ in 0..n {
                    let g: f64 = rng.sample(StandardNormal);
                    sum += g;
                    sq += g * g;
                }
                (sum.abs() / sq.sqrt()).powf(s - 1.0)
            });
            let mut f = LocalFactor::new(place, s, n, mode, mean, limit);
            f.std_err = Some(se);
            Ok(f)
        }
        Mode::Exact => Err(Error::Domain("the real place supports modes closed, quad and mc".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_dimension_is_one() {
        for p in [2, 3, 5] {
            for s in [2.0, 3.0, 2.5] {
                assert_eq!(zeta_padic(p, s, 1, Mode::Exact, 0, 0).unwrap().value, 1.0);
                assert_eq!(zeta_padic(p, s, 1, Mode::Mc, 1000, 1).unwrap().value, 1.0);
            }
        }
        for mode in [Mode::Closed, Mode::Quad, Mode::Mc] {
            assert_eq!(zeta_real(2.0, 1, mode, 100, 0).unwrap().value, 1.0);
        }
    }

    #[test]
    fn padic_examples() {
        let f = zeta_padic(2, 2.0, 12, Mode::Exact, 0, 0).unwrap();
        assert_eq!(f.limit_exact.as_deref(), Some("2/3"));
        assert!((f.limit - 2.0 / 3.0).abs() < 1e-15);
        assert!(f.abs_err_vs_limit < 1e-2);
        // α₂ = 1/3: value = 2/3 + (1/3)(1/2)(2/3)
        assert_eq!(zeta_padic(2, 2.0, 2, Mode::Exact, 0, 0).unwrap().exact.as_deref(), Some("7/9"));
        assert!(zeta_padic(4, 2.0, 3, Mode::Exact, 0, 0).is_err());
        assert!(zeta_padic(2, 1.0, 3, Mode::Exact, 0, 0).is_err());
        assert!(zeta_padic(2, 2.0, 3, Mode::Closed, 0, 0).is_err());
        let r = padic_exact_real_s(3, 3.0, 5);
        assert!((r - zeta_padic(3, 3.0, 5, Mode::Exact, 0, 0).unwrap().value).abs() < 1e-14);
    }

    /// Exhaustive average over residues mod `p^k`, conditioned on a unit coordinate.
    fn padic_brute(p: u64, s: f64, n: u32, k: u32) -> f64 {
        let m = p.pow(k);
        let total = m.pow(n);
        let (mut acc, mut count) = (0.0, 0u64);
        for idx in 0..total {
            let mut x = idx;
            let (mut sum, mut unit) = (0u64, false);
            for _ in 0..n {
                let a = x % m;
                x /= m;
                unit |= !a.is_multiple_of(p);
                sum += a;
            }
            if !unit {
                continue;
            }
            let mut v = 0;
            let mut y = sum % m;
            while v < k && y.is_multiple_of(p) {
                y /= p;
                v += 1;
            }
            // a sum divisible by p^k continues Haar-uniformly below the truncation
            let w = if v == k {
                (p as f64).powf(-(k as f64) * (s - 1.0)) * padic_limit(p, s)
            } else {
                (p as f64).powf(-(v as f64) * (s - 1.0))
            };
            acc += w;
            count += 1;
        }
        acc / count as f64
    }

    #[test]
    fn exact_matches_exhaustive_residues() {
        for (p, n, k) in [(2, 2, 6), (2, 3, 4), (3, 2, 4), (5, 2, 2), (3, 3, 2)] {
            for s in [2.0, 3.0] {
                let e = zeta_padic(p, s, n as u64, Mode::Exact, 0, 0).unwrap().value;
                let b = padic_brute(p, s, n, k);
                assert!((e - b).abs() < 1e-12, "p={p} n={n} s={s}: {e} vs {b}");
            }
        }
    }

    #[test]
    fn exact_matches_monte_carlo() {
        for p in [2, 3, 5] {
            for s in [2.0, 3.0, 4.0] {
                for n in [2, 5, 12] {
                    let e = zeta_padic(p, s, n, Mode::Exact, 0, 0).unwrap().value;
                    let m = zeta_padic(p, s, n, Mode::Mc, 20_000, 11).unwrap();
                    let se = m.std_err.unwrap().max(1e-12);
                    assert!((e - m.value).abs() <= 4.0 * se, "p={p} s={s} n={n}: {e} vs {} ± {se}", m.value);
                }
            }
        }
    }

    #[test]
    fn exact_converges_monotonically() {
        for p in [2, 3, 5] {
            for s in [2.0, 3.0, 4.0] {
                let errs: Vec<f64> =
                    (1..=12).map(|n| zeta_padic(p, s, n, Mode::Exact, 0, 0).unwrap().abs_err_vs_limit).collect();
                assert!(errs.windows(2).all(|w| w[1] < w[0]), "p={p} s={s}: {errs:?}");
            }
        }
    }

    #[test]
    fn real_examples() {
        for n in [2, 3, 10, 100, 1000] {
            let f = zeta_real(3.0, n, Mode::Closed, 0, 0).unwrap();
            assert!((f.value - 1.0).abs() < 1e-12, "n={n}: {}", f.value);
            assert!((zeta_real(3.0, n, Mode::Quad, 0, 0).unwrap().value - 1.0).abs() < 1e-9);
        }
        let f = zeta_real(2.0, 10_000, Mode::Closed, 0, 0).unwrap();
        assert!((f.limit - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-14);
        assert!(f.abs_err_vs_limit < 1e-3);
        assert!(zeta_real(1.0, 1, Mode::Closed, 0, 0).is_err());
        assert!(zeta_real(0.0, 3, Mode::Closed, 0, 0).is_err());
        assert!(zeta_real(0.5, 3, Mode::Closed, 0, 0).is_ok());
        assert!(zeta_real(2.0, 3, Mode::Exact, 0, 0).is_err());
    }

    #[test]
    fn closed_matches_quadrature() {
        for s in [1.5, 2.0, 3.0, 4.0] {
            for n in [2, 3, 4, 7, 10, 50, 333, 1000] {
                let c = zeta_real(s, n, Mode::Closed, 0, 0).unwrap().value;
                let q = zeta_real(s, n, Mode::Quad, 0, 0).unwrap().value;
                assert!(((c - q) / c).abs() < 1e-9, "s={s} n={n}: {c} vs {q}");
            }
        }
    }

    #[test]
    fn closed_matches_monte_carlo() {
        for (s, n) in [(1.5, 2), (2.0, 5), (4.0, 30)] {
            let c = zeta_real(s, n, Mode::Closed, 0, 0).unwrap().value;
            let m = zeta_real(s, n, Mode::Mc, 40_000, 5).unwrap();
            assert!((c - m.value).abs() <= 4.0 * m.std_err.unwrap(), "s={s} n={n}");
        }
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let a = zeta_padic(3, 2.0, 4, Mode::Mc, 10_000, 9).unwrap();
        let b = zeta_padic(3, 2.0, 4, Mode::Mc, 10_000, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tanh_sinh_integrates() {
        let v = tanh_sinh(|x, _| x * x, 1e-14);
        assert!((v - 1.0 / 3.0).abs() < 1e-13);
        // ∫ (x(1−x))^{-1/2} = π
        let v = tanh_sinh(|x, y| 1.0 / (x * y).sqrt(), 1e-13);
        assert!((v - std::f64::consts::PI).abs() < 1e-10, "{v}");
    }
}
