//! Exact rational scalars, Bernoulli and Euler numbers, the three constant
//! sequences that pair with the Lambert series families, and integer
//! partitions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Mutex;

/// The coefficient scalar used everywhere in the crate: an arbitrary
/// precision fraction, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn rat_i(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as a rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// (-1)^n as a rational.
pub fn sign_pow(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// 2^e as a rational, with e possibly negative.
pub fn two_pow(e: i64) -> Rational {
    let p = Rational::from_integer(BigInt::one() << e.unsigned_abs() as usize);
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

static BERNOULLI_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number B_n of the generating function t/(e^t - 1).
///
/// B_1 = -1/2 in this convention, and B_n = 0 for odd n >= 3.  Computed by
/// the convolution recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0 with
/// memoization.
pub fn bernoulli(n: usize) -> Rational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    while cache.len() <= n {
        let m = cache.len();
        if m == 0 {
            cache.push(Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        for (k, b) in cache.iter().enumerate() {
            acc += Rational::from_integer(binomial(m as u64 + 1, k as u64)) * b;
        }
        let coeff = Rational::from_integer(BigInt::from(m as u64 + 1));
        cache.push(-acc / coeff);
    }
    cache[n].clone()
}

static EULER_CACHE: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// Euler number E_n of 2e^t/(e^{2t} + 1) = sech t; E_n = 0 for odd n.
///
/// Even-index values come from the secant-series recurrence
/// sum_{k=0}^{m} C(2m,2k) E_{2k} = 0 for m >= 1.
pub fn euler_number(n: usize) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let m = n / 2;
    let mut cache = EULER_CACHE.lock().unwrap();
    while cache.len() <= m {
        let j = cache.len();
        if j == 0 {
            cache.push(BigInt::one());
            continue;
        }
        let mut acc = BigInt::zero();
        for (k, e) in cache.iter().enumerate() {
            acc += binomial(2 * j as u64, 2 * k as u64) * e;
        }
        cache.push(-acc);
    }
    cache[m].clone()
}

/// c_i = (-1)^{i-1} (2^{2i} - 1)/(4i) |B_{2i}|, the constants paired with
/// the alternating odd-power Lambert series family.
pub fn c_coeff(i: usize) -> Rational {
    assert!(i >= 1);
    sign_pow(i as i64 - 1)
        * Rational::new(
            (BigInt::one() << (2 * i)) - BigInt::one(),
            BigInt::from(4 * i as u64),
        )
        * bernoulli(2 * i).abs()
}

/// a_i = (-1)^i (2^{2i+2} - 1)/(4(i+1)) |B_{2i+2}|.
pub fn a_coeff(i: usize) -> Rational {
    assert!(i >= 1);
    sign_pow(i as i64)
        * Rational::new(
            (BigInt::one() << (2 * i + 2)) - BigInt::one(),
            BigInt::from(4 * (i as u64 + 1)),
        )
        * bernoulli(2 * i + 2).abs()
}

/// b_i = (-1)^{i-1} |E_{2i-2}|/4.
pub fn b_coeff(i: usize) -> Rational {
    assert!(i >= 1);
    sign_pow(i as i64 - 1) * Rational::new(euler_number(2 * i - 2).abs(), big(4))
}

/// prod_{r=1}^{limit} r! as a rational.
pub fn prod_fact(limit: u64) -> Rational {
    let mut acc = Rational::one();
    for r in 1..=limit {
        acc *= Rational::from_integer(factorial(r));
    }
    acc
}

/// prod_{r=1}^{limit} (2r)!^2.
pub fn prod_even_fact_sq(limit: u64) -> Rational {
    let mut acc = Rational::one();
    for r in 1..=limit {
        let f = Rational::from_integer(factorial(2 * r));
        acc *= &f * &f;
    }
    acc
}

/// prod_{r=1}^{limit} (2r-1)!^2.
pub fn prod_odd_fact_sq(limit: u64) -> Rational {
    let mut acc = Rational::one();
    for r in 1..=limit {
        let f = Rational::from_integer(factorial(2 * r - 1));
        acc *= &f * &f;
    }
    acc
}

/// An integer partition: weakly decreasing nonnegative parts.  Trailing
/// zeros are permitted and ignored by equality.
#[derive(Debug, Clone, Eq)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.iter().filter(|&&p| p > 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Part at index i (0-based), zero beyond the stored length.
    pub fn part(&self, i: usize) -> u64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        let n = self.parts.len().max(other.parts.len());
        (0..n).all(|i| self.part(i) == other.part(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: expand t/(e^t - 1) as a power series by direct
    /// inversion of (e^t - 1)/t = sum t^j/(j+1)!.
    fn bernoulli_by_series(n: usize) -> Rational {
        // f = sum_{j>=0} t^j/(j+1)!, compute g with f*g = 1, read B_n = n!*g_n.
        let order = n + 1;
        let f: Vec<Rational> = (0..order)
            .map(|j| Rational::new(BigInt::one(), factorial(j as u64 + 1)))
            .collect();
        let mut g: Vec<Rational> = vec![Rational::zero(); order];
        g[0] = Rational::one();
        for j in 1..order {
            let mut acc = Rational::zero();
            for i in 0..j {
                acc += &g[i] * &f[j - i];
            }
            g[j] = -acc;
        }
        Rational::from_integer(factorial(n as u64)) * &g[n]
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), rat_i(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), bernoulli_by_series(2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(12), bernoulli_by_series(12));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        for n in (3..=15).step_by(2) {
            assert_eq!(bernoulli(n), Rational::zero());
        }
    }

    #[test]
    fn bernoulli_recurrence_holds_to_60() {
        for n in 1..=60usize {
            let mut acc = Rational::zero();
            for k in 0..=n {
                acc += Rational::from_integer(binomial(n as u64 + 1, k as u64)) * bernoulli(k);
            }
            assert!(acc.is_zero(), "recurrence fails at n = {n}");
        }
    }

    #[test]
    fn euler_small_values() {
        assert_eq!(euler_number(0), big(1));
        assert_eq!(euler_number(2), big(-1));
        assert_eq!(euler_number(4), big(5));
        assert_eq!(euler_number(6), big(-61));
        assert_eq!(euler_number(8), big(1385));
        assert_eq!(euler_number(3), big(0));
    }

    #[test]
    fn euler_recurrence_holds() {
        for m in 1..=20u64 {
            let mut acc = BigInt::zero();
            for k in 0..=m {
                acc += binomial(2 * m, 2 * k) * euler_number(2 * k as usize);
            }
            assert!(acc.is_zero(), "recurrence fails at 2m = {}", 2 * m);
        }
    }

    #[test]
    fn constant_sequences() {
        assert_eq!(c_coeff(1), rat(1, 8));
        assert_eq!(c_coeff(2), rat(-1, 16));
        assert_eq!(c_coeff(3), rat(1, 8));
        // the 2x2 determinant entry constants: 16*c_i = 2, -1, 2
        assert_eq!(rat_i(16) * c_coeff(1), rat_i(2));
        assert_eq!(rat_i(16) * c_coeff(2), rat_i(-1));
        assert_eq!(rat_i(16) * c_coeff(3), rat_i(2));

        assert_eq!(a_coeff(1), rat(-1, 16));
        assert_eq!(a_coeff(2), rat(1, 8));
        assert_eq!(a_coeff(3), rat(-17, 32));

        assert_eq!(b_coeff(1), rat(1, 4));
        assert_eq!(b_coeff(2), rat(-1, 4));
        assert_eq!(b_coeff(3), rat(5, 4));
        assert_eq!(b_coeff(4), rat(-61, 4));
    }

    #[test]
    fn constant_sequences_alternate_in_sign() {
        for i in 1..=12 {
            assert_eq!(c_coeff(i).is_positive(), i % 2 == 1, "c_{i}");
            assert_eq!(a_coeff(i).is_positive(), i % 2 == 0, "a_{i}");
            assert_eq!(b_coeff(i).is_positive(), i % 2 == 1, "b_{i}");
        }
    }

    #[test]
    fn partition_equality_ignores_trailing_zeros() {
        let a = Partition::new(vec![3, 1, 0, 0]);
        let b = Partition::new(vec![3, 1]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        assert_ne!(a, Partition::new(vec![3, 2]));
        assert!(Partition::empty().is_empty());
        assert_eq!(Partition::new(vec![0, 0]), Partition::empty());
    }
}
