//! Independent brute-force ground truth: representation counts by dynamic
//! programming, divisor sums by full trial division, and tau from the
//! 24th power of the pentagonal-number series.  Nothing here touches the
//! series types used by the identity machinery, so a bug there cannot mask
//! itself.

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    Squares,
    Triangles,
    DoubleTriangles,
}

/// Representation counts r(0..=n_max) for sums of `s` squares, triangular
/// numbers, or doubled triangular numbers.
#[derive(Debug, Clone)]
pub struct CountTable {
    pub kind: CountKind,
    pub s: u32,
    pub counts: Vec<BigInt>,
}

/// Base generating row (one summand), then s-fold convolution with the
/// sparse base.
pub fn count_representations(kind: CountKind, s: u32, n_max: usize) -> CountTable {
    assert!(s >= 1);
    let mut base = vec![BigInt::zero(); n_max + 1];
    match kind {
        CountKind::Squares => {
            base[0] = BigInt::one();
            let mut j = 1usize;
            while j * j <= n_max {
                base[j * j] = BigInt::from(2); // +-j
                j += 1;
            }
        }
        CountKind::Triangles => {
            let mut j = 0usize;
            while j * (j + 1) / 2 <= n_max {
                base[j * (j + 1) / 2] += BigInt::one();
                j += 1;
            }
        }
        CountKind::DoubleTriangles => {
            let mut j = 0usize;
            while j * (j + 1) <= n_max {
                base[j * (j + 1)] += BigInt::one();
                j += 1;
            }
        }
    }
    let support: Vec<(usize, BigInt)> = base
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    let mut counts = vec![BigInt::zero(); n_max + 1];
    counts[0] = BigInt::one();
    for _ in 0..s {
        let mut next = vec![BigInt::zero(); n_max + 1];
        for (e, c) in &support {
            for i in 0..=(n_max - e) {
                if !counts[i].is_zero() {
                    let add = &counts[i] * c;
                    next[i + e] += add;
                }
            }
        }
        counts = next;
    }
    CountTable { kind, s, counts }
}

/// tau(1..=n_max) as the coefficients of q * P(q)^24 where P is the
/// pentagonal-number series, computed on plain integer arrays.
pub fn tau_oracle(n_max: usize) -> Vec<BigInt> {
    let len = n_max; // coefficients of q^0..q^{n_max-1} of P^24
    let mut pent = vec![BigInt::zero(); len];
    let mut j: i64 = 0;
    loop {
        let mut hit = false;
        for jj in [j, -j] {
            let e = jj * (3 * jj - 1) / 2;
            if e >= 0 && (e as usize) < len {
                pent[e as usize] += if jj.rem_euclid(2) == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                hit = true;
            }
            if jj == 0 {
                break;
            }
        }
        if !hit && j > 0 {
            break;
        }
        j += 1;
    }
    let support: Vec<(usize, BigInt)> = pent
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    let mut acc = vec![BigInt::zero(); len];
    acc[0] = BigInt::one();
    for _ in 0..24 {
        let mut next = vec![BigInt::zero(); len];
        for (e, c) in &support {
            for i in 0..len - e {
                if !acc[i].is_zero() {
                    next[i + e] += &acc[i] * c;
                }
            }
        }
        acc = next;
    }
    // tau(n) = coefficient of q^{n-1} in P^24
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorOracleKind {
    Sigma,
    SigmaDagger,
    SigmaTilde,
}

/// Divisor sums by scanning every d in 1..=n (deliberately the slow,
/// obviously-correct route).
pub fn divisor_oracle(kind: DivisorOracleKind, r: u32, n: u64) -> BigInt {
    assert!(n >= 1);
    let mut acc = BigInt::zero();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let term = BigInt::from(d).pow(r);
        acc += match kind {
            DivisorOracleKind::Sigma => term,
            DivisorOracleKind::SigmaDagger => {
                if d % 2 == 0 {
                    term
                } else {
                    -term
                }
            }
            DivisorOracleKind::SigmaTilde => {
                if (d + n / d).is_multiple_of(2) {
                    term
                } else {
                    -term
                }
            }
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambert::{self, DivisorKind};
    use crate::qx::QX;

    /// Exhaustive enumeration cross-check for tiny cases.
    fn count_squares_naive(s: u32, n: usize) -> BigInt {
        fn rec(s: u32, n: i64) -> i64 {
            if s == 0 {
                return (n == 0) as i64;
            }
            let mut total = 0;
            let mut j = 0i64;
            while j * j <= n {
                let rest = n - j * j;
                let ways = rec(s - 1, rest);
                total += if j == 0 { ways } else { 2 * ways };
                j += 1;
            }
            total
        }
        BigInt::from(rec(s, n as i64))
    }

    #[test]
    fn squares_spot_values() {
        let t = count_representations(CountKind::Squares, 4, 10);
        assert_eq!(t.counts[0], BigInt::one());
        assert_eq!(t.counts[1], BigInt::from(8));
        let t8 = count_representations(CountKind::Squares, 8, 10);
        assert_eq!(t8.counts[1], BigInt::from(16));
        assert_eq!(t8.counts[2], BigInt::from(112));
        for n in 0..=8 {
            assert_eq!(t.counts[n], count_squares_naive(4, n), "r_4({n})");
        }
    }

    #[test]
    fn triangles_spot_values() {
        let t = count_representations(CountKind::Triangles, 4, 12);
        assert_eq!(t.counts[0], BigInt::one());
        assert_eq!(t.counts[1], BigInt::from(4));
        let t8 = count_representations(CountKind::Triangles, 8, 4);
        assert_eq!(t8.counts[0], BigInt::one());
        // t_4(n) = sigma(2n+1) (classical); spot-check a few
        for n in 1..=10u64 {
            let want = divisor_oracle(DivisorOracleKind::Sigma, 1, 2 * n + 1);
            let t4 = count_representations(CountKind::Triangles, 4, n as usize);
            assert_eq!(t4.counts[n as usize], want, "t_4({n})");
        }
    }

    #[test]
    fn counts_match_theta_powers() {
        // ties the two independent code paths together
        let n_max = 500usize;
        let order = 4 * (n_max + 1);
        let t3 = lambert::theta3(order);
        let mut power = QX::one(order);
        for s in 1..=24u32 {
            power = power.mul(&t3);
            if ![1, 2, 4, 8, 16, 24].contains(&s) {
                continue;
            }
            let table = count_representations(CountKind::Squares, s, n_max);
            for n in 0..=n_max {
                assert_eq!(
                    power.coeff_q(n),
                    &crate::rat::Rational::from_integer(table.counts[n].clone()),
                    "r_{s}({n})"
                );
            }
        }
    }

    #[test]
    fn double_triangles_match_dilated_series() {
        let n_max = 60;
        let order = 4 * (n_max + 1);
        let tri2 = lambert::theta(
            crate::lambert::ThetaKind::Triangle,
            crate::lambert::QTransform::QSquared,
            order,
        )
        .unwrap();
        for s in [1u32, 2, 6] {
            let table = count_representations(CountKind::DoubleTriangles, s, n_max);
            let series = tri2.pow(s);
            for n in 0..=n_max {
                assert_eq!(
                    series.coeff_q(n),
                    &crate::rat::Rational::from_integer(table.counts[n].clone()),
                    "double-triangle s={s} n={n}"
                );
            }
        }
    }

    #[test]
    fn parity_of_counts() {
        for s in [1u32, 3, 5, 16] {
            let t = count_representations(CountKind::Squares, s, 60);
            for n in 1..=60 {
                assert!((&t.counts[n] % 2u32).is_zero(), "r_{s}({n}) even");
            }
        }
    }

    #[test]
    fn tau_oracle_matches_golden_values() {
        let taus = tau_oracle(8);
        let golden: [i64; 7] = [1, -24, 252, -1472, 4830, -6048, -16744];
        for (i, &t) in golden.iter().enumerate() {
            assert_eq!(taus[i], BigInt::from(t), "tau({})", i + 1);
        }
    }

    #[test]
    fn tau_oracle_matches_eta_route() {
        // per-call route for small n ...
        let taus = tau_oracle(500);
        for n in 1..=60u64 {
            assert_eq!(
                taus[n as usize - 1],
                lambert::tau(n, lambert::TauMethod::Eta).unwrap(),
                "tau({n})"
            );
        }
        // ... and the full series against the integer-array route to 500
        let series = crate::qx::euler_product(&[(1, 24)], 4 * 500);
        for n in 1..=500usize {
            assert_eq!(
                crate::rat::Rational::from_integer(taus[n - 1].clone()),
                *series.coeff_q(n - 1),
                "tau({n}) series"
            );
        }
    }

    #[test]
    fn divisor_oracle_examples() {
        assert_eq!(
            divisor_oracle(DivisorOracleKind::Sigma, 11, 2),
            BigInt::from(2049)
        );
        assert_eq!(
            divisor_oracle(DivisorOracleKind::SigmaDagger, 3, 2),
            BigInt::from(7)
        );
        assert_eq!(
            divisor_oracle(DivisorOracleKind::SigmaTilde, 5, 4),
            BigInt::from(-993)
        );
    }

    #[test]
    fn divisor_oracle_certifies_fast_path() {
        for n in 1..=200u64 {
            for r in [1u32, 3, 5, 7, 11] {
                assert_eq!(
                    divisor_oracle(DivisorOracleKind::Sigma, r, n),
                    lambert::divisor_sum(DivisorKind::Sigma, r, n)
                );
                assert_eq!(
                    divisor_oracle(DivisorOracleKind::SigmaDagger, r, n),
                    lambert::divisor_sum(DivisorKind::SigmaDagger, r, n)
                );
                assert_eq!(
                    divisor_oracle(DivisorOracleKind::SigmaTilde, r, n),
                    lambert::divisor_sum(DivisorKind::SigmaTilde, r, n)
                );
            }
        }
    }
}
