//! Truncated formal power series in x = q^{1/4} over the rationals.
//!
//! Every series in the crate lives on this quarter-exponent grid: the term
//! at index e is coeff * q^{e/4}.  A series of order N knows its
//! coefficients for 0 <= e < N and nothing beyond; arithmetic propagates
//! the minimum order and never reports a coefficient at or past the bound.

use crate::error::Error;
use crate::rat::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct QX {
    coeffs: Vec<Rational>,
}

impl QX {
    /// The zero series of the given truncation order.
    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "order must be positive");
        QX {
            coeffs: vec![Rational::zero(); order],
        }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut s = QX::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// A constant series.
    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = QX::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// c * x^e.
    pub fn monomial(c: Rational, e: usize, order: usize) -> Self {
        let mut s = QX::zero(order);
        if e < order {
            s.coeffs[e] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        QX { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient at quarter-exponent e.  Panics past the truncation bound:
    /// such a coefficient is unknown, not zero.
    pub fn coeff(&self, e: usize) -> &Rational {
        assert!(
            e < self.order(),
            "coefficient at e = {e} is beyond truncation order {}",
            self.order()
        );
        &self.coeffs[e]
    }

    /// Coefficient at integer q-exponent n (= quarter-exponent 4n).
    pub fn coeff_q(&self, n: usize) -> &Rational {
        self.coeff(4 * n)
    }

    pub fn set_coeff(&mut self, e: usize, v: Rational) {
        assert!(e < self.order());
        self.coeffs[e] = v;
    }

    pub fn add_to_coeff(&mut self, e: usize, v: &Rational) {
        assert!(e < self.order());
        self.coeffs[e] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Restrict to a smaller truncation order.
    pub fn truncated(&self, order: usize) -> QX {
        assert!(order > 0 && order <= self.order());
        QX {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    pub fn neg(&self) -> QX {
        QX {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &QX) -> QX {
        let n = self.order().min(other.order());
        QX {
            coeffs: (0..n).map(|e| &self.coeffs[e] + &other.coeffs[e]).collect(),
        }
    }

    pub fn sub(&self, other: &QX) -> QX {
        let n = self.order().min(other.order());
        QX {
            coeffs: (0..n).map(|e| &self.coeffs[e] - &other.coeffs[e]).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QX {
        QX {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact Cauchy convolution below the common truncation bound.  The
    /// outer loop runs over the operand with fewer nonzero terms, so
    /// multiplying by a sparse series (a theta function, say) stays cheap.
    pub fn mul(&self, other: &QX) -> QX {
        let n = self.order().min(other.order());
        let nz_self = self.coeffs[..n].iter().filter(|c| !c.is_zero()).count();
        let nz_other = other.coeffs[..n].iter().filter(|c| !c.is_zero()).count();
        let (outer, inner) = if nz_self <= nz_other {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![Rational::zero(); n];
        for (e1, c1) in outer.coeffs[..n].iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            for (e2, c2) in inner.coeffs[..n - e1].iter().enumerate() {
                if c2.is_zero() {
                    continue;
                }
                out[e1 + e2] += c1 * c2;
            }
        }
        QX { coeffs: out }
    }

    /// Repeated-squaring power with truncation maintained.
    pub fn pow(&self, e: u32) -> QX {
        let mut result = QX::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<QX, Error> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NonUnit);
        }
        let n = self.order();
        let c0_inv = self.coeffs[0].recip();
        let mut out = vec![Rational::zero(); n];
        out[0] = c0_inv.clone();
        for e in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=e {
                if !self.coeffs[i].is_zero() && !out[e - i].is_zero() {
                    acc += &self.coeffs[i] * &out[e - i];
                }
            }
            out[e] = -acc * &c0_inv;
        }
        Ok(QX { coeffs: out })
    }

    /// Map quarter-exponent e to m*e (a dilation in x).  Knowledge extends
    /// accordingly: the result has order m * self.order().
    pub fn dilate(&self, m: usize) -> QX {
        assert!(m >= 1);
        let mut out = vec![Rational::zero(); self.order() * m];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[e * m] = c.clone();
            }
        }
        QX { coeffs: out }
    }

    /// Map quarter-exponent e to e/2 (the substitution q -> q^{1/2}); every
    /// supported exponent must be even.
    pub fn dilate_half(&self) -> Result<QX, Error> {
        let mut out = vec![Rational::zero(); self.order().div_ceil(2)];
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e % 2 != 0 {
                return Err(Error::Grid(format!("quarter-exponent {e} is not even")));
            }
            out[e / 2] = c.clone();
        }
        Ok(QX { coeffs: out })
    }

    /// The substitution q -> -q: multiplies the coefficient at integer
    /// q-exponent n by (-1)^n.  Every supported exponent must sit on the
    /// integer grid (quarter-exponent divisible by 4).
    pub fn twist(&self) -> Result<QX, Error> {
        let mut out = self.coeffs.clone();
        for (e, c) in out.iter_mut().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e % 4 != 0 {
                return Err(Error::Grid(format!(
                    "quarter-exponent {e} is not an integer q-power"
                )));
            }
            if (e / 4) % 2 == 1 {
                *c = -&*c;
            }
        }
        Ok(QX { coeffs: out })
    }

    /// Multiply by x^e; knowledge extends by e.
    pub fn mul_xpow(&self, e: usize) -> QX {
        let mut out = vec![Rational::zero(); self.order() + e];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + e] = c.clone();
        }
        QX { coeffs: out }
    }

    /// First exponent where the two series differ (up to the common order).
    pub fn first_mismatch(&self, other: &QX) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..n).find(|&e| self.coeffs[e] != other.coeffs[e])
    }

    /// Nonzero terms as (quarter-exponent, coefficient) pairs.
    pub fn support(&self) -> Vec<(usize, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// JSON encoding: nonzero terms in increasing exponent, values as
    /// bit-exact "num/den" decimal strings.
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .support()
            .iter()
            .map(|(e, c)| json!({ "e": e, "v": format!("{}/{}", c.numer(), c.denom()) }))
            .collect();
        json!({ "order_quarter": self.order(), "coeffs": coeffs })
    }

    pub fn from_json(v: &Value) -> Result<QX, Error> {
        let bad = |m: &str| Error::Domain(format!("bad QX json: {m}"));
        let order = v["order_quarter"]
            .as_u64()
            .ok_or_else(|| bad("order_quarter"))? as usize;
        let mut s = QX::zero(order);
        for t in v["coeffs"].as_array().ok_or_else(|| bad("coeffs"))? {
            let e = t["e"].as_u64().ok_or_else(|| bad("e"))? as usize;
            let val = t["v"].as_str().ok_or_else(|| bad("v"))?;
            let r = parse_rational(val).ok_or_else(|| bad(val))?;
            if e >= order {
                return Err(bad("exponent beyond order"));
            }
            s.set_coeff(e, r);
        }
        Ok(s)
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

impl fmt::Debug for QX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .iter()
            .take(12)
            .map(|(e, c)| format!("{c} x^{e}"))
            .collect();
        write!(f, "QX[order {}: {}]", self.order(), terms.join(" + "))
    }
}

/// prod_s (q^s; q^s)_inf^{e_s} truncated to the given quarter order.  Each
/// base factor is computed by the pentagonal-number series; integer powers
/// by repeated multiplication, negative powers through inversion.
pub fn euler_product(exponent_pairs: &[(usize, i32)], order: usize) -> QX {
    let mut acc = QX::one(order);
    for &(s, e) in exponent_pairs {
        assert!(s >= 1, "scales must be positive");
        if e == 0 {
            continue;
        }
        let base = pochhammer_qs(s, order);
        let pw = base.pow(e.unsigned_abs());
        if e > 0 {
            acc = acc.mul(&pw);
        } else {
            acc = acc.mul(
                &pw.invert()
                    .expect("pentagonal series has unit constant term"),
            );
        }
    }
    acc
}

/// (q^s; q^s)_inf = sum_j (-1)^j q^{s j(3j-1)/2} over all integers j.
fn pochhammer_qs(s: usize, order: usize) -> QX {
    let mut out = QX::zero(order);
    let mut j: i64 = 0;
    loop {
        let mut placed = false;
        for jj in [j, -j] {
            let pent = jj * (3 * jj - 1) / 2;
            if pent < 0 {
                continue;
            }
            let e = 4 * s * pent as usize;
            if e < order {
                let sign = if jj.rem_euclid(2) == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                out.add_to_coeff(e, &sign);
                placed = true;
            }
            if jj == 0 {
                break;
            }
        }
        if !placed && j > 0 {
            break;
        }
        j += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_i, sign_pow};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_qx(rng: &mut ChaCha8Rng, order: usize) -> QX {
        let mut s = QX::zero(order);
        for e in 0..order {
            let n = rng.gen_range(-6i64..=6);
            let d = rng.gen_range(1i64..=4);
            s.set_coeff(e, crate::rat::rat(n, d));
        }
        s
    }

    #[test]
    fn one_minus_q_times_one_plus_q() {
        let order = 40;
        let a = QX::one(order).add(&QX::monomial(rat_i(1), 4, order));
        let b = QX::one(order).sub(&QX::monomial(rat_i(1), 4, order));
        let prod = a.mul(&b);
        let expect = QX::one(order).sub(&QX::monomial(rat_i(1), 8, order));
        assert_eq!(prod, expect);
    }

    #[test]
    fn mul_by_zero() {
        let order = 16;
        let a = QX::monomial(rat_i(3), 5, order);
        assert!(a.mul(&QX::zero(order)).is_zero());
    }

    #[test]
    fn ring_axioms_on_random_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_qx(&mut rng, 64);
            let b = random_qx(&mut rng, 64);
            let c = random_qx(&mut rng, 64);
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.add(&b).sub(&b), a);
        }
    }

    #[test]
    fn mul_matches_independent_convolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let a = random_qx(&mut rng, 48);
            let b = random_qx(&mut rng, 48);
            let prod = a.mul(&b);
            for e in 0..48 {
                let mut acc = Rational::zero();
                for i in 0..=e {
                    acc += a.coeff(i) * b.coeff(e - i);
                }
                assert_eq!(prod.coeff(e), &acc);
            }
        }
    }

    #[test]
    fn pow_zero_is_one() {
        let a = QX::monomial(rat_i(2), 3, 10);
        assert_eq!(a.pow(0), QX::one(10));
    }

    #[test]
    fn invert_one_and_geometric() {
        let order = 32;
        assert_eq!(QX::one(order).invert().unwrap(), QX::one(order));
        // 1/(1-q) = sum q^n
        let a = QX::one(order).sub(&QX::monomial(rat_i(1), 4, order));
        let inv = a.invert().unwrap();
        for n in 0..order / 4 {
            assert_eq!(inv.coeff_q(n), &rat_i(1));
        }
        assert_eq!(QX::zero(8).invert(), Err(Error::NonUnit));
    }

    #[test]
    fn dilate_and_twist_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_qx(&mut rng, 40);
        assert_eq!(a.dilate(1), a);
        // twist is an involution on the integer grid
        let mut b = QX::zero(40);
        for n in 0..10 {
            b.set_coeff(4 * n, rat_i(n as i64 - 4));
        }
        assert_eq!(b.twist().unwrap().twist().unwrap(), b);
        // off-grid twist errors out
        let c = QX::monomial(rat_i(1), 2, 8);
        assert!(c.twist().is_err());
        // dilation by 2 sends q to q^2
        let q = QX::monomial(rat_i(1), 4, 8);
        let d = q.dilate(2);
        assert_eq!(d.coeff(8), &rat_i(1));
    }

    #[test]
    fn pentagonal_series_leading_terms() {
        // (q;q)_inf = 1 - q - q^2 + q^5 + q^7 - q^12 - q^15 + ...
        let p = euler_product(&[(1, 1)], 4 * 20);
        let expect: &[(usize, i64)] =
            &[(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1)];
        for n in 0..20 {
            let want = expect
                .iter()
                .find(|&&(m, _)| m == n)
                .map(|&(_, v)| rat_i(v))
                .unwrap_or_else(Rational::zero);
            assert_eq!(*p.coeff_q(n), want, "coefficient of q^{n}");
        }
    }

    #[test]
    fn tau_values_from_eta_power() {
        // q (q;q)_inf^24 = sum tau(n) q^n
        let p = euler_product(&[(1, 24)], 4 * 8).mul_xpow(4);
        let tau = [1i64, -24, 252, -1472, 4830, -6048, -16744];
        for (i, &t) in tau.iter().enumerate() {
            assert_eq!(*p.coeff_q(i + 1), rat_i(t), "tau({})", i + 1);
        }
    }

    #[test]
    fn cusp_form_product_expansion() {
        // q (q;q)_inf^8 (q^2;q^2)_inf^8 = q - 8q^2 + 12q^3 + 64q^4 - 210q^5 ...
        let p = euler_product(&[(1, 8), (2, 8)], 4 * 6).mul_xpow(4);
        for (n, v) in [(1, 1), (2, -8), (3, 12), (4, 64), (5, -210)] {
            assert_eq!(*p.coeff_q(n), rat_i(v), "coefficient of q^{n}");
        }
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..5 {
            let a = random_qx(&mut rng, 24);
            let j = a.to_json();
            let b = QX::from_json(&j).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn twist_matches_sign_rule() {
        let mut a = QX::zero(40);
        for n in 0..10 {
            a.set_coeff(4 * n, rat_i(2 * n as i64 + 1));
        }
        let t = a.twist().unwrap();
        for n in 0..10 {
            assert_eq!(*t.coeff_q(n), sign_pow(n as i64) * a.coeff_q(n));
        }
    }
}
