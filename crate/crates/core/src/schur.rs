//! Schur function evaluation, the subset/partition machinery behind the
//! Laplace-expansion of Lambert-series determinants, the generic expansion
//! engine, and the multiple-sum (Schur-form) identities, including the
//! triangular-number families.

use crate::error::Error;
use crate::hankel::det;
use crate::identities::{subsets, Ctx};
use crate::lambert::{self, LambertSpec, QTransform, ThetaKind};
use crate::qx::QX;
use crate::rat::{
    a_coeff, b_coeff, c_coeff, prod_even_fact_sq, prod_fact, prod_odd_fact_sq, rat, rat_i,
    sign_pow, two_pow, Partition, Rational,
};
use crate::report::VerificationReport;
use num_bigint::BigInt;
use num_traits::{One, Zero};

// ---------------------------------------------------------------------------
// Schur function evaluation.

fn bigint_det(m: Vec<Vec<BigInt>>) -> BigInt {
    let rows: Vec<Vec<Rational>> = m
        .into_iter()
        .map(|r| r.into_iter().map(Rational::from_integer).collect())
        .collect();
    let d = det(&rows);
    assert!(d.denom().is_one());
    d.numer().clone()
}

fn big_pow(x: &BigInt, e: u64) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Complete homogeneous symmetric polynomial h_k(xs).
fn complete_homogeneous(k: i64, xs: &[BigInt]) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let k = k as usize;
    let mut h = vec![BigInt::zero(); k + 1];
    h[0] = BigInt::one();
    for x in xs {
        for d in 1..=k {
            let add = &h[d - 1] * x;
            h[d] += add;
        }
    }
    h[k].clone()
}

/// s_lambda(xs) exactly: the bialternant with exact integer division when
/// the arguments are distinct, the complete-homogeneous (Jacobi-Trudi)
/// determinant otherwise.
pub fn schur_eval(lambda: &Partition, xs: &[BigInt]) -> BigInt {
    let p = xs.len();
    assert!(lambda.len() <= p, "partition longer than the argument list");
    if lambda.is_empty() {
        return BigInt::one();
    }
    let distinct = (0..p).all(|i| (i + 1..p).all(|j| xs[i] != xs[j]));
    if distinct {
        let alt: Vec<Vec<BigInt>> = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| big_pow(&xs[i], lambda.part(j) + (p - 1 - j) as u64))
                    .collect()
            })
            .collect();
        let num = bigint_det(alt);
        let mut vand = BigInt::one();
        for i in 0..p {
            for j in i + 1..p {
                vand *= &xs[i] - &xs[j];
            }
        }
        let (q, r) = num_integer::Integer::div_rem(&num, &vand);
        assert!(r.is_zero(), "Vandermonde divides the alternant exactly");
        q
    } else {
        let l = lambda.len();
        let jt: Vec<Vec<BigInt>> = (1..=l)
            .map(|i| {
                (1..=l)
                    .map(|j| {
                        complete_homogeneous(lambda.part(i - 1) as i64 - i as i64 + j as i64, xs)
                    })
                    .collect()
            })
            .collect();
        bigint_det(jt)
    }
}

// ---------------------------------------------------------------------------
// Subset and partition machinery.

/// A pair of equal-size increasing index subsets of {1..n} with their
/// complements and element sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetPair {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub s_comp: Vec<usize>,
    pub t_comp: Vec<usize>,
    pub sum_s: usize,
    pub sum_t: usize,
}

impl SubsetPair {
    pub fn new(n: usize, s: Vec<usize>, t: Vec<usize>) -> Self {
        assert_eq!(s.len(), t.len());
        let comp = |set: &[usize]| (1..=n).filter(|i| !set.contains(i)).collect::<Vec<_>>();
        let sum = |set: &[usize]| set.iter().sum();
        SubsetPair {
            s_comp: comp(&s),
            t_comp: comp(&t),
            sum_s: sum(&s),
            sum_t: sum(&t),
            s,
            t,
        }
    }
}

/// The expansion-formula partition of an increasing index set against an
/// exponent sequence: lambda_i = cb(set_{p-i+1})/d - cb(set_1)/d + i - p.
pub fn expansion_partitions(set: &[usize], cb: &[i64], d: i64) -> Result<Partition, Error> {
    let p = set.len();
    if p == 0 {
        return Ok(Partition::empty());
    }
    let first = cb[set[0] - 1];
    let mut parts = Vec::with_capacity(p);
    for i in 1..=p {
        let v = cb[set[p - i] - 1] - first;
        if v % d != 0 {
            return Err(Error::Divisor(format!(
                "{d} does not divide difference {v}"
            )));
        }
        let part = v / d + i as i64 - p as i64;
        assert!(part >= 0, "expansion partition parts must be nonnegative");
        parts.push(part as u64);
    }
    Ok(Partition::new(parts))
}

// ---------------------------------------------------------------------------
// Generic expansion engine.

/// Data for one Lambert-series determinant of mixed Lambert/constant rows:
/// the series parameters, the exponent sequences b and c with their
/// divisors, and the constant sequence for the complementary rows.
#[derive(Debug, Clone)]
pub struct ExpansionConfig {
    pub n: usize,
    /// denominator sign A
    pub a_param: i64,
    /// numerator sign E
    pub e_param: i64,
    pub d: Rational,
    /// coefficient weight linear form: D (vb m + vc)
    pub vb: i64,
    pub vc: i64,
    /// exponent linear forms in quarter units
    pub fq: i64,
    pub gq: i64,
    pub bq: i64,
    pub cq: i64,
    pub b_seq: Vec<i64>,
    pub c_seq: Vec<i64>,
    pub d_b: i64,
    pub d_c: i64,
    /// constants a_1, a_2, ... (needs 2n entries)
    pub a_r: Vec<Rational>,
    /// second (chi) variant: complementary matrix uses the skipped column
    pub second_variant: bool,
}

impl ExpansionConfig {
    fn check(&self) -> Result<(), Error> {
        if !self.b_seq.windows(2).all(|w| w[0] < w[1])
            || !self.c_seq.windows(2).all(|w| w[0] < w[1])
        {
            return Err(Error::Domain("b and c must be strictly increasing".into()));
        }
        for r in 1..self.b_seq.len() {
            if (self.b_seq[r] - self.b_seq[0]) % self.d_b != 0 {
                return Err(Error::Divisor("d_b does not divide b_r - b_1".into()));
            }
        }
        for r in 0..self.c_seq.len() {
            for s in r + 1..self.c_seq.len() {
                if (self.c_seq[s] - self.c_seq[r]) % self.d_c != 0 {
                    return Err(Error::Divisor("d_c does not divide c_s - c_r".into()));
                }
            }
        }
        Ok(())
    }

    fn lambert_entry(&self, u: i64, order: usize) -> Result<QX, Error> {
        if u < 0 {
            return Err(Error::Domain("negative series exponent".into()));
        }
        LambertSpec {
            a: self.a_param,
            e: self.e_param,
            u: u as u32,
            d: self.d.clone(),
            vb: self.vb,
            vc: self.vc,
            fq: self.fq,
            gq: self.gq,
            bq: self.bq,
            cq: self.cq,
        }
        .expand(order)
    }

    /// The mixed determinant evaluated directly over the series ring.
    pub fn direct_det(&self, s_set: &[usize], order: usize) -> Result<QX, Error> {
        self.check()?;
        let n = self.n;
        let mat: Result<Vec<Vec<QX>>, Error> = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        if s_set.contains(&i) {
                            self.lambert_entry(self.c_seq[i - 1] + self.b_seq[j - 1], order)
                        } else {
                            let idx = if self.second_variant && j == n {
                                i + n
                            } else {
                                i + j - 1
                            };
                            Ok(QX::constant(self.a_r[idx - 1].clone(), order))
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(crate::hankel::det_qx(&mat?))
    }

    /// The complementary constant minor over (S^c, T^c), with the chi
    /// column bump in the second variant.
    fn comp_det(&self, pair: &SubsetPair) -> Rational {
        let q = pair.s_comp.len();
        if q == 0 {
            return Rational::one();
        }
        let n = self.n;
        let m: Vec<Vec<Rational>> = (0..q)
            .map(|r| {
                (0..q)
                    .map(|s| {
                        let bump = usize::from(self.second_variant && pair.t_comp[s] == n);
                        self.a_r[pair.s_comp[r] + pair.t_comp[s] - 2 + bump].clone()
                    })
                    .collect()
            })
            .collect();
        det(&m)
    }
}

/// The multiple-sum expansion of the mixed determinant: sum over strictly
/// decreasing m-tuples and y-tuples with the double Vandermonde product,
/// two Schur factors, and the complementary constant minors.
pub fn expand_lambert_det(
    config: &ExpansionConfig,
    s_set: &[usize],
    order: usize,
) -> Result<QX, Error> {
    config.check()?;
    let n = config.n;
    let p = s_set.len();
    assert!(p >= 1 && p <= n);
    let lambda = expansion_partitions(s_set, &config.c_seq, config.d_c)?;
    // structural data per T
    struct TTerm {
        coeff: Rational,
        prod_pow: u64,
        nu: Partition,
    }
    let mut t_terms = Vec::new();
    for t in subsets(n, p) {
        let pair = SubsetPair::new(n, s_set.to_vec(), t.clone());
        let nu = expansion_partitions(&t, &config.b_seq, config.d_b)?;
        let sign = sign_pow((pair.sum_s + pair.sum_t) as i64);
        let dcomp = config.comp_det(&pair);
        let e = config.c_seq[s_set[0] - 1] + config.b_seq[t[0] - 1];
        assert!(e >= 0, "negative total weight exponent");
        t_terms.push(TTerm {
            coeff: sign * dcomp,
            prod_pow: e as u64,
            nu,
        });
    }

    let mut out = QX::zero(order);
    // enumerate m_1 > m_2 > ... > m_p >= 1 with minimal exponent in range
    let mut m_tuple = vec![0i64; p];
    enumerate_m(config, &mut m_tuple, 0, i64::MAX, order, &mut |ms| {
        // weights X_r = D(vb m_r + vc), integral in every registered use
        let xs: Vec<BigInt> = ms
            .iter()
            .map(|&m| {
                let v = &config.d * rat_i(config.vb * m + config.vc);
                assert!(v.denom().is_one(), "non-integral Schur argument");
                v.numer().clone()
            })
            .collect();
        let xc: Vec<BigInt> = xs.iter().map(|x| big_pow(x, config.d_c as u64)).collect();
        let xb: Vec<BigInt> = xs.iter().map(|x| big_pow(x, config.d_b as u64)).collect();
        let mut vand = BigInt::one();
        for r in 0..p {
            for s in r + 1..p {
                vand *= (&xc[r] - &xc[s]) * (&xb[r] - &xb[s]);
            }
        }
        if vand.is_zero() {
            return;
        }
        let s_lam = schur_eval(&lambda, &xc);
        let prod_x: BigInt = xs.iter().product();
        let mut structural = Rational::zero();
        for t in &t_terms {
            let w = big_pow(&prod_x, t.prod_pow) * schur_eval(&t.nu, &xb);
            structural += &t.coeff * Rational::from_integer(w);
        }
        let e_sign = if config.e_param == -1 {
            sign_pow(ms.iter().sum::<i64>())
        } else {
            Rational::one()
        };
        let weight = e_sign * Rational::from_integer(&vand * &s_lam) * structural;
        if weight.is_zero() {
            return;
        }
        // y loops: exponent sum_i [fq m_i + gq + (bq m_i + cq) w_i], w_i >= 0
        let bases: Vec<i64> = ms.iter().map(|&m| config.fq * m + config.gq).collect();
        let steps: Vec<i64> = ms.iter().map(|&m| config.bq * m + config.cq).collect();
        let base_total: i64 = bases.iter().sum();
        let mut coeffs: Vec<(usize, Rational)> = Vec::new();
        enumerate_y(
            &steps,
            0,
            base_total,
            order as i64,
            Rational::one(),
            rat_i(-config.a_param),
            &mut coeffs,
        );
        for (e, c) in coeffs {
            out.add_to_coeff(e, &(&weight * c));
        }
    });
    Ok(out)
}

fn enumerate_m(
    config: &ExpansionConfig,
    m_tuple: &mut Vec<i64>,
    depth: usize,
    upper: i64,
    order: usize,
    f: &mut dyn FnMut(&[i64]),
) {
    let p = m_tuple.len();
    if depth == p {
        f(m_tuple);
        return;
    }
    // exponent already committed by larger m's
    let committed: i64 = (0..depth).map(|i| config.fq * m_tuple[i] + config.gq).sum();
    // remaining indices take m at least (p - depth), ..., 1
    let mut m = (p - depth) as i64;
    loop {
        if m >= upper {
            break;
        }
        let mut floor_rest = 0;
        for j in 1..(p - depth) as i64 {
            floor_rest += config.fq * j + config.gq;
        }
        let e = committed + config.fq * m + config.gq + floor_rest;
        if e >= order as i64 {
            break;
        }
        m_tuple[depth] = m;
        enumerate_m(config, m_tuple, depth + 1, m, order, f);
        m += 1;
    }
}

fn enumerate_y(
    steps: &[i64],
    depth: usize,
    exponent: i64,
    order: i64,
    sign: Rational,
    neg_a: Rational,
    out: &mut Vec<(usize, Rational)>,
) {
    if exponent >= order {
        return;
    }
    if depth == steps.len() {
        out.push((exponent as usize, sign));
        return;
    }
    let mut e = exponent;
    let mut s = sign;
    while e < order {
        enumerate_y(steps, depth + 1, e, order, s.clone(), neg_a.clone(), out);
        e += steps[depth];
        s *= &neg_a;
    }
}

// ---------------------------------------------------------------------------
// Multiple-sum builders for the named identities.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SignRule {
    /// no sign
    Plus,
    /// (-1)^{(-p + y_1 + ... + y_p)/2} with odd y's
    AltHalfY,
    /// (-1)^{m_1 + ... + m_p}
    MParity,
    /// (-1)^{(y_1+..) + (m_1+..)}
    YMParity,
    /// (-1)^{y_1+...} (-1)^{(p + m_1 + ...)/2} with odd m's
    YParityHalfPM,
}

#[derive(Debug, Clone, Copy)]
struct PnSumSpec {
    p: usize,
    m_odd: bool,
    y_odd: bool,
    /// exponent is (1/2) sum m_i y_i instead of sum m_i y_i
    q_half: bool,
    m_pow: u64,
    sign: SignRule,
    /// multiply each term by (m_1^2 + ... + m_p^2)
    weight_sum_m2: bool,
}

/// Enumerate the full-rank multiple sums (no S/T inner structure): every
/// term is weight(m) * sign(m, y) * q^{exp(m, y)}.
fn pn_multi_sum(spec: &PnSumSpec, order: usize) -> QX {
    let mut out = QX::zero(order);
    let p = spec.p;
    if p == 0 {
        return QX::one(order);
    }
    let unit = if spec.q_half { 2i64 } else { 4 };
    let mut ms = vec![0i64; p];
    // minimal sum of remaining entries given parity
    fn min_tail(count: i64, m_odd: bool) -> i64 {
        if m_odd {
            count * count // 1 + 3 + ... + (2c-1)
        } else {
            count * (count + 1) / 2
        }
    }
    fn rec_m(
        ms: &mut Vec<i64>,
        depth: usize,
        upper: i64,
        budget: i64,
        m_odd: bool,
        f: &mut dyn FnMut(&[i64]),
    ) {
        let p = ms.len();
        if depth == p {
            f(ms);
            return;
        }
        let rest = (p - depth - 1) as i64;
        let start = if m_odd { 2 * rest + 1 } else { rest + 1 };
        let mut m = start;
        while m < upper && m + min_tail(rest, m_odd) <= budget {
            ms[depth] = m;
            rec_m(ms, depth + 1, m, budget - m, m_odd, f);
            m += if m_odd { 2 } else { 1 };
        }
    }
    let budget = (order as i64 + unit - 1) / unit; // max sum m_i y_i
    let spec_copy = *spec;
    rec_m(&mut ms, 0, i64::MAX, budget, spec.m_odd, &mut |ms| {
        let mut vand = BigInt::one();
        for r in 0..p {
            for s in r + 1..p {
                let d = BigInt::from(ms[r] * ms[r] - ms[s] * ms[s]);
                vand *= &d * &d;
            }
        }
        let mut w = vand;
        for &m in ms.iter() {
            w *= big_pow(&BigInt::from(m), spec_copy.m_pow);
        }
        if spec_copy.weight_sum_m2 {
            w *= BigInt::from(ms.iter().map(|m| m * m).sum::<i64>());
        }
        let m_sum: i64 = ms.iter().sum();
        let base_sign = match spec_copy.sign {
            SignRule::MParity | SignRule::YMParity => sign_pow(m_sum),
            SignRule::YParityHalfPM => sign_pow((p as i64 + m_sum) / 2),
            _ => Rational::one(),
        };
        let weight = Rational::from_integer(w) * base_sign;
        // y enumeration
        fn rec_y(
            ms: &[i64],
            depth: usize,
            total_my: i64,
            y_sum: i64,
            budget: i64,
            y_odd: bool,
            f: &mut dyn FnMut(i64, i64),
        ) {
            if depth == ms.len() {
                f(total_my, y_sum);
                return;
            }
            let mut y = 1i64;
            loop {
                let t = total_my + ms[depth] * y;
                if t > budget {
                    break;
                }
                rec_y(ms, depth + 1, t, y_sum + y, budget, y_odd, f);
                y += if y_odd { 2 } else { 1 };
            }
        }
        rec_y(ms, 0, 0, 0, budget, spec_copy.y_odd, &mut |total, y_sum| {
            let e = (total * unit) as usize;
            if e >= order {
                return;
            }
            let y_sign = match spec_copy.sign {
                SignRule::YMParity | SignRule::YParityHalfPM => sign_pow(y_sum),
                SignRule::AltHalfY => sign_pow((y_sum - p as i64) / 2),
                _ => Rational::one(),
            };
            out.add_to_coeff(e, &(&weight * y_sign));
        });
    });
    out
}

/// The S/T-structured multiple sums behind the power-sum forms of the
/// inclusion-exclusion identities.
struct StSumSpec<'a> {
    n: usize,
    m_odd: bool,
    sign: SignRule,
    m_pow: u64,
    /// complementary-minor constants
    a: &'a dyn Fn(usize) -> Rational,
    /// extra +1 shift inside the minor index (the b_{l+j} variant)
    minor_shift: usize,
    /// chi variant: column bump and adjusted nu
    chi: bool,
    /// outer coefficient per subset size p
    outer: &'a dyn Fn(usize) -> Rational,
}

fn st_multi_sum(spec: &StSumSpec, order: usize) -> QX {
    let n = spec.n;
    let mut out = QX::zero(order);
    for p in 1..=n {
        // structural terms per (S, T)
        struct Term {
            coeff: Rational,
            pow: u64,
            lambda: Partition,
            nu: Partition,
        }
        let mut terms: Vec<Term> = Vec::new();
        for s in subsets(n, p) {
            let lambda = {
                let parts: Vec<u64> = (1..=p).map(|i| (s[p - i] - s[0] + i - p) as u64).collect();
                Partition::new(parts)
            };
            for t in subsets(n, p) {
                let pair = SubsetPair::new(n, s.clone(), t.clone());
                let nu = if spec.chi {
                    let parts: Vec<u64> = (1..=p)
                        .map(|i| {
                            let bump = usize::from(i == 1 && p > 1 && t[p - 1] == n);
                            (t[p - i] - t[0] + i - p + bump) as u64
                        })
                        .collect();
                    Partition::new(parts)
                } else {
                    let parts: Vec<u64> =
                        (1..=p).map(|i| (t[p - i] - t[0] + i - p) as u64).collect();
                    Partition::new(parts)
                };
                let q = n - p;
                let dcomp = if q == 0 {
                    Rational::one()
                } else {
                    let m: Vec<Vec<Rational>> = (0..q)
                        .map(|r| {
                            (0..q)
                                .map(|c| {
                                    let bump = usize::from(spec.chi && pair.t_comp[c] == n);
                                    (spec.a)(
                                        pair.s_comp[r] + pair.t_comp[c] - 1
                                            + spec.minor_shift
                                            + bump,
                                    )
                                })
                                .collect()
                        })
                        .collect();
                    det(&m)
                };
                let chi_bump = usize::from(spec.chi && t[0] == n);
                let pow = (2 * s[0] + 2 * t[0] + 2 * chi_bump) as i64 - 4;
                assert!(pow >= 0);
                terms.push(Term {
                    coeff: sign_pow((pair.sum_s + pair.sum_t) as i64) * dcomp,
                    pow: pow as u64,
                    lambda: lambda.clone(),
                    nu,
                });
            }
        }
        // enumerate tuples for this p
        let inner = PnSumSpec {
            p,
            m_odd: spec.m_odd,
            y_odd: false,
            q_half: false,
            m_pow: 0,
            sign: SignRule::Plus,
            weight_sum_m2: false,
        };
        let mut part = QX::zero(order);
        per_tuple_sum(&inner, order, &mut |ms, ysum, e| {
            let xs: Vec<BigInt> = ms.iter().map(|&m| BigInt::from(m * m)).collect();
            let mut vand = BigInt::one();
            for r in 0..p {
                for s2 in r + 1..p {
                    let d = &xs[r] - &xs[s2];
                    vand *= &d * &d;
                }
            }
            let prod_m: BigInt = ms.iter().map(|&m| BigInt::from(m)).product();
            let mut structural = Rational::zero();
            for t in &terms {
                structural += &t.coeff
                    * Rational::from_integer(
                        big_pow(&prod_m, t.pow)
                            * schur_eval(&t.lambda, &xs)
                            * schur_eval(&t.nu, &xs),
                    );
            }
            let m_sum: i64 = ms.iter().sum();
            let sign = match spec.sign {
                SignRule::YMParity => sign_pow(ysum + m_sum),
                SignRule::YParityHalfPM => sign_pow(ysum) * sign_pow((p as i64 + m_sum) / 2),
                SignRule::MParity => sign_pow(m_sum),
                _ => Rational::one(),
            };
            let w = sign * Rational::from_integer(vand * big_pow(&prod_m, spec.m_pow)) * structural;
            part.add_to_coeff(e, &w);
        });
        out = out.add(&part.scale(&(spec.outer)(p)));
    }
    out
}

/// Shared (m, y) tuple enumeration: calls back with the tuple, the y-sum,
/// and the quarter-grid exponent of q^{sum m_i y_i}.
fn per_tuple_sum(spec: &PnSumSpec, order: usize, f: &mut dyn FnMut(&[i64], i64, usize)) {
    let p = spec.p;
    let unit = if spec.q_half { 2i64 } else { 4 };
    let budget = (order as i64 + unit - 1) / unit;
    let mut ms = vec![0i64; p];
    fn min_tail(count: i64, m_odd: bool) -> i64 {
        if m_odd {
            count * count
        } else {
            count * (count + 1) / 2
        }
    }
    fn rec_m(
        ms: &mut Vec<i64>,
        depth: usize,
        upper: i64,
        budget: i64,
        m_odd: bool,
        g: &mut dyn FnMut(&mut Vec<i64>),
    ) {
        let p = ms.len();
        if depth == p {
            g(ms);
            return;
        }
        let rest = (p - depth - 1) as i64;
        let start = if m_odd { 2 * rest + 1 } else { rest + 1 };
        let mut m = start;
        while m < upper && m + min_tail(rest, m_odd) <= budget {
            ms[depth] = m;
            rec_m(ms, depth + 1, m, budget - m, m_odd, g);
            m += if m_odd { 2 } else { 1 };
        }
    }
    let m_odd = spec.m_odd;
    let y_odd = spec.y_odd;
    rec_m(&mut ms, 0, i64::MAX, budget, m_odd, &mut |ms| {
        fn rec_y(
            ms: &[i64],
            depth: usize,
            total: i64,
            ysum: i64,
            budget: i64,
            y_odd: bool,
            h: &mut dyn FnMut(i64, i64),
        ) {
            if depth == ms.len() {
                h(total, ysum);
                return;
            }
            let mut y = 1i64;
            loop {
                let t = total + ms[depth] * y;
                if t > budget {
                    break;
                }
                rec_y(ms, depth + 1, t, ysum + y, budget, y_odd, h);
                y += if y_odd { 2 } else { 1 };
            }
        }
        let ms_copy: Vec<i64> = ms.clone();
        rec_y(&ms_copy, 0, 0, 0, budget, y_odd, &mut |total, ysum| {
            let e = (total * unit) as usize;
            if e < order {
                f(&ms_copy, ysum, e);
            }
        });
    });
}

// ---------------------------------------------------------------------------
// Named multiple-sum identities.

fn sum36(n: usize, order: usize, weighted: bool) -> QX {
    pn_multi_sum(
        &PnSumSpec {
            p: n,
            m_odd: true,
            y_odd: true,
            q_half: false,
            m_pow: 1,
            sign: SignRule::Plus,
            weight_sum_m2: weighted,
        },
        order,
    )
}

fn sum37(n: usize, order: usize, weighted: bool) -> QX {
    pn_multi_sum(
        &PnSumSpec {
            p: n,
            m_odd: false,
            y_odd: true,
            q_half: false,
            m_pow: 3,
            sign: SignRule::Plus,
            weight_sum_m2: weighted,
        },
        order,
    )
}

fn sum58(n: usize, order: usize, weighted: bool) -> QX {
    pn_multi_sum(
        &PnSumSpec {
            p: n,
            m_odd: true,
            y_odd: true,
            q_half: true,
            m_pow: 0,
            sign: SignRule::AltHalfY,
            weight_sum_m2: weighted,
        },
        order,
    )
}

fn sum67(n: usize, order: usize, weighted: bool) -> QX {
    pn_multi_sum(
        &PnSumSpec {
            p: n,
            m_odd: true,
            y_odd: true,
            q_half: true,
            m_pow: 2,
            sign: SignRule::AltHalfY,
            weight_sum_m2: weighted,
        },
        order,
    )
}

fn sum74a(n: usize, order: usize, weighted: bool) -> QX {
    pn_multi_sum(
        &PnSumSpec {
            p: n,
            m_odd: false,
            y_odd: true,
            q_half: false,
            m_pow: 0,
            sign: SignRule::AltHalfY,
            weight_sum_m2: weighted,
        },
        order,
    )
}

fn sum74b(n: usize, order: usize, weighted: bool) -> QX {
    pn_multi_sum(
        &PnSumSpec {
            p: n - 1,
            m_odd: false,
            y_odd: true,
            q_half: false,
            m_pow: 4,
            sign: SignRule::AltHalfY,
            weight_sum_m2: weighted,
        },
        order,
    )
}

fn sum80(n: usize, order: usize, weighted: bool) -> QX {
    pn_multi_sum(
        &PnSumSpec {
            p: n,
            m_odd: false,
            y_odd: true,
            q_half: false,
            m_pow: 2,
            sign: SignRule::AltHalfY,
            weight_sum_m2: weighted,
        },
        order,
    )
}

/// Explicit low-rank sums with polynomial coefficient brackets.
fn explicit_sum(p: usize, order: usize, sign: SignRule, weight: &dyn Fn(&[i64]) -> BigInt) -> QX {
    let spec = PnSumSpec {
        p,
        m_odd: false,
        y_odd: false,
        q_half: false,
        m_pow: 0,
        sign: SignRule::Plus,
        weight_sum_m2: false,
    };
    let mut out = QX::zero(order);
    per_tuple_sum(&spec, order, &mut |ms, ysum, e| {
        let m_sum: i64 = ms.iter().sum();
        let s = match sign {
            SignRule::YMParity => sign_pow(ysum + m_sum),
            SignRule::MParity => sign_pow(m_sum),
            _ => Rational::one(),
        };
        out.add_to_coeff(e, &(s * Rational::from_integer(weight(ms))));
    });
    out
}

fn vand_sq(ms: &[i64]) -> BigInt {
    let mut acc = BigInt::one();
    for r in 0..ms.len() {
        for s in r + 1..ms.len() {
            let d = BigInt::from(ms[r] * ms[r] - ms[s] * ms[s]);
            acc *= &d * &d;
        }
    }
    acc
}

/// Build (lhs, rhs) for a registered multiple-sum identity.
pub fn build_schur_identity(id: &str, n: usize, ctx: &Ctx) -> Result<(QX, QX), Error> {
    let order = ctx.order;
    let nn = n as u32;
    let n64 = n as i64;
    let one = QX::one(order);
    let pf1 = prod_fact(2 * n as u64 - 1);
    let pf2 = prod_fact(2 * n as u64);
    let pe = prod_even_fact_sq(n as u64 - 1);
    let po = prod_odd_fact_sq(n as u64);
    let c_plus = lambert::z2_one_plus_ksq_lambert(order);
    let c_two = lambert::z2_two_minus_ksq_lambert(order);
    let c_minus = lambert::z2_one_minus_2ksq_lambert(order);
    let c_half = lambert::z2_two_minus_ksq_half_lambert(order);
    let tri = lambert::triangle(order);
    let tri2 = lambert::theta(ThetaKind::Triangle, QTransform::QSquared, order)?;
    let theta2_sqrtq_4pow = |m: u32| {
        ctx.br
            .z
            .pow(2 * m)
            .mul(&ctx.br.k.pow(m))
            .scale(&two_pow(2 * m as i64))
    };

    let pair: (QX, QX) = match id {
        "THM_7_1" => (
            ctx.t4.pow(4 * nn * nn),
            one.add(&st_multi_sum(
                &StSumSpec {
                    n,
                    m_odd: false,
                    sign: SignRule::YMParity,
                    m_pow: 1,
                    a: &c_coeff,
                    minor_shift: 0,
                    chi: false,
                    outer: &|p| sign_pow(p as i64) * two_pow(2 * n64 * n64 + n64) / &pf1,
                },
                order,
            )),
        ),
        "THM_7_2" => (
            ctx.t4.pow(4 * nn * (nn + 1)),
            one.add(&st_multi_sum(
                &StSumSpec {
                    n,
                    m_odd: false,
                    sign: SignRule::MParity,
                    m_pow: 3,
                    a: &a_coeff,
                    minor_shift: 0,
                    chi: false,
                    outer: &|p| sign_pow(n64 - p as i64) * two_pow(2 * n64 * n64 + 3 * n64) / &pf2,
                },
                order,
            )),
        ),
        "THM_7_3" => (
            ctx.t3.pow(2 * nn * (nn - 1)).mul(&ctx.t4.pow(2 * nn * nn)),
            one.add(&st_multi_sum(
                &StSumSpec {
                    n,
                    m_odd: true,
                    sign: SignRule::YParityHalfPM,
                    m_pow: 0,
                    a: &b_coeff,
                    minor_shift: 0,
                    chi: false,
                    outer: &|p| sign_pow(p as i64) * two_pow(2 * n64) / &pe,
                },
                order,
            )),
        ),
        "THM_7_4" => (
            ctx.t3.pow(2 * nn * (nn + 1)).mul(&ctx.t4.pow(2 * nn * nn)),
            one.add(&st_multi_sum(
                &StSumSpec {
                    n,
                    m_odd: true,
                    sign: SignRule::YParityHalfPM,
                    m_pow: 2,
                    a: &b_coeff,
                    minor_shift: 1,
                    chi: false,
                    outer: &|p| sign_pow(n64 - p as i64) * two_pow(2 * n64) / &po,
                },
                order,
            )),
        ),
        "THM_7_5_7_36" => (
            ctx.t2.pow(4 * nn * nn),
            sum36(n, order, false).scale(&(two_pow(2 * n64 * (n64 + 1)) / &pf1)),
        ),
        "THM_7_5_7_37" => (
            theta2_sqrtq_4pow(nn * (nn + 1)),
            sum37(n, order, false).scale(&(two_pow(n64 * (4 * n64 + 5)) / &pf2)),
        ),
        "COR_7_6_7_54" => (
            tri2.pow(4 * nn * nn).mul_xpow(4 * n * n).truncated(order),
            sum36(n, order, false).scale(&(two_pow(-2 * n64 * (n64 - 1)) / &pf1)),
        ),
        "COR_7_6_7_55" => (
            tri.pow(4 * nn * (nn + 1))
                .mul_xpow(2 * n * (n + 1))
                .truncated(order),
            sum37(n, order, false).scale(&(two_pow(n64) / &pf2)),
        ),
        "THM_7_7_7_56" => (
            tri2.pow(4).mul_xpow(4).truncated(order),
            sum36(1, order, false),
        ),
        "THM_7_7_7_57" => (
            tri.pow(8).mul_xpow(4).truncated(order),
            sum37(1, order, false),
        ),
        "THM_7_8" => (
            ctx.t2.pow(2 * nn * nn).mul(&ctx.t3.pow(2 * nn * (nn - 1))),
            sum58(n, order, false).scale(&(two_pow(2 * n64) / &pe)),
        ),
        "EQ_7_65" => (
            ctx.t2.pow(2 * nn).mul(&theta2_sqrtq_4pow(nn * (nn - 1))),
            sum58(n, order, false).scale(&(two_pow(2 * n64 * n64) / &pe)),
        ),
        "EQ_7_66" => {
            // q tri(q^2)^4 * q tri(q)^8 as a 4-fold alternating sum over odd
            // m1 > m2 with exponents m_i (y_i - 1/2); the shifted exponent
            // needs its own loop bounds
            let lhs = tri2.pow(4).mul(&tri.pow(8)).mul_xpow(8).truncated(order);
            let mut rhs = QX::zero(order);
            let bound = order as i64;
            let mut m1 = 3i64;
            while 2 * (m1 + 1) < bound {
                let mut m2 = 1i64;
                while m2 < m1 {
                    // minimal exponent 2(m1 + m2) at y = (1, 1)
                    if 2 * (m1 + m2) < bound {
                        let w = Rational::from_integer(vand_sq(&[m1, m2]));
                        let mut y1 = 1i64;
                        while m1 * (4 * y1 - 2) + 2 * m2 < bound {
                            let mut y2 = 1i64;
                            loop {
                                let e = m1 * (4 * y1 - 2) + m2 * (4 * y2 - 2);
                                if e >= bound {
                                    break;
                                }
                                rhs.add_to_coeff(e as usize, &(&w * sign_pow(y1 + y2)));
                                y2 += 1;
                            }
                            y1 += 1;
                        }
                    }
                    m2 += 2;
                }
                m1 += 2;
            }
            (lhs, rhs.scale(&two_pow(-6)))
        }
        "THM_7_9" => (
            ctx.t2.pow(2 * nn * nn).mul(&ctx.t3.pow(2 * nn * (nn + 1))),
            sum67(n, order, false).scale(&(two_pow(2 * n64) / &po)),
        ),
        "COR_7_10" => (
            ctx.t3
                .pow(2 * nn)
                .mul(&tri.pow(4 * nn * nn))
                .mul_xpow(2 * n * n)
                .truncated(order),
            sum67(n, order, false).scale(&(two_pow(-2 * n64 * (n64 - 1)) / &po)),
        ),
        "THM_7_11" => {
            let second = if n == 1 {
                QX::one(order)
            } else {
                sum74b(n, order, false).scale(&(two_pow(2 * n64 * n64 - 2) / &pe))
            };
            (
                ctx.t2.pow(2 * nn * (nn - 1)).mul(&ctx.t3.pow(2 * nn * nn)),
                sum74a(n, order, false)
                    .scale(&(two_pow(2 * n64 * n64) / &pe))
                    .add(&second),
            )
        }
        "THM_7_12" => (
            ctx.t2.pow(2 * nn * (nn + 1)).mul(&ctx.t3.pow(2 * nn * nn)),
            sum80(n, order, false).scale(&(two_pow(2 * n64 * (n64 + 1)) / &po)),
        ),
        "COR_7_13" => (
            tri.pow(4 * nn * nn)
                .mul(&tri2.pow(2 * nn))
                .mul_xpow(2 * n * (n + 1))
                .truncated(order),
            sum80(n, order, false).scale(&po.recip()),
        ),
        "THM_7_14" => (
            ctx.t4.pow(4 * nn * nn).mul(&c_plus),
            one.add(&st_multi_sum(
                &StSumSpec {
                    n,
                    m_odd: false,
                    sign: SignRule::YMParity,
                    m_pow: 1,
                    a: &c_coeff,
                    minor_shift: 0,
                    chi: true,
                    outer: &|p| {
                        sign_pow(p as i64 - 1) * two_pow(2 * n64 * n64 + n64 + 1) * rat(3, 1)
                            / (rat_i(n64 * (4 * n64 * n64 - 1)) * &pf1)
                    },
                },
                order,
            )),
        ),
        "THM_7_15" => (
            ctx.t4.pow(4 * nn * (nn + 1)).mul(&c_plus),
            one.add(&st_multi_sum(
                &StSumSpec {
                    n,
                    m_odd: false,
                    sign: SignRule::MParity,
                    m_pow: 3,
                    a: &a_coeff,
                    minor_shift: 0,
                    chi: true,
                    outer: &|p| {
                        sign_pow(n64 - p as i64 + 1) * two_pow(2 * n64 * n64 + 3 * n64) * rat(3, 1)
                            / (rat_i(n64 * (n64 + 1) * (2 * n64 + 1)) * &pf2)
                    },
                },
                order,
            )),
        ),
        "THM_7_16" => (
            ctx.t3
                .pow(2 * nn * (nn - 1))
                .mul(&ctx.t4.pow(2 * nn * nn))
                .mul(&c_two.scale(&rat_i(2 * n64)).sub(&c_minus)),
            QX::constant(rat_i(4 * n64 - 1), order).add(&st_multi_sum(
                &StSumSpec {
                    n,
                    m_odd: true,
                    sign: SignRule::YParityHalfPM,
                    m_pow: 0,
                    a: &b_coeff,
                    minor_shift: 0,
                    chi: true,
                    outer: &|p| {
                        sign_pow(p as i64 - 1) * two_pow(2 * n64) * rat(3, 1)
                            / (rat_i(n64 * (2 * n64 - 1)) * &pe)
                    },
                },
                order,
            )),
        ),
        "THM_7_17" => (
            ctx.t3
                .pow(2 * nn * (nn + 1))
                .mul(&ctx.t4.pow(2 * nn * nn))
                .mul(&c_two.scale(&rat_i(2 * n64)).add(&c_minus)),
            QX::constant(rat_i(4 * n64 + 1), order).add(&st_multi_sum(
                &StSumSpec {
                    n,
                    m_odd: true,
                    sign: SignRule::YParityHalfPM,
                    m_pow: 2,
                    a: &b_coeff,
                    minor_shift: 1,
                    chi: true,
                    outer: &|p| {
                        sign_pow(n64 - p as i64 + 1) * two_pow(2 * n64) * rat(3, 1)
                            / (rat_i(n64 * (2 * n64 + 1)) * &po)
                    },
                },
                order,
            )),
        ),
        "THM_7_18_7_99" => (
            ctx.t2.pow(4 * nn * nn).mul(&c_half),
            sum36(n, order, true).scale(
                &(two_pow(2 * n64 * (n64 + 1)) * rat(3, 1)
                    / (rat_i(n64 * (4 * n64 * n64 - 1)) * &pf1)),
            ),
        ),
        "THM_7_18_7_100" => (
            theta2_sqrtq_4pow(nn * (nn + 1)).mul(&c_plus),
            sum37(n, order, true).scale(
                &(two_pow(n64 * (4 * n64 + 5)) * rat(6, 1)
                    / (rat_i(n64 * (n64 + 1) * (2 * n64 + 1)) * &pf2)),
            ),
        ),
        "THM_7_19" => (
            ctx.t2
                .pow(2 * nn * nn)
                .mul(&ctx.t3.pow(2 * nn * (nn - 1)))
                .mul(&c_plus.scale(&rat_i(2 * n64)).add(&c_minus)),
            sum58(n, order, true)
                .scale(&(two_pow(2 * n64) * rat(3, 1) / (rat_i(n64 * (2 * n64 - 1)) * &pe))),
        ),
        "THM_7_20" => (
            ctx.t2
                .pow(2 * nn * nn)
                .mul(&ctx.t3.pow(2 * nn * (nn + 1)))
                .mul(&c_plus.scale(&rat_i(2 * n64)).sub(&c_minus)),
            sum67(n, order, true)
                .scale(&(two_pow(2 * n64) * rat(3, 1) / (rat_i(n64 * (2 * n64 + 1)) * &po))),
        ),
        "THM_7_21" => {
            // same corrected power of 4 as the chi determinant identity it
            // expands
            let scale = rat(3, 1) / (rat_i(2 * n64 * (2 * n64 - 1)) * &pe);
            let second = if n == 1 {
                QX::zero(order)
            } else {
                sum74b(n, order, true).scale(&(two_pow(2 * n64 * n64) * &scale))
            };
            (
                ctx.t2
                    .pow(2 * nn * (nn - 1))
                    .mul(&ctx.t3.pow(2 * nn * nn))
                    .mul(&c_plus.scale(&rat_i(n64)).sub(&c_half)),
                sum74a(n, order, true)
                    .scale(&(two_pow(2 * n64 * n64 + 2) * &scale))
                    .add(&second),
            )
        }
        "THM_7_22" => (
            ctx.t2
                .pow(2 * nn * (nn + 1))
                .mul(&ctx.t3.pow(2 * nn * nn))
                .mul(&c_plus.scale(&rat_i(n64)).add(&c_half)),
            sum80(n, order, true).scale(
                &(two_pow(2 * n64 * (n64 + 1)) * rat(6, 1) / (rat_i(n64 * (2 * n64 + 1)) * &po)),
            ),
        ),
        "COR_8_1" => {
            let s1 = explicit_sum(1, order, SignRule::YMParity, &|ms| {
                let m2 = BigInt::from(ms[0] * ms[0]);
                BigInt::from(ms[0]) * (BigInt::one() + &m2 + &m2 * &m2)
            });
            let s2 = explicit_sum(2, order, SignRule::YMParity, &|ms| {
                BigInt::from(ms[0] * ms[1]) * vand_sq(ms)
            });
            (
                ctx.t4.pow(16),
                one.sub(&s1.scale(&rat(32, 3))).add(&s2.scale(&rat(256, 3))),
            )
        }
        "COR_8_2" => {
            let s1 = explicit_sum(1, order, SignRule::MParity, &|ms| {
                let m2 = BigInt::from(ms[0] * ms[0]);
                big_pow(&BigInt::from(ms[0]), 3)
                    * (BigInt::from(17) + BigInt::from(8) * &m2 + BigInt::from(2) * &m2 * &m2)
            });
            let s2 = explicit_sum(2, order, SignRule::MParity, &|ms| {
                big_pow(&BigInt::from(ms[0] * ms[1]), 3) * vand_sq(ms)
            });
            (
                ctx.t4.pow(24),
                one.add(&s1.scale(&rat(16, 9))).add(&s2.scale(&rat(512, 9))),
            )
        }
        "COR_8_3" => {
            let s1 = explicit_sum(1, order, SignRule::YMParity, &|ms| {
                let m2 = ms[0] * ms[0];
                BigInt::from(ms[0])
                    * BigInt::from(
                        69 + 120 * m2 + 172 * m2 * m2 + 40 * m2 * m2 * m2 + 4 * m2 * m2 * m2 * m2,
                    )
            });
            let s2 = explicit_sum(2, order, SignRule::YMParity, &|ms| {
                let (a, b) = (ms[0] * ms[0], ms[1] * ms[1]);
                let bracket = 62
                    + 17 * a
                    + 17 * b
                    + 2 * a * a
                    + 2 * b * b
                    + 8 * a * b
                    + 2 * a * a * b
                    + 2 * a * b * b
                    + 2 * a * a * b * b;
                BigInt::from(ms[0] * ms[1]) * vand_sq(ms) * BigInt::from(bracket)
            });
            let s3 = explicit_sum(3, order, SignRule::YMParity, &|ms| {
                BigInt::from(ms[0] * ms[1] * ms[2]) * vand_sq(ms)
            });
            (
                ctx.t4.pow(36),
                one.sub(&s1.scale(&rat(8, 45)))
                    .add(&s2.scale(&rat(512, 135)))
                    .sub(&s3.scale(&rat(8192, 135))),
            )
        }
        "COR_8_4" => {
            let s1 = explicit_sum(1, order, SignRule::MParity, &|ms| {
                let m2 = ms[0] * ms[0];
                big_pow(&BigInt::from(ms[0]), 3)
                    * BigInt::from(
                        902 + 760 * m2 + 321 * m2 * m2 + 40 * m2 * m2 * m2 + 2 * m2 * m2 * m2 * m2,
                    )
            });
            let s2 = explicit_sum(2, order, SignRule::MParity, &|ms| {
                let (a, b) = (ms[0] * ms[0], ms[1] * ms[1]);
                let bracket = 1382
                    + 248 * a
                    + 248 * b
                    + 17 * a * a
                    + 17 * b * b
                    + 68 * a * b
                    + 8 * a * a * b
                    + 8 * a * b * b
                    + 2 * a * a * b * b;
                big_pow(&BigInt::from(ms[0] * ms[1]), 3) * vand_sq(ms) * BigInt::from(bracket)
            });
            let s3 = explicit_sum(3, order, SignRule::MParity, &|ms| {
                big_pow(&BigInt::from(ms[0] * ms[1] * ms[2]), 3) * vand_sq(ms)
            });
            (
                ctx.t4.pow(48),
                one.add(&s1.scale(&rat(32, 675)))
                    .add(&s2.scale(&rat(1024, 6075)))
                    .add(&s3.scale(&rat(32768, 6075))),
            )
        }
        _ => return Err(Error::Registry(id.to_string())),
    };
    Ok(pair)
}

/// (id, takes an n parameter)
pub fn schur_registry() -> Vec<(&'static str, bool)> {
    vec![
        ("THM_7_1", true),
        ("THM_7_2", true),
        ("THM_7_3", true),
        ("THM_7_4", true),
        ("THM_7_5_7_36", true),
        ("THM_7_5_7_37", true),
        ("COR_7_6_7_54", true),
        ("COR_7_6_7_55", true),
        ("THM_7_7_7_56", false),
        ("THM_7_7_7_57", false),
        ("THM_7_8", true),
        ("EQ_7_65", true),
        ("EQ_7_66", false),
        ("THM_7_9", true),
        ("COR_7_10", true),
        ("THM_7_11", true),
        ("THM_7_12", true),
        ("COR_7_13", true),
        ("THM_7_14", true),
        ("THM_7_15", true),
        ("THM_7_16", true),
        ("THM_7_17", true),
        ("THM_7_18_7_99", true),
        ("THM_7_18_7_100", true),
        ("THM_7_19", true),
        ("THM_7_20", true),
        ("THM_7_21", true),
        ("THM_7_22", true),
        ("COR_8_1", false),
        ("COR_8_2", false),
        ("COR_8_3", false),
        ("COR_8_4", false),
    ]
}

/// The explicit degenerate-size conventions of the multiple-sum forms.
pub fn degenerate_note(id: &str) -> Option<&'static str> {
    match id {
        "THM_7_11" => Some("the second sum term is defined to be 1 at n = 1"),
        "THM_7_21" => Some("the second sum term is defined to be 0 at n = 1"),
        _ => None,
    }
}

/// Check one multiple-sum identity instance.
pub fn schur_form_identity(id: &str, n: usize, order: usize) -> Result<VerificationReport, Error> {
    let ctx = Ctx::new(order)?;
    let (lhs, rhs) = build_schur_identity(id, n, &ctx)?;
    let takes_n = schur_registry().iter().any(|(i, p)| *i == id && *p);
    Ok(VerificationReport::from_series(
        id,
        if takes_n { Some(n as u32) } else { None },
        &lhs,
        &rhs,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchurSuite {
    S7,
    S8,
}

impl SchurSuite {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "s7" => Ok(SchurSuite::S7),
            "s8" => Ok(SchurSuite::S8),
            _ => Err(Error::Registry(format!("unknown suite: {s}"))),
        }
    }
}

/// Run a suite with each parameterized identity at exactly the given n.
pub fn schur_suite_at(
    which: SchurSuite,
    n: usize,
    order: usize,
) -> Result<Vec<VerificationReport>, Error> {
    use rayon::prelude::*;
    let mut jobs: Vec<(String, usize)> = Vec::new();
    for (id, takes_n) in schur_registry() {
        let in_suite = match which {
            SchurSuite::S7 => {
                id.starts_with("THM_7") || id.starts_with("COR_7") || id.starts_with("EQ_7")
            }
            SchurSuite::S8 => id.starts_with("COR_8"),
        };
        if !in_suite {
            continue;
        }
        jobs.push((id.to_string(), if takes_n { n } else { 1 }));
    }
    jobs.sort();
    jobs.par_iter()
        .map(|(id, n)| schur_form_identity(id, *n, order))
        .collect()
}

/// Run a suite for every instance n = 1..=n_max.
pub fn schur_suite(
    which: SchurSuite,
    n_max: usize,
    order: usize,
) -> Result<Vec<VerificationReport>, Error> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let mut reports = schur_suite_at(which, n, order)?;
        if n > 1 {
            reports.retain(|r| r.n == Some(n as u32));
        }
        out.append(&mut reports);
    }
    out.sort_by_key(|a| (a.id.clone(), a.n));
    Ok(out)
}

/// t_s(N) for s = 4n^2 or 4n(n+1), extracted from the multiple-sum series
/// (not from the counting oracle).
pub fn t_count(s: u32, cap: usize) -> Result<Vec<BigInt>, Error> {
    // resolve n
    let mut found = None;
    for n in 1..=8u32 {
        if 4 * n * n == s {
            found = Some((n, true));
        }
        if 4 * n * (n + 1) == s {
            found = Some((n, false));
        }
    }
    let (n, is_square_family) =
        found.ok_or_else(|| Error::Domain(format!("s = {s} is not 4n^2 or 4n(n+1)")))?;
    let n = n as usize;
    let n64 = n as i64;
    let out: Vec<BigInt> = if is_square_family {
        let shift = 4 * n * n;
        let order = 8 * cap + shift + 1;
        let series = sum36(n, order, false)
            .scale(&(two_pow(-2 * n64 * (n64 - 1)) / prod_fact(2 * n as u64 - 1)));
        (0..=cap)
            .map(|nn| {
                let c = series.coeff(8 * nn + shift);
                assert!(c.denom().is_one());
                c.numer().clone()
            })
            .collect()
    } else {
        let shift = 2 * n * (n + 1);
        let order = 4 * cap + shift + 1;
        let series = sum37(n, order, false).scale(&(two_pow(n64) / prod_fact(2 * n as u64)));
        (0..=cap)
            .map(|nn| {
                let c = series.coeff(4 * nn + shift);
                assert!(c.denom().is_one());
                c.numer().clone()
            })
            .collect()
    };
    Ok(out)
}

/// r_s(N) read off the multiple-sum expansions (s in {4, 8, 16, 24, 36, 48}).
pub fn r_count_via_schur(s: u32, cap: usize) -> Result<Vec<BigInt>, Error> {
    let order = 4 * (cap + 1);
    let ctx = Ctx::new(order)?;
    let id = match s {
        4 => "THM_7_1",
        8 => "THM_7_2",
        16 => "COR_8_1",
        24 => "COR_8_2",
        36 => "COR_8_3",
        48 => "COR_8_4",
        _ => {
            return Err(Error::Domain(format!(
                "no expansion registered for s = {s}"
            )))
        }
    };
    let (_, rhs) = build_schur_identity(id, 1, &ctx)?;
    Ok((0..=cap)
        .map(|n| {
            let c = rhs.coeff_q(n);
            assert!(c.denom().is_one());
            let v = c.numer().clone();
            if n % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect())
}
