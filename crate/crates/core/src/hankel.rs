//! Ring-generic Hankel and chi determinants, the correspondences between
//! power series and the two continued-fraction shapes, even-part
//! contraction, and the closed-form level generators for every integrand
//! family with a known expansion.

use crate::error::Error;
use crate::kpoly::{elliptic_coeffs, EllipticFamily, KPoly};
use crate::qx::QX;
use crate::rat::{rat_i, Rational};
use num_traits::{One, Zero};

/// Commutative-ring coefficients with exact division, enough for
/// fraction-free determinant work.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// Exact quotient, None when not divisible (or dividing by zero).
    fn exact_div(&self, den: &Self) -> Option<Self>;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn exact_div(&self, den: &Self) -> Option<Self> {
        if Zero::is_zero(den) {
            None
        } else {
            Some(self / den)
        }
    }
}

impl Coeff for KPoly {
    fn zero() -> Self {
        KPoly::zero()
    }
    fn one() -> Self {
        KPoly::one()
    }
    fn add(&self, other: &Self) -> Self {
        KPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        KPoly::sub(self, other)
    }
    fn neg(&self) -> Self {
        KPoly::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        KPoly::mul(self, other)
    }
    fn is_zero(&self) -> bool {
        KPoly::is_zero(self)
    }
    fn exact_div(&self, den: &Self) -> Option<Self> {
        KPoly::exact_div(self, den)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination with row
/// pivoting; every division performed is exact in the coefficient ring.
pub fn det<C: Coeff>(matrix: &[Vec<C>]) -> C {
    let n = matrix.len();
    if n == 0 {
        return C::one();
    }
    for row in matrix {
        assert_eq!(row.len(), n, "matrix must be square");
    }
    let mut m: Vec<Vec<C>> = matrix.to_vec();
    let mut sign_flip = false;
    let mut prev = C::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return C::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t
                    .exact_div(&prev)
                    .expect("Bareiss division is exact in an integral domain");
            }
            m[i][k] = C::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

/// Cofactor-expansion determinant for truncated series entries, where
/// elimination would require divisions that do not exist in the ring.
pub fn det_qx(matrix: &[Vec<QX>]) -> QX {
    let n = matrix.len();
    assert!(n > 0);
    let order = matrix
        .iter()
        .flat_map(|r| r.iter().map(|e| e.order()))
        .min()
        .unwrap();
    fn expand(matrix: &[Vec<QX>], rows: &[usize], cols: &[usize], order: usize) -> QX {
        if rows.len() == 1 {
            return matrix[rows[0]][cols[0]].truncated(order);
        }
        let mut acc = QX::zero(order);
        let r = rows[0];
        let rest: Vec<usize> = rows[1..].to_vec();
        for (idx, &c) in cols.iter().enumerate() {
            if matrix[r][c].is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
            let minor = expand(matrix, &rest, &sub_cols, order);
            let term = matrix[r][c].truncated(order).mul(&minor);
            if idx % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    expand(matrix, &idx, &idx, order)
}

/// H_n^{(m)}: determinant of the n x n matrix with entries c_{m+i+j-2},
/// where `seq[0]` holds c_1.
pub fn hankel<C: Coeff>(seq: &[C], n: usize, m: usize) -> Result<C, Error> {
    if n == 0 {
        return Ok(C::one());
    }
    let needed = m + 2 * n - 2;
    if seq.len() < needed {
        return Err(Error::Length {
            needed,
            got: seq.len(),
        });
    }
    Ok(det(&hankel_matrix(seq, n, m)))
}

/// Build the n x n Hankel matrix rows without taking the determinant.
pub fn hankel_matrix<C: Clone>(seq: &[C], n: usize, m: usize) -> Vec<Vec<C>> {
    (0..n)
        .map(|i| (0..n).map(|j| seq[m + i + j - 1].clone()).collect())
        .collect()
}

/// chi_n: the minor of H_{n+1}^{(1)} obtained by deleting the next-to-last
/// column and the last row; chi_1 = c_2, chi_0 = 0.
pub fn chi<C: Coeff>(seq: &[C], n: usize) -> Result<C, Error> {
    if n == 0 {
        return Ok(C::zero());
    }
    let needed = 2 * n;
    if seq.len() < needed {
        return Err(Error::Length {
            needed,
            got: seq.len(),
        });
    }
    Ok(det(&chi_matrix(seq, n)))
}

/// The chi_n matrix: row i is c_i, ..., c_{i+n-2}, c_{i+n}.
pub fn chi_matrix<C: Clone>(seq: &[C], n: usize) -> Vec<Vec<C>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let idx = if j + 1 < n { i + j } else { i + n };
                    seq[idx].clone()
                })
                .collect()
        })
        .collect()
}

/// Coefficient lists of the associated continued fraction: partial
/// numerators alpha_1..alpha_n and denominators beta_1..beta_n with levels
/// 1 + alpha_1 w/(1 + beta_1 w) -K- (-alpha_n w^2)/(1 + beta_n w).
#[derive(Debug, Clone, PartialEq)]
pub struct AssocCF<C> {
    pub alphas: Vec<C>,
    pub betas: Vec<C>,
}

/// Coefficient list gamma_1..gamma_n of the regular C-fraction
/// 1 -K- gamma_n w / 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RegCF<C> {
    pub gammas: Vec<C>,
}

/// Correspondence from power series coefficients c_1..c_{2n} to the
/// associated continued fraction: alpha_n = H_n H_{n-2}/H_{n-1}^2 and
/// beta_n = chi_{n-1}/H_{n-1} - chi_n/H_n, assembled with exact division
/// (the combined fraction is always divisible even when the separate
/// chi/H ratios are not polynomial).
pub fn series_to_assoc<C: Coeff>(seq: &[C]) -> Result<AssocCF<C>, Error> {
    let levels = seq.len() / 2;
    let mut h = vec![C::one(), C::one()]; // H_{-1}, H_0
    let mut x = vec![C::zero()]; // chi_0
    for n in 1..=levels {
        h.push(hankel(seq, n, 1)?);
        x.push(chi(seq, n)?);
    }
    let mut alphas = Vec::with_capacity(levels);
    let mut betas = Vec::with_capacity(levels);
    for n in 1..=levels {
        let hn = &h[n + 1];
        let hn1 = &h[n];
        let hn2 = &h[n - 1];
        if hn.is_zero() {
            return Err(Error::Degenerate(n));
        }
        let alpha = hn
            .mul(hn2)
            .exact_div(&hn1.mul(hn1))
            .ok_or(Error::Degenerate(n))?;
        // (chi_{n-1} H_n - chi_n H_{n-1}) / (H_{n-1} H_n)
        let num = x[n - 1].mul(hn).sub(&x[n].mul(hn1));
        let beta = num.exact_div(&hn1.mul(hn)).ok_or(Error::Degenerate(n))?;
        alphas.push(alpha);
        betas.push(beta);
    }
    Ok(AssocCF { alphas, betas })
}

/// Correspondence from c_1..c_L to the regular C-fraction coefficients
/// gamma_1..gamma_L.
pub fn series_to_reg<C: Coeff>(seq: &[C]) -> Result<RegCF<C>, Error> {
    let levels = seq.len();
    let max_m = levels / 2;
    let mut h1 = vec![C::one()]; // H_0^{(1)}
    let mut h2 = vec![C::one()]; // H_0^{(2)}
    for n in 1..=(max_m + 1) {
        if 2 * n - 1 <= levels {
            h1.push(hankel(seq, n, 1)?);
        }
        if 2 * n <= levels {
            h2.push(hankel(seq, n, 2)?);
        }
    }
    let mut gammas = Vec::with_capacity(levels);
    for j in 1..=levels {
        let g = if j == 1 {
            h1[1].clone()
        } else if j % 2 == 0 {
            let m = j / 2;
            let num = h1[m - 1].mul(&h2[m]);
            let den = h1[m].mul(&h2[m - 1]);
            num.exact_div(&den).ok_or(Error::Degenerate(m))?.neg()
        } else {
            let m = (j - 1) / 2;
            let num = h1[m + 1].mul(&h2[m - 1]);
            let den = h1[m].mul(&h2[m]);
            num.exact_div(&den).ok_or(Error::Degenerate(m))?.neg()
        };
        if g.is_zero() {
            return Err(Error::Degenerate(j));
        }
        gammas.push(g);
    }
    Ok(RegCF { gammas })
}

// --- truncated series in w over a generic coefficient ring, used only to
// --- expand continued fractions back into power series

#[derive(Debug, Clone, PartialEq)]
struct WSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> WSeries<C> {
    fn zero(order: usize) -> Self {
        WSeries {
            coeffs: vec![C::zero(); order],
        }
    }
    fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        s
    }
    fn monomial(c: C, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e < order {
            s.coeffs[e] = c;
        }
        s
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        WSeries {
            coeffs: (0..n)
                .map(|i| self.coeffs[i].add(&other.coeffs[i]))
                .collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![C::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if !other.coeffs[j].is_zero() {
                    out[i + j] = out[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
                }
            }
        }
        WSeries { coeffs: out }
    }
    fn invert(&self) -> Self {
        let n = self.coeffs.len();
        let c0 = &self.coeffs[0];
        let c0_inv = C::one().exact_div(c0).expect("unit constant term");
        let mut out = vec![C::zero(); n];
        out[0] = c0_inv.clone();
        for e in 1..n {
            let mut acc = C::zero();
            for i in 1..=e {
                acc = acc.add(&self.coeffs[i].mul(&out[e - i]));
            }
            out[e] = acc.neg().mul(&c0_inv);
        }
        WSeries { coeffs: out }
    }
}

/// Power-series coefficients c_1..c_terms of the associated continued
/// fraction, by bottom-up convergent evaluation in the truncated ring.
/// Correct through c_{2n} when n levels are supplied.
pub fn assoc_to_series<C: Coeff>(cf: &AssocCF<C>, terms: usize) -> Result<Vec<C>, Error> {
    let levels = cf.alphas.len();
    if 2 * levels < terms {
        return Err(Error::Length {
            needed: terms.div_ceil(2),
            got: levels,
        });
    }
    let order = terms + 1;
    let mut tail = WSeries::zero(order);
    for n in (2..=levels).rev() {
        // -alpha_n w^2 / (1 + beta_n w + tail)
        let den = WSeries::one(order)
            .add(&WSeries::monomial(cf.betas[n - 1].clone(), 1, order))
            .add(&tail);
        let num = WSeries::monomial(cf.alphas[n - 1].neg(), 2, order);
        tail = num.mul(&den.invert());
    }
    let den = WSeries::one(order)
        .add(&WSeries::monomial(cf.betas[0].clone(), 1, order))
        .add(&tail);
    let full = WSeries::monomial(cf.alphas[0].clone(), 1, order).mul(&den.invert());
    Ok(full.coeffs[1..=terms].to_vec())
}

/// Power-series coefficients c_1..c_terms of the regular C-fraction;
/// correct through c_n when n levels are supplied.
pub fn reg_to_series<C: Coeff>(cf: &RegCF<C>, terms: usize) -> Result<Vec<C>, Error> {
    let levels = cf.gammas.len();
    if levels < terms {
        return Err(Error::Length {
            needed: terms,
            got: levels,
        });
    }
    let order = terms + 1;
    let mut tail = WSeries::zero(order);
    for n in (2..=levels).rev() {
        let den = WSeries::one(order).add(&tail);
        tail = WSeries::monomial(cf.gammas[n - 1].clone(), 1, order).mul(&den.invert());
    }
    let den = WSeries::one(order).add(&tail);
    let full = WSeries::monomial(cf.gammas[0].clone(), 1, order).mul(&den.invert());
    Ok(full.coeffs[1..=terms].to_vec())
}

/// Even-part contraction of a regular C-fraction into an associated
/// continued fraction: alpha_1 = gamma_1, beta_1 = gamma_2, and for n >= 2
/// alpha_n = gamma_{2n-2} gamma_{2n-1}, beta_n = gamma_{2n-1} + gamma_{2n}.
pub fn reg_even_part<C: Coeff>(cf: &RegCF<C>) -> AssocCF<C> {
    let levels = cf.gammas.len() / 2;
    let g = |j: usize| cf.gammas[j - 1].clone();
    let mut alphas = Vec::with_capacity(levels);
    let mut betas = Vec::with_capacity(levels);
    for n in 1..=levels {
        if n == 1 {
            alphas.push(g(1));
            betas.push(g(2));
        } else {
            alphas.push(g(2 * n - 2).mul(&g(2 * n - 1)));
            betas.push(g(2 * n - 1).add(&g(2 * n)));
        }
    }
    AssocCF { alphas, betas }
}

/// H_n^{(1)} = prod_{r=1}^{n} alpha_r^{n+1-r}.
pub fn assoc_hankel_product<C: Coeff>(cf: &AssocCF<C>, n: usize) -> C {
    let mut acc = C::one();
    for r in 1..=n {
        for _ in 0..(n + 1 - r) {
            acc = acc.mul(&cf.alphas[r - 1]);
        }
    }
    acc
}

/// chi_n = -(beta_1 + ... + beta_n) * H_n^{(1)}.
pub fn assoc_chi_product<C: Coeff>(cf: &AssocCF<C>, n: usize) -> C {
    let mut s = C::zero();
    for r in 1..=n {
        s = s.add(&cf.betas[r - 1]);
    }
    s.neg().mul(&assoc_hankel_product(cf, n))
}

/// H_n^{(2)} = (-1)^n H_n^{(1)} prod_{r=1}^{n} gamma_{2r}.
pub fn reg_h2_product<C: Coeff>(h1_n: &C, cf: &RegCF<C>, n: usize) -> C {
    let mut acc = h1_n.clone();
    for r in 1..=n {
        acc = acc.mul(&cf.gammas[2 * r - 1]);
    }
    if n % 2 == 1 {
        acc.neg()
    } else {
        acc
    }
}

// ---------------------------------------------------------------------------
// Closed-form continued fraction families.

/// Associated continued fraction families with closed-form levels: the 24
/// elliptic-coefficient integrands plus the three Gauss-transformed
/// integrands whose moments are polynomials in k rather than K = k^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssocCfFamily {
    Elliptic(EllipticFamily),
    /// (1 - k sn^2)/(1 + k sn^2); moments polynomial in k
    GaussDn,
    /// sn/(1 + k sn^2)
    GaussSn,
    /// cn dn/(1 + k sn^2)
    GaussCn,
}

fn lin(a: i64, b: i64) -> KPoly {
    KPoly::from_coeffs(vec![rat_i(a), rat_i(b)])
}

fn quad(a: i64, b: i64, c: i64) -> KPoly {
    KPoly::from_coeffs(vec![rat_i(a), rat_i(b), rat_i(c)])
}

impl AssocCfFamily {
    pub const ALL: [AssocCfFamily; 27] = {
        use crate::kpoly::EllipticFamily::*;
        [
            AssocCfFamily::Elliptic(Sn),
            AssocCfFamily::Elliptic(Cn),
            AssocCfFamily::Elliptic(Dn),
            AssocCfFamily::Elliptic(SnCn),
            AssocCfFamily::Elliptic(SnDn),
            AssocCfFamily::Elliptic(Sd),
            AssocCfFamily::Elliptic(Cd),
            AssocCfFamily::Elliptic(Nd),
            AssocCfFamily::Elliptic(SnCnOverDn2),
            AssocCfFamily::Elliptic(SnOverDn2),
            AssocCfFamily::Elliptic(Sn2),
            AssocCfFamily::Elliptic(Sd2),
            AssocCfFamily::Elliptic(SnCnOverDn),
            AssocCfFamily::Elliptic(Sn2Cn2OverDn2),
            AssocCfFamily::GaussDn,
            AssocCfFamily::GaussSn,
            AssocCfFamily::GaussCn,
            AssocCfFamily::Elliptic(Sc),
            AssocCfFamily::Elliptic(Dc),
            AssocCfFamily::Elliptic(Nc),
            AssocCfFamily::Elliptic(Sc2),
            AssocCfFamily::Elliptic(SnDnOverCn2),
            AssocCfFamily::Elliptic(SnOverCn2),
            AssocCfFamily::Elliptic(SnDnOverCn),
            AssocCfFamily::Elliptic(SnOverCnDn),
            AssocCfFamily::Elliptic(Sn2Dn2OverCn2),
            AssocCfFamily::Elliptic(Sn2OverCn2Dn2),
        ]
    };

    pub fn name(&self) -> String {
        match self {
            AssocCfFamily::Elliptic(f) => f.name().to_string(),
            AssocCfFamily::GaussDn => "gauss-dn".to_string(),
            AssocCfFamily::GaussSn => "gauss-sn".to_string(),
            AssocCfFamily::GaussCn => "gauss-cn".to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "gauss-dn" => Ok(AssocCfFamily::GaussDn),
            "gauss-sn" => Ok(AssocCfFamily::GaussSn),
            "gauss-cn" => Ok(AssocCfFamily::GaussCn),
            _ => EllipticFamily::parse(s).map(AssocCfFamily::Elliptic),
        }
    }

    /// Moments c_1..c_count of the formal Laplace transform in w = x^2:
    /// c_m = (fam)_m for odd families, (fam)_{m-1} for even families
    /// starting at index 0, and (fam)_m for even families starting at 1.
    pub fn moments(&self, count: usize) -> Vec<KPoly> {
        match self {
            AssocCfFamily::Elliptic(f) => {
                if f.index_start() == 0 {
                    elliptic_coeffs(*f, count - 1)
                } else {
                    elliptic_coeffs(*f, count)
                }
            }
            AssocCfFamily::GaussDn => gauss_moments(EllipticFamily::Dn, count),
            AssocCfFamily::GaussSn => gauss_moments(EllipticFamily::Sn, count),
            AssocCfFamily::GaussCn => gauss_moments(EllipticFamily::Cn, count),
        }
    }

    /// Closed-form partial numerator coefficient alpha_n (n >= 1).
    pub fn alpha(&self, n: usize) -> KPoly {
        use EllipticFamily::*;
        let nn = n as i64;
        let kk = KPoly::var();
        let one_m_k = lin(1, -1);
        if n == 1 {
            let a1 = match self {
                AssocCfFamily::Elliptic(
                    Sn2 | Sd2 | Sc2 | Sn2Cn2OverDn2 | Sn2Dn2OverCn2 | Sn2OverCn2Dn2,
                ) => 2,
                _ => 1,
            };
            return KPoly::constant_i(a1);
        }
        let c2 = |v: i64| KPoly::constant_i(v * v);
        match self {
            AssocCfFamily::Elliptic(Sn) => {
                KPoly::constant_i((2 * nn - 1) * (2 * nn - 3) * (2 * nn - 2).pow(2)).mul(&kk)
            }
            AssocCfFamily::Elliptic(Cn) | AssocCfFamily::Elliptic(Dn) => {
                c2(2 * nn - 2).mul(&c2(2 * nn - 3)).mul(&kk)
            }
            AssocCfFamily::Elliptic(SnCn) | AssocCfFamily::Elliptic(SnDn) => {
                c2(2 * nn - 2).mul(&c2(2 * nn - 1)).mul(&kk)
            }
            AssocCfFamily::Elliptic(Sd) => {
                KPoly::constant_i(-(2 * nn - 1) * (2 * nn - 3) * (2 * nn - 2).pow(2))
                    .mul(&kk)
                    .mul(&one_m_k)
            }
            AssocCfFamily::Elliptic(Cd) | AssocCfFamily::Elliptic(Nd) => c2(2 * nn - 2)
                .mul(&c2(2 * nn - 3))
                .neg()
                .mul(&kk)
                .mul(&one_m_k),
            AssocCfFamily::Elliptic(SnCnOverDn2) | AssocCfFamily::Elliptic(SnOverDn2) => {
                c2(2 * nn - 2)
                    .mul(&c2(2 * nn - 1))
                    .neg()
                    .mul(&kk)
                    .mul(&one_m_k)
            }
            AssocCfFamily::Elliptic(Sn2) => {
                KPoly::constant_i(2 * nn * (2 * nn - 2) * (2 * nn - 1).pow(2)).mul(&kk)
            }
            AssocCfFamily::Elliptic(Sd2) => {
                KPoly::constant_i(-2 * nn * (2 * nn - 2) * (2 * nn - 1).pow(2))
                    .mul(&kk)
                    .mul(&one_m_k)
            }
            AssocCfFamily::Elliptic(SnCnOverDn) => {
                KPoly::constant_i((2 * nn - 1) * (2 * nn - 3) * (2 * nn - 2).pow(2))
                    .mul(&kk)
                    .mul(&kk)
            }
            AssocCfFamily::Elliptic(Sn2Cn2OverDn2) => {
                KPoly::constant_i(2 * nn * (2 * nn - 2) * (2 * nn - 1).pow(2))
                    .mul(&kk)
                    .mul(&kk)
            }
            AssocCfFamily::Elliptic(Sc) => {
                KPoly::constant_i((2 * nn - 1) * (2 * nn - 3) * (2 * nn - 2).pow(2)).mul(&one_m_k)
            }
            AssocCfFamily::Elliptic(Dc) | AssocCfFamily::Elliptic(Nc) => {
                c2(2 * nn - 2).mul(&c2(2 * nn - 3)).mul(&one_m_k)
            }
            AssocCfFamily::Elliptic(Sc2) => {
                KPoly::constant_i(2 * nn * (2 * nn - 2) * (2 * nn - 1).pow(2)).mul(&one_m_k)
            }
            AssocCfFamily::Elliptic(SnDnOverCn2) | AssocCfFamily::Elliptic(SnOverCn2) => {
                c2(2 * nn - 2).mul(&c2(2 * nn - 1)).mul(&one_m_k)
            }
            AssocCfFamily::Elliptic(SnDnOverCn) => {
                KPoly::constant_i((2 * nn - 1) * (2 * nn - 3) * (2 * nn - 2).pow(2))
            }
            AssocCfFamily::Elliptic(SnOverCnDn) => {
                KPoly::constant_i((2 * nn - 1) * (2 * nn - 3) * (2 * nn - 2).pow(2))
                    .mul(&one_m_k)
                    .mul(&one_m_k)
            }
            AssocCfFamily::Elliptic(Sn2Dn2OverCn2) => {
                KPoly::constant_i(2 * nn * (2 * nn - 2) * (2 * nn - 1).pow(2))
            }
            AssocCfFamily::Elliptic(Sn2OverCn2Dn2) => {
                KPoly::constant_i(2 * nn * (2 * nn - 2) * (2 * nn - 1).pow(2))
                    .mul(&one_m_k)
                    .mul(&one_m_k)
            }
            AssocCfFamily::GaussDn | AssocCfFamily::GaussCn => {
                // 4 (2n-2)^2 (2n-3)^2 k (1+k)^2
                KPoly::constant_i(4 * (2 * nn - 2).pow(2) * (2 * nn - 3).pow(2))
                    .mul(&lin(0, 1))
                    .mul(&quad(1, 2, 1))
            }
            AssocCfFamily::GaussSn => {
                KPoly::constant_i(4 * (2 * nn - 1) * (2 * nn - 3) * (2 * nn - 2).pow(2))
                    .mul(&lin(0, 1))
                    .mul(&quad(1, 2, 1))
            }
        }
    }

    /// Closed-form partial denominator coefficient beta_n (n >= 1).
    pub fn beta(&self, n: usize) -> KPoly {
        use EllipticFamily::*;
        let nn = n as i64;
        match self {
            AssocCfFamily::Elliptic(Sn) => lin(1, 1).scale(&rat_i((2 * nn - 1).pow(2))),
            AssocCfFamily::Elliptic(Cn) => lin((2 * nn - 1).pow(2), (2 * nn - 2).pow(2)),
            AssocCfFamily::Elliptic(Dn) => lin((2 * nn - 2).pow(2), (2 * nn - 1).pow(2)),
            AssocCfFamily::Elliptic(SnCn) => lin((2 * nn).pow(2), (2 * nn - 1).pow(2)),
            AssocCfFamily::Elliptic(SnDn) => lin((2 * nn - 1).pow(2), (2 * nn).pow(2)),
            AssocCfFamily::Elliptic(Sd) => lin(1, -2).scale(&rat_i((2 * nn - 1).pow(2))),
            AssocCfFamily::Elliptic(Cd) => lin(
                (2 * nn - 1).pow(2),
                -(2 * nn - 1).pow(2) - (2 * nn - 2).pow(2),
            ),
            AssocCfFamily::Elliptic(Nd) => lin(
                (2 * nn - 2).pow(2),
                -(2 * nn - 2).pow(2) - (2 * nn - 1).pow(2),
            ),
            AssocCfFamily::Elliptic(SnCnOverDn2) => {
                lin((2 * nn).pow(2), -(2 * nn).pow(2) - (2 * nn - 1).pow(2))
            }
            AssocCfFamily::Elliptic(SnOverDn2) => {
                lin((2 * nn - 1).pow(2), -(2 * nn - 1).pow(2) - (2 * nn).pow(2))
            }
            AssocCfFamily::Elliptic(Sn2) => lin(1, 1).scale(&rat_i((2 * nn).pow(2))),
            AssocCfFamily::Elliptic(Sd2) => lin(1, -2).scale(&rat_i((2 * nn).pow(2))),
            AssocCfFamily::Elliptic(SnCnOverDn) => lin(4, -2).scale(&rat_i((2 * nn - 1).pow(2))),
            AssocCfFamily::Elliptic(Sn2Cn2OverDn2) => lin(4, -2).scale(&rat_i((2 * nn).pow(2))),
            AssocCfFamily::Elliptic(Sc) => lin(-2, 1).scale(&rat_i((2 * nn - 1).pow(2))),
            AssocCfFamily::Elliptic(Dc) => lin(
                -(2 * nn - 1).pow(2) - (2 * nn - 2).pow(2),
                (2 * nn - 1).pow(2),
            ),
            AssocCfFamily::Elliptic(Nc) => lin(
                -(2 * nn - 1).pow(2) - (2 * nn - 2).pow(2),
                (2 * nn - 2).pow(2),
            ),
            AssocCfFamily::Elliptic(Sc2) => lin(-2, 1).scale(&rat_i((2 * nn).pow(2))),
            AssocCfFamily::Elliptic(SnDnOverCn2) => {
                lin(-(2 * nn - 1).pow(2) - (2 * nn).pow(2), (2 * nn).pow(2))
            }
            AssocCfFamily::Elliptic(SnOverCn2) => {
                lin(-(2 * nn).pow(2) - (2 * nn - 1).pow(2), (2 * nn - 1).pow(2))
            }
            AssocCfFamily::Elliptic(SnDnOverCn) => lin(-2, 4).scale(&rat_i((2 * nn - 1).pow(2))),
            AssocCfFamily::Elliptic(SnOverCnDn) => lin(-2, -2).scale(&rat_i((2 * nn - 1).pow(2))),
            AssocCfFamily::Elliptic(Sn2Dn2OverCn2) => lin(-2, 4).scale(&rat_i((2 * nn).pow(2))),
            AssocCfFamily::Elliptic(Sn2OverCn2Dn2) => lin(-2, -2).scale(&rat_i((2 * nn).pow(2))),
            AssocCfFamily::GaussDn => {
                // (2n-1)^2 4k + (2n-2)^2 (1+k)^2
                lin(0, 4 * (2 * nn - 1).pow(2))
                    .add(&quad(1, 2, 1).scale(&rat_i((2 * nn - 2).pow(2))))
            }
            AssocCfFamily::GaussSn => quad(1, 6, 1).scale(&rat_i((2 * nn - 1).pow(2))),
            AssocCfFamily::GaussCn => quad(1, 2, 1)
                .scale(&rat_i((2 * nn - 1).pow(2)))
                .add(&lin(0, 4 * (2 * nn - 2).pow(2))),
        }
    }

    pub fn closed_form(&self, levels: usize) -> AssocCF<KPoly> {
        AssocCF {
            alphas: (1..=levels).map(|n| self.alpha(n)).collect(),
            betas: (1..=levels).map(|n| self.beta(n)).collect(),
        }
    }
}

/// Moments (in the variable k) of the Gauss-transformed integrands: the
/// base family coefficient at modulus 2 sqrt(k)/(1+k), cleared to a
/// polynomial by the accompanying (1+k)-power.
fn gauss_moments(base: EllipticFamily, count: usize) -> Vec<KPoly> {
    let inner: Vec<KPoly> = match base {
        EllipticFamily::Sn => elliptic_coeffs(EllipticFamily::Sn, count),
        EllipticFamily::Dn | EllipticFamily::Cn => elliptic_coeffs(base, count - 1),
        _ => unreachable!(),
    };
    let one_plus_k = lin(1, 1);
    let four_k = lin(0, 4);
    inner
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            // exponent of (1+k) accompanying this coefficient
            let two_j: usize = match base {
                EllipticFamily::Sn => 2 * (idx + 1) - 2, // (1+k)^{2m-2} (sn)_m
                _ => 2 * idx,                            // (1+k)^{2j} (fam)_j
            };
            let mut acc = KPoly::zero();
            for i in 0..=p.degree().unwrap_or(0) {
                let ci = p.coeff(i);
                if Zero::is_zero(&ci) {
                    continue;
                }
                assert!(
                    two_j >= 2 * i,
                    "degree bound violated in Gauss substitution"
                );
                let term = four_k
                    .pow(i as u32)
                    .mul(&one_plus_k.pow((two_j - 2 * i) as u32))
                    .scale(&ci);
                acc = acc.add(&term);
            }
            acc
        })
        .collect()
}

/// Regular C-fraction families with closed-form levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegCfFamily {
    Cn,
    Dn,
    Cd,
    Nd,
    Dc,
    Nc,
}

impl RegCfFamily {
    pub const ALL: [RegCfFamily; 6] = [
        RegCfFamily::Cn,
        RegCfFamily::Dn,
        RegCfFamily::Cd,
        RegCfFamily::Nd,
        RegCfFamily::Dc,
        RegCfFamily::Nc,
    ];

    pub fn elliptic(&self) -> EllipticFamily {
        match self {
            RegCfFamily::Cn => EllipticFamily::Cn,
            RegCfFamily::Dn => EllipticFamily::Dn,
            RegCfFamily::Cd => EllipticFamily::Cd,
            RegCfFamily::Nd => EllipticFamily::Nd,
            RegCfFamily::Dc => EllipticFamily::Dc,
            RegCfFamily::Nc => EllipticFamily::Nc,
        }
    }

    /// Moments c_m = (fam)_{m-1}.
    pub fn moments(&self, count: usize) -> Vec<KPoly> {
        elliptic_coeffs(self.elliptic(), count - 1)
    }

    /// Closed-form gamma_j (j >= 1; gamma_1 = 1 for all six families).
    pub fn gamma(&self, j: usize) -> KPoly {
        if j == 1 {
            return KPoly::one();
        }
        let even = j.is_multiple_of(2);
        let m = if even {
            j as i64 / 2
        } else {
            (j as i64 - 1) / 2
        };
        let sq = if even {
            (2 * m - 1).pow(2)
        } else {
            (2 * m).pow(2)
        };
        match (self, even) {
            (RegCfFamily::Cn, true) => KPoly::constant_i(sq),
            (RegCfFamily::Cn, false) => lin(0, sq),
            (RegCfFamily::Dn, true) => lin(0, sq),
            (RegCfFamily::Dn, false) => KPoly::constant_i(sq),
            (RegCfFamily::Cd, true) => lin(sq, -sq),
            (RegCfFamily::Cd, false) => lin(0, -sq),
            (RegCfFamily::Nd, true) => lin(0, -sq),
            (RegCfFamily::Nd, false) => lin(sq, -sq),
            (RegCfFamily::Dc, true) => lin(-sq, sq),
            (RegCfFamily::Dc, false) => KPoly::constant_i(-sq),
            (RegCfFamily::Nc, true) => KPoly::constant_i(-sq),
            (RegCfFamily::Nc, false) => lin(-sq, sq),
        }
    }

    pub fn closed_form(&self, levels: usize) -> RegCF<KPoly> {
        RegCF {
            gammas: (1..=levels).map(|j| self.gamma(j)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_seq(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
        (0..len)
            .map(|_| {
                let mut n = rng.gen_range(-9i64..=9);
                if n == 0 {
                    n = 1;
                }
                rat(n, rng.gen_range(1i64..=3))
            })
            .collect()
    }

    #[test]
    fn det_basics() {
        assert_eq!(det(&[vec![rat_i(7)]]), rat_i(7));
        let m = vec![vec![rat_i(1), rat_i(2)], vec![rat_i(3), rat_i(4)]];
        assert_eq!(det(&m), rat_i(-2));
        // zero pivot forces a row swap
        let m = vec![
            vec![rat_i(0), rat_i(1), rat_i(2)],
            vec![rat_i(1), rat_i(0), rat_i(3)],
            vec![rat_i(4), rat_i(5), rat_i(0)],
        ];
        assert_eq!(det(&m), rat_i(22));
        // singular
        let m = vec![vec![rat_i(1), rat_i(2)], vec![rat_i(2), rat_i(4)]];
        assert_eq!(det(&m), rat_i(0));
    }

    #[test]
    fn det_qx_matches_scalar_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4usize {
            let scalars: Vec<Vec<Rational>> = (0..n).map(|_| random_seq(&mut rng, n)).collect();
            let as_qx: Vec<Vec<QX>> = scalars
                .iter()
                .map(|row| row.iter().map(|c| QX::constant(c.clone(), 8)).collect())
                .collect();
            let d1 = det(&scalars);
            let d2 = det_qx(&as_qx);
            assert_eq!(d2.coeff(0), &d1);
        }
    }

    #[test]
    fn hankel_and_chi_small_cases() {
        let c: Vec<Rational> = (1..=8).map(rat_i).collect();
        assert_eq!(hankel(&c, 1, 1).unwrap(), rat_i(1)); // c_1
        assert_eq!(hankel(&c, 1, 2).unwrap(), rat_i(2)); // c_2
        assert_eq!(chi(&c, 1).unwrap(), rat_i(2)); // c_2
        assert_eq!(chi::<Rational>(&c, 0).unwrap(), rat_i(0));
        assert_eq!(hankel::<Rational>(&c, 0, 1).unwrap(), rat_i(1));
        // chi_2 of 1..4,c_5=5: det [[c1,c3],[c2,c4]]... row i: c_i, c_{i+2}
        // matrix [[1,3],[2,4]] wait: row i is c_i, c_{i+n} with n=2 -> [[1,3],[2,4]]
        assert_eq!(chi(&c, 2).unwrap(), rat_i(4 - 3 * 2));
        assert!(matches!(hankel(&c, 5, 1), Err(Error::Length { .. })));
    }

    #[test]
    fn sn_moment_hankel_at_n2() {
        // 2x2 Hankel of the odd sn coefficients equals 12 K (= K^1 1!2!3!)
        let moments = AssocCfFamily::Elliptic(EllipticFamily::Sn).moments(4);
        let h2 = hankel(&moments, 2, 1).unwrap();
        assert_eq!(h2, lin(0, 12));
    }

    #[test]
    fn heilermann_round_trips_on_random_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut assoc_done = 0;
        let mut reg_done = 0;
        for _ in 0..100 {
            let c = random_seq(&mut rng, 12);
            if let Ok(cf) = series_to_assoc(&c) {
                let back = assoc_to_series(&cf, 12).unwrap();
                assert_eq!(back, c, "associated round trip");
                assoc_done += 1;
                // product formulas
                for n in 1..=6 {
                    assert_eq!(
                        assoc_hankel_product(&cf, n),
                        hankel(&c, n, 1).unwrap(),
                        "H_{n} product"
                    );
                    assert_eq!(
                        assoc_chi_product(&cf, n),
                        chi(&c, n).unwrap(),
                        "chi_{n} product"
                    );
                }
            }
            if let Ok(cf) = series_to_reg(&c) {
                let back = reg_to_series(&cf, 12).unwrap();
                assert_eq!(back, c, "regular round trip");
                reg_done += 1;
                for n in 1..=6 {
                    let h1 = hankel(&c, n, 1).unwrap();
                    assert_eq!(
                        reg_h2_product(&h1, &cf, n),
                        hankel(&c, n, 2).unwrap(),
                        "H2 product at {n}"
                    );
                }
            }
        }
        assert!(assoc_done > 90, "too many degenerate draws: {assoc_done}");
        assert!(reg_done > 90);
    }

    #[test]
    fn all_ones_sequence_is_degenerate_at_two() {
        let c: Vec<Rational> = vec![rat_i(1); 8];
        match series_to_assoc(&c) {
            Err(Error::Degenerate(n)) => assert_eq!(n, 2),
            other => panic!("expected degeneracy at 2, got {other:?}"),
        }
    }

    #[test]
    fn geometric_sequence_round_trip() {
        // c_n = t r^n
        let t = rat(3, 2);
        let r = rat(2, 1);
        let mut c = Vec::new();
        let mut acc = t;
        for _ in 0..8 {
            acc *= &r;
            c.push(acc.clone());
        }
        // a rank-one Hankel sequence degenerates at level 2 ...
        match series_to_assoc(&c) {
            Err(Error::Degenerate(2)) => {}
            other => panic!("expected degeneracy at 2, got {other:?}"),
        }
        // ... but the level-1 data exists and round-trips two coefficients
        let cf = series_to_assoc(&c[..2]).unwrap();
        assert_eq!(cf.alphas[0], rat_i(3)); // t*r = (3/2)*2
        assert_eq!(cf.betas[0], rat_i(-2)); // -r
        let back = assoc_to_series(&cf, 2).unwrap();
        assert_eq!(back, &c[..2]);
    }

    #[test]
    fn scaling_laws_for_determinants() {
        // H and chi of {x^nu c_nu} and {x^{nu-1} c_{nu-1}} pick up the
        // expected powers of x, checked symbolically with x the variable.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let c = random_seq(&mut rng, 12);
        let x = KPoly::var();
        for n in 1..=5usize {
            let scaled: Vec<KPoly> = c
                .iter()
                .enumerate()
                .map(|(i, v)| x.pow(i as u32 + 1).scale(v))
                .collect();
            let shifted: Vec<KPoly> = c
                .iter()
                .enumerate()
                .map(|(i, v)| x.pow(i as u32).scale(v))
                .collect();
            let plain: Vec<KPoly> = c.iter().map(|v| KPoly::constant(v.clone())).collect();

            let h_plain = hankel(&plain, n, 1).unwrap();
            let h_scaled = hankel(&scaled, n, 1).unwrap();
            assert_eq!(
                h_scaled,
                x.pow((n * n) as u32).mul(&h_plain),
                "H1 x^nu at {n}"
            );

            let h_shift = hankel(&shifted, n, 1).unwrap();
            assert_eq!(
                h_shift,
                x.pow((n * (n - 1)) as u32).mul(&h_plain),
                "H1 x^(nu-1) at {n}"
            );

            let x_plain = chi(&plain, n).unwrap();
            let x_scaled = chi(&scaled, n).unwrap();
            assert_eq!(
                x_scaled,
                x.pow((1 + n * n) as u32).mul(&x_plain),
                "chi x^nu at {n}"
            );
            let x_shift = chi(&shifted, n).unwrap();
            assert_eq!(
                x_shift,
                x.pow((1 + n * (n - 1)) as u32).mul(&x_plain),
                "chi x^(nu-1) at {n}"
            );

            let h2_plain = hankel(&plain, n, 2).unwrap();
            let h2_scaled = hankel(&scaled, n, 2).unwrap();
            assert_eq!(
                h2_scaled,
                x.pow((n * (n + 1)) as u32).mul(&h2_plain),
                "H2 x^nu at {n}"
            );
            let h2_shift = hankel(&shifted, n, 2).unwrap();
            assert_eq!(
                h2_shift,
                x.pow((n * n) as u32).mul(&h2_plain),
                "H2 x^(nu-1) at {n}"
            );
        }
    }

    #[test]
    fn affine_rescaling_of_cf_coefficients() {
        // c_nu -> A B^nu c_nu sends (alpha_1, alpha_n, beta_n) to
        // (A B alpha_1, B^2 alpha_n, B beta_n) and gamma to
        // (A B gamma_1, B gamma_n).
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let c = random_seq(&mut rng, 10);
        let a = rat(3, 1);
        let b = rat(-2, 1);
        let scaled: Vec<Rational> = c
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut bb = <Rational as num_traits::One>::one();
                for _ in 0..=i {
                    bb *= &b;
                }
                &a * bb * v
            })
            .collect();
        if let (Ok(cf), Ok(cf2)) = (series_to_assoc(&c), series_to_assoc(&scaled)) {
            assert_eq!(cf2.alphas[0], &a * &b * &cf.alphas[0]);
            for n in 2..=cf.alphas.len() {
                assert_eq!(cf2.alphas[n - 1], &b * &b * &cf.alphas[n - 1], "alpha_{n}");
            }
            for n in 1..=cf.betas.len() {
                assert_eq!(cf2.betas[n - 1], &b * &cf.betas[n - 1], "beta_{n}");
            }
        } else {
            panic!("degenerate draw");
        }
        if let (Ok(rf), Ok(rf2)) = (series_to_reg(&c), series_to_reg(&scaled)) {
            assert_eq!(rf2.gammas[0], &a * &b * &rf.gammas[0]);
            for j in 2..=rf.gammas.len() {
                assert_eq!(rf2.gammas[j - 1], &b * &rf.gammas[j - 1], "gamma_{j}");
            }
        } else {
            panic!("degenerate draw");
        }
    }

    #[test]
    fn closed_forms_match_heilermann_for_all_assoc_families() {
        let levels = 6;
        for fam in AssocCfFamily::ALL {
            let moments = fam.moments(2 * levels);
            let cf = series_to_assoc(&moments).unwrap_or_else(|e| panic!("{}: {e}", fam.name()));
            for n in 1..=levels {
                assert_eq!(cf.alphas[n - 1], fam.alpha(n), "{} alpha_{n}", fam.name());
                assert_eq!(cf.betas[n - 1], fam.beta(n), "{} beta_{n}", fam.name());
            }
        }
    }

    #[test]
    fn closed_forms_match_heilermann_for_reg_families() {
        let levels = 12;
        for fam in RegCfFamily::ALL {
            let moments = fam.moments(levels);
            let cf = series_to_reg(&moments).unwrap();
            for j in 1..=levels {
                assert_eq!(cf.gammas[j - 1], fam.gamma(j), "{fam:?} gamma_{j}");
            }
        }
    }

    #[test]
    fn spec_reg_levels() {
        // dn: gamma_{2m} = (2m-1)^2 K, gamma_{2m+1} = (2m)^2
        assert_eq!(RegCfFamily::Dn.gamma(2), lin(0, 1));
        assert_eq!(RegCfFamily::Dn.gamma(4), lin(0, 9));
        assert_eq!(RegCfFamily::Dn.gamma(3), KPoly::constant_i(4));
        // dc: gamma_3 = -4
        assert_eq!(RegCfFamily::Dc.gamma(3), KPoly::constant_i(-4));
    }

    #[test]
    fn even_part_contraction_matches_assoc_forms() {
        let levels = 6;
        let pairs = [
            (RegCfFamily::Cn, EllipticFamily::Cn),
            (RegCfFamily::Dn, EllipticFamily::Dn),
            (RegCfFamily::Cd, EllipticFamily::Cd),
            (RegCfFamily::Nd, EllipticFamily::Nd),
            (RegCfFamily::Dc, EllipticFamily::Dc),
            (RegCfFamily::Nc, EllipticFamily::Nc),
        ];
        for (reg, ell) in pairs {
            let contracted = reg_even_part(&reg.closed_form(2 * levels));
            let assoc = AssocCfFamily::Elliptic(ell).closed_form(levels);
            assert_eq!(contracted, assoc, "{reg:?} even part");
        }
    }

    #[test]
    fn contraction_bridge_reproduces_derived_families() {
        // one integration by parts turns each reg family below into the
        // paired associated family after an equivalence transformation
        // scaling the first numerator
        let kk = KPoly::var();
        let one_m_k = lin(1, -1);
        let cases: [(RegCfFamily, EllipticFamily, KPoly, bool); 6] = [
            (RegCfFamily::Dn, EllipticFamily::SnCn, kk.clone(), false),
            (RegCfFamily::Cn, EllipticFamily::SnDn, KPoly::one(), false),
            (
                RegCfFamily::Nd,
                EllipticFamily::SnCnOverDn2,
                kk.clone(),
                true,
            ),
            (
                RegCfFamily::Cd,
                EllipticFamily::SnOverDn2,
                one_m_k.clone(),
                false,
            ),
            (
                RegCfFamily::Nc,
                EllipticFamily::SnDnOverCn2,
                KPoly::one(),
                true,
            ),
            (
                RegCfFamily::Dc,
                EllipticFamily::SnOverCn2,
                one_m_k.clone(),
                true,
            ),
        ];
        let levels = 6;
        for (reg, target, divisor, negate) in cases {
            let assoc = AssocCfFamily::Elliptic(target);
            // alpha_1 = +- gamma_2 / divisor
            let g2 = reg.gamma(2);
            let scaled = g2.exact_div(&divisor).unwrap();
            let first = if negate { scaled.neg() } else { scaled };
            assert_eq!(first, assoc.alpha(1), "{target:?} alpha_1");
            assert_eq!(
                reg.gamma(2).add(&reg.gamma(3)),
                assoc.beta(1),
                "{target:?} beta_1"
            );
            for n in 2..=levels {
                assert_eq!(
                    reg.gamma(2 * n - 1).mul(&reg.gamma(2 * n)),
                    assoc.alpha(n),
                    "{target:?} alpha_{n}"
                );
                assert_eq!(
                    reg.gamma(2 * n).add(&reg.gamma(2 * n + 1)),
                    assoc.beta(n),
                    "{target:?} beta_{n}"
                );
            }
        }
    }
}
