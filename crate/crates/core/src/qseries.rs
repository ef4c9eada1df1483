//! Truncated power series in `q` with arbitrary-precision integer
//! coefficients, and the product formulas built from them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{AffineAlgebra, EtaQuotientSpec, FiniteType};
use crate::error::{Error, Result};

/// `c_0 + c_1 q + ... + c_T q^T  (mod q^(T+1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(truncation: usize) -> Self {
        QSeries {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        QSeries::constant(BigInt::one(), truncation)
    }

    pub fn constant(c: BigInt, truncation: usize) -> Self {
        let mut s = QSeries::zero(truncation);
        s.coeffs[0] = c;
        s
    }

    /// `c * q^k`, zero when `k` exceeds the truncation.
    pub fn monomial(c: BigInt, k: usize, truncation: usize) -> Self {
        let mut s = QSeries::zero(truncation);
        if k <= truncation {
            s.coeffs[k] = c;
        }
        s
    }

    /// Missing coefficients are zero; extra ones are dropped.
    pub fn from_coeffs<I, T>(coeffs: I, truncation: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = QSeries::zero(truncation);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> BigInt {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        QSeries::from_coeffs(self.coeffs.iter().cloned(), truncation)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let t = self.truncation();
        let mut s = QSeries::zero(t);
        for m in k..=t {
            s.coeffs[m] = self.coeffs[m - k].clone();
        }
        s
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Exact division of every coefficient, `None` if some is not divisible.
    pub fn divide_exact(&self, c: &BigInt) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| (x % c).is_zero().then(|| x / c))
            .collect::<Option<Vec<_>>>()?;
        Some(QSeries { coeffs })
    }

    /// Substitutes `q -> q^s`.
    pub fn dilate(&self, s: usize) -> Self {
        let t = self.truncation();
        let mut out = QSeries::zero(t);
        for (m, c) in self.coeffs.iter().enumerate() {
            if m * s > t {
                break;
            }
            out.coeffs[m * s] = c.clone();
        }
        out
    }

    /// Inverse modulo `q^(T+1)`; needs constant term `+1` or `-1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NotInvertible(c0.to_string()));
        }
        let t = self.truncation();
        let mut inv = QSeries::zero(t);
        inv.coeffs[0] = c0.clone();
        for m in 1..=t {
            let mut acc = BigInt::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv.coeffs[m - k];
                }
            }
            // c0^-1 = c0 for c0 = +-1
            inv.coeffs[m] = -(acc * c0);
        }
        Ok(inv)
    }

    /// Integer power; negative exponents go through [`QSeries::inverse`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = QSeries::one(self.truncation());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Index and values of the first differing coefficient over the common
    /// truncation.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<(usize, BigInt, BigInt)> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(m, (a, b))| (m, a.clone(), b.clone()))
    }

    pub fn to_document(&self) -> SeriesDocument {
        SeriesDocument {
            truncation: self.truncation(),
            coefficients: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// Serialized form: decimal coefficient strings from `q^0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesDocument {
    pub truncation: usize,
    pub coefficients: Vec<String>,
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (m, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{m}")?,
                (_, false) => write!(f, "{mag}q^{m}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.truncation() + 1)
    }
}

fn zip_min<'a>(
    a: &'a QSeries,
    b: &'a QSeries,
) -> (usize, impl Iterator<Item = (&'a BigInt, &'a BigInt)>) {
    let t = a.truncation().min(b.truncation());
    (t, a.coeffs.iter().zip(&b.coeffs).take(t + 1))
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let (_, it) = zip_min(self, rhs);
        QSeries {
            coeffs: it.map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let (_, it) = zip_min(self, rhs);
        QSeries {
            coeffs: it.map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let t = self.truncation().min(rhs.truncation());
        let mut out = QSeries::zero(t);
        for (i, a) in self.coeffs.iter().take(t + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(t + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `prod_{i>=1} (1 - q^(s i))` to order `T`, from the pentagonal number
/// theorem: `sum_j (-1)^j q^(s j(3j-1)/2)` over all integers `j`.
pub fn euler_series(s: usize, truncation: usize) -> QSeries {
    assert!(s >= 1, "euler_series needs s >= 1");
    let mut out = QSeries::zero(truncation);
    out.coeffs[0] = BigInt::one();
    for j in 1usize.. {
        let sign = if j % 2 == 1 { -1 } else { 1 };
        let lo = s * j * (3 * j - 1) / 2;
        if lo > truncation {
            break;
        }
        out.coeffs[lo] += sign;
        let hi = s * j * (3 * j + 1) / 2;
        if hi <= truncation {
            out.coeffs[hi] += sign;
        }
    }
    out
}

/// `multiplier * q^((phase + sum r s)/24) * prod euler(s_i)^(r_i)` to order `T`.
pub fn eta_quotient_series(spec: &EtaQuotientSpec, truncation: usize) -> Result<QSeries> {
    let total = spec.phase_residual();
    if total % 24 != 0 {
        return Err(Error::PhaseCongruence {
            phase: spec.phase,
            total,
        });
    }
    let shift = total / 24;
    if shift < 0 {
        return Err(Error::NegativeShift(shift));
    }
    let mut acc = QSeries::constant(spec.multiplier.clone(), truncation);
    for f in &spec.factors {
        let e = euler_series(f.arg as usize, truncation);
        acc = &acc * &e.pow(f.power)?;
    }
    Ok(acc.shift(shift as usize))
}

/// Which integers play `d_i` in the simply-laced product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductConvention {
    Exponents,
    Degrees,
}

/// Which integers play `d_i` in Bott's formula `P(G) prod 1/(1 - t^(d_i - 1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BottConvention {
    Degrees,
    Exponents,
}

impl ProductConvention {
    pub fn name(self) -> &'static str {
        match self {
            ProductConvention::Exponents => "exponents",
            ProductConvention::Degrees => "degrees",
        }
    }
}

impl BottConvention {
    pub fn name(self) -> &'static str {
        match self {
            BottConvention::Degrees => "degrees",
            BottConvention::Exponents => "exponents",
        }
    }
}

/// `(1 + c q^k)^e` folded into `acc`.
fn times_binomial(acc: QSeries, sign: i64, k: usize, e: u64) -> QSeries {
    let t = acc.truncation();
    if k > t {
        return acc;
    }
    let mut out = acc;
    for _ in 0..e {
        // multiply by (1 + sign q^k) in place, high degrees first
        for m in (k..=t).rev() {
            let add = &out.coeffs[m - k] * sign;
            out.coeffs[m] += add;
        }
    }
    out
}

/// `P_N = prod_i prod_{k>=0} (1 - q^(h k + d_i))`.
pub fn simply_laced_p_factor(h: usize, ds: &[i64], truncation: usize) -> QSeries {
    let mut acc = QSeries::one(truncation);
    for &d in ds {
        let mut e = d as usize;
        while e <= truncation {
            acc = times_binomial(acc, -1, e, 1);
            e += h;
        }
    }
    acc
}

/// `R_N = prod_{k>=0} prod_{s>=0} (1 + q^(2^s (2k+1) hv))^((s+1) N)`, expanded literally.
pub fn simply_laced_r_factor(hv: usize, n: u64, truncation: usize) -> QSeries {
    let mut acc = QSeries::one(truncation);
    let mut odd = 1usize;
    while odd * hv <= truncation {
        let mut s = 0u64;
        let mut e = odd * hv;
        while e <= truncation {
            acc = times_binomial(acc, 1, e, (s + 1) * n);
            s += 1;
            e *= 2;
        }
        odd += 2;
    }
    acc
}

/// `|W| / (P_N R_N)` for a simply-laced non-twisted algebra.
pub fn simply_laced_product(
    alg: &AffineAlgebra,
    truncation: usize,
    convention: ProductConvention,
) -> Result<QSeries> {
    if !alg.id.is_simply_laced() {
        return Err(Error::NotSimplyLaced(alg.id.to_string()));
    }
    let h = alg.affine.coxeter as usize;
    let hv = alg.affine.dual_coxeter as usize;
    let ds = match convention {
        ProductConvention::Exponents => &alg.horizontal.exponents,
        ProductConvention::Degrees => &alg.horizontal.degrees,
    };
    let p = simply_laced_p_factor(h, ds, truncation);
    let r = simply_laced_r_factor(hv, alg.rank() as u64, truncation);
    let denom = &p * &r;
    Ok(denom
        .inverse()?
        .scale(&BigInt::from(alg.weyl_order().clone())))
}

/// Length generating polynomial `prod (1 - t^(d_i)) / (1 - t)^N` of a
/// finite Weyl group, as `prod (1 + t + ... + t^(d_i - 1))`.
pub fn finite_poincare(ty: FiniteType, truncation: usize) -> QSeries {
    let mut acc = QSeries::one(truncation);
    for d in ty.degrees() {
        let factor = QSeries::from_coeffs(std::iter::repeat_n(1, d as usize), truncation);
        acc = &acc * &factor;
    }
    acc
}

/// Bott's affine Poincare series `P(G) prod_i 1/(1 - t^(e_i))` with `e_i`
/// = degrees - 1 (default) or exponents - 1.
pub fn bott_affine_poincare(
    alg: &AffineAlgebra,
    truncation: usize,
    convention: BottConvention,
) -> Result<QSeries> {
    if alg.id.is_twisted() {
        return Err(Error::Twisted(alg.id.to_string()));
    }
    let ds = match convention {
        BottConvention::Degrees => &alg.horizontal.degrees,
        BottConvention::Exponents => &alg.horizontal.exponents,
    };
    let mut acc = finite_poincare(alg.horizontal.finite_type, truncation);
    for &d in ds {
        let e = d - 1;
        if e <= 0 {
            return Err(Error::SingularFactor);
        }
        let geometric = QSeries::from_coeffs(
            (0..=truncation).map(|m| i64::from(m % e as usize == 0)),
            truncation,
        );
        acc = &acc * &geometric;
    }
    Ok(acc)
}
