//! Legendre polynomials, the coefficients of `sqrt(1 - 2tx + x^2)`, Hankel
//! determinants of both sequences over `Q[t]` and `F_p[t]`, and the rank
//! checks on the Hankel matrices built from `(1 - 2tx + x^2)^((q +- 1)/2)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::FpMatrix;
use crate::series::Rational;

/// Commutative ring with exact division, as needed by fraction-free
/// elimination.
pub trait ExactRing: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `self / other`; panics unless `other` divides `self`.
    fn div_exact(&self, other: &Self) -> Self;

    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }
}

/// Dense polynomial in `t` over `Q`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t`
    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| ExactRing::mul(&acc, self))
    }

    pub fn reduce_mod(&self, field: PrimeField) -> Result<FpPoly> {
        let p = BigInt::from(field.p());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let num = (c.numer() % &p + &p) % &p;
                let den = (c.denom() % &p + &p) % &p;
                let den = field.inv_raw(den.to_u64().expect("reduced")).ok_or(Error::DivisionByZero)?;
                Ok(field.mul_raw(num.to_u64().expect("reduced"), den))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(FpPoly::new(field, coeffs))
    }

    /// Whether every coefficient has a power of two as its denominator.
    pub fn has_dyadic_denominators(&self) -> bool {
        self.coeffs.iter().all(|c| {
            let d = c.denom();
            d.is_positive() && (d & (d - BigInt::one())).is_zero()
        })
    }
}

impl ExactRing for RationalPoly {
    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::one()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    fn div_exact(&self, other: &Self) -> Self {
        let dd = other.degree().expect("division by the zero polynomial");
        let lead_inv = other.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            assert!(self.is_zero(), "inexact polynomial division");
            return Self::zero();
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Self::new(quot)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| (c.is_negative(), c.abs().to_string(), c.abs().is_one())))
    }
}

fn write_poly<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: DoubleEndedIterator<Item = (bool, String, bool)> + ExactSizeIterator,
{
    let mut first = true;
    for (i, (neg, mag, unit)) in terms.enumerate().rev() {
        if mag == "0" {
            continue;
        }
        let sign = match (first, neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let coeff = if unit && i > 0 {
            String::new()
        } else if i > 0 {
            format!("{mag}*")
        } else {
            mag
        };
        let var = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        write!(f, "{sign}{coeff}{var}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Dense polynomial in `t` over `Z`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn to_rational(&self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }
}

impl ExactRing for IntPoly {
    fn zero_like(&self) -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    fn one_like(&self) -> Self {
        IntPoly::new(vec![BigInt::one()])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return self.zero_like();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    fn div_exact(&self, other: &Self) -> Self {
        let dd = other.coeffs.len().checked_sub(1).expect("division by the zero polynomial");
        if self.coeffs.len() <= dd {
            assert!(self.is_zero(), "inexact polynomial division");
            return self.zero_like();
        }
        let lead = &other.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            if rem[k + dd].is_zero() {
                continue;
            }
            assert!((&rem[k + dd] % lead).is_zero(), "inexact polynomial division");
            let c = &rem[k + dd] / lead;
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        IntPoly::new(quot)
    }
}

/// Dense polynomial in `t` over `F_p`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= field.p();
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { field, coeffs }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: u64) -> u64 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add_raw(f.mul_raw(acc, t % f.p()), c))
    }
}

impl ExactRing for FpPoly {
    fn zero_like(&self) -> Self {
        FpPoly { field: self.field, coeffs: Vec::new() }
    }

    fn one_like(&self) -> Self {
        FpPoly::new(self.field, vec![1])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(self.field, (0..n).map(|i| self.field.add_raw(self.coeff(i), other.coeff(i))).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(self.field, (0..n).map(|i| self.field.sub_raw(self.coeff(i), other.coeff(i))).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return self.zero_like();
        }
        let f = self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add_raw(out[i + j], f.mul_raw(a, b));
            }
        }
        FpPoly::new(f, out)
    }

    fn div_exact(&self, other: &Self) -> Self {
        let f = self.field;
        let dd = other.degree().expect("division by the zero polynomial");
        if self.coeffs.len() <= dd {
            assert!(self.is_zero(), "inexact polynomial division");
            return self.zero_like();
        }
        let lead_inv = f.inv_raw(other.coeffs[dd]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul_raw(rem[k + dd], lead_inv);
            if c == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                rem[k + j] = f.sub_raw(rem[k + j], f.mul_raw(c, b));
            }
            quot[k] = c;
        }
        assert!(rem.iter().all(|&r| r == 0), "inexact polynomial division");
        FpPoly::new(f, quot)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|&c| (false, c.to_string(), c == 1)))
    }
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>, one: R) -> R {
    let n = m.len();
    if n == 0 {
        return one;
    }
    let mut negate = false;
    let mut prev = one;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return prev.zero_like();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// `det (a_{n+i+j})_{0<=i,j<k}`.
pub fn hankel_det<R: ExactRing>(seq: &[R], offset: usize, k: usize) -> R {
    assert!(k >= 1, "empty Hankel matrix");
    assert!(seq.len() >= offset + 2 * k - 1, "sequence too short for the Hankel matrix");
    let m = (0..k).map(|i| (0..k).map(|j| seq[offset + i + j].clone()).collect()).collect();
    bareiss_det(m, seq[0].one_like())
}

/// Smallest `s` with `2^(s n) a_n` integral for all `n`, if every
/// denominator is a power of two and `a_0` is an integer.
fn dyadic_scale(seq: &[RationalPoly]) -> Option<u64> {
    let mut s = 0;
    for (n, a) in seq.iter().enumerate() {
        for c in a.coeffs() {
            let d = c.denom();
            if !(d & (d - BigInt::one())).is_zero() {
                return None;
            }
            let v = d.bits() - 1;
            if n == 0 {
                if v > 0 {
                    return None;
                }
            } else {
                s = s.max(v.div_ceil(n as u64));
            }
        }
    }
    Some(s)
}

/// Hankel determinant over `Q[t]`. Sequences with dyadic denominators are
/// rescaled to `b_n = 2^(s n) a_n`, which multiplies the determinant by
/// `2^(s (k offset + k (k-1)))`, and eliminated over `Z[t]`.
pub fn hankel_det_rational(seq: &[RationalPoly], offset: usize, k: usize) -> RationalPoly {
    let window = &seq[..(offset + 2 * k - 1).min(seq.len())];
    let Some(s) = dyadic_scale(window) else {
        return hankel_det(seq, offset, k);
    };
    let scaled: Vec<IntPoly> = window
        .iter()
        .enumerate()
        .map(|(n, a)| {
            let f = BigInt::one() << (s * n as u64);
            IntPoly::new(a.coeffs().iter().map(|c| (c * &f).to_integer()).collect())
        })
        .collect();
    let det = hankel_det(&scaled, offset, k).to_rational();
    det.scale(&power_of_two(-((s * (k * offset + k * (k - 1)) as u64) as i64)))
}

/// `P_0 ..= P_N` from `(n+1) P_{n+1} = (2n+1) t P_n - n P_{n-1}`.
pub fn legendre(n_max: usize) -> Vec<RationalPoly> {
    let mut out = vec![RationalPoly::one()];
    if n_max >= 1 {
        out.push(RationalPoly::t());
    }
    for n in 1..n_max {
        let a = ExactRing::mul(&RationalPoly::t(), &out[n]).scale(&Rational::new((2 * n + 1).into(), (n + 1).into()));
        let b = out[n - 1].scale(&Rational::new((n as i64).into(), (n + 1).into()));
        out.push(a.sub(&b));
    }
    out
}

/// Truncated power series in `x` with coefficients in `Q[t]`.
type Series = Vec<RationalPoly>;

fn series_mul(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![RationalPoly::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&ExactRing::mul(ai, bj));
        }
    }
    out
}

fn base_series(len: usize) -> Series {
    // 1 - 2tx + x^2
    let mut a = vec![RationalPoly::zero(); len];
    let polys = [RationalPoly::one(), RationalPoly::from_ints(&[0, -2]), RationalPoly::one()];
    for (slot, p) in a.iter_mut().zip(polys) {
        *slot = p;
    }
    a
}

/// `P_0 ..= P_N` read off `1/sqrt(1 - 2tx + x^2)`, computed by Newton
/// iteration `y <- y + y (1 - a y^2) / 2`.
pub fn legendre_via_series(n_max: usize) -> Vec<RationalPoly> {
    let len = n_max + 1;
    let a = base_series(len);
    let mut y: Series = vec![RationalPoly::zero(); len];
    y[0] = RationalPoly::one();
    let half = Rational::new(1.into(), 2.into());
    let mut precision = 1;
    while precision < len {
        precision = (2 * precision).min(len);
        let ay2 = series_mul(&a, &series_mul(&y, &y, precision), precision);
        let mut resid: Series = ay2.iter().map(|c| c.neg()).collect();
        resid[0] = resid[0].add(&RationalPoly::one());
        let corr = series_mul(&y, &resid, precision);
        for (yi, ci) in y.iter_mut().zip(corr).take(precision) {
            *yi = yi.add(&ci.scale(&half));
        }
    }
    y
}

/// `tilde P_0 ..= tilde P_N`, the coefficients of `sqrt(1 - 2tx + x^2)`, as
/// the series inverse of `sum P_n x^n`.
pub fn tilde_legendre(n_max: usize) -> Vec<RationalPoly> {
    let p = legendre(n_max);
    let mut out: Vec<RationalPoly> = vec![RationalPoly::one()];
    for n in 1..=n_max {
        let s = (1..=n).fold(RationalPoly::zero(), |acc, i| acc.add(&ExactRing::mul(&p[i], &out[n - i])));
        out.push(s.neg());
    }
    out
}

fn t_squared_minus_one() -> RationalPoly {
    RationalPoly::from_ints(&[-1, 0, 1])
}

fn power_of_two(e: i64) -> Rational {
    let base = Rational::from_integer(BigInt::one() << e.unsigned_abs());
    if e < 0 {
        base.recip()
    } else {
        base
    }
}

fn check_modulus(modulus: Option<u64>) -> Result<Option<PrimeField>> {
    match modulus {
        None => Ok(None),
        Some(2) => Err(Error::EvenModulus),
        Some(p) => Ok(Some(PrimeField::new(p)?)),
    }
}

fn identity_holds(
    seq: &[RationalPoly],
    offset: usize,
    k: usize,
    target: &RationalPoly,
    modulus: Option<PrimeField>,
) -> Result<bool> {
    Ok(match modulus {
        None => hankel_det_rational(seq, offset, k) == *target,
        Some(field) => {
            let reduced = seq.iter().map(|s| s.reduce_mod(field)).collect::<Result<Vec<_>>>()?;
            hankel_det(&reduced, offset, k) == target.reduce_mod(field)?
        }
    })
}

/// `det (P_{i+j})_{i,j<k} = 2^{-(k-1)^2} (t^2 - 1)^{k(k-1)/2}`, over `Q` or
/// mod an odd prime.
pub fn geronimus_check(k: usize, modulus: Option<u64>) -> Result<bool> {
    let field = check_modulus(modulus)?;
    if k == 0 {
        return Err(Error::BadParameter("k must be at least 1".into()));
    }
    let seq = legendre(2 * k - 2);
    let e = (k - 1) as i64;
    let target = t_squared_minus_one().pow((k * (k - 1) / 2) as u32).scale(&power_of_two(-e * e));
    identity_holds(&seq, 0, k, &target, field)
}

/// `det (tilde P_{2+i+j})_{i,j<k} = (-2)^{-k^2} (t^2 - 1)^{k(k+1)/2}`, over `Q`
/// or mod an odd prime.
pub fn corollary_check(k: usize, modulus: Option<u64>) -> Result<bool> {
    let field = check_modulus(modulus)?;
    if k == 0 {
        return Err(Error::BadParameter("k must be at least 1".into()));
    }
    let seq = tilde_legendre(2 * k);
    let kk = (k * k) as i64;
    let mut scale = power_of_two(-kk);
    if kk % 2 == 1 {
        scale = -scale;
    }
    let target = t_squared_minus_one().pow((k * (k + 1) / 2) as u32).scale(&scale);
    identity_holds(&seq, 2, k, &target, field)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpansionKind {
    /// Coefficients of `(1 - 2tx + x^2)^((q+1)/2)`.
    E,
    /// Coefficients of `(1 - 2tx + x^2)^((q-1)/2)`.
    H,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionCoeffs {
    pub p: u64,
    pub q: u64,
    pub kind: ExpansionKind,
    /// Coefficient of `x^i` at index `i`.
    pub coeffs: Vec<FpPoly>,
}

fn odd_prime_power(p: u64, q: u64) -> Result<PrimeField> {
    let field = PrimeField::new(p)?;
    if p == 2 {
        return Err(Error::BadCharacteristic("p must be odd".into()));
    }
    let mut r = q;
    while r > 1 && r.is_multiple_of(p) {
        r /= p;
    }
    if r != 1 || q < p {
        return Err(Error::BadCharacteristic(format!("q = {q} is not a positive power of p = {p}")));
    }
    Ok(field)
}

pub fn expansion_coeffs(p: u64, q: u64, kind: ExpansionKind) -> Result<ExpansionCoeffs> {
    let field = odd_prime_power(p, q)?;
    let e = match kind {
        ExpansionKind::E => q.div_ceil(2),
        ExpansionKind::H => (q - 1) / 2,
    };
    let base = [FpPoly::new(field, vec![1]), FpPoly::new(field, vec![0, p - 2]), FpPoly::new(field, vec![1])];
    let mut acc = vec![FpPoly::new(field, vec![1])];
    for _ in 0..e {
        let mut next = vec![FpPoly::new(field, vec![]); acc.len() + 2];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                next[i + j] = next[i + j].add(&a.mul(b));
            }
        }
        acc = next;
    }
    Ok(ExpansionCoeffs { p, q, kind, coeffs: acc })
}

/// `h_i = P_i` and `e_i = tilde P_i` mod `p` for every `i < q`.
pub fn expansion_congruences(p: u64, q: u64) -> Result<bool> {
    let field = odd_prime_power(p, q)?;
    let h = expansion_coeffs(p, q, ExpansionKind::H)?;
    let e = expansion_coeffs(p, q, ExpansionKind::E)?;
    let legendre = legendre(q as usize);
    let tilde = tilde_legendre(q as usize);
    for i in 0..q as usize {
        if h.coeffs[i] != legendre[i].reduce_mod(field)? || e.coeffs[i] != tilde[i].reduce_mod(field)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The matrices `E = (e_{2+r+c})` of shape `l/2 x (l/2 - 1)` and
/// `H = (h_{r+c})` of shape `(l/2 + 2) x l/2`, `l = (q-1)/2`, evaluated at
/// `t = t_val`.
pub fn syzygy_matrices(p: u64, q: u64, t_val: u64) -> Result<(FpMatrix, FpMatrix)> {
    let field = odd_prime_power(p, q)?;
    if q % 4 != 1 {
        return Err(Error::BadCongruence(q));
    }
    let t = t_val % p;
    if field.mul_raw(t, t) == 1 {
        return Err(Error::BadParameter(format!("t = {t_val} has t^2 = 1 mod {p}")));
    }
    let e = expansion_coeffs(p, q, ExpansionKind::E)?;
    let h = expansion_coeffs(p, q, ExpansionKind::H)?;
    let half = ((q - 1) / 4) as usize;
    let mut em = FpMatrix::zeros(field, half, half - 1);
    for r in 0..half {
        for c in 0..half - 1 {
            em.set(r, c, e.coeffs[2 + r + c].eval(t));
        }
    }
    let mut hm = FpMatrix::zeros(field, half + 2, half);
    for r in 0..half + 2 {
        for c in 0..half {
            hm.set(r, c, h.coeffs[r + c].eval(t));
        }
    }
    Ok((em, hm))
}

/// Whether both `E` and `H` have full column rank at `t = t_val`.
pub fn syzygy_rank_check(p: u64, q: u64, t_val: u64) -> Result<bool> {
    let (e, h) = syzygy_matrices(p, q, t_val)?;
    Ok(e.rank() == e.cols() && h.rank() == h.cols())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn legendre_examples() {
        let p = legendre(10);
        assert_eq!(p[0], RationalPoly::one());
        assert_eq!(p[1], RationalPoly::t());
        assert_eq!(p[2], RationalPoly::new(vec![rat(-1, 2), rat(0, 1), rat(3, 2)]));
        assert!(p.iter().all(RationalPoly::has_dyadic_denominators));
        assert_eq!(p[2].to_string(), "3/2*t^2 - 1/2");
    }

    #[test]
    fn legendre_recurrence_matches_generating_function() {
        assert_eq!(legendre(30), legendre_via_series(30));
    }

    #[test]
    fn tilde_legendre_examples() {
        let tp = tilde_legendre(30);
        assert_eq!(tp[0], RationalPoly::one());
        assert_eq!(tp[1], RationalPoly::from_ints(&[0, -1]));
        assert_eq!(tp[2], RationalPoly::new(vec![rat(1, 2), rat(0, 1), rat(-1, 2)]));
        let p = legendre(30);
        for n in 0..=30 {
            let conv = (0..=n).fold(RationalPoly::zero(), |acc, i| acc.add(&ExactRing::mul(&p[i], &tp[n - i])));
            assert_eq!(conv, if n == 0 { RationalPoly::one() } else { RationalPoly::zero() });
        }
        // its square is 1 - 2tx + x^2
        let sq = series_mul(&tp, &tp, 31);
        assert_eq!(sq, base_series(31));
    }

    #[test]
    fn hankel_examples() {
        let p = legendre(8);
        assert_eq!(hankel_det(&p, 0, 1), RationalPoly::one());
        assert_eq!(hankel_det(&p, 0, 2), RationalPoly::new(vec![rat(-1, 2), rat(0, 1), rat(1, 2)]));
        assert_eq!(hankel_det(&p, 0, 3), t_squared_minus_one().pow(3).scale(&rat(1, 16)));
    }

    #[test]
    fn bareiss_pivots_and_matches_integer_determinants() {
        let c = |v: i64| RationalPoly::from_ints(&[v]);
        let m = vec![vec![c(0), c(2), c(1)], vec![c(1), c(0), c(3)], vec![c(4), c(1), c(0)]];
        // 0*(0-3) - 2*(0-12) + 1*(1-0)
        assert_eq!(bareiss_det(m, RationalPoly::one()), c(25));
        let f = PrimeField::new(7).unwrap();
        let k = |v: u64| FpPoly::new(f, vec![v]);
        let m = vec![vec![k(1), k(2)], vec![k(4), k(1)]];
        assert_eq!(bareiss_det(m, k(1)), k(0));
    }

    #[test]
    fn identities_over_rationals_and_small_primes() {
        for k in 1..=8 {
            assert!(geronimus_check(k, None).unwrap());
            assert!(corollary_check(k, None).unwrap());
            for p in [3, 5, 7, 11] {
                assert!(geronimus_check(k, Some(p)).unwrap());
                assert!(corollary_check(k, Some(p)).unwrap());
            }
        }
        assert_eq!(geronimus_check(3, Some(2)), Err(Error::EvenModulus));
        assert_eq!(corollary_check(3, Some(9)), Err(Error::NotPrime(9)));
    }

    #[test]
    fn integer_path_matches_rational_elimination() {
        let p = legendre(12);
        let tp = tilde_legendre(14);
        for k in 1..=6 {
            assert_eq!(hankel_det_rational(&p, 0, k), hankel_det(&p, 0, k));
            assert_eq!(hankel_det_rational(&tp, 2, k), hankel_det(&tp, 2, k));
            assert_eq!(hankel_det_rational(&tp, 1, k), hankel_det(&tp, 1, k));
        }
        let odd = vec![RationalPoly::from_ints(&[1]), RationalPoly::constant(Rational::new(1.into(), 3.into()))];
        assert_eq!(hankel_det_rational(&odd, 0, 1), RationalPoly::one());
        assert_eq!(dyadic_scale(&odd), None);
    }

    #[test]
    fn corollary_is_shifted_geronimus() {
        // det (tilde P_{2+i+j})_{k} = (-1)^k det (P_{i+j})_{k+1}
        let p = legendre(20);
        let tp = tilde_legendre(20);
        for k in 1..=9 {
            let lhs = hankel_det(&tp, 2, k);
            let rhs = hankel_det(&p, 0, k + 1);
            assert_eq!(lhs, if k % 2 == 0 { rhs } else { rhs.neg() });
        }
    }

    #[test]
    fn expansion_examples() {
        let h = expansion_coeffs(5, 5, ExpansionKind::H).unwrap();
        assert_eq!(h.coeffs.len(), 5);
        assert_eq!(h.coeffs[0], FpPoly::new(PrimeField::new(5).unwrap(), vec![1]));
        let f7 = PrimeField::new(7).unwrap();
        let h7 = expansion_coeffs(7, 7, ExpansionKind::H).unwrap();
        assert_eq!(h7.coeffs[3], legendre(3)[3].reduce_mod(f7).unwrap());
        let e25 = expansion_coeffs(5, 25, ExpansionKind::E).unwrap();
        assert_eq!(e25.coeffs[4], tilde_legendre(4)[4].reduce_mod(PrimeField::new(5).unwrap()).unwrap());
        assert!(matches!(expansion_coeffs(2, 4, ExpansionKind::E), Err(Error::BadCharacteristic(_))));
        assert!(matches!(expansion_coeffs(5, 10, ExpansionKind::E), Err(Error::BadCharacteristic(_))));
    }

    #[test]
    fn congruences() {
        for (p, q) in [(3, 9), (5, 5), (5, 25), (7, 7)] {
            assert!(expansion_congruences(p, q).unwrap(), "p = {p}, q = {q}");
        }
    }

    #[test]
    fn syzygy_examples() {
        let (e, h) = syzygy_matrices(5, 5, 2).unwrap();
        assert_eq!((e.rows(), e.cols(), h.rows(), h.cols()), (1, 0, 3, 1));
        assert!(syzygy_rank_check(5, 5, 2).unwrap());
        assert!(syzygy_rank_check(13, 13, 2).unwrap());
        assert!(matches!(syzygy_rank_check(5, 5, 1), Err(Error::BadParameter(_))));
        assert!(matches!(syzygy_rank_check(5, 5, 4), Err(Error::BadParameter(_))));
        assert_eq!(syzygy_rank_check(7, 7, 2), Err(Error::BadCongruence(7)));
        for (p, q) in [(5, 5), (13, 13), (17, 17), (5, 25)] {
            for t in (0..p).filter(|t| t * t % p != 1) {
                assert!(syzygy_rank_check(p, q, t).unwrap(), "p = {p}, q = {q}, t = {t}");
            }
        }
    }

    #[test]
    fn fp_poly_eval_and_display() {
        let f = PrimeField::new(5).unwrap();
        let poly = FpPoly::new(f, vec![1, 0, 3]);
        assert_eq!(poly.eval(2), 3);
        assert_eq!(poly.to_string(), "3*t^2 + 1");
        assert_eq!(FpPoly::new(f, vec![5]).to_string(), "0");
    }
}
