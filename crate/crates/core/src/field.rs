//! Prime fields `F_p` for word-sized primes, and the quadratic extension
//! `F_p[w]/(w^2 - alpha*w - beta)` used to split tangent quadrics.
//!
//! Hot loops (matrix elimination, polynomial products) work on raw `u64`
//! residues through the `*_raw` helpers on [`PrimeField`]; [`Fp`] is the
//! checked value type used everywhere else.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest accepted modulus (exclusive). Products of two residues fit in `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduces a signed integer into the field.
    pub fn elem(&self, v: i64) -> Fp {
        let r = v.rem_euclid(self.p as i64) as u64;
        Fp { value: r, field: *self }
    }

    pub fn from_u64(&self, v: u64) -> Fp {
        Fp { value: v % self.p, field: *self }
    }

    pub fn zero(&self) -> Fp {
        Fp { value: 0, field: *self }
    }

    pub fn one(&self) -> Fp {
        Fp { value: 1 % self.p, field: *self }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p).map(move |v| Fp { value: v, field: *self })
    }

    #[inline]
    pub fn add_raw(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg_raw(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul_raw(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow_raw(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv_raw(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, (a % self.p) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quo = r0 / r1;
            (r0, r1) = (r1, r0 - quo * r1);
            (t0, t1) = (t1, t0 - quo * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u64)
    }

    /// Euler's criterion. Zero counts as a square.
    pub fn is_square(&self, a: u64) -> bool {
        let a = a % self.p;
        if a == 0 || self.p == 2 {
            return true;
        }
        self.pow_raw(a, (self.p - 1) / 2) == 1
    }

    /// Smallest quadratic non-residue `>= 2`, or `None` for `p = 2`.
    pub fn smallest_nonresidue(&self) -> Option<u64> {
        (2..self.p).find(|&d| !self.is_square(d))
    }

    /// Square root in `F_p` by Tonelli-Shanks.
    pub fn sqrt(&self, a: Fp) -> Option<Fp> {
        assert_eq!(a.field, *self);
        let p = self.p;
        let a = a.value;
        if a == 0 || p == 2 {
            return Some(self.from_u64(a));
        }
        if !self.is_square(a) {
            return None;
        }
        let mut s = 0;
        let mut q = p - 1;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = self.smallest_nonresidue().expect("odd prime has a non-residue");
        let mut m = s;
        let mut c = self.pow_raw(z, q);
        let mut t = self.pow_raw(a, q);
        let mut r = self.pow_raw(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul_raw(tt, tt);
                i += 1;
            }
            let b = self.pow_raw(c, 1 << (m - i - 1));
            m = i;
            c = self.mul_raw(b, b);
            t = self.mul_raw(t, c);
            r = self.mul_raw(r, b);
        }
        Some(self.from_u64(r))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// An element of a prime field, canonical in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    field: PrimeField,
}

impl Fp {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Result<Fp> {
        self.field.inv_raw(self.value).map(|v| Fp { value: v, field: self.field }).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> Fp {
        Fp { value: self.field.pow_raw(self.value, e), field: self.field }
    }

    /// Representative in `(-p/2, p/2]`, for display.
    pub fn signed(&self) -> i64 {
        let p = self.field.p;
        if self.value > p / 2 {
            self.value as i64 - p as i64
        } else {
            self.value as i64
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        assert_eq!(self.field, rhs.field, "mixed fields");
        Fp { value: self.field.add_raw(self.value, rhs.value), field: self.field }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        assert_eq!(self.field, rhs.field, "mixed fields");
        Fp { value: self.field.sub_raw(self.value, rhs.value), field: self.field }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        assert_eq!(self.field, rhs.field, "mixed fields");
        Fp { value: self.field.mul_raw(self.value, rhs.value), field: self.field }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: self.field.neg_raw(self.value), field: self.field }
    }
}

/// `F_p[w]/(w^2 - alpha*w - beta)` with an irreducible defining quadratic.
///
/// For odd `p` this is `w^2 = delta` with `delta` the smallest non-residue;
/// for `p = 2` it is `w^2 = w + 1`, i.e. `F_4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticExtension {
    base: PrimeField,
    alpha: u64,
    beta: u64,
}

impl QuadraticExtension {
    pub fn new(base: PrimeField) -> Self {
        match base.smallest_nonresidue() {
            Some(delta) => QuadraticExtension { base, alpha: 0, beta: delta },
            None => QuadraticExtension { base, alpha: 1, beta: 1 },
        }
    }

    /// `w^2 = delta`; fails unless `delta` is a non-residue of an odd field.
    pub fn with_nonresidue(base: PrimeField, delta: u64) -> Result<Self> {
        if base.p() == 2 || base.is_square(delta) {
            return Err(Error::NotNonResidue(delta % base.p(), base.p()));
        }
        Ok(QuadraticExtension { base, alpha: 0, beta: delta % base.p() })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    /// `(alpha, beta)` with `w^2 = alpha*w + beta`.
    pub fn relation(&self) -> (u64, u64) {
        (self.alpha, self.beta)
    }

    pub fn embed(&self, a: Fp) -> QuadExtElement {
        assert_eq!(a.field(), self.base);
        QuadExtElement { a, b: self.base.zero(), ext: *self }
    }

    pub fn zero(&self) -> QuadExtElement {
        self.embed(self.base.zero())
    }

    pub fn one(&self) -> QuadExtElement {
        self.embed(self.base.one())
    }

    pub fn omega(&self) -> QuadExtElement {
        QuadExtElement { a: self.base.zero(), b: self.base.one(), ext: *self }
    }

    pub fn make(&self, a: Fp, b: Fp) -> QuadExtElement {
        assert_eq!(a.field(), self.base);
        assert_eq!(b.field(), self.base);
        QuadExtElement { a, b, ext: *self }
    }

    /// All `p^2` elements. Intended for tiny fields.
    pub fn elements(&self) -> impl Iterator<Item = QuadExtElement> + '_ {
        let f = self.base;
        (0..f.p()).flat_map(move |a| (0..f.p()).map(move |b| self.make(f.from_u64(a), f.from_u64(b))))
    }

    /// A square root of a base-field element, in the extension. Odd `p` only.
    pub fn sqrt_of_base(&self, x: Fp) -> Option<QuadExtElement> {
        let f = self.base;
        if f.p() == 2 || self.alpha != 0 {
            return f.sqrt(x).map(|r| self.embed(r));
        }
        if let Some(r) = f.sqrt(x) {
            return Some(self.embed(r));
        }
        // x = delta * s^2 for some s, so sqrt(x) = s * w
        let delta_inv = f.from_u64(self.beta).inv().ok()?;
        let s = f.sqrt(x * delta_inv)?;
        Some(self.make(f.zero(), s))
    }

    /// Both roots of `t^2 + b t + c`, repeated if the discriminant vanishes.
    pub fn roots_of_monic_quadratic(&self, b: Fp, c: Fp) -> (QuadExtElement, QuadExtElement) {
        let f = self.base;
        if f.p() == 2 {
            let poly = |t: QuadExtElement| t * t + self.embed(b) * t + self.embed(c);
            let roots: Vec<_> = self.elements().filter(|&t| poly(t).is_zero()).collect();
            return match roots.as_slice() {
                [r] => (*r, *r),
                [r, s] => (*r, *s),
                _ => unreachable!("every quadratic over F_2 splits over F_4"),
            };
        }
        let two_inv = f.elem(2).inv().expect("p odd");
        let disc = b * b - f.elem(4) * c;
        let s = self.sqrt_of_base(disc).expect("extension contains every square root");
        let minus_b = self.embed(-b);
        let half = self.embed(two_inv);
        ((minus_b + s) * half, (minus_b - s) * half)
    }
}

/// `a + b w` in a [`QuadraticExtension`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadExtElement {
    a: Fp,
    b: Fp,
    ext: QuadraticExtension,
}

impl QuadExtElement {
    pub fn parts(&self) -> (Fp, Fp) {
        (self.a, self.b)
    }

    pub fn extension(&self) -> QuadraticExtension {
        self.ext
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `Some(a)` when the element lies in the base field.
    pub fn as_base(&self) -> Option<Fp> {
        self.b.is_zero().then_some(self.a)
    }

    pub fn norm(&self) -> Fp {
        let f = self.ext.base;
        let alpha = f.from_u64(self.ext.alpha);
        let beta = f.from_u64(self.ext.beta);
        self.a * self.a + self.a * self.b * alpha - self.b * self.b * beta
    }

    pub fn inv(&self) -> Result<QuadExtElement> {
        let n_inv = self.norm().inv()?;
        let f = self.ext.base;
        let alpha = f.from_u64(self.ext.alpha);
        // conjugate of w is alpha - w
        let conj_a = self.a + self.b * alpha;
        let conj_b = -self.b;
        Ok(self.ext.make(conj_a * n_inv, conj_b * n_inv))
    }

    pub fn pow(&self, mut e: u64) -> QuadExtElement {
        let mut acc = self.ext.one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for QuadExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

impl Add for QuadExtElement {
    type Output = QuadExtElement;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.ext, rhs.ext, "mixed extensions");
        self.ext.make(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for QuadExtElement {
    type Output = QuadExtElement;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.ext, rhs.ext, "mixed extensions");
        self.ext.make(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for QuadExtElement {
    type Output = QuadExtElement;
    fn neg(self) -> Self {
        self.ext.make(-self.a, -self.b)
    }
}

impl Mul for QuadExtElement {
    type Output = QuadExtElement;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.ext, rhs.ext, "mixed extensions");
        let f = self.ext.base;
        let alpha = f.from_u64(self.ext.alpha);
        let beta = f.from_u64(self.ext.beta);
        let bd = self.b * rhs.b;
        let a = self.a * rhs.a + bd * beta;
        let b = self.a * rhs.b + self.b * rhs.a + bd * alpha;
        self.ext.make(a, b)
    }
}
