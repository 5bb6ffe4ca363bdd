//! Multivariate polynomials over a prime field, with a small parser for the
//! `c*x^2*y - 3*z^3` syntax used on the command line.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};

/// Exponent vector with cached total degree.
///
/// Ordering is graded lexicographic with `x_0 > x_1 > ...`: the derived
/// `Ord` compares `degree` first and then the exponents left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { degree, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exps: vec![0; nvars] }
    }

    /// `x_var^power`.
    pub fn var_power(nvars: usize, var: usize, power: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = power;
        Monomial { degree: power, exps }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// True if some exponent is at least `q`, i.e. the monomial lies in `x^[q]`.
    pub fn in_frobenius_power(&self, q: u64) -> bool {
        self.exps.iter().any(|&e| e as u64 >= q)
    }
}

/// A polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, Fp>,
}

impl MultiPoly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        MultiPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: Fp) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(field: PrimeField, nvars: usize, var: usize) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::var_power(nvars, var, 1), field.one());
        p
    }

    /// Builds a polynomial from `(exponents, integer coefficient)` pairs.
    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, i64)>,
    {
        let mut p = Self::zero(field, nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector length");
            p.add_term(Monomial::new(exps), field.elem(c));
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Fp)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coeff(&self, m: &Monomial) -> Fp {
        self.terms.get(m).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: Fp) {
        assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Largest total degree among the terms, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The common degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(self.total_degree().expect("nonzero"))
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: Fp) -> MultiPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (m, v) in self.terms() {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.scale(-self.field.one()))
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut acc: BTreeMap<Monomial, u64> = BTreeMap::new();
        let f = self.field;
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let e = acc.entry(a.mul(b)).or_insert(0);
                *e = f.add_raw(*e, f.mul_raw(ca.value(), cb.value()));
            }
        }
        let terms = acc.into_iter().filter(|(_, v)| *v != 0).map(|(m, v)| (m, f.from_u64(v))).collect();
        MultiPoly { field: f, nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        let terms = self.terms.iter().map(|(k, c)| (k.mul(m), *c)).collect();
        MultiPoly { field: self.field, nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::constant(self.field, self.nvars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `x_i -> sum_j matrix[i][j] x_j`.
    pub fn linear_substitution(&self, matrix: &[Vec<Fp>]) -> MultiPoly {
        assert_eq!(matrix.len(), self.nvars);
        let images: Vec<MultiPoly> = matrix
            .iter()
            .map(|row| {
                let mut img = Self::zero(self.field, self.nvars);
                for (j, c) in row.iter().enumerate() {
                    img.add_term(Monomial::var_power(self.nvars, j, 1), *c);
                }
                img
            })
            .collect();
        let mut out = Self::zero(self.field, self.nvars);
        for (m, c) in self.terms() {
            let mut term = Self::constant(self.field, self.nvars, c);
            for (img, &e) in images.iter().zip(m.exps()) {
                term = term.mul(&img.pow(e));
            }
            out = out.add(&term);
        }
        out
    }

    /// Parses `c*v1^e1*...*vk^ek` sums over the given variable names.
    /// Integer coefficients are reduced mod `p`.
    pub fn parse(src: &str, vars: &[&str], field: PrimeField) -> Result<MultiPoly> {
        Parser { src: src.as_bytes(), pos: 0, vars, field }.parse()
    }

    pub fn display_with<'a>(&'a self, vars: &'a [&'a str]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, vars }
    }
}

struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    vars: &'a [&'a str],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let s = c.signed();
            let mag = s.unsigned_abs();
            if idx == 0 {
                if s < 0 {
                    write!(f, "-")?;
                }
            } else if s < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if mag != 1 || m.degree() == 0 {
                factors.push(mag.to_string());
            }
            for (v, &e) in m.exps().iter().enumerate() {
                let name = self.vars.get(v).copied().map(str::to_owned).unwrap_or(format!("x{v}"));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay { poly: self, vars: &[] }.fmt(f)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
    field: PrimeField,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_owned() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<MultiPoly> {
        let nvars = self.vars.len();
        let mut poly = MultiPoly::zero(self.field, nvars);
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut first = true;
        loop {
            let mut sign = self.field.one();
            match self.peek() {
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(_) => return self.err("expected '+' or '-'"),
                None => break,
            }
            first = false;
            let (m, c) = self.term()?;
            poly.add_term(m, sign * c);
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Monomial, Fp)> {
        let nvars = self.vars.len();
        let mut exps = vec![0u32; nvars];
        let mut coeff = self.field.one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff = coeff * self.integer_mod_p(),
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let v = self.variable()?;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        match self.peek() {
                            Some(c) if c.is_ascii_digit() => self.exponent()?,
                            _ => return self.err("expected exponent after '^'"),
                        }
                    } else {
                        1
                    };
                    exps[v] = exps[v]
                        .checked_add(e)
                        .ok_or(Error::Parse { pos: self.pos, msg: "exponent overflow".into() })?;
                }
                _ => return self.err("expected coefficient or variable"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn integer_mod_p(&mut self) -> Fp {
        let p = self.field.p();
        let mut acc = 0u64;
        while let Some(c) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            acc = (acc * 10 + (c - b'0') as u64) % p;
            self.pos += 1;
        }
        self.field.from_u64(acc)
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "exponent out of range".into() })
    }

    fn variable(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match self.vars.iter().position(|v| *v == name) {
            Some(i) => Ok(i),
            None => Err(Error::Parse { pos: start, msg: format!("unknown variable '{name}'") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    const XYZ: &[&str] = &["x", "y", "z"];

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![2, 0, 0]);
        let b = Monomial::new(vec![1, 1, 0]);
        let c = Monomial::new(vec![0, 0, 3]);
        let d = Monomial::new(vec![0, 0, 1]);
        assert!(a > b);
        assert!(c > a, "higher degree dominates");
        assert!(d < b);
    }

    #[test]
    fn parse_weierstrass() {
        let p = MultiPoly::parse("y^2*z - x^3 - x*z^2", XYZ, f(5)).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.homogeneous_degree().unwrap(), 3);
        assert_eq!(p.coeff(&Monomial::new(vec![3, 0, 0])), f(5).elem(-1));
        assert_eq!(p.coeff(&Monomial::new(vec![0, 2, 1])), f(5).one());
    }

    #[test]
    fn parse_coefficients_reduce_mod_p() {
        let p = MultiPoly::parse("7*x*y + 3*x*y", XYZ, f(5)).unwrap();
        assert!(p.is_zero());
        let q = MultiPoly::parse("123456789012345678901234567890*x", XYZ, f(7)).unwrap();
        // 123456789012345678901234567890 mod 7
        let expected = "123456789012345678901234567890".bytes().fold(0u64, |acc, c| (acc * 10 + (c - b'0') as u64) % 7);
        assert_eq!(q.coeff(&Monomial::new(vec![1, 0, 0])).value(), expected);
        let r = MultiPoly::parse("-x^2 + 2 * y * 3 * y", XYZ, f(11)).unwrap();
        assert_eq!(r.coeff(&Monomial::new(vec![0, 2, 0])).value(), 6);
        assert_eq!(r.coeff(&Monomial::new(vec![2, 0, 0])).value(), 10);
    }

    #[test]
    fn parse_errors() {
        for bad in ["x^", "", "x + ", "x y", "w^2", "x*", "x^^2", "3 + * x"] {
            assert!(matches!(MultiPoly::parse(bad, XYZ, f(5)), Err(Error::Parse { .. })), "{bad:?} should fail");
        }
    }

    #[test]
    fn homogeneity() {
        let p = MultiPoly::parse("x^2 + y", XYZ, f(5)).unwrap();
        assert_eq!(p.homogeneous_degree(), Err(Error::NotHomogeneous));
        let z = MultiPoly::zero(f(5), 3);
        assert_eq!(z.homogeneous_degree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn display_roundtrips_through_parser() {
        let src = "x*y*z + x*y*w + x*z*w + y*z*w";
        let vars = ["x", "y", "z", "w"];
        let p = MultiPoly::parse(src, &vars, f(3)).unwrap();
        let shown = p.display_with(&vars).to_string();
        assert_eq!(MultiPoly::parse(&shown, &vars, f(3)).unwrap(), p);
        let q = MultiPoly::parse("2*x^3 - y^2*z", XYZ, f(7)).unwrap();
        let shown = q.display_with(XYZ).to_string();
        assert_eq!(shown, "2*x^3 - y^2*z");
    }

    #[test]
    fn substitution_and_arithmetic() {
        let field = f(5);
        let p = MultiPoly::parse("x^2 - y*z", XYZ, field).unwrap();
        let id: Vec<Vec<Fp>> = (0..3).map(|i| (0..3).map(|j| field.elem((i == j) as i64)).collect()).collect();
        assert_eq!(p.linear_substitution(&id), p);
        // swap x and y
        let mut swap = id.clone();
        swap.swap(0, 1);
        let s = p.linear_substitution(&swap);
        assert_eq!(s, MultiPoly::parse("y^2 - x*z", XYZ, field).unwrap());
        let sq = MultiPoly::parse("x + y", XYZ, field).unwrap().pow(5);
        // Frobenius: (x + y)^5 = x^5 + y^5 in characteristic 5
        assert_eq!(sq, MultiPoly::parse("x^5 + y^5", XYZ, field).unwrap());
        assert!(p.sub(&p).is_zero());
    }
}
