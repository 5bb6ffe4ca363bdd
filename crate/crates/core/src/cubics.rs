//! Singular irreducible plane cubics in Weierstrass form
//! `f = z (y^2 + a1 x y - a2 x^2) - x^3`, singular at `[0:0:1]`.
//!
//! The HK value splits as `dim F - dim G + dim D`. Here `F` is the quotient of
//! the normalization `k[s,t]^(3)`, `G` has dimension `q`, and `D` depends only
//! on whether `tau2` vanishes.

use crate::error::{precondition, Error, Result};
use crate::field::{Fp, PrimeField, QuadExtElement, QuadraticExtension};
use crate::matrix::FpMatrix;
use crate::poly::{Monomial, MultiPoly};
use crate::quotient::all_monomials;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularKind {
    Nodal,
    Cuspidal,
}

/// Nodal iff `a1^2 + 4 a2 != 0` in `F_p`.
pub fn classify(a1: Fp, a2: Fp) -> SingularKind {
    let f = a1.field();
    if (a1 * a1 + f.elem(4) * a2).is_zero() {
        SingularKind::Cuspidal
    } else {
        SingularKind::Nodal
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCubic {
    a1: Fp,
    a2: Fp,
    kind: SingularKind,
}

impl WeierstrassCubic {
    pub fn new(a1: i64, a2: i64, p: u64) -> Result<Self> {
        let f = PrimeField::new(p)?;
        Ok(Self::from_coeffs(f.elem(a1), f.elem(a2)))
    }

    pub fn from_coeffs(a1: Fp, a2: Fp) -> Self {
        assert_eq!(a1.field(), a2.field(), "coefficients from different fields");
        WeierstrassCubic { a1, a2, kind: classify(a1, a2) }
    }

    pub fn a1(&self) -> Fp {
        self.a1
    }

    pub fn a2(&self) -> Fp {
        self.a2
    }

    pub fn field(&self) -> PrimeField {
        self.a1.field()
    }

    pub fn kind(&self) -> SingularKind {
        self.kind
    }

    pub fn is_nodal(&self) -> bool {
        self.kind == SingularKind::Nodal
    }

    /// The equation in `x, y, z`.
    pub fn polynomial(&self) -> MultiPoly {
        let f = self.field();
        MultiPoly::from_terms(
            f,
            3,
            [
                (vec![0, 2, 1], 1),
                (vec![1, 1, 1], self.a1.signed()),
                (vec![2, 0, 1], -self.a2.signed()),
                (vec![3, 0, 0], -1),
            ],
        )
    }

    /// The tangent quadric `Q(s,t) = t^2 + a1 s t - a2 s^2` in `s, t`.
    pub fn quadric(&self) -> MultiPoly {
        MultiPoly::from_terms(
            self.field(),
            2,
            [(vec![0, 2], 1), (vec![1, 1], self.a1.signed()), (vec![2, 0], -self.a2.signed())],
        )
    }

    /// The same curve in the coordinates `(x, y + alpha x, z)`, again in
    /// Weierstrass form.
    pub fn shift_y(&self, alpha: Fp) -> WeierstrassCubic {
        let two = self.field().elem(2);
        WeierstrassCubic::from_coeffs(self.a1 + two * alpha, self.a2 - alpha * alpha - self.a1 * alpha)
    }
}

/// `Q(s,t) = (t - u s)(t - v s)`, so `u + v = -a1` and `u v = -a2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadricRoots {
    pub u: QuadExtElement,
    pub v: QuadExtElement,
}

impl QuadricRoots {
    /// Coefficients `(a1, a2)` recovered from the factorization.
    pub fn reexpand(&self) -> (QuadExtElement, QuadExtElement) {
        (-(self.u + self.v), -(self.u * self.v))
    }
}

pub fn split_roots(cubic: &WeierstrassCubic) -> QuadricRoots {
    let ext = QuadraticExtension::new(cubic.field());
    // u is a root of u^2 + a1 u - a2
    let (u, v) = ext.roots_of_monic_quadratic(cubic.a1, -cubic.a2);
    QuadricRoots { u, v }
}

/// `tau1 = -uv sum_{i<=q-2} u^(q-2-i) v^i`, `tau2 = sum_{i<=q-1} u^(q-1-i) v^i`.
pub fn tau(u: QuadExtElement, v: QuadExtElement, q: u64) -> (QuadExtElement, QuadExtElement) {
    let ext = u.extension();
    // h(m) = sum_{i<=m} u^(m-i) v^i, built by h(m) = u h(m-1) + v^m
    let mut h_prev = ext.zero();
    let mut h = ext.zero();
    let mut v_pow = ext.one();
    for _ in 0..q {
        h_prev = h;
        h = u * h + v_pow;
        v_pow = v_pow * v;
    }
    let tau1 = if q >= 2 { -(u * v) * h_prev } else { ext.zero() };
    (tau1, h)
}

/// `(epsilon, eta, zeta)` in `{0,1,2}` making `q-3+eps`, `q-2+eta` and
/// `2q-2+zeta` divisible by 3.
pub fn residue_offsets(q: u64) -> (u64, u64, u64) {
    let r = (q % 3) as i64;
    let m = |x: i64| x.rem_euclid(3) as u64;
    (m(-r), m(2 - r), m(2 - 2 * r))
}

pub fn dim_d(tau2_is_zero: bool, q: u64) -> Result<u64> {
    precondition(q >= 2, "dim D needs q >= 2")?;
    let (eps, eta, zeta) = residue_offsets(q);
    if tau2_is_zero {
        return Ok((3 * q + eta + zeta - 4) / 3);
    }
    let d = (2 * q + eps + eta - 5) / 3;
    let simplified = if q.is_multiple_of(3) { 2 * q / 3 - 1 } else { 2 * (q / 3) };
    assert_eq!(d, simplified, "dim D disagrees with its mod-3 simplification at q = {q}");
    Ok(d)
}

pub fn dim_f(q: u64) -> u64 {
    if q.is_multiple_of(3) {
        7 * q * q / 3
    } else {
        (7 * q * q - 1) / 3
    }
}

/// `dim F` summed from the graded free resolution of
/// `M = k[s,t]/(s^q Q^q, t^q Q^q, s^3q)`, whose shifts do not depend on `Q`.
pub fn dim_f_direct(q: u64) -> u64 {
    let p = |j: i64| (j + 1).max(0);
    let q = q as i64;
    let total: i64 =
        (0..=2 * q + 1).map(|i| p(3 * i) - 3 * p(3 * i - 3 * q) + p(3 * i - 4 * q) + p(3 * i - 5 * q)).sum();
    total as u64
}

/// `sum_i dim M_{3i}` by linear algebra on monomials of `k[s,t]`.
pub fn dim_f_monomial(cubic: &WeierstrassCubic, q: u64) -> u64 {
    let field = cubic.field();
    let qq = cubic.quadric().pow(q as u32);
    let s_pow = |e: u32| Monomial::new(vec![e, 0]);
    let t_pow = |e: u32| Monomial::new(vec![0, e]);
    let generators = [qq.mul_monomial(&s_pow(q as u32)), qq.mul_monomial(&t_pow(q as u32)), {
        let mut g = MultiPoly::zero(field, 2);
        g.add_term(s_pow(3 * q as u32), field.one());
        g
    }];
    let mut total = 0;
    // M vanishes from degree 5q - 1 on
    for i in 0..=(5 * q / 3 + 1) as i64 {
        let j = 3 * i;
        let rows: Vec<MultiPoly> = all_monomials(2, j - 3 * q as i64)
            .iter()
            .flat_map(|m| generators.iter().map(move |g| g.mul_monomial(m)))
            .collect();
        total += j as u64 + 1 - degree_span_rank(field, &rows, j) as u64;
    }
    total
}

/// Rank of binary forms of degree `j`, columns indexed by the exponent of `t`.
fn degree_span_rank(field: PrimeField, forms: &[MultiPoly], j: i64) -> usize {
    if forms.is_empty() {
        return 0;
    }
    let mut m = FpMatrix::zeros(field, forms.len(), j as usize + 1);
    for (r, g) in forms.iter().enumerate() {
        for (mono, c) in g.terms() {
            m.add_to(r, mono.exps()[1] as usize, c.value());
        }
    }
    m.rank()
}

/// Dimensions of `R_i = (S/f)_i` (as the image of `S_i` under
/// `x, y, z -> sQ, tQ, s^3`) and of `k[s,t]_{3i}`.
pub fn normalization_slice(cubic: &WeierstrassCubic, i: u32) -> (usize, usize) {
    let field = cubic.field();
    let q = cubic.quadric();
    let images = [
        q.mul_monomial(&Monomial::new(vec![1, 0])),
        q.mul_monomial(&Monomial::new(vec![0, 1])),
        MultiPoly::from_terms(field, 2, [(vec![3, 0], 1)]),
    ];
    let forms: Vec<MultiPoly> = all_monomials(3, i as i64)
        .iter()
        .map(|m| {
            m.exps()
                .iter()
                .zip(&images)
                .fold(MultiPoly::constant(field, 2, field.one()), |acc, (&e, img)| acc.mul(&img.pow(e)))
        })
        .collect();
    let j = 3 * i as i64;
    (degree_span_rank(field, &forms, j), j as usize + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalDecomposition {
    pub q: u64,
    pub tau1: QuadExtElement,
    pub tau2: QuadExtElement,
    pub dim_f: u64,
    pub dim_g: u64,
    pub dim_d: u64,
    pub hk_assembled: u64,
    pub epsilon: u64,
    pub eta: u64,
    pub zeta: u64,
}

pub fn hk_singular_assembled(cubic: &WeierstrassCubic, q: u64) -> Result<NodalDecomposition> {
    precondition(q >= 2, "the assembly needs q >= 2")?;
    let roots = split_roots(cubic);
    let (tau1, tau2) = tau(roots.u, roots.v, q);
    let (epsilon, eta, zeta) = residue_offsets(q);
    let f = dim_f(q);
    let d = dim_d(tau2.is_zero(), q)?;
    Ok(NodalDecomposition { q, tau1, tau2, dim_f: f, dim_g: q, dim_d: d, hk_assembled: f - q + d, epsilon, eta, zeta })
}

/// Whether `u^q = v^q` for the distinct roots, i.e. `tau2 = 0` and the value
/// at `q` jumps to the cuspidal one.
pub fn tau2_jump_probe(cubic: &WeierstrassCubic, q: u64) -> Result<bool> {
    if !cubic.is_nodal() {
        return Err(Error::CuspidalInput);
    }
    let r = split_roots(cubic);
    Ok(r.u.pow(q) == r.v.pow(q))
}
