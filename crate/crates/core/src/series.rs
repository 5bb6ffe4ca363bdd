//! Exact generating-function arithmetic: the Hilbert series of
//! `S/(x_0^q, ..., x_n^q)`, the universal lower bound `L(q)` with its
//! socle-degree threshold `m(q)`, and the limiting constants `beta_{n+1}`.
//!
//! Everything is computed with arbitrary-precision integers and rationals.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{precondition, Result};

pub type Rational = BigRational;

/// Pascal's triangle, truncated to the columns requested so far.
#[derive(Debug, Default)]
pub struct PascalTable {
    width: usize,
    rows: Vec<Vec<BigInt>>,
}

impl PascalTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `C(n, k)`, zero outside `0 <= k <= n`.
    pub fn binomial(&mut self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        let k = k.min(n - k) as usize;
        let n = n as usize;
        if k >= self.width {
            self.width = (k + 1).max(2 * self.width);
            self.rows.clear();
        }
        while self.rows.len() <= n {
            let r = self.rows.len();
            let len = (r + 1).min(self.width);
            let mut row = Vec::with_capacity(len);
            for j in 0..len {
                if j == 0 || j == r {
                    row.push(BigInt::one());
                } else {
                    let prev = &self.rows[r - 1];
                    let left = &prev[j - 1];
                    let right = prev.get(j).cloned().unwrap_or_else(BigInt::zero);
                    row.push(left + right);
                }
            }
            self.rows.push(row);
        }
        self.rows[n][k].clone()
    }
}

thread_local! {
    static PASCAL: RefCell<PascalTable> = RefCell::new(PascalTable::new());
}

/// `C(n, k)` from the calling thread's Pascal cache.
pub fn binomial(n: i64, k: i64) -> BigInt {
    PASCAL.with(|t| t.borrow_mut().binomial(n, k))
}

/// A power series truncated after degree `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn zero(bound: usize) -> Self {
        IntSeries { coeffs: vec![BigInt::zero(); bound + 1] }
    }

    pub fn one(bound: usize) -> Self {
        Self::from_sparse(bound, &[(0, 1)])
    }

    /// Builds `sum c t^e` from `(e, c)` pairs, dropping terms above the bound.
    pub fn from_sparse(bound: usize, terms: &[(usize, i64)]) -> Self {
        let mut s = Self::zero(bound);
        for &(e, c) in terms {
            if e <= bound {
                s.coeffs[e] += c;
            }
        }
        s
    }

    /// `1 / (1 - t)^k = sum_j C(j + k - 1, k - 1) t^j`.
    pub fn inverse_power_of_one_minus_t(k: u32, bound: usize) -> Self {
        let coeffs = (0..=bound)
            .map(|j| {
                if k == 0 {
                    if j == 0 {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                } else {
                    binomial(j as i64 + k as i64 - 1, k as i64 - 1)
                }
            })
            .collect();
        IntSeries { coeffs }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Truncated product; the bound is the smaller of the two.
    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let bound = self.bound().min(other.bound());
        let mut out = Self::zero(bound);
        for (i, a) in self.coeffs.iter().enumerate().take(bound + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(bound + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> IntSeries {
        let mut acc = Self::one(self.bound());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// `dim Theta_i`: the coefficient of `t^i` in `(1 + t + ... + t^(q-1))^(n+1)`,
/// by inclusion-exclusion over the variables whose exponent reaches `q`.
pub fn theta_dim(n: u32, q: u64, i: i64) -> BigInt {
    let top = (n as i64 + 1) * (q as i64 - 1);
    if i < 0 || i > top {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    for j in 0..=(n as i64 + 1) {
        let rest = i - j * q as i64;
        if rest < 0 {
            break;
        }
        let term = binomial(n as i64 + 1, j) * binomial(rest + n as i64, n as i64);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `m(q) = floor(((n+1)(q-1) + d - 1) / 2)`, the last degree where
/// `dim Theta_i > dim Theta_{i-d}`.
pub fn m_of_q(n: u32, d: u32, q: u64) -> u64 {
    ((n as u64 + 1) * (q.saturating_sub(1)) + d as u64 - 1) / 2
}

/// `L(q)`: coefficient of `t^m(q)` in `(1-t^d)(1-t^q)^(n+1) / (1-t)^(n+2)`.
pub fn lower_bound_l(n: u32, d: u32, q: u64) -> BigInt {
    let m = m_of_q(n, d, q) as usize;
    let one_minus_td = IntSeries::from_sparse(m, &[(0, 1), (d as usize, -1)]);
    let one_minus_tq = IntSeries::from_sparse(m, &[(0, 1), (q as usize, -1)]);
    let numerator = one_minus_td.mul(&one_minus_tq.pow(n + 1));
    let series = numerator.mul(&IntSeries::inverse_power_of_one_minus_t(n + 2, m));
    series.coeff(m).clone()
}

/// `L(q)` as the window sum `sum_{i = m-d+1}^{m} dim Theta_i`.
pub fn lower_bound_window_sum(n: u32, d: u32, q: u64) -> BigInt {
    let m = m_of_q(n, d, q) as i64;
    (m - d as i64 + 1..=m).map(|i| theta_dim(n, q, i)).sum()
}

/// `beta_{n+1} = (1 / (2^n n!)) sum_{i=0}^{floor(n/2)} (-1)^i (n+1-2i)^n C(n+1, i)`.
pub fn beta(n_plus_1: u32) -> Result<Rational> {
    precondition(n_plus_1 >= 1, "beta index must be at least 1")?;
    let n = n_plus_1 - 1;
    let mut sum = BigInt::zero();
    for i in 0..=(n / 2) {
        let base = BigInt::from(n_plus_1 - 2 * i);
        let term = num_traits::pow(base, n as usize) * binomial(n_plus_1 as i64, i as i64);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let factorial: BigInt = (1..=n as u64).map(BigInt::from).product();
    let denom = (BigInt::one() << n as usize) * factorial;
    Ok(Rational::new(sum, denom))
}

/// `|L(q)/q^n - d * beta_{n+1}|`, exactly.
pub fn beta_limit_gap(n: u32, d: u32, q: u64) -> Result<Rational> {
    precondition(n >= 1, "n must be at least 1")?;
    precondition(d >= 2, "d must be at least 2")?;
    precondition(q >= 1, "q must be at least 1")?;
    let l = Rational::from_integer(lower_bound_l(n, d, q));
    let qn = Rational::from_integer(num_traits::pow(BigInt::from(q), n as usize));
    let limit = Rational::from_integer(BigInt::from(d)) * beta(n + 1)?;
    Ok((l / qn - limit).abs())
}

/// Renders a rational as `num/den` (or just `num` for integers).
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(big(n), big(d))
    }

    /// Coefficients of `(1 + ... + t^(q-1))^(n+1)` by repeated convolution.
    fn expand_theta(n: u32, q: u64) -> Vec<i64> {
        let mut acc = vec![1i64];
        for _ in 0..=n {
            let mut next = vec![0i64; acc.len() + q as usize - 1];
            for (i, a) in acc.iter().enumerate() {
                for j in 0..q as usize {
                    next[i + j] += a;
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn pascal_table_matches_products() {
        let mut t = PascalTable::new();
        assert_eq!(t.binomial(5, 2), big(10));
        assert_eq!(t.binomial(40, 3), big(9880));
        // widening after narrow use
        assert_eq!(t.binomial(30, 15), big(155_117_520));
        assert_eq!(t.binomial(3, 5), big(0));
        assert_eq!(t.binomial(-1, 0), big(0));
    }

    #[test]
    fn theta_dim_examples() {
        assert_eq!(theta_dim(2, 2, 1), big(3));
        assert_eq!(theta_dim(2, 3, 3), big(7));
        assert_eq!(theta_dim(2, 5, -1), big(0));
        assert_eq!(theta_dim(2, 5, 13), big(0));
    }

    #[test]
    fn theta_dim_matches_direct_expansion() {
        for n in 0..4 {
            for q in 1..8 {
                let direct = expand_theta(n, q);
                for (i, c) in direct.iter().enumerate() {
                    assert_eq!(theta_dim(n, q, i as i64), big(*c), "n={n} q={q} i={i}");
                }
            }
        }
        // (1 + ... + t^4)^3 at t^6
        assert_eq!(expand_theta(2, 5)[6], 19);
    }

    #[test]
    fn m_of_q_table() {
        assert_eq!(m_of_q(2, 3, 5), 7);
        assert_eq!(m_of_q(3, 3, 4), 7);
        assert_eq!(m_of_q(2, 2, 2), 2);
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound_l(2, 3, 5), big(55));
        assert_eq!(lower_bound_l(2, 3, 4), big(34));
        assert_eq!(lower_bound_l(3, 2, 3), big(35));
    }

    #[test]
    fn beta_values() {
        let expected = [rat(1, 1), rat(1, 1), rat(3, 4), rat(2, 3), rat(115, 192), rat(11, 20)];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(&beta(i as u32 + 1).unwrap(), e);
        }
        assert!(beta(0).is_err());
        for k in 2..12 {
            assert!(beta(k + 1).unwrap() < beta(k).unwrap());
        }
    }

    #[test]
    fn beta_gap_examples() {
        assert_eq!(beta_limit_gap(2, 3, 5).unwrap(), rat(1, 20));
        assert!(beta_limit_gap(2, 3, 1001).unwrap() < rat(1, 100));
        assert!(beta_limit_gap(1, 1, 7).is_err());
    }

    #[test]
    fn beta_gap_is_order_one_over_q() {
        // L(q) is a polynomial in q on each residue class with leading
        // coefficient d*beta, so q * gap stays bounded by the size of the
        // next coefficient; every pair here stays below 2.
        for (n, d) in [(2u32, 3u32), (3, 3), (2, 2), (3, 2)] {
            let mut worst = Rational::zero();
            for q in (10..=1000).step_by(7) {
                let scaled = beta_limit_gap(n, d, q).unwrap() * Rational::from_integer(big(q as i64));
                if scaled > worst {
                    worst = scaled;
                }
            }
            assert!(worst < rat(2, 1), "n={n} d={d} worst={worst}");
        }
    }

    #[test]
    fn series_ops() {
        let a = IntSeries::from_sparse(5, &[(0, 1), (1, 1)]);
        let sq = a.pow(2);
        assert_eq!(sq.coeffs()[..3], [big(1), big(2), big(1)]);
        let inv = IntSeries::inverse_power_of_one_minus_t(1, 5);
        let one_minus_t = IntSeries::from_sparse(5, &[(0, 1), (1, -1)]);
        assert_eq!(inv.mul(&one_minus_t), IntSeries::one(5));
    }

    proptest! {
        #[test]
        fn theta_reciprocal_and_unimodal(n in 1u32..4, q in 1u64..30) {
            let l = (n as i64 + 1) * (q as i64 - 1);
            for i in 0..=l {
                prop_assert_eq!(theta_dim(n, q, i), theta_dim(n, q, l - i));
            }
            for i in 0..l / 2 {
                prop_assert!(theta_dim(n, q, i) < theta_dim(n, q, i + 1));
            }
            let total: BigInt = (0..=l).map(|i| theta_dim(n, q, i)).sum();
            prop_assert_eq!(total, num_traits::pow(BigInt::from(q), n as usize + 1));
        }

        #[test]
        fn lower_bound_routes_agree(n in 1u32..4, d in 1u32..6, q in 1u64..40) {
            prop_assert_eq!(lower_bound_l(n, d, q), lower_bound_window_sum(n, d, q));
        }
    }
}
