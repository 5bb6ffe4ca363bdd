//! The quotient engine: per-degree dimensions of
//! `theta = S/(f, x_0^q, ..., x_n^q)` for a homogeneous form `f`, and the
//! invariants read off from them (socle degree `a(q)`, initial degree of the
//! annihilator `iota(q)`, maximal rank).
//!
//! Writing `Theta = S/x^[q]`, multiplication by `f` gives a graded map
//! `Theta(-d) -> Theta` with cokernel `theta` and kernel the annihilator
//! module. So everything follows from the ranks `r_i` of
//! `f : Theta_{i-d} -> Theta_i`:
//!
//! * `dim theta_i = dim Theta_i - r_i`
//! * `dim ker(f | Theta_j) = dim Theta_j - r_{j+d}`
//!
//! Two independent routes produce the ranks:
//!
//! * [`RankStrategy::Direct`] builds the multiplication matrices in the
//!   monomial bases of `Theta` and row-reduces them.
//! * [`RankStrategy::Normalized`] applies when `f` contains a pure power
//!   `c x_k^d`. Then `S/(f)` is free over the remaining variables with basis
//!   `1, x_k, ..., x_k^(d-1)`, so `B = S/(f, x_j^q : j != k)` is a free
//!   `A = k[x_j : j != k]/(x_j^q)`-module of rank `d`, and
//!   `theta = B / x_k^q B`. The matrices of `x_k^q` on `B` have at most
//!   `d * max_m dim A_m` rows, far smaller than `dim Theta_i` in the middle
//!   degrees.
//!
//! [`brute_force_colength`] is a third, definition-level route used as an
//! oracle in tests.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::error::{precondition, Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::field::PrimeField;
use crate::matrix::FpMatrix;
use crate::poly::{Monomial, MultiPoly};
use crate::series::{lower_bound_l, m_of_q};

/// Guard for [`brute_force_colength`]: `q^(n+1)` may not exceed this.
pub const BRUTE_FORCE_LIMIT: u128 = 100_000;

/// Monomials of the given degree in `nvars` variables with every exponent
/// `< q`, in increasing graded-lex order. Empty for negative degrees.
pub fn bounded_monomials(nvars: usize, q: u64, degree: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if degree < 0 || q == 0 {
        return out;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut prefix = Vec::with_capacity(nvars);
    fill_bounded(nvars, q - 1, degree as u64, &mut prefix, &mut out);
    out
}

fn fill_bounded(nvars: usize, max_e: u64, remaining: u64, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    let left_after = (nvars - prefix.len() - 1) as u64;
    if left_after == 0 {
        if remaining <= max_e {
            prefix.push(remaining as u32);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
        }
        return;
    }
    let lo = remaining.saturating_sub(left_after * max_e);
    let hi = remaining.min(max_e);
    for e in lo..=hi {
        prefix.push(e as u32);
        fill_bounded(nvars, max_e, remaining - e, prefix, out);
        prefix.pop();
    }
}

/// All monomials of the given degree in `nvars` variables.
pub fn all_monomials(nvars: usize, degree: i64) -> Vec<Monomial> {
    bounded_monomials(nvars, degree.max(0) as u64 + 1, degree)
}

/// Ordered monomial basis of `Theta_i` with a reverse index.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    degree: i64,
    monomials: Vec<Monomial>,
    index: HashMap<Vec<u32>, usize>,
}

impl SliceBasis {
    pub fn new(nvars: usize, q: u64, degree: i64) -> Self {
        let monomials = bounded_monomials(nvars, q, degree);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.exps().to_vec(), i)).collect();
        SliceBasis { degree, monomials, index }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }
}

/// Basis of `Theta_i` for `Theta = k[x_0..x_n]/(x_0^q, ..., x_n^q)`.
pub fn slice_basis(n: u32, q: u64, i: i64) -> SliceBasis {
    SliceBasis::new(n as usize + 1, q, i)
}

/// Matrix of multiplication by `f` from `Theta_{i-d}` to `Theta_i`
/// (rows indexed by the target basis, columns by the source basis).
pub fn mult_matrix(f: &MultiPoly, q: u64, i: i64) -> Result<FpMatrix> {
    let d = f.homogeneous_degree()? as i64;
    let nvars = f.nvars();
    let target = SliceBasis::new(nvars, q, i);
    let source = SliceBasis::new(nvars, q, i - d);
    Ok(mult_matrix_in(f, q, &source, &target))
}

fn mult_matrix_in(f: &MultiPoly, q: u64, source: &SliceBasis, target: &SliceBasis) -> FpMatrix {
    let mut m = FpMatrix::zeros(f.field(), target.len(), source.len());
    for (col, mono) in source.monomials().iter().enumerate() {
        for (t, c) in f.terms() {
            let prod = t.mul(mono);
            if prod.in_frobenius_power(q) {
                continue;
            }
            let row = target.position(prod.exps()).expect("product lands in the target slice");
            m.add_to(row, col, c.value());
        }
    }
    m
}

/// `f` lies in `(x_0^q, ..., x_n^q)` iff each of its monomials does.
pub fn is_in_frobenius_power(f: &MultiPoly, q: u64) -> bool {
    f.terms().all(|(m, _)| m.in_frobenius_power(q))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RankStrategy {
    /// `Normalized` when `f` has a pure-power term, otherwise `Direct`.
    #[default]
    Auto,
    Direct,
    Normalized,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineOptions {
    pub strategy: RankStrategy,
    pub execution: Execution,
}

impl EngineOptions {
    pub fn new(strategy: RankStrategy, execution: Execution) -> Self {
        EngineOptions { strategy, execution }
    }
}

/// Everything the engine learns about `f` at one `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HKProfile {
    pub n: u32,
    pub d: u32,
    pub q: u64,
    /// `dim theta_i` for `i = 0 ..= (n+1)(q-1)`.
    pub theta_quotient_dims: Vec<u64>,
    /// Rank of `f : Theta_{i-d} -> Theta_i`, same indexing.
    pub ranks: Vec<u64>,
    /// `dim ker(f | Theta_i)`, same indexing.
    pub kernel_dims: Vec<u64>,
    pub hk_value: u64,
    pub a_q: u64,
    pub iota_q: u64,
    /// Set when no degree with a nonzero kernel exists and `iota_q` was
    /// filled in from duality instead.
    pub iota_from_duality: bool,
    pub m_q: u64,
    pub l_q: u64,
    pub maximal_rank: bool,
    pub strategy: RankStrategy,
}

impl HKProfile {
    /// `(n+1)(q-1)`, the socle degree of `Theta`.
    pub fn top_degree(&self) -> u64 {
        (self.n as u64 + 1) * (self.q - 1)
    }

    pub fn theta_dim(&self, i: u64) -> u64 {
        self.theta_quotient_dims.get(i as usize).copied().unwrap_or(0)
    }
}

pub fn hk_profile(f: &MultiPoly, q: u64) -> Result<HKProfile> {
    hk_profile_with(f, q, &EngineOptions::default())
}

pub fn hk_profile_with(f: &MultiPoly, q: u64, opts: &EngineOptions) -> Result<HKProfile> {
    let d = f.homogeneous_degree()?;
    precondition(d >= 1, "f must have positive degree")?;
    precondition(q >= 1, "q must be at least 1")?;
    precondition(f.nvars() >= 1, "need at least one variable")?;
    let nvars = f.nvars();
    let n = nvars as u32 - 1;
    let top = nvars as u64 * (q - 1);
    let theta_dims: Vec<u64> = (0..=top).map(|i| theta_dim_u64(nvars, q, i)).collect();

    let pivot = pure_power_variable(f, d);
    let strategy = match (opts.strategy, pivot) {
        (RankStrategy::Auto, Some(_)) | (RankStrategy::Normalized, Some(_)) => RankStrategy::Normalized,
        (RankStrategy::Auto, None) | (RankStrategy::Direct, _) => RankStrategy::Direct,
        (RankStrategy::Normalized, None) => {
            return Err(Error::PreconditionViolated("normalized route needs a pure power x_k^d in f".into()))
        }
    };

    let degrees: Vec<u64> = (0..=top).collect();
    let quotient_dims: Vec<u64> = match strategy {
        RankStrategy::Normalized => {
            let pres = NormalizedPresentation::new(f, d, q, pivot.expect("checked"));
            map_ordered(opts.execution, degrees, |i| pres.quotient_dim(i as i64))
        }
        _ => map_ordered(opts.execution, degrees, |i| {
            let target = SliceBasis::new(nvars, q, i as i64);
            let source = SliceBasis::new(nvars, q, i as i64 - d as i64);
            if target.is_empty() || source.is_empty() {
                return target.len() as u64;
            }
            (target.len() - mult_matrix_in(f, q, &source, &target).rank()) as u64
        }),
    };

    let ranks: Vec<u64> = theta_dims.iter().zip(&quotient_dims).map(|(t, th)| t - th).collect();
    let rank_at = |i: u64| ranks.get(i as usize).copied().unwrap_or(0);
    let kernel_dims: Vec<u64> = (0..=top).map(|j| theta_dims[j as usize] - rank_at(j + d as u64)).collect();

    let hk_value = quotient_dims.iter().sum();
    let a_q = quotient_dims.iter().rposition(|&v| v > 0).expect("theta_0 = k") as u64;
    let (iota_q, iota_from_duality) = match kernel_dims.iter().position(|&v| v > 0) {
        Some(j) => (j as u64, false),
        None => (top - a_q, true),
    };
    let m_q = m_of_q(n, d, q);
    let l_q = lower_bound_l(n, d, q).to_u64().expect("L(q) fits in u64");
    let twice_mid = top + d as u64;
    let maximal_rank = 2 * a_q < twice_mid && twice_mid < 2 * (iota_q + d as u64);

    Ok(HKProfile {
        n,
        d,
        q,
        theta_quotient_dims: quotient_dims,
        ranks,
        kernel_dims,
        hk_value,
        a_q,
        iota_q,
        iota_from_duality,
        m_q,
        l_q,
        maximal_rank,
        strategy,
    })
}

fn theta_dim_u64(nvars: usize, q: u64, i: u64) -> u64 {
    crate::series::theta_dim(nvars as u32 - 1, q, i as i64).to_u64().expect("slice dimension fits in u64")
}

/// First variable `x_k` whose pure power `x_k^d` occurs in `f`.
pub fn pure_power_variable(f: &MultiPoly, d: u32) -> Option<usize> {
    (0..f.nvars()).find(|&k| !f.coeff(&Monomial::var_power(f.nvars(), k, d)).is_zero())
}

/// Sparse element of `A = k[others]/(x_j^q)`, keyed by exponent vectors.
type AElem = HashMap<Vec<u32>, u64>;

/// `B = S/(f, x_j^q : j != pivot)` as the free `A`-module on
/// `1, x_pivot, ..., x_pivot^(d-1)`, together with `x_pivot^(q+j)` for
/// `j < d` written in that basis.
struct NormalizedPresentation {
    field: PrimeField,
    others: usize,
    d: usize,
    q: u64,
    /// `high_powers[j][l]` is the coefficient of `x_pivot^l` in `x_pivot^(q+j)`.
    high_powers: Vec<Vec<AElem>>,
}

impl NormalizedPresentation {
    fn new(f: &MultiPoly, d: u32, q: u64, pivot: usize) -> Self {
        let field = f.field();
        let d = d as usize;
        let others = f.nvars() - 1;
        let lead = f.coeff(&Monomial::var_power(f.nvars(), pivot, d as u32));
        let scale = -lead.inv().expect("pure power coefficient is nonzero");
        let strip = |m: &Monomial| -> Vec<u32> {
            m.exps().iter().enumerate().filter(|(v, _)| *v != pivot).map(|(_, &e)| e).collect()
        };
        // x_pivot^d = sum_{j<d} x_pivot^j * tail[j] in B
        let mut tail: Vec<AElem> = vec![AElem::new(); d];
        for (m, c) in f.terms() {
            let j = m.exps()[pivot] as usize;
            if j == d {
                continue;
            }
            let key = strip(m);
            if key.iter().any(|&e| e as u64 >= q) {
                continue;
            }
            tail[j].insert(key, (c * scale).value());
        }

        let mul = |a: &AElem, b: &AElem| -> AElem {
            let mut out = AElem::new();
            for (ka, &ca) in a {
                for (kb, &cb) in b {
                    let key: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                    if key.iter().any(|&e| e as u64 >= q) {
                        continue;
                    }
                    let e = out.entry(key).or_insert(0);
                    *e = field.add_raw(*e, field.mul_raw(ca, cb));
                }
            }
            out.retain(|_, v| *v != 0);
            out
        };
        let add = |a: &mut AElem, b: AElem| {
            for (k, v) in b {
                let e = a.entry(k).or_insert(0);
                *e = field.add_raw(*e, v);
            }
            a.retain(|_, v| *v != 0);
        };

        let mut current: Vec<AElem> = vec![AElem::new(); d];
        current[0].insert(vec![0; others], 1 % field.p());
        let mut high_powers = Vec::with_capacity(d);
        for m in 0..(q as usize + d) {
            if m >= q as usize {
                high_powers.push(current.clone());
            }
            // multiply by x_pivot
            let overflow = current.pop().expect("d >= 1");
            current.insert(0, AElem::new());
            if !overflow.is_empty() {
                for (j, t) in tail.iter().enumerate() {
                    add(&mut current[j], mul(&overflow, t));
                }
            }
        }
        NormalizedPresentation { field, others, d, q, high_powers }
    }

    /// `dim theta_i = dim B_i - rank(x_pivot^q : B_{i-q} -> B_i)`.
    fn quotient_dim(&self, i: i64) -> u64 {
        let q = self.q;
        let rows: Vec<SliceBasis> = (0..self.d).map(|l| SliceBasis::new(self.others, q, i - l as i64)).collect();
        let offsets: Vec<usize> = rows
            .iter()
            .scan(0, |acc, b| {
                let o = *acc;
                *acc += b.len();
                Some(o)
            })
            .collect();
        let n_rows: usize = rows.iter().map(SliceBasis::len).sum();
        let cols: Vec<Vec<Monomial>> =
            (0..self.d).map(|j| bounded_monomials(self.others, q, i - q as i64 - j as i64)).collect();
        let n_cols: usize = cols.iter().map(Vec::len).sum();
        if n_rows == 0 || n_cols == 0 {
            return n_rows as u64;
        }
        let mut mat = FpMatrix::zeros(self.field, n_rows, n_cols);
        let mut col = 0;
        for (j, monos) in cols.iter().enumerate() {
            for mu in monos {
                for (l, coeff) in self.high_powers[j].iter().enumerate() {
                    for (key, &c) in coeff {
                        let prod: Vec<u32> = key.iter().zip(mu.exps()).map(|(a, b)| a + b).collect();
                        if prod.iter().any(|&e| e as u64 >= q) {
                            continue;
                        }
                        let row = rows[l].position(&prod).expect("degree bookkeeping");
                        mat.add_to(offsets[l] + row, col, c);
                    }
                }
                col += 1;
            }
        }
        (n_rows - mat.rank()) as u64
    }
}

/// Row-echelon accumulator over sparse rows `(column, value)`.
struct SparseEchelon {
    field: PrimeField,
    pivots: HashMap<usize, Vec<(usize, u64)>>,
}

impl SparseEchelon {
    fn new(field: PrimeField) -> Self {
        SparseEchelon { field, pivots: HashMap::new() }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns whether it increased the rank.
    fn insert(&mut self, mut row: Vec<(usize, u64)>) -> bool {
        let f = self.field;
        row.sort_unstable_by_key(|e| e.0);
        row = combine(f, row);
        let mut idx = 0;
        while idx < row.len() {
            let (c, v) = row[idx];
            match self.pivots.get(&c) {
                Some(prow) => row = axpy(f, &row, prow, f.neg_raw(v)),
                None => idx += 1,
            }
        }
        let Some(&(lead, lv)) = row.first() else {
            return false;
        };
        let inv = f.inv_raw(lv).expect("nonzero");
        for e in row.iter_mut() {
            e.1 = f.mul_raw(e.1, inv);
        }
        self.pivots.insert(lead, row);
        true
    }
}

fn combine(f: PrimeField, row: Vec<(usize, u64)>) -> Vec<(usize, u64)> {
    let mut out: Vec<(usize, u64)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = f.add_raw(last.1, v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// `a + s * b` for sorted sparse rows.
fn axpy(f: PrimeField, a: &[(usize, u64)], b: &[(usize, u64)], s: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.mul_raw(b[j].1, s)));
            j += 1;
        } else {
            let v = f.add_raw(a[i].1, f.mul_raw(b[j].1, s));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `dim_k S/(f, x_0^q, ..., x_n^q)` straight from the definition: in every
/// degree, row-reduce the spanning set `{x_j^q m} u {f m}` inside the full
/// polynomial ring and count the codimension.
pub fn brute_force_colength(f: &MultiPoly, q: u64) -> Result<u64> {
    let d = f.homogeneous_degree()? as i64;
    precondition(q >= 1, "q must be at least 1")?;
    let nvars = f.nvars();
    let size = (q as u128).checked_pow(nvars as u32).unwrap_or(u128::MAX);
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(size, BRUTE_FORCE_LIMIT));
    }
    let q_i = q as i64;
    // every monomial of degree > n_vars (q-1) has an exponent >= q
    let top = nvars as i64 * (q_i - 1);
    let mut total = 0u64;
    for i in 0..=top {
        let cols = all_monomials(nvars, i);
        let index: HashMap<&[u32], usize> = cols.iter().enumerate().map(|(k, m)| (m.exps(), k)).collect();
        let mut ech = SparseEchelon::new(f.field());
        for m in all_monomials(nvars, i - q_i) {
            for var in 0..nvars {
                let g = m.mul(&Monomial::var_power(nvars, var, q as u32));
                ech.insert(vec![(index[g.exps()], 1)]);
            }
        }
        for m in all_monomials(nvars, i - d) {
            let row = f.terms().map(|(t, c)| (index[t.mul(&m).exps()], c.value())).collect();
            ech.insert(row);
        }
        total += (cols.len() - ech.rank()) as u64;
    }
    Ok(total)
}
