//! Minimum distance of `C_U`.
//!
//! Two exact engines are provided. [`min_distance_exhaustive`] walks the
//! whole message space; [`min_distance_column_rank`] looks for the smallest
//! linearly dependent set of control-matrix columns. A lower bound `d` is
//! certified when every `d - 1` columns of the control matrix are
//! independent, which is the same as every `(d-1)`-subset `S` of `H`
//! admitting some `V` in `U^perp` with `det M(S, V) != 0`; both forms are
//! implemented ([`certify_lower_bound`], [`certify_lower_bound_minors`]).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::codes::{CodeError, CodeSpec};
use crate::field::{FieldElement, FiniteField};
use crate::linalg::{EchelonBasis, Matrix};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("the code is zero (U is empty); minimum distance is undefined")]
    EmptyCode,
    #[error(
        "work of {required} exceeds the budget {budget}; certified lower bound so far: {certified_lower_bound}"
    )]
    BudgetExceeded {
        required: u128,
        budget: u64,
        certified_lower_bound: usize,
    },
    #[error("target distance {d} outside 1..={max}")]
    InvalidTarget { d: usize, max: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Work limits for the search engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of codewords enumerated.
    pub codewords: u64,
    /// Maximum number of column subsets (or minors) examined.
    pub subsets: u64,
}

impl Budget {
    pub fn uniform(limit: u64) -> Self {
        Budget {
            codewords: limit,
            subsets: limit,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::uniform(DEFAULT_BUDGET)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    ColumnRank,
    Certificate,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Work {
    pub codewords: u64,
    pub subsets: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    pub d: usize,
    pub method: Method,
    /// Largest `d` for which the column-independence certificate was checked;
    /// 1 (the empty certificate) when no certificate was run.
    pub certified_lower_bound: usize,
    pub work: Work,
}

impl DistanceResult {
    /// `d = n - k + 1`.
    pub fn is_mds(&self, n: usize, k: usize) -> bool {
        self.d + k == n + 1
    }
}

/// Codeword counts indexed by Hamming weight `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct WeightDistribution(Vec<u64>);

impl WeightDistribution {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn total(&self) -> u128 {
        self.0.iter().map(|&c| c as u128).sum()
    }

    /// Smallest nonzero weight present.
    pub fn min_distance(&self) -> Option<usize> {
        (1..self.0.len()).find(|&w| self.0[w] > 0)
    }

    /// Nonzero entries only.
    pub fn to_map(&self) -> BTreeMap<usize, u64> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w, c))
            .collect()
    }
}

fn message_space(q: u32, k: usize) -> u128 {
    (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

/// Weight histogram of every codeword, by odometer enumeration.
///
/// Messages are enumerated digit by digit over the additive basis
/// `{1, x, .., x^{m-1}}` of `F_q` over `F_p`, so each step adds one
/// precomputed scaled generator row. The leading message coordinate is fixed
/// per worker.
fn weight_histogram(spec: &CodeSpec, budget: u64) -> Result<WeightDistribution, DistanceError> {
    let n = spec.n();
    let k = spec.k();
    let field = spec.field();
    let q = field.q();
    if k == 0 {
        let mut h = vec![0; n + 1];
        h[0] = 1;
        return Ok(WeightDistribution(h));
    }
    let required = message_space(q, k) - 1;
    if required > budget as u128 {
        return Err(DistanceError::BudgetExceeded {
            required,
            budget,
            certified_lower_bound: 1,
        });
    }
    let g = spec.generator_matrix()?;
    let p = field.p();
    let m = field.m() as usize;
    // scaled[(j - 1) * m + t] = p^t * g_j for the trailing coordinates j >= 1
    let scaled: Vec<Vec<FieldElement>> = (1..k)
        .flat_map(|j| {
            let row = g.row(j);
            (0..m).map(move |t| {
                let beta = FieldElement::from_index(p.pow(t as u32));
                row.iter().map(|&x| field.mul(beta, x)).collect()
            })
        })
        .collect();

    let parts: Vec<Vec<u64>> = field
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&lead| walk_partition(field, g.row(0), lead, &scaled, p, n))
        .collect();
    let mut hist = vec![0u64; n + 1];
    for part in parts {
        for (h, c) in hist.iter_mut().zip(part) {
            *h += c;
        }
    }
    Ok(WeightDistribution(hist))
}

fn walk_partition(
    field: &FiniteField,
    first_row: &[FieldElement],
    lead: FieldElement,
    scaled: &[Vec<FieldElement>],
    p: u32,
    n: usize,
) -> Vec<u64> {
    let mut hist = vec![0u64; n + 1];
    let mut word: Vec<FieldElement> = first_row.iter().map(|&x| field.mul(lead, x)).collect();
    let mut weight = word.iter().filter(|x| !x.is_zero()).count();
    let mut digits = vec![0u32; scaled.len()];
    loop {
        hist[weight] += 1;
        let mut d = 0;
        loop {
            if d == digits.len() {
                return hist;
            }
            for (x, &y) in word.iter_mut().zip(&scaled[d]) {
                let was = x.is_zero();
                *x = field.add(*x, y);
                match (was, x.is_zero()) {
                    (true, false) => weight += 1,
                    (false, true) => weight -= 1,
                    _ => {}
                }
            }
            digits[d] += 1;
            if digits[d] < p {
                break;
            }
            digits[d] = 0;
            d += 1;
        }
    }
}

/// Minimum weight over all nonzero codewords.
pub fn min_distance_exhaustive(spec: &CodeSpec, budget: &Budget) -> Result<DistanceResult, DistanceError> {
    if spec.k() == 0 {
        return Err(DistanceError::EmptyCode);
    }
    let hist = weight_histogram(spec, budget.codewords)?;
    let d = hist.min_distance().expect("nonzero codewords exist when k > 0");
    Ok(DistanceResult {
        d,
        method: Method::Exhaustive,
        certified_lower_bound: 1,
        work: Work {
            codewords: (hist.total() - 1) as u64,
            subsets: 0,
        },
    })
}

/// Number of codewords of each weight.
pub fn weight_distribution(spec: &CodeSpec, budget: &Budget) -> Result<WeightDistribution, DistanceError> {
    weight_histogram(spec, budget.codewords)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn columns(h: &Matrix) -> Vec<Vec<FieldElement>> {
    let t = h.transpose();
    t.iter_rows().map(<[FieldElement]>::to_vec).collect()
}

/// Searches for a dependent `w`-subset of `cols` given that every smaller
/// subset is independent. Counts leaves in `work`.
fn dependent_subset(
    field: &FiniteField,
    cols: &[Vec<FieldElement>],
    w: usize,
    start: usize,
    basis: &EchelonBasis,
    work: &mut u64,
) -> bool {
    let n = cols.len();
    let need = w - basis.len();
    for j in start..=n.saturating_sub(need) {
        if need == 1 {
            *work += 1;
            if basis.reduce(field, &cols[j]).iter().all(|x| x.is_zero()) {
                return true;
            }
        } else {
            let mut next = basis.clone();
            if !next.insert(field, &cols[j])
                || dependent_subset(field, cols, w, j + 1, &next, work)
            {
                return true;
            }
        }
    }
    false
}

/// Smallest number of linearly dependent columns of the control matrix.
pub fn min_distance_column_rank(spec: &CodeSpec, budget: &Budget) -> Result<DistanceResult, DistanceError> {
    if spec.k() == 0 {
        return Err(DistanceError::EmptyCode);
    }
    let field = spec.field();
    let n = spec.n();
    let cols = columns(&spec.control_matrix());
    let mut work = 0u64;
    // any n-k+1 columns in an (n-k)-dimensional space are dependent
    for w in 1..=n - spec.k() + 1 {
        let level = binomial(n, w);
        if work as u128 + level > budget.subsets as u128 {
            return Err(DistanceError::BudgetExceeded {
                required: work as u128 + level,
                budget: budget.subsets,
                certified_lower_bound: w,
            });
        }
        if dependent_subset(field, &cols, w, 0, &EchelonBasis::new(), &mut work) {
            return Ok(DistanceResult {
                d: w,
                method: Method::ColumnRank,
                certified_lower_bound: w,
                work: Work {
                    codewords: 0,
                    subsets: work,
                },
            });
        }
    }
    unreachable!("n - k + 1 columns are always dependent")
}

/// True iff every `d - 1` columns of the control matrix are linearly
/// independent, which guarantees minimum distance at least `d`.
pub fn certify_lower_bound(spec: &CodeSpec, d: usize, budget: &Budget) -> Result<bool, DistanceError> {
    let n = spec.n();
    if d == 0 || d > n + 1 {
        return Err(DistanceError::InvalidTarget { d, max: n + 1 });
    }
    let size = d - 1;
    if size == 0 {
        return Ok(true);
    }
    if size > n - spec.k() {
        return Ok(false);
    }
    let required = binomial(n, size);
    if required > budget.subsets as u128 {
        return Err(DistanceError::BudgetExceeded {
            required,
            budget: budget.subsets,
            certified_lower_bound: 1,
        });
    }
    let field = spec.field();
    let cols = columns(&spec.control_matrix());
    // partition by the smallest column of S
    let bad = (0..=n - size).into_par_iter().any(|first| {
        let mut basis = EchelonBasis::new();
        if !basis.insert(field, &cols[first]) {
            return true;
        }
        size > 1 && has_dependent_extension(field, &cols, size, first + 1, &basis)
    });
    Ok(!bad)
}

fn has_dependent_extension(
    field: &FiniteField,
    cols: &[Vec<FieldElement>],
    size: usize,
    start: usize,
    basis: &EchelonBasis,
) -> bool {
    let need = size - basis.len();
    for j in start..=cols.len().saturating_sub(need) {
        let mut next = basis.clone();
        if !next.insert(field, &cols[j]) {
            return true;
        }
        if need > 1 && has_dependent_extension(field, cols, size, j + 1, &next) {
            return true;
        }
    }
    false
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return true;
    }
    loop {
        if !visit(&idx) {
            return false;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return true;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The minor form of the certificate: for every `S` in `H` with
/// `#S = d - 1` there is `V` in `U^perp`, `#V = d - 1`, with
/// `det M(S, V) != 0`. Exponential in both choices; intended for small
/// codes.
pub fn certify_lower_bound_minors(spec: &CodeSpec, d: usize, budget: &Budget) -> Result<bool, DistanceError> {
    let n = spec.n();
    if d == 0 || d > n + 1 {
        return Err(DistanceError::InvalidTarget { d, max: n + 1 });
    }
    let size = d - 1;
    if size == 0 {
        return Ok(true);
    }
    let dual = spec.dual_spec();
    let dual_exps = dual.message_exponents();
    if size > dual_exps.len() {
        return Ok(false);
    }
    let required = binomial(n, size).saturating_mul(binomial(dual_exps.len(), size));
    if required > budget.subsets as u128 {
        return Err(DistanceError::BudgetExceeded {
            required,
            budget: budget.subsets,
            certified_lower_bound: 1,
        });
    }
    let torus = spec.torus();
    let field = spec.field();
    let grid = torus.grid();
    let points = torus.order().points();
    Ok(combinations(n, size, |s| {
        !combinations(dual_exps.len(), size, |v| {
            let rows = s
                .iter()
                .map(|&a| {
                    v.iter()
                        .map(|&b| field.alpha_pow(grid.pairing(&points[a], &dual_exps[b]) as i64))
                        .collect()
                })
                .collect();
            let minor = Matrix::from_rows(size, rows);
            // keep searching while the determinant vanishes
            minor.determinant(field).is_zero()
        })
    }))
}

fn big_binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Krawtchouk polynomial `K_j(i)` for length `n` over an alphabet of size `q`.
pub fn krawtchouk(n: usize, q: u32, j: usize, i: usize) -> BigInt {
    let mut sum = BigInt::zero();
    for s in 0..=j {
        let term = big_binomial(i, s)
            * big_binomial(n - i, j - s)
            * BigInt::from(q - 1).pow((j - s) as u32);
        if s % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Weight distribution of the dual predicted by the MacWilliams identity,
/// `B_j = |C|^{-1} sum_i A_i K_j(i)`, computed in exact integer arithmetic.
/// Returns `None` if some `B_j` is not a nonnegative integer.
pub fn macwilliams_transform(dist: &WeightDistribution, q: u32) -> Option<Vec<u64>> {
    let n = dist.n();
    let size: BigInt = dist.counts().iter().map(|&c| BigInt::from(c)).sum();
    (0..=n)
        .map(|j| {
            let num: BigInt = dist
                .counts()
                .iter()
                .enumerate()
                .map(|(i, &a)| BigInt::from(a) * krawtchouk(n, q, j, i))
                .sum();
            if num.is_negative() || !(&num % &size).is_zero() {
                return None;
            }
            u64::try_from(num / &size).ok()
        })
        .collect()
}
