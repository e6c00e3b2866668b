//! Counting row-convex polyominoes by area.
//!
//! `S(n)` counts fixed row-convex polyominoes with `n` cells. Four
//! independent routes are implemented and cross-checked by the test suite:
//!
//! * partition formula: sum over partitions, then over distinct orderings
//!   of each partition, of the product of sliding factors,
//! * composition sum: the same product summed directly over all `2^(n-1)`
//!   compositions of `n`,
//! * transfer DP: quadratic-time recurrences on two aggregate series,
//! * linear recurrence: `S(n) = 5 S(n-1) - 7 S(n-2) + 4 S(n-3)` from the
//!   rational generating function.
//!
//! The first two cost `Theta(2^n)` and carry a configurable hard cap.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{generate_partitions, Composition};

/// Default cap for the two methods that enumerate all compositions.
pub const DEFAULT_EXPONENTIAL_LIMIT: usize = 24;

/// Number of ways to slide a row of length `b` over an adjacent row of
/// length `a` while keeping at least one column of contact: `a + b - 1`.
pub fn sliding_factor(a: usize, b: usize) -> Result<usize> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(
            "row lengths must be positive".into(),
        ));
    }
    Ok(a + b - 1)
}

/// Product of sliding factors over adjacent rows; the number of row-convex
/// polyominoes whose bottom-to-top row lengths are exactly `c`.
/// A single row contributes the empty product, 1.
pub fn composition_weight(c: &Composition) -> BigInt {
    c.parts()
        .windows(2)
        .map(|w| w[0] + w[1] - 1)
        .fold(BigInt::one(), |acc, f| acc * BigInt::from(f))
}

/// Exact counts `S(1) ..= S(n_max)`, indexed 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSeries {
    values: Vec<BigInt>,
}

impl CountSeries {
    fn from_values(values: Vec<BigInt>) -> Self {
        Self { values }
    }

    pub fn n_max(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        if n == 0 {
            return None;
        }
        self.values.get(n - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    /// `S(n) - 5 S(n-1) + 7 S(n-2) - 4 S(n-3)`; zero for every n >= 5.
    pub fn recurrence_residual(&self, n: usize) -> Option<BigInt> {
        if n < 4 || n > self.n_max() {
            return None;
        }
        let s = |k: usize| &self.values[k - 1];
        Some(s(n) - 5 * s(n - 1) + 7 * s(n - 2) - 4 * s(n - 3))
    }
}

/// Coefficient tables of the two aggregate series behind the transfer DP:
/// `a(n)` is the count itself, `b(n)` the companion weighted sum that feeds
/// the recursion (`b(n) >= a(n)` for all n).
#[derive(Clone, Debug)]
pub struct DpAggregates {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

impl DpAggregates {
    pub fn n_max(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self, n: usize) -> Option<&BigInt> {
        if n == 0 {
            return None;
        }
        self.a.get(n - 1)
    }

    pub fn b(&self, n: usize) -> Option<&BigInt> {
        if n == 0 {
            return None;
        }
        self.b.get(n - 1)
    }

    pub fn into_parts(self) -> (Vec<BigInt>, Vec<BigInt>) {
        (self.a, self.b)
    }
}

/// Sum over partitions of `n`, then over the distinct orderings of each
/// partition, of the ordering's sliding-factor product. The product must be
/// taken per ordering: it is not invariant under reordering the parts.
pub fn count_by_partition_formula(n: usize) -> Result<BigInt> {
    count_by_partition_formula_with_limit(n, DEFAULT_EXPONENTIAL_LIMIT)
}

pub fn count_by_partition_formula_with_limit(n: usize, limit: usize) -> Result<BigInt> {
    check_exponential(n, limit, "the partition formula")?;
    let mut total = BigInt::zero();
    for p in generate_partitions(n)? {
        for ordering in p.distinct_permutations() {
            total += weight_u128(ordering.parts());
        }
    }
    Ok(total)
}

/// Diagnostic variant that multiplies the ordering count by the product taken
/// on the sorted parts alone. Because the sliding product is order dependent
/// this undercounts from n = 4 on (17 instead of 19); it exists to make the
/// difference measurable. Not used by any other route.
pub fn count_by_sorted_partition_product(n: usize, limit: usize) -> Result<BigInt> {
    check_exponential(n, limit, "the sorted-product variant")?;
    let mut total = BigInt::zero();
    for p in generate_partitions(n)? {
        let factor = crate::partitions::permutation_factor(&p);
        total += factor * BigInt::from(weight_u128(p.parts()));
    }
    Ok(total)
}

/// Sum of sliding-factor products over all `2^(n-1)` compositions of `n`,
/// enumerated by depth-first search without materializing them.
pub fn count_by_composition_sum(n: usize) -> Result<BigInt> {
    count_by_composition_sum_with_limit(n, DEFAULT_EXPONENTIAL_LIMIT)
}

pub fn count_by_composition_sum_with_limit(n: usize, limit: usize) -> Result<BigInt> {
    check_exponential(n, limit, "the composition sum")?;
    composition_sum_with_factor(n, |a, b| (a + b - 1) as u128)
}

/// DFS over compositions with a caller-chosen per-step factor. The running
/// product stays in u128: factors of a composition of n sum to at most 2n,
/// so the product is below 3^(2n/3), which overflows only past n = 120,
/// far beyond any enumerable size.
pub(crate) fn composition_sum_with_factor(
    n: usize,
    factor: impl Fn(usize, usize) -> u128 + Copy,
) -> Result<BigInt> {
    fn rec(
        remaining: usize,
        last: usize,
        weight: u128,
        factor: impl Fn(usize, usize) -> u128 + Copy,
        total: &mut BigInt,
    ) {
        if remaining == 0 {
            *total += weight;
            return;
        }
        for next in 1..=remaining {
            rec(remaining - next, next, weight * factor(last, next), factor, total);
        }
    }

    if n == 0 {
        return Err(Error::InvalidArgument("no compositions of 0".into()));
    }
    let mut total = BigInt::zero();
    for first in 1..=n {
        rec(n - first, first, 1, factor, &mut total);
    }
    Ok(total)
}

fn weight_u128(parts: &[usize]) -> u128 {
    parts
        .windows(2)
        .map(|w| (w[0] + w[1] - 1) as u128)
        .product()
}

fn check_exponential(n: usize, limit: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("count is defined for n >= 1".into()));
    }
    if n > limit {
        return Err(Error::LimitExceeded {
            what,
            limit,
            requested: n,
        });
    }
    Ok(())
}

/// Quadratic-time transfer recursion. With `t(m, j) = b(j) + (m - 1) a(j)`:
///
/// ```text
/// a(n) = 1 + sum over m = 1..n-1 of t(m, n - m)
/// b(n) = n + sum over m = 1..n-1 of m * t(m, n - m)
/// ```
///
/// `a(n)` equals the row-convex count `S(n)`. Memory stays linear.
pub fn transfer_dp_aggregates(n_max: usize) -> DpAggregates {
    let mut a: Vec<BigInt> = Vec::with_capacity(n_max);
    let mut b: Vec<BigInt> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut an = BigInt::one();
        let mut bn = BigInt::from(n);
        for m in 1..n {
            let j = n - m;
            let t = &b[j - 1] + (m - 1) * &a[j - 1];
            an += &t;
            bn += m * t;
        }
        a.push(an);
        b.push(bn);
    }
    DpAggregates { a, b }
}

/// `S(1) ..= S(n_max)` via the transfer recursion.
pub fn count_by_transfer_dp(n_max: usize) -> CountSeries {
    let (a, _) = transfer_dp_aggregates(n_max).into_parts();
    CountSeries::from_values(a)
}

/// `S(1) ..= S(n_max)` from the constant-coefficient recurrence
/// `S(n) = 5 S(n-1) - 7 S(n-2) + 4 S(n-3)` with seeds 1, 2, 6, 19.
pub fn count_by_linear_recurrence(n_max: usize) -> CountSeries {
    let seeds = [1u32, 2, 6, 19];
    let mut values: Vec<BigInt> = seeds
        .iter()
        .take(n_max)
        .map(|&s| BigInt::from(s))
        .collect();
    for n in values.len()..n_max {
        let v = 5 * &values[n - 1] - 7 * &values[n - 2] + 4 * &values[n - 3];
        values.push(v);
    }
    CountSeries::from_values(values)
}
