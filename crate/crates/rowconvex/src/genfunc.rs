//! Exact polynomial and power-series arithmetic over the integers.
//!
//! The counting sequence has the rational generating function
//!
//! ```text
//! G(x) = x (1 - x)^3 / (1 - 5x + 7x^2 - 4x^3)
//! ```
//!
//! This module expands such quotients by exact long division, extracts the
//! induced constant-coefficient recurrence, and machine-checks the chain of
//! series identities that leads from the row-transfer construction to G.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense polynomial with arbitrary-precision integer coefficients,
/// kept canonical: no trailing zero coefficients, zero is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * z + c.to_f64().unwrap_or(f64::NAN)
            })
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Quotient of two integer polynomials, read as a formal power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalGF {
    /// The denominator must have a non-zero constant term so that the series
    /// expansion around 0 exists.
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self> {
        if denominator.coeff(0).is_zero() {
            return Err(Error::InvalidArgument(
                "denominator constant term must be non-zero".into(),
            ));
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    /// The generating function of the row-convex counts:
    /// numerator `x (1 - x)^3`, denominator `1 - 5x + 7x^2 - 4x^3`.
    pub fn row_convex() -> Self {
        let one_minus_x = IntPolynomial::from_i64(&[1, -1]);
        let numerator = IntPolynomial::x().mul(&one_minus_x.pow(3));
        let denominator = IntPolynomial::from_i64(&[1, -5, 7, -4]);
        Self::new(numerator, denominator).expect("constant term is 1")
    }
}

/// Power series known up to and including `x^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// `coeffs[i]` is the coefficient of `x^i`; the length fixes the order.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a truncated series carries at least the constant term".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "order mismatch");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Product with a polynomial, truncated back to this series' order.
    pub fn mul_polynomial(&self, p: &IntPolynomial) -> Self {
        let order = self.order();
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (j, c) in p.coeffs().iter().enumerate() {
            if j > order {
                break;
            }
            for i in 0..=order - j {
                coeffs[i + j] += c * &self.coeffs[i];
            }
        }
        Self { coeffs }
    }
}

/// Expands `gf` as a power series through `x^order` by long division.
/// All divisions by the constant term are checked to be exact, so the result
/// is exact integer arithmetic end to end (the constant term is +-1 for
/// every quotient used here).
pub fn series_expand(gf: &RationalGF, order: usize) -> Result<TruncatedSeries> {
    let q0 = gf.denominator().coeff(0);
    if q0.is_zero() {
        return Err(Error::InvalidArgument(
            "denominator constant term must be non-zero".into(),
        ));
    }
    let den = gf.denominator().coeffs();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let mut acc = gf.numerator().coeff(i);
        for j in 1..den.len().min(i + 1) {
            acc -= &den[j] * &coeffs[i - j];
        }
        let (c, rem) = num_integer_div_rem(&acc, &q0);
        if !rem.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "series coefficient of x^{i} is not an integer"
            )));
        }
        coeffs.push(c);
    }
    TruncatedSeries::new(coeffs)
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

/// Constant-coefficient linear recurrence extracted from a rational series:
/// `c(N) = sum of coefficients[j] * c(N - 1 - j)` for
/// `N >= seed_start + seeds.len()`, with `seeds[k] = c(seed_start + k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRecurrence {
    pub coefficients: Vec<BigInt>,
    pub seeds: Vec<BigInt>,
    pub seed_start: usize,
}

impl LinearRecurrence {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Series coefficients `c(seed_start) ..` extended to `count` values.
    pub fn sequence(&self, count: usize) -> Vec<BigInt> {
        let mut seq: Vec<BigInt> = self.seeds.iter().take(count).cloned().collect();
        while seq.len() < count {
            let k = seq.len();
            let mut v = BigInt::zero();
            for (j, r) in self.coefficients.iter().enumerate() {
                v += r * &seq[k - 1 - j];
            }
            seq.push(v);
        }
        seq
    }
}

/// Reads the recurrence off the denominator `q0 + q1 x + ... + qd x^d`:
/// the series coefficients satisfy `q0 c(N) + ... + qd c(N-d) = 0` for every
/// `N` past the numerator degree. Seeds are the `max(deg num, deg den)`
/// coefficients immediately before the first index where the bare recurrence
/// takes over.
pub fn recurrence_from_gf(gf: &RationalGF) -> Result<LinearRecurrence> {
    let q0 = gf.denominator().coeff(0);
    if !(q0.clone().abs()).is_one() {
        return Err(Error::InvalidArgument(
            "denominator constant term must be +1 or -1 for an integer recurrence".into(),
        ));
    }
    let d = gf.denominator().degree().unwrap_or(0);
    let p_deg = gf.numerator().degree().unwrap_or(0);
    let coefficients: Vec<BigInt> = (1..=d)
        .map(|j| -(gf.denominator().coeff(j)) / &q0)
        .collect();
    let k = p_deg.max(d);
    let seed_start = (p_deg + 1).saturating_sub(k);
    let series = series_expand(gf, seed_start + k.max(1) - 1)?;
    let seeds = series.coeffs()[seed_start..seed_start + k].to_vec();
    Ok(LinearRecurrence {
        coefficients,
        seeds,
        seed_start,
    })
}

/// Outcome of machine-checking the transfer-series identities through
/// `x^(order+1)`. `f_m` is the series counting stacks whose top row has
/// length `m`; `s = sum of f_m` aggregates every stack and `r = sum of
/// m * f_m` weights each stack by its top row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub order: usize,
    pub m_max: usize,
    /// `f_m = x^m (1 + r + (m - 1) s)` for every checked m.
    pub per_term_identity: bool,
    /// `(1 - 2x) s = x (1 - x) (1 + r)`.
    pub aggregate_identity: bool,
    /// `(1 - x)^3 r = x (1 - x) (1 + r) + 2 x^2 s`.
    pub weighted_identity: bool,
    /// `s` coincides with the long-division expansion of the closed form.
    pub matches_closed_form: bool,
}

impl TransferReport {
    pub fn all_hold(&self) -> bool {
        self.per_term_identity
            && self.aggregate_identity
            && self.weighted_identity
            && self.matches_closed_form
    }
}

/// Builds the `f_m` tables from their defining fixed-point recurrence
///
/// ```text
/// f_m = x^m + x^m * sum over l of (l + m - 1) f_l
/// ```
///
/// iterating by total degree (coefficient `n` of `f_m` only needs
/// coefficients below `n - m + 1`), then checks the four identities that
/// derive the closed form. `m_max` bounds the per-term checks and must not
/// exceed `order`; the aggregates always run over every `m <= order`.
pub fn verify_transfer_identities(order: usize, m_max: usize) -> Result<TransferReport> {
    if m_max > order {
        return Err(Error::InvalidArgument(format!(
            "m_max = {m_max} exceeds series order {order}"
        )));
    }

    // f[m - 1][n] = coefficient of x^n in f_m, for m in 1..=order.
    let mut f = vec![vec![BigInt::zero(); order + 1]; order];
    for n in 1..=order {
        for m in 1..=n {
            f[m - 1][n] = if m == n {
                BigInt::one()
            } else {
                let j = n - m;
                let mut acc = BigInt::zero();
                for l in 1..=j {
                    acc += (l + m - 1) * &f[l - 1][j];
                }
                acc
            };
        }
    }

    // Aggregates from their definitions, not from the identities under test.
    let mut s = vec![BigInt::zero(); order + 1];
    let mut r = vec![BigInt::zero(); order + 1];
    for n in 1..=order {
        for m in 1..=n {
            s[n] += &f[m - 1][n];
            r[n] += m * &f[m - 1][n];
        }
    }
    let s = TruncatedSeries::new(s.clone()).expect("order + 1 coefficients");
    let r = TruncatedSeries::new(r.clone()).expect("order + 1 coefficients");
    let one_plus_r = {
        let mut c = r.coeffs().to_vec();
        c[0] += 1;
        TruncatedSeries::new(c).expect("non-empty")
    };

    // (a) per-term: f_m = x^m (1 + r + (m - 1) s).
    let mut per_term_identity = true;
    'outer: for m in 1..=m_max {
        for n in 0..=order {
            let expected = if n < m {
                BigInt::zero()
            } else if n == m {
                BigInt::one()
            } else {
                let j = n - m;
                r.coeff(j) + (m - 1) * s.coeff(j)
            };
            if f[m - 1][n] != expected {
                per_term_identity = false;
                break 'outer;
            }
        }
    }

    let x_one_minus_x = IntPolynomial::from_i64(&[0, 1, -1]);
    let rhs_common = one_plus_r.mul_polynomial(&x_one_minus_x);

    // (b) (1 - 2x) s = x (1 - x) (1 + r).
    let lhs_b = s.mul_polynomial(&IntPolynomial::from_i64(&[1, -2]));
    let aggregate_identity = lhs_b == rhs_common;

    // (c) (1 - x)^3 r = x (1 - x) (1 + r) + 2 x^2 s.
    let lhs_c = r.mul_polynomial(&IntPolynomial::from_i64(&[1, -1]).pow(3));
    let rhs_c = rhs_common.add(&s.mul_polynomial(&IntPolynomial::from_i64(&[0, 0, 2])));
    let weighted_identity = lhs_c == rhs_c;

    // (d) s matches the closed-form expansion.
    let expansion = series_expand(&RationalGF::row_convex(), order)?;
    let matches_closed_form = s == expansion;

    Ok(TransferReport {
        order,
        m_max,
        per_term_identity,
        aggregate_identity,
        weighted_identity,
        matches_closed_form,
    })
}
