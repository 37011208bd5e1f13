//! Truncated power series in `q` with exact coefficients.
//!
//! A [`QSeries`] of order `N` knows the coefficients of `q^0..=q^N`; binary
//! operations truncate to the smaller order of their operands.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::ArithSeq;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Rational::one(), 0, order)
    }

    /// `c·q^k` truncated at `order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Coefficients of `q^0, q^1, ...`; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n`; panics past the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// `q·d/dq`: the coefficient of `q^n` is multiplied by `n`.
    pub fn q_derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * rational::int(n as i64))
                .collect(),
        }
    }

    /// Embeds `Σ_{n≥1} f(n) q^n`, with zero constant term.
    pub fn from_arith(f: &ArithSeq, order: usize) -> Self {
        Self::from_fn(order, |n| {
            if n == 0 || n > f.len() {
                Rational::zero()
            } else {
                f.get(n as u64).clone()
            }
        })
    }
}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, rhs: Self) -> QSeries {
        let order = self.order().min(rhs.order());
        QSeries::from_fn(order, |n| &self.coeffs[n] + &rhs.coeffs[n])
    }
}

impl Sub for &QSeries {
    type Output = QSeries;

    fn sub(self, rhs: Self) -> QSeries {
        let order = self.order().min(rhs.order());
        QSeries::from_fn(order, |n| &self.coeffs[n] - &rhs.coeffs[n])
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

/// Cauchy product truncated at the smaller order.
impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: Self) -> QSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

impl Mul<&Rational> for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &Rational) -> QSeries {
        self.scale(rhs)
    }
}

fn eisenstein(order: usize, k: u32, factor: i64) -> QSeries {
    // Σ σ_k(d) q^d = Σ_m m^k q^m / (1 - q^m); the sieve in `ArithSeq::sigma`
    // expands the Lambert series term by term.
    let sigma = if order == 0 {
        None
    } else {
        Some(ArithSeq::sigma(order, k).expect("order >= 1"))
    };
    let factor = rational::int(factor);
    QSeries::from_fn(order, |n| match (n, &sigma) {
        (0, _) => Rational::one(),
        (_, Some(s)) => s.get(n as u64) * &factor,
        (_, None) => unreachable!(),
    })
}

/// `E2 = P = 1 - 24 Σ σ_1(d) q^d`.
pub fn eisenstein_p(order: usize) -> QSeries {
    eisenstein(order, 1, -24)
}

/// `E4 = Q = 1 + 240 Σ σ_3(d) q^d`.
pub fn eisenstein_q(order: usize) -> QSeries {
    eisenstein(order, 3, 240)
}

/// `q dP/dq - (P² - Q)/12`, which vanishes identically.
pub fn ramanujan_ode_residual(order: usize) -> Result<QSeries> {
    if order < 1 {
        return Err(Error::OrderTooSmall { order, required: 1 });
    }
    let p = eisenstein_p(order);
    let q = eisenstein_q(order);
    let rhs = (&(&p * &p) - &q).scale(&rational::frac(1, 12));
    Ok(&p.q_derivative() - &rhs)
}

/// The default weight ≤ 4 basis `{1, E2, E4, E2²}` at `order`.
pub fn weight4_basis(order: usize) -> Vec<QSeries> {
    let p = eisenstein_p(order);
    let q = eisenstein_q(order);
    let p2 = &p * &p;
    vec![QSeries::one(order), p, q, p2]
}

/// Exact coefficients `c` with `s = Σ c_i basis_i` through the common order.
///
/// The coefficients are pinned down by Gaussian elimination on the leading
/// coefficients of the series; every remaining coefficient up to the full
/// order is then checked against the reconstruction.
pub fn quasimodular_decompose(s: &QSeries, basis: &[QSeries]) -> Result<Vec<Rational>> {
    let k = basis.len();
    let order = basis.iter().map(QSeries::order).fold(s.order(), usize::min);
    if order + 1 < k || s.order() < k {
        return Err(Error::OrderTooSmall { order, required: k });
    }
    if k == 0 {
        return match (0..=order).find(|&n| !s.coeff(n).is_zero()) {
            None => Ok(Vec::new()),
            Some(index) => Err(Error::NotInSpan { order, index }),
        };
    }

    // Forward elimination over rows q^0, q^1, ... until k pivots are found;
    // rows are consumed lazily so a degenerate leading block does not stall.
    let mut pivots: Vec<(Vec<Rational>, Rational)> = Vec::with_capacity(k);
    let mut pivot_cols: Vec<usize> = Vec::with_capacity(k);
    for n in 0..=order {
        if pivots.len() == k {
            break;
        }
        let mut row: Vec<Rational> = basis.iter().map(|b| b.coeff(n).clone()).collect();
        let mut rhs = s.coeff(n).clone();
        for ((prow, prhs), &col) in pivots.iter().zip(&pivot_cols) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &prow[col];
            for (r, p) in row.iter_mut().zip(prow) {
                *r -= &f * p;
            }
            rhs -= &f * prhs;
        }
        if let Some(col) = row.iter().position(|r| !r.is_zero()) {
            pivots.push((row, rhs));
            pivot_cols.push(col);
        }
    }
    if pivots.len() < k {
        return Err(Error::DependentBasis { order });
    }

    let mut c = vec![Rational::zero(); k];
    for i in (0..k).rev() {
        let (row, rhs) = &pivots[i];
        let col = pivot_cols[i];
        let mut acc = rhs.clone();
        for (j, cj) in c.iter().enumerate() {
            if j != col && !row[j].is_zero() {
                acc -= &row[j] * cj;
            }
        }
        c[col] = acc / &row[col];
    }

    let rebuilt = combine(&c, basis, order);
    if let Some(index) = (0..=order).find(|&n| rebuilt.coeff(n) != s.coeff(n)) {
        return Err(Error::NotInSpan { order, index });
    }
    Ok(c)
}

/// `Σ c_i basis_i` truncated at `order`.
pub fn combine(c: &[Rational], basis: &[QSeries], order: usize) -> QSeries {
    c.iter()
        .zip(basis)
        .fold(QSeries::zero(order), |acc, (ci, b)| &acc + &b.truncate(order).scale(ci))
}
