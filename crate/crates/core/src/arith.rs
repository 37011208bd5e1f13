//! Divisor sums, the Möbius function and Dirichlet convolution.
//!
//! Arithmetic functions are materialised as exact values on `1..=N`
//! ([`ArithSeq`]); there are no lazy sequences. Factorisation is plain trial
//! division, which is plenty for `N` up to a few million.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// All positive divisors of `d`, strictly increasing.
pub fn divisors(d: u64) -> Result<Vec<u64>> {
    if d == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut e = 1u64;
    while e * e <= d {
        if d.is_multiple_of(e) {
            small.push(e);
            if e != d / e {
                large.push(d / e);
            }
        }
        e += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Prime factorisation as `(prime, exponent)` pairs, primes increasing.
pub fn factorize(d: u64) -> Result<Vec<(u64, u32)>> {
    if d == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut n = d;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

/// `σ_k(d)` as an exact integer.
pub fn sigma_int(d: u64, k: u32) -> Result<BigInt> {
    Ok(divisors(d)?
        .into_iter()
        .map(|e| Pow::pow(BigInt::from(e), k))
        .sum())
}

/// `σ_k(d) = Σ_{e | d} e^k`.
pub fn sigma_k(d: u64, k: u32) -> Result<Rational> {
    sigma_int(d, k).map(rational::from_bigint)
}

pub fn moebius_int(d: u64) -> Result<i64> {
    let f = factorize(d)?;
    if f.iter().any(|&(_, e)| e > 1) {
        Ok(0)
    } else if f.len() % 2 == 0 {
        Ok(1)
    } else {
        Ok(-1)
    }
}

pub fn moebius(d: u64) -> Result<Rational> {
    moebius_int(d).map(rational::int)
}

/// An arithmetic function stored by its values at `1..=N`.
///
/// Index 0 does not exist; [`ArithSeq::get`] takes the natural-number
/// argument `n` directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithSeq {
    values: Vec<Rational>,
}

impl ArithSeq {
    pub fn from_fn(len: usize, mut f: impl FnMut(u64) -> Rational) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptySequence);
        }
        Ok(Self {
            values: (1..=len as u64).map(&mut f).collect(),
        })
    }

    /// Values for `n = 1, 2, ...` in order.
    pub fn from_values(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self { values })
    }

    /// Dirichlet unit `ε`.
    pub fn unit(len: usize) -> Result<Self> {
        Self::from_fn(len, |n| if n == 1 { Rational::one() } else { Rational::zero() })
    }

    /// The constant function `1`.
    pub fn ones(len: usize) -> Result<Self> {
        Self::from_fn(len, |_| Rational::one())
    }

    /// `Id(n) = n`.
    pub fn identity(len: usize) -> Result<Self> {
        Self::from_fn(len, |n| rational::int(n as i64))
    }

    pub fn sigma(len: usize, k: u32) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptySequence);
        }
        // Sieve: each e contributes e^k to all of its multiples.
        let mut acc = vec![BigInt::zero(); len];
        for e in 1..=len {
            let term = Pow::pow(BigInt::from(e), k);
            for m in (e..=len).step_by(e) {
                acc[m - 1] += &term;
            }
        }
        Self::from_values(acc.into_iter().map(rational::from_bigint).collect())
    }

    pub fn moebius(len: usize) -> Result<Self> {
        Self::from_fn(len, |n| moebius(n).expect("n >= 1"))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Value at `n`, for `1 <= n <= len`.
    pub fn get(&self, n: u64) -> &Rational {
        assert!(n >= 1, "arithmetic functions are indexed from 1");
        &self.values[(n - 1) as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            values: self.values.iter().map(|v| v * r).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Self> {
        check_len(self, other)?;
        Ok(Self {
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Pointwise product `(f·g)(n) = f(n) g(n)`, not the Dirichlet product.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn truncate(&self, len: usize) -> Self {
        let len = len.clamp(1, self.len());
        Self {
            values: self.values[..len].to_vec(),
        }
    }
}

fn check_len(f: &ArithSeq, g: &ArithSeq) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    Ok(())
}

/// `(f ⋆ g)(n) = Σ_{e | n} f(e) g(n/e)` on `1..=N`.
pub fn dirichlet_convolve(f: &ArithSeq, g: &ArithSeq) -> Result<ArithSeq> {
    check_len(f, g)?;
    let n = f.len();
    let mut out = vec![Rational::zero(); n];
    for e in 1..=n {
        let fe = &f.values[e - 1];
        if fe.is_zero() {
            continue;
        }
        for (k, m) in (e..=n).step_by(e).enumerate() {
            let gk = &g.values[k];
            if !gk.is_zero() {
                out[m - 1] += fe * gk;
            }
        }
    }
    ArithSeq::from_values(out)
}

/// The `g` with `f ⋆ g = ε` on `1..=N`:
/// `g(1) = 1/f(1)`, `g(n) = -(1/f(1)) Σ_{e | n, e < n} g(e) f(n/e)`.
pub fn dirichlet_inverse(f: &ArithSeq) -> Result<ArithSeq> {
    let f1 = f.get(1);
    if f1.is_zero() {
        return Err(Error::NotInvertible);
    }
    let inv_f1 = f1.recip();
    let n = f.len();
    // acc[m] collects Σ_{e | m, e < m} g(e) f(m/e); g(e) is final once we reach e.
    let mut acc = vec![Rational::zero(); n];
    let mut g = Vec::with_capacity(n);
    for e in 1..=n {
        let ge = if e == 1 {
            inv_f1.clone()
        } else {
            -(&acc[e - 1]) * &inv_f1
        };
        for (k, m) in (2 * e..=n).step_by(e).enumerate() {
            let fk = &f.values[k + 1];
            if !fk.is_zero() && !ge.is_zero() {
                acc[m - 1] += &ge * fk;
            }
        }
        g.push(ge);
    }
    ArithSeq::from_values(g)
}

impl Add for &ArithSeq {
    type Output = ArithSeq;

    fn add(self, rhs: Self) -> ArithSeq {
        self.checked_add(rhs).expect("length mismatch")
    }
}

impl Sub for &ArithSeq {
    type Output = ArithSeq;

    fn sub(self, rhs: Self) -> ArithSeq {
        self.checked_sub(rhs).expect("length mismatch")
    }
}

/// `*` on sequences is Dirichlet convolution.
impl Mul for &ArithSeq {
    type Output = ArithSeq;

    fn mul(self, rhs: Self) -> ArithSeq {
        dirichlet_convolve(self, rhs).expect("length mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn divisors_small() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(6).unwrap(), vec![1, 2, 3, 6]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49).unwrap(), vec![1, 7, 49]);
        assert_eq!(divisors(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_k(2, 1).unwrap(), int(3));
        assert_eq!(sigma_k(2, 3).unwrap(), int(9));
        assert_eq!(sigma_k(3, 3).unwrap(), int(28));
        assert_eq!(sigma_k(12, 0).unwrap(), int(6));
        assert_eq!(sigma_k(0, 1), Err(Error::ZeroArgument));
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1).unwrap(), int(1));
        assert_eq!(moebius(6).unwrap(), int(1));
        assert_eq!(moebius(12).unwrap(), int(0));
        assert_eq!(moebius(30).unwrap(), int(-1));
        assert_eq!(moebius(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn factorize_roundtrip() {
        for d in 1..2000u64 {
            let prod: u64 = factorize(d).unwrap().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, d);
        }
    }

    #[test]
    fn sieve_matches_pointwise_sigma() {
        let s = ArithSeq::sigma(300, 3).unwrap();
        for n in 1..=300 {
            assert_eq!(s.get(n), &sigma_k(n, 3).unwrap());
        }
    }

    #[test]
    fn convolution_examples() {
        let n = 60;
        let one = ArithSeq::ones(n).unwrap();
        let id = ArithSeq::identity(n).unwrap();
        assert_eq!(dirichlet_convolve(&one, &one).unwrap().get(4), &int(3));

        let sigma = ArithSeq::sigma(n, 1).unwrap();
        assert_eq!(&id * &one, sigma);

        let mu_id = ArithSeq::moebius(n).unwrap().pointwise_mul(&id).unwrap();
        assert_eq!(&mu_id * &id, ArithSeq::unit(n).unwrap());
    }

    #[test]
    fn inverse_examples() {
        let n = 100;
        let eps = ArithSeq::unit(n).unwrap();
        assert_eq!(dirichlet_inverse(&eps).unwrap(), eps);

        let one = ArithSeq::ones(n).unwrap();
        assert_eq!(dirichlet_inverse(&one).unwrap(), ArithSeq::moebius(n).unwrap());

        let id = ArithSeq::identity(n).unwrap();
        let inv = dirichlet_inverse(&id).unwrap();
        for k in 1..=n as u64 {
            assert_eq!(inv.get(k), &(moebius(k).unwrap() * int(k as i64)));
        }
    }

    #[test]
    fn inverse_rejects_vanishing_head() {
        let f = ArithSeq::from_fn(10, |n| int(n as i64 - 1)).unwrap();
        assert_eq!(dirichlet_inverse(&f), Err(Error::NotInvertible));
    }

    #[test]
    fn inverse_can_be_non_integral() {
        let f = ArithSeq::from_fn(12, |n| int(n as i64 + 1)).unwrap();
        let g = dirichlet_inverse(&f).unwrap();
        assert_eq!(g.get(1), &crate::rational::frac(1, 2));
        assert_eq!(&f * &g, ArithSeq::unit(12).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let a = ArithSeq::ones(4).unwrap();
        let b = ArithSeq::ones(5).unwrap();
        assert_eq!(
            dirichlet_convolve(&a, &b),
            Err(Error::LengthMismatch { left: 4, right: 5 })
        );
        assert_eq!(ArithSeq::ones(0), Err(Error::EmptySequence));
    }
}
