//! The class `[π_{2/1,d}] = x δ₀ + y δ₁` of the d-elliptic locus and the
//! enumerative counts derived from it.
//!
//! Two test families pin down `x` and `y`. Pairing with `t_E` gives
//! `x/4 − y/48 = (1/12 − d/2)σ₁(d) + (5/12)σ₃(d)`, pairing with `η_E` gives
//! `−2x + y = 4σ₁(d)(d − 1)`. Solving yields
//! `x = 2σ₃(d) − 2dσ₁(d)`, `y = 4σ₃(d) − 4σ₁(d)`.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{self, dirichlet_convolve, dirichlet_inverse, ArithSeq};
use crate::census;
use crate::chow::{self, ChowClass, ProductTable};
use crate::error::{Error, Result};
use crate::qseries::{self, QSeries};
use crate::rational::{self, frac, int, Rational};

/// `[π_{2/1,d}]` for one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DEllipticClass {
    pub d: u64,
    #[serde(with = "rational::serde_fraction")]
    pub x: Rational,
    #[serde(with = "rational::serde_fraction")]
    pub y: Rational,
    #[serde(rename = "class")]
    pub as_chow: ChowClass,
}

impl DEllipticClass {
    pub fn new(d: u64, x: Rational, y: Rational) -> Self {
        let as_chow = ChowClass::divisor(x.clone(), y.clone());
        Self { d, x, y, as_chow }
    }
}

/// Which divisor coordinate a generating series tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    Delta0,
    Delta1,
}

fn check_degree(d: u64) -> Result<()> {
    if d == 0 {
        Err(Error::ZeroArgument)
    } else {
        Ok(())
    }
}

fn sigma(d: u64, k: u32) -> Result<Rational> {
    arith::sigma_k(d, k)
}

/// `[π]·δ₀₁ = (1/12 − d/2)σ₁(d) + (5/12)σ₃(d)`, the number of ordered isogeny
/// pairs with degrees summing to `d`.
pub fn rhs_t_e(d: u64) -> Result<Rational> {
    check_degree(d)?;
    let coeff = frac(1, 12) - frac(d as i64, 2);
    Ok(coeff * sigma(d, 1)? + frac(5, 12) * sigma(d, 3)?)
}

/// `[π]·[η_E] = 4σ₁(d)(d − 1)`: type 2B (with the ×2 branch labelling) plus
/// type 3C contributions.
pub fn rhs_eta(d: u64) -> Result<Rational> {
    check_degree(d)?;
    Ok(int(4) * sigma(d, 1)? * int(d as i64 - 1))
}

/// `rhs_t_e` assembled from enumeration instead of the closed form.
pub fn census_rhs_t_e(d: u64) -> Rational {
    census::census_type_2c(d).total
}

/// `rhs_eta` assembled from enumeration. The 2B report carries no labelling
/// factor, so it is doubled here; 3C carries it in its multiplicities.
pub fn census_rhs_eta(d: u64, oracle_bound: u64) -> Rational {
    let b2 = census::census_type_2b_with_bound(d, oracle_bound).total;
    let c3 = census::census_type_3c(d).total;
    b2 * int(2) + c3
}

/// The 2×2 system `rows · (x, y)ᵀ = rhs` obtained from the two test families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestCurveSystem {
    /// Coefficients of `x`, `y` in `[π]·δ₀₁` (half of `[π]·[t_E]`).
    pub t_e_row: [Rational; 2],
    /// Coefficients of `x`, `y` in `[π]·[η_E]`.
    pub eta_row: [Rational; 2],
}

impl TestCurveSystem {
    /// Hard-coded rows `(1/4, −1/48)` and `(−2, 1)`.
    pub fn standard() -> Self {
        Self {
            t_e_row: [frac(1, 4), frac(-1, 48)],
            eta_row: [int(-2), int(1)],
        }
    }

    /// The same rows read off from a product table: `δ₀·δ₀₁`, `δ₁·δ₀₁`,
    /// `δ₀·[η_E]`, `δ₁·[η_E]`.
    pub fn from_table(table: &ProductTable) -> Self {
        let deg = |a: &ChowClass, b: &ChowClass| table.mul(a, b).p;
        let (d0, d1) = (ChowClass::delta0(), ChowClass::delta1());
        let d01 = ChowClass::delta01();
        let eta = chow::eta_e_class();
        Self {
            t_e_row: [deg(&d0, &d01), deg(&d1, &d01)],
            eta_row: [deg(&d0, &eta), deg(&d1, &eta)],
        }
    }

    pub fn determinant(&self) -> Rational {
        &self.t_e_row[0] * &self.eta_row[1] - &self.t_e_row[1] * &self.eta_row[0]
    }

    /// Cramer's rule; `None` if the system is singular.
    pub fn solve(&self, rhs_t_e: &Rational, rhs_eta: &Rational) -> Option<(Rational, Rational)> {
        let det = self.determinant();
        if det.is_zero() {
            return None;
        }
        let x = (rhs_t_e * &self.eta_row[1] - &self.t_e_row[1] * rhs_eta) / &det;
        let y = (&self.t_e_row[0] * rhs_eta - &self.eta_row[0] * rhs_t_e) / &det;
        Some((x, y))
    }
}

/// Solves the test-curve system for `x`, `y`.
pub fn solve_class(d: u64) -> Result<DEllipticClass> {
    solve_class_with(d, &TestCurveSystem::standard())
}

pub fn solve_class_with(d: u64, system: &TestCurveSystem) -> Result<DEllipticClass> {
    let (x, y) = system
        .solve(&rhs_t_e(d)?, &rhs_eta(d)?)
        .expect("test-curve system must be nonsingular");
    Ok(DEllipticClass::new(d, x, y))
}

/// `x = 2σ₃(d) − 2dσ₁(d)`, `y = 4σ₃(d) − 4σ₁(d)`.
pub fn class_closed_form(d: u64) -> Result<DEllipticClass> {
    check_degree(d)?;
    let (s1, s3) = (sigma(d, 1)?, sigma(d, 3)?);
    let x = int(2) * &s3 - int(2 * d as i64) * &s1;
    let y = int(4) * s3 - int(4) * s1;
    Ok(DEllipticClass::new(d, x, y))
}

/// The bielliptic locus: `π_{2/1,2}` is generically 4-to-1 onto it.
pub fn bielliptic_class() -> ChowClass {
    class_closed_form(2)
        .expect("d = 2")
        .as_chow
        .scale(&frac(1, 4))
}

/// `Σ_{d≥1} x(d) q^d` or `Σ_{d≥1} y(d) q^d` truncated at `order`.
pub fn generating_series(which: Coordinate, order: usize) -> Result<QSeries> {
    if order < 1 {
        return Err(Error::OrderTooSmall { order, required: 1 });
    }
    let s1 = ArithSeq::sigma(order, 1)?;
    let s3 = ArithSeq::sigma(order, 3)?;
    Ok(QSeries::from_fn(order, |n| {
        if n == 0 {
            return Rational::zero();
        }
        let (a, b) = (s1.get(n as u64), s3.get(n as u64));
        match which {
            Coordinate::Delta0 => int(2) * b - int(2 * n as i64) * a,
            Coordinate::Delta1 => int(4) * b - int(4) * a,
        }
    }))
}

/// Coefficients of the two generating series in the quasi-modular bases
/// `{1, E2, E4, E2²}` and `{1, E2, E4}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingDecomposition {
    pub order: usize,
    pub delta0: Vec<Rational>,
    pub delta1: Vec<Rational>,
}

pub fn decompose_generating_series(order: usize) -> Result<GeneratingDecomposition> {
    let basis = qseries::weight4_basis(order);
    let t0 = generating_series(Coordinate::Delta0, order)?;
    let t1 = generating_series(Coordinate::Delta1, order)?;
    Ok(GeneratingDecomposition {
        order,
        delta0: qseries::quasimodular_decompose(&t0, &basis)?,
        delta1: qseries::quasimodular_decompose(&t1, &basis[..3])?,
    })
}

/// Alternative closed forms for the two generating series that have been
/// quoted in print: `T0 = (E4 − E2²)/6 + (E4 − 1)/120` and
/// `T1 = (E4 − 1)/60 + (1 − E2)/6`. They are kept only to be compared against
/// the derived decomposition.
pub fn printed_forms(order: usize) -> (QSeries, QSeries) {
    let basis = qseries::weight4_basis(order);
    let t0 = qseries::combine(&[frac(-1, 120), int(0), frac(1, 6) + frac(1, 120), frac(-1, 6)], &basis, order);
    let t1 = qseries::combine(&[frac(-1, 60) + frac(1, 6), frac(-1, 6), frac(1, 60)], &basis[..3], order);
    (t0, t1)
}

/// Outcome of comparing a printed closed form with the computed series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedFormCheck {
    pub matches: bool,
    /// `(n, printed, computed)` at the first differing coefficient.
    pub first_mismatch: Option<(usize, Rational, Rational)>,
}

pub fn compare_printed_forms(order: usize) -> Result<(PrintedFormCheck, PrintedFormCheck)> {
    let (p0, p1) = printed_forms(order);
    let check = |printed: &QSeries, which| -> Result<PrintedFormCheck> {
        let actual = generating_series(which, order)?;
        let first_mismatch = (0..=order)
            .find(|&n| printed.coeff(n) != actual.coeff(n))
            .map(|n| (n, printed.coeff(n).clone(), actual.coeff(n).clone()));
        Ok(PrintedFormCheck {
            matches: first_mismatch.is_none(),
            first_mismatch,
        })
    };
    Ok((check(&p0, Coordinate::Delta0)?, check(&p1, Coordinate::Delta1)?))
}

/// `5(σ₃ − Id·σ₁)` on `1..=n`: the right-hand side of both `a ⋆ Id` and `b ⋆ σ₁`.
fn enumerative_rhs(n: usize) -> Result<ArithSeq> {
    let s1 = ArithSeq::sigma(n, 1)?;
    let s3 = ArithSeq::sigma(n, 3)?;
    let id = ArithSeq::identity(n)?;
    Ok(s3.checked_sub(&id.pointwise_mul(&s1)?)?.scale(&int(5)))
}

/// `a_d = 5d [Σ_{d'|d} (σ₃(d')/d') μ(d/d') − d]`: the number of sixth branch
/// points making a general hyperelliptic curve d-elliptic.
pub fn a_closed(d: u64) -> Result<Rational> {
    check_degree(d)?;
    let mut inner = Rational::zero();
    for e in arith::divisors(d)? {
        inner += sigma(e, 3)? / int(e as i64) * arith::moebius(d / e)?;
    }
    Ok(int(5 * d as i64) * (inner - int(d as i64)))
}

/// `a = 5(σ₃ − Id·σ₁) ⋆ Id⁻¹` on `1..=n`, with `Id⁻¹` from the recursive inverse.
pub fn a_sequence(n: usize) -> Result<ArithSeq> {
    let id_inv = dirichlet_inverse(&ArithSeq::identity(n)?)?;
    dirichlet_convolve(&enumerative_rhs(n)?, &id_inv)
}

pub fn a_via_inversion(d: u64) -> Result<Rational> {
    check_degree(d)?;
    Ok(a_sequence(d as usize)?.get(d).clone())
}

/// `b = 5(σ₃ − Id·σ₁) ⋆ σ₁⁻¹` on `1..=n`: counts through optimal covers only.
pub fn b_sequence(n: usize) -> Result<ArithSeq> {
    let sigma_inv = dirichlet_inverse(&ArithSeq::sigma(n, 1)?)?;
    dirichlet_convolve(&enumerative_rhs(n)?, &sigma_inv)
}

pub fn b_optimal(d: u64) -> Result<Rational> {
    check_degree(d)?;
    Ok(b_sequence(d as usize)?.get(d).clone())
}

/// `deg([μ_P]·[π_{2/1,d}])`.
pub fn mu_p_pairing(d: u64) -> Result<Rational> {
    let class = class_closed_form(d)?;
    Ok(chow::mu_p_class().mul(&class.as_chow).p)
}

/// `40(σ₃(d) − dσ₁(d))`.
pub fn mu_p_pairing_closed(d: u64) -> Result<Rational> {
    check_degree(d)?;
    Ok(int(40) * (sigma(d, 3)? - int(d as i64) * sigma(d, 1)?))
}

/// One row of the `a`/`b` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerativeRow {
    pub d: u64,
    #[serde(with = "rational::serde_compact")]
    pub a_closed: Rational,
    #[serde(with = "rational::serde_compact")]
    pub a_inversion: Rational,
    #[serde(with = "rational::serde_compact")]
    pub b: Rational,
}

impl EnumerativeRow {
    pub fn routes_agree(&self) -> bool {
        self.a_closed == self.a_inversion
    }
}

/// Rows `1..=d_max` with both routes for `a_d`; closed forms evaluated in parallel.
pub fn enumerative_table(d_max: u64) -> Result<Vec<EnumerativeRow>> {
    use rayon::prelude::*;
    check_degree(d_max)?;
    let n = d_max as usize;
    let a = a_sequence(n)?;
    let b = b_sequence(n)?;
    (1..=d_max)
        .into_par_iter()
        .map(|d| {
            Ok(EnumerativeRow {
                d,
                a_closed: a_closed(d)?,
                a_inversion: a.get(d).clone(),
                b: b.get(d).clone(),
            })
        })
        .collect()
}
