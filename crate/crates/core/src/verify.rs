//! The invariant suites behind `dellip verify-all`.
//!
//! Each suite returns a [`SuiteResult`] with the number of checks run and a
//! human-readable line per failure. The product table is a parameter so a
//! perturbed ring can be fed through the whole pipeline.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{self, dirichlet_convolve, dirichlet_inverse, ArithSeq};
use crate::census;
use crate::chow::{self, ChowClass, ProductTable};
use crate::delliptic::{self, Coordinate, TestCurveSystem};
use crate::qseries;
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub d_max: u64,
    pub order: usize,
    pub oracle_bound: u64,
    pub table: ProductTable,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            d_max: 500,
            order: 200,
            oracle_bound: census::DEFAULT_ORACLE_BOUND,
            table: ProductTable::standard(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suites: Vec<SuiteResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

struct Tally {
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records the first failing `d` of a range check (if any) as one failure.
    fn check_range<T: std::fmt::Display + Sync + Send>(
        &mut self,
        label: &str,
        ds: std::ops::RangeInclusive<u64>,
        f: impl Fn(u64) -> Result<(), T> + Sync + Send,
    ) {
        let n = ds.clone().count();
        self.checks += n;
        let first = ds.into_par_iter().find_first(|&d| f(d).is_err());
        if let Some(d) = first {
            let detail = f(d).err().map(|e| e.to_string()).unwrap_or_default();
            self.failures.push(format!("{label}: first failure at d = {d}: {detail}"));
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            checks: self.checks,
            failures: self.failures,
        }
    }
}

fn mismatch(what: &str, left: &Rational, right: &Rational) -> String {
    format!(
        "{what}: {} != {}",
        rational::to_compact_string(left),
        rational::to_compact_string(right)
    )
}

fn eq_or(what: &str, left: Rational, right: Rational) -> Result<(), String> {
    if left == right {
        Ok(())
    } else {
        Err(mismatch(what, &left, &right))
    }
}

/// Commutativity, associativity, the three consistency pairings, and the
/// agreement of the hard-coded test-curve system with the table.
pub fn ring_suite(table: &ProductTable) -> SuiteResult {
    let mut t = Tally::new("ring");
    let comm = table.commutativity_defects();
    t.check(comm.is_empty(), || format!("non-commuting basis pairs: {comm:?}"));
    let assoc = table.associativity_defects();
    t.check(assoc.is_empty(), || format!("non-associative basis triples: {assoc:?}"));

    let deg = |a: &ChowClass, b: &ChowClass| table.mul(a, b).p;
    let mu = chow::mu_p_class();
    let v = deg(&mu, &ChowClass::delta0());
    t.check(v == int(20), || mismatch("deg(mu_P·d0)", &v, &int(20)));
    let v = deg(&mu, &ChowClass::delta1());
    t.check(v.is_zero(), || mismatch("deg(mu_P·d1)", &v, &int(0)));
    let v = table.mul(&chow::lambda1(), &chow::eta_e_class());
    t.check(v.is_zero(), || format!("lambda1·eta_E = {v}, expected 0"));

    let derived = TestCurveSystem::from_table(table);
    t.check(derived == TestCurveSystem::standard(), || {
        format!("test-curve system from table {derived:?} differs from hard-coded rows")
    });
    t.finish()
}

/// Dirichlet algebra identities up to `n`.
pub fn arith_suite(n: u64) -> SuiteResult {
    let mut t = Tally::new("arith");
    let len = n.max(1) as usize;
    let unit = ArithSeq::unit(len).expect("len >= 1");
    let one = ArithSeq::ones(len).expect("len >= 1");
    let id = ArithSeq::identity(len).expect("len >= 1");
    let s1 = ArithSeq::sigma(len, 1).expect("len >= 1");

    for (name, f) in [("1", &one), ("Id", &id), ("sigma", &s1)] {
        let inv = dirichlet_inverse(f).expect("f(1) = 1");
        let prod = dirichlet_convolve(f, &inv).expect("equal lengths");
        t.check(prod == unit, || format!("{name} ⋆ {name}^-1 != ε"));
    }
    let conv = dirichlet_convolve(&id, &one).expect("equal lengths");
    t.check(conv == s1, || "Id ⋆ 1 != σ₁".into());
    let inv_id = dirichlet_inverse(&id).expect("Id(1) = 1");
    t.check_range("Id^-1 = μ·Id", 1..=n, |d| {
        eq_or(
            "Id^-1",
            inv_id.get(d).clone(),
            arith::moebius(d).expect("d >= 1") * int(d as i64),
        )
    });
    t.finish()
}

/// Enumeration against closed forms.
pub fn oracle_suite(d_max: u64, oracle_bound: u64) -> SuiteResult {
    let mut t = Tally::new("oracles");
    let hnf_max = d_max.min(500);
    t.check_range("HNF sublattices = σ₁", 1..=hnf_max, |d| {
        eq_or(
            "count",
            int(census::sublattice_count(d) as i64),
            arith::sigma_k(d, 1).expect("d >= 1"),
        )
    });
    t.check_range("torsion covers = d² - 1", 1..=hnf_max, |d| {
        eq_or(
            "count",
            int(census::count_torsion_covers(d) as i64),
            int((d * d) as i64 - 1),
        )
    });
    let sub_max = d_max.min(oracle_bound);
    t.check_range("order-d subgroups = σ₁", 1..=sub_max, |d| {
        eq_or(
            "count",
            int(census::enumerate_order_d_subgroups(d).len() as i64),
            arith::sigma_k(d, 1).expect("d >= 1"),
        )
    });
    t.check_range("2C census = t_E closed form", 1..=hnf_max, |d| {
        eq_or(
            "total",
            delliptic::census_rhs_t_e(d),
            delliptic::rhs_t_e(d).expect("d >= 1"),
        )
    });
    t.check_range("2B·2 + 3C census = eta closed form", 1..=hnf_max, |d| {
        eq_or(
            "total",
            delliptic::census_rhs_eta(d, oracle_bound),
            delliptic::rhs_eta(d).expect("d >= 1"),
        )
    });
    t.finish()
}

/// The class solved through `table`'s test-curve rows against the closed form.
pub fn class_suite(d_max: u64, table: &ProductTable) -> SuiteResult {
    let mut t = Tally::new("class");
    let system = TestCurveSystem::from_table(table);
    t.check(!system.determinant().is_zero(), || "test-curve system is singular".into());
    if system.determinant().is_zero() {
        return t.finish();
    }
    t.check_range("solve = closed form", 1..=d_max, |d| {
        let solved = delliptic::solve_class_with(d, &system).expect("d >= 1");
        let closed = delliptic::class_closed_form(d).expect("d >= 1");
        if solved == closed {
            Ok(())
        } else {
            Err(format!(
                "solved ({}, {}) vs closed ({}, {})",
                solved.x, solved.y, closed.x, closed.y
            ))
        }
    });
    t.check_range("-2x + y = 4σ₁(d)(d-1)", 1..=d_max, |d| {
        let c = delliptic::class_closed_form(d).expect("d >= 1");
        eq_or("eta", int(-2) * c.x + c.y, delliptic::rhs_eta(d).expect("d >= 1"))
    });
    let bi = delliptic::bielliptic_class();
    let want = ChowClass::divisor(rational::frac(3, 2), int(6));
    t.check(bi == want, || format!("bielliptic class {bi} != {want}"));
    t.finish()
}

/// `a`, `b` and the `μ_P` pairing.
pub fn enumerative_suite(d_max: u64, table: &ProductTable) -> SuiteResult {
    let mut t = Tally::new("enumerative");
    let n = d_max as usize;
    let a = delliptic::a_sequence(n).expect("n >= 1");
    let b = delliptic::b_sequence(n).expect("n >= 1");
    let s1 = ArithSeq::sigma(n, 1).expect("n >= 1");
    let b_star_sigma = dirichlet_convolve(&b, &s1).expect("equal lengths");
    let b_star_one = dirichlet_convolve(&b, &ArithSeq::ones(n).expect("n >= 1")).expect("equal lengths");

    t.check(a.get(1).is_zero() && b.get(1).is_zero(), || "a_1 or b_1 nonzero".into());
    if d_max >= 2 {
        t.check(*a.get(2) == int(15), || mismatch("a_2", a.get(2), &int(15)));
    }
    t.check_range("a closed = a via inversion", 1..=d_max, |d| {
        eq_or("a", delliptic::a_closed(d).expect("d >= 1"), a.get(d).clone())
    });
    t.check_range("a_d is a nonnegative integer", 1..=d_max, |d| {
        if rational::is_nonnegative_integer(a.get(d)) {
            Ok(())
        } else {
            Err(format!("a_d = {}", a.get(d)))
        }
    });
    t.check_range("b_d is a nonnegative integer", 1..=d_max.min(1000), |d| {
        if rational::is_nonnegative_integer(b.get(d)) {
            Ok(())
        } else {
            Err(format!("b_d = {}", b.get(d)))
        }
    });
    t.check_range("a = b ⋆ 1", 1..=d_max, |d| eq_or("a", b_star_one.get(d).clone(), a.get(d).clone()));
    t.check_range("μ_P pairing = 40(σ₃ - dσ₁) = 8(b⋆σ)", 1..=d_max, |d| {
        let class = delliptic::class_closed_form(d).expect("d >= 1");
        let pairing = table.mul(&chow::mu_p_class(), &class.as_chow).p;
        let closed = delliptic::mu_p_pairing_closed(d).expect("d >= 1");
        eq_or("pairing", pairing.clone(), closed)?;
        eq_or("8(b⋆σ)", pairing, int(8) * b_star_sigma.get(d))
    });
    t.finish()
}

/// Ramanujan's equation and the quasi-modular decompositions.
pub fn qseries_suite(order: usize) -> SuiteResult {
    let mut t = Tally::new("qseries");
    match qseries::ramanujan_ode_residual(order) {
        Ok(r) => t.check(r.is_zero(), || "Ramanujan ODE residual is nonzero".into()),
        Err(e) => t.check(false, || e.to_string()),
    }
    let p = qseries::eisenstein_p(order);
    let q = qseries::eisenstein_q(order);
    let s1 = ArithSeq::sigma(order.max(1), 1).expect("len >= 1");
    let s3 = ArithSeq::sigma(order.max(1), 3).expect("len >= 1");
    t.check(
        (1..=order).all(|n| {
            p.coeff(n).abs() == int(24) * s1.get(n as u64) && q.coeff(n) == &(int(240) * s3.get(n as u64))
        }),
        || "Eisenstein coefficients disagree with divisor sums".into(),
    );
    let basis = qseries::weight4_basis(order);
    for (which, k) in [(Coordinate::Delta0, 4), (Coordinate::Delta1, 3)] {
        let s = delliptic::generating_series(which, order).expect("order >= 1");
        match qseries::quasimodular_decompose(&s, &basis[..k]) {
            Ok(c) => {
                let rebuilt = qseries::combine(&c, &basis[..k], order);
                t.check(rebuilt == s, || format!("{which:?} reconstruction differs"));
            }
            Err(e) => t.check(false, || format!("{which:?}: {e}")),
        }
    }
    t.finish()
}

pub fn run_all(config: &VerifyConfig) -> VerificationReport {
    VerificationReport {
        suites: vec![
            ring_suite(&config.table),
            arith_suite(config.d_max),
            oracle_suite(config.d_max, config.oracle_bound),
            class_suite(config.d_max, &config.table),
            enumerative_suite(config.d_max, &config.table),
            qseries_suite(config.order),
        ],
    }
}

/// A table with `δ₀·δ₀₁` perturbed, for negative tests of the pipeline.
pub fn faulty_table() -> ProductTable {
    let mut t = ProductTable::standard();
    t.d0_d01 += Rational::one();
    t
}
