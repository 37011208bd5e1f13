//! The rational Chow ring `A*(M̄₂)`.
//!
//! As a vector space it has basis `1, δ₀, δ₁, δ₀₀, δ₀₁, p` in degrees
//! 0, 1, 1, 2, 2, 3. The product is determined by the eight relations in
//! [`ProductTable::standard`]; every product of total degree above 3 is zero,
//! and [`ChowClass`] simply has no coordinate for it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, frac, int, Rational};

/// One of the six basis classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    One,
    D0,
    D1,
    D00,
    D01,
    P,
}

impl Basis {
    pub const ALL: [Basis; 6] = [Basis::One, Basis::D0, Basis::D1, Basis::D00, Basis::D01, Basis::P];

    pub fn degree(self) -> u8 {
        match self {
            Basis::One => 0,
            Basis::D0 | Basis::D1 => 1,
            Basis::D00 | Basis::D01 => 2,
            Basis::P => 3,
        }
    }

    pub fn class(self) -> ChowClass {
        let mut c = ChowClass::zero();
        *c.coord_mut(self) = Rational::one();
        c
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::One => "1",
            Basis::D0 => "d0",
            Basis::D1 => "d1",
            Basis::D00 => "d00",
            Basis::D01 => "d01",
            Basis::P => "p",
        }
    }
}

/// An element of `A*(M̄₂)` in coordinates on the standard basis.
///
/// Serialises as `{"one": "a/b", "d0": ..., "d1": ..., "d00": ..., "d01": ..., "p": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChowClass {
    #[serde(with = "rational::serde_fraction")]
    pub one: Rational,
    #[serde(with = "rational::serde_fraction")]
    pub d0: Rational,
    #[serde(with = "rational::serde_fraction")]
    pub d1: Rational,
    #[serde(with = "rational::serde_fraction")]
    pub d00: Rational,
    #[serde(with = "rational::serde_fraction")]
    pub d01: Rational,
    #[serde(with = "rational::serde_fraction")]
    pub p: Rational,
}

impl ChowClass {
    pub fn zero() -> Self {
        Self {
            one: Rational::zero(),
            d0: Rational::zero(),
            d1: Rational::zero(),
            d00: Rational::zero(),
            d01: Rational::zero(),
            p: Rational::zero(),
        }
    }

    pub fn unit() -> Self {
        Basis::One.class()
    }

    pub fn delta0() -> Self {
        Basis::D0.class()
    }

    pub fn delta1() -> Self {
        Basis::D1.class()
    }

    pub fn delta00() -> Self {
        Basis::D00.class()
    }

    pub fn delta01() -> Self {
        Basis::D01.class()
    }

    pub fn point() -> Self {
        Basis::P.class()
    }

    /// `x δ₀ + y δ₁`.
    pub fn divisor(x: Rational, y: Rational) -> Self {
        Self {
            d0: x,
            d1: y,
            ..Self::zero()
        }
    }

    pub fn coord(&self, b: Basis) -> &Rational {
        match b {
            Basis::One => &self.one,
            Basis::D0 => &self.d0,
            Basis::D1 => &self.d1,
            Basis::D00 => &self.d00,
            Basis::D01 => &self.d01,
            Basis::P => &self.p,
        }
    }

    pub fn coord_mut(&mut self, b: Basis) -> &mut Rational {
        match b {
            Basis::One => &mut self.one,
            Basis::D0 => &mut self.d0,
            Basis::D1 => &mut self.d1,
            Basis::D00 => &mut self.d00,
            Basis::D01 => &mut self.d01,
            Basis::P => &mut self.p,
        }
    }

    pub fn is_zero(&self) -> bool {
        Basis::ALL.iter().all(|&b| self.coord(b).is_zero())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            one: &self.one * r,
            d0: &self.d0 * r,
            d1: &self.d1 * r,
            d00: &self.d00 * r,
            d01: &self.d01 * r,
            p: &self.p * r,
        }
    }

    /// Product with Mumford's relations.
    pub fn mul(&self, other: &Self) -> Self {
        ProductTable::standard().mul(self, other)
    }

    /// The coefficient of the point class `p`.
    pub fn degree(&self) -> &Rational {
        &self.p
    }

    /// The homogeneous component of degree `k` (zero for `k > 3`).
    pub fn degree_part(&self, k: u8) -> Self {
        let mut out = Self::zero();
        for b in Basis::ALL.into_iter().filter(|b| b.degree() == k) {
            *out.coord_mut(b) = self.coord(b).clone();
        }
        out
    }

    /// `Some(k)` if all nonzero coordinates have degree `k`; `None` for zero
    /// or mixed classes.
    pub fn homogeneous_degree(&self) -> Option<u8> {
        let mut degs = Basis::ALL
            .into_iter()
            .filter(|&b| !self.coord(b).is_zero())
            .map(Basis::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for b in Basis::ALL {
            let c = self.coord(b);
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if b == Basis::One {
                write!(f, "{}", rational::to_compact_string(c))?;
            } else {
                write!(f, "({})·{}", rational::to_compact_string(c), b.name())?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &ChowClass {
    type Output = ChowClass;

    fn add(self, o: Self) -> ChowClass {
        ChowClass {
            one: &self.one + &o.one,
            d0: &self.d0 + &o.d0,
            d1: &self.d1 + &o.d1,
            d00: &self.d00 + &o.d00,
            d01: &self.d01 + &o.d01,
            p: &self.p + &o.p,
        }
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;

    fn sub(self, o: Self) -> ChowClass {
        self + &(-o)
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;

    fn neg(self) -> ChowClass {
        self.scale(&-Rational::one())
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;

    fn mul(self, o: Self) -> ChowClass {
        ChowClass::mul(self, o)
    }
}

/// `λ₁ = (δ₀ + 2δ₁)/10`.
pub fn lambda1() -> ChowClass {
    ChowClass::divisor(frac(1, 10), frac(1, 5))
}

/// `[t_E] = 2δ₀₁`: a fixed general elliptic curve glued to a varying one.
pub fn t_e_class() -> ChowClass {
    ChowClass {
        d01: int(2),
        ..ChowClass::zero()
    }
}

/// `[η_E] = 8δ₀₀`: a varying point glued to the origin of a fixed elliptic curve.
pub fn eta_e_class() -> ChowClass {
    ChowClass {
        d00: int(8),
        ..ChowClass::zero()
    }
}

/// `[μ_P] = 16δ₀₀ + 96δ₀₁`: hyperelliptic curves branched over `t²` and the
/// roots of a fixed quintic.
pub fn mu_p_class() -> ChowClass {
    ChowClass {
        d00: int(16),
        d01: int(96),
        ..ChowClass::zero()
    }
}

/// Structure constants of the product. Only the eight products of degree-1
/// classes with degree-1 and degree-2 classes are free; the unit and the
/// vanishing above degree 3 are structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductTable {
    /// `δ₀² = d0_sq.0 · δ₀₀ + d0_sq.1 · δ₀₁`
    pub d0_sq: (Rational, Rational),
    /// `δ₀δ₁ = d0_d1 · δ₀₁`
    pub d0_d1: Rational,
    /// `δ₁² = d1_sq · δ₀₁`
    pub d1_sq: Rational,
    pub d0_d00: Rational,
    pub d0_d01: Rational,
    pub d1_d00: Rational,
    pub d1_d01: Rational,
}

impl ProductTable {
    /// Mumford's relations (with the corrected sign on `δ₁·δ₀₀`).
    pub fn standard() -> Self {
        Self {
            d0_sq: (frac(5, 3), int(-2)),
            d0_d1: int(1),
            d1_sq: frac(-1, 12),
            d0_d00: frac(-1, 4),
            d0_d01: frac(1, 4),
            d1_d00: frac(1, 8),
            d1_d01: frac(-1, 48),
        }
    }

    /// `e_i e_j` for `i, j != 1` as up to two `(basis, coefficient)` terms.
    fn relation(&self, i: Basis, j: Basis) -> [Option<(Basis, &Rational)>; 2] {
        use Basis::*;
        match (i, j) {
            (D0, D0) => [Some((D00, &self.d0_sq.0)), Some((D01, &self.d0_sq.1))],
            (D0, D1) | (D1, D0) => [Some((D01, &self.d0_d1)), None],
            (D1, D1) => [Some((D01, &self.d1_sq)), None],
            (D0, D00) | (D00, D0) => [Some((P, &self.d0_d00)), None],
            (D0, D01) | (D01, D0) => [Some((P, &self.d0_d01)), None],
            (D1, D00) | (D00, D1) => [Some((P, &self.d1_d00)), None],
            (D1, D01) | (D01, D1) => [Some((P, &self.d1_d01)), None],
            _ => [None, None],
        }
    }

    pub fn mul(&self, a: &ChowClass, b: &ChowClass) -> ChowClass {
        let mut out = ChowClass::zero();
        for i in Basis::ALL {
            let ai = a.coord(i);
            if ai.is_zero() {
                continue;
            }
            for j in Basis::ALL {
                let bj = b.coord(j);
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                match (i, j) {
                    (Basis::One, k) | (k, Basis::One) => *out.coord_mut(k) += ab,
                    _ => {
                        for (k, c) in self.relation(i, j).into_iter().flatten() {
                            *out.coord_mut(k) += &ab * c;
                        }
                    }
                }
            }
        }
        out
    }

    /// Sparse coordinates `(l, c)` of each basis product `e_i e_j`, indexed in
    /// [`Basis::ALL`] order.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<(usize, Rational)>>> {
        Basis::ALL
            .iter()
            .map(|&i| {
                Basis::ALL
                    .iter()
                    .map(|&j| {
                        let e = self.mul(&i.class(), &j.class());
                        Basis::ALL
                            .iter()
                            .enumerate()
                            .filter(|(_, b)| !e.coord(**b).is_zero())
                            .map(|(l, b)| (l, e.coord(*b).clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Basis products `(i, j, k)` for which `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub fn associativity_defects(&self) -> Vec<(Basis, Basis, Basis)> {
        let c = self.structure_constants();
        // Σ_l coeffs_l · (e_l e_k) when `left`, Σ_l coeffs_l · (e_k e_l) otherwise.
        let expand = |coeffs: &[(usize, Rational)], k: usize, left: bool| {
            let mut acc: [Rational; 6] = Default::default();
            for (l, cl) in coeffs {
                let prod = if left { &c[*l][k] } else { &c[k][*l] };
                for (m, cm) in prod {
                    acc[*m] += cl * cm;
                }
            }
            acc
        };
        let mut out = Vec::new();
        for (i, bi) in Basis::ALL.iter().enumerate() {
            for (j, bj) in Basis::ALL.iter().enumerate() {
                for (k, bk) in Basis::ALL.iter().enumerate() {
                    // (e_i e_j) e_k = Σ_l c_ij^l e_l e_k; e_i (e_j e_k) = Σ_l c_jk^l e_i e_l.
                    let left = expand(&c[i][j], k, true);
                    let right = expand(&c[j][k], i, false);
                    if left != right {
                        out.push((*bi, *bj, *bk));
                    }
                }
            }
        }
        out
    }

    /// Basis pairs whose products differ in the two orders.
    pub fn commutativity_defects(&self) -> Vec<(Basis, Basis)> {
        let mut out = Vec::new();
        for i in Basis::ALL {
            for j in Basis::ALL {
                if self.mul(&i.class(), &j.class()) != self.mul(&j.class(), &i.class()) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl Default for ProductTable {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addition_and_scaling() {
        let d0 = ChowClass::delta0();
        assert_eq!(&d0 + &d0, d0.scale(&int(2)));
        assert!(ChowClass::point().scale(&int(0)).is_zero());
        let sum = &d0 + &ChowClass::delta1().scale(&int(2));
        assert_eq!(sum, lambda1().scale(&int(10)));
    }

    #[test]
    fn table_entries() {
        let (d0, d1) = (ChowClass::delta0(), ChowClass::delta1());
        assert_eq!(d0.mul(&d1), ChowClass::delta01());
        assert_eq!(
            d0.mul(&d0),
            &ChowClass::delta00().scale(&frac(5, 3)) - &ChowClass::delta01().scale(&int(2))
        );
        assert_eq!(d1.mul(&d1), ChowClass::delta01().scale(&frac(-1, 12)));
        assert_eq!(d0.mul(&ChowClass::delta00()).degree(), &frac(-1, 4));
        assert_eq!(d0.mul(&ChowClass::delta01()).degree(), &frac(1, 4));
        assert_eq!(d1.mul(&ChowClass::delta00()).degree(), &frac(1, 8));
        assert_eq!(
            d1.mul(&ChowClass::delta01()),
            ChowClass::point().scale(&frac(-1, 48))
        );
    }

    #[test]
    fn degree_four_vanishes() {
        assert!(ChowClass::point().mul(&ChowClass::delta0()).is_zero());
        assert!(ChowClass::delta00().mul(&ChowClass::delta01()).is_zero());
        assert!(ChowClass::point().mul(&ChowClass::point()).is_zero());
    }

    #[test]
    fn unit_is_identity() {
        for b in Basis::ALL {
            assert_eq!(ChowClass::unit().mul(&b.class()), b.class());
        }
    }

    #[test]
    fn standard_table_is_commutative_and_associative() {
        let t = ProductTable::standard();
        assert!(t.commutativity_defects().is_empty());
        assert!(t.associativity_defects().is_empty());
    }

    #[test]
    fn structure_constants_match_products() {
        let t = ProductTable::standard();
        let c = t.structure_constants();
        for (i, bi) in Basis::ALL.iter().enumerate() {
            for (j, bj) in Basis::ALL.iter().enumerate() {
                let mut e = ChowClass::zero();
                for (l, r) in &c[i][j] {
                    *e.coord_mut(Basis::ALL[*l]) = r.clone();
                }
                assert_eq!(e, t.mul(&bi.class(), &bj.class()), "{bi:?}·{bj:?}");
            }
        }
    }

    #[test]
    fn associativity_matches_direct_products() {
        // Structure-constant expansion against multiplying basis classes outright.
        let t = ProductTable::standard();
        for i in Basis::ALL {
            for j in Basis::ALL {
                for k in Basis::ALL {
                    let (ei, ej, ek) = (i.class(), j.class(), k.class());
                    assert_eq!(t.mul(&t.mul(&ei, &ej), &ek), t.mul(&ei, &t.mul(&ej, &ek)));
                }
            }
        }
    }

    #[test]
    fn perturbed_table_breaks_associativity() {
        let mut t = ProductTable::standard();
        t.d0_d01 = frac(1, 3);
        assert!(!t.associativity_defects().is_empty());
    }

    #[test]
    fn test_family_classes() {
        assert_eq!(t_e_class(), ChowClass::delta01().scale(&int(2)));
        assert_eq!(eta_e_class(), ChowClass::delta00().scale(&int(8)));
        assert_eq!(mu_p_class().degree_part(2), mu_p_class());
    }

    #[test]
    fn consistency_triple() {
        assert_eq!(mu_p_class().mul(&ChowClass::delta0()).degree(), &int(20));
        assert!(mu_p_class().mul(&ChowClass::delta1()).degree().is_zero());
        assert!(lambda1().mul(&eta_e_class()).is_zero());
        assert!(ChowClass::delta00().degree().is_zero());
    }

    #[test]
    fn lambda1_is_homogeneous_degree_one() {
        assert_eq!(lambda1().degree_part(1), lambda1());
        assert_eq!(lambda1().homogeneous_degree(), Some(1));
        assert_eq!(ChowClass::zero().homogeneous_degree(), None);
        assert_eq!((&ChowClass::unit() + &ChowClass::point()).homogeneous_degree(), None);
    }

    #[test]
    fn json_shape() {
        let c = ChowClass::divisor(int(6), int(24));
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"one":"0/1","d0":"6/1","d1":"24/1","d00":"0/1","d01":"0/1","p":"0/1"}"#
        );
        let back: ChowClass = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<ChowClass>(r#"{"one":"0.5"}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(lambda1().to_string(), "(1/10)·d0 + (1/5)·d1");
        assert_eq!(ChowClass::zero().to_string(), "0");
    }
}
