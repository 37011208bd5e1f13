use dellip_core::arith::{self, dirichlet_convolve, dirichlet_inverse, ArithSeq};
use dellip_core::chow::{Basis, ChowClass};
use dellip_core::qseries::{self, QSeries};
use dellip_core::rational::{frac, int, Rational};
use num_integer::Integer;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| frac(n, d))
}

fn chow_class() -> impl Strategy<Value = ChowClass> {
    prop::array::uniform6(small_rational()).prop_map(|[one, d0, d1, d00, d01, p]| ChowClass {
        one,
        d0,
        d1,
        d00,
        d01,
        p,
    })
}

const LEN: usize = 36;

fn arith_seq() -> impl Strategy<Value = ArithSeq> {
    prop::collection::vec(small_rational(), LEN).prop_map(|v| ArithSeq::from_values(v).unwrap())
}

fn invertible_seq() -> impl Strategy<Value = ArithSeq> {
    arith_seq().prop_filter("f(1) != 0", |f| *f.get(1) != int(0))
}

proptest! {
    #[test]
    fn inverse_convolves_to_unit(f in invertible_seq()) {
        let g = dirichlet_inverse(&f).unwrap();
        prop_assert_eq!(dirichlet_convolve(&f, &g).unwrap(), ArithSeq::unit(LEN).unwrap());
    }

    #[test]
    fn convolution_commutes(f in arith_seq(), g in arith_seq()) {
        prop_assert_eq!(&f * &g, &g * &f);
    }

    #[test]
    fn convolution_associates(f in arith_seq(), g in arith_seq(), h in arith_seq()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn sigma_and_moebius_multiplicative(m in 1u64..300, n in 1u64..300, k in 0u32..4) {
        prop_assume!(m.gcd(&n) == 1);
        prop_assert_eq!(
            arith::sigma_k(m * n, k).unwrap(),
            arith::sigma_k(m, k).unwrap() * arith::sigma_k(n, k).unwrap()
        );
        prop_assert_eq!(
            arith::moebius(m * n).unwrap(),
            arith::moebius(m).unwrap() * arith::moebius(n).unwrap()
        );
    }

    #[test]
    fn chow_distributes(a in chow_class(), b in chow_class(), c in chow_class()) {
        prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn decomposition_inverts_combination(c in prop::collection::vec(small_rational(), 4), order in 8usize..40) {
        let basis = qseries::weight4_basis(order);
        let s = qseries::combine(&c, &basis, order);
        let got = qseries::quasimodular_decompose(&s, &basis).unwrap();
        prop_assert_eq!(qseries::combine(&got, &basis, order), s);
        prop_assert_eq!(got, c);
    }

    #[test]
    fn q_derivative_is_a_derivation(a in prop::collection::vec(small_rational(), 12), b in prop::collection::vec(small_rational(), 12)) {
        let (a, b) = (QSeries::from_coeffs(a), QSeries::from_coeffs(b));
        let lhs = (&a * &b).q_derivative();
        let rhs = &(&a.q_derivative() * &b) + &(&a * &b.q_derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chow_json_roundtrip_is_byte_identical(a in chow_class()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: ChowClass = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}

#[test]
fn basis_products_are_graded() {
    for i in Basis::ALL {
        for j in Basis::ALL {
            let prod = i.class().mul(&j.class());
            let deg = i.degree() + j.degree();
            if deg > 3 {
                assert!(prod.is_zero(), "{i:?}·{j:?}");
            } else if !prod.is_zero() {
                assert_eq!(prod.homogeneous_degree(), Some(deg), "{i:?}·{j:?}");
            }
        }
    }
}

#[test]
fn sigma_at_primes() {
    for p in (2u64..400).filter(|&n| arith::factorize(n).unwrap() == vec![(n, 1)]) {
        for k in 0..4u32 {
            assert_eq!(
                arith::sigma_k(p, k).unwrap(),
                int(1) + Rational::from_integer(num_bigint::BigInt::from(p).pow(k))
            );
        }
    }
}
