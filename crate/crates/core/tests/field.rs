mod common;

use std::str::FromStr;

use bvext_core::field::{Field, Matrix, Rational, Scalar, Subspace};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Scalar {
    Field::Rationals.from_rational(&Rational::new(n, d).unwrap()).unwrap()
}

fn small() -> impl Strategy<Value = Scalar> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| q(n, d))
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn to_matrix(field: Field, m: &[Vec<i64>]) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    Matrix::from_rows(field, cols, m.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect()).unwrap()
}

proptest! {
    #[test]
    fn rational_field_axioms(a in small(), b in small(), c in small()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_overflow_promotes(n in i64::MAX / 4..i64::MAX, m in 2i64..1000) {
        let x = q(n, 1);
        let y = q(m, 1);
        let prod = &x * &y;
        prop_assert_eq!(&(&prod / &y), &x);
        prop_assert_eq!(prod.to_string(), (n as i128 * m as i128).to_string());
    }

    #[test]
    fn prime_field_inverse(v in 1u64..101) {
        let f = Field::prime(101).unwrap();
        let x = f.from_i64(v as i64);
        prop_assert!((&x * &x.inv().unwrap()).is_one());
        prop_assert!(f.from_i64(101).is_zero());
    }

    #[test]
    fn rational_text_round_trip(a in small()) {
        let r = Rational::from_str(&a.to_string()).unwrap();
        prop_assert_eq!(Field::Rationals.from_rational(&r).unwrap(), a);
    }

    /// Exact rank agrees with the modular oracle's elimination.
    #[test]
    fn rank_matches_oracle(m in int_matrix(5, 6)) {
        let exact = to_matrix(Field::Rationals, &m).rank();
        let p = common::ORACLE_PRIME;
        let reduced = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
        prop_assert_eq!(exact, common::rank_mod(reduced, p));
    }

    #[test]
    fn rank_nullity(m in int_matrix(4, 7)) {
        let a = to_matrix(Field::Rationals, &m);
        let ker = a.kernel();
        prop_assert_eq!(a.rank() + ker.dim(), 7);
        for v in ker.vectors() {
            prop_assert!(a.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn inverse_is_two_sided(m in int_matrix(4, 4)) {
        let a = to_matrix(Field::Rationals, &m);
        match a.inverse() {
            Some(inv) => {
                prop_assert!(a.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&a).unwrap().is_identity());
            }
            None => prop_assert!(a.rank() < 4),
        }
    }

    #[test]
    fn subspace_residual_vanishes_on_members(m in int_matrix(3, 5), coeffs in prop::collection::vec(-3i64..=3, 3)) {
        let f = Field::Rationals;
        let vecs: Vec<Vec<Scalar>> = m.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        let s = Subspace::from_spanning(f, 5, vecs.clone()).unwrap();
        let mut combo = vec![f.zero(); 5];
        for (v, c) in vecs.iter().zip(&coeffs) {
            for (x, y) in combo.iter_mut().zip(v) {
                x.add_mul(&f.from_i64(*c), y);
            }
        }
        prop_assert!(s.contains(&combo));
        prop_assert!(s.residual(&combo).iter().all(Scalar::is_zero));
    }
}

#[test]
fn field_names_parse() {
    assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
    assert_eq!("GF7".parse::<Field>().unwrap(), Field::Prime(7));
    assert_eq!("GF(2)".parse::<Field>().unwrap(), Field::Prime(2));
    assert!("GF4".parse::<Field>().is_err());
    assert!("R".parse::<Field>().is_err());
    assert_eq!(Field::Prime(5).to_string(), "GF5");
}

#[test]
fn rationals_do_not_embed_where_denominator_vanishes() {
    let half = Rational::new(1, 2).unwrap();
    assert!(Field::Prime(2).from_rational(&half).is_err());
    assert_eq!(Field::Prime(3).from_rational(&half).unwrap(), Field::Prime(3).from_i64(2));
}
