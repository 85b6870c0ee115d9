//! Invariants checked on random inputs.

use num_bigint::BigInt;
use proptest::prelude::*;

use tfpl::algebra::{integer_determinant, lr_coefficient, Eisenstein, LaurentPoly};
use tfpl::tfpl_core::{enumerate_plain, Boundary, Grid};
use tfpl::words::{ExtendedLinkPattern, Word};

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-20i64..20, -6i64..6), 0..6).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (c, e) in terms {
            p.add_term(&BigInt::from(c), e);
        }
        p
    })
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 0..=max).prop_map(|l| Word::new(l).unwrap())
}

/// Two words with the same letters in some order.
fn word_pair(max: usize) -> impl Strategy<Value = (Word, Word)> {
    prop::collection::vec(0u8..2, 1..=max).prop_flat_map(|l| {
        let other = Just(l.clone()).prop_shuffle();
        (Just(l), other).prop_map(|(a, b)| (Word::new(a).unwrap(), Word::new(b).unwrap()))
    })
}

fn boundary(max: usize) -> impl Strategy<Value = Boundary> {
    prop::collection::vec(0u8..2, 1..=max).prop_flat_map(|l| {
        let s = || Just(l.clone()).prop_shuffle();
        (s(), s(), s()).prop_map(|(u, v, w)| {
            Boundary::new(Word::new(u).unwrap(), Word::new(v).unwrap(), Word::new(w).unwrap())
        })
    })
}

fn leibniz(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0;
    fn rec(a: &[Vec<i64>], k: usize, perm: &mut Vec<usize>, total: &mut i64) {
        let n = perm.len();
        if k == n {
            let mut sign = 1;
            for i in 0..n {
                for j in i + 1..n {
                    if perm[i] > perm[j] {
                        sign = -sign;
                    }
                }
            }
            *total += sign * (0..n).map(|i| a[i][perm[i]]).product::<i64>();
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            rec(a, k + 1, perm, total);
            perm.swap(k, i);
        }
    }
    rec(a, 0, &mut perm, &mut total);
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn laurent_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_at_rho_is_a_ring_map(a in poly(), b in poly()) {
        prop_assert_eq!((&a + &b).eval_at_rho(), a.eval_at_rho() + b.eval_at_rho());
        prop_assert_eq!((&a * &b).eval_at_rho(), a.eval_at_rho() * b.eval_at_rho());
        prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
    }

    #[test]
    fn laurent_text_round_trip(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn rho_is_a_primitive_sixth_root(k in 1u64..6) {
        prop_assert_eq!(Eisenstein::rho().pow(6), Eisenstein::one());
        prop_assert_ne!(Eisenstein::rho().pow(k), Eisenstein::one());
        prop_assert_eq!(Eisenstein::rho() + Eisenstein::rho_inv(), Eisenstein::one());
    }

    #[test]
    fn dominance_is_diagram_containment((a, b) in word_pair(10)) {
        prop_assert_eq!(a.dominated_by(&b).unwrap(), b.shape().contains(&a.shape()));
    }

    #[test]
    fn shape_round_trip(w in word(12)) {
        prop_assert_eq!(w.shape().size(), w.inversions());
        prop_assert_eq!(Word::from_shape(&w.shape(), w.zeros(), w.ones()), Some(w.clone()));
    }

    #[test]
    fn star_keeps_inversions(w in word(12)) {
        prop_assert_eq!(w.star().inversions(), w.inversions());
        prop_assert_eq!(w.star().star(), w.clone());
    }

    #[test]
    fn link_pattern_round_trip(w in word(14)) {
        let p = ExtendedLinkPattern::from_word(&w);
        prop_assert!(p.validate().is_ok());
        prop_assert_eq!(p.to_word(), w);
    }

    #[test]
    fn covers_add_one_inversion(w in word(12)) {
        for c in w.covers() {
            prop_assert_eq!(c.upper.inversions(), w.inversions() + 1);
            prop_assert!(w.dominated_by(&c.upper).unwrap());
            prop_assert_eq!(c.l() + c.r(), w.len());
        }
        for c in w.cocovers() {
            prop_assert_eq!(c.lower.inversions() + 1, w.inversions());
        }
    }

    #[test]
    fn lr_is_symmetric(b in boundary(7)) {
        let (u, v, w) = (b.u.shape(), b.v.shape(), b.w.shape());
        prop_assert_eq!(lr_coefficient(&u, &v, &w), lr_coefficient(&v, &u, &w));
    }

    #[test]
    fn determinant_matches_leibniz(rows in prop::collection::vec(prop::collection::vec(-9i64..10, 5), 1..=5)) {
        let n = rows.len();
        let a: Vec<Vec<i64>> = rows.into_iter().map(|r| r[..n].to_vec()).collect();
        let big: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        prop_assert_eq!(integer_determinant(&big).unwrap(), BigInt::from(leibniz(&a)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn reflection_preserves_counts(b in boundary(4)) {
        let grid = Grid::new(b.w.len()).unwrap();
        let plain = enumerate_plain(&grid, &b).unwrap();
        let mirrored = enumerate_plain(&grid, &b.reflected()).unwrap();
        prop_assert_eq!(plain.len(), mirrored.len());
        for p in &plain {
            prop_assert_eq!(p.vertical_reflect(&grid).boundary(&grid), b.reflected());
        }
    }
}
