mod common;

use common::{mirrored, params, plus_word, word};
use proptest::prelude::*;
use torelli::homology::{compose, correction_twists, db_class, xij_matrix, H1Vector};
use torelli::quotient::{nf, nf_mul};
use torelli::surface::{expand_plus_word, oe_profile, schreier_rewrite_plus};
use torelli::words::{conjugate, parse_word, Generator, Letter, Word};
use torelli::{in_gamma, in_plus, push_action};

fn differences(w: &Word, g: usize, b: usize) -> Option<Vec<i64>> {
    oe_profile(w, &params(g, b)).ok().map(|p| p.differences())
}

#[test]
fn worked_example_end_to_end() {
    let p = params(4, 6);
    let w = parse_word("x1 y2 x2 x3^-1 y5 y1^-2 x1 x2^-1 y4^3 x3^-1", &p).unwrap();
    assert_eq!(w.len(), 13);
    let profile = oe_profile(&w, &p).unwrap();
    assert_eq!(profile.odd, [1, 1, 1, 0]);
    assert_eq!(profile.even, [1, 1, 1, 0]);
    assert!(in_gamma(&w, &p));
    assert!(nf(&w, &p).is_trivial());
    assert!(push_action(&w, &p).unwrap().is_identity());
}

/// Column `c_i` of `x_*` is `c_i + (E_i - O_i) d_b`; computed here by
/// applying the matrix to basis vectors.
#[test]
fn push_action_columns_by_hand() {
    let p = params(3, 2);
    let w = parse_word("x1 x2", &p).unwrap();
    let m = push_action(&w, &p).unwrap();
    let db = db_class(&p);
    let image = |k: usize| torelli::homology::act(&m, &H1Vector::basis(3 + 1, k)).unwrap();
    // O_1 = 1, E_2 = 1: c_1 -> c_1 - d_b, c_2 -> c_2 + d_b
    let mut c1 = H1Vector::basis(4, 0).0;
    let mut c2 = H1Vector::basis(4, 1).0;
    for k in 0..4 {
        c1[k] -= db.0[k];
        c2[k] += db.0[k];
    }
    assert_eq!(image(0).0, c1);
    assert_eq!(image(1).0, c2);
    assert_eq!(image(2), H1Vector::basis(4, 2));
    assert_eq!(image(3), H1Vector::basis(4, 3));
    assert_eq!(c1, vec![3, 2, 2, 1]);
}

#[test]
fn xij_pairs_commute_exhaustively_at_genus_four() {
    let p = params(4, 3);
    let all: Vec<_> = (1..=4)
        .flat_map(|i| (1..=4).map(move |j| (i, j)))
        .map(|(i, j)| xij_matrix(i, j, &p).unwrap())
        .collect();
    for a in &all {
        for b in &all {
            assert_eq!(compose(a, b).unwrap(), compose(b, a).unwrap());
        }
    }
}

#[test]
fn correction_by_hand() {
    let p = params(3, 1);
    let c = correction_twists(&[2, 0, -2], &p).unwrap();
    assert_eq!(c.twists, vec![(1, 2)]);
    assert!(c.composed.is_identity());
    assert!(correction_twists(&[1, 1, 0], &p).is_err());
}

proptest! {
    #[test]
    fn kernel_concordance(w in word(5, 3, 40)) {
        let p = params(5, 3);
        let member = in_gamma(&w, &p);
        prop_assert_eq!(member, nf(&w, &p).is_trivial());
        if in_plus(&w, &p) {
            prop_assert_eq!(member, push_action(&w, &p).unwrap().is_identity());
        }
    }

    #[test]
    fn mirrored_words_are_members(w in mirrored(5, 3, 20)) {
        prop_assert!(in_gamma(&w, &params(5, 3)));
    }

    #[test]
    fn profile_ignores_cancelling_pairs(w in plus_word(4, 3, 30), l in common::letter(4, 3), pos in any::<prop::sample::Index>()) {
        let at = pos.index(w.len() + 1);
        let mut letters = w.letters().to_vec();
        letters.splice(at..at, [l, l.inv()]);
        prop_assert_eq!(differences(&w, 4, 3), differences(&Word::from_letters(letters), 4, 3));
    }

    #[test]
    fn profile_ignores_y_letters(w in plus_word(4, 4, 30), j in 1usize..4, e in prop_oneof![Just(1), Just(-1)], pos in any::<prop::sample::Index>()) {
        let at = pos.index(w.len() + 1);
        let mut letters = w.letters().to_vec();
        letters.insert(at, Letter::new(Generator::y(j), e));
        prop_assert_eq!(differences(&w, 4, 4), differences(&Word::from_letters(letters), 4, 4));
    }

    #[test]
    fn closed_relator_keeps_membership(w in word(4, 1, 30), pos in any::<prop::sample::Index>()) {
        let p = params(4, 1);
        let at = pos.index(w.len() + 1);
        let mut letters = w.letters().to_vec();
        let relator = (1..=4).flat_map(|i| [Letter::pos(Generator::x(i)); 2]);
        letters.splice(at..at, relator);
        prop_assert_eq!(in_gamma(&w, &p), in_gamma(&Word::from_letters(letters), &p));
    }

    #[test]
    fn kernel_is_a_normal_subgroup(a in mirrored(4, 3, 10), b in mirrored(4, 3, 10), u in word(4, 3, 12)) {
        let p = params(4, 3);
        prop_assert!(in_gamma(&a.concat(&b), &p));
        prop_assert!(in_gamma(&a.inverse(), &p));
        prop_assert!(in_gamma(&conjugate(&u, &a), &p));
    }

    #[test]
    fn nf_is_a_homomorphism(a in word(5, 3, 20), b in word(5, 3, 20)) {
        let p = params(5, 3);
        prop_assert_eq!(nf(&a.concat(&b), &p), nf_mul(&nf(&a, &p), &nf(&b, &p)).unwrap());
    }

    #[test]
    fn push_action_is_multiplicative_either_way(a in plus_word(5, 2, 20), b in plus_word(5, 2, 20)) {
        let p = params(5, 2);
        let (ma, mb) = (push_action(&a, &p).unwrap(), push_action(&b, &p).unwrap());
        let ab = push_action(&a.concat(&b), &p).unwrap();
        prop_assert_eq!(&ab, &compose(&ma, &mb).unwrap());
        prop_assert_eq!(&ab, &compose(&mb, &ma).unwrap());
    }

    #[test]
    fn push_action_multiples_are_profile_differences(w in plus_word(5, 3, 30)) {
        let p = params(5, 3);
        let profile = oe_profile(&w, &p).unwrap();
        let expected: Vec<i64> = (1..=5).map(|i| profile.e(i) as i64 - profile.o(i) as i64).collect();
        prop_assert_eq!(push_action(&w, &p).unwrap().db_multiples(&p), Some(expected));
    }

    #[test]
    fn plus_rewrite_expands_back(w in plus_word(4, 3, 30)) {
        let p = params(4, 3);
        let rewritten = schreier_rewrite_plus(&w, &p).unwrap();
        prop_assert!(expand_plus_word(&rewritten, &p).freely_equals(&w));
    }

    #[test]
    fn corrections_cancel(n in prop::collection::vec(-5i64..=5, 4)) {
        let p = params(5, 3);
        let mut n = n;
        n.push(-n.iter().sum::<i64>());
        prop_assert!(correction_twists(&n, &p).unwrap().composed.is_identity());
    }
}
