use fpcoh_core::group::{fundamental_identity_defect, fox_derivative, Letter, Word};
use proptest::prelude::*;

fn letters(n_gens: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec((0..n_gens, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..max_len)
}

fn word(n_gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    letters(n_gens, max_len).prop_map(Word::new)
}

proptest! {
    #[test]
    fn reduction_is_idempotent_and_cancels(ls in letters(3, 20)) {
        let w = Word::new(ls.clone());
        prop_assert_eq!(Word::new(w.letters().to_vec()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inv()));
        prop_assert!(w.concat(&w.inverse()).is_empty());
        prop_assert!(ls.len() >= w.len() && (ls.len() - w.len()).is_multiple_of(2));
    }

    #[test]
    fn concatenation_is_associative(a in word(3, 10), b in word(3, 10), c in word(3, 10)) {
        prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
    }

    #[test]
    fn exponent_sums_are_additive(a in word(3, 12), b in word(3, 12)) {
        for g in 0..3 {
            prop_assert_eq!(a.concat(&b).exponent_sum(g), a.exponent_sum(g) + b.exponent_sum(g));
        }
    }

    #[test]
    fn fox_fundamental_identity(r in word(3, 16)) {
        prop_assert!(fundamental_identity_defect(&r, 3).unwrap().is_zero());
    }

    #[test]
    fn fox_product_rule(u in word(2, 8), v in word(2, 8)) {
        // ∂(uv)/∂x = ∂u/∂x + u·∂v/∂x
        for j in 0..2 {
            let lhs = fox_derivative(&u.concat(&v), j, 2).unwrap();
            let rhs = fox_derivative(&u, j, 2).unwrap().add(&fox_derivative(&v, j, 2).unwrap().left_mul_word(&u));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fox_augmentation_is_exponent_sum(r in word(3, 16)) {
        for j in 0..3 {
            prop_assert_eq!(fox_derivative(&r, j, 3).unwrap().augmentation(), r.exponent_sum(j));
        }
    }

    #[test]
    fn involution_is_involutive(r in word(3, 12)) {
        let e = fox_derivative(&r, 0, 3).unwrap();
        prop_assert_eq!(e.involution().involution(), e);
    }
}
