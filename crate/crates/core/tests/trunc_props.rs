use std::collections::HashMap;

use fpcoh_core::congruence::{principal_elements, Mat2};
use fpcoh_core::linalg::{Fp, FpMatrix};
use fpcoh_core::trunc::{binom, filtration_by_operators, minimal_level, TruncatedAlgebra};
use proptest::prelude::*;

fn graded(degrees: &[usize], n: usize) -> Vec<usize> {
    (0..=n).map(|i| degrees.iter().filter(|&&d| d == i).count()).collect()
}

#[test]
fn truncated_algebra_has_polynomial_graded_dimensions() {
    for n in 0..=4 {
        let m = minimal_level(3, n);
        let a = TruncatedAlgebra::new(3, m, n).unwrap();
        assert_eq!(a.dim(), binom(n + 3, 3));
        assert_eq!(graded(&a.degrees(), n), (0..=n).map(|i| binom(i + 2, 2)).collect::<Vec<_>>());
    }
}

/// Augmentation filtration of the full group algebra F_3[G(3)/G(27)] under left
/// translation, computed with dense permutation matrices.
#[test]
fn group_algebra_filtration_matches_truncation() {
    let (p, m, n) = (3u64, 3u32, 4usize);
    let elements = principal_elements(p, m);
    let index: HashMap<Mat2, usize> = elements.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let q = 27;
    let gens = [Mat2 { q, e: [4, 0, 0, 7] }, Mat2 { q, e: [1, 3, 0, 1] }, Mat2 { q, e: [1, 0, 3, 1] }];
    let f = Fp::new(3).unwrap();
    let ops: Vec<FpMatrix> = gens
        .iter()
        .map(|h| {
            let trip: Vec<(usize, usize, i64)> = elements.iter().enumerate().map(|(i, g)| (index[&h.mul(g)], i, 1)).collect();
            FpMatrix::from_triplets(f, elements.len(), elements.len(), trip).unwrap()
        })
        .collect();
    let filt = filtration_by_operators(f, elements.len(), &ops, n).unwrap();
    let a = TruncatedAlgebra::new(p, m, n).unwrap();
    assert_eq!(filt.graded_dims()[..=n], graded(&a.degrees(), n)[..]);
    assert_eq!(filt.quotient_dim(), a.dim());
}

fn element() -> impl Strategy<Value = Mat2> {
    let els = principal_elements(3, 3);
    (0..els.len()).prop_map(move |i| els[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn left_multiplication_is_a_unipotent_representation(g in element(), h in element()) {
        let a = TruncatedAlgebra::new(3, 3, 3).unwrap();
        let lg = a.left_mult(&g).unwrap();
        let lh = a.left_mult(&h).unwrap();
        prop_assert_eq!(a.left_mult(&g.mul(&h)).unwrap(), lg.mul(&lh).unwrap());
        // (L_g − 1) raises degree
        let deg = a.degrees();
        let nil = lg.sub(&FpMatrix::identity(a.field(), a.dim())).unwrap();
        for r in 0..nil.rows() {
            for &(c, _) in nil.row(r) {
                prop_assert!(deg[r] > deg[c]);
            }
        }
    }
}
