use fpcoh_core::linalg::{Fp, FpMatrix, Subspace};
use proptest::prelude::*;

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = FpMatrix> {
    proptest::collection::vec(proptest::collection::vec(0..p as i64, cols), rows)
        .prop_map(move |d| FpMatrix::from_dense(Fp::new(p).unwrap(), &d).unwrap())
}

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7)]
}

fn matrix_any() -> impl Strategy<Value = FpMatrix> {
    (prime(), 1usize..9, 1usize..9).prop_flat_map(|(p, r, c)| matrix(p, r, c))
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant(a in matrix_any()) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn rank_nullity(a in matrix_any()) {
        let k = a.kernel();
        prop_assert_eq!(a.rank() + k.dim(), a.cols());
        for v in k.basis() {
            let dense = {
                let mut d = vec![0u32; a.cols()];
                for &(c, x) in v { d[c] = x; }
                d
            };
            prop_assert!(a.mul_vec(&dense).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn product_rank_bound((p, n) in (prime(), 1usize..7), seed in any::<u64>()) {
        let f = Fp::new(p).unwrap();
        let entries = |s: u64| -> Vec<Vec<i64>> {
            (0..n).map(|i| (0..n).map(|j| ((s >> ((i * n + j) % 60)) as i64 + (i * 7 + j * 3) as i64) % p as i64).collect()).collect()
        };
        let a = FpMatrix::from_dense(f, &entries(seed)).unwrap();
        let b = FpMatrix::from_dense(f, &entries(seed.rotate_left(17))).unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        if a.rank() == n {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), FpMatrix::identity(f, n));
        }
    }

    #[test]
    fn subspace_dimension_formula(a in (prime(), 1usize..6, 1usize..8).prop_flat_map(|(p, r, c)| (matrix(p, r, c), matrix(p, r, c)))) {
        let (u, w) = a;
        let su = u.row_space();
        let sw = w.row_space();
        let sum = su.sum(&sw).unwrap();
        let meet = su.intersect(&sw).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), su.dim() + sw.dim());
        prop_assert!(su.contains_subspace(&meet) && sw.contains_subspace(&meet));
        prop_assert!(sum.contains_subspace(&su) && sum.contains_subspace(&sw));
    }

    #[test]
    fn image_matches_column_rank(a in matrix_any()) {
        prop_assert_eq!(a.image().dim(), a.rank());
        let full = Subspace::full(a.field(), a.rows());
        prop_assert!(full.contains_subspace(&a.image()));
    }
}
