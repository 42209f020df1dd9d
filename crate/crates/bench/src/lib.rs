//! Fixtures shared by the benchmarks.

use fpcoh_core::{CongruenceMap, Fp, FpMatrix, GroupPresentation, Poly, RingSpec};

/// SL(2, Z[√−2]) with generators a, t, u and the central z = −I.
pub fn sl2_o2() -> GroupPresentation {
    GroupPresentation::parse_named(
        "SL2(O-2)",
        "atuz",
        &["ttZ", "atatatZ", "tUtutUtuZ", "auAU", "zz", "zaZA", "ztZT", "zuZU"],
    )
    .expect("valid presentation")
}

/// Reduction of the standard images at (p, x − a1) to level p^k.
pub fn sl2_o2_map(p: u64, a1: u64, k: u32) -> CongruenceMap {
    let c = |s: &str| Poly::parse(s).expect("polynomial");
    let images = [
        [c("1"), c("1"), c("0"), c("1")],
        [c("0"), c("-1"), c("1"), c("0")],
        [c("1"), c("x"), c("0"), c("1")],
        [c("-1"), c("0"), c("0"), c("-1")],
    ];
    let ring = RingSpec::new(Poly::parse("x^2+2").expect("polynomial"), "O-2").expect("monic");
    CongruenceMap::from_ring(&ring, &images, p, a1, k).expect("unramified prime")
}

/// Deterministic sparse matrix with about `per_row` entries per row.
pub fn pseudo_random_matrix(p: u32, rows: usize, cols: usize, per_row: usize, seed: u64) -> FpMatrix {
    let mut s = seed | 1;
    let mut next = || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        s
    };
    let mut trip = Vec::with_capacity(rows * per_row);
    for r in 0..rows {
        for _ in 0..per_row {
            let c = (next() % cols as u64) as usize;
            let x = (next() % u64::from(p)) as i64;
            trip.push((r, c, x));
        }
    }
    FpMatrix::from_triplets(Fp::new(p).expect("prime"), rows, cols, trip).expect("in range")
}
