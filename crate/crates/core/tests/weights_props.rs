use fpcoh_core::congruence::Mat2;
use fpcoh_core::linalg::is_prime;
use fpcoh_core::weights::{admissible_weights, bn_decomposition, lattice_reduction, psl2_order, GaloisData};
use proptest::prelude::*;

#[test]
fn bn_dimensions_add_up() {
    for p in (5u64..40).filter(|&p| is_prime(p)) {
        let b = bn_decomposition(p).unwrap();
        assert_eq!(b.total_dim() as u64, psl2_order(p), "p = {p}");
        for c in &b.components {
            let factor_dims: usize = c.factors.iter().map(|d| d + 1).sum();
            assert_eq!(factor_dims, c.dim, "{} at p = {p}", c.name);
            if c.name.starts_with("V_") {
                assert_eq!(c.dim, 2 * p as usize);
            }
        }
        // each Sym^d appears in the socle with multiplicity d + 1
        let count = |d: usize| b.components.iter().filter(|c| c.factors.first() == Some(&d)).map(|c| c.multiplicity).sum::<usize>();
        for d in (0..p as usize).step_by(2) {
            assert_eq!(count(d), d + 1, "socle Sym^{d} at p = {p}");
        }
    }
}

fn galois_data() -> impl Strategy<Value = GaloisData> {
    (1usize..5).prop_flat_map(|half| {
        let n = 2 * half;
        let conj: Vec<usize> = (0..n).map(|i| i ^ 1).collect();
        let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        proptest::collection::vec(perm, 0..3).prop_map(move |group_elements| GaloisData {
            labels: (0..n).map(|i| format!("s{i}")).collect(),
            conjugation: conj.clone(),
            group_elements,
        })
    })
}

proptest! {
    #[test]
    fn constant_weights_are_admissible(gd in galois_data(), w in 0u64..10) {
        let r = admissible_weights(&gd, &vec![w; gd.labels.len()]).unwrap();
        prop_assert!(r.admissible);
        let mut all: Vec<String> = r.orbits.concat();
        all.sort();
        let mut labels = gd.labels.clone();
        labels.sort();
        prop_assert_eq!(all, labels);
    }

    #[test]
    fn orbits_are_closed_under_conjugation(gd in galois_data()) {
        let orbits = gd.conjugation_orbits().unwrap();
        for o in &orbits {
            prop_assert!(o.len() >= 2);
            for &i in o {
                prop_assert!(o.contains(&gd.conjugation[i]));
                for g in &gd.group_elements {
                    // g τ g⁻¹ maps g(i) to g(τ(i))
                    let gi = g.iter().position(|&x| x == i).unwrap();
                    let conj_of_i = g[gd.conjugation[gi]];
                    prop_assert!(o.contains(&conj_of_i));
                }
            }
        }
    }

    #[test]
    fn weights_differing_within_an_orbit_are_rejected(gd in galois_data()) {
        let orbits = gd.conjugation_orbits().unwrap();
        let mut w = vec![0u64; gd.labels.len()];
        w[orbits[0][1]] = 1;
        prop_assert!(!admissible_weights(&gd, &w).unwrap().admissible);
    }
}

/// ((c/3)³ − a²(c/3))/3 mod 3, computed directly from a lift of g.
fn cubic_class(g: &Mat2) -> u32 {
    let a = g.a() as i64;
    let c1 = (g.c() / 3) as i64;
    let v = (c1.pow(3) - a * a * c1).rem_euclid(9);
    assert_eq!(v % 3, 0);
    (v / 3) as u32
}

#[test]
fn cubic_integral_polynomial_is_in_lattice_and_moves() {
    let l = lattice_reduction(3, 3, 1, 3).unwrap();
    let values: Vec<(usize, u32)> =
        l.elements.iter().map(cubic_class).enumerate().filter(|&(_, x)| x != 0).collect();
    assert!(!values.is_empty());
    assert!(l.span.contains(&values));

    let h = Mat2 { q: 27, e: [1, 0, 9, 1] };
    let moved = l.elements.iter().any(|g| cubic_class(&g.mul(&h)) != cubic_class(g));
    assert!(moved);
    assert!(!l.certificate.invariant);
    assert!(l.certificate.failures.iter().any(|f| f.starts_with("lower")));
}

#[test]
fn small_weights_reduce_to_sym() {
    for (p, d) in [(3u64, 0usize), (3, 1), (3, 2), (5, 0), (5, 2), (5, 4)] {
        let l = lattice_reduction(p, d, 1, 3).unwrap();
        assert_eq!(l.dim(), d + 1, "p = {p}, d = {d}");
        assert!(l.certificate.invariant && l.certificate.submodule && l.certificate.borel_coset_containment);
    }
}
