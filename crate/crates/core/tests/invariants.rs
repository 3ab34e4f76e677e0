//! Cross-module invariants: the conjugation-orbit engine against the naive
//! all-pairs oracle, generator-set independence, Frobenius class-count
//! relations, and regularity of every search record.

use classcount::grouplib::{
    class_report, conjugacy_classes_naive, element_order, FiniteGroup,
};
use classcount::matgroups::{
    find_regular_subgroups, fixed_point_free, frobenius_affine, frobenius_metacyclic,
    MatOracle, PrimeFieldMatrix,
};
use classcount::nearfield::{nearfield_group, DicksonParams, SemilinearOracle};
use classcount::numtheory::primes_up_to;

/// Orbit algorithm vs naive all-pairs on every catalogued group of order
/// <= 200.
#[test]
fn orbit_classes_match_naive_up_to_200() {
    let mut checked = 0;
    // metacyclic Frobenius groups
    for p in primes_up_to(41) {
        for t in classcount::numtheory::divisors(p - 1) {
            if p * t <= 200 {
                let g = frobenius_metacyclic(p, t).unwrap();
                assert_eq!(g.conjugacy_classes(), conjugacy_classes_naive(&g));
                checked += 1;
            }
        }
    }
    // near-field multiplicative groups
    for pr in classcount::nearfield::admissible_params(200) {
        let g = nearfield_group(&pr).unwrap();
        assert_eq!(g.conjugacy_classes(), conjugacy_classes_naive(&g));
        checked += 1;
    }
    // matrix groups: SL(2,3), SL(2,5), and a dihedral-ish subgroup
    for (p, rows) in [
        (3u64, [[1u64, 1], [0, 1]]),
        (5, [[1, 1], [0, 1]]),
    ] {
        let a = PrimeFieldMatrix::from_rows(&[&rows[0], &rows[1]], p);
        let b = PrimeFieldMatrix::from_rows(&[&[0, p - 1], &[1, 0]], p);
        let g = FiniteGroup::generate(MatOracle { p, dim: 2 }, vec![a, b], 200).unwrap();
        assert!(g.order() <= 200);
        assert_eq!(g.conjugacy_classes(), conjugacy_classes_naive(&g));
        checked += 1;
    }
    assert!(checked > 30, "catalogue too small: {checked}");
}

#[test]
fn class_counting_invariant_under_generator_permutation() {
    let pr = DicksonParams::new(5, 1, 2).unwrap();
    let g = nearfield_group(&pr).unwrap();
    let reversed: Vec<_> = g.generators().iter().rev().cloned().collect();
    let g2 = FiniteGroup::from_elements(
        SemilinearOracle::new(pr.q(), pr.m(), pr.n),
        g.elements().to_vec(),
        reversed,
    )
    .unwrap();
    assert_eq!(g.conjugacy_classes(), g2.conjugacy_classes());
}

#[test]
fn class_sizes_partition_and_divide_order() {
    for pr in [
        DicksonParams::new(3, 1, 2).unwrap(),
        DicksonParams::new(7, 1, 3).unwrap(),
    ] {
        let g = nearfield_group(&pr).unwrap();
        let r = class_report(&g, pr.p);
        assert_eq!(r.class_sizes.iter().sum::<u64>(), g.order());
        assert!(r.class_sizes.iter().all(|&s| g.order() % s == 0));
        // identity class is a singleton
        assert_eq!(r.class_sizes[0], 1);
        // every element order here is a p-power or p-regular
        assert_eq!(r.k_p + r.k_p_prime, r.k + 1);
        assert_eq!(r.mixed_classes, 0);
    }
}

/// For every regular complement E found at p: k(V x| E) = k(E) + 1,
/// k_{p'} = k(E) and k_p = 2.
#[test]
fn affine_products_of_regular_complements() {
    for p in [5u64, 7] {
        for record in find_regular_subgroups(p).unwrap() {
            let e_group = record.group();
            let g = frobenius_affine(p, 2, &e_group, 2_000_000).unwrap();
            let r = class_report(&g, p);
            assert_eq!(r.k, record.class_count + 1, "p={p}");
            assert_eq!(r.k_p_prime, record.class_count, "p={p}");
            assert_eq!(r.k_p, 2, "p={p}");
        }
    }
}

#[test]
fn regular_records_are_regular() {
    for p in [5u64, 7, 11] {
        for record in find_regular_subgroups(p).unwrap() {
            assert_eq!(record.order, p * p - 1);
            let g = record.group();
            assert_eq!(g.order(), p * p - 1);
            let mut images = std::collections::HashSet::new();
            let id = PrimeFieldMatrix::identity(2);
            for m in g.elements() {
                assert!(images.insert(m.base_image(p)), "orbit collision at p={p}");
                if *m != id {
                    assert!(fixed_point_free(m, p), "non-fpf element at p={p}");
                }
            }
            assert_eq!(images.len() as u64, p * p - 1);
        }
    }
}

#[test]
fn element_order_functions_agree() {
    let g = frobenius_metacyclic(13, 12).unwrap();
    for el in g.elements() {
        assert_eq!(element_order(el, &g.oracle), g.element_order_in(el));
    }
}

#[test]
fn semilinear_lower_bound_matches_metacyclic_reports() {
    use classcount::boundscan::semilinear_class_lower_bound;
    for p in primes_up_to(60) {
        let g = frobenius_metacyclic(p, p - 1).unwrap();
        let r = class_report(&g, p);
        assert_eq!(semilinear_class_lower_bound(p, 1), p - 1);
        assert_eq!(r.k_p_prime, p - 1);
    }
}
