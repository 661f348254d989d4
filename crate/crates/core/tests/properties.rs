//! Property tests for the structural invariants that should survive any
//! refactor of the exact-arithmetic layers.

use num_bigint::BigInt;
use proptest::prelude::*;

use hsp_core::characters::{character, dimension};
use hsp_core::combinatorics::{factorial, ConjugacyClass, Partition, Permutation};
use hsp_core::measurement::tv_distance;

fn arb_partition(max_n: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=6, 1..6).prop_filter_map("partition too large", move |mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        if v.iter().sum::<u32>() <= max_n {
            Partition::new(v).ok()
        } else {
            None
        }
    })
}

fn arb_permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just(()).prop_perturb(move |_, mut rng| {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            images.swap(i, j);
        }
        Permutation::new(images).unwrap()
    })
}

proptest! {
    #[test]
    fn partition_display_parse_roundtrip(p in arb_partition(20)) {
        let text = p.to_string();
        prop_assert_eq!(Partition::parse(&text).unwrap(), p);
    }

    #[test]
    fn conjugate_is_an_involution(p in arb_partition(20)) {
        prop_assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn character_bounded_by_dimension(lam in arb_partition(8), mu in arb_partition(8)) {
        if lam.n() == mu.n() {
            let chi = character(&lam, &mu).unwrap();
            let d = BigInt::from(dimension(&lam));
            prop_assert!(chi.magnitude() <= d.magnitude());
        }
    }

    #[test]
    fn sign_twist_symmetry(lam in arb_partition(8), mu in arb_partition(8)) {
        // chi^{lam'}(mu) = sign(mu) chi^lam(mu)
        if lam.n() == mu.n() {
            let sign = ConjugacyClass::new(mu.clone()).representative().sign();
            let twisted = character(&lam.conjugate(), &mu).unwrap();
            let plain = character(&lam, &mu).unwrap();
            prop_assert_eq!(twisted, BigInt::from(sign) * plain);
        }
    }

    #[test]
    fn class_sizes_partition_the_group(n in 1u32..=9) {
        let total: num_bigint::BigUint = hsp_core::combinatorics::enumerate_partitions(n)
            .into_iter()
            .map(|mu| ConjugacyClass::new(mu).size())
            .sum();
        prop_assert_eq!(total, factorial(n));
    }

    #[test]
    fn inverse_and_sign(p in arb_permutation(7), q in arb_permutation(7)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.compose(&q).sign(), p.sign() * q.sign());
        prop_assert_eq!(p.compose(&q).inverse(), q.inverse().compose(&p.inverse()));
    }

    #[test]
    fn adjacent_word_reconstructs(p in arb_permutation(6)) {
        let mut rebuilt = Permutation::identity(6);
        for i in p.adjacent_word() {
            rebuilt = rebuilt.compose(&Permutation::adjacent_transposition(6, i));
        }
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn cycle_type_is_conjugation_invariant(p in arb_permutation(6), s in arb_permutation(6)) {
        let conj = s.compose(&p).compose(&s.inverse());
        prop_assert_eq!(conj.cycle_type(), p.cycle_type());
    }

    #[test]
    fn tv_distance_is_a_bounded_metric(
        raw_p in prop::collection::vec(0.0f64..1.0, 4),
        raw_q in prop::collection::vec(0.0f64..1.0, 4),
    ) {
        let norm = |v: &[f64]| {
            let s: f64 = v.iter().sum::<f64>().max(1e-9);
            v.iter().map(|x| x / s).collect::<Vec<_>>()
        };
        let p = norm(&raw_p);
        let q = norm(&raw_q);
        let d = tv_distance(&p, &q);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d));
        prop_assert!((d - tv_distance(&q, &p)).abs() < 1e-15);
        prop_assert!(tv_distance(&p, &p) < 1e-15);
    }
}
