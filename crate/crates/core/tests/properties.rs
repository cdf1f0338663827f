mod common;

use lext_core::cf::{canonicalize, cf_expand_u64, cf_value_u64, quotient_sum};
use lext_core::corpus::{random_instance, seeded_poset};
use lext_core::gadget::{cf_poset, ensure_bounded, pad_fixed};
use lext_core::linext::{count, count_fixed, count_pinned, rho};
use lext_core::{CountInstance, Poset};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common as oracle;

fn poset_strategy(max: usize) -> impl Strategy<Value = Poset> {
    (any::<u64>(), 1..=max, 0.0f64..1.0, any::<bool>())
        .prop_map(|(seed, n, d, shuffle)| seeded_poset(seed, n, d, shuffle))
}

fn instance_strategy(max: usize) -> impl Strategy<Value = CountInstance> {
    (poset_strategy(max), any::<u64>(), 0usize..3).prop_map(|(p, seed, k)| {
        let k = k.min(p.len() - 1);
        random_instance(&mut ChaCha8Rng::seed_from_u64(seed), &p, k)
    })
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn count_matches_oracle(p in poset_strategy(10)) {
        prop_assert_eq!(count(&p).unwrap(), oracle::e(&p));
    }

    #[test]
    fn count_is_invariant_under_relabeling((p, perm) in poset_strategy(9).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), perm_strategy(n))
    })) {
        prop_assert_eq!(count(&p).unwrap(), count(&p.relabel(&perm).unwrap()).unwrap());
    }

    #[test]
    fn dual_has_mirrored_counts(inst in instance_strategy(8)) {
        let n = inst.n();
        let mirrored: Vec<(usize, usize)> = inst.fixed.iter().map(|&(z, c)| (z, n + 1 - c)).collect();
        let dual = CountInstance::new(inst.poset.dual(), mirrored, inst.x, n + 1 - inst.a).unwrap();
        prop_assert_eq!(count_fixed(&inst, false).unwrap(), count_fixed(&dual, false).unwrap());
        prop_assert_eq!(count(&inst.poset).unwrap(), count(&inst.poset.dual()).unwrap());
    }

    #[test]
    fn pinned_counts_sum_over_values(inst in instance_strategy(8)) {
        let total: BigUint = (1..=inst.n() as i64).map(|v| inst.n_at(v).unwrap()).sum();
        prop_assert_eq!(total, count_fixed(&inst, true).unwrap());
    }

    #[test]
    fn sums_multiply((p, q) in (poset_strategy(5), poset_strategy(5))) {
        let (ep, eq) = (oracle::e(&p), oracle::e(&q));
        prop_assert_eq!(count(&p.linear_sum(&q)).unwrap(), &ep * &eq);
        let (n, m) = (p.len(), q.len());
        let binom: BigUint = (1..=m).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(n + i) / BigUint::from(i));
        prop_assert_eq!(count(&p.disjoint_sum(&q)).unwrap(), binom * ep * eq);
    }

    #[test]
    fn rho_lies_in_range(p in poset_strategy(9), pick in any::<prop::sample::Index>()) {
        let x = pick.index(p.len());
        let r = rho(&p, x).unwrap();
        prop_assert!(r >= BigRational::from_integer(1.into()));
        prop_assert!(r <= BigRational::from_integer(BigInt::from(p.len())));
        prop_assert_eq!(r, oracle::rho(&p, x));
    }

    #[test]
    fn stanley_sequence_is_log_concave(inst in instance_strategy(8)) {
        let c = inst.neighbourhood(&Default::default()).unwrap();
        prop_assert!(oracle::signed_defect(&c) >= BigInt::from(0));
    }

    #[test]
    fn padding_and_bounding_preserve_counts(inst in instance_strategy(7), extra in 0usize..3) {
        let padded = pad_fixed(&inst, inst.k() + extra).unwrap();
        let bounded = ensure_bounded(&inst).instance;
        let want = count_fixed(&inst, false).unwrap();
        prop_assert_eq!(count_fixed(&padded, false).unwrap(), want.clone());
        prop_assert_eq!(count_fixed(&bounded, false).unwrap(), want);
    }

    #[test]
    fn conflicting_pins_vanish(p in poset_strategy(6)) {
        let n = p.len();
        if n >= 2 {
            prop_assert_eq!(count_pinned(&p, &[(0, 1), (1, 1)]).unwrap(), BigUint::from(0u32));
        }
        prop_assert_eq!(count_pinned(&p, &[(0, n + 1)]).unwrap(), BigUint::from(0u32));
    }

    #[test]
    fn cf_round_trip(p in 0u64..100_000, q in 1u64..100_000) {
        let e = cf_expand_u64(p, q).unwrap();
        let qs: Vec<u64> = e.quotients.iter().map(|v| v.try_into().unwrap()).collect();
        prop_assert_eq!(&qs, &oracle::euclid(p, q));
        prop_assert_eq!(cf_value_u64(&qs).unwrap(), BigRational::new(p.into(), q.into()));
        prop_assert_eq!(canonicalize(&e.quotients).unwrap(), e.quotients);
    }

    #[test]
    fn quotient_sum_ignores_common_factors(m in 1u64..5_000, extra in 0u64..5_000, g in 1u64..50) {
        let a = m + extra;
        prop_assert_eq!(quotient_sum(m, a).unwrap(), quotient_sum(g * m, g * a).unwrap());
    }

    #[test]
    fn cf_poset_realizes_value(qs in prop::collection::vec(1u64..4, 1..4)) {
        let g = cf_poset(&qs).unwrap();
        prop_assert_eq!(oracle::rho(&g.poset, g.x()), oracle::cf_eval(&qs));
        prop_assert!(oracle::width(&g.poset) <= 2);
    }

    #[test]
    fn seeded_posets_are_deterministic(seed in any::<u64>(), n in 0usize..12, d in 0.0f64..1.0) {
        prop_assert_eq!(seeded_poset(seed, n, d, true), seeded_poset(seed, n, d, true));
    }
}
