//! Randomized invariants over the whole API surface.

use std::collections::BTreeSet;

use proptest::prelude::*;

use infowidth::classes::{
    agreement_dimension, enumerate_property, vc_dimension, FunctionClass, LabeledSample,
};
use infowidth::measures::{
    complement_complexity, conditional_entropy, density, description_complexity, information,
    PropertyCollection,
};
use infowidth::width::{efficiency, info_width, WidthBackend, WidthQuery};
use infowidth::{FuncDomain, PropertySpec, TargetSpace, TargetSubset};

/// Distinct nonempty subsets of a space of `size ≤ 16`, as sorted masks.
fn members_strategy(size: u64) -> impl Strategy<Value = Vec<TargetSubset>> {
    let pool = (1u32 << size) - 1;
    proptest::collection::btree_set(1..=pool, 1..=(pool as usize).min(24)).prop_map(
        move |masks: BTreeSet<u32>| {
            masks
                .into_iter()
                .map(|mask| {
                    TargetSubset::new(
                        (0..size)
                            .filter(|&i| mask >> i & 1 == 1)
                            .collect::<Vec<_>>(),
                    )
                    .unwrap()
                })
                .collect()
        },
    )
}

fn property_strategy() -> impl Strategy<Value = PropertyCollection> {
    (2u64..=16).prop_flat_map(|size| {
        members_strategy(size).prop_map(move |members| {
            PropertyCollection::explicit(TargetSpace::new(size).unwrap(), members).unwrap()
        })
    })
}

fn class_strategy() -> impl Strategy<Value = FunctionClass> {
    (1u32..=4).prop_flat_map(|n| {
        let total = 1u32 << (1 << n);
        proptest::collection::btree_set(0..(1u32 << n), 1..=(1usize << n)).prop_map(move |codes| {
            let _ = total;
            FunctionClass::new(FuncDomain::new(n).unwrap(), codes.into_iter().collect()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn explicit_and_profiled_representations_agree(x in property_strategy()) {
        let profiled = x.to_profiled();
        prop_assert_eq!(information(&x), information(&profiled));
        prop_assert_eq!(conditional_entropy(&x), conditional_entropy(&profiled));
        prop_assert_eq!(description_complexity(&x), description_complexity(&profiled));
    }

    #[test]
    fn density_sums_to_one(x in property_strategy()) {
        let sum: f64 = density(&x).values().sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn property_json_round_trips(x in property_strategy()) {
        let explicit = PropertyCollection::from_json(&x.to_json()).unwrap();
        prop_assert_eq!(information(&x), information(&explicit));
        prop_assert_eq!(x.members().unwrap(), explicit.members().unwrap());
        let profiled = x.to_profiled();
        let back = PropertyCollection::from_json(&profiled.to_json()).unwrap();
        prop_assert_eq!(conditional_entropy(&profiled), conditional_entropy(&back));
        prop_assert_eq!(x.member_count(), back.member_count());
    }

    #[test]
    fn complement_complexity_is_an_involution(l in 1e-9f64..500.0) {
        let lc = complement_complexity(l).unwrap();
        prop_assert!(lc > 0.0);
        let back = complement_complexity(lc).unwrap();
        prop_assert!((back - l).abs() <= 1e-11 * l.max(1.0), "l={l} back={back}");
    }

    #[test]
    fn no_property_beats_the_width(x in property_strategy()) {
        // η = I/I*(l) stays within [0, 1] up to roundoff wherever defined.
        if information(&x) > 0.0 {
            let eta = efficiency(&x).unwrap();
            prop_assert!(eta > 0.0);
            prop_assert!(eta <= 1.0 + 1e-12, "eta={eta}");
        }
    }

    #[test]
    fn width_is_nondecreasing_in_complexity(
        s in 2u64..=300,
        raw in proptest::collection::vec(0.01f64..0.99, 2),
    ) {
        let space = TargetSpace::new(s).unwrap();
        // Cheapest achievable description: all 2^s − 1 subsets as members.
        let l_min = complement_complexity(s as f64).unwrap() + 1e-9;
        let mut ls: Vec<f64> = raw.iter().map(|f| l_min + f * (s as f64 - l_min)).collect();
        ls.sort_by(f64::total_cmp);
        let width = |l: f64| {
            info_width(&WidthQuery::from_complexity(space, l, Some(WidthBackend::LogDomain))
                .unwrap())
            .unwrap()
        };
        let (lo, hi) = (width(ls[0]), width(ls[1]));
        let slack = lo.accuracy + hi.accuracy;
        prop_assert!(
            hi.width >= lo.width - slack,
            "S={s} l={ls:?}: {} -> {}", lo.width, hi.width
        );
    }

    #[test]
    fn subclasses_shatter_no_more(class in class_strategy(), keep in proptest::bits::u32::ANY) {
        // Any nonempty subclass has VC dimension no larger, and agrees on
        // at least as many points.
        let kept: Vec<u32> = class
            .members()
            .iter()
            .enumerate()
            .filter(|(i, _)| keep >> (i % 32) & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        prop_assume!(!kept.is_empty());
        let sub = FunctionClass::new(class.domain(), kept).unwrap();
        prop_assert!(vc_dimension(&sub) <= vc_dimension(&class));
        prop_assert!(agreement_dimension(&sub) >= agreement_dimension(&class));
    }

    #[test]
    fn class_json_round_trips(class in class_strategy()) {
        let back = FunctionClass::from_json(&class.to_json()).unwrap();
        prop_assert_eq!(&class, &back);
    }

    #[test]
    fn enumeration_respects_set_algebra(n in 2u32..=3, d in 1u32..=3) {
        prop_assume!(d <= n);
        let domain = FuncDomain::new(n).unwrap();
        let below = enumerate_property(domain, &PropertySpec::VcBelow(d)).unwrap();
        let atleast = enumerate_property(domain, &PropertySpec::VcAtLeast(d)).unwrap();
        let total = below.member_count() + atleast.member_count();
        let all = (num_bigint::BigUint::from(1u32) << (1u64 << n)) - 1u32;
        prop_assert_eq!(total, all);
    }

    #[test]
    fn labeled_samples_round_trip_and_dedup(
        pairs in proptest::collection::vec((1u32..=6, any::<bool>()), 0..8)
    ) {
        match LabeledSample::new(pairs.clone()) {
            Ok(sample) => {
                // Deduplicated, sorted, conflict-free.
                let mut seen = BTreeSet::new();
                for &(p, _) in sample.pairs() {
                    prop_assert!(seen.insert(p), "duplicate point {p}");
                }
                let back = LabeledSample::from_json(&sample.to_json()).unwrap();
                prop_assert_eq!(sample.pairs(), back.pairs());
            }
            Err(_) => {
                // Rejected only for a genuine conflict.
                let conflict = pairs.iter().any(|&(p, l)| {
                    pairs.iter().any(|&(q, m)| p == q && l != m)
                });
                prop_assert!(conflict);
            }
        }
    }
}
