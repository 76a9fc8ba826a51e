mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use twocircles::arrangement::Arrangement;
use twocircles::canonical::{canonical_key, symmetry, CanonicalKey, EquivalenceMode};
use twocircles::regions::{defining_vectors, region_graph};

const RELABELINGS: u32 = 128;

fn vectors(arr: &Arrangement) -> (Vec<usize>, Vec<usize>) {
    defining_vectors(&region_graph(arr).unwrap()).unordered()
}

#[test]
fn keys_and_vectors_survive_random_relabelings() {
    for arr in common::members() {
        let config = canonical_key(&arr, EquivalenceMode::CONFIGURATION).unwrap();
        let flow = canonical_key(&arr, EquivalenceMode::FLOW).unwrap();
        let vecs = vectors(&arr);
        let identity: Vec<u32> = (0..arr.dart_count() as u32).collect();
        let mut runner = TestRunner::new(Config { failure_persistence: None, ..Config::with_cases(RELABELINGS) });
        runner
            .run(&Just(identity).prop_shuffle(), |perm| {
                let image = arr.relabel(&perm).unwrap();
                prop_assert_eq!(&canonical_key(&image, EquivalenceMode::CONFIGURATION).unwrap(), &config);
                prop_assert_eq!(&canonical_key(&image, EquivalenceMode::FLOW).unwrap(), &flow);
                prop_assert_eq!(vectors(&image), vecs.clone());
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn reflection_and_swap_images_stay_in_their_class() {
    for level in common::levels() {
        let keys: BTreeSet<&CanonicalKey> = level.classes.iter().map(|c| &c.key).collect();
        for arr in level.classes.iter().map(|c| twocircles::arrangement::decode(&c.representative).unwrap()) {
            let key = canonical_key(&arr, EquivalenceMode::CONFIGURATION).unwrap();
            for image in [arr.reflected(), arr.curves_swapped(), arr.reflected().curves_swapped()] {
                let k = canonical_key(&image, EquivalenceMode::CONFIGURATION).unwrap();
                assert!(keys.contains(&k));
                assert_eq!(k, key);
                assert_eq!(vectors(&image), vectors(&arr));
            }
            // flow keys see a swap unless the class is swap-symmetric
            let swapped = canonical_key(&arr.curves_swapped(), EquivalenceMode::FLOW).unwrap();
            let flow = canonical_key(&arr, EquivalenceMode::FLOW).unwrap();
            assert_eq!(swapped == flow, symmetry(&arr).unwrap().has_swap_automorphism);
        }
    }
}

#[test]
fn flow_equivalence_refines_configuration_equivalence() {
    let classes: Vec<_> = common::levels().iter().flat_map(|l| &l.classes).collect();
    for a in &classes {
        for b in &classes {
            if a.flow_key == b.flow_key {
                assert_eq!(a.key, b.key);
            }
        }
    }
}

#[test]
fn configuration_count_is_flow_count_minus_asymmetric() {
    let flow_levels =
        twocircles::generator::enumerate_up_to(10, EquivalenceMode::FLOW).unwrap();
    for (config, flow) in common::levels().iter().zip(&flow_levels) {
        let row = config.count_row();
        assert_eq!(flow.len(), row.flows);
        assert_eq!(config.len(), flow.len() - row.asymmetric);
    }
    let flows: Vec<usize> = flow_levels.iter().map(|l| l.len()).collect();
    assert_eq!(flows, common::EXPECTED_FLOWS);
}

#[test]
fn chirality_flag_never_merges_more() {
    let chiral = EquivalenceMode { allow_swap: true, allow_reflection: false };
    let levels = twocircles::generator::enumerate_up_to(8, chiral).unwrap();
    for (a, b) in levels.iter().zip(common::levels()) {
        assert!(a.len() >= b.len());
    }
}
