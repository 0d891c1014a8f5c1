//! Arc-crossing detection against an all-pairs oracle.

mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{crossings, naive_crossings, random_tree};
use verso::metrics::{projectivity_check, Arc};

#[test]
fn hundred_random_eight_node_trees() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut nonprojective = 0;
    for _ in 0..100 {
        let arcs = random_tree(&mut rng, 8);
        let want = naive_crossings(&arcs);
        nonprojective += usize::from(!want.is_empty());
        assert_eq!(crossings(projectivity_check(&arcs)), want, "{arcs:?}");
    }
    assert!(nonprojective > 0, "sample should include crossing trees");
}

#[test]
fn nested_and_adjacent_arcs_are_projective() {
    let arcs = [
        Arc::new(0, 4),
        Arc::new(4, 1),
        Arc::new(1, 2),
        Arc::new(4, 3),
        Arc::new(4, 5),
    ];
    assert!(projectivity_check(&arcs).is_projective());
}

#[test]
fn shared_endpoint_is_not_a_crossing() {
    assert!(projectivity_check(&[Arc::new(1, 3), Arc::new(3, 5)]).is_projective());
    assert_eq!(
        crossings(projectivity_check(&[Arc::new(1, 3), Arc::new(2, 5)])).len(),
        1
    );
}

proptest! {
    #[test]
    fn matches_oracle_on_arbitrary_arcs(pairs in prop::collection::vec((0usize..12, 0usize..12), 0..14)) {
        let arcs: Vec<Arc> = pairs.into_iter().filter(|(h, d)| h != d).map(|(h, d)| Arc::new(h, d)).collect();
        prop_assert_eq!(crossings(projectivity_check(&arcs)), naive_crossings(&arcs));
    }
}
