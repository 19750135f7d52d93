use blocklomuto::check::{is_ascending, same_multiset};
use blocklomuto::cost::entropy_h;
use blocklomuto::{
    block_partition_two_in, generate, instrumented_sort, select_pivots, sort, strategy_catalog,
    Algorithm, BlockBuffer, Distribution, DistributionKind, PivotStrategy, SampleVector, SortConfig,
};
use proptest::prelude::*;

fn small_values() -> impl Strategy<Value = Vec<u32>> {
    prop_oneof![
        prop::collection::vec(0u32..4, 0..300),
        prop::collection::vec(any::<u32>(), 0..300),
        prop::collection::vec(0u32..50, 300..3000),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_algorithm_sorts_a_permutation_of_its_input(v in small_values()) {
        for alg in Algorithm::ALL {
            let mut w = v.clone();
            sort(alg, &mut w, &SortConfig::default()).unwrap();
            prop_assert!(is_ascending(&w));
            prop_assert!(same_multiset(&v, &w));
        }
    }

    #[test]
    fn catalog_strategies_sort_correctly(v in small_values(), idx in 0usize..11) {
        let (_, strategy) = &strategy_catalog()[idx];
        let alg = if strategy.pivots() == 1 { Algorithm::L1 } else { Algorithm::L2 };
        let config = SortConfig::builder().strategy(strategy.clone()).build().unwrap();
        let mut w = v.clone();
        sort(alg, &mut w, &config).unwrap();
        let mut expected = v.clone();
        expected.sort_unstable();
        prop_assert_eq!(w, expected);
    }

    #[test]
    fn block_size_does_not_affect_the_result(v in small_values(), b in 1usize..70) {
        let small = SortConfig::builder().block_size(b).build().unwrap();
        for alg in [Algorithm::Classic, Algorithm::L1, Algorithm::L2] {
            let mut a = v.clone();
            let mut c = v.clone();
            sort(alg, &mut a, &small).unwrap();
            sort(alg, &mut c, &SortConfig::default()).unwrap();
            prop_assert_eq!(a, c);
        }
    }

    #[test]
    fn instrumentation_does_not_change_the_output(v in small_values()) {
        let keyed: Vec<(u32, usize)> = v.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        for alg in [Algorithm::Classic, Algorithm::L1, Algorithm::L2] {
            let mut plain = keyed.clone();
            let mut counted = keyed.clone();
            sort(alg, &mut plain, &SortConfig::default()).unwrap();
            let c = instrumented_sort(alg, &mut counted, &SortConfig::default()).unwrap();
            prop_assert_eq!(&plain, &counted);
            prop_assert_eq!(
                c.total_cmp,
                c.sum_partition_cmp + c.sample_cmp + c.small_sort_cmp + c.guard_cmp
            );
            prop_assert_eq!(
                c.total_ma,
                c.sum_partition_ma + c.boundary_ma + c.sample_ma + c.small_sort_ma
            );
        }
    }

    #[test]
    fn generation_is_deterministic(kind_idx in 0usize..7, n in 0usize..5000, seed: u64, stream in 0u64..5) {
        let kind = DistributionKind::ALL[kind_idx];
        let d = Distribution::new(kind, n, seed).with_stream(stream);
        let a = generate(&d);
        prop_assert_eq!(a.len(), n);
        prop_assert_eq!(a, generate(&d));
    }

    #[test]
    fn two_pivot_partition_groups_are_ordered(mut v in prop::collection::vec(0u32..40, 2..400), b in 1usize..40) {
        let n = v.len();
        if v[0] > v[n - 1] {
            v.swap(0, n - 1);
        }
        let orig = v.clone();
        let r = block_partition_two_in(&mut v, &mut BlockBuffer::new(b));
        prop_assert!(r.p_index < r.q_index && r.q_index < n);
        let (p, q) = (v[r.p_index], v[r.q_index]);
        prop_assert!(v[..r.p_index].iter().all(|&x| x < p));
        prop_assert!(v[r.p_index + 1..r.q_index].iter().all(|&x| p <= x && x <= q));
        prop_assert!(v[r.q_index + 1..].iter().all(|&x| x > q));
        prop_assert!(same_multiset(&orig, &v));
    }

    #[test]
    fn selected_pivots_are_ordered(v in prop::collection::vec(any::<u16>(), 30..500), idx in 0usize..11) {
        let (_, strategy) = &strategy_catalog()[idx];
        let mut w = v.clone();
        let layout = select_pivots(&mut w, strategy);
        let n = w.len();
        let region = layout.lower..n - layout.upper;
        if layout.pivots == 2 {
            let (p, q) = (w[region.start], w[region.end - 1]);
            prop_assert!(p <= q);
            prop_assert!(w[..region.start].iter().all(|&x| x <= p));
            prop_assert!(w[region.end..].iter().all(|&x| x >= q));
            let middle = &w[region.start + 1..region.start + 1 + layout.middle];
            prop_assert!(middle.iter().all(|&x| p <= x && x <= q));
        } else {
            let pivot = w[region.end - 1];
            prop_assert!(w[..region.start].iter().all(|&x| x <= pivot));
            prop_assert!(w[region.end..].iter().all(|&x| x >= pivot));
        }
        prop_assert!(same_multiset(&v, &w));
    }

    #[test]
    fn entropy_is_symmetric(t in prop::collection::vec(0usize..30, 2..4)) {
        let forward = SampleVector::new(t.clone()).unwrap();
        let mut r = t.clone();
        r.reverse();
        let backward = SampleVector::new(r).unwrap();
        let (a, b) = (entropy_h(&forward), entropy_h(&backward));
        prop_assert_eq!(a.as_exact(), b.as_exact());
    }
}

#[test]
fn direct_strategy_is_in_the_catalog() {
    let names: Vec<String> = strategy_catalog().into_iter().map(|(n, _)| n).collect();
    assert!(names.iter().any(|n| n == "1 (direct)"), "{names:?}");
    assert!(strategy_catalog()
        .iter()
        .any(|(_, s)| matches!(s, PivotStrategy::Direct(_))));
}
