use std::ffi::{CStr, CString};
use std::ptr;

use blocklomuto_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bl_last_error()) }.to_string_lossy().into_owned()
}

fn sorter(alg: &str) -> *mut BlSorter {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bl_sorter_new(c(alg).as_ptr(), &mut s) }, BL_OK);
    assert!(!s.is_null());
    s
}

#[test]
fn sorts_through_every_algorithm() {
    for alg in ["classic", "L1", "L2", "std"] {
        let s = sorter(alg);
        let mut v: Vec<u64> = (0..5000).map(|i| (i * 7919) % 1237).collect();
        let mut expected = v.clone();
        expected.sort_unstable();
        assert_eq!(unsafe { bl_sort_u64(s, v.as_mut_ptr(), v.len()) }, BL_OK);
        assert_eq!(v, expected, "{alg}");
        let mut w: Vec<i64> = (0..3000).map(|i| 1500 - ((i * 31) % 3000)).collect();
        let mut expected = w.clone();
        expected.sort_unstable();
        assert_eq!(unsafe { bl_sort_i64(s, w.as_mut_ptr(), w.len()) }, BL_OK);
        assert_eq!(w, expected);
        assert_eq!(unsafe { bl_sort_u64(s, ptr::null_mut(), 0) }, BL_OK);
        unsafe { bl_sorter_free(s) };
    }
}

#[test]
fn counted_sort_fills_counters() {
    let s = sorter("L2");
    let mut v: Vec<u64> = (0..10_000).rev().collect();
    let mut counters = BlCounters::default();
    assert_eq!(
        unsafe { bl_sort_u64_counted(s, v.as_mut_ptr(), v.len(), &mut counters) },
        BL_OK
    );
    assert!(v.windows(2).all(|w| w[0] <= w[1]));
    assert!(counters.total_cmp > 0);
    assert!(counters.total_cmp >= counters.sum_partition_cmp);
    assert!(counters.max_depth >= 1);
    unsafe { bl_sorter_free(s) };

    let s = sorter("std");
    assert_eq!(
        unsafe { bl_sort_u64_counted(s, v.as_mut_ptr(), v.len(), &mut counters) },
        BL_ERR_UNSUPPORTED
    );
    unsafe { bl_sorter_free(s) };
}

#[test]
fn configuration_errors_keep_previous_settings() {
    let s = sorter("L2");
    assert_eq!(unsafe { bl_sorter_set_block_size(s, 0) }, BL_ERR_INVALID_CONFIG);
    assert!(last_error().contains("block size"));
    assert_eq!(unsafe { bl_sorter_set_strategy(s, c("1 (2 of 3)").as_ptr()) }, BL_ERR_INVALID_CONFIG);
    assert_eq!(unsafe { bl_sorter_set_strategy(s, c("2 (9 of 3)").as_ptr()) }, BL_ERR_UNKNOWN_NAME);
    assert_eq!(unsafe { bl_sorter_set_strategy(s, c("2 (1,3 of 5)").as_ptr()) }, BL_OK);
    assert_eq!(unsafe { bl_sorter_set_cutoff(s, 3) }, BL_ERR_INVALID_CONFIG);
    assert_eq!(unsafe { bl_sorter_set_cutoff(s, 8) }, BL_OK);
    assert_eq!(unsafe { bl_sorter_set_block_size(s, 16) }, BL_OK);
    assert_eq!(unsafe { bl_sorter_set_equal_guard(s, false) }, BL_OK);
    let mut v = vec![3u64; 1000];
    v[10] = 1;
    assert_eq!(unsafe { bl_sort_u64(s, v.as_mut_ptr(), v.len()) }, BL_OK);
    assert_eq!(v[0], 1);
    unsafe { bl_sorter_free(s) };
}

#[test]
fn null_and_bad_names() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bl_sorter_new(c("quick").as_ptr(), &mut s) }, BL_ERR_UNKNOWN_NAME);
    assert!(s.is_null());
    assert!(last_error().contains("quick"));
    assert_eq!(unsafe { bl_sorter_new(ptr::null(), &mut s) }, BL_ERR_NULL);
    assert_eq!(unsafe { bl_sort_u64(ptr::null_mut(), ptr::null_mut(), 0) }, BL_ERR_NULL);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { bl_sorter_new(bad.as_ptr().cast(), &mut s) }, BL_ERR_UTF8);
    unsafe { bl_sorter_free(ptr::null_mut()) };
}

#[test]
fn cost_model_entry_points() {
    let mut h = 0.0;
    let t = [1usize, 1];
    assert_eq!(unsafe { bl_entropy(t.as_ptr(), t.len(), &mut h) }, BL_OK);
    assert!((h - 7.0 / 12.0).abs() < 1e-15);

    let mut k = 0.0;
    let t = [0usize, 0];
    assert_eq!(
        unsafe { bl_sorting_constant(c("L1").as_ptr(), c("ma").as_ptr(), t.as_ptr(), 2, &mut k) },
        BL_OK
    );
    assert_eq!(k, 3.0);
    assert_eq!(
        unsafe { bl_sorting_constant(c("L2").as_ptr(), c("ma").as_ptr(), t.as_ptr(), 2, &mut k) },
        BL_ERR_INVALID_CONFIG
    );

    let mut out = [0usize; 3];
    let mut len = 0;
    assert_eq!(
        unsafe {
            bl_best_t(c("L2").as_ptr(), c("cmp").as_ptr(), 3, out.as_mut_ptr(), 3, &mut len, &mut k)
        },
        BL_OK
    );
    assert_eq!((len, out), (3, [0, 1, 2]));
    assert!((k - 1.73).abs() < 0.005);
    assert_eq!(
        unsafe {
            bl_best_t(c("L2").as_ptr(), c("cmp").as_ptr(), 3, out.as_mut_ptr(), 2, &mut len, &mut k)
        },
        BL_ERR_BUFFER_TOO_SMALL
    );
    assert_eq!(len, 3);
    assert_eq!(
        unsafe { bl_best_t(c("L2").as_ptr(), c("cpu").as_ptr(), 3, out.as_mut_ptr(), 3, &mut len, &mut k) },
        BL_ERR_UNKNOWN_NAME
    );
}

#[test]
fn generate_matches_library() {
    let mut buf = vec![0u64; 8];
    assert_eq!(unsafe { bl_generate(c("EightDup").as_ptr(), 8, 0, 0, buf.as_mut_ptr()) }, BL_OK);
    assert_eq!(buf, vec![4, 5, 4, 5, 4, 5, 4, 5]);
    let mut p = vec![0u64; 100];
    assert_eq!(unsafe { bl_generate(c("Permutation").as_ptr(), 100, 5, 2, p.as_mut_ptr()) }, BL_OK);
    let d = blocklomuto::Distribution::new(blocklomuto::DistributionKind::Permutation, 100, 5).with_stream(2);
    assert_eq!(p, blocklomuto::generate(&d));
    assert_eq!(unsafe { bl_generate(c("Zipf").as_ptr(), 1, 0, 0, p.as_mut_ptr()) }, BL_ERR_UNKNOWN_NAME);
}
