//! Partitioning schemes: classic Lomuto, one-pivot block Lomuto and
//! two-pivot block Lomuto, plus the insertion sort used for small inputs.
//!
//! All ranges are 0-based and half-open. The block routines classify a
//! window of at most `B` elements by writing every offset into the block
//! buffer and advancing the fill count by the 0/1 value of the comparison,
//! then perform the recorded swaps in a second loop. The classification loop
//! contains no data-dependent branch.

use crate::sort::SortConfig;
use crate::tally::{NoTally, Site, Tally};

/// Scratch space holding the offsets of misplaced elements of one window.
#[derive(Debug, Clone)]
pub struct BlockBuffer {
    slots: Box<[usize]>,
}

impl BlockBuffer {
    /// # Panics
    /// If `block_size` is zero.
    pub fn new(block_size: usize) -> Self {
        assert!(block_size >= 1, "block size must be at least 1");
        BlockBuffer {
            slots: vec![0; block_size].into_boxed_slice(),
        }
    }

    pub fn block_size(&self) -> usize {
        self.slots.len()
    }
}

/// Outcome of a one-pivot partition: `v[..pivot_index] < v[pivot_index] <= v[pivot_index + 1..]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartitionOne {
    pub pivot_index: usize,
}

/// Outcome of a two-pivot partition.
///
/// Elements left of `p_index` are smaller than `v[p_index]`, elements strictly
/// between the two indices lie in `[v[p_index], v[q_index]]`, elements right
/// of `q_index` are larger than `v[q_index]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartitionTwo {
    pub p_index: usize,
    pub q_index: usize,
}

/// Lomuto's partitioning scheme with the pivot at the last position.
///
/// Elements smaller than the pivot keep their relative order.
pub fn lomuto_classic<T: Ord>(v: &mut [T]) -> PartitionOne {
    PartitionOne {
        pivot_index: lomuto_classic_with(v, &mut NoTally),
    }
}

/// One-pivot block partitioning with the pivot at the last position.
///
/// Produces exactly the same arrangement as [`lomuto_classic`] for every
/// block size.
pub fn block_partition_one<T: Ord>(v: &mut [T], config: &SortConfig) -> PartitionOne {
    let mut block = BlockBuffer::new(config.block_size());
    block_partition_one_in(v, &mut block)
}

/// [`block_partition_one`] with a caller-provided block buffer.
pub fn block_partition_one_in<T: Ord>(v: &mut [T], block: &mut BlockBuffer) -> PartitionOne {
    PartitionOne {
        pivot_index: block_partition_one_with(v, block, &mut NoTally),
    }
}

/// Two-pivot block partitioning with pivots `p = v[0] <= q = v[len - 1]`.
///
/// Every element equal to `p` or `q` ends up in the middle group.
pub fn block_partition_two<T: Ord>(v: &mut [T], config: &SortConfig) -> PartitionTwo {
    let mut block = BlockBuffer::new(config.block_size());
    block_partition_two_in(v, &mut block)
}

/// [`block_partition_two`] with a caller-provided block buffer.
pub fn block_partition_two_in<T: Ord>(v: &mut [T], block: &mut BlockBuffer) -> PartitionTwo {
    debug_assert!(v.len() >= 2 && v[0] <= v[v.len() - 1], "pivots out of order");
    block_partition_two_with(v, 0, block, &mut NoTally)
}

/// Textbook insertion sort.
pub fn insertion_sort<T: Ord>(v: &mut [T]) {
    insertion_sort_with(v, &mut NoTally, Site::Small);
}

pub(crate) fn lomuto_classic_with<T: Ord, C: Tally>(v: &mut [T], tally: &mut C) -> usize {
    let n = v.len();
    debug_assert!(n >= 1, "partitioning needs a pivot");
    let (rest, last) = v.split_at_mut(n - 1);
    let pivot = &last[0];
    let mut i = 0;
    for j in 0..rest.len() {
        if rest[j] < *pivot {
            rest.swap(i, j);
            i += 1;
        }
    }
    tally.partition_cmp(n - 1);
    tally.partition_ma(n - 1 + i);
    tally.swaps(i + 1);
    tally.boundary_ma(2);
    v.swap(i, n - 1);
    i
}

pub(crate) fn block_partition_one_with<T: Ord, C: Tally>(
    v: &mut [T],
    block: &mut BlockBuffer,
    tally: &mut C,
) -> usize {
    let n = v.len();
    debug_assert!(n >= 1, "partitioning needs a pivot");
    let block = &mut block.slots[..];
    let b = block.len();
    let (rest, last) = v.split_at_mut(n - 1);
    let pivot = &last[0];
    let len = rest.len();
    let mut i = 0;
    let mut j = 0;
    while j < len {
        let t = b.min(len - j);
        let mut num = 0;
        for (c, x) in rest[j..j + t].iter().enumerate() {
            block[num] = c;
            num += (*x < *pivot) as usize;
        }
        for &offset in &block[..num] {
            rest.swap(i, j + offset);
            i += 1;
        }
        tally.partition_cmp(t);
        tally.partition_ma(t + num);
        tally.swaps(num);
        j += t;
    }
    tally.boundary_ma(2);
    tally.swaps(1);
    v.swap(i, n - 1);
    i
}

/// Two-pivot block partitioning of `v` where `v[1..1 + middle]` is already
/// known to lie in `[p, q]` (sorted sample elements); those are neither
/// compared nor counted. `middle == 0` is the plain scheme.
pub(crate) fn block_partition_two_with<T: Ord, C: Tally>(
    v: &mut [T],
    middle: usize,
    block: &mut BlockBuffer,
    tally: &mut C,
) -> PartitionTwo {
    let n = v.len();
    debug_assert!(n >= 2, "two-pivot partitioning needs two pivots");
    debug_assert!(middle <= n - 2);
    let block = &mut block.slots[..];
    let b = block.len();
    let (head, rest) = v.split_at_mut(1);
    let (body, tail) = rest.split_at_mut(n - 2);
    let p = &head[0];
    let q = &tail[0];
    let len = body.len();
    // body[..i] < p, body[i..j] in [p, q], body[j..k] > q, body[k..] unseen.
    let mut i = 0;
    let mut j = middle;
    let mut k = middle;
    while k < len {
        let t = b.min(len - k);
        let mut num_le_q = 0;
        for (c, x) in body[k..k + t].iter().enumerate() {
            block[num_le_q] = c;
            num_le_q += (*x <= *q) as usize;
        }
        for (c, &offset) in block[..num_le_q].iter().enumerate() {
            body.swap(j + c, k + offset);
        }
        k += t;
        let mut num_lt_p = 0;
        for c in 0..num_le_q {
            block[num_lt_p] = c;
            num_lt_p += (body[j + c] < *p) as usize;
        }
        for &offset in &block[..num_lt_p] {
            body.swap(i, j + offset);
            i += 1;
        }
        j += num_le_q;
        tally.partition_cmp(t + num_le_q);
        tally.partition_ma(t + num_le_q + num_lt_p);
        tally.swaps(num_le_q + num_lt_p);
    }
    // Body index x is slice index x + 1.
    v.swap(i, 0);
    v.swap(j + 1, n - 1);
    tally.boundary_ma(4);
    tally.swaps(2);
    PartitionTwo {
        p_index: i,
        q_index: j + 1,
    }
}

pub(crate) fn insertion_sort_with<T: Ord, C: Tally>(v: &mut [T], tally: &mut C, site: Site) {
    let mut cmp = 0;
    let mut swaps = 0;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 {
            cmp += 1;
            if v[j] < v[j - 1] {
                v.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            } else {
                break;
            }
        }
    }
    // One read per comparison plus one read of each inserted key.
    tally.sort_cmp(site, cmp);
    tally.sort_ma(site, cmp + v.len().saturating_sub(1));
    tally.swaps(swaps);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::{is_ascending, same_multiset};

    fn classic(v: &[u64]) -> (Vec<u64>, usize) {
        let mut w = v.to_vec();
        let i = lomuto_classic(&mut w).pivot_index;
        (w, i)
    }

    fn one(v: &[u64], b: usize) -> (Vec<u64>, usize) {
        let mut w = v.to_vec();
        let i = block_partition_one_in(&mut w, &mut BlockBuffer::new(b)).pivot_index;
        (w, i)
    }

    fn two(v: &[u64], b: usize) -> (Vec<u64>, PartitionTwo) {
        let mut w = v.to_vec();
        let r = block_partition_two_in(&mut w, &mut BlockBuffer::new(b));
        (w, r)
    }

    fn one_pivot_predicate(w: &[u64], i: usize) -> bool {
        w[..i].iter().all(|x| *x < w[i]) && w[i + 1..].iter().all(|x| *x >= w[i])
    }

    fn two_pivot_predicate(w: &[u64], r: PartitionTwo) -> bool {
        let (p, q) = (w[r.p_index], w[r.q_index]);
        r.p_index < r.q_index
            && w[..r.p_index].iter().all(|x| *x < p)
            && w[r.p_index + 1..r.q_index].iter().all(|x| p <= *x && *x <= q)
            && w[r.q_index + 1..].iter().all(|x| *x > q)
    }

    #[test]
    fn classic_small_cases() {
        assert_eq!(classic(&[1, 2]), (vec![1, 2], 1));
        assert_eq!(classic(&[2, 1]), (vec![1, 2], 0));
        let (w, i) = classic(&[3, 1, 4, 1, 5, 2]);
        assert!(one_pivot_predicate(&w, i));
        assert_eq!(i, 2);
        // Elements below the pivot keep their input order.
        assert_eq!(&w[..i], &[1, 1]);
        assert_eq!(w[i], 2);
    }

    #[test]
    fn classic_single_element() {
        assert_eq!(classic(&[7]), (vec![7], 0));
    }

    #[test]
    fn block_one_length_two_matches_classic() {
        for v in [[1u64, 2], [2, 1], [3, 3]] {
            for b in [1, 2, 1024] {
                assert_eq!(one(&v, b), classic(&v));
            }
        }
    }

    #[test]
    fn block_one_multi_window_tail() {
        let b = 8;
        let n = 3 * b + 1;
        // Distinct keys in a scrambled order, pivot = 13 at the end.
        let mut v: Vec<u64> = (0..n as u64).map(|x| (x * 11 + 5) % n as u64).collect();
        let last = v.len() - 1;
        let pos = v.iter().position(|&x| x == 13).unwrap();
        v.swap(pos, last);
        let (w, i) = one(&v, b);
        assert!(one_pivot_predicate(&w, i));
        assert_eq!(i, 13);
        assert!(same_multiset(&v, &w));
        assert_eq!((w.clone(), i), classic(&v));
    }

    #[test]
    fn block_one_matches_classic_on_permutation() {
        let mut v: Vec<u64> = (1..=100).collect();
        // Deterministic scramble.
        for i in 0..v.len() {
            let j = (i * 37 + 11) % v.len();
            v.swap(i, j);
        }
        let (w1, i1) = one(&v, 4);
        let (w0, i0) = classic(&v);
        assert_eq!(i1, i0);
        assert_eq!(w1[..i1], w0[..i0]);
        assert!(same_multiset(&w1[i1..], &w0[i0..]));
    }

    #[test]
    fn block_two_trivial_cases() {
        assert_eq!(
            two(&[1, 2], 4),
            (vec![1, 2], PartitionTwo { p_index: 0, q_index: 1 })
        );
        let (w, r) = two(&[5, 5, 5, 5], 4);
        assert_eq!(w, vec![5, 5, 5, 5]);
        assert_eq!(r, PartitionTwo { p_index: 0, q_index: 3 });
    }

    #[test]
    fn block_two_many_duplicates() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut v: Vec<u64> = (0..10_000).map(|_| rng.gen_range(0..32)).collect();
        let last = v.len() - 1;
        if v[0] > v[last] {
            v.swap(0, last);
        }
        let (w, r) = two(&v, 7);
        assert!(two_pivot_predicate(&w, r));
        assert!(same_multiset(&v, &w));
    }

    #[test]
    fn block_two_equal_pivot_values_land_in_middle() {
        let v = vec![3u64, 3, 1, 7, 3, 9, 7, 0, 7];
        let (w, r) = two(&v, 2);
        assert!(two_pivot_predicate(&w, r));
        let middle = &w[r.p_index + 1..r.q_index];
        assert_eq!(middle.iter().filter(|&&x| x == 3).count(), 2);
        assert_eq!(middle.iter().filter(|&&x| x == 7).count(), 2);
    }

    #[test]
    fn block_two_with_middle_prefix() {
        // p = 2, prefix [4, 3] already in [p, q], q = 6.
        let mut v = vec![2u64, 4, 3, 9, 1, 5, 0, 7, 6];
        let r = block_partition_two_with(&mut v, 2, &mut BlockBuffer::new(3), &mut NoTally);
        assert!(two_pivot_predicate(&v, r));
        assert_eq!(r, PartitionTwo { p_index: 2, q_index: 6 });
    }

    #[test]
    fn insertion_sort_cases() {
        let mut e: Vec<u64> = vec![];
        insertion_sort(&mut e);
        assert!(e.is_empty());
        let mut v = vec![2u64, 1];
        insertion_sort(&mut v);
        assert_eq!(v, vec![1, 2]);

        let mut v: Vec<u64> = (0..50).map(|x| (x * 31 + 7) % 23).collect();
        let mut expected = v.clone();
        expected.sort_unstable();
        insertion_sort(&mut v);
        assert_eq!(v, expected);
        assert!(is_ascending(&v));
    }

    #[test]
    #[should_panic]
    fn zero_block_size_rejected() {
        BlockBuffer::new(0);
    }
}
