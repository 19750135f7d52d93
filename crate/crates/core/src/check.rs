//! Output verification shared by tests, the harness and the CLI.

pub fn is_ascending<T: Ord>(v: &[T]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

/// Multiset equality, via the standard library sort as the trusted reference.
pub fn same_multiset<T: Ord + Clone>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Checks that `output` is ascending and a permutation of `input`.
pub fn verify_sorted<T: Ord + Clone>(input: &[T], output: &[T]) -> bool {
    is_ascending(output) && same_multiset(input, output)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert!(is_ascending::<u8>(&[]));
        assert!(is_ascending(&[1, 1, 2]));
        assert!(!is_ascending(&[2, 1]));
        assert!(same_multiset(&[3, 1, 1], &[1, 3, 1]));
        assert!(!same_multiset(&[1, 1], &[1, 2]));
        assert!(!same_multiset(&[1], &[1, 1]));
        assert!(verify_sorted(&[2, 1], &[1, 2]));
        assert!(!verify_sorted(&[2, 1], &[1, 1]));
    }
}
