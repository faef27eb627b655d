//! Subset enumeration and counting used by the enumeration-based engines.
//!
//! The brute-force oracle deliberately does not use this module; it keeps
//! its own naive enumeration so that oracle and engines stay independent.

use num::BigUint;

/// Binomial coefficient as an exact big integer; 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Size of the Hamming ball: sum of `C(n, s)` for `s <= k`.
pub fn ball_size(n: usize, k: usize) -> BigUint {
    (0..=k.min(n)).map(|s| binomial(n, s)).sum()
}

/// Calls `f` with each size-`k` subset of `0..n` in lexicographic order,
/// stopping early when `f` returns false.
pub fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        if !f(&subset) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if subset[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 0), BigUint::from(1u32));
        assert_eq!(binomial(5, 6), BigUint::ZERO);
        assert_eq!(binomial(40, 20), "137846528820".parse().unwrap());
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(ball_size(4, 0), BigUint::from(1u32));
        assert_eq!(ball_size(4, 2), BigUint::from(11u32));
        assert_eq!(ball_size(4, 9), BigUint::from(16u32));
    }

    #[test]
    fn subsets_are_lexicographic_and_complete() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, &mut |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );

        let mut empty = Vec::new();
        for_each_subset(3, 0, &mut |s| {
            empty.push(s.to_vec());
            true
        });
        assert_eq!(empty, vec![Vec::<usize>::new()]);

        let mut count = 0u32;
        for_each_subset(10, 4, &mut |_| {
            count += 1;
            true
        });
        assert_eq!(count, 210);
    }

    #[test]
    fn early_stop() {
        let mut count = 0;
        for_each_subset(6, 3, &mut |_| {
            count += 1;
            count < 5
        });
        assert_eq!(count, 5);
    }
}
