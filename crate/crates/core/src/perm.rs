//! Exhaustive enumeration of the symmetric group, for brute-force oracles.

/// Calls `visit` once for every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut visit: impl FnMut(&[u8])) {
    assert!(n <= u8::MAX as usize);
    let mut perm: Vec<u8> = (0..n as u8).collect();
    let mut counters = vec![0usize; n];
    visit(&perm);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            visit(&perm);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Descent word of `perm` packed into a mask; bit `i - 1` is set iff
/// `perm_i > perm_{i+1}`.
pub(crate) fn descent_mask(perm: &[u8]) -> u64 {
    perm.windows(2)
        .enumerate()
        .fold(0, |m, (i, p)| if p[0] > p[1] { m | 1 << i } else { m })
}

/// Peak set of `perm` packed into a mask; bit `i - 1` is set iff position `i`
/// (1-based) is a peak.
pub(crate) fn peak_mask(perm: &[u8]) -> u64 {
    perm.windows(3).enumerate().fold(0, |m, (i, p)| {
        if p[0] < p[1] && p[1] > p[2] {
            m | 1 << (i + 1)
        } else {
            m
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn enumerates_each_permutation_once() {
        for n in 0..=6 {
            let mut seen = HashSet::new();
            for_each_permutation(n, |p| {
                assert!(seen.insert(p.to_vec()));
            });
            assert_eq!(seen.len(), (1..=n).product::<usize>().max(1));
        }
    }

    #[test]
    fn masks() {
        // 31248576 in zero-based values.
        let p = [2u8, 0, 1, 3, 7, 4, 6, 5];
        assert_eq!(descent_mask(&p), 0b1010001);
        assert_eq!(peak_mask(&p), 0b1010000);
    }
}
