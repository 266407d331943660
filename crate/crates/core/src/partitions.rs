//! Set-partition enumeration shared by the number oracle, the forest
//! enumerator, and the poset builder.
//!
//! Partitions are visited as slices of blocks over `{0, …, n−1}`; blocks are
//! ordered by their minima and each block is internally sorted, so every
//! partition is produced exactly once.

/// Visits every set partition of `{0, …, n−1}` whose final block count `b`
/// satisfies `min_blocks ≤ b ≤ max_blocks` and `accept(b)`.
///
/// The recursion places element `i` into each existing block or opens a new
/// one, pruning branches that can no longer reach `min_blocks` or that
/// already exceed `max_blocks`.
pub(crate) fn for_each_partition_bounded(
    n: usize,
    min_blocks: usize,
    max_blocks: usize,
    accept: &dyn Fn(usize) -> bool,
    f: &mut dyn FnMut(&[Vec<usize>]),
) {
    if n == 0 || min_blocks > max_blocks {
        return;
    }
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(n);
    place(0, n, min_blocks, max_blocks, accept, &mut blocks, f);
}

fn place(
    i: usize,
    n: usize,
    min_blocks: usize,
    max_blocks: usize,
    accept: &dyn Fn(usize) -> bool,
    blocks: &mut Vec<Vec<usize>>,
    f: &mut dyn FnMut(&[Vec<usize>]),
) {
    if i == n {
        if blocks.len() >= min_blocks && accept(blocks.len()) {
            f(blocks);
        }
        return;
    }
    // Remaining elements must still be able to open enough new blocks.
    let remaining = n - i;
    for b in 0..blocks.len() {
        if blocks.len() + remaining - 1 >= min_blocks {
            blocks[b].push(i);
            place(i + 1, n, min_blocks, max_blocks, accept, blocks, f);
            blocks[b].pop();
        }
    }
    if blocks.len() < max_blocks {
        blocks.push(vec![i]);
        place(i + 1, n, min_blocks, max_blocks, accept, blocks, f);
        blocks.pop();
    }
}

/// Visits every set partition of `{0, …, n−1}`.
pub(crate) fn for_each_partition(n: usize, f: &mut dyn FnMut(&[Vec<usize>])) {
    for_each_partition_bounded(n, 1, n, &|_| true, f);
}

/// Visits every set partition of `{0, …, n−1}` into exactly `k` blocks.
pub(crate) fn for_each_partition_into(n: usize, k: usize, f: &mut dyn FnMut(&[Vec<usize>])) {
    for_each_partition_bounded(n, k, k, &|b| b == k, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(n: usize) -> u64 {
        let mut count = 0;
        for_each_partition(n, &mut |_| count += 1);
        count
    }

    fn stirling2(n: usize, k: usize) -> u64 {
        let mut count = 0;
        for_each_partition_into(n, k, &mut |_| count += 1);
        count
    }

    #[test]
    fn bell_numbers() {
        assert_eq!(
            (1..=8).map(bell).collect::<Vec<_>>(),
            vec![1, 2, 5, 15, 52, 203, 877, 4140]
        );
    }

    #[test]
    fn counts_into_k_blocks() {
        assert_eq!(stirling2(4, 2), 7);
        assert_eq!(stirling2(5, 3), 25);
        assert_eq!(stirling2(5, 5), 1);
        assert_eq!(stirling2(5, 6), 0);
    }

    #[test]
    fn blocks_are_canonical_and_distinct() {
        let mut seen = std::collections::HashSet::new();
        for_each_partition(5, &mut |blocks| {
            for b in blocks {
                assert!(b.windows(2).all(|w| w[0] < w[1]));
            }
            assert!(blocks.windows(2).all(|w| w[0][0] < w[1][0]));
            assert!(seen.insert(format!("{blocks:?}")));
        });
        assert_eq!(seen.len(), 52);
    }
}
