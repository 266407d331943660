//! The poset `Π_n^{1,d}` of partitions of `[n]` with every part size
//! congruent to 1 mod `d`, ordered by refinement.
//!
//! The poset is ranked with `rank(σ) = (n − #blocks(σ))/d`; the bottom is the
//! all-singletons partition. Möbius values `μ(0̂, ·)` are computed directly
//! on the materialized order by the defining recursion, so the Whitney
//! numbers of both kinds fall out of the element list.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::partitions::for_each_partition;

/// A partition of `[n]` with all part sizes ≡ 1 (mod d). Blocks are sorted
/// by their minima, each block ascending; labels are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPartition {
    pub blocks: Vec<Vec<u32>>,
}

/// Largest `n` for `Π_n^{1,1}` (the full partition lattice).
pub const POSET_CAP_D1: u64 = 9;
/// Largest `n` for `Π_n^{1,d}` with `d ≥ 2` (far fewer elements).
pub const POSET_CAP: u64 = 11;

/// The materialized poset: elements, rank, and Möbius values from the bottom.
#[derive(Clone, Debug)]
pub struct PosetStructure {
    n: u64,
    d: u64,
    elements: Vec<ModPartition>,
    /// Per element, one bitmask per block.
    masks: Vec<Vec<u64>>,
    /// Per element, the mask of the block containing each ground element.
    block_of: Vec<Vec<u64>>,
    rank: Vec<u64>,
    mobius: Vec<BigInt>,
}

/// Enumerates `Π_n^{1,d}` and computes ranks and Möbius values.
pub fn build_poset(n: u64, d: u64) -> Result<PosetStructure> {
    let cap = if d == 1 { POSET_CAP_D1 } else { POSET_CAP };
    if n > cap {
        return Err(Error::CapExceeded {
            what: "poset n",
            requested: n,
            cap,
        });
    }
    if n < 1 || d < 1 {
        return Err(Error::Domain("the poset needs n ≥ 1 and d ≥ 1".into()));
    }

    let mut elements: Vec<ModPartition> = Vec::new();
    for_each_partition(n as usize, &mut |blocks| {
        if blocks.iter().all(|b| (b.len() as u64 - 1) % d == 0) {
            elements.push(ModPartition {
                blocks: blocks
                    .iter()
                    .map(|b| b.iter().map(|&e| (e + 1) as u32).collect())
                    .collect(),
            });
        }
    });
    // Rank ascending (finer partitions have more blocks); ties broken by the
    // block lists for a deterministic element order.
    elements.sort_by(|a, b| {
        b.blocks
            .len()
            .cmp(&a.blocks.len())
            .then_with(|| a.blocks.cmp(&b.blocks))
    });

    let rank: Vec<u64> = elements
        .iter()
        .map(|p| (n - p.blocks.len() as u64) / d)
        .collect();
    let masks: Vec<Vec<u64>> = elements
        .iter()
        .map(|p| {
            p.blocks
                .iter()
                .map(|b| b.iter().fold(0u64, |m, &e| m | 1 << (e - 1)))
                .collect()
        })
        .collect();
    let block_of: Vec<Vec<u64>> = masks
        .iter()
        .map(|blocks| {
            let mut per_elem = vec![0u64; n as usize];
            for &m in blocks {
                let mut rest = m;
                while rest != 0 {
                    let e = rest.trailing_zeros() as usize;
                    per_elem[e] = m;
                    rest &= rest - 1;
                }
            }
            per_elem
        })
        .collect();

    let mut poset = PosetStructure {
        n,
        d,
        elements,
        masks,
        block_of,
        rank,
        mobius: Vec::new(),
    };

    // μ(0̂, 0̂) = 1 and Σ_{σ ≤ τ} μ(0̂, σ) = 0 for τ above the bottom.
    // Elements are rank-sorted, so every σ < τ appears before τ.
    let mut mobius: Vec<BigInt> = Vec::with_capacity(poset.elements.len());
    for j in 0..poset.elements.len() {
        if poset.rank[j] == 0 {
            mobius.push(BigInt::one());
            continue;
        }
        let mut below = BigInt::zero();
        for i in 0..j {
            if poset.rank[i] < poset.rank[j] && poset.leq(i, j) {
                below += &mobius[i];
            }
        }
        mobius.push(-below);
    }
    poset.mobius = mobius;
    Ok(poset)
}

impl PosetStructure {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ModPartition] {
        &self.elements
    }

    pub fn rank(&self, index: usize) -> u64 {
        self.rank[index]
    }

    pub fn mobius_from_bottom(&self, index: usize) -> &BigInt {
        &self.mobius[index]
    }

    /// Refinement order: every block of `i` lies inside a block of `j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.masks[i].iter().all(|&m| {
            let e = m.trailing_zeros() as usize;
            m & !self.block_of[j][e] == 0
        })
    }

    pub fn max_rank(&self) -> u64 {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    /// Element counts per rank, `0..=max_rank`.
    pub fn rank_profile(&self) -> Vec<u64> {
        let mut profile = vec![0u64; self.max_rank() as usize + 1];
        for &r in &self.rank {
            profile[r as usize] += 1;
        }
        profile
    }

    /// Element counts per relative rank over the interval `[σ, ∞)`.
    pub fn interval_rank_profile(&self, index: usize) -> Vec<u64> {
        let base = self.rank[index];
        let mut profile = vec![0u64; (self.max_rank() - base) as usize + 1];
        for j in 0..self.len() {
            if self.rank[j] >= base && self.leq(index, j) {
                profile[(self.rank[j] - base) as usize] += 1;
            }
        }
        profile
    }

    /// Whitney number of the second kind: the number of rank-`k` elements.
    /// Zero outside the rank range.
    pub fn whitney_second(&self, k: u64) -> BigInt {
        BigInt::from(self.rank.iter().filter(|&&r| r == k).count())
    }

    /// Whitney number of the first kind: `Σ μ(0̂, x)` over rank-`k`
    /// elements. Zero outside the rank range.
    pub fn whitney_first(&self, k: u64) -> BigInt {
        let mut total = BigInt::zero();
        for (i, &r) in self.rank.iter().enumerate() {
            if r == k {
                total += &self.mobius[i];
            }
        }
        total
    }

    pub fn to_json(&self) -> serde_json::Value {
        let elements: Vec<serde_json::Value> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, p)| {
                json!({
                    "blocks": p.blocks,
                    "rank": self.rank[i],
                    "mobius": self.mobius[i].to_string(),
                })
            })
            .collect();
        json!({
            "n": self.n,
            "d": self.d,
            "elements": elements,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_counts() {
        // Π₃^{1,1} is all of Π₃.
        assert_eq!(build_poset(3, 1).unwrap().len(), 5);
        // Part sizes in {1, 3}: the singletons and the full block.
        assert_eq!(build_poset(3, 2).unwrap().len(), 2);
        // Part sizes in {1, 4}.
        assert_eq!(build_poset(4, 3).unwrap().len(), 2);
        assert!(build_poset(10, 1).is_err());
    }

    #[test]
    fn rank_and_bottom() {
        let p = build_poset(4, 1).unwrap();
        assert_eq!(p.rank(0), 0);
        assert_eq!(p.elements()[0].blocks.len(), 4);
        assert_eq!(p.whitney_second(0), BigInt::one());
        assert_eq!(p.max_rank(), 3);
    }

    #[test]
    fn whitney_numbers_of_the_partition_lattice() {
        let p = build_poset(4, 1).unwrap();
        // Six partitions of [4] with 3 blocks.
        assert_eq!(p.whitney_second(1), BigInt::from(6));
        // w_1(Π₄) = −6; w_0 = 1.
        assert_eq!(p.whitney_first(1), BigInt::from(-6));
        assert_eq!(p.whitney_first(0), BigInt::one());
        // Out-of-range ranks give zero.
        assert_eq!(p.whitney_second(17), BigInt::zero());
        assert_eq!(p.whitney_first(17), BigInt::zero());
        // Classical: w_k(Π_n) = signed Stirling numbers; top rank value
        // μ(0̂, 1̂) = (−1)^{n−1}(n−1)!.
        assert_eq!(p.whitney_first(3), BigInt::from(-6));
    }

    #[test]
    fn stretched_count_example() {
        // Partitions of [5] into one 3-block and two singletons: C(5,3) = 10.
        let p = build_poset(5, 2).unwrap();
        assert_eq!(p.whitney_second(1), BigInt::from(10));
    }

    #[test]
    fn mobius_rows_sum_to_zero() {
        for (n, d) in [(4u64, 1u64), (5, 1), (5, 2), (7, 2), (7, 3)] {
            let p = build_poset(n, d).unwrap();
            for j in 0..p.len() {
                if p.rank(j) == 0 {
                    continue;
                }
                let mut total = BigInt::zero();
                for i in 0..p.len() {
                    if p.leq(i, j) {
                        total += p.mobius_from_bottom(i);
                    }
                }
                assert!(total.is_zero(), "n={n} d={d} row {j}");
            }
        }
    }

    #[test]
    fn upper_intervals_look_like_smaller_posets() {
        for (n, d) in [(6u64, 1u64), (7, 2), (7, 3)] {
            let p = build_poset(n, d).unwrap();
            for i in 0..p.len() {
                let k = p.elements()[i].blocks.len() as u64;
                let smaller = build_poset(k, d).unwrap();
                assert_eq!(
                    p.interval_rank_profile(i),
                    smaller.rank_profile(),
                    "n={n} d={d} element {i}"
                );
            }
        }
    }

    #[test]
    fn json_dump() {
        let p = build_poset(3, 2).unwrap();
        let v = p.to_json();
        assert_eq!(v["elements"].as_array().unwrap().len(), 2);
        assert_eq!(v["elements"][0]["rank"], 0);
        assert_eq!(v["elements"][1]["mobius"], "-1");
    }
}
