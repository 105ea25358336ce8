//! Colexicographic ranking of sorted vertex subsets.
//!
//! Vertices are 1-based. The rank of `{v_1 < ... < v_a}` is
//! `sum_i C(v_i - 1, i)`, which enumerates the a-subsets of `[n]` in colex
//! order and does not depend on `n`.

use crate::error::{Error, Result};

/// `C(n, k)` in `u64`, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Pascal table `C(m, r)` for `m <= max_m`, `r <= max_r`, used on hot paths.
#[derive(Clone, Debug)]
pub(crate) struct BinomialTable {
    max_r: usize,
    // row-major by m, (max_r + 1) entries per row
    cells: Vec<u64>,
}

impl BinomialTable {
    pub(crate) fn new(max_m: usize, max_r: usize) -> Self {
        let width = max_r + 1;
        let mut cells = vec![0u64; (max_m + 1) * width];
        for m in 0..=max_m {
            cells[m * width] = 1;
            for r in 1..=max_r.min(m) {
                let above = cells[(m - 1) * width + r - 1];
                let left = if r <= m - 1 { cells[(m - 1) * width + r] } else { 0 };
                cells[m * width + r] = above.saturating_add(left);
            }
        }
        BinomialTable { max_r, cells }
    }

    #[inline]
    pub(crate) fn get(&self, m: usize, r: usize) -> u64 {
        self.cells[m * (self.max_r + 1) + r]
    }

    /// Rank of a sorted 1-based subset; the caller guarantees validity.
    #[inline]
    pub(crate) fn rank_unchecked(&self, subset: &[u32]) -> u64 {
        subset
            .iter()
            .enumerate()
            .map(|(i, &v)| self.get(v as usize - 1, i + 1))
            .sum()
    }
}

fn check_subset(subset: &[u32], n: u32, a: usize) -> Result<()> {
    if subset.len() != a {
        return Err(Error::input(format!(
            "edge {subset:?} has {} vertices, expected {a}",
            subset.len()
        )));
    }
    for w in subset.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::input(format!("edge {subset:?} is not strictly increasing")));
        }
    }
    if let (Some(&first), Some(&last)) = (subset.first(), subset.last()) {
        if first == 0 || last > n {
            return Err(Error::input(format!("edge {subset:?} leaves [1, {n}]")));
        }
    }
    Ok(())
}

/// Colex rank of a strictly increasing a-subset of `[n]`.
pub fn edge_rank(subset: &[u32], n: u32, a: usize) -> Result<u64> {
    check_subset(subset, n, a)?;
    let mut rank = 0u64;
    for (i, &v) in subset.iter().enumerate() {
        rank = rank
            .checked_add(
                binomial(v as u64 - 1, i as u64 + 1)
                    .ok_or_else(|| Error::input("rank overflows u64"))?,
            )
            .ok_or_else(|| Error::input("rank overflows u64"))?;
    }
    Ok(rank)
}

/// Inverse of [`edge_rank`].
pub fn edge_unrank(rank: u64, n: u32, a: usize) -> Result<Vec<u32>> {
    let total = binomial(n as u64, a as u64).ok_or_else(|| Error::input("C(n, a) overflows u64"))?;
    if rank >= total {
        return Err(Error::input(format!("rank {rank} out of range 0..{total}")));
    }
    let mut out = vec![0u32; a];
    let mut r = rank;
    let mut hi = n as u64;
    for i in (1..=a).rev() {
        // largest v with C(v - 1, i) <= r
        let mut v = hi;
        while binomial(v - 1, i as u64).unwrap_or(u64::MAX) > r {
            v -= 1;
        }
        out[i - 1] = v as u32;
        r -= binomial(v - 1, i as u64).unwrap_or(0);
        hi = v - 1;
    }
    Ok(out)
}

/// All a-subsets of `[n]` in colex order.
#[derive(Clone, Debug)]
pub struct ColexSubsets {
    n: u32,
    current: Option<Vec<u32>>,
}

impl ColexSubsets {
    pub fn new(n: u32, a: usize) -> Self {
        let current = if (a as u64) <= n as u64 {
            Some((1..=a as u32).collect())
        } else {
            None
        };
        ColexSubsets { n, current }
    }
}

impl Iterator for ColexSubsets {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let a = next.len();
        let mut advanced = false;
        for i in 0..a {
            let limit = if i + 1 < a { next[i + 1] } else { self.n + 1 };
            if next[i] + 1 < limit {
                next[i] += 1;
                for (j, slot) in next.iter_mut().enumerate().take(i) {
                    *slot = j as u32 + 1;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All size-`r` index subsets of `items` (preserving order), colex by position.
pub fn subsets_of<T: Copy>(items: &[T], r: usize) -> impl Iterator<Item = Vec<T>> + '_ {
    ColexSubsets::new(items.len() as u32, r)
        .map(move |idx| idx.iter().map(|&i| items[i as usize - 1]).collect())
}
