//! Exhaustive homogeneous-set search by backtracking over sorted vertex
//! lists. A candidate vertex is added only if every new edge it closes has
//! the target color, so dead branches are cut as early as possible.

use super::{subsets_of, Color, Coloring, HomogeneousSet};
use crate::error::{Error, Result};

/// Search-node cap used when the caller does not supply one.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

struct Searcher<'a> {
    col: &'a dyn Coloring,
    target: usize,
    color: Color,
    nodes: u64,
    budget: u64,
    chosen: Vec<u32>,
    scratch: Vec<u32>,
}

impl Searcher<'_> {
    fn fits(&mut self, v: u32) -> bool {
        let a = self.col.uniformity();
        if a == 1 {
            return self.col.color(&[v]) == self.color;
        }
        if self.chosen.len() + 1 < a {
            return true;
        }
        // every edge closed by v is an (a-1)-subset of chosen plus v
        for s in subsets_of(&self.chosen, a - 1) {
            self.scratch.clear();
            self.scratch.extend_from_slice(&s);
            self.scratch.push(v);
            if self.col.color(&self.scratch) != self.color {
                return false;
            }
        }
        true
    }

    fn extend(&mut self, next: u32) -> Result<bool> {
        if self.chosen.len() == self.target {
            return Ok(true);
        }
        let n = self.col.order();
        let need = (self.target - self.chosen.len()) as u32;
        let mut v = next;
        while v + need <= n + 1 {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Budget(format!(
                    "homogeneous-set search passed {} nodes",
                    self.budget
                )));
            }
            if self.fits(v) {
                self.chosen.push(v);
                if self.extend(v + 1)? {
                    return Ok(true);
                }
                self.chosen.pop();
            }
            v += 1;
        }
        Ok(false)
    }
}

/// A homogeneous set of exactly `k` vertices, the lexicographically first
/// one of the smallest color that has any. `k` must be at least the
/// uniformity.
pub fn find_homogeneous(col: &dyn Coloring, k: usize, budget: u64) -> Result<Option<HomogeneousSet>> {
    let a = col.uniformity();
    if k < a {
        return Err(Error::input(format!(
            "homogeneous sets need at least a = {a} vertices, asked for {k}"
        )));
    }
    if k > col.order() as usize {
        return Ok(None);
    }
    let mut nodes = 0;
    for color in 0..col.colors() {
        let mut s = Searcher {
            col,
            target: k,
            color,
            nodes,
            budget,
            chosen: Vec::with_capacity(k),
            scratch: Vec::with_capacity(a),
        };
        if s.extend(1)? {
            return Ok(Some(HomogeneousSet::new(s.chosen, color)));
        }
        nodes = s.nodes;
    }
    Ok(None)
}

/// A homogeneous set of maximum size. Needs `n >= a`.
pub fn max_homogeneous(col: &dyn Coloring, budget: u64) -> Result<HomogeneousSet> {
    let a = col.uniformity();
    let mut best = find_homogeneous(col, a, budget)?
        .ok_or_else(|| Error::input(format!("no a-subsets: n = {} < a = {a}", col.order())))?;
    while let Some(h) = find_homogeneous(col, best.len() + 1, budget)? {
        best = h;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{is_homogeneous, ColoredHypergraph, BLUE, RED};

    fn pentagon() -> ColoredHypergraph {
        ColoredHypergraph::from_fn(5, 2, 2, |e| {
            let d = e[1] - e[0];
            if d == 1 || d == 4 {
                RED
            } else {
                BLUE
            }
        })
        .unwrap()
    }

    #[test]
    fn pentagon_has_no_triangle() {
        let g = pentagon();
        assert_eq!(find_homogeneous(&g, 3, DEFAULT_NODE_BUDGET).unwrap(), None);
        let h = max_homogeneous(&g, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn finds_sets_that_check_out() {
        let g = ColoredHypergraph::from_fn(8, 3, 2, |e| ((e[0] * 3 + e[1] + e[2]) % 2) as Color).unwrap();
        let h = max_homogeneous(&g, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(is_homogeneous(&g, &h.vertices).unwrap(), Some(h.color));
        assert_eq!(find_homogeneous(&g, h.len() + 1, DEFAULT_NODE_BUDGET).unwrap(), None);
    }

    #[test]
    fn point_colorings() {
        let g = ColoredHypergraph::from_colors(5, 1, 2, &[BLUE, RED, BLUE, RED, BLUE]).unwrap();
        let h = max_homogeneous(&g, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(h, HomogeneousSet::new(vec![1, 3, 5], BLUE));
    }

    #[test]
    fn budget_is_reported() {
        let g = ColoredHypergraph::constant(30, 2, 2, RED).unwrap();
        assert!(matches!(find_homogeneous(&g, 31, 10), Ok(None)));
        assert!(matches!(find_homogeneous(&g, 25, 10), Err(Error::Budget(_))));
        assert!(find_homogeneous(&g, 1, 10).is_err());
    }
}
