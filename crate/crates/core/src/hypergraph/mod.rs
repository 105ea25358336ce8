//! Colored complete hypergraphs, partial colored hypergraphs and the
//! homogeneity primitives shared by the extractors and the verifier.

mod coloring;
pub mod io;
mod partial;
mod rank;
pub mod search;

pub use coloring::{Color, ColoredHypergraph, Coloring, LinkView, BLUE, RED};
pub use partial::{agree_on, agree_prefix, PartialColoredGraph};
pub use rank::{binomial, edge_rank, edge_unrank, subsets_of, ColexSubsets};

pub(crate) use coloring::bits_per_color;

use crate::error::{Error, Result};

/// A vertex set together with the color all of its edges share.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousSet {
    /// Sorted ascending.
    pub vertices: Vec<u32>,
    pub color: Color,
}

impl HomogeneousSet {
    pub fn new(mut vertices: Vec<u32>, color: Color) -> Self {
        vertices.sort_unstable();
        HomogeneousSet { vertices, color }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Re-check against `col` from scratch.
    pub fn holds_in(&self, col: &dyn Coloring) -> bool {
        matches!(is_homogeneous(col, &self.vertices), Ok(Some(c)) if c == self.color)
    }
}

/// The common color of every a-subset of `h`, or `None` if two differ.
///
/// `h` need not be sorted but must be a set inside `[n]` with at least `a`
/// members.
pub fn is_homogeneous(col: &dyn Coloring, h: &[u32]) -> Result<Option<Color>> {
    let a = col.uniformity();
    let mut verts = h.to_vec();
    verts.sort_unstable();
    if verts.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::input(format!("vertex set {h:?} has repeated members")));
    }
    if verts.first() == Some(&0) || verts.last().is_some_and(|&v| v > col.order()) {
        return Err(Error::input(format!("vertex set {h:?} leaves [1, {}]", col.order())));
    }
    if verts.len() < a {
        return Err(Error::input(format!(
            "homogeneity needs at least {a} vertices, got {}",
            verts.len()
        )));
    }
    let mut edges = subsets_of(&verts, a);
    let first = col.color(&edges.next().expect("|h| >= a"));
    Ok(edges.all(|e| col.color(&e) == first).then_some(first))
}

/// Largest color class of `points` under `color`, ties to the smallest
/// color index. Members keep the order of `points`.
pub fn majority_class(
    points: &[u32],
    color: impl Fn(u32) -> Color,
    c: u8,
) -> Result<(Vec<u32>, Color)> {
    if points.is_empty() {
        return Err(Error::input("majority class of an empty point set"));
    }
    let mut classes: Vec<Vec<u32>> = vec![Vec::new(); c as usize];
    for &p in points {
        let col = color(p);
        let class = classes
            .get_mut(col as usize)
            .ok_or_else(|| Error::input(format!("color {col} out of range for c = {c}")))?;
        class.push(p);
    }
    let mut best = 0;
    for (i, class) in classes.iter().enumerate() {
        if class.len() > classes[best].len() {
            best = i;
        }
    }
    Ok((classes.swap_remove(best), best as Color))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneity_examples() {
        let g = ColoredHypergraph::constant(4, 3, 2, RED).unwrap();
        assert_eq!(is_homogeneous(&g, &[1, 2, 3, 4]).unwrap(), Some(RED));

        let pts = ColoredHypergraph::from_colors(3, 1, 2, &[RED, RED, BLUE]).unwrap();
        assert_eq!(is_homogeneous(&pts, &[1, 2]).unwrap(), Some(RED));

        let g = ColoredHypergraph::from_fn(4, 3, 2, |e| if e == [1, 2, 4] { BLUE } else { RED }).unwrap();
        assert_eq!(is_homogeneous(&g, &[1, 2, 3, 4]).unwrap(), None);
        assert_eq!(is_homogeneous(&g, &[4, 2, 3]).unwrap(), Some(RED));
    }

    #[test]
    fn homogeneity_rejects_bad_sets() {
        let g = ColoredHypergraph::constant(4, 3, 2, RED).unwrap();
        assert!(is_homogeneous(&g, &[1, 2]).is_err());
        assert!(is_homogeneous(&g, &[1, 2, 2]).is_err());
        assert!(is_homogeneous(&g, &[1, 2, 5]).is_err());
    }

    #[test]
    fn majority_examples() {
        let split = |reds: &[u32]| {
            let reds = reds.to_vec();
            move |v: u32| if reds.contains(&v) { RED } else { BLUE }
        };
        let (set, col) = majority_class(&[1, 2, 3, 4, 5], split(&[1, 3, 5]), 2).unwrap();
        assert_eq!((set, col), (vec![1, 3, 5], RED));
        let (set, col) = majority_class(&[1, 2, 3, 4], split(&[2, 4]), 2).unwrap();
        assert_eq!((set, col), (vec![2, 4], RED));

        let three = |v: u32| [0, 0, 1, 1, 2, 2, 0][v as usize - 1];
        let (set, col) = majority_class(&[1, 2, 3, 4, 5, 6, 7], three, 3).unwrap();
        assert_eq!((set.len(), col), (3, 0));

        assert!(majority_class(&[], |_| RED, 2).is_err());
        assert!(majority_class(&[1], |_| 2, 2).is_err());
    }
}
