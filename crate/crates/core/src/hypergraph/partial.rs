use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::coloring::Color;
use crate::error::{Error, Result};

/// A partially colored hypergraph over `N`: a set of colored edges of fixed
/// uniformity. The vertex set is whatever the edges touch.
///
/// These are the per-vertex bookkeeping graphs of the CFS constructions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartialColoredGraph {
    uniformity: usize,
    edges: BTreeMap<Vec<u32>, Color>,
}

impl PartialColoredGraph {
    pub fn new(uniformity: usize) -> Self {
        PartialColoredGraph {
            uniformity,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_edges<I>(uniformity: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Color)>,
    {
        let mut g = Self::new(uniformity);
        for (e, col) in edges {
            g.insert(e, col)?;
        }
        Ok(g)
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    /// Add a colored edge; an edge may be added only once.
    pub fn insert(&mut self, edge: Vec<u32>, color: Color) -> Result<()> {
        if edge.len() != self.uniformity {
            return Err(Error::input(format!(
                "edge {edge:?} does not have {} vertices",
                self.uniformity
            )));
        }
        if edge.windows(2).any(|w| w[0] >= w[1]) || edge.first() == Some(&0) {
            return Err(Error::input(format!("edge {edge:?} is not a sorted set of positive integers")));
        }
        if self.edges.contains_key(&edge) {
            return Err(Error::input(format!("edge {edge:?} already present")));
        }
        self.edges.insert(edge, color);
        Ok(())
    }

    pub fn get(&self, edge: &[u32]) -> Option<Color> {
        self.edges.get(edge).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&[u32], Color)> {
        self.edges.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<u32> {
        self.edges.keys().flatten().copied().collect()
    }

    /// Relabel the vertex set onto `1..=m` preserving order.
    pub fn squash(&self) -> PartialColoredGraph {
        let verts: Vec<u32> = self.vertices().into_iter().collect();
        let position = |v: u32| verts.binary_search(&v).expect("vertex of the graph") as u32 + 1;
        let edges = self
            .edges
            .iter()
            .map(|(e, &c)| (e.iter().map(|&v| position(v)).collect(), c))
            .collect();
        PartialColoredGraph {
            uniformity: self.uniformity,
            edges,
        }
    }

    /// True when every pair of vertices-as-edges spans the full uniformity,
    /// i.e. every uniformity-subset of the vertex set is an edge.
    pub fn is_complete(&self) -> bool {
        let verts: Vec<u32> = self.vertices().into_iter().collect();
        let expected = super::rank::binomial(verts.len() as u64, self.uniformity as u64);
        expected == Some(self.edges.len() as u64)
    }

    /// The largest color class of a 1-uniform graph, ties to the smallest color.
    pub fn largest_point_class(&self) -> Option<(Vec<u32>, Color)> {
        debug_assert_eq!(self.uniformity, 1);
        let mut classes: BTreeMap<Color, Vec<u32>> = BTreeMap::new();
        for (e, &c) in &self.edges {
            classes.entry(c).or_default().push(e[0]);
        }
        let mut best: Option<(Vec<u32>, Color)> = None;
        for (c, pts) in classes {
            if best.as_ref().map_or(true, |(b, _)| pts.len() > b.len()) {
                best = Some((pts, c));
            }
        }
        best
    }
}

impl fmt::Display for PartialColoredGraph {
    /// `v1.v2:color;...` in edge order, `-` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "-");
        }
        for (i, (e, c)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            let verts: Vec<String> = e.iter().map(u32::to_string).collect();
            write!(f, "{}:{}", verts.join("."), c)?;
        }
        Ok(())
    }
}

impl PartialColoredGraph {
    /// Inverse of the `Display` form.
    pub fn parse(uniformity: usize, text: &str) -> Result<Self> {
        let mut g = Self::new(uniformity);
        if text == "-" {
            return Ok(g);
        }
        for item in text.split(';') {
            let (verts, col) = item
                .split_once(':')
                .ok_or_else(|| Error::input(format!("bad edge `{item}`")))?;
            let edge = verts
                .split('.')
                .map(|v| v.parse::<u32>().map_err(|_| Error::input(format!("bad vertex `{v}`"))))
                .collect::<Result<Vec<_>>>()?;
            let col = col
                .parse::<Color>()
                .map_err(|_| Error::input(format!("bad color `{col}`")))?;
            g.insert(edge, col)?;
        }
        Ok(g)
    }
}

/// `G1` and `G2` agree on `edge`: both have it with the same color, or
/// neither has it.
pub fn agree_on(g1: &PartialColoredGraph, g2: &PartialColoredGraph, edge: &[u32]) -> bool {
    g1.get(edge) == g2.get(edge)
}

/// `G1` and `G2` agree on every edge inside `{1..=j}`.
///
/// Edges absent from both agree trivially, so only edges present in one of
/// the graphs need inspecting.
pub fn agree_prefix(g1: &PartialColoredGraph, g2: &PartialColoredGraph, j: u32) -> bool {
    let inside = |e: &&Vec<u32>| e.last().map_or(true, |&m| m <= j);
    let left = g1.edges.iter().filter(|(e, _)| inside(e));
    let right = g2.edges.iter().filter(|(e, _)| inside(e));
    left.eq(right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{BLUE, RED};

    fn g1(points: &[(u32, Color)]) -> PartialColoredGraph {
        PartialColoredGraph::from_edges(1, points.iter().map(|&(v, c)| (vec![v], c))).unwrap()
    }

    #[test]
    fn squash_examples() {
        let g = g1(&[(3, RED), (7, BLUE)]);
        assert_eq!(g.squash(), g1(&[(1, RED), (2, BLUE)]));
        assert_eq!(PartialColoredGraph::new(1).squash(), PartialColoredGraph::new(1));
        let g = PartialColoredGraph::from_edges(2, [(vec![4, 9], RED)]).unwrap();
        assert_eq!(g.squash(), PartialColoredGraph::from_edges(2, [(vec![1, 2], RED)]).unwrap());
    }

    #[test]
    fn agreement_examples() {
        let r1 = g1(&[(1, RED)]);
        let b1 = g1(&[(1, BLUE)]);
        let empty = PartialColoredGraph::new(1);
        assert!(agree_on(&r1, &r1.clone(), &[1]));
        assert!(!agree_on(&r1, &b1, &[1]));
        assert!(agree_on(&r1, &empty, &[2]));

        let both = g1(&[(1, RED), (2, BLUE)]);
        assert!(agree_prefix(&both, &r1, 1));
        assert!(!agree_prefix(&both, &r1, 2));
        assert!(agree_prefix(&both, &both, 7));
    }

    #[test]
    fn duplicate_edges_rejected() {
        let mut g = g1(&[(1, RED)]);
        assert!(g.insert(vec![1], BLUE).is_err());
        assert!(g.insert(vec![2, 3], BLUE).is_err());
    }

    #[test]
    fn display_round_trip() {
        let g = PartialColoredGraph::from_edges(2, [(vec![1, 4], RED), (vec![2, 4], BLUE)]).unwrap();
        let s = g.to_string();
        assert_eq!(s, "1.4:0;2.4:1");
        assert_eq!(PartialColoredGraph::parse(2, &s).unwrap(), g);
        assert_eq!(PartialColoredGraph::parse(2, "-").unwrap(), PartialColoredGraph::new(2));
    }

    #[test]
    fn completeness() {
        let g = PartialColoredGraph::from_edges(2, [(vec![1, 2], RED), (vec![1, 3], RED)]).unwrap();
        assert!(!g.is_complete());
        let mut h = g.clone();
        h.insert(vec![2, 3], BLUE).unwrap();
        assert!(h.is_complete());
    }
}
