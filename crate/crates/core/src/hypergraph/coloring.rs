use std::sync::Arc;

use super::rank::{binomial, BinomialTable, ColexSubsets};
use crate::error::{Error, Result};

/// Color index; `RED = 0`, `BLUE = 1`, further colors follow.
pub type Color = u8;

pub const RED: Color = 0;
pub const BLUE: Color = 1;

/// Read access to a total coloring of the a-subsets of `[n]`.
///
/// Edges passed to [`Coloring::color`] are strictly increasing and 1-based.
pub trait Coloring {
    fn order(&self) -> u32;
    fn uniformity(&self) -> usize;
    fn colors(&self) -> u8;
    fn color(&self, edge: &[u32]) -> Color;
}

impl<C: Coloring + ?Sized> Coloring for &C {
    fn order(&self) -> u32 {
        (**self).order()
    }
    fn uniformity(&self) -> usize {
        (**self).uniformity()
    }
    fn colors(&self) -> u8 {
        (**self).colors()
    }
    fn color(&self, edge: &[u32]) -> Color {
        (**self).color(edge)
    }
}

/// Complete a-uniform hypergraph on `[n]` with every edge colored.
///
/// Colors are packed at `ceil(log2 c)` bits per edge in colex-rank order.
#[derive(Clone, Debug)]
pub struct ColoredHypergraph {
    n: u32,
    a: usize,
    c: u8,
    bits: u32,
    edges: u64,
    words: Vec<u64>,
    table: Arc<BinomialTable>,
}

impl PartialEq for ColoredHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.a == other.a && self.c == other.c && self.words == other.words
    }
}

impl Eq for ColoredHypergraph {}

pub(crate) fn bits_per_color(c: u8) -> u32 {
    (u8::BITS - (c - 1).leading_zeros()).max(1)
}

impl ColoredHypergraph {
    fn empty(n: u32, a: usize, c: u8) -> Result<Self> {
        if a == 0 {
            return Err(Error::input("uniformity must be at least 1"));
        }
        if c < 2 {
            return Err(Error::input("need at least 2 colors"));
        }
        let edges = binomial(n as u64, a as u64)
            .filter(|&e| e <= (1u64 << 40))
            .ok_or_else(|| Error::input(format!("C({n}, {a}) edges is too many to store")))?;
        let bits = bits_per_color(c);
        let words = vec![0u64; ((edges * bits as u64).div_ceil(64)) as usize];
        Ok(ColoredHypergraph {
            n,
            a,
            c,
            bits,
            edges,
            words,
            table: Arc::new(BinomialTable::new(n as usize, a)),
        })
    }

    /// Build by visiting every edge in colex order.
    pub fn from_fn(n: u32, a: usize, c: u8, mut f: impl FnMut(&[u32]) -> Color) -> Result<Self> {
        let mut g = Self::empty(n, a, c)?;
        for (rank, edge) in ColexSubsets::new(n, a).enumerate() {
            let col = f(&edge);
            if col >= c {
                return Err(Error::input(format!("color {col} out of range for c = {c}")));
            }
            g.set_rank(rank as u64, col);
        }
        Ok(g)
    }

    /// Build from one color per edge, indexed by colex rank.
    pub fn from_colors(n: u32, a: usize, c: u8, colors: &[Color]) -> Result<Self> {
        let mut g = Self::empty(n, a, c)?;
        if colors.len() as u64 != g.edges {
            return Err(Error::input(format!(
                "expected {} edge colors, got {}",
                g.edges,
                colors.len()
            )));
        }
        for (rank, &col) in colors.iter().enumerate() {
            if col >= c {
                return Err(Error::input(format!("color {col} out of range for c = {c}")));
            }
            g.set_rank(rank as u64, col);
        }
        Ok(g)
    }

    pub fn constant(n: u32, a: usize, c: u8, color: Color) -> Result<Self> {
        Self::from_fn(n, a, c, |_| color)
    }

    pub(crate) fn from_packed(n: u32, a: usize, c: u8, words: Vec<u64>) -> Result<Self> {
        let mut g = Self::empty(n, a, c)?;
        if words.len() != g.words.len() {
            return Err(Error::input("packed color array has the wrong length"));
        }
        g.words = words;
        if let Some(rank) = (0..g.edges).find(|&r| g.color_at_rank(r) >= c) {
            return Err(Error::input(format!("edge rank {rank} has an out-of-range color")));
        }
        Ok(g)
    }

    pub(crate) fn packed_words(&self) -> &[u64] {
        &self.words
    }

    pub fn edge_count(&self) -> u64 {
        self.edges
    }

    pub fn bits_per_edge(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn color_at_rank(&self, rank: u64) -> Color {
        let bit = rank * self.bits as u64;
        let word = (bit / 64) as usize;
        let off = (bit % 64) as u32;
        let mask = (1u64 << self.bits) - 1;
        let mut v = self.words[word] >> off;
        if off + self.bits > 64 {
            v |= self.words[word + 1] << (64 - off);
        }
        (v & mask) as Color
    }

    pub(crate) fn set_rank(&mut self, rank: u64, color: Color) {
        let bit = rank * self.bits as u64;
        let word = (bit / 64) as usize;
        let off = (bit % 64) as u32;
        let mask = (1u64 << self.bits) - 1;
        let v = color as u64 & mask;
        self.words[word] = (self.words[word] & !(mask << off)) | (v << off);
        if off + self.bits > 64 {
            let spill = off + self.bits - 64;
            let hi_mask = (1u64 << spill) - 1;
            self.words[word + 1] = (self.words[word + 1] & !hi_mask) | (v >> (64 - off));
        }
    }

    pub fn rank(&self, edge: &[u32]) -> u64 {
        self.table.rank_unchecked(edge)
    }

    /// Colors in colex-rank order.
    pub fn colors_by_rank(&self) -> impl Iterator<Item = Color> + '_ {
        (0..self.edges).map(|r| self.color_at_rank(r))
    }
}

impl Coloring for ColoredHypergraph {
    fn order(&self) -> u32 {
        self.n
    }
    fn uniformity(&self) -> usize {
        self.a
    }
    fn colors(&self) -> u8 {
        self.c
    }
    #[inline]
    fn color(&self, edge: &[u32]) -> Color {
        debug_assert_eq!(edge.len(), self.a);
        debug_assert!(edge.windows(2).all(|w| w[0] < w[1]), "unsorted edge {edge:?}");
        self.color_at_rank(self.table.rank_unchecked(edge))
    }
}

/// The coloring `A -> COL(apex ∪ A)` on the (a-1)-subsets of `members`.
///
/// Local vertex `v` (1-based) stands for `members[v - 1]`; `apex` must be
/// smaller than every member.
pub struct LinkView<'a> {
    base: &'a dyn Coloring,
    apex: Vec<u32>,
    members: &'a [u32],
}

impl<'a> LinkView<'a> {
    pub fn new(base: &'a dyn Coloring, apex: Vec<u32>, members: &'a [u32]) -> Self {
        debug_assert!(apex.len() < base.uniformity());
        debug_assert!(members
            .first()
            .map_or(true, |&m| apex.last().map_or(true, |&x| x < m)));
        LinkView { base, apex, members }
    }

    pub fn members(&self) -> &[u32] {
        self.members
    }
}

impl Coloring for LinkView<'_> {
    fn order(&self) -> u32 {
        self.members.len() as u32
    }
    fn uniformity(&self) -> usize {
        self.base.uniformity() - self.apex.len()
    }
    fn colors(&self) -> u8 {
        self.base.colors()
    }
    fn color(&self, edge: &[u32]) -> Color {
        let mut full = [0u32; 16];
        let total = self.apex.len() + edge.len();
        if total <= full.len() {
            full[..self.apex.len()].copy_from_slice(&self.apex);
            for (slot, &v) in full[self.apex.len()..total].iter_mut().zip(edge) {
                *slot = self.members[v as usize - 1];
            }
            self.base.color(&full[..total])
        } else {
            let mut v: Vec<u32> = self.apex.clone();
            v.extend(edge.iter().map(|&x| self.members[x as usize - 1]));
            self.base.color(&v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_round_trips_every_rank() {
        for c in [2u8, 3, 5, 17] {
            let colors: Vec<Color> = (0..120u32).map(|i| ((i * 7 + 3) % c as u32) as Color).collect();
            let g = ColoredHypergraph::from_colors(10, 3, c, &colors).unwrap();
            assert_eq!(g.edge_count(), 120);
            assert_eq!(g.colors_by_rank().collect::<Vec<_>>(), colors);
        }
    }

    #[test]
    fn stored_edge_count_is_binomial() {
        let g = ColoredHypergraph::constant(9, 4, 2, RED).unwrap();
        assert_eq!(g.edge_count(), 126);
        assert!(ColoredHypergraph::constant(5, 0, 2, RED).is_err());
        assert!(ColoredHypergraph::constant(5, 2, 1, RED).is_err());
        assert!(ColoredHypergraph::constant(5, 2, 2, 2).is_err());
    }

    #[test]
    fn link_view_prepends_apex() {
        let g = ColoredHypergraph::from_fn(6, 3, 3, |e| ((e[0] + e[1] + e[2]) % 3) as Color).unwrap();
        let members = [3u32, 5, 6];
        let link = LinkView::new(&g, vec![2], &members);
        assert_eq!(link.order(), 3);
        assert_eq!(link.uniformity(), 2);
        assert_eq!(link.color(&[1, 3]), g.color(&[2, 3, 6]));
        assert_eq!(link.color(&[2, 3]), g.color(&[2, 5, 6]));
    }
}
