use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hypergraph::ColoredHypergraph;

/// Independent uniform edge colors, drawn in colex-rank order from a
/// ChaCha8 stream seeded with `seed`.
pub fn random_coloring(n: u32, a: usize, c: u8, seed: u64) -> Result<ColoredHypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ColoredHypergraph::from_fn(n, a, c, |_| rng.gen_range(0..c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Coloring;

    #[test]
    fn seeded_and_complete() {
        assert_eq!(random_coloring(5, 3, 2, 0).unwrap(), random_coloring(5, 3, 2, 0).unwrap());
        assert_ne!(random_coloring(12, 3, 2, 0).unwrap(), random_coloring(12, 3, 2, 1).unwrap());
        let g = random_coloring(6, 2, 2, 9).unwrap();
        assert_eq!(g.edge_count(), 15);
        assert!(g.colors_by_rank().all(|col| col < g.colors()));
    }
}
