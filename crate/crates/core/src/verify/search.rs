use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;

use crate::bounds::{compare_bounds, DEFAULT_BIT_BUDGET};
use crate::error::{Error, Result};
use crate::hypergraph::search::{find_homogeneous, DEFAULT_NODE_BUDGET};
use crate::hypergraph::{binomial, Color, ColoredHypergraph, Coloring, HomogeneousSet};

/// Default cap on colorings enumerated by [`brute_force_ramsey`].
pub const DEFAULT_COLORING_BUDGET: u64 = 100_000_000;

/// `R(a, k, c)` with the limits of its search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyQuery {
    pub a: usize,
    pub k: usize,
    pub c: u8,
    /// Largest vertex count examined.
    pub n_max: u32,
    /// Colorings enumerated over the whole scan.
    pub budget: u64,
    pub workers: usize,
}

impl RamseyQuery {
    pub fn new(a: usize, k: usize, c: u8) -> Self {
        RamseyQuery {
            a,
            k,
            c,
            n_max: 64,
            budget: DEFAULT_COLORING_BUDGET,
            workers: 1,
        }
    }

    fn check(&self) -> Result<()> {
        if self.a == 0 || self.a > self.k || self.c < 2 {
            return Err(Error::input(format!(
                "need 1 <= a <= k and c >= 2, got a={} k={} c={}",
                self.a, self.k, self.c
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RamseyOutcome {
    /// `R(a,k,c) = value`; `witness` colors `value - 1` vertices with no
    /// homogeneous k-set.
    Exact {
        value: u32,
        witness: ColoredHypergraph,
        colorings: u64,
    },
    /// Every `n <= n_max` has a witness, so `R > n_max`.
    Bracket {
        lo: u32,
        hi: Option<BigUint>,
        witness: ColoredHypergraph,
        colorings: u64,
    },
    /// The scan stopped at `frontier` for lack of budget; `R >= lo = frontier`.
    BudgetExceeded {
        lo: u32,
        hi: Option<BigUint>,
        frontier: u32,
        needed: Option<u64>,
        witness: ColoredHypergraph,
        colorings: u64,
    },
}

impl RamseyOutcome {
    pub fn exact(&self) -> Option<u32> {
        match self {
            RamseyOutcome::Exact { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn witness(&self) -> &ColoredHypergraph {
        match self {
            RamseyOutcome::Exact { witness, .. }
            | RamseyOutcome::Bracket { witness, .. }
            | RamseyOutcome::BudgetExceeded { witness, .. } => witness,
        }
    }
}

/// Least `n` for which every c-coloring of the a-subsets of `[n]` has a
/// homogeneous k-set, by enumerating colorings with the first edge fixed to
/// color 0 (permuting colors preserves homogeneity).
pub fn brute_force_ramsey(q: &RamseyQuery) -> Result<RamseyOutcome> {
    q.check()?;
    let upper = || {
        compare_bounds(q.a as u32, q.k as u64, q.c, DEFAULT_BIT_BUDGET)
            .ok()
            .and_then(|list| list.into_iter().find_map(|b| b.value))
    };
    // k - 1 vertices hold no k-set at all
    let mut witness = ColoredHypergraph::constant(q.k as u32 - 1, q.a, q.c, 0)?;
    let mut spent = 0u64;
    for n in q.k as u32..=q.n_max {
        let edges = binomial(n as u64, q.a as u64).expect("small n");
        let total = (q.c as u64)
            .checked_pow((edges - 1).try_into().unwrap_or(u32::MAX))
            .filter(|&t| spent.checked_add(t).is_some_and(|s| s <= q.budget));
        let Some(total) = total else {
            let needed = (q.c as u64).checked_pow((edges - 1).try_into().unwrap_or(u32::MAX));
            return Ok(RamseyOutcome::BudgetExceeded {
                lo: n,
                hi: upper(),
                frontier: n,
                needed,
                witness,
                colorings: spent,
            });
        };
        let (found, scanned) = first_witness(n, q, edges, total)?;
        spent += scanned;
        match found {
            Some(g) => witness = g,
            None => {
                return Ok(RamseyOutcome::Exact {
                    value: n,
                    witness,
                    colorings: spent,
                })
            }
        }
    }
    Ok(RamseyOutcome::Bracket {
        lo: q.n_max + 1,
        hi: upper(),
        witness,
        colorings: spent,
    })
}

/// Colors of enumeration index `t`: edge 0 is 0, edge `r` is base-c digit
/// `r - 1` of `t`.
fn set_index(g: &mut ColoredHypergraph, mut t: u64, c: u8) {
    for r in 1..g.edge_count() {
        g.set_rank(r, (t % c as u64) as Color);
        t /= c as u64;
    }
}

/// The colex-first coloring of `[n]` without a homogeneous k-set, and how
/// many colorings were looked at.
fn first_witness(n: u32, q: &RamseyQuery, edges: u64, total: u64) -> Result<(Option<ColoredHypergraph>, u64)> {
    let workers = q.workers.clamp(1, 64) as u64;
    let best = AtomicU64::new(u64::MAX);
    let scanned = AtomicU64::new(0);
    let chunk = total.div_ceil(workers);
    let scan = |start: u64, end: u64| -> Result<()> {
        let mut g = ColoredHypergraph::constant(n, q.a, q.c, 0)?;
        set_index(&mut g, start, q.c);
        let mut digits: Vec<Color> = (1..edges).map(|r| g.color_at_rank(r)).collect();
        for t in start..end {
            if t >= best.load(Ordering::Relaxed) {
                break;
            }
            scanned.fetch_add(1, Ordering::Relaxed);
            if find_homogeneous(&g, q.k, DEFAULT_NODE_BUDGET)?.is_none() {
                best.fetch_min(t, Ordering::Relaxed);
                break;
            }
            for (r, d) in digits.iter_mut().enumerate() {
                *d += 1;
                if *d < q.c {
                    g.set_rank(r as u64 + 1, *d);
                    break;
                }
                *d = 0;
                g.set_rank(r as u64 + 1, 0);
            }
        }
        Ok(())
    };
    if workers == 1 {
        scan(0, total)?;
    } else {
        std::thread::scope(|s| -> Result<()> {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let start = (w * chunk).min(total);
                    let end = ((w + 1) * chunk).min(total);
                    let scan = &scan;
                    s.spawn(move || scan(start, end))
                })
                .collect();
            for h in handles {
                h.join().expect("search worker panicked")?;
            }
            Ok(())
        })?;
    }
    let t = best.load(Ordering::Relaxed);
    let spent = scanned.load(Ordering::Relaxed);
    if t == u64::MAX {
        return Ok((None, spent));
    }
    let mut g = ColoredHypergraph::constant(n, q.a, q.c, 0)?;
    set_index(&mut g, t, q.c);
    Ok((Some(g), spent))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessCheck {
    /// No homogeneous k-set exists.
    Witness,
    Found(HomogeneousSet),
    /// The search budget ran out first.
    Indeterminate,
}

impl WitnessCheck {
    pub fn is_witness(&self) -> bool {
        matches!(self, WitnessCheck::Witness)
    }
}

/// Whether `col` certifies `R(a, k, c) > n`.
pub fn check_witness(col: &dyn Coloring, k: usize, budget: u64) -> Result<WitnessCheck> {
    match find_homogeneous(col, k, budget) {
        Ok(None) => Ok(WitnessCheck::Witness),
        Ok(Some(h)) => Ok(WitnessCheck::Found(h)),
        Err(Error::Budget(_)) => Ok(WitnessCheck::Indeterminate),
        Err(e) => Err(e),
    }
}
