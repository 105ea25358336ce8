//! Exact oracles and closed-form bounds for the two counting lemmas behind
//! the CFS bounds: total length of capped strings, and total edge count of
//! small colorings without a homogeneous set.

use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::bounds::pow_nat;
use crate::error::{Error, Result};
use crate::hypergraph::search::{find_homogeneous, DEFAULT_NODE_BUDGET};
use crate::hypergraph::{binomial, Color, ColoredHypergraph};
use crate::scalar::{b_constant, Interval, Scalar};

/// Default cap on strings visited by [`sigma_sum_enumerated`].
pub const STRING_BUDGET: u64 = 10_000_000;
/// Default cap on colorings visited by [`hyper_edge_sum_exact`].
pub const GRAPH_BUDGET: u64 = 10_000_000;

/// Which strings over `[c]` count: every symbol at most `per_symbol` times
/// and, optionally, at most `total` symbols overall.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StringCaps {
    pub per_symbol: u64,
    pub total: Option<u64>,
}

impl StringCaps {
    /// At most `k - 1` of each symbol.
    pub fn below(k: u64) -> Self {
        StringCaps {
            per_symbol: k.saturating_sub(1),
            total: None,
        }
    }
}

/// `sum_{j_1..j_c < k} (j_1+..+j_c) * (j_1+..+j_c)! / (j_1!..j_c!)`.
pub fn sigma_sum_exact(c: u64, k: u64) -> Result<BigUint> {
    if c == 0 || k == 0 {
        return Err(Error::input("string sums need c >= 1 and k >= 1"));
    }
    sigma_sum_exact_capped(c, StringCaps::below(k))
}

/// Grouped by length: `N_t(s)`, the number of strings of length `s` over
/// the first `t` symbols, satisfies `N_t(s) = sum_j C(s, j) N_{t-1}(s - j)`.
pub fn sigma_sum_exact_capped(c: u64, caps: StringCaps) -> Result<BigUint> {
    if c * (caps.per_symbol + 1) > 64 {
        return Err(Error::Budget(format!(
            "string sums are limited to c*k <= 64, got c={c} k={}",
            caps.per_symbol + 1
        )));
    }
    let longest = (c * caps.per_symbol).min(caps.total.unwrap_or(u64::MAX)) as usize;
    let mut counts = vec![BigUint::zero(); longest + 1];
    counts[0] = BigUint::one();
    // Pascal rows up to `longest`
    let mut choose = vec![vec![BigUint::one()]];
    for s in 1..=longest {
        let prev = &choose[s - 1];
        let mut row = vec![BigUint::one(); s + 1];
        for j in 1..s {
            row[j] = &prev[j - 1] + &prev[j];
        }
        choose.push(row);
    }
    for _ in 0..c {
        let mut next = vec![BigUint::zero(); longest + 1];
        for (s, slot) in next.iter_mut().enumerate() {
            for j in 0..=(caps.per_symbol as usize).min(s) {
                if !counts[s - j].is_zero() {
                    *slot += &choose[s][j] * &counts[s - j];
                }
            }
        }
        counts = next;
    }
    Ok(counts
        .iter()
        .enumerate()
        .map(|(s, n)| n * BigUint::from(s))
        .sum())
}

/// The same sum by walking every qualifying string.
pub fn sigma_sum_enumerated(c: u64, k: u64) -> Result<BigUint> {
    if c == 0 || k == 0 {
        return Err(Error::input("string sums need c >= 1 and k >= 1"));
    }
    sigma_sum_enumerated_capped(c, StringCaps::below(k), STRING_BUDGET)
}

pub fn sigma_sum_enumerated_capped(c: u64, caps: StringCaps, budget: u64) -> Result<BigUint> {
    struct Walk {
        caps: StringCaps,
        used: Vec<u64>,
        visited: u64,
        budget: u64,
        total: u64,
    }
    impl Walk {
        fn visit(&mut self, len: u64) -> Result<()> {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(Error::Budget(format!("more than {} strings", self.budget)));
            }
            self.total += len;
            if self.caps.total.is_some_and(|t| len >= t) {
                return Ok(());
            }
            for sym in 0..self.used.len() {
                if self.used[sym] < self.caps.per_symbol {
                    self.used[sym] += 1;
                    self.visit(len + 1)?;
                    self.used[sym] -= 1;
                }
            }
            Ok(())
        }
    }
    let mut walk = Walk {
        caps,
        used: vec![0; c as usize],
        visited: 0,
        budget,
        total: 0,
    };
    walk.visit(0)?;
    Ok(BigUint::from(walk.total))
}

fn sqrt_nat<T: Scalar>(n: u64) -> Interval<T> {
    let r = n.sqrt();
    if r * r == n {
        Interval::from_u64(r)
    } else {
        Interval::from_u64(n).sqrt()
    }
}

/// `k^{(3-c)/2} c^{c(k-1)+2} B_c` in the scalar `T`.
pub fn sigma_bound_in<T: Scalar>(c: u64, k: u64) -> Result<Interval<T>> {
    if c < 2 || k < 2 {
        return Err(Error::input("the string-sum bound needs c >= 2 and k >= 2"));
    }
    let power = pow_nat(c, c * (k - 1) + 2, 1 << 16)?;
    Ok(sqrt_nat::<T>(k)
        .powi(3 - c as i64)
        .mul(&Interval::from_biguint(&power))
        .mul(&b_constant(c as u32)))
}

/// The string-sum bound in its forms, as rational enclosures.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaBound {
    pub c: u64,
    pub k: u64,
    /// `k^{(3-c)/2} c^{c(k-1)+2} B_c`.
    pub general: Interval<BigRational>,
    /// `B_2 k^{1/2} 2^{2k}`, two colors only.
    pub two_color: Option<Interval<BigRational>>,
    /// `B_c (k-1)^{1/2} c^{ck}`, the shape used in the 3-uniform bound.
    pub shifted: Interval<BigRational>,
}

impl SigmaBound {
    /// The general form rounded up to a natural.
    pub fn ceil(&self) -> BigUint {
        self.general.ceil().expect("positive bound")
    }
}

pub fn sigma_bound(c: u64, k: u64) -> Result<SigmaBound> {
    let general = sigma_bound_in::<BigRational>(c, k)?;
    let b = b_constant::<BigRational>(c as u32);
    let two_color = (c == 2).then(|| {
        sqrt_nat::<BigRational>(k)
            .mul(&Interval::from_biguint(&(BigUint::one() << (2 * k as usize))))
            .mul(&b)
    });
    let shifted = sqrt_nat::<BigRational>(k - 1)
        .mul(&Interval::from_biguint(&pow_nat(c, c * k, 1 << 16)?))
        .mul(&b);
    Ok(SigmaBound {
        c,
        k,
        general,
        two_color,
        shifted,
    })
}

/// One row of the string-sum table.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaRow {
    pub c: u64,
    pub k: u64,
    pub exact: BigUint,
    pub bound: BigUint,
    pub ratio: f64,
}

pub fn sigma_table(cs: &[u64], ks: &[u64]) -> Result<Vec<SigmaRow>> {
    let mut rows = Vec::new();
    for &c in cs {
        for &k in ks {
            let exact = sigma_sum_exact(c, k)?;
            let bound = sigma_bound(c, k)?.ceil();
            let ratio = exact.to_f64().unwrap_or(f64::INFINITY) / bound.to_f64().unwrap_or(f64::INFINITY);
            rows.push(SigmaRow {
                c,
                k,
                exact,
                bound,
                ratio,
            });
        }
    }
    Ok(rows)
}

/// `sum_{b=0}^{n} C(a+b, b)` against `C(a+n+1, n)`.
pub fn pascal_second_identity(a: u64, n: u64) -> (BigUint, BigUint, bool) {
    let lhs: BigUint = (0..=n).map(|b| big_binomial(a + b, b)).sum();
    let rhs = big_binomial(a + n + 1, n);
    let equal = lhs == rhs;
    (lhs, rhs, equal)
}

/// `C(n, k)` for `k <= n`.
fn big_binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `sqrt(2 pi n) (n/e)^n <= n! <= e sqrt(n) (n/e)^n`, both sides as enclosures.
#[derive(Clone, Debug, PartialEq)]
pub struct StirlingBracket<T> {
    pub n: u64,
    pub lower: Interval<T>,
    pub factorial: BigUint,
    pub upper: Interval<T>,
}

impl<T: Scalar> StirlingBracket<T> {
    /// Both inequalities certified by the enclosures.
    pub fn holds(&self) -> bool {
        let f = Interval::from_biguint(&self.factorial);
        self.lower.certainly_le(&f) && f.certainly_le(&self.upper)
    }
}

pub fn stirling_bracket_in<T: Scalar>(n: u64) -> Result<StirlingBracket<T>> {
    if n == 0 {
        return Err(Error::input("the Stirling bracket needs n >= 1"));
    }
    let e = Interval::<T>::e();
    let n_pow = Interval::from_biguint(&BigUint::from(n).pow(n as u32));
    // written as n^n e^{1-n} sqrt(n) so that n = 1 evaluates exactly
    let upper = n_pow.mul(&e.powi(1 - n as i64)).mul(&sqrt_nat(n));
    let two_pi_n = Interval::<T>::from_u64(2 * n).mul(&Interval::pi());
    let lower = two_pi_n.sqrt().mul(&n_pow).mul(&e.powi(-(n as i64)));
    Ok(StirlingBracket {
        n,
        lower,
        factorial: factorial(n),
        upper,
    })
}

pub fn stirling_bracket(n: u64) -> Result<StirlingBracket<BigRational>> {
    stirling_bracket_in(n)
}

/// Tally of [`hyper_edge_sum_exact`] at one vertex count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderTally {
    pub m: u32,
    pub colorings: u64,
    pub qualifying: u64,
    pub edges_each: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperEdgeSum {
    pub total: BigUint,
    pub orders: Vec<OrderTally>,
}

/// Sum of edge counts over all `c`-colored complete `(a-2)`-uniform
/// hypergraphs on `{1..m}`, any `m`, without a homogeneous set of size
/// `k-1`. Vertex counts are scanned upward until none qualifies, after
/// which none can.
pub fn hyper_edge_sum_exact(a: usize, c: u8, k: usize) -> Result<HyperEdgeSum> {
    hyper_edge_sum_exact_within(a, c, k, GRAPH_BUDGET)
}

pub fn hyper_edge_sum_exact_within(a: usize, c: u8, k: usize, budget: u64) -> Result<HyperEdgeSum> {
    if a < 3 || c < 2 {
        return Err(Error::input("edge sums need a >= 3 and c >= 2"));
    }
    let u = a - 2;
    if k < u + 1 {
        return Err(Error::input(format!("edge sums need k - 1 >= a - 2, got a={a} k={k}")));
    }
    let target = k - 1;
    let mut total = BigUint::zero();
    let mut orders = Vec::new();
    let mut spent = 0u64;
    // m = 0 is the empty graph, which has no edges to count
    for m in 1u32.. {
        let edges = binomial(m as u64, u as u64).unwrap_or(u64::MAX);
        let colorings = (c as u64)
            .checked_pow(edges.try_into().unwrap_or(u32::MAX))
            .filter(|&x| spent.saturating_add(x) <= budget)
            .ok_or_else(|| Error::Budget(format!("more than {budget} colorings at m={m}")))?;
        spent += colorings;
        let mut digits: Vec<Color> = vec![0; edges as usize];
        let mut qualifying = 0u64;
        for _ in 0..colorings {
            let g = ColoredHypergraph::from_colors(m, u, c, &digits)?;
            if find_homogeneous(&g, target, DEFAULT_NODE_BUDGET)?.is_none() {
                qualifying += 1;
            }
            // next base-c counter value
            for d in digits.iter_mut() {
                *d += 1;
                if *d < c {
                    break;
                }
                *d = 0;
            }
        }
        total += BigUint::from(qualifying) * edges;
        orders.push(OrderTally {
            m,
            colorings,
            qualifying,
            edges_each: edges,
        });
        if qualifying == 0 {
            break;
        }
    }
    Ok(HyperEdgeSum { total, orders })
}

/// `r^{a-1} c^{r^{a-2}}` for an upper bound `r` on `R(a-2, k-1, c)`.
pub fn hyper_edge_sum_bound(a: usize, c: u8, r: u64, budget_bits: u64) -> Result<BigUint> {
    if a < 3 || c < 2 {
        return Err(Error::input("edge sums need a >= 3 and c >= 2"));
    }
    let inner = pow_nat(r, a as u64 - 2, budget_bits)?;
    let inner = inner
        .to_u64()
        .ok_or_else(|| Error::input(format!("exponent r^(a-2) does not fit: r={r} a={a}")))?;
    Ok(pow_nat(r, a as u64 - 1, budget_bits)? * pow_nat(c as u64, inner, budget_bits)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn string_sum_examples() {
        assert_eq!(sigma_sum_exact(2, 1).unwrap(), n(0));
        assert_eq!(sigma_sum_exact(2, 2).unwrap(), n(6));
        assert_eq!(sigma_sum_exact(1, 3).unwrap(), n(3));
        assert_eq!(sigma_sum_enumerated(2, 2).unwrap(), n(6));
        assert_eq!(sigma_sum_enumerated(3, 1).unwrap(), n(0));
        assert_eq!(sigma_sum_enumerated(2, 3).unwrap(), sigma_sum_exact(2, 3).unwrap());
    }

    #[test]
    fn total_cap_is_respected() {
        let caps = StringCaps {
            per_symbol: 2,
            total: Some(2),
        };
        // strings of length <= 2 over two symbols: 2 of length 1, 4 of length 2
        assert_eq!(sigma_sum_exact_capped(2, caps).unwrap(), n(10));
        assert_eq!(sigma_sum_enumerated_capped(2, caps, 100).unwrap(), n(10));
        assert!(sigma_sum_enumerated_capped(3, StringCaps::below(4), 10).is_err());
    }

    #[test]
    fn bound_examples() {
        let b = sigma_bound(2, 2).unwrap();
        // sqrt(2) * 16 * (e / sqrt(2 pi))^3 = 28.86...
        assert!((b.general.midpoint_f64() - 28.86).abs() < 0.01);
        assert!(b.ceil() >= n(6));
        let five = sigma_bound(2, 5).unwrap();
        let part2 = five.two_color.unwrap();
        assert!(part2.lo <= five.general.hi && five.general.lo <= part2.hi);
        let three = sigma_bound(3, 2).unwrap();
        assert!(three.ceil() >= sigma_sum_exact(3, 2).unwrap());
        assert!(sigma_bound(1, 2).is_err());
    }

    #[test]
    fn pascal_examples() {
        assert_eq!(pascal_second_identity(1, 2), (n(6), n(6), true));
        assert_eq!(pascal_second_identity(0, 0), (n(1), n(1), true));
        let (l, r, eq) = pascal_second_identity(5, 7);
        assert!(eq);
        assert_eq!(l, big_binomial(13, 7));
        assert_eq!(r, n(1716));
    }

    #[test]
    fn stirling_examples() {
        let one = stirling_bracket(1).unwrap();
        assert!((one.lower.midpoint_f64() - 0.922).abs() < 0.001);
        assert_eq!(one.upper.lo, BigRational::from_integer(BigInt::from(1)));
        assert!(one.holds());
        let five = stirling_bracket(5).unwrap();
        assert_eq!(five.factorial, n(120));
        assert!(five.holds());
        let twenty = stirling_bracket(20).unwrap();
        let slack = twenty.upper.midpoint_f64() / twenty.lower.midpoint_f64() - 1.0;
        assert!(twenty.holds() && slack < 0.1);
        assert!(stirling_bracket_in::<f64>(30).unwrap().holds());
    }

    #[test]
    fn edge_sum_examples() {
        assert_eq!(hyper_edge_sum_exact(4, 2, 3).unwrap().total, n(0));
        // points of distinct colors: one point (2 ways, 1 edge), two points (2 ways, 2 edges)
        let three = hyper_edge_sum_exact(3, 2, 3).unwrap();
        assert_eq!(three.total, n(6));
        assert!(three.total <= hyper_edge_sum_bound(3, 2, 3, 1 << 16).unwrap());
        assert_eq!(hyper_edge_sum_bound(4, 2, 2, 1 << 16).unwrap(), n(128));
        assert_eq!(hyper_edge_sum_bound(3, 2, 3, 1 << 16).unwrap(), n(72));
        assert_eq!(hyper_edge_sum_bound(4, 2, 6, 1 << 16).unwrap(), n(216) << 36usize);
    }
}
