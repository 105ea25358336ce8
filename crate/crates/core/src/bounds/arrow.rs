//! Knuth up-arrows and the TOW function over big naturals.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::Magnitude;
use crate::error::{Error, Result};

/// Size estimate of `c ↑^a k` with `k` itself given as a magnitude.
pub fn up_arrow_magnitude(c: u64, a: u32, k: Magnitude) -> Magnitude {
    let cm = Magnitude::from_u64(c);
    match a {
        0 => cm.mul(k),
        1 => cm.pow(k),
        _ if k.is_zero() => Magnitude::ONE,
        2 => {
            // c↑^2 k is a tower of k copies of c
            let Some(steps) = k.to_f64().filter(|&s| s < u32::MAX as f64) else {
                return Magnitude::Beyond;
            };
            let steps = steps.ceil() as u64;
            let mut m = Magnitude::ONE;
            for done in 0..steps {
                m = cm.pow(m);
                if let Magnitude::Finite { height, top } = m {
                    if height >= 3 {
                        // further levels only add height
                        let rest = steps - done - 1;
                        return match height.checked_add(rest as u32).filter(|_| rest < u32::MAX as u64) {
                            Some(h) => Magnitude::Finite { height: h, top },
                            None => Magnitude::Beyond,
                        };
                    }
                }
            }
            m
        }
        _ => {
            let Some(steps) = k.to_f64().filter(|&s| s <= 64.0) else {
                return Magnitude::Beyond;
            };
            let mut m = Magnitude::ONE;
            for _ in 0..steps.ceil() as u64 {
                m = up_arrow_magnitude(c, a - 1, m);
                if m == Magnitude::Beyond {
                    break;
                }
            }
            m
        }
    }
}

pub(crate) fn overflow(magnitude: Magnitude, budget_bits: u64) -> Error {
    Error::Overflow {
        magnitude,
        budget_bits,
    }
}

pub(crate) fn check_budget(m: Magnitude, budget_bits: u64) -> Result<()> {
    if m.log2_f64() > budget_bits as f64 {
        Err(overflow(m, budget_bits))
    } else {
        Ok(())
    }
}

/// `base^exp` with the result size checked against the budget first.
pub(crate) fn pow_checked(base: &BigUint, exp: &BigUint, budget_bits: u64) -> Result<BigUint> {
    if exp.is_zero() || base.is_one() {
        return Ok(BigUint::one());
    }
    if base.is_zero() {
        return Ok(BigUint::zero());
    }
    let m = Magnitude::from_biguint(base).pow(Magnitude::from_biguint(exp));
    check_budget(m, budget_bits)?;
    let e = exp.to_u32().ok_or_else(|| overflow(m, budget_bits))?;
    Ok(base.pow(e))
}

/// Exact `c ↑^a k`.
pub fn up_arrow(c: u64, a: u32, k: u64, budget_bits: u64) -> Result<BigUint> {
    if c < 2 {
        return Err(Error::input("up-arrow base must be at least 2"));
    }
    let m = up_arrow_magnitude(c, a, Magnitude::from_u64(k));
    check_budget(m, budget_bits)?;
    up_arrow_big(&BigUint::from(c), a, &BigUint::from(k), budget_bits)
}

fn up_arrow_big(c: &BigUint, a: u32, k: &BigUint, budget_bits: u64) -> Result<BigUint> {
    match a {
        0 => Ok(c * k),
        1 => pow_checked(c, k, budget_bits),
        _ => {
            // c↑^a k = c↑^{a-1}(c↑^a (k-1)), unrolled from c↑^a 0 = 1
            let steps = k
                .to_u64()
                .ok_or_else(|| overflow(Magnitude::Beyond, budget_bits))?;
            let mut v = BigUint::one();
            for _ in 0..steps {
                v = up_arrow_big(c, a - 1, &v, budget_bits)?;
            }
            Ok(v)
        }
    }
}

/// Size estimate of `TOW_c(b_1, ..., b_L)`.
pub fn tow_magnitude(c: u64, args: &[Magnitude]) -> Magnitude {
    let cm = Magnitude::from_u64(c);
    let mut acc = Magnitude::ONE;
    for (i, b) in args.iter().enumerate().rev() {
        acc = if i + 1 == args.len() {
            cm.pow(*b)
        } else {
            cm.pow(b.mul(acc))
        };
    }
    acc
}

/// Exact `TOW_c(b_1, ..., b_L)`, evaluated from the top of the tower down.
pub fn tow(c: u64, args: &[u64], budget_bits: u64) -> Result<BigUint> {
    if c < 2 {
        return Err(Error::input("TOW base must be at least 2"));
    }
    if args.is_empty() {
        return Err(Error::input("TOW needs at least one argument"));
    }
    if args.contains(&0) {
        return Err(Error::input("TOW arguments must be positive"));
    }
    let mags: Vec<Magnitude> = args.iter().map(|&b| Magnitude::from_u64(b)).collect();
    check_budget(tow_magnitude(c, &mags), budget_bits)?;
    let base = BigUint::from(c);
    let mut acc = pow_checked(&base, &BigUint::from(*args.last().expect("nonempty")), budget_bits)?;
    for &b in args[..args.len() - 1].iter().rev() {
        acc = pow_checked(&base, &(acc * b), budget_bits)?;
    }
    Ok(acc)
}
