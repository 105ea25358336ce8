//! The seven TOW rewrite rules, evaluated exactly on concrete arguments.

use num_bigint::BigUint;
use num_traits::One;

use super::arrow::{check_budget, pow_checked, tow, tow_magnitude};
use super::Magnitude;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    AtMost,
}

/// Arguments for [`tow_identity`]. Fields a rule does not mention are
/// ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TowBindings {
    /// `b_1, ..., b_L`.
    pub args: Vec<u64>,
    /// The exponent `b` of parts 2, 4 and 6.
    pub b: u64,
    /// The additive `delta` of parts 3, 4 and 6.
    pub delta: u64,
    /// Position `i` (1-based, `i < L`) of part 1.
    pub position: usize,
    /// Number of ones in part 7.
    pub ones: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub part: u8,
    pub lhs_text: String,
    pub rhs_text: String,
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub relation: Relation,
    pub holds: bool,
}

fn list(args: &[u64]) -> String {
    args.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn two() -> BigUint {
    BigUint::from(2u8)
}

/// Evaluate both sides of part `part` (1 to 7) of the TOW lemma, base 2.
pub fn tow_identity(part: u8, bind: &TowBindings, budget_bits: u64) -> Result<IdentityCheck> {
    let args = &bind.args;
    let needs_args = part != 7;
    if needs_args && (args.is_empty() || args.contains(&0)) {
        return Err(Error::input("TOW arguments must be a nonempty list of positive integers"));
    }
    let (lhs_text, rhs_text, lhs, rhs, relation) = match part {
        1 => {
            let i = bind.position;
            if i == 0 || i >= args.len() {
                return Err(Error::input(format!("part 1 needs 1 <= i < L, got i={i}")));
            }
            let lhs = tow(2, args, budget_bits)?;
            // TOW(.., b_{i-1}, 1, b_{i+1} + lg b_i, rest): the real argument
            // is removed exactly via 2^{(x + lg m) T} = m^T 2^{x T}.
            let tail = &args[i + 1..];
            let t = if tail.is_empty() { BigUint::one() } else { tow(2, tail, budget_bits)? };
            let (m, x) = (BigUint::from(args[i - 1]), BigUint::from(args[i]));
            let t_bits = Magnitude::from_biguint(&t);
            let est = Magnitude::from_biguint(&m)
                .pow(t_bits)
                .mul(Magnitude::from_u64(2).pow(Magnitude::from_biguint(&x).mul(t_bits)));
            check_budget(est, budget_bits)?;
            let mut acc = pow_checked(&m, &t, budget_bits)? * pow_checked(&two(), &(&x * &t), budget_bits)?;
            // the slot that held b_i is now 1
            acc = pow_checked(&two(), &acc, budget_bits)?;
            for &b in args[..i - 1].iter().rev() {
                acc = pow_checked(&two(), &(acc * b), budget_bits)?;
            }
            let mut rhs_args: Vec<String> = args[..i - 1].iter().map(u64::to_string).collect();
            rhs_args.push("1".into());
            rhs_args.push(format!("{}+lg({})", args[i], args[i - 1]));
            rhs_args.extend(tail.iter().map(u64::to_string));
            (
                format!("TOW({})", list(args)),
                format!("TOW({})", rhs_args.join(",")),
                lhs,
                acc,
                Relation::AtMost,
            )
        }
        2 | 4 => {
            let b = bind.b;
            let delta = if part == 4 { bind.delta } else { 0 };
            let base = tow(2, args, budget_bits)?;
            let lhs = pow_checked(&base, &BigUint::from(b), budget_bits)? * (1 + delta);
            let mut r = args.clone();
            r[0] *= b;
            *r.last_mut().expect("nonempty") += delta;
            let rhs = tow(2, &r, budget_bits)?;
            let (lt, rel) = if part == 2 {
                (format!("TOW({})^{b}", list(args)), Relation::Equal)
            } else {
                (format!("(1+{delta})*TOW({})^{b}", list(args)), Relation::AtMost)
            };
            (lt, format!("TOW({})", list(&r)), lhs, rhs, rel)
        }
        3 => {
            let delta = bind.delta;
            let lhs = tow(2, args, budget_bits)? * (1 + delta);
            let mut r = args.clone();
            *r.last_mut().expect("nonempty") += delta;
            let rhs = tow(2, &r, budget_bits)?;
            (
                format!("(1+{delta})*TOW({})", list(args)),
                format!("TOW({})", list(&r)),
                lhs,
                rhs,
                Relation::AtMost,
            )
        }
        5 => {
            let inner = tow(2, args, budget_bits)?;
            let lhs = pow_checked(&two(), &inner, budget_bits)?;
            let mut r = vec![1];
            r.extend_from_slice(args);
            let rhs = tow(2, &r, budget_bits)?;
            (format!("2^TOW({})", list(args)), format!("TOW({})", list(&r)), lhs, rhs, Relation::Equal)
        }
        6 => {
            let (b, delta) = (bind.b, bind.delta);
            let base = tow(2, args, budget_bits)?;
            let exp = pow_checked(&base, &BigUint::from(b), budget_bits)? * (1 + delta);
            let lhs = pow_checked(&two(), &exp, budget_bits)?;
            let mut r = vec![1];
            r.extend_from_slice(args);
            r[1] *= b;
            *r.last_mut().expect("nonempty") += delta;
            let rhs = tow(2, &r, budget_bits)?;
            (
                format!("2^((1+{delta})*TOW({})^{b})", list(args)),
                format!("TOW({})", list(&r)),
                lhs,
                rhs,
                Relation::AtMost,
            )
        }
        7 => {
            let ones = bind.ones;
            if ones == 0 {
                return Err(Error::input("part 7 needs at least one 1"));
            }
            let all_ones = vec![1u64; ones];
            let mags = vec![Magnitude::ONE; ones];
            check_budget(tow_magnitude(2, &mags), budget_bits)?;
            let mut v = tow(2, &all_ones, budget_bits)?;
            for _ in 0..ones {
                v = exact_lg(&v).ok_or_else(|| Error::input("iterated lg left the powers of two"))?;
            }
            (
                format!("lg^({ones})(TOW({}))", list(&all_ones)),
                "1".to_string(),
                v,
                BigUint::one(),
                Relation::Equal,
            )
        }
        _ => return Err(Error::input(format!("the TOW lemma has parts 1 to 7, not {part}"))),
    };
    let holds = match relation {
        Relation::Equal => lhs == rhs,
        Relation::AtMost => lhs <= rhs,
    };
    Ok(IdentityCheck {
        part,
        lhs_text,
        rhs_text,
        lhs,
        rhs,
        relation,
        holds,
    })
}

/// `lg v` when `v` is a power of two.
fn exact_lg(v: &BigUint) -> Option<BigUint> {
    let bits = v.bits();
    if bits == 0 || v.trailing_zeros()? != bits - 1 {
        return None;
    }
    Some(BigUint::from(bits - 1))
}
