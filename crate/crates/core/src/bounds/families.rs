use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use super::{BoundExpr, Magnitude};
use crate::error::{Error, Result};

/// The upper-bound families for `R(a, k, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `R(1,k,c) = ck-c+1` and the factorial bound on `R(2,k,c)`.
    Base,
    /// `c↑^{a-1}(ck-c+1)`.
    Ramsey,
    /// The Erdős–Rado recurrence with smaller Ramsey numbers substituted.
    ErdosRado,
    /// The closed tower form of the Erdős–Rado bound (two colors).
    ErdosRadoTower,
    /// `c^{ceil(B_c (k-1)^(1/2) c^{ck})}` at `a = 3`, the appendix bound above.
    Cfs,
    /// The CFS bound pushed through the Erdős–Rado recurrence, as a tower.
    CfsTower,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Base,
        Family::Ramsey,
        Family::ErdosRado,
        Family::ErdosRadoTower,
        Family::Cfs,
        Family::CfsTower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Base => "base",
            Family::Ramsey => "ramsey",
            Family::ErdosRado => "erdos_rado",
            Family::ErdosRadoTower => "erdos_rado_tower",
            Family::Cfs => "cfs",
            Family::CfsTower => "cfs_tower",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::input(format!("unknown bound family `{s}`")))
    }
}

/// One evaluated bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Bound {
    pub family: Family,
    pub a: u32,
    pub k: u64,
    pub c: u8,
    pub expr: BoundExpr,
    pub magnitude: Magnitude,
    /// Smallest natural at least the bound, when it fits the budget.
    pub value: Option<BigUint>,
    /// The bound is the true Ramsey number, not just an upper bound.
    pub exact_ramsey: bool,
    /// Some inner Ramsey number was replaced by an upper bound.
    pub surrogate: bool,
    /// The source states this bound only for sufficiently large `k`.
    pub asymptotic: bool,
}

impl Bound {
    pub fn notes(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.exact_ramsey {
            out.push("exact");
        }
        if self.surrogate {
            out.push("upper bound of an upper bound");
        }
        if self.asymptotic {
            out.push("asymptotic only at this k");
        }
        out
    }
}

fn n(v: u64) -> BoundExpr {
    BoundExpr::nat(v)
}

/// Validity window of the "for almost all k" statements.
fn below_asymptotic_threshold(a: u32, k: u64) -> bool {
    k < a as u64 + 3
}

/// An upper bound for `R(a, k, c)` usable inside another bound, and whether
/// it is the exact value.
pub(crate) fn ramsey_surrogate(a: u32, k: u64, c: u8) -> (BoundExpr, bool) {
    let cc = c as u64;
    if a == 1 {
        return (n(cc * k - cc + 1), true);
    }
    if k <= a as u64 {
        // any a vertices span one edge; fewer than a vertices span none
        return (n(k), true);
    }
    if a == 2 {
        return (base_two(k, c), false);
    }
    (erdos_rado_expr(a, k, c).0, false)
}

/// `(c(k-1))! / ((k-1)!)^c`.
fn base_two(k: u64, c: u8) -> BoundExpr {
    let cc = c as u64;
    n(cc * (k - 1))
        .factorial()
        .over(n(k - 1).factorial().pow(n(cc)))
}

fn erdos_rado_expr(a: u32, k: u64, c: u8) -> (BoundExpr, bool) {
    let (inner, exact) = ramsey_surrogate(a - 1, k - 1, c);
    let cc = c as u64;
    let expr = if a == 3 {
        n(cc).pow(inner.pow(n(2))).plus(n(1))
    } else {
        n(cc)
            .pow(inner.plus(n(1)).choose(n(a as u64 - 1)))
            .plus(n(a as u64 - 2))
    };
    (expr, !exact)
}

fn check_params(family: Family, a: u32, k: u64, c: u8) -> Result<()> {
    if a == 0 || c < 2 || k < a as u64 {
        return Err(Error::input(format!(
            "bounds need a >= 1, c >= 2 and k >= a; got a={a} k={k} c={c}"
        )));
    }
    let ok = match family {
        Family::Base => a <= 2,
        Family::Ramsey => true,
        Family::ErdosRado => a >= 2,
        Family::ErdosRadoTower => a >= 3 && c == 2,
        Family::Cfs | Family::CfsTower => a >= 3,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::input(format!("family {family} does not apply to a={a} c={c}")))
    }
}

/// Symbolic bound of `family` on `R(a, k, c)`, evaluated under the budget.
pub fn bound(family: Family, a: u32, k: u64, c: u8, budget_bits: u64) -> Result<Bound> {
    check_params(family, a, k, c)?;
    let cc = c as u64;
    let kk = k as i64;
    let mut exact_ramsey = false;
    let mut surrogate = false;
    let mut asymptotic = false;
    let expr = match family {
        Family::Base if a == 1 => {
            exact_ramsey = true;
            n(cc * k - cc + 1)
        }
        Family::Base => base_two(k, c),
        Family::Ramsey => BoundExpr::up_arrow(cc, a - 1, n(cc * k - cc + 1)),
        Family::ErdosRado => {
            let (expr, sub) = erdos_rado_expr(a, k, c);
            surrogate = sub;
            expr
        }
        Family::ErdosRadoTower => {
            asymptotic = below_asymptotic_threshold(a, k);
            // TOW(1, a-1, ..., 3, 4k - lg(k-a+1) - 4(a-3))
            let mut args = vec![n(1)];
            args.extend((3..a as u64).rev().map(n));
            let top = n(4 * k).minus(n(k - a as u64 + 1).lg()).minus(n(4 * (a as u64 - 3)));
            args.push(top);
            BoundExpr::tow(2, args)
        }
        Family::Cfs if a == 3 => {
            let exponent = BoundExpr::b(c as u32)
                .times(n(k - 1).sqrt())
                .times(n(cc).pow(n(cc * k)));
            n(cc).pow(exponent.ceil())
        }
        Family::Cfs => {
            let (r, exact) = ramsey_surrogate(a - 2, k - 1, c);
            surrogate = !exact;
            let a = a as u64;
            let exponent = r
                .clone()
                .pow(n(a - 1))
                .times(n(cc).pow(r.pow(n(a - 2))));
            n(cc).pow(exponent)
        }
        Family::CfsTower if a == 3 => {
            BoundExpr::tow(cc, vec![BoundExpr::b(c as u32).times(n(k - 1).sqrt()), n(cc).pow(n(cc * k))])
        }
        Family::CfsTower => {
            asymptotic = a >= 6 && below_asymptotic_threshold(a, k);
            let top_exp = kk * cc as i64 - a as i64 * cc as i64 + 3 * cc as i64;
            if top_exp < 0 {
                return Err(Error::input(format!("cfs_tower exponent ck-ac+3c is negative at a={a} k={k} c={c}")));
            }
            let mut args = vec![n(1)];
            args.extend((4..a as u64).rev().map(n));
            args.push(n(3).times(BoundExpr::b(c as u32)).times(n(k + 2 - a as u64).sqrt()));
            args.push(n(cc).pow(n(top_exp as u64)));
            BoundExpr::tow(cc, args)
        }
    };
    let magnitude = expr.magnitude();
    let value = match expr.upper_natural(budget_bits) {
        Ok(v) => Some(v),
        Err(Error::Overflow { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(Bound {
        family,
        a,
        k,
        c,
        expr,
        magnitude,
        value,
        exact_ramsey,
        surrogate,
        asymptotic,
    })
}

/// Every applicable family's bound, smallest first. At `a = 1` the exact
/// value is the only entry.
pub fn compare_bounds(a: u32, k: u64, c: u8, budget_bits: u64) -> Result<Vec<Bound>> {
    if a == 1 {
        return Ok(vec![bound(Family::Base, a, k, c, budget_bits)?]);
    }
    let mut out = Vec::new();
    for family in Family::ALL {
        if check_params(family, a, k, c).is_err() {
            continue;
        }
        match bound(family, a, k, c, budget_bits) {
            Ok(b) => out.push(b),
            Err(Error::Input(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    if out.is_empty() {
        return Err(Error::input(format!("no bound family applies to a={a} k={k} c={c}")));
    }
    out.sort_by(|x, y| x.magnitude.partial_cmp(&y.magnitude).unwrap_or(std::cmp::Ordering::Equal));
    Ok(out)
}
