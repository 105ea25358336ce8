//! Upper bounds on Ramsey numbers: up-arrows, TOW, symbolic bound
//! expressions and the bound families.

mod arrow;
mod expr;
mod families;
mod identity;
mod magnitude;

pub use arrow::{tow, tow_magnitude, up_arrow, up_arrow_magnitude};
pub use expr::BoundExpr;
pub use families::{bound, compare_bounds, Bound, Family};
pub use identity::{tow_identity, IdentityCheck, Relation, TowBindings};
pub use magnitude::Magnitude;

pub(crate) use expr::pow_nat;

/// Default cap on the bit length of any exactly evaluated value.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

/// Environment variable overriding [`DEFAULT_BIT_BUDGET`].
pub const BIT_BUDGET_ENV: &str = "RAMSEY_BIT_BUDGET";

/// The bit budget, honoring [`BIT_BUDGET_ENV`] when it holds a number.
pub fn bit_budget_from_env() -> u64 {
    std::env::var(BIT_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BIT_BUDGET)
}
