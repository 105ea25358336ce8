use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Above this a float top is pushed one level up the tower.
const TOP_LIMIT_LOG2: f64 = 1000.0;

/// Approximate size of a non-negative number as an iterated power of two.
///
/// `Finite { height, top }` stands for `2^2^...^top` with `height` twos.
/// Representations are canonical: at height 0 the top is below `2^1000`, at
/// height `h >= 1` it lies in `[1000, 2^1000)`. Ordering compares height
/// first, then top.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Magnitude {
    Finite { height: u32, top: f64 },
    /// Too large to track even as a tower height.
    Beyond,
}

fn top_limit() -> f64 {
    TOP_LIMIT_LOG2.exp2()
}

impl Magnitude {
    pub const ZERO: Magnitude = Magnitude::Finite { height: 0, top: 0.0 };
    pub const ONE: Magnitude = Magnitude::Finite { height: 0, top: 1.0 };

    fn canonical(mut height: u32, mut top: f64) -> Magnitude {
        if top.is_nan() || top.is_infinite() {
            return Magnitude::Beyond;
        }
        while height > 0 && top < TOP_LIMIT_LOG2 {
            top = top.exp2();
            height -= 1;
        }
        while top >= top_limit() {
            top = top.log2();
            match height.checked_add(1) {
                Some(h) => height = h,
                None => return Magnitude::Beyond,
            }
        }
        Magnitude::Finite { height, top }
    }

    pub fn from_f64(x: f64) -> Magnitude {
        Self::canonical(0, x.max(0.0))
    }

    pub fn from_u64(x: u64) -> Magnitude {
        Self::from_f64(x as f64)
    }

    pub fn from_biguint(v: &BigUint) -> Magnitude {
        let bits = v.bits();
        if bits <= 1000 {
            return Self::from_f64(v.to_f64().unwrap_or(f64::INFINITY));
        }
        let shift = bits - 64;
        let lead = (v >> shift).to_f64().unwrap_or(1.0);
        Self::canonical(1, shift as f64 + lead.log2())
    }

    /// `2^x` for `x` of this magnitude.
    pub fn exp2(self) -> Magnitude {
        match self {
            Magnitude::Finite { height: 0, top } if top < TOP_LIMIT_LOG2 => Self::from_f64(top.exp2()),
            Magnitude::Finite { height, top } => Self::canonical(height.saturating_add(1), top),
            Magnitude::Beyond => Magnitude::Beyond,
        }
    }

    /// Binary logarithm; the logarithm of anything below 1 is clamped to 0.
    pub fn log2(self) -> Magnitude {
        match self {
            Magnitude::Finite { height: 0, top } => Self::from_f64(if top <= 1.0 { 0.0 } else { top.log2() }),
            Magnitude::Finite { height, top } => Self::canonical(height - 1, top),
            Magnitude::Beyond => Magnitude::Beyond,
        }
    }

    /// `log2` of the value as a float, infinite from height 2 on.
    pub fn log2_f64(self) -> f64 {
        match self {
            Magnitude::Finite { height: 0, top } => top.log2(),
            Magnitude::Finite { height: 1, top } => top,
            _ => f64::INFINITY,
        }
    }

    /// The value as a float when it fits.
    pub fn to_f64(self) -> Option<f64> {
        match self {
            Magnitude::Finite { height: 0, top } => Some(top),
            _ => None,
        }
    }

    pub fn height(self) -> Option<u32> {
        match self {
            Magnitude::Finite { height, .. } => Some(height),
            Magnitude::Beyond => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Magnitude::ZERO
    }

    pub fn add(self, rhs: Magnitude) -> Magnitude {
        let (big, small) = if self >= rhs { (self, rhs) } else { (rhs, self) };
        match (big, small) {
            (Magnitude::Finite { height: 0, top: x }, Magnitude::Finite { top: y, .. }) => Self::from_f64(x + y),
            (Magnitude::Finite { height: 1, top: lb }, _) => {
                let ls = small.log2_f64();
                Self::canonical(1, lb + (ls - lb).exp2().ln_1p() / std::f64::consts::LN_2)
            }
            _ => big,
        }
    }

    /// `self - rhs`, clamped at zero.
    pub fn sub(self, rhs: Magnitude) -> Magnitude {
        match (self, rhs) {
            (Magnitude::Finite { height: 0, top: x }, Magnitude::Finite { height: 0, top: y }) => Self::from_f64(x - y),
            (Magnitude::Finite { height: 1, top: la }, _) if rhs < self => {
                let lr = rhs.log2_f64();
                let ratio = (lr - la).exp2();
                if ratio >= 1.0 {
                    Magnitude::ZERO
                } else {
                    Self::canonical(1, la + (-ratio).ln_1p() / std::f64::consts::LN_2)
                }
            }
            _ if rhs >= self => Magnitude::ZERO,
            _ => self,
        }
    }

    pub fn mul(self, rhs: Magnitude) -> Magnitude {
        if self.is_zero() || rhs.is_zero() {
            return Magnitude::ZERO;
        }
        match (self, rhs) {
            (Magnitude::Finite { height: 0, top: x }, Magnitude::Finite { height: 0, top: y }) => {
                Self::from_f64(x * y)
            }
            _ => self.signed_log2().add_signed(rhs.signed_log2()).exp2(),
        }
    }

    pub fn div(self, rhs: Magnitude) -> Magnitude {
        match (self, rhs) {
            (Magnitude::Finite { height: 0, top: x }, Magnitude::Finite { height: 0, top: y }) => {
                Self::from_f64(x / y)
            }
            _ => self.signed_log2().sub_signed(rhs.signed_log2()).exp2(),
        }
    }

    /// `self^exp`.
    pub fn pow(self, exp: Magnitude) -> Magnitude {
        if exp.is_zero() {
            return Magnitude::ONE;
        }
        match self {
            Magnitude::Finite { height: 0, top } if top <= 1.0 => {
                Self::from_f64(top.powf(exp.to_f64().unwrap_or(f64::INFINITY)))
            }
            Magnitude::Finite { height: 0, top } if exp.to_f64().is_some_and(|e| e * top.log2() < TOP_LIMIT_LOG2) => {
                Self::from_f64(top.powf(exp.to_f64().unwrap_or(0.0)))
            }
            _ => {
                let l = self.log2();
                match (l, exp) {
                    (Magnitude::Finite { height: 0, top: lt }, Magnitude::Finite { height: 0, top: e }) => {
                        LogValue::Small(lt * e).exp2()
                    }
                    _ => l.mul(exp).exp2(),
                }
            }
        }
    }

    /// `sqrt`.
    pub fn sqrt(self) -> Magnitude {
        match self {
            Magnitude::Finite { height: 0, top } => Self::from_f64(top.sqrt()),
            Magnitude::Finite { height: 1, top } => Self::canonical(1, top / 2.0),
            other => other,
        }
    }

    fn signed_log2(self) -> LogValue {
        match self {
            Magnitude::Finite { height: 0, top } => LogValue::Small(top.log2()),
            other => LogValue::Large(other.log2()),
        }
    }
}

/// A binary logarithm that may be negative while small.
#[derive(Clone, Copy)]
enum LogValue {
    Small(f64),
    Large(Magnitude),
}

impl LogValue {
    fn add_signed(self, rhs: LogValue) -> LogValue {
        match (self, rhs) {
            (LogValue::Small(x), LogValue::Small(y)) => LogValue::Small(x + y),
            (LogValue::Large(m), LogValue::Small(y)) | (LogValue::Small(y), LogValue::Large(m)) => {
                if y >= 0.0 {
                    LogValue::Large(m.add(Magnitude::from_f64(y)))
                } else {
                    LogValue::Large(m.sub(Magnitude::from_f64(-y)))
                }
            }
            (LogValue::Large(m), LogValue::Large(n)) => LogValue::Large(m.add(n)),
        }
    }

    fn sub_signed(self, rhs: LogValue) -> LogValue {
        let neg = match rhs {
            LogValue::Small(y) => LogValue::Small(-y),
            LogValue::Large(m) => {
                // subtracting a large logarithm
                return match self {
                    LogValue::Large(s) if s > m => LogValue::Large(s.sub(m)),
                    _ => LogValue::Small(f64::NEG_INFINITY),
                };
            }
        };
        self.add_signed(neg)
    }

    fn exp2(self) -> Magnitude {
        match self {
            LogValue::Small(x) if x < TOP_LIMIT_LOG2 => Magnitude::from_f64(x.exp2()),
            LogValue::Small(x) => Magnitude::canonical(1, x),
            LogValue::Large(m) => m.exp2(),
        }
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Magnitude::Beyond, Magnitude::Beyond) => Some(Ordering::Equal),
            (Magnitude::Beyond, _) => Some(Ordering::Greater),
            (_, Magnitude::Beyond) => Some(Ordering::Less),
            (
                Magnitude::Finite { height: h1, top: t1 },
                Magnitude::Finite { height: h2, top: t2 },
            ) => Some(h1.cmp(h2).then(t1.total_cmp(t2))),
        }
    }
}

fn format_top(x: f64) -> String {
    if x.fract() == 0.0 && x < 1e15 {
        format!("{}", x as u64)
    } else if x < 1e6 {
        let s = format!("{x:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{x:.4e}")
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Magnitude::Finite { height, top } if height <= 6 => {
                for _ in 0..height {
                    write!(f, "2^")?;
                }
                write!(f, "{}", format_top(top))
            }
            Magnitude::Finite { height, top } => write!(f, "2^^{height}(top {})", format_top(top)),
            Magnitude::Beyond => write!(f, "beyond tower range"),
        }
    }
}
