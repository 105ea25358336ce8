use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::arrow::{check_budget, pow_checked, tow_magnitude, up_arrow, up_arrow_magnitude};
use super::Magnitude;
use crate::error::{Error, Result};
use crate::scalar::{b_constant, Interval, Scalar};

/// Symbolic bound expression.
///
/// Natural-valued nodes evaluate exactly; `B`, square roots and logarithms
/// evaluate to rigorous intervals. Every evaluation first sizes the node and
/// refuses to materialize anything wider than the bit budget.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundExpr {
    Nat(BigUint),
    /// `B_c = (e / sqrt(2 pi))^(c+1)`.
    ConstB(u32),
    Lg(Box<BoundExpr>),
    Sqrt(Box<BoundExpr>),
    Ceil(Box<BoundExpr>),
    Sum(Vec<BoundExpr>),
    Difference(Box<BoundExpr>, Box<BoundExpr>),
    Product(Vec<BoundExpr>),
    Quotient(Box<BoundExpr>, Box<BoundExpr>),
    Power(Box<BoundExpr>, Box<BoundExpr>),
    Binomial(Box<BoundExpr>, Box<BoundExpr>),
    Factorial(Box<BoundExpr>),
    UpArrow { c: u64, a: u32, k: Box<BoundExpr> },
    Tow { c: u64, args: Vec<BoundExpr> },
}

impl BoundExpr {
    pub fn nat(v: u64) -> Self {
        BoundExpr::Nat(BigUint::from(v))
    }

    pub fn b(colors: u32) -> Self {
        BoundExpr::ConstB(colors)
    }

    pub fn lg(self) -> Self {
        BoundExpr::Lg(Box::new(self))
    }

    pub fn sqrt(self) -> Self {
        BoundExpr::Sqrt(Box::new(self))
    }

    pub fn ceil(self) -> Self {
        BoundExpr::Ceil(Box::new(self))
    }

    pub fn plus(self, rhs: BoundExpr) -> Self {
        match self {
            BoundExpr::Sum(mut xs) => {
                xs.push(rhs);
                BoundExpr::Sum(xs)
            }
            lhs => BoundExpr::Sum(vec![lhs, rhs]),
        }
    }

    pub fn minus(self, rhs: BoundExpr) -> Self {
        BoundExpr::Difference(Box::new(self), Box::new(rhs))
    }

    pub fn times(self, rhs: BoundExpr) -> Self {
        match self {
            BoundExpr::Product(mut xs) => {
                xs.push(rhs);
                BoundExpr::Product(xs)
            }
            lhs => BoundExpr::Product(vec![lhs, rhs]),
        }
    }

    pub fn over(self, rhs: BoundExpr) -> Self {
        BoundExpr::Quotient(Box::new(self), Box::new(rhs))
    }

    pub fn pow(self, exp: BoundExpr) -> Self {
        BoundExpr::Power(Box::new(self), Box::new(exp))
    }

    pub fn choose(self, k: BoundExpr) -> Self {
        BoundExpr::Binomial(Box::new(self), Box::new(k))
    }

    pub fn factorial(self) -> Self {
        BoundExpr::Factorial(Box::new(self))
    }

    pub fn up_arrow(c: u64, a: u32, k: BoundExpr) -> Self {
        BoundExpr::UpArrow { c, a, k: Box::new(k) }
    }

    pub fn tow(c: u64, args: Vec<BoundExpr>) -> Self {
        BoundExpr::Tow { c, args }
    }

    /// Approximate size, always available.
    pub fn magnitude(&self) -> Magnitude {
        match self {
            BoundExpr::Nat(v) => Magnitude::from_biguint(v),
            BoundExpr::ConstB(c) => Magnitude::from_f64(b_constant::<f64>(*c).hi),
            BoundExpr::Lg(x) => x.magnitude().log2(),
            BoundExpr::Sqrt(x) => x.magnitude().sqrt(),
            BoundExpr::Ceil(x) => x.magnitude(),
            BoundExpr::Sum(xs) => xs.iter().fold(Magnitude::ZERO, |acc, x| acc.add(x.magnitude())),
            BoundExpr::Difference(x, y) => x.magnitude().sub(y.magnitude()),
            BoundExpr::Product(xs) => xs.iter().fold(Magnitude::ONE, |acc, x| acc.mul(x.magnitude())),
            BoundExpr::Quotient(x, y) => x.magnitude().div(y.magnitude()),
            BoundExpr::Power(b, e) => b.magnitude().pow(e.magnitude()),
            BoundExpr::Binomial(n, k) => binomial_magnitude(n.magnitude(), k.magnitude()),
            BoundExpr::Factorial(n) => factorial_magnitude(n.magnitude()),
            BoundExpr::UpArrow { c, a, k } => up_arrow_magnitude(*c, *a, k.magnitude()),
            BoundExpr::Tow { c, args } => {
                let mags: Vec<Magnitude> = args.iter().map(BoundExpr::magnitude).collect();
                tow_magnitude(*c, &mags)
            }
        }
    }

    /// Rigorous enclosure of the value over exact rationals.
    pub fn eval(&self, budget_bits: u64) -> Result<Interval<BigRational>> {
        self.eval_in::<BigRational>(budget_bits)
    }

    /// The value when it is a natural number.
    pub fn exact(&self, budget_bits: u64) -> Result<BigUint> {
        let iv = self.eval(budget_bits)?;
        if iv.is_point() && iv.lo.is_integer() {
            if let Some(v) = iv.lo.to_integer().to_biguint() {
                return Ok(v);
            }
        }
        Err(Error::input(format!("`{self}` is not a natural number")))
    }

    /// Smallest natural known to be at least the value.
    pub fn upper_natural(&self, budget_bits: u64) -> Result<BigUint> {
        let iv = self.eval(budget_bits)?;
        iv.ceil()
            .ok_or_else(|| Error::input(format!("`{self}` has a negative enclosure")))
    }

    /// Enclosure over any endpoint type.
    pub fn eval_in<T: Scalar>(&self, budget_bits: u64) -> Result<Interval<T>> {
        check_budget(self.magnitude(), budget_bits)?;
        let nat = |v: BigUint| Interval::<T>::from_biguint(&v);
        Ok(match self {
            BoundExpr::Nat(v) => Interval::from_biguint(v),
            BoundExpr::ConstB(c) => b_constant(*c),
            BoundExpr::Lg(x) => {
                let v = x.eval_in::<T>(budget_bits)?;
                if !(v.lo > T::zero()) {
                    return Err(Error::input(format!("lg of a non-positive value in `{self}`")));
                }
                v.log2()
            }
            BoundExpr::Sqrt(x) => {
                let v = x.eval_in::<T>(budget_bits)?;
                if v.lo < T::zero() {
                    return Err(Error::input(format!("square root of a negative value in `{self}`")));
                }
                v.sqrt()
            }
            BoundExpr::Ceil(x) => {
                let v = x.eval_in::<T>(budget_bits)?;
                let (lo, hi) = (v.lo.ceil_biguint(), v.hi.ceil_biguint());
                match (lo, hi) {
                    (Some(lo), Some(hi)) => {
                        let lo = Interval::<T>::from_biguint(&lo);
                        let hi = Interval::<T>::from_biguint(&hi);
                        Interval::new(lo.lo, hi.hi)
                    }
                    _ => return Err(Error::input(format!("ceiling of a negative value in `{self}`"))),
                }
            }
            BoundExpr::Sum(xs) => {
                let mut acc = Interval::from_u64(0);
                for x in xs {
                    acc = acc.add(&x.eval_in(budget_bits)?);
                }
                acc
            }
            BoundExpr::Difference(x, y) => x.eval_in::<T>(budget_bits)?.sub(&y.eval_in(budget_bits)?),
            BoundExpr::Product(xs) => {
                let mut acc = Interval::from_u64(1);
                for x in xs {
                    acc = acc.mul(&x.eval_in(budget_bits)?);
                }
                acc
            }
            BoundExpr::Quotient(x, y) => {
                let d = y.eval_in::<T>(budget_bits)?;
                if !(d.lo > T::zero() || d.hi < T::zero()) {
                    return Err(Error::input(format!("division by a value near zero in `{self}`")));
                }
                x.eval_in::<T>(budget_bits)?.div(&d)
            }
            BoundExpr::Power(b, e) => {
                let base = b.eval_in::<T>(budget_bits)?;
                let exp = e.eval_in::<T>(budget_bits)?;
                power(&base, &exp)
                    .ok_or_else(|| Error::input(format!("unsupported power in `{self}`")))?
            }
            BoundExpr::Binomial(n, k) => {
                let n = n.exact_in::<T>(budget_bits)?;
                let k = k.exact_in::<T>(budget_bits)?;
                nat(exact_binomial(&n, &k)?)
            }
            BoundExpr::Factorial(n) => {
                let n = n.exact_in::<T>(budget_bits)?;
                let n = n
                    .to_u64()
                    .ok_or_else(|| Error::input("factorial argument too large"))?;
                nat((1..=n).map(BigUint::from).product())
            }
            BoundExpr::UpArrow { c, a, k } => {
                let k = k.exact_in::<T>(budget_bits)?;
                let k = k.to_u64().ok_or_else(|| Error::input("up-arrow height too large"))?;
                nat(up_arrow(*c, *a, k, budget_bits)?)
            }
            BoundExpr::Tow { c, args } => {
                if args.is_empty() {
                    return Err(Error::input("TOW needs at least one argument"));
                }
                let base = Interval::<T>::from_u64(*c);
                let last = args.last().expect("nonempty").eval_in::<T>(budget_bits)?;
                let mut acc = power(&base, &last)
                    .ok_or_else(|| Error::input(format!("non-positive TOW argument in `{self}`")))?;
                for b in args[..args.len() - 1].iter().rev() {
                    let exp = b.eval_in::<T>(budget_bits)?.mul(&acc);
                    acc = power(&base, &exp)
                        .ok_or_else(|| Error::input(format!("non-positive TOW argument in `{self}`")))?;
                }
                acc
            }
        })
    }

    /// A natural-valued subexpression, via any endpoint type. Integer
    /// subexpressions here are always small, so float endpoints suffice.
    fn exact_in<T: Scalar>(&self, budget_bits: u64) -> Result<BigUint> {
        let iv = self.eval_in::<T>(budget_bits)?;
        match (iv.lo.floor_biguint(), iv.hi.ceil_biguint()) {
            (Some(lo), Some(hi)) if lo == hi => Ok(lo),
            _ => Err(Error::input(format!("`{self}` is not a natural number"))),
        }
    }

    /// Rendering as an explicit power tower where the shape allows.
    pub fn tower_text(&self) -> String {
        match self {
            BoundExpr::Tow { c, args } => {
                let mut out = String::new();
                for (i, b) in args.iter().enumerate() {
                    let last = i + 1 == args.len();
                    let coeff = if matches!(b, BoundExpr::Nat(v) if v.is_one()) {
                        String::new()
                    } else if last {
                        b.to_string()
                    } else {
                        format!("{}*", paren(b))
                    };
                    if last {
                        if coeff.is_empty() {
                            out.push_str(&c.to_string());
                        } else {
                            out.push_str(&format!("{c}^{}", paren_str(&coeff)));
                        }
                    } else {
                        out.push_str(&format!("{c}^{coeff}"));
                    }
                }
                out
            }
            BoundExpr::UpArrow { c, a: 2, k } => match k.as_ref() {
                BoundExpr::Nat(n) if n.to_u64().is_some_and(|n| (1..=8).contains(&n)) => {
                    vec![c.to_string(); n.to_usize().unwrap_or(1)].join("^")
                }
                other => format!("{c}^{c}^...^{c} ({other} levels)"),
            },
            BoundExpr::UpArrow { c, a: 1, k } => format!("{c}^{}", paren(k)),
            BoundExpr::Power(b, e) => format!("{}^{}", paren(b), paren_str(&e.tower_text())),
            BoundExpr::Sum(xs) if !xs.is_empty() => {
                let mut parts = vec![xs[0].tower_text()];
                parts.extend(xs[1..].iter().map(|x| x.to_string()));
                parts.join(" + ")
            }
            other => other.to_string(),
        }
    }
}

fn paren_str(s: &str) -> String {
    if s.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '.') {
        s.to_string()
    } else {
        format!("({s})")
    }
}

fn paren(e: &BoundExpr) -> String {
    paren_str(&e.to_string())
}

/// `base^exp` over intervals. Integer exponents are exact; otherwise the
/// exponent is widened to the integers around it, which needs `base >= 1`.
fn power<T: Scalar>(base: &Interval<T>, exp: &Interval<T>) -> Option<Interval<T>> {
    let lo = exp.lo.floor_biguint()?;
    let hi = exp.hi.ceil_biguint()?;
    if lo == hi {
        return Some(base.powi(lo.to_i64()?));
    }
    if base.lo < T::one() {
        return None;
    }
    let lower = Interval::new(base.lo.clone(), base.lo.clone()).powi(lo.to_i64()?);
    let upper = Interval::new(base.hi.clone(), base.hi.clone()).powi(hi.to_i64()?);
    Some(Interval::new(lower.lo, upper.hi))
}

fn exact_binomial(n: &BigUint, k: &BigUint) -> Result<BigUint> {
    if k > n {
        return Ok(BigUint::zero());
    }
    let k = k.min(&(n - k)).clone();
    let k = k.to_u64().ok_or_else(|| Error::input("binomial too large"))?;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

pub(crate) fn pow_nat(base: u64, exp: u64, budget_bits: u64) -> Result<BigUint> {
    pow_checked(&BigUint::from(base), &BigUint::from(exp), budget_bits)
}

/// `log2(n!)` for moderate `n`.
fn log2_factorial(n: f64) -> f64 {
    if n < 2.0 {
        0.0
    } else if n < 64.0 {
        (2..=n as u64).map(|i| (i as f64).log2()).sum()
    } else {
        let ln = n * n.ln() - n + 0.5 * (2.0 * std::f64::consts::PI * n).ln() + 1.0 / (12.0 * n);
        ln / std::f64::consts::LN_2
    }
}

fn from_log2(l: f64) -> Magnitude {
    Magnitude::from_f64(l).exp2()
}

fn factorial_magnitude(n: Magnitude) -> Magnitude {
    match n.to_f64() {
        Some(x) if x < 1e300 => from_log2(log2_factorial(x.round())),
        // n! <= n^n
        _ => n.pow(n),
    }
}

fn binomial_magnitude(n: Magnitude, k: Magnitude) -> Magnitude {
    match (n.to_f64(), k.to_f64()) {
        (Some(n), Some(k)) if n < 1e300 => {
            if k > n {
                return Magnitude::ZERO;
            }
            let (n, k) = (n.round(), k.round());
            from_log2(log2_factorial(n) - log2_factorial(k) - log2_factorial(n - k))
        }
        _ => n.pow(k),
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundExpr::Nat(v) => write!(f, "{v}"),
            BoundExpr::ConstB(c) => write!(f, "B_{c}"),
            BoundExpr::Lg(x) => write!(f, "lg({x})"),
            BoundExpr::Sqrt(x) => write!(f, "{}^(1/2)", paren(x)),
            BoundExpr::Ceil(x) => write!(f, "ceil({x})"),
            BoundExpr::Sum(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(" + "))
            }
            BoundExpr::Difference(x, y) => write!(f, "{x} - {}", paren(y)),
            BoundExpr::Product(xs) => {
                let parts: Vec<String> = xs.iter().map(paren).collect();
                write!(f, "{}", parts.join("*"))
            }
            BoundExpr::Quotient(x, y) => write!(f, "{}/{}", paren(x), paren(y)),
            BoundExpr::Power(b, e) => write!(f, "{}^{}", paren(b), paren(e)),
            BoundExpr::Binomial(n, k) => write!(f, "C({n}, {k})"),
            BoundExpr::Factorial(n) => write!(f, "{}!", paren(n)),
            BoundExpr::UpArrow { c, a, k } => write!(f, "{c}↑^{a}({k})"),
            BoundExpr::Tow { c, args } => {
                let parts: Vec<String> = args.iter().map(|x| x.to_string()).collect();
                if *c == 2 {
                    write!(f, "TOW({})", parts.join(", "))
                } else {
                    write!(f, "TOW_{c}({})", parts.join(", "))
                }
            }
        }
    }
}
