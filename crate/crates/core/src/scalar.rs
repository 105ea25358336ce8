//! Scalar types for rigorous real-valued bounds.
//!
//! Every real quantity that appears in a bound (e, pi, square roots, binary
//! logarithms, the constant `B_c`) is carried as an [`Interval`] whose
//! endpoints enclose the true value. The endpoint type is generic: `f32` and
//! `f64` widen every operation outward by one ulp, while `BigRational` is
//! exact for field operations and encloses transcendental values to
//! [`RATIONAL_PRECISION_BITS`] bits.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Bits of precision used for rational enclosures of irrational values.
pub const RATIONAL_PRECISION_BITS: u32 = 128;

/// Endpoint arithmetic for [`Interval`].
///
/// Field operations on `Self` may round; `down`/`up` must then move a rounded
/// result far enough that it still bounds the exact result from below/above.
pub trait Scalar: Clone + Debug + PartialOrd {
    fn from_u64(v: u64) -> Self;
    fn from_biguint(v: &BigUint) -> Self;
    fn zero() -> Self {
        Self::from_u64(0)
    }
    fn one() -> Self {
        Self::from_u64(1)
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;

    /// Step a rounded value toward negative infinity.
    fn down(self) -> Self;
    /// Step a rounded value toward positive infinity.
    fn up(self) -> Self;

    /// Lower and upper bounds on `sqrt(self)`, `self >= 0`.
    fn sqrt_bounds(&self) -> (Self, Self);
    /// Lower and upper bounds on `log2(self)`, `self > 0`.
    fn log2_bounds(&self) -> (Self, Self);
    fn e_bounds() -> (Self, Self);
    fn pi_bounds() -> (Self, Self);

    fn floor_biguint(&self) -> Option<BigUint>;
    fn ceil_biguint(&self) -> Option<BigUint>;
    fn approx_f64(&self) -> f64;
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_u64(v: u64) -> Self {
                v as $t
            }
            fn from_biguint(v: &BigUint) -> Self {
                v.to_f64().map(|x| x as $t).unwrap_or(<$t>::INFINITY)
            }
            fn add(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn div(&self, rhs: &Self) -> Self {
                self / rhs
            }
            fn down(self) -> Self {
                if self.is_finite() {
                    self.next_down()
                } else {
                    self
                }
            }
            fn up(self) -> Self {
                if self.is_finite() {
                    self.next_up()
                } else {
                    self
                }
            }
            fn sqrt_bounds(&self) -> (Self, Self) {
                let s = self.sqrt();
                (s.down().max(0.0), s.up())
            }
            fn log2_bounds(&self) -> (Self, Self) {
                let l = self.log2();
                // libm log2 is not correctly rounded; two ulps covers it.
                (l.down().down(), l.up().up())
            }
            fn e_bounds() -> (Self, Self) {
                let e = std::f64::consts::E as $t;
                (e.down(), e.up())
            }
            fn pi_bounds() -> (Self, Self) {
                let p = std::f64::consts::PI as $t;
                (p.down(), p.up())
            }
            fn floor_biguint(&self) -> Option<BigUint> {
                float_to_biguint(self.floor() as f64)
            }
            fn ceil_biguint(&self) -> Option<BigUint> {
                float_to_biguint(self.ceil() as f64)
            }
            fn approx_f64(&self) -> f64 {
                *self as f64
            }
        }
    };
}

fn float_to_biguint(x: f64) -> Option<BigUint> {
    if !x.is_finite() || x < 0.0 || x >= u128::MAX as f64 {
        return None;
    }
    Some(BigUint::from(x as u128))
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for BigRational {
    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_biguint(v: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from_biguint(Sign::Plus, v.clone()))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn down(self) -> Self {
        round_dyadic(self, false)
    }
    fn up(self) -> Self {
        round_dyadic(self, true)
    }
    fn sqrt_bounds(&self) -> (Self, Self) {
        rational_sqrt_bounds(self, RATIONAL_PRECISION_BITS)
    }
    fn log2_bounds(&self) -> (Self, Self) {
        rational_log2_bounds(self, RATIONAL_PRECISION_BITS)
    }
    fn e_bounds() -> (Self, Self) {
        rational_e_bounds()
    }
    fn pi_bounds() -> (Self, Self) {
        rational_pi_bounds()
    }
    fn floor_biguint(&self) -> Option<BigUint> {
        if self.is_negative() {
            return None;
        }
        self.floor().to_integer().to_biguint()
    }
    fn ceil_biguint(&self) -> Option<BigUint> {
        if self.is_negative() {
            return None;
        }
        self.ceil().to_integer().to_biguint()
    }
    fn approx_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

/// Denominators wider than this are rounded to a dyadic enclosure.
const DENOM_LIMIT_BITS: u64 = 2 * RATIONAL_PRECISION_BITS as u64 + 64;

// Long interval chains would otherwise grow denominators without bound.
// Small rationals, and integers in particular, are left exact.
fn round_dyadic(q: BigRational, upward: bool) -> BigRational {
    if q.denom().bits() <= DENOM_LIMIT_BITS {
        return q;
    }
    // keep 2P significant bits however small q is
    let tiny = q.denom().bits().saturating_sub(q.numer().bits());
    let frac_bits = 2 * RATIONAL_PRECISION_BITS as usize + tiny as usize;
    let scaled = q.numer() << frac_bits;
    let n = if upward {
        scaled.div_ceil(q.denom())
    } else {
        scaled.div_floor(q.denom())
    };
    BigRational::new(n, BigInt::one() << frac_bits)
}

fn rational_to_f64(q: &BigRational) -> f64 {
    // Shift both parts into f64 range before dividing.
    let n = q.numer();
    let d = q.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let nf = (n >> shift_n as usize).to_f64().unwrap_or(f64::NAN);
    let df = (d >> shift_d as usize).to_f64().unwrap_or(f64::NAN);
    let e = shift_n - shift_d;
    if e > 2000 {
        return if nf.is_sign_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    if e < -2000 {
        return 0.0;
    }
    nf / df * 2f64.powi(e as i32)
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

/// Enclosure of `sqrt(q)` with width at most `2^-prec / denom(q)`; exact for
/// squares of rationals.
pub fn rational_sqrt_bounds(q: &BigRational, prec: u32) -> (BigRational, BigRational) {
    assert!(!q.is_negative(), "sqrt of a negative rational");
    if q.is_zero() {
        return (<BigRational as Zero>::zero(), <BigRational as Zero>::zero());
    }
    // sqrt(n/d) = sqrt(n*d)/d
    let n = q.numer();
    let d = q.denom();
    let scaled = (n * d) << (2 * prec as usize);
    let s = scaled.sqrt();
    let scale = d * pow2(prec);
    let lo = BigRational::new(s.clone(), scale.clone());
    if &s * &s == scaled {
        (lo.clone(), lo)
    } else {
        (lo, BigRational::new(s + 1, scale))
    }
}

/// Enclosure of `log2(q)` to `prec` fractional bits; exact when `q` is a
/// power of two.
pub fn rational_log2_bounds(q: &BigRational, prec: u32) -> (BigRational, BigRational) {
    assert!(q.is_positive(), "log2 of a non-positive rational");
    let n = q.numer().magnitude().clone();
    let d = q.denom().magnitude().clone();
    // Integer part: q = 2^e * m with m in [1, 2).
    let mut e = n.bits() as i64 - d.bits() as i64;
    let mut m = if e >= 0 {
        BigRational::new(BigInt::from(n), BigInt::from(d) << e as usize)
    } else {
        BigRational::new(BigInt::from(n) << (-e) as usize, BigInt::from(d))
    };
    let two = BigRational::from_integer(BigInt::from(2));
    if m < <BigRational as One>::one() {
        m = m * &two;
        e -= 1;
    }
    let int_part = BigRational::from_integer(BigInt::from(e));
    if m.is_one() {
        return (int_part.clone(), int_part);
    }
    // Binary digits of log2(m) by repeated squaring. Truncate the working
    // value each step, tracking the accumulated error as a widening of the
    // final enclosure.
    let mut frac = BigInt::zero();
    let work_bits = prec as usize + 32;
    let mut x = m;
    for _ in 0..prec {
        x = &x * &x;
        frac <<= 1;
        if x >= two {
            x = x / &two;
            frac += 1;
        }
        // keep the representation small
        let num = x.numer() << work_bits;
        let q = num.div_floor(x.denom());
        x = BigRational::new(q, BigInt::one() << work_bits);
    }
    let denom = pow2(prec);
    // Truncation error of each squaring step stays far below one unit in the
    // last digit with 32 guard bits; allow two units on each side anyway.
    let lo = &int_part + BigRational::new(frac.clone() - 2, denom.clone());
    let hi = &int_part + BigRational::new(frac + 3, denom);
    (lo, hi)
}

/// e enclosed by the truncated exponential series and its geometric tail.
pub fn rational_e_bounds() -> (BigRational, BigRational) {
    let terms = 45u32;
    let mut sum = <BigRational as Zero>::zero();
    let mut fact = BigInt::one();
    for i in 0..terms {
        if i > 0 {
            fact *= i;
        }
        sum += BigRational::new(BigInt::one(), fact.clone());
    }
    // tail sum_{i>=terms} 1/i! <= 2/terms!
    let tail = BigRational::new(BigInt::from(2), fact * terms);
    (sum.clone(), sum + tail)
}

fn arctan_inv_bounds(x: u64, terms: u32) -> (BigRational, BigRational) {
    // arctan(1/x) alternating series; partial sums bracket the limit.
    let xx = BigInt::from(x) * x;
    let mut pow = BigInt::from(x);
    let mut sum = <BigRational as Zero>::zero();
    let mut prev = <BigRational as Zero>::zero();
    for i in 0..terms {
        let term = BigRational::new(BigInt::one(), &pow * (2 * i + 1));
        prev = sum.clone();
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pow *= &xx;
    }
    if prev < sum {
        (prev, sum)
    } else {
        (sum, prev)
    }
}

/// pi from Machin's formula with alternating-series enclosures.
pub fn rational_pi_bounds() -> (BigRational, BigRational) {
    let (a_lo, a_hi) = arctan_inv_bounds(5, 40);
    let (b_lo, b_hi) = arctan_inv_bounds(239, 20);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    (
        &sixteen * a_lo - &four * b_hi,
        sixteen * a_hi - four * b_lo,
    )
}

/// A closed interval `[lo, hi]` known to contain some real value.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        debug_assert!(lo <= hi, "inverted interval {lo:?} > {hi:?}");
        Interval { lo, hi }
    }

    pub fn point(v: T) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn from_u64(v: u64) -> Self {
        Self::point(T::from_u64(v))
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        let x = T::from_biguint(v);
        if x.floor_biguint().as_ref() == Some(v) && x.ceil_biguint().as_ref() == Some(v) {
            Interval::point(x)
        } else {
            // a float conversion of a huge integer can round either way
            Interval::new(x.clone().down(), x.up())
        }
    }

    pub fn e() -> Self {
        let (lo, hi) = T::e_bounds();
        Interval::new(lo, hi)
    }

    pub fn pi() -> Self {
        let (lo, hi) = T::pi_bounds();
        Interval::new(lo, hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Interval::new(self.lo.add(&rhs.lo).down(), self.hi.add(&rhs.hi).up())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Interval::new(self.lo.sub(&rhs.hi).down(), self.hi.sub(&rhs.lo).up())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let products = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let (lo, hi) = min_max(&products);
        Interval::new(lo.down(), hi.up())
    }

    /// Division; the divisor must not contain zero.
    pub fn div(&self, rhs: &Self) -> Self {
        let zero = T::zero();
        assert!(
            rhs.lo > zero || rhs.hi < zero,
            "interval division by an interval containing zero"
        );
        let quotients = [
            self.lo.div(&rhs.lo),
            self.lo.div(&rhs.hi),
            self.hi.div(&rhs.lo),
            self.hi.div(&rhs.hi),
        ];
        let (lo, hi) = min_max(&quotients);
        Interval::new(lo.down(), hi.up())
    }

    /// Integer power; negative exponents require an interval away from zero.
    pub fn powi(&self, exp: i64) -> Self {
        if exp == 0 {
            return Interval::point(T::one());
        }
        if exp < 0 {
            return Interval::point(T::one()).div(&self.powi(-exp));
        }
        let mut result = Interval::point(T::one());
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn sqrt(&self) -> Self {
        let (lo, _) = self.lo.sqrt_bounds();
        let (_, hi) = self.hi.sqrt_bounds();
        Interval::new(lo, hi)
    }

    pub fn log2(&self) -> Self {
        let (lo, _) = self.lo.log2_bounds();
        let (_, hi) = self.hi.log2_bounds();
        Interval::new(lo, hi)
    }

    /// True when every point of `self` is `<=` every point of `rhs`.
    pub fn certainly_le(&self, rhs: &Self) -> bool {
        self.hi <= rhs.lo
    }

    pub fn contains(&self, v: &T) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn ceil(&self) -> Option<BigUint> {
        self.hi.ceil_biguint()
    }

    pub fn floor(&self) -> Option<BigUint> {
        self.lo.floor_biguint()
    }

    pub fn midpoint_f64(&self) -> f64 {
        (self.lo.approx_f64() + self.hi.approx_f64()) / 2.0
    }
}

fn min_max<T: Scalar>(xs: &[T]) -> (T, T) {
    let mut lo = xs[0].clone();
    let mut hi = xs[0].clone();
    for x in &xs[1..] {
        if x.partial_cmp(&lo) == Some(Ordering::Less) {
            lo = x.clone();
        }
        if x.partial_cmp(&hi) == Some(Ordering::Greater) {
            hi = x.clone();
        }
    }
    (lo, hi)
}

/// `B_c = (e / sqrt(2 pi))^(c+1)`.
pub fn b_constant<T: Scalar>(colors: u32) -> Interval<T> {
    let two_pi = Interval::<T>::from_u64(2).mul(&Interval::pi());
    Interval::e().div(&two_pi.sqrt()).powi(colors as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn decimal(digits: &str) -> BigRational {
        // "d.ddd" truncated; the true value lies in [x, x + 10^-len)
        let (int, frac) = digits.split_once('.').unwrap();
        let n: BigInt = format!("{int}{frac}").parse().unwrap();
        BigRational::new(n, BigInt::from(10u8).pow(frac.len() as u32))
    }

    #[test]
    fn rational_constants_enclose_known_digits() {
        let ulp = BigRational::new(BigInt::one(), BigInt::from(10u8).pow(40));
        for (digits, (lo, hi)) in [
            ("2.7182818284590452353602874713526624977572", rational_e_bounds()),
            ("3.1415926535897932384626433832795028841971", rational_pi_bounds()),
        ] {
            let d = decimal(digits);
            assert!(lo < &d + &ulp && d < hi);
            assert!((&hi - &lo) < q(1, 1_000_000_000_000_000));
        }
    }

    #[test]
    fn sqrt_is_exact_on_squares() {
        let (lo, hi) = rational_sqrt_bounds(&q(9, 4), 64);
        assert_eq!(lo, q(3, 2));
        assert_eq!(hi, q(3, 2));
        let (lo, hi) = rational_sqrt_bounds(&q(2, 1), 64);
        assert!(&lo * &lo < q(2, 1) && &hi * &hi > q(2, 1));
    }

    #[test]
    fn log2_is_exact_on_powers_of_two() {
        assert_eq!(rational_log2_bounds(&q(8, 1), 64), (q(3, 1), q(3, 1)));
        assert_eq!(rational_log2_bounds(&q(1, 4), 64), (q(-2, 1), q(-2, 1)));
        let (lo, hi) = rational_log2_bounds(&q(3, 1), 64);
        let l3 = 3f64.log2();
        assert!(lo.approx_f64() <= l3 && l3 <= hi.approx_f64());
    }

    #[test]
    fn b_constant_matches_float_evaluation() {
        let b = b_constant::<BigRational>(2);
        let expect = (std::f64::consts::E / (2.0 * std::f64::consts::PI).sqrt()).powi(3);
        assert!(b.lo.approx_f64() <= expect + 1e-12 && expect - 1e-12 <= b.hi.approx_f64());
        // 30 significant digits
        let width = &b.hi - &b.lo;
        assert!(width < q(1, 1) / BigRational::from_integer(BigInt::from(10).pow(30)));
        let bf = b_constant::<f64>(2);
        assert!(bf.contains(&expect) || (bf.lo - expect).abs() < 1e-14);
    }

    #[test]
    fn float_intervals_widen_outward() {
        let third = Interval::<f64>::from_u64(1).div(&Interval::from_u64(3));
        assert!(third.lo < third.hi);
        assert!(third.contains(&(1.0 / 3.0)));
        let x = Interval::<f32>::from_u64(2).sqrt();
        assert!(x.lo <= std::f32::consts::SQRT_2 && std::f32::consts::SQRT_2 <= x.hi);
    }
}
