//! Arithmetic backends.
//!
//! Every computational routine is generic over [`Scalar`]. Three backends are
//! provided: arbitrary-precision rationals ([`Rational`]), the quadratic field
//! ℚ(√5) ([`QSqrt5`], enough to hold the golden mean exactly) and binary64.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether equality on this backend is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Exact conversion of a finite binary64 value.
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Total comparison; floats with NaN compare equal (callers never produce NaN).
    fn cmp_total(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn cmp_total(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn cmp_total(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// An element `rational + radical·√5` of the quadratic field ℚ(√5).
///
/// The representation is unique because √5 is irrational, so derived
/// equality is exact equality of field elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt5 {
    pub rational: BigRational,
    pub radical: BigRational,
}

const SQRT5: f64 = 2.236_067_977_499_79;

impl QSqrt5 {
    pub fn new(rational: BigRational, radical: BigRational) -> Self {
        Self { rational, radical }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::new(r, Zero::zero())
    }

    /// The golden mean (1 + √5)/2.
    pub fn phi() -> Self {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        Self::new(half.clone(), half)
    }

    fn signum(&self) -> Ordering {
        let p = &self.rational;
        let q = &self.radical;
        let sp = p.cmp(&Zero::zero());
        let sq = q.cmp(&Zero::zero());
        match (sp, sq) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            (a, _) => {
                // opposite signs: compare p² with 5q²
                let p2 = p * p;
                let q2 = q * q * BigRational::from_integer(BigInt::from(5));
                match p2.cmp(&q2) {
                    Ordering::Greater => a,
                    Ordering::Less => a.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    fn conjugate(&self) -> Self {
        Self::new(self.rational.clone(), -self.radical.clone())
    }

    fn norm(&self) -> BigRational {
        &self.rational * &self.rational
            - &self.radical * &self.radical * BigRational::from_integer(BigInt::from(5))
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.radical) {
            write!(f, "{}", self.rational)
        } else if Zero::is_zero(&self.rational) {
            write!(f, "({})*sqrt5", self.radical)
        } else {
            write!(f, "{}+({})*sqrt5", self.rational, self.radical)
        }
    }
}

impl PartialOrd for QSqrt5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt5 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl Add for QSqrt5 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.rational + rhs.rational, self.radical + rhs.radical)
    }
}

impl Sub for QSqrt5 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.rational - rhs.rational, self.radical - rhs.radical)
    }
}

impl Mul for QSqrt5 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let five = BigRational::from_integer(BigInt::from(5));
        let r = &self.rational * &rhs.rational + &self.radical * &rhs.radical * five;
        let s = &self.rational * &rhs.radical + &self.radical * &rhs.rational;
        Self::new(r, s)
    }
}

impl Div for QSqrt5 {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm();
        assert!(!Zero::is_zero(&n), "division by zero in Q(sqrt5)");
        let num = self * rhs.conjugate();
        Self::new(num.rational / n.clone(), num.radical / n)
    }
}

impl Neg for QSqrt5 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.rational, -self.radical)
    }
}

impl Scalar for QSqrt5 {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Self::new(One::one(), Zero::zero())
    }
    fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_f64(v: f64) -> Self {
        Self::from_rational(BigRational::from_float(v).expect("finite float"))
    }
    fn to_f64(&self) -> f64 {
        let (r, s) = (Scalar::to_f64(&self.rational), Scalar::to_f64(&self.radical));
        if r * s >= 0.0 {
            return r + s * SQRT5;
        }
        // opposite signs cancel; divide the exact norm by the conjugate instead
        let norm = &self.rational * &self.rational - BigRational::from_integer(BigInt::from(5)) * &self.radical * &self.radical;
        Scalar::to_f64(&norm) / (r - s * SQRT5)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.rational) && Zero::is_zero(&self.radical)
    }
    fn cmp_total(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Parses `p/q` or an integer as an exact rational. Decimal literals are not
/// rationals here; they select the float backend upstream.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if Zero::is_zero(&q) {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    BigInt::from_str(s).ok().map(BigRational::from_integer)
}

/// Converts a slice between backends through `f64`.
pub fn to_f64_vec<S: Scalar>(v: &[S]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_vec(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_i64(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_satisfies_its_quadratic() {
        let phi = QSqrt5::phi();
        let lhs = phi.clone() * phi.clone();
        let rhs = phi.clone() + QSqrt5::one();
        assert_eq!(lhs, rhs);
        assert!((Scalar::to_f64(&phi) - 1.618_033_988_749_895).abs() < 1e-15);
    }

    #[test]
    fn sqrt5_ordering_is_exact() {
        // 2 < √5 < 9/4
        let s5 = QSqrt5::new(Zero::zero(), One::one());
        assert!(QSqrt5::from_i64(2) < s5);
        assert!(s5 < QSqrt5::from_rational(rat(9, 4)));
        let phi = QSqrt5::phi();
        let inv = QSqrt5::one() / phi.clone();
        assert_eq!(inv, phi - QSqrt5::one());
    }

    #[test]
    fn conversion_survives_cancellation() {
        // φ^{-30} has large coefficients of opposite sign
        let inv = QSqrt5::one() / QSqrt5::phi();
        let mut p = QSqrt5::one();
        for _ in 0..30 {
            p = p * inv.clone();
        }
        let expected = ((1.0 + 5f64.sqrt()) / 2.0).powi(-30);
        assert!((Scalar::to_f64(&p) - expected).abs() <= 1e-15 * expected);
    }

    #[test]
    fn parses_rational_literals() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-4"), Some(rat(-4, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("0.5"), None);
    }
}
