//! Scalar fields: exact rationals, doubles and their complexifications.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type ComplexRational = Complex<Rational>;
pub type C64 = Complex<f64>;

/// Field of coefficients for Clifford elements and polynomials.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    /// True when arithmetic is exact.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    /// Complex conjugation of the central unit; identity on real fields.
    fn conj(&self) -> Self;

    fn to_c64(&self) -> C64;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Integer power; negative exponents invert.
    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// Real ordered fields.
pub trait RealScalar: Scalar + PartialOrd + num_traits::Num {
    fn to_f64(&self) -> f64;
}

/// Fields containing a central imaginary unit.
pub trait ComplexScalar: Scalar {
    type Real: RealScalar;
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn re_part(&self) -> Self::Real;
    fn im_part(&self) -> Self::Real;
    fn i() -> Self {
        Self::from_parts(Self::Real::zero(), Self::Real::one())
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> C64 {
        C64::new(rational_to_f64(self), 0.0)
    }
}

impl RealScalar for Rational {
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn to_c64(&self) -> C64 {
        C64::new(*self, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
}

impl RealScalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl<T: RealScalar> Scalar for Complex<T> {
    const EXACT: bool = T::EXACT;
    fn from_rational(q: &Rational) -> Self {
        Complex::new(T::from_rational(q), T::zero())
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn to_c64(&self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl<T: RealScalar> ComplexScalar for Complex<T> {
    type Real = T;
    fn from_parts(re: T, im: T) -> Self {
        Complex::new(re, im)
    }
    fn re_part(&self) -> T {
        self.re.clone()
    }
    fn im_part(&self) -> T {
        self.im.clone()
    }
}

/// Correctly scaled conversion; survives numerators beyond `f64` range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(q) {
        if v.is_finite() {
            return v;
        }
    }
    let n = q.numer();
    let d = q.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    let (n2, d2) = if shift > 0 {
        (n.clone(), d << (shift as usize))
    } else {
        (n << ((-shift) as usize), d.clone())
    };
    let ratio = ToPrimitive::to_f64(&Rational::new(n2, d2)).unwrap_or(0.0);
    ratio * 2f64.powi(shift as i32)
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, `p` or a decimal literal without exponent.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Ok(q) = s.parse::<Rational>() {
        return Some(q);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{}{}", if int.is_empty() { "0" } else { int }, frac)
        .parse()
        .ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let q = Rational::new(digits, den);
    Some(if neg { -q } else { q })
}

/// Canonical `p/q` text (`p` when integral).
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `n!!`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Rising factorial `(a)_k`.
pub fn pochhammer(a: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut t = a.clone();
    for _ in 0..k {
        acc *= t.clone();
        t += Rational::one();
    }
    acc
}

pub fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational("-2"), Some(rint(-2)));
        assert_eq!(parse_rational("0.125"), Some(rat(1, 8)));
        assert_eq!(parse_rational("-.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rint(-7)), "-7");
    }

    #[test]
    fn huge_rationals_convert() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let q = Rational::new(big.clone() * BigInt::from(3), big);
        assert!((rational_to_f64(&q) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn combinatorics() {
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(rat(2, 3).powi(-2), rat(9, 4));
        assert_eq!(Complex::new(rint(0), rint(1)).powi(2), Complex::new(rint(-1), rint(0)));
    }
}
