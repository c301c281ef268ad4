//! Exact constants of the form `i^q * c * pi^(n/2)` with `c` rational.
//!
//! Sphere areas, Gamma values at half-integers and the normalizations of the
//! Fueter map all live in this set, which is closed under products and
//! inverses.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{
    double_factorial, factorial, format_rational, rat, rint, rational_to_f64, ComplexRational,
    Rational, C64,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactConstant {
    /// Power of `i`, reduced mod 4.
    phase: u8,
    /// Nonnegative rational magnitude.
    coeff: Rational,
    /// Exponent of `pi^(1/2)`.
    pi_halves: i32,
}

impl ExactConstant {
    pub fn new(phase: i32, coeff: Rational, pi_halves: i32) -> Self {
        let mut phase = phase.rem_euclid(4) as u8;
        let mut coeff = coeff;
        if coeff.is_zero() {
            return ExactConstant {
                phase: 0,
                coeff,
                pi_halves: 0,
            };
        }
        if coeff.is_negative() {
            coeff = -coeff;
            phase = (phase + 2) % 4;
        }
        ExactConstant {
            phase,
            coeff,
            pi_halves,
        }
    }

    pub fn rational(q: Rational) -> Self {
        Self::new(0, q, 0)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(rint(n))
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn i_pow(q: i32) -> Self {
        Self::new(q, Rational::one(), 0)
    }

    /// `pi^(n/2)`.
    pub fn pi_half_power(n: i32) -> Self {
        Self::new(0, Rational::one(), n)
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn magnitude(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_halves(&self) -> i32 {
        self.pi_halves
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero constant");
        Self::new(-(self.phase as i32), self.coeff.recip(), -self.pi_halves)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.phase as i32, &self.coeff * q, self.pi_halves)
    }

    pub fn powi(&self, n: i32) -> Self {
        let mut acc = Self::one();
        let base = if n < 0 { self.inv() } else { self.clone() };
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// The value when it is a (signed) rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.pi_halves != 0 && !self.is_zero() {
            return None;
        }
        match self.phase {
            0 => Some(self.coeff.clone()),
            2 => Some(-self.coeff.clone()),
            _ => None,
        }
    }

    /// The value when it lies in `Q(i)`.
    pub fn as_complex_rational(&self) -> Option<ComplexRational> {
        if self.pi_halves != 0 && !self.is_zero() {
            return None;
        }
        let c = self.coeff.clone();
        let z = Rational::zero();
        Some(match self.phase {
            0 => ComplexRational::new(c, z),
            1 => ComplexRational::new(z, c),
            2 => ComplexRational::new(-c, z),
            _ => ComplexRational::new(z, -c),
        })
    }

    pub fn to_c64(&self) -> C64 {
        let mag = rational_to_f64(&self.coeff) * std::f64::consts::PI.sqrt().powi(self.pi_halves);
        match self.phase {
            0 => C64::new(mag, 0.0),
            1 => C64::new(0.0, mag),
            2 => C64::new(-mag, 0.0),
            _ => C64::new(0.0, -mag),
        }
    }

    pub fn is_real(&self) -> bool {
        self.phase.is_multiple_of(2)
    }
}

impl Mul for &ExactConstant {
    type Output = ExactConstant;
    fn mul(self, rhs: Self) -> ExactConstant {
        ExactConstant::new(
            self.phase as i32 + rhs.phase as i32,
            &self.coeff * &rhs.coeff,
            self.pi_halves + rhs.pi_halves,
        )
    }
}

impl Neg for &ExactConstant {
    type Output = ExactConstant;
    fn neg(self) -> ExactConstant {
        ExactConstant::new(self.phase as i32 + 2, self.coeff.clone(), self.pi_halves)
    }
}

impl fmt::Display for ExactConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sign = if self.phase >= 2 { "-" } else { "" };
        write!(f, "{sign}{}", format_rational(&self.coeff))?;
        if self.phase % 2 == 1 {
            write!(f, "*i")?;
        }
        match self.pi_halves {
            0 => Ok(()),
            2 => write!(f, "*pi"),
            n if n % 2 == 0 => write!(f, "*pi^{}", n / 2),
            n => write!(f, "*pi^({n}/2)"),
        }
    }
}

/// `Gamma(n/2)` for `n >= 1`.
pub fn gamma_half(n: u32) -> ExactConstant {
    assert!(n >= 1, "Gamma(n/2) needs n >= 1");
    if n.is_multiple_of(2) {
        ExactConstant::rational(Rational::from_integer(factorial((n / 2 - 1) as u64)))
    } else {
        // Gamma(k + 1/2) = (2k-1)!! / 2^k * sqrt(pi)
        let k = (n - 1) / 2;
        let num = double_factorial(2 * k as i64 - 1);
        let den = BigInt::one() << k;
        ExactConstant::new(0, Rational::new(num, den), 1)
    }
}

/// Surface area of the unit sphere in `R^n`: `2 pi^(n/2) / Gamma(n/2)`.
pub fn sphere_area(n: u32) -> ExactConstant {
    (&ExactConstant::new(0, rint(2), n as i32)).mul(&gamma_half(n).inv())
}

/// `2^(m-1) Gamma((m+1)/2)^2`.
pub fn lambda(m: u32) -> ExactConstant {
    let g = gamma_half(m + 1);
    (&g * &g).scale(&Rational::from_integer(BigInt::one() << (m - 1)))
}

/// `i^(1-m) 2^(m-1) Gamma((m+1)/2)^2 / (m-1)!`.
pub fn gamma_m(m: u32) -> ExactConstant {
    let base = lambda(m).scale(&Rational::new(
        BigInt::one(),
        factorial((m - 1) as u64),
    ));
    &base * &ExactConstant::i_pow(1 - m as i32)
}

/// For odd `m`: `(-1)^((m-1)/2) (m-1)!! / (m-2)!!`.
pub fn gamma_m_odd_closed_form(m: u32) -> Rational {
    assert!(m % 2 == 1);
    let sign = if ((m - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    Rational::new(
        double_factorial(m as i64 - 1),
        double_factorial(m as i64 - 2),
    ) * rint(sign)
}

/// The constants attached to a dimension `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct DimensionConstants {
    pub m: u32,
    /// Area of the sphere in `R^m`.
    pub sigma_m: ExactConstant,
    /// Area of the sphere in `R^(m+1)`.
    pub sigma_m1: ExactConstant,
    pub lambda_m: ExactConstant,
    pub gamma_m: ExactConstant,
}

impl DimensionConstants {
    pub fn new(m: u32) -> Self {
        assert!(m >= 1);
        DimensionConstants {
            m,
            sigma_m: sphere_area(m),
            sigma_m1: sphere_area(m + 1),
            lambda_m: lambda(m),
            gamma_m: gamma_m(m),
        }
    }
}

/// Half of an odd or even integer as a rational, for parameters like `m/2`.
pub fn half(n: i64) -> Rational {
    rat(n, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() <= 1e-12 * (1.0 + b.norm())
    }

    #[test]
    fn gamma_half_values() {
        assert_eq!(gamma_half(1), ExactConstant::pi_half_power(1));
        assert_eq!(gamma_half(4), ExactConstant::integer(1));
        assert_eq!(gamma_half(5), ExactConstant::new(0, rat(3, 4), 1));
        assert!(close(gamma_half(7).to_c64(), C64::new(15.0 / 8.0 * PI.sqrt(), 0.0)));
    }

    #[test]
    fn sphere_areas() {
        assert_eq!(sphere_area(1), ExactConstant::integer(2));
        assert_eq!(sphere_area(2), ExactConstant::new(0, rint(2), 2));
        assert_eq!(sphere_area(3), ExactConstant::new(0, rint(4), 2));
        assert_eq!(sphere_area(4), ExactConstant::new(0, rint(2), 4));
        assert!(close(sphere_area(5).to_c64(), C64::new(8.0 * PI * PI / 3.0, 0.0)));
    }

    #[test]
    fn lambda_and_gamma() {
        assert_eq!(lambda(2), ExactConstant::new(0, rat(1, 2), 2));
        assert_eq!(lambda(3), ExactConstant::integer(4));
        assert_eq!(gamma_m(1), ExactConstant::integer(1));
        assert_eq!(gamma_m(2), ExactConstant::new(-1, rat(1, 2), 2));
        assert_eq!(gamma_m(3), ExactConstant::integer(-2));
        for m in (1..=15).step_by(2) {
            assert_eq!(gamma_m(m).as_rational(), Some(gamma_m_odd_closed_form(m)), "m={m}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(gamma_m(2).to_string(), "-1/2*i*pi");
        assert_eq!(gamma_half(3).to_string(), "1/2*pi^(1/2)");
    }
}
