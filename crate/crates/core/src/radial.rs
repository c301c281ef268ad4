//! Symbolic functions of `(x_0, r)`: finite sums `c x_0^a r^b rho^(e/2)`
//! with `rho = x_0^2 + r^2` and integer exponents.
//!
//! Closed under `d/dx_0`, `d/dr`, products and Kelvin substitution, and
//! equipped with an exact zero test.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{binomial, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RadialMonomial {
    pub x0: i32,
    pub r: i32,
    /// Exponent of `rho^(1/2)`.
    pub rho_halves: i32,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct RadialExpr<S> {
    terms: BTreeMap<RadialMonomial, S>,
}

impl<S: Scalar> RadialExpr<S> {
    pub fn zero() -> Self {
        RadialExpr {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(c: S, x0: i32, r: i32, rho_halves: i32) -> Self {
        let mut e = Self::zero();
        e.add_term(RadialMonomial { x0, r, rho_halves }, c);
        e
    }

    pub fn constant(c: S) -> Self {
        Self::term(c, 0, 0, 0)
    }

    pub fn add_term(&mut self, mono: RadialMonomial, c: S) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.remove(&mono).map_or(c.clone(), |old| old + c);
        if !v.is_zero() {
            self.terms.insert(mono, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RadialMonomial, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(
                    RadialMonomial {
                        x0: a.x0 + b.x0,
                        r: a.r + b.r,
                        rho_halves: a.rho_halves + b.rho_halves,
                    },
                    x.clone() * y.clone(),
                );
            }
        }
        out
    }

    /// Multiplies by `x_0^a r^b rho^(e/2)`.
    pub fn shift(&self, a: i32, b: i32, e: i32) -> Self {
        self.mul(&Self::term(S::one(), a, b, e))
    }

    pub fn d_x0(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            if k.x0 != 0 {
                out.add_term(
                    RadialMonomial { x0: k.x0 - 1, ..*k },
                    c.clone() * S::from_i64(k.x0 as i64),
                );
            }
            // d rho^(e/2) = e rho^(e/2 - 1) x_0
            if k.rho_halves != 0 {
                out.add_term(
                    RadialMonomial {
                        x0: k.x0 + 1,
                        r: k.r,
                        rho_halves: k.rho_halves - 2,
                    },
                    c.clone() * S::from_i64(k.rho_halves as i64),
                );
            }
        }
        out
    }

    pub fn d_r(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            if k.r != 0 {
                out.add_term(
                    RadialMonomial { r: k.r - 1, ..*k },
                    c.clone() * S::from_i64(k.r as i64),
                );
            }
            if k.rho_halves != 0 {
                out.add_term(
                    RadialMonomial {
                        x0: k.x0,
                        r: k.r + 1,
                        rho_halves: k.rho_halves - 2,
                    },
                    c.clone() * S::from_i64(k.rho_halves as i64),
                );
            }
        }
        out
    }

    pub fn d_x0_n(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |e, _| e.d_x0())
    }

    /// Substitution `x_0 -> x_0 / rho`, `r -> r / rho` (so `rho -> 1/rho`).
    pub fn kelvin_substitute(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(
                RadialMonomial {
                    x0: k.x0,
                    r: k.r,
                    rho_halves: -k.rho_halves - 2 * (k.x0 + k.r),
                },
                c.clone(),
            );
        }
        out
    }

    /// Expands into a genuine polynomial in `(x_0, r)` after multiplying by
    /// the smallest monomial clearing all negative exponents. Terms are
    /// grouped by the parity of the `rho^(1/2)` exponent; odd-parity terms
    /// carry an extra `rho^(1/2)`, algebraically independent of the rest.
    fn cleared(&self) -> [BTreeMap<(u32, u32), S>; 2] {
        let mut out = [BTreeMap::new(), BTreeMap::new()];
        if self.terms.is_empty() {
            return out;
        }
        let min_x0 = self.terms.keys().map(|k| k.x0).min().unwrap_or(0).min(0);
        let min_r = self.terms.keys().map(|k| k.r).min().unwrap_or(0).min(0);
        let min_rho = self
            .terms
            .keys()
            .map(|k| k.rho_halves.div_euclid(2))
            .min()
            .unwrap_or(0)
            .min(0);
        for (k, c) in &self.terms {
            let parity = k.rho_halves.rem_euclid(2) as usize;
            let a = (k.x0 - min_x0) as u32;
            let b = (k.r - min_r) as u32;
            let e = (k.rho_halves.div_euclid(2) - min_rho) as u32;
            // rho^e = sum_i C(e, i) x_0^(2i) r^(2(e-i))
            for i in 0..=e {
                let coef = c.clone() * S::from_rational(&Rational::from_integer(binomial(e as u64, i as u64)));
                let key = (a + 2 * i, b + 2 * (e - i));
                let slot = &mut out[parity];
                let v = slot.remove(&key).map_or(coef.clone(), |old: S| old + coef);
                if !v.is_zero() {
                    slot.insert(key, v);
                }
            }
        }
        out
    }

    /// Exact test for the zero function on `r > 0, x_0 != 0`.
    pub fn is_identically_zero(&self) -> bool {
        let [even, odd] = self.cleared();
        even.is_empty() && odd.is_empty()
    }

    /// The expression as a polynomial in `(x_0, r)`, if it is one.
    pub fn to_polynomial(&self) -> Option<BTreeMap<(u32, u32), S>> {
        if self.terms.is_empty() {
            return Some(BTreeMap::new());
        }
        let [even, odd] = self.cleared();
        if !odd.is_empty() {
            return None;
        }
        let min_x0 = self.terms.keys().map(|k| k.x0).min().unwrap_or(0).min(0);
        let min_r = self.terms.keys().map(|k| k.r).min().unwrap_or(0).min(0);
        let min_rho = self
            .terms
            .keys()
            .map(|k| k.rho_halves.div_euclid(2))
            .min()
            .unwrap_or(0)
            .min(0);
        let mut p = even;
        for _ in 0..(-min_rho) {
            p = divide_by_rho(&p)?;
        }
        let mut out = BTreeMap::new();
        for ((a, b), c) in p {
            let a2 = a as i32 + min_x0;
            let b2 = b as i32 + min_r;
            if a2 < 0 || b2 < 0 {
                return None;
            }
            out.insert((a2 as u32, b2 as u32), c);
        }
        Some(out)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RadialExpr<T> {
        let mut out = RadialExpr::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, f(c));
        }
        out
    }

    /// Numeric value at `(x_0, r)`; `None` where a negative power hits zero.
    pub fn evaluate(&self, x0: f64, r: f64) -> Option<f64> {
        let rho = x0 * x0 + r * r;
        let mut acc = 0.0;
        for (k, c) in &self.terms {
            if (k.x0 < 0 && x0 == 0.0) || (k.r < 0 && r == 0.0) || (k.rho_halves < 0 && rho == 0.0) {
                return None;
            }
            acc += c.to_c64().re * x0.powi(k.x0) * r.powi(k.r) * rho.sqrt().powi(k.rho_halves);
        }
        Some(acc)
    }
}

/// Exact division by `x_0^2 + r^2`, treating `x_0` as the leading variable.
fn divide_by_rho<S: Scalar>(p: &BTreeMap<(u32, u32), S>) -> Option<BTreeMap<(u32, u32), S>> {
    let mut rem = p.clone();
    let mut quo = BTreeMap::new();
    loop {
        let lead = rem
            .iter()
            .filter(|((a, _), _)| *a >= 2)
            .max_by_key(|((a, b), _)| (*a, *b))
            .map(|(k, c)| (*k, c.clone()));
        let Some(((a, b), c)) = lead else { break };
        let prev: Option<S> = quo.remove(&(a - 2, b));
        quo.insert((a - 2, b), prev.map_or(c.clone(), |p| p + c.clone()));
        for key in [(a, b), (a - 2, b + 2)] {
            let v = rem.remove(&key).map_or(-c.clone(), |old: S| old - c.clone());
            if !v.is_zero() {
                rem.insert(key, v);
            }
        }
    }
    rem.is_empty().then_some(quo)
}

impl<S: Scalar + fmt::Display> fmt::Display for RadialExpr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if k.x0 != 0 {
                write!(f, "*x0^{}", k.x0)?;
            }
            if k.r != 0 {
                write!(f, "*r^{}", k.r)?;
            }
            if k.rho_halves != 0 {
                write!(f, "*rho^({}/2)", k.rho_halves)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rint, Rational};

    type R = RadialExpr<Rational>;

    #[test]
    fn zero_test_sees_through_rho() {
        // rho - x0^2 - r^2 == 0
        let e = R::term(rint(1), 0, 0, 2)
            .sub(&R::term(rint(1), 2, 0, 0))
            .sub(&R::term(rint(1), 0, 2, 0));
        assert!(e.is_identically_zero());
        // x0 rho^(-1) * rho - x0 == 0
        let f = R::term(rint(1), 1, 0, -2).shift(0, 0, 2).sub(&R::term(rint(1), 1, 0, 0));
        assert!(f.is_identically_zero());
        assert!(!R::term(rint(1), 0, 0, 1).sub(&R::term(rint(1), 1, 0, 0)).is_identically_zero());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let e = R::term(rint(3), 1, 0, -3).add(&R::term(rint(-2), 0, 1, -5));
        let (x0, r, h) = (0.7, 0.4, 1e-5);
        let fd0 = (e.evaluate(x0 + h, r).unwrap() - e.evaluate(x0 - h, r).unwrap()) / (2.0 * h);
        let fdr = (e.evaluate(x0, r + h).unwrap() - e.evaluate(x0, r - h).unwrap()) / (2.0 * h);
        assert!((e.d_x0().evaluate(x0, r).unwrap() - fd0).abs() < 1e-6);
        assert!((e.d_r().evaluate(x0, r).unwrap() - fdr).abs() < 1e-6);
    }

    #[test]
    fn polynomial_extraction() {
        // (x0^4 - r^4) / rho = x0^2 - r^2
        let e = R::term(rint(1), 4, 0, -2).sub(&R::term(rint(1), 0, 4, -2));
        let p = e.to_polynomial().unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[&(2, 0)], rint(1));
        assert_eq!(p[&(0, 2)], rint(-1));
        assert!(R::term(rint(1), 0, 0, -2).to_polynomial().is_none());
    }

    #[test]
    fn kelvin_twice_is_identity() {
        let e = R::term(rint(5), 2, 1, -7).add(&R::term(rint(1), 0, 3, 1));
        assert_eq!(e.kelvin_substitute().kelvin_substitute(), e);
    }
}
