//! Finite Laurent polynomials in one real variable.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C64};

#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPoly<S> {
    terms: BTreeMap<i32, S>,
}

impl<S: Scalar> Default for LaurentPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    /// `c t^n`.
    pub fn monomial(n: i32, c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(n, c);
        p
    }

    /// `t^n`.
    pub fn power(n: i32) -> Self {
        Self::monomial(n, S::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, S)>) -> Self {
        let mut p = Self::zero();
        for (n, c) in terms {
            p.add_term(n, c);
        }
        p
    }

    /// Coefficients of `t^0, t^1, ...`.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = S>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(n, c)| (n as i32, c)))
    }

    pub fn add_term(&mut self, n: i32, c: S) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.remove(&n).map_or(c.clone(), |old| old + c);
        if !v.is_zero() {
            self.terms.insert(n, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i32, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, n: i32) -> S {
        self.terms.get(&n).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|n| n >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (n, c) in &other.terms {
            p.add_term(*n, c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(n, c)| (*n, c.clone() * s.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term(a + b, x.clone() * y.clone());
            }
        }
        p
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(n, c)| (n - 1, c.clone() * S::from_i64(*n as i64))),
        )
    }

    pub fn nth_derivative(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LaurentPoly<T> {
        LaurentPoly::from_terms(self.terms.iter().map(|(n, c)| (*n, f(c))))
    }

    pub fn to_c64(&self) -> LaurentPoly<C64> {
        self.map(|c| c.to_c64())
    }

    /// Evaluates at `t`; fails at `t = 0` when negative powers are present.
    pub fn evaluate(&self, t: &S) -> Result<S> {
        self.evaluate_in(t, |c| c.clone())
    }

    /// Evaluates in another field `T` after embedding coefficients.
    pub fn evaluate_in<T: Scalar>(&self, t: &T, embed: impl Fn(&S) -> T) -> Result<T> {
        if t.is_zero() && !self.is_polynomial() {
            return Err(Error::Domain("negative power evaluated at 0".into()));
        }
        let mut acc = T::zero();
        for (n, c) in &self.terms {
            acc = acc + embed(c) * t.powi(*n);
        }
        Ok(acc)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (n, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{n}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint, Rational};

    #[test]
    fn derivatives_and_evaluation() {
        let p = LaurentPoly::from_terms([(-2, rint(3)), (0, rint(1)), (3, rat(1, 2))]);
        let dp = p.derivative();
        assert_eq!(dp, LaurentPoly::from_terms([(-3, rint(-6)), (2, rat(3, 2))]));
        assert_eq!(p.evaluate(&rint(2)).unwrap(), rat(3, 4) + rint(1) + rint(4));
        assert!(p.evaluate(&Rational::from_integer(0.into())).is_err());
        assert_eq!(p.nth_derivative(4).coeff(-6), rint(3 * 2 * 3 * 4 * 5));
    }
}
