//! The real Clifford algebra with generators squaring to `-1`, and its
//! complexification.
//!
//! Basis blades are bitsets: bit `j - 1` set means `e_j` is a factor, factors
//! written in increasing order. Elements are sparse maps from blades to
//! coefficients in any [`Scalar`] field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{check_dim, Error, Result};
use crate::scalar::{Scalar, C64};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// `e_j`, one-based.
    pub fn generator(j: usize) -> Blade {
        assert!((1..=32).contains(&j), "generator index {j}");
        Blade(1 << (j - 1))
    }

    /// Builds a blade from strictly increasing one-based indices.
    pub fn from_indices(indices: &[usize], m: usize) -> Result<Blade> {
        let mut bits = 0u32;
        let mut last = 0usize;
        for &j in indices {
            if j == 0 || j > m {
                return Err(Error::IndexOutOfRange { index: j, m });
            }
            if j <= last {
                return Err(Error::Parse(format!(
                    "blade indices must be strictly increasing: {indices:?}"
                )));
            }
            last = j;
            bits |= 1 << (j - 1);
        }
        Ok(Blade(bits))
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    /// Highest generator index present, or 0.
    pub fn top(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// `e_A e_B = sign * e_{A xor B}`.
    pub fn product(self, other: Blade) -> (Blade, i32) {
        let (a, b) = (self.0, other.0);
        // Swaps needed to move each factor of B past the larger factors of A.
        let mut swaps = 0u32;
        let mut t = a >> 1;
        while t != 0 {
            swaps += (t & b).count_ones();
            t >>= 1;
        }
        swaps += (a & b).count_ones();
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        (Blade(a ^ b), sign)
    }

    /// Sign `s` with `conj(e_A) = s e_A`: `(-1)^k (-1)^{k(k-1)/2}`.
    pub fn conjugation_sign(self) -> i32 {
        let k = self.grade();
        let rev = (k * k.saturating_sub(1) / 2) % 2;
        if (k + rev).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Sign under reversion only.
    pub fn reversion_sign(self) -> i32 {
        let k = self.grade();
        if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        let idx = self.indices();
        let sep = if idx.iter().any(|&j| j > 9) { "_" } else { "" };
        for (n, j) in idx.iter().enumerate() {
            if n > 0 {
                write!(f, "{sep}")?;
            }
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct CliffordElement<S> {
    dim: usize,
    terms: BTreeMap<Blade, S>,
}

impl<S: Scalar> CliffordElement<S> {
    pub fn zero(dim: usize) -> Self {
        CliffordElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, s: S) -> Self {
        Self::basis(dim, Blade::SCALAR, s)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, S::one())
    }

    pub fn basis(dim: usize, blade: Blade, s: S) -> Self {
        assert!(blade.top() <= dim, "blade {blade} outside dimension {dim}");
        let mut e = Self::zero(dim);
        e.add_term(blade, s);
        e
    }

    /// `e_j`, one-based.
    pub fn generator(dim: usize, j: usize) -> Self {
        Self::basis(dim, Blade::generator(j), S::one())
    }

    /// `x_0 + sum x_j e_j`.
    pub fn paravector(x0: S, xs: &[S]) -> Self {
        let mut e = Self::scalar(xs.len(), x0);
        for (j, x) in xs.iter().enumerate() {
            e.add_term(Blade::generator(j + 1), x.clone());
        }
        e
    }

    /// `sum x_j e_j`.
    pub fn vector(xs: &[S]) -> Self {
        Self::paravector(S::zero(), xs)
    }

    pub fn try_from_terms(dim: usize, terms: impl IntoIterator<Item = (Blade, S)>) -> Result<Self> {
        check_dim(dim)?;
        let mut e = Self::zero(dim);
        for (b, s) in terms {
            if b.top() > dim {
                return Err(Error::IndexOutOfRange { index: b.top(), m: dim });
            }
            e.add_term(b, s);
        }
        Ok(e)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, blade: Blade) -> S {
        self.terms.get(&blade).cloned().unwrap_or_else(S::zero)
    }

    pub fn scalar_part(&self) -> S {
        self.coeff(Blade::SCALAR)
    }

    /// Adds `s e_A`, dropping the entry when it cancels.
    pub fn add_term(&mut self, blade: Blade, s: S) {
        if s.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(blade) {
            Entry::Vacant(v) => {
                v.insert(s);
            }
            Entry::Occupied(mut o) => {
                let v = o.get().clone() + s;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
        }
    }

    pub fn grade_part(&self, k: u32) -> Self {
        CliffordElement {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.grade() == k)
                .map(|(b, s)| (*b, s.clone()))
                .collect(),
        }
    }

    pub fn is_paravector(&self) -> bool {
        self.terms.keys().all(|b| b.grade() <= 1)
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.terms {
            out.add_term(*b, c.clone() * s.clone());
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CliffordElement<T> {
        let mut out = CliffordElement::zero(self.dim);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    /// Re-embeds into a larger (or equal) dimension.
    pub fn embed(&self, dim: usize) -> Result<Self> {
        if let Some(b) = self.terms.keys().find(|b| b.top() > dim) {
            return Err(Error::IndexOutOfRange { index: b.top(), m: dim });
        }
        Ok(CliffordElement {
            dim,
            terms: self.terms.clone(),
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, s) in &other.terms {
            out.add_term(*b, s.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, s) in &other.terms {
            out.add_term(*b, -s.clone());
        }
        Ok(out)
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (c, sign) = a.product(*b);
                let v = x.clone() * y.clone();
                out.add_term(c, if sign < 0 { -v } else { v });
            }
        }
        Ok(out)
    }

    /// Main anti-involution: `conj(e_j) = -e_j`, order of factors reversed.
    /// Acts linearly on complex coefficients.
    pub fn clifford_conjugate(&self) -> Self {
        self.with_blade_signs(Blade::conjugation_sign, false)
    }

    pub fn reversion(&self) -> Self {
        self.with_blade_signs(Blade::reversion_sign, false)
    }

    /// `(a + i b)^† = conj(a) - i conj(b)`: Clifford conjugation composed with
    /// complex conjugation of coefficients.
    pub fn hermitian_conjugate(&self) -> Self {
        self.with_blade_signs(Blade::conjugation_sign, true)
    }

    fn with_blade_signs(&self, sign: fn(Blade) -> i32, conj: bool) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, s) in &self.terms {
            let s = if conj { s.conj() } else { s.clone() };
            out.add_term(*b, if sign(*b) < 0 { -s } else { s });
        }
        out
    }

    /// Sum of squared coefficient moduli.
    pub fn norm_sq(&self) -> f64 {
        self.terms.values().map(|s| s.to_c64().norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|s| s.abs_f64()).fold(0.0, f64::max)
    }

    pub fn to_c64(&self) -> CliffordElement<C64> {
        self.map(|s| s.to_c64())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl CliffordElement<C64> {
    /// Max-norm distance between two numeric elements.
    pub fn distance(&self, other: &Self) -> f64 {
        self.try_sub(other).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
    }
}

impl<S: Scalar> Add for &CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn add(self, rhs: Self) -> CliffordElement<S> {
        self.try_add(rhs).expect("dimension mismatch in +")
    }
}

impl<S: Scalar> Sub for &CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn sub(self, rhs: Self) -> CliffordElement<S> {
        self.try_sub(rhs).expect("dimension mismatch in -")
    }
}

/// Geometric product. Panics on dimension mismatch; use
/// [`CliffordElement::geometric_product`] for a checked version.
impl<S: Scalar> Mul for &CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn mul(self, rhs: Self) -> CliffordElement<S> {
        self.geometric_product(rhs).expect("dimension mismatch in *")
    }
}

impl<S: Scalar> Neg for &CliffordElement<S> {
    type Output = CliffordElement<S>;
    fn neg(self) -> CliffordElement<S> {
        self.map(|s| -s.clone())
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for CliffordElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (b, s)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if *b == Blade::SCALAR {
                write!(f, "({s})")?;
            } else {
                write!(f, "({s}){b}")?;
            }
        }
        Ok(())
    }
}

/// A point `x_0 + x` with `x = sum x_j e_j`.
#[derive(Clone, PartialEq, Debug)]
pub struct Paravector<S> {
    pub x0: S,
    pub x: Vec<S>,
}

impl<S: Scalar> Paravector<S> {
    pub fn new(x0: S, x: Vec<S>) -> Self {
        Paravector { x0, x }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn to_element(&self) -> CliffordElement<S> {
        CliffordElement::paravector(self.x0.clone(), &self.x)
    }

    pub fn vector_part(&self) -> CliffordElement<S> {
        CliffordElement::vector(&self.x)
    }

    pub fn conj(&self) -> Self {
        Paravector {
            x0: self.x0.clone(),
            x: self.x.iter().map(|v| -v.clone()).collect(),
        }
    }

    /// `|x|^2 = sum x_j^2` over the vector part.
    pub fn vector_norm_sq(&self) -> S {
        self.x
            .iter()
            .fold(S::zero(), |acc, v| acc + v.clone() * v.clone())
    }

    pub fn norm_sq(&self) -> S {
        self.x0.clone() * self.x0.clone() + self.vector_norm_sq()
    }
}

impl Paravector<f64> {
    pub fn radius(&self) -> f64 {
        self.vector_norm_sq().sqrt()
    }

    /// Unit direction of the vector part; `None` on the real axis.
    pub fn direction(&self) -> Option<Vec<f64>> {
        let r = self.radius();
        (r > 0.0).then(|| self.x.iter().map(|v| v / r).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rint, Rational};

    fn e(m: usize, j: usize) -> CliffordElement<Rational> {
        CliffordElement::generator(m, j)
    }

    #[test]
    fn generators_square_to_minus_one_and_anticommute() {
        let m = 5;
        for j in 1..=m {
            assert_eq!(&e(m, j) * &e(m, j), CliffordElement::scalar(m, rint(-1)));
            for k in 1..=m {
                if k != j {
                    let s = &(&e(m, j) * &e(m, k)) + &(&e(m, k) * &e(m, j));
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn product_matches_brute_force_reordering() {
        // Oracle: multiply index lists as words and bubble-sort them.
        fn word_product(a: &[usize], b: &[usize]) -> (Vec<usize>, i32) {
            let mut w: Vec<usize> = a.iter().chain(b).copied().collect();
            let mut sign = 1;
            loop {
                let mut changed = false;
                let mut i = 0;
                while i + 1 < w.len() {
                    if w[i] > w[i + 1] {
                        w.swap(i, i + 1);
                        sign = -sign;
                        changed = true;
                    } else if w[i] == w[i + 1] {
                        w.drain(i..i + 2);
                        sign = -sign;
                        changed = true;
                        continue;
                    }
                    i += 1;
                }
                if !changed {
                    return (w, sign);
                }
            }
        }
        for a in 0u32..64 {
            for b in 0u32..64 {
                let (c, s) = Blade(a).product(Blade(b));
                let (w, s2) = word_product(&Blade(a).indices(), &Blade(b).indices());
                assert_eq!(c.indices(), w);
                assert_eq!(s, s2, "{a} {b}");
            }
        }
    }

    #[test]
    fn conjugation_signs() {
        assert_eq!(Blade(0).conjugation_sign(), 1);
        assert_eq!(Blade(1).conjugation_sign(), -1);
        assert_eq!(Blade(3).conjugation_sign(), -1);
        assert_eq!(Blade(7).conjugation_sign(), 1);
        // conj(e1 e2) = e2 e1 = -e12
        let e12 = &e(3, 1) * &e(3, 2);
        assert_eq!(e12.clifford_conjugate(), &e(3, 2) * &e(3, 1));
    }

    #[test]
    fn paravector_square() {
        let x = Paravector::new(rint(0), vec![rint(1), rint(2), rint(-3)]);
        let v = x.to_element();
        assert_eq!(&v * &v, CliffordElement::scalar(3, rint(-14)));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = CliffordElement::<Rational>::one(2);
        let b = CliffordElement::<Rational>::one(3);
        assert!(matches!(
            a.geometric_product(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(Blade::from_indices(&[2, 1], 3).is_err());
        assert!(Blade::from_indices(&[4], 3).is_err());
    }
}
