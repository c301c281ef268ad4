//! Polynomials in `x_0, ..., x_m` with Clifford-valued coefficients and the
//! first- and second-order operators acting on them.

use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::{Blade, CliffordElement, Paravector};
use crate::error::{check_dim, Error, Result};
use crate::scalar::{binomial, Rational, Scalar, C64};

/// Exponent vector `(a_0, ..., a_m)`.
pub type Monomial = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorTag {
    /// `D = d/dx_0 + sum e_j d/dx_j`.
    CauchyRiemann,
    /// `Dbar = d/dx_0 - sum e_j d/dx_j`.
    ConjugateCauchyRiemann,
    /// `sum e_j d/dx_j`.
    Dirac,
    Laplacian,
    PartialX0,
    /// `Dbar / 2`.
    HypercomplexDerivative,
}

impl OperatorTag {
    pub const ALL: [OperatorTag; 6] = [
        OperatorTag::CauchyRiemann,
        OperatorTag::ConjugateCauchyRiemann,
        OperatorTag::Dirac,
        OperatorTag::Laplacian,
        OperatorTag::PartialX0,
        OperatorTag::HypercomplexDerivative,
    ];
}

#[derive(Clone, PartialEq, Debug)]
pub struct CliffordPolynomial<S> {
    dim: usize,
    terms: BTreeMap<Monomial, CliffordElement<S>>,
}

impl<S: Scalar> CliffordPolynomial<S> {
    pub fn zero(dim: usize) -> Self {
        CliffordPolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: CliffordElement<S>) -> Self {
        let mut p = Self::zero(c.dim());
        p.add_term(vec![0; c.dim() + 1], c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(CliffordElement::one(dim))
    }

    /// `x_j` for `j = 0..=m`.
    pub fn variable(dim: usize, j: usize) -> Self {
        assert!(j <= dim);
        let mut exps = vec![0; dim + 1];
        exps[j] = 1;
        Self::monomial(dim, exps, CliffordElement::one(dim))
    }

    pub fn monomial(dim: usize, exps: Monomial, c: CliffordElement<S>) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(exps, c);
        p
    }

    pub fn try_from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (Monomial, CliffordElement<S>)>,
    ) -> Result<Self> {
        check_dim(dim)?;
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.len() != dim + 1 {
                return Err(Error::DimensionMismatch {
                    expected: dim + 1,
                    found: e.len(),
                });
            }
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.dim(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CliffordElement<S>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> CliffordElement<S> {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| CliffordElement::zero(self.dim))
    }

    pub fn add_term(&mut self, exps: Monomial, c: CliffordElement<S>) {
        debug_assert_eq!(exps.len(), self.dim + 1);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut p = Self::zero(self.dim);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == k {
                p.add_term(e.clone(), c.clone());
            }
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn left_mul(&self, a: &CliffordElement<S>) -> Self {
        self.map_coeffs(|c| a * c)
    }

    pub fn right_mul(&self, a: &CliffordElement<S>) -> Self {
        self.map_coeffs(|c| c * a)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut p = Self::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn map_coeffs(&self, f: impl Fn(&CliffordElement<S>) -> CliffordElement<S>) -> Self {
        let mut p = Self::zero(self.dim);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CliffordPolynomial<T> {
        let mut p = CliffordPolynomial::zero(self.dim);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.map(&f));
        }
        p
    }

    pub fn partial(&self, j: usize) -> Self {
        assert!(j <= self.dim);
        let mut p = Self::zero(self.dim);
        for (e, c) in &self.terms {
            if e[j] > 0 {
                let mut e2 = e.clone();
                e2[j] -= 1;
                p.add_term(e2, c.scale(&S::from_i64(e[j] as i64)));
            }
        }
        p
    }

    /// Left action of `tag`.
    pub fn apply_operator(&self, tag: OperatorTag) -> Self {
        let m = self.dim;
        let dirac = || {
            let mut p = Self::zero(m);
            for j in 1..=m {
                p = p.add(&self.partial(j).left_mul(&CliffordElement::generator(m, j)));
            }
            p
        };
        match tag {
            OperatorTag::PartialX0 => self.partial(0),
            OperatorTag::Dirac => dirac(),
            OperatorTag::CauchyRiemann => self.partial(0).add(&dirac()),
            OperatorTag::ConjugateCauchyRiemann => self.partial(0).sub(&dirac()),
            OperatorTag::HypercomplexDerivative => self
                .partial(0)
                .sub(&dirac())
                .scale(&S::from_ratio(1, 2)),
            OperatorTag::Laplacian => (0..=m).fold(Self::zero(m), |acc, j| {
                acc.add(&self.partial(j).partial(j))
            }),
        }
    }

    /// Left monogenic: `D p = 0`.
    pub fn is_monogenic(&self) -> bool {
        self.apply_operator(OperatorTag::CauchyRiemann).is_zero()
    }

    pub fn evaluate(&self, x: &Paravector<S>) -> Result<CliffordElement<S>> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        let vars: Vec<S> = std::iter::once(x.x0.clone()).chain(x.x.iter().cloned()).collect();
        let mut out = CliffordElement::zero(self.dim);
        for (e, c) in &self.terms {
            let mut v = S::one();
            for (xi, &a) in vars.iter().zip(e) {
                if a > 0 {
                    v = v * xi.powi(a as i32);
                }
            }
            out = &out + &c.scale(&v);
        }
        Ok(out)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.max_abs()).fold(0.0, f64::max)
    }
}

impl<S: Scalar> CliffordPolynomial<S> {
    /// Numeric evaluation at a double-precision point.
    pub fn evaluate_c64(&self, x: &Paravector<f64>) -> Result<CliffordElement<C64>> {
        self.map_scalars(|s| s.to_c64())
            .evaluate(&Paravector::new(
                C64::new(x.x0, 0.0),
                x.x.iter().map(|v| C64::new(*v, 0.0)).collect(),
            ))
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for CliffordPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]")?;
            for (j, a) in e.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*x{j}")?,
                    _ => write!(f, "*x{j}^{a}")?,
                }
            }
        }
        Ok(())
    }
}

/// `(x_1^2 + ... + x_m^2)^i`.
pub fn radius_sq_power<S: Scalar>(m: usize, i: u32) -> CliffordPolynomial<S> {
    let mut r2 = CliffordPolynomial::zero(m);
    for j in 1..=m {
        let mut e = vec![0; m + 1];
        e[j] = 2;
        r2.add_term(e, CliffordElement::one(m));
    }
    r2.pow(i)
}

/// `x^j` for the vector variable `x = sum x_j e_j`, via `x^2 = -|x|^2`.
pub fn vector_power<S: Scalar>(m: usize, j: u32) -> CliffordPolynomial<S> {
    let sign = if (j / 2).is_multiple_of(2) { S::one() } else { -S::one() };
    let even = radius_sq_power::<S>(m, j / 2).scale(&sign);
    if j.is_multiple_of(2) {
        even
    } else {
        let mut x = CliffordPolynomial::zero(m);
        for k in 1..=m {
            x = x.add(&CliffordPolynomial::variable(m, k).left_mul(&CliffordElement::generator(m, k)));
        }
        even.mul(&x)
    }
}

/// `(x_0 + x)^k` expanded binomially; `x_0` is central.
pub fn paravector_power<S: Scalar>(m: usize, k: u32) -> CliffordPolynomial<S> {
    let mut p = CliffordPolynomial::zero(m);
    for j in 0..=k {
        let b = S::from_rational(&Rational::from_integer(binomial(k as u64, j as u64)));
        let x0 = CliffordPolynomial::variable(m, 0).pow(k - j);
        p = p.add(&x0.mul(&vector_power::<S>(m, j)).scale(&b));
    }
    p
}

/// `(x_0 - x)^k`.
pub fn conjugate_paravector_power<S: Scalar>(m: usize, k: u32) -> CliffordPolynomial<S> {
    let mut p = CliffordPolynomial::zero(m);
    for j in 0..=k {
        let mut b = S::from_rational(&Rational::from_integer(binomial(k as u64, j as u64)));
        if j % 2 == 1 {
            b = -b;
        }
        let x0 = CliffordPolynomial::variable(m, 0).pow(k - j);
        p = p.add(&x0.mul(&vector_power::<S>(m, j)).scale(&b));
    }
    p
}

/// Central-difference approximation of `tag` applied on the left to `f`.
pub fn finite_difference<F>(
    tag: OperatorTag,
    f: F,
    x: &Paravector<f64>,
    h: f64,
) -> Result<CliffordElement<C64>>
where
    F: Fn(&Paravector<f64>) -> Result<CliffordElement<C64>>,
{
    let m = x.dim();
    let shifted = |j: usize, t: f64| {
        let mut y = x.clone();
        if j == 0 {
            y.x0 += t;
        } else {
            y.x[j - 1] += t;
        }
        f(&y)
    };
    let first = |j: usize| -> Result<CliffordElement<C64>> {
        let d = &shifted(j, h)? - &shifted(j, -h)?;
        Ok(d.scale(&C64::new(0.5 / h, 0.0)))
    };
    let dirac = || -> Result<CliffordElement<C64>> {
        let mut acc = CliffordElement::zero(m);
        for j in 1..=m {
            acc = &acc + &(&CliffordElement::generator(m, j) * &first(j)?);
        }
        Ok(acc)
    };
    Ok(match tag {
        OperatorTag::PartialX0 => first(0)?,
        OperatorTag::Dirac => dirac()?,
        OperatorTag::CauchyRiemann => &first(0)? + &dirac()?,
        OperatorTag::ConjugateCauchyRiemann => &first(0)? - &dirac()?,
        OperatorTag::HypercomplexDerivative => {
            (&first(0)? - &dirac()?).scale(&C64::new(0.5, 0.0))
        }
        OperatorTag::Laplacian => {
            let centre = f(x)?;
            let mut acc = CliffordElement::zero(m);
            for j in 0..=m {
                let s = &(&shifted(j, h)? + &shifted(j, -h)?) - &centre.scale(&C64::new(2.0, 0.0));
                acc = &acc + &s.scale(&C64::new(1.0 / (h * h), 0.0));
            }
            acc
        }
    })
}

/// Blade of a generator, for building coefficients.
pub fn e<S: Scalar>(m: usize, j: usize) -> CliffordElement<S> {
    CliffordElement::basis(m, Blade::generator(j), S::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};

    type P = CliffordPolynomial<Rational>;

    fn para(m: usize) -> P {
        let mut x = P::variable(m, 0);
        for j in 1..=m {
            x = x.add(&P::variable(m, j).left_mul(&e(m, j)));
        }
        x
    }

    #[test]
    fn paravector_power_matches_repeated_multiplication() {
        for m in 1..=4 {
            let x = para(m);
            for k in 0..=5 {
                assert_eq!(paravector_power::<Rational>(m, k), x.pow(k), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn powers_are_monogenic_only_in_the_slice_sense() {
        // x is not monogenic for m >= 2: D x = 1 - m.
        for m in 1..=4 {
            let d = para(m).apply_operator(OperatorTag::CauchyRiemann);
            assert_eq!(d, P::constant(CliffordElement::scalar(m, rint(1 - m as i64))));
        }
    }

    #[test]
    fn d_dbar_is_laplacian() {
        let m = 3;
        let p = paravector_power::<Rational>(m, 4)
            .mul(&P::variable(m, 2))
            .left_mul(&(&e(m, 1) + &CliffordElement::scalar(m, rat(1, 3))));
        let lhs = p
            .apply_operator(OperatorTag::ConjugateCauchyRiemann)
            .apply_operator(OperatorTag::CauchyRiemann);
        assert_eq!(lhs, p.apply_operator(OperatorTag::Laplacian));
    }

    #[test]
    fn evaluation_and_finite_differences_agree() {
        let m = 2;
        let p = paravector_power::<Rational>(m, 3).mul(&P::variable(m, 1));
        let x = Paravector::new(0.3, vec![-0.7, 0.4]);
        for tag in OperatorTag::ALL {
            let exact = p.apply_operator(tag).evaluate_c64(&x).unwrap();
            let fd = finite_difference(tag, |y| p.evaluate_c64(y), &x, 1e-4).unwrap();
            assert!(exact.distance(&fd) < 1e-6, "{tag:?}");
        }
    }
}
