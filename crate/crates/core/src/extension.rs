//! Extension maps from functions of `x_0` to functions of `x_0 + x`.
//!
//! * [`SliceExtension`]: `exp(x d/dx_0)`, the slice monogenic extension.
//! * [`intrinsic_split`]: the holomorphic extension `f(u + iv) = alpha + i beta`.
//! * [`gck_extension`]: the axially monogenic (generalized CK) extension,
//!   with [`gck_bessel_form`] as an independent construction.
//! * [`appell_q`]: the Appell polynomials `Q_k^m = GCK[x_0^k]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::clifford::{CliffordElement, Paravector};
use crate::error::{check_dim, Error, Result};
use crate::laurent::LaurentPoly;
use crate::poly::{conjugate_paravector_power, paravector_power, vector_power, CliffordPolynomial};
use crate::scalar::{factorial, pochhammer, rat, rint, Rational, Scalar};

/// `c_j` in `f_j = f_{j-1}' / c_j`: `j` for even `j`, `m + j - 1` for odd `j`.
pub fn gck_divisor(m: usize, j: usize) -> i64 {
    if j.is_multiple_of(2) {
        j as i64
    } else {
        (m + j - 1) as i64
    }
}

/// `sum_j x^j f_j(x_0)` with `x` the vector variable.
#[derive(Clone, PartialEq, Debug)]
pub struct AxialSeries<S> {
    dim: usize,
    coeffs: Vec<LaurentPoly<S>>,
    exact: bool,
}

impl<S: Scalar> AxialSeries<S> {
    pub fn new(dim: usize, coeffs: Vec<LaurentPoly<S>>, exact: bool) -> Self {
        assert!(!coeffs.is_empty(), "an axial series needs f_0");
        AxialSeries { dim, coeffs, exact }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Truncation order `N`: coefficients `f_0..=f_N` are stored.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True when the stored coefficients are the whole series.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn coeffs(&self) -> &[LaurentPoly<S>] {
        &self.coeffs
    }

    /// Restriction to `x = 0`.
    pub fn restriction(&self) -> &LaurentPoly<S> {
        &self.coeffs[0]
    }

    pub fn scale(&self, s: &S) -> Self {
        AxialSeries {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
            exact: self.exact,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &Vec<LaurentPoly<S>>, j: usize| v.get(j).cloned().unwrap_or_default();
        AxialSeries {
            dim: self.dim,
            coeffs: (0..n).map(|j| get(&self.coeffs, j).add(&get(&other.coeffs, j))).collect(),
            exact: self.exact && other.exact,
        }
    }

    /// `(A, B')` with value `A + x B'`, from `x_0` and `|x|^2`.
    pub fn evaluate_parts(&self, x0: &S, r2: &S) -> Result<(S, S)> {
        let mut a = S::zero();
        let mut b = S::zero();
        let mut w = S::one();
        for (j, f) in self.coeffs.iter().enumerate() {
            let v = f.evaluate(x0)? * w.clone();
            if j % 2 == 0 {
                a = a + v;
            } else {
                b = b + v;
                w = w * -r2.clone();
            }
        }
        Ok((a, b))
    }

    pub fn evaluate(&self, x: &Paravector<S>) -> Result<CliffordElement<S>> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        let (a, b) = self.evaluate_parts(&x.x0, &x.vector_norm_sq())?;
        Ok(&CliffordElement::scalar(self.dim, a) + &x.vector_part().scale(&b))
    }

    /// The series as a polynomial; requires every `f_j` to be polynomial.
    pub fn to_polynomial(&self) -> Result<CliffordPolynomial<S>> {
        let m = self.dim;
        let mut p = CliffordPolynomial::zero(m);
        for (j, f) in self.coeffs.iter().enumerate() {
            if !f.is_polynomial() {
                return Err(Error::Unsupported(format!(
                    "coefficient f_{j} has negative powers"
                )));
            }
            if f.is_zero() {
                continue;
            }
            let mut fx = CliffordPolynomial::zero(m);
            for (n, c) in f.terms() {
                let mut e = vec![0; m + 1];
                e[0] = *n as u32;
                fx.add_term(e, CliffordElement::scalar(m, c.clone()));
            }
            p = p.add(&fx.mul(&vector_power(m, j as u32)));
        }
        Ok(p)
    }

    /// `D` applied termwise: `sum_j x^j (f_j' - c_{j+1} f_{j+1})`.
    ///
    /// For a truncated extension this is `x^N f_N'`, the exact defect.
    pub fn cauchy_riemann_defect(&self) -> AxialSeries<S> {
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|j| {
                let d = self.coeffs[j].derivative();
                match self.coeffs.get(j + 1) {
                    Some(next) => d.sub(&next.scale(&S::from_i64(gck_divisor(self.dim, j + 1)))),
                    None => d,
                }
            })
            .collect();
        AxialSeries::new(self.dim, coeffs, self.exact)
    }

    /// Whether consecutive coefficients obey `f_j = f_{j-1}' / c_j`.
    pub fn satisfies_recursion(&self) -> bool {
        self.coeffs.windows(2).enumerate().all(|(j, w)| {
            w[0].derivative()
                == w[1].scale(&S::from_i64(gck_divisor(self.dim, j + 1)))
        })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> AxialSeries<T> {
        AxialSeries {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c.map(f)).collect(),
            exact: self.exact,
        }
    }
}

/// Generalized CK-extension truncated at order `N`.
pub fn gck_extension<S: Scalar>(f0: &LaurentPoly<S>, m: usize, order: usize) -> AxialSeries<S> {
    let mut coeffs = vec![f0.clone()];
    for j in 1..=order {
        let next = coeffs[j - 1]
            .derivative()
            .scale(&(S::one() / S::from_i64(gck_divisor(m, j))));
        coeffs.push(next);
    }
    let exact = coeffs.last().is_some_and(|f| f.derivative().is_zero());
    AxialSeries::new(m, coeffs, exact)
}

/// Certified bound on `sum_{j > N} |x^j f_j(x_0)|` for the extension of
/// Laurent data, where `x_0 != 0` and `r = |x| < |x_0|`.
///
/// Positive powers terminate. For `c x_0^{-p}` the terms are
/// `t_j = |c| |x_0|^{-p} (p)_j / (c_1 ... c_j) q^j` with `q = r/|x_0|`, whose
/// ratios `q (p+j)/c_{j+1} <= q (p+j)/(j+1)` decrease in `j`.
pub fn gck_tail_bound<S: Scalar>(f0: &LaurentPoly<S>, m: usize, order: usize, x0: f64, r: f64) -> f64 {
    let q = r / x0.abs();
    let mut total = 0.0;
    for (n, c) in f0.terms() {
        let n = *n;
        if n >= 0 {
            if n as usize > order {
                // Terms beyond the truncation that do not vanish: sum them directly.
                let mut t = c.abs_f64() * x0.abs().powi(n);
                for j in 1..=n as usize {
                    t *= (n as f64 - j as f64 + 1.0) / gck_divisor(m, j) as f64 * q;
                    if j > order {
                        total += t;
                    }
                }
            }
            continue;
        }
        let p = (-n) as f64;
        let mut t = c.abs_f64() * x0.abs().powi(n);
        for j in 1..=order + 1 {
            t *= (p + j as f64 - 1.0) / gck_divisor(m, j) as f64 * q;
        }
        let ratio = q * (p + order as f64 + 1.0) / (order as f64 + 2.0);
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        total += t / (1.0 - ratio);
    }
    total
}

/// Smallest `N <= max_order` whose certified tail is below `tol`.
pub fn choose_gck_order<S: Scalar>(
    f0: &LaurentPoly<S>,
    m: usize,
    x0: f64,
    r: f64,
    tol: f64,
    max_order: usize,
) -> Result<usize> {
    let mut last = f64::INFINITY;
    for n in 0..=max_order {
        last = gck_tail_bound(f0, m, n, x0, r);
        if last < tol {
            return Ok(n);
        }
    }
    Err(Error::Truncation {
        tol,
        max_order,
        bound: last,
    })
}

/// The terminating extension of a polynomial.
pub fn gck_polynomial<S: Scalar>(f0: &LaurentPoly<S>, m: usize) -> Result<AxialSeries<S>> {
    if !f0.is_polynomial() {
        return Err(Error::Unsupported("GCK of a non-polynomial needs an explicit order".into()));
    }
    let deg = f0.max_exponent().unwrap_or(0).max(0) as usize;
    Ok(gck_extension(f0, m, deg))
}

/// `(-1)^k / (k! (nu+1)_k)`: Taylor coefficients of
/// `Gamma(nu+1) (z/2)^{-nu} J_nu(z)` in powers of `(z/2)^2`.
pub fn bessel_j_normalized_coefficients(nu: &Rational, terms: usize) -> Vec<Rational> {
    let nu1 = nu + Rational::one();
    (0..terms)
        .map(|k| {
            let sign = if k % 2 == 0 { rint(1) } else { rint(-1) };
            sign / (Rational::from_integer(factorial(k as u64)) * pochhammer(&nu1, k as u64))
        })
        .collect()
}

/// The extension of a polynomial through the Bessel-operator series
/// `Gamma(m/2) (z/2)^{1-m/2} [J_{m/2-1}(z) + w J_{m/2}(z)]` with `z = |x| d/dx_0`.
pub fn gck_bessel_form<S: Scalar>(f0: &LaurentPoly<S>, m: usize) -> Result<AxialSeries<S>> {
    check_dim(m)?;
    if !f0.is_polynomial() {
        return Err(Error::Unsupported(
            "the Bessel form only terminates on polynomials".into(),
        ));
    }
    let deg = f0.max_exponent().unwrap_or(0).max(0) as usize;
    let half_m = rat(m as i64, 2);
    let even = bessel_j_normalized_coefficients(&(&half_m - Rational::one()), deg / 2 + 1);
    let odd = bessel_j_normalized_coefficients(&half_m, deg / 2 + 1);
    let mut coeffs = Vec::with_capacity(deg + 1);
    for j in 0..=deg {
        let k = j / 2;
        // x^{2k} = (-1)^k r^{2k}, which absorbs the alternating sign.
        let sign = if k % 2 == 0 { rint(1) } else { rint(-1) };
        let c = if j % 2 == 0 {
            &even[k] * &sign / Rational::from_integer(BigInt::one() << (2 * k))
        } else {
            // Gamma(m/2) / Gamma(m/2 + 1) = 2/m.
            &odd[k] * &sign / (&half_m * Rational::from_integer(BigInt::one() << (2 * k + 1)))
        };
        coeffs.push(f0.nth_derivative(j as u32).scale(&S::from_rational(&c)));
    }
    Ok(AxialSeries::new(m, coeffs, true))
}

/// Numbers `p + i r q` with `r^2` fixed: the plane `span{1, w}` with `w^2 = -1`,
/// in coordinates that stay in the base field.
#[derive(Clone, Debug, PartialEq)]
struct AxialNumber<S> {
    p: S,
    q: S,
}

impl<S: Scalar> AxialNumber<S> {
    fn mul(&self, o: &Self, r2: &S) -> Self {
        AxialNumber {
            p: self.p.clone() * o.p.clone() - r2.clone() * self.q.clone() * o.q.clone(),
            q: self.p.clone() * o.q.clone() + self.q.clone() * o.p.clone(),
        }
    }

    fn inv(&self, r2: &S) -> Option<Self> {
        let n = self.p.clone() * self.p.clone() + r2.clone() * self.q.clone() * self.q.clone();
        if n.is_zero() {
            return None;
        }
        Some(AxialNumber {
            p: self.p.clone() / n.clone(),
            q: -self.q.clone() / n,
        })
    }

    fn pow(&self, n: i32, r2: &S) -> Option<Self> {
        let base = if n < 0 { self.inv(r2)? } else { self.clone() };
        let mut acc = AxialNumber {
            p: S::one(),
            q: S::zero(),
        };
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base, r2);
        }
        Some(acc)
    }
}

/// The slice monogenic extension `S[f_0] = exp(x d/dx_0) f_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceExtension<S> {
    dim: usize,
    f0: LaurentPoly<S>,
}

impl<S: Scalar> SliceExtension<S> {
    pub fn new(f0: LaurentPoly<S>, m: usize) -> Self {
        SliceExtension { dim: m, f0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn restriction(&self) -> &LaurentPoly<S> {
        &self.f0
    }

    /// Closed-form value: each `x_0^n` becomes the paravector power `x^n`.
    /// Exact over any field; fails at `x = 0` when negative powers occur.
    pub fn evaluate(&self, x: &Paravector<S>) -> Result<CliffordElement<S>> {
        let (p, q) = self.evaluate_parts(&x.x0, &x.vector_norm_sq())?;
        Ok(&CliffordElement::scalar(self.dim, p) + &x.vector_part().scale(&q))
    }

    /// `(alpha, beta / r)` at `(x_0, r^2)`.
    pub fn evaluate_parts(&self, x0: &S, r2: &S) -> Result<(S, S)> {
        let z = AxialNumber {
            p: x0.clone(),
            q: S::one(),
        };
        let mut acc = AxialNumber {
            p: S::zero(),
            q: S::zero(),
        };
        for (n, c) in self.f0.terms() {
            let zn = z
                .pow(*n, r2)
                .ok_or_else(|| Error::Domain("negative power at x = 0".into()))?;
            acc.p = acc.p + zn.p * c.clone();
            acc.q = acc.q + zn.q * c.clone();
        }
        Ok((acc.p, acc.q))
    }

    /// Partial sum `sum_{j <= N} x^j f_0^{(j)}(x_0) / j!`.
    pub fn evaluate_series(&self, x: &Paravector<S>, order: usize) -> Result<CliffordElement<S>> {
        self.as_series(order).evaluate(x)
    }

    /// Coefficients `f_0^{(j)} / j!`, `j <= N`.
    pub fn as_series(&self, order: usize) -> AxialSeries<S> {
        let mut coeffs = vec![self.f0.clone()];
        for j in 1..=order {
            let next = coeffs[j - 1].derivative().scale(&(S::one() / S::from_i64(j as i64)));
            coeffs.push(next);
        }
        let exact = coeffs.last().is_some_and(|f| f.derivative().is_zero());
        AxialSeries::new(self.dim, coeffs, exact)
    }

    /// The extension of a polynomial as a polynomial.
    pub fn to_polynomial(&self) -> Result<CliffordPolynomial<S>> {
        if !self.f0.is_polynomial() {
            return Err(Error::Unsupported("slice extension of negative powers".into()));
        }
        let deg = self.f0.max_exponent().unwrap_or(0).max(0) as usize;
        self.as_series(deg).to_polynomial()
    }
}

/// Polynomial in `(u, v)` allowing negative powers of `u`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BivariatePoly<S> {
    terms: BTreeMap<(i32, u32), S>,
}

impl<S: Scalar> BivariatePoly<S> {
    pub fn zero() -> Self {
        BivariatePoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, u: i32, v: u32, c: S) {
        if c.is_zero() {
            return;
        }
        let val = self.terms.remove(&(u, v)).map_or(c.clone(), |old| old + c);
        if !val.is_zero() {
            self.terms.insert((u, v), val);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, u32), &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: i32, v: u32) -> S {
        self.terms.get(&(u, v)).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_even_in_v(&self) -> bool {
        self.terms.keys().all(|(_, v)| v % 2 == 0)
    }

    pub fn is_odd_in_v(&self) -> bool {
        self.terms.keys().all(|(_, v)| v % 2 == 1)
    }

    /// `p(u, -v)`.
    pub fn reflect_v(&self) -> Self {
        let mut out = Self::zero();
        for ((u, v), c) in &self.terms {
            out.add_term(*u, *v, if v % 2 == 1 { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for ((u, v), c) in &self.terms {
            out.add_term(*u, *v, -c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((u, v), c) in &other.terms {
            out.add_term(*u, *v, c.clone());
        }
        out
    }

    pub fn partial_u(&self) -> Self {
        let mut out = Self::zero();
        for ((u, v), c) in &self.terms {
            out.add_term(u - 1, *v, c.clone() * S::from_i64(*u as i64));
        }
        out
    }

    pub fn partial_v(&self) -> Self {
        let mut out = Self::zero();
        for ((u, v), c) in &self.terms {
            if *v > 0 {
                out.add_term(*u, v - 1, c.clone() * S::from_i64(*v as i64));
            }
        }
        out
    }

    pub fn evaluate(&self, u: &S, v: &S) -> Result<S> {
        let mut acc = S::zero();
        for ((a, b), c) in &self.terms {
            if *a < 0 && u.is_zero() {
                return Err(Error::Domain("negative power of u at 0".into()));
            }
            acc = acc + c.clone() * u.powi(*a) * v.powi(*b as i32);
        }
        Ok(acc)
    }
}

/// `f(u + iv) = alpha(u, v) + i beta(u, v)` for real `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntrinsicPair<S> {
    pub alpha: BivariatePoly<S>,
    pub beta: BivariatePoly<S>,
}

impl<S: Scalar> IntrinsicPair<S> {
    /// Both components of the Cauchy-Riemann system
    /// `(d_u alpha - d_v beta, d_v alpha + d_u beta)`.
    pub fn cauchy_riemann_residual(&self) -> (BivariatePoly<S>, BivariatePoly<S>) {
        (
            self.alpha.partial_u().add(&self.beta.partial_v().neg()),
            self.alpha.partial_v().add(&self.beta.partial_u()),
        )
    }
}

/// Splits `f_0` into its intrinsic pair, keeping derivatives up to `order`.
/// Exact for polynomials when `order >= deg f_0`.
pub fn intrinsic_split<S: Scalar>(f0: &LaurentPoly<S>, order: usize) -> IntrinsicPair<S> {
    let mut alpha = BivariatePoly::zero();
    let mut beta = BivariatePoly::zero();
    let mut d = f0.clone();
    let mut fact = S::one();
    for j in 0..=order {
        if j > 0 {
            d = d.derivative();
            fact = fact * S::from_i64(j as i64);
        }
        // i^j v^j / j!: real for even j, imaginary for odd j.
        let sign = if (j / 2) % 2 == 0 { S::one() } else { -S::one() };
        let target = if j % 2 == 0 { &mut alpha } else { &mut beta };
        for (n, c) in d.terms() {
            target.add_term(*n, j as u32, c.clone() * sign.clone() / fact.clone());
        }
    }
    IntrinsicPair { alpha, beta }
}

/// `Q_k^m = GCK[x_0^k]`.
pub fn appell_q(m: usize, k: u32) -> CliffordPolynomial<Rational> {
    gck_polynomial(&LaurentPoly::power(k as i32), m)
        .and_then(|s| s.to_polynomial())
        .expect("polynomial input")
}

/// `T_j^k(m) = k!/(m)_k * ((m+1)/2)_{k-j} ((m-1)/2)_j / ((k-j)! j!)`.
pub fn appell_t(m: usize, k: u32, j: u32) -> Rational {
    assert!(j <= k);
    let mm = rint(m as i64);
    let num = Rational::from_integer(factorial(k as u64))
        * pochhammer(&rat(m as i64 + 1, 2), (k - j) as u64)
        * pochhammer(&rat(m as i64 - 1, 2), j as u64);
    let den = pochhammer(&mm, k as u64)
        * Rational::from_integer(factorial((k - j) as u64) * factorial(j as u64));
    num / den
}

/// Placement of the paravector factors in the explicit Appell sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorOrder {
    /// `sum_j T_j^k conj(x)^{k-j} x^j`.
    ConjugateFirst,
    /// `sum_j T_j^k x^{k-j} conj(x)^j`.
    ParavectorFirst,
}

/// The explicit `T_j^k(m)` sum for `Q_k^m` in the given factor order.
pub fn appell_q_explicit(m: usize, k: u32, order: FactorOrder) -> CliffordPolynomial<Rational> {
    let mut p = CliffordPolynomial::zero(m);
    for j in 0..=k {
        let (a, b) = match order {
            FactorOrder::ConjugateFirst => (
                conjugate_paravector_power::<Rational>(m, k - j),
                paravector_power::<Rational>(m, j),
            ),
            FactorOrder::ParavectorFirst => (
                paravector_power::<Rational>(m, k - j),
                conjugate_paravector_power::<Rational>(m, j),
            ),
        };
        p = p.add(&a.mul(&b).scale(&appell_t(m, k, j)));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{e, OperatorTag};
    use crate::scalar::rat;

    type P = CliffordPolynomial<Rational>;

    fn x0_plus(m: usize, c: Rational) -> P {
        P::variable(m, 0).add(&(1..=m).fold(P::zero(m), |acc, j| {
            acc.add(&P::variable(m, j).left_mul(&e(m, j)).scale(&c))
        }))
    }

    #[test]
    fn gck_of_linear_and_quadratic() {
        let q1 = appell_q(3, 1);
        assert_eq!(q1, x0_plus(3, rat(1, 3)));
        let q2 = appell_q(3, 2);
        // x0^2 - r^2/3 + (2/3) x0 x
        let mut expect = P::variable(3, 0).pow(2);
        expect = expect.sub(&crate::poly::radius_sq_power::<Rational>(3, 1).scale(&rat(1, 3)));
        let x0x = (1..=3).fold(P::zero(3), |acc, j| {
            acc.add(&P::variable(3, 0).mul(&P::variable(3, j)).left_mul(&e(3, j)))
        });
        expect = expect.add(&x0x.scale(&rat(2, 3)));
        assert_eq!(q2, expect);
        assert_eq!(appell_q(4, 0), P::one(4));
    }

    #[test]
    fn bessel_form_matches_recursion() {
        for m in 1..=6 {
            for k in 0..=8 {
                let f = LaurentPoly::from_terms([(k, rint(1)), (k / 2, rat(-2, 7))]);
                assert_eq!(
                    gck_bessel_form(&f, m).unwrap(),
                    gck_polynomial(&f, m).unwrap(),
                    "m={m} k={k}"
                );
            }
        }
        assert!(gck_bessel_form(&LaurentPoly::<Rational>::power(-1), 3).is_err());
    }

    #[test]
    fn explicit_sum_needs_paravector_first() {
        let swapped = appell_q_explicit(3, 1, FactorOrder::ParavectorFirst);
        assert_eq!(swapped, appell_q(3, 1));
        let printed = appell_q_explicit(3, 1, FactorOrder::ConjugateFirst);
        assert_eq!(printed, x0_plus(3, rat(-1, 3)));
        assert!(!printed.is_monogenic());
        for m in 2..=5 {
            for k in 0..=6 {
                assert_eq!(appell_q_explicit(m, k, FactorOrder::ParavectorFirst), appell_q(m, k));
            }
        }
    }

    #[test]
    fn slice_extension_closed_form_and_series() {
        let m = 3;
        let f = LaurentPoly::from_terms([(3, rint(2)), (-2, rat(1, 3)), (0, rint(-1))]);
        let s = SliceExtension::new(f, m);
        let x = Paravector::new(rat(3, 2), vec![rat(1, 5), rat(-1, 3), rat(1, 7)]);
        let closed = s.evaluate(&x).unwrap();
        // Oracle: geometric products of the paravector.
        let xe = x.to_element();
        let inv = xe.clifford_conjugate().scale(&(Rational::one() / x.norm_sq()));
        let expect = &(&xe.pow(3).scale(&rint(2)) + &inv.pow(2).scale(&rat(1, 3)))
            - &CliffordElement::one(m);
        assert_eq!(closed, expect);
        let series = s.map_series_f64(&x, 60);
        assert!(series.distance(&closed.to_c64()) < 1e-12);
        let zero = Paravector::new(rint(0), vec![rint(0); 3]);
        assert!(matches!(s.evaluate(&zero), Err(Error::Domain(_))));
    }

    impl SliceExtension<Rational> {
        fn map_series_f64(&self, x: &Paravector<Rational>, n: usize) -> CliffordElement<crate::scalar::C64> {
            let s = SliceExtension::new(self.f0.map(crate::scalar::rational_to_f64), self.dim);
            let xf = Paravector::new(
                crate::scalar::rational_to_f64(&x.x0),
                x.x.iter().map(crate::scalar::rational_to_f64).collect(),
            );
            s.evaluate_series(&xf, n).unwrap().to_c64()
        }
    }

    #[test]
    fn intrinsic_split_of_powers() {
        let p = intrinsic_split(&LaurentPoly::<Rational>::power(2), 4);
        let mut a = BivariatePoly::zero();
        a.add_term(2, 0, rint(1));
        a.add_term(0, 2, rint(-1));
        let mut b = BivariatePoly::zero();
        b.add_term(1, 1, rint(2));
        assert_eq!(p, IntrinsicPair { alpha: a, beta: b });
        let p3 = intrinsic_split(&LaurentPoly::<Rational>::power(3), 3);
        assert_eq!(p3.beta.reflect_v(), p3.beta.neg());
        let (r1, r2) = p3.cauchy_riemann_residual();
        assert!(r1.is_zero() && r2.is_zero());
    }

    #[test]
    fn defect_of_truncated_series() {
        let s = gck_extension(&LaurentPoly::<Rational>::power(-1), 3, 6);
        assert!(s.satisfies_recursion());
        let d = s.cauchy_riemann_defect();
        for j in 0..6 {
            assert!(d.coeffs()[j].is_zero());
        }
        assert!(!d.coeffs()[6].is_zero());
        let f = LaurentPoly::from_terms([(-2, rint(3)), (1, rint(1))]);
        let (x0, r) = (-1.5, 0.6);
        let n = choose_gck_order(&f, 4, x0, r, 1e-12, 200).unwrap();
        let exact_tail = gck_extension(&f.map(crate::scalar::rational_to_f64), 4, 400);
        let trunc = gck_extension(&f.map(crate::scalar::rational_to_f64), 4, n);
        let x = Paravector::new(x0, vec![r, 0.0, 0.0, 0.0]);
        let d = exact_tail.evaluate(&x).unwrap().to_c64().distance(&trunc.evaluate(&x).unwrap().to_c64());
        assert!(d < 1e-12, "{d}");
        assert!(gck_tail_bound(&f, 4, n, x0, r) >= d);
        let poly = appell_q(4, 5);
        assert!(poly.apply_operator(OperatorTag::CauchyRiemann).is_zero());
    }
}
