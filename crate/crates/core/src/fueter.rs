//! The Fueter-Sce-Qian map `tau_m`.
//!
//! The primary construction is `tau_m S[f] = gamma_m GCK[f^(m-1)]`, uniform in
//! the parity of `m`. For odd `m` two independent witnesses are provided:
//! iterated Laplacians of the slice extension, and the explicit radial
//! operators acting on the intrinsic pair.

use crate::clifford::{CliffordElement, Paravector};
use crate::constants::{gamma_m, ExactConstant};
use crate::error::{check_dim, Error, Result};
use crate::extension::{gck_extension, gck_polynomial, AxialSeries, BivariatePoly, IntrinsicPair, SliceExtension};
use crate::kernels::{monogenic_monomial, AxialClosedForm, Domain, SignFactor};
use crate::laurent::LaurentPoly;
use crate::poly::{CliffordPolynomial, OperatorTag};
use crate::radial::{RadialExpr, RadialMonomial};
use crate::scalar::{binomial, double_factorial, rational_to_f64, Rational, C64};

/// Which case of the power rule produced the output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FueterBranch {
    /// `0 <= l <= m - 2`: the power is annihilated.
    Kernel,
    /// `l >= m - 1`: a polynomial.
    Positive,
    /// `l < 0`: a singular closed form, represented by a truncated series.
    Negative,
    /// Mixed Laurent data.
    Laurent,
}

impl FueterBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            FueterBranch::Kernel => "kernel",
            FueterBranch::Positive => "positive",
            FueterBranch::Negative => "negative",
            FueterBranch::Laurent => "laurent",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FueterOutput {
    Zero,
    Polynomial(CliffordPolynomial<Rational>),
    Series(AxialSeries<Rational>),
}

/// `tau_m[f] = gamma * body`.
#[derive(Clone, Debug, PartialEq)]
pub struct FueterResult {
    pub m: usize,
    pub power: Option<i64>,
    pub branch: FueterBranch,
    pub gamma: ExactConstant,
    pub body: FueterOutput,
}

impl FueterResult {
    pub fn evaluate(&self, x: &Paravector<f64>) -> Result<CliffordElement<C64>> {
        let g = self.gamma.to_c64();
        Ok(match &self.body {
            FueterOutput::Zero => CliffordElement::zero(self.m),
            FueterOutput::Polynomial(p) => p.evaluate_c64(x)?.scale(&g),
            FueterOutput::Series(s) => s.map(rational_to_f64).evaluate(x)?.to_c64().scale(&g),
        })
    }

    /// `(gamma, polynomial)` for terminating outputs.
    pub fn exact_polynomial(&self) -> Option<(ExactConstant, CliffordPolynomial<Rational>)> {
        match &self.body {
            FueterOutput::Zero => Some((self.gamma.clone(), CliffordPolynomial::zero(self.m))),
            FueterOutput::Polynomial(p) => Some((self.gamma.clone(), p.clone())),
            FueterOutput::Series(s) if s.is_exact() => {
                s.to_polynomial().ok().map(|p| (self.gamma.clone(), p))
            }
            FueterOutput::Series(_) => None,
        }
    }

    /// For a single negative power `l = -k`: the closed form
    /// `i^(1-m) sgn(-x_0)^(m-1) P^(-k)`.
    pub fn closed_form(&self) -> Option<AxialClosedForm> {
        let l = self.power?;
        if l >= 0 {
            return None;
        }
        let p = monogenic_monomial(self.m, l).ok()?.closed_form;
        Some(AxialClosedForm {
            prefactor: &p.prefactor * &ExactConstant::i_pow(1 - self.m as i32),
            sign: SignFactor::sgn_minus_x0(self.m as u32 - 1),
            ..p
        })
    }
}

/// `tau_m[x^l]`; negative powers keep GCK terms up to `order`.
pub fn tau_on_power(m: usize, l: i64, order: usize) -> Result<FueterResult> {
    check_dim(m)?;
    let mut r = tau_on_laurent(m, &LaurentPoly::power(l as i32), order)?;
    r.power = Some(l);
    r.branch = if l < 0 {
        FueterBranch::Negative
    } else if l <= m as i64 - 2 {
        FueterBranch::Kernel
    } else {
        FueterBranch::Positive
    };
    Ok(r)
}

/// `gamma_m GCK[f_0^(m-1)]`, truncated at `order` when `f_0` has negative powers.
pub fn tau_on_laurent(m: usize, f0: &LaurentPoly<Rational>, order: usize) -> Result<FueterResult> {
    check_dim(m)?;
    let d = f0.nth_derivative(m as u32 - 1);
    let body = if d.is_zero() {
        FueterOutput::Zero
    } else if d.is_polynomial() {
        FueterOutput::Polynomial(gck_polynomial(&d, m)?.to_polynomial()?)
    } else {
        FueterOutput::Series(gck_extension(&d, m, order))
    };
    let branch = match (&body, f0.is_polynomial()) {
        (FueterOutput::Zero, _) => FueterBranch::Kernel,
        (_, true) => FueterBranch::Positive,
        _ => FueterBranch::Laurent,
    };
    Ok(FueterResult {
        m,
        power: None,
        branch,
        gamma: gamma_m(m as u32),
        body,
    })
}

fn require_odd(m: usize) -> Result<()> {
    check_dim(m)?;
    if m.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "the Laplacian power route needs odd m, got {m}"
        )));
    }
    Ok(())
}

/// Output of the Laplacian route.
#[derive(Clone, Debug, PartialEq)]
pub enum LaplacianRoute {
    Polynomial(CliffordPolynomial<Rational>),
    ClosedForm(AxialClosedForm),
}

/// `Delta^((m-1)/2) S[f_0]` for odd `m`.
pub fn laplacian_power_route(m: usize, f0: &LaurentPoly<Rational>) -> Result<LaplacianRoute> {
    require_odd(m)?;
    let steps = (m - 1) / 2;
    if f0.is_polynomial() {
        let mut p = SliceExtension::new(f0.clone(), m).to_polynomial()?;
        for _ in 0..steps {
            p = p.apply_operator(OperatorTag::Laplacian);
        }
        return Ok(LaplacianRoute::Polynomial(p));
    }
    let (mut a, mut b) = slice_radial_parts(f0);
    for _ in 0..steps {
        (a, b) = axial_laplacian(m, &a, &b);
    }
    Ok(LaplacianRoute::ClosedForm(AxialClosedForm {
        dim: m,
        prefactor: ExactConstant::one(),
        sign: SignFactor::default(),
        a,
        b,
        domain: Domain::PuncturedOrigin,
    }))
}

/// `S[f_0] = A + w B` in closed form, with `x^n = (x_0 + r w)^n` and
/// `x^(-p) = (x_0 - r w)^p / rho^p`.
pub fn slice_radial_parts(f0: &LaurentPoly<Rational>) -> (RadialExpr<Rational>, RadialExpr<Rational>) {
    let mut a = RadialExpr::zero();
    let mut b = RadialExpr::zero();
    for (n, c) in f0.terms() {
        let p = n.unsigned_abs();
        let (rsign, rho) = if *n >= 0 { (1, 0) } else { (-1, -2 * p as i32) };
        for j in 0..=p {
            // w^j = (-1)^(j/2) for even j, (-1)^((j-1)/2) w for odd j
            let wsign = if (j / 2) % 2 == 0 { 1 } else { -1 };
            let rs = if j % 2 == 1 && rsign < 0 { -1 } else { 1 };
            let coef = c * Rational::from_integer(binomial(p as u64, j as u64)) * Rational::from_integer((wsign * rs).into());
            let mono = RadialMonomial {
                x0: (p - j) as i32,
                r: j as i32,
                rho_halves: rho,
            };
            if j % 2 == 0 {
                a.add_term(mono, coef);
            } else {
                b.add_term(mono, coef);
            }
        }
    }
    (a, b)
}

/// Laplacian in `R^(m+1)` of `A(x_0, r) + w B(x_0, r)`.
pub fn axial_laplacian(
    m: usize,
    a: &RadialExpr<Rational>,
    b: &RadialExpr<Rational>,
) -> (RadialExpr<Rational>, RadialExpr<Rational>) {
    let k = Rational::from_integer((m as i64 - 1).into());
    let na = a
        .d_x0()
        .d_x0()
        .add(&a.d_r().d_r())
        .add(&a.d_r().shift(0, -1, 0).scale(&k));
    let nb = b
        .d_x0()
        .d_x0()
        .add(&b.d_r().d_r())
        .add(&b.d_r().shift(0, -1, 0).scale(&k))
        .sub(&b.shift(0, -2, 0).scale(&k));
    (na, nb)
}

/// `(r^-1 d_r)` on a `v`-even polynomial: `v^b -> b v^(b-2)`.
fn radial_even_step(p: &BivariatePoly<Rational>) -> Result<BivariatePoly<Rational>> {
    let mut out = BivariatePoly::zero();
    for ((u, v), c) in p.terms() {
        if v % 2 != 0 {
            return Err(Error::InvalidArgument("alpha must be even in v".into()));
        }
        if *v >= 2 {
            out.add_term(*u, v - 2, c * Rational::from_integer((*v as i64).into()));
        }
    }
    Ok(out)
}

/// `(d_r r^-1)` on a `v`-odd polynomial: `v^b -> (b-1) v^(b-2)`.
fn radial_odd_step(p: &BivariatePoly<Rational>) -> Result<BivariatePoly<Rational>> {
    let mut out = BivariatePoly::zero();
    for ((u, v), c) in p.terms() {
        if v % 2 != 1 {
            return Err(Error::InvalidArgument("beta must be odd in v".into()));
        }
        if *v >= 3 {
            out.add_term(*u, v - 2, c * Rational::from_integer((*v as i64 - 1).into()));
        }
    }
    Ok(out)
}

fn bivariate_to_radial(p: &BivariatePoly<Rational>) -> RadialExpr<Rational> {
    let mut e = RadialExpr::zero();
    for ((u, v), c) in p.terms() {
        e.add_term(
            RadialMonomial {
                x0: *u,
                r: *v as i32,
                rho_halves: 0,
            },
            c.clone(),
        );
    }
    e
}

/// `A = (m-1)!! (r^-1 d_r)^((m-1)/2) alpha`, `B = (m-1)!! (d_r r^-1)^((m-1)/2) beta`.
pub fn lemma41_ab(m: usize, pair: &IntrinsicPair<Rational>) -> Result<AxialClosedForm> {
    require_odd(m)?;
    let mut a = pair.alpha.clone();
    let mut b = pair.beta.clone();
    if !a.is_even_in_v() || !b.is_odd_in_v() {
        return Err(Error::InvalidArgument("alpha must be v-even and beta v-odd".into()));
    }
    for _ in 0..(m - 1) / 2 {
        a = radial_even_step(&a)?;
        b = radial_odd_step(&b)?;
    }
    let has_negative = a.terms().chain(b.terms()).any(|((u, _), _)| *u < 0);
    Ok(AxialClosedForm {
        dim: m,
        prefactor: ExactConstant::rational(Rational::from_integer(double_factorial(m as i64 - 1))),
        sign: SignFactor::default(),
        a: bivariate_to_radial(&a),
        b: bivariate_to_radial(&b),
        domain: if has_negative {
            Domain::OffHyperplane
        } else {
            Domain::Everywhere
        },
    })
}

/// `gamma` as an element of the rationals, when it is one.
pub fn gamma_rational(m: usize) -> Option<Rational> {
    gamma_m(m as u32).as_rational()
}

/// Helper for comparing an exact constant times a closed form with a
/// polynomial: returns `constant * body` as a rational polynomial.
pub fn rational_multiple(
    c: &ExactConstant,
    p: &CliffordPolynomial<Rational>,
) -> Option<CliffordPolynomial<Rational>> {
    if c.is_zero() {
        return Some(CliffordPolynomial::zero(p.dim()));
    }
    c.as_rational().map(|q| p.scale(&q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{appell_q, intrinsic_split};
    use crate::scalar::{factorial, rint};

    #[test]
    fn kernel_branch() {
        for m in 1..=6 {
            for l in 0..=10i64 {
                let r = tau_on_power(m, l, 0).unwrap();
                assert_eq!(r.body == FueterOutput::Zero, l <= m as i64 - 2, "m={m} l={l}");
                if let Some((_, p)) = r.exact_polynomial() {
                    assert!(p.is_monogenic());
                }
            }
        }
    }

    #[test]
    fn tau3_of_square_is_minus_four() {
        let r = tau_on_power(3, 2, 0).unwrap();
        let (g, p) = r.exact_polynomial().unwrap();
        assert_eq!(rational_multiple(&g, &p).unwrap(), CliffordPolynomial::constant(CliffordElement::scalar(3, rint(-4))));
        let LaplacianRoute::Polynomial(lp) = laplacian_power_route(3, &LaurentPoly::power(2)).unwrap() else {
            panic!()
        };
        assert_eq!(lp, rational_multiple(&g, &p).unwrap());
    }

    #[test]
    fn explicit_power_formula() {
        for m in 2..=5usize {
            for k in 0..=4u32 {
                let l = m as i64 - 1 + k as i64;
                let (g, p) = tau_on_power(m, l, 0).unwrap().exact_polynomial().unwrap();
                assert_eq!(g, gamma_m(m as u32));
                let c = Rational::from_integer(factorial(l as u64) / factorial(k as u64));
                assert_eq!(p, appell_q(m, k).scale(&c));
            }
        }
    }

    #[test]
    fn ab_formula_matches_laplacian_route() {
        for (m, n) in [(3usize, 2i32), (3, 3), (5, 6), (5, 7), (1, 3)] {
            let pair = intrinsic_split(&LaurentPoly::power(n), n as usize);
            let cf = lemma41_ab(m, &pair).unwrap();
            let LaplacianRoute::Polynomial(lp) = laplacian_power_route(m, &LaurentPoly::power(n)).unwrap() else {
                panic!()
            };
            let body = cf.polynomial_body().unwrap();
            let q = cf.prefactor.as_rational().unwrap();
            assert_eq!(body.scale(&q), lp, "m={m} n={n}");
        }
        assert!(lemma41_ab(2, &intrinsic_split(&LaurentPoly::power(2), 2)).is_err());
    }

    #[test]
    fn negative_power_laplacian_is_minus_p() {
        let LaplacianRoute::ClosedForm(cf) =
            laplacian_power_route(3, &LaurentPoly::power(-1)).unwrap()
        else {
            panic!()
        };
        let x = Paravector::new(0.6, vec![0.3, -0.4, 0.2]);
        let rho: f64 = x.norm_sq();
        let expect = x.conj().to_element().map(|v| C64::new(-4.0 * v / (rho * rho), 0.0));
        assert!(cf.evaluate(&x).unwrap().distance(&expect) < 1e-12);
        let tau = tau_on_power(3, -1, 60).unwrap();
        assert!(tau.closed_form().unwrap().evaluate(&x).unwrap().distance(&expect) < 1e-12);
    }

    #[test]
    fn even_m_negative_power_matches_closed_form() {
        for m in [2usize, 4] {
            for k in 1..=4i64 {
                let tau = tau_on_power(m, -k, 80).unwrap();
                let cf = tau.closed_form().unwrap();
                for x0 in [1.0f64, -1.0] {
                    let x = Paravector::new(x0, {
                        let mut v = vec![0.0; m];
                        v[0] = 0.3;
                        v[m - 1] += 0.2;
                        v
                    });
                    let d = tau.evaluate(&x).unwrap().distance(&cf.evaluate(&x).unwrap());
                    assert!(d < 1e-8, "m={m} k={k} x0={x0} d={d}");
                }
            }
        }
    }
}
