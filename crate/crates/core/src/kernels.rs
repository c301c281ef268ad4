//! The Cauchy kernel, Kelvin inversion and the monogenic monomials
//! `P^(-k)`, `P^(k-1)`, kept as exact closed forms in `(x_0, r)`.

use std::collections::BTreeMap;

use num_traits::One;

use crate::clifford::{CliffordElement, Paravector};
use crate::constants::{lambda, sphere_area, ExactConstant};
use crate::error::{check_dim, Error, Result};
use crate::extension::{appell_q, choose_gck_order, gck_extension, gck_polynomial};
use crate::laurent::LaurentPoly;
use crate::poly::{radius_sq_power, CliffordPolynomial};
use crate::radial::RadialExpr;
use crate::report::IdentityReport;
use crate::scalar::{factorial, rational_to_f64, rint, Rational, Scalar, C64};

/// Where a closed form may be evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Everywhere,
    /// `x != 0`.
    PuncturedOrigin,
    /// `x_0 != 0`.
    OffHyperplane,
}

impl Domain {
    pub fn contains(self, x0: f64, r: f64) -> bool {
        match self {
            Domain::Everywhere => true,
            Domain::PuncturedOrigin => x0 != 0.0 || r != 0.0,
            Domain::OffHyperplane => x0 != 0.0,
        }
    }

    fn intersect(self, other: Domain) -> Domain {
        use Domain::*;
        match (self, other) {
            (OffHyperplane, _) | (_, OffHyperplane) => OffHyperplane,
            (PuncturedOrigin, _) | (_, PuncturedOrigin) => PuncturedOrigin,
            _ => Everywhere,
        }
    }
}

/// Piecewise sign data `sgn(x_0)^power` or `sgn(-x_0)^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SignFactor {
    pub power: u32,
    pub negated: bool,
}

impl SignFactor {
    pub fn sgn_x0(power: u32) -> Self {
        SignFactor { power, negated: false }
    }

    pub fn sgn_minus_x0(power: u32) -> Self {
        SignFactor { power, negated: true }
    }

    pub fn value(self, x0: f64) -> f64 {
        if self.power.is_multiple_of(2) {
            return 1.0;
        }
        let s = if self.negated { -x0 } else { x0 };
        if s >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Trivial on both half-axes.
    pub fn is_trivial(self) -> bool {
        self.power.is_multiple_of(2)
    }
}

/// `prefactor * sign(x_0) * (A(x_0, r) + w B(x_0, r))`, `w = x / r`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxialClosedForm {
    pub dim: usize,
    pub prefactor: ExactConstant,
    pub sign: SignFactor,
    pub a: RadialExpr<Rational>,
    pub b: RadialExpr<Rational>,
    pub domain: Domain,
}

impl AxialClosedForm {
    /// `(A, B)` times the prefactor and sign.
    pub fn evaluate_axial(&self, x0: f64, r: f64) -> Result<(C64, C64)> {
        if !self.domain.contains(x0, r) {
            return Err(Error::Domain(format!("({x0}, {r}) is singular")));
        }
        let c = self.prefactor.to_c64() * self.sign.value(x0);
        let a = self.a.evaluate(x0, r).ok_or_else(|| Error::Domain("singular A".into()))?;
        let b = if r == 0.0 {
            0.0
        } else {
            self.b.evaluate(x0, r).ok_or_else(|| Error::Domain("singular B".into()))?
        };
        Ok((c * a, c * b))
    }

    pub fn evaluate(&self, x: &Paravector<f64>) -> Result<CliffordElement<C64>> {
        let r = x.radius();
        let (a, b) = self.evaluate_axial(x.x0, r)?;
        let mut out = CliffordElement::scalar(self.dim, a);
        if let Some(w) = x.direction() {
            let wc: Vec<C64> = w.iter().map(|v| C64::new(*v, 0.0)).collect();
            out = &out + &CliffordElement::vector(&wc).scale(&b);
        }
        Ok(out)
    }

    pub fn d_x0(&self) -> Self {
        AxialClosedForm {
            a: self.a.d_x0(),
            b: self.b.d_x0(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &ExactConstant) -> Self {
        AxialClosedForm {
            prefactor: &self.prefactor * c,
            ..self.clone()
        }
    }

    /// `D (A + w B) = (d_0 A - d_r B - (m-1) B / r) + w (d_0 B + d_r A)`.
    pub fn cauchy_riemann_defect(&self) -> (RadialExpr<Rational>, RadialExpr<Rational>) {
        let m1 = Rational::from_integer(((self.dim - 1) as i64).into());
        let scalar = self.a.d_x0().sub(&self.b.d_r()).sub(&self.b.shift(0, -1, 0).scale(&m1));
        let vector = self.b.d_x0().add(&self.a.d_r());
        (scalar, vector)
    }

    /// Exact monogenicity on the domain; the sign factor is locally constant there.
    pub fn is_monogenic(&self) -> bool {
        let (s, v) = self.cauchy_riemann_defect();
        s.is_identically_zero() && v.is_identically_zero()
    }

    /// The body `A + w B` as a polynomial in `x_0, x_1, ..., x_m`, when it is one.
    pub fn polynomial_body(&self) -> Option<CliffordPolynomial<Rational>> {
        axial_polynomial(self.dim, &self.a.to_polynomial()?, &self.b.to_polynomial()?)
    }
}

/// `sum a_{ij} x_0^i r^j + w sum b_{ij} x_0^i r^j` as a polynomial; `A` must
/// be even and `B` odd in `r`.
pub fn axial_polynomial(
    m: usize,
    a: &BTreeMap<(u32, u32), Rational>,
    b: &BTreeMap<(u32, u32), Rational>,
) -> Option<CliffordPolynomial<Rational>> {
    let mut p = CliffordPolynomial::zero(m);
    let x0_pow = |i: u32| {
        let mut e = vec![0; m + 1];
        e[0] = i;
        CliffordPolynomial::monomial(m, e, CliffordElement::one(m))
    };
    for ((i, j), c) in a {
        if j % 2 != 0 {
            return None;
        }
        p = p.add(&x0_pow(*i).mul(&radius_sq_power(m, j / 2)).scale(c));
    }
    let mut xvec = CliffordPolynomial::zero(m);
    for k in 1..=m {
        xvec = xvec.add(&CliffordPolynomial::variable(m, k).left_mul(&CliffordElement::generator(m, k)));
    }
    for ((i, j), c) in b {
        if j % 2 != 1 {
            return None;
        }
        p = p.add(&x0_pow(*i).mul(&radius_sq_power(m, j / 2)).mul(&xvec).scale(c));
    }
    Some(p)
}

/// `E(x) = conj(x) / (sigma_{m+1} |x|^{m+1})`.
pub fn cauchy_kernel(m: usize) -> Result<AxialClosedForm> {
    check_dim(m)?;
    let e = -(m as i32 + 1);
    Ok(AxialClosedForm {
        dim: m,
        prefactor: sphere_area(m as u32 + 1).inv(),
        sign: SignFactor::default(),
        a: RadialExpr::term(rint(1), 1, 0, e),
        b: RadialExpr::term(rint(-1), 0, 1, e),
        domain: Domain::PuncturedOrigin,
    })
}

/// `I[f](x) = conj(x)/|x|^{m+1} f(conj(x)/|x|^2)`, symbolically.
pub fn kelvin_inversion(f: &AxialClosedForm) -> AxialClosedForm {
    let e = -(f.dim as i32 + 1);
    // At y = conj(x)/|x|^2: y_0 = x_0/rho, |y| = r/rho, direction -w.
    let ay = f.a.kelvin_substitute();
    let by = f.b.kelvin_substitute().scale(&rint(-1));
    let x0 = RadialExpr::term(rint(1), 1, 0, e);
    let r = RadialExpr::term(rint(1), 0, 1, e);
    // (x_0 - r w)(A + w B) = (x_0 A + r B) + w (x_0 B - r A)
    AxialClosedForm {
        dim: f.dim,
        prefactor: f.prefactor.clone(),
        sign: f.sign,
        a: x0.mul(&ay).add(&r.mul(&by)),
        b: x0.mul(&by).sub(&r.mul(&ay)),
        domain: f.domain.intersect(Domain::PuncturedOrigin),
    }
}

/// Kelvin inversion of an arbitrary numeric function.
pub fn kelvin_evaluate<F>(f: F, x: &Paravector<f64>) -> Result<CliffordElement<C64>>
where
    F: Fn(&Paravector<f64>) -> Result<CliffordElement<C64>>,
{
    let m = x.dim();
    let rho = x.norm_sq();
    if rho == 0.0 {
        return Err(Error::Domain("Kelvin inversion at the origin".into()));
    }
    let y = Paravector::new(x.x0 / rho, x.x.iter().map(|v| -v / rho).collect());
    let w = rho.powf(-(m as f64 + 1.0) / 2.0);
    let pre = x.conj().to_element().map(|v| C64::new(v * w, 0.0));
    Ok(&pre * &f(&y)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonogenicMonomial {
    /// `-k` for `P^(-k)`, `k - 1` for `P^(k-1)`.
    pub order: i64,
    pub dim: usize,
    pub closed_form: AxialClosedForm,
}

impl MonogenicMonomial {
    /// For nonnegative order: the constant and polynomial with
    /// `P = constant * polynomial`.
    pub fn polynomial(&self) -> Option<(ExactConstant, CliffordPolynomial<Rational>)> {
        if self.order < 0 {
            return None;
        }
        // Odd sign powers are not polynomial.
        if !self.closed_form.sign.is_trivial() {
            return None;
        }
        Some((self.closed_form.prefactor.clone(), self.closed_form.polynomial_body()?))
    }
}

/// `P^(-k) = (-1)^{k-1} sigma_{m+1} lambda_m / (k-1)! d^{k-1} E`, and
/// `P^(k-1) = I[P^(-k)]`.
pub fn monogenic_monomial(m: usize, order: i64) -> Result<MonogenicMonomial> {
    check_dim(m)?;
    let k = if order < 0 { -order } else { order + 1 } as u32;
    let e = cauchy_kernel(m)?;
    let sign = if (k - 1).is_multiple_of(2) { rint(1) } else { rint(-1) };
    let coeff = sign / Rational::from_integer(factorial((k - 1) as u64));
    // sigma_{m+1} cancels the 1/sigma_{m+1} inside E.
    let neg = AxialClosedForm {
        prefactor: lambda(m as u32).scale(&coeff),
        a: e.a.d_x0_n(k - 1),
        b: e.b.d_x0_n(k - 1),
        ..e
    };
    let closed_form = if order < 0 { neg } else { kelvin_inversion(&neg) };
    Ok(MonogenicMonomial {
        order,
        dim: m,
        closed_form,
    })
}

/// `c1 p1 == c2 p2` for exact constants and rational polynomials.
pub fn scaled_polynomials_equal(
    c1: &ExactConstant,
    p1: &CliffordPolynomial<Rational>,
    c2: &ExactConstant,
    p2: &CliffordPolynomial<Rational>,
) -> bool {
    let z1 = c1.is_zero() || p1.is_zero();
    let z2 = c2.is_zero() || p2.is_zero();
    if z1 || z2 {
        return z1 && z2;
    }
    match (c1 * &c2.inv()).as_rational() {
        Some(q) => p1.scale(&q) == *p2,
        None => false,
    }
}

/// Numeric size of `c1 p1 - c2 p2`, for reporting failures.
fn scaled_difference(
    c1: &ExactConstant,
    p1: &CliffordPolynomial<Rational>,
    c2: &ExactConstant,
    p2: &CliffordPolynomial<Rational>,
) -> f64 {
    let a = p1.map_scalars(|s| s.to_c64() * c1.to_c64());
    let b = p2.map_scalars(|s| s.to_c64() * c2.to_c64());
    a.sub(&b).max_abs_coeff()
}

/// How many GCK terms the numeric identities keep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Truncation {
    Fixed(usize),
    /// Smallest order whose certified tail is below the tolerance.
    Certified { tol: f64, max_order: usize },
}

impl Truncation {
    pub fn order(self, f0: &LaurentPoly<Rational>, m: usize, x0: f64, r: f64) -> Result<usize> {
        match self {
            Truncation::Fixed(n) => Ok(n),
            Truncation::Certified { tol, max_order } => {
                choose_gck_order(f0, m, x0, r, tol, max_order)
            }
        }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::Certified {
            tol: 1e-12,
            max_order: 200,
        }
    }
}

/// Points with `|x| / |x_0| = ratio` on both half-axes.
pub fn probe_points(m: usize, ratio: f64) -> Vec<Paravector<f64>> {
    let mut dir: Vec<f64> = (1..=m).map(|j| 1.0 + 0.5 * j as f64).collect();
    let n = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    dir.iter_mut().for_each(|v| *v /= n);
    [1.0, -1.0, 1.75, -0.6]
        .iter()
        .map(|&x0: &f64| Paravector::new(x0, dir.iter().map(|v| v * ratio * x0.abs()).collect()))
        .collect()
}

/// The four identities linking `P^(-k)`, `P^(k-1)`, GCK and `Q_{k-1}^m`.
pub fn verify_prop45(m: usize, k: u32, trunc: Truncation, ratio: f64) -> Result<Vec<IdentityReport>> {
    check_dim(m)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k >= 1".into()));
    }
    let lam = lambda(m as u32);
    let mf = Rational::from_integer(factorial((m - 1) as u64));
    let c = lam.scale(
        &(Rational::from_integer(factorial((m + k as usize - 2) as u64))
            / (Rational::from_integer(factorial((k - 1) as u64)) * &mf)),
    );
    let base = lam.scale(&(Rational::one() / &mf));
    let neg = monogenic_monomial(m, -(k as i64))?;
    let pos = monogenic_monomial(m, k as i64 - 1)?;
    let mut out = Vec::new();

    // Negative side, numerically on |x| < |x_0|.
    let direct = LaurentPoly::power(-(k as i32) - m as i32 + 1);
    let via_derivative = LaurentPoly::<Rational>::power(-(k as i32)).nth_derivative(m as u32 - 1);
    let cases = [
        ("P^(-k) = c sgn(x0)^(m-1) GCK[x0^(-k-m+1)]", &direct, &c, SignFactor::sgn_x0(m as u32 - 1)),
        (
            "P^(-k) = lambda/(m-1)! sgn(-x0)^(m-1) GCK[d^(m-1) x0^(-k)]",
            &via_derivative,
            &base,
            SignFactor::sgn_minus_x0(m as u32 - 1),
        ),
    ];
    for (name, f0, pre, sign) in cases {
        let mut worst: f64 = 0.0;
        let mut orders = Vec::new();
        for x in probe_points(m, ratio) {
            let n = trunc.order(f0, m, x.x0, x.radius())?;
            orders.push(n);
            let series = gck_extension(&f0.map(rational_to_f64), m, n);
            let rhs = series
                .evaluate(&x)?
                .to_c64()
                .scale(&(pre.to_c64() * sign.value(x.x0)));
            let lhs = neg.closed_form.evaluate(&x)?;
            // Relative once |P| > 1; the values grow like |x|^(-(m+k-1)).
            worst = worst.max(lhs.distance(&rhs) / lhs.norm().max(1.0));
        }
        let max_n = orders.iter().max().copied().unwrap_or(0);
        out.push(
            IdentityReport::numeric(name, m, k as i64, worst, 1e-8)
                .with_note(format!("ratio {ratio}, N = {max_n}, error / max(1, |P|)")),
        );
    }

    // Nonnegative side, exactly.
    let (pc, pbody) = pos
        .polynomial()
        .ok_or_else(|| Error::Unsupported("P^(k-1) did not reduce to a polynomial".into()))?;
    let q = appell_q(m, k - 1);
    out.push(IdentityReport::exact(
        "P^(k-1) = c Q_(k-1)^m",
        m,
        k as i64,
        scaled_polynomials_equal(&pc, &pbody, &c, &q),
        scaled_difference(&pc, &pbody, &c, &q),
    ));
    let g = gck_polynomial(
        &LaurentPoly::<Rational>::power(m as i32 + k as i32 - 2).nth_derivative(m as u32 - 1),
        m,
    )?
    .to_polynomial()?;
    out.push(IdentityReport::exact(
        "P^(k-1) = lambda/(m-1)! GCK[d^(m-1) x0^(m+k-2)]",
        m,
        k as i64,
        scaled_polynomials_equal(&pc, &pbody, &base, &g),
        scaled_difference(&pc, &pbody, &base, &g),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{finite_difference, OperatorTag};
    use crate::scalar::rat;

    fn pt(x0: f64, x: &[f64]) -> Paravector<f64> {
        Paravector::new(x0, x.to_vec())
    }

    #[test]
    fn cauchy_kernel_is_monogenic_and_matches_axis_value() {
        for m in 1..=5 {
            let e = cauchy_kernel(m).unwrap();
            let x = pt(1.0, &[0.3, -0.2, 0.1, 0.05, -0.4][..m]);
            let d = finite_difference(OperatorTag::CauchyRiemann, |y| e.evaluate(y), &x, 1e-5).unwrap();
            assert!(d.max_abs() < 1e-6, "m={m} {}", d.max_abs());
            for x0 in [0.7f64, -1.3] {
                let (a, b) = e.evaluate_axial(x0, 0.0).unwrap();
                let expect = x0.signum().powi(m as i32 + 1) * x0.powi(-(m as i32))
                    / sphere_area(m as u32 + 1).to_c64().re;
                assert!((a.re - expect).abs() < 1e-13 && b.norm() == 0.0);
            }
            assert!(e.evaluate(&pt(0.0, &vec![0.0; m])).is_err());
        }
    }

    #[test]
    fn kelvin_symbolic_matches_numeric() {
        let m = 3;
        let p = monogenic_monomial(m, -2).unwrap().closed_form;
        let ip = kelvin_inversion(&p);
        let x = pt(0.4, &[0.2, -0.5, 0.3]);
        let num = kelvin_evaluate(|y| p.evaluate(y), &x).unwrap();
        assert!(num.distance(&ip.evaluate(&x).unwrap()) < 1e-12);
        // I[1] = sigma_{m+1} E
        let one = AxialClosedForm {
            dim: m,
            prefactor: ExactConstant::one(),
            sign: SignFactor::default(),
            a: RadialExpr::constant(rint(1)),
            b: RadialExpr::zero(),
            domain: Domain::Everywhere,
        };
        let e = cauchy_kernel(m).unwrap().scale(&sphere_area(4));
        assert!(kelvin_inversion(&one).evaluate(&x).unwrap().distance(&e.evaluate(&x).unwrap()) < 1e-14);
    }

    #[test]
    fn kelvin_is_an_involution_on_q2() {
        let q = appell_q(3, 2);
        let f = |y: &Paravector<f64>| q.evaluate_c64(y);
        let x = pt(0.9, &[-0.3, 0.25, 0.6]);
        let twice = kelvin_evaluate(|y| kelvin_evaluate(f, y), &x).unwrap();
        assert!(twice.distance(&f(&x).unwrap()) < 1e-10);
    }

    #[test]
    fn positive_monomials_are_appell_multiples() {
        let p = monogenic_monomial(3, 0).unwrap();
        let (c, body) = p.polynomial().unwrap();
        assert_eq!(c, ExactConstant::integer(4));
        assert_eq!(body, CliffordPolynomial::one(3));
        let p1 = monogenic_monomial(2, 1).unwrap();
        let (c1, body1) = p1.polynomial().unwrap();
        // lambda_2 * 2!/(1! 1!) Q_1^2
        assert!(scaled_polynomials_equal(
            &c1,
            &body1,
            &lambda(2).scale(&rat(2, 1)),
            &appell_q(2, 1)
        ));
    }

    #[test]
    fn monogenic_monomial_identities_small_cases() {
        for (m, k) in [(2, 1), (3, 1), (3, 2), (2, 3)] {
            for r in verify_prop45(m, k, Truncation::default(), 0.4).unwrap() {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn negative_monomial_is_monogenic() {
        let p = monogenic_monomial(4, -3).unwrap().closed_form;
        let x = pt(-0.8, &[0.3, 0.1, -0.2, 0.4]);
        let d = finite_difference(OperatorTag::CauchyRiemann, |y| p.evaluate(y), &x, 1e-5).unwrap();
        assert!(d.max_abs() < 1e-6);
    }

    #[test]
    fn zero_constant_guard() {
        assert!(!scaled_polynomials_equal(
            &ExactConstant::one(),
            &CliffordPolynomial::one(2),
            &ExactConstant::integer(0),
            &CliffordPolynomial::one(2)
        ));
    }
}
