//! The dual Radon transform `R[f](x_0, x) = avg_w f(x_0 + <x, w> w)` and the
//! plane-wave decompositions built on it.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::clifford::{CliffordElement, Paravector};
use crate::constants::{lambda, sphere_area, ExactConstant};
use crate::error::{check_dim, Error, Result};
use crate::extension::{gck_polynomial, SliceExtension};
use crate::fueter::{laplacian_power_route, rational_multiple, LaplacianRoute};
use crate::constants::gamma_m;
use crate::kernels::{cauchy_kernel, monogenic_monomial};
use crate::laurent::LaurentPoly;
use crate::poly::{CliffordPolynomial, OperatorTag};
use crate::report::IdentityReport;
use crate::scalar::{pochhammer, rational_to_f64, rint, Rational, C64};
use crate::sphere::{compositions, multinomial, sphere_integrate_fn, sphere_monomial_average, SphereRule};

/// Exact dual Radon transform of a polynomial: each `x_j` becomes
/// `w_j <x, w>`, then the sphere average is taken monomial by monomial.
pub fn dual_radon_polynomial(p: &CliffordPolynomial<Rational>) -> CliffordPolynomial<Rational> {
    let m = p.dim();
    let mut out = CliffordPolynomial::zero(m);
    // The image of a vector monomial x^b depends only on b.
    let mut cache: BTreeMap<Vec<u32>, Vec<(Vec<u32>, Rational)>> = BTreeMap::new();
    for (exps, c) in p.terms() {
        let b = exps[1..].to_vec();
        let image = cache.entry(b.clone()).or_insert_with(|| radon_of_vector_monomial(&b));
        for (xe, q) in image.iter() {
            let mut full = vec![exps[0]];
            full.extend_from_slice(xe);
            out.add_term(full, c.scale(q));
        }
    }
    out
}

/// `avg_w w^b <x, w>^{|b|} = sum_c multinomial(c) avg(w^{b+c}) x^c`.
fn radon_of_vector_monomial(b: &[u32]) -> Vec<(Vec<u32>, Rational)> {
    let n: u32 = b.iter().sum();
    compositions(b.len(), n)
        .into_iter()
        .filter_map(|c| {
            let sum: Vec<u32> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
            let v = multinomial(&c) * sphere_monomial_average(&sum);
            (!v.is_zero()).then_some((c, v))
        })
        .collect()
}

/// Quadrature value of `R[f](x)` together with a standard error for Monte
/// Carlo rules.
pub fn dual_radon_numeric<F>(f: F, x: &Paravector<f64>, rule: &SphereRule) -> Result<(CliffordElement<C64>, Option<f64>)>
where
    F: Fn(&Paravector<f64>) -> Result<CliffordElement<C64>>,
{
    let m = x.dim();
    if rule.dim != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: rule.dim,
        });
    }
    let integral = sphere_integrate_fn(rule, |w| {
        let t: f64 = x.x.iter().zip(w).map(|(a, b)| a * b).sum();
        f(&Paravector::new(x.x0, w.iter().map(|v| t * v).collect()))
    })?;
    let area = rule.area().to_c64().re;
    let inv = C64::new(1.0 / area, 0.0);
    Ok((integral.to_c64().scale(&inv), integral.std_error().map(|s| s / area)))
}

/// Evaluates `S[f_0]` numerically from the slice parts.
pub fn slice_evaluator(f0: &LaurentPoly<Rational>, m: usize) -> impl Fn(&Paravector<f64>) -> Result<CliffordElement<C64>> {
    let s = SliceExtension::new(f0.map(rational_to_f64), m);
    move |x: &Paravector<f64>| Ok(s.evaluate(x)?.to_c64())
}

/// `R[S[f_0]] = GCK[f_0]`, exactly or at a point.
pub fn plane_wave_gck_check(
    f0: &LaurentPoly<Rational>,
    m: usize,
    rule: &SphereRule,
    point: Option<&Paravector<f64>>,
) -> Result<IdentityReport> {
    check_dim(m)?;
    if !f0.is_polynomial() {
        return Err(Error::Unsupported("plane-wave check needs a polynomial".into()));
    }
    let k = f0.max_exponent().unwrap_or(0) as i64;
    let gck = gck_polynomial(f0, m)?.to_polynomial()?;
    let name = "R[S[f]] = GCK[f]";
    if rule.is_exact() {
        let lhs = dual_radon_polynomial(&SliceExtension::new(f0.clone(), m).to_polynomial()?);
        let diff = lhs.sub(&gck);
        return Ok(IdentityReport::exact(name, m, k, diff.is_zero(), diff.max_abs_coeff()));
    }
    let x = point.ok_or_else(|| Error::InvalidArgument("numeric rule needs a point".into()))?;
    let (lhs, se) = dual_radon_numeric(slice_evaluator(f0, m), x, rule)?;
    let rhs = gck.evaluate_c64(x)?;
    let residual = lhs.distance(&rhs);
    let (tol, note) = match se {
        Some(se) => ((5.0 * se).max(1e-11), format!("{} with std error {se:.3e}", rule.label())),
        None => (1e-9, rule.label()),
    };
    Ok(IdentityReport::numeric(name, m, k, residual, tol).with_note(note))
}

/// `z^n` for `z = x_0 + t w` computed in `span{1, w}` as a complex power,
/// returned as `(re, im)` with the value `re + im w`.
fn plane_power(x0: f64, t: f64, n: i32) -> (f64, f64) {
    let z = C64::new(x0, t).powi(n);
    (z.re, z.im)
}

fn plane_wave_kernel(m: usize, x: &Paravector<f64>, power: i32, rule: &SphereRule) -> Result<CliffordElement<C64>> {
    check_dim(m)?;
    if x.dim() != m || rule.dim != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: x.dim().min(rule.dim),
        });
    }
    if rule.is_exact() {
        return Err(Error::Unsupported("the plane-wave kernel needs a numeric rule".into()));
    }
    let r = x.radius();
    if x.x0 == 0.0 || r >= x.x0.abs() {
        return Err(Error::Domain(format!(
            "plane-wave integrand needs |x| < |x_0|, got |x| = {r}, x_0 = {}",
            x.x0
        )));
    }
    let integral = sphere_integrate_fn(rule, |w| {
        let t: f64 = x.x.iter().zip(w).map(|(a, b)| a * b).sum();
        let (re, im) = plane_power(x.x0, t, power);
        let mut v = CliffordElement::scalar(m, C64::new(re, 0.0));
        for (j, wj) in w.iter().enumerate() {
            v.add_term(crate::clifford::Blade::generator(j + 1), C64::new(im * wj, 0.0));
        }
        Ok(v)
    })?;
    let inv = C64::new(1.0 / rule.area().to_c64().re, 0.0);
    Ok(integral.to_c64().scale(&inv))
}

/// `E(x) = sgn(x_0)^{m+1} / sigma_{m+1} avg_w (x_0 + <x,w> w)^{-m}`.
pub fn cauchy_plane_wave(m: usize, x: &Paravector<f64>, rule: &SphereRule) -> Result<CliffordElement<C64>> {
    let avg = plane_wave_kernel(m, x, -(m as i32), rule)?;
    let s = x.x0.signum().powi(m as i32 + 1) / sphere_area(m as u32 + 1).to_c64().re;
    Ok(avg.scale(&C64::new(s, 0.0)))
}

pub fn cauchy_plane_wave_check(m: usize, x: &Paravector<f64>, rule: &SphereRule, tol: f64) -> Result<IdentityReport> {
    let lhs = cauchy_plane_wave(m, x, rule)?;
    let rhs = cauchy_kernel(m)?.evaluate(x)?;
    Ok(IdentityReport::numeric("E = plane-wave average", m, -1, lhs.distance(&rhs), tol).with_note(rule.label()))
}

/// `P^(-k) = lambda_m (m)_{k-1}/(k-1)! sgn(x_0)^{m-1} avg_w (x_0 + <x,w> w)^{-(m+k-1)}`.
pub fn monomial_plane_wave(m: usize, k: u32, x: &Paravector<f64>, rule: &SphereRule) -> Result<CliffordElement<C64>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let avg = plane_wave_kernel(m, x, -((m + k as usize - 1) as i32), rule)?;
    let q = pochhammer(&rint(m as i64), k as u64 - 1) / Rational::from_integer(crate::scalar::factorial(k as u64 - 1));
    let c = lambda(m as u32).scale(&q).to_c64() * x.x0.signum().powi(m as i32 - 1);
    Ok(avg.scale(&c))
}

pub fn monomial_plane_wave_check(m: usize, k: u32, x: &Paravector<f64>, rule: &SphereRule, tol: f64) -> Result<IdentityReport> {
    let lhs = monomial_plane_wave(m, k, x, rule)?;
    let rhs = monogenic_monomial(m, -(k as i64))?.closed_form.evaluate(x)?;
    Ok(
        IdentityReport::numeric("P^(-k) = plane-wave average", m, -(k as i64), lhs.distance(&rhs), tol)
            .with_note(rule.label()),
    )
}

/// `D R[S[f_0]] = 0` exactly.
pub fn radon_monogenic_check(f0: &LaurentPoly<Rational>, m: usize) -> Result<IdentityReport> {
    let img = dual_radon_polynomial(&SliceExtension::new(f0.clone(), m).to_polynomial()?);
    let d = img.apply_operator(OperatorTag::CauchyRiemann);
    let k = f0.max_exponent().unwrap_or(0) as i64;
    Ok(IdentityReport::exact("D R[S[f]] = 0", m, k, d.is_zero(), d.max_abs_coeff()))
}

/// The diagram `Delta^{(m-1)/2} S = gamma_m GCK d^{m-1} = gamma_m R S d^{m-1}`.
/// The middle/right equality is checked for every `m`; the left one only for odd `m`.
pub fn fueter_radon_diagram(f0: &LaurentPoly<Rational>, m: usize) -> Result<Vec<IdentityReport>> {
    check_dim(m)?;
    let k = f0.max_exponent().unwrap_or(0) as i64;
    let d = f0.nth_derivative(m as u32 - 1);
    let middle = gck_polynomial(&d, m)?.to_polynomial()?;
    let right = dual_radon_polynomial(&SliceExtension::new(d, m).to_polynomial()?);
    let diff = middle.sub(&right);
    let mut out = vec![IdentityReport::exact(
        "GCK[d^(m-1) f] = R[S[d^(m-1) f]]",
        m,
        k,
        diff.is_zero(),
        diff.max_abs_coeff(),
    )];
    if m % 2 == 1 {
        let LaplacianRoute::Polynomial(left) = laplacian_power_route(m, f0)? else {
            return Err(Error::Unsupported("polynomial input expected".into()));
        };
        let g: ExactConstant = gamma_m(m as u32);
        let scaled = rational_multiple(&g, &right)
            .ok_or_else(|| Error::Unsupported("gamma_m is not rational".into()))?;
        let diff = left.sub(&scaled);
        out.push(IdentityReport::exact(
            "Delta^((m-1)/2) S[f] = gamma_m R[S[d^(m-1) f]]",
            m,
            k,
            diff.is_zero(),
            diff.max_abs_coeff(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::appell_q;
    use crate::scalar::rat;

    #[test]
    fn radon_of_x0_is_appell() {
        let p = SliceExtension::new(LaurentPoly::power(1), 3).to_polynomial().unwrap();
        let img = dual_radon_polynomial(&p);
        // x_0 + x/3
        assert_eq!(img.coeff(&[0, 1, 0, 0]), CliffordElement::generator(3, 1).scale(&rat(1, 3)));
        for m in 1..=4 {
            for k in 0..=5 {
                let p = SliceExtension::new(LaurentPoly::power(k), m).to_polynomial().unwrap();
                assert_eq!(dual_radon_polynomial(&p), appell_q(m, k as u32), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn cauchy_plane_waves() {
        let x = Paravector::new(1.0, vec![0.2, 0.1, 0.0]);
        let r = cauchy_plane_wave_check(3, &x, &SphereRule::gauss(3, 24), 1e-8).unwrap();
        assert!(r.passed(), "{r:?}");
        let x = Paravector::new(-1.0, vec![0.1, 0.1]);
        let r = cauchy_plane_wave_check(2, &x, &SphereRule::gauss(2, 24), 1e-6).unwrap();
        assert!(r.passed(), "{r:?}");
        let x = Paravector::new(1.0, vec![0.3]);
        let r = cauchy_plane_wave_check(1, &x, &SphereRule::gauss(1, 1), 1e-12).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(cauchy_plane_wave(2, &Paravector::new(0.1, vec![0.3, 0.0]), &SphereRule::gauss(2, 4)).is_err());
    }

    #[test]
    fn monomial_plane_waves() {
        for m in 1..=4 {
            for k in 1..=3 {
                for x0 in [0.9, -1.3] {
                    let mut xs = vec![0.0; m];
                    xs[0] = 0.3;
                    let x = Paravector::new(x0, xs);
                    let r = monomial_plane_wave_check(m, k, &x, &SphereRule::gauss(m, 30), 1e-8).unwrap();
                    assert!(r.passed(), "{r:?}");
                }
            }
        }
    }

    #[test]
    fn diagram_and_monogenicity() {
        for m in 1..=5 {
            for k in 0..=6 {
                let f = LaurentPoly::power(k);
                assert!(radon_monogenic_check(&f, m).unwrap().passed());
                for r in fueter_radon_diagram(&f, m).unwrap() {
                    assert!(r.passed(), "{r:?}");
                }
            }
        }
    }

    #[test]
    fn numeric_plane_wave() {
        let x = Paravector::new(1.0, vec![0.3, 0.4]);
        let f = LaurentPoly::power(3);
        let r = plane_wave_gck_check(&f, 2, &SphereRule::gauss(2, 4), Some(&x)).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = plane_wave_gck_check(&f, 2, &SphereRule::monte_carlo(2, 20000, 7), Some(&x)).unwrap();
        assert!(r.residual < 3e-2, "{r:?}");
    }
}
