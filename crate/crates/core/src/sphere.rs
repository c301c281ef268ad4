//! Integration over the unit sphere `S^{m-1}`.
//!
//! Monomials integrate exactly:
//! `int w^a dS = 2 prod Gamma((a_i+1)/2) / Gamma((|a|+m)/2)` for even `a`, else 0.
//! Dividing by the area leaves a rational average, which is how exact
//! integrals are stored.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::{FiniteAboveNegOneF64, GaussJacobi, GaussLegendre};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::clifford::CliffordElement;
use crate::constants::{gamma_half, sphere_area, ExactConstant};
use crate::error::{check_dim, Error, Result};
use crate::scalar::{factorial, pochhammer, rat, Rational, Scalar, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereRuleKind {
    ExactMonomial,
    /// Product rule: `level` Gauss-Jacobi nodes per polar angle, `2 level`
    /// equispaced azimuths. Exact on polynomials of degree `< 2 level`.
    ProductGauss(usize),
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphereRule {
    pub dim: usize,
    pub kind: SphereRuleKind,
}

impl SphereRule {
    pub fn exact(m: usize) -> Self {
        SphereRule {
            dim: m,
            kind: SphereRuleKind::ExactMonomial,
        }
    }

    pub fn gauss(m: usize, level: usize) -> Self {
        SphereRule {
            dim: m,
            kind: SphereRuleKind::ProductGauss(level),
        }
    }

    pub fn monte_carlo(m: usize, samples: usize, seed: u64) -> Self {
        SphereRule {
            dim: m,
            kind: SphereRuleKind::MonteCarlo { samples, seed },
        }
    }

    /// Parses `exact`, `gauss:L` or `mc:N:SEED`.
    pub fn parse(m: usize, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad number {t:?} in rule {s:?}")))
        };
        match parts.as_slice() {
            ["exact"] => Ok(Self::exact(m)),
            ["gauss", l] => {
                let l = num(l)? as usize;
                if l == 0 {
                    return Err(Error::InvalidArgument("gauss level must be positive".into()));
                }
                Ok(Self::gauss(m, l))
            }
            ["mc", n, seed] => {
                let n = num(n)? as usize;
                if n < 2 {
                    return Err(Error::InvalidArgument("need at least two samples".into()));
                }
                Ok(Self::monte_carlo(m, n, num(seed)?))
            }
            _ => Err(Error::Parse(format!("unknown sphere rule {s:?}"))),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == SphereRuleKind::ExactMonomial
    }

    pub fn label(&self) -> String {
        match self.kind {
            SphereRuleKind::ExactMonomial => "exact".into(),
            SphereRuleKind::ProductGauss(l) => format!("gauss:{l}"),
            SphereRuleKind::MonteCarlo { samples, seed } => format!("mc:{samples}:{seed}"),
        }
    }

    pub fn area(&self) -> ExactConstant {
        sphere_area(self.dim as u32)
    }

    /// Nodes and weights; weights sum to the sphere area.
    pub fn nodes(&self) -> Result<Vec<(Vec<f64>, f64)>> {
        check_dim(self.dim)?;
        match self.kind {
            SphereRuleKind::ExactMonomial => Err(Error::Unsupported(
                "the exact rule has no nodes; integrate polynomials instead".into(),
            )),
            SphereRuleKind::ProductGauss(level) => Ok(product_gauss_nodes(self.dim, level)),
            SphereRuleKind::MonteCarlo { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let w = self.area().to_c64().re / samples as f64;
                Ok((0..samples)
                    .map(|_| (random_direction(self.dim, &mut rng), w))
                    .collect())
            }
        }
    }
}

fn random_direction(m: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..m).map(|_| StandardNormal.sample(rng)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Product Gauss level for the numeric checks; node counts grow like `level^(m-1)`.
pub fn default_gauss_level(m: usize) -> usize {
    match m {
        0..=4 => 24,
        5 => 16,
        _ => 10,
    }
}

fn product_gauss_nodes(m: usize, level: usize) -> Vec<(Vec<f64>, f64)> {
    if m == 1 {
        return vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)];
    }
    let naz = 2 * level;
    let azimuths: Vec<(f64, f64)> = (0..naz)
        .map(|i| {
            let phi = 2.0 * PI * i as f64 / naz as f64;
            (phi.cos(), phi.sin())
        })
        .collect();
    let daz = 2.0 * PI / naz as f64;
    // Polar angle i (i = 1..m-2) carries sin^(m-1-i); u = cos(theta).
    let polar: Vec<Vec<(f64, f64)>> = (1..=m.saturating_sub(2))
        .map(|i| {
            let k = (m - 1 - i) as f64;
            let a = (k - 1.0) / 2.0;
            let deg = NonZeroUsize::new(level).expect("level >= 1");
            if a == 0.0 {
                GaussLegendre::new(deg).iter().map(|(x, w)| (*x, *w)).collect()
            } else {
                let ab = FiniteAboveNegOneF64::new(a).expect("a > -1");
                GaussJacobi::new(deg, ab, ab).iter().map(|(x, w)| (*x, *w)).collect()
            }
        })
        .collect();
    let mut out = vec![(Vec::with_capacity(m), 1.0, 1.0)];
    for rule in &polar {
        let mut next = Vec::with_capacity(out.len() * rule.len());
        for (coords, weight, sin_prod) in &out {
            for (u, w) in rule {
                let mut c = coords.clone();
                c.push(sin_prod * u);
                next.push((c, weight * w, sin_prod * (1.0 - u * u).max(0.0).sqrt()));
            }
        }
        out = next;
    }
    let mut nodes = Vec::with_capacity(out.len() * naz);
    for (coords, weight, sin_prod) in out {
        for (c, s) in &azimuths {
            let mut v = coords.clone();
            v.push(sin_prod * c);
            v.push(sin_prod * s);
            nodes.push((v, weight * daz));
        }
    }
    nodes
}

/// `int_{S^{m-1}} w^a dS`.
pub fn sphere_monomial_integral(exps: &[u32]) -> ExactConstant {
    if exps.iter().any(|a| a % 2 == 1) {
        return ExactConstant::integer(0);
    }
    let m = exps.len() as u32;
    let total: u32 = exps.iter().sum();
    let mut num = ExactConstant::integer(2);
    for a in exps {
        num = &num * &gamma_half(a + 1);
    }
    &num * &gamma_half(total + m).inv()
}

/// `(1/sigma_m) int w^a dS = prod (1/2)_{a_i/2} / (m/2)_{|a|/2}` for even `a`.
pub fn sphere_monomial_average(exps: &[u32]) -> Rational {
    if exps.iter().any(|a| a % 2 == 1) {
        return Rational::zero();
    }
    let m = exps.len() as i64;
    let half = rat(1, 2);
    let num = exps
        .iter()
        .fold(Rational::one(), |acc, a| acc * pochhammer(&half, (*a / 2) as u64));
    let k: u32 = exps.iter().sum::<u32>() / 2;
    num / pochhammer(&rat(m, 2), k as u64)
}

/// A polynomial in `w_1..w_m` with Clifford coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SpherePolynomial<S> {
    pub dim: usize,
    pub terms: BTreeMap<Vec<u32>, CliffordElement<S>>,
}

impl<S: Scalar> SpherePolynomial<S> {
    pub fn new(dim: usize) -> Self {
        SpherePolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: CliffordElement<S>) {
        assert_eq!(exps.len(), self.dim);
        let v = match self.terms.remove(&exps) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(exps, v);
        }
    }

    pub fn evaluate(&self, w: &[f64]) -> CliffordElement<C64> {
        let mut out = CliffordElement::zero(self.dim);
        for (e, c) in &self.terms {
            let v: f64 = e.iter().zip(w).map(|(a, x)| x.powi(*a as i32)).product();
            out = &out + &c.to_c64().scale(&C64::new(v, 0.0));
        }
        out
    }
}

/// Result of integrating over the sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum SphereIntegral {
    /// `sigma_m * average`.
    Exact {
        area: ExactConstant,
        average: CliffordElement<Rational>,
    },
    Numeric {
        value: CliffordElement<C64>,
        /// Monte Carlo standard error of the largest coefficient.
        std_error: Option<f64>,
    },
}

impl SphereIntegral {
    pub fn to_c64(&self) -> CliffordElement<C64> {
        match self {
            SphereIntegral::Exact { area, average } => average.to_c64().scale(&area.to_c64()),
            SphereIntegral::Numeric { value, .. } => value.clone(),
        }
    }

    pub fn std_error(&self) -> Option<f64> {
        match self {
            SphereIntegral::Exact { .. } => Some(0.0),
            SphereIntegral::Numeric { std_error, .. } => *std_error,
        }
    }
}

/// Integrates a polynomial in `w` under the rule.
pub fn sphere_integrate(p: &SpherePolynomial<Rational>, rule: &SphereRule) -> Result<SphereIntegral> {
    if p.dim != rule.dim {
        return Err(Error::DimensionMismatch {
            expected: rule.dim,
            found: p.dim,
        });
    }
    if rule.is_exact() {
        let mut avg = CliffordElement::zero(p.dim);
        for (e, c) in &p.terms {
            avg = &avg + &c.scale(&sphere_monomial_average(e));
        }
        return Ok(SphereIntegral::Exact {
            area: rule.area(),
            average: avg,
        });
    }
    sphere_integrate_fn(rule, |w| Ok(p.evaluate(w)))
}

/// Integrates an arbitrary function with a numeric rule.
pub fn sphere_integrate_fn<F>(rule: &SphereRule, f: F) -> Result<SphereIntegral>
where
    F: Fn(&[f64]) -> Result<CliffordElement<C64>>,
{
    let nodes = rule.nodes()?;
    let m = rule.dim;
    let mut sum = CliffordElement::zero(m);
    let mut sq: BTreeMap<crate::clifford::Blade, (f64, f64)> = BTreeMap::new();
    for (w, wt) in &nodes {
        let v = f(w)?;
        for (b, c) in v.terms() {
            let e = sq.entry(*b).or_insert((0.0, 0.0));
            e.0 += c.re * c.re;
            e.1 += c.im * c.im;
        }
        sum = &sum + &v.scale(&C64::new(*wt, 0.0));
    }
    let std_error = match rule.kind {
        SphereRuleKind::MonteCarlo { samples, .. } => {
            let n = samples as f64;
            let area = rule.area().to_c64().re;
            let mean = sum.scale(&C64::new(1.0 / area, 0.0));
            let mut worst: f64 = 0.0;
            for (b, (s_re, s_im)) in &sq {
                let mu = mean.coeff(*b);
                let var = (s_re / n - mu.re * mu.re).max(0.0) + (s_im / n - mu.im * mu.im).max(0.0);
                worst = worst.max((var / (n - 1.0)).sqrt() * area);
            }
            Some(worst)
        }
        _ => None,
    };
    Ok(SphereIntegral::Numeric {
        value: sum,
        std_error,
    })
}

/// All exponent vectors of length `m` with total `n`.
pub fn compositions(m: usize, n: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(m - 1, n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn multinomial(exps: &[u32]) -> Rational {
    let n: u32 = exps.iter().sum();
    let den = exps
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, a| acc * factorial(*a as u64));
    Rational::new(factorial(n as u64), den)
}

/// Funk-Hecke constants: `int <x,w>^j dS = C0 |x|^j` and
/// `int <x,w>^j w dS = C1 |x|^(j-1) x`.
pub fn funk_hecke_constants(m: usize, j: u32) -> Result<(ExactConstant, ExactConstant)> {
    check_dim(m)?;
    let area = sphere_area(m as u32);
    // Moments as polynomials in x, coefficient of x_1^j (resp. x_1^j e_1).
    let moment = |extra: Option<usize>| -> BTreeMap<Vec<u32>, Rational> {
        let mut out = BTreeMap::new();
        for b in compositions(m, j) {
            let mut a = b.clone();
            if let Some(k) = extra {
                a[k] += 1;
            }
            let v = multinomial(&b) * sphere_monomial_average(&a);
            if !v.is_zero() {
                out.insert(b, v);
            }
        }
        out
    };
    let mut c0 = moment(None);
    let mut lead = vec![0; m];
    lead[0] = j;
    let c0v = c0.remove(&lead).unwrap_or_else(Rational::zero);
    let c1v = moment(Some(0)).get(&lead).cloned().unwrap_or_else(Rational::zero);
    Ok((area.scale(&c0v), area.scale(&c1v)))
}

/// Compares the exact Funk-Hecke constants with a Monte Carlo estimate.
///
/// With `|x| = 1`, `C0` is `sigma_m avg <x,w>^j` and `C1` is
/// `sigma_m avg <x,w>^(j+1)`. Passes when each difference is within five
/// standard errors (or `1e-12` when the sample variance vanishes).
pub fn funk_hecke_mc_check(m: usize, j: u32, samples: usize, seed: u64) -> Result<Vec<crate::report::IdentityReport>> {
    let (c0, c1) = funk_hecke_constants(m, j)?;
    let rule = SphereRule::monte_carlo(m, samples, seed);
    let nodes = rule.nodes()?;
    let x: Vec<f64> = {
        let raw: Vec<f64> = (0..m).map(|i| 1.0 + 0.5 * i as f64).collect();
        let n = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
        raw.into_iter().map(|v| v / n).collect()
    };
    let area = rule.area().to_c64().re;
    let mut out = Vec::new();
    for (name, power, exact) in [("C0 (Funk-Hecke)", j, c0), ("C1 (Funk-Hecke)", j + 1, c1)] {
        let vals: Vec<f64> = nodes
            .iter()
            .map(|(w, _)| x.iter().zip(w).map(|(a, b)| a * b).sum::<f64>().powi(power as i32))
            .collect();
        let n = vals.len() as f64;
        let mean = vals.iter().sum::<f64>() / n;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let se = area * (var / n).sqrt();
        let est = area * mean;
        let tol = (5.0 * se).max(1e-12);
        out.push(
            crate::report::IdentityReport::numeric(name, m, j as i64, (est - exact.to_c64().re).abs(), tol)
                .with_note(format!("exact {exact}, {samples} samples, std error {se:.3e}")),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rint;

    #[test]
    fn monomial_formula_agrees_with_average() {
        for m in 1..=5usize {
            for e in compositions(m, 4).into_iter().chain(compositions(m, 6)) {
                let integral = sphere_monomial_integral(&e);
                let avg = sphere_monomial_average(&e);
                let ratio = (&integral * &sphere_area(m as u32).inv()).as_rational();
                assert_eq!(ratio, Some(avg), "m={m} {e:?}");
            }
        }
        assert_eq!(sphere_monomial_average(&[2, 0, 0]), rat(1, 3));
    }

    #[test]
    fn gauss_rule_is_exact_on_low_degree() {
        for m in 1..=5usize {
            let rule = SphereRule::gauss(m, 5);
            let nodes = rule.nodes().unwrap();
            let area: f64 = nodes.iter().map(|(_, w)| w).sum();
            assert!((area - sphere_area(m as u32).to_c64().re).abs() < 1e-12);
            for e in compositions(m, 4).into_iter().chain(compositions(m, 6)) {
                let q: f64 = nodes
                    .iter()
                    .map(|(w, wt)| wt * e.iter().zip(w).map(|(a, x)| x.powi(*a as i32)).product::<f64>())
                    .sum();
                let exact = sphere_monomial_integral(&e).to_c64().re;
                assert!((q - exact).abs() < 1e-12, "m={m} {e:?} {q} {exact}");
            }
            for (w, _) in &nodes {
                let n: f64 = w.iter().map(|x| x * x).sum();
                assert!((n - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn funk_hecke_examples() {
        let (c0, c1) = funk_hecke_constants(3, 2).unwrap();
        assert_eq!(c0, ExactConstant::new(0, rat(4, 3), 2));
        assert!(c1.is_zero());
        let (c0, c1) = funk_hecke_constants(3, 1).unwrap();
        assert!(c0.is_zero());
        assert_eq!(c1, ExactConstant::new(0, rat(4, 3), 2));
    }

    #[test]
    fn funk_hecke_against_monte_carlo() {
        for m in 1..=4 {
            for j in 0..=6 {
                for r in funk_hecke_mc_check(m, j, 20000, 3).unwrap() {
                    assert!(r.passed(), "{r:?}");
                }
            }
        }
    }

    #[test]
    fn rule_parsing() {
        assert_eq!(SphereRule::parse(3, "gauss:7").unwrap(), SphereRule::gauss(3, 7));
        assert_eq!(SphereRule::parse(2, "mc:100:5").unwrap(), SphereRule::monte_carlo(2, 100, 5));
        assert!(SphereRule::parse(2, "mc:1").is_err());
        assert!(SphereRule::parse(2, "gauss:0").is_err());
        let mut p = SpherePolynomial::new(2);
        p.add_term(vec![0, 0], CliffordElement::scalar(2, rint(3)));
        let v = sphere_integrate(&p, &SphereRule::exact(2)).unwrap();
        assert!((v.to_c64().scalar_part().re - 6.0 * PI).abs() < 1e-12);
    }
}
