//! Coherent state transforms: heat flow followed by the holomorphic, slice,
//! axial or Fueter extension.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_traits::Zero;
use rayon::prelude::*;

use crate::clifford::{Blade, CliffordElement, Paravector};
use crate::constants::gamma_m;
use crate::error::{check_dim, Error, Result};
use crate::extension::gck_polynomial;
use crate::gauss::GaussPoly;
use crate::laurent::LaurentPoly;
use crate::radon::dual_radon_numeric;
use crate::report::IdentityReport;
use crate::scalar::{rational_to_f64, C64};
use crate::sphere::{default_gauss_level, sphere_integrate, SphereIntegral, SpherePolynomial, SphereRule};

/// Truncation tolerance for GCK of entire data.
pub const DEFAULT_TAYLOR_TOL: f64 = 1e-10;
const MAX_TAYLOR_ORDER: usize = 200;

/// `U[f](z)`: the entire extension of `e^{Delta/2} f`.
pub fn classical_cst(f: &GaussPoly, z: C64) -> C64 {
    f.heat().evaluate(z)
}

/// `alpha + w beta` at distance `r` from the real axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceValue {
    pub alpha: C64,
    pub beta: C64,
}

impl SliceValue {
    /// From an entire function `F`, using that `i` commutes with everything:
    /// `alpha = (F(x0+ir) + F(x0-ir))/2`, `beta = (F(x0+ir) - F(x0-ir))/2i`.
    pub fn from_entire(f: &GaussPoly, x0: f64, r: f64) -> Self {
        let p = f.evaluate(C64::new(x0, r));
        let q = f.evaluate(C64::new(x0, -r));
        SliceValue {
            alpha: (p + q) / 2.0,
            beta: (p - q) / C64::new(0.0, 2.0),
        }
    }

    /// The value at a paravector whose vector part points along `w`.
    pub fn to_element(&self, w: Option<&[f64]>, m: usize) -> CliffordElement<C64> {
        let mut out = CliffordElement::scalar(m, self.alpha);
        if let Some(w) = w {
            for (j, v) in w.iter().enumerate() {
                out.add_term(Blade::generator(j + 1), self.beta * v);
            }
        }
        out
    }
}

/// `U_s[f](x_0, r) = S[e^{Delta/2} f]`.
pub fn slice_cst(f: &GaussPoly, x0: f64, r: f64) -> Result<SliceValue> {
    if r < 0.0 {
        return Err(Error::Domain(format!("r must be nonnegative, got {r}")));
    }
    Ok(SliceValue::from_entire(&f.heat(), x0, r))
}

fn slice_at(heated: &GaussPoly, y: &Paravector<f64>) -> CliffordElement<C64> {
    let r = y.radius();
    let v = SliceValue::from_entire(heated, y.x0, r);
    v.to_element(y.direction().as_deref(), y.dim())
}

/// Composite Gauss-Legendre on `[lo, hi]`.
fn composite_nodes(lo: f64, hi: f64, panels: usize, points: usize) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(points).expect("points >= 1"));
    let h = (hi - lo) / panels as f64;
    let mut out = Vec::with_capacity(panels * points);
    for k in 0..panels {
        let c = lo + (k as f64 + 0.5) * h;
        for (x, w) in rule.iter() {
            out.push((c + 0.5 * h * x, 0.5 * h * w));
        }
    }
    out
}

/// `U_s[f]` from the frequency side:
/// `(1/sqrt(2 pi)) int e^{-p^2/2} e^{i p x0} (cosh(p r) + i w sinh(p r)) f~(p) dp`.
pub fn slice_cst_fourier(f: &GaussPoly, x0: f64, r: f64, panels: usize) -> SliceValue {
    let cut = 12.0 + 2.0 * r;
    let mut alpha = C64::zero();
    let mut beta = C64::zero();
    for (p, w) in composite_nodes(-cut, cut, panels, 10) {
        let k = f.fourier(p) * C64::new(0.0, p * x0).exp() * ((-p * p / 2.0).exp() * w);
        alpha += k * (p * r).cosh();
        beta += k * C64::new(0.0, (p * r).sinh());
    }
    let n = (2.0 * PI).sqrt();
    SliceValue {
        alpha: alpha / n,
        beta: beta / n,
    }
}

/// Taylor order and tail bound for GCK of an entire function at distance `r`.
///
/// With `M` a bound for `|F|` on the disc of radius `R` around `x_0`,
/// Cauchy gives `|F^(j)(x_0)/j!| <= M / R^j`, and `|GCK[t^j](x)| <= |x|^j`
/// for a pure vector `x`, so the tail is at most `M q^{N+1} / (1 - q)`.
pub fn taylor_order(f: &GaussPoly, x0: f64, r: f64, tol: f64) -> Result<(usize, f64)> {
    if r == 0.0 {
        return Ok((0, 0.0));
    }
    let mut best: Option<(usize, f64)> = None;
    for scale in [1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0] {
        let radius = scale * r;
        let q = r / radius;
        let m = f.disc_bound(x0, radius);
        let mut bound = m * q / (1.0 - q);
        let mut n = 0;
        while bound >= tol && n < MAX_TAYLOR_ORDER {
            bound *= q;
            n += 1;
        }
        if bound < tol && best.is_none_or(|(b, _)| n < b) {
            best = Some((n, bound));
        }
    }
    best.ok_or(Error::Truncation {
        tol,
        max_order: MAX_TAYLOR_ORDER,
        bound: f64::INFINITY,
    })
}

/// A transform value with its certified truncation data.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedValue {
    pub value: CliffordElement<C64>,
    pub order: usize,
    pub tail_bound: f64,
}

/// `GCK[F]` at `x` for an entire `F`, via its Taylor polynomial around `x_0`.
pub fn gck_entire(heated: &GaussPoly, m: usize, x: &Paravector<f64>, tol: f64) -> Result<TruncatedValue> {
    check_dim(m)?;
    if x.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: x.dim(),
        });
    }
    let (order, tail_bound) = taylor_order(heated, x.x0, x.radius(), tol)?;
    let taylor = LaurentPoly::from_coeffs(heated.taylor(x.x0, order));
    // GCK commutes with translation along the real axis.
    let xc = Paravector::new(C64::zero(), x.x.iter().map(|v| C64::new(*v, 0.0)).collect());
    let value = gck_polynomial(&taylor, m)?.evaluate(&xc)?;
    Ok(TruncatedValue {
        value,
        order,
        tail_bound,
    })
}

/// `U_a[f] = GCK[e^{Delta/2} f]`.
pub fn axial_cst(f: &GaussPoly, m: usize, x: &Paravector<f64>, tol: f64) -> Result<TruncatedValue> {
    gck_entire(&f.heat(), m, x, tol)
}

/// `U_a[f] = R[U_s[f]]` by quadrature over the sphere.
pub fn axial_cst_radon(f: &GaussPoly, m: usize, x: &Paravector<f64>, rule: &SphereRule) -> Result<CliffordElement<C64>> {
    check_dim(m)?;
    if x.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: x.dim(),
        });
    }
    let heated = f.heat();
    Ok(dual_radon_numeric(|y| Ok(slice_at(&heated, y)), x, rule)?.0)
}

/// The three routes to `tau_m S e^{Delta/2} f`.
#[derive(Clone, Debug, PartialEq)]
pub struct FueterCst {
    /// `gamma_m GCK[(e^{Delta/2} f)^(m-1)]`.
    pub heat_then_derivative: TruncatedValue,
    /// `gamma_m U_a[f^(m-1)]`.
    pub derivative_then_heat: TruncatedValue,
    /// `gamma_m R[U_s[f^(m-1)]]`.
    pub radon: CliffordElement<C64>,
}

pub fn fueter_cst(f: &GaussPoly, m: usize, x: &Paravector<f64>, tol: f64) -> Result<FueterCst> {
    check_dim(m)?;
    let g = gamma_m(m as u32).to_c64();
    let k = m - 1;
    let mut a = gck_entire(&f.heat().nth_derivative(k), m, x, tol)?;
    a.value = a.value.scale(&g);
    let df = f.nth_derivative(k);
    let mut b = axial_cst(&df, m, x, tol)?;
    b.value = b.value.scale(&g);
    let c = axial_cst_radon(&df, m, x, &SphereRule::gauss(m, default_gauss_level(m)))?.scale(&g);
    Ok(FueterCst {
        heat_then_derivative: a,
        derivative_then_heat: b,
        radon: c,
    })
}

/// Standard evaluation points `(x_0, r)` with the vector along `e_1`.
pub fn cst_points(m: usize) -> Vec<Paravector<f64>> {
    [(0.7, 0.5), (-0.4, 0.8), (1.2, 0.3)]
        .into_iter()
        .map(|(x0, r)| {
            let mut xs = vec![0.0; m];
            if m > 0 {
                xs[0] = r;
            }
            Paravector::new(x0, xs)
        })
        .collect()
}

/// `U_a = R U_s` on Hermite functions `h_0..h_{family-1}`.
pub fn ua_route_reports(m: usize, family: usize, tol: f64) -> Result<Vec<IdentityReport>> {
    let rule = SphereRule::gauss(m, default_gauss_level(m));
    let mut out = Vec::new();
    for n in 0..family {
        let f = GaussPoly::hermite_function(n);
        for x in cst_points(m) {
            let a = axial_cst(&f, m, &x, DEFAULT_TAYLOR_TOL)?;
            let b = axial_cst_radon(&f, m, &x, &rule)?;
            out.push(
                IdentityReport::numeric("U_a = R U_s", m, n as i64, a.value.distance(&b), tol)
                    .with_note(format!("x0={}, r={}, N={}", x.x0, x.radius(), a.order)),
            );
        }
    }
    Ok(out)
}

/// Pairwise agreement of the three Fueter CST routes.
pub fn fueter_route_reports(m: usize, family: usize, tol: f64) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for n in 0..family {
        let f = GaussPoly::hermite_function(n);
        for x in cst_points(m) {
            let r = fueter_cst(&f, m, &x, DEFAULT_TAYLOR_TOL)?;
            let note = format!("x0={}, r={}", x.x0, x.radius());
            let d1 = r.heat_then_derivative.value.distance(&r.derivative_then_heat.value);
            let d2 = r.derivative_then_heat.value.distance(&r.radon);
            out.push(
                IdentityReport::numeric("GCK d^(m-1) heat = GCK heat d^(m-1)", m, n as i64, d1, tol)
                    .with_note(note.clone()),
            );
            out.push(IdentityReport::numeric("U_a d^(m-1) = R U_s d^(m-1)", m, n as i64, d2, tol).with_note(note));
        }
    }
    Ok(out)
}

/// Sphere moments used to drop the `w`-terms from `U_s[f]^dagger U_s[g]`:
/// returns `(avg w, avg w^dagger w)`, exactly `0` and `1`.
pub fn sphere_reduction(m: usize) -> Result<(CliffordElement<C64>, CliffordElement<C64>)> {
    check_dim(m)?;
    let rule = SphereRule::exact(m);
    let mut first = SpherePolynomial::new(m);
    let mut second = SpherePolynomial::new(m);
    for j in 0..m {
        let mut e = vec![0; m];
        e[j] = 1;
        first.add_term(e.clone(), CliffordElement::generator(m, j + 1));
        e[j] = 2;
        // w^dagger w = sum w_j^2
        second.add_term(e, CliffordElement::one(m));
    }
    let avg = |p: &SpherePolynomial<_>| -> Result<CliffordElement<C64>> {
        match sphere_integrate(p, &rule)? {
            SphereIntegral::Exact { average, .. } => Ok(average.map(|q| C64::new(rational_to_f64(q), 0.0))),
            SphereIntegral::Numeric { .. } => unreachable!("exact rule"),
        }
    };
    Ok((avg(&first)?, avg(&second)?))
}

/// Quadrature grid for the slice-side inner product: `(panels, points)`.
pub const UNITARITY_LEVELS: [(usize, usize); 2] = [(16, 8), (32, 8)];
const UNITARITY_CUT: f64 = 12.0;

/// Result of comparing Gram matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitarityCheck {
    pub m: usize,
    pub lhs: Vec<Vec<C64>>,
    /// One right-hand Gram matrix per quadrature level.
    pub rhs: Vec<Vec<Vec<C64>>>,
    pub levels: Vec<(usize, usize)>,
    /// Max entry difference per level.
    pub residuals: Vec<f64>,
}

impl UnitarityCheck {
    pub fn residual(&self) -> f64 {
        *self.residuals.last().unwrap_or(&f64::INFINITY)
    }

    /// Agreement within `tol` at the finest level and no worse than the coarser one.
    pub fn passed(&self, tol: f64) -> bool {
        let r = self.residual();
        let converged = self.residuals.windows(2).all(|w| w[1] <= w[0].max(tol * 1e-2));
        r.is_finite() && r <= tol && converged
    }
}

/// `<f_i, f_j>` against `(2/sqrt(pi)) (1/sigma_m) int U_s[f_i]^dagger U_s[f_j] e^{-r^2} r^{1-m} dx`.
///
/// In polar coordinates `dx = r^{m-1} dr dS_w`, so the weight cancels and the
/// sphere average of the `w`-terms leaves `int int (conj(a_i) a_j + conj(b_i) b_j) e^{-r^2} dx_0 dr`.
pub fn unitarity_check(fs: &[GaussPoly], m: usize, levels: &[(usize, usize)]) -> Result<UnitarityCheck> {
    let (first, second) = sphere_reduction(m)?;
    if !first.is_zero() || second.distance(&CliffordElement::one(m)) > 1e-15 {
        return Err(Error::Domain("sphere moments do not reduce".into()));
    }
    let lhs: Vec<Vec<C64>> = fs.iter().map(|f| fs.iter().map(|g| f.inner(g)).collect()).collect();
    let heated: Vec<GaussPoly> = fs.iter().map(|f| f.heat()).collect();
    let mut rhs = Vec::new();
    let mut residuals = Vec::new();
    for &(panels, points) in levels {
        let xs = composite_nodes(-UNITARITY_CUT, UNITARITY_CUT, panels, points);
        let rs = composite_nodes(0.0, UNITARITY_CUT, panels / 2, points);
        let grid: Vec<(f64, f64, f64)> = xs
            .iter()
            .flat_map(|(x, wx)| rs.iter().map(move |(r, wr)| (*x, *r, wx * wr * (-r * r).exp())))
            .collect();
        let values: Vec<Vec<SliceValue>> = heated
            .par_iter()
            .map(|h| grid.iter().map(|(x, r, _)| SliceValue::from_entire(h, *x, *r)).collect())
            .collect();
        let n = fs.len();
        let mut gram = vec![vec![C64::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let s: C64 = grid
                    .iter()
                    .zip(values[i].iter().zip(&values[j]))
                    .map(|((_, _, w), (u, v))| (u.alpha.conj() * v.alpha + u.beta.conj() * v.beta) * *w)
                    .sum();
                // The sphere integral contributes sigma_m, cancelling 1/sigma_m in the measure.
                gram[i][j] = s * (2.0 / PI.sqrt());
            }
        }
        let res = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (gram[i][j] - lhs[i][j]).norm())
            .fold(0.0, f64::max);
        rhs.push(gram);
        residuals.push(res);
    }
    Ok(UnitarityCheck {
        m,
        lhs,
        rhs,
        levels: levels.to_vec(),
        residuals,
    })
}

pub fn hermite_family(k: usize) -> Vec<GaussPoly> {
    (0..k).map(GaussPoly::hermite_function).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_and_slice() {
        let f = GaussPoly::gaussian(0.5).unwrap();
        let z = C64::new(0.2, -0.7);
        let expect = (-z * z / 4.0).exp() / 2f64.sqrt();
        assert!((classical_cst(&f, z) - expect).norm() < 1e-14);
        let s = slice_cst(&f, 0.4, 0.0).unwrap();
        assert!(s.beta.norm() < 1e-15);
        for n in 0..4 {
            let h = GaussPoly::hermite_function(n);
            let a = slice_cst(&h, 0.3, 0.6).unwrap();
            let b = slice_cst_fourier(&h, 0.3, 0.6, 40);
            assert!((a.alpha - b.alpha).norm() < 1e-8 && (a.beta - b.beta).norm() < 1e-8, "{n}");
            let neg = SliceValue::from_entire(&h.heat(), 0.3, -0.6);
            assert!((neg.beta + a.beta).norm() < 1e-12 && (neg.alpha - a.alpha).norm() < 1e-12);
        }
    }

    #[test]
    fn axial_routes_agree() {
        for m in 1..=3 {
            let r = ua_route_reports(m, 4, 1e-7).unwrap();
            assert!(r.iter().all(|r| r.passed()), "{r:?}");
        }
        let f = GaussPoly::hermite_function(1);
        let x = Paravector::new(0.3, vec![0.0, 0.0]);
        let v = axial_cst(&f, 2, &x, 1e-10).unwrap();
        assert!(v.value.distance(&CliffordElement::scalar(2, f.heat().evaluate(C64::new(0.3, 0.0)))) < 1e-14);
    }

    #[test]
    fn fueter_routes_agree() {
        for m in 1..=4 {
            let r = fueter_route_reports(m, 4, 1e-7).unwrap();
            assert!(r.iter().all(|r| r.passed()), "{r:?}");
        }
    }

    #[test]
    fn unitarity_on_hermite() {
        let fs = hermite_family(3);
        let u = unitarity_check(&fs, 2, &UNITARITY_LEVELS).unwrap();
        assert!(u.passed(1e-5), "{:?}", u.residuals);
    }
}
