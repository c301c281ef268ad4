//! Functions `p(x) exp(-a x^2 + b x)` with complex polynomial part.
//!
//! The class is closed under `d/dx`, multiplication by `x`, products and
//! the heat semigroup `e^{Delta/2}`, and each of these is computed in closed
//! form on the coefficients.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussHermite;

use crate::error::{Error, Result};
use crate::scalar::{binomial, double_factorial, factorial, C64};

fn big_to_f64(n: &num_bigint::BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(n).unwrap_or(f64::INFINITY)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussPoly {
    a: f64,
    b: C64,
    coeffs: Vec<C64>,
}

fn trim(mut c: Vec<C64>) -> Vec<C64> {
    while c.last().is_some_and(|z| *z == C64::new(0.0, 0.0)) {
        c.pop();
    }
    c
}

fn horner(c: &[C64], z: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, v| acc * z + v)
}

/// `p(alpha x + beta)` as coefficients in `x`.
fn compose_affine(p: &[C64], alpha: C64, beta: C64) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); p.len()];
    for (j, c) in p.iter().enumerate() {
        for (i, o) in out.iter_mut().enumerate().take(j + 1) {
            let b = big_to_f64(&binomial(j as u64, i as u64));
            *o += c * b * alpha.powu(i as u32) * beta.powu((j - i) as u32);
        }
    }
    out
}

impl GaussPoly {
    pub fn new(a: f64, b: C64, coeffs: Vec<C64>) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!("Gaussian width must be positive, got {a}")));
        }
        if !b.re.is_finite() || !b.im.is_finite() || coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Domain("non-finite coefficient".into()));
        }
        Ok(GaussPoly {
            a,
            b,
            coeffs: trim(coeffs),
        })
    }

    pub fn gaussian(a: f64) -> Result<Self> {
        Self::new(a, C64::new(0.0, 0.0), vec![C64::new(1.0, 0.0)])
    }

    /// `h_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}`, orthonormal in `L^2(R)`.
    pub fn hermite_function(n: usize) -> Self {
        // H_{k+1} = 2x H_k - 2k H_{k-1}
        let mut prev = vec![1.0];
        let mut cur = vec![0.0, 2.0];
        if n == 0 {
            cur = prev.clone();
        } else {
            for k in 1..n {
                let mut next = vec![0.0; k + 2];
                for (i, c) in cur.iter().enumerate() {
                    next[i + 1] += 2.0 * c;
                }
                for (i, c) in prev.iter().enumerate() {
                    next[i] -= 2.0 * k as f64 * c;
                }
                prev = cur;
                cur = next;
            }
        }
        let norm = (2f64.powi(n as i32) * big_to_f64(&factorial(n as u64)) * PI.sqrt()).sqrt();
        GaussPoly {
            a: 0.5,
            b: C64::new(0.0, 0.0),
            coeffs: cur.into_iter().map(|c| C64::new(c / norm, 0.0)).collect(),
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at a complex point; the function is entire.
    pub fn evaluate(&self, z: C64) -> C64 {
        horner(&self.coeffs, z) * (-self.a * z * z + self.b * z).exp()
    }

    pub fn scale(&self, s: C64) -> Self {
        GaussPoly {
            coeffs: trim(self.coeffs.iter().map(|c| c * s).collect()),
            ..self.clone()
        }
    }

    fn same_exponent(&self, o: &Self) -> Result<()> {
        if self.a != o.a || self.b != o.b {
            return Err(Error::InvalidArgument("sum of Gaussians with different exponents".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_exponent(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = C64::new(0.0, 0.0);
        let c = (0..n)
            .map(|i| self.coeffs.get(i).copied().unwrap_or(z) + o.coeffs.get(i).copied().unwrap_or(z))
            .collect();
        Ok(GaussPoly {
            coeffs: trim(c),
            ..self.clone()
        })
    }

    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![C64::new(0.0, 0.0)];
        c.extend_from_slice(&self.coeffs);
        GaussPoly { coeffs: c, ..self.clone() }
    }

    /// `(p' + p (b - 2 a x)) e^{...}`.
    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len() + 1;
        let mut c = vec![C64::new(0.0, 0.0); n];
        for (j, v) in self.coeffs.iter().enumerate() {
            if j > 0 {
                c[j - 1] += v * j as f64;
            }
            c[j] += v * self.b;
            c[j + 1] -= v * 2.0 * self.a;
        }
        GaussPoly {
            coeffs: trim(c),
            ..self.clone()
        }
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// Pointwise complex conjugate on the real line.
    pub fn conj(&self) -> Self {
        GaussPoly {
            a: self.a,
            b: self.b.conj(),
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut c = vec![C64::new(0.0, 0.0); (self.coeffs.len() + o.coeffs.len()).saturating_sub(1)];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        GaussPoly {
            a: self.a + o.a,
            b: self.b + o.b,
            coeffs: trim(c),
        }
    }

    /// `int_R p(x) e^{-a x^2 + b x} dx`: Gaussian moments about `b / 2a`.
    pub fn integral(&self) -> C64 {
        let mu = self.b / (2.0 * self.a);
        let shifted = compose_affine(&self.coeffs, C64::new(1.0, 0.0), mu);
        let mut s = C64::new(0.0, 0.0);
        for (j, c) in shifted.iter().enumerate().step_by(2) {
            let k = j / 2;
            s += c * big_to_f64(&double_factorial(2 * k as i64 - 1)) / (2.0 * self.a).powi(k as i32);
        }
        s * (self.b * self.b / (4.0 * self.a)).exp() * (PI / self.a).sqrt()
    }

    /// `int conj(f) g dx`.
    pub fn inner(&self, o: &Self) -> C64 {
        self.conj().mul(o).integral()
    }

    /// `(1/sqrt(2 pi)) int e^{-i p y} f(y) dy`.
    pub fn fourier(&self, p: f64) -> C64 {
        let shifted = GaussPoly {
            b: self.b - C64::new(0.0, p),
            ..self.clone()
        };
        shifted.integral() / (2.0 * PI).sqrt()
    }

    /// `e^{Delta/2} f (x) = (1/sqrt(2 pi)) int e^{-(x-y)^2/2} f(y) dy`.
    ///
    /// With `c = 1/2 + a` and `mu = (x + b) / 2c` the exponent is
    /// `-c (y - mu)^2 + (x + b)^2 / 4c - x^2/2`, so the polynomial part becomes
    /// a Gaussian expectation of `p(mu + s)` with `E s^{2k} = (2k-1)!! / (2c)^k`.
    pub fn heat(&self) -> Self {
        let c = 0.5 + self.a;
        let n = self.coeffs.len();
        // q(mu) = sum_j p_j E (mu + s)^j
        let mut q = vec![C64::new(0.0, 0.0); n];
        for (j, pj) in self.coeffs.iter().enumerate() {
            for k in 0..=j / 2 {
                let w = big_to_f64(&binomial(j as u64, 2 * k as u64))
                    * big_to_f64(&double_factorial(2 * k as i64 - 1))
                    / (2.0 * c).powi(k as i32);
                q[j - 2 * k] += pj * w;
            }
        }
        let alpha = C64::new(1.0 / (2.0 * c), 0.0);
        let poly = compose_affine(&q, alpha, self.b * alpha);
        let pre = (self.b * self.b / (4.0 * c)).exp() / (2.0 * c).sqrt();
        GaussPoly {
            a: self.a / (1.0 + 2.0 * self.a),
            b: self.b / (1.0 + 2.0 * self.a),
            coeffs: trim(poly.into_iter().map(|v| v * pre).collect()),
        }
    }

    /// The heat convolution at `x` by `deg`-point Gauss-Hermite quadrature.
    pub fn heat_by_quadrature(&self, x: f64, deg: usize) -> Result<C64> {
        let deg = NonZeroUsize::new(deg).ok_or_else(|| Error::InvalidArgument("degree 0".into()))?;
        let rule = GaussHermite::new(deg);
        let s: C64 = rule
            .iter()
            .map(|(t, w)| self.evaluate(C64::new(x + 2f64.sqrt() * t, 0.0)) * *w)
            .sum();
        Ok(s / PI.sqrt())
    }

    /// Upper bound for `|f|` on the closed disc of radius `radius` around `x0`.
    pub fn disc_bound(&self, x0: f64, radius: f64) -> f64 {
        let rmax = x0.abs() + radius;
        let poly: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.norm() * rmax.powi(j as i32))
            .sum();
        // Re(-a z^2) = -a (u^2 - v^2) <= -a (|x0| - R)_+^2 + a R^2 with z = u + iv.
        let near = (x0.abs() - radius).max(0.0);
        let expo = -self.a * near * near + self.a * radius * radius + self.b.re * x0 + self.b.norm() * radius;
        poly * expo.exp()
    }

    /// Taylor coefficients `f^(j)(x0)/j!`, `j <= order`.
    pub fn taylor(&self, x0: f64, order: usize) -> Vec<C64> {
        let mut f = self.clone();
        let mut out = Vec::with_capacity(order + 1);
        let mut fact = 1.0;
        for j in 0..=order {
            if j > 0 {
                fact *= j as f64;
            }
            out.push(f.evaluate(C64::new(x0, 0.0)) / fact);
            f = f.derivative();
        }
        out
    }

    /// Largest coefficient difference after matching exponents.
    pub fn distance(&self, o: &Self) -> f64 {
        if (self.a - o.a).abs() > 1e-14 || (self.b - o.b).norm() > 1e-14 {
            return f64::INFINITY;
        }
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = C64::new(0.0, 0.0);
        (0..n)
            .map(|i| (self.coeffs.get(i).copied().unwrap_or(z) - o.coeffs.get(i).copied().unwrap_or(z)).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn heat_of_gaussian() {
        let f = GaussPoly::gaussian(0.5).unwrap();
        let h = f.heat();
        assert!((h.a() - 0.25).abs() < 1e-15);
        for x in [-1.3, 0.0, 0.4, 2.0] {
            let expect = (-x * x / 4.0f64).exp() / 2f64.sqrt();
            assert!((h.evaluate(c(x)) - c(expect)).norm() < 1e-14);
            assert!((f.heat_by_quadrature(x, 60).unwrap() - c(expect)).norm() < 1e-12);
        }
        let z = C64::new(0.3, 0.8);
        assert!((h.evaluate(z) - (-z * z / 4.0).exp() / 2f64.sqrt()).norm() < 1e-14);
    }

    #[test]
    fn heat_matches_quadrature_on_shifted_polys() {
        let f = GaussPoly::new(0.7, C64::new(0.3, -0.2), vec![c(1.0), C64::new(0.0, 2.0), c(-0.5), c(0.25), c(0.1)]).unwrap();
        let h = f.heat();
        for x in [-1.0, 0.2, 1.5] {
            let q = f.heat_by_quadrature(x, 80).unwrap();
            assert!((h.evaluate(c(x)) - q).norm() < 1e-10, "{x}");
        }
    }

    #[test]
    fn heat_commutes_with_derivative() {
        for n in 0..5 {
            let f = GaussPoly::hermite_function(n);
            for k in 1..=5 {
                let lhs = f.nth_derivative(k).heat();
                let rhs = f.heat().nth_derivative(k);
                assert!(lhs.distance(&rhs) < 1e-12, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn hermite_orthonormal() {
        for i in 0..5 {
            for j in 0..5 {
                let g = GaussPoly::hermite_function(i).inner(&GaussPoly::hermite_function(j));
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g - c(expect)).norm() < 1e-12, "{i} {j} {g}");
            }
        }
    }

    #[test]
    fn derivative_and_bounds() {
        let f = GaussPoly::hermite_function(2);
        let d = f.derivative();
        let x = 0.37;
        let h = 1e-5;
        let fd = (f.evaluate(c(x + h)) - f.evaluate(c(x - h))) / (2.0 * h);
        assert!((d.evaluate(c(x)) - fd).norm() < 1e-8);
        let bound = f.disc_bound(0.5, 1.0);
        for k in 0..32 {
            let t = 2.0 * PI * k as f64 / 32.0;
            let z = c(0.5) + C64::from_polar(1.0, t);
            assert!(f.evaluate(z).norm() <= bound);
        }
        assert!(GaussPoly::gaussian(0.0).is_err());
    }
}
