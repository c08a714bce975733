//! Numerical evaluation of the integral representations of s_{μ,ν}.
//!
//! Smooth integrands go through [`gauss_legendre`] (uniform composite
//! bisection). Kernels carrying a `(1 − t)^{μ−1/2}` factor have an endpoint
//! singularity in some derivative at `t = 1`; those use
//! [`adaptive_gauss_legendre`], whose bisection concentrates near the
//! offending endpoint.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{LommelError, Result};
use crate::hyp_trig::{hyp2f1_with_cap, TrigExpansion};
use crate::lommel::{a_coeff, validate_params, EvalResult, EXCLUSION_TOL};
use crate::ratpoly::{int, rat, rat_from_f64, Rational, RationalPoly};

pub const GL_ORDER: usize = 32;
pub const MAX_UNIFORM_LEVELS: u32 = 14;
pub const MAX_ADAPTIVE_DEPTH: u32 = 64;
/// Term cap for the ₂F₁ inside the kernel; its argument never exceeds 1/2.
pub const KERNEL_HYP_TERMS: usize = 500;

/// Nodes and weights of the 32-point Gauss–Legendre rule on [−1, 1].
fn gl_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        rule.sort_by(|a, b| a.0.total_cmp(&b.0));
        rule
    })
}

/// Fixed 32-point rule on [a, b]; returns (∫f, ∫|f|).
fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    let mut abs = 0.0;
    for &(x, w) in gl_rule() {
        let v = f(mid + half * x);
        sum += w * v;
        abs += w * v.abs();
    }
    (half * sum, half.abs() * abs)
}

/// True when two estimates agree relatively, or when their gap is already at
/// the rounding floor of the integrand's magnitude.
fn agrees(prev: f64, cur: f64, l1: f64, tol: f64) -> bool {
    let diff = (cur - prev).abs();
    diff <= tol * cur.abs() || diff <= 64.0 * f64::EPSILON * l1
}

fn check_interval(a: f64, b: f64, tol: f64) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(LommelError::Domain(format!("invalid interval [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(LommelError::Domain(format!("tol = {tol} must be positive")));
    }
    Ok(())
}

/// Composite 32-point Gauss–Legendre with uniform bisection: level L uses
/// 2^L panels, and the loop stops once two successive levels agree to `tol`
/// relatively. `est_error` is the last refinement delta.
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<EvalResult> {
    check_interval(a, b, tol)?;
    let (mut prev, _) = gl_panel(&f, a, b);
    for level in 1..=MAX_UNIFORM_LEVELS {
        let panels = 1usize << level;
        let h = (b - a) / panels as f64;
        // Pairwise accumulation keeps the summation order fixed.
        let parts: Vec<(f64, f64)> =
            (0..panels).map(|i| gl_panel(&f, a + h * i as f64, a + h * (i + 1) as f64)).collect();
        let cur = pairwise_sum(parts.iter().map(|p| p.0).collect());
        let l1 = pairwise_sum(parts.iter().map(|p| p.1).collect());
        if agrees(prev, cur, l1, tol) {
            return Ok(EvalResult {
                value: cur,
                est_error: (cur - prev).abs(),
                terms_or_nodes: panels * GL_ORDER,
            });
        }
        prev = cur;
    }
    Err(LommelError::NonConvergence(format!(
        "Gauss-Legendre on [{a}, {b}] not converged after {MAX_UNIFORM_LEVELS} levels"
    )))
}

fn pairwise_sum(mut v: Vec<f64>) -> f64 {
    while v.len() > 1 {
        v = v.chunks(2).map(|c| c.iter().sum()).collect();
    }
    v.first().copied().unwrap_or(0.0)
}

/// Adaptive bisection with the 32-point rule. A panel is accepted when its
/// one-level refinement changes it by less than a tenth of the global
/// tolerance; unresolved panels (typically the one touching an integrable
/// endpoint singularity) keep splitting up to [`MAX_ADAPTIVE_DEPTH`] levels.
pub fn adaptive_gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<EvalResult> {
    check_interval(a, b, tol)?;
    // A 16-panel coarse pass sets the scale for the acceptance test.
    let h = (b - a) / 16.0;
    let coarse: Vec<(f64, f64, f64, f64)> = (0..16)
        .map(|i| {
            let (lo, hi) = (a + h * i as f64, a + h * (i + 1) as f64);
            let (v, l1) = gl_panel(&f, lo, hi);
            (lo, hi, v, l1)
        })
        .collect();
    let scale_value: f64 = coarse.iter().map(|c| c.2).sum::<f64>().abs();
    let scale_l1: f64 = coarse.iter().map(|c| c.3).sum();
    let target = (0.1 * tol * scale_value).max(16.0 * f64::EPSILON * scale_l1);

    let mut total = Vec::new();
    let mut est_error = 0.0;
    let mut nodes = 16 * GL_ORDER;
    // Depth-first, left to right: the accepted pieces arrive in a fixed order.
    let mut stack: Vec<(f64, f64, f64, u32)> = coarse.iter().rev().map(|c| (c.0, c.1, c.2, 0)).collect();
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let (left, _) = gl_panel(&f, lo, mid);
        let (right, _) = gl_panel(&f, mid, hi);
        nodes += 2 * GL_ORDER;
        let fine = left + right;
        if !fine.is_finite() {
            return Err(LommelError::NonConvergence(format!("integrand is not finite near t = {mid}")));
        }
        let err = (fine - whole).abs();
        if err <= target || mid <= lo || mid >= hi {
            total.push(fine);
            est_error += err;
            continue;
        }
        if depth + 1 >= MAX_ADAPTIVE_DEPTH {
            return Err(LommelError::NonConvergence(format!(
                "adaptive Gauss-Legendre on [{a}, {b}] exceeded depth {MAX_ADAPTIVE_DEPTH} near t = {mid}"
            )));
        }
        stack.push((mid, hi, right, depth + 1));
        stack.push((lo, mid, left, depth + 1));
    }
    Ok(EvalResult { value: pairwise_sum(total), est_error, terms_or_nodes: nodes })
}

/// The normalized hypergeometric kernel f_{μ,ν}(t) with its normalization
/// ₂F₁(½+ν, ½−ν; μ+½; ½) computed once.
#[derive(Clone, Copy, Debug)]
pub struct HypKernel {
    mu: f64,
    nu: f64,
    norm: f64,
}

impl HypKernel {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !(mu > 0.5) {
            return Err(LommelError::Domain(format!("kernel f requires mu > 1/2, got {mu}")));
        }
        let norm = hyp2f1_with_cap(0.5 + nu, 0.5 - nu, mu + 0.5, 0.5, 1e-17, KERNEL_HYP_TERMS)?;
        if norm.abs() < EXCLUSION_TOL {
            return Err(LommelError::Pole(format!("kernel normalization vanishes at mu = {mu}, nu = {nu}")));
        }
        Ok(HypKernel { mu, nu, norm })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if t >= 1.0 {
            return Ok(0.0);
        }
        let x = 0.5 * (1.0 - t);
        let h = hyp2f1_with_cap(0.5 + self.nu, 0.5 - self.nu, self.mu + 0.5, x, 1e-17, KERNEL_HYP_TERMS)?;
        Ok((1.0 - t).powf(self.mu - 0.5) * h / self.norm)
    }
}

/// f_{μ,ν}(t) = (1−t)^{μ−½} ₂F₁(½+ν,½−ν;μ+½;(1−t)/2) / ₂F₁(½+ν,½−ν;μ+½;½).
pub fn kernel_f(mu: f64, nu: f64, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(LommelError::Domain(format!("t = {t} outside [0, 1]")));
    }
    HypKernel::new(mu, nu)?.eval(t)
}

/// Weight functions appearing under the integral representations.
#[derive(Clone, Debug)]
pub enum KernelSpec {
    /// f_{μ,ν}(t) on [0, 1].
    Hyp2f1Weight { mu: f64, nu: f64 },
    /// (1−t)^{μ−½} · poly(t) on [0, 1], ν = n + ½.
    PolynomialWeight { mu: f64, nu: f64, poly: RationalPoly },
    /// (1−t²)^{μ−½} · poly(t) on [0, 1], ν = μ + 2n.
    StruveFamily { mu: f64, nu: f64, poly: RationalPoly },
    /// f_n(ν, θ) on [0, π/2] against sin(z cos θ) sin θ.
    AngularSine(TrigExpansion),
}

impl KernelSpec {
    pub fn hyp2f1(mu: f64, nu: f64) -> Result<Self> {
        HypKernel::new(mu, nu)?;
        Ok(KernelSpec::Hyp2f1Weight { mu, nu })
    }

    pub fn polynomial(mu: f64, n: u32) -> Result<Self> {
        if !(mu > 0.5) {
            return Err(LommelError::Domain(format!("polynomial kernel requires mu > 1/2, got {mu}")));
        }
        let poly = polynomial_kernel(&rat_from_f64(mu)?, n)?;
        Ok(KernelSpec::PolynomialWeight { mu, nu: n as f64 + 0.5, poly })
    }

    pub fn struve(mu: f64, n: u32) -> Result<Self> {
        if !(mu > 0.5) {
            return Err(LommelError::Domain(format!("Struve-family kernel requires mu > 1/2, got {mu}")));
        }
        let poly = struve_family_kernel(&rat_from_f64(mu)?, n)?;
        Ok(KernelSpec::StruveFamily { mu, nu: mu + 2.0 * n as f64, poly })
    }

    pub fn angular(n: u32, nu: f64) -> Result<Self> {
        Ok(KernelSpec::AngularSine(TrigExpansion::new(n, nu)?))
    }

    pub fn mu(&self) -> f64 {
        match self {
            KernelSpec::Hyp2f1Weight { mu, .. }
            | KernelSpec::PolynomialWeight { mu, .. }
            | KernelSpec::StruveFamily { mu, .. } => *mu,
            KernelSpec::AngularSine(e) => e.n() as f64,
        }
    }

    pub fn nu(&self) -> f64 {
        match self {
            KernelSpec::Hyp2f1Weight { nu, .. }
            | KernelSpec::PolynomialWeight { nu, .. }
            | KernelSpec::StruveFamily { nu, .. } => *nu,
            KernelSpec::AngularSine(e) => e.nu(),
        }
    }

    /// s_{μ,ν}(z) through this kernel's sine-type integral.
    pub fn lommel_value(&self, z: f64, tol: f64) -> Result<EvalResult> {
        if !(z >= 0.0) {
            return Err(LommelError::Domain(format!("z = {z} must be nonnegative")));
        }
        let mu = self.mu();
        let result = match self {
            KernelSpec::Hyp2f1Weight { mu, nu } => {
                let kernel = HypKernel::new(*mu, *nu)?;
                integrate_fallible(|t| Ok((z * t).sin() * kernel.eval(t)?), 0.0, 1.0, tol, true)?
            }
            KernelSpec::PolynomialWeight { mu, poly, .. } => {
                let coeffs = poly.to_f64_coeffs();
                let e = mu - 0.5;
                adaptive_gauss_legendre(|t| (z * t).sin() * (1.0 - t).powf(e) * horner(&coeffs, t), 0.0, 1.0, tol)?
            }
            KernelSpec::StruveFamily { mu, poly, .. } => {
                let coeffs = poly.to_f64_coeffs();
                let e = mu - 0.5;
                adaptive_gauss_legendre(
                    |t| (z * t).sin() * ((1.0 - t) * (1.0 + t)).powf(e) * horner(&coeffs, t),
                    0.0,
                    1.0,
                    tol,
                )?
            }
            KernelSpec::AngularSine(expansion) => gauss_legendre(
                |theta| (z * theta.cos()).sin() * expansion.eval(theta) * theta.sin(),
                0.0,
                PI / 2.0,
                tol,
            )?,
        };
        let scale = z.powf(mu);
        Ok(EvalResult { value: scale * result.value, est_error: scale * result.est_error, ..result })
    }
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// Runs a quadrature over an integrand that may fail (₂F₁ non-convergence),
/// surfacing the first error.
fn integrate_fallible<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64, tol: f64, adaptive: bool) -> Result<EvalResult> {
    let failure = std::cell::RefCell::new(None);
    let wrapped = |t: f64| match f(t) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let result = if adaptive { adaptive_gauss_legendre(wrapped, a, b, tol) } else { gauss_legendre(wrapped, a, b, tol) };
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    result
}

/// s_{μ,ν}(z) = z^μ ∫₀¹ sin(zt) f_{μ,ν}(t) dt, μ > ½.
pub fn lommel_quadrature(mu: f64, nu: f64, z: f64, tol: f64) -> Result<EvalResult> {
    validate_params(mu, nu)?;
    KernelSpec::hyp2f1(mu, nu)?.lommel_value(z, tol)
}

/// s_{μ,ν}(z) = a_{μ+2,ν}/((μ+1)²−ν²) · z^{μ+1} ∫₀¹ cos(zt) f_{μ+1,ν}(t) dt.
pub fn lommel_cos_quadrature(mu: f64, nu: f64, z: f64, tol: f64) -> Result<EvalResult> {
    let params = validate_params(mu, nu)?;
    if !(z >= 0.0) {
        return Err(LommelError::Domain(format!("z = {z} must be nonnegative")));
    }
    let kernel = HypKernel::new(mu + 1.0, nu)?;
    let a = a_coeff(mu + 2.0, nu)?;
    let integral = integrate_fallible(|t| Ok((z * t).cos() * kernel.eval(t)?), 0.0, 1.0, tol, true)?;
    let scale = a / params.leading_denominator() * z.powf(mu + 1.0);
    Ok(EvalResult { value: scale * integral.value, est_error: (scale * integral.est_error).abs(), ..integral })
}

/// s_{0,ν}(z) = 1/(1 + cos πν) ∫₀^π sin(z sin t) cos(νt) dt; odd in z, so any
/// real `z` is accepted.
pub fn lommel_s0_angular(nu: f64, z: f64, tol: f64) -> Result<EvalResult> {
    validate_params(0.0, nu)?;
    let denom = 1.0 + (PI * nu).cos();
    if denom.abs() < EXCLUSION_TOL {
        return Err(LommelError::Pole(format!("1 + cos(pi nu) vanishes at nu = {nu}")));
    }
    let r = gauss_legendre(|t| (z * t.sin()).sin() * (nu * t).cos(), 0.0, PI, tol)?;
    Ok(EvalResult { value: r.value / denom, est_error: r.est_error / denom.abs(), ..r })
}

/// Polynomial multiplying (1−t)^{μ−½} in the kernel for ν = n + ½, built from
/// the terminating ₂F₁(−n, n+1; μ+½; (1−t)/2) and normalized to 1 at t = 0.
pub fn polynomial_kernel(mu: &Rational, n: u32) -> Result<RationalPoly> {
    let c = mu + rat(1, 2);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut term = int(1);
    coeffs.push(term.clone());
    for k in 0..n as i64 {
        let denom = (&c + int(k)) * int(k + 1);
        if denom == int(0) {
            return Err(LommelError::Pole(format!("2 mu + 2q + 1 = 0 at q = {k} (mu = {mu})")));
        }
        term = term * int(k - n as i64) * int(k + n as i64 + 1) / denom;
        coeffs.push(term.clone());
    }
    let in_x = RationalPoly::new(coeffs);
    let x_of_t = RationalPoly::new(vec![rat(1, 2), rat(-1, 2)]);
    let in_t = in_x.compose(&x_of_t);
    let at_zero = in_t.coeff(0);
    if at_zero == int(0) {
        return Err(LommelError::Pole(format!("kernel normalization vanishes at mu = {mu}, n = {n}")));
    }
    Ok(in_t.scale(&(int(1) / at_zero)))
}

/// Polynomial multiplying (1−t²)^{μ−½} for ν = μ + 2n, n ∈ {0, 1, 2}.
pub fn struve_family_kernel(mu: &Rational, n: u32) -> Result<RationalPoly> {
    let two = mu + int(2);
    match n {
        0 => Ok(RationalPoly::constant(int(1))),
        1 => Ok(RationalPoly::new(vec![int(1), int(0), int(-2) * (mu + int(1))])),
        2 => Ok(RationalPoly::new(vec![
            int(1),
            int(0),
            int(-4) * &two,
            int(0),
            rat(4, 3) * &two * (mu + int(3)),
        ])),
        _ => Err(LommelError::Domain(format!("Struve-family kernel is tabulated for n <= 2, got {n}"))),
    }
}

/// Number of sign changes of `f` on an `samples`-point grid over [a, b].
pub fn sign_changes<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64, samples: usize) -> Result<usize> {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for i in 0..samples {
        let x = a + (b - a) * i as f64 / (samples - 1) as f64;
        let v = f(x)?;
        if v == 0.0 {
            continue;
        }
        let positive = v > 0.0;
        if last.is_some_and(|p| p != positive) {
            count += 1;
        }
        last = Some(positive);
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lommel::lommel_series;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    fn series(mu: f64, nu: f64, z: f64) -> f64 {
        lommel_series(&validate_params(mu, nu).unwrap(), z, 1e-17).unwrap().value
    }

    #[test]
    fn rule_integrates_polynomials() {
        let weights: f64 = gl_rule().iter().map(|p| p.1).sum();
        assert!((weights - 2.0).abs() < 1e-14);
        let (v, _) = gl_panel(&|x: f64| x.powi(62), -1.0, 1.0);
        assert!(rel(v, 2.0 / 63.0) < 1e-13);
    }

    #[test]
    fn uniform_examples() {
        let one = gauss_legendre(|_| 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert!((one.value - 1.0).abs() < 1e-15);
        assert_eq!(one.terms_or_nodes, 2 * GL_ORDER);
        let s = gauss_legendre(|t| (PI * t).sin(), 0.0, 1.0, 1e-12).unwrap();
        assert!((s.value - 2.0 / PI).abs() < 1e-12);
        let s = gauss_legendre(f64::sin, 0.0, PI / 2.0, 1e-12).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
        assert!(gauss_legendre(|t| t, 1.0, 0.0, 1e-12).is_err());
        assert!(matches!(
            gauss_legendre(|t: f64| 1.0 / t.sqrt(), 0.0, 1.0, 1e-15),
            Err(LommelError::NonConvergence(_))
        ));
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let r = adaptive_gauss_legendre(|t: f64| (1.0 - t).powf(0.1), 0.0, 1.0, 1e-12).unwrap();
        assert!(rel(r.value, 1.0 / 1.1) < 1e-12);
        let r = adaptive_gauss_legendre(|t: f64| 1.0 / (1.0 - t).sqrt(), 0.0, 1.0, 1e-6).unwrap();
        assert!(rel(r.value, 2.0) < 1e-6);
        // Resolving 1e-10 needs panels narrower than the spacing of doubles near 1.
        assert!(matches!(
            adaptive_gauss_legendre(|t: f64| 1.0 / (1.0 - t).sqrt(), 0.0, 1.0, 1e-10),
            Err(LommelError::NonConvergence(_))
        ));
    }

    #[test]
    fn kernel_closed_forms() {
        for &mu in &[0.8, 1.3, 2.7] {
            for &t in &[0.0, 0.25, 0.6, 0.95] {
                let base = (1.0f64 - t).powf(mu - 0.5);
                assert!(rel(kernel_f(mu, 0.5, t).unwrap(), base) < 1e-13);
                let k1 = base * (1.0 + 2.0 * t / (2.0 * mu - 1.0));
                assert!(rel(kernel_f(mu, 1.5, t).unwrap(), k1) < 1e-13);
                let d = (2.0 * mu + 1.0) * (2.0 * mu - 3.0);
                let k2 = base * (1.0 + 6.0 * (2.0 * mu - 1.0) * t / d + 12.0 * t * t / d);
                assert!(rel(kernel_f(mu, 2.5, t).unwrap(), k2) < 1e-12);
            }
            assert_eq!(kernel_f(mu, 0.3, 1.0).unwrap(), 0.0);
        }
        assert!(matches!(kernel_f(0.5, 0.3, 0.2), Err(LommelError::Domain(_))));
    }

    #[test]
    fn polynomial_kernel_examples() {
        let mu = rat(7, 5);
        assert_eq!(polynomial_kernel(&mu, 0).unwrap(), RationalPoly::constant(int(1)));
        let two_mu = int(2) * &mu;
        let k1 = RationalPoly::new(vec![int(1), int(2) / (&two_mu - int(1))]);
        assert_eq!(polynomial_kernel(&mu, 1).unwrap(), k1);
        let d = (&two_mu + int(1)) * (&two_mu - int(3));
        let k2 = RationalPoly::new(vec![int(1), int(6) * (&two_mu - int(1)) / &d, int(12) / &d]);
        assert_eq!(polynomial_kernel(&mu, 2).unwrap(), k2);
        assert!(matches!(polynomial_kernel(&rat(-1, 2), 1), Err(LommelError::Pole(_))));
        assert!(matches!(polynomial_kernel(&rat(-3, 2), 3), Err(LommelError::Pole(_))));
    }

    #[test]
    fn struve_kernel_values() {
        let mu = rat(3, 4);
        assert_eq!(struve_family_kernel(&mu, 0).unwrap(), RationalPoly::constant(int(1)));
        assert_eq!(struve_family_kernel(&mu, 1).unwrap(), RationalPoly::new(vec![int(1), int(0), rat(-7, 2)]));
        assert_eq!(
            struve_family_kernel(&mu, 2).unwrap(),
            RationalPoly::new(vec![int(1), int(0), int(-11), int(0), rat(165, 12)])
        );
        for &(mu, n) in &[(0.8, 0u32), (0.8, 1), (1.7, 1), (0.8, 2), (1.7, 2)] {
            let k = KernelSpec::struve(mu, n).unwrap();
            let v = k.lommel_value(2.0, 1e-13).unwrap().value;
            assert!(rel(v, series(mu, mu + 2.0 * n as f64, 2.0)) < 1e-10, "mu = {mu}, n = {n}");
        }
        assert!(struve_family_kernel(&mu, 3).is_err());
    }

    #[test]
    fn sine_kernel_path() {
        let r = lommel_quadrature(0.7, 0.2, 2.0, 1e-12).unwrap();
        assert!(rel(r.value, series(0.7, 0.2, 2.0)) < 1e-9);
        // ν = 1/2: z^μ ∫ (1−t)^{μ−1/2} sin(zt) dt, reference by the polynomial-weight path.
        let r = lommel_quadrature(0.6, 0.5, PI, 1e-12).unwrap();
        let reference = KernelSpec::polynomial(0.6, 0).unwrap().lommel_value(PI, 1e-14).unwrap();
        assert!(rel(r.value, reference.value) < 1e-9);
        assert!(rel(r.value, series(0.6, 0.5, PI)) < 1e-9);
        assert_eq!(lommel_quadrature(0.7, 0.2, 0.0, 1e-12).unwrap().value, 0.0);
    }

    #[test]
    fn cosine_kernel_path() {
        let r = lommel_cos_quadrature(0.7, 0.2, 2.0, 1e-12).unwrap();
        assert!(rel(r.value, series(0.7, 0.2, 2.0)) < 1e-8);
        let c = lommel_cos_quadrature(1.2, 0.5, 1.0, 1e-12).unwrap();
        let s = lommel_quadrature(1.2, 0.5, 1.0, 1e-12).unwrap();
        assert!(rel(c.value, s.value) < 1e-8);
        assert_eq!(lommel_cos_quadrature(0.7, 0.2, 0.0, 1e-12).unwrap().value, 0.0);
    }

    #[test]
    fn polynomial_weight_path() {
        for &(mu, n) in &[(0.9, 1u32), (1.4, 2), (2.3, 3)] {
            let v = KernelSpec::polynomial(mu, n).unwrap().lommel_value(1.7, 1e-13).unwrap().value;
            assert!(rel(v, series(mu, n as f64 + 0.5, 1.7)) < 1e-10, "mu = {mu}, n = {n}");
        }
    }

    #[test]
    fn angular_s0() {
        for &(nu, z) in &[(0.5, 1.0), (0.1, 3.7), (0.9, 6.0)] {
            let v = lommel_s0_angular(nu, z, 1e-13).unwrap().value;
            assert!(rel(v, series(0.0, nu, z)) < 1e-10);
            assert!(rel(lommel_s0_angular(nu, -z, 1e-13).unwrap().value, -v) < 1e-14);
        }
    }

    #[test]
    fn sign_change_counter() {
        assert_eq!(sign_changes(|x| Ok(x.sin()), 0.5, 10.0, 400).unwrap(), 3);
    }
}
