//! Trigonometric representation of s_{n,ν} for integer n and the closed
//! trigonometric formula for ₂F₁(½+ν, ½−ν; n+½; sin²(θ/2)).

use std::f64::consts::PI;

use num_traits::{Signed, Zero};

use crate::error::{LommelError, Result};
use crate::gamma::is_nonpositive_integer;
use crate::lommel::{validate_params, EvalResult, EXCLUSION_TOL};
use crate::quadrature::gauss_legendre;
use crate::ratpoly::{factorial, int, rat_from_f64, rat_to_f64, Rational};

/// ν within this distance of an integer pole of the closed form is rejected.
pub const NU_POLE_TOL: f64 = 1e-6;
/// Below this |θ| the closed form is a 0/0 ratio; the Gauss series is used.
pub const SMALL_THETA: f64 = 1e-4;
pub const MAX_HYP2F1_TERMS: usize = 200_000;

/// Coefficients a_k^n(ν) of f_n(ν, θ) = Σ_k a_k sin(ω_k θ)/sin(ω_k π/2),
/// ω_k = ν − n + 2k + 1.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigExpansion {
    n: u32,
    nu: f64,
    coeffs: Vec<f64>,
    frequencies: Vec<f64>,
    denominators: Vec<f64>,
}

impl TrigExpansion {
    pub fn new(n: u32, nu: f64) -> Result<Self> {
        if n == 0 {
            return Err(LommelError::Domain("trigonometric expansion needs n >= 1".into()));
        }
        let coeffs = (0..n).map(|k| a_k_n(n, k, nu)).collect::<Result<Vec<_>>>()?;
        let frequencies: Vec<f64> = (0..n).map(|k| nu - n as f64 + 2.0 * k as f64 + 1.0).collect();
        let denominators: Vec<f64> = frequencies.iter().map(|w| (w * PI / 2.0).sin()).collect();
        if let Some(k) = denominators.iter().position(|d| d.abs() <= EXCLUSION_TOL) {
            return Err(LommelError::Pole(format!(
                "sin(omega pi / 2) vanishes for k = {k} (n = {n}, nu = {nu})"
            )));
        }
        Ok(TrigExpansion { n, nu, coeffs, frequencies, denominators })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn denominators(&self) -> &[f64] {
        &self.denominators
    }

    fn terms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.coeffs
            .iter()
            .zip(&self.frequencies)
            .zip(&self.denominators)
            .map(|((a, w), d)| (a / d, *w))
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.terms().map(|(c, w)| c * (w * theta).sin()).sum()
    }

    /// (f, f′, f″) by term-wise differentiation.
    pub fn eval_with_derivatives(&self, theta: f64) -> (f64, f64, f64) {
        self.terms().fold((0.0, 0.0, 0.0), |(f, d1, d2), (c, w)| {
            let (s, co) = (w * theta).sin_cos();
            (f + c * s, d1 + c * w * co, d2 - c * w * w * s)
        })
    }
}

/// a_k^n(ν) = 2^{1−n} Π_{p=1}^{n−1} (ν−n+2p+1)/(ν−p+1) · Π_{q=1}^{k} (n−q)(q+ν−n)/(q(q+ν)).
pub fn a_k_n(n: u32, k: u32, nu: f64) -> Result<f64> {
    check_a_k_n(n, k, |p| (nu - p as f64 + 1.0).abs() <= EXCLUSION_TOL, |q| (q as f64 + nu).abs() <= EXCLUSION_TOL)?;
    let nf = n as f64;
    let mut v = 0.5f64.powi(n as i32 - 1);
    for p in 1..n {
        let pf = p as f64;
        v *= (nu - nf + 2.0 * pf + 1.0) / (nu - pf + 1.0);
    }
    for q in 1..=k {
        let qf = q as f64;
        v *= (nf - qf) * (qf + nu - nf) / (qf * (qf + nu));
    }
    Ok(v)
}

fn check_a_k_n(n: u32, k: u32, p_pole: impl Fn(u32) -> bool, q_pole: impl Fn(u32) -> bool) -> Result<()> {
    if n == 0 || k >= n {
        return Err(LommelError::Domain(format!("a_k^n needs n >= 1 and k < n, got n = {n}, k = {k}")));
    }
    if let Some(p) = (1..n).find(|&p| p_pole(p)) {
        return Err(LommelError::Pole(format!("nu - p + 1 = 0 at p = {p}")));
    }
    if let Some(q) = (1..=k).find(|&q| q_pole(q)) {
        return Err(LommelError::Pole(format!("q + nu = 0 at q = {q}")));
    }
    Ok(())
}

/// Exact a_k^n(ν) for rational ν.
pub fn a_k_n_exact(n: u32, k: u32, nu: &Rational) -> Result<Rational> {
    let (ni, ki) = (n as i64, k as i64);
    check_a_k_n(n, k, |p| (nu - int(p as i64) + int(1)).is_zero(), |q| (nu + int(q as i64)).is_zero())?;
    let mut v = Rational::new(1.into(), num_bigint::BigInt::from(2).pow(n - 1));
    for p in 1..ni {
        v = v * (nu - int(ni) + int(2 * p + 1)) / (nu - int(p) + int(1));
    }
    for q in 1..=ki {
        v = v * int(ni - q) * (nu + int(q - ni)) / (int(q) * (nu + int(q)));
    }
    Ok(v)
}

/// f_n(ν, θ) on [0, π/2].
pub fn f_n(n: u32, nu: f64, theta: f64) -> Result<f64> {
    Ok(TrigExpansion::new(n, nu)?.eval(theta))
}

/// |sin θ f″ − 2(n−1) cos θ f′ − sin θ ((n−1)² − ν²) f| with analytic derivatives.
pub fn ode_residual(n: u32, nu: f64, theta: f64) -> Result<f64> {
    let e = TrigExpansion::new(n, nu)?;
    let (f, d1, d2) = e.eval_with_derivatives(theta);
    let m = n as f64 - 1.0;
    let (s, c) = theta.sin_cos();
    Ok((s * d2 - 2.0 * m * c * d1 - s * (m * m - nu * nu) * f).abs())
}

/// s_{n,ν}(z) = zⁿ ∫₀^{π/2} sin(z cos θ) f_n(ν, θ) sin θ dθ, and for n = 0
/// s_{0,ν}(z) = 1/cos(νπ/2) ∫₀^{π/2} sin(z cos θ) cos(νθ) dθ.
pub fn lommel_trig_integral(n: u32, nu: f64, z: f64, tol: f64) -> Result<EvalResult> {
    validate_params(n as f64, nu)?;
    if !(z >= 0.0) {
        return Err(LommelError::Domain(format!("z = {z} must be nonnegative")));
    }
    if n == 0 {
        let denom = (nu * PI / 2.0).cos();
        if denom.abs() <= EXCLUSION_TOL {
            return Err(LommelError::Pole(format!("cos(nu pi / 2) vanishes at nu = {nu}")));
        }
        let r = gauss_legendre(|th| (z * th.cos()).sin() * (nu * th).cos(), 0.0, PI / 2.0, tol)?;
        return Ok(EvalResult { value: r.value / denom, est_error: r.est_error / denom.abs(), ..r });
    }
    let e = TrigExpansion::new(n, nu)?;
    let r = gauss_legendre(|th| (z * th.cos()).sin() * e.eval(th) * th.sin(), 0.0, PI / 2.0, tol)?;
    let scale = z.powi(n as i32);
    Ok(EvalResult { value: scale * r.value, est_error: scale * r.est_error, ..r })
}

/// Coefficients c_k = Π_{q=1}^k (q−n)(q+ν−n)/(q(q+ν)) and frequencies
/// ω_k = 1 − n + ν + 2k of the sine sum in the closed form.
fn closed_form_terms(n: u32, nu: f64) -> Vec<(f64, f64)> {
    let nf = n as f64;
    let mut c = 1.0;
    (0..n)
        .map(|k| {
            if k > 0 {
                let q = k as f64;
                c *= (q - nf) * (q + nu - nf) / (q * (q + nu));
            }
            (c, 1.0 - nf + nu + 2.0 * k as f64)
        })
        .collect()
}

fn closed_form_prefactor(n: u32, nu: f64) -> f64 {
    let p: f64 = (0..n).map(|p| (2.0 * p as f64 + 1.0) / (nu - p as f64)).product();
    p / 2f64.powi(3 * n as i32 - 2)
}

/// Σ_k c_k sin(ω_k θ) through its Maclaurin series in exact rationals. The
/// sum vanishes to order θ^{2n−1}, so direct floating evaluation cancels
/// catastrophically for small θ; here the vanishing moments cancel exactly.
fn sine_sum_exact(n: u32, nu: f64, theta: f64) -> Result<f64> {
    let nu_r = rat_from_f64(nu)?;
    let theta_r = rat_from_f64(theta)?;
    let ni = n as i64;
    let mut terms: Vec<(Rational, Rational)> = Vec::with_capacity(n as usize);
    let mut c = int(1);
    for k in 0..ni {
        if k > 0 {
            c = c * int(k - ni) * (&nu_r + int(k - ni)) / (int(k) * (&nu_r + int(k)));
        }
        terms.push((c.clone(), &nu_r + int(1 - ni + 2 * k)));
    }
    let theta2 = &theta_r * &theta_r;
    // powers[k] = (ω_k θ)^{2j+1}, advanced by (ω_k θ)² each step.
    let mut powers: Vec<Rational> = terms.iter().map(|(_, w)| w * &theta_r).collect();
    let steps: Vec<Rational> = terms.iter().map(|(_, w)| w * w * &theta2).collect();
    let mut sum = Rational::zero();
    let max_arg = steps.iter().map(rat_to_f64).fold(0.0, f64::max).sqrt();
    let mut sign = 1;
    for j in 0..2000u64 {
        let moment: Rational = terms.iter().zip(&powers).map(|((c, _), p)| c * p).sum();
        let term = moment / Rational::from_integer(factorial(2 * j + 1)) * int(sign);
        let mag = rat_to_f64(&term.abs());
        sum += &term;
        if j as f64 > max_arg && mag <= 1e-30 * rat_to_f64(&sum.abs()) && !sum.is_zero() {
            return Ok(rat_to_f64(&sum));
        }
        for (p, s) in powers.iter_mut().zip(&steps) {
            *p = &*p * s;
        }
        sign = -sign;
    }
    Err(LommelError::NonConvergence("exact sine-sum expansion did not converge".into()))
}

/// Closed form of ₂F₁(½+ν, ½−ν; n+½; sin²(θ/2)) for |θ| < π.
pub fn hyp2f1_trig(n: u32, nu: f64, theta: f64) -> Result<f64> {
    if n == 0 {
        return Err(LommelError::Domain("closed form requires n >= 1".into()));
    }
    if !(theta.abs() < PI) {
        return Err(LommelError::Domain(format!("|theta| = {} must be below pi", theta.abs())));
    }
    let reach = n as f64 - 1.0;
    if nu.abs() <= reach + NU_POLE_TOL && (nu - nu.round()).abs() < NU_POLE_TOL {
        return Err(LommelError::Pole(format!("nu = {nu} is an integer pole of the closed form for n = {n}")));
    }
    let x = (theta / 2.0).sin().powi(2);
    if theta.abs() < SMALL_THETA {
        return hyp2f1_series(0.5 + nu, 0.5 - nu, n as f64 + 0.5, x, 1e-17);
    }
    let terms = closed_form_terms(n, nu);
    let direct: f64 = terms.iter().map(|(c, w)| c * (w * theta).sin()).sum();
    let scale: f64 = terms.iter().map(|(c, _)| c.abs()).sum();
    let sum = if 4.0 * f64::EPSILON * scale > 1e-13 * direct.abs() {
        sine_sum_exact(n, nu, theta)?
    } else {
        direct
    };
    Ok(closed_form_prefactor(n, nu) * sum / (theta / 2.0).sin().powi(2 * n as i32 - 1))
}

/// Gauss series ₂F₁(a, b; c; x) summed directly.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, x: f64, tol: f64) -> Result<f64> {
    hyp2f1_with_cap(a, b, c, x, tol, MAX_HYP2F1_TERMS)
}

pub(crate) fn hyp2f1_with_cap(a: f64, b: f64, c: f64, x: f64, tol: f64, cap: usize) -> Result<f64> {
    let terminates_at = [a, b]
        .iter()
        .filter(|v| is_nonpositive_integer(**v, 0.0))
        .map(|v| (-v) as usize)
        .min();
    if is_nonpositive_integer(c, 0.0) && terminates_at.is_none_or(|t| t > (-c) as usize) {
        return Err(LommelError::Pole(format!("2F1 lower parameter c = {c} is a pole")));
    }
    if terminates_at.is_none() && !(x.abs() < 1.0) {
        return Err(LommelError::Domain(format!("2F1 series needs |x| < 1, got {x}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..cap {
        if terminates_at.is_some_and(|t| k >= t) {
            return Ok(sum);
        }
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        term *= ratio;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        let r = ratio.abs().max(x.abs());
        if terminates_at.is_none() && r < 1.0 && term.abs() * r / (1.0 - r) < tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(LommelError::NonConvergence(format!("2F1({a}, {b}; {c}; {x}) not converged within {cap} terms")))
}
