//! Reference evaluation of the Lommel function s_{μ,ν}(z) from its power
//! series, parameter validation, the a_{μ,ν} coefficient and the recurrences
//! in μ and ν.
//!
//! `z` is restricted to the nonnegative real axis and `z^{μ+1}` is the real
//! positive branch.

use serde::Serialize;

use crate::error::{LommelError, Result};
use crate::gamma::{gamma, is_nonpositive_integer};

/// Absolute tolerance applied to every exclusion equality.
pub const EXCLUSION_TOL: f64 = 1e-12;
pub const MAX_SERIES_TERMS: usize = 10_000;

/// A validated (μ, ν) pair: ν² ≠ (μ + 2k + 1)² for every k ≥ 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LommelParams {
    mu: f64,
    nu: f64,
}

impl LommelParams {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        validate_params(mu, nu)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// (μ+1)² − ν², the leading denominator of the series.
    pub fn leading_denominator(&self) -> f64 {
        (self.mu + 1.0).powi(2) - self.nu * self.nu
    }

    /// Errors unless a_{μ,ν} is defined (μ ± ν not an odd negative integer).
    pub fn require_a_coeff(&self) -> Result<()> {
        a_coeff(self.mu, self.nu).map(|_| ())
    }
}

/// Value of a numerical evaluation with an error estimate and a work count
/// (series terms or quadrature nodes).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub est_error: f64,
    pub terms_or_nodes: usize,
}

pub fn validate_params(mu: f64, nu: f64) -> Result<LommelParams> {
    if !mu.is_finite() || !nu.is_finite() {
        return Err(LommelError::Domain(format!("non-finite parameters mu = {mu}, nu = {nu}")));
    }
    let kmax = (nu.abs() + mu.abs()).ceil() as u32 + 2;
    for k in 0..=kmax {
        let shifted = mu + 2.0 * k as f64 + 1.0;
        if (nu * nu - shifted * shifted).abs() < EXCLUSION_TOL {
            return Err(LommelError::ExcludedCase { k });
        }
    }
    Ok(LommelParams { mu, nu })
}

fn check_z(mu: f64, z: f64) -> Result<()> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(LommelError::Domain(format!("z = {z} must be finite and nonnegative")));
    }
    if z == 0.0 && mu + 1.0 <= 0.0 {
        return Err(LommelError::Domain(format!("z^(mu+1) is singular at z = 0 for mu = {mu}")));
    }
    Ok(())
}

/// Sums the bracketed series Σ_k (−z²)^k / Π_{j=1..k}((μ+2j+1)² − ν²), also
/// returning the first omitted term and the term count. `weight(k)` scales the
/// k-th term; it is used for term-wise derivatives.
fn bracket_series(p: &LommelParams, z: f64, tol: f64, weight: impl Fn(usize) -> f64) -> Result<(f64, f64, usize)> {
    let z2 = z * z;
    let mut term = 1.0;
    let mut sum = weight(0);
    for k in 1..MAX_SERIES_TERMS {
        let shifted = p.mu + 2.0 * k as f64 + 1.0;
        let denom = shifted * shifted - p.nu * p.nu;
        term *= -z2 / denom;
        let next = term * weight(k);
        // The ratio test only counts once the denominators have overtaken z².
        if next.abs() < tol * sum.abs() && denom > z2 && shifted > 0.0 {
            return Ok((sum, next.abs(), k));
        }
        sum += next;
        if term == 0.0 {
            return Ok((sum, 0.0, k));
        }
    }
    Err(LommelError::NonConvergence(format!(
        "Lommel series did not converge within {MAX_SERIES_TERMS} terms (z = {z}, tol = {tol})"
    )))
}

/// s_{μ,ν}(z) from the defining series.
pub fn lommel_series(p: &LommelParams, z: f64, tol: f64) -> Result<EvalResult> {
    check_z(p.mu, z)?;
    if !(tol > 0.0) {
        return Err(LommelError::Domain(format!("tol = {tol} must be positive")));
    }
    if z == 0.0 {
        return Ok(EvalResult { value: 0.0, est_error: 0.0, terms_or_nodes: 1 });
    }
    let prefactor = z.powf(p.mu + 1.0) / p.leading_denominator();
    let (sum, omitted, terms) = bracket_series(p, z, tol, |_| 1.0)?;
    Ok(EvalResult { value: prefactor * sum, est_error: (prefactor * omitted).abs(), terms_or_nodes: terms })
}

/// (s, s′, s″) at `z > 0`, each from term-wise differentiation of the series.
pub fn lommel_series_derivatives(p: &LommelParams, z: f64, tol: f64) -> Result<(f64, f64, f64)> {
    check_z(p.mu, z)?;
    if z == 0.0 {
        return Err(LommelError::Domain("derivatives are evaluated for z > 0".into()));
    }
    let exponent = |k: usize| p.mu + 1.0 + 2.0 * k as f64;
    let lead = 1.0 / p.leading_denominator();
    let base = z.powf(p.mu + 1.0) * lead;
    let (s, _, _) = bracket_series(p, z, tol, |_| 1.0)?;
    let (d1, _, _) = bracket_series(p, z, tol, |k| exponent(k))?;
    let (d2, _, _) = bracket_series(p, z, tol, |k| exponent(k) * (exponent(k) - 1.0))?;
    Ok((base * s, base * d1 / z, base * d2 / (z * z)))
}

/// Residual of z²s″ + zs′ + (z² − ν²)s − z^{μ+1}.
pub fn ode_residual(p: &LommelParams, z: f64, tol: f64) -> Result<f64> {
    let (s, d1, d2) = lommel_series_derivatives(p, z, tol)?;
    Ok(z * z * d2 + z * d1 + (z * z - p.nu * p.nu) * s - z.powf(p.mu + 1.0))
}

/// Generalized hypergeometric ₁F₂(a; b1, b2; x) by direct summation.
pub fn hyp1f2(a: f64, b1: f64, b2: f64, x: f64, tol: f64) -> Result<f64> {
    if is_nonpositive_integer(b1, 0.0) || is_nonpositive_integer(b2, 0.0) {
        return Err(LommelError::Pole(format!("1F2 lower parameter at a pole: b1 = {b1}, b2 = {b2}")));
    }
    let mut term = 1.0;
    let mut sum: f64 = 1.0;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * x / ((b1 + kf) * (b2 + kf) * (kf + 1.0));
        term *= ratio;
        if term.abs() < tol * sum.abs() && ratio.abs() < 1.0 && (b1 + kf) * (b2 + kf) > x.abs() {
            return Ok(sum);
        }
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
    }
    Err(LommelError::NonConvergence("1F2 series did not converge".into()))
}

/// s_{μ,ν}(z) through the ₁F₂ representation.
pub fn lommel_hyp1f2(p: &LommelParams, z: f64, tol: f64) -> Result<f64> {
    check_z(p.mu, z)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    let prefactor = z.powf(p.mu + 1.0) / p.leading_denominator();
    let f = hyp1f2(1.0, (p.mu - p.nu + 3.0) / 2.0, (p.mu + p.nu + 3.0) / 2.0, -z * z / 4.0, tol)?;
    Ok(prefactor * f)
}

/// a_{μ,ν} = 2 Γ((μ+1+ν)/2) Γ((μ+1−ν)/2) / (Γ((μ+ν)/2) Γ((μ−ν)/2)).
pub fn a_coeff(mu: f64, nu: f64) -> Result<f64> {
    let args = [(mu + 1.0 + nu) / 2.0, (mu + 1.0 - nu) / 2.0, (mu + nu) / 2.0, (mu - nu) / 2.0];
    if let Some(x) = args.iter().find(|&&x| is_nonpositive_integer(x, EXCLUSION_TOL)) {
        return Err(LommelError::Pole(format!("Gamma argument {x} in a(mu = {mu}, nu = {nu})")));
    }
    Ok(2.0 * gamma(args[0]) * gamma(args[1]) / (gamma(args[2]) * gamma(args[3])))
}

/// s_{μ+2,ν}(z) = z^{μ+1} − ((μ+1)² − ν²) s_{μ,ν}(z).
pub fn recurrence_step(p: &LommelParams, z: f64, s_mu: f64) -> f64 {
    z.powf(p.mu + 1.0) - p.leading_denominator() * s_mu
}

/// s_{n,ν}(z) for integer n ≥ 1 computed purely from the ν-recurrence
/// (2ν/z) s_{n+1,ν} = (n+ν) s_{n,ν−1} − (n−ν) s_{n,ν+1}, bottoming out in
/// series evaluations at μ = 0.
pub fn nu_recurrence(n_target: u32, nu: f64, z: f64) -> Result<f64> {
    if n_target == 0 {
        return Err(LommelError::Domain("n_target must be at least 1".into()));
    }
    if !(z > 0.0) {
        return Err(LommelError::Domain(format!("z = {z} must be positive")));
    }
    recurse_nu(n_target, nu, z)
}

fn recurse_nu(n: u32, nu: f64, z: f64) -> Result<f64> {
    if n == 0 {
        let p = validate_params(0.0, nu)?;
        return Ok(lommel_series(&p, z, 1e-17)?.value);
    }
    if nu.abs() < EXCLUSION_TOL {
        return Err(LommelError::Domain("nu recurrence divides by 2 nu; nu = 0".into()));
    }
    validate_params(n as f64, nu)?;
    let lower = (n - 1) as f64;
    let minus = if (lower + nu).abs() < EXCLUSION_TOL { 0.0 } else { (lower + nu) * recurse_nu(n - 1, nu - 1.0, z)? };
    let plus = if (lower - nu).abs() < EXCLUSION_TOL { 0.0 } else { (lower - nu) * recurse_nu(n - 1, nu + 1.0, z)? };
    Ok(z / (2.0 * nu) * (minus - plus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn validation_examples() {
        assert!(validate_params(0.0, 0.5).is_ok());
        assert_eq!(validate_params(0.0, 1.0), Err(LommelError::ExcludedCase { k: 0 }));
        assert!(validate_params(0.5, 2.5).is_ok());
        assert_eq!(validate_params(0.5, 3.5), Err(LommelError::ExcludedCase { k: 1 }));
        assert_eq!(validate_params(1.0, -4.0), Err(LommelError::ExcludedCase { k: 1 }));
        assert!(validate_params(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn leading_term_behaviour() {
        let p = validate_params(1.0, 0.25).unwrap();
        let z: f64 = 1e-6;
        let v = lommel_series(&p, z, 1e-16).unwrap().value;
        assert!(rel(v / z.powf(2.0), 1.0 / (4.0 - 0.0625)) < 1e-9);
    }

    #[test]
    fn closed_form_half_half() {
        // s_{1/2,1/2}(z) = (1 − cos z)/√z
        let p = validate_params(0.5, 0.5).unwrap();
        let r = lommel_series(&p, PI, 1e-16).unwrap();
        assert!(rel(r.value, 2.0 / PI.sqrt()) < 1e-13);
        assert!(r.est_error >= 0.0 && r.terms_or_nodes >= 1);
        let v = lommel_series(&p, 2.0 * PI, 1e-16).unwrap().value;
        assert!(v.abs() < 1e-13);
        assert_eq!(lommel_series(&p, 0.0, 1e-16).unwrap().value, 0.0);
    }

    #[test]
    fn bad_inputs() {
        let p = validate_params(0.5, 0.5).unwrap();
        assert!(matches!(lommel_series(&p, -1.0, 1e-12), Err(LommelError::Domain(_))));
        assert!(matches!(lommel_series(&p, 1.0, 0.0), Err(LommelError::Domain(_))));
        assert!(matches!(lommel_series(&p, 1e4, 1e-16), Err(LommelError::NonConvergence(_))));
    }

    #[test]
    fn a_coeff_examples() {
        assert!(rel(a_coeff(1.0, 0.0).unwrap(), 2.0 / PI) < 1e-13);
        assert!(rel(a_coeff(2.0, 1.0).unwrap(), 4.0 / PI) < 1e-13);
        assert!(rel(a_coeff(1.3, 0.4).unwrap(), a_coeff(1.3, -0.4).unwrap()) < 1e-14);
        assert!(matches!(a_coeff(-1.0, 0.0), Err(LommelError::Pole(_))));
        assert!(matches!(a_coeff(0.0, -3.0), Err(LommelError::Pole(_))));
    }

    #[test]
    fn mu_recurrence() {
        let p = validate_params(0.5, 0.5).unwrap();
        let s = 2.0 / PI.sqrt();
        let expected = PI.powf(1.5) - 2.0 * s;
        assert!(rel(recurrence_step(&p, PI, s), expected) < 1e-14);

        let p = validate_params(0.7, 0.2).unwrap();
        let s = lommel_series(&p, 2.0, 1e-17).unwrap().value;
        let up = lommel_series(&validate_params(2.7, 0.2).unwrap(), 2.0, 1e-17).unwrap().value;
        assert!(rel(recurrence_step(&p, 2.0, s), up) < 1e-10);

        // ν = μ + 1 is excluded before any recurrence can be formed.
        assert_eq!(LommelParams::new(0.5, 1.5), Err(LommelError::ExcludedCase { k: 0 }));
    }

    #[test]
    fn nu_recurrence_matches_series() {
        for &(nu, z) in &[(0.5, 1.0), (0.25, 2.0)] {
            let direct = lommel_series(&validate_params(1.0, nu).unwrap(), z, 1e-17).unwrap().value;
            assert!(rel(nu_recurrence(1, nu, z).unwrap(), direct) < 1e-10, "nu = {nu}");
        }
        let direct = lommel_series(&validate_params(3.0, 0.3).unwrap(), 1.5, 1e-17).unwrap().value;
        assert!(rel(nu_recurrence(3, 0.3, 1.5).unwrap(), direct) < 1e-9);
        assert!(matches!(nu_recurrence(1, 0.0, 1.0), Err(LommelError::Domain(_))));
    }

    #[test]
    fn hypergeometric_form_is_term_identical() {
        for &(mu, nu, z) in &[(0.3, 0.1, 0.5), (1.7, 0.8, 3.0), (2.2, 0.4, 7.5)] {
            let p = validate_params(mu, nu).unwrap();
            let a = lommel_series(&p, z, 1e-17).unwrap().value;
            let b = lommel_hyp1f2(&p, z, 1e-17).unwrap();
            assert!(rel(a, b) < 1e-12, "({mu}, {nu}, {z})");
        }
    }

    #[test]
    fn ode_is_satisfied() {
        for &(mu, nu) in &[(0.4, 0.3), (1.9, 0.7), (2.6, 0.05)] {
            let p = validate_params(mu, nu).unwrap();
            for &z in &[0.5f64, 1.0, 2.0, 5.0] {
                let r = ode_residual(&p, z, 1e-17).unwrap();
                assert!(r.abs() < 1e-8 * z.powf(mu + 1.0).max(1.0), "({mu}, {nu}, {z}): {r}");
            }
        }
    }
}
