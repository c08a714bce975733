//! The invariant suite run by `lommel verify`, and the fixed parameter grids
//! it shares with the tests.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::hyp_trig::{a_k_n, a_k_n_exact, f_n, hyp2f1_series, hyp2f1_trig, lommel_trig_integral, ode_residual as trig_ode_residual};
use crate::lommel::{a_coeff, lommel_hyp1f2, lommel_series, nu_recurrence, ode_residual, validate_params};
use crate::pade::{
    a_scaling, bc_scaling_factor, bc_scaling_factor_factorial, odd_family_raw, odd_from_even_recurrence,
    pythagorean_check, triple_even_closed, triple_even_derivative, triple_general, triple_odd_closed,
    triple_odd_derivative, ApproximantTriple, Normalization,
};
use crate::quadrature::{kernel_f, lommel_cos_quadrature, lommel_quadrature, lommel_s0_angular, sign_changes, KernelSpec};
use crate::ratpoly::{int, pade_order_check, rat, series_mismatch, trig_series, TrigKind};
use crate::roots::{all_roots, family_poly, table1, table2, Family, Which, RESIDUAL_BOUND};

pub const PATH_SEED: u64 = 20;
pub const ODE_SEED: u64 = 1;
pub const PATH_Z: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];
pub const ODE_Z: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
pub const SWEEP_NU: [f64; 4] = [0.13, 0.37, 0.61, 0.89];
pub const SWEEP_THETA: [f64; 5] = [0.2, 0.7, 1.3, 2.1, 2.9];
pub const S0_NU: [f64; 3] = [0.1, 0.5, 0.9];
/// Grid points per interval of length π when counting sign changes.
pub const S0_SAMPLES: usize = 64;
const TOL: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Deterministic (μ, ν) pairs drawn uniformly from the given ranges, keeping
/// only pairs accepted by `valid`.
pub fn random_pairs(
    seed: u64,
    count: usize,
    mu: (f64, f64),
    nu: (f64, f64),
    valid: impl Fn(f64, f64) -> bool,
) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let pair = (rng.gen_range(mu.0..mu.1), rng.gen_range(nu.0..nu.1));
        if valid(pair.0, pair.1) {
            out.push(pair);
        }
    }
    out
}

/// The 20 (μ, ν) pairs of the three-path comparison, μ ∈ (0.6, 3), ν ∈ (0, 1).
pub fn path_grid() -> Vec<(f64, f64)> {
    random_pairs(PATH_SEED, 20, (0.6, 3.0), (0.0, 1.0), |mu, nu| {
        validate_params(mu, nu).is_ok() && a_coeff(mu + 2.0, nu).is_ok() && kernel_f(mu, nu, 0.0).is_ok()
    })
}

/// The 20 (μ, ν) pairs of the ODE and recurrence residual checks.
pub fn ode_grid() -> Vec<(f64, f64)> {
    random_pairs(ODE_SEED, 20, (0.0, 3.0), (0.0, 1.0), |mu, nu| validate_params(mu, nu).is_ok())
}

/// |a − b| / max(1, |b|)
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

pub fn series_value(mu: f64, nu: f64, z: f64) -> Result<f64> {
    Ok(lommel_series(&validate_params(mu, nu)?, z, 1e-17)?.value)
}

/// Sign changes of s_{0,ν} on [kπ − h/2, (k+1)π − h/2] with h = π/S0_SAMPLES,
/// so the zero at the left end of (kπ, (k+1)π) is seen from both sides.
pub fn s0_sign_changes(nu: f64, k: u32) -> Result<usize> {
    let h = PI / S0_SAMPLES as f64;
    let a = k as f64 * PI - h / 2.0;
    sign_changes(|z| Ok(lommel_s0_angular(nu, z, 1e-12)?.value), a, a + PI, S0_SAMPLES + 1)
}

/// Primitive even and odd family triples for n = 0..=nmax.
pub fn family_triples(nmax: u32) -> Vec<ApproximantTriple> {
    (0..=nmax).flat_map(|n| [triple_even_closed(n), triple_odd_derivative(n)]).collect()
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn run(&mut self, module: &'static str, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("{}: {e}", e.kind())),
        };
        self.checks.push(Check { module, name, passed, detail });
    }
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(items: I) -> Result<f64> {
    items.into_iter().try_fold(0.0f64, |acc, v| Ok(acc.max(v?)))
}

fn verdict(worst: f64, bound: f64) -> (bool, String) {
    (worst < bound, format!("max {worst:.3e} (bound {bound:.0e})"))
}

fn ratpoly_checks(s: &mut Suite) {
    s.run("ratpoly", "order check examples", || {
        let t = triple_even_closed(1);
        let mut perturbed = t.clone();
        perturbed.b = &perturbed.b + &crate::ratpoly::RationalPoly::monomial(int(1), 4);
        let trivial = ApproximantTriple {
            m: 0,
            n: 0,
            a: crate::ratpoly::RationalPoly::from_ints(&[1]),
            b: crate::ratpoly::RationalPoly::from_ints(&[1]),
            c: crate::ratpoly::RationalPoly::zero(),
            normalization: Normalization::Primitive,
        };
        let ok = pade_order_check(&trivial, 2).holds
            && pade_order_check(&t, 4).holds
            && pade_order_check(&perturbed, 5).first_failing_power == Some(4);
        Ok((ok, String::new()))
    });
    s.run("ratpoly", "d/dz sine series = cosine series", || {
        let ok = (1..=30).all(|n| trig_series(TrigKind::Sine, n).derivative() == trig_series(TrigKind::Cosine, n - 1));
        Ok((ok, "N = 1..30".into()))
    });
    s.run("ratpoly", "order check is scale invariant", || {
        let factor = rat(-7, 3);
        let ok = (0..=5u32).all(|n| {
            let t = triple_even_closed(n);
            let scaled = t.scaled(&factor, Normalization::PaperDisplay);
            (1..=2 * n as usize + 4).all(|k| pade_order_check(&t, k) == pade_order_check(&scaled, k))
        });
        Ok((ok, String::new()))
    });
}

fn lommel_checks(s: &mut Suite) {
    s.run("lommel_core", "ODE residual", || {
        let worst = max_over(ode_grid().into_iter().flat_map(|(mu, nu)| {
            ODE_Z.iter().map(move |&z| {
                let p = validate_params(mu, nu)?;
                Ok(ode_residual(&p, z, 1e-17)? / z.powf(mu + 1.0).max(1.0))
            })
        }))?;
        Ok(verdict(worst, 1e-8))
    });
    s.run("lommel_core", "mu recurrence residual", || {
        let worst = max_over(ode_grid().into_iter().flat_map(|(mu, nu)| {
            ODE_Z.iter().map(move |&z| {
                let lhs = series_value(mu + 2.0, nu, z)? + ((mu + 1.0).powi(2) - nu * nu) * series_value(mu, nu, z)?;
                Ok((lhs - z.powf(mu + 1.0)).abs())
            })
        }))?;
        Ok(verdict(worst, 1e-9))
    });
    s.run("lommel_core", "series vs 1F2", || {
        let worst = max_over(ode_grid().into_iter().flat_map(|(mu, nu)| {
            ODE_Z.iter().map(move |&z| {
                let p = validate_params(mu, nu)?;
                let series = lommel_series(&p, z, 1e-17)?.value;
                Ok((lommel_hyp1f2(&p, z, 1e-17)? - series).abs() / series.abs())
            })
        }))?;
        Ok(verdict(worst, 1e-12))
    });
    s.run("lommel_core", "nu recurrence vs series", || {
        let cases = [(1, 0.5, 1.0), (1, 0.25, 2.0), (2, 0.3, 1.5), (3, 0.7, 2.5)];
        let worst = max_over(cases.iter().map(|&(n, nu, z)| {
            let direct = series_value(n as f64, nu, z)?;
            Ok((nu_recurrence(n, nu, z)? - direct).abs() / direct.abs())
        }))?;
        Ok(verdict(worst, 1e-9))
    });
}

fn quadrature_checks(s: &mut Suite) {
    let grid = path_grid();
    s.run("quadrature", "sine kernel vs series", || {
        let worst = max_over(grid.iter().flat_map(|&(mu, nu)| {
            PATH_Z.iter().map(move |&z| Ok(rel_diff(lommel_quadrature(mu, nu, z, 1e-12)?.value, series_value(mu, nu, z)?)))
        }))?;
        Ok(verdict(worst, 1e-8))
    });
    s.run("quadrature", "cosine kernel vs series", || {
        let worst = max_over(grid.iter().flat_map(|&(mu, nu)| {
            PATH_Z.iter().map(move |&z| Ok(rel_diff(lommel_cos_quadrature(mu, nu, z, 1e-12)?.value, series_value(mu, nu, z)?)))
        }))?;
        Ok(verdict(worst, 1e-8))
    });
    s.run("quadrature", "polynomial kernel vs series", || {
        let worst = max_over(grid.iter().take(5).flat_map(|&(mu, _)| {
            (0..=3u32).flat_map(move |n| {
                PATH_Z.iter().map(move |&z| {
                    let nu = n as f64 + 0.5;
                    if validate_params(mu, nu).is_err() {
                        return Ok(0.0);
                    }
                    Ok(rel_diff(KernelSpec::polynomial(mu, n)?.lommel_value(z, 1e-12)?.value, series_value(mu, nu, z)?))
                })
            })
        }))?;
        Ok(verdict(worst, 1e-8))
    });
    s.run("quadrature", "kernel differential recurrence", || {
        let h = 1e-5;
        let worst = max_over([(1.5, 0.3), (2.0, 0.7)].iter().flat_map(|&(mu, nu)| {
            [0.2, 0.5, 0.8].into_iter().map(move |t| {
                let derivative = (kernel_f(mu, nu, t + h)? - kernel_f(mu, nu, t - h)?) / (2.0 * h);
                Ok((derivative + a_coeff(mu, nu)? * lower_kernel(mu - 1.0, nu, t)?).abs())
            })
        }))?;
        Ok(verdict(worst, 1e-5))
    });
    s.run("quadrature", "s_{0,nu} has one zero per pi-interval", || {
        let mut counts = Vec::new();
        for nu in S0_NU {
            for k in 0..=5 {
                counts.push(s0_sign_changes(nu, k)?);
            }
        }
        Ok((counts.iter().all(|&c| c == 1), format!("{counts:?}")))
    });
    s.run("quadrature", "positivity on the positive axis", || {
        let mut worst = f64::INFINITY;
        for mu in [1.0, 2.0] {
            for j in 1..=40 {
                worst = worst.min(lommel_quadrature(mu, mu / 2.0, j as f64 * PI / 4.0, 1e-12)?.value);
            }
        }
        Ok((worst > 0.0, format!("min {worst:.3e}")))
    });
}

/// f_{μ,ν} for μ down to −½, where the integral forms no longer apply but the
/// kernel itself is defined.
fn lower_kernel(mu: f64, nu: f64, t: f64) -> Result<f64> {
    let c = mu + 0.5;
    let h = hyp2f1_series(0.5 + nu, 0.5 - nu, c, 0.5 * (1.0 - t), 1e-17)?;
    let norm = hyp2f1_series(0.5 + nu, 0.5 - nu, c, 0.5, 1e-17)?;
    Ok((1.0 - t).powf(mu - 0.5) * h / norm)
}

fn pade_checks(s: &mut Suite) {
    s.run("pade_family", "closed and derivative routes agree", || {
        let ok = (0..=10).all(|n| triple_even_closed(n) == triple_even_derivative(n).to_primitive());
        let odd = (0..=10).map(triple_odd_closed).collect::<Result<Vec<_>>>()?;
        let odd_ok = odd.iter().zip(0..).all(|(t, n)| *t == triple_odd_derivative(n));
        Ok((ok && odd_ok, "n = 0..10".into()))
    });
    s.run("pade_family", "order conditions", || {
        let even = (0..=10).all(|n| pade_order_check(&triple_even_closed(n), 2 * n as usize + 2).holds);
        let odd = (0..=10).all(|n| pade_order_check(&triple_odd_derivative(n), 2 * n as usize + 4).holds);
        let mut general = true;
        for (m, n) in [(2, 0), (3, 1), (2, 2), (4, 2), (5, 3), (4, 0), (6, 4)] {
            general &= pade_order_check(&triple_general(m, n)?, (m + n + 2) as usize).holds;
        }
        Ok((even && odd && general, String::new()))
    });
    s.run("pade_family", "sine approximant gains one order", || {
        // n = 0 is excluded: C_{0,0} = 0 and C_{1,1}/A_{1,1} only reaches O(z^3).
        let even = (1..=10).all(|n| {
            let t = triple_even_closed(n);
            series_mismatch(&t.c, &t.a, TrigKind::Sine, 2 * n as usize + 3).is_none()
        });
        let odd = (1..=10).all(|n| {
            let t = triple_odd_derivative(n);
            series_mismatch(&t.c, &t.a, TrigKind::Sine, 2 * n as usize + 5).is_none()
        });
        Ok((even && odd, String::new()))
    });
    s.run("pade_family", "A coefficients positive", || {
        let ok = family_triples(10).iter().all(|t| t.a.coeffs().iter().step_by(2).all(|c| *c > int(0)));
        Ok((ok, String::new()))
    });
    s.run("pade_family", "B^2 + C^2 - A^2 vanishes to order", || {
        // Off the two families B/A and C/A are not separate cos/sin
        // approximants, and the relation fails already at (2, 0).
        let families = family_triples(10).iter().all(pythagorean_check);
        Ok((families && !pythagorean_check(&triple_general(2, 0)?), String::new()))
    });
    s.run("pade_family", "scaling relations", || {
        let mut ok = true;
        for m in 1..=2u32 {
            for n in 1..=2u32 {
                let (even_base, even) = (triple_even_derivative(n), triple_general(2 * m, 2 * n)?);
                let f = bc_scaling_factor(m, 2 * n, false);
                ok &= f == bc_scaling_factor_factorial(m, n, false);
                ok &= even.b == even_base.b.scale(&f) && even.c == even_base.c.scale(&f);
                ok &= even.a == a_scaling(m, 2 * n, &even_base.a, false);
                let (odd_base, odd) = (odd_family_raw(n), triple_general(2 * m + 1, 2 * n + 1)?);
                let f = bc_scaling_factor(m, 2 * n + 1, true);
                ok &= f == bc_scaling_factor_factorial(m, n, true);
                ok &= odd.b == odd_base.b.scale(&f) && odd.c == odd_base.c.scale(&f);
                ok &= odd.a == a_scaling(m, 2 * n + 1, &odd_base.a, true);
            }
        }
        Ok((ok, "(m, n) in {1,2}^2, both parities".into()))
    });
    s.run("pade_family", "odd family from even recurrence", || {
        let ok = (0..=10).all(|n| odd_from_even_recurrence(n) == odd_family_raw(n));
        Ok((ok, "n = 0..10".into()))
    });
}

fn roots_checks(s: &mut Suite) {
    s.run("roots", "root residuals and conjugate closure", || {
        let mut worst = 0.0f64;
        let mut closed = true;
        for family in [Family::Even, Family::Odd] {
            for n in 1..=10 {
                for which in [Which::A, Which::B, Which::C] {
                    let r = all_roots(&family_poly(family, which, n))?;
                    worst = worst.max(r.max_residual());
                    closed &= r.roots.len() == r.poly_degree;
                    closed &= r.roots.iter().all(|z| r.roots.iter().any(|w| (*w - z.conj()).norm() <= 1e-10 * z.norm().max(1.0)));
                }
            }
        }
        Ok((closed && worst < RESIDUAL_BOUND, format!("max residual {worst:.3e}")))
    });
    s.run("roots", "A roots complex, B and C roots real", || {
        let (mut min_a, mut max_bc) = (f64::INFINITY, 0.0f64);
        for family in [Family::Even, Family::Odd] {
            for n in 1..=10 {
                min_a = min_a.min(all_roots(&family_poly(family, Which::A, n))?.min_abs_imag());
                for which in [Which::B, Which::C] {
                    max_bc = max_bc.max(all_roots(&family_poly(family, which, n))?.max_abs_imag());
                }
            }
        }
        Ok((min_a > 1e-8 && max_bc < 1e-8, format!("min |Im| of A roots {min_a:.3e}, max |Im| of B, C roots {max_bc:.3e}")))
    });
    s.run("roots", "table columns decrease in k", || {
        let mut ok = true;
        for table in [table1(8)?, table2(8)?] {
            for n in 1..=8 {
                let column: Vec<f64> = (n..=8).filter_map(|k| table.get(k, n)).collect();
                ok &= column.len() == (9 - n) as usize && column.windows(2).all(|w| w[1] < w[0]);
            }
        }
        Ok((ok, String::new()))
    });
}

fn hyp_trig_checks(s: &mut Suite) {
    s.run("hyp_trig", "closed form vs Gauss series", || {
        let mut worst = 0.0f64;
        for n in 1..=6 {
            for nu in SWEEP_NU {
                for theta in SWEEP_THETA {
                    let x = (theta / 2.0).sin().powi(2);
                    let series = hyp2f1_series(0.5 + nu, 0.5 - nu, n as f64 + 0.5, x, 1e-17)?;
                    worst = worst.max(rel_diff(hyp2f1_trig(n, nu, theta)?, series));
                }
            }
        }
        Ok(verdict(worst, 1e-11))
    });
    s.run("hyp_trig", "boundary values of f_n", || {
        let worst = max_over((1..=6).flat_map(|n| {
            SWEEP_NU.into_iter().map(move |nu| Ok((f_n(n, nu, PI / 2.0)? - 1.0).abs().max(f_n(n, nu, 0.0)?.abs())))
        }))?;
        Ok(verdict(worst, 1e-13))
    });
    s.run("hyp_trig", "ODE residual of f_n", || {
        let worst = max_over((1..=5).flat_map(|n| {
            [0.25, 0.5, 0.75].into_iter().flat_map(move |nu| {
                (1..=10).map(move |j| trig_ode_residual(n, nu, j as f64 * PI / 22.0))
            })
        }))?;
        Ok(verdict(worst, 1e-9))
    });
    s.run("hyp_trig", "coefficient recursion exact", || {
        let mut ok = true;
        for nu in [rat(3, 10), rat(1, 4), rat(-7, 9)] {
            for n in 1..=6u32 {
                for k in 1..n {
                    let (ki, ni) = (int(k as i64), int(n as i64));
                    let lhs = &ki * (&ki + &nu) * a_k_n_exact(n, k, &nu)?
                        + (&ki - &ni) * (&ki - &ni + &nu) * a_k_n_exact(n, k - 1, &nu)?;
                    ok &= lhs == int(0);
                }
            }
        }
        let float = (a_k_n(2, 0, 0.3)? - 1.3 / 0.6).abs() < 1e-15;
        Ok((ok && float, String::new()))
    });
    s.run("hyp_trig", "parity in nu", || {
        let mut worst = 0.0f64;
        for n in 1..=6 {
            for nu in SWEEP_NU {
                for theta in SWEEP_THETA {
                    worst = worst.max(rel_diff(hyp2f1_trig(n, -nu, theta)?, hyp2f1_trig(n, nu, theta)?));
                }
            }
        }
        Ok(verdict(worst, 1e-11))
    });
    s.run("hyp_trig", "trigonometric integral vs series", || {
        let worst = max_over((0..=3u32).flat_map(|n| {
            [0.3, 0.5].into_iter().flat_map(move |nu| {
                [1.0, 2.0].into_iter().map(move |z| Ok(rel_diff(lommel_trig_integral(n, nu, z, 1e-13)?.value, series_value(n as f64, nu, z)?)))
            })
        }))?;
        Ok(verdict(worst, 1e-9))
    });
    s.run("hyp_trig", "n = 1 matches the polynomial kernel", || {
        let worst = max_over([0.5, 1.0, 2.0, 5.0].into_iter().map(|z| {
            Ok(rel_diff(lommel_trig_integral(1, 1.5, z, TOL)?.value, KernelSpec::polynomial(1.0, 1)?.lommel_value(z, 1e-12)?.value))
        }))?;
        Ok(verdict(worst, 1e-9))
    });
}

/// Every module invariant check, in a fixed order.
pub fn run_all() -> Vec<Check> {
    let mut s = Suite { checks: Vec::new() };
    ratpoly_checks(&mut s);
    lommel_checks(&mut s);
    quadrature_checks(&mut s);
    pade_checks(&mut s);
    roots_checks(&mut s);
    hyp_trig_checks(&mut s);
    s.checks
}

pub fn summary(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} [{}] {}", c.module, c.name));
        if !c.detail.is_empty() {
            out.push_str(&format!(": {}", c.detail));
        }
        out.push('\n');
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    out
}
