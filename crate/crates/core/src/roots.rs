//! Complex roots of the triple polynomials, the relative zero discrepancy
//! tables, and root coordinates for the A polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{LommelError, Result};
use crate::pade::{triple_even_closed, triple_odd_derivative, ApproximantTriple};
use crate::ratpoly::{rat_from_f64, rat_to_f64, Rational, RationalPoly};

pub const MAX_SWEEPS: usize = 500;
pub const RESIDUAL_BOUND: f64 = 1e-10;
pub const MAX_TABLE_K: u32 = 8;
pub const MAX_FIG_N: u32 = 12;
/// Bits after the binary point kept by the real-root bisection.
const BISECTION_BITS: u32 = 160;
/// Bisection stops once the bracket is narrower than 2^-STOP_BITS.
const STOP_BITS: u32 = 130;
const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Even,
    Odd,
}

impl FromStr for Family {
    type Err = LommelError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Family::Even),
            "odd" => Ok(Family::Odd),
            _ => Err(LommelError::Parse(format!("family must be even or odd, got {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Even => "even",
            Family::Odd => "odd",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    A,
    B,
    C,
}

impl FromStr for Which {
    type Err = LommelError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Which::A),
            "B" | "b" => Ok(Which::B),
            "C" | "c" => Ok(Which::C),
            _ => Err(LommelError::Parse(format!("polynomial must be A, B or C, got {s:?}"))),
        }
    }
}

/// Primitive triple of the even family (0, 2n) or odd family (1, 2n+1).
pub fn family_triple(family: Family, n: u32) -> ApproximantTriple {
    match family {
        Family::Even => triple_even_closed(n),
        Family::Odd => triple_odd_derivative(n),
    }
}

pub fn family_poly(family: Family, which: Which, n: u32) -> RationalPoly {
    let t = family_triple(family, n);
    match which {
        Which::A => t.a,
        Which::B => t.b,
        Which::C => t.c,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootSet {
    #[serde(serialize_with = "serialize_pairs")]
    pub roots: Vec<Complex64>,
    /// The roots as dyadic rationals after the multiprecision polish;
    /// `roots` holds these rounded to double and the residuals refer to them.
    #[serde(skip)]
    pub precise: Vec<(Rational, Rational)>,
    pub residuals: Vec<f64>,
    pub poly_degree: usize,
}

fn serialize_pairs<S: Serializer>(roots: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(roots.iter().map(|r| [r.re, r.im]))
}

impl RootSet {
    /// Strictly positive roots with zero imaginary part, ascending.
    pub fn positive_real(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.roots.iter().filter(|r| r.im == 0.0 && r.re > 0.0).map(|r| r.re).collect();
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.roots.iter().map(|r| r.im.abs()).fold(0.0, f64::max)
    }

    pub fn min_abs_imag(&self) -> f64 {
        self.roots.iter().map(|r| r.im.abs()).fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("root set serialization is infallible")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,residual\n");
        for (r, res) in self.roots.iter().zip(&self.residuals) {
            out.push_str(&format!("{:.5e},{:.5e},{:.5e}\n", r.re, r.im, res));
        }
        out
    }
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration on a polynomial with nonzero constant term.
fn aberth(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = monic[0].abs().powf(1.0 / d as f64);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let magnitudes: Vec<f64> = monic.iter().map(|c| c.abs()).collect();
    let mut done = vec![false; d];
    for _ in 0..MAX_SWEEPS {
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(&monic, z[i]);
            // Stop once |p| is at the level of rounding in Horner's rule.
            let noise = horner(&magnitudes, Complex64::new(z[i].norm(), 0.0)).0.re;
            if p.norm() <= 8.0 * d as f64 * f64::EPSILON * noise {
                done[i] = true;
                continue;
            }
            let w = p / dp;
            let repulsion: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = w / (1.0 - w * repulsion);
            if !step.is_finite() {
                return Err(LommelError::NonConvergence("Aberth step is not finite".into()));
            }
            z[i] -= step;
            if step.norm() <= f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&x| x) {
            return Ok(z);
        }
    }
    Err(LommelError::NonConvergence(format!("Aberth iteration did not settle in {MAX_SWEEPS} sweeps")))
}

fn newton_polish(coeffs: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..4 {
        let (p, dp) = horner(coeffs, z);
        if dp == Complex64::new(0.0, 0.0) {
            break;
        }
        let next = z - p / dp;
        if !next.is_finite() || horner(coeffs, next).0.norm() >= p.norm() {
            break;
        }
        z = next;
    }
    z
}

/// Bits after the binary point kept by the multiprecision Newton polish.
const POLISH_BITS: u32 = 160;
const POLISH_STEPS: usize = 8;


/// Integer coefficients of a rational multiple of `p`.
fn integer_coeffs(p: &RationalPoly) -> Vec<BigInt> {
    let lcm = Rational::from_integer(p.denominator_lcm());
    p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect()
}

/// 2^{s·d} p((a + ib)/2^s) for integer coefficients of degree d.
fn horner_scaled(c: &[BigInt], a: &BigInt, b: &BigInt, s: u32) -> (BigInt, BigInt) {
    let d = c.len() - 1;
    let (mut re, mut im) = (c[d].clone(), BigInt::zero());
    for i in (0..d).rev() {
        let next_re = &re * a - &im * b + (&c[i] << (s as usize * (d - i)));
        im = &re * b + &im * a;
        re = next_re;
    }
    (re, im)
}

fn round_div(n: &BigInt, m: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(&((n << 1) + m), &(m << 1))
}

fn dyadic(n: &BigInt, bits: u32) -> Rational {
    Rational::new(n.clone(), BigInt::one() << bits)
}

/// Newton iteration on iterates (a + ib)/2^s held as integers, with p and p'
/// evaluated exactly.
fn exact_newton(c: &[BigInt], dc: &[BigInt], z: Complex64) -> Result<(BigInt, BigInt)> {
    let s = POLISH_BITS;
    let scale = Rational::from_integer(BigInt::one() << s);
    let to_int = |x: f64| -> Result<BigInt> { Ok((rat_from_f64(x)? * &scale).round().to_integer()) };
    let (mut a, mut b) = (to_int(z.re)?, to_int(z.im)?);
    let settled = BigInt::from(16);
    for _ in 0..POLISH_STEPS {
        let (pr, pi) = horner_scaled(c, &a, &b, s);
        if pr.is_zero() && pi.is_zero() {
            break;
        }
        let (dr, di) = horner_scaled(dc, &a, &b, s);
        let norm = &dr * &dr + &di * &di;
        if norm.is_zero() {
            break;
        }
        let step_re = round_div(&(&pr * &dr + &pi * &di), &norm);
        let step_im = round_div(&(&pi * &dr - &pr * &di), &norm);
        a -= &step_re;
        b -= &step_im;
        if step_re.abs() <= settled && step_im.abs() <= settled {
            break;
        }
    }
    Ok((a, b))
}

fn exact_sign(p: &RationalPoly, x: f64) -> Result<i32> {
    let v = p.eval_rational(&rat_from_f64(x)?);
    Ok(if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    })
}

/// Exact residual |p(r)| / (|lead| · max(1, |r|)^deg) at r = (a + ib)/2^s.
fn residual(c: &[BigInt], a: &BigInt, b: &BigInt) -> f64 {
    let s = POLISH_BITS;
    let d = c.len() - 1;
    let (pr, pi) = horner_scaled(c, a, b, s);
    let denom = BigInt::one() << (s as usize * d);
    let part = |x: &BigInt| Rational::new_raw(x.clone(), denom.clone()).to_f64().unwrap_or(f64::INFINITY);
    let value = part(&pr).hypot(part(&pi));
    let modulus = dyadic(a, s).to_f64().unwrap_or(f64::INFINITY).hypot(dyadic(b, s).to_f64().unwrap_or(f64::INFINITY));
    let lead = Rational::from_integer(c[d].clone()).to_f64().unwrap_or(f64::INFINITY).abs();
    value / (lead * modulus.max(1.0).powi(d as i32))
}

fn root_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// All complex roots of `p`, with multiplicity.
pub fn all_roots(p: &RationalPoly) -> Result<RootSet> {
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(LommelError::Domain("all_roots needs a polynomial of degree at least 1".into())),
    };
    let zeros = p.lowest_power().unwrap_or(0);
    let reduced = RationalPoly::new(p.coeffs()[zeros..].to_vec());
    let coeffs = reduced.to_f64_coeffs();
    // Roots as integer pairs (a, b) standing for (a + ib)/2^POLISH_BITS.
    let mut exact: Vec<(BigInt, BigInt)> = vec![(BigInt::zero(), BigInt::zero()); zeros];
    if coeffs.len() > 1 {
        let (c, dc) = (integer_coeffs(&reduced), integer_coeffs(&reduced.derivative()));
        let mut polished = Vec::with_capacity(coeffs.len() - 1);
        for z in aberth(&coeffs)? {
            let z = newton_polish(&coeffs, z);
            let scale = z.norm().max(1e-300);
            if z.im.abs() < 1e-6 * scale {
                let width = 1e-9 * z.re.abs().max(1e-12);
                let (lo, hi) = (exact_sign(&reduced, z.re - width)?, exact_sign(&reduced, z.re + width)?);
                if lo * hi <= 0 {
                    polished.push(Complex64::new(z.re, 0.0));
                    continue;
                }
            }
            polished.push(z);
        }
        let (upper, single) = pair_conjugates(polished);
        for z in upper {
            let (a, b) = exact_newton(&c, &dc, z)?;
            exact.push((a.clone(), -&b));
            exact.push((a, b));
        }
        for z in single {
            exact.push(exact_newton(&c, &dc, z)?);
        }
    }
    let full = integer_coeffs(p);
    let mut entries: Vec<(Complex64, (Rational, Rational), f64)> = exact
        .into_iter()
        .map(|(a, b)| {
            let (re, im) = (dyadic(&a, POLISH_BITS), dyadic(&b, POLISH_BITS));
            let z = Complex64::new(rat_to_f64(&re), rat_to_f64(&im));
            (z, (re, im), residual(&full, &a, &b))
        })
        .collect();
    entries.sort_by(|x, y| root_order(&x.0, &y.0));
    if let Some((z, _, r)) = entries.iter().find(|e| !(e.2 < RESIDUAL_BOUND)) {
        return Err(LommelError::NonConvergence(format!("root {z} has residual {r:e} above {RESIDUAL_BOUND:e}")));
    }
    let mut set = RootSet { roots: Vec::new(), precise: Vec::new(), residuals: Vec::new(), poly_degree: degree };
    for (z, e, r) in entries {
        set.roots.push(z);
        set.precise.push(e);
        set.residuals.push(r);
    }
    Ok(set)
}

/// Splits roots into upper-half-plane representatives of conjugate pairs
/// (each averaged with its nearest lower-half partner) and the rest.
fn pair_conjugates(roots: Vec<Complex64>) -> (Vec<Complex64>, Vec<Complex64>) {
    let (mut upper, mut rest): (Vec<Complex64>, Vec<Complex64>) = roots.into_iter().partition(|r| r.im > 0.0);
    upper.sort_by(root_order);
    let mut pairs = Vec::new();
    let mut unpaired = Vec::new();
    for u in upper {
        let partner = rest
            .iter()
            .enumerate()
            .filter(|(_, r)| r.im < 0.0)
            .min_by(|(_, a), (_, b)| (**a - u.conj()).norm().total_cmp(&(**b - u.conj()).norm()))
            .map(|(i, _)| i);
        match partner {
            Some(i) => {
                let l = rest.swap_remove(i);
                pairs.push(0.5 * (u + l.conj()));
            }
            None => unpaired.push(u),
        }
    }
    unpaired.extend(rest);
    (pairs, unpaired)
}

fn pi_rational() -> Rational {
    let (int_part, frac) = PI_50.split_once('.').expect("pi literal has a point");
    let digits: BigInt = format!("{int_part}{frac}").parse().expect("pi literal is numeric");
    Rational::new(digits, BigInt::from(10).pow(frac.len() as u32))
}

/// Positive real root near `approx`, bisected in exact arithmetic to about
/// 2^-130.
pub fn refine_real_root(p: &RationalPoly, approx: f64) -> Result<Rational> {
    let ints = integer_coeffs(p);
    let d = ints.len() - 1;
    let scale = BigInt::one() << BISECTION_BITS;
    // Sign of p(a / 2^s), via the integer 2^{s·d} p(a / 2^s).
    let sign_at = |a: &BigInt| {
        let mut acc = ints[d].clone();
        for i in (0..d).rev() {
            acc = acc * a + &ints[i] * scale.pow((d - i) as u32);
        }
        acc.sign()
    };
    let to_scaled = |x: f64| -> Result<BigInt> { Ok((rat_from_f64(x)? * Rational::from_integer(scale.clone())).floor().to_integer()) };
    let mut lo = to_scaled(approx * (1.0 - 1e-10))?;
    let mut hi = to_scaled(approx * (1.0 + 1e-10))? + 1;
    let (s_lo, s_hi) = (sign_at(&lo), sign_at(&hi));
    if s_lo == s_hi {
        return Err(LommelError::NonConvergence(format!("no sign change brackets the root near {approx}")));
    }
    let stop = BigInt::one() << (BISECTION_BITS - STOP_BITS);
    while &hi - &lo > stop {
        let mid: BigInt = (&lo + &hi) >> 1;
        let s = sign_at(&mid);
        if s == num_bigint::Sign::NoSign {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Rational::new(lo + hi, scale * 2))
}

/// Lower-triangular table of relative zero discrepancies; `cells[k-1][n-1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroTable {
    pub which: u32,
    pub kmax: u32,
    pub cells: Vec<Vec<Option<f64>>>,
}

impl ZeroTable {
    pub fn get(&self, k: u32, n: u32) -> Option<f64> {
        self.cells.get(k as usize - 1).and_then(|row| row.get(n as usize - 1)).copied().flatten()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k");
        for n in 1..=self.kmax {
            out.push_str(&format!(",{n}"));
        }
        out.push('\n');
        for (k, row) in self.cells.iter().enumerate() {
            out.push_str(&(k + 1).to_string());
            for cell in row {
                out.push(',');
                if let Some(v) = cell {
                    out.push_str(&format!("{v:.5e}"));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serialization is infallible")
    }
}

fn zero_table(which: u32, kmax: u32, poly: impl Fn(u32) -> RationalPoly, reference: impl Fn(u32) -> Rational) -> Result<ZeroTable> {
    if !(1..=MAX_TABLE_K).contains(&kmax) {
        return Err(LommelError::Domain(format!("kmax must lie in 1..={MAX_TABLE_K}, got {kmax}")));
    }
    let mut cells = Vec::new();
    for k in 1..=kmax {
        let p = poly(k);
        let positive = all_roots(&p)?.positive_real();
        let mut row = vec![None; kmax as usize];
        for (i, slot) in row.iter_mut().enumerate() {
            if let Some(&approx) = positive.get(i) {
                let root = refine_real_root(&p, approx)?;
                let target = reference(i as u32 + 1);
                *slot = Some(rat_to_f64(&((root - &target) / target)));
            }
        }
        cells.push(row);
    }
    Ok(ZeroTable { which, kmax, cells })
}

/// Row k uses C_{0,2(k+1)}, compared with the sine zeros nπ.
pub fn table1(kmax: u32) -> Result<ZeroTable> {
    let pi = pi_rational();
    zero_table(1, kmax, |k| triple_even_closed(k + 1).c, |n| &pi * Rational::from_integer(n.into()))
}

/// Row k uses B_{1,2k+1}, compared with the cosine zeros (n − ½)π.
pub fn table2(kmax: u32) -> Result<ZeroTable> {
    let pi = pi_rational();
    zero_table(2, kmax, |k| triple_odd_derivative(k).b, |n| &pi * Rational::new((2 * n as i64 - 1).into(), 2.into()))
}

/// Roots of A_{0,2n} or A_{1,2n+1} for n = 1..=nmax.
pub fn fig_data(family: Family, nmax: u32) -> Result<Vec<(u32, RootSet)>> {
    if !(1..=MAX_FIG_N).contains(&nmax) {
        return Err(LommelError::Domain(format!("nmax must lie in 1..={MAX_FIG_N}, got {nmax}")));
    }
    (1..=nmax).map(|n| Ok((n, all_roots(&family_poly(family, Which::A, n))?))).collect()
}

pub fn fig_data_csv(data: &[(u32, RootSet)]) -> String {
    let mut out = String::from("n,re,im\n");
    for (n, set) in data {
        for r in &set.roots {
            out.push_str(&format!("{n},{:.5e},{:.5e}\n", r.re, r.im));
        }
    }
    out
}

pub fn fig_data_json(data: &[(u32, RootSet)]) -> String {
    #[derive(Serialize)]
    struct Entry<'a> {
        n: u32,
        #[serde(flatten)]
        roots: &'a RootSet,
    }
    let entries: Vec<Entry> = data.iter().map(|(n, roots)| Entry { n: *n, roots }).collect();
    serde_json::to_string(&entries).expect("figure data serialization is infallible")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a.re - re).abs() < 1e-12 && (a.im - im).abs() < 1e-12
    }

    #[test]
    fn simple_roots() {
        let r = all_roots(&RationalPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(r.poly_degree, 2);
        assert!(close(r.roots[0], 0.0, -1.0) && close(r.roots[1], 0.0, 1.0));
        assert_eq!(r.roots[0], r.roots[1].conj());

        let c04 = triple_even_closed(2).c;
        let r = all_roots(&c04).unwrap();
        let s = 10.5f64.sqrt();
        assert!(close(r.roots[0], -s, 0.0) && close(r.roots[1], 0.0, 0.0) && close(r.roots[2], s, 0.0));
        assert_eq!(r.positive_real().len(), 1);

        let b13 = triple_odd_derivative(1).b;
        let r = all_roots(&b13).unwrap();
        assert!((r.roots[1].re - 2.5f64.sqrt()).abs() < 1e-14);
        assert!(r.max_residual() < RESIDUAL_BOUND);
    }

    #[test]
    fn rejects_constants() {
        assert!(all_roots(&RationalPoly::from_ints(&[3])).is_err());
        assert!(all_roots(&RationalPoly::zero()).is_err());
    }

    #[test]
    fn repeated_and_clustered_roots() {
        // (z - 1)^2 (z + 2)
        let p = RationalPoly::from_ints(&[2, -3, 0, 1]);
        let r = all_roots(&p).unwrap();
        assert_eq!(r.roots.len(), 3);
        assert!(r.max_residual() < RESIDUAL_BOUND);
    }

    #[test]
    fn exact_bisection() {
        let b13 = triple_odd_derivative(1).b;
        let root = refine_real_root(&b13, 2.5f64.sqrt()).unwrap();
        let sq = &root * &root - Rational::new(5.into(), 2.into());
        assert!(rat_to_f64(&sq).abs() < 1e-35);
        assert!(refine_real_root(&b13, 3.0).is_err());
    }

    #[test]
    fn table_corners() {
        let t1 = table1(2).unwrap();
        assert!((t1.get(1, 1).unwrap() - 3.1442e-2).abs() < 1e-6);
        assert!((t1.get(2, 1).unwrap() - 2.930e-4).abs() < 1e-6);
        assert_eq!(t1.get(1, 2), None);
        let t2 = table2(1).unwrap();
        assert!((t2.get(1, 1).unwrap() - 6.58e-3).abs() < 1e-5);
        assert_eq!(t2.to_csv(), "k,1\n1,6.58424e-3\n");
        assert!(table1(0).is_err() && table2(9).is_err());
    }

    #[test]
    fn fig_examples() {
        let even = fig_data(Family::Even, 1).unwrap();
        let s6 = 6f64.sqrt();
        assert!(close(even[0].1.roots[0], 0.0, -s6) && close(even[0].1.roots[1], 0.0, s6));
        let csv = fig_data_csv(&even);
        assert!(csv.starts_with("n,re,im\n1,"));
        assert!(fig_data(Family::Odd, 13).is_err());
        let a11 = all_roots(&family_poly(Family::Odd, Which::A, 0)).unwrap();
        let s2 = 2f64.sqrt();
        assert!(close(a11.roots[0], 0.0, -s2) && close(a11.roots[1], 0.0, s2));
        let json = fig_data_json(&fig_data(Family::Odd, 1).unwrap());
        assert!(json.starts_with(r#"[{"n":1,"roots":[["#), "{json}");
        assert!(json.contains(r#""poly_degree":4"#));
    }
}
