//! Polynomial triples (A, B, C) with A − B cos z − C sin z vanishing to high
//! order at the origin, so that B/A and C/A approximate cos and sin.
//!
//! Indices follow the half-integer Lommel parametrization: the triple (m, n)
//! satisfies
//!
//! ```text
//! s_{m+1/2, n+1/2}(z) = (A(z) − B(z) cos z − C(z) sin z) / z^{n+1/2}
//! ```
//!
//! in its [`Normalization::RawDerivative`] scaling. The even family is
//! (0, 2n) and the odd family is (1, 2n+1).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LommelError, Result};
use crate::ratpoly::{factorial, int, rat, Rational, RationalPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Integer coefficients, joint gcd 1, positive constant term of A.
    Primitive,
    /// A caller-chosen rescaling, e.g. to match a tabulated display.
    PaperDisplay,
    /// The scaling fixed by the Lommel identity above.
    RawDerivative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproximantTriple {
    pub m: u32,
    pub n: u32,
    #[serde(rename = "A")]
    pub a: RationalPoly,
    #[serde(rename = "B")]
    pub b: RationalPoly,
    #[serde(rename = "C")]
    pub c: RationalPoly,
    pub normalization: Normalization,
}

impl ApproximantTriple {
    pub fn polys(&self) -> [&RationalPoly; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn scaled(&self, factor: &Rational, normalization: Normalization) -> Self {
        ApproximantTriple {
            a: self.a.scale(factor),
            b: self.b.scale(factor),
            c: self.c.scale(factor),
            normalization,
            ..self.clone()
        }
    }

    /// Clears denominators, divides by the joint gcd, and makes A's lowest
    /// nonzero coefficient (its constant term in every family) positive.
    pub fn to_primitive(&self) -> Self {
        let polys = self.polys();
        let lcm = polys.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
        let cleared: Vec<RationalPoly> = polys.iter().map(|p| p.scale(&Rational::from_integer(lcm.clone()))).collect();
        let gcd = cleared.iter().fold(BigInt::zero(), |acc, p| acc.gcd(&p.numerator_gcd()));
        if gcd.is_zero() {
            return ApproximantTriple { normalization: Normalization::Primitive, ..self.clone() };
        }
        let lead = cleared[0].lowest_power().map(|k| cleared[0].coeff(k)).unwrap_or_else(|| int(1));
        let sign = if lead.is_negative() { -BigInt::one() } else { BigInt::one() };
        let factor = Rational::new(lcm * sign, gcd);
        self.scaled(&factor, Normalization::Primitive)
    }

    /// B/A and C/A agree as rational functions.
    pub fn same_ratios(&self, other: &ApproximantTriple) -> bool {
        &self.a * &other.b == &other.a * &self.b && &self.a * &other.c == &other.a * &self.c
    }

    /// Value of (A − B cos z − C sin z)/z^{n+1/2}; equals s_{m+½,n+½}(z) for
    /// raw-derivative triples.
    pub fn lommel_value(&self, z: f64) -> f64 {
        let combo = self.a.eval_f64(z) - self.b.eval_f64(z) * z.cos() - self.c.eval_f64(z) * z.sin();
        combo / z.powf(self.n as f64 + 0.5)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("triple serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| LommelError::Parse(e.to_string()))
    }
}

fn bigrat(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

fn fact(n: u64) -> Rational {
    bigrat(factorial(n))
}

fn sign(k: u64) -> Rational {
    if k % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Legendre polynomial P_{2n}(t) from its explicit sum.
pub fn legendre_poly(n: u32) -> RationalPoly {
    let n = n as u64;
    let mut coeffs = vec![Rational::zero(); 2 * n as usize + 1];
    let scale = Rational::new(BigInt::one(), BigInt::from(2).pow(2 * n as u32));
    for k in 0..=n {
        let c = sign(k) * fact(4 * n - 2 * k) / (fact(k) * fact(2 * n - k) * fact(2 * n - 2 * k));
        coeffs[(2 * n - 2 * k) as usize] = c * &scale;
    }
    RationalPoly::new(coeffs)
}

/// p_{2n}(t) = P_{2n}(t)/P_{2n}(0).
pub fn p_normalized(n: u32) -> RationalPoly {
    let p = legendre_poly(n);
    let at_zero = p.coeff(0);
    p.scale(&(int(1) / at_zero))
}

/// q_{2n+1}(t) = (1−t) ₂F₁(−2n−1, 2n+2; 2; (1−t)/2) / ₂F₁(−2n−1, 2n+2; 2; ½),
/// a polynomial of degree 2n+2 with q(0) = 1.
pub fn q_poly(n: u32) -> RationalPoly {
    let a = -(2 * n as i64) - 1;
    let b = 2 * n as i64 + 2;
    let mut coeffs = vec![int(1)];
    let mut term = int(1);
    for k in 0..(2 * n as i64 + 1) {
        term = term * int(a + k) * int(b + k) / (int(2 + k) * int(k + 1));
        coeffs.push(term.clone());
    }
    let in_x = RationalPoly::new(coeffs);
    let x_of_t = RationalPoly::new(vec![rat(1, 2), rat(-1, 2)]);
    let one_minus_t = RationalPoly::from_ints(&[1, -1]);
    let q = &one_minus_t * &in_x.compose(&x_of_t);
    let at_zero = q.coeff(0);
    q.scale(&(int(1) / at_zero))
}

/// z^{k+1} ∫ sin(zt) R(t) dt split as Σ_p z^p (cos(zt) cos_part[p](t) + sin(zt) sin_part[p](t)).
#[derive(Clone, Debug, PartialEq)]
pub struct SinAntiderivative {
    pub degree: usize,
    pub cos_part: Vec<RationalPoly>,
    pub sin_part: Vec<RationalPoly>,
}

impl SinAntiderivative {
    /// The antiderivative itself (without the z^{k+1} factor) at (z, t).
    pub fn eval(&self, z: f64, t: f64) -> f64 {
        let (s, c) = (z * t).sin_cos();
        let mut acc = 0.0;
        for (p, (cp, sp)) in self.cos_part.iter().zip(&self.sin_part).enumerate() {
            acc += z.powi(p as i32) * (c * cp.eval_f64(t) + s * sp.eval_f64(t));
        }
        acc / z.powi(self.degree as i32 + 1)
    }

    /// ∫₀¹ sin(zt) R(t) dt
    pub fn definite(&self, z: f64) -> f64 {
        self.eval(z, 1.0) - self.eval(z, 0.0)
    }

    /// (A, B, C) with z^{k+1} ∫₀¹ sin(zt) R(t) dt = A − B cos z − C sin z.
    pub fn boundary_polys(&self) -> (RationalPoly, RationalPoly, RationalPoly) {
        let collect = |parts: &[RationalPoly], t: &Rational| {
            -RationalPoly::new(parts.iter().map(|p| p.eval_rational(t)).collect())
        };
        let (zero, one) = (int(0), int(1));
        (collect(&self.cos_part, &zero), collect(&self.cos_part, &one), collect(&self.sin_part, &one))
    }
}

/// Repeated integration by parts of ∫ sin(zt) R(t) dt.
pub fn antideriv_sin(r: &RationalPoly) -> Result<SinAntiderivative> {
    let k = r.degree().ok_or_else(|| LommelError::Domain("antiderivative of the zero polynomial".into()))?;
    let mut cos_part = vec![RationalPoly::zero(); k + 1];
    let mut sin_part = vec![RationalPoly::zero(); k + 1];
    for j in 0..=k / 2 {
        let even = r.nth_derivative(2 * j);
        cos_part[k - 2 * j] = even.scale(&sign(j as u64 + 1));
        if k >= 2 * j + 1 {
            sin_part[k - 2 * j - 1] = even.derivative().scale(&sign(j as u64));
        }
    }
    Ok(SinAntiderivative { degree: k, cos_part, sin_part })
}

/// Coefficient triple from derivatives of a kernel polynomial at t = 0, 1:
/// A = Σ (−1)^j z^{k−2j} R^{(2j)}(0), B likewise at 1,
/// C = Σ (−1)^{j+1} z^{k−2j−1} R^{(2j+1)}(1), with k = deg R.
fn derivative_triple(r: &RationalPoly) -> (RationalPoly, RationalPoly, RationalPoly) {
    let k = r.degree().unwrap_or(0);
    let (mut a, mut b, mut c) = (vec![int(0); k + 1], vec![int(0); k + 1], vec![int(0); k + 1]);
    let (zero, one) = (int(0), int(1));
    for j in 0..=k / 2 {
        let d = r.nth_derivative(2 * j);
        a[k - 2 * j] = sign(j as u64) * d.eval_rational(&zero);
        b[k - 2 * j] = sign(j as u64) * d.eval_rational(&one);
        if k > 2 * j {
            c[k - 2 * j - 1] = sign(j as u64 + 1) * d.derivative().eval_rational(&one);
        }
    }
    (RationalPoly::new(a), RationalPoly::new(b), RationalPoly::new(c))
}

/// Even family (0, 2n) from derivatives of p_{2n}, raw Lommel scaling.
pub fn triple_even_derivative(n: u32) -> ApproximantTriple {
    let (a, b, c) = derivative_triple(&p_normalized(n));
    ApproximantTriple { m: 0, n: 2 * n, a, b, c, normalization: Normalization::RawDerivative }
}

/// Odd family (1, 2n+1) from derivatives of q_{2n+1}, raw Lommel scaling.
pub fn odd_family_raw(n: u32) -> ApproximantTriple {
    let (a, b, c) = derivative_triple(&q_poly(n));
    ApproximantTriple { m: 1, n: 2 * n + 1, a, b, c, normalization: Normalization::RawDerivative }
}

pub fn triple_odd_derivative(n: u32) -> ApproximantTriple {
    odd_family_raw(n).to_primitive()
}

/// Raw-scaled even family from the closed factorial sums.
pub fn even_closed_raw(n: u32) -> ApproximantTriple {
    let n64 = n as u64;
    let deg = 2 * n as usize;
    let pre = fact(n64) * fact(n64) / fact(2 * n64);
    let pre_signed = &pre * sign(n64);
    let (mut a, mut b, mut c) = (vec![int(0); deg + 1], vec![int(0); deg + 1], vec![int(0); deg + 1]);
    let two = BigInt::from(2);
    for k in 0..=n64 {
        let p = (2 * n64 - 2 * k) as usize;
        a[p] = &pre * fact(2 * n64 + 2 * k) / (fact(n64 + k) * fact(n64 - k));
        b[p] = &pre_signed * sign(k) * fact(2 * n64 + 2 * k) / (fact(2 * k) * fact(2 * n64 - 2 * k))
            * bigrat(two.pow(p as u32));
        if k < n64 {
            let p = p - 1;
            c[p] = &pre_signed * sign(k + 1) * fact(2 * n64 + 2 * k + 1)
                / (fact(2 * k + 1) * fact(2 * n64 - 2 * k - 1))
                * bigrat(two.pow(p as u32));
        }
    }
    ApproximantTriple {
        m: 0,
        n: 2 * n,
        a: RationalPoly::new(a),
        b: RationalPoly::new(b),
        c: RationalPoly::new(c),
        normalization: Normalization::RawDerivative,
    }
}

pub fn triple_even_closed(n: u32) -> ApproximantTriple {
    even_closed_raw(n).to_primitive()
}

/// Closed factorial sums for B_{1,2n+1} and C_{1,2n+1} (raw scaling).
pub fn odd_closed_bc(n: u32) -> (RationalPoly, RationalPoly) {
    let n64 = n as u64;
    let pre = int(2) * int(2 * n as i64 + 1) * fact(n64 + 1) * fact(n64 + 1) * sign(n64) / fact(2 * n64 + 2);
    let two = BigInt::from(2);
    let mut b = vec![int(0); 2 * n as usize + 1];
    let mut c = vec![int(0); 2 * n as usize + 2];
    for k in 0..=n64 {
        let p = (2 * n64 - 2 * k) as usize;
        b[p] = &pre * sign(k) * fact(2 * n64 + 2 * k + 2) / (fact(2 * k + 1) * fact(2 * n64 - 2 * k))
            * bigrat(two.pow(p as u32));
        c[p + 1] = &pre * sign(k) * fact(2 * n64 + 2 * k + 1) / (fact(2 * k) * fact(2 * n64 - 2 * k + 1))
            * bigrat(two.pow(p as u32 + 1));
    }
    (RationalPoly::new(b), RationalPoly::new(c))
}

/// Odd family with B, C from the closed sums and A from the q-derivative
/// route; the known closed sum for A is not usable (it contains factorials
/// of negative integers).
pub fn triple_odd_closed(n: u32) -> Result<ApproximantTriple> {
    let reference = odd_family_raw(n);
    let (b, c) = odd_closed_bc(n);
    let closed = ApproximantTriple { b, c, ..reference.clone() };
    let (closed_p, reference_p) = (closed.to_primitive(), reference.to_primitive());
    if closed_p != reference_p {
        return Err(LommelError::Reconciliation(format!(
            "closed B/C for the odd family disagree with the q-derivative route at n = {n}"
        )));
    }
    Ok(closed_p)
}

/// Odd family from the even family via
/// A_{1,2n+1} = ((2n+1) A_{0,2n+2} + 2(n+1) z² A_{0,2n}) / (4n+3),
/// and the same combination for B and C.
pub fn odd_from_even_recurrence(n: u32) -> ApproximantTriple {
    let lo = triple_even_derivative(n);
    let hi = triple_even_derivative(n + 1);
    let z2 = RationalPoly::monomial(int(2 * (n as i64 + 1)), 2);
    let w = int(2 * n as i64 + 1);
    let inv = int(1) / int(4 * n as i64 + 3);
    let combine = |h: &RationalPoly, l: &RationalPoly| (&h.scale(&w) + &(&z2 * l)).scale(&inv);
    ApproximantTriple {
        m: 1,
        n: 2 * n + 1,
        a: combine(&hi.a, &lo.a),
        b: combine(&hi.b, &lo.b),
        c: combine(&hi.c, &lo.c),
        normalization: Normalization::RawDerivative,
    }
}

/// Triple (m, n) from the base families by the m-direction difference
/// equations A_{m+2,n} + (m+n+2)(m+1−n) A_{m,n} = z^{m+n+2} (homogeneous for
/// B and C). Raw Lommel scaling.
pub fn triple_general(m: u32, n: u32) -> Result<ApproximantTriple> {
    if m % 2 != n % 2 {
        return Err(LommelError::ExcludedIndex(format!(
            "(m, n) = ({m}, {n}) is not reachable from the (0, even) or (1, odd) base families"
        )));
    }
    let mut t = if n % 2 == 0 { triple_even_derivative(n / 2) } else { odd_family_raw((n - 1) / 2) };
    if m < t.m {
        return Err(LommelError::ExcludedIndex(format!("(m, n) = ({m}, {n}) lies below the base family")));
    }
    while t.m < m {
        let mi = t.m as i64;
        let ni = n as i64;
        let factor = int((mi + ni + 2) * (mi + 1 - ni));
        if factor.is_zero() {
            return Err(LommelError::ExcludedIndex(format!("vanishing factor at m = {mi}, n = {n}")));
        }
        let power = RationalPoly::monomial(int(1), (mi + ni + 2) as usize);
        let neg = -factor;
        t = ApproximantTriple {
            m: t.m + 2,
            a: &power + &t.a.scale(&neg),
            b: t.b.scale(&neg),
            c: t.c.scale(&neg),
            ..t
        };
    }
    Ok(t)
}

/// B² + C² − A² vanishes below power m + n + 2.
pub fn pythagorean_check(t: &ApproximantTriple) -> bool {
    let residual = &(&(&t.b * &t.b) + &(&t.c * &t.c)) - &(&t.a * &t.a);
    let bound = (t.m + t.n + 2) as usize;
    residual.lowest_power().is_none_or(|p| p >= bound)
}

/// Rising factorial (x)_k.
pub fn pochhammer(x: &Rational, k: u32) -> Rational {
    (0..k).fold(int(1), |acc, j| acc * (x + int(j as i64)))
}

/// Factor F in B_{2m+parity, n} = F · B_{parity, n} (identically for C), from
/// the Gamma-ratio form with Γ(x+m)/Γ(x) written as (x)_m.
pub fn bc_scaling_factor(m: u32, n: u32, odd: bool) -> Rational {
    let ni = n as i64;
    let s = int(2).pow(2 * m as i32) * sign(m as u64);
    if odd {
        s * pochhammer(&rat(ni + 3, 2), m) * pochhammer(&rat(2 - ni, 2), m)
    } else {
        s * pochhammer(&rat(ni + 2, 2), m) * pochhammer(&rat(1 - ni, 2), m)
    }
}

/// The same factor for B_{2m,2n} in its factorial form
/// (−1)^m 4^m (m+n)! Γ(m−n+½) / (n! Γ(½−n)), and for B_{2m+1,2n+1}
/// (−1)^m 4^m (m+n+1)! Γ(m−n+½) / ((n+1)! Γ(½−n)).
pub fn bc_scaling_factor_factorial(m: u32, n: u32, odd: bool) -> Rational {
    let (m64, n64) = (m as u64, n as u64);
    let gamma_ratio = pochhammer(&rat(1 - 2 * n as i64, 2), m);
    let fact_ratio = if odd { fact(m64 + n64 + 1) / fact(n64 + 1) } else { fact(m64 + n64) / fact(n64) };
    int(2).pow(2 * m as i32) * sign(m64) * fact_ratio * gamma_ratio
}

/// A_{2m+parity, n} from the closed scaling form
/// F · A_{parity,n} + (−1)^{m+1} 4^m z^{n+2+parity}/4 Σ_{j<m} (−1)^j (z/2)^{2j} G_j,
/// with G_j the Gamma ratios written as rising factorials.
pub fn a_scaling(m: u32, n: u32, base_a: &RationalPoly, odd: bool) -> RationalPoly {
    let ni = n as i64;
    let shift = if odd { 1 } else { 0 };
    let f = bc_scaling_factor(m, n, odd);
    let mut inhomogeneous = RationalPoly::zero();
    for j in 0..m as i64 {
        let k = (m as i64 - 1 - j) as u32;
        let g = pochhammer(&rat(2 * j + ni + 4 + shift, 2), k) * pochhammer(&rat(2 * j + 3 + shift - ni, 2), k);
        let coeff = sign(j as u64) * g / int(2).pow(2 * j as i32);
        inhomogeneous = &inhomogeneous + &RationalPoly::monomial(coeff, (2 * j + ni + 2 + shift) as usize);
    }
    let lead = int(2).pow(2 * m as i32) * sign(m as u64 + 1) / int(4);
    &base_a.scale(&f) + &inhomogeneous.scale(&lead)
}
