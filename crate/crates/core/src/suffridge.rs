//! Suffridge polynomials `S_{N,j}` in their several guises: the coefficient
//! sum, the rational closed form, the boundary formula, and the Brandt
//! representation.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curve::TOL_GEOM;
use crate::error::{Error, Result};
use crate::poly::RealPolynomial;

/// Below this `|1 - 2 cos(alpha) z + z^2|` the closed form is abandoned for the
/// coefficient sum.
pub const SWITCH_TOL: f64 = 1e-6;

/// Degree `N` and index `1 <= j <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuffridgeParams {
    n: usize,
    j: usize,
}

impl SuffridgeParams {
    pub fn new(n: usize, j: usize) -> Result<Self> {
        if n == 0 || j == 0 || j > n {
            return Err(Error::InvalidParameter(format!(
                "Suffridge parameters need 1 <= j <= N, got N = {n}, j = {j}"
            )));
        }
        Ok(Self { n, j })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// `alpha = j pi / (N + 1)`.
    pub fn alpha(&self) -> f64 {
        self.j as f64 * PI / (self.n + 1) as f64
    }

    /// `(-1)^j`.
    fn parity_sign(&self) -> f64 {
        if self.j % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Angle and length of the trigonometric sums `sum_{k<=N} sin(k alpha) z^k`
/// and friends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigSumParams {
    pub alpha: f64,
    pub n: usize,
}

impl TrigSumParams {
    pub fn new(alpha: f64, n: usize) -> Result<Self> {
        if n == 0 || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "trigonometric sum needs N >= 1 and finite alpha, got N = {n}, alpha = {alpha}"
            )));
        }
        Ok(Self { alpha, n })
    }
}

/// `A_k = ((N + 1 - k) / N) sin(k alpha) / sin(alpha)`, `k = 1..N`.
pub fn coeffs(params: SuffridgeParams) -> RealPolynomial {
    let n = params.n as f64;
    let s = sin_pi_ratio(params.j, params.n + 1);
    let c = (1..=params.n)
        .map(|k| (n + 1.0 - k as f64) / n * sin_pi_ratio(k * params.j, params.n + 1) / s)
        .collect();
    RealPolynomial::new(c).expect("Suffridge leading coefficient is (-1)^(j-1)/N")
}

/// `sin(m pi / d)` with `m` reduced into `[0, d/2]` exactly, so that
/// multiples of `d` give 0 and symmetric angles give identical values.
fn sin_pi_ratio(m: usize, d: usize) -> f64 {
    let m = m % (2 * d);
    let (m, sign) = if m > d { (m - d, -1.0) } else { (m, 1.0) };
    let m = m.min(d - m);
    sign * (PI * m as f64 / d as f64).sin()
}

fn quadratic_factor(alpha: f64, z: Complex64) -> Complex64 {
    1.0 - 2.0 * alpha.cos() * z + z * z
}

fn nonsingular(alpha: f64, z: Complex64) -> Result<Complex64> {
    let d = quadratic_factor(alpha, z);
    if d.norm() <= TOL_GEOM {
        Err(Error::SingularDenominator { re: z.re, im: z.im })
    } else {
        Ok(d)
    }
}

/// Closed form of `sum_{k=1}^N sin(k alpha) z^k`.
pub fn sine_sum_closed(p: TrigSumParams, z: Complex64) -> Result<Complex64> {
    let d = nonsingular(p.alpha, z)?;
    let n = p.n as f64;
    let a = p.alpha;
    let zn = z.powu(p.n as u32);
    let num = a.sin() - ((n + 1.0) * a).sin() * zn + (n * a).sin() * zn * z;
    Ok(z * num / d)
}

/// Closed form of `sum_{k=1}^N cos(k alpha) z^k`.
pub fn cosine_sum_closed(p: TrigSumParams, z: Complex64) -> Result<Complex64> {
    let d = nonsingular(p.alpha, z)?;
    let n = p.n as f64;
    let a = p.alpha;
    let zn = z.powu(p.n as u32);
    let num = a.cos() - z - ((n + 1.0) * a).cos() * zn + (n * a).cos() * zn * z;
    Ok(z * num / d)
}

/// Closed form of `sum_{k=1}^N k sin(k alpha) z^k`, i.e. `z d/dz` of the sine
/// sum.
pub fn weighted_sine_sum_closed(p: TrigSumParams, z: Complex64) -> Result<Complex64> {
    let d = nonsingular(p.alpha, z)?;
    let n = p.n as f64;
    let a = p.alpha;
    let (s1, c1) = a.sin_cos();
    let sn = (n * a).sin();
    let sn1 = ((n + 1.0) * a).sin();
    let zn = z.powu(p.n as u32);
    let num = s1 - s1 * z * z - (n + 1.0) * sn1 * zn
        + ((n + 2.0) * sn + 2.0 * n * c1 * sn1) * zn * z
        - ((n - 1.0) * sn1 + 2.0 * (n + 1.0) * c1 * sn) * zn * z * z
        + n * sn * zn * z * z * z;
    Ok(z * num / (d * d))
}

/// `S_{N,j}(z)` from the rational closed form, falling back to the coefficient
/// sum near the (removable) zeros of `1 - 2 cos(alpha) z + z^2`.
pub fn closed_form_eval(params: SuffridgeParams, z: Complex64) -> Complex64 {
    let alpha = params.alpha();
    let d = quadratic_factor(alpha, z);
    if d.norm() < SWITCH_TOL {
        return coeffs(params).eval(z);
    }
    let n = params.n as f64;
    let sign = params.parity_sign();
    let zn1 = z.powu(params.n as u32 + 1);
    let num =
        n - 2.0 * (n + 1.0) * alpha.cos() * z + (n + 2.0) * z * z + sign * zn1 - sign * zn1 * z * z;
    z * num / (n * d * d)
}

/// Result of evaluating the printed unit-circle formula next to the true value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryAudit {
    pub t: f64,
    /// The unit-circle formula exactly as published.
    pub printed: Complex64,
    /// `S_{N,j}(e^{it})` by coefficient summation.
    pub direct: Complex64,
    /// `|printed - direct|`.
    pub delta: f64,
}

/// Evaluates the published unit-circle formula
/// `(N+1) / (2N(cos t - cos a)) + i sin t (1 - (-1)^j e^{i(N+1)t}) / (2N(cos t - cos a))`
/// verbatim and reports how far it is from the coefficient sum.
pub fn boundary_formula_eval(params: SuffridgeParams, t: f64) -> Result<BoundaryAudit> {
    let n = params.n as f64;
    let gap = t.cos() - params.alpha().cos();
    let z = Complex64::from_polar(1.0, t);
    if gap.abs() <= TOL_GEOM {
        return Err(Error::SingularDenominator { re: z.re, im: z.im });
    }
    let denom = 2.0 * n * gap;
    let wave = Complex64::from_polar(1.0, (n + 1.0) * t);
    let printed =
        (n + 1.0) / denom + Complex64::i() * t.sin() * (1.0 - params.parity_sign() * wave) / denom;
    let direct = coeffs(params).eval(z);
    Ok(BoundaryAudit {
        t,
        printed,
        direct,
        delta: (printed - direct).norm(),
    })
}

/// `S_{N,1}(-1) = -(1/4) ((N+1)/N) sec^2(pi / (2(N+1)))`.
pub fn value_at_minus_one(n: usize) -> f64 {
    let nf = n as f64;
    let c = (PI / (2.0 * (nf + 1.0))).cos();
    -0.25 * (nf + 1.0) / nf / (c * c)
}

/// `S_{N,1}(1) = (1/4) ((N+1)/N) csc^2(pi / (2(N+1)))`, the largest modulus a
/// degree-N schlicht polynomial reaches on the disc.
pub fn value_at_plus_one(n: usize) -> f64 {
    let nf = n as f64;
    let s = (PI / (2.0 * (nf + 1.0))).sin();
    0.25 * (nf + 1.0) / nf / (s * s)
}

/// How the Brandt formulas are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BrandtReading {
    /// Token-for-token as published.
    Printed,
    /// The repaired reading under which the representation reproduces the
    /// closed form.
    Reconciled,
}

/// The Brandt representation of `S_{N,j}` with `n = N + 1` and the single
/// nonzero coefficient pair at `k = floor((j+1)/2)` equal to `1/(2 sqrt N)`.
pub fn brandt_eval(params: SuffridgeParams, z: Complex64) -> Result<Complex64> {
    brandt_eval_with(params, z, BrandtReading::Reconciled)
}

pub fn brandt_eval_with(
    params: SuffridgeParams,
    z: Complex64,
    reading: BrandtReading,
) -> Result<Complex64> {
    let n = params.n + 1;
    let k = params.j.div_ceil(2);
    let beta = 0.5 / (params.n as f64).sqrt();
    // Index ranges: odd j uses the b-family, even j the c-family.
    let odd = params.j % 2 == 1;
    let (primary_len, secondary_len) = if odd {
        (n.div_ceil(2), n / 2)
    } else {
        (n / 2, (n - 1) / 2)
    };
    let mut primary = vec![0.0; primary_len];
    let mut secondary = vec![0.0; secondary_len];
    primary[k - 1] = beta;
    secondary[k - 1] = beta;
    if odd {
        brandt_odd(n, &primary, &secondary, z, reading)
    } else {
        brandt_even(n, &primary, &secondary, z, reading)
    }
}

fn brandt_denominator(z: Complex64, angle: f64) -> Result<Complex64> {
    let d = 1.0 - 2.0 * z * angle.cos() + z * z;
    if d.norm() <= TOL_GEOM {
        Err(Error::SingularDenominator { re: z.re, im: z.im })
    } else {
        Ok(d)
    }
}

/// Formula (3): `b` has `[(n+1)/2]` entries, `b'` has `[n/2]`, angles
/// `(2k-1) pi / n`.
///
/// Reconciled reading: in lines two and three the printed factor `(1+z^2)`
/// becomes `(1+z)^2` and `(1-z)^2` respectively, and the first sum in the
/// closing constant runs over `b_k` rather than `b'_k`.
fn brandt_odd(
    n: usize,
    b: &[f64],
    b2: &[f64],
    z: Complex64,
    reading: BrandtReading,
) -> Result<Complex64> {
    let nf = n as f64;
    let angle = |k: usize| (2 * k - 1) as f64 * PI / nf;
    let mut first = Complex64::new(0.0, 0.0);
    for k in 1..=n / 2 {
        let (bk, bk2) = (b.get(k - 1).copied().unwrap_or(0.0), b2[k - 1]);
        if bk == 0.0 && bk2 == 0.0 {
            continue;
        }
        let half = angle(k) / 2.0;
        let w = bk * bk * half.cos().powi(2) + bk2 * bk2 * half.sin().powi(2);
        first += 4.0 * nf * w * z / brandt_denominator(z, angle(k))?;
    }
    let sum_b = weighted_reciprocal_sum(b, z, angle)?;
    let sum_b2 = weighted_reciprocal_sum(b2, z, angle)?;
    let common = (1.0 + z.powu(n as u32)) * (1.0 - z * z);
    let (f2, f3) = match reading {
        BrandtReading::Printed => (1.0 + z * z, 1.0 + z * z),
        BrandtReading::Reconciled => ((1.0 + z).powu(2), (1.0 - z).powu(2)),
    };
    let b2_sum: f64 = b2.iter().sum();
    let constant = match reading {
        BrandtReading::Printed => {
            let leading: f64 = b2.iter().take(n.div_ceil(2)).sum();
            leading * leading - b2_sum * b2_sum
        }
        BrandtReading::Reconciled => {
            let b_sum: f64 = b.iter().sum();
            b_sum * b_sum - b2_sum * b2_sum
        }
    };
    Ok(first - common * f2 * sum_b * sum_b + common * f3 * sum_b2 * sum_b2 + constant)
}

/// Formula (4): `c` has `[n/2]` entries, `c'` has `[(n-1)/2]`, angles
/// `2 k pi / n`.
///
/// Reconciled reading: the `(1+z^2)` factors become `(1+z)^2` and `(1-z)^2`
/// as in formula (3), and the printed `cos(k pi / n)` in the second line's
/// denominator becomes `cos(2 k pi / n)` to match the other two sums.
fn brandt_even(
    n: usize,
    c: &[f64],
    c2: &[f64],
    z: Complex64,
    reading: BrandtReading,
) -> Result<Complex64> {
    let nf = n as f64;
    let angle = |k: usize| 2.0 * k as f64 * PI / nf;
    let mut first = Complex64::new(0.0, 0.0);
    for k in 1..=(n - 1) / 2 {
        let (ck, ck2) = (c[k - 1], c2[k - 1]);
        if ck == 0.0 && ck2 == 0.0 {
            continue;
        }
        let half = k as f64 * PI / nf;
        let w = ck * ck * half.cos().powi(2) + ck2 * ck2 * half.sin().powi(2);
        first += 4.0 * nf * w * z / brandt_denominator(z, angle(k))?;
    }
    let sum_c = match reading {
        BrandtReading::Printed => weighted_reciprocal_sum(c, z, |k| k as f64 * PI / nf)?,
        BrandtReading::Reconciled => weighted_reciprocal_sum(c, z, angle)?,
    };
    let sum_c2 = weighted_reciprocal_sum(c2, z, angle)?;
    let common = (1.0 - z.powu(n as u32)) * (1.0 - z * z);
    let (f2, f3) = match reading {
        BrandtReading::Printed => (1.0 + z * z, 1.0 + z * z),
        BrandtReading::Reconciled => ((1.0 + z).powu(2), (1.0 - z).powu(2)),
    };
    let cs: f64 = c.iter().sum();
    let cs2: f64 = c2.iter().sum();
    Ok(first - common * f2 * sum_c * sum_c + common * f3 * sum_c2 * sum_c2 + cs * cs - cs2 * cs2)
}

fn weighted_reciprocal_sum(
    weights: &[f64],
    z: Complex64,
    angle: impl Fn(usize) -> f64,
) -> Result<Complex64> {
    let mut s = Complex64::new(0.0, 0.0);
    for (i, &w) in weights.iter().enumerate() {
        if w != 0.0 {
            s += w / brandt_denominator(z, angle(i + 1))?;
        }
    }
    Ok(s)
}
