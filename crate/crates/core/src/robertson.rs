//! Chebyshev polynomials of the second kind and the Robertson measure of a
//! typically real polynomial.
//!
//! A polynomial `f(z) = sum b_k z^k` is written as
//! `f(z) = int_{-1}^{1} z / (1 - 2tz + z^2) dmu(t)` with density
//! `(2/pi) sqrt(1 - t^2) sum b_k U_{k-1}(t)`.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::quadrature::{gauss_chebyshev_u, gauss_legendre};
use crate::suffridge::{coeffs, SuffridgeParams};

/// Tolerance on negative density values for a typically real source.
pub const TOL_MEAS: f64 = 1e-9;
/// Target change between successive quadrature refinements.
pub const TOL_QUAD: f64 = 1e-13;
const MAX_QUAD_NODES: usize = 1 << 20;

/// `U_k(t)` by the three-term recurrence.
pub fn chebyshev_u(k: usize, t: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * t);
    if k == 0 {
        return 1.0;
    }
    for _ in 1..k {
        (prev, cur) = (cur, 2.0 * t * cur - prev);
    }
    cur
}

/// `(U_k, U_k', U_k'')` at `t`, recurred together.
pub fn chebyshev_u_with_derivatives(k: usize, t: f64) -> (f64, f64, f64) {
    let mut u = (1.0, 2.0 * t);
    let mut d1 = (0.0, 2.0);
    let mut d2 = (0.0, 0.0);
    if k == 0 {
        return (1.0, 0.0, 0.0);
    }
    for _ in 1..k {
        let un = 2.0 * t * u.1 - u.0;
        let d1n = 2.0 * u.1 + 2.0 * t * d1.1 - d1.0;
        let d2n = 4.0 * d1.1 + 2.0 * t * d2.1 - d2.0;
        u = (u.1, un);
        d1 = (d1.1, d1n);
        d2 = (d2.1, d2n);
    }
    (u.1, d1.1, d2.1)
}

/// `|U_k(t) - (3t U_k'(t) - (1 - t^2) U_k''(t)) / (k(k+2))|`.
pub fn chebyshev_identity_residual(k: usize, t: f64) -> Result<f64> {
    identity_residual(k, t, (k * (k + 2)) as f64)
}

/// The same relation with the normalization `1/(k(k+1))`.
pub fn chebyshev_identity_residual_as_printed(k: usize, t: f64) -> Result<f64> {
    identity_residual(k, t, (k * (k + 1)) as f64)
}

fn identity_residual(k: usize, t: f64, norm: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("identity needs k >= 1".into()));
    }
    let (u, d1, d2) = chebyshev_u_with_derivatives(k, t);
    Ok((u - (3.0 * t * d1 - (1.0 - t * t) * d2) / norm).abs())
}

fn check_unit_interval(t: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "t must lie in [-1, 1], got {t}"
        )))
    }
}

/// `sum_k b_k U_{k-1}(t)`, run as a Clenshaw recurrence.
fn u_series(p: &RealPolynomial, t: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in p.coeffs().iter().rev() {
        (b1, b2) = (c + 2.0 * t * b1 - b2, b1);
    }
    b1
}

/// Robertson density `(2/pi) sqrt(1 - t^2) sum b_k U_{k-1}(t)`.
pub fn density(p: &RealPolynomial, t: f64) -> Result<f64> {
    check_unit_interval(t)?;
    Ok(FRAC_2_PI * (1.0 - t * t).sqrt() * u_series(p, t))
}

/// `mu(1)`; equals `b_1` by orthogonality.
pub fn total_mass(p: &RealPolynomial) -> Result<f64> {
    measure_quadrature(p, 1.0)
}

/// Closed-form Robertson measure of an arbitrary polynomial, normalized by
/// `mu(-1) = 0`.
pub fn measure_general(p: &RealPolynomial, t: f64) -> Result<f64> {
    check_unit_interval(t)?;
    let s = (1.0 - t * t).sqrt();
    let head = p.coeff(1) * (0.5 + (t.asin() + t * s) / PI);
    let mut tail = 0.0;
    for (i, &b) in p.coeffs().iter().enumerate().skip(1) {
        let k = i + 1;
        let (_, d1, _) = chebyshev_u_with_derivatives(k - 1, t);
        tail += b * d1 / ((k * k - 1) as f64);
    }
    Ok(head - FRAC_2_PI * s * s * s * tail)
}

/// Robertson measure of `S_{N,j}`.
pub fn measure(params: SuffridgeParams, t: f64) -> Result<f64> {
    measure_general(&coeffs(params), t)
}

/// The Suffridge measure with the printed constant `-1/2` and the factor
/// `sqrt(1 - t^2)` on the `U'` sum.
pub fn measure_as_printed(params: SuffridgeParams, t: f64) -> Result<f64> {
    check_unit_interval(t)?;
    let n = params.n();
    let c = params.alpha().cos();
    let s = (1.0 - t * t).sqrt();
    let mut tail = 0.0;
    for k in 2..=n {
        let (_, d1, _) = chebyshev_u_with_derivatives(k - 1, t);
        tail += (n + 1 - k) as f64 / ((k * k - 1) as f64) * chebyshev_u(k - 1, c) * d1;
    }
    Ok(-0.5 + (t.asin() + t * s) / PI - 2.0 / (PI * n as f64) * s * tail)
}

/// `int_{-1}^{t} density` by Gauss-Legendre in `theta = arccos(xi)`, where
/// the integrand becomes the trigonometric polynomial
/// `(2/pi) sin(theta) sum b_k sin(k theta)`.
pub fn measure_quadrature(p: &RealPolynomial, t: f64) -> Result<f64> {
    check_unit_interval(t)?;
    let a = t.acos();
    if a >= PI {
        return Ok(0.0);
    }
    let nodes = 4 * (p.degree() + 1) + 32;
    let rule = gauss_legendre(nodes).on_interval(a, PI);
    Ok(rule.integrate(|th| {
        let s: f64 = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, b)| b * ((i + 1) as f64 * th).sin())
            .sum();
        FRAC_2_PI * th.sin() * s
    }))
}

/// Samples of `mu` and its density on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureTable {
    pub grid: Vec<f64>,
    pub mu: Vec<f64>,
    pub density: Vec<f64>,
}

impl MeasureTable {
    pub fn min_density(&self) -> f64 {
        self.density.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_nondecreasing(&self, tol: f64) -> bool {
        self.mu.windows(2).all(|w| w[1] >= w[0] - tol)
    }
}

/// `points` equally spaced values of `t` from `-1` to `1`.
pub fn measure_table(p: &RealPolynomial, points: usize) -> Result<MeasureTable> {
    if points < 2 {
        return Err(Error::InvalidParameter(
            "measure table needs 2 points".into(),
        ));
    }
    let grid: Vec<f64> = (0..points)
        .map(|i| match i {
            0 => -1.0,
            _ if i == points - 1 => 1.0,
            _ => -1.0 + 2.0 * i as f64 / (points - 1) as f64,
        })
        .collect();
    let mu = grid
        .iter()
        .map(|&t| measure_general(p, t))
        .collect::<Result<_>>()?;
    let density = grid.iter().map(|&t| density(p, t)).collect::<Result<_>>()?;
    Ok(MeasureTable { grid, mu, density })
}

/// `|int z/(1 - 2tz + z^2) dmu(t) - p(z)|`, with the integral computed by
/// Gauss-Chebyshev rules of the second kind, doubled from `4(N+1)` nodes
/// until two successive values agree.
pub fn representation_check(p: &RealPolynomial, z: Complex64) -> Result<f64> {
    if z.norm() >= 1.0 {
        return Err(Error::InvalidParameter(format!("need |z| < 1, got {z}")));
    }
    let integral = |n: usize| {
        gauss_chebyshev_u(n)
            .integrate(|t| z / (1.0 - 2.0 * t * z + z * z) * (FRAC_2_PI * u_series(p, t)))
    };
    let mut nodes = 4 * (p.degree() + 1);
    let mut prev = integral(nodes);
    loop {
        nodes *= 2;
        let next = integral(nodes);
        let change = (next - prev).norm();
        if change <= TOL_QUAD * (1.0 + next.norm()) {
            return Ok((next - p.eval(z)).norm());
        }
        if nodes >= MAX_QUAD_NODES {
            return Err(Error::QuadratureNonConvergence { nodes, change });
        }
        prev = next;
    }
}

/// Limit measure: 0 below `cos(q pi)`, 1 from `cos(q pi)` on.
pub fn step_limit(q: f64, t: f64) -> f64 {
    if t >= (q * PI).cos() {
        1.0
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepDistance {
    pub n: usize,
    pub j: usize,
    pub q: f64,
    /// `sup_t |mu(t) - step(t)|`, including both one-sided values at the jump.
    pub sup: f64,
    /// `int |mu(t) - step(t)| dt` (trapezoid on the grid).
    pub l1: f64,
}

/// Distance between the measure of `S_{N,j}` and `step_limit(q, .)` on a
/// `grid`-point mesh of `[-1, 1]`.
pub fn step_distance(params: SuffridgeParams, q: f64, grid: usize) -> Result<StepDistance> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "q must lie in (0, 1), got {q}"
        )));
    }
    let p = coeffs(params);
    let table = measure_table(&p, grid.max(2))?;
    let diffs: Vec<f64> = table
        .grid
        .iter()
        .zip(&table.mu)
        .map(|(&t, &m)| (m - step_limit(q, t)).abs())
        .collect();
    let at_jump = measure_general(&p, (q * PI).cos())?;
    let sup = diffs
        .iter()
        .copied()
        .fold(at_jump.max(1.0 - at_jump), f64::max);
    let l1 = table
        .grid
        .windows(2)
        .zip(diffs.windows(2))
        .map(|(t, d)| 0.5 * (t[1] - t[0]) * (d[0] + d[1]))
        .sum();
    Ok(StepDistance {
        n: params.n(),
        j: params.j(),
        q,
        sup,
        l1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize, j: usize) -> SuffridgeParams {
        SuffridgeParams::new(n, j).unwrap()
    }

    #[test]
    fn u_small_cases() {
        assert_eq!(chebyshev_u(0, 0.7), 1.0);
        assert_eq!(chebyshev_u(2, 1.0), 3.0);
        for k in 0..12 {
            let th = 0.83_f64;
            let direct = ((k + 1) as f64 * th).sin() / th.sin();
            assert!((chebyshev_u(k, th.cos()) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn u_orthonormal() {
        let r = gauss_chebyshev_u(16);
        let v = FRAC_2_PI * r.integrate(|t| chebyshev_u(3, t).powi(2));
        assert!((v - 1.0).abs() < 1e-12);
        let w = FRAC_2_PI * r.integrate(|t| chebyshev_u(3, t) * chebyshev_u(5, t));
        assert!(w.abs() < 1e-12);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        for k in 1..10 {
            let t = 0.37;
            let (_, d1, d2) = chebyshev_u_with_derivatives(k, t);
            let fd1 = (chebyshev_u(k, t + h) - chebyshev_u(k, t - h)) / (2.0 * h);
            let fd2 =
                (chebyshev_u(k, t + h) - 2.0 * chebyshev_u(k, t) + chebyshev_u(k, t - h)) / (h * h);
            assert!((d1 - fd1).abs() < 1e-6 * (1.0 + d1.abs()), "k={k}");
            assert!((d2 - fd2).abs() < 1e-3 * (1.0 + d2.abs()), "k={k}");
        }
    }

    #[test]
    fn identity_residuals() {
        assert!(chebyshev_identity_residual(1, 0.3).unwrap() < 1e-14);
        assert!(chebyshev_identity_residual(7, -0.9).unwrap() < 1e-10);
        assert!(chebyshev_identity_residual_as_printed(1, 0.3).unwrap() > 0.1);
        assert!(chebyshev_identity_residual(0, 0.3).is_err());
    }

    #[test]
    fn identity_measure() {
        let p = RealPolynomial::identity();
        assert_eq!(measure_general(&p, -1.0).unwrap(), 0.0);
        assert!((measure_general(&p, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((total_mass(&p).unwrap() - 1.0).abs() < 1e-12);
        assert!(representation_check(&p, Complex64::new(0.5, 0.0)).unwrap() < 1e-10);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for (n, j) in [(7, 2), (12, 5), (29, 7)] {
            let p = coeffs(sp(n, j));
            for i in 0..=40 {
                let t = -1.0 + i as f64 / 20.0;
                let a = measure(sp(n, j), t).unwrap();
                let b = measure_quadrature(&p, t).unwrap();
                assert!((a - b).abs() < 1e-10, "({n},{j}) t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn printed_measure_is_off_by_more_than_a_constant() {
        let p = coeffs(sp(7, 2));
        let offsets: Vec<f64> = [-0.6, 0.0, 0.6]
            .iter()
            .map(|&t| measure_as_printed(sp(7, 2), t).unwrap() - measure_quadrature(&p, t).unwrap())
            .collect();
        let spread = offsets.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - offsets.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(spread > 1e-3);
    }

    #[test]
    fn suffridge_representation() {
        let z = Complex64::new(0.3, 0.2);
        assert!(representation_check(&coeffs(sp(7, 2)), z).unwrap() < 1e-6);
    }

    #[test]
    fn step() {
        assert_eq!(step_limit(0.5, 0.1), 1.0);
        assert_eq!(step_limit(0.5, -0.1), 0.0);
        assert_eq!(step_limit(1.0 / 3.0, (PI / 3.0).cos()), 1.0);
    }

    #[test]
    fn s29_7_rises_near_threshold() {
        let c = (7.0 * PI / 30.0).cos();
        let below = measure(sp(29, 7), c - 0.15).unwrap();
        let above = measure(sp(29, 7), c + 0.1).unwrap();
        assert!(below < 0.1 && above > 0.9, "{below} {above}");
    }
}
