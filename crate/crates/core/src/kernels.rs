//! Koebe-type target maps and the checks comparing Suffridge images with them.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curve::{winding_number, CurveSamples, TOL_GEOM};
use crate::error::{Error, Result};
use crate::suffridge::{coeffs, value_at_minus_one, SuffridgeParams};

/// Resolution of the image curve used by the inclusion checks.
pub const CURVE_SAMPLES: usize = 4096;

/// The three target maps a Suffridge polynomial is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelSpec {
    /// `z / (1 - z)^2`
    Koebe,
    /// `z / (1 + z^2)`
    TwoSymmetric,
    /// `z / (1 - 2 z cos(q pi) + z^2)`, `0 < q < 1`
    Generalized { q: f64 },
}

impl KernelSpec {
    pub fn generalized(q: f64) -> Result<Self> {
        if q > 0.0 && q < 1.0 {
            Ok(Self::Generalized { q })
        } else {
            Err(Error::InvalidParameter(format!(
                "generalized kernel needs 0 < q < 1, got {q}"
            )))
        }
    }

    fn poles(&self) -> [Complex64; 2] {
        match *self {
            KernelSpec::Koebe => [Complex64::new(1.0, 0.0); 2],
            KernelSpec::TwoSymmetric => [Complex64::i(), -Complex64::i()],
            KernelSpec::Generalized { q } => {
                let p = Complex64::from_polar(1.0, q * PI);
                [p, p.conj()]
            }
        }
    }
}

pub fn kernel_eval(spec: KernelSpec, z: Complex64) -> Result<Complex64> {
    let distance = spec
        .poles()
        .iter()
        .map(|p| (z - p).norm())
        .fold(f64::INFINITY, f64::min);
    if distance <= TOL_GEOM {
        return Err(Error::PoleProximity { distance });
    }
    Ok(match spec {
        KernelSpec::Koebe => z / (1.0 - z).powu(2),
        KernelSpec::TwoSymmetric => z / (1.0 + z * z),
        KernelSpec::Generalized { q } => z / (1.0 - 2.0 * z * (q * PI).cos() + z * z),
    })
}

/// `rho_N = (1 - sin(pi/(2N+2))) / (1 + sin(pi/(2N+2)))`: the radius for which
/// `K(rho_N D)` lies in the normalized image of `S_{N,1}`.
pub fn rho(n: usize) -> f64 {
    let s = (PI / (2.0 * n as f64 + 2.0)).sin();
    (1.0 - s) / (1.0 + s)
}

/// The image of the unit circle under `-S_{N,1} / (4 S_{N,1}(-1))`, which puts
/// the left end of the real diameter's image at `-1/4`.
pub fn normalized_suffridge_curve(n: usize, samples: usize) -> Result<CurveSamples> {
    let p = coeffs(SuffridgeParams::new(n, 1)?);
    let scale = -1.0 / (4.0 * value_at_minus_one(n));
    CurveSamples::closed_from_fn(samples, |t| p.eval(Complex64::from_polar(1.0, t)) * scale)
}

/// Whether a set of points lies inside a closed curve (winding number 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub all_inside: bool,
    pub points_checked: usize,
    pub outside: usize,
    /// Smallest distance from a checked point to the curve.
    pub margin: f64,
}

pub fn inclusion_report(curve: &CurveSamples, points: &[Complex64]) -> Result<InclusionReport> {
    let mut outside = 0;
    let mut margin = f64::INFINITY;
    for &w in points {
        match winding_number(curve, w) {
            Ok(1) => {}
            Ok(_) => outside += 1,
            Err(Error::PointOnCurve { .. }) => {
                return Err(Error::InconclusiveAtResolution(format!(
                    "point {w} lies on the sampled curve"
                )))
            }
            Err(e) => return Err(e),
        }
        margin = margin.min(curve.distance_to(w));
    }
    Ok(InclusionReport {
        all_inside: outside == 0,
        points_checked: points.len(),
        outside,
        margin,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubordinationReport {
    pub n: usize,
    pub rho: f64,
    pub samples: usize,
    pub all_inside: bool,
    pub margin: f64,
}

/// Checks `K(rho_N D)` against the normalized image of `S_{N,1}` by sampling
/// `K` on the circle of radius `rho_N`.
///
/// The inclusion is sharp: `K(rho_N) = cot^2(pi/(2N+2))/4` is the rightmost
/// point of the image, so the samples sit half a step off `t = 0` and the
/// margin shrinks like the square of the step.
pub fn subordination_check(n: usize, samples: usize) -> Result<SubordinationReport> {
    if samples < 256 {
        return Err(Error::InvalidParameter(format!(
            "subordination check needs at least 256 samples, got {samples}"
        )));
    }
    let r = rho(n);
    let curve = normalized_suffridge_curve(n, CURVE_SAMPLES)?;
    let points = (0..samples)
        .map(|m| {
            let t = 2.0 * PI * (m as f64 + 0.5) / samples as f64;
            kernel_eval(KernelSpec::Koebe, Complex64::from_polar(r, t))
        })
        .collect::<Result<Vec<_>>>()?;
    let inc = inclusion_report(&curve, &points)?;
    Ok(SubordinationReport {
        n,
        rho: r,
        samples,
        all_inside: inc.all_inside,
        margin: inc.margin,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimitrovReport {
    pub n: usize,
    pub left: f64,
    pub right: f64,
    pub epsilon: f64,
    pub all_inside: bool,
    pub points_checked: usize,
    pub margin: f64,
}

/// Points sampled from the real interval `(-1/4, cot^2(pi/(2N+2))/4)`, shrunk
/// by `epsilon = 1e-3 * length` at each end, must lie in the normalized image.
pub fn dimitrov_interval_check(n: usize) -> Result<DimitrovReport> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "interval check needs N >= 2, got {n}"
        )));
    }
    let left = -0.25;
    let right = 0.25 / (PI / (2.0 * n as f64 + 2.0)).tan().powi(2);
    let eps = 1e-3 * (right - left);
    let count = 201;
    let points: Vec<Complex64> = (0..count)
        .map(|i| {
            let x = left + eps + (right - left - 2.0 * eps) * i as f64 / (count - 1) as f64;
            Complex64::new(x, 0.0)
        })
        .collect();
    let curve = normalized_suffridge_curve(n, CURVE_SAMPLES)?;
    let inc = inclusion_report(&curve, &points)?;
    Ok(DimitrovReport {
        n,
        left,
        right,
        epsilon: eps,
        all_inside: inc.all_inside,
        points_checked: inc.points_checked,
        margin: inc.margin,
    })
}

/// `max_{|z| = radius} |S_{N,j}(z) - kernel(z)|` over `samples` equally spaced
/// points; by the maximum principle this bounds the error on the whole disc.
pub fn approx_error(
    params: SuffridgeParams,
    radius: f64,
    target: KernelSpec,
    samples: usize,
) -> Result<f64> {
    if !(0.0..1.0).contains(&radius) {
        return Err(Error::InvalidParameter(format!(
            "radius must lie in [0, 1), got {radius}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let p = coeffs(params);
    let mut worst = 0.0_f64;
    for m in 0..samples {
        let z = Complex64::from_polar(radius, 2.0 * PI * m as f64 / samples as f64);
        worst = worst.max((p.eval(z) - kernel_eval(target, z)?).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koebe_at_minus_one() {
        let v = kernel_eval(KernelSpec::Koebe, Complex64::new(-1.0, 0.0)).unwrap();
        assert!((v - Complex64::new(-0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn koebe_taylor_coefficients() {
        // Cauchy integral on |z| = 1/2.
        let m = 256;
        let r = 0.5;
        let vals: Vec<Complex64> = (0..m)
            .map(|i| {
                let z = Complex64::from_polar(r, 2.0 * PI * i as f64 / m as f64);
                kernel_eval(KernelSpec::Koebe, z).unwrap()
            })
            .collect();
        for k in 1..=10 {
            let a: Complex64 = vals
                .iter()
                .enumerate()
                .map(|(i, v)| v * Complex64::from_polar(1.0, -2.0 * PI * (i * k) as f64 / m as f64))
                .sum::<Complex64>()
                / (m as f64 * r.powi(k as i32));
            assert!(
                (a - Complex64::new(k as f64, 0.0)).norm() < 1e-9,
                "k={k}: {a}"
            );
        }
    }

    #[test]
    fn generalized_half_is_two_symmetric() {
        let g = KernelSpec::generalized(0.5).unwrap();
        for i in 0..20 {
            let z = Complex64::from_polar(0.05 * i as f64, 0.37 * i as f64);
            let a = kernel_eval(g, z).unwrap();
            let b = kernel_eval(KernelSpec::TwoSymmetric, z).unwrap();
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn poles_rejected() {
        assert!(matches!(
            kernel_eval(KernelSpec::Koebe, Complex64::new(1.0, 0.0)),
            Err(Error::PoleProximity { .. })
        ));
        assert!(kernel_eval(KernelSpec::TwoSymmetric, Complex64::i()).is_err());
        assert!(KernelSpec::generalized(1.0).is_err());
    }

    #[test]
    fn rho_values() {
        let s = (PI / 12.0).sin();
        assert!((rho(5) - (1.0 - s) / (1.0 + s)).abs() < 1e-15);
        assert!((rho(5) - 0.5888).abs() < 1e-4);
        assert!(rho(10) > rho(5));
        let n = 10_000;
        assert!((n as f64 * (1.0 - rho(n)) - PI).abs() < 0.01);
    }

    #[test]
    fn far_points_are_outside() {
        let curve = normalized_suffridge_curve(5, CURVE_SAMPLES).unwrap();
        let r = rho(5);
        let pts: Vec<Complex64> = (0..256)
            .map(|m| {
                let z = Complex64::from_polar(r, 2.0 * PI * m as f64 / 256.0);
                kernel_eval(KernelSpec::Koebe, z).unwrap() * 10.0
            })
            .collect();
        let rep = inclusion_report(&curve, &pts).unwrap();
        assert!(!rep.all_inside);

        let right = 0.25 / (PI / 12.0).tan().powi(2);
        let rep = inclusion_report(&curve, &[Complex64::new(right + 0.1, 0.0)]).unwrap();
        assert_eq!(rep.outside, 1);
    }

    #[test]
    fn inclusion_touches_at_the_right_end() {
        for n in [3, 5, 10] {
            let right = 0.25 / (PI / (2.0 * n as f64 + 2.0)).tan().powi(2);
            let k = kernel_eval(KernelSpec::Koebe, Complex64::new(rho(n), 0.0)).unwrap();
            assert!((k.re - right).abs() < 1e-12 * right);
            let p = coeffs(SuffridgeParams::new(n, 1).unwrap());
            let img = p.eval_real(1.0) * -0.25 / value_at_minus_one(n);
            assert!((img - right).abs() < 1e-12 * right);
        }
        let rep = subordination_check(5, 1024).unwrap();
        assert!(rep.all_inside && rep.margin > 0.0, "{rep:?}");
    }

    #[test]
    fn approx_error_at_origin() {
        let p = SuffridgeParams::new(5, 1).unwrap();
        assert_eq!(approx_error(p, 0.0, KernelSpec::Koebe, 16).unwrap(), 0.0);
    }
}
