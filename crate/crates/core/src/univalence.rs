//! Numerical univalency tests, the `S_N(z, mu)` family and the extremal
//! objective on real-axis crossings.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curve::{self_intersections, winding_number, CurveSamples};
use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::roots::roots;

/// Allowed distance of a derivative root from the unit circle.
pub const TOL_QE: f64 = 1e-6;
/// Boundary resolution for the self-intersection test.
pub const BOUNDARY_SAMPLES: usize = 4096;
/// Grid used to scan `Im F(e^{it})` on `[0, pi]`.
pub const DK_GRID: usize = 8192;
const PROBE_RADII: [f64; 10] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95];
const PROBE_ANGLES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnivalenceReport {
    pub typically_real: bool,
    pub min_im_upper_half: f64,
    pub derivative_root_moduli: Vec<f64>,
    pub boundary_simple: bool,
    pub winding_ok: bool,
    pub verdict: Verdict,
}

impl UnivalenceReport {
    pub fn max_root_deviation(&self) -> f64 {
        self.derivative_root_moduli
            .iter()
            .map(|r| (r - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Parameters of `S_N(z, mu)`, the Suffridge formula with `j pi/(N+1)`
/// replaced by a free angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobustFamilyParams {
    n: usize,
    mu: f64,
}

impl RobustFamilyParams {
    pub fn new(n: usize, mu: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        if !(mu > 0.0 && mu < PI) {
            return Err(Error::InvalidParameter(format!(
                "mu must lie in (0, pi), got {mu}"
            )));
        }
        Ok(Self { n, mu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

pub fn sn_mu_coeffs(p: RobustFamilyParams) -> RealPolynomial {
    let n = p.n as f64;
    let s = p.mu.sin();
    let a = (1..=p.n)
        .map(|k| (n + 1.0 - k as f64) / n * (k as f64 * p.mu).sin() / s)
        .collect();
    RealPolynomial::new(a).expect("coefficients are finite and a_1 = 1")
}

/// `Phi(t, mu)`; has the sign of `Im S_N(e^{it}, mu)` for `t, mu` in `(0, pi)`.
pub fn phi(n: usize, t: f64, mu: f64) -> f64 {
    let n = n as f64;
    2.0 * t.sin() * mu.sin() + (n * t).sin() * ((n + 2.0) * mu).sin()
        - 2.0 * ((n + 1.0) * t).sin() * ((n + 1.0) * mu).sin()
        + ((n + 2.0) * t).sin() * (n * mu).sin()
}

/// `max_± |Phi(mu ± 2pi/(N+1), mu) + 4 sin^2(pi/(N+1)) sin^2((N+1) mu)|`.
pub fn phi_identity_residual(n: usize, mu: f64) -> f64 {
    let h = 2.0 * PI / (n + 1) as f64;
    let rhs = -4.0 * (PI / (n + 1) as f64).sin().powi(2) * ((n + 1) as f64 * mu).sin().powi(2);
    [mu + h, mu - h]
        .iter()
        .map(|&t| (phi(n, t, mu) - rhs).abs())
        .fold(0.0, f64::max)
}

/// Minimum of `Im p(e^{it})` over `grid_size + 1` equally spaced `t` in
/// `[0, pi]`, and whether it clears `-1e-10 (1 + max |a_k|)`.
pub fn typically_real_check(p: &RealPolynomial, grid_size: usize) -> Result<(bool, f64)> {
    if grid_size < 8 * p.degree() {
        return Err(Error::InvalidParameter(format!(
            "grid size {grid_size} below 8 * degree"
        )));
    }
    let min = (0..=grid_size)
        .map(|i| p.im_on_circle(PI * i as f64 / grid_size as f64))
        .fold(f64::INFINITY, f64::min);
    let tol = 1e-10 * (1.0 + p.max_abs_coeff());
    Ok((min >= -tol, min))
}

fn boundary_curve(p: &RealPolynomial) -> Result<CurveSamples> {
    CurveSamples::closed_from_fn(BOUNDARY_SAMPLES, |t| p.eval(Complex64::from_polar(1.0, t)))
}

fn derivative_root_moduli(p: &RealPolynomial) -> Result<Vec<f64>> {
    if p.degree() < 2 {
        return Ok(Vec::new());
    }
    let mut m: Vec<f64> = roots(&p.derivative())?.iter().map(|r| r.norm()).collect();
    m.sort_by(f64::total_cmp);
    Ok(m)
}

enum Winding {
    AllOne,
    Other,
    OnCurve,
}

/// Winding number 1 about every probe `p(r e^{i theta})`.
fn probe_winding(p: &RealPolynomial, curve: &CurveSamples) -> Result<Winding> {
    for &r in &PROBE_RADII {
        for a in 0..PROBE_ANGLES {
            let th = 2.0 * PI * (a as f64 + 0.5) / PROBE_ANGLES as f64;
            let w = p.eval(Complex64::from_polar(r, th));
            match winding_number(curve, w) {
                Ok(1) => {}
                Ok(_) => return Ok(Winding::Other),
                Err(Error::PointOnCurve { .. }) => return Ok(Winding::OnCurve),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Winding::AllOne)
}

fn simple_boundary(curve: &CurveSamples) -> Result<bool> {
    match self_intersections(curve) {
        Ok(hits) => Ok(hits.is_empty()),
        Err(Error::DegenerateSegment { index, next }) => Err(Error::InconclusiveAtResolution(
            format!("boundary samples {index} and {next} coincide"),
        )),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiExtremalReport {
    pub derivative_root_moduli: Vec<f64>,
    pub max_root_deviation: f64,
    pub roots_on_circle: bool,
    pub boundary_simple: bool,
    pub winding_ok: bool,
    pub pass: bool,
}

/// The decidable part of quasi-extremality: derivative roots on the unit
/// circle, simple boundary curve, winding number 1 about interior probes.
/// The conditions on the enclosing domain are not checked.
pub fn quasi_extremal_check(p: &RealPolynomial) -> Result<QuasiExtremalReport> {
    if p.degree() < 2 {
        return Err(Error::InvalidParameter("need degree >= 2".into()));
    }
    let moduli = derivative_root_moduli(p)?;
    let dev = moduli.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
    let curve = boundary_curve(p)?;
    let boundary_simple = simple_boundary(&curve)?;
    let winding_ok = matches!(probe_winding(p, &curve)?, Winding::AllOne);
    let roots_on_circle = dev <= TOL_QE;
    Ok(QuasiExtremalReport {
        derivative_root_moduli: moduli,
        max_root_deviation: dev,
        roots_on_circle,
        boundary_simple,
        winding_ok,
        pass: roots_on_circle && boundary_simple && winding_ok,
    })
}

/// Univalency verdict from the argument principle: the boundary image must
/// be a simple curve winding once around the image of every probe point.
/// Typical realness and derivative roots are reported alongside.
pub fn univalence_report(p: &RealPolynomial) -> Result<UnivalenceReport> {
    let (typically_real, min_im) = typically_real_check(p, (8 * p.degree()).max(1024))?;
    let moduli = derivative_root_moduli(p)?;
    let curve = boundary_curve(p)?;
    let boundary_simple = simple_boundary(&curve)?;
    let winding = probe_winding(p, &curve)?;
    let winding_ok = matches!(winding, Winding::AllOne);
    let verdict = match winding {
        Winding::OnCurve => Verdict::Inconclusive,
        _ if boundary_simple && winding_ok => Verdict::Pass,
        _ => Verdict::Fail,
    };
    Ok(UnivalenceReport {
        typically_real,
        min_im_upper_half: min_im,
        derivative_root_moduli: moduli,
        boundary_simple,
        winding_ok,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealAxisPoint {
    pub t: f64,
    pub re: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DkReport {
    /// `min Re F` over `t = 0`, `t = pi` and the sign changes of `Im F`.
    pub objective: f64,
    pub argmin_t: f64,
    pub crossings: Vec<RealAxisPoint>,
    /// Zeros of `Im F` without a sign change; not part of the objective.
    pub tangencies: Vec<RealAxisPoint>,
}

/// `min Re F(e^{it})` over the points where `F = p / p(1)` crosses the real
/// axis for `t` in `[0, pi]`.
pub fn dk_objective(p: &RealPolynomial) -> Result<f64> {
    Ok(dk_objective_report(p)?.objective)
}

pub fn dk_objective_report(p: &RealPolynomial) -> Result<DkReport> {
    let f = p.normalized_at_one()?;
    let noise = 64.0 * f64::EPSILON * f.coeffs().iter().map(|a| a.abs()).sum::<f64>();
    let h = PI / DK_GRID as f64;
    let ts: Vec<f64> = (0..=DK_GRID).map(|i| i as f64 * h).collect();
    let im: Vec<f64> = ts.iter().map(|&t| f.im_on_circle(t)).collect();
    let sign = |v: f64| {
        if v.abs() <= noise {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    };

    let mut crossings = vec![RealAxisPoint {
        t: 0.0,
        re: f.re_on_circle(0.0),
    }];
    let mut tangencies = Vec::new();
    let mut last_nonzero: Option<usize> = (sign(im[0]) != 0).then_some(0);
    let mut i = 1;
    while i <= DK_GRID {
        let s = sign(im[i]);
        if s == 0 {
            // a run of grid values within noise of zero
            let start = i;
            while i <= DK_GRID && sign(im[i]) == 0 {
                i += 1;
            }
            let end = i - 1;
            if i > DK_GRID {
                break;
            }
            if let Some(l) = last_nonzero {
                let t = 0.5 * (ts[start] + ts[end]);
                let point = RealAxisPoint {
                    t,
                    re: f.re_on_circle(t),
                };
                if sign(im[l]) != sign(im[i]) {
                    crossings.push(point);
                } else {
                    tangencies.push(point);
                }
            }
            last_nonzero = Some(i);
            i += 1;
            continue;
        }
        if let Some(l) = last_nonzero {
            if l == i - 1 && sign(im[l]) != s {
                let t = bisect(|t| f.im_on_circle(t), ts[l], ts[i]);
                crossings.push(RealAxisPoint {
                    t,
                    re: f.re_on_circle(t),
                });
            }
        }
        last_nonzero = Some(i);
        i += 1;
    }
    crossings.push(RealAxisPoint {
        t: PI,
        re: f.re_on_circle(PI),
    });

    // near-zero local minima of |Im| that the grid saw as nonzero
    for k in 1..DK_GRID {
        let (a, b, c) = (im[k - 1].abs(), im[k].abs(), im[k + 1].abs());
        if b < a && b <= c && sign(im[k]) != 0 && sign(im[k - 1]) == sign(im[k + 1]) {
            let t = golden_min(|t| f.im_on_circle(t).abs(), ts[k - 1], ts[k + 1]);
            if f.im_on_circle(t).abs() < 1e-9 {
                tangencies.push(RealAxisPoint {
                    t,
                    re: f.re_on_circle(t),
                });
            }
        }
    }
    tangencies.sort_by(|a, b| a.t.total_cmp(&b.t));

    let best = crossings
        .iter()
        .min_by(|a, b| a.re.total_cmp(&b.re))
        .expect("t = 0 and t = pi are always present");
    Ok(DkReport {
        objective: best.re,
        argmin_t: best.t,
        crossings,
        tangencies,
    })
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    while b - a > 1e-12 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    while b - a > 1e-12 {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suffridge::{coeffs, SuffridgeParams};

    fn s(n: usize, j: usize) -> RealPolynomial {
        coeffs(SuffridgeParams::new(n, j).unwrap())
    }

    #[test]
    fn sn_mu_on_grid_is_suffridge() {
        let p = sn_mu_coeffs(RobustFamilyParams::new(5, 2.0 * PI / 6.0).unwrap());
        for (a, b) in p.coeffs().iter().zip(s(5, 2).coeffs()) {
            assert!((a - b).abs() < 1e-15);
        }
        let q = sn_mu_coeffs(RobustFamilyParams::new(3, PI / 2.0).unwrap());
        let want = [1.0, 0.0, -1.0 / 3.0];
        for (a, b) in q.coeffs().iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(RobustFamilyParams::new(3, 0.0).is_err());
    }

    #[test]
    fn phi_basics() {
        assert_eq!(phi(7, 0.0, 1.3), 0.0);
        assert!(phi_identity_residual(5, 1.0) < 1e-12);
        assert!(phi_identity_residual(5, 2.0 * PI / 6.0) < 1e-12);
    }

    #[test]
    fn phi_sign_matches_imaginary_part() {
        let n = 9;
        let mu = 0.77;
        let p = sn_mu_coeffs(RobustFamilyParams::new(n, mu).unwrap());
        for i in 1..500 {
            let t = PI * i as f64 / 500.0;
            let im = p.im_on_circle(t);
            if im.abs() > 1e-9 {
                assert_eq!(im > 0.0, phi(n, t, mu) > 0.0, "t={t}");
            }
        }
    }

    #[test]
    fn typical_realness() {
        assert!(typically_real_check(&s(11, 3), 1024).unwrap().0);
        let q = sn_mu_coeffs(RobustFamilyParams::new(7, 0.9).unwrap());
        assert!(!typically_real_check(&q, 1024).unwrap().0);
        let (ok, min) = typically_real_check(&RealPolynomial::identity(), 64).unwrap();
        assert!(ok && min.abs() < 1e-15);
        assert!(typically_real_check(&s(11, 3), 16).is_err());
    }

    #[test]
    fn boundary_touching_on_a_sample_is_simple() {
        // N + 1 divides the sample count, so the real-axis touch points of the
        // boundary are sampled exactly
        for j in [1, 4, 12, 15] {
            let r = quasi_extremal_check(&s(15, j)).unwrap();
            assert!(r.boundary_simple, "j = {j}");
            assert!(r.pass);
        }
    }

    #[test]
    fn suffridge_is_quasi_extremal() {
        let r = quasi_extremal_check(&s(5, 1)).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.derivative_root_moduli.len(), 4);
    }

    #[test]
    fn root_outside_is_not_quasi_extremal() {
        let p = RealPolynomial::new(vec![1.0, 0.25]).unwrap();
        assert!(!quasi_extremal_check(&p).unwrap().roots_on_circle);
    }

    #[test]
    fn verdicts() {
        assert_eq!(univalence_report(&s(29, 7)).unwrap().verdict, Verdict::Pass);
        let q = sn_mu_coeffs(RobustFamilyParams::new(11, 0.8).unwrap());
        assert_eq!(univalence_report(&q).unwrap().verdict, Verdict::Fail);
        let k = RealPolynomial::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(univalence_report(&k).unwrap().verdict, Verdict::Fail);
        let id = univalence_report(&RealPolynomial::identity()).unwrap();
        assert_eq!(id.verdict, Verdict::Pass);
        assert!(id.derivative_root_moduli.is_empty());
    }

    #[test]
    fn dk_identity() {
        let r = dk_objective_report(&RealPolynomial::identity()).unwrap();
        assert_eq!(r.objective, -1.0);
        assert_eq!(r.crossings.len(), 2);
    }

    #[test]
    fn dk_suffridge_minimum_at_minus_one() {
        let p = s(7, 1);
        let r = dk_objective_report(&p).unwrap();
        let want = -(PI / 16.0).tan().powi(2);
        assert!((r.objective - want).abs() < 1e-12, "{r:?}");
        // touches the real axis at t = 3pi/8, 5pi/8, 7pi/8 without crossing it
        assert_eq!(r.tangencies.len(), 3, "{:?}", r.tangencies);
        for (m, tp) in r.tangencies.iter().enumerate() {
            assert!((tp.t - (2 * m + 3) as f64 * PI / 8.0).abs() < 1e-6);
            assert!(tp.re < r.objective);
        }
        assert!(dk_objective(&RealPolynomial::new(vec![1.0, -1.0]).unwrap()).is_err());
    }
}
