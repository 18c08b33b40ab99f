//! The family `G_{N,mu}` interpolating between Suffridge (`mu = 1`), Fejér
//! (`mu = 0`) and `z + z^N/N` (`mu = -1`), and the search for the parameter
//! below which univalency is lost.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::univalence::{univalence_report, Verdict};

const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GFamilyParams {
    n: usize,
    mu: f64,
}

impl GFamilyParams {
    pub fn new(n: usize, mu: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("need N >= 2, got {n}")));
        }
        if !mu.is_finite() || n as f64 + mu <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "need N + mu > 0, got N = {n}, mu = {mu}"
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

/// `a_k = (1 - (k-1)/N) prod_{i<k} sin(pi(i+mu)/(N+mu)) / sin(pi i/(N+mu))`.
///
/// For integer `mu = m >= 0` the product is evaluated in telescoped form
/// `prod_{i=k}^{k+m-1} sin(pi i/M) / prod_{i=1}^{m} sin(pi i/M)`, `M = N + m`,
/// so `mu = 1` reproduces `S_{N,1}`. `mu = -1` is the limit `z + z^N/N`.
pub fn g_coeffs(p: GFamilyParams) -> Result<RealPolynomial> {
    let n = p.n;
    let nf = n as f64;
    let fejer = |k: usize| 1.0 - (k - 1) as f64 / nf;
    if p.mu == -1.0 {
        let mut a = vec![0.0; n];
        a[0] = 1.0;
        a[n - 1] = 1.0 / nf;
        return RealPolynomial::new(a);
    }
    let m_total = nf + p.mu;
    if p.mu >= 0.0 && p.mu.fract() == 0.0 {
        let m = p.mu as usize;
        let s = |i: usize| (PI * i as f64 / m_total).sin();
        let den: f64 = (1..=m).map(s).product();
        let a = (1..=n)
            .map(|k| fejer(k) * (k..k + m).map(s).product::<f64>() / den)
            .collect();
        return RealPolynomial::new(a);
    }
    let mut a = Vec::with_capacity(n);
    let mut prod = 1.0;
    for k in 1..=n {
        if k >= 2 {
            let i = (k - 1) as f64;
            let den = (PI * i / m_total).sin();
            if den.abs() < SINGULAR_TOL {
                return Err(Error::SingularParameter {
                    n,
                    mu: p.mu,
                    index: k - 1,
                });
            }
            prod *= (PI * (i + p.mu) / m_total).sin() / den;
        }
        a.push(fejer(k) * prod);
    }
    RealPolynomial::new(a)
}

/// `sup_{|z| = radius} |G_{N,mu}(z) - z/(1-z)^{1+mu}|` on `samples` points.
pub fn g_limit_check(p: GFamilyParams, radius: f64, samples: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&radius) {
        return Err(Error::PoleProximity {
            distance: (1.0 - radius).max(0.0),
        });
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let g = g_coeffs(p)?;
    let mut worst = 0.0_f64;
    for m in 0..samples {
        let z = Complex64::from_polar(radius, 2.0 * PI * m as f64 / samples as f64);
        let target = z / (1.0 - z).powf(1.0 + p.mu);
        worst = worst.max((g.eval(z) - target).norm());
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaEstimate {
    pub n: usize,
    /// Failing side of the final bracket (equal to `mu_hi` if no failure).
    pub mu_lo: f64,
    /// Passing side of the final bracket.
    pub mu_hi: f64,
    pub certified_pass: Vec<f64>,
    pub first_fail: Option<f64>,
    pub max_root_deviation: f64,
    pub coarse_grid_all_pass: bool,
}

/// Sweeps `mu` down from `-1` in steps of `mu_step` until the univalency
/// verdict is lost, then bisects to width `tol`. The sweep stops at
/// `-N + 1/2`; if nothing fails by then, `first_fail` is `None`.
pub fn zeta_estimate(n: usize, mu_step: f64, tol: f64) -> Result<ZetaEstimate> {
    if !(mu_step > 0.0 && mu_step <= 0.05) {
        return Err(Error::InvalidParameter(format!(
            "mu step must lie in (0, 0.05], got {mu_step}"
        )));
    }
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "tol must lie in (0, 1e-3], got {tol}"
        )));
    }
    GFamilyParams::new(n, -1.0)?;

    let mut certified_pass = Vec::new();
    let mut max_dev = 0.0_f64;
    // None: parameter is singular
    let mut verdict = |mu: f64| -> Result<Option<bool>> {
        let g = match g_coeffs(GFamilyParams::new(n, mu)?) {
            Ok(g) => g,
            Err(Error::SingularParameter { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let r = univalence_report(&g)?;
        let pass = r.verdict == Verdict::Pass;
        if pass {
            certified_pass.push(mu);
            max_dev = max_dev.max(r.max_root_deviation());
        }
        Ok(Some(pass))
    };

    let mut coarse_grid_all_pass = true;
    for i in 0..=20 {
        let mu = -1.0 + 0.1 * i as f64;
        if verdict(mu)? != Some(true) {
            coarse_grid_all_pass = false;
        }
    }

    let floor = -(n as f64) + 0.5;
    let mut hi = -1.0;
    let mut lo = None;
    let mut k = 1;
    loop {
        let mu = -1.0 - mu_step * k as f64;
        if mu < floor {
            break;
        }
        match verdict(mu)? {
            Some(true) => hi = mu,
            Some(false) => {
                lo = Some(mu);
                break;
            }
            None => {}
        }
        k += 1;
    }
    let first_fail = lo;
    let mut lo_v = lo.unwrap_or(hi);
    if lo.is_some() {
        while hi - lo_v > tol {
            let mid = 0.5 * (lo_v + hi);
            match verdict(mid)? {
                Some(true) => hi = mid,
                _ => lo_v = mid,
            }
        }
    }
    certified_pass.sort_by(f64::total_cmp);
    certified_pass.dedup();
    Ok(ZetaEstimate {
        n,
        mu_lo: lo_v,
        mu_hi: hi,
        certified_pass,
        first_fail,
        max_root_deviation: max_dev,
        coarse_grid_all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suffridge::{coeffs, SuffridgeParams};

    fn g(n: usize, mu: f64) -> RealPolynomial {
        g_coeffs(GFamilyParams::new(n, mu).unwrap()).unwrap()
    }

    #[test]
    fn special_cases() {
        for n in [2, 3, 7, 11] {
            let s = coeffs(SuffridgeParams::new(n, 1).unwrap());
            for (a, b) in g(n, 1.0).coeffs().iter().zip(s.coeffs()) {
                assert!((a - b).abs() < 1e-14);
            }
            for (k, a) in g(n, 0.0).coeffs().iter().enumerate() {
                assert!((a - (n - k) as f64 / n as f64).abs() < 1e-14);
            }
            let m1 = g(n, -1.0);
            assert_eq!(m1.degree(), n);
            assert_eq!(m1.coeff(1), 1.0);
            assert_eq!(m1.coeff(n), 1.0 / n as f64);
            assert!((2..n).all(|k| m1.coeff(k) == 0.0));
        }
    }

    #[test]
    fn near_minus_one_approaches_limit() {
        let a = g(7, -1.0 + 1e-9);
        for (x, y) in a.coeffs().iter().zip(g(7, -1.0).coeffs()) {
            assert!((x - y).abs() < 1e-6);
        }
    }

    #[test]
    fn general_path_matches_telescoped() {
        let n = 9;
        let mu = 2.0;
        let t = g(n, mu);
        let m_total = n as f64 + mu;
        let mut prod = 1.0;
        for k in 1..=n {
            if k >= 2 {
                let i = (k - 1) as f64;
                prod *= (PI * (i + mu) / m_total).sin() / (PI * i / m_total).sin();
            }
            let want = (1.0 - (k - 1) as f64 / n as f64) * prod;
            assert!((t.coeff(k) - want).abs() < 1e-13);
        }
    }

    #[test]
    fn singular_parameter() {
        // N + mu = 2, so sin(2 pi / 2) = 0 at i = 2
        let r = g_coeffs(GFamilyParams::new(4, -2.0).unwrap());
        assert!(matches!(r, Err(Error::SingularParameter { .. })), "{r:?}");
        assert!(GFamilyParams::new(4, -4.0).is_err());
    }

    #[test]
    fn limit_error_decreases() {
        let e: Vec<f64> = [25, 50, 100]
            .iter()
            .map(|&n| g_limit_check(GFamilyParams::new(n, 1.0).unwrap(), 0.5, 512).unwrap())
            .collect();
        assert!(e[0] > e[1] && e[1] > e[2], "{e:?}");
        let z = g_limit_check(GFamilyParams::new(10, 0.3).unwrap(), 0.0, 16).unwrap();
        assert_eq!(z, 0.0);
    }

    #[test]
    fn small_zeta_search_terminates() {
        let z = zeta_estimate(3, 0.05, 1e-3).unwrap();
        assert!(z.mu_lo <= z.mu_hi && z.mu_hi <= -1.0);
        assert!(zeta_estimate(3, 0.1, 1e-3).is_err());
    }
}
