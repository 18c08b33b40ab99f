//! Polynomial roots by simultaneous Aberth–Ehrlich iteration, with a
//! companion-matrix eigenvalue fallback.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::DensePolynomial;

/// Relative residual accepted for a root.
pub const TOL_ROOT: f64 = 1e-10;
/// Iteration cap for the Aberth–Ehrlich sweep.
pub const MAX_ITERATIONS: usize = 500;

/// All `deg(p)` complex roots of `p`, with multiplicity, ordered by argument.
///
/// Every returned root `r` satisfies
/// `|p(r)| <= TOL_ROOT * max|c_k| * max(1, |r|)^deg`.
pub fn roots(p: &DensePolynomial) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "root finding needs degree >= 1".into(),
        ));
    }
    let coeffs = &p.coeffs()[..=n];

    // Exact roots at the origin are split off before iterating.
    let zeros = coeffs.iter().take_while(|&&c| c == 0.0).count();
    let reduced = DensePolynomial::new(coeffs[zeros..].to_vec());
    let mut found = vec![Complex64::new(0.0, 0.0); zeros];

    let m = reduced.degree();
    match m {
        0 => {}
        1 => {
            let c = reduced.coeffs();
            found.push(Complex64::new(-c[0] / c[1], 0.0));
        }
        _ => {
            let rest = match aberth(&reduced) {
                Some(r) => r,
                None => companion(&reduced)?,
            };
            found.extend(rest);
        }
    }

    let worst = worst_residual(p, &found);
    if worst > 1.0 {
        return Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            residual: worst * TOL_ROOT,
        });
    }
    found.sort_by(|a, b| {
        a.arg()
            .partial_cmp(&b.arg())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(
                a.norm()
                    .partial_cmp(&b.norm())
                    .unwrap_or(std::cmp::Ordering::Equal),
            )
    });
    Ok(found)
}

/// Largest residual over `roots`, in units of the acceptance bound (so `<= 1`
/// means every root passes).
pub fn worst_residual(p: &DensePolynomial, roots: &[Complex64]) -> f64 {
    let n = p.degree() as i32;
    let scale = p.max_abs_coeff();
    roots
        .iter()
        .map(|&r| {
            let bound = TOL_ROOT * scale * r.norm().max(1.0).powi(n);
            p.eval(r).norm() / bound
        })
        .fold(0.0, f64::max)
}

fn aberth(p: &DensePolynomial) -> Option<Vec<Complex64>> {
    let n = p.degree();
    let c = p.coeffs();
    let radius = (c[0].abs() / c[n].abs()).powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let (pv, dpv) = p.eval_with_derivative(z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = (dpv / pv - repulsion).inv();
            if !step.re.is_finite() || !step.im.is_finite() {
                return None;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step < 1e-15 {
            break;
        }
    }

    polish(p, &mut z);
    (worst_residual(p, &z) <= 1.0).then_some(z)
}

fn companion(p: &DensePolynomial) -> Result<Vec<Complex64>> {
    let n = p.degree();
    let c = p.coeffs();
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let mut z: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
    polish(p, &mut z);
    let worst = worst_residual(p, &z);
    if worst > 1.0 {
        return Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            residual: worst * TOL_ROOT,
        });
    }
    Ok(z)
}

/// A few Newton steps per root, keeping a step only if it lowers the residual.
fn polish(p: &DensePolynomial, z: &mut [Complex64]) {
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (pv, dpv) = p.eval_with_derivative(*r);
            if dpv.norm() == 0.0 || pv.norm() == 0.0 {
                break;
            }
            let candidate = *r - pv / dpv;
            if p.eval(candidate).norm() < pv.norm() {
                *r = candidate;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RealPolynomial;

    #[test]
    fn quadratic() {
        let r = roots(&DensePolynomial::new(vec![-1.0, 0.0, 1.0])).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((r[1] - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_roots_split_off() {
        // z^2 (z - 2)
        let r = roots(&DensePolynomial::new(vec![0.0, 0.0, -2.0, 1.0])).unwrap();
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|z| (z - 2.0).norm() < 1e-14));
    }

    #[test]
    fn companion_agrees_with_aberth() {
        let p = DensePolynomial::new(vec![2.0, -3.0, 0.5, 1.0, -0.25, 1.0]);
        let mut a = aberth(&p).unwrap();
        let mut b = companion(&p).unwrap();
        let key =
            |z: &Complex64| (z.re * 1e6).round() as i64 * 1_000_000 + (z.im * 1e6).round() as i64;
        a.sort_by_key(key);
        b.sort_by_key(key);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn suffridge_51_critical_points_on_circle() {
        let n = 5.0_f64;
        let alpha = std::f64::consts::PI / 6.0;
        let c: Vec<f64> = (1..=5)
            .map(|k| (n + 1.0 - k as f64) / n * (k as f64 * alpha).sin() / alpha.sin())
            .collect();
        let d = RealPolynomial::new(c).unwrap().derivative();
        let r = roots(&d).unwrap();
        assert_eq!(r.len(), 4);
        for z in r {
            assert!((z.norm() - 1.0).abs() <= 1e-8, "{z}");
        }
    }

    #[test]
    fn double_root() {
        // (z - 1)^2 (z + 3)
        let r = roots(&DensePolynomial::new(vec![3.0, -5.0, 1.0, 1.0])).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.iter().filter(|z| (*z - 1.0).norm() < 1e-6).count(), 2);
    }
}
