//! Inputs shared by the benchmarks.

use suffridge_core::{Complex64, RealPolynomial, SuffridgeParams};

pub fn suffridge(n: usize, j: usize) -> RealPolynomial {
    suffridge_core::suffridge::coeffs(SuffridgeParams::new(n, j).expect("valid parameters"))
}

/// Points on a circle of the given radius.
pub fn circle(radius: f64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / count as f64))
        .collect()
}
