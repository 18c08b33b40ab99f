//! Real-coefficient polynomials and their evaluation.
//!
//! Every family studied here is normalized by `f(0) = 0`, so [`RealPolynomial`]
//! stores only `a_1..a_N`. Derivatives and general polynomials carry a constant
//! term and live in [`DensePolynomial`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `a_1 z + a_2 z^2 + ... + a_N z^N` with real coefficients and `a_N != 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    /// Builds a polynomial from `a_1..a_N`. Exact trailing zeros are trimmed so
    /// the degree is tight.
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "coefficient a_{} is not finite",
                bad + 1
            )));
        }
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "polynomial must have degree at least 1".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// The identity map `z`.
    pub fn identity() -> Self {
        Self { coeffs: vec![1.0] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients `a_1..a_N`; index 0 holds `a_1`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `a_k` for `k >= 1`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.coeffs.get(k - 1).copied().unwrap_or(0.0)
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn coeff_sum(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// Horner evaluation of `z (a_1 + z (a_2 + ...))`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let inner = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        inner * z
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        let inner = self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
        inner * x
    }

    /// `Im p(e^{it}) = sum a_k sin(kt)`, summed directly so that the value is
    /// exactly zero at `t = 0` and tiny at `t = pi`.
    pub fn im_on_circle(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * ((i + 1) as f64 * t).sin())
            .sum()
    }

    pub fn re_on_circle(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * ((i + 1) as f64 * t).cos())
            .sum()
    }

    /// `p'(z) = a_1 + 2 a_2 z + ... + N a_N z^{N-1}`.
    pub fn derivative(&self) -> DensePolynomial {
        DensePolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i + 1) as f64 * c)
                .collect(),
        }
    }

    /// Rescales so that the coefficients sum to one, i.e. `p(1) = 1`.
    pub fn normalized_at_one(&self) -> Result<Self> {
        let s = self.coeff_sum();
        if s == 0.0 || !s.is_finite() {
            return Err(Error::NormalizationFailure);
        }
        Self::new(self.coeffs.iter().map(|c| c / s).collect())
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }
}

/// `c_0 + c_1 z + ... + c_n z^n`; the general carrier for derivatives and root
/// finding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensePolynomial {
    coeffs: Vec<f64>,
}

impl DensePolynomial {
    /// Builds from `c_0..c_n` (ascending powers).
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    /// Monic polynomial with the given complex roots; the imaginary parts of
    /// the expanded coefficients are returned separately so callers can check
    /// that conjugate pairs closed up.
    pub fn from_roots(roots: &[Complex64]) -> (Vec<Complex64>, f64) {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        let max_im = c.iter().fold(0.0_f64, |m, v| m.max(v.im.abs()));
        (c, max_im)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree after ignoring exact trailing zeros.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative by a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> DensePolynomial {
        DensePolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| i as f64 * c)
                .collect(),
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl From<&RealPolynomial> for DensePolynomial {
    fn from(p: &RealPolynomial) -> Self {
        let mut coeffs = Vec::with_capacity(p.degree() + 1);
        coeffs.push(0.0);
        coeffs.extend_from_slice(p.coeffs());
        DensePolynomial { coeffs }
    }
}
