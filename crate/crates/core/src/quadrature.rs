//! Gaussian quadrature rules on `[-1, 1]`.

use std::f64::consts::PI;

/// Nodes and weights of a quadrature rule.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn integrate<T>(&self, f: impl Fn(f64) -> T) -> T
    where
        T: std::iter::Sum<T> + std::ops::Mul<f64, Output = T>,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(x) * w)
            .sum()
    }

    /// The same rule mapped affinely onto `[a, b]`.
    pub fn on_interval(&self, a: f64, b: f64) -> Rule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Rule {
            nodes: self.nodes.iter().map(|x| mid + half * x).collect(),
            weights: self.weights.iter().map(|w| w * half).collect(),
        }
    }
}

/// Gauss–Chebyshev rule of the second kind: `sum w_i f(x_i)` approximates
/// `int_{-1}^{1} sqrt(1 - x^2) f(x) dx`, exactly for polynomials of degree
/// `< 2n`.
pub fn gauss_chebyshev_u(n: usize) -> Rule {
    let h = PI / (n + 1) as f64;
    let (nodes, weights) = (1..=n)
        .map(|i| {
            let theta = i as f64 * h;
            (theta.cos(), h * theta.sin().powi(2))
        })
        .unzip();
    Rule { nodes, weights }
}

/// Gauss–Legendre rule with `n` nodes on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_u_weight_mass() {
        let r = gauss_chebyshev_u(5);
        assert!((r.integrate(|_| 1.0) - PI / 2.0).abs() < 1e-14);
        // int sqrt(1-x^2) x^2 = pi/8
        assert!((r.integrate(|x| x * x) - PI / 8.0).abs() < 1e-14);
    }

    #[test]
    fn legendre_polynomials_exact() {
        let r = gauss_legendre(10);
        assert!((r.integrate(|_| 1.0) - 2.0).abs() < 1e-14);
        assert!((r.integrate(|x| x.powi(18)) - 2.0 / 19.0).abs() < 1e-14);
        let s = r.on_interval(0.0, PI);
        assert!((s.integrate(f64::sin) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn legendre_odd_order_has_center_node() {
        let r = gauss_legendre(7);
        assert!(r.nodes[3].abs() < 1e-15);
        assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }
}
