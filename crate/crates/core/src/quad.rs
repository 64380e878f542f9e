//! Gauss-Legendre rules and a small adaptive integrator for real integrands.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// nodes in ascending order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_legendre: need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n.
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
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of an adaptive quadrature: value plus the summed error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

const ORDER: usize = 16;
const MAX_DEPTH: usize = 40;

/// Adaptive bisection with a 16-point Gauss-Legendre rule, comparing each
/// interval against its two halves. Infinite limits are mapped onto finite
/// ones by rational substitutions.
pub fn integrate<F>(f: F, lower: f64, upper: f64, abs_tol: f64) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    if lower == upper {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
        });
    }
    if lower > upper {
        let q = integrate(f, upper, lower, abs_tol)?;
        return Ok(Quadrature {
            value: -q.value,
            error: q.error,
        });
    }
    let rule = gauss_legendre(ORDER);
    match (lower.is_finite(), upper.is_finite()) {
        (true, true) => adaptive(&f, lower, upper, abs_tol, &rule),
        (false, false) => {
            // tau = u / (1 - u^2)
            let g = |u: f64| {
                let d = 1.0 - u * u;
                f(u / d) * (1.0 + u * u) / (d * d)
            };
            adaptive(&g, -1.0, 1.0, abs_tol, &rule)
        }
        (true, false) => {
            // tau = lower + u / (1 - u)
            let g = |u: f64| {
                let d = 1.0 - u;
                f(lower + u / d) / (d * d)
            };
            adaptive(&g, 0.0, 1.0, abs_tol, &rule)
        }
        (false, true) => {
            // tau = upper - u / (1 - u)
            let g = |u: f64| {
                let d = 1.0 - u;
                f(upper - u / d) / (d * d)
            };
            adaptive(&g, 0.0, 1.0, abs_tol, &rule)
        }
    }
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    rule.0
        .iter()
        .zip(&rule.1)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rule: &(Vec<f64>, Vec<f64>),
) -> Result<Quadrature> {
    // explicit stack keeps the summation order deterministic (left to right)
    let mut stack = vec![(a, b, panel(f, a, b, rule), 0usize)];
    let mut value = 0.0;
    let mut error = 0.0;
    let mut failed = false;
    let width = b - a;
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(f, lo, mid, rule);
        let right = panel(f, mid, hi, rule);
        let diff = (left + right - whole).abs();
        let local_tol = abs_tol * (hi - lo) / width;
        if !diff.is_finite() {
            return Err(Error::Accuracy {
                estimate: value,
                error: f64::INFINITY,
            });
        }
        if diff <= local_tol.max(f64::EPSILON * (left + right).abs()) || depth >= MAX_DEPTH {
            if depth >= MAX_DEPTH && diff > local_tol {
                failed = true;
            }
            value += left + right;
            error += diff;
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    if failed || error > abs_tol {
        return Err(Error::Accuracy {
            estimate: value,
            error,
        });
    }
    Ok(Quadrature { value, error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(16);
        // degree 31 is the highest exact degree
        let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((approx - 2.0 / 31.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn odd_rule_has_center_node() {
        let (x, w) = gauss_legendre(5);
        assert!(x[2].abs() < 1e-15);
        assert!((w[2] - 128.0 / 225.0).abs() < 1e-14);
    }

    #[test]
    fn infinite_limits() {
        let q = integrate(|t| 1.0 / t.cosh(), f64::NEG_INFINITY, f64::INFINITY, 1e-12).unwrap();
        assert!((q.value - PI).abs() < 1e-11, "{}", q.value);
        let q = integrate(|t| (-t).exp(), 0.0, f64::INFINITY, 1e-12).unwrap();
        assert!((q.value - 1.0).abs() < 1e-11);
        let q = integrate(|t| t.exp(), f64::NEG_INFINITY, 0.0, 1e-12).unwrap();
        assert!((q.value - 1.0).abs() < 1e-11);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let q = integrate(|t| t * t, 1.0, 0.0, 1e-12).unwrap();
        assert!((q.value + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn divergent_integrand_reports_accuracy_error() {
        let err = integrate(|t| 1.0 / t.abs().sqrt().max(1e-300).powi(4), -1.0, 1.0, 1e-10);
        assert!(matches!(err, Err(Error::Accuracy { .. })));
    }
}
