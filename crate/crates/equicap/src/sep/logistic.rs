//! Logistic-regression separability probe.
//!
//! The common empirical protocol for measuring capacity curves: fit an
//! intercept-free logistic regression with a very weak ridge term (inverse
//! regularization 1e8), capped at 500 iterations, and call the dichotomy
//! separable when the fit classifies every point with a positive margin.
//! Unlike the feasibility path this is an approximate probe: it produces
//! no certificate and may misjudge near-critical instances. It exists for
//! protocol-fidelity comparisons only.

use ndarray::{Array1, Array2};

const INVERSE_REGULARIZATION: f64 = 1e8;
const MAX_ITERATIONS: usize = 500;
const GRADIENT_TOL: f64 = 1e-18;

/// Fit and report whether the fitted direction classifies all points.
pub fn logistic_separable(points: &[Array1<f64>], labels: &[i8]) -> bool {
    assert_eq!(points.len(), labels.len());
    assert!(!points.is_empty());
    let dim = points[0].len();
    let lambda = 1.0 / INVERSE_REGULARIZATION;
    let mut w = Array1::<f64>::zeros(dim);

    // Damped Newton on the regularized logistic loss.
    let mut damping = lambda;
    for _ in 0..MAX_ITERATIONS {
        let mut grad = &w * lambda;
        let mut hess = Array2::<f64>::eye(dim) * (lambda + damping);
        for (p, &y) in points.iter().zip(labels.iter()) {
            let m = y as f64 * w.dot(p);
            let sigma = 1.0 / (1.0 + m.exp()); // d/dm log(1+e^{-m}) = -sigma
            grad.scaled_add(-(y as f64) * sigma, p);
            let weight = sigma * (1.0 - sigma);
            for i in 0..dim {
                for j in 0..dim {
                    hess[[i, j]] += weight * p[i] * p[j];
                }
            }
        }
        let gnorm = grad.dot(&grad).sqrt();
        if gnorm < GRADIENT_TOL {
            break;
        }
        match crate::linalg::solve(&hess, &grad, 1e-13) {
            Some(step) => {
                w -= &step;
                damping = (damping * 0.5).max(lambda);
            }
            None => {
                damping = (damping * 10.0).max(1e-8);
            }
        }
    }
    points
        .iter()
        .zip(labels.iter())
        .all(|(p, &y)| y as f64 * w.dot(p) > 0.0)
}
