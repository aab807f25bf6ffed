//! Minimum-norm point in the convex hull of a finite point set, via Wolfe's
//! active-set method.
//!
//! This single convex solve answers the homogeneous separation question both
//! ways at once. For signed points z_i = y_i·x_i:
//!
//! * if the minimum-norm point x* is bounded away from the origin, then
//!   ⟨x*, z_i⟩ ≥ ‖x*‖² for all i, so x* itself is a separating direction
//!   with margin ‖x*‖;
//! * if the minimum is zero, the optimal convex coefficients exhibit the
//!   origin inside the hull, which is exactly the certificate that no
//!   separating direction exists.
//!
//! The method keeps a "corral" of affinely independent points, repeatedly
//! solves the affine minimization over the corral (a small KKT system), and
//! either moves to that minimizer or line-searches toward it and drops a
//! point. It terminates in finitely many steps up to floating-point noise.

use ndarray::{Array1, Array2};

pub(crate) struct MnpSolution {
    /// The minimum-norm point.
    pub x: Array1<f64>,
    /// Convex coefficients over all input points (mostly zero).
    pub lambda: Vec<f64>,
    /// Number of major iterations used.
    pub iterations: usize,
}

#[derive(Debug)]
pub(crate) struct MnpFailure {
    pub iterations: usize,
}

/// Relative duality-gap tolerance for stopping: stop when no point improves
/// `⟨x, z⟩` below `‖x‖²` by more than this times the squared data scale.
const GAP_TOL: f64 = 1e-15;
/// Coefficients below this are treated as zero when cleaning the output.
const LAMBDA_EPS: f64 = 1e-14;

pub(crate) fn min_norm_point(
    points: &[Array1<f64>],
    max_iterations: usize,
) -> Result<MnpSolution, MnpFailure> {
    let mut solution = wolfe_loop(points, max_iterations)?;
    mdm_polish(points, &mut solution);
    Ok(solution)
}

/// Pairwise descent steps on the simplex (move weight from the worst
/// supported point toward the most violating one). Needs no linear solves,
/// so it stays accurate where the corral solves go ill-conditioned — in
/// particular it drives the residual of a non-separable instance down to
/// rounding level even when the active set is degenerate.
fn mdm_polish(points: &[Array1<f64>], solution: &mut MnpSolution) {
    let n = points.len();
    let scale_sq = points
        .iter()
        .map(|p| p.dot(p))
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let tol = 1e-14 * scale_sq;
    let mut lambda = solution.lambda.clone();
    let mut x = Array1::zeros(points[0].len());
    for (l, p) in lambda.iter().zip(points.iter()) {
        x.scaled_add(*l, p);
    }
    for _ in 0..20_000 {
        let margins: Vec<f64> = points.iter().map(|p| x.dot(p)).collect();
        let mut i_min = 0;
        for i in 1..n {
            if margins[i] < margins[i_min] {
                i_min = i;
            }
        }
        let mut i_max = None;
        for i in 0..n {
            if lambda[i] > 0.0 && i_max.is_none_or(|j: usize| margins[i] > margins[j]) {
                i_max = Some(i);
            }
        }
        let Some(i_max) = i_max else { break };
        let gap = margins[i_max] - margins[i_min];
        if gap <= tol || i_max == i_min {
            break;
        }
        let d = &points[i_min] - &points[i_max];
        let dd = d.dot(&d);
        if dd <= 0.0 {
            break;
        }
        let t = (gap / dd).min(lambda[i_max]);
        if t <= 0.0 {
            break;
        }
        lambda[i_max] -= t;
        lambda[i_min] += t;
        x.scaled_add(t, &d);
        solution.iterations += 1;
    }
    let total: f64 = lambda.iter().sum();
    if total > 0.0 {
        for l in &mut lambda {
            *l /= total;
        }
    }
    solution.lambda = lambda;
    solution.x = x;
}

fn wolfe_loop(points: &[Array1<f64>], max_iterations: usize) -> Result<MnpSolution, MnpFailure> {
    assert!(!points.is_empty(), "need at least one point");
    let n = points.len();
    let scale_sq = points
        .iter()
        .map(|p| p.dot(p))
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let gap_tol = GAP_TOL * scale_sq;

    // Corral state: indices into `points` and their convex weights.
    let start = (0..n)
        .min_by(|&a, &b| {
            points[a]
                .dot(&points[a])
                .partial_cmp(&points[b].dot(&points[b]))
                .unwrap()
        })
        .unwrap();
    let mut corral: Vec<usize> = vec![start];
    let mut weights: Vec<f64> = vec![1.0];
    let mut x = points[start].clone();

    let mut iterations = 0usize;
    // Stop when the objective plateaus: floating-point stalls on
    // ill-conditioned (nearly collinear) point sets otherwise cycle
    // between adding and dropping the same vertex.
    let mut best_xx = f64::INFINITY;
    let mut stalled_rounds = 0usize;
    loop {
        iterations += 1;
        if iterations > max_iterations {
            return Err(MnpFailure { iterations });
        }

        // Most-improving vertex.
        let xx = x.dot(&x);
        if xx < best_xx - gap_tol {
            best_xx = xx;
            stalled_rounds = 0;
        } else {
            stalled_rounds += 1;
        }
        let mut best = 0usize;
        let mut best_val = f64::INFINITY;
        for (i, p) in points.iter().enumerate() {
            let v = x.dot(p);
            if v < best_val {
                best_val = v;
                best = i;
            }
        }
        if best_val >= xx - gap_tol || corral.contains(&best) || stalled_rounds > 50 {
            // No vertex improves (or improvement sits at floating-point
            // resolution): x is the minimum-norm point for our purposes.
            // The caller revalidates whatever we return.
            return Ok(finish(points.len(), corral, weights, x, iterations));
        }
        corral.push(best);
        weights.push(0.0);

        // Minor cycle: pull x to the affine minimizer over the corral,
        // dropping points until the minimizer is a convex combination.
        loop {
            iterations += 1;
            if iterations > max_iterations {
                return Err(MnpFailure { iterations });
            }
            let aff = match affine_minimizer(points, &corral) {
                Some(a) => a,
                None => {
                    // Affinely dependent beyond ridge repair: drop the
                    // smallest-weight member other than the newest, so the
                    // corral strictly changes.
                    let drop = weights
                        .iter()
                        .take(weights.len() - 1)
                        .enumerate()
                        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                        .map(|(i, _)| i)
                        .unwrap();
                    corral.remove(drop);
                    weights.remove(drop);
                    if corral.is_empty() {
                        return Err(MnpFailure { iterations });
                    }
                    continue;
                }
            };
            if aff.iter().all(|&w| w > -LAMBDA_EPS) {
                weights = aff.iter().map(|&w| w.max(0.0)).collect();
                x = combine(points, &corral, &weights);
                break;
            }
            // Line search from `weights` toward `aff`, stopping at the
            // boundary of the simplex; drop the vanishing points.
            let mut theta = 1.0_f64;
            for (&w_new, &w_old) in aff.iter().zip(weights.iter()) {
                if w_new < 0.0 && w_old > w_new {
                    theta = theta.min(w_old / (w_old - w_new));
                }
            }
            let blended: Vec<f64> = weights
                .iter()
                .zip(aff.iter())
                .map(|(&w_old, &w_new)| (1.0 - theta) * w_old + theta * w_new)
                .collect();
            let keep: Vec<usize> = (0..corral.len())
                .filter(|&i| blended[i] > LAMBDA_EPS)
                .collect();
            if keep.is_empty() || keep.len() == corral.len() {
                // theta hit no boundary (or removed everything): accept the
                // clamped blend to avoid cycling.
                weights = blended.iter().map(|&w| w.max(0.0)).collect();
                let total: f64 = weights.iter().sum();
                for w in &mut weights {
                    *w /= total;
                }
                x = combine(points, &corral, &weights);
                break;
            }
            corral = keep.iter().map(|&i| corral[i]).collect();
            weights = keep.iter().map(|&i| blended[i]).collect();
            let total: f64 = weights.iter().sum();
            for w in &mut weights {
                *w /= total;
            }
        }
    }
}

fn combine(points: &[Array1<f64>], corral: &[usize], weights: &[f64]) -> Array1<f64> {
    let mut x = Array1::zeros(points[corral[0]].len());
    for (&i, &w) in corral.iter().zip(weights.iter()) {
        x.scaled_add(w, &points[i]);
    }
    x
}

/// Minimize ‖Σ λ_i z_i‖ subject to Σ λ_i = 1 (λ unconstrained in sign):
/// KKT system over the corral Gram matrix. A linearly dependent corral —
/// the normal state at a non-separable optimum, where some convex
/// combination reaches the origin — makes the system singular but
/// consistent, so the fallback is a pseudo-inverse solve, not a ridge.
fn affine_minimizer(points: &[Array1<f64>], corral: &[usize]) -> Option<Vec<f64>> {
    let k = corral.len();
    let mut kkt = Array2::zeros((k + 1, k + 1));
    for a in 0..k {
        for b in 0..k {
            kkt[[a, b]] = points[corral[a]].dot(&points[corral[b]]);
        }
        kkt[[a, k]] = 1.0;
        kkt[[k, a]] = 1.0;
    }
    let mut rhs = Array1::zeros(k + 1);
    rhs[k] = 1.0;
    let sol = match crate::linalg::solve(&kkt, &rhs, 1e-13) {
        Some(sol) => sol,
        None => crate::linalg::sym_pseudo_solve(&kkt, &rhs, 1e-12),
    };
    // Reject the solve when it fails to satisfy the simplex constraint
    // (inconsistent beyond rounding); the caller then shrinks the corral.
    let total: f64 = sol.iter().take(k).sum();
    if (total - 1.0).abs() > 1e-6 {
        return None;
    }
    Some(sol.iter().take(k).copied().collect())
}

fn finish(
    n: usize,
    corral: Vec<usize>,
    weights: Vec<f64>,
    x: Array1<f64>,
    iterations: usize,
) -> MnpSolution {
    let mut lambda = vec![0.0; n];
    let total: f64 = weights.iter().sum();
    for (&i, &w) in corral.iter().zip(weights.iter()) {
        lambda[i] += w / total;
    }
    MnpSolution {
        x,
        lambda,
        iterations,
    }
}
