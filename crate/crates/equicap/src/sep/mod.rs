//! Linear-separability decisions and capacity estimation.
//!
//! The decision procedure answers "does some w satisfy y_i⟨w, x_i⟩ > 0 for
//! all i" with either a margin-1 witness or a convex-combination certificate
//! that the origin lies in the hull of the signed points — never neither. A
//! solver that runs out of budget reports a distinct `Undecided` error
//! rather than guessing.
//!
//! On top of the decision sit the orbit machinery (centroid reduction, the
//! lifted separating direction), seeded anchor sampling, exhaustive
//! dichotomy enumeration, and the Monte-Carlo fraction estimator with
//! Wilson intervals.

mod logistic;
mod mnp;

pub use logistic::logistic_separable;

use crate::cover::{cover_fraction, ExactFraction};
use crate::linalg;
use crate::rep::Representation;
use ndarray::{Array1, Array2};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

/// Margin slack accepted on a scaled witness.
pub const WITNESS_TOL: f64 = 1e-7;
/// Norm bound accepted on a convex-hull certificate.
pub const CERTIFICATE_TOL: f64 = 1e-7;
/// Geometric margins (per unit witness norm, relative to data scale) below
/// this are considered numerically indistinguishable from zero.
const MARGIN_FLOOR: f64 = 1e-8;
/// Point sets whose largest norm falls below this are treated as all-zero.
/// Group averaging produces exact zeros only up to rounding (e.g. the
/// rotation representation averages to ~1e-17 rather than 0), and
/// normalizing such noise would manufacture spurious margins.
const ZERO_SCALE_TOL: f64 = 1e-12;
const MNP_ITERATION_BUDGET: usize = 200_000;

#[derive(Debug, Error)]
pub enum SepError {
    #[error("no points to separate")]
    Empty,
    #[error("point {index} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("labels length {labels} does not match point count {points}")]
    LabelMismatch { labels: usize, points: usize },
    #[error(
        "solver undecided after {iterations} iterations: residual norm {residual:e}, \
         best margin {margin:e} (neither witness nor certificate validates)"
    )]
    Undecided {
        iterations: usize,
        residual: f64,
        margin: f64,
    },
    #[error("dichotomy enumeration limited to P <= {limit}, got P = {p}")]
    TooManyAnchors { p: usize, limit: usize },
    #[error("empirical fraction needs P >= 2, got {p}")]
    TooFewAnchors { p: usize },
    #[error("empirical fraction needs at least one trial")]
    NoTrials,
}

/// Outcome of a separability decision, carrying its own evidence.
#[derive(Debug, Clone, Serialize)]
pub enum SeparabilityVerdict {
    Separable {
        /// Direction scaled so every signed margin is at least 1 (up to
        /// [`WITNESS_TOL`]).
        witness: Vec<f64>,
        /// Smallest signed margin of the unit-normalized witness.
        min_margin: f64,
    },
    NonSeparable {
        /// Convex coefficients λ ≥ 0, Σλ = 1 with ‖Σ λ_i y_i x_i‖ below
        /// [`CERTIFICATE_TOL`] times the data scale.
        certificate: Vec<f64>,
    },
}

impl SeparabilityVerdict {
    pub fn is_separable(&self) -> bool {
        matches!(self, SeparabilityVerdict::Separable { .. })
    }
}

/// Decide homogeneous separability of labeled points.
///
/// Scale invariance makes strict feasibility equivalent to margin-1
/// feasibility, so the witness is returned in margin-1 normalization.
pub fn decide_separable(
    points: &[Array1<f64>],
    labels: &[i8],
) -> Result<SeparabilityVerdict, SepError> {
    if points.is_empty() {
        return Err(SepError::Empty);
    }
    if labels.len() != points.len() {
        return Err(SepError::LabelMismatch {
            labels: labels.len(),
            points: points.len(),
        });
    }
    let dim = points[0].len();
    for (index, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(SepError::DimensionMismatch {
                index,
                got: p.len(),
                expected: dim,
            });
        }
    }
    let signed: Vec<Array1<f64>> = points
        .iter()
        .zip(labels.iter())
        .map(|(p, &y)| p * y as f64)
        .collect();
    let scale = signed.iter().map(linalg::vec_norm).fold(0.0_f64, f64::max);
    if scale <= ZERO_SCALE_TOL {
        // Every point is (numerically) the origin; no homogeneous separator
        // exists, and any convex combination certifies it.
        let n = signed.len();
        return Ok(SeparabilityVerdict::NonSeparable {
            certificate: vec![1.0 / n as f64; n],
        });
    }
    let normalized: Vec<Array1<f64>> = signed.iter().map(|z| z / scale).collect();

    match mnp::min_norm_point(&normalized, MNP_ITERATION_BUDGET) {
        Ok(sol) => {
            let residual = linalg::vec_norm(&sol.x);
            let margin = normalized
                .iter()
                .map(|z| sol.x.dot(z))
                .fold(f64::INFINITY, f64::min);
            // The raw margin scales like the squared residual (at the
            // optimum the supported margins equal ‖x‖² exactly); the
            // meaningful quantity is the geometric margin of the unit
            // witness.
            let geometric_margin = if residual > 0.0 {
                margin / residual
            } else {
                0.0
            };
            if geometric_margin > MARGIN_FLOOR && margin > 0.0 {
                // Scale to margin 1 in the original (unnormalized) data.
                let witness = &sol.x / (margin * scale);
                let worst = signed
                    .iter()
                    .map(|z| witness.dot(z))
                    .fold(f64::INFINITY, f64::min);
                if worst >= 1.0 - WITNESS_TOL {
                    return Ok(SeparabilityVerdict::Separable {
                        witness: witness.to_vec(),
                        min_margin: geometric_margin,
                    });
                }
            }
            if residual <= CERTIFICATE_TOL {
                return Ok(SeparabilityVerdict::NonSeparable {
                    certificate: sol.lambda,
                });
            }
            Err(SepError::Undecided {
                iterations: sol.iterations,
                residual: residual * scale,
                margin: geometric_margin,
            })
        }
        Err(fail) => Err(SepError::Undecided {
            iterations: fail.iterations,
            residual: f64::NAN,
            margin: f64::NAN,
        }),
    }
}

/// P anchors together with the representation whose orbits they generate.
/// Labels live outside; a [`Dichotomy`] assigns them per trial.
#[derive(Debug, Clone)]
pub struct OrbitSet {
    rep: Arc<Representation>,
    anchors: Vec<Array1<f64>>,
}

impl OrbitSet {
    pub fn new(rep: Arc<Representation>, anchors: Vec<Array1<f64>>) -> Self {
        assert!(!anchors.is_empty());
        for a in &anchors {
            assert_eq!(a.len(), rep.dim(), "anchor dimension mismatch");
        }
        OrbitSet { rep, anchors }
    }

    pub fn rep(&self) -> &Arc<Representation> {
        &self.rep
    }

    pub fn anchors(&self) -> &[Array1<f64>] {
        &self.anchors
    }

    pub fn num_anchors(&self) -> usize {
        self.anchors.len()
    }

    /// Materialize the full orbits: `points[μ]` holds the |G| images of
    /// anchor μ.
    pub fn full_orbits(&self) -> Vec<Vec<Array1<f64>>> {
        self.anchors
            .iter()
            .map(|r| {
                self.rep
                    .group()
                    .elements()
                    .map(|g| self.rep.matrix(g).dot(r))
                    .collect()
            })
            .collect()
    }
}

/// Centroids ⟨π⟩·r^μ of each orbit. Separating the centroids is equivalent
/// to separating the full orbits; the equivalence is property-tested, not
/// assumed.
pub fn centroid_reduce(orbits: &OrbitSet) -> Vec<Array1<f64>> {
    let avg = orbits.rep.group_average();
    orbits.anchors.iter().map(|r| avg.dot(r)).collect()
}

/// Lift a direction that separates the centroids to one that separates the
/// full orbits: w̃ = ⟨π⟩ᵀ·w.
pub fn separating_w_lift(w_centroid: &Array1<f64>, rep: &Representation) -> Array1<f64> {
    rep.group_average().t().dot(w_centroid)
}

/// P anchors drawn i.i.d. standard normal, deterministically from the seed.
pub fn sample_orbit_instance(rep: &Arc<Representation>, p: usize, seed: u64) -> OrbitSet {
    assert!(p >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let anchors = sample_gaussian_anchors(rep.dim(), p, &mut rng);
    OrbitSet::new(Arc::clone(rep), anchors)
}

pub(crate) fn sample_gaussian_anchors(
    dim: usize,
    p: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Array1<f64>> {
    (0..p)
        .map(|_| Array1::from_iter((0..dim).map(|_| rng.sample::<f64, _>(StandardNormal))))
        .collect()
}

/// A binary labeling of P anchors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dichotomy(pub Vec<i8>);

impl Dichotomy {
    /// Uniform over all 2^P labelings (constant labelings included).
    pub fn sample(p: usize, rng: &mut ChaCha8Rng) -> Self {
        Dichotomy(
            (0..p)
                .map(|_| if rng.random::<bool>() { 1 } else { -1 })
                .collect(),
        )
    }

    /// The labeling encoded by the low P bits of `mask`.
    pub fn from_mask(p: usize, mask: u64) -> Self {
        Dichotomy(
            (0..p)
                .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
                .collect(),
        )
    }
}

/// A capacity problem: something that can produce, per anchor, a finite
/// group of points that all carry the anchor's label and whose separability
/// is equivalent to the full orbit problem.
pub trait DichotomyProblem: Sync {
    /// Fixed-subspace dimension entering the theoretical fraction.
    fn n0(&self) -> usize;

    /// Sample P anchor point-groups from the given stream.
    fn sample_anchor_groups(&self, p: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Array1<f64>>>;
}

/// How orbits of a representation are presented to the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitReduction {
    /// One centroid per anchor (the default; exact by the reduction lemma).
    Centroids,
    /// All |G| points per anchor.
    RawOrbits,
}

/// Capacity problem for the orbits of a representation.
pub struct RepProblem {
    rep: Arc<Representation>,
    n0: usize,
    reduction: OrbitReduction,
}

impl RepProblem {
    pub fn new(
        rep: Arc<Representation>,
        reduction: OrbitReduction,
    ) -> Result<Self, crate::rep::RepError> {
        let n0 = rep.fixed_subspace_dim()?;
        Ok(RepProblem { rep, n0, reduction })
    }

    pub fn rep(&self) -> &Arc<Representation> {
        &self.rep
    }
}

impl DichotomyProblem for RepProblem {
    fn n0(&self) -> usize {
        self.n0
    }

    fn sample_anchor_groups(&self, p: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Array1<f64>>> {
        let anchors = sample_gaussian_anchors(self.rep.dim(), p, rng);
        let orbits = OrbitSet::new(Arc::clone(&self.rep), anchors);
        match self.reduction {
            OrbitReduction::Centroids => centroid_reduce(&orbits)
                .into_iter()
                .map(|c| vec![c])
                .collect(),
            OrbitReduction::RawOrbits => orbits.full_orbits(),
        }
    }
}

/// Which decision procedure the estimator runs per dichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Probe {
    /// Exact feasibility with witness/certificate (the default).
    Feasibility,
    /// Logistic-regression protocol probe.
    Logistic,
}

/// Monte-Carlo estimate of the fraction of separable dichotomies.
#[derive(Debug, Clone, Serialize)]
pub struct CapacityEstimate {
    pub p: usize,
    pub n0: usize,
    pub trials: usize,
    pub separable_count: usize,
    pub fraction: f64,
    pub wilson_ci_95: (f64, f64),
    pub seed: u64,
    pub theory: ExactFraction,
}

/// 95% Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    assert!(trials > 0);
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p_hat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = z * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // Clamp so the interval always brackets the point estimate.
    (
        (center - half).max(0.0).min(p_hat),
        (center + half).min(1.0).max(p_hat),
    )
}

fn flatten_labeled(groups: &[Vec<Array1<f64>>], labels: &[i8]) -> (Vec<Array1<f64>>, Vec<i8>) {
    let mut points = Vec::new();
    let mut point_labels = Vec::new();
    for (group, &y) in groups.iter().zip(labels.iter()) {
        for point in group {
            points.push(point.clone());
            point_labels.push(y);
        }
    }
    (points, point_labels)
}

fn decide_groups(
    groups: &[Vec<Array1<f64>>],
    labels: &[i8],
    probe: Probe,
) -> Result<bool, SepError> {
    let (points, point_labels) = flatten_labeled(groups, labels);
    match probe {
        Probe::Feasibility => Ok(decide_separable(&points, &point_labels)?.is_separable()),
        Probe::Logistic => Ok(logistic_separable(&points, &point_labels)),
    }
}

/// Estimate the separable fraction of a problem at P anchors.
///
/// One anchor set is sampled from stream 0 of the seed; each trial labels it
/// from its own counter-derived stream, so results are identical for any
/// worker count.
pub fn empirical_fraction(
    problem: &dyn DichotomyProblem,
    p: usize,
    trials: usize,
    seed: u64,
    probe: Probe,
) -> Result<CapacityEstimate, SepError> {
    if p < 2 {
        return Err(SepError::TooFewAnchors { p });
    }
    if trials == 0 {
        return Err(SepError::NoTrials);
    }
    let mut anchor_rng = ChaCha8Rng::seed_from_u64(seed);
    anchor_rng.set_stream(0);
    let groups = problem.sample_anchor_groups(p, &mut anchor_rng);

    let verdicts: Result<Vec<bool>, SepError> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64 + 1);
            let dichotomy = Dichotomy::sample(p, &mut rng);
            decide_groups(&groups, &dichotomy.0, probe)
        })
        .collect();
    let verdicts = verdicts?;
    let separable_count = verdicts.iter().filter(|&&s| s).count();
    Ok(CapacityEstimate {
        p,
        n0: problem.n0(),
        trials,
        separable_count,
        fraction: separable_count as f64 / trials as f64,
        wilson_ci_95: wilson_interval(separable_count, trials),
        seed,
        theory: cover_fraction(p, problem.n0()),
    })
}

/// Pool several estimates of the same quantity (e.g. across input seeds).
pub fn pool_estimates(estimates: &[CapacityEstimate]) -> CapacityEstimate {
    assert!(!estimates.is_empty());
    let trials: usize = estimates.iter().map(|e| e.trials).sum();
    let separable_count: usize = estimates.iter().map(|e| e.separable_count).sum();
    CapacityEstimate {
        p: estimates[0].p,
        n0: estimates[0].n0,
        trials,
        separable_count,
        fraction: separable_count as f64 / trials as f64,
        wilson_ci_95: wilson_interval(separable_count, trials),
        seed: estimates[0].seed,
        theory: estimates[0].theory.clone(),
    }
}

const BRUTE_FORCE_LIMIT: usize = 20;

/// Exact separable fraction by enumerating all 2^P dichotomies.
///
/// Complement symmetry (w separates a labeling iff -w separates its flip)
/// halves the enumeration.
pub fn brute_force_fraction(
    anchor_groups: &[Vec<Array1<f64>>],
    probe: Probe,
) -> Result<ExactFraction, SepError> {
    let p = anchor_groups.len();
    if p == 0 {
        return Err(SepError::Empty);
    }
    if p > BRUTE_FORCE_LIMIT {
        return Err(SepError::TooManyAnchors {
            p,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let half: u64 = 1 << (p - 1);
    let count: Result<u64, SepError> = (0..half)
        .into_par_iter()
        .map(|mask| {
            // Anchor 0 fixed to +1; bit i labels anchor i+1.
            let mut labels = Dichotomy::from_mask(p, mask << 1).0;
            labels[0] = 1;
            Ok(decide_groups(anchor_groups, &labels, probe)? as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b));
    let separable = count? * 2;
    Ok(ExactFraction::new(
        BigInt::from(separable),
        BigInt::from(1u64) << p,
    ))
}

/// Brute-force fraction over the centroids of a representation's orbits,
/// with Gaussian anchors from the seed.
pub fn brute_force_fraction_of_rep(
    rep: &Arc<Representation>,
    p: usize,
    seed: u64,
) -> Result<ExactFraction, SepError> {
    let orbits = sample_orbit_instance(rep, p, seed);
    let groups: Vec<Vec<Array1<f64>>> = centroid_reduce(&orbits)
        .into_iter()
        .map(|c| vec![c])
        .collect();
    brute_force_fraction(&groups, Probe::Feasibility)
}

/// Re-check a verdict against the points it claims to describe, fully
/// independently of the solver internals.
pub fn validate_verdict(
    points: &[Array1<f64>],
    labels: &[i8],
    verdict: &SeparabilityVerdict,
) -> bool {
    match verdict {
        SeparabilityVerdict::Separable { witness, .. } => {
            let w = Array1::from_vec(witness.clone());
            points
                .iter()
                .zip(labels.iter())
                .all(|(x, &y)| y as f64 * w.dot(x) >= 1.0 - WITNESS_TOL)
        }
        SeparabilityVerdict::NonSeparable { certificate } => {
            if certificate.len() != points.len() {
                return false;
            }
            if certificate.iter().any(|&l| l < 0.0) {
                return false;
            }
            let total: f64 = certificate.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return false;
            }
            let dim = points[0].len();
            let mut combo = Array1::<f64>::zeros(dim);
            let scale = points
                .iter()
                .map(linalg::vec_norm)
                .fold(0.0_f64, f64::max)
                .max(1.0);
            for ((x, &y), &l) in points.iter().zip(labels.iter()).zip(certificate.iter()) {
                combo.scaled_add(l * y as f64, x);
            }
            linalg::vec_norm(&combo) < CERTIFICATE_TOL * scale
        }
    }
}

/// Numerical rank of the matrix whose rows are the given points.
pub fn point_matrix_rank(points: &[Array1<f64>], tol: f64) -> usize {
    let dim = points[0].len();
    let mut m = Array2::zeros((points.len(), dim));
    for (i, v) in points.iter().enumerate() {
        m.row_mut(i).assign(v);
    }
    linalg::numerical_rank(&m, tol)
}
