//! Minimal equivariant layer toolkit: periodic 2D convolution, pooling,
//! global reductions, and the direct-sum layer, plus capacity problems
//! built from them.
//!
//! Everything operates on small dense tensors with explicit index
//! arithmetic. Periodic convolution with an elementwise nonlinearity is
//! exactly shift-equivariant (bit-exact: the same products are summed in
//! the same order), max pooling is equivariant only to shifts by multiples
//! of the window, and zero-padded convolution is not equivariant at all.

use crate::cover::cover_fraction;
use crate::sep::{CapacityEstimate, DichotomyProblem, Probe, SepError};
use ndarray::{Array1, Array2, Array3, Array4};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GcnnError {
    #[error("input has {got} channels, filters expect {expected}")]
    ChannelMismatch { got: usize, expected: usize },
    #[error("pooling window {k} does not divide spatial size {w}x{l}")]
    NonDivisibleWindow { k: usize, w: usize, l: usize },
    #[error("feature map contains a non-finite value")]
    NonFinite,
    #[error("direct-sum layer needs input spatial size {m}x{m}, got {w}x{l}")]
    WrongSpatialSize { m: usize, w: usize, l: usize },
    #[error("direct-sum periods {m1} and {m2} share a factor; pass allow_non_coprime to proceed")]
    NotCoprime { m1: usize, m2: usize },
    #[error("direct-sum periods must be at least 1")]
    ZeroPeriod,
}

/// A W×L×C stack of feature maps.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMap {
    data: Array3<f64>,
}

impl FeatureMap {
    pub fn new(data: Array3<f64>) -> Result<Self, GcnnError> {
        if data.iter().any(|v| !v.is_finite()) {
            return Err(GcnnError::NonFinite);
        }
        Ok(FeatureMap { data })
    }

    /// Standard-normal entries from the given stream.
    pub fn random(w: usize, l: usize, c: usize, rng: &mut ChaCha8Rng) -> Self {
        let normal = Normal::new(0.0, 1.0).unwrap();
        let data = Array3::from_shape_fn((w, l, c), |_| normal.sample(rng));
        FeatureMap { data }
    }

    pub fn width(&self) -> usize {
        self.data.dim().0
    }

    pub fn length(&self) -> usize {
        self.data.dim().1
    }

    pub fn channels(&self) -> usize {
        self.data.dim().2
    }

    pub fn data(&self) -> &Array3<f64> {
        &self.data
    }

    /// Cyclic shift: out[i, j] = in[i - dw mod W, j - dl mod L].
    pub fn shift(&self, dw: usize, dl: usize) -> FeatureMap {
        let (w, l, c) = self.data.dim();
        let data = Array3::from_shape_fn((w, l, c), |(i, j, ch)| {
            self.data[[(i + w - dw % w) % w, (j + l - dl % l) % l, ch]]
        });
        FeatureMap { data }
    }

    /// Per-channel mean over all spatial positions.
    pub fn global_mean(&self) -> Array1<f64> {
        let (w, l, c) = self.data.dim();
        let mut out = Array1::zeros(c);
        for i in 0..w {
            for j in 0..l {
                for ch in 0..c {
                    out[ch] += self.data[[i, j, ch]];
                }
            }
        }
        out / (w * l) as f64
    }

    /// Per-channel max over all spatial positions.
    pub fn global_max(&self) -> Array1<f64> {
        let (w, l, c) = self.data.dim();
        let mut out = Array1::from_elem(c, f64::NEG_INFINITY);
        for i in 0..w {
            for j in 0..l {
                for ch in 0..c {
                    out[ch] = out[ch].max(self.data[[i, j, ch]]);
                }
            }
        }
        out
    }

    /// Flatten to a single vector.
    pub fn flatten(&self) -> Array1<f64> {
        Array1::from_iter(self.data.iter().copied())
    }

    pub fn max_abs_diff(&self, other: &FeatureMap) -> f64 {
        self.data
            .iter()
            .zip(other.data.iter())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    ZeroPad(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nonlinearity {
    Relu,
    Identity,
}

fn apply_nonlinearity(v: f64, phi: Nonlinearity) -> f64 {
    match phi {
        Nonlinearity::Relu => v.max(0.0),
        Nonlinearity::Identity => v,
    }
}

/// A convolution layer: N filters of shape kh×kw×M, zero bias.
#[derive(Debug, Clone)]
pub struct ConvLayer {
    /// Indexed [out_channel, a, b, in_channel].
    filters: Array4<f64>,
    pub boundary: Boundary,
    pub nonlinearity: Nonlinearity,
}

impl ConvLayer {
    pub fn new(filters: Array4<f64>, boundary: Boundary, nonlinearity: Nonlinearity) -> Self {
        ConvLayer {
            filters,
            boundary,
            nonlinearity,
        }
    }

    /// Seeded normal init scaled by 1/sqrt(fan-in).
    pub fn random(
        out_channels: usize,
        kh: usize,
        kw: usize,
        in_channels: usize,
        boundary: Boundary,
        nonlinearity: Nonlinearity,
        seed: u64,
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fan_in = (kh * kw * in_channels) as f64;
        let normal = Normal::new(0.0, 1.0 / fan_in.sqrt()).unwrap();
        let filters = Array4::from_shape_fn((out_channels, kh, kw, in_channels), |_| {
            normal.sample(&mut rng)
        });
        ConvLayer {
            filters,
            boundary,
            nonlinearity,
        }
    }

    pub fn out_channels(&self) -> usize {
        self.filters.dim().0
    }

    pub fn in_channels(&self) -> usize {
        self.filters.dim().3
    }

    /// Keep only the first `n` output channels (the channel-removal protocol
    /// for sweeping capacity at fixed weights).
    pub fn truncated(&self, n: usize) -> ConvLayer {
        assert!(n >= 1 && n <= self.out_channels());
        let (_, kh, kw, m) = self.filters.dim();
        let filters =
            Array4::from_shape_fn((n, kh, kw, m), |(o, a, b, c)| self.filters[[o, a, b, c]]);
        ConvLayer {
            filters,
            boundary: self.boundary,
            nonlinearity: self.nonlinearity,
        }
    }

    pub fn forward(&self, input: &FeatureMap) -> Result<FeatureMap, GcnnError> {
        let (n_out, kh, kw, m_in) = self.filters.dim();
        let (w, l, c) = input.data.dim();
        if c != m_in {
            return Err(GcnnError::ChannelMismatch {
                got: c,
                expected: m_in,
            });
        }
        let data = match self.boundary {
            Boundary::Periodic => {
                let mut out = Array3::zeros((w, l, n_out));
                for i in 0..w {
                    for j in 0..l {
                        for n in 0..n_out {
                            let mut acc = 0.0;
                            for a in 0..kh {
                                let ia = (i + a) % w;
                                for b in 0..kw {
                                    let jb = (j + b) % l;
                                    for m in 0..m_in {
                                        acc += self.filters[[n, a, b, m]] * input.data[[ia, jb, m]];
                                    }
                                }
                            }
                            out[[i, j, n]] = apply_nonlinearity(acc, self.nonlinearity);
                        }
                    }
                }
                out
            }
            Boundary::ZeroPad(p) => {
                let ow = w + 2 * p + 1 - kh;
                let ol = l + 2 * p + 1 - kw;
                let mut out = Array3::zeros((ow, ol, n_out));
                for i in 0..ow {
                    for j in 0..ol {
                        for n in 0..n_out {
                            let mut acc = 0.0;
                            for a in 0..kh {
                                for b in 0..kw {
                                    let ia = (i + a) as isize - p as isize;
                                    let jb = (j + b) as isize - p as isize;
                                    if ia < 0 || jb < 0 || ia >= w as isize || jb >= l as isize {
                                        continue;
                                    }
                                    for m in 0..m_in {
                                        acc += self.filters[[n, a, b, m]]
                                            * input.data[[ia as usize, jb as usize, m]];
                                    }
                                }
                            }
                            out[[i, j, n]] = apply_nonlinearity(acc, self.nonlinearity);
                        }
                    }
                }
                out
            }
        };
        Ok(FeatureMap { data })
    }
}

/// Convolve `input` with `layer` (the layer's boundary mode and
/// nonlinearity apply).
pub fn periodic_conv(input: &FeatureMap, layer: &ConvLayer) -> Result<FeatureMap, GcnnError> {
    layer.forward(input)
}

/// Window means over k×k blocks; requires k to divide both spatial sizes.
pub fn avg_pool(input: &FeatureMap, k: usize) -> Result<FeatureMap, GcnnError> {
    let (w, l, c) = input.data.dim();
    if k == 0 || w % k != 0 || l % k != 0 {
        return Err(GcnnError::NonDivisibleWindow { k, w, l });
    }
    let mut out = Array3::zeros((w / k, l / k, c));
    for i in 0..w / k {
        for j in 0..l / k {
            for ch in 0..c {
                let mut acc = 0.0;
                for a in 0..k {
                    for b in 0..k {
                        acc += input.data[[i * k + a, j * k + b, ch]];
                    }
                }
                out[[i, j, ch]] = acc / (k * k) as f64;
            }
        }
    }
    Ok(FeatureMap { data: out })
}

/// Window maxima over k×k blocks; requires k to divide both spatial sizes.
pub fn max_pool(input: &FeatureMap, k: usize) -> Result<FeatureMap, GcnnError> {
    let (w, l, c) = input.data.dim();
    if k == 0 || w % k != 0 || l % k != 0 {
        return Err(GcnnError::NonDivisibleWindow { k, w, l });
    }
    let mut out = Array3::zeros((w / k, l / k, c));
    for i in 0..w / k {
        for j in 0..l / k {
            for ch in 0..c {
                let mut best = f64::NEG_INFINITY;
                for a in 0..k {
                    for b in 0..k {
                        best = best.max(input.data[[i * k + a, j * k + b, ch]]);
                    }
                }
                out[[i, j, ch]] = best;
            }
        }
    }
    Ok(FeatureMap { data: out })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlobalPoolKind {
    Avg,
    Max,
}

/// Per-channel global reduction; `Avg` equals the group average of the
/// regular shift action applied channelwise.
pub fn global_pool(input: &FeatureMap, kind: GlobalPoolKind) -> Array1<f64> {
    match kind {
        GlobalPoolKind::Avg => input.global_mean(),
        GlobalPoolKind::Max => input.global_max(),
    }
}

/// Direct-sum layer output: per channel, the m1×m1 and m2×m2 matrices of
/// strided means, flattened and concatenated, with a ReLU at the end.
/// Returns an (m1²+m2²)×N matrix (rows: block entries, columns: channels).
///
/// The convolution is run without a nonlinearity and the ReLU is applied
/// only after the block reduction: the stride-m1 and stride-m2 phase
/// classes each partition the grid, so before any nonlinearity the two
/// block means of a given map are identical, and only a nonlinearity
/// applied after the reduction keeps the two fixed directions per channel
/// independent.
pub fn direct_sum_layer(
    input: &FeatureMap,
    layer: &ConvLayer,
    m1: usize,
    m2: usize,
    allow_non_coprime: bool,
) -> Result<Array2<f64>, GcnnError> {
    if m1 == 0 || m2 == 0 {
        return Err(GcnnError::ZeroPeriod);
    }
    if gcd(m1, m2) != 1 && !allow_non_coprime {
        return Err(GcnnError::NotCoprime { m1, m2 });
    }
    let m = m1 * m2;
    let (w, l, _) = input.data.dim();
    if w != m || l != m {
        return Err(GcnnError::WrongSpatialSize { m, w, l });
    }
    let linear = ConvLayer {
        filters: layer.filters.clone(),
        boundary: Boundary::Periodic,
        nonlinearity: Nonlinearity::Identity,
    };
    let y = linear.forward(input)?;
    let n = y.channels();
    let dim = m1 * m1 + m2 * m2;
    let mut out = Array2::zeros((dim, n));
    for ch in 0..n {
        for (offset, mk) in [(0usize, m1), (m1 * m1, m2)] {
            let reps = (m / mk) * (m / mk);
            for i in 0..mk {
                for j in 0..mk {
                    let mut acc = 0.0;
                    for a in (0..m).step_by(mk) {
                        for b in (0..m).step_by(mk) {
                            acc += y.data[[i + a, j + b, ch]];
                        }
                    }
                    out[[offset + i * mk + j, ch]] =
                        apply_nonlinearity(acc / reps as f64, Nonlinearity::Relu);
                }
            }
        }
    }
    Ok(out)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The representation carried by one output channel of the direct-sum layer
/// under the 2D translation group Z_m × Z_m (m = m1·m2): a block sum of the
/// regular representations of Z_m1×Z_m1 and Z_m2×Z_m2 pulled back along the
/// mod maps. Small m1, m2 only — the matrices are materialized.
pub fn direct_sum_channel_representation(
    m1: usize,
    m2: usize,
) -> Result<crate::rep::Representation, crate::rep::RepError> {
    use crate::group::FiniteGroup;
    use crate::rep::Representation;
    let m = m1 * m2;
    let zm = FiniteGroup::cyclic(m)?;
    let g = FiniteGroup::direct_product(&zm, &zm);
    let block = |mk: usize| -> Result<(Representation, Vec<usize>), crate::rep::RepError> {
        let zk = FiniteGroup::cyclic(mk)?;
        let gk = FiniteGroup::direct_product(&zk, &zk);
        let rep = Representation::regular(&gk);
        // (s, t) -> (s mod mk, t mod mk) in the product index encoding.
        let map = g
            .elements()
            .map(|e| {
                let (s, t) = (e / m, e % m);
                (s % mk) * mk + (t % mk)
            })
            .collect();
        Ok((rep, map))
    };
    let (r1, map1) = block(m1)?;
    let (r2, map2) = block(m2)?;
    Representation::direct_sum(&g, &[(&r1, &map1), (&r2, &map2)])
}

/// Result of an equivariance sweep: the worst residual seen over all tested
/// inputs and group elements.
pub struct EquivarianceReport {
    pub max_residual: f64,
    pub cases: usize,
}

impl EquivarianceReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.cases > 0 && self.max_residual < tol
    }
}

/// Compare `layer(shift(x))` against the expected output shift of
/// `layer(x)` over random inputs; shifts mapped to `None` are skipped
/// (outside the claimed equivariance subgroup).
pub fn verify_equivariance(
    layer: &dyn Fn(&FeatureMap) -> FeatureMap,
    input_shape: (usize, usize, usize),
    shifts: &[(usize, usize)],
    output_shift: &dyn Fn(usize, usize) -> Option<(usize, usize)>,
    trials: usize,
    seed: u64,
) -> EquivarianceReport {
    let (w, l, c) = input_shape;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual = 0.0_f64;
    let mut cases = 0;
    for _ in 0..trials {
        let x = FeatureMap::random(w, l, c, &mut rng);
        let fx = layer(&x);
        for &(s, t) in shifts {
            if let Some((os, ot)) = output_shift(s, t) {
                let lhs = layer(&x.shift(s, t));
                let rhs = fx.shift(os, ot);
                if lhs.data.dim() != rhs.data.dim() {
                    max_residual = f64::INFINITY;
                } else {
                    max_residual = max_residual.max(lhs.max_abs_diff(&rhs));
                }
                cases += 1;
            }
        }
    }
    EquivarianceReport {
        max_residual,
        cases,
    }
}

/// All elements of the 2D shift group of a W×L grid.
pub fn all_shifts(w: usize, l: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(w * l);
    for s in 0..w {
        for t in 0..l {
            v.push((s, t));
        }
    }
    v
}

/// Architectures whose invariant capacity the sweep command measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arch {
    /// Periodic conv + ReLU.
    Conv,
    /// Periodic conv + ReLU, then k×k max pooling.
    ConvMaxPool { k: usize },
    /// Periodic conv + ReLU, then k×k average pooling.
    ConvAvgPool { k: usize },
    /// Direct-sum layer with periods m1, m2.
    DirectSum {
        m1: usize,
        m2: usize,
        allow_non_coprime: bool,
    },
}

/// Capacity problem over a convolutional feature map: Gaussian inputs are
/// the anchors and the shift group generates the orbits.
///
/// Per anchor, the problem materializes not the |G| orbit points but their
/// exact reduction: the per-channel shift average for plain convolution,
/// the coset-shifted pooled averages for local pooling (one point per coset
/// of the pooled-equivariance subgroup), and the two block means per
/// channel for the direct-sum layer. Separability of these reduced points
/// is equivalent to separability of the full orbits; the raw-orbit
/// equivalence is exercised separately by the verification suites.
pub struct ConvCapacityProblem {
    layer: ConvLayer,
    arch: Arch,
    input_w: usize,
    input_l: usize,
    in_channels: usize,
}

impl ConvCapacityProblem {
    pub fn new(
        layer: ConvLayer,
        arch: Arch,
        input_w: usize,
        input_l: usize,
        in_channels: usize,
    ) -> Self {
        ConvCapacityProblem {
            layer,
            arch,
            input_w,
            input_l,
            in_channels,
        }
    }

    /// Same problem with the layer truncated to its first `n` channels.
    pub fn with_channels(&self, n: usize) -> ConvCapacityProblem {
        ConvCapacityProblem {
            layer: self.layer.truncated(n),
            arch: self.arch,
            input_w: self.input_w,
            input_l: self.input_l,
            in_channels: self.in_channels,
        }
    }

    pub fn arch(&self) -> Arch {
        self.arch
    }

    pub fn channels(&self) -> usize {
        self.layer.out_channels()
    }

    pub fn layer(&self) -> &ConvLayer {
        &self.layer
    }

    pub fn input_shape(&self) -> (usize, usize, usize) {
        (self.input_w, self.input_l, self.in_channels)
    }

    /// Reduced point group for one input.
    pub fn reduced_points(&self, x: &FeatureMap) -> Result<Vec<Array1<f64>>, GcnnError> {
        match self.arch {
            Arch::Conv => {
                let y = self.layer.forward(x)?;
                Ok(vec![y.global_mean()])
            }
            Arch::ConvMaxPool { k } => {
                let y = self.layer.forward(x)?;
                let mut points = Vec::with_capacity(k * k);
                for a in 0..k {
                    for b in 0..k {
                        let pooled = max_pool(&y.shift(a, b), k)?;
                        points.push(pooled.global_mean());
                    }
                }
                Ok(points)
            }
            Arch::ConvAvgPool { k } => {
                let y = self.layer.forward(x)?;
                let mut points = Vec::with_capacity(k * k);
                for a in 0..k {
                    for b in 0..k {
                        let pooled = avg_pool(&y.shift(a, b), k)?;
                        points.push(pooled.global_mean());
                    }
                }
                Ok(points)
            }
            Arch::DirectSum {
                m1,
                m2,
                allow_non_coprime,
            } => {
                let out = direct_sum_layer(x, &self.layer, m1, m2, allow_non_coprime)?;
                let n = out.ncols();
                let b1 = m1 * m1;
                let b2 = m2 * m2;
                let mut point = Array1::zeros(2 * n);
                for ch in 0..n {
                    let mean1: f64 = (0..b1).map(|r| out[[r, ch]]).sum::<f64>() / b1 as f64;
                    let mean2: f64 = (0..b2).map(|r| out[[b1 + r, ch]]).sum::<f64>() / b2 as f64;
                    point[2 * ch] = mean1;
                    point[2 * ch + 1] = mean2;
                }
                Ok(vec![point])
            }
        }
    }
}

impl DichotomyProblem for ConvCapacityProblem {
    fn n0(&self) -> usize {
        match self.arch {
            Arch::DirectSum { .. } => 2 * self.layer.out_channels(),
            _ => self.layer.out_channels(),
        }
    }

    fn sample_anchor_groups(&self, p: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Array1<f64>>> {
        (0..p)
            .map(|_| {
                let x = FeatureMap::random(self.input_w, self.input_l, self.in_channels, rng);
                self.reduced_points(&x)
                    .expect("shape-checked problem cannot fail on sampled inputs")
            })
            .collect()
    }
}

/// Estimate the separable fraction for an architecture at one channel count.
pub fn gcnn_empirical_fraction(
    problem: &ConvCapacityProblem,
    p: usize,
    trials: usize,
    seed: u64,
    probe: Probe,
) -> Result<CapacityEstimate, SepError> {
    crate::sep::empirical_fraction(problem, p, trials, seed, probe)
}

/// Theory curve value for the problem's channel count.
pub fn gcnn_theory_fraction(problem: &ConvCapacityProblem, p: usize) -> crate::ExactFraction {
    cover_fraction(p, problem.n0())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta_layer(kh: usize, kw: usize, at: (usize, usize)) -> ConvLayer {
        let mut filters = Array4::zeros((1, kh, kw, 1));
        filters[[0, at.0, at.1, 0]] = 1.0;
        ConvLayer::new(filters, Boundary::Periodic, Nonlinearity::Identity)
    }

    #[test]
    fn identity_filter_preserves_nonneg_input() {
        let mut filters = Array4::zeros((1, 1, 1, 1));
        filters[[0, 0, 0, 0]] = 1.0;
        let layer = ConvLayer::new(filters, Boundary::Periodic, Nonlinearity::Relu);
        let x = FeatureMap::new(Array3::from_shape_fn((3, 3, 1), |(i, j, _)| {
            (i * 3 + j) as f64
        }))
        .unwrap();
        let y = layer.forward(&x).unwrap();
        assert_eq!(y.data(), x.data());
    }

    #[test]
    fn delta_filter_shifts_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = FeatureMap::random(4, 4, 1, &mut rng);
        let (a, b) = (1usize, 2usize);
        let y = delta_layer(3, 3, (a, b)).forward(&x).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = x.data()[[(i + a) % 4, (j + b) % 4, 0]];
                assert_eq!(y.data()[[i, j, 0]], expected);
            }
        }
    }

    #[test]
    fn conv_relu_is_exactly_shift_equivariant() {
        let layer = ConvLayer::random(2, 3, 3, 2, Boundary::Periodic, Nonlinearity::Relu, 7);
        let report = verify_equivariance(
            &|x| layer.forward(x).unwrap(),
            (6, 5, 2),
            &all_shifts(6, 5),
            &|s, t| Some((s, t)),
            5,
            11,
        );
        assert!(report.passed(1e-10), "residual {}", report.max_residual);
    }

    #[test]
    fn zero_pad_conv_breaks_equivariance() {
        let layer = ConvLayer::random(1, 3, 3, 1, Boundary::ZeroPad(1), Nonlinearity::Relu, 7);
        let report = verify_equivariance(
            &|x| layer.forward(x).unwrap(),
            (6, 6, 1),
            &all_shifts(6, 6),
            &|s, t| Some((s, t)),
            3,
            11,
        );
        assert!(!report.passed(1e-10));
    }

    #[test]
    fn avg_pool_arithmetic() {
        let x =
            FeatureMap::new(Array3::from_shape_vec((2, 2, 1), vec![1.0, 2.0, 3.0, 4.0]).unwrap())
                .unwrap();
        let pooled = avg_pool(&x, 2).unwrap();
        assert_eq!(pooled.data()[[0, 0, 0]], 2.5);
        let maxed = max_pool(&x, 2).unwrap();
        assert_eq!(maxed.data()[[0, 0, 0]], 4.0);
    }

    #[test]
    fn avg_pool_of_constant_is_constant() {
        let x = FeatureMap::new(Array3::from_elem((4, 4, 2), 3.25)).unwrap();
        let pooled = avg_pool(&x, 2).unwrap();
        assert!(pooled.data().iter().all(|&v| v == 3.25));
        // k = W = L reduces to global pooling.
        let global = avg_pool(&x, 4).unwrap();
        assert_eq!(global.data().dim(), (1, 1, 2));
        assert_eq!(global.data()[[0, 0, 0]], 3.25);
    }

    #[test]
    fn pool_rejects_non_divisible_window() {
        let x = FeatureMap::new(Array3::zeros((4, 4, 1))).unwrap();
        assert!(matches!(
            avg_pool(&x, 3),
            Err(GcnnError::NonDivisibleWindow { .. })
        ));
        assert!(matches!(
            max_pool(&x, 3),
            Err(GcnnError::NonDivisibleWindow { .. })
        ));
    }

    #[test]
    fn max_pool_subgroup_equivariance_only() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let x = FeatureMap::random(4, 4, 1, &mut rng);
        // Shift by the window size: pooled output shifts by one.
        let lhs = max_pool(&x.shift(2, 0), 2).unwrap();
        let rhs = max_pool(&x, 2).unwrap().shift(1, 0);
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        // Shift by one (not a multiple of k) generally changes pooled values
        // beyond any output shift.
        let broken = max_pool(&x.shift(1, 0), 2).unwrap();
        let pooled = max_pool(&x, 2).unwrap();
        let matches_some_shift =
            (0..2).any(|s| (0..2).any(|t| broken.max_abs_diff(&pooled.shift(s, t)) < 1e-9));
        assert!(!matches_some_shift);
    }

    #[test]
    fn avg_pool_commutes_with_subgroup_shifts() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let x = FeatureMap::random(6, 6, 2, &mut rng);
        for (s, t) in [(2usize, 0usize), (0, 4), (2, 2), (4, 4)] {
            let lhs = avg_pool(&x.shift(s, t), 2).unwrap();
            let rhs = avg_pool(&x, 2).unwrap().shift(s / 2, t / 2);
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn global_pool_is_shift_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let x = FeatureMap::random(5, 7, 3, &mut rng);
        let shifted = x.shift(2, 3);
        let avg_diff = (global_pool(&x, GlobalPoolKind::Avg)
            - global_pool(&shifted, GlobalPoolKind::Avg))
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()));
        assert!(avg_diff < 1e-12);
        let max_diff = (global_pool(&x, GlobalPoolKind::Max)
            - global_pool(&shifted, GlobalPoolKind::Max))
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()));
        assert_eq!(max_diff, 0.0);
    }

    #[test]
    fn global_avg_matches_regular_representation_centroid() {
        // Global averaging per channel is the group-average projection of
        // the 2D shift action applied to the flattened map.
        use crate::group::FiniteGroup;
        use crate::rep::Representation;
        let (w, l) = (3usize, 4usize);
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let x = FeatureMap::random(w, l, 1, &mut rng);
        let grid = FiniteGroup::direct_product(
            &FiniteGroup::cyclic(w).unwrap(),
            &FiniteGroup::cyclic(l).unwrap(),
        );
        let rep = Representation::regular(&grid);
        let flat: Array1<f64> = Array1::from_iter(
            (0..w)
                .flat_map(|i| (0..l).map(move |j| (i, j)))
                .map(|(i, j)| x.data()[[i, j, 0]]),
        );
        let centroid = rep.group_average().dot(&flat);
        let mean = global_pool(&x, GlobalPoolKind::Avg)[0];
        for v in centroid.iter() {
            assert!((v - mean).abs() < 1e-12);
        }
    }

    #[test]
    fn direct_sum_layer_zero_input_zero_output() {
        let layer = ConvLayer::random(2, 3, 3, 1, Boundary::Periodic, Nonlinearity::Identity, 3);
        let x = FeatureMap::new(Array3::zeros((6, 6, 1))).unwrap();
        let out = direct_sum_layer(&x, &layer, 2, 3, false).unwrap();
        assert_eq!(out.dim(), (13, 2));
        assert!(out.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn direct_sum_layer_rejects_non_coprime_without_flag() {
        let layer = ConvLayer::random(1, 3, 3, 1, Boundary::Periodic, Nonlinearity::Identity, 3);
        let x = FeatureMap::new(Array3::zeros((8, 8, 1))).unwrap();
        assert!(matches!(
            direct_sum_layer(&x, &layer, 2, 4, false),
            Err(GcnnError::NotCoprime { .. })
        ));
        assert!(direct_sum_layer(&x, &layer, 2, 4, true).is_ok());
    }

    #[test]
    fn direct_sum_layer_blocks_shift_independently() {
        let (m1, m2) = (2usize, 3usize);
        let layer = ConvLayer::random(2, 3, 3, 1, Boundary::Periodic, Nonlinearity::Identity, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let x = FeatureMap::random(6, 6, 1, &mut rng);
        let base = direct_sum_layer(&x, &layer, m1, m2, false).unwrap();
        for (s, t) in [(1usize, 1usize), (2, 1), (5, 4), (3, 0)] {
            let shifted = direct_sum_layer(&x.shift(s, t), &layer, m1, m2, false).unwrap();
            for ch in 0..2 {
                for i in 0..m1 {
                    for j in 0..m1 {
                        let expected =
                            base[[((i + m1 - s % m1) % m1) * m1 + ((j + m1 - t % m1) % m1), ch]];
                        assert!(
                            (shifted[[i * m1 + j, ch]] - expected).abs() < 1e-10,
                            "m1 block mismatch at shift ({s},{t})"
                        );
                    }
                }
                for i in 0..m2 {
                    for j in 0..m2 {
                        let expected = base[[
                            m1 * m1 + ((i + m2 - s % m2) % m2) * m2 + ((j + m2 - t % m2) % m2),
                            ch,
                        ]];
                        assert!(
                            (shifted[[m1 * m1 + i * m2 + j, ch]] - expected).abs() < 1e-10,
                            "m2 block mismatch at shift ({s},{t})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn direct_sum_channel_rep_has_two_trivial_dims() {
        let rep = direct_sum_channel_representation(2, 3).unwrap();
        assert_eq!(rep.dim(), 13);
        assert_eq!(rep.group().order(), 36);
        assert_eq!(rep.fixed_subspace_dim().unwrap(), 2);
    }

    #[test]
    fn conv_problem_reduced_shapes() {
        let layer = ConvLayer::random(3, 3, 3, 2, Boundary::Periodic, Nonlinearity::Relu, 5);
        let problem = ConvCapacityProblem::new(layer, Arch::Conv, 4, 4, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let groups = problem.sample_anchor_groups(2, &mut rng);
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].len(), 1);
        assert_eq!(groups[0][0].len(), 3);
        assert_eq!(problem.n0(), 3);

        let truncated = problem.with_channels(2);
        assert_eq!(truncated.n0(), 2);
    }

    #[test]
    fn maxpool_problem_has_coset_points() {
        let layer = ConvLayer::random(2, 3, 3, 1, Boundary::Periodic, Nonlinearity::Relu, 5);
        let problem = ConvCapacityProblem::new(layer, Arch::ConvMaxPool { k: 2 }, 4, 4, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let groups = problem.sample_anchor_groups(2, &mut rng);
        assert_eq!(groups[0].len(), 4);
        assert_eq!(groups[0][0].len(), 2);
    }

    #[test]
    fn avgpool_coset_points_coincide() {
        // Averaging commutes all the way down: pooling a coset-shifted map
        // and then averaging globally sees the same numbers every time.
        let layer = ConvLayer::random(2, 3, 3, 1, Boundary::Periodic, Nonlinearity::Relu, 6);
        let problem = ConvCapacityProblem::new(layer, Arch::ConvAvgPool { k: 2 }, 4, 4, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let groups = problem.sample_anchor_groups(1, &mut rng);
        for point in &groups[0][1..] {
            let diff = (point - &groups[0][0])
                .iter()
                .fold(0.0_f64, |m, v| m.max(v.abs()));
            assert!(diff < 1e-12);
        }
    }

    #[test]
    fn dsum_problem_doubles_n0() {
        let layer = ConvLayer::random(2, 3, 3, 1, Boundary::Periodic, Nonlinearity::Identity, 6);
        let problem = ConvCapacityProblem::new(
            layer,
            Arch::DirectSum {
                m1: 2,
                m2: 3,
                allow_non_coprime: false,
            },
            6,
            6,
            1,
        );
        assert_eq!(problem.n0(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let groups = problem.sample_anchor_groups(2, &mut rng);
        assert_eq!(groups[0][0].len(), 4);
        // The two block means per channel differ: the nonlinearity acts
        // before the means are taken.
        let p = &groups[0][0];
        assert!((p[0] - p[1]).abs() > 1e-9);
    }

    #[test]
    fn subgroup_invariant_problem_after_max_pool_keeps_full_capacity() {
        // Demanding invariance only to the pooled subgroup H (shifts by
        // window multiples), the pooled code is a regular representation of
        // H per channel and the separable fraction returns to f(P, N). The
        // H-centroid of each pooled orbit is the pooled map's global mean.
        struct PooledSubgroupProblem {
            layer: ConvLayer,
            k: usize,
        }
        impl DichotomyProblem for PooledSubgroupProblem {
            fn n0(&self) -> usize {
                self.layer.out_channels()
            }
            fn sample_anchor_groups(
                &self,
                p: usize,
                rng: &mut ChaCha8Rng,
            ) -> Vec<Vec<Array1<f64>>> {
                (0..p)
                    .map(|_| {
                        let x = FeatureMap::random(8, 8, 2, rng);
                        let y = self.layer.forward(&x).unwrap();
                        vec![max_pool(&y, self.k).unwrap().global_mean()]
                    })
                    .collect()
            }
        }
        let layer = ConvLayer::random(8, 3, 3, 2, Boundary::Periodic, Nonlinearity::Relu, 17);
        let problem = PooledSubgroupProblem { layer, k: 2 };
        // P = 2 N0: the theoretical fraction is exactly 1/2.
        let est =
            crate::sep::empirical_fraction(&problem, 16, 200, 99, Probe::Feasibility).unwrap();
        assert_eq!(est.theory, crate::cover::cover_fraction(16, 8));
        assert!(
            est.wilson_ci_95.0 <= 0.5 && 0.5 <= est.wilson_ci_95.1,
            "fraction {} CI {:?} should bracket 1/2",
            est.fraction,
            est.wilson_ci_95
        );
    }

    #[test]
    fn shift_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let x = FeatureMap::random(5, 4, 2, &mut rng);
        let a = x.shift(2, 3).shift(4, 2);
        let b = x.shift((2 + 4) % 5, (3 + 2) % 4);
        assert!(a.max_abs_diff(&b) == 0.0);
    }

    #[test]
    fn feature_map_rejects_non_finite() {
        let mut data = Array3::zeros((2, 2, 1));
        data[[0, 0, 0]] = f64::NAN;
        assert!(matches!(FeatureMap::new(data), Err(GcnnError::NonFinite)));
    }
}
