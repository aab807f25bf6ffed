//! Linear representations of finite groups: one dense matrix per element.
//!
//! All constructors verify the homomorphism property, identity matrix, and
//! invertibility before handing out a [`Representation`]. The key derived
//! quantity is the fixed-subspace dimension `N0`: the number of trivial
//! irreps, computable both as the averaged character and as the rank of the
//! group-average matrix. The two routes must agree.

use crate::group::{FiniteGroup, GroupError};
use crate::linalg;
use ndarray::Array2;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

const HOMOMORPHISM_TOL: f64 = 1e-10;
const IDENTITY_TOL: f64 = 1e-10;
const DET_TOL: f64 = 1e-10;
const CHARACTER_INT_TOL: f64 = 1e-6;
const RANK_SV_TOL: f64 = 1e-8;
/// Above this many element pairs, the homomorphism check samples instead of
/// enumerating all |G|² products.
const EXHAUSTIVE_PAIR_LIMIT: usize = 20_000;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("group error: {0}")]
    Group(#[from] GroupError),
    #[error("matrix count {got} does not match group order {order}")]
    WrongMatrixCount { got: usize, order: usize },
    #[error("matrix for element {element} is {rows}x{cols}, expected {dim}x{dim}")]
    WrongMatrixShape {
        element: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("matrix for identity differs from I by {residual:e}")]
    IdentityNotI { residual: f64 },
    #[error("homomorphism fails on ({a},{b}): residual {residual:e}")]
    NotAHomomorphism { a: usize, b: usize, residual: f64 },
    #[error("matrix for element {element} is singular (|det| = {det:e})")]
    SingularMatrix { element: usize, det: f64 },
    #[error(
        "fixed-subspace dimension is inconsistent: character average {char_avg} vs rank {rank}"
    )]
    InconsistentFixedDim { char_avg: f64, rank: usize },
    #[error("element map is not a homomorphism: maps ({a},{b}) inconsistently")]
    BadElementMap { a: usize, b: usize },
    #[error("element map has wrong length or range")]
    ElementMapShape,
    #[error("representation is over group '{got}', expected '{expected}'")]
    GroupMismatch { got: String, expected: String },
    #[error("induced representation failed its construction check: {0}")]
    InductionBug(String),
    #[error("bad representation JSON: {0}")]
    BadJson(String),
}

/// A linear representation π: G → GL(R^N), stored densely.
#[derive(Debug, Clone)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    dim: usize,
    mats: Vec<Array2<f64>>,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    label: String,
    group_label: String,
    dim: usize,
    matrices: Vec<Vec<Vec<f64>>>,
}

impl Representation {
    /// Wrap explicit matrices, verifying the representation axioms.
    pub fn new_verified(
        group: Arc<FiniteGroup>,
        mats: Vec<Array2<f64>>,
        label: impl Into<String>,
    ) -> Result<Self, RepError> {
        if mats.len() != group.order() {
            return Err(RepError::WrongMatrixCount {
                got: mats.len(),
                order: group.order(),
            });
        }
        let dim = mats[0].nrows();
        for (element, m) in mats.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(RepError::WrongMatrixShape {
                    element,
                    rows: m.nrows(),
                    cols: m.ncols(),
                    dim,
                });
            }
        }
        let rep = Representation {
            group,
            dim,
            mats,
            label: label.into(),
        };
        rep.verify()?;
        Ok(rep)
    }

    /// Axiom check: identity, homomorphism, invertibility.
    pub fn verify(&self) -> Result<(), RepError> {
        let e = self.group.identity();
        let id = Array2::<f64>::eye(self.dim);
        let residual = linalg::inf_norm(&(&self.mats[e] - &id));
        if residual > IDENTITY_TOL {
            return Err(RepError::IdentityNotI { residual });
        }
        let n = self.group.order();
        let check_pair = |a: usize, b: usize| -> Result<(), RepError> {
            let ab = self.group.mul(a, b);
            let prod = self.mats[a].dot(&self.mats[b]);
            let residual = linalg::inf_norm(&(&prod - &self.mats[ab]));
            if residual > HOMOMORPHISM_TOL {
                return Err(RepError::NotAHomomorphism { a, b, residual });
            }
            Ok(())
        };
        if n * n <= EXHAUSTIVE_PAIR_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    check_pair(a, b)?;
                }
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x9e77_0bed);
            for _ in 0..EXHAUSTIVE_PAIR_LIMIT {
                check_pair(rng.random_range(0..n), rng.random_range(0..n))?;
            }
        }
        for (element, m) in self.mats.iter().enumerate() {
            let det = linalg::determinant(m);
            if det.abs() <= DET_TOL {
                return Err(RepError::SingularMatrix { element, det });
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self, g: usize) -> &Array2<f64> {
        &self.mats[g]
    }

    /// Regular representation: permutation matrices of left multiplication,
    /// sending basis vector e_h to e_{g·h}. For cyclic groups these are the
    /// cyclic-shift matrices.
    pub fn regular(group: &Arc<FiniteGroup>) -> Representation {
        let n = group.order();
        let mats = group
            .elements()
            .map(|g| {
                let mut m = Array2::zeros((n, n));
                for h in 0..n {
                    m[[group.mul(g, h), h]] = 1.0;
                }
                m
            })
            .collect();
        Representation {
            group: Arc::clone(group),
            dim: n,
            mats,
            label: format!("regular({})", group.label()),
        }
    }

    /// 2x2 rotation representation of Z_m: g ↦ R(2πg/m).
    pub fn rotation(m: usize) -> Result<Representation, RepError> {
        let group = FiniteGroup::cyclic(m)?;
        let mats = (0..m)
            .map(|g| {
                let theta = 2.0 * std::f64::consts::PI * g as f64 / m as f64;
                let (s, c) = theta.sin_cos();
                ndarray::array![[c, -s], [s, c]]
            })
            .collect();
        Ok(Representation {
            group,
            dim: 2,
            mats,
            label: format!("rotation(Z_{m})"),
        })
    }

    /// The trivial-on-everything representation of dimension `dim`.
    pub fn trivial(group: &Arc<FiniteGroup>, dim: usize) -> Representation {
        let mats = group.elements().map(|_| Array2::eye(dim)).collect();
        Representation {
            group: Arc::clone(group),
            dim,
            mats,
            label: format!("trivial^{dim}({})", group.label()),
        }
    }

    /// Block-diagonal sum of representations pulled back along element maps.
    ///
    /// Each part comes with a map G → G_i given as the image of every
    /// element of `group`; maps are verified to be homomorphisms.
    pub fn direct_sum(
        group: &Arc<FiniteGroup>,
        parts: &[(&Representation, &[usize])],
    ) -> Result<Representation, RepError> {
        assert!(!parts.is_empty(), "direct sum of zero representations");
        for (rep, map) in parts {
            if map.len() != group.order() {
                return Err(RepError::ElementMapShape);
            }
            if map.iter().any(|&img| img >= rep.group.order()) {
                return Err(RepError::ElementMapShape);
            }
            if map[group.identity()] != rep.group.identity() {
                return Err(RepError::BadElementMap {
                    a: group.identity(),
                    b: group.identity(),
                });
            }
            for a in group.elements() {
                for b in group.elements() {
                    if map[group.mul(a, b)] != rep.group.mul(map[a], map[b]) {
                        return Err(RepError::BadElementMap { a, b });
                    }
                }
            }
        }
        let dim: usize = parts.iter().map(|(r, _)| r.dim).sum();
        let mats = group
            .elements()
            .map(|g| {
                let mut m = Array2::zeros((dim, dim));
                let mut off = 0;
                for (rep, map) in parts {
                    let block = &rep.mats[map[g]];
                    for i in 0..rep.dim {
                        for j in 0..rep.dim {
                            m[[off + i, off + j]] = block[[i, j]];
                        }
                    }
                    off += rep.dim;
                }
                m
            })
            .collect();
        let label = parts
            .iter()
            .map(|(r, _)| r.label.clone())
            .collect::<Vec<_>>()
            .join(" (+) ");
        Ok(Representation {
            group: Arc::clone(group),
            dim,
            mats,
            label,
        })
    }

    /// `regular(Z_m1) ⊕ regular(Z_m2)` over Z_{m1·m2} via the mod maps.
    pub fn dsum_regular(m1: usize, m2: usize) -> Result<Representation, RepError> {
        let group = FiniteGroup::cyclic(m1 * m2)?;
        let r1 = Representation::regular(&FiniteGroup::cyclic(m1)?);
        let r2 = Representation::regular(&FiniteGroup::cyclic(m2)?);
        let map1: Vec<usize> = group.elements().map(|g| g % m1).collect();
        let map2: Vec<usize> = group.elements().map(|g| g % m2).collect();
        let mut rep = Representation::direct_sum(&group, &[(&r1, &map1), (&r2, &map2)])?;
        rep.label = format!("regular(Z_{m1}) (+) regular(Z_{m2}) over Z_{}", m1 * m2);
        Ok(rep)
    }

    /// `count` copies of `rep` summed along the identity map.
    pub fn sum_copies(rep: &Representation, count: usize) -> Result<Representation, RepError> {
        assert!(count >= 1, "need at least one copy");
        let idmap: Vec<usize> = rep.group.elements().collect();
        let parts: Vec<(&Representation, &[usize])> =
            (0..count).map(|_| (rep, idmap.as_slice())).collect();
        let mut sum = Representation::direct_sum(&rep.group.clone(), &parts)?;
        sum.label = format!("{}^(+{count})", rep.label);
        Ok(sum)
    }

    /// Append `extra` trivial dimensions: π(g) ⊕ I.
    pub fn augment_trivial(&self, extra: usize) -> Representation {
        if extra == 0 {
            return self.clone();
        }
        let dim = self.dim + extra;
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let mut out = Array2::eye(dim);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        out[[i, j]] = m[[i, j]];
                    }
                }
                out
            })
            .collect();
        Representation {
            group: Arc::clone(&self.group),
            dim,
            mats,
            label: format!("{} (+) I_{extra}", self.label),
        }
    }

    /// Group-average matrix ⟨π⟩ = (1/|G|) Σ_g π(g), the projector onto the
    /// fixed-point subspace.
    pub fn group_average(&self) -> Array2<f64> {
        let mut avg = Array2::zeros((self.dim, self.dim));
        for m in &self.mats {
            avg += m;
        }
        avg / self.group.order() as f64
    }

    /// Traces of all element matrices.
    pub fn character(&self) -> Vec<f64> {
        self.mats.iter().map(|m| m.diag().sum()).collect()
    }

    /// Fixed-subspace dimension N0, computed two independent ways: the
    /// averaged character rounded to the nearest integer, and the numerical
    /// rank of ⟨π⟩. Errors when the two disagree or the character average
    /// is not close to an integer.
    pub fn fixed_subspace_dim(&self) -> Result<usize, RepError> {
        let char_avg = self.character().iter().sum::<f64>() / self.group.order() as f64;
        let rounded = char_avg.round();
        if (char_avg - rounded).abs() > CHARACTER_INT_TOL || rounded < 0.0 {
            return Err(RepError::InconsistentFixedDim {
                char_avg,
                rank: usize::MAX,
            });
        }
        let avg = self.group_average();
        let rank = linalg::numerical_rank(&avg, RANK_SV_TOL);
        if rank != rounded as usize {
            return Err(RepError::InconsistentFixedDim { char_avg, rank });
        }
        Ok(rank)
    }

    /// Restrict to a subgroup: same matrices, element set reindexed.
    /// N0 can only grow under restriction.
    pub fn restrict_to_subgroup(&self, subgroup: &[usize]) -> Result<Representation, RepError> {
        let h_group = self.group.subgroup_as_group(subgroup)?;
        let mut sub: Vec<usize> = subgroup.to_vec();
        sub.sort_unstable();
        sub.dedup();
        let mats = sub.iter().map(|&g| self.mats[g].clone()).collect();
        Ok(Representation {
            group: h_group,
            dim: self.dim,
            mats,
            label: format!("{} | H(|H|={})", self.label, sub.len()),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let matrices = self
            .mats
            .iter()
            .map(|m| {
                (0..self.dim)
                    .map(|i| (0..self.dim).map(|j| m[[i, j]]).collect())
                    .collect()
            })
            .collect();
        serde_json::to_value(RepJson {
            label: self.label.clone(),
            group_label: self.group.label().to_string(),
            dim: self.dim,
            matrices,
        })
        .expect("representation serialization cannot fail")
    }

    /// Load from JSON against an already-constructed group; verifies the
    /// representation axioms and the group label.
    pub fn from_json(
        group: Arc<FiniteGroup>,
        value: &serde_json::Value,
    ) -> Result<Representation, RepError> {
        let parsed: RepJson =
            serde_json::from_value(value.clone()).map_err(|e| RepError::BadJson(e.to_string()))?;
        if parsed.group_label != group.label() {
            return Err(RepError::GroupMismatch {
                got: parsed.group_label,
                expected: group.label().to_string(),
            });
        }
        let mats: Vec<Array2<f64>> = parsed
            .matrices
            .iter()
            .map(|rows| {
                let flat: Vec<f64> = rows.iter().flatten().copied().collect();
                Array2::from_shape_vec((parsed.dim, parsed.dim), flat)
                    .map_err(|e| RepError::BadJson(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Representation::new_verified(group, mats, parsed.label)
    }

    /// Test-only escape hatch for building intentionally broken inputs.
    #[cfg(test)]
    pub(crate) fn from_parts_unchecked(
        group: Arc<FiniteGroup>,
        mats: Vec<Array2<f64>>,
        label: &str,
    ) -> Representation {
        let dim = mats[0].nrows();
        Representation {
            group,
            dim,
            mats,
            label: label.to_string(),
        }
    }
}

/// Representation of G induced from a representation ρ of a subgroup H,
/// realized as block-permutation matrices over the cosets.
///
/// Basis: (coset representative r_j, ρ-basis vector). π(g) sends block j to
/// block j′ and applies ρ(h), where g·r_j = r_{j′}·h is the unique coset
/// factorization. The dimension is |G/H|·dim(ρ) and N0 equals N0(ρ).
pub fn induced_representation(
    group: &Arc<FiniteGroup>,
    subgroup: &[usize],
    rho: &Representation,
) -> Result<Representation, RepError> {
    let cosets = group.coset_decompose(subgroup)?;
    let h_group = group.subgroup_as_group(subgroup)?;
    // rho must be a representation of H under the canonical reindexing.
    if rho.group().order() != h_group.order() {
        return Err(RepError::GroupMismatch {
            got: rho.group().label().to_string(),
            expected: h_group.label().to_string(),
        });
    }
    for a in 0..h_group.order() {
        for b in 0..h_group.order() {
            if rho.group().mul(a, b) != h_group.mul(a, b) {
                return Err(RepError::GroupMismatch {
                    got: rho.group().label().to_string(),
                    expected: h_group.label().to_string(),
                });
            }
        }
    }
    let k = cosets.num_cosets();
    let d = rho.dim();
    let dim = k * d;
    let mats: Vec<Array2<f64>> = group
        .elements()
        .map(|g| {
            let mut m = Array2::zeros((dim, dim));
            for (j, &r) in cosets.representatives.iter().enumerate() {
                let (j2, h_idx) = cosets.factor_indices(group.mul(g, r));
                let block = rho.matrix(h_idx);
                for a in 0..d {
                    for b in 0..d {
                        m[[j2 * d + a, j * d + b]] = block[[a, b]];
                    }
                }
            }
            m
        })
        .collect();
    let rep = Representation {
        group: Arc::clone(group),
        dim,
        mats,
        label: format!("induced({} from H(|H|={}))", rho.label(), subgroup.len()),
    };
    rep.verify()
        .map_err(|e| RepError::InductionBug(e.to_string()))?;
    Ok(rep)
}

/// One block in the real irrep decomposition of a cyclic regular
/// representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IrrepBlock {
    /// 1-dimensional, every element acts as +1.
    Trivial,
    /// 1-dimensional, element g acts as (-1)^g (only for even m).
    Sign,
    /// 2-dimensional rotation block of the given frequency.
    Rotation(usize),
}

impl IrrepBlock {
    pub fn size(&self) -> usize {
        match self {
            IrrepBlock::Trivial | IrrepBlock::Sign => 1,
            IrrepBlock::Rotation(_) => 2,
        }
    }
}

/// Orthogonal change of basis that block-diagonalizes the regular
/// representation of Z_m into real irreps.
#[derive(Debug, Clone)]
pub struct IrrepDecomposition {
    /// Orthogonal m×m matrix; columns are the real Fourier basis.
    pub basis: Array2<f64>,
    /// Blocks in order along the diagonal of Vᵀ π(g) V.
    pub blocks: Vec<IrrepBlock>,
    /// Number of trivial blocks.
    pub trivial_count: usize,
}

impl IrrepDecomposition {
    /// Expected block-diagonal matrix for element `g`.
    pub fn block_matrix(&self, m: usize, g: usize) -> Array2<f64> {
        let dim: usize = self.blocks.iter().map(|b| b.size()).sum();
        let mut out = Array2::zeros((dim, dim));
        let mut off = 0;
        for block in &self.blocks {
            match block {
                IrrepBlock::Trivial => {
                    out[[off, off]] = 1.0;
                    off += 1;
                }
                IrrepBlock::Sign => {
                    out[[off, off]] = if g.is_multiple_of(2) { 1.0 } else { -1.0 };
                    off += 1;
                }
                IrrepBlock::Rotation(freq) => {
                    let theta = 2.0 * std::f64::consts::PI * (g * freq) as f64 / m as f64;
                    let (s, c) = theta.sin_cos();
                    out[[off, off]] = c;
                    out[[off, off + 1]] = -s;
                    out[[off + 1, off]] = s;
                    out[[off + 1, off + 1]] = c;
                    off += 2;
                }
            }
        }
        out
    }
}

/// Real discrete-Fourier decomposition of the regular representation of Z_m:
/// one trivial block, a rotation block per frequency 1..⌊(m-1)/2⌋, and a
/// sign block when m is even.
pub fn irrep_decompose_cyclic(m: usize) -> IrrepDecomposition {
    assert!(m >= 1, "cyclic group order must be at least 1");
    let mf = m as f64;
    let mut basis = Array2::zeros((m, m));
    let mut blocks = vec![IrrepBlock::Trivial];
    for j in 0..m {
        basis[[j, 0]] = 1.0 / mf.sqrt();
    }
    let mut col = 1;
    for freq in 1..=(m.saturating_sub(1)) / 2 {
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * (freq * j) as f64 / mf;
            basis[[j, col]] = (2.0 / mf).sqrt() * theta.cos();
            basis[[j, col + 1]] = (2.0 / mf).sqrt() * theta.sin();
        }
        blocks.push(IrrepBlock::Rotation(freq));
        col += 2;
    }
    if m.is_multiple_of(2) && m >= 2 {
        for j in 0..m {
            basis[[j, col]] = if j.is_multiple_of(2) { 1.0 } else { -1.0 } / mf.sqrt();
        }
        blocks.push(IrrepBlock::Sign);
    }
    IrrepDecomposition {
        basis,
        blocks,
        trivial_count: 1,
    }
}

/// Capacity counting rule for codes assembled from irreps of the 3D rotation
/// group: the fixed dimension is the number of order-0 blocks.
pub fn so3_trivial_count(irrep_orders: &[usize]) -> usize {
    irrep_orders.iter().filter(|&&k| k == 0).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn max_abs_diff(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
        (a - b).iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    #[test]
    fn regular_z3_shifts_forward() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let rep = Representation::regular(&z3);
        let v = array![1.0, 2.0, 3.0];
        let shifted = rep.matrix(2).dot(&v);
        assert_eq!(shifted, array![2.0, 3.0, 1.0]);
        assert_eq!(rep.matrix(0), &Array2::<f64>::eye(3));
        rep.verify().unwrap();
    }

    #[test]
    fn regular_of_klein_group_is_order_two() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let klein = FiniteGroup::direct_product(&z2, &z2);
        let rep = Representation::regular(&klein);
        for g in klein.elements() {
            let sq = rep.matrix(g).dot(rep.matrix(g));
            assert!(max_abs_diff(&sq, &Array2::eye(4)) < 1e-12);
        }
    }

    #[test]
    fn rotation_quarter_turn() {
        let rep = Representation::rotation(4).unwrap();
        let expected = array![[0.0, -1.0], [1.0, 0.0]];
        assert!(max_abs_diff(rep.matrix(1), &expected) < 1e-12);
        assert!(max_abs_diff(rep.matrix(0), &Array2::eye(2)) < 1e-12);
        let avg = rep.group_average();
        assert!(linalg_inf(&avg) < 1e-12);
        rep.verify().unwrap();
    }

    fn linalg_inf(a: &Array2<f64>) -> f64 {
        a.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    #[test]
    fn group_average_of_regular_is_uniform() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let rep = Representation::regular(&z3);
        let avg = rep.group_average();
        let expected = Array2::from_elem((3, 3), 1.0 / 3.0);
        assert!(max_abs_diff(&avg, &expected) < 1e-12);
        // Trivial representation: averaging identities gives the identity.
        let trivial = Representation::trivial(&z3, 4);
        assert!(max_abs_diff(&trivial.group_average(), &Array2::eye(4)) < 1e-15);
    }

    #[test]
    fn group_average_is_idempotent_projection() {
        for rep in [
            Representation::regular(&FiniteGroup::cyclic(5).unwrap()),
            Representation::rotation(6).unwrap(),
            Representation::dsum_regular(2, 3).unwrap(),
        ] {
            let avg = rep.group_average();
            let sq = avg.dot(&avg);
            assert!(max_abs_diff(&sq, &avg) < 1e-8, "{}", rep.label());
            for g in rep.group().elements() {
                let left = rep.matrix(g).dot(&avg);
                let right = avg.dot(rep.matrix(g));
                assert!(max_abs_diff(&left, &avg) < 1e-8);
                assert!(max_abs_diff(&right, &avg) < 1e-8);
            }
        }
    }

    #[test]
    fn fixed_dims_match_theory() {
        for m in [2usize, 3, 5, 8] {
            let rep = Representation::regular(&FiniteGroup::cyclic(m).unwrap());
            assert_eq!(rep.fixed_subspace_dim().unwrap(), 1);
        }
        for m in [3usize, 4, 7] {
            let rep = Representation::rotation(m).unwrap();
            assert_eq!(rep.fixed_subspace_dim().unwrap(), 0);
        }
        let dsum = Representation::dsum_regular(2, 3).unwrap();
        assert_eq!(dsum.dim(), 5);
        assert_eq!(dsum.fixed_subspace_dim().unwrap(), 2);
    }

    #[test]
    fn fixed_dim_flags_non_representation() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        // Not a homomorphism; character average 0.75 is far from an integer.
        let mats = vec![Array2::eye(2), Array2::eye(2) * 0.5];
        let fake = Representation::from_parts_unchecked(z2, mats, "broken");
        assert!(fake.fixed_subspace_dim().is_err());
    }

    #[test]
    fn augment_matches_figure_1b() {
        let rep = Representation::rotation(4).unwrap().augment_trivial(1);
        assert_eq!(rep.dim(), 3);
        assert_eq!(rep.fixed_subspace_dim().unwrap(), 1);
        // Fixed vector is e_3.
        let avg = rep.group_average();
        let fixed = avg.dot(&array![0.0, 0.0, 1.0]);
        assert!((fixed[2] - 1.0).abs() < 1e-12);
        assert!(fixed[0].abs() < 1e-12 && fixed[1].abs() < 1e-12);
        // Augment by zero is identity.
        let same = rep.augment_trivial(0);
        assert_eq!(same.dim(), rep.dim());
        // rotation(m) + (N-2) trivials has N0 = N-2.
        let n = 7;
        let aug = Representation::rotation(5).unwrap().augment_trivial(n - 2);
        assert_eq!(aug.fixed_subspace_dim().unwrap(), n - 2);
    }

    #[test]
    fn direct_sum_fixed_dim_is_additive() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let reg6 = Representation::regular(&z6);
        let idmap: Vec<usize> = z6.elements().collect();
        let sum = Representation::direct_sum(
            &z6,
            &[(&reg6, idmap.as_slice()), (&reg6, idmap.as_slice())],
        )
        .unwrap();
        assert_eq!(
            sum.fixed_subspace_dim().unwrap(),
            2 * reg6.fixed_subspace_dim().unwrap()
        );
        // Single-summand sum is the rep itself.
        let single = Representation::direct_sum(&z6, &[(&reg6, idmap.as_slice())]).unwrap();
        for g in z6.elements() {
            assert!(max_abs_diff(single.matrix(g), reg6.matrix(g)) < 1e-12);
        }
    }

    #[test]
    fn direct_sum_rejects_non_homomorphism_map() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let reg4 = Representation::regular(&z4);
        // g mod 4 is not a homomorphism Z_6 -> Z_4.
        let bad: Vec<usize> = z6.elements().map(|g| g % 4).collect();
        assert!(matches!(
            Representation::direct_sum(&z6, &[(&reg4, bad.as_slice())]),
            Err(RepError::BadElementMap { .. })
        ));
    }

    #[test]
    fn sum_copies_scales_n0() {
        let z5 = FiniteGroup::cyclic(5).unwrap();
        let reg = Representation::regular(&z5);
        let sum = Representation::sum_copies(&reg, 4).unwrap();
        assert_eq!(sum.dim(), 20);
        assert_eq!(sum.fixed_subspace_dim().unwrap(), 4);
    }

    #[test]
    fn restriction_grows_fixed_subspace() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let reg = Representation::regular(&z4);
        let restricted = reg.restrict_to_subgroup(&[0, 2]).unwrap();
        assert_eq!(restricted.fixed_subspace_dim().unwrap(), 2);
        // Restrict to the full group: unchanged.
        let full = reg.restrict_to_subgroup(&[0, 1, 2, 3]).unwrap();
        assert_eq!(full.fixed_subspace_dim().unwrap(), 1);
        // Restrict to the identity: everything is fixed.
        let id = reg.restrict_to_subgroup(&[0]).unwrap();
        assert_eq!(id.fixed_subspace_dim().unwrap(), 4);
    }

    #[test]
    fn induced_from_trivial_of_z2_in_z6() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let h = z6.subgroup_as_group(&[0, 3]).unwrap();
        let rho = Representation::trivial(&h, 1);
        let ind = induced_representation(&z6, &[0, 3], &rho).unwrap();
        assert_eq!(ind.dim(), 3);
        assert_eq!(ind.fixed_subspace_dim().unwrap(), 1);
    }

    #[test]
    fn induced_from_full_group_is_rho() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let rho = Representation::regular(&z4);
        let ind = induced_representation(&z4, &[0, 1, 2, 3], &rho).unwrap();
        assert_eq!(ind.dim(), rho.dim());
        let chi_ind = ind.character();
        let chi_rho = rho.character();
        for g in z4.elements() {
            assert!((chi_ind[g] - chi_rho[g]).abs() < 1e-10);
        }
    }

    #[test]
    fn induced_regular_of_subgroup_is_regular_of_group() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let h = z6.subgroup_as_group(&[0, 2, 4]).unwrap();
        let rho = Representation::regular(&h);
        let ind = induced_representation(&z6, &[0, 2, 4], &rho).unwrap();
        let reg = Representation::regular(&z6);
        assert_eq!(ind.dim(), 6);
        // Same character as the regular representation of Z_6.
        for g in z6.elements() {
            assert!((ind.character()[g] - reg.character()[g]).abs() < 1e-10);
        }
        assert_eq!(ind.fixed_subspace_dim().unwrap(), 1);
    }

    #[test]
    fn irrep_decomposition_structure() {
        let d3 = irrep_decompose_cyclic(3);
        assert_eq!(
            d3.blocks,
            vec![IrrepBlock::Trivial, IrrepBlock::Rotation(1)]
        );
        assert_eq!(d3.trivial_count, 1);
        let d4 = irrep_decompose_cyclic(4);
        assert_eq!(
            d4.blocks,
            vec![
                IrrepBlock::Trivial,
                IrrepBlock::Rotation(1),
                IrrepBlock::Sign
            ]
        );
        let d1 = irrep_decompose_cyclic(1);
        assert_eq!(d1.blocks, vec![IrrepBlock::Trivial]);
    }

    #[test]
    fn irrep_basis_block_diagonalizes() {
        for m in [2usize, 3, 4, 5, 8, 9, 12] {
            let dec = irrep_decompose_cyclic(m);
            // Orthogonality.
            let vtv = dec.basis.t().dot(&dec.basis);
            assert!(max_abs_diff(&vtv, &Array2::eye(m)) < 1e-10, "m={m}");
            let rep = Representation::regular(&FiniteGroup::cyclic(m).unwrap());
            for g in 0..m {
                let transformed = dec.basis.t().dot(rep.matrix(g)).dot(&dec.basis);
                let expected = dec.block_matrix(m, g);
                assert!(max_abs_diff(&transformed, &expected) < 1e-8, "m={m} g={g}");
            }
        }
    }

    #[test]
    fn nontrivial_irreps_average_to_zero() {
        for m in [3usize, 4, 6, 9] {
            let dec = irrep_decompose_cyclic(m);
            let mut avg = Array2::<f64>::zeros((m, m));
            for g in 0..m {
                avg += &dec.block_matrix(m, g);
            }
            avg /= m as f64;
            // Only the leading (trivial) entry survives.
            for i in 0..m {
                for j in 0..m {
                    let expected = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                    assert!((avg[[i, j]] - expected).abs() < 1e-10, "m={m} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn so3_counting_rule() {
        assert_eq!(so3_trivial_count(&[0, 1, 2]), 1);
        assert_eq!(so3_trivial_count(&[]), 0);
        assert_eq!(so3_trivial_count(&[0, 0, 3, 0]), 3);
    }

    #[test]
    fn rep_json_round_trip() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let rep = Representation::regular(&z4);
        let j = rep.to_json();
        let back = Representation::from_json(Arc::clone(&z4), &j).unwrap();
        assert_eq!(back.dim(), 4);
        for g in z4.elements() {
            assert!(max_abs_diff(back.matrix(g), rep.matrix(g)) < 1e-15);
        }
    }
}
