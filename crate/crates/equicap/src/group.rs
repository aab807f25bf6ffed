//! Finite groups as explicit multiplication tables.
//!
//! Elements are dense indices `0..|G|`. Everything downstream (averaging,
//! cosets, induction) only needs table lookups, so groups up to a few
//! thousand elements stay cheap and exact.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

/// Beyond this order, associativity is spot-checked on random triples
/// instead of all |G|³ of them.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;
const SAMPLED_ASSOC_TRIPLES: usize = 10_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group order must be at least 1")]
    InvalidOrder,
    #[error("multiplication table must be {order}x{order}, got row {row} of length {len}")]
    BadTableShape {
        order: usize,
        row: usize,
        len: usize,
    },
    #[error("{0}")]
    AxiomViolation(AxiomViolation),
    #[error("elements do not form a subgroup: {reason}")]
    NotASubgroup { reason: String },
}

/// A single broken axiom together with the witnessing elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AxiomViolation {
    Closure { a: usize, b: usize, product: usize },
    Identity { g: usize },
    Inverse { g: usize },
    Associativity { a: usize, b: usize, c: usize },
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::Closure { a, b, product } => {
                write!(f, "closure fails: mul({a},{b}) = {product} is out of range")
            }
            AxiomViolation::Identity { g } => write!(f, "identity fails at element {g}"),
            AxiomViolation::Inverse { g } => write!(f, "no inverse for element {g}"),
            AxiomViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails on ({a},{b},{c})")
            }
        }
    }
}

/// Result of [`FiniteGroup::verify_axioms`]; empty means all axioms hold.
#[derive(Debug, Clone, Default, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    /// Row-major: `mul[a * order + b]` is the element index of `a·b`.
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Serialized form: `{label, order, mul_table (row-major), identity}`.
#[derive(Serialize, Deserialize)]
struct GroupJson {
    label: String,
    order: usize,
    mul_table: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Cyclic group `Z_m` under addition mod `m`.
    pub fn cyclic(m: usize) -> Result<Arc<Self>, GroupError> {
        if m == 0 {
            return Err(GroupError::InvalidOrder);
        }
        let mut mul = vec![0usize; m * m];
        for a in 0..m {
            for b in 0..m {
                mul[a * m + b] = (a + b) % m;
            }
        }
        let inverse = (0..m).map(|a| (m - a) % m).collect();
        Ok(Arc::new(FiniteGroup {
            label: format!("Z_{m}"),
            order: m,
            mul,
            identity: 0,
            inverse,
        }))
    }

    /// Direct product; element `(a, b)` gets index `a·|G2| + b`.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Arc<Self> {
        let n1 = g1.order;
        let n2 = g2.order;
        let order = n1 * n2;
        let mut mul = vec![0usize; order * order];
        for a1 in 0..n1 {
            for b1 in 0..n2 {
                for a2 in 0..n1 {
                    for b2 in 0..n2 {
                        let x = a1 * n2 + b1;
                        let y = a2 * n2 + b2;
                        mul[x * order + y] = g1.mul(a1, a2) * n2 + g2.mul(b1, b2);
                    }
                }
            }
        }
        let identity = g1.identity * n2 + g2.identity;
        let inverse = (0..order)
            .map(|x| g1.inv(x / n2) * n2 + g2.inv(x % n2))
            .collect();
        Arc::new(FiniteGroup {
            label: format!("{} x {}", g1.label, g2.label),
            order,
            mul,
            identity,
            inverse,
        })
    }

    /// Build from an explicit table, locating the identity and inverses and
    /// verifying all axioms.
    pub fn from_mul_table(
        label: impl Into<String>,
        order: usize,
        mul: Vec<usize>,
    ) -> Result<Arc<Self>, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidOrder);
        }
        if mul.len() != order * order {
            return Err(GroupError::BadTableShape {
                order,
                row: mul.len() / order.max(1),
                len: mul.len() % order.max(1),
            });
        }
        for (pos, &p) in mul.iter().enumerate() {
            if p >= order {
                return Err(GroupError::AxiomViolation(AxiomViolation::Closure {
                    a: pos / order,
                    b: pos % order,
                    product: p,
                }));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul[e * order + g] == g && mul[g * order + e] == g))
            .ok_or(GroupError::AxiomViolation(AxiomViolation::Identity {
                g: 0,
            }))?;
        let mut inverse = vec![usize::MAX; order];
        for g in 0..order {
            match (0..order)
                .find(|&h| mul[g * order + h] == identity && mul[h * order + g] == identity)
            {
                Some(h) => inverse[g] = h,
                None => return Err(GroupError::AxiomViolation(AxiomViolation::Inverse { g })),
            }
        }
        let group = FiniteGroup {
            label: label.into(),
            order,
            mul,
            identity,
            inverse,
        };
        let report = group.verify_axioms();
        if let Some(v) = report.violations.into_iter().next() {
            return Err(GroupError::AxiomViolation(v));
        }
        Ok(Arc::new(group))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// Smallest k ≥ 1 with g^k = e.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Re-check every axiom, returning witnesses for any violation.
    /// Associativity is exhaustive up to order 64 and sampled above.
    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.order;
        let mut violations = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.mul(a, b) >= n {
                    violations.push(AxiomViolation::Closure {
                        a,
                        b,
                        product: self.mul(a, b),
                    });
                }
            }
        }
        for g in 0..n {
            if self.mul(self.identity, g) != g || self.mul(g, self.identity) != g {
                violations.push(AxiomViolation::Identity { g });
            }
        }
        for g in 0..n {
            let h = self.inverse[g];
            if h >= n || self.mul(g, h) != self.identity || self.mul(h, g) != self.identity {
                violations.push(AxiomViolation::Inverse { g });
            }
        }
        let check_assoc = |a: usize, b: usize, c: usize, out: &mut Vec<AxiomViolation>| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                out.push(AxiomViolation::Associativity { a, b, c });
            }
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check_assoc(a, b, c, &mut violations);
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a550);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                let c = rng.random_range(0..n);
                check_assoc(a, b, c, &mut violations);
            }
        }
        AxiomReport { violations }
    }

    /// Check that `elems` is closed under multiplication and inverses.
    pub fn check_subgroup(&self, elems: &[usize]) -> Result<(), GroupError> {
        if elems.is_empty() {
            return Err(GroupError::NotASubgroup {
                reason: "empty element set".into(),
            });
        }
        let member = {
            let mut m = vec![false; self.order];
            for &e in elems {
                if e >= self.order {
                    return Err(GroupError::NotASubgroup {
                        reason: format!("element {e} out of range"),
                    });
                }
                m[e] = true;
            }
            m
        };
        if !member[self.identity] {
            return Err(GroupError::NotASubgroup {
                reason: format!("identity {} missing", self.identity),
            });
        }
        // Closure first so the reported witness is a violating pair.
        for &a in elems {
            for &b in elems {
                let p = self.mul(a, b);
                if !member[p] {
                    return Err(GroupError::NotASubgroup {
                        reason: format!("mul({a},{b}) = {p} escapes the set"),
                    });
                }
            }
        }
        for &a in elems {
            if !member[self.inv(a)] {
                return Err(GroupError::NotASubgroup {
                    reason: format!("inverse of {a} (= {}) missing", self.inv(a)),
                });
            }
        }
        Ok(())
    }

    /// Left-coset decomposition `g = r·h` with canonical representatives
    /// (the smallest element index in each coset).
    pub fn coset_decompose(&self, subgroup: &[usize]) -> Result<CosetDecomposition, GroupError> {
        self.check_subgroup(subgroup)?;
        let mut sub: Vec<usize> = subgroup.to_vec();
        sub.sort_unstable();
        sub.dedup();
        let mut representatives = Vec::new();
        let mut factor = vec![None::<(usize, usize)>; self.order];
        for g in 0..self.order {
            if factor[g].is_some() {
                continue;
            }
            // g is the smallest unassigned element, hence the canonical
            // representative of its coset.
            let r_idx = representatives.len();
            representatives.push(g);
            for (h_idx, &h) in sub.iter().enumerate() {
                let x = self.mul(g, h);
                if factor[x].is_some() {
                    return Err(GroupError::NotASubgroup {
                        reason: format!("cosets overlap at element {x}"),
                    });
                }
                factor[x] = Some((r_idx, h_idx));
            }
        }
        let factor: Vec<(usize, usize)> = factor.into_iter().map(|f| f.unwrap()).collect();
        Ok(CosetDecomposition {
            subgroup_elements: sub,
            representatives,
            factor,
        })
    }

    /// The subgroup as a standalone group: elements reindexed `0..|H|` in
    /// ascending order of their original indices.
    pub fn subgroup_as_group(&self, subgroup: &[usize]) -> Result<Arc<FiniteGroup>, GroupError> {
        self.check_subgroup(subgroup)?;
        let mut sub: Vec<usize> = subgroup.to_vec();
        sub.sort_unstable();
        sub.dedup();
        let pos = |e: usize| sub.binary_search(&e).unwrap();
        let n = sub.len();
        let mut mul = vec![0usize; n * n];
        for (i, &a) in sub.iter().enumerate() {
            for (j, &b) in sub.iter().enumerate() {
                mul[i * n + j] = pos(self.mul(a, b));
            }
        }
        FiniteGroup::from_mul_table(format!("{} restricted to H(|H|={n})", self.label), n, mul)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GroupJson {
            label: self.label.clone(),
            order: self.order,
            mul_table: self.mul.clone(),
            identity: self.identity,
        })
        .expect("group serialization cannot fail")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Arc<Self>, GroupError> {
        let parsed: GroupJson =
            serde_json::from_value(value.clone()).map_err(|e| GroupError::NotASubgroup {
                reason: format!("bad group JSON: {e}"),
            })?;
        let group = FiniteGroup::from_mul_table(parsed.label, parsed.order, parsed.mul_table)?;
        if group.identity != parsed.identity {
            return Err(GroupError::AxiomViolation(AxiomViolation::Identity {
                g: parsed.identity,
            }));
        }
        Ok(group)
    }
}

/// Unique factorization `g = r·h` through canonical coset representatives.
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    /// Sorted element indices of H.
    pub subgroup_elements: Vec<usize>,
    /// One representative per left coset, each the minimal element index
    /// in its coset, in ascending order.
    pub representatives: Vec<usize>,
    /// For each g: (index into `representatives`, index into
    /// `subgroup_elements`) with `g = r·h`.
    factor: Vec<(usize, usize)>,
}

impl CosetDecomposition {
    pub fn num_cosets(&self) -> usize {
        self.representatives.len()
    }

    /// Positions of the factors of `g`: `(coset index, subgroup index)`.
    pub fn factor_indices(&self, g: usize) -> (usize, usize) {
        self.factor[g]
    }

    /// The factors of `g` as group elements `(r, h)` with `g = r·h`.
    pub fn factor_elements(&self, g: usize) -> (usize, usize) {
        let (ri, hi) = self.factor[g];
        (self.representatives[ri], self.subgroup_elements[hi])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.mul(0, 0), 0);
    }

    #[test]
    fn zero_order_rejected() {
        assert!(matches!(
            FiniteGroup::cyclic(0),
            Err(GroupError::InvalidOrder)
        ));
    }

    #[test]
    fn cyclic_arithmetic() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(z3.mul(2, 2), 1);
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(z6.inv(4), 2);
    }

    #[test]
    fn direct_product_order_and_isomorphism_probe() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let p = FiniteGroup::direct_product(&z2, &z3);
        assert_eq!(p.order(), 6);
        assert!(p.verify_axioms().is_valid());
        // Coprime orders: some element generates the whole group.
        assert!(p.elements().any(|g| p.element_order(g) == 6));
        // Z_2 x Z_2 has no element of order 4.
        let z2b = FiniteGroup::cyclic(2).unwrap();
        let q = FiniteGroup::direct_product(&z2, &z2b);
        assert!(q.elements().all(|g| q.element_order(g) <= 2));
    }

    #[test]
    fn axiom_report_flags_corrupted_table() {
        // Z_2 table with mul(1,1) corrupted to 1: then no identity works.
        let err = FiniteGroup::from_mul_table("broken", 2, vec![0, 1, 1, 1]);
        assert!(err.is_err());
    }

    #[test]
    fn verify_axioms_clean_for_constructions() {
        assert!(FiniteGroup::cyclic(5).unwrap().verify_axioms().is_valid());
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let p = FiniteGroup::direct_product(&z4, &z4);
        assert!(p.verify_axioms().is_valid());
    }

    #[test]
    fn coset_decomposition_z6() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let d = z6.coset_decompose(&[0, 3]).unwrap();
        assert_eq!(d.representatives, vec![0, 1, 2]);
        assert_eq!(d.num_cosets() * d.subgroup_elements.len(), 6);
        for g in 0..6 {
            let (r, h) = d.factor_elements(g);
            assert_eq!(z6.mul(r, h), g);
        }
    }

    #[test]
    fn coset_full_group_single_coset() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let d = z6.coset_decompose(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(d.representatives, vec![0]);
    }

    #[test]
    fn non_subgroup_rejected_with_witness() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let err = z6.coset_decompose(&[0, 2]).unwrap_err();
        match err {
            GroupError::NotASubgroup { reason } => assert!(reason.contains("mul(2,2) = 4")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn factorization_is_bijective() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let g = FiniteGroup::direct_product(&z4, &z2);
        // H = {(0,0), (2,0)} = indices {0, 4}.
        let d = g.coset_decompose(&[0, 4]).unwrap();
        let mut seen = std::collections::HashSet::new();
        for e in g.elements() {
            assert!(seen.insert(d.factor_indices(e)));
        }
        assert_eq!(seen.len(), g.order());
    }

    #[test]
    fn subgroup_as_group_matches_cyclic() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let h = z6.subgroup_as_group(&[0, 2, 4]).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(h.mul(a, b), z3.mul(a, b));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let j = g.to_json();
        let back = FiniteGroup::from_json(&j).unwrap();
        assert_eq!(back.order(), 6);
        assert_eq!(back.label(), "Z_6");
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(back.mul(a, b), g.mul(a, b));
            }
        }
    }
}
