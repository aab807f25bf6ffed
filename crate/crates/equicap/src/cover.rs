//! Exact counting of linearly separable dichotomies.
//!
//! `C(P,N) = 2·Σ_{k=0}^{N-1} C(P-1,k)` counts the homogeneously separable
//! dichotomies of P points in general position in N dimensions, and
//! `f(P,N) = C(P,N)/2^P` is the separable fraction. Everything in this module
//! is integer/rational arithmetic; floats appear only through an explicit
//! conversion for plotting.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// An arbitrary-precision rational, always reduced, denominator positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactFraction(BigRational);

impl ExactFraction {
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        ExactFraction(BigRational::new(numer, denom))
    }

    pub fn from_integer(n: u64) -> Self {
        ExactFraction(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        ExactFraction(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactFraction(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Float view, for plotting and interval arithmetic only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("rational out of f64 range")
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs_diff(&self, other: &ExactFraction) -> ExactFraction {
        ExactFraction((&self.0 - &other.0).abs())
    }
}

impl fmt::Display for ExactFraction {
    /// Reduced `num/den`, or plain integer when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ExactFraction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let numer = BigInt::from_str(n.trim()).map_err(|e| e.to_string())?;
        let denom = BigInt::from_str(d.trim()).map_err(|e| e.to_string())?;
        if denom.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(ExactFraction(BigRational::new(numer, denom)))
    }
}

impl Serialize for ExactFraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactFraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ExactFraction::from_str(&s).map_err(D::Error::custom)
    }
}

/// Number of linearly separable dichotomies of `p` points in general
/// position in `n` dimensions (homogeneous hyperplanes).
///
/// Equals 0 for n = 0 and 2^p whenever n ≥ p. Requires p ≥ 1.
pub fn cover_count(p: usize, n: usize) -> BigUint {
    assert!(p >= 1, "cover_count requires at least one point");
    let mut sum = BigUint::zero();
    let mut term = BigUint::one(); // C(p-1, 0)
    for k in 0..n.min(p) {
        sum += &term;
        // C(p-1, k+1) from C(p-1, k).
        if k + 1 < n.min(p) {
            term = term * BigUint::from(p - 1 - k) / BigUint::from(k + 1);
        }
    }
    sum * BigUint::from(2u32)
}

/// Fraction of separable dichotomies `f(P,N) = 2^{1-P} Σ_{k<N} C(P-1,k)`,
/// as an exact reduced rational in [0,1]. Requires p ≥ 1.
pub fn cover_fraction(p: usize, n: usize) -> ExactFraction {
    let count = BigInt::from(cover_count(p, n));
    let total = BigInt::one() << p;
    ExactFraction::new(count, total)
}

/// The thermodynamic limit of `f(P,N)` at fixed load α = P/N: a step
/// function that is 1 below the critical load 2 and 0 above it.
///
/// At exactly α = 2 this returns 1/2, matching `f(2N, N) = 1/2` at every
/// finite size.
pub fn gardner_limit(alpha: f64) -> f64 {
    assert!(
        alpha >= 0.0 && !alpha.is_nan(),
        "load must be a nonnegative real"
    );
    if alpha < 2.0 {
        1.0
    } else if alpha == 2.0 {
        0.5
    } else {
        0.0
    }
}

/// VC dimension of the invariant perceptron: the fixed-subspace dimension
/// itself. This is the largest P for which some anchor placement realizes
/// all 2^P dichotomies.
pub fn vc_dimension(n0: usize) -> usize {
    n0
}

/// Capacity bracket after nonlinear local pooling with coset count `k`:
/// `(f(P, ⌊N0/k⌋), f(P, N0))`.
pub fn pooled_capacity_bounds(p: usize, n0: usize, k: usize) -> (ExactFraction, ExactFraction) {
    assert!(k >= 1, "coset count must be at least 1");
    (cover_fraction(p, n0 / k), cover_fraction(p, n0))
}
