//! Storage capacity of group-invariant perceptrons.
//!
//! A classifier reading out from a group-equivariant code sees each input not
//! as a point but as a whole orbit `{π(g)·r : g ∈ G}`, and every point of the
//! orbit must land on the same side of the hyperplane. This crate provides the
//! pieces needed to study that problem end to end:
//!
//! * [`group`] — finite groups as explicit multiplication tables, with coset
//!   decompositions.
//! * [`rep`] — linear representations: regular, rotation, direct-sum, induced;
//!   group averages and fixed-subspace dimensions.
//! * [`cover`] — exact dichotomy counting (arbitrary-precision rationals),
//!   the step-function limit, VC dimension, and pooling bounds.
//! * [`sep`] — linear-separability decisions with witnesses or convex-hull
//!   certificates, centroid reduction, and seeded Monte-Carlo capacity
//!   estimates with Wilson intervals.
//! * [`gcnn`] — periodic convolutions, pooling, and the direct-sum layer,
//!   plus capacity problems built on top of them.
//! * [`verify`] — the self-check suites exposed by the CLI.

pub mod cover;
pub mod gcnn;
pub mod group;
mod linalg;
pub mod rep;
pub mod sep;
pub mod verify;

pub use cover::ExactFraction;
pub use group::{CosetDecomposition, FiniteGroup};
pub use rep::Representation;
pub use sep::{CapacityEstimate, OrbitSet, SeparabilityVerdict};
