//! Fürstenberg's topology on ℤ, computed exactly.
//!
//! - [`norms`]: the divisibility norm `‖n‖ = 1/max{K : lcm(1..K) | n}`, the
//!   dyadic alternative `Σ_{k∤n} 2^{-k}`, and their metrics.
//! - [`progression`]: residue classes, canonical finite unions, CRT
//!   intersection, complements, metric balls, point separation.
//! - [`convergence`]: finite-depth convergence checking and profinite
//!   residue profiles of integer sequences.
//! - [`separation`]: arithmetic-progression separation of disjoint prime
//!   sets, with checkable certificates.
//! - [`cli`]: the command-line front end.

pub mod arith;
pub mod cli;
pub mod convergence;
pub mod error;
pub mod norms;
pub mod progression;
pub mod separation;

pub use convergence::{
    check_continuity_products, converges_to, limit_profile, series_partial_sums, IntegerSequence, ProfiniteProfile,
    Verdict,
};
pub use error::{Error, Result};
pub use norms::{dist, ferry_dist, ferry_norm, norm, DyadicValue, NormValue};
pub use progression::{
    complement_class, euclid_witness, intersect_classes, open_ball, separate_points, CanonicalLimits, ProgressionUnion,
    ResidueClass,
};
pub use separation::{compact_separate, separate, verify, CertificateVerdict, SeparationCertificate};
