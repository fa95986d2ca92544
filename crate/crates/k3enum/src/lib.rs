//! Exact-arithmetic calculator for curve counting on K3 surfaces.
//!
//! Everything here is computed over arbitrary-precision rationals: truncated
//! Laurent series, infinite-product expansions, Eisenstein series and their
//! quasimodular algebra, BPS count extraction (Yau-Zaslow, Katz-Klemm-Vafa,
//! Kawai-Yoshioka), the Gopakumar-Vafa multiple-cover transform, and the
//! lattice side of Noether-Lefschetz theory (discriminant groups, bordered
//! lattices, overlattice classification, Borcherds-style indexing).
//!
//! No floating point is used anywhere. A truncated series carries its
//! truncation order explicitly and arithmetic propagates the largest sound
//! order, so every reported coefficient is exact.

#![forbid(unsafe_code)]

pub mod curvecounts;
pub mod lattice;
pub mod modforms;
pub mod rational;
pub mod series;

pub use rational::Rational;
pub use series::LaurentSeries;
