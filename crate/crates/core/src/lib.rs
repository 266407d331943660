//! Exact-arithmetic toolkit for restricted Stirling and Lah numbers.
//!
//! Given `R ⊆ ℕ`, the `R`-restricted Stirling numbers of the second kind,
//! first kind, and the `R`-restricted Lah numbers count partitions of
//! `{1, …, n}` into `k` subsets, cycles, or lists with every block size in
//! `R`. The infinite lower-triangular matrices of these numbers are
//! invertible exactly when `1 ∈ R`, and the inverse entries have
//! combinatorial meaning in terms of decorated phylogenetic forests.
//!
//! This crate computes all of these objects with exact big-integer and
//! big-rational arithmetic, by independent routes that are checked against
//! each other:
//!
//! * [`restriction`] — restriction sets as maximal intervals, endpoint sets
//!   `a(R)` / `b(R)`, the "no exposed odds" predicate, and `d`-stretching.
//! * [`series`] — truncated power series over exact rationals: products,
//!   composition, compositional reversion, generating functions attached to
//!   restriction sets, and alternation scans.
//! * [`numbers`] — the number triangles themselves via a brute-force
//!   partition oracle and via generating-function columns, exact triangular
//!   inversion, and the Bessel-number matching cross-check.
//! * [`forest`] — leaf-labeled phylogenetic trees and forests, the three
//!   ordering disciplines, parity, goodness, and weighted tree sums.
//! * [`involution`] — the parity-toggling involution on decorated trees and
//!   its exhaustive verifier.
//! * [`poset`] — the poset of partitions with part sizes ≡ 1 (mod d) and its
//!   Whitney numbers of both kinds.
//! * [`verify`] — the bundled verification suites run by `stirlah verify-all`.
//!
//! The `stirlah` binary exposes the same functionality on the command line;
//! see [`cli`].

pub mod cli;
pub mod error;
pub mod forest;
pub mod involution;
pub mod numbers;
pub(crate) mod partitions;
pub mod poset;
pub mod restriction;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use forest::{Forest, OrderingKind, Parity, Tree};
pub use numbers::{RestrictedNumberSpec, TriangularMatrix};
pub use restriction::{EndpointSets, RestrictionSet};
pub use series::{PowerSeries, SequenceKind};
