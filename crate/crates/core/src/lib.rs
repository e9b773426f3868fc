//! Exact finite-field machinery for constructing and certifying extremal
//! ab-maximal and d-maximal p-groups of Frattini class two.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure: no IO,
//! no threads, no clocks. Randomness enters only through explicit
//! [`rand::RngCore`] handles or through the seeded substreams in [`seed`].
//!
//! Layout:
//! - [`field`], [`matrix`], [`gf2`], [`subspace`], [`grassmann`], [`wedge`],
//!   [`combinat`]: linear algebra over `F_p` and exact counting.
//! - [`altmap`]: alternating bilinear maps and power maps.
//! - [`certifier`]: bad-subspace search and rejection-sampling certificates.
//! - [`bounds`]: exact rational evaluation of the Bonferroni/Markov bounds.
//! - [`group`]: presentations, the Baer model and subgroup audits.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod altmap;
pub mod bounds;
pub mod certifier;
pub mod combinat;
mod error;
pub mod field;
pub mod gf2;
pub mod grassmann;
pub mod group;
pub mod matrix;
pub mod seed;
pub mod span;
pub mod subspace;
pub mod wedge;

pub use altmap::{AlternatingMap, LinearPowerMap, PowerMap, QuadraticMap};
pub use certifier::{BadnessReport, Certificate, Mode, Verdict};
pub use error::{Error, Result};
pub use field::Prime;
pub use matrix::FpMatrix;
pub use subspace::Subspace;
pub use wedge::WedgeIndex;

/// Default cap on the number of subspaces a single request may enumerate.
pub const DEFAULT_GUARD: u128 = 100_000_000;
