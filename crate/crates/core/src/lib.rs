//! Exact computation of flip products of matroids.
//!
//! The crate provides:
//!
//! - a matroid core working on explicit basis families over ground sets of
//!   at most 24 elements ([`Matroid`]), with all the usual constructors
//!   (uniform, graphic, matrices over Q and F_p) and minor operations;
//! - a memoized deletion-contraction engine for the flip product
//!   ([`FlipEngine`]), plus the Hadamard product of matroids and positivity
//!   certificates;
//! - an independent brute-force oracle that evaluates the flip product as a
//!   tropical stable intersection over exact rationals ([`oracle`]);
//! - matroid invariants tied to the flip product: beta invariant,
//!   characteristic polynomial, and nbc-basis counts ([`invariants`]);
//! - gain graphs over Z_k and Z^k with combinatorial rank formulas, minimal
//!   rigidity tests, and realisation numbers for plane, rotation-symmetric,
//!   and periodic frameworks ([`gain`]);
//! - enumeration of matroids on small ground sets up to isomorphism, with
//!   flip-product histograms ([`enumerate`]).

pub mod descriptor;
pub mod enumerate;
pub mod error;
pub mod flip;
pub mod gain;
pub mod invariants;
pub mod linalg;
pub mod mask;
pub mod matrix;
pub mod matroid;
pub mod oracle;
pub mod suite;

pub use descriptor::{GainGraphDescriptor, MatroidDescriptor};
pub use error::{Error, Result};
pub use flip::{
    flip_product, flip_zero_certificate, hadamard_matroid, is_flip_positive, FlipConfig,
    FlipEngine, FlipValue, MemoMode, PivotRule, ZeroCertificate,
};
pub use gain::{Gain, GainGraph, GainGroup};
pub use mask::Mask;
pub use matrix::{Orientation, PrimeFieldMatrix, RationalMatrix};
pub use matroid::{iso_pair_key, pair_key, GroundSet, Matroid, MAX_GROUND};
pub use oracle::GenericShift;
