//! Exact lattice computations for certifying that Hassett divisors of cubic
//! fourfolds intersect.
//!
//! The crate builds explicit sublattices `M` of `E8 ⊕ E8 ⊕ U ⊕ U ⊕ I3`
//! containing `h²`, and certifies the lattice-theoretic hypotheses needed for
//! `M` to witness a nonempty intersection `C_{d_1} ∩ … ∩ C_{d_n}`.

pub mod cli;
pub mod constructions;
pub mod criteria;
pub mod error;
pub mod factor;
pub mod lattice;
pub mod linalg;
pub mod verifier;

pub use error::{Error, Result};
