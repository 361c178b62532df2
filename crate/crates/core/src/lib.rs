//! Exact arithmetic for sums of minor products over permutation and sign
//! matrices.
//!
//! The crate pairs closed forms for several group-averaged minor sums with
//! brute-force enumeration of the same sums, over any commutative ring
//! implementing [`ring::Ring`].

pub mod codec;
pub mod error;
pub mod groups;
pub mod index_set;
pub mod invariance;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod sample;

pub use error::{Error, Result};
pub use index_set::IndexSet;
pub use matrix::ExactMatrix;
pub use poly::Polynomial;
pub use ring::{BaseRing, Ring, RingSpec};
