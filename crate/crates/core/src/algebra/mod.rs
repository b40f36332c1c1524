//! Alphabets, permutations and small finite fields.
//!
//! Every alphabet is stored as the dense range `0..q`; structured views
//! (the two-indexed form `x_ζ` of `Q_{2p}`, field elements, coordinate pairs)
//! are lenses over those indices.

mod alphabet;
mod field;
mod perm;

pub(crate) use alphabet::sign;
pub use alphabet::{Alphabet, Structure, TwoIndexed, TwoIndexedElement};
pub use field::{field_make, is_prime, FieldTable};
pub use perm::Permutation;

/// A point of the alphabet `Q_q`, as its canonical index.
pub type Symbol = u8;

/// Largest supported alphabet.
pub const MAX_Q: usize = 256;
