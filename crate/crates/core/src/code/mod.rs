//! Distance-2 MDS codes and n-ary quasigroups.
//!
//! An [`MdsCode`] keeps its words sorted lexicographically. Because every
//! choice of the first `n - 1` coordinates completes to exactly one word,
//! word `i` is the one whose prefix has mixed-radix rank `i`. For each
//! coordinate the code also keeps a completion table mapping the other
//! `n - 1` symbols to the missing one, which answers line queries in O(n).

mod file;
mod mds;
mod ops;
mod provenance;
mod quasigroup;

pub use file::CodeFile;
pub use mds::{is_mds, MdsCode, MdsVerdict, MdsViolation, MAX_MATERIALIZED_WORDS};
pub use ops::{product_code, subcode};
pub use provenance::Provenance;
pub use quasigroup::{pair_code, quasigroup_of, NAryQuasigroup};

pub(crate) use mds::words_budget;
pub(crate) use quasigroup::decode;
