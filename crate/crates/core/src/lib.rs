//! Distance-2 MDS codes over small alphabets: construction, autotopism
//! search, and certificates of transitivity, propelinearity and
//! topolinearity.

pub mod algebra;
pub mod code;
pub mod constructions;
pub mod counting;
pub mod error;
pub mod isometry;
pub mod loops;
pub mod q4;

pub use error::{BudgetExceeded, Error, Result};
