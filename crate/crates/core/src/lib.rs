//! Exact reduction theory for indefinite binary quadratic forms.
//!
//! Gauss and Zagier reduction, the Pellian equation `|t² − Δu²| = 4`,
//! continued fractions of quadratic surds (regular, negative and Denjoy), and
//! the maps linking reduced forms to natural strings, binary strings and
//! necklaces.

pub mod contfrac;
pub mod error;
pub mod forms;
pub mod maps;
pub mod oracle;
pub mod pell;
pub mod reduction;
pub mod strings;

pub use contfrac::{CfKind, NatString, Parity, QuadraticSurd};
pub use error::{Error, Result};
pub use forms::{Form, UnimodularMatrix};
pub use oracle::{verify, verify_with, Bounds, Suite, VerificationReport};
pub use pell::{fundamental_solution, PellSign, PellSolution};
pub use reduction::{Discriminant, Operator, ReductionCycle};
pub use strings::{AlternatingNecklace, BinString, ColoredBinString, Necklace};
