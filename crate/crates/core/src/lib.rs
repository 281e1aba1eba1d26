//! Truncated power series for the Salagean classes `S_n` and numerical checks of
//! their coefficient inequalities.
//!
//! * [`series`]: truncated complex power series (`+`, `*`, `exp`, `log`, evaluation).
//! * [`salagean`]: the operators `D^n` and `I_n`.
//! * [`caratheodory`]: positive-real-part functions from finite Herglotz measures.
//! * [`classes`]: members of `S_n`, odd members, extremal functions, close-to-convex functions.
//! * [`inequalities`]: checkers returning [`GapReport`]s.
//! * [`sweep`]: the seeded batch driver behind `salagean verify`.

pub mod caratheodory;
pub mod classes;
pub mod cli;
pub mod error;
pub mod inequalities;
pub mod report;
pub mod salagean;
pub mod seed;
pub mod series;
pub mod sweep;
mod unit;

pub use caratheodory::{DiskGrid, HerglotzMeasure};
pub use error::{Error, Result};
pub use report::GapReport;
pub use salagean::SalageanOrder;
pub use series::TruncatedSeries;
pub use unit::UnitModulus;
