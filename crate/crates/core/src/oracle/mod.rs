//! Brute-force oracles used to cross-check the inequality machinery.
//!
//! Nothing here shares code with the Horn or Smith modules: LR coefficients
//! come from tableau enumeration, Smith invariants from local elimination,
//! and cokernel sets from exhaustive matrix sweeps.

mod lr;
mod matrix;
mod snf;

pub use lr::lr_coefficient;
pub use matrix::{matrix_cokernel_oracle, operator_census, operator_group_oracle, CokernelReport, Strategy};
pub use snf::{smith_invariants, IntMatrix};
