//! Magic-state distillation with H-codes and their grid concatenations.
//!
//! The crate covers the Pauli and stabilizer machinery needed to build and
//! check `H_n` codes, the multilevel grid construction with its lifted
//! Y-checks, an exact error oracle for small instances, closed-form output
//! error models, and a Pareto search over protocol compositions.

pub mod bits;
pub mod cli;
pub mod error;
pub mod gf2;
pub mod grid;
pub mod hcodes;
pub mod models;
pub mod oracle;
pub mod pauli;
pub mod poly;
pub mod search;

pub use error::{Error, Result};
