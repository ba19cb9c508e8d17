//! Exact subgroup counting for the free products C2 * Cq and their lifts,
//! with parity predicates and the GF(2) determinant machinery behind them.
//!
//! The `parallel` feature (on by default) runs the heavy sweeps on rayon;
//! every entry point that sweeps also takes an [`Exec`] so the sequential
//! path stays available.

pub mod arith;
pub mod census;
pub mod error;
pub mod exec;
pub mod gf2;
pub mod oracle;
pub mod parity;
pub mod series;
pub mod types;
pub mod verify;
pub mod wreath;

pub use error::{Error, Result};
pub use exec::Exec;
pub use wreath::HParams;
