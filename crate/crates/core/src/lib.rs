//! Relativistic spin splitting and Larmor precession frequency of neutral and
//! charged spin-1/2 particles in static collinear electric and magnetic fields.
//!
//! The computational core works in natural units (`m = c = 1`); see
//! [`units`] for conversions to and from SI.

pub mod charged;
pub mod cli;
pub mod error;
pub mod exec;
pub mod neutral;
pub mod oracles;
pub mod sweep;
pub mod units;

pub use error::{Error, Result};
pub use exec::Execution;
