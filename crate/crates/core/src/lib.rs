//! Exact umbral calculus on truncated formal power series.
//!
//! Everything is computed in ℚ: delta operators are stored as indicator
//! series in `D`, umbral and Sheffer operators as coefficient triangles.

pub mod bell;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod expr;
pub mod flow;
pub mod fps;
pub mod operators;
pub mod rat;
pub mod sigma;
pub mod umbral;

pub use error::{Error, Result};
pub use fps::{Order, Poly, Series};
pub use rat::Rat;
