//! Nonabelian `H^1`, Galois extensions of finite fields, Galois descent for
//! semilinear modules, twisted forms, and cocycles in finite G-categories.
//!
//! Elements of every finite structure are dense indices with the identity at
//! index 0. All enumerations are deterministic and bounded by [`guard`].

pub mod cohomology;
pub mod descent;
pub mod error;
pub mod fincat;
pub mod forms;
pub mod gfield;
pub mod group_core;
pub mod guard;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod selftest;

pub use error::{Error, Result};
pub use report::{Report, Violation};
