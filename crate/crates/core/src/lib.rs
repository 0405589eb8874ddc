//! Exact and numeric tools for Tschirnhaus transformations.

pub mod arith;
pub mod bounds;
pub mod error;
pub mod finite_field;
pub mod forms;
pub mod linalg;
pub mod numeric;
pub mod poly;
pub mod reduction;
pub mod ring;
pub mod scalar;
pub mod smoothness;
pub mod symmetric;
pub mod tower;

pub use error::{AlgebraError, Result};
