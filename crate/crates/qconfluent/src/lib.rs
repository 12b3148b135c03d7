//! Exact-arithmetic verification of formal series solutions to a variant of
//! the degree-two q-hypergeometric equation and its four confluent
//! degenerations, including gauge correspondences and q → 1 limits.

pub mod cli;
pub mod equations;
pub mod error;
pub mod gauge;
pub mod limits;
pub mod qalg;
pub mod runner;
pub mod solutions;
pub mod verify;

pub use error::{Error, Result};
