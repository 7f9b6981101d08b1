//! Desk-scale checks of the circuit constructions and bounds behind the
//! resource estimates.

pub mod antisym;
pub mod basis;
pub mod builders;
pub mod circuit;
pub mod error;
pub mod lcu;
pub mod operator;
pub mod suite;
pub mod verify;
