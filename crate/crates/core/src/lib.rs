//! Adaptive linear-programming decoding of binary linear block codes.

pub mod automorphism;
pub mod channel;
pub mod cli;
pub mod decoders;
pub mod error;
pub mod gf2;
pub mod lp;
pub mod separation;
pub mod sim;

pub use error::{Error, Result};
