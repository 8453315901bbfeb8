pub mod attack;
pub mod aut;
pub mod bench;
pub mod cli;
pub mod elgamal;
pub mod error;
pub mod ff;
pub mod files;
pub mod message;
pub mod numtheory;
pub mod rng;
pub mod scheme;
pub mod ut;
pub mod worked_example;

pub use error::{Error, Result};
