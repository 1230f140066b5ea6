pub mod balls;
pub mod boundengine;
pub mod cli;
pub mod error;
pub mod exactfield;
pub mod heights;
pub mod liematrix;

pub use error::{Error, Result};
