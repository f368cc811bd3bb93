pub mod chevalley;
pub mod cli;
pub mod distsets;
pub mod error;
pub mod exact;
pub mod involution;
pub mod report;
pub mod rootsystem;
pub mod verifier;

pub use error::{Error, Result};
