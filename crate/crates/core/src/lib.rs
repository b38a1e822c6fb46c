pub mod cli;
pub mod error;
pub mod measure;
pub mod quadrature;
pub mod solutions;
pub mod special;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
