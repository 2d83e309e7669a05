pub mod bounds;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod measures;
pub mod qstate;

pub use error::{Error, Result};
