pub mod arith;
pub mod classifier;
pub mod document;
pub mod error;
pub mod factor;
pub mod knowledgebase;
pub mod modp;
pub mod numberfield;
pub mod permgroup;
pub mod poly;
pub mod verifier;

pub use error::{Error, Result};
