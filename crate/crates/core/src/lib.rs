pub mod acceptance;
pub mod algebra;
pub mod complexity;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod rauzy;
pub mod report;
pub mod rotation;
pub mod structure;
pub mod words;

pub use error::{Error, Result};
