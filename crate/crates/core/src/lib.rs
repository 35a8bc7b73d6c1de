pub mod connectivity;
pub mod error;
pub mod exact;
pub mod families;
pub mod graph;
pub mod randgen;
pub mod report;
pub mod spectra;
pub mod treepack;

pub use error::{Error, Result};
