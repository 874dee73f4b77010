pub mod coarse;
pub mod cli;
pub mod config;
pub mod error;
pub mod hyperspace;
pub mod metric;
pub mod poset;
pub mod props;
pub mod relset;
pub mod text;
pub mod uniform;
pub mod valuation;

pub use error::{Error, Result};
