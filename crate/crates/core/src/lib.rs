pub mod bench;
pub mod cli;
pub mod conjugacy;
pub mod error;
pub mod format;
pub mod generate;
pub mod group;
pub mod reductions;
pub mod tssp;
pub mod word;

pub use error::{Error, Result};
pub use group::{GroupContext, GroupElement};
