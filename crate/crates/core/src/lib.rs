pub mod error;
pub mod exactmath;

pub use error::{Error, Result};
pub mod algebra;
pub mod format;
pub mod generators;
pub mod malcev;
pub mod radical;
pub mod separability;
pub mod tower;
pub mod wedderburn;
