pub mod error;
pub mod exact;
pub mod generate;
pub mod io;
pub mod matching;
pub mod model;
pub mod packers;
pub mod render;
pub mod report;
pub mod union;

pub use error::{Error, Result};
