pub mod alpha;
pub mod audit;
pub mod cli;
pub mod cones;
pub mod decomposition;
mod epigraph;
pub mod error;
pub mod fixtures;
pub mod gauge;
pub mod geometry;
pub mod hemicontinuity;
pub mod intersection;
pub mod lp;
pub mod problem;
pub mod report;

pub use error::{Error, Result};
