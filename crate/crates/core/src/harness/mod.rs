//! Instance generators and experiment drivers.

pub mod experiment;
pub mod gen;

pub use experiment::{verify_bound, ExperimentReport, Family, Record, Summary};
