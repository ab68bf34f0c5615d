//! Certificate-producing algorithms around treewidth, Hadwiger number, induced
//! minors and vertex-minors, sized for small exact instances.
//!
//! Every search returns a checkable witness (tree-decomposition, branch sets,
//! separation, local-complementation sequence) and every witness type comes
//! with a validator.

pub mod bounds;
pub mod circle;
pub mod cli;
pub mod decomposition;
pub mod dichotomy;
pub mod error;
pub mod format;
pub mod geometry;
pub mod graph;
pub mod harness;
pub mod minors;
pub mod ordered;
pub mod perturbation;
pub mod treewidth;
pub mod vertex_minor;

pub use error::{Error, Limits, Result};
pub use graph::Graph;
pub use num;
