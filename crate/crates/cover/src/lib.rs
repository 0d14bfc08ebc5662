//! Exact minimum-radius covering of polygonal unions by identical balls.
//!
//! The library evaluates the uncovered-area function of a ball configuration
//! exactly (together with its gradient and Hessian), and minimizes the common
//! radius subject to full coverage with an augmented Lagrangian method driven
//! by a deterministic multistart.

pub mod covering;
pub mod error;
pub mod geometry;
pub mod instances;
pub mod multistart;
pub mod optimize;
pub mod oracle;
pub mod render;

pub mod cli;

pub use error::Error;
