//! File formats, parallel drivers and the command-line interface for the
//! `L(q, n)` representation tools in [`lqn_core`].

pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;
