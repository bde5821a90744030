//! Experiment driver for the groverian measure: state and marked-set specs,
//! figure reproductions and CSV output.

pub mod cli;
pub mod config;
pub mod experiments;
pub mod specs;
pub mod table;
