//! Command-line front end for self-updating-process clustering:
//! argument parsing, CSV and SVG I/O, run persistence, and the glue
//! that turns a parsed configuration into a core-library run.

pub mod commands;
pub mod config;
pub mod csv_io;
pub mod error;
pub mod normalize;
pub mod runner;
pub mod svg;
