//! File formats, SVG rendering and the command line over the drawmod kernel.

pub mod cli;
pub mod io;
pub mod literal;
pub mod svg;

pub use drawmod_core as core;
