//! File formats, SVG rendering and the subcommands of the `tensec` binary.

pub mod cli;
pub mod format;
pub mod render;
