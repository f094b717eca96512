//! Command-line front end and session server for matroid coloring games.

pub mod commands;
pub mod input;
pub mod server;
