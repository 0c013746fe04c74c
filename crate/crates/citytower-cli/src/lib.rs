//! Command implementations and the HTTP session service behind the `citytower` binary.

pub mod commands;
pub mod server;
