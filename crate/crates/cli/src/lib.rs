//! Library side of the `confalg` command line: the spec-file format, the
//! builtin spec files and the command implementations.

pub mod builtins;
pub mod commands;
pub mod spec;
