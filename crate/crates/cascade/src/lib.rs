//! File formats, reproduction checks and the command-line front end for
//! `cascade-core`.

pub mod cli;
pub mod reproduce;
pub mod spec_io;
