//! Command-line front end plus the HTTP session service.

pub mod cli;
pub mod http;
pub mod ops;
pub mod schema;
