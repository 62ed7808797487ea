//! HTTP session service and command-line front end for the `axolotl` proof
//! workbench.

pub mod cli;
pub mod error;
pub mod http;
pub mod store;

pub use error::{ApiError, ErrorCode};
pub use http::{router, serve};
pub use store::{ProblemEntry, SessionRecord, Store};
