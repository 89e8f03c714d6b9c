//! HTTP service and command line for the ontoview engine.

pub mod api;
pub mod cli;
pub mod config;
pub mod model;
pub mod session;

pub use api::{app, router, ApiError, AppState, ErrorBody};
pub use config::{Config, CONFIG_ENV};
pub use session::{Op, Session, SessionError, Store};
