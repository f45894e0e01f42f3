//! Routing and exhaustive verification for friends-and-strangers graphs
//! `FS(X, Y)`.
//!
//! People are the vertices of `X`, positions are the vertices of `Y`, and a
//! configuration places one person on every position. A friendly swap
//! exchanges the occupants of two adjacent positions when the occupants are
//! themselves adjacent in `X`.

pub mod error;
pub mod experiments;
pub mod config;
pub mod classify;
pub mod constants;
pub mod bench;
pub mod dense;
pub mod graph;
pub mod oracle;
pub mod star;
pub mod token;

pub use error::{Error, GraphError, Result};
pub use graph::{Family, Graph};
pub use config::{Configuration, Move, MoveSequence, Parity, SolveReport};
