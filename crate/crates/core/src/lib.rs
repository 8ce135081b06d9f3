//! Braid words, fibred knot families and exact invariants.
#![allow(clippy::needless_range_loop)]

pub mod braid;
pub mod cover;
pub mod error;
pub mod garside;
pub mod invariants;
pub mod linalg;
pub mod pa;
pub mod poly;
pub mod qpoly;
pub mod report;
pub mod ribbon;
pub mod twobridge;

pub use error::{Error, Result};
