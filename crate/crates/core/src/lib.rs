//! Exact projective statics for planar frameworks.
//!
//! The crate decides whether a framework with rational homogeneous coordinates
//! carries a non-parallelizable self-stress, and compiles its graph into a
//! system of meet/join conditions that can be checked independently of the
//! null-space computation. Everything runs over exact rationals.
//!
//! The crate is `no_std` (it needs `alloc`). The `std` feature only adds
//! `std::error::Error`-compatible plumbing through `core::error::Error`.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod conditions;
pub mod cycles;
mod error;
pub mod fixtures;
pub mod framework;
pub mod graph;
pub mod numeric;
pub mod projective;
pub mod quantization;
pub mod resolution;
pub mod rng;
pub mod sampling;

pub use error::{Error, Result};
