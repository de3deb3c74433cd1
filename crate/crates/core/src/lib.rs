//! Exact ping-pong certification for two-parabolic subgroups of `SL(2, C)`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod hyperbolic;
pub mod moebius;
pub mod pingpong;
pub mod relator;
pub mod word;

pub use error::{Error, Result};
