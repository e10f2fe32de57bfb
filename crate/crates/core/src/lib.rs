//! Lipschitz matching of an FRW interior to a static TOV exterior across a
//! lightlike shock, with the tensor machinery needed to check it.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod fd;
pub mod lightlike;
pub mod matching;
pub mod report;
pub mod solutions;
pub mod surface;
pub mod tensor;

pub use error::{Error, Result};
