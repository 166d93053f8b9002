//! Kernel of a parametric drawing-module system.
//!
//! A module couples a typed parameter set with the geometry generated from
//! it. Geometry is never edited directly: edits rewrite parameters and the
//! generator runs again, so the stored geometry can always be re-derived and
//! checked.
#![no_std]
// `!(x > 0.0)` is the idiom used throughout to reject NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]
extern crate alloc;

pub mod angle;
pub mod codec;
pub mod drawing;
pub mod generators;
pub mod geometry;
pub mod integrity;
pub mod lightning;
pub mod module;
pub mod offset;
pub mod placement;
pub mod props;
pub mod speccing;
pub mod view;
pub mod zone;

/// Version of the kernel crate.
pub const KERNEL_VERSION: &str = env!("CARGO_PKG_VERSION");
