//! Constructive boundary interpolation by bounded holomorphic functions on
//! circle-bounded planar domains.
//!
//! Given a domain bounded by an outer circle and finitely many disjoint
//! circular holes, a finite set of boundary points with target values, and a
//! strictly positive continuous bound on the boundary, the crate constructs a
//! function that is holomorphic on the domain, continuous up to the boundary,
//! matches the targets exactly, and stays strictly below the bound on every
//! boundary circle. Interpolation at interior punctures is supported as well,
//! in which case the boundary bound is necessarily dropped.
//!
//! The main building blocks are:
//!
//! - [`geometry`]: circles, domains, and the derived one- and two-circle
//!   regions the constructions run on;
//! - [`holo`]: an evaluator tree for holomorphic functions (peak functions,
//!   Moebius maps, Laurent polynomials, algebraic combinations) together with
//!   sampling-based verification primitives;
//! - [`measure`]: complex measures on circles with exact Fourier
//!   coefficients, and the one-sided decomposition of annulus measures whose
//!   inner and outer coefficients cancel;
//! - [`conformal`]: exact Moebius charts taking two-circle regions to a
//!   standard annulus and one-circle regions to the unit disc;
//! - [`disc`] and [`annulus`]: interpolation solvers on the unit disc and on
//!   standard annuli, built on peak-function bases;
//! - [`glue`]: the full pipeline for multiply connected domains, which glues
//!   per-component extensions with separating functions, plus the puncture
//!   interpolation correction;
//! - [`io`]: JSON problem/measure/result files and the batch subcommands
//!   behind the `holoext` binary.
//!
//! Every operation is a pure function of its inputs. Nothing in the crate
//! uses randomness or global state, so identical inputs produce identical
//! results, down to the serialized byte stream.

// Validation checks are written as `!(x < y)` on purpose: they must reject
// NaN, which every non-negated comparison would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod annulus;
pub mod conformal;
mod cxfmt;
pub mod disc;
pub mod error;
pub mod geometry;
pub mod glue;
pub mod holo;
pub mod io;
pub mod measure;
mod solve;

pub use error::{Error, Result};
pub use num_complex::Complex64;
