// Copyright 2026 entbath Contributors
// SPDX-License-Identifier: Apache-2.0

//! Entanglement generation between two two-level atoms coupled to a thermal
//! bath of massless scalar fields in the half-space bounded by a perfectly
//! reflecting plane.
//!
//! The crate covers the full pipeline from environment to entanglement:
//!
//! - [`model`] — geometry/bath value types, natural-unit conventions and
//!   SI conversion.
//! - [`spectral`] — thermal field spectral densities with image-method
//!   boundary corrections, and the Kossakowski coefficient set that drives
//!   the dissipator.
//! - [`states`] — two-qubit density-matrix algebra: Bloch ↔ matrix
//!   conversion, partial transpose, PPT witness, Wootters concurrence.
//! - [`dynamics`] — Lindblad time evolution of the 15 real Bloch components
//!   and the early-time entanglement-creation test.
//! - [`equilibrium`] — closed-form asymptotic states, their concurrence and
//!   the entanglement-persistence condition at vanishing separation.
//!
//! Everything is `f64`, pure and allocation-light; the crate is `no_std`
//! (with `alloc` for trajectory storage), so it can be embedded anywhere.
//! All types are immutable values and every operation is a pure function,
//! safe for unrestricted concurrent use.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub(crate) mod linalg;
pub(crate) mod math;

pub mod dynamics;
pub mod equilibrium;
pub mod model;
pub mod spectral;
pub mod states;

pub use model::{AtomPairGeometry, Axis, BoundaryDistance, ThermalBath};
pub use spectral::KossakowskiSet;
pub use states::{BlochState, DensityMatrix4};
