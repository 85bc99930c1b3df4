// Copyright 2026 entbath Contributors
// SPDX-License-Identifier: Apache-2.0

//! Core domain types and unit conventions.
//!
//! Everything downstream works in natural units ħ = c = k_B = 1. When a
//! problem arrives in SI, [`from_si`] maps it onto the convention
//!
//! - lengths stay in meters,
//! - the gap ω becomes ω/c (inverse meters),
//! - the inverse temperature becomes β = ħc/(k_B T) (meters),
//!
//! so that βω and ωL come out dimensionless. [`to_si`] is the exact inverse.

use thiserror::Error;

use crate::math;

/// CODATA values used by the SI conversion layer.
pub mod constants {
    /// Reduced Planck constant (J·s).
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Boltzmann constant (J/K).
    pub const BOLTZMANN: f64 = 1.380_649e-23;
    /// Speed of light (m/s).
    pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
}

/// Quantization axis, a real unit 3-vector.
pub type Axis = [f64; 3];

/// Unit-norm tolerance for [`Axis`] validation.
pub const AXIS_NORM_TOL: f64 = 1e-12;

/// Distance from the reflecting plane, with "no boundary at all" as a
/// first-class case so limit formulas are exact rather than approximated by
/// a large number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryDistance {
    /// Both atoms sit a distance `z > 0` from the plane.
    Finite(f64),
    /// Free space; every boundary correction factor is identically absent.
    Unbounded,
}

impl BoundaryDistance {
    /// The numeric distance, or `None` in free space.
    pub fn finite(self) -> Option<f64> {
        match self {
            BoundaryDistance::Finite(z) => Some(z),
            BoundaryDistance::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, BoundaryDistance::Unbounded)
    }
}

/// Validation failures for the domain types.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("atomic gap must be positive, got {0}")]
    NonPositiveGap(f64),
    #[error("atom separation must be non-negative, got {0}")]
    NegativeSeparation(f64),
    #[error("boundary distance must be positive, got {0}")]
    NonPositiveBoundaryDistance(f64),
    #[error("quantization axis must have unit norm, |n| = {0}")]
    NonUnitAxis(f64),
    #[error("inverse temperature must be positive (or infinite), got {0}")]
    NonPositiveBeta(f64),
    #[error("SI input {name} must be {requirement}, got {value}")]
    InvalidSiInput {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },
}

/// Two two-level atoms at equal distance from the plane, separated along it.
///
/// All lengths share one unit (meters after SI conversion); `omega` carries
/// the inverse of that unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomPairGeometry {
    /// Energy-level spacing ω (inverse length in natural units).
    pub omega: f64,
    /// Atom–atom separation L ≥ 0.
    pub separation: f64,
    /// Common distance of both atoms from the boundary.
    pub boundary: BoundaryDistance,
    /// Quantization axis n, |n| = 1.
    pub axis: Axis,
}

impl AtomPairGeometry {
    pub fn new(
        omega: f64,
        separation: f64,
        boundary: BoundaryDistance,
        axis: Axis,
    ) -> Result<Self, ModelError> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(ModelError::NonPositiveGap(omega));
        }
        if !(separation >= 0.0) || !separation.is_finite() {
            return Err(ModelError::NegativeSeparation(separation));
        }
        if let BoundaryDistance::Finite(z) = boundary {
            if !(z > 0.0) || !z.is_finite() {
                return Err(ModelError::NonPositiveBoundaryDistance(z));
            }
        }
        let norm = math::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
        if math::abs(norm - 1.0) > AXIS_NORM_TOL {
            return Err(ModelError::NonUnitAxis(norm));
        }
        Ok(Self {
            omega,
            separation,
            boundary,
            axis,
        })
    }
}

/// Thermal state of the scalar fields, characterized by β = 1/(k T).
///
/// `beta` may be `f64::INFINITY` (zero temperature).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalBath {
    pub beta: f64,
}

impl ThermalBath {
    pub fn new(beta: f64) -> Result<Self, ModelError> {
        if beta > 0.0 {
            Ok(Self { beta })
        } else {
            Err(ModelError::NonPositiveBeta(beta))
        }
    }

    /// β = ∞, the T = 0 bath.
    pub fn zero_temperature() -> Self {
        Self {
            beta: f64::INFINITY,
        }
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.beta.is_infinite()
    }
}

/// z/L with both degenerate cases kept explicit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZOverL {
    Finite(f64),
    /// No boundary present.
    Unbounded,
    /// L = 0: the ratio is undefined, not infinite.
    UndefinedSeparation,
}

/// The three dimensionless numbers that fully determine every ratio
/// quantity in the problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dimensionless {
    pub omega_l: f64,
    pub z_over_l: ZOverL,
    /// βω; infinite at zero temperature.
    pub beta_omega: f64,
}

/// Reduce (geometry, bath) to (ωL, z/L, βω).
pub fn dimensionless(geometry: &AtomPairGeometry, bath: &ThermalBath) -> Dimensionless {
    let z_over_l = match geometry.boundary {
        BoundaryDistance::Unbounded => ZOverL::Unbounded,
        BoundaryDistance::Finite(z) => {
            if geometry.separation == 0.0 {
                ZOverL::UndefinedSeparation
            } else {
                ZOverL::Finite(z / geometry.separation)
            }
        }
    };
    Dimensionless {
        omega_l: geometry.omega * geometry.separation,
        z_over_l,
        beta_omega: bath.beta * geometry.omega,
    }
}

/// Build natural-unit (geometry, bath) from SI inputs.
///
/// `temperature_k = 0` selects the zero-temperature bath (β = ∞). The axis
/// defaults to the third coordinate direction.
pub fn from_si(
    omega_rad_per_s: f64,
    separation_m: f64,
    boundary_m: f64,
    temperature_k: f64,
) -> Result<(AtomPairGeometry, ThermalBath), ModelError> {
    if !(omega_rad_per_s > 0.0) || !omega_rad_per_s.is_finite() {
        return Err(ModelError::InvalidSiInput {
            name: "omega_rad_per_s",
            requirement: "positive and finite",
            value: omega_rad_per_s,
        });
    }
    if !(separation_m >= 0.0) || !separation_m.is_finite() {
        return Err(ModelError::InvalidSiInput {
            name: "separation_m",
            requirement: "non-negative and finite",
            value: separation_m,
        });
    }
    if !(boundary_m > 0.0) || !boundary_m.is_finite() {
        return Err(ModelError::InvalidSiInput {
            name: "boundary_m",
            requirement: "positive and finite",
            value: boundary_m,
        });
    }
    if !(temperature_k >= 0.0) || !temperature_k.is_finite() {
        return Err(ModelError::InvalidSiInput {
            name: "temperature_k",
            requirement: "non-negative and finite",
            value: temperature_k,
        });
    }
    let geometry = AtomPairGeometry::new(
        omega_rad_per_s / constants::SPEED_OF_LIGHT,
        separation_m,
        BoundaryDistance::Finite(boundary_m),
        [0.0, 0.0, 1.0],
    )?;
    let beta = if temperature_k == 0.0 {
        f64::INFINITY
    } else {
        constants::HBAR * constants::SPEED_OF_LIGHT / (constants::BOLTZMANN * temperature_k)
    };
    Ok((geometry, ThermalBath { beta }))
}

/// Invert [`from_si`]: returns (ω [rad/s], L [m], z [m], T [K]).
///
/// An unbounded geometry maps to `z = ∞`, a zero-temperature bath to `T = 0`.
pub fn to_si(geometry: &AtomPairGeometry, bath: &ThermalBath) -> (f64, f64, f64, f64) {
    let omega = geometry.omega * constants::SPEED_OF_LIGHT;
    let z = match geometry.boundary {
        BoundaryDistance::Finite(z) => z,
        BoundaryDistance::Unbounded => f64::INFINITY,
    };
    let t = if bath.beta.is_infinite() {
        0.0
    } else {
        constants::HBAR * constants::SPEED_OF_LIGHT / (constants::BOLTZMANN * bath.beta)
    };
    (omega, geometry.separation, z, t)
}
