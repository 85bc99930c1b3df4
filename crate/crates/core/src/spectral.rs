// Copyright 2026 entbath Contributors
// SPDX-License-Identifier: Apache-2.0

//! Thermal field spectral densities with image-method boundary corrections,
//! and the Kossakowski coefficients they induce.
//!
//! A perfectly reflecting plane at z = 0 forces the field to vanish there,
//! so every spectral density picks up oscillatory factors built from
//! sinc(x) = sin(x)/x:
//!
//!   same-atom:  𝒢⁽¹¹⁾(λ) = (1/2π) · λ/(1 − e^{−βλ}) · [1 − sinc(2zλ)]
//!   cross-atom: 𝒢⁽¹²⁾(λ) = (1/2π) · λ/(1 − e^{−βλ}) · [sinc(Lλ) − sinc(√(L²+4z²)·λ)]
//!
//! Evaluated at λ = ±ω these produce the six dissipator coefficients
//! A₁, B₁, C₁ (same-atom) and A₂, B₂, C₂ (cross-atom); see
//! [`KossakowskiSet`]. All removable singularities (L = 0, z → 0, λ = 0,
//! β = ∞) are handled by analytic branches, never by dividing small numbers.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg;
use crate::math;
use crate::model::{AtomPairGeometry, Axis, BoundaryDistance, ThermalBath};

const FRAC_1_4PI: f64 = 1.0 / (4.0 * core::f64::consts::PI);
const FRAC_1_2PI: f64 = 1.0 / (2.0 * core::f64::consts::PI);

/// sin(x)/x with the analytic value 1 at x = 0.
///
/// Below |x| = 1e-4 a short Taylor series removes the 0/0; the truncation
/// error there is far below one ulp.
pub fn sinc(x: f64) -> f64 {
    if math::abs(x) < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        math::sin(x) / x
    }
}

/// 1 − sinc(x), computed without cancellation for small x.
///
/// The boundary factor [1 − sinc(2zω)] is O(z²) near the plane; forming it
/// by direct subtraction would lose half the mantissa exactly where the
/// near-boundary physics lives.
pub fn one_minus_sinc(x: f64) -> f64 {
    let ax = math::abs(x);
    if ax < 1e-2 {
        let x2 = x * x;
        x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    } else {
        1.0 - math::sin(x) / x
    }
}

/// d/dx sinc(x).
fn sinc_d1(x: f64) -> f64 {
    if math::abs(x) < 0.1 {
        let x2 = x * x;
        -x / 3.0 + x * x2 / 30.0 - x * x2 * x2 / 840.0 + x * x2 * x2 * x2 / 45360.0
    } else {
        (x * math::cos(x) - math::sin(x)) / (x * x)
    }
}

/// d²/dx² sinc(x).
fn sinc_d2(x: f64) -> f64 {
    if math::abs(x) < 0.1 {
        let x2 = x * x;
        -1.0 / 3.0 + x2 / 10.0 - x2 * x2 / 168.0 + x2 * x2 * x2 / 6480.0
    } else {
        let (s, c) = (math::sin(x), math::cos(x));
        ((2.0 - x * x) * s - 2.0 * x * c) / (x * x * x)
    }
}

/// d³/dx³ sinc(x).
fn sinc_d3(x: f64) -> f64 {
    if math::abs(x) < 0.1 {
        let x2 = x * x;
        x / 5.0 - x * x2 / 42.0 + x * x2 * x2 / 1080.0
    } else {
        let (s, c) = (math::sin(x), math::cos(x));
        let x2 = x * x;
        (-c * x2 * x + 3.0 * s * x2 + 6.0 * c * x - 6.0 * s) / (x2 * x2)
    }
}

/// sinc(a + delta) − sinc(a), stable for |delta| ≪ 1.
///
/// Direct subtraction loses all significance once |delta| drops toward the
/// rounding floor; a three-term derivative expansion takes over below 1e-4.
fn sinc_diff(a: f64, delta: f64) -> f64 {
    if delta == 0.0 {
        0.0
    } else if math::abs(delta) < 1e-4 {
        delta * (sinc_d1(a) + delta * (0.5 * sinc_d2(a) + delta * sinc_d3(a) / 6.0))
    } else {
        sinc(a + delta) - sinc(a)
    }
}

/// Bose factor λ/(1 − e^{−βλ}) with its analytic limits:
/// 1/β at λ = 0, and the step form λ·θ(λ) at β = ∞.
fn planck_factor(lambda: f64, beta: f64) -> f64 {
    if beta.is_infinite() {
        if lambda > 0.0 {
            lambda
        } else {
            0.0
        }
    } else if lambda == 0.0 {
        1.0 / beta
    } else {
        let x = beta * lambda;
        if x < -700.0 {
            // e^{-x} overflows; the factor itself underflows to zero.
            0.0
        } else {
            lambda / (-math::expm1(-x))
        }
    }
}

/// [1 − sinc(2zλ)] image factor; 1 in free space.
fn boundary_same_factor(lambda: f64, z: BoundaryDistance) -> f64 {
    match z {
        BoundaryDistance::Unbounded => 1.0,
        BoundaryDistance::Finite(z) => one_minus_sinc(2.0 * z * lambda),
    }
}

/// [sinc(Lλ) − sinc(√(L²+4z²)·λ)] image factor; sinc(Lλ) in free space.
///
/// At L = 0 this reduces exactly to the same-atom factor, and near z = 0 it
/// is evaluated through [`sinc_diff`] so the O(z²) difference keeps full
/// precision.
fn boundary_cross_factor(lambda: f64, separation: f64, z: BoundaryDistance) -> f64 {
    match z {
        BoundaryDistance::Unbounded => sinc(separation * lambda),
        BoundaryDistance::Finite(z) => {
            if separation == 0.0 {
                return one_minus_sinc(2.0 * z * lambda);
            }
            let image = math::hypot(separation, 2.0 * z);
            // image − separation without cancellation.
            let gap = 4.0 * z * z / (image + separation);
            -sinc_diff(separation * lambda, gap * lambda)
        }
    }
}

/// Same-atom spectral density 𝒢⁽¹¹⁾(λ) = 𝒢⁽²²⁾(λ).
pub fn spectral_same(lambda: f64, bath: &ThermalBath, z: BoundaryDistance) -> f64 {
    FRAC_1_2PI * planck_factor(lambda, bath.beta) * boundary_same_factor(lambda, z)
}

/// Cross-atom spectral density 𝒢⁽¹²⁾(λ) = 𝒢⁽²¹⁾(λ).
pub fn spectral_cross(
    lambda: f64,
    bath: &ThermalBath,
    z: BoundaryDistance,
    separation: f64,
) -> f64 {
    FRAC_1_2PI * planck_factor(lambda, bath.beta) * boundary_cross_factor(lambda, separation, z)
}

/// Which dissipator block a Kossakowski matrix belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomPair {
    /// (11)/(22): one atom with itself.
    Same,
    /// (12)/(21): the two-atom cross block.
    Cross,
}

/// The six scalars driving the Lindblad dissipator.
///
/// Structurally C = −A in both blocks, and B differs from A only by the
/// thermal factor tanh(βω/2), so B₁A₂ = B₂A₁ holds identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KossakowskiSet {
    pub a1: f64,
    pub b1: f64,
    pub c1: f64,
    pub a2: f64,
    pub b2: f64,
    pub c2: f64,
}

impl KossakowskiSet {
    /// Evaluate the closed forms
    ///
    ///   A₁ = (ω/4π)·coth(βω/2)·[1 − sinc(2zω)]      B₁ = (ω/4π)·[1 − sinc(2zω)]
    ///   A₂ = (ω/4π)·coth(βω/2)·[sinc(Lω) − sinc(√(L²+4z²)ω)]
    ///   B₂ = (ω/4π)·[sinc(Lω) − sinc(√(L²+4z²)ω)]
    ///   C₁ = −A₁, C₂ = −A₂
    ///
    /// with all sin(x)/x factors routed through the analytic sinc branches.
    pub fn new(geometry: &AtomPairGeometry, bath: &ThermalBath) -> Self {
        let omega = geometry.omega;
        let thermal = if bath.beta.is_infinite() {
            1.0
        } else {
            1.0 / math::tanh(0.5 * bath.beta * omega)
        };
        let same = boundary_same_factor(omega, geometry.boundary);
        let cross = boundary_cross_factor(omega, geometry.separation, geometry.boundary);
        let k = FRAC_1_4PI * omega;
        KossakowskiSet {
            a1: k * thermal * same,
            b1: k * same,
            c1: -k * thermal * same,
            a2: k * thermal * cross,
            b2: k * cross,
            c2: -k * thermal * cross,
        }
    }

    /// R = B₁/A₁ = tanh(βω/2); the boundary factor cancels in the ratio.
    pub fn decay_ratio(&self) -> f64 {
        self.b1 / self.a1
    }

    /// Assemble the 3×3 block A δᵢⱼ − iB εᵢⱼₖnₖ + C nᵢnⱼ for the requested
    /// pair.
    pub fn matrix(&self, axis: Axis, pair: AtomPair) -> KossakowskiMatrix {
        let (a, b, c) = match pair {
            AtomPair::Same => (self.a1, self.b1, self.c1),
            AtomPair::Cross => (self.a2, self.b2, self.c2),
        };
        let mut m = linalg::zero::<3>();
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { a } else { 0.0 };
                m[i][j] = Complex64::new(delta + c * axis[i] * axis[j], -b * levi_civita(i, j, &axis));
            }
        }
        KossakowskiMatrix(m)
    }
}

/// Σₖ εᵢⱼₖ nₖ.
fn levi_civita(i: usize, j: usize, n: &Axis) -> f64 {
    match (i, j) {
        (0, 1) => n[2],
        (1, 0) => -n[2],
        (1, 2) => n[0],
        (2, 1) => -n[0],
        (2, 0) => n[1],
        (0, 2) => -n[1],
        _ => 0.0,
    }
}

/// One 3×3 dissipator block C⁽ᵅᵝ⁾ᵢⱼ. Hermitian for real (A, B, C).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KossakowskiMatrix(pub [[Complex64; 3]; 3]);

impl KossakowskiMatrix {
    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        linalg::hermitian_eigenvalues(&self.0)
    }

    /// Complete positivity of the same-pair block requires this.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.eigenvalues()[0] >= -tol
    }
}

/// Errors from the asymptotic-form helpers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("far-boundary expansion requires z/L >= 10, got {0}")]
    OutsideFarRegime(f64),
}

/// (A₂/A₁)² as a function of geometry alone; temperature independent.
///
/// Branches: exactly 1 at L = 0, sinc²(ωL) in free space, and the z → 0
/// power series below z/L = 1e-6 where the full expression becomes a 0/0
/// ratio of vanishing image factors.
pub fn ratio_a_squared(geometry: &AtomPairGeometry) -> f64 {
    if geometry.separation == 0.0 {
        return 1.0;
    }
    let x = geometry.omega * geometry.separation;
    match geometry.boundary {
        BoundaryDistance::Unbounded => {
            let s = sinc(x);
            s * s
        }
        BoundaryDistance::Finite(z) => {
            let eps = z / geometry.separation;
            if eps < 1e-6 {
                let (lead, corr) = ratio_a_near_boundary_with_correction(x);
                lead + corr * eps * eps
            } else {
                let num = boundary_cross_factor(geometry.omega, geometry.separation, geometry.boundary);
                let den = one_minus_sinc(2.0 * geometry.omega * z);
                let r = num / den;
                r * r
            }
        }
    }
}

/// (B₁/A₁)² = tanh²(βω/2): 1 at zero temperature, 0 in the infinite-
/// temperature limit. Only the bath enters; geometry cancels.
pub fn ratio_b_squared(bath: &ThermalBath, omega: f64) -> f64 {
    if bath.beta.is_infinite() {
        1.0
    } else {
        let t = math::tanh(0.5 * bath.beta * omega);
        t * t
    }
}

/// Leading term of (A₂/A₁)² as z/L → 0:
///
///   9/(ωL)⁶ · [sin(ωL) − ωL·cos(ωL)]²
///
/// which is z-independent and tends to 1 as ωL → 0.
pub fn ratio_a_near_boundary(omega_l: f64) -> f64 {
    ratio_a_near_boundary_with_correction(omega_l).0
}

/// Leading term together with the coefficient of the (z/L)² correction.
pub fn ratio_a_near_boundary_with_correction(omega_l: f64) -> (f64, f64) {
    let x = omega_l;
    let lead = {
        let amp = if math::abs(x) < 0.1 {
            // 3(sin x − x cos x)/x³ without the x³ cancellation.
            let x2 = x * x;
            1.0 - x2 / 10.0 + x2 * x2 / 280.0 - x2 * x2 * x2 / 15120.0
        } else {
            3.0 * (math::sin(x) - x * math::cos(x)) / (x * x * x)
        };
        amp * amp
    };
    let corr = {
        let (s, c) = (math::sin(x), math::cos(x));
        let x2 = x * x;
        let x6 = x2 * x2 * x2;
        (18.0 / 5.0) / x6 * (x * c - s) * (x * (-15.0 + x2) * c + 3.0 * (5.0 - 2.0 * x2) * s)
    };
    (lead, corr)
}

/// Far-boundary expansion of (A₂/A₁)², valid for z/L ≥ 10:
///
///   sinc²(ωL) + (L/z)·(sin(ωL)/(ωL)³)·[sin(ωL)·sin(2ωz) − ωL·sin(ωL√(1+4z²/L²))]
///
/// The leading term is the free-space value; the 1/z tail carries the
/// decaying image oscillations.
pub fn ratio_a_far(omega_l: f64, z_over_l: f64) -> Result<f64, SpectralError> {
    if !(z_over_l >= 10.0) {
        return Err(SpectralError::OutsideFarRegime(z_over_l));
    }
    let x = omega_l;
    let s = math::sin(x);
    let base = sinc(x);
    let image_arg = x * math::hypot(1.0, 2.0 * z_over_l);
    let tail = (1.0 / z_over_l) * (s / (x * x * x))
        * (s * math::sin(2.0 * x * z_over_l) - x * math::sin(image_arg));
    Ok(base * base + tail)
}
