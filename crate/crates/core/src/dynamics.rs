// Copyright 2026 entbath Contributors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad time evolution in Bloch components and the early-time
//! entanglement-creation test.
//!
//! With the effective Hamiltonian dropped (its Lamb-shift pieces only
//! renormalize ω and the induced direct coupling is temperature
//! independent), the master equation closes on the 15 real Bloch
//! components as a linear first-order system:
//!
//!   ∂ₜρ₀ᵢ = −4A₁ρ₀ᵢ − 4B₁nᵢ − 2B₂nᵢτ + 2B₂nₖρᵢₖ − 2C₁ρ₀ᵢ + 2C₁nᵢnₖρ₀ₖ
//!   ∂ₜρᵢ₀ = −4A₁ρᵢ₀ − 4B₁nᵢ − 2B₂nᵢτ + 2B₂nₖρₖᵢ − 2C₁ρᵢ₀ + 2C₁nᵢnₖρₖ₀
//!   ∂ₜρᵢⱼ = −8A₁ρᵢⱼ − 4A₂ρⱼᵢ + 4A₂τδᵢⱼ − 4B₁(nᵢρ₀ⱼ + nⱼρᵢ₀)
//!           − 2B₂(nᵢρⱼ₀ + nⱼρ₀ᵢ) + 2B₂nₖ(ρₖ₀ + ρ₀ₖ)δᵢⱼ − 4C₁ρᵢⱼ − 4C₂ρⱼᵢ
//!           + 4C₂(nᵢnₖρⱼₖ + nⱼnₖρₖᵢ − nᵢnⱼτ) + 2C₁(nᵢnₖρₖⱼ + nⱼnₖρᵢₖ)
//!           + 4C₂(τ − nₖnₗρₖₗ)δᵢⱼ
//!
//! with τ = Σρᵢᵢ. The system is linear and non-stiff at weak coupling, so
//! an adaptive embedded Dormand–Prince 5(4) pair is used for integration.

use alloc::vec::Vec;

use num_complex::Complex64;
use thiserror::Error;

use crate::math;
use crate::model::{AtomPairGeometry, Axis, ThermalBath};
use crate::spectral::{self, AtomPair, KossakowskiSet};
use crate::states::{bloch_to_matrix, ppt_min_eigenvalue, BlochState};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("step size underflow at t = {t} (h = {h}); {accepted} accepted / {rejected} rejected steps")]
    StepSizeUnderflow {
        t: f64,
        h: f64,
        accepted: usize,
        rejected: usize,
    },
    #[error("step budget exhausted after {accepted} accepted steps")]
    TooManySteps { accepted: usize },
    #[error("tolerance {0} outside the supported range [1e-12, 1e-4]")]
    ToleranceOutOfRange(f64),
    #[error("end time must be positive, got {0}")]
    NonPositiveEndTime(f64),
}

/// Integrator bookkeeping carried along with each trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    /// Largest scaled local error estimate among accepted steps (≤ 1).
    pub max_local_error: f64,
}

/// An adaptive-step solution record: strictly increasing times with the
/// matching Bloch states.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<BlochState>,
    pub stats: StepStats,
}

impl Trajectory {
    pub fn final_state(&self) -> &BlochState {
        self.states.last().expect("trajectory is never empty")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory is never empty")
    }

    /// Largest |τ(t) − τ(0)| along the trajectory. τ is a constant of
    /// motion at zero separation, so this doubles as an integration check.
    pub fn correlation_trace_drift(&self) -> f64 {
        let tau0 = self.states[0].correlation_trace();
        let mut worst = 0.0_f64;
        for s in &self.states {
            let d = math::abs(s.correlation_trace() - tau0);
            if d > worst {
                worst = d;
            }
        }
        worst
    }
}

type StateVec = [f64; 15];

fn pack(state: &BlochState) -> StateVec {
    let mut y = [0.0; 15];
    y[..3].copy_from_slice(&state.atom2);
    y[3..6].copy_from_slice(&state.atom1);
    for i in 0..3 {
        y[6 + 3 * i..9 + 3 * i].copy_from_slice(&state.correlation[i]);
    }
    y
}

fn unpack(y: &StateVec) -> BlochState {
    let mut state = BlochState::maximally_mixed();
    state.atom2.copy_from_slice(&y[..3]);
    state.atom1.copy_from_slice(&y[3..6]);
    for i in 0..3 {
        state.correlation[i].copy_from_slice(&y[6 + 3 * i..9 + 3 * i]);
    }
    state
}

fn rhs_vec(y: &StateVec, k: &KossakowskiSet, n: &Axis) -> StateVec {
    // p = ρ₀ᵢ (atom 2), q = ρᵢ₀ (atom 1), r = ρᵢⱼ.
    let p = [y[0], y[1], y[2]];
    let q = [y[3], y[4], y[5]];
    let r = |i: usize, j: usize| y[6 + 3 * i + j];
    let tau = r(0, 0) + r(1, 1) + r(2, 2);

    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let n_dot_p = dot(n, &p);
    let n_dot_q = dot(n, &q);
    // (r n)ᵢ = Σⱼ rᵢⱼ nⱼ and (rᵀ n)ᵢ = Σⱼ rⱼᵢ nⱼ.
    let mut rn = [0.0; 3];
    let mut rtn = [0.0; 3];
    for i in 0..3 {
        for j in 0..3 {
            rn[i] += r(i, j) * n[j];
            rtn[i] += r(j, i) * n[j];
        }
    }
    let n_r_n = dot(n, &rn);

    let mut dy = [0.0; 15];
    for i in 0..3 {
        dy[i] = -4.0 * k.a1 * p[i] - 4.0 * k.b1 * n[i] - 2.0 * k.b2 * n[i] * tau
            + 2.0 * k.b2 * rn[i]
            - 2.0 * k.c1 * p[i]
            + 2.0 * k.c1 * n[i] * n_dot_p;
        dy[3 + i] = -4.0 * k.a1 * q[i] - 4.0 * k.b1 * n[i] - 2.0 * k.b2 * n[i] * tau
            + 2.0 * k.b2 * rtn[i]
            - 2.0 * k.c1 * q[i]
            + 2.0 * k.c1 * n[i] * n_dot_q;
    }
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            dy[6 + 3 * i + j] = -8.0 * k.a1 * r(i, j) - 4.0 * k.a2 * r(j, i)
                + 4.0 * k.a2 * tau * delta
                - 4.0 * k.b1 * (n[i] * p[j] + n[j] * q[i])
                - 2.0 * k.b2 * (n[i] * q[j] + n[j] * p[i])
                + 2.0 * k.b2 * (n_dot_p + n_dot_q) * delta
                - 4.0 * k.c1 * r(i, j)
                - 4.0 * k.c2 * r(j, i)
                + 4.0 * k.c2 * (n[i] * rn[j] + n[j] * rtn[i] - n[i] * n[j] * tau)
                + 2.0 * k.c1 * (n[i] * rtn[j] + n[j] * rn[i])
                + 4.0 * k.c2 * (tau - n_r_n) * delta;
        }
    }
    dy
}

/// Time derivative of the Bloch components under the dissipator. The
/// returned `BlochState` holds d/dt values, not a state.
pub fn lindblad_rhs(state: &BlochState, coeffs: &KossakowskiSet, axis: Axis) -> BlochState {
    unpack(&rhs_vec(&pack(state), coeffs, &axis))
}

// Dormand–Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b − b̂: weights of the embedded 4th-order error estimate.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const MAX_STEPS: usize = 50_000_000;

struct Dopri5<'a> {
    coeffs: &'a KossakowskiSet,
    axis: Axis,
    tol: f64,
    t: f64,
    y: StateVec,
    k1: StateVec,
    h: f64,
    stats: StepStats,
}

fn axpy(y: &StateVec, h: f64, terms: &[(f64, &StateVec)]) -> StateVec {
    let mut out = *y;
    for (coeff, k) in terms {
        for (o, v) in out.iter_mut().zip(k.iter()) {
            *o += h * coeff * v;
        }
    }
    out
}

impl<'a> Dopri5<'a> {
    fn new(y0: StateVec, coeffs: &'a KossakowskiSet, axis: Axis, tol: f64) -> Self {
        let k1 = rhs_vec(&y0, coeffs, &axis);
        // Initial step from the usual |y|/|y'| heuristic, scaled down hard;
        // the controller recovers the right magnitude within a few steps.
        let norm = |v: &StateVec| {
            let mut s = 0.0;
            for e in v {
                s += e * e;
            }
            math::sqrt(s / 15.0)
        };
        let d0 = norm(&y0).max(1e-3);
        let d1 = norm(&k1).max(1e-12);
        let h = (0.01 * d0 / d1).min(1e6 / d1) * math::powf(tol / 1e-6, 0.2);
        Dopri5 {
            coeffs,
            axis,
            tol,
            t: 0.0,
            y: y0,
            k1,
            h,
            stats: StepStats::default(),
        }
    }

    /// One accepted step of size ≤ `h_max`; returns the step actually taken.
    fn step(&mut self, h_max: f64) -> Result<f64, DynamicsError> {
        let mut h = self.h.min(h_max);
        loop {
            if !(h > 0.0) || self.t + h == self.t {
                return Err(DynamicsError::StepSizeUnderflow {
                    t: self.t,
                    h,
                    accepted: self.stats.accepted,
                    rejected: self.stats.rejected,
                });
            }
            let f = |y: &StateVec| rhs_vec(y, self.coeffs, &self.axis);
            let k1 = self.k1;
            let k2 = f(&axpy(&self.y, h, &[(A21, &k1)]));
            let k3 = f(&axpy(&self.y, h, &[(A31, &k1), (A32, &k2)]));
            let k4 = f(&axpy(&self.y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = f(&axpy(
                &self.y,
                h,
                &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
            ));
            let k6 = f(&axpy(
                &self.y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ));
            let y_new = axpy(
                &self.y,
                h,
                &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
            );
            let k7 = f(&y_new);

            let mut err_sq = 0.0;
            for i in 0..15 {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                        + E7 * k7[i]);
                let scale = self.tol * (1.0 + math::abs(self.y[i]).max(math::abs(y_new[i])));
                err_sq += (e / scale) * (e / scale);
            }
            let err = math::sqrt(err_sq / 15.0);

            if err <= 1.0 {
                self.t += h;
                self.y = y_new;
                self.k1 = k7; // FSAL
                self.stats.accepted += 1;
                if err > self.stats.max_local_error {
                    self.stats.max_local_error = err;
                }
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * math::powf(err, -0.2)).clamp(0.2, 5.0)
                };
                self.h = h * factor;
                return Ok(h);
            }
            self.stats.rejected += 1;
            h *= (0.9 * math::powf(err, -0.2)).clamp(0.2, 1.0);
        }
    }
}

fn check_args(t_end: f64, tol: f64) -> Result<(), DynamicsError> {
    if !(t_end > 0.0) || !t_end.is_finite() {
        return Err(DynamicsError::NonPositiveEndTime(t_end));
    }
    if !(1e-12..=1e-4).contains(&tol) {
        return Err(DynamicsError::ToleranceOutOfRange(tol));
    }
    Ok(())
}

/// Integrate the master equation from `initial` to `t_end`, recording every
/// accepted step. Per-step local error is held at `tol` (relative, with a
/// unit absolute floor — Bloch components are O(1)).
pub fn evolve(
    initial: &BlochState,
    coeffs: &KossakowskiSet,
    axis: Axis,
    t_end: f64,
    tol: f64,
) -> Result<Trajectory, DynamicsError> {
    check_args(t_end, tol)?;
    let mut solver = Dopri5::new(pack(initial), coeffs, axis, tol);
    let mut times = Vec::new();
    let mut states = Vec::new();
    times.push(0.0);
    states.push(*initial);
    while solver.t < t_end {
        solver.step(t_end - solver.t)?;
        times.push(solver.t);
        states.push(unpack(&solver.y));
        if solver.stats.accepted > MAX_STEPS {
            return Err(DynamicsError::TooManySteps {
                accepted: solver.stats.accepted,
            });
        }
    }
    Ok(Trajectory {
        times,
        states,
        stats: solver.stats,
    })
}

/// Integrate and sample the solution exactly at the given times (which must
/// be non-negative and strictly increasing). Steps are clamped to land on
/// each sample point, so no interpolation is involved.
pub fn evolve_at_times(
    initial: &BlochState,
    coeffs: &KossakowskiSet,
    axis: Axis,
    times: &[f64],
    tol: f64,
) -> Result<Trajectory, DynamicsError> {
    let t_end = times.last().copied().unwrap_or(0.0);
    if times.is_empty() || times.windows(2).any(|w| w[1] <= w[0]) || times[0] < 0.0 {
        return Err(DynamicsError::NonPositiveEndTime(t_end));
    }
    check_args(t_end.max(f64::MIN_POSITIVE), tol)?;
    let mut solver = Dopri5::new(pack(initial), coeffs, axis, tol);
    let mut out_times = Vec::with_capacity(times.len());
    let mut out_states = Vec::with_capacity(times.len());
    for &target in times {
        while solver.t < target {
            solver.step(target - solver.t)?;
            if solver.stats.accepted > MAX_STEPS {
                return Err(DynamicsError::TooManySteps {
                    accepted: solver.stats.accepted,
                });
            }
        }
        out_times.push(target);
        out_states.push(unpack(&solver.y));
    }
    Ok(Trajectory {
        times: out_times,
        states: out_states,
        stats: solver.stats,
    })
}

/// The test vectors entering the entanglement-creation inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessVectors {
    pub u: [Complex64; 3],
    pub v: [Complex64; 3],
}

impl Default for WitnessVectors {
    /// The simple choice u = v = (1, −i, 0).
    fn default() -> Self {
        let w = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 0.0),
        ];
        WitnessVectors { u: w, v: w }
    }
}

/// Entanglement is created at t = 0⁺ iff
///
///   ⟨u|C⁽¹¹⁾|u⟩ · ⟨v|(C⁽²²⁾)ᵀ|v⟩ < |⟨u|Re C⁽¹²⁾|v⟩|²
///
/// evaluated on the Kossakowski blocks for the given axis.
pub fn creation_condition(
    coeffs: &KossakowskiSet,
    axis: Axis,
    witnesses: &WitnessVectors,
) -> bool {
    let same = coeffs.matrix(axis, AtomPair::Same).0;
    let cross = coeffs.matrix(axis, AtomPair::Cross).0;
    let quad = |m: &[[Complex64; 3]; 3], left: &[Complex64; 3], right: &[Complex64; 3]| {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                acc += left[i].conj() * m[i][j] * right[j];
            }
        }
        acc
    };
    let u = &witnesses.u;
    let v = &witnesses.v;
    let same_t = crate::linalg::transpose(&same);
    let lhs = quad(&same, u, u).re * quad(&same_t, v, v).re;
    let mut re_cross = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            re_cross[i][j] = Complex64::new(cross[i][j].re, 0.0);
        }
    }
    let rhs = quad(&re_cross, u, v).norm_sqr();
    lhs < rhs
}

/// The same condition in closed form: (A₂/A₁)² + (B₁/A₁)² > 1.
pub fn creation_condition_closed(geometry: &AtomPairGeometry, bath: &ThermalBath) -> bool {
    spectral::ratio_a_squared(geometry) + spectral::ratio_b_squared(bath, geometry.omega) > 1.0
}

/// Numerical realization of the birth criterion: evolve the separable state
/// |+⟩⟨+|⊗|−⟩⟨−| for a short interval `dt` (default 1e-3/A₁) and return the
/// finite-difference slope of the minimum partial-transpose eigenvalue.
/// A negative slope signals entanglement birth.
pub fn birth_witness_slope(
    coeffs: &KossakowskiSet,
    axis: Axis,
    dt: Option<f64>,
) -> Result<f64, DynamicsError> {
    let dt = dt.unwrap_or_else(|| 1e-3 / coeffs.a1);
    let initial = BlochState::excited_ground(axis);
    let before = ppt_min_eigenvalue(&bloch_to_matrix(&initial));
    if coeffs.a1 == 0.0
        && coeffs.a2 == 0.0
        && coeffs.b1 == 0.0
        && coeffs.b2 == 0.0
        && coeffs.c1 == 0.0
        && coeffs.c2 == 0.0
    {
        return Ok(0.0);
    }
    let trajectory = evolve_at_times(&initial, coeffs, axis, &[dt], 1e-12)?;
    let after = ppt_min_eigenvalue(&bloch_to_matrix(trajectory.final_state()));
    Ok((after - before) / dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium;
    use crate::model::{AtomPairGeometry, BoundaryDistance, ThermalBath};
    use crate::states::concurrence;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    const E3: Axis = [0.0, 0.0, 1.0];

    fn environment(
        omega_l: f64,
        z: BoundaryDistance,
        beta_omega: f64,
    ) -> (AtomPairGeometry, ThermalBath) {
        let g = AtomPairGeometry::new(1.0, omega_l, z, E3).unwrap();
        let bath = ThermalBath::new(beta_omega).unwrap();
        (g, bath)
    }

    #[test]
    fn zero_coefficients_give_zero_derivative() {
        let zero = KossakowskiSet {
            a1: 0.0,
            b1: 0.0,
            c1: 0.0,
            a2: 0.0,
            b2: 0.0,
            c2: 0.0,
        };
        let state = BlochState::excited_ground(E3);
        let d = lindblad_rhs(&state, &zero, E3);
        assert_eq!(d, BlochState::maximally_mixed());
        assert_eq!(birth_witness_slope(&zero, E3, Some(1.0)).unwrap(), 0.0);
    }

    #[test]
    fn equilibrium_is_a_fixed_point_of_the_rhs() {
        let (g, bath) = environment(2.0, BoundaryDistance::Finite(1.0), 1.4);
        let k = KossakowskiSet::new(&g, &bath);
        let state = equilibrium::asymptotic_state(&k, E3).unwrap();
        let d = pack(&lindblad_rhs(&state, &k, E3));
        for v in d {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn correlation_trace_is_conserved_at_zero_separation() {
        let (g, bath) = environment(0.0, BoundaryDistance::Finite(0.8), 2.0);
        let k = KossakowskiSet::new(&g, &bath);
        let state = BlochState {
            atom1: [0.3, -0.1, 0.2],
            atom2: [0.0, 0.2, -0.5],
            correlation: [[0.1, 0.05, 0.0], [0.0, -0.2, 0.1], [0.02, 0.0, 0.3]],
        };
        let d = lindblad_rhs(&state, &k, E3);
        assert_abs_diff_eq!(d.correlation_trace(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn evolution_from_equilibrium_stays_put() {
        let (g, bath) = environment(2.5, BoundaryDistance::Finite(1.2), 1.0);
        let k = KossakowskiSet::new(&g, &bath);
        let eq = equilibrium::asymptotic_state(&k, E3).unwrap();
        let traj = evolve(&eq, &k, E3, 5.0 / k.a1, 1e-10).unwrap();
        let final_ = pack(traj.final_state());
        let start = pack(&eq);
        for (a, b) in final_.iter().zip(start.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-9);
        }
    }

    #[test]
    fn long_evolution_reaches_the_closed_form_equilibrium() {
        let (g, bath) = environment(3.0, BoundaryDistance::Finite(2.0), 0.9);
        let k = KossakowskiSet::new(&g, &bath);
        let eq = pack(&equilibrium::asymptotic_state(&k, E3).unwrap());
        let traj = evolve(&BlochState::excited_ground(E3), &k, E3, 30.0 / k.a1, 1e-10).unwrap();
        let y = pack(traj.final_state());
        for (a, b) in y.iter().zip(eq.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-7);
        }
    }

    #[test]
    fn tolerance_halving_improves_accuracy() {
        let (g, bath) = environment(2.0, BoundaryDistance::Finite(0.7), 1.1);
        let k = KossakowskiSet::new(&g, &bath);
        let initial = BlochState::excited_ground(E3);
        let t_end = 2.0 / k.a1;
        let reference = evolve(&initial, &k, E3, t_end, 1e-12).unwrap();
        let reference = pack(reference.final_state());
        let mut previous = f64::INFINITY;
        for tol in [1e-5, 1e-7, 1e-9] {
            let traj = evolve(&initial, &k, E3, t_end, tol).unwrap();
            let y = pack(traj.final_state());
            let err = y
                .iter()
                .zip(reference.iter())
                .map(|(a, b)| math::abs(a - b))
                .fold(0.0, f64::max);
            assert!(
                err < previous || err < 1e-12,
                "error {err} did not improve on {previous} at tol {tol}"
            );
            previous = err;
        }
    }

    #[test]
    fn trajectory_states_remain_physical() {
        let (g, bath) = environment(1.8, BoundaryDistance::Finite(0.5), 2.3);
        let k = KossakowskiSet::new(&g, &bath);
        let traj = evolve(&BlochState::excited_ground(E3), &k, E3, 10.0 / k.a1, 1e-9).unwrap();
        for state in traj.states.iter().step_by(7) {
            let rho = bloch_to_matrix(state);
            assert!(rho.min_eigenvalue() >= -1e-8);
            assert_eq!(rho.hermiticity_defect(), 0.0);
            assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn boundary_decouples_far_from_the_plate() {
        let (g_free, bath) = environment(2.0, BoundaryDistance::Unbounded, 1.5);
        let g_far = AtomPairGeometry::new(1.0, 2.0, BoundaryDistance::Finite(2.0e6), E3).unwrap();
        let k_free = KossakowskiSet::new(&g_free, &bath);
        let k_far = KossakowskiSet::new(&g_far, &bath);
        let initial = BlochState::excited_ground(E3);
        let t_end = 5.0 / k_free.a1;
        let times = [0.2 * t_end, 0.6 * t_end, t_end];
        let free = evolve_at_times(&initial, &k_free, E3, &times, 1e-10).unwrap();
        let far = evolve_at_times(&initial, &k_far, E3, &times, 1e-10).unwrap();
        for (a, b) in free.states.iter().zip(far.states.iter()) {
            let (ya, yb) = (pack(a), pack(b));
            for (u, v) in ya.iter().zip(yb.iter()) {
                assert_abs_diff_eq!(u, v, epsilon = 1e-5);
            }
        }
    }

    #[test]
    fn creation_condition_matches_closed_form() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let witnesses = WitnessVectors::default();
        for _ in 0..1000 {
            let omega_l = rng.random_range(0.1..10.0);
            let z_over_l = rng.random_range(0.05..50.0);
            let beta_omega = rng.random_range(0.1..20.0);
            let g = AtomPairGeometry::new(
                1.0,
                omega_l,
                BoundaryDistance::Finite(z_over_l * omega_l),
                E3,
            )
            .unwrap();
            let bath = ThermalBath::new(beta_omega).unwrap();
            let k = KossakowskiSet::new(&g, &bath);
            let closed = creation_condition_closed(&g, &bath);
            // Skip the razor edge where the two formulations may round apart.
            let margin = spectral::ratio_a_squared(&g) + spectral::ratio_b_squared(&bath, 1.0) - 1.0;
            if math::abs(margin) < 1e-12 {
                continue;
            }
            assert_eq!(creation_condition(&k, E3, &witnesses), closed);
        }
    }

    #[test]
    fn creation_always_holds_at_zero_temperature_or_zero_separation() {
        let bath0 = ThermalBath::zero_temperature();
        for &(l, z) in &[(0.7, 0.3), (4.0, 10.0), (9.0, 0.05)] {
            let g = AtomPairGeometry::new(1.0, l, BoundaryDistance::Finite(z), E3).unwrap();
            assert!(creation_condition_closed(&g, &bath0));
        }
        for &bw in &[0.2, 1.0, 15.0] {
            let g = AtomPairGeometry::new(1.0, 0.0, BoundaryDistance::Finite(1.0), E3).unwrap();
            let bath = ThermalBath::new(bw).unwrap();
            assert!(creation_condition_closed(&g, &bath));
        }
    }

    #[test]
    fn birth_slope_sign_follows_the_condition() {
        // One clearly-entangling point and one clearly not.
        let (g_yes, bath_yes) = environment(1.0, BoundaryDistance::Unbounded, 10.0);
        let k = KossakowskiSet::new(&g_yes, &bath_yes);
        assert!(creation_condition_closed(&g_yes, &bath_yes));
        assert!(birth_witness_slope(&k, E3, None).unwrap() < 0.0);

        let (g_no, bath_no) = environment(6.0, BoundaryDistance::Unbounded, 0.3);
        assert!(!creation_condition_closed(&g_no, &bath_no));
        let k = KossakowskiSet::new(&g_no, &bath_no);
        assert!(birth_witness_slope(&k, E3, None).unwrap() >= 0.0);
    }

    #[test]
    fn zero_separation_evolution_keeps_its_entanglement() {
        // L = 0 at zero temperature from |+⟩⊗|−⟩: τ = −1 is conserved and
        // the state settles at concurrence ½.
        let g = AtomPairGeometry::new(1.0, 0.0, BoundaryDistance::Unbounded, E3).unwrap();
        let k = KossakowskiSet::new(&g, &ThermalBath::zero_temperature());
        let traj = evolve(&BlochState::excited_ground(E3), &k, E3, 30.0 / k.a1, 1e-10).unwrap();
        assert!(traj.correlation_trace_drift() <= 1e-10);
        let c = concurrence(&bloch_to_matrix(traj.final_state())).unwrap();
        assert_relative_eq!(c, 0.5, max_relative = 1e-3);
    }

    #[test]
    fn invalid_arguments_are_rejected() {
        let (g, bath) = environment(2.0, BoundaryDistance::Unbounded, 1.0);
        let k = KossakowskiSet::new(&g, &bath);
        let s = BlochState::maximally_mixed();
        assert!(matches!(
            evolve(&s, &k, E3, -1.0, 1e-8),
            Err(DynamicsError::NonPositiveEndTime(_))
        ));
        assert!(matches!(
            evolve(&s, &k, E3, 1.0, 1e-3),
            Err(DynamicsError::ToleranceOutOfRange(_))
        ));
        assert!(evolve_at_times(&s, &k, E3, &[1.0, 0.5], 1e-8).is_err());
    }
}
