//! Particle motion ODEs and the fixed-step RK4 integrator used as the
//! numerical oracle for the closed forms.
//!
//! Lab frame:
//!
//! ```text
//! dx/dt = cos(2π(x − t)) + c0
//! dz/dt = 2π z sin(2π(x − t))
//! ```
//!
//! Moving frame `X = 2π(x − t)`, `Z = z`:
//!
//! ```text
//! dX/dt = 2π cos X + 2π(c0 − 1)
//! dZ/dt = 2π Z sin X
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::TWO_PI;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KinematicsError {
    #[error("step size must be finite and positive, got {0}")]
    InvalidStep(f64),
    #[error("integration bounds must be finite (start {start}, end {end})")]
    InvalidSpan { start: f64, end: f64 },
    #[error("non-finite state at step {step} (t = {t}, x = {x}, z = {z})")]
    NonFinite { step: usize, t: f64, x: f64, z: f64 },
}

/// Lab-frame particle position at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleState {
    pub x: f64,
    pub z: f64,
    pub t: f64,
}

impl ParticleState {
    pub fn new(x: f64, z: f64, t: f64) -> Self {
        Self { x, z, t }
    }
}

/// Moving-frame coordinates. `phase` is unwrapped (not reduced mod 2π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameState {
    pub phase: f64,
    pub height: f64,
}

impl FrameState {
    pub fn new(phase: f64, height: f64) -> Self {
        Self { phase, height }
    }
}

/// Settings for the fixed-step classical RK4 integrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeSettings {
    step: f64,
}

impl OdeSettings {
    pub fn new(step: f64) -> Result<Self, KinematicsError> {
        if step.is_finite() && step > 0.0 {
            Ok(Self { step })
        } else {
            Err(KinematicsError::InvalidStep(step))
        }
    }

    pub fn step(&self) -> f64 {
        self.step
    }
}

impl Default for OdeSettings {
    fn default() -> Self {
        Self { step: 1e-4 }
    }
}

pub fn rhs_lab(state: &ParticleState, c0: f64) -> (f64, f64) {
    let phase = TWO_PI * (state.x - state.t);
    (phase.cos() + c0, TWO_PI * state.z * phase.sin())
}

pub fn rhs_moving(state: &FrameState, c0: f64) -> (f64, f64) {
    let (s, c) = state.phase.sin_cos();
    (TWO_PI * c + TWO_PI * (c0 - 1.0), TWO_PI * state.height * s)
}

pub fn to_moving_frame(p: &ParticleState) -> FrameState {
    FrameState {
        phase: TWO_PI * (p.x - p.t),
        height: p.z,
    }
}

pub fn from_moving_frame(f: &FrameState, t: f64) -> ParticleState {
    ParticleState {
        x: f.phase / TWO_PI + t,
        z: f.height,
        t,
    }
}

/// `Z (cos X + c0 − 1)`, constant along exact trajectories.
pub fn first_integral(f: &FrameState, c0: f64) -> f64 {
    f.height * (f.phase.cos() + c0 - 1.0)
}

/// Number of equal steps covering `span` with steps no longer than `h`.
fn step_count(span: f64, h: f64) -> usize {
    let ratio = span.abs() / h;
    // absorb representation error so that e.g. 3 / 1e-5 gives 300000 steps
    let n = (ratio * (1.0 - 4.0 * f64::EPSILON)).ceil();
    n.max(1.0) as usize
}

/// Integrate the lab-frame system from `initial` to `t_end` with classical
/// RK4. The step is shrunk slightly so that the grid lands on `t_end`;
/// backward integration (`t_end < initial.t`) uses a negative step. Returns
/// every grid point including both endpoints.
pub fn integrate(
    initial: ParticleState,
    c0: f64,
    t_end: f64,
    settings: OdeSettings,
) -> Result<Vec<ParticleState>, KinematicsError> {
    let t0 = initial.t;
    if !t0.is_finite() || !t_end.is_finite() {
        return Err(KinematicsError::InvalidSpan {
            start: t0,
            end: t_end,
        });
    }
    let span = t_end - t0;
    if span == 0.0 {
        return Ok(vec![initial]);
    }
    let n = step_count(span, settings.step);
    let dt = span / n as f64;

    let mut samples = Vec::with_capacity(n + 1);
    samples.push(initial);
    let (mut x, mut z) = (initial.x, initial.z);
    for i in 0..n {
        let t = t0 + i as f64 * dt;
        let f = |x: f64, z: f64, t: f64| rhs_lab(&ParticleState { x, z, t }, c0);
        let (k1x, k1z) = f(x, z, t);
        let (k2x, k2z) = f(x + 0.5 * dt * k1x, z + 0.5 * dt * k1z, t + 0.5 * dt);
        let (k3x, k3z) = f(x + 0.5 * dt * k2x, z + 0.5 * dt * k2z, t + 0.5 * dt);
        let (k4x, k4z) = f(x + dt * k3x, z + dt * k3z, t + dt);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        z += dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);

        let t_next = if i + 1 == n {
            t_end
        } else {
            t0 + (i + 1) as f64 * dt
        };
        if !(x.is_finite() && z.is_finite()) {
            return Err(KinematicsError::NonFinite {
                step: i + 1,
                t: t_next,
                x,
                z,
            });
        }
        samples.push(ParticleState { x, z, t: t_next });
    }
    Ok(samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn lab_rhs_examples() {
        assert_eq!(rhs_lab(&ParticleState::new(0.7, 3.0, 0.7), 0.0), (1.0, 0.0));
        assert_eq!(rhs_lab(&ParticleState::new(0.33, 0.0, 1.9), -4.2).1, 0.0);
        let (dx, dz) = rhs_lab(&ParticleState::new(0.25, 1.0, 0.0), -0.5);
        assert_abs_diff_eq!(dx, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(dz, 2.0 * PI, epsilon = 1e-14);
    }

    #[test]
    fn moving_rhs_examples() {
        assert_eq!(rhs_moving(&FrameState::new(0.0, 1.0), 0.0), (0.0, 0.0));
        let (dx, dz) = rhs_moving(&FrameState::new(PI, 1.0), 2.0);
        assert_abs_diff_eq!(dx, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(dz, 0.0, epsilon = 1e-14);
        let (dx, dz) = rhs_moving(&FrameState::new(PI / 2.0, 2.0), 1.0);
        assert_abs_diff_eq!(dx, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(dz, 4.0 * PI, epsilon = 1e-14);
    }

    #[test]
    fn frame_examples() {
        let f = to_moving_frame(&ParticleState::new(1.2, 0.4, 1.2));
        assert_eq!(f, FrameState::new(0.0, 0.4));
        let f = to_moving_frame(&ParticleState::new(0.5, 1.0, 0.0));
        assert_abs_diff_eq!(f.phase, PI, epsilon = 1e-15);
        assert_eq!(f.height, 1.0);
    }

    #[test]
    fn first_integral_examples() {
        assert_abs_diff_eq!(
            first_integral(&FrameState::new(PI, 1.0), 0.0),
            -2.0,
            epsilon = 1e-15
        );
        let c0: f64 = 0.4;
        let eq = (1.0 - c0).acos();
        assert_abs_diff_eq!(first_integral(&FrameState::new(eq, 7.0), c0), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn settings_validation() {
        assert!(OdeSettings::new(0.0).is_err());
        assert!(OdeSettings::new(-1e-3).is_err());
        assert!(OdeSettings::new(f64::INFINITY).is_err());
        assert_eq!(OdeSettings::default().step(), 1e-4);
    }

    #[test]
    fn grid_hits_both_endpoints() {
        let s = OdeSettings::new(1e-5).unwrap();
        let path = integrate(ParticleState::new(0.3, 0.1, 0.0), 0.0, 3.0, s).unwrap();
        assert_eq!(path.len(), 300_001);
        assert_eq!(path.first().unwrap().t, 0.0);
        assert_eq!(path.last().unwrap().t, 3.0);
        assert!(path.windows(2).all(|w| w[1].t > w[0].t));

        let s = OdeSettings::new(0.3).unwrap();
        let path = integrate(ParticleState::new(0.3, 0.1, 0.0), 0.0, 1.0, s).unwrap();
        assert_eq!(path.len(), 5);
    }

    #[test]
    fn backward_integration_retraces() {
        let s = OdeSettings::new(1e-3).unwrap();
        let fwd = integrate(ParticleState::new(0.3, 0.1, 0.0), 0.7, 1.0, s).unwrap();
        let end = *fwd.last().unwrap();
        let back = integrate(end, 0.7, 0.0, s).unwrap();
        assert!(back.windows(2).all(|w| w[1].t < w[0].t));
        let start = back.last().unwrap();
        assert_eq!(start.t, 0.0);
        assert_abs_diff_eq!(start.x, 0.3, epsilon = 1e-10);
        assert_abs_diff_eq!(start.z, 0.1, epsilon = 1e-10);
    }

    #[test]
    fn flat_bed_is_invariant() {
        let s = OdeSettings::new(1e-3).unwrap();
        let path = integrate(ParticleState::new(0.81, 0.0, 0.0), -0.4, 2.0, s).unwrap();
        assert!(path.iter().all(|p| p.z == 0.0));
    }

    #[test]
    fn equilibrium_phase_is_fixed() {
        // c0 = 1: cos X0 = 0, X0 = π/2 is a fixed point, Z = Z0 exp(2π t)
        let c0 = 1.0;
        let x0 = 0.25;
        let s = OdeSettings::new(1e-4).unwrap();
        let path = integrate(ParticleState::new(x0, 0.1, 0.0), c0, 1.0, s).unwrap();
        for p in path.iter().step_by(500) {
            let f = to_moving_frame(p);
            assert_abs_diff_eq!(f.phase, PI / 2.0, epsilon = 1e-9);
            assert_abs_diff_eq!(f.height / (0.1 * (TWO_PI * p.t).exp()), 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn non_finite_start_is_reported() {
        let s = OdeSettings::new(1e-2).unwrap();
        let err = integrate(ParticleState::new(f64::NAN, 0.1, 0.0), 0.0, 1.0, s).unwrap_err();
        assert!(matches!(err, KinematicsError::NonFinite { step: 1, .. }));
        assert!(integrate(ParticleState::new(0.0, 0.1, 0.0), 0.0, f64::NAN, s).is_err());
    }

    #[test]
    fn first_integral_drift_is_small() {
        let c0 = -0.5;
        let s = OdeSettings::new(1e-4).unwrap();
        let path = integrate(ParticleState::new(0.3, 0.1, 0.0), c0, 3.0, s).unwrap();
        let i0 = first_integral(&to_moving_frame(&path[0]), c0);
        let drift = path
            .iter()
            .map(|p| ((first_integral(&to_moving_frame(p), c0) - i0) / i0).abs())
            .fold(0.0, f64::max);
        assert!(drift <= 1e-9, "relative drift {drift:e}");
    }

    proptest! {
        #[test]
        fn frame_round_trip(x in -50.0..50.0f64, z in 0.0..10.0f64, t in -50.0..50.0f64) {
            let p = ParticleState::new(x, z, t);
            let back = from_moving_frame(&to_moving_frame(&p), t);
            prop_assert!((back.x - x).abs() <= 1e-15 * (1.0 + x.abs() + t.abs()) * 4.0);
            prop_assert_eq!(back.z, z);
            prop_assert_eq!(back.t, t);
        }

        #[test]
        fn unit_shift_in_x0(x0 in -1.0..1.0f64, z0 in 0.01..1.0f64, c0 in -3.0..3.0f64) {
            let s = OdeSettings::new(1e-2).unwrap();
            let a = integrate(ParticleState::new(x0, z0, 0.0), c0, 1.0, s).unwrap();
            let b = integrate(ParticleState::new(x0 + 1.0, z0, 0.0), c0, 1.0, s).unwrap();
            for (p, q) in a.iter().zip(&b) {
                prop_assert!((q.x - p.x - 1.0).abs() < 1e-12);
                prop_assert!((q.z - p.z).abs() <= 1e-12 * p.z.abs().max(1.0));
            }
        }

        #[test]
        fn heights_stay_positive(x0 in -1.0..1.0f64, z0 in 1e-3..1.0f64, c0 in -3.0..3.0f64) {
            let s = OdeSettings::new(1e-2).unwrap();
            let path = integrate(ParticleState::new(x0, z0, 0.0), c0, 2.0, s).unwrap();
            prop_assert!(path.iter().all(|p| p.z > 0.0));
        }

        #[test]
        fn moving_frame_is_autonomous(x0 in -1.0..1.0f64, t0 in -2.0..2.0f64, c0 in -3.0..3.0f64) {
            // same (X0, Z0) started at different times gives the same frame path
            let s = OdeSettings::new(1e-3).unwrap();
            let phase = TWO_PI * x0;
            let a = integrate(from_moving_frame(&FrameState::new(phase, 0.2), 0.0), c0, 0.5, s).unwrap();
            let b = integrate(from_moving_frame(&FrameState::new(phase, 0.2), t0), c0, t0 + 0.5, s).unwrap();
            let fa = to_moving_frame(a.last().unwrap());
            let fb = to_moving_frame(b.last().unwrap());
            prop_assert!((fa.phase - fb.phase).abs() < 1e-9);
            prop_assert!((fa.height - fb.height).abs() < 1e-9 * fa.height.max(1.0));
        }
    }
}
