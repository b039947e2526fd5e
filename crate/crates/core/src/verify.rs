//! Closed form vs. numerical oracle checks for a single current strength.
//!
//! Tolerances are fixed constants; a check passes when its measured maximum
//! error is at or below its tolerance.

use serde::Serialize;

use crate::classify::{sign_table, ClassifyError, Sign};
use crate::closedform::{ClosedFormError, ClosedFormTrajectory};
use crate::kinematics::{
    first_integral, integrate, rhs_lab, to_moving_frame, FrameState, KinematicsError,
    OdeSettings, ParticleState,
};

/// Regime representatives exercised by `verify --all`.
pub const REPRESENTATIVE_CURRENTS: [f64; 9] = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0];

pub const ORACLE_TOLERANCE: f64 = 1e-6;
pub const RK4_INVARIANT_TOLERANCE: f64 = 1e-9;
pub const CLOSED_FORM_INVARIANT_TOLERANCE: f64 = 1e-10;
pub const ODE_RESIDUAL_TOLERANCE: f64 = 1e-10;
/// Samples closer than this to the equilibrium level set `cos X + c0 − 1 = 0`
/// are left out of first-integral checks.
pub const LEVEL_SET_MARGIN: f64 = 1e-3;
pub const RESIDUAL_SAMPLES: usize = 1000;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub x0: f64,
    pub z0: f64,
    pub t_end: f64,
    /// RK4 step for the oracle comparison.
    pub oracle_step: f64,
    /// RK4 step for the first-integral check.
    pub invariant_step: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            x0: 0.3,
            z0: 0.1,
            t_end: 3.0,
            oracle_step: 1e-5,
            invariant_step: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub c0: f64,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, c0: f64, max_error: f64, tolerance: f64) -> Self {
        Self {
            name,
            c0,
            max_error,
            tolerance,
            passed: max_error <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    fn from_checks(checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self { checks, passed }
    }
}

/// Max abs deviation `(dx, dz)` between the closed form and an RK4 path.
pub fn oracle_gap(
    traj: &ClosedFormTrajectory,
    path: &[ParticleState],
) -> (f64, f64) {
    path.iter().fold((0.0f64, 0.0f64), |(ex, ez), p| {
        let (x, z) = traj.evaluate(p.t);
        (ex.max((x - p.x).abs()), ez.max((z - p.z).abs()))
    })
}

/// Max relative change of the first integral over the states, skipping
/// states within [`LEVEL_SET_MARGIN`] of the equilibrium level set.
pub fn first_integral_drift(states: impl IntoIterator<Item = FrameState>, c0: f64) -> f64 {
    let mut reference = None;
    let mut worst = 0.0f64;
    for f in states {
        if (f.phase.cos() + c0 - 1.0).abs() <= LEVEL_SET_MARGIN {
            continue;
        }
        let value = first_integral(&f, c0);
        match reference {
            None => reference = Some(value),
            Some(r) => worst = worst.max(((value - r) / r).abs()),
        }
    }
    worst
}

/// Deterministic well-spread times in `[lo, hi]` (additive golden-ratio
/// sequence).
pub fn spread_times(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let golden = 0.618_033_988_749_894_9;
    (1..=n).map(move |i| lo + (hi - lo) * (i as f64 * golden).fract())
}

/// Max ODE residual of the analytic derivatives; the `z` component is
/// scaled by `max(1, z)`.
pub fn ode_residual(traj: &ClosedFormTrajectory, times: impl IntoIterator<Item = f64>) -> f64 {
    let c0 = traj.current();
    times.into_iter().fold(0.0f64, |worst, t| {
        let (x, z) = traj.evaluate(t);
        let (dx, dz) = traj.derivatives(t);
        let (fx, fz) = rhs_lab(&ParticleState::new(x, z, t), c0);
        worst
            .max((dx - fx).abs())
            .max((dz - fz).abs() / z.abs().max(1.0))
    })
}

/// Number of sign-table intervals whose interior sign pattern disagrees
/// with the analytic derivatives.
pub fn sign_table_mismatches(traj: &ClosedFormTrajectory) -> Result<usize, ClassifyError> {
    let (x0, _) = traj.initial();
    let table = sign_table(traj.current(), x0)?;
    let mut bad = 0;
    for iv in &table {
        for shift in -1..=1 {
            let t = iv.interior_time(traj, shift);
            let (dx, dz) = traj.derivatives(t);
            if Sign::of(dx) != iv.x_sign || Sign::of(dz) != iv.z_sign {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

pub fn verify_current(c0: f64, config: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    let traj = ClosedFormTrajectory::build(c0, config.x0, config.z0)?;
    let start = ParticleState::new(config.x0, config.z0, 0.0);
    let mut checks = Vec::new();

    let path = integrate(start, c0, config.t_end, OdeSettings::new(config.oracle_step)?)?;
    let (ex, ez) = oracle_gap(&traj, &path);
    checks.push(CheckResult::new("oracle_x", c0, ex, ORACLE_TOLERANCE));
    checks.push(CheckResult::new("oracle_z", c0, ez, ORACLE_TOLERANCE));

    let path = integrate(start, c0, config.t_end, OdeSettings::new(config.invariant_step)?)?;
    let drift = first_integral_drift(path.iter().map(to_moving_frame), c0);
    checks.push(CheckResult::new(
        "first_integral_rk4",
        c0,
        drift,
        RK4_INVARIANT_TOLERANCE,
    ));

    let frames = path
        .iter()
        .map(|p| FrameState::new(traj.phase(p.t), traj.evaluate(p.t).1));
    checks.push(CheckResult::new(
        "first_integral_closed_form",
        c0,
        first_integral_drift(frames, c0),
        CLOSED_FORM_INVARIANT_TOLERANCE,
    ));

    let residual = ode_residual(&traj, spread_times(-config.t_end, config.t_end, RESIDUAL_SAMPLES));
    checks.push(CheckResult::new(
        "ode_residual",
        c0,
        residual,
        ODE_RESIDUAL_TOLERANCE,
    ));

    let mismatches = sign_table_mismatches(&traj)?;
    checks.push(CheckResult::new("sign_table", c0, mismatches as f64, 0.0));

    Ok(VerifyReport::from_checks(checks))
}

pub fn verify_all(config: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    let mut checks = Vec::new();
    for &c0 in &REPRESENTATIVE_CURRENTS {
        checks.extend(verify_current(c0, config)?.checks);
    }
    Ok(VerifyReport::from_checks(checks))
}
