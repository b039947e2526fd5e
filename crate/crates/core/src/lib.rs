//! Exact and numerical particle paths under linear shallow-water waves.
//!
//! The wave is the right-moving cosine profile `η = cos(2π(x − t))` riding
//! on a uniform current of strength `c0`. Modules:
//!
//! * [`wavefield`]: the linear solution fields and unit conversions.
//! * [`kinematics`]: particle ODEs, RK4 integrator, first integral.
//! * [`closedform`]: exact trajectories for every current regime.
//! * [`classify`]: regime taxonomy, sign tables, drift and loop detection.
//! * [`verify`]: closed form vs. numerical oracle checks with fixed tolerances.

pub mod classify;
pub mod closedform;
pub mod kinematics;
pub mod verify;
pub mod wavefield;

pub use classify::{
    classify, detect_loop, measure_drift, sign_table, DriftReport, LoopReport, Regime,
    RegimeKind, Sign, SignInterval, SignVariable,
};
pub use closedform::{Branch, Case, ClosedFormTrajectory};
pub use kinematics::{
    first_integral, from_moving_frame, integrate, rhs_lab, rhs_moving, to_moving_frame,
    FrameState, OdeSettings, ParticleState,
};
pub use wavefield::{PhysicalScales, Quantity, WaveField};

use std::f64::consts::PI;

pub(crate) const TWO_PI: f64 = 2.0 * PI;
