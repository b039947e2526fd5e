//! Exact particle trajectories for every current strength.
//!
//! With the substitution `y = cot(X/2)` the phase equation separates and
//! integrates in closed form:
//!
//! | current            | case       | relation                              |
//! |--------------------|------------|---------------------------------------|
//! | `c0 = 0`           | `Still`    | `y = 2πt + k`                         |
//! | `c0 (c0 − 2) > 0`  | `Strong`   | `y = C tan α`, `α = −(c0 C/2)(2πt+k)` |
//! | `0 < c0 < 2`       | `Moderate` | `y = K coth β` or `y = K tanh β`, `β = (c0 K/2)(2πt+k)` |
//! | `c0 = 2`           | `Critical` | `1/y = 2πt + k`                       |
//!
//! with `C = √((c0−2)/c0)` and `K = √((2−c0)/c0)`. Fixed points of the phase
//! equation get their own `Equilibrium` case.
//!
//! The phase `X(t) = 2 arccot(y(t))` jumps by 2π whenever `y` passes through
//! infinity. Instead of tracking jumps we evaluate a continuous antiderivative
//! `g(t)` that differs from `2 arccot(y)` by a locally constant multiple of 2π
//! and use `X(t) = X0 + g(t) − g(0)`. The height follows from the first
//! integral `Z (cos X + c0 − 1) = const`, rewritten per case so that no
//! cancellation occurs near the equilibrium level set.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::TWO_PI;

/// Initial phases with `|cos X0 − (1 − c0)|` below this are treated as fixed points.
pub const EQUILIBRIUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClosedFormError {
    #[error("initial data must be finite (c0 = {c0}, x0 = {x0}, z0 = {z0})")]
    NonFinite { c0: f64, x0: f64, z0: f64 },
    #[error("initial height must be non-negative, got {0}")]
    NegativeHeight(f64),
    #[error("trajectory with c0 = {c0} is not in the {expected} regime")]
    WrongRegime { c0: f64, expected: &'static str },
}

/// Which closed form covers a moderate-current trajectory. The level sets
/// `|cot(X/2)| = K` are fixed points, so the branch never changes in time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `|cot(X/2)| > K`
    Coth,
    /// `|cot(X/2)| < K`
    Tanh,
    /// `|cot(X/2)| = K`
    Equilibrium,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::Coth => "coth",
            Branch::Tanh => "tanh",
            Branch::Equilibrium => "equilibrium",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Case {
    Still { k: f64 },
    /// `shape` is `C = √((c0 − 2)/c0)`.
    Strong { shape: f64, k: f64 },
    /// `shape` is `K = √((2 − c0)/c0)`.
    Moderate { shape: f64, k: f64, branch: Branch },
    /// `c0 = 2`, `tan(X/2) = 2πt + k`.
    Critical { k: f64 },
    /// Fixed point of the phase equation: `X(t) = X0`.
    Equilibrium,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormTrajectory {
    c0: f64,
    x0: f64,
    z0: f64,
    case: Case,
    /// `g(0)` of the continuous phase antiderivative.
    anchor: f64,
    /// Height weight at `t = 0`; `z(t) = z0 · weight(t) / weight0`.
    weight0: f64,
}

/// `arctan(C tan α)` continued across the poles of `tan`, so that it
/// increases by π whenever α does.
fn continued_arctan(shape: f64, alpha: f64) -> f64 {
    let turns = (alpha / PI).round();
    let r = alpha - turns * PI;
    let (s, c) = r.sin_cos();
    // |r| ≤ π/2 so cos r ≥ 0 and atan2 stays on the principal branch
    turns * PI + (shape * s).atan2(c)
}

/// Principal inverse cotangent with range `(0, π)`.
pub fn arccot(y: f64) -> f64 {
    FRAC_PI_2 - y.atan()
}

impl ClosedFormTrajectory {
    /// Select the case for `c0` and fix the integration constant from
    /// `(x0, z0)` at `t = 0`. Case dispatch compares `c0` exactly.
    pub fn build(c0: f64, x0: f64, z0: f64) -> Result<Self, ClosedFormError> {
        if !(c0.is_finite() && x0.is_finite() && z0.is_finite()) {
            return Err(ClosedFormError::NonFinite { c0, x0, z0 });
        }
        if z0 < 0.0 {
            return Err(ClosedFormError::NegativeHeight(z0));
        }

        let phase0 = TWO_PI * x0;
        let (s, c) = (PI * x0).sin_cos();
        let near_fixed_point = (phase0.cos() - (1.0 - c0)).abs() <= EQUILIBRIUM_TOLERANCE;

        let case = if c0 == 0.0 {
            if x0.fract() == 0.0 {
                Case::Equilibrium
            } else {
                Case::Still { k: c / s }
            }
        } else if c0 * (c0 - 2.0) > 0.0 {
            let shape = ((c0 - 2.0) / c0).sqrt();
            // tan α0 = cot(X0/2) / C, with α0 in (−π/2, π/2]
            let mut alpha0 = c.atan2(shape * s);
            if alpha0 > FRAC_PI_2 {
                alpha0 -= PI;
            } else if alpha0 <= -FRAC_PI_2 {
                alpha0 += PI;
            }
            Case::Strong {
                shape,
                k: -2.0 * alpha0 / (c0 * shape),
            }
        } else if c0 == 2.0 {
            if near_fixed_point || c == 0.0 {
                Case::Equilibrium
            } else {
                Case::Critical { k: s / c }
            }
        } else if near_fixed_point {
            Case::Equilibrium
        } else {
            let shape = ((2.0 - c0) / c0).sqrt();
            let (branch, ratio) = if c.abs() > shape * s.abs() {
                // K coth β0 = cot(X0/2)
                (Branch::Coth, shape * s / c)
            } else {
                // K tanh β0 = cot(X0/2)
                (Branch::Tanh, c / (shape * s))
            };
            let beta0 = ratio.atanh();
            if beta0.is_finite() {
                Case::Moderate {
                    shape,
                    k: 2.0 * beta0 / (c0 * shape),
                    branch,
                }
            } else {
                Case::Equilibrium
            }
        };

        let mut traj = Self {
            c0,
            x0,
            z0,
            case,
            anchor: 0.0,
            weight0: 1.0,
        };
        traj.anchor = traj.continuous_phase(0.0);
        traj.weight0 = traj.weight(0.0);
        Ok(traj)
    }

    pub fn current(&self) -> f64 {
        self.c0
    }

    pub fn initial(&self) -> (f64, f64) {
        (self.x0, self.z0)
    }

    pub fn case(&self) -> Case {
        self.case
    }

    /// Integration constant `k`, absent for fixed points.
    pub fn k(&self) -> Option<f64> {
        match self.case {
            Case::Still { k }
            | Case::Strong { k, .. }
            | Case::Moderate { k, .. }
            | Case::Critical { k } => Some(k),
            Case::Equilibrium => None,
        }
    }

    /// `C` for strong currents, `K` for moderate ones.
    pub fn shape(&self) -> Option<f64> {
        match self.case {
            Case::Strong { shape, .. } | Case::Moderate { shape, .. } => Some(shape),
            _ => None,
        }
    }

    /// Branch tag for `0 < c0 ≤ 2`.
    pub fn branch(&self) -> Option<Branch> {
        match self.case {
            Case::Moderate { branch, .. } => Some(branch),
            Case::Equilibrium if self.c0 > 0.0 && self.c0 <= 2.0 => Some(Branch::Equilibrium),
            _ => None,
        }
    }

    /// The separated variable at time `t`: `2πt + k` (still, critical),
    /// `α(t)` (strong) or `β(t)` (moderate).
    pub fn argument(&self, t: f64) -> Option<f64> {
        let c0 = self.c0;
        match self.case {
            Case::Still { k } | Case::Critical { k } => Some(TWO_PI * t + k),
            Case::Strong { shape, k } => Some(-0.5 * c0 * shape * (TWO_PI * t + k)),
            Case::Moderate { shape, k, .. } => Some(0.5 * c0 * shape * (TWO_PI * t + k)),
            Case::Equilibrium => None,
        }
    }

    /// Inverse of [`argument`](Self::argument).
    pub fn time_at(&self, argument: f64) -> Option<f64> {
        let c0 = self.c0;
        let lin = match self.case {
            Case::Still { k } | Case::Critical { k } => argument - k,
            Case::Strong { shape, k } => -2.0 * argument / (c0 * shape) - k,
            Case::Moderate { shape, k, .. } => 2.0 * argument / (c0 * shape) - k,
            Case::Equilibrium => return None,
        };
        Some(lin / TWO_PI)
    }

    /// Minimal period of the moving-frame motion (strong currents only):
    /// the time for α to advance by π.
    pub fn period(&self) -> Option<f64> {
        match self.case {
            Case::Strong { shape, .. } => Some(1.0 / (self.c0.abs() * shape)),
            _ => None,
        }
    }

    fn continuous_phase(&self, t: f64) -> f64 {
        let arg = self.argument(t);
        match (self.case, arg) {
            (Case::Still { .. }, Some(y)) => -2.0 * y.atan(),
            (Case::Strong { shape, .. }, Some(alpha)) => -2.0 * continued_arctan(shape, alpha),
            (Case::Moderate { shape, branch, .. }, Some(beta)) => match branch {
                Branch::Tanh => -2.0 * (shape * beta.tanh()).atan(),
                _ => 2.0 * (beta.tanh() / shape).atan(),
            },
            (Case::Critical { .. }, Some(w)) => 2.0 * w.atan(),
            _ => 0.0,
        }
    }

    /// Height weight proportional to `1 / (cos X + c0 − 1)`.
    fn weight(&self, t: f64) -> f64 {
        let arg = self.argument(t);
        match (self.case, arg) {
            (Case::Still { .. }, Some(y)) | (Case::Critical { .. }, Some(y)) => {
                let r = 1.0f64.hypot(y);
                r * r
            }
            (Case::Strong { shape, .. }, Some(alpha)) => {
                let (s, c) = alpha.sin_cos();
                c * c + shape * shape * s * s
            }
            (Case::Moderate { shape, branch, .. }, Some(beta)) => {
                let (sh, ch) = (beta.sinh(), beta.cosh());
                match branch {
                    Branch::Tanh => ch * ch + shape * shape * sh * sh,
                    _ => shape * shape * ch * ch + sh * sh,
                }
            }
            _ => 1.0,
        }
    }

    /// `X0` reduced to `[0, 2π)`, exact at crests.
    fn reduced_phase0(&self) -> f64 {
        TWO_PI * self.x0.rem_euclid(1.0)
    }

    /// Unwrapped moving-frame phase `X(t)`.
    pub fn phase(&self, t: f64) -> f64 {
        TWO_PI * self.x0 + (self.continuous_phase(t) - self.anchor)
    }

    /// Lab-frame position `(x(t), z(t))`.
    pub fn evaluate(&self, t: f64) -> (f64, f64) {
        let x = self.x0 + t + (self.continuous_phase(t) - self.anchor) / TWO_PI;
        (x, self.height(t))
    }

    fn height(&self, t: f64) -> f64 {
        match self.case {
            Case::Still { k } => {
                // z0 / (1 + k²) · (1 + y²) as a ratio of hypotenuses
                let y = TWO_PI * t + k;
                let r = 1.0f64.hypot(y) / 1.0f64.hypot(k);
                self.z0 * r * r
            }
            Case::Equilibrium => self.z0 * (TWO_PI * self.reduced_phase0().sin() * t).exp(),
            _ => self.z0 * (self.weight(t) / self.weight0),
        }
    }

    /// Still-water closed form; errors unless `c0 = 0`.
    pub fn evaluate_still(&self, t: f64) -> Result<(f64, f64), ClosedFormError> {
        self.require(self.c0 == 0.0, "still")?;
        Ok(self.evaluate(t))
    }

    /// Strong-current closed form; errors unless `c0 (c0 − 2) > 0`.
    pub fn evaluate_strong(&self, t: f64) -> Result<(f64, f64), ClosedFormError> {
        self.require(self.c0 * (self.c0 - 2.0) > 0.0, "strong")?;
        Ok(self.evaluate(t))
    }

    /// Moderate-current closed form; errors unless `0 < c0 ≤ 2`.
    pub fn evaluate_moderate(&self, t: f64) -> Result<(f64, f64), ClosedFormError> {
        self.require(self.c0 > 0.0 && self.c0 <= 2.0, "moderate")?;
        Ok(self.evaluate(t))
    }

    fn require(&self, ok: bool, expected: &'static str) -> Result<(), ClosedFormError> {
        if ok {
            Ok(())
        } else {
            Err(ClosedFormError::WrongRegime {
                c0: self.c0,
                expected,
            })
        }
    }

    /// Analytic `(x'(t), z'(t))` from the explicit derivative formulas of
    /// each case (not from the ODE right-hand side).
    pub fn derivatives(&self, t: f64) -> (f64, f64) {
        let c0 = self.c0;
        let arg = self.argument(t);
        match (self.case, arg) {
            (Case::Still { k }, Some(y)) => {
                let y2 = y * y;
                ((y2 - 1.0) / (1.0 + y2), 2.0 * TWO_PI * self.z0 * y / (1.0 + k * k))
            }
            (Case::Strong { shape, .. }, Some(alpha)) => {
                let (s, c) = alpha.sin_cos();
                let denom = c * c + shape * shape * s * s;
                let dx = ((shape * shape - 1.0) * s * s + c0 - 1.0) / denom;
                let dz = self.height(t) * 2.0 * TWO_PI * shape * s * c / denom;
                (dx, dz)
            }
            (Case::Moderate { shape, branch, .. }, Some(beta)) => {
                let (sh, ch) = (beta.sinh(), beta.cosh());
                let k2 = shape * shape;
                let (dx, denom) = match branch {
                    Branch::Tanh => {
                        let denom = ch * ch + k2 * sh * sh;
                        (((k2 + 1.0) * sh * sh + c0 - 1.0) / denom, denom)
                    }
                    _ => {
                        let denom = sh * sh + k2 * ch * ch;
                        (1.0 + (2.0 - c0) / denom, denom)
                    }
                };
                (dx, self.height(t) * 2.0 * TWO_PI * shape * sh * ch / denom)
            }
            (Case::Critical { .. }, Some(w)) => {
                let w2 = w * w;
                ((3.0 + w2) / (1.0 + w2), self.height(t) * 2.0 * TWO_PI * w / (1.0 + w2))
            }
            _ => {
                let (s, c) = self.reduced_phase0().sin_cos();
                (c + c0, TWO_PI * s * self.height(t))
            }
        }
    }

    /// Sample `n ≥ 2` equally spaced points on `[t_start, t_end]` as
    /// `(t, x, z, x', z')` rows.
    pub fn sample(&self, t_start: f64, t_end: f64, n: usize) -> Vec<[f64; 5]> {
        let n = n.max(2);
        let dt = (t_end - t_start) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                let t = if i + 1 == n { t_end } else { t_start + i as f64 * dt };
                let (x, z) = self.evaluate(t);
                let (dx, dz) = self.derivatives(t);
                [t, x, z, dx, dz]
            })
            .collect()
    }
}
