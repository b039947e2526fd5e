//! Linear irrotational shallow-water solution and dimensional scaling.
//!
//! All field evaluations are in nondimensional variables: `x` in wavelengths,
//! `z` in depths (bed at `z = 0`, undisturbed surface at `z = 1`), `t` in
//! units of `λ/√(g h0)`. The surface profile is fixed to `f(s) = cos(2πs)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::TWO_PI;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WaveFieldError {
    #[error("{name} must be finite and positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("amplitude must be finite and non-negative, got {0}")]
    NegativeAmplitude(f64),
    #[error("unknown quantity tag {0:?} (expected one of x, z, t, eta, u, v, p)")]
    UnknownQuantity(String),
}

/// Dimensional parameters of the physical problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalScales {
    depth: f64,
    wavelength: f64,
    amplitude: f64,
    gravity: f64,
    density: f64,
}

impl PhysicalScales {
    pub fn new(
        depth: f64,
        wavelength: f64,
        amplitude: f64,
        gravity: f64,
        density: f64,
    ) -> Result<Self, WaveFieldError> {
        for (name, value) in [
            ("depth", depth),
            ("wavelength", wavelength),
            ("gravity", gravity),
            ("density", density),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(WaveFieldError::NonPositive { name, value });
            }
        }
        if !(amplitude.is_finite() && amplitude >= 0.0) {
            return Err(WaveFieldError::NegativeAmplitude(amplitude));
        }
        Ok(Self {
            depth,
            wavelength,
            amplitude,
            gravity,
            density,
        })
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn gravity(&self) -> f64 {
        self.gravity
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    /// Amplitude parameter `a / h0`.
    pub fn epsilon(&self) -> f64 {
        self.amplitude / self.depth
    }

    /// Shallowness parameter `h0 / λ`.
    pub fn delta(&self) -> f64 {
        self.depth / self.wavelength
    }

    /// Long-wave speed `√(g h0)`.
    pub fn wave_speed(&self) -> f64 {
        (self.gravity * self.depth).sqrt()
    }

    /// Dimensional length of one nondimensional time unit, `λ / √(g h0)`.
    pub fn time_scale(&self) -> f64 {
        self.wavelength / self.wave_speed()
    }

    /// Multiplier taking a nondimensional value of `kind` to physical units.
    /// Pressure is affine, so its hydrostatic and ambient parts are added
    /// separately in [`dimensionalize`](Self::dimensionalize).
    fn factor(&self, kind: Quantity) -> f64 {
        let c = self.wave_speed();
        let eps = self.epsilon();
        match kind {
            Quantity::X => self.wavelength,
            Quantity::Z => self.depth,
            Quantity::T => self.time_scale(),
            Quantity::Elevation => self.amplitude,
            Quantity::U => eps * c,
            Quantity::V => eps * self.delta() * c,
            Quantity::Pressure { .. } => self.density * self.gravity * self.depth * eps,
        }
    }

    fn hydrostatic(&self, kind: Quantity) -> f64 {
        match kind {
            Quantity::Pressure { z, ambient } => {
                ambient + self.density * self.gravity * self.depth * (1.0 - z)
            }
            _ => 0.0,
        }
    }

    /// Map a nondimensional value to physical units.
    pub fn dimensionalize(&self, kind: Quantity, value: f64) -> f64 {
        self.hydrostatic(kind) + self.factor(kind) * value
    }

    /// Inverse of [`dimensionalize`](Self::dimensionalize). Undefined (non-finite)
    /// for `u`, `v`, `eta` and `p` when the amplitude is zero.
    pub fn nondimensionalize(&self, kind: Quantity, value: f64) -> f64 {
        (value - self.hydrostatic(kind)) / self.factor(kind)
    }
}

/// Kind of field quantity for unit conversion.
///
/// Pressure carries the nondimensional height it is evaluated at and the
/// ambient surface pressure `p0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Quantity {
    X,
    Z,
    T,
    Elevation,
    U,
    V,
    Pressure { z: f64, ambient: f64 },
}

impl Quantity {
    /// Pressure at height `z` with zero ambient pressure.
    pub fn pressure(z: f64) -> Self {
        Quantity::Pressure { z, ambient: 0.0 }
    }
}

impl FromStr for Quantity {
    type Err = WaveFieldError;

    /// Parses the tags `x`, `z`, `t`, `eta`, `u`, `v`, `p`. A parsed `p` sits
    /// at the bed with zero ambient pressure.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" => Ok(Quantity::X),
            "z" => Ok(Quantity::Z),
            "t" => Ok(Quantity::T),
            "eta" | "η" => Ok(Quantity::Elevation),
            "u" => Ok(Quantity::U),
            "v" => Ok(Quantity::V),
            "p" => Ok(Quantity::pressure(0.0)),
            other => Err(WaveFieldError::UnknownQuantity(other.to_string())),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Quantity::X => "x",
            Quantity::Z => "z",
            Quantity::T => "t",
            Quantity::Elevation => "eta",
            Quantity::U => "u",
            Quantity::V => "v",
            Quantity::Pressure { .. } => "p",
        };
        f.write_str(tag)
    }
}

/// Right-moving linear wave `η = p = cos(2π(x − t))` over a uniform current.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveField {
    c0: f64,
}

impl WaveField {
    pub fn new(c0: f64) -> Self {
        Self { c0 }
    }

    /// Underlying current strength.
    pub fn current(&self) -> f64 {
        self.c0
    }

    pub fn surface_elevation(&self, x: f64, t: f64) -> f64 {
        (TWO_PI * (x - t)).cos()
    }

    /// Exact `∂η/∂t`.
    pub fn elevation_rate(&self, x: f64, t: f64) -> f64 {
        TWO_PI * (TWO_PI * (x - t)).sin()
    }

    /// Exact `∂²η/∂x²` (equal to `∂²η/∂t²` for a travelling wave).
    pub fn elevation_xx(&self, x: f64, t: f64) -> f64 {
        -TWO_PI * TWO_PI * (TWO_PI * (x - t)).cos()
    }

    /// Dynamic pressure perturbation; depth independent.
    pub fn pressure(&self, x: f64, t: f64) -> f64 {
        (TWO_PI * (x - t)).cos()
    }

    /// Velocity `(u, v)` at height `z`. Heights above the linearized surface
    /// are evaluated by the same formula.
    pub fn velocity(&self, x: f64, z: f64, t: f64) -> (f64, f64) {
        let phase = TWO_PI * (x - t);
        (phase.cos() + self.c0, TWO_PI * z * phase.sin())
    }

    /// Mean horizontal velocity over one wavelength starting at `x`, by the
    /// periodic trapezoidal rule with `nodes` points.
    pub fn mean_horizontal_velocity(&self, x: f64, z: f64, t: f64, nodes: usize) -> f64 {
        let nodes = nodes.max(1);
        let ds = 1.0 / nodes as f64;
        let sum: f64 = (0..nodes)
            .map(|i| self.velocity(x + i as f64 * ds, z, t).0)
            .sum();
        sum * ds
    }

    /// Wave-operator truncation residual `|D²ₜη − η_xx|` where `D²ₜ` is the
    /// centered second difference with step `h` and `η_xx` is exact. Behaves
    /// as `O(h²)` until roundoff takes over.
    pub fn wave_residual(&self, x: f64, t: f64, h: f64) -> f64 {
        let centre = self.surface_elevation(x, t);
        let d2t = (self.surface_elevation(x, t + h) - 2.0 * centre
            + self.surface_elevation(x, t - h))
            / (h * h);
        (d2t - self.elevation_xx(x, t)).abs()
    }

    /// Centered difference pair `(D²ₜη, D²ₓη)` with step `h`.
    pub fn second_differences(&self, x: f64, t: f64, h: f64) -> (f64, f64) {
        let centre = self.surface_elevation(x, t);
        let d2t = (self.surface_elevation(x, t + h) - 2.0 * centre
            + self.surface_elevation(x, t - h))
            / (h * h);
        let d2x = (self.surface_elevation(x + h, t) - 2.0 * centre
            + self.surface_elevation(x - h, t))
            / (h * h);
        (d2t, d2x)
    }
}

/// Default finite-difference step for residual checks.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Observed convergence order from residuals at `h` and `h/2`.
pub fn richardson_order(residual_h: f64, residual_half: f64) -> f64 {
    (residual_h / residual_half).log2()
}
