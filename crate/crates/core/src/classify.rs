//! Trajectory taxonomy by current strength, derivative sign tables, drift
//! per period and loop detection on sampled paths.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closedform::{Branch, Case, ClosedFormError, ClosedFormTrajectory};
use crate::TWO_PI;

/// Collinearity tolerance for segment intersection, relative to the
/// product of segment lengths.
pub const COLLINEAR_TOLERANCE: f64 = 1e-12;

/// Polyline samples per moving-frame period used by [`count_loops`].
pub const SAMPLES_PER_PERIOD: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("current strength must be finite, got {0}")]
    NonFinite(f64),
    #[error("c0 = {0} has no periodic moving-frame motion; drift per period requires c0 < 0 or c0 > 2")]
    NotPeriodic(f64),
    #[error("loop detection needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("invalid sweep range [{from}, {to}] with step {step}")]
    InvalidRange { from: f64, to: f64, step: f64 },
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeKind {
    /// `c0 > 2`
    UndulatingRight,
    /// `c0 < −1`
    UndulatingLeft,
    /// `−1 ≤ c0 < 0`
    LoopingDriftRight,
    /// `c0 = 0`
    SingleLoop,
    /// `0 < c0 ≤ 2`
    ParabolicOrSingleLoop,
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Subinterval of a moderate current, which decides whether the tanh
/// branch can reverse horizontally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModerateBand {
    /// `0 < c0 ≤ 1`
    AtMostOne,
    /// `1 < c0 ≤ 2`
    AboveOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub kind: RegimeKind,
    pub c0: f64,
    /// Set on the interval endpoints `c0 = −1` and `c0 = 2`.
    pub degenerate: bool,
    pub band: Option<ModerateBand>,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if self.degenerate {
            write!(f, " (degenerate boundary)")?;
        }
        Ok(())
    }
}

pub fn classify(c0: f64) -> Result<Regime, ClassifyError> {
    if !c0.is_finite() {
        return Err(ClassifyError::NonFinite(c0));
    }
    let kind = if c0 > 2.0 {
        RegimeKind::UndulatingRight
    } else if c0 < -1.0 {
        RegimeKind::UndulatingLeft
    } else if c0 < 0.0 {
        RegimeKind::LoopingDriftRight
    } else if c0 == 0.0 {
        RegimeKind::SingleLoop
    } else {
        RegimeKind::ParabolicOrSingleLoop
    };
    let band = match kind {
        RegimeKind::ParabolicOrSingleLoop if c0 <= 1.0 => Some(ModerateBand::AtMostOne),
        RegimeKind::ParabolicOrSingleLoop => Some(ModerateBand::AboveOne),
        _ => None,
    };
    Ok(Regime {
        kind,
        c0,
        degenerate: c0 == -1.0 || c0 == 2.0,
        band,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(v: f64) -> Self {
        if v > 0.0 {
            Sign::Positive
        } else if v < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn symbol(&self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

/// Variable in which a sign interval is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignVariable {
    Time,
    /// `α(t)`; the pattern repeats with period π.
    Alpha,
    Beta,
    SinhBeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignInterval {
    pub variable: SignVariable,
    pub lower: f64,
    pub upper: f64,
    pub x_sign: Sign,
    pub z_sign: Sign,
}

impl SignInterval {
    /// Interval in time. For `Alpha` the copy shifted by `shift·π` is used.
    pub fn time_bounds(&self, traj: &ClosedFormTrajectory, shift: i64) -> (f64, f64) {
        let offset = match self.variable {
            SignVariable::Alpha => shift as f64 * PI,
            _ => 0.0,
        };
        let to_time = |v: f64| -> f64 {
            if v.is_infinite() {
                return match self.variable {
                    // β and t increase together; α runs against t when c0 C > 0
                    SignVariable::Alpha => v * -traj.current().signum(),
                    _ => v,
                };
            }
            let arg = match self.variable {
                SignVariable::SinhBeta => v.asinh(),
                _ => v + offset,
            };
            match self.variable {
                SignVariable::Time => v,
                _ => traj.time_at(arg).unwrap_or(f64::NAN),
            }
        };
        let (a, b) = (to_time(self.lower), to_time(self.upper));
        (a.min(b), a.max(b))
    }

    /// A time strictly inside the interval (one unit in from a finite bound
    /// when the other end is unbounded).
    pub fn interior_time(&self, traj: &ClosedFormTrajectory, shift: i64) -> f64 {
        let (a, b) = self.time_bounds(traj, shift);
        match (a.is_finite(), b.is_finite()) {
            (true, true) => 0.5 * (a + b),
            (true, false) => a + 1.0,
            (false, true) => b - 1.0,
            (false, false) => 0.0,
        }
    }
}

fn interval(
    variable: SignVariable,
    lower: f64,
    upper: f64,
    x_sign: Sign,
    z_sign: Sign,
) -> SignInterval {
    SignInterval {
        variable,
        lower,
        upper,
        x_sign,
        z_sign,
    }
}

/// Ordered intervals on which `x'` and `z'` keep a constant sign for the
/// trajectory through `(x0, z0 > 0)`.
pub fn sign_table(c0: f64, x0: f64) -> Result<Vec<SignInterval>, ClassifyError> {
    use Sign::{Negative as Neg, Positive as Pos};
    if !c0.is_finite() {
        return Err(ClassifyError::NonFinite(c0));
    }
    let traj = ClosedFormTrajectory::build(c0, x0, 1.0)?;
    let inf = f64::INFINITY;
    let table = match traj.case() {
        Case::Still { k } => {
            let cuts = [(-1.0 - k) / TWO_PI, -k / TWO_PI, (1.0 - k) / TWO_PI];
            vec![
                interval(SignVariable::Time, -inf, cuts[0], Pos, Neg),
                interval(SignVariable::Time, cuts[0], cuts[1], Neg, Neg),
                interval(SignVariable::Time, cuts[1], cuts[2], Neg, Pos),
                interval(SignVariable::Time, cuts[2], inf, Pos, Pos),
            ]
        }
        Case::Strong { .. } => {
            let a = SignVariable::Alpha;
            if c0 > 2.0 || c0 < -1.0 {
                let xs = if c0 > 2.0 { Pos } else { Neg };
                vec![
                    interval(a, -FRAC_PI_2, 0.0, xs, Neg),
                    interval(a, 0.0, FRAC_PI_2, xs, Pos),
                ]
            } else {
                let threshold = ((c0 * c0 - c0) / 2.0).sqrt().min(1.0).asin();
                [
                    interval(a, -FRAC_PI_2, -threshold, Pos, Neg),
                    interval(a, -threshold, 0.0, Neg, Neg),
                    interval(a, 0.0, threshold, Neg, Pos),
                    interval(a, threshold, FRAC_PI_2, Pos, Pos),
                ]
                .into_iter()
                .filter(|iv| iv.upper > iv.lower)
                .collect()
            }
        }
        Case::Moderate {
            branch: Branch::Tanh,
            ..
        } if c0 < 1.0 => {
            let s = SignVariable::SinhBeta;
            let threshold = ((c0 - c0 * c0) / 2.0).sqrt();
            vec![
                interval(s, -inf, -threshold, Pos, Neg),
                interval(s, -threshold, 0.0, Neg, Neg),
                interval(s, 0.0, threshold, Neg, Pos),
                interval(s, threshold, inf, Pos, Pos),
            ]
        }
        Case::Moderate { .. } => vec![
            interval(SignVariable::Beta, -inf, 0.0, Pos, Neg),
            interval(SignVariable::Beta, 0.0, inf, Pos, Pos),
        ],
        Case::Critical { k } => {
            let cut = -k / TWO_PI;
            vec![
                interval(SignVariable::Time, -inf, cut, Pos, Neg),
                interval(SignVariable::Time, cut, inf, Pos, Pos),
            ]
        }
        Case::Equilibrium => {
            let (dx, dz) = traj.derivatives(0.0);
            vec![interval(
                SignVariable::Time,
                -inf,
                inf,
                Sign::of(dx),
                Sign::of(dz),
            )]
        }
    };
    Ok(table)
}

/// Horizontal displacement over one moving-frame period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    pub period: f64,
    pub displacement: f64,
    pub mean_velocity: f64,
}

/// Drift over the period `T = 1/(|c0| C)` starting at `t = 0`, from the
/// closed form. Only strong currents have periodic moving-frame motion.
pub fn measure_drift(c0: f64, x0: f64, z0: f64) -> Result<DriftReport, ClassifyError> {
    if !c0.is_finite() {
        return Err(ClassifyError::NonFinite(c0));
    }
    let traj = ClosedFormTrajectory::build(c0, x0, z0)?;
    let period = traj.period().ok_or(ClassifyError::NotPeriodic(c0))?;
    let displacement = traj.evaluate(period).0 - traj.evaluate(0.0).0;
    Ok(DriftReport {
        period,
        displacement,
        mean_velocity: displacement / period,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub point: (f64, f64),
    /// Indices of the two crossing segments (`i < j`).
    pub segments: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopReport {
    pub count: usize,
    pub crossings: Vec<Crossing>,
}

fn cross(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

/// Transversal intersection of `p0→p1` and `q0→q1`, each half-open at its
/// end point so a crossing through a shared vertex is counted once.
fn segment_crossing(
    p0: (f64, f64),
    p1: (f64, f64),
    q0: (f64, f64),
    q1: (f64, f64),
) -> Option<(f64, f64)> {
    let d1 = (p1.0 - p0.0, p1.1 - p0.1);
    let d2 = (q1.0 - q0.0, q1.1 - q0.1);
    let denom = cross(d1, d2);
    let scale = d1.0.hypot(d1.1) * d2.0.hypot(d2.1);
    if denom.abs() <= COLLINEAR_TOLERANCE * scale {
        return None;
    }
    let w = (q0.0 - p0.0, q0.1 - p0.1);
    let s = cross(w, d2) / denom;
    let u = cross(w, d1) / denom;
    if (0.0..1.0).contains(&s) && (0.0..1.0).contains(&u) {
        Some((p0.0 + s * d1.0, p0.1 + s * d1.1))
    } else {
        None
    }
}

/// Count transversal self-intersections of the polyline through `samples`.
/// Zero-length segments are skipped, as are pairs of consecutive segments.
pub fn detect_loop(samples: &[(f64, f64)]) -> Result<LoopReport, ClassifyError> {
    if samples.len() < 2 {
        return Err(ClassifyError::TooFewSamples(samples.len()));
    }
    let mut segments: Vec<usize> = (0..samples.len() - 1)
        .filter(|&i| samples[i] != samples[i + 1])
        .collect();
    let min_x = |i: usize| samples[i].0.min(samples[i + 1].0);
    let max_x = |i: usize| samples[i].0.max(samples[i + 1].0);
    segments.sort_by(|&a, &b| min_x(a).total_cmp(&min_x(b)).then(a.cmp(&b)));

    let mut active: Vec<usize> = Vec::new();
    let mut crossings = Vec::new();
    for &j in &segments {
        let left = min_x(j);
        active.retain(|&i| max_x(i) >= left);
        let (ylo, yhi) = {
            let (a, b) = (samples[j].1, samples[j + 1].1);
            (a.min(b), a.max(b))
        };
        for &i in &active {
            if i.abs_diff(j) <= 1 {
                continue;
            }
            let (a, b) = (samples[i].1, samples[i + 1].1);
            if a.max(b) < ylo || a.min(b) > yhi {
                continue;
            }
            if let Some(point) =
                segment_crossing(samples[i], samples[i + 1], samples[j], samples[j + 1])
            {
                crossings.push(Crossing {
                    point,
                    segments: (i.min(j), i.max(j)),
                });
            }
        }
        active.push(j);
    }
    crossings.sort_by_key(|c| c.segments);
    Ok(LoopReport {
        count: crossings.len(),
        crossings,
    })
}

/// Time window that shows the characteristic shape of a trajectory: two
/// periods for strong currents, the full sign-change window otherwise.
pub fn default_window(traj: &ClosedFormTrajectory) -> (f64, f64) {
    match traj.case() {
        Case::Strong { .. } => (0.0, 2.0 * traj.period().unwrap_or(1.0)),
        Case::Still { .. } | Case::Critical { .. } => {
            let centre = traj.time_at(0.0).unwrap_or(0.0);
            (centre - 1.0, centre + 1.0)
        }
        Case::Moderate { shape, .. } => {
            let centre = traj.time_at(0.0).unwrap_or(0.0);
            // β sweeps [−3, 3]
            let half = 3.0 / (PI * traj.current() * shape);
            (centre - half, centre + half)
        }
        Case::Equilibrium => (0.0, 1.0),
    }
}

/// Loop count of the closed-form path over `window`, sampled at
/// [`SAMPLES_PER_PERIOD`] points per period (per unit window otherwise).
pub fn count_loops(traj: &ClosedFormTrajectory, window: (f64, f64)) -> LoopReport {
    let span = (window.1 - window.0).abs();
    let unit = traj.period().unwrap_or(span.max(1e-12));
    let n = ((span / unit) * SAMPLES_PER_PERIOD as f64).ceil().max(2.0) as usize + 1;
    let samples: Vec<(f64, f64)> = traj
        .sample(window.0, window.1, n)
        .iter()
        .map(|r| (r[1], r[2]))
        .collect();
    detect_loop(&samples).expect("at least two samples")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub c0: f64,
    pub regime: Regime,
    pub drift: Option<f64>,
    pub loops: usize,
}

/// Classify, measure drift and count loops for `c0 = from + i·step ≤ to`.
pub fn sweep(from: f64, to: f64, step: f64, x0: f64, z0: f64) -> Result<Vec<SweepRow>, ClassifyError> {
    if !(from.is_finite() && to.is_finite() && step.is_finite() && step > 0.0 && from <= to) {
        return Err(ClassifyError::InvalidRange { from, to, step });
    }
    let n = ((to - from) / step * (1.0 + 4.0 * f64::EPSILON)).floor() as usize;
    (0..=n)
        .map(|i| {
            let c0 = from + i as f64 * step;
            let regime = classify(c0)?;
            let traj = ClosedFormTrajectory::build(c0, x0, z0)?;
            let drift = measure_drift(c0, x0, z0).ok().map(|d| d.displacement);
            let loops = count_loops(&traj, default_window(&traj)).count;
            Ok(SweepRow {
                c0,
                regime,
                drift,
                loops,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn classify_examples() {
        assert_eq!(classify(3.0).unwrap().kind, RegimeKind::UndulatingRight);
        assert_eq!(classify(-0.5).unwrap().kind, RegimeKind::LoopingDriftRight);
        assert_eq!(classify(0.0).unwrap().kind, RegimeKind::SingleLoop);
        assert_eq!(classify(-2.0).unwrap().kind, RegimeKind::UndulatingLeft);
        assert!(classify(f64::NAN).is_err());
        assert!(classify(f64::INFINITY).is_err());
    }

    #[test]
    fn classify_boundaries() {
        let r = classify(-1.0).unwrap();
        assert_eq!(r.kind, RegimeKind::LoopingDriftRight);
        assert!(r.degenerate);
        assert_eq!(r.to_string(), "LoopingDriftRight (degenerate boundary)");
        let r = classify(2.0).unwrap();
        assert_eq!(r.kind, RegimeKind::ParabolicOrSingleLoop);
        assert!(r.degenerate);
        assert_eq!(r.band, Some(ModerateBand::AboveOne));
        let r = classify(1.0).unwrap();
        assert_eq!(r.band, Some(ModerateBand::AtMostOne));
        assert!(!r.degenerate);
        assert_eq!(classify(0.5).unwrap().to_string(), "ParabolicOrSingleLoop");
        assert_eq!(classify(2.0 + 1e-15).unwrap().kind, RegimeKind::UndulatingRight);
        assert_eq!(classify(-1.0 - 1e-15).unwrap().kind, RegimeKind::UndulatingLeft);
    }

    #[test]
    fn still_sign_table_with_zero_k() {
        let table = sign_table(0.0, 0.5).unwrap();
        let cuts: Vec<f64> = table.iter().skip(1).map(|iv| iv.lower).collect();
        assert_abs_diff_eq!(cuts[0], -1.0 / TWO_PI, epsilon = 1e-15);
        assert_abs_diff_eq!(cuts[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cuts[2], 1.0 / TWO_PI, epsilon = 1e-15);
        let signs: Vec<(char, char)> = table
            .iter()
            .map(|iv| (iv.x_sign.symbol(), iv.z_sign.symbol()))
            .collect();
        assert_eq!(signs, vec![('+', '-'), ('-', '-'), ('-', '+'), ('+', '+')]);
    }

    #[test]
    fn strong_sign_tables() {
        let table = sign_table(-2.0, 0.3).unwrap();
        assert!(table.iter().all(|iv| iv.x_sign == Sign::Negative));
        assert_eq!(table[0].z_sign, Sign::Negative);
        assert_eq!(table[1].z_sign, Sign::Positive);

        let table = sign_table(-0.5, 0.3).unwrap();
        assert_eq!(table.len(), 4);
        // arcsin √((c0² − c0)/2) with c0 = −1/2
        assert_abs_diff_eq!(table[2].upper, (0.375f64).sqrt().asin(), epsilon = 1e-15);

        // at c0 = −1 the outer intervals vanish
        let table = sign_table(-1.0, 0.3).unwrap();
        assert_eq!(table.len(), 2);
        assert!(table.iter().all(|iv| iv.x_sign == Sign::Negative));
    }

    #[test]
    fn moderate_sign_tables() {
        let table = sign_table(1.5, 0.45).unwrap();
        assert_eq!(table.len(), 2);
        assert!(table.iter().all(|iv| iv.x_sign == Sign::Positive));
        assert_eq!(table[0].variable, SignVariable::Beta);

        let table = sign_table(0.5, 0.3).unwrap();
        assert_eq!(table[0].variable, SignVariable::SinhBeta);
        assert_abs_diff_eq!(table[3].lower, 0.125f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn sign_tables_agree_with_derivatives() {
        for &(c0, x0) in &[
            (0.0, 0.3),
            (-2.0, 0.3),
            (-1.0, 0.3),
            (-0.5, 0.3),
            (-0.2, 0.8),
            (3.0, 0.3),
            (0.5, 0.3),
            (0.5, 0.05),
            (1.5, 0.3),
            (1.5, 0.45),
            (2.0, 0.3),
        ] {
            let traj = ClosedFormTrajectory::build(c0, x0, 1.0).unwrap();
            for iv in sign_table(c0, x0).unwrap() {
                for shift in -2..=2 {
                    let t = iv.interior_time(&traj, shift);
                    let (dx, dz) = traj.derivatives(t);
                    assert_eq!(Sign::of(dx), iv.x_sign, "c0 {c0} x0 {x0} t {t} {iv:?}");
                    assert_eq!(Sign::of(dz), iv.z_sign, "c0 {c0} x0 {x0} t {t} {iv:?}");
                }
            }
        }
    }

    #[test]
    fn drift_is_period_minus_one_for_adverse_currents() {
        // closed-form drift equals T − 1 for c0 < 0 and T + 1 for c0 > 2
        for &c0 in &[-3.0, -2.0, -1.0, -0.5, -0.3, -0.1, 2.5, 3.0, 5.0] {
            let report = measure_drift(c0, 0.3, 0.1).unwrap();
            let period = 1.0 / (c0 * c0 - 2.0 * c0).sqrt();
            assert_abs_diff_eq!(report.period, period, epsilon = 1e-14);
            let expected = if c0 < 0.0 { period - 1.0 } else { period + 1.0 };
            assert_abs_diff_eq!(report.displacement, expected, epsilon = 1e-12);
        }
        assert!(measure_drift(3.0, 0.1, 0.1).unwrap().displacement > 0.0);
        assert!(measure_drift(-2.0, 0.1, 0.1).unwrap().displacement < 0.0);
        // drift turns positive only once T > 1, i.e. c0 > 1 − √2
        assert!(measure_drift(-0.2, 0.3, 0.1).unwrap().displacement > 0.0);
        assert!(matches!(
            measure_drift(0.5, 0.3, 0.1),
            Err(ClassifyError::NotPeriodic(_))
        ));
    }

    #[test]
    fn straight_line_has_no_crossings() {
        let pts: Vec<(f64, f64)> = (0..100).map(|i| (i as f64, 2.0 * i as f64)).collect();
        assert_eq!(detect_loop(&pts).unwrap().count, 0);
        assert!(detect_loop(&pts[..1]).is_err());
    }

    #[test]
    fn figure_eight_and_degenerate_segments() {
        let pts = vec![(0.0, 0.0), (1.0, 1.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)];
        let report = detect_loop(&pts).unwrap();
        assert_eq!(report.count, 1);
        assert_abs_diff_eq!(report.crossings[0].point.0, 0.5);
        assert_abs_diff_eq!(report.crossings[0].point.1, 0.5);
        // back-and-forth along one line: collinear overlaps are not transversal
        let pts = vec![(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (3.0, 0.0)];
        assert_eq!(detect_loop(&pts).unwrap().count, 0);
    }

    #[test]
    fn crossing_through_vertex_counts_once() {
        // second pass goes exactly through vertex (1, 1)
        let pts = vec![(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (2.0, 0.0), (0.0, 2.0)];
        assert_eq!(detect_loop(&pts).unwrap().count, 1);
    }

    #[test]
    fn still_path_has_one_loop() {
        let traj = ClosedFormTrajectory::build(0.0, 0.3, 0.1).unwrap();
        let report = count_loops(&traj, (-3.0, 3.0));
        assert_eq!(report.count, 1);
        // crossing where 2πt + k = ±y*, y* = 2 arctan y*
        assert_abs_diff_eq!(report.crossings[0].point.0, 0.384367165301465, epsilon = 1e-6);
        assert_abs_diff_eq!(report.crossings[0].point.1, 0.4211193742598206, epsilon = 1e-6);
    }

    #[test]
    fn undulating_paths_have_no_loops() {
        for &c0 in &[3.0, -2.0] {
            let traj = ClosedFormTrajectory::build(c0, 0.3, 0.1).unwrap();
            assert_eq!(count_loops(&traj, (0.0, 3.0)).count, 0);
        }
    }

    #[test]
    fn looping_paths_gain_one_loop_per_period() {
        // with enough drift the loops do not overlap their neighbours
        let traj = ClosedFormTrajectory::build(-0.2, 0.3, 0.1).unwrap();
        let t = traj.period().unwrap();
        let counts: Vec<usize> = (1..=5)
            .map(|p| count_loops(&traj, (0.0, p as f64 * t)).count)
            .collect();
        assert!(counts.windows(2).all(|w| w[1] == w[0] + 1), "{counts:?}");
        // c0 = −1 only has cusps
        let traj = ClosedFormTrajectory::build(-1.0, 0.3, 0.1).unwrap();
        let t = traj.period().unwrap();
        assert_eq!(count_loops(&traj, (0.0, 4.0 * t)).count, 0);
    }

    #[test]
    fn moderate_loops_follow_branch() {
        for &(c0, x0, loops) in &[(0.5, 0.3, 1), (0.9, 0.3, 1), (0.5, 0.05, 0), (1.5, 0.45, 0), (1.5, 0.3, 0)] {
            let traj = ClosedFormTrajectory::build(c0, x0, 0.1).unwrap();
            assert_eq!(count_loops(&traj, default_window(&traj)).count, loops, "c0 {c0} x0 {x0}");
        }
    }

    #[test]
    fn sweep_boundaries() {
        let rows = sweep(-3.0, 4.0, 0.25, 0.3, 0.1).unwrap();
        assert_eq!(rows.len(), 29);
        assert_eq!(rows.last().unwrap().c0, 4.0);
        for pair in rows.windows(2) {
            if pair[0].regime.kind != pair[1].regime.kind {
                let c = pair[1].c0;
                assert!(
                    [-1.0, 0.0, 0.25, 2.25].contains(&c),
                    "unexpected change at {c}"
                );
            }
        }
        let at = |c: f64| rows.iter().find(|r| r.c0 == c).unwrap();
        assert!(at(-1.0).regime.degenerate && at(2.0).regime.degenerate);
        assert_eq!(at(-1.0).regime.kind, RegimeKind::LoopingDriftRight);
        assert_eq!(at(2.0).regime.kind, RegimeKind::ParabolicOrSingleLoop);
        assert!(at(0.5).drift.is_none());
        assert!(at(-2.0).drift.unwrap() < 0.0);
        assert!(sweep(1.0, 0.0, 0.1, 0.3, 0.1).is_err());
        assert!(sweep(0.0, 1.0, 0.0, 0.3, 0.1).is_err());
    }
}
