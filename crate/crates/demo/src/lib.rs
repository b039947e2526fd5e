//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export is a thin wrapper over a plain Rust function so the logic can
//! be unit-tested natively.

use wasm_bindgen::prelude::*;

use wavepaths::classify::default_window;
use wavepaths::{classify, measure_drift, ClosedFormTrajectory};

/// Flattened `[t, x, z, x', z']` rows of the closed-form path.
pub fn trace_rows(c0: f64, x0: f64, z0: f64, t0: f64, t1: f64, n: usize) -> Result<Vec<f64>, String> {
    if n < 2 || !(t0 < t1) {
        return Err(format!("need n >= 2 and t0 < t1, got n={n}, [{t0}, {t1}]"));
    }
    let traj = ClosedFormTrajectory::build(c0, x0, z0).map_err(|e| e.to_string())?;
    Ok(traj.sample(t0, t1, n).into_iter().flatten().collect())
}

/// Regime name, with the loop count of the default window appended.
pub fn regime_summary(c0: f64, x0: f64, z0: f64) -> Result<String, String> {
    let regime = classify(c0).map_err(|e| e.to_string())?;
    let traj = ClosedFormTrajectory::build(c0, x0, z0).map_err(|e| e.to_string())?;
    let loops = wavepaths::classify::count_loops(&traj, default_window(&traj)).count;
    Ok(format!("{regime}; {loops} self-intersection(s) in view"))
}

/// `[t_start, t_end]` that shows the characteristic shape of the path.
pub fn window(c0: f64, x0: f64, z0: f64) -> Result<Vec<f64>, String> {
    let traj = ClosedFormTrajectory::build(c0, x0, z0).map_err(|e| e.to_string())?;
    let (a, b) = default_window(&traj);
    Ok(vec![a, b])
}

/// `[period, displacement, mean velocity]`, or empty when the moving-frame
/// motion is not periodic.
pub fn drift_values(c0: f64, x0: f64, z0: f64) -> Vec<f64> {
    measure_drift(c0, x0, z0)
        .map(|d| vec![d.period, d.displacement, d.mean_velocity])
        .unwrap_or_default()
}

#[wasm_bindgen]
pub fn trace(c0: f64, x0: f64, z0: f64, t0: f64, t1: f64, n: usize) -> Result<Vec<f64>, JsError> {
    trace_rows(c0, x0, z0, t0, t1, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_js(c0: f64, x0: f64, z0: f64) -> Result<String, JsError> {
    regime_summary(c0, x0, z0).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = defaultWindow)]
pub fn default_window_js(c0: f64, x0: f64, z0: f64) -> Result<Vec<f64>, JsError> {
    window(c0, x0, z0).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn drift(c0: f64, x0: f64, z0: f64) -> Vec<f64> {
    drift_values(c0, x0, z0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_rows_are_flattened() {
        let flat = trace_rows(0.0, 0.3, 0.1, 0.0, 1.0, 3).unwrap();
        assert_eq!(flat.len(), 15);
        assert_eq!(&flat[..3], &[0.0, 0.3, 0.1]);
        assert_eq!(flat[10], 1.0);
    }

    #[test]
    fn trace_rejects_bad_window() {
        assert!(trace_rows(0.0, 0.3, 0.1, 1.0, 1.0, 10).is_err());
        assert!(trace_rows(0.0, 0.3, 0.1, 0.0, 1.0, 1).is_err());
        assert!(trace_rows(0.0, 0.3, -1.0, 0.0, 1.0, 10).is_err());
    }

    #[test]
    fn summary_names_regime_and_loops() {
        assert_eq!(
            regime_summary(0.0, 0.3, 0.1).unwrap(),
            "SingleLoop; 1 self-intersection(s) in view"
        );
        assert!(regime_summary(3.0, 0.3, 0.1).unwrap().starts_with("UndulatingRight; 0"));
        assert!(regime_summary(f64::NAN, 0.3, 0.1).is_err());
    }

    #[test]
    fn drift_only_for_periodic_currents() {
        assert!(drift_values(0.5, 0.3, 0.1).is_empty());
        let d = drift_values(3.0, 0.3, 0.1);
        assert!((d[0] - 1.0 / 3.0f64.sqrt()).abs() < 1e-14);
        assert!((d[1] - 1.5773502691896257).abs() < 1e-12);
    }

    #[test]
    fn window_is_ordered() {
        for c0 in [-2.0, -0.5, 0.0, 0.5, 2.0, 3.0] {
            let w = window(c0, 0.3, 0.1).unwrap();
            assert!(w[0] < w[1], "{c0}: {w:?}");
        }
    }
}
