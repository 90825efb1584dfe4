//! Device-level metrics: transmission gap, NDR peak/valley, steepest
//! negative differential conductance, cutoff frequency, family trends.

use crate::config::{derive, DeviceConfig};
use crate::landauer::IVCurve;
use serde::Serialize;
use thiserror::Error;

/// Detection threshold for "zero" transmission. In-gap transmission is
/// exactly 0 by construction; the threshold only exists to tolerate
/// future evanescent-mode contributions.
pub const GAP_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("no zero-transmission interval found")]
    NoGapFound,
    #[error("no negative-differential-resistance region detected")]
    NoNdrDetected,
    #[error("gap width is zero at normal incidence (phi1 = 0)")]
    ZeroWidthGap,
}

/// Detected and predicted transmission-gap edges (mV).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapReport {
    /// First bias of the detected zero-transmission run.
    pub v_low: f64,
    /// Last bias of the detected run.
    pub v_high: f64,
    /// Analytic lower edge `2(V0 - E_F) - 2ħv_F|k_y|`.
    pub predicted_low: f64,
    /// Analytic upper edge `2(V0 - E_F) + 2ħv_F|k_y|`.
    pub predicted_high: f64,
    /// Detected width `v_high - v_low`.
    pub width: f64,
}

/// NDR metrics extracted from an I-V curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NdrReport {
    /// Peak position (mV).
    pub v_peak: f64,
    /// Peak current.
    pub i_peak: f64,
    /// Valley position (mV).
    pub v_valley: f64,
    /// Valley current.
    pub i_valley: f64,
    /// Peak-to-valley ratio.
    pub pvr: f64,
    /// Most negative central-difference dI/dV (per mV).
    pub min_didv: f64,
    /// Ballistic cutoff frequency `v_F/2πD` (THz).
    pub f_c_thz: f64,
}

/// Family trend verdict across an ordered parameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendVerdict {
    /// Peak-to-valley ratio strictly increases along the family.
    pub pvr_increasing: bool,
    /// Peak current strictly decreases along the family.
    pub peak_current_decreasing: bool,
    /// The varied parameter values.
    pub parameter: Vec<f64>,
    /// Per-member peak-to-valley ratios.
    pub pvr: Vec<f64>,
    /// Per-member peak currents.
    pub i_peak: Vec<f64>,
}

/// Analytic bias interval of total reflection: `|E_F - V0 + eV/2| <
/// ħv_F|k_y|` solved for eV, i.e. `2(V0 - E_F) ∓ 2ħv_F|k_y|` in mV.
pub fn analytic_gap(cfg: &DeviceConfig) -> Result<(f64, f64), AnalysisError> {
    let dq = derive(cfg);
    let half_width = 2.0 * dq.hbar_vf * dq.k_y.abs();
    if half_width == 0.0 {
        return Err(AnalysisError::ZeroWidthGap);
    }
    let center = 2.0 * (cfg.v0_mev - cfg.e_f_mev());
    Ok((center - half_width, center + half_width))
}

/// Locate the longest contiguous run of `T ≤ threshold` on a strictly
/// increasing bias grid and pair it with the analytic edges.
pub fn find_gap(
    samples: &[(f64, f64)],
    threshold: f64,
    cfg: &DeviceConfig,
) -> Result<GapReport, AnalysisError> {
    assert!(samples.len() >= 3, "find_gap needs at least 3 samples");
    assert!(
        samples.windows(2).all(|w| w[0].0 < w[1].0),
        "find_gap needs a strictly increasing bias grid"
    );
    let mut best: Option<(usize, usize)> = None;
    let mut run_start: Option<usize> = None;
    for (i, &(_, t)) in samples.iter().enumerate() {
        if t <= threshold {
            run_start.get_or_insert(i);
        } else if let Some(s) = run_start.take() {
            if best.is_none_or(|(bs, be)| i - 1 - s > be - bs) {
                best = Some((s, i - 1));
            }
        }
    }
    if let Some(s) = run_start {
        let e = samples.len() - 1;
        if best.is_none_or(|(bs, be)| e - s > be - bs) {
            best = Some((s, e));
        }
    }
    let (s, e) = best.ok_or(AnalysisError::NoGapFound)?;
    let (predicted_low, predicted_high) = analytic_gap(cfg)?;
    let (v_low, v_high) = (samples[s].0, samples[e].0);
    Ok(GapReport {
        v_low,
        v_high,
        predicted_low,
        predicted_high,
        width: v_high - v_low,
    })
}

/// Extract the first NDR region of an I-V curve.
///
/// The peak is the global maximum over interior points preceding the first
/// local minimum that has a greater earlier sample; the valley is the
/// global minimum on `(V_peak, V_stop]`. Peak and valley are reported at
/// grid points, without interpolation. Comparisons are strict, on the
/// sampled values.
pub fn extract_ndr(curve: &IVCurve) -> Result<NdrReport, AnalysisError> {
    let pts: Vec<(f64, f64)> = curve
        .points
        .iter()
        .filter(|p| p.v_mv >= 0.0)
        .map(|p| (p.v_mv, p.i_norm))
        .collect();
    assert!(
        curve.points.len() >= 10 && !pts.is_empty(),
        "extract_ndr needs ≥ 10 points with a V ≥ 0 region"
    );
    let i_of = |k: usize| pts[k].1;
    let n = pts.len();

    // first interior local minimum preceded by a strictly greater sample
    let mut first_min = None;
    let mut running_max = i_of(0);
    for m in 1..n - 1 {
        running_max = running_max.max(i_of(m - 1));
        if i_of(m) <= i_of(m - 1) && i_of(m) <= i_of(m + 1) && running_max > i_of(m) {
            first_min = Some(m);
            break;
        }
    }
    let m = first_min.ok_or(AnalysisError::NoNdrDetected)?;
    let peak = (1..=m.min(n - 2))
        .max_by(|&i, &j| i_of(i).total_cmp(&i_of(j)).then(j.cmp(&i)))
        .ok_or(AnalysisError::NoNdrDetected)?;
    let valley = (peak + 1..n)
        .min_by(|&i, &j| i_of(i).total_cmp(&i_of(j)).then(i.cmp(&j)))
        .ok_or(AnalysisError::NoNdrDetected)?;
    let (i_peak, i_valley) = (i_of(peak), i_of(valley));
    let genuine_drop = i_valley < i_peak && i_valley > 0.0;
    if !genuine_drop {
        return Err(AnalysisError::NoNdrDetected);
    }

    let mut min_didv = f64::INFINITY;
    for k in 1..n - 1 {
        let slope = (i_of(k + 1) - i_of(k - 1)) / (pts[k + 1].0 - pts[k - 1].0);
        min_didv = min_didv.min(slope);
    }

    Ok(NdrReport {
        v_peak: pts[peak].0,
        i_peak,
        v_valley: pts[valley].0,
        i_valley,
        pvr: i_peak / i_valley,
        min_didv,
        f_c_thz: cutoff_frequency(&curve.config_echo),
    })
}

/// Ballistic transit-time cutoff frequency `v_F/(2πD)` in THz.
pub fn cutoff_frequency(cfg: &DeviceConfig) -> f64 {
    cfg.v_f / (2.0 * std::f64::consts::PI * cfg.d_nm * 1e-9) / 1e12
}

/// Check the monotone trends of an ordered family of NDR reports.
///
/// `family` pairs the strictly increasing varied parameter with each
/// member's report. The verdict is never an error; both booleans may be
/// false.
pub fn trend_check(family: &[(f64, NdrReport)]) -> TrendVerdict {
    assert!(family.len() >= 2, "trend_check needs at least 2 reports");
    assert!(
        family.windows(2).all(|w| w[0].0 < w[1].0),
        "trend_check needs a strictly increasing parameter"
    );
    let parameter: Vec<f64> = family.iter().map(|(p, _)| *p).collect();
    let pvr: Vec<f64> = family.iter().map(|(_, r)| r.pvr).collect();
    let i_peak: Vec<f64> = family.iter().map(|(_, r)| r.i_peak).collect();
    TrendVerdict {
        pvr_increasing: pvr.windows(2).all(|w| w[0] < w[1]),
        peak_current_decreasing: i_peak.windows(2).all(|w| w[0] > w[1]),
        parameter,
        pvr,
        i_peak,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landauer::IVPoint;

    fn cfg(json: &str) -> DeviceConfig {
        DeviceConfig::from_json_str(json).unwrap()
    }

    fn fig2_cfg(alpha: f64) -> DeviceConfig {
        cfg(&format!(
            r#"{{"alpha": {alpha}, "D": 100, "V0": 200, "phi1": 15}}"#
        ))
    }

    fn synthetic_curve(i: &[f64]) -> IVCurve {
        let points = i
            .iter()
            .enumerate()
            .map(|(k, &i_norm)| IVPoint {
                v_mv: k as f64 * 10.0,
                i_norm,
                est_error: 0.0,
                n_evals: 0,
                converged: true,
            })
            .collect();
        IVCurve {
            points,
            config_echo: fig2_cfg(0.3),
        }
    }

    #[test]
    fn analytic_gap_reference_values() {
        let c = fig2_cfg(0.3);
        let (lo, hi) = analytic_gap(&c).unwrap();
        let center = 0.5 * (lo + hi);
        let width = hi - lo;
        assert!((center - 350.4).abs() < 0.1, "center = {center}");
        assert!((width - 25.7).abs() < 0.1, "width = {width}");
        // algebraic identity: width = 4·E_F·sin(phi1)
        let expected = 4.0 * c.e_f_mev() * c.phi1_rad().sin();
        assert!((width - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn analytic_gap_vanishes_at_normal_incidence() {
        let c = cfg(r#"{"alpha": 0.3, "D": 100, "V0": 200, "phi1": 0}"#);
        assert_eq!(analytic_gap(&c), Err(AnalysisError::ZeroWidthGap));
    }

    #[test]
    fn analytic_gap_width_grows_with_alpha() {
        let widths: Vec<f64> = [0.25, 0.3, 0.35]
            .iter()
            .map(|&a| {
                let (lo, hi) = analytic_gap(&fig2_cfg(a)).unwrap();
                hi - lo
            })
            .collect();
        assert!(widths[0] < widths[1] && widths[1] < widths[2], "{widths:?}");
    }

    #[test]
    fn find_gap_on_constructed_run() {
        let c = fig2_cfg(0.3);
        let samples: Vec<(f64, f64)> = (0..=30)
            .map(|k| {
                let v = k as f64;
                let t = if (10.0..=20.0).contains(&v) { 0.0 } else { 0.9 };
                (v, t)
            })
            .collect();
        let gap = find_gap(&samples, GAP_THRESHOLD, &c).unwrap();
        assert_eq!(gap.v_low, 10.0);
        assert_eq!(gap.v_high, 20.0);
        assert_eq!(gap.width, 10.0);
    }

    #[test]
    fn find_gap_requires_a_zero_run() {
        let c = fig2_cfg(0.3);
        let samples: Vec<(f64, f64)> = (0..10).map(|k| (k as f64, 1.0)).collect();
        assert_eq!(
            find_gap(&samples, GAP_THRESHOLD, &c),
            Err(AnalysisError::NoGapFound)
        );
    }

    #[test]
    fn find_gap_picks_longest_run_and_handles_trailing() {
        let c = fig2_cfg(0.3);
        let t = [1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let samples: Vec<(f64, f64)> =
            t.iter().enumerate().map(|(k, &t)| (k as f64, t)).collect();
        let gap = find_gap(&samples, GAP_THRESHOLD, &c).unwrap();
        assert_eq!((gap.v_low, gap.v_high), (3.0, 5.0));
    }

    #[test]
    fn extract_ndr_reference_curve() {
        let curve = synthetic_curve(&[0.0, 2.0, 4.0, 3.0, 1.0, 2.0, 3.0, 3.1, 3.2, 3.3]);
        let ndr = extract_ndr(&curve).unwrap();
        assert_eq!(ndr.i_peak, 4.0);
        assert_eq!(ndr.i_valley, 1.0);
        assert_eq!(ndr.pvr, 4.0);
        assert_eq!(ndr.v_peak, 20.0);
        assert_eq!(ndr.v_valley, 40.0);
        assert!(ndr.v_peak < ndr.v_valley);
        assert!(ndr.min_didv < 0.0);
    }

    #[test]
    fn extract_ndr_rejects_monotone_curves() {
        let curve = synthetic_curve(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]);
        assert_eq!(extract_ndr(&curve), Err(AnalysisError::NoNdrDetected));
    }

    #[test]
    fn extract_ndr_is_scale_invariant() {
        let base = synthetic_curve(&[0.0, 2.0, 4.0, 3.0, 1.0, 2.0, 3.0, 3.1, 3.2, 3.3]);
        let scaled = synthetic_curve(&[0.0, 6.0, 12.0, 9.0, 3.0, 6.0, 9.0, 9.3, 9.6, 9.9]);
        let (a, b) = (extract_ndr(&base).unwrap(), extract_ndr(&scaled).unwrap());
        assert_eq!(a.v_peak, b.v_peak);
        assert_eq!(a.v_valley, b.v_valley);
        assert!((a.pvr - b.pvr).abs() < 1e-12);
        assert!((b.i_peak - 3.0 * a.i_peak).abs() < 1e-12);
    }

    #[test]
    fn cutoff_frequency_reference_values() {
        let c = cfg(r#"{"alpha": 0.3, "D": 100, "V0": 200, "phi1": 15}"#);
        let f = cutoff_frequency(&c);
        assert!((f - 1.59).abs() < 0.01, "f_c = {f}");
        assert!((1.55..=1.65).contains(&f));

        let half = cfg(r#"{"alpha": 0.3, "D": 50, "V0": 200, "phi1": 15}"#);
        let f50 = cutoff_frequency(&half);
        assert!((f50 - 3.18).abs() < 0.01, "f_c(50 nm) = {f50}");
        // f_c · D is constant in D for fixed v_F
        assert!((f50 * 50.0 - f * 100.0).abs() <= 1e-12 * f * 100.0);
    }

    #[test]
    fn trend_check_flags_constant_families() {
        let curve = synthetic_curve(&[0.0, 2.0, 4.0, 3.0, 1.0, 2.0, 3.0, 3.1, 3.2, 3.3]);
        let r = extract_ndr(&curve).unwrap();
        let verdict = trend_check(&[(0.25, r), (0.3, r), (0.35, r)]);
        assert!(!verdict.pvr_increasing);
        assert!(!verdict.peak_current_decreasing);
        assert_eq!(verdict.pvr.len(), 3);
    }

    #[test]
    fn trend_check_detects_proper_orderings() {
        let mk = |peak: f64, valley: f64| {
            let curve = synthetic_curve(&[
                0.0, 1.0, peak, peak / 2.0, valley, valley, valley, valley, valley, valley,
            ]);
            extract_ndr(&curve).unwrap()
        };
        let verdict = trend_check(&[
            (10.0, mk(8.0, 2.0)),
            (15.0, mk(7.0, 1.5)),
            (20.0, mk(6.0, 1.0)),
        ]);
        assert!(verdict.pvr_increasing, "{:?}", verdict.pvr);
        assert!(verdict.peak_current_decreasing, "{:?}", verdict.i_peak);
    }
}
