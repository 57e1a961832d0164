//! Estimation-quality metrics and system capacity formulas.

use crate::channel::{ChannelRealization, SINGULAR_DET_THRESHOLD};
use crate::error::{Error, Result};
use crate::receiver::{wrap_half_turn, EstimatedResponse};
use crate::sequences::Scheme;

/// Cumulative-mean error curves versus probed distance.
#[derive(Debug, Clone)]
pub struct ErrorCurve {
    pub distances_m: Vec<f64>,
    pub det_rel_error: Vec<f64>,
    pub phase_error_rad: Vec<f64>,
    pub scheme: Scheme,
    pub seed_count: usize,
}

/// Mean over taps k <= up_to_index of |det(H_hat_k) − det(h_k)| / |det(h_k)|.
/// Near-singular reference taps are excluded.
pub fn det_relative_error(
    est: &EstimatedResponse,
    reference: &ChannelRealization,
    up_to_index: usize,
) -> Result<f64> {
    let span = (up_to_index + 1)
        .min(est.taps_hat.len())
        .min(reference.taps.len());
    let mut acc = 0.0;
    let mut count = 0usize;
    for k in 0..span {
        let det_ref = reference.taps[k].det();
        if det_ref.norm() < SINGULAR_DET_THRESHOLD {
            continue;
        }
        let det_est = est.taps_hat[k].det();
        acc += (det_est - det_ref).norm() / det_ref.norm();
        count += 1;
    }
    if count == 0 {
        return Err(Error::UndefinedMetric(
            "no usable taps for determinant error".into(),
        ));
    }
    Ok(acc / count as f64)
}

/// Mean over taps of |wrap_π(φ̂_k − φ_k)|, period-π wrapping.
/// Taps whose estimated or reference determinant is near-singular are
/// excluded.
pub fn phase_error(
    est: &EstimatedResponse,
    reference: &ChannelRealization,
    up_to_index: usize,
) -> Result<f64> {
    let span = (up_to_index + 1)
        .min(est.taps_hat.len())
        .min(reference.taps.len());
    let mut acc = 0.0;
    let mut count = 0usize;
    for k in 0..span {
        let det_ref = reference.taps[k].det();
        let det_est = est.taps_hat[k].det();
        if det_ref.norm() < SINGULAR_DET_THRESHOLD || det_est.norm() < SINGULAR_DET_THRESHOLD {
            continue;
        }
        let phi_ref = 0.5 * det_ref.arg();
        let phi_est = 0.5 * det_est.arg();
        acc += wrap_half_turn(phi_est - phi_ref).abs();
        count += 1;
    }
    if count == 0 {
        return Err(Error::UndefinedMetric("no usable taps for phase error".into()));
    }
    Ok(acc / count as f64)
}

/// Spatial resolution S_r = c_f / (2·F_symb), in meters.
pub fn spatial_resolution(f_symb: f64, c_f: f64) -> f64 {
    c_f / (2.0 * f_symb)
}

/// Maximal fiber length for perfect estimation: one quarter of the
/// period-equivalent distance for Golay codes, one half for CAZAC and sweep.
pub fn max_length(scheme: Scheme, n_sequence: usize, f_symb: f64, c_f: f64) -> f64 {
    let factor = match scheme {
        Scheme::GolayBpsk => 0.25,
        Scheme::Cazac | Scheme::Sweep => 0.5,
    };
    factor * n_sequence as f64 * c_f / (2.0 * f_symb)
}

/// Mechanical bandwidth BW = 1 / (2·T_period), in Hz.
pub fn mechanical_bandwidth(t_period: f64) -> f64 {
    1.0 / (2.0 * t_period)
}

/// Per-lag squared Frobenius norm over the full estimation window.
pub fn aliasing_profile(est: &EstimatedResponse) -> Vec<f64> {
    est.taps_hat.iter().map(|t| t.frob_sq()).collect()
}
