//! Ground-truth dual-polarization Rayleigh backscatter channel.
//!
//! The fiber is split into segments of length S_r = c_f/(2·F_symb), one
//! symbol-spaced delay each. Segment i carries a round-trip Jones matrix
//! h_i = a_i·r_i·(F_iᵀ·F_i): F_i is the cumulative forward birefringence up
//! to segment i, r_i a circular complex Gaussian scatter coefficient, and
//! a_i the two-way amplitude attenuation. The transpose on the return path
//! follows from reciprocity of backscatter, which also makes every tap
//! complex-symmetric.

use crate::error::{Error, Result};
use crate::jones::Jones;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::f64::consts::PI;

/// Standard deviation of the per-segment birefringence retardation (rad).
const BIREFRINGENCE_STD: f64 = 0.05;

/// Taps with |det| below this are flagged and excluded from phase averages.
pub const SINGULAR_DET_THRESHOLD: f64 = 1e-30;

/// One segment's round-trip 2x2 response.
pub type JonesTap = Jones;

/// An ordered set of per-segment round-trip Jones matrices plus the
/// parameters and seed that generated it.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    pub taps: Vec<JonesTap>,
    /// Spatial resolution S_r in meters.
    pub segment_length: f64,
    pub fiber_length: f64,
    pub alpha_db_per_km: f64,
    /// Light velocity in the fiber core, m/s.
    pub c_f: f64,
    pub seed: u64,
}

impl ChannelRealization {
    pub fn num_taps(&self) -> usize {
        self.taps.len()
    }

    /// Round-trip time spread 2L/c_f in seconds.
    pub fn time_spread(&self) -> f64 {
        2.0 * self.fiber_length / self.c_f
    }

    /// Truncated copy keeping only the first `n` taps (a shorter fiber cut
    /// from the same realization).
    pub fn truncated(&self, n: usize) -> ChannelRealization {
        let n = n.min(self.taps.len());
        ChannelRealization {
            taps: self.taps[..n].to_vec(),
            fiber_length: n as f64 * self.segment_length,
            ..self.clone()
        }
    }
}

/// Draw one Rayleigh backscatter realization.
///
/// Deterministic given (parameters, seed).
pub fn generate_channel(
    fiber_length: f64,
    f_symb: f64,
    alpha_db_per_km: f64,
    c_f: f64,
    seed: u64,
) -> Result<ChannelRealization> {
    if fiber_length <= 0.0 || f_symb <= 0.0 || c_f <= 0.0 {
        return Err(Error::InvalidArgument(
            "fiber length, symbol rate and c_f must be positive".into(),
        ));
    }
    if alpha_db_per_km < 0.0 {
        return Err(Error::InvalidArgument("attenuation must be >= 0".into()));
    }
    let segment_length = c_f / (2.0 * f_symb);
    let n_taps = (fiber_length / segment_length).floor() as usize;
    if n_taps < 2 {
        return Err(Error::DegenerateChannel(format!(
            "fiber of {fiber_length} m spans fewer than 2 segments of {segment_length} m"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let beta_dist = Normal::new(0.0, BIREFRINGENCE_STD).expect("valid std");
    let scatter = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("valid std");

    let mut taps = Vec::with_capacity(n_taps);
    let mut forward = Jones::identity();
    for i in 0..n_taps {
        // random unitary birefringence element for this segment
        let theta: f64 = rng.gen_range(0.0..PI);
        let beta: f64 = beta_dist.sample(&mut rng);
        let element = Jones::rotation(theta)
            * Jones::phase_plate(beta / 2.0, -beta / 2.0)
            * Jones::rotation(-theta);
        forward = element * forward;

        let r = Complex64::new(scatter.sample(&mut rng), scatter.sample(&mut rng));
        let distance_km = i as f64 * segment_length / 1000.0;
        let attenuation = 10f64.powf(-alpha_db_per_km * distance_km / 10.0);

        let round_trip = forward.transpose() * forward;
        taps.push(round_trip.scale(r * attenuation));
    }

    Ok(ChannelRealization {
        taps,
        segment_length,
        fiber_length,
        alpha_db_per_km,
        c_f,
        seed,
    })
}

/// Per-tap squared Frobenius norm (backscattered intensity per segment).
pub fn tap_intensity_profile(ch: &ChannelRealization) -> Vec<f64> {
    ch.taps.iter().map(|t| t.frob_sq()).collect()
}

/// Phases extracted from a list of taps along with the near-singular indices
/// that must be excluded from error averages.
#[derive(Debug, Clone)]
pub struct PhaseTrack {
    /// φ_i = 0.5·arg(det(h_i)) in (−π/2, π/2]; NaN at flagged indices.
    pub phases: Vec<f64>,
    pub flagged: Vec<usize>,
}

/// 0.5·arg(det(h)) for each tap, branch (−π/2, π/2].
pub fn phases_of_taps(taps: &[Jones]) -> PhaseTrack {
    let mut phases = Vec::with_capacity(taps.len());
    let mut flagged = Vec::new();
    for (i, tap) in taps.iter().enumerate() {
        let det = tap.det();
        if det.norm() < SINGULAR_DET_THRESHOLD {
            phases.push(f64::NAN);
            flagged.push(i);
        } else {
            phases.push(0.5 * det.arg());
        }
    }
    PhaseTrack { phases, flagged }
}

/// Ground-truth phase per segment of a channel realization.
pub fn true_phase(ch: &ChannelRealization) -> PhaseTrack {
    phases_of_taps(&ch.taps)
}
