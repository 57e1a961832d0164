//! Simulation toolkit for polarization-multiplexed coherent phase-OTDR.
//!
//! The library covers the full probing chain:
//!
//! - [`sequences`]: dual-polarization probing waveforms (Golay-BPSK pairs,
//!   CAZAC sequences, quadratic frequency sweeps) and spectrogram analysis;
//! - [`channel`]: random Rayleigh-backscatter channels built from per-segment
//!   Jones matrices;
//! - [`linksim`]: circular convolution of a probe with a channel, with
//!   optional laser phase noise and additive receiver noise;
//! - [`receiver`]: MIMO correlation estimation of the per-lag Jones response
//!   and phase extraction;
//! - [`metrics`]: estimation-error metrics, capacity formulas and aliasing
//!   profiles;
//! - [`experiments`] / [`io`]: reproducible experiment runners and CSV export.
//!
//! See the `examples/` directory for end-to-end usage of each capability.

pub mod channel;
pub mod error;
pub mod experiments;
pub mod fft;
pub mod io;
pub mod jones;
pub mod linksim;
pub mod metrics;
pub mod receiver;
pub mod sequences;

pub use channel::{generate_channel, ChannelRealization};
pub use error::{Error, Result};
pub use jones::Jones;
pub use linksim::{simulate_rx, NoiseConfig, ReceivedField};
pub use metrics::{
    aliasing_profile, det_relative_error, max_length, mechanical_bandwidth, phase_error,
    spatial_resolution,
};
pub use receiver::{differential_phase, estimate, extract_phase, EstimatedResponse};
pub use sequences::{build_probe, DualPolSequence, ProbeSpec, Scheme};
