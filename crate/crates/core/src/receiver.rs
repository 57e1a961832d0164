//! MIMO correlation receiver.
//!
//! All three schemes share one structure: each received polarization is
//! circularly cross-correlated against each of the two transmitted
//! waveforms, giving the four entries of the per-lag 2x2 response. The lag
//! axis splits into the alias-free span and the aliasing region; the latter
//! is kept in the window (it is the quantity the intensity plots display)
//! but excluded from error statistics.

use crate::channel::{phases_of_taps, PhaseTrack};
use crate::error::{Error, Result};
use crate::fft;
use crate::jones::Jones;
use crate::linksim::ReceivedField;
use crate::sequences::{circular_shift, golay_waveforms, CazacSequence, DualPolSequence, GolayPair, Scheme};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::ops::Range;

/// Per-lag estimated 2x2 responses over one full probing period.
#[derive(Debug, Clone)]
pub struct EstimatedResponse {
    pub taps_hat: Vec<Jones>,
    pub scheme: Scheme,
    /// Lag range where estimates are claimed alias-free.
    pub valid_span: Range<usize>,
}

impl EstimatedResponse {
    pub fn window_len(&self) -> usize {
        self.taps_hat.len()
    }
}

/// Correlate both received polarizations against both transmit waveforms.
/// `energy` is the per-waveform energy so an identity channel yields H_0 = I.
fn correlate_2x2(
    rx: &ReceivedField,
    tx_x: &[Complex64],
    tx_y: &[Complex64],
    energy: f64,
) -> Vec<Jones> {
    let n = tx_x.len();
    let mut taps_hat = vec![Jones::zero(); n];
    for (row, rx_p) in [&rx.rx_x, &rx.rx_y].into_iter().enumerate() {
        for (col, tx_q) in [tx_x, tx_y].into_iter().enumerate() {
            let g = fft::circular_xcorr(rx_p, tx_q);
            for (tap, v) in taps_hat.iter_mut().zip(g) {
                tap.m[row][col] = v / energy;
            }
        }
    }
    taps_hat
}

/// Estimate the channel from a CAZAC-probed capture. The pol-Y probe is the
/// N/2 circular shift of `c`, so its response occupies the second half of
/// the lag axis; alias-free estimates cover lags [0, N/2).
pub fn estimate_cazac(rx: &ReceivedField, c: &CazacSequence) -> Result<EstimatedResponse> {
    let n = c.len();
    if rx.period() != n {
        return Err(Error::InvalidArgument(format!(
            "received period {} does not match CAZAC length {n}",
            rx.period()
        )));
    }
    let tx_y = circular_shift(&c.symbols, n / 2)?;
    let taps_hat = correlate_2x2(rx, &c.symbols, &tx_y, n as f64);
    Ok(EstimatedResponse {
        taps_hat,
        scheme: Scheme::Cazac,
        valid_span: 0..n / 2,
    })
}

/// Estimate the channel from a Golay-probed capture using the two
/// complementary composites. Alias-free estimates cover one quarter of the
/// 2·N_el period.
pub fn estimate_golay(
    rx: &ReceivedField,
    pair: &GolayPair,
    mate: &GolayPair,
) -> Result<EstimatedResponse> {
    let period = 2 * pair.len();
    if rx.period() != period || mate.len() != pair.len() {
        return Err(Error::InvalidArgument(format!(
            "received period {} does not match Golay period {period}",
            rx.period()
        )));
    }
    let (tx_x, tx_y) = golay_waveforms(pair, mate);
    let taps_hat = correlate_2x2(rx, &tx_x, &tx_y, period as f64);
    Ok(EstimatedResponse {
        taps_hat,
        scheme: Scheme::GolayBpsk,
        valid_span: 0..period / 4,
    })
}

/// Estimate the channel from a sweep-probed capture. Same lag-splitting
/// structure as CAZAC but the real chirp is not a perfect sequence, so
/// estimates carry residual leakage and no exactness is claimed.
pub fn estimate_sweep(rx: &ReceivedField, probe: &DualPolSequence) -> Result<EstimatedResponse> {
    if probe.scheme != Scheme::Sweep {
        return Err(Error::InvalidArgument(format!(
            "estimate_sweep needs a Sweep probe, got {:?}",
            probe.scheme
        )));
    }
    let n = probe.period();
    if rx.period() != n {
        return Err(Error::InvalidArgument(format!(
            "received period {} does not match sweep period {n}",
            rx.period()
        )));
    }
    let energy: f64 = probe.pol_x.iter().map(|v| v.norm_sqr()).sum();
    let taps_hat = correlate_2x2(rx, &probe.pol_x, &probe.pol_y, energy);
    Ok(EstimatedResponse {
        taps_hat,
        scheme: Scheme::Sweep,
        valid_span: 0..n / 2,
    })
}

/// Dispatch on the probe's scheme.
pub fn estimate(rx: &ReceivedField, probe: &DualPolSequence) -> Result<EstimatedResponse> {
    match probe.scheme {
        Scheme::Cazac => {
            let n = probe.period();
            // probe pol X is the CAZAC sequence itself
            let m = n.trailing_zeros() / 2;
            let c = CazacSequence {
                symbols: probe.pol_x.clone(),
                m,
            };
            estimate_cazac(rx, &c)
        }
        Scheme::GolayBpsk => {
            let n_el = probe.period() / 2;
            let pair = GolayPair {
                a: probe.pol_x[..n_el].iter().map(|v| v.re.round() as i32).collect(),
                b: probe.pol_x[n_el..].iter().map(|v| v.re.round() as i32).collect(),
            };
            let mate = crate::sequences::mate_pair(&pair);
            estimate_golay(rx, &pair, &mate)
        }
        Scheme::Sweep => estimate_sweep(rx, probe),
    }
}

/// Wrap into (−π/2, π/2] with period π.
pub fn wrap_half_turn(x: f64) -> f64 {
    let y = x.rem_euclid(PI);
    if y > PI / 2.0 {
        y - PI
    } else {
        y
    }
}

/// φ̂_k = 0.5·arg(det(Ĥ_k)) over the alias-free span, branch (−π/2, π/2].
pub fn extract_phase(resp: &EstimatedResponse) -> PhaseTrack {
    phases_of_taps(&resp.taps_hat[resp.valid_span.clone()])
}

/// Phases relative to a reference tap, half-turn arithmetic (period π).
pub fn differential_phase(track: &PhaseTrack, reference_index: usize) -> Result<Vec<f64>> {
    if reference_index >= track.phases.len() {
        return Err(Error::InvalidArgument(format!(
            "reference index {reference_index} outside span of {}",
            track.phases.len()
        )));
    }
    if track.flagged.contains(&reference_index) {
        return Err(Error::FlaggedReference {
            index: reference_index,
        });
    }
    let phi_ref = track.phases[reference_index];
    Ok(track
        .phases
        .iter()
        .map(|&p| wrap_half_turn(p - phi_ref))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelRealization;
    use crate::linksim::{simulate_rx, NoiseConfig};
    use crate::sequences::{build_probe, generate_cazac, generate_golay_pair, mate_pair, ProbeSpec};

    fn synthetic_channel(taps: Vec<Jones>) -> ChannelRealization {
        ChannelRealization {
            fiber_length: taps.len() as f64 * 2.0,
            taps,
            segment_length: 2.0,
            alpha_db_per_km: 0.0,
            c_f: 2e8,
            seed: 0,
        }
    }

    fn max_rel_err(est: &EstimatedResponse, truth: &[Jones]) -> f64 {
        let span = truth.len().min(est.valid_span.end);
        (0..span)
            .map(|k| {
                let d = (est.taps_hat[k] - truth[k]).frob_sq().sqrt();
                let r = truth[k].frob_sq().sqrt();
                if r > 0.0 {
                    d / r
                } else {
                    d
                }
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn cazac_single_identity_tap() {
        let probe = build_probe(ProbeSpec::Cazac { m: 2 }, 50e6).unwrap();
        let ch = synthetic_channel(vec![Jones::identity(), Jones::zero()]);
        let rx = simulate_rx(&probe, &ch, &NoiseConfig::noiseless(0)).unwrap();
        let c = generate_cazac(2).unwrap();
        let est = estimate_cazac(&rx, &c).unwrap();
        let diff = est.taps_hat[0] - Jones::identity();
        assert!(diff.frob_sq().sqrt() < 1e-12);
        for k in 1..est.valid_span.end {
            assert!(est.taps_hat[k].frob_sq() < 1e-20);
        }
    }

    #[test]
    fn golay_single_identity_tap() {
        let probe = build_probe(ProbeSpec::GolayBpsk { k: 2 }, 50e6).unwrap();
        let ch = synthetic_channel(vec![Jones::identity()]);
        let rx = simulate_rx(&probe, &ch, &NoiseConfig::noiseless(0)).unwrap();
        let pair = generate_golay_pair(2).unwrap();
        let mate = mate_pair(&pair);
        let est = estimate_golay(&rx, &pair, &mate).unwrap();
        let diff = est.taps_hat[0] - Jones::identity();
        assert!(diff.frob_sq().sqrt() < 1e-12);
        for k in 1..est.valid_span.end {
            assert!(est.taps_hat[k].frob_sq() < 1e-20);
        }
    }

    #[test]
    fn cazac_exact_within_half_period_corrupted_beyond() {
        let probe = build_probe(ProbeSpec::Cazac { m: 4 }, 50e6).unwrap();
        let n = probe.period();
        let c = generate_cazac(4).unwrap();

        let clean = crate::channel::generate_channel(n as f64 / 2.0 * 2.0, 50e6, 0.0, 2e8, 8).unwrap();
        assert_eq!(clean.num_taps(), n / 2);
        let rx = simulate_rx(&probe, &clean, &NoiseConfig::noiseless(0)).unwrap();
        let est = estimate_cazac(&rx, &c).unwrap();
        assert!(max_rel_err(&est, &clean.taps) < 1e-9);

        let over = crate::channel::generate_channel((n / 2 + 8) as f64 * 2.0, 50e6, 0.0, 2e8, 8).unwrap();
        let rx = simulate_rx(&probe, &over, &NoiseConfig::noiseless(0)).unwrap();
        let est = estimate_cazac(&rx, &c).unwrap();
        assert!(max_rel_err(&est, &over.taps) > 1e-2);
    }

    #[test]
    fn golay_exact_within_quarter_period_corrupted_beyond() {
        let probe = build_probe(ProbeSpec::GolayBpsk { k: 6 }, 50e6).unwrap();
        let period = probe.period();
        let pair = generate_golay_pair(6).unwrap();
        let mate = mate_pair(&pair);

        let clean = crate::channel::generate_channel((period / 4) as f64 * 2.0, 50e6, 0.0, 2e8, 9).unwrap();
        let rx = simulate_rx(&probe, &clean, &NoiseConfig::noiseless(0)).unwrap();
        let est = estimate_golay(&rx, &pair, &mate).unwrap();
        assert!(max_rel_err(&est, &clean.taps) < 1e-9);

        let over = crate::channel::generate_channel((period / 4 + period / 8) as f64 * 2.0, 50e6, 0.0, 2e8, 9).unwrap();
        let rx = simulate_rx(&probe, &over, &NoiseConfig::noiseless(0)).unwrap();
        let est = estimate_golay(&rx, &pair, &mate).unwrap();
        assert!(max_rel_err(&est, &over.taps) > 1e-2);
    }

    #[test]
    fn sweep_identity_tap_has_leakage_but_recovers_peak() {
        let probe = build_probe(ProbeSpec::Sweep { n_total: 256 }, 50e6).unwrap();
        let ch = synthetic_channel(vec![Jones::identity(), Jones::zero()]);
        let rx = simulate_rx(&probe, &ch, &NoiseConfig::noiseless(0)).unwrap();
        let est = estimate_sweep(&rx, &probe).unwrap();
        let diff = est.taps_hat[0] - Jones::identity();
        assert!(diff.frob_sq().sqrt() < 0.2);
        let leak: f64 = (1..est.valid_span.end)
            .map(|k| est.taps_hat[k].frob_sq())
            .sum();
        assert!(leak > 0.0);
    }

    #[test]
    fn sweep_zero_channel_gives_zero_estimate() {
        let probe = build_probe(ProbeSpec::Sweep { n_total: 64 }, 50e6).unwrap();
        let ch = synthetic_channel(vec![Jones::zero(), Jones::zero()]);
        let rx = simulate_rx(&probe, &ch, &NoiseConfig::noiseless(0)).unwrap();
        let est = estimate_sweep(&rx, &probe).unwrap();
        assert!(est.taps_hat.iter().all(|t| t.frob_sq() < 1e-24));
    }

    #[test]
    fn scheme_mismatch_and_length_mismatch_rejected() {
        let sweep = build_probe(ProbeSpec::Sweep { n_total: 128 }, 50e6).unwrap();
        let cazac = build_probe(ProbeSpec::Cazac { m: 3 }, 50e6).unwrap();
        let ch = synthetic_channel(vec![Jones::identity(), Jones::zero()]);
        let rx = simulate_rx(&cazac, &ch, &NoiseConfig::noiseless(0)).unwrap();
        assert!(estimate_sweep(&rx, &cazac).is_err());
        assert!(estimate_sweep(&rx, &sweep).is_err());
        let c = generate_cazac(2).unwrap();
        assert!(estimate_cazac(&rx, &c).is_err());
    }

    #[test]
    fn wrap_half_turn_cases() {
        assert_eq!(wrap_half_turn(0.0), 0.0);
        assert!((wrap_half_turn(0.2) - 0.2).abs() < 1e-15);
        assert!((wrap_half_turn(PI) - 0.0).abs() < 1e-15);
        assert!((wrap_half_turn(-3.0) - (PI - 3.0)).abs() < 1e-12);
        // boundary lands on +π/2, not −π/2
        assert!((wrap_half_turn(PI / 2.0) - PI / 2.0).abs() < 1e-15);
        assert!((wrap_half_turn(-PI / 2.0) - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn differential_phase_cases() {
        let track = PhaseTrack {
            phases: vec![0.1, 0.3],
            flagged: vec![],
        };
        let d = differential_phase(&track, 0).unwrap();
        assert!((d[0]).abs() < 1e-15);
        assert!((d[1] - 0.2).abs() < 1e-15);

        let constant = PhaseTrack {
            phases: vec![0.7; 5],
            flagged: vec![],
        };
        let d = differential_phase(&constant, 2).unwrap();
        assert!(d.iter().all(|&v| v.abs() < 1e-15));

        let wrapping = PhaseTrack {
            phases: vec![1.5, -1.5],
            flagged: vec![],
        };
        let d = differential_phase(&wrapping, 0).unwrap();
        assert!((d[1] - (PI - 3.0)).abs() < 1e-12);

        let flagged = PhaseTrack {
            phases: vec![f64::NAN, 0.2],
            flagged: vec![0],
        };
        assert!(matches!(
            differential_phase(&flagged, 0),
            Err(Error::FlaggedReference { index: 0 })
        ));
        assert!(differential_phase(&flagged, 1).is_ok());
    }

    #[test]
    fn extract_phase_invariant_to_positive_scaling() {
        let probe = build_probe(ProbeSpec::Cazac { m: 3 }, 50e6).unwrap();
        // channel fills the whole alias-free span so no tap sits near the
        // singular-determinant flag threshold
        let ch = crate::channel::generate_channel(64.0, 50e6, 0.0, 2e8, 12).unwrap();
        let rx = simulate_rx(&probe, &ch, &NoiseConfig::noiseless(0)).unwrap();
        let mut est = estimate(&rx, &probe).unwrap();
        let base = extract_phase(&est);
        assert!(base.flagged.is_empty());
        for t in &mut est.taps_hat {
            *t = t.scale(Complex64::new(3.5, 0.0));
        }
        let scaled = extract_phase(&est);
        for (a, b) in base.phases.iter().zip(&scaled.phases) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
