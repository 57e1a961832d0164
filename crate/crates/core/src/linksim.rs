//! Received-field synthesis: the probe sent periodically through the
//! channel, plus laser phase noise and receiver AWGN.
//!
//! With periodic transmission the steady-state output is the circular
//! convolution of the probe with the tap sequence. The noiseless path runs
//! through the FFT; when laser phase noise is enabled the sum is evaluated
//! per tap because each tap carries its own delay-differential phase.

use crate::channel::ChannelRealization;
use crate::error::Result;
use crate::fft;
use crate::jones::Jones;
use crate::sequences::DualPolSequence;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::f64::consts::PI;

const PHASE_NOISE_SALT: u64 = 0x9e37_79b9_7f4a_7c15;
const AWGN_SALT: u64 = 0x2545_f491_4f6c_dd1d;

/// Receiver and laser noise parameters.
#[derive(Debug, Clone, Copy)]
pub struct NoiseConfig {
    /// Per-sample complex-noise standard deviation (field units).
    pub awgn_sigma: f64,
    /// Lorentzian laser linewidth Δf in Hz; 0 disables phase noise.
    pub linewidth_hz: f64,
    pub seed: u64,
}

impl NoiseConfig {
    pub fn noiseless(seed: u64) -> Self {
        NoiseConfig {
            awgn_sigma: 0.0,
            linewidth_hz: 0.0,
            seed,
        }
    }
}

/// One steady-state probing period at the receiver.
#[derive(Debug, Clone)]
pub struct ReceivedField {
    pub rx_x: Vec<Complex64>,
    pub rx_y: Vec<Complex64>,
    /// The probe that produced this field.
    pub probe: DualPolSequence,
    /// Set when the channel spread reaches the probe period; every scheme is
    /// outside its validity condition and aliasing is guaranteed.
    pub aliased: bool,
}

impl ReceivedField {
    pub fn period(&self) -> usize {
        self.rx_x.len()
    }
}

/// Wiener laser phase walk: increments are independent Gaussians of variance
/// 2π·Δf/F_symb per symbol. Starts at 0.
pub fn wiener_phase(len: usize, linewidth_hz: f64, f_symb: f64, seed: u64) -> Vec<f64> {
    let mut out = vec![0.0; len];
    if linewidth_hz <= 0.0 || len == 0 {
        return out;
    }
    let sigma = (2.0 * PI * linewidth_hz / f_symb).sqrt();
    let dist = Normal::new(0.0, sigma).expect("valid std");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ PHASE_NOISE_SALT);
    for i in 1..len {
        out[i] = out[i - 1] + dist.sample(&mut rng);
    }
    out
}

/// Fold taps onto the probe period. Returns (folded taps, aliased flag).
fn folded_taps(ch: &ChannelRealization, period: usize) -> (Vec<Jones>, bool) {
    if ch.taps.len() < period {
        return (ch.taps.clone(), false);
    }
    let mut folded = vec![Jones::zero(); period];
    for (i, tap) in ch.taps.iter().enumerate() {
        folded[i % period] += *tap;
    }
    (folded, true)
}

fn convolve_fft(probe: &DualPolSequence, taps: &[Jones]) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = probe.period();
    let tx = [&probe.pol_x, &probe.pol_y];
    let ftx: Vec<Vec<Complex64>> = tx.iter().map(|s| fft::fft(s)).collect();
    let mut rx = [vec![Complex64::default(); n], vec![Complex64::default(); n]];
    for (row, rx_row) in rx.iter_mut().enumerate() {
        let mut spectrum = vec![Complex64::default(); n];
        for (col, ftx_col) in ftx.iter().enumerate() {
            let mut lag_seq = vec![Complex64::default(); n];
            for (i, tap) in taps.iter().enumerate() {
                lag_seq[i] += tap.m[row][col];
            }
            let fh = fft::fft(&lag_seq);
            for (s, (h, t)) in spectrum.iter_mut().zip(fh.iter().zip(ftx_col)) {
                *s += h * t;
            }
        }
        *rx_row = fft::ifft(&spectrum);
    }
    let [rx_x, rx_y] = rx;
    (rx_x, rx_y)
}

/// Per-tap sum with the delay-differential laser phase. The transmit laser
/// also serves as local oscillator, so tap i at output time j contributes
/// with the extra factor e^{j(φ[j−i] − φ[j])}.
fn convolve_with_phase_noise(
    probe: &DualPolSequence,
    taps: &[Jones],
    linewidth_hz: f64,
    seed: u64,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = probe.period();
    let max_delay = taps.len().saturating_sub(1);
    // phase defined on transmit times -max_delay .. n-1, offset by max_delay
    let phi = wiener_phase(n + max_delay, linewidth_hz, probe.symbol_rate, seed);
    let mut rx_x = vec![Complex64::default(); n];
    let mut rx_y = vec![Complex64::default(); n];
    for (i, tap) in taps.iter().enumerate() {
        for j in 0..n {
            let t = (j + n - i) % n;
            let rot = Complex64::from_polar(1.0, phi[j + max_delay - i]);
            let (ex, ey) = tap.apply(probe.pol_x[t] * rot, probe.pol_y[t] * rot);
            rx_x[j] += ex;
            rx_y[j] += ey;
        }
    }
    for j in 0..n {
        let lo = Complex64::from_polar(1.0, -phi[j + max_delay]);
        rx_x[j] *= lo;
        rx_y[j] *= lo;
    }
    (rx_x, rx_y)
}

/// Add independent circular complex Gaussian noise of standard deviation
/// `sigma` to every sample of both polarizations. Deterministic given seed.
pub fn add_awgn(rx_x: &mut [Complex64], rx_y: &mut [Complex64], sigma: f64, seed: u64) {
    if sigma <= 0.0 {
        return;
    }
    let dist = Normal::new(0.0, sigma * std::f64::consts::FRAC_1_SQRT_2).expect("valid std");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ AWGN_SALT);
    for v in rx_x.iter_mut().chain(rx_y.iter_mut()) {
        *v += Complex64::new(dist.sample(&mut rng), dist.sample(&mut rng));
    }
}

/// Steady-state received field for one probing period.
pub fn simulate_rx(
    probe: &DualPolSequence,
    ch: &ChannelRealization,
    noise: &NoiseConfig,
) -> Result<ReceivedField> {
    let n = probe.period();
    let (taps, aliased) = folded_taps(ch, n);
    let (mut rx_x, mut rx_y) = if noise.linewidth_hz > 0.0 {
        convolve_with_phase_noise(probe, &taps, noise.linewidth_hz, noise.seed)
    } else {
        convolve_fft(probe, &taps)
    };
    add_awgn(&mut rx_x, &mut rx_y, noise.awgn_sigma, noise.seed);
    Ok(ReceivedField {
        rx_x,
        rx_y,
        probe: probe.clone(),
        aliased,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{build_probe, circular_shift, ProbeSpec};

    fn single_tap_channel(taps: Vec<Jones>) -> ChannelRealization {
        ChannelRealization {
            fiber_length: taps.len() as f64 * 2.0,
            taps,
            segment_length: 2.0,
            alpha_db_per_km: 0.0,
            c_f: 2e8,
            seed: 0,
        }
    }

    #[test]
    fn identity_channel_returns_probe() {
        let probe = build_probe(ProbeSpec::Cazac { m: 3 }, 50e6).unwrap();
        let ch = single_tap_channel(vec![Jones::identity(), Jones::zero()]);
        let rx = simulate_rx(&probe, &ch, &NoiseConfig::noiseless(0)).unwrap();
        for (r, t) in rx.rx_x.iter().zip(&probe.pol_x) {
            assert!((r - t).norm() < 1e-12);
        }
        for (r, t) in rx.rx_y.iter().zip(&probe.pol_y) {
            assert!((r - t).norm() < 1e-12);
        }
        assert!(!rx.aliased);
    }

    #[test]
    fn delayed_identity_shifts_probe() {
        let probe = build_probe(ProbeSpec::Cazac { m: 3 }, 50e6).unwrap();
        let d = 5;
        let mut taps = vec![Jones::zero(); d + 1];
        taps[d] = Jones::identity();
        let ch = single_tap_channel(taps);
        let rx = simulate_rx(&probe, &ch, &NoiseConfig::noiseless(0)).unwrap();
        let want = circular_shift(&probe.pol_x, d).unwrap();
        for (r, t) in rx.rx_x.iter().zip(&want) {
            assert!((r - t).norm() < 1e-12);
        }
    }

    #[test]
    fn two_tap_channel_matches_direct_summation() {
        let probe = build_probe(ProbeSpec::Cazac { m: 2 }, 50e6).unwrap();
        let j_i = Jones::identity().scale(Complex64::new(0.0, 1.0));
        let taps = vec![Jones::identity(), j_i];
        let ch = single_tap_channel(taps.clone());
        let rx = simulate_rx(&probe, &ch, &NoiseConfig::noiseless(0)).unwrap();
        let n = probe.period();
        for j in 0..n {
            let mut ex = Complex64::default();
            let mut ey = Complex64::default();
            for (i, tap) in taps.iter().enumerate() {
                let t = (j + n - i) % n;
                let (ax, ay) = tap.apply(probe.pol_x[t], probe.pol_y[t]);
                ex += ax;
                ey += ay;
            }
            assert!((rx.rx_x[j] - ex).norm() < 1e-12);
            assert!((rx.rx_y[j] - ey).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_linewidth_matches_fft_path() {
        let probe = build_probe(ProbeSpec::Cazac { m: 3 }, 50e6).unwrap();
        let ch = crate::channel::generate_channel(40.0, 50e6, 0.0, 2e8, 4).unwrap();
        let fft_rx = simulate_rx(&probe, &ch, &NoiseConfig::noiseless(1)).unwrap();
        let (dx, dy) = convolve_with_phase_noise(&probe, &ch.taps, 0.0, 1);
        for (a, b) in fft_rx.rx_x.iter().zip(&dx) {
            assert!((a - b).norm() < 1e-10);
        }
        for (a, b) in fft_rx.rx_y.iter().zip(&dy) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn delay_zero_tap_ignores_phase_noise() {
        let probe = build_probe(ProbeSpec::Cazac { m: 3 }, 50e6).unwrap();
        let ch = single_tap_channel(vec![Jones::identity()]);
        let noisy = NoiseConfig {
            awgn_sigma: 0.0,
            linewidth_hz: 1e4,
            seed: 2,
        };
        let rx = simulate_rx(&probe, &ch, &noisy).unwrap();
        for (r, t) in rx.rx_x.iter().zip(&probe.pol_x) {
            assert!((r - t).norm() < 1e-12);
        }
    }

    #[test]
    fn wiener_increment_statistics() {
        let linewidth = 10.0;
        let f_symb = 50e6;
        let phi = wiener_phase(100_001, linewidth, f_symb, 3);
        let incs: Vec<f64> = phi.windows(2).map(|w| w[1] - w[0]).collect();
        let n = incs.len() as f64;
        let mean = incs.iter().sum::<f64>() / n;
        let var = incs.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let expect = 2.0 * PI * linewidth / f_symb;
        assert!((var / expect - 1.0).abs() < 0.05, "var ratio {}", var / expect);
        // increment std ~ 1.12e-3 rad at these parameters
        assert!((expect.sqrt() - 1.12e-3).abs() < 2e-5);
    }

    #[test]
    fn awgn_power_and_determinism() {
        let n = 100_000;
        let mut x = vec![Complex64::default(); n];
        let mut y = vec![Complex64::default(); n];
        add_awgn(&mut x, &mut y, 1.0, 17);
        let power: f64 = x.iter().map(|v| v.norm_sqr()).sum::<f64>() / n as f64;
        assert!((power - 1.0).abs() < 0.05, "power {power}");

        let mut x2 = vec![Complex64::default(); n];
        let mut y2 = vec![Complex64::default(); n];
        add_awgn(&mut x2, &mut y2, 1.0, 17);
        assert_eq!(x, x2);
        assert_eq!(y, y2);

        // sigma = 0 is the identity
        let before = x.clone();
        add_awgn(&mut x, &mut y, 0.0, 17);
        assert_eq!(before, x);
    }

    #[test]
    fn oversized_channel_sets_alias_flag() {
        let probe = build_probe(ProbeSpec::Cazac { m: 2 }, 50e6).unwrap();
        let taps = vec![Jones::identity(); probe.period() + 3];
        let ch = single_tap_channel(taps);
        let rx = simulate_rx(&probe, &ch, &NoiseConfig::noiseless(0)).unwrap();
        assert!(rx.aliased);
    }

    #[test]
    fn linearity_in_the_channel() {
        let probe = build_probe(ProbeSpec::Cazac { m: 3 }, 50e6).unwrap();
        let a = crate::channel::generate_channel(40.0, 50e6, 0.0, 2e8, 1).unwrap();
        let b = crate::channel::generate_channel(40.0, 50e6, 0.0, 2e8, 2).unwrap();
        let mut sum = a.clone();
        for (s, t) in sum.taps.iter_mut().zip(&b.taps) {
            *s += *t;
        }
        let rx_a = simulate_rx(&probe, &a, &NoiseConfig::noiseless(0)).unwrap();
        let rx_b = simulate_rx(&probe, &b, &NoiseConfig::noiseless(0)).unwrap();
        let rx_sum = simulate_rx(&probe, &sum, &NoiseConfig::noiseless(0)).unwrap();
        for j in 0..probe.period() {
            assert!((rx_sum.rx_x[j] - rx_a.rx_x[j] - rx_b.rx_x[j]).norm() < 1e-10);
            assert!((rx_sum.rx_y[j] - rx_a.rx_y[j] - rx_b.rx_y[j]).norm() < 1e-10);
        }
    }
}
