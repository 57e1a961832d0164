//! Dual-polarization probing sequence generation.
//!
//! Three schemes probe the two polarization axes jointly:
//!
//! - `GolayBpsk`: two mutually orthogonal binary Golay complementary pairs,
//!   one pair per polarization, concatenated as `[a ‖ b]` composites.
//! - `Cazac`: a perfect-squares minimum-phase CAZAC sequence on pol X and its
//!   half-period circular shift on pol Y.
//! - `Sweep`: a real linear-frequency chirp covering [0, F_symb/2] on pol X
//!   and its half-period shift on pol Y.

use crate::error::{Error, Result};
use crate::fft;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Probing scheme identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    GolayBpsk,
    Cazac,
    Sweep,
}

impl Scheme {
    pub fn label(&self) -> &'static str {
        match self {
            Scheme::GolayBpsk => "golay",
            Scheme::Cazac => "cazac",
            Scheme::Sweep => "sweep",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "golay" | "golaybpsk" | "golay-bpsk" => Ok(Scheme::GolayBpsk),
            "cazac" => Ok(Scheme::Cazac),
            "sweep" => Ok(Scheme::Sweep),
            other => Err(Error::Config(format!("unknown scheme '{other}'"))),
        }
    }
}

/// A binary Golay complementary pair of length 4·2^K.
///
/// The aperiodic autocorrelations of `a` and `b` sum to `2·len·δ[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GolayPair {
    pub a: Vec<i32>,
    pub b: Vec<i32>,
}

impl GolayPair {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

/// Builds the complementary pair by the doubling recursion
/// a' = a‖b, b' = a‖(−b) from the fixed length-4 seed
/// a = [+1,+1,+1,−1], b = [+1,+1,−1,+1].
pub fn generate_golay_pair(k: u32) -> Result<GolayPair> {
    if k > 24 {
        return Err(Error::Size(format!("Golay recursion depth K={k} exceeds 24")));
    }
    let mut a: Vec<i32> = vec![1, 1, 1, -1];
    let mut b: Vec<i32> = vec![1, 1, -1, 1];
    for _ in 0..k {
        let mut a2 = a.clone();
        a2.extend_from_slice(&b);
        let mut b2 = a;
        b2.extend(b.iter().map(|v| -v));
        a = a2;
        b = b2;
    }
    Ok(GolayPair { a, b })
}

/// The mate of a pair: {a2, b2} with a2[n] = b[N−1−n], b2[n] = −a[N−1−n].
///
/// The mate is itself complementary, and the aperiodic cross-correlations of
/// (a, a2) and (b, b2) sum to zero at every lag, so the two pairs can probe
/// the two polarization axes without mutual interference.
pub fn mate_pair(p: &GolayPair) -> GolayPair {
    let a2: Vec<i32> = p.b.iter().rev().copied().collect();
    let b2: Vec<i32> = p.a.iter().rev().map(|v| -v).collect();
    GolayPair { a: a2, b: b2 }
}

/// A constant-amplitude zero-autocorrelation sequence of length N = 4^M
/// drawn from the 2^M-PSK alphabet.
#[derive(Debug, Clone)]
pub struct CazacSequence {
    pub symbols: Vec<Complex64>,
    pub m: u32,
}

impl CazacSequence {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Perfect-squares minimum-phase CAZAC construction:
/// c_n = exp(j·2π/√N·(mod(n−1,√N)+1)·(⌊(n−1)/√N⌋+1)), n = 1..N, N = 4^M.
///
/// Phases are computed with integer arithmetic modulo 2^M so every symbol is
/// an exact 2^M-PSK constellation point.
pub fn generate_cazac(m: u32) -> Result<CazacSequence> {
    if !(1..=12).contains(&m) {
        return Err(Error::Size(format!("CAZAC order M={m} outside 1..=12")));
    }
    let root = 1u64 << m; // sqrt(N) = 2^M
    let n_total = root * root; // N = 4^M
    let mut symbols = Vec::with_capacity(n_total as usize);
    for n in 1..=n_total {
        let p = (n - 1) % root + 1;
        let q = (n - 1) / root + 1;
        let phase_steps = (p * q) % root;
        let phase = 2.0 * PI * phase_steps as f64 / root as f64;
        symbols.push(Complex64::from_polar(1.0, phase));
    }
    Ok(CazacSequence { symbols, m })
}

/// out[n] = s[(n − k) mod N]: delay the sequence by k samples, circularly.
pub fn circular_shift(s: &[Complex64], k: usize) -> Result<Vec<Complex64>> {
    if k >= s.len() {
        return Err(Error::InvalidArgument(format!(
            "shift {k} out of range for length {}",
            s.len()
        )));
    }
    let n = s.len();
    Ok((0..n).map(|i| s[(i + n - k) % n]).collect())
}

/// One probing period on the two polarization axes.
#[derive(Debug, Clone)]
pub struct DualPolSequence {
    pub pol_x: Vec<Complex64>,
    pub pol_y: Vec<Complex64>,
    pub scheme: Scheme,
    /// Symbol rate F_symb in symbols per second.
    pub symbol_rate: f64,
}

impl DualPolSequence {
    pub fn period(&self) -> usize {
        self.pol_x.len()
    }

    /// Sequence duration in seconds.
    pub fn duration(&self) -> f64 {
        self.period() as f64 / self.symbol_rate
    }
}

/// Size parameter for [`build_probe`]; each scheme scales differently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeSpec {
    /// Golay recursion depth K; the period is 2·4·2^K symbols.
    GolayBpsk { k: u32 },
    /// CAZAC order M; the period is 4^M symbols.
    Cazac { m: u32 },
    /// Chirp period in symbols (even, >= 8).
    Sweep { n_total: usize },
}

impl ProbeSpec {
    pub fn scheme(&self) -> Scheme {
        match self {
            ProbeSpec::GolayBpsk { .. } => Scheme::GolayBpsk,
            ProbeSpec::Cazac { .. } => Scheme::Cazac,
            ProbeSpec::Sweep { .. } => Scheme::Sweep,
        }
    }
}

fn to_complex(v: &[i32]) -> Vec<Complex64> {
    v.iter().map(|&s| Complex64::new(s as f64, 0.0)).collect()
}

/// The two transmitted Golay composites: pol X carries [a1 ‖ b1]; pol Y
/// carries [a2 ‖ b2] delayed by one symbol.
///
/// The one-symbol delay places the estimator's alias-free span exactly at one
/// quarter of the period: channel supports up to period/4 are recovered
/// exactly and one tap more already aliases. With slot-aligned composites the
/// clean window would extend one extra tap on one side only.
pub fn golay_waveforms(p1: &GolayPair, p2: &GolayPair) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut tx_x = to_complex(&p1.a);
    tx_x.extend(to_complex(&p1.b));
    let mut s2 = to_complex(&p2.a);
    s2.extend(to_complex(&p2.b));
    let tx_y = circular_shift(&s2, 1).expect("period >= 8");
    (tx_x, tx_y)
}

/// Real cosine chirp with quadratic phase: pol_x[n] = cos(π·n²/(2·N)), whose
/// instantaneous frequency rises linearly from 0 to F_symb/2 over the period;
/// pol Y is the same chirp delayed by half the period.
pub fn generate_sweep(n_total: usize, symbol_rate: f64) -> Result<DualPolSequence> {
    if n_total < 8 || !n_total.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "sweep period must be even and >= 8, got {n_total}"
        )));
    }
    let pol_x: Vec<Complex64> = (0..n_total)
        .map(|n| {
            let phase = PI * (n as f64) * (n as f64) / (2.0 * n_total as f64);
            Complex64::new(phase.cos(), 0.0)
        })
        .collect();
    let pol_y = circular_shift(&pol_x, n_total / 2)?;
    Ok(DualPolSequence {
        pol_x,
        pol_y,
        scheme: Scheme::Sweep,
        symbol_rate,
    })
}

/// Assemble one dual-polarization probing period.
pub fn build_probe(spec: ProbeSpec, symbol_rate: f64) -> Result<DualPolSequence> {
    if symbol_rate <= 0.0 {
        return Err(Error::InvalidArgument("symbol rate must be positive".into()));
    }
    match spec {
        ProbeSpec::GolayBpsk { k } => {
            let p1 = generate_golay_pair(k)?;
            let p2 = mate_pair(&p1);
            let (pol_x, pol_y) = golay_waveforms(&p1, &p2);
            Ok(DualPolSequence {
                pol_x,
                pol_y,
                scheme: Scheme::GolayBpsk,
                symbol_rate,
            })
        }
        ProbeSpec::Cazac { m } => {
            let c = generate_cazac(m)?;
            let n = c.len();
            let pol_y = circular_shift(&c.symbols, n / 2)?;
            Ok(DualPolSequence {
                pol_x: c.symbols,
                pol_y,
                scheme: Scheme::Cazac,
                symbol_rate,
            })
        }
        ProbeSpec::Sweep { n_total } => generate_sweep(n_total, symbol_rate),
    }
}

/// Short-time spectral decomposition of a symbol stream.
#[derive(Debug, Clone)]
pub struct Spectrogram {
    /// magnitudes[window][bin]; bin count equals `window_len`.
    pub magnitudes: Vec<Vec<f64>>,
    pub window_len: usize,
    pub hop: usize,
}

impl Spectrogram {
    /// Index of the strongest frequency bin per window.
    pub fn ridge(&self) -> Vec<usize> {
        self.magnitudes
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .max_by(|a, b| a.1.total_cmp(b.1))
                    .map(|(i, _)| i)
                    .unwrap_or(0)
            })
            .collect()
    }

    /// Mean fraction of per-window energy captured by the strongest bin.
    /// Near 1 for a clean sweep; near 1/window_len for noise-like signals.
    pub fn ridge_confidence(&self) -> f64 {
        if self.magnitudes.is_empty() {
            return 0.0;
        }
        let mut acc = 0.0;
        for row in &self.magnitudes {
            let total: f64 = row.iter().map(|m| m * m).sum();
            let peak = row.iter().fold(0.0f64, |a, &m| a.max(m));
            if total > 0.0 {
                acc += peak * peak / total;
            }
        }
        acc / self.magnitudes.len() as f64
    }
}

/// Rectangular-window magnitude spectrogram with the given window and hop.
pub fn spectrogram(s: &[Complex64], window_len: usize, hop: usize) -> Result<Spectrogram> {
    if window_len == 0 || window_len > s.len() {
        return Err(Error::InvalidArgument(format!(
            "window {window_len} invalid for signal length {}",
            s.len()
        )));
    }
    if hop == 0 {
        return Err(Error::InvalidArgument("hop must be >= 1".into()));
    }
    let mut magnitudes = Vec::new();
    let mut start = 0;
    while start + window_len <= s.len() {
        let spec = fft::fft(&s[start..start + window_len]);
        magnitudes.push(spec.iter().map(|v| v.norm()).collect());
        start += hop;
    }
    Ok(Spectrogram {
        magnitudes,
        window_len,
        hop,
    })
}

/// Default spectrogram geometry: window = sqrt(period) rounded to a power of
/// two, hop = window (non-overlapping).
pub fn default_spectrogram(s: &[Complex64]) -> Result<Spectrogram> {
    let w = ((s.len() as f64).sqrt().round() as usize)
        .next_power_of_two()
        .min(s.len());
    spectrogram(s, w, w)
}

/// Aperiodic autocorrelation of an integer sequence at lags 0..N.
/// Exact in integer arithmetic.
pub fn aperiodic_autocorr(s: &[i32]) -> Vec<i64> {
    let n = s.len();
    (0..n)
        .map(|k| {
            (0..n - k)
                .map(|i| s[i] as i64 * s[i + k] as i64)
                .sum()
        })
        .collect()
}

/// Aperiodic cross-correlation sum_i a[i]·b[i+k] for k in −(N−1)..N.
/// Returned with lag k at index k + N − 1.
pub fn aperiodic_xcorr(a: &[i32], b: &[i32]) -> Vec<i64> {
    let n = a.len();
    assert_eq!(n, b.len());
    let mut out = vec![0i64; 2 * n - 1];
    for (idx, out_k) in out.iter_mut().enumerate() {
        let k = idx as i64 - (n as i64 - 1);
        let mut acc = 0i64;
        for i in 0..n as i64 {
            let j = i + k;
            if (0..n as i64).contains(&j) {
                acc += a[i as usize] as i64 * b[j as usize] as i64;
            }
        }
        *out_k = acc;
    }
    out
}
