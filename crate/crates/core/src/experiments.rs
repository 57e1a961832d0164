//! Configuration-driven experiment runners.
//!
//! Three experiments mirror the three result families: intensity/aliasing
//! profiles, time-frequency signatures, and error-versus-length curves.
//! Every run is reproducible byte-for-byte from (config, seeds): randomness
//! is seeded, task results are collected and sorted before writing, and all
//! floats are formatted with fixed precision.

use crate::channel::{generate_channel, ChannelRealization};
use crate::error::{Error, Result};
use crate::io;
use crate::linksim::{simulate_rx, NoiseConfig};
use crate::metrics::{aliasing_profile, det_relative_error, phase_error, ErrorCurve};
use crate::receiver::estimate;
use crate::sequences::{build_probe, default_spectrogram, DualPolSequence, ProbeSpec, Scheme};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

/// Resolved parameters for one experiment run.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub schemes: Vec<Scheme>,
    /// Golay recursion depth (period 2·4·2^K).
    pub golay_k: u32,
    /// CAZAC order (period 4^M).
    pub cazac_m: u32,
    /// Sweep period in symbols.
    pub sweep_n: usize,
    /// Symbol rate, symbols/s.
    pub f_symb: f64,
    /// Light velocity in the fiber core, m/s.
    pub c_f: f64,
    /// Fiber lengths to evaluate, meters.
    pub lengths_m: Vec<f64>,
    pub alpha_db_per_km: f64,
    pub awgn_sigma: f64,
    pub linewidth_hz: f64,
    pub seeds: Vec<u64>,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    /// Out-of-box desk-scale configuration: 1024-symbol probes, three seeds.
    /// The CAZAC validity limit sits at 1024 m (512 two-meter segments);
    /// lengths cover up to 1.25x that limit in 5% steps.
    pub fn desk_scale() -> Self {
        let max_len = 1280.0;
        let lengths_m = (1..=20).map(|i| max_len * i as f64 / 20.0).collect();
        ExperimentConfig {
            schemes: vec![Scheme::GolayBpsk, Scheme::Cazac, Scheme::Sweep],
            golay_k: 7,
            cazac_m: 5,
            sweep_n: 1024,
            f_symb: 50e6,
            c_f: 2e8,
            lengths_m,
            alpha_db_per_km: 0.2,
            awgn_sigma: 0.0,
            linewidth_hz: 0.0,
            seeds: vec![1, 2, 3],
            out_dir: PathBuf::from("out"),
        }
    }

    /// Published-experiment scale: 2^14-symbol probes at 50 Mbaud, 20 km
    /// reference fiber, 8.5 km aliasing snapshot.
    pub fn paper_scale() -> Self {
        let lengths_m = (1..=20).map(|i| 1000.0 * i as f64).collect();
        ExperimentConfig {
            schemes: vec![Scheme::GolayBpsk, Scheme::Cazac, Scheme::Sweep],
            golay_k: 11,
            cazac_m: 7,
            sweep_n: 1 << 14,
            f_symb: 50e6,
            c_f: 2e8,
            lengths_m,
            alpha_db_per_km: 0.2,
            awgn_sigma: 0.0,
            linewidth_hz: 0.0,
            seeds: vec![1],
            out_dir: PathBuf::from("out"),
        }
    }

    pub fn probe_spec(&self, scheme: Scheme) -> ProbeSpec {
        match scheme {
            Scheme::GolayBpsk => ProbeSpec::GolayBpsk { k: self.golay_k },
            Scheme::Cazac => ProbeSpec::Cazac { m: self.cazac_m },
            Scheme::Sweep => ProbeSpec::Sweep { n_total: self.sweep_n },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schemes.is_empty() {
            return Err(Error::Config("at least one scheme is required".into()));
        }
        if self.lengths_m.is_empty() {
            return Err(Error::Config("at least one fiber length is required".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("at least one seed is required".into()));
        }
        if self.f_symb <= 0.0 || self.c_f <= 0.0 {
            return Err(Error::Config("f_symb and c_f must be positive".into()));
        }
        if self.lengths_m.iter().any(|&l| l <= 0.0) {
            return Err(Error::Config("fiber lengths must be positive".into()));
        }
        if self.alpha_db_per_km < 0.0 || self.awgn_sigma < 0.0 || self.linewidth_hz < 0.0 {
            return Err(Error::Config(
                "alpha, awgn_sigma and linewidth_hz must be >= 0".into(),
            ));
        }
        Ok(())
    }

    /// One-line resolved-parameter summary embedded in every output file.
    pub fn summary_line(&self) -> String {
        let schemes: Vec<&str> = self.schemes.iter().map(|s| s.label()).collect();
        format!(
            "schemes={} golay_k={} cazac_m={} sweep_n={} f_symb={} c_f={} lengths_m={} alpha_db_per_km={} awgn_sigma={} linewidth_hz={} seeds={}",
            schemes.join("+"),
            self.golay_k,
            self.cazac_m,
            self.sweep_n,
            self.f_symb,
            self.c_f,
            self.lengths_m
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("+"),
            self.alpha_db_per_km,
            self.awgn_sigma,
            self.linewidth_hz,
            self.seeds
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("+"),
        )
    }

    /// Parse a flat `key=value` config file; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = ExperimentConfig::desk_scale();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("{}:{}: expected key=value", path.display(), lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Apply one `key=value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("invalid value '{value}' for {key}")))
        }
        match key {
            "schemes" => {
                self.schemes = value
                    .split(',')
                    .map(|s| s.trim().parse())
                    .collect::<Result<Vec<Scheme>>>()?;
            }
            "golay_k" => self.golay_k = num(key, value)?,
            "cazac_m" => self.cazac_m = num(key, value)?,
            "sweep_n" => self.sweep_n = num(key, value)?,
            "f_symb" => self.f_symb = num(key, value)?,
            "c_f" => self.c_f = num(key, value)?,
            "lengths_m" => {
                self.lengths_m = value
                    .split(',')
                    .map(|s| num("lengths_m", s.trim()))
                    .collect::<Result<Vec<f64>>>()?;
            }
            "alpha_db_per_km" => self.alpha_db_per_km = num(key, value)?,
            "awgn_sigma" => self.awgn_sigma = num(key, value)?,
            "linewidth_hz" => self.linewidth_hz = num(key, value)?,
            "seeds" => {
                self.seeds = value
                    .split(',')
                    .map(|s| num("seeds", s.trim()))
                    .collect::<Result<Vec<u64>>>()?;
            }
            "out_dir" => self.out_dir = PathBuf::from(value),
            other => return Err(Error::Config(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct RunSummary {
    pub experiment: String,
    pub parameters: BTreeMap<String, String>,
    pub files: Vec<String>,
    /// Free-form measured quantities (ridge separations, knee positions...).
    pub measurements: BTreeMap<String, f64>,
}

impl RunSummary {
    fn new(experiment: &str, cfg: &ExperimentConfig) -> Self {
        let mut parameters = BTreeMap::new();
        parameters.insert("resolved".to_string(), cfg.summary_line());
        RunSummary {
            experiment: experiment.to_string(),
            parameters,
            files: Vec::new(),
            measurements: BTreeMap::new(),
        }
    }

    fn write(&self, out_dir: &Path) -> Result<PathBuf> {
        let path = out_dir.join("manifest.json");
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Config(format!("manifest serialization: {e}")))?;
        fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
        fs::write(&path, json).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }
}

/// Emit one probing period as a sequence CSV.
pub fn generate_probe_csv(spec: ProbeSpec, f_symb: f64, path: &Path) -> Result<DualPolSequence> {
    let probe = build_probe(spec, f_symb)?;
    let comment = format!(
        "scheme={} period={} f_symb={}",
        probe.scheme.label(),
        probe.period(),
        f_symb
    );
    io::write_dual_pol_csv(path, &probe.pol_x, &probe.pol_y, &comment)?;
    Ok(probe)
}

/// Fig-1 style experiment: estimate over the full window for a single
/// channel and write the per-lag intensity profile for each scheme.
pub fn run_aliasing_experiment(cfg: &ExperimentConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let mut summary = RunSummary::new("aliasing", cfg);
    let length = cfg.lengths_m[0];
    let seed = cfg.seeds[0];
    let ch = generate_channel(length, cfg.f_symb, cfg.alpha_db_per_km, cfg.c_f, seed)?;

    let results: Vec<(Scheme, Vec<f64>)> = cfg
        .schemes
        .par_iter()
        .map(|&scheme| -> Result<(Scheme, Vec<f64>)> {
            let probe = build_probe(cfg.probe_spec(scheme), cfg.f_symb)?;
            let noise = NoiseConfig {
                awgn_sigma: cfg.awgn_sigma,
                linewidth_hz: cfg.linewidth_hz,
                seed,
            };
            let rx = simulate_rx(&probe, &ch, &noise)?;
            let est = estimate(&rx, &probe)?;
            Ok((scheme, aliasing_profile(&est)))
        })
        .collect::<Result<Vec<_>>>()?;

    for (scheme, profile) in &results {
        let path = cfg.out_dir.join(format!("aliasing_{}.csv", scheme.label()));
        let comment = format!("{}\nlength_m={length} seed={seed}", cfg.summary_line());
        io::write_profile_csv(&path, profile, &comment)?;
        summary.files.push(path.display().to_string());
        summary.measurements.insert(
            format!("{}_window_len", scheme.label()),
            profile.len() as f64,
        );
    }
    summary.parameters.insert("length_m".into(), length.to_string());
    summary.parameters.insert("seed".into(), seed.to_string());
    summary.write(&cfg.out_dir)?;
    Ok(summary)
}

/// Circular mean separation between two ridge tracks, in bins.
fn ridge_separation(rx: &[usize], ry: &[usize], bins: usize) -> f64 {
    use std::f64::consts::TAU;
    if rx.is_empty() {
        return 0.0;
    }
    let (mut s, mut c) = (0.0, 0.0);
    for (&a, &b) in rx.iter().zip(ry) {
        let d = TAU * ((b + bins - a) % bins) as f64 / bins as f64;
        s += d.sin();
        c += d.cos();
    }
    let mean = s.atan2(c);
    (mean / TAU * bins as f64).rem_euclid(bins as f64)
}

/// Fig-2 style experiment: spectrograms of both polarizations per scheme,
/// with ridge confidence and pol-to-pol ridge separation in the manifest.
pub fn run_tf_signature(cfg: &ExperimentConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let mut summary = RunSummary::new("tf", cfg);
    for &scheme in &cfg.schemes {
        let probe = build_probe(cfg.probe_spec(scheme), cfg.f_symb)?;
        let sx = default_spectrogram(&probe.pol_x)?;
        let sy = default_spectrogram(&probe.pol_y)?;
        for (pol, sp) in [("x", &sx), ("y", &sy)] {
            let path = cfg.out_dir.join(format!("tf_{}_{pol}.csv", scheme.label()));
            io::write_spectrogram_csv(&path, sp, &cfg.summary_line())?;
            summary.files.push(path.display().to_string());
        }
        summary.measurements.insert(
            format!("{}_ridge_confidence_x", scheme.label()),
            sx.ridge_confidence(),
        );
        summary.measurements.insert(
            format!("{}_ridge_separation_bins", scheme.label()),
            ridge_separation(&sx.ridge(), &sy.ridge(), sx.window_len),
        );
    }
    summary.write(&cfg.out_dir)?;
    Ok(summary)
}

fn taps_for_length(length_m: f64, segment_length: f64) -> usize {
    (length_m / segment_length).floor() as usize
}

/// Per-(scheme, linewidth) error curves averaged over seeds.
pub fn compute_error_curves(cfg: &ExperimentConfig) -> Result<Vec<(f64, ErrorCurve)>> {
    cfg.validate()?;
    let mut lengths = cfg.lengths_m.clone();
    lengths.sort_by(f64::total_cmp);
    let max_len = *lengths.last().expect("validated non-empty");
    let segment = cfg.c_f / (2.0 * cfg.f_symb);

    // one reference channel per seed at the maximal length, shared across
    // schemes; sensing is simulated over increasing portions of it
    let references: Vec<ChannelRealization> = cfg
        .seeds
        .par_iter()
        .map(|&seed| generate_channel(max_len, cfg.f_symb, cfg.alpha_db_per_km, cfg.c_f, seed))
        .collect::<Result<Vec<_>>>()?;

    let linewidths: Vec<f64> = if cfg.linewidth_hz > 0.0 {
        vec![0.0, cfg.linewidth_hz]
    } else {
        vec![0.0]
    };

    let mut tasks = Vec::new();
    for &lw in &linewidths {
        for &scheme in &cfg.schemes {
            for (si, _) in cfg.seeds.iter().enumerate() {
                tasks.push((lw, scheme, si));
            }
        }
    }

    // (linewidth, scheme, seed index) -> per-distance (det_err, phase_err)
    type TaskKey = (f64, Scheme, usize);
    let task_results: Vec<(TaskKey, Vec<(f64, f64)>)> = tasks
        .par_iter()
        .map(|&(lw, scheme, si)| -> Result<_> {
            let probe = build_probe(cfg.probe_spec(scheme), cfg.f_symb)?;
            let reference = &references[si];
            let mut points = Vec::with_capacity(lengths.len());
            for &length in &lengths {
                let n_taps = taps_for_length(length, segment).max(2);
                let portion = reference.truncated(n_taps);
                let noise = NoiseConfig {
                    awgn_sigma: cfg.awgn_sigma,
                    linewidth_hz: lw,
                    seed: cfg.seeds[si],
                };
                let rx = simulate_rx(&probe, &portion, &noise)?;
                let est = estimate(&rx, &probe)?;
                let up_to = portion.num_taps() - 1;
                let det = det_relative_error(&est, &portion, up_to)?;
                let ph = phase_error(&est, &portion, up_to)?;
                points.push((det, ph));
            }
            Ok(((lw, scheme, si), points))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut curves = Vec::new();
    for &lw in &linewidths {
        for &scheme in &cfg.schemes {
            let per_seed: Vec<&Vec<(f64, f64)>> = task_results
                .iter()
                .filter(|((l, s, _), _)| *l == lw && *s == scheme)
                .map(|(_, pts)| pts)
                .collect();
            let n_seeds = per_seed.len();
            let mut det_mean = vec![0.0; lengths.len()];
            let mut ph_mean = vec![0.0; lengths.len()];
            for pts in &per_seed {
                for (i, (d, p)) in pts.iter().enumerate() {
                    det_mean[i] += d / n_seeds as f64;
                    ph_mean[i] += p / n_seeds as f64;
                }
            }
            curves.push((
                lw,
                ErrorCurve {
                    distances_m: lengths.clone(),
                    det_rel_error: det_mean,
                    phase_error_rad: ph_mean,
                    scheme,
                    seed_count: n_seeds,
                },
            ));
        }
    }
    Ok(curves)
}

/// Fig-3 style experiment: error-vs-length curves, noiseless plus a
/// phase-noise variant when a linewidth is configured.
pub fn run_error_vs_length(cfg: &ExperimentConfig) -> Result<RunSummary> {
    let curves = compute_error_curves(cfg)?;
    let mut summary = RunSummary::new("error-curve", cfg);
    for (lw, curve) in &curves {
        let suffix = if *lw > 0.0 { "_phase_noise" } else { "" };
        let path = cfg
            .out_dir
            .join(format!("error_curve_{}{suffix}.csv", curve.scheme.label()));
        let comment = format!("{}\nlinewidth_hz={lw}", cfg.summary_line());
        io::write_error_curve_csv(&path, curve, &comment)?;
        summary.files.push(path.display().to_string());
    }
    summary.write(&cfg.out_dir)?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_scale_config_is_valid() {
        let cfg = ExperimentConfig::desk_scale();
        cfg.validate().unwrap();
        assert_eq!(
            build_probe(cfg.probe_spec(Scheme::GolayBpsk), cfg.f_symb)
                .unwrap()
                .period(),
            1024
        );
        assert_eq!(
            build_probe(cfg.probe_spec(Scheme::Cazac), cfg.f_symb)
                .unwrap()
                .period(),
            1024
        );
    }

    #[test]
    fn config_set_and_reject_unknown() {
        let mut cfg = ExperimentConfig::desk_scale();
        cfg.set("schemes", "cazac").unwrap();
        assert_eq!(cfg.schemes, vec![Scheme::Cazac]);
        cfg.set("lengths_m", "100, 200").unwrap();
        assert_eq!(cfg.lengths_m, vec![100.0, 200.0]);
        cfg.set("seeds", "4,5").unwrap();
        assert_eq!(cfg.seeds, vec![4, 5]);
        assert!(cfg.set("bogus", "1").is_err());
        assert!(cfg.set("golay_k", "notanumber").is_err());
    }

    #[test]
    fn empty_lengths_rejected() {
        let mut cfg = ExperimentConfig::desk_scale();
        cfg.lengths_m.clear();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn ridge_separation_wraps() {
        let rx = vec![0usize, 1, 2, 3];
        let ry = vec![8, 9, 10, 11];
        assert!((ridge_separation(&rx, &ry, 16) - 8.0).abs() < 1e-9);
        let ry2 = vec![15usize, 0, 1, 2];
        assert!((ridge_separation(&rx, &ry2, 16) - 15.0).abs() < 1e-9);
    }
}
