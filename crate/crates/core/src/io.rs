//! CSV export of sequences, channels, estimates, spectrograms and error
//! curves.
//!
//! All floating-point fields are written with 17 significant digits so that
//! reruns with identical parameters produce byte-identical files. Header
//! comment lines start with `#`.

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::jones::Jones;
use crate::metrics::ErrorCurve;
use crate::receiver::EstimatedResponse;
use crate::sequences::Spectrogram;
use num_complex::Complex64;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

fn f(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
    }
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn push_comment(out: &mut String, comment: &str) {
    for line in comment.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
}

/// `n,re_x,im_x,re_y,im_y`, one row per symbol.
pub fn write_dual_pol_csv(
    path: &Path,
    pol_x: &[Complex64],
    pol_y: &[Complex64],
    comment: &str,
) -> Result<()> {
    let mut out = String::new();
    push_comment(&mut out, comment);
    out.push_str("n,re_x,im_x,re_y,im_y\n");
    for (n, (x, y)) in pol_x.iter().zip(pol_y).enumerate() {
        let _ = writeln!(out, "{n},{},{},{},{}", f(x.re), f(x.im), f(y.re), f(y.im));
    }
    write_file(path, &out)
}

fn push_jones_rows(out: &mut String, taps: &[Jones]) {
    out.push_str("i,re_h00,im_h00,re_h01,im_h01,re_h10,im_h10,re_h11,im_h11\n");
    for (i, t) in taps.iter().enumerate() {
        let _ = writeln!(
            out,
            "{i},{},{},{},{},{},{},{},{}",
            f(t.m[0][0].re),
            f(t.m[0][0].im),
            f(t.m[0][1].re),
            f(t.m[0][1].im),
            f(t.m[1][0].re),
            f(t.m[1][0].im),
            f(t.m[1][1].re),
            f(t.m[1][1].im),
        );
    }
}

/// Channel dump with the generation parameters and seed in the header.
pub fn write_channel_csv(path: &Path, ch: &ChannelRealization) -> Result<()> {
    let mut out = String::new();
    push_comment(
        &mut out,
        &format!(
            "fiber_length_m={} segment_length_m={} alpha_db_per_km={} c_f={} seed={}",
            f(ch.fiber_length),
            f(ch.segment_length),
            f(ch.alpha_db_per_km),
            f(ch.c_f),
            ch.seed
        ),
    );
    push_jones_rows(&mut out, &ch.taps);
    write_file(path, &out)
}

/// Estimated-response dump; the valid span rides in the header comment.
pub fn write_estimate_csv(path: &Path, est: &EstimatedResponse, comment: &str) -> Result<()> {
    let mut out = String::new();
    push_comment(&mut out, comment);
    push_comment(
        &mut out,
        &format!(
            "scheme={} valid_span={}..{}",
            est.scheme.label(),
            est.valid_span.start,
            est.valid_span.end
        ),
    );
    push_jones_rows(&mut out, &est.taps_hat);
    write_file(path, &out)
}

/// Grid CSV: rows = windows, columns = frequency bins.
pub fn write_spectrogram_csv(path: &Path, sp: &Spectrogram, comment: &str) -> Result<()> {
    let mut out = String::new();
    push_comment(&mut out, comment);
    push_comment(
        &mut out,
        &format!("window_len={} hop={}", sp.window_len, sp.hop),
    );
    for row in &sp.magnitudes {
        let line: Vec<String> = row.iter().map(|&m| f(m)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    write_file(path, &out)
}

/// One intensity value per lag.
pub fn write_profile_csv(path: &Path, profile: &[f64], comment: &str) -> Result<()> {
    let mut out = String::new();
    push_comment(&mut out, comment);
    out.push_str("lag,intensity\n");
    for (i, v) in profile.iter().enumerate() {
        let _ = writeln!(out, "{i},{}", f(*v));
    }
    write_file(path, &out)
}

/// `distance_m,det_rel_err,phase_err_rad,scheme,seed_count`.
pub fn write_error_curve_csv(path: &Path, curve: &ErrorCurve, comment: &str) -> Result<()> {
    let mut out = String::new();
    push_comment(&mut out, comment);
    out.push_str("distance_m,det_rel_err,phase_err_rad,scheme,seed_count\n");
    for ((d, det), ph) in curve
        .distances_m
        .iter()
        .zip(&curve.det_rel_error)
        .zip(&curve.phase_error_rad)
    {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            f(*d),
            f(*det),
            f(*ph),
            curve.scheme.label(),
            curve.seed_count
        );
    }
    write_file(path, &out)
}
