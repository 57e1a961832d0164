//! Thin FFT helpers for circular convolution and correlation.
//!
//! All signals are one probing period long and transmission is periodic,
//! so every product here is circular with the period as the modulus.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Forward DFT, unnormalized.
pub fn fft(x: &[Complex64]) -> Vec<Complex64> {
    let mut buf = x.to_vec();
    FftPlanner::new().plan_fft_forward(x.len()).process(&mut buf);
    buf
}

/// Inverse DFT, normalized by 1/N.
pub fn ifft(x: &[Complex64]) -> Vec<Complex64> {
    let mut buf = x.to_vec();
    FftPlanner::new().plan_fft_inverse(x.len()).process(&mut buf);
    let scale = 1.0 / x.len() as f64;
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

/// Circular convolution: out[j] = sum_i a[i] * b[(j - i) mod N].
pub fn circular_convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(a.len(), b.len());
    let fa = fft(a);
    let fb = fft(b);
    let prod: Vec<Complex64> = fa.iter().zip(&fb).map(|(x, y)| x * y).collect();
    ifft(&prod)
}

/// Circular cross-correlation: out[k] = sum_t x[t] * conj(r[(t - k) mod N]).
pub fn circular_xcorr(x: &[Complex64], r: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(x.len(), r.len());
    let fx = fft(x);
    let fr = fft(r);
    let prod: Vec<Complex64> = fx.iter().zip(&fr).map(|(a, b)| a * b.conj()).collect();
    ifft(&prod)
}
