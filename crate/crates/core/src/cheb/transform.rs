//! The two cosine transforms used for Chebyshev coefficients, computed
//! through a complex FFT of the even extension. Direct `O(n²)` versions are
//! kept as references.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Forward DFT `X_k = Σ x_j e^{-2πijk/N}` of a real sequence, any length.
pub fn real_dft(x: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

/// Type-I cosine transform with halved end weights:
/// `y_k = x₀/2 + (-1)^k x_N/2 + Σ_{j=1}^{N-1} x_j cos(πjk/N)`, `k = 0..=N`.
pub fn dct1(x: &[f64]) -> Vec<f64> {
    assert!(x.len() >= 2);
    let n = x.len() - 1;
    let mut ext = Vec::with_capacity(2 * n);
    ext.extend_from_slice(x);
    ext.extend(x[1..n].iter().rev());
    real_dft(&ext).into_iter().take(n + 1).map(|v| 0.5 * v.re).collect()
}

/// Direct evaluation of [`dct1`].
pub fn dct1_direct(x: &[f64]) -> Vec<f64> {
    let n = x.len() - 1;
    let period = 2 * n;
    let table: Vec<f64> = (0..period).map(|r| (PI * r as f64 / n as f64).cos()).collect();
    (0..=n)
        .map(|k| {
            let mut acc = 0.5 * (x[0] + if k % 2 == 0 { x[n] } else { -x[n] });
            for (j, xj) in x.iter().enumerate().take(n).skip(1) {
                acc += xj * table[(j * k) % period];
            }
            acc
        })
        .collect()
}

/// Type-II cosine transform `y_k = Σ_{j=0}^{N-1} x_j cos(πk(2j+1)/(2N))`, `k = 0..N`.
pub fn dct2(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    assert!(n >= 1);
    let mut ext = vec![0.0; 4 * n];
    for (j, &v) in x.iter().enumerate() {
        ext[2 * j + 1] = v;
        ext[4 * n - 2 * j - 1] = v;
    }
    real_dft(&ext).into_iter().take(n).map(|v| 0.5 * v.re).collect()
}

/// Direct evaluation of [`dct2`].
pub fn dct2_direct(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let period = 4 * n;
    let table: Vec<f64> = (0..period).map(|r| (PI * r as f64 / (2 * n) as f64).cos()).collect();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, xj)| xj * table[(k * (2 * j + 1)) % period])
                .sum()
        })
        .collect()
}
