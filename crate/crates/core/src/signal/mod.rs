//! Complex sequence container, unitary DFT, preprocessing, and quality
//! metrics.
//!
//! A sequence is an `M x N` matrix of complex samples: `M` spatial entries
//! (subcarriers, antennas) per temporal sample, `N` temporal samples. The
//! temporal axis is the one every transform and metric here operates along.

mod cseq;

pub use cseq::{read_cseq, write_cseq, CseqDtype, CseqMeta, ConditionLabel};

use ndarray::{Array2, ArrayView1};
use num_complex::Complex64;
use rustfft::FftPlanner;
use thiserror::Error;

/// Canonical temporal length applied on ingestion.
pub const CANONICAL_LEN: usize = 512;

/// Canonical temporal length for desk-scale tests and toy runs.
pub const DESK_LEN: usize = 64;

#[derive(Debug, Error)]
pub enum SignalError {
    #[error("sequence must be non-empty (got {m}x{n})")]
    Empty { m: usize, n: usize },
    #[error("non-finite sample at ({m}, {n})")]
    NonFinite { m: usize, n: usize },
    #[error("shape mismatch: {a_m}x{a_n} vs {b_m}x{b_n}")]
    ShapeMismatch { a_m: usize, a_n: usize, b_m: usize, b_n: usize },
    #[error("resample target length must be >= 2 (got {0})")]
    BadTargetLen(usize),
    #[error("resample input must have temporal length >= 2 (got {0})")]
    TooShort(usize),
    #[error("degenerate power: all samples are zero")]
    ZeroPower,
    #[error("reference sequence is zero")]
    ZeroReference,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("bad CSEQ1 file: {0}")]
    Format(String),
}

/// An `M x N` array of complex samples; `M` spatial, `N` temporal.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSequence {
    data: Array2<Complex64>,
}

/// Frequency-domain counterpart of [`ComplexSequence`], transformed along
/// the temporal axis. Index 0 of the frequency axis is DC.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    data: Array2<Complex64>,
}

impl ComplexSequence {
    /// Wraps a matrix after validating that it is non-empty and finite.
    pub fn new(data: Array2<Complex64>) -> Result<Self, SignalError> {
        let (m, n) = data.dim();
        if m == 0 || n == 0 {
            return Err(SignalError::Empty { m, n });
        }
        check_finite(&data)?;
        Ok(Self { data })
    }

    /// Internal constructor for values produced by crate arithmetic.
    pub(crate) fn from_array(data: Array2<Complex64>) -> Self {
        Self { data }
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        Self { data: Array2::from_elem((m, n), Complex64::ZERO) }
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self { data: Array2::from_shape_fn((m, n), |(i, j)| f(i, j)) }
    }

    /// Spatial dimension M.
    pub fn spatial_len(&self) -> usize {
        self.data.nrows()
    }

    /// Temporal dimension N.
    pub fn temporal_len(&self) -> usize {
        self.data.ncols()
    }

    pub fn data(&self) -> &Array2<Complex64> {
        &self.data
    }

    pub fn into_data(self) -> Array2<Complex64> {
        self.data
    }

    /// Squared Frobenius norm, `sum |x|^2`.
    pub fn energy(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        check_finite(&self.data).is_ok()
    }
}

impl Spectrum {
    pub fn data(&self) -> &Array2<Complex64> {
        &self.data
    }

    pub fn into_data(self) -> Array2<Complex64> {
        self.data
    }
}

fn check_finite(data: &Array2<Complex64>) -> Result<(), SignalError> {
    for ((m, n), z) in data.indexed_iter() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(SignalError::NonFinite { m, n });
        }
    }
    Ok(())
}

fn same_shape(a: &ComplexSequence, b: &ComplexSequence) -> Result<(), SignalError> {
    if a.data.dim() != b.data.dim() {
        let (a_m, a_n) = a.data.dim();
        let (b_m, b_n) = b.data.dim();
        return Err(SignalError::ShapeMismatch { a_m, a_n, b_m, b_n });
    }
    Ok(())
}

/// Unitary DFT along the temporal axis of each spatial row.
///
/// Both directions carry a `1/sqrt(N)` factor, so `idft(dft(x)) = x` and
/// the transform preserves energy. Any N is supported (rustfft falls back
/// to mixed-radix/Bluestein off powers of two).
pub fn dft(x: &ComplexSequence) -> Result<Spectrum, SignalError> {
    check_finite(&x.data)?;
    Ok(Spectrum { data: transform(&x.data, true) })
}

/// Exact inverse of [`dft`].
pub fn idft(spec: &Spectrum) -> Result<ComplexSequence, SignalError> {
    check_finite(&spec.data)?;
    Ok(ComplexSequence { data: transform(&spec.data, false) })
}

fn transform(data: &Array2<Complex64>, forward: bool) -> Array2<Complex64> {
    let n = data.ncols();
    let mut planner = FftPlanner::new();
    let fft = if forward { planner.plan_fft_forward(n) } else { planner.plan_fft_inverse(n) };
    let mut out = data.clone();
    let scale = 1.0 / (n as f64).sqrt();
    for mut row in out.rows_mut() {
        let slice = row.as_slice_mut().expect("rows of a standard-layout matrix are contiguous");
        fft.process(slice);
        for z in slice.iter_mut() {
            *z *= scale;
        }
    }
    out
}

/// Applies a per-temporal-index complex weight vector to every spatial row.
pub(crate) fn scale_columns(x: &ComplexSequence, w: &[f64]) -> ComplexSequence {
    debug_assert_eq!(w.len(), x.temporal_len());
    let mut out = x.data.clone();
    for mut row in out.rows_mut() {
        for (z, &c) in row.iter_mut().zip(w) {
            *z *= c;
        }
    }
    ComplexSequence { data: out }
}

/// Linearly resamples the temporal axis to `target_len`, independently on
/// real and imaginary parts. Endpoints map to endpoints; the spatial axis
/// is untouched.
pub fn resample(x: &ComplexSequence, target_len: usize) -> Result<ComplexSequence, SignalError> {
    let n = x.temporal_len();
    if n < 2 {
        return Err(SignalError::TooShort(n));
    }
    if target_len < 2 {
        return Err(SignalError::BadTargetLen(target_len));
    }
    if target_len == n {
        return Ok(x.clone());
    }
    let m = x.spatial_len();
    let step = (n - 1) as f64 / (target_len - 1) as f64;
    let mut out = Array2::from_elem((m, target_len), Complex64::ZERO);
    for j in 0..target_len {
        let pos = j as f64 * step;
        let i0 = (pos.floor() as usize).min(n - 1);
        let i1 = (i0 + 1).min(n - 1);
        let frac = pos - i0 as f64;
        for r in 0..m {
            let a = x.data[[r, i0]];
            let b = x.data[[r, i1]];
            out[[r, j]] = a + (b - a) * frac;
        }
    }
    Ok(ComplexSequence { data: out })
}

/// Divides every sample by the mean L2 norm of the N temporal samples
/// (each temporal sample is one length-M column). Afterwards the mean
/// column norm is 1.
pub fn normalize_power(x: &ComplexSequence) -> Result<ComplexSequence, SignalError> {
    let n = x.temporal_len();
    let mean_norm: f64 = (0..n).map(|j| column_norm(x.data.column(j))).sum::<f64>() / n as f64;
    if mean_norm == 0.0 {
        return Err(SignalError::ZeroPower);
    }
    Ok(ComplexSequence { data: &x.data / Complex64::new(mean_norm, 0.0) })
}

fn column_norm(col: ArrayView1<'_, Complex64>) -> f64 {
    col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Resamples to `canonical_len` and normalizes power: the ingestion
/// pipeline applied to every dataset sequence before it reaches the model.
pub fn preprocess(x: &ComplexSequence, canonical_len: usize) -> Result<ComplexSequence, SignalError> {
    normalize_power(&resample(x, canonical_len)?)
}

/// SSIM sliding-window size along the temporal axis.
pub const SSIM_WINDOW: usize = 8;
/// SSIM sliding-window stride.
pub const SSIM_STRIDE: usize = 4;

/// Structural similarity for complex sequences, in `[-1, 1]`.
///
/// Window statistics use complex means, `|.|^2` variances, and the real
/// part of the Hermitian covariance `E[(a - mu_a) * conj(b - mu_b)]`.
/// Stabilizers are `C1 = (0.01 L)^2`, `C2 = (0.03 L)^2` with
/// `L = max(|a|, |b|)` over both inputs. Windows of size
/// [`SSIM_WINDOW`] slide with stride [`SSIM_STRIDE`] along the temporal
/// axis (each window spans all M rows) and the window scores are averaged.
pub fn complex_ssim(a: &ComplexSequence, b: &ComplexSequence) -> Result<f64, SignalError> {
    same_shape(a, b)?;
    let peak = a
        .data
        .iter()
        .chain(b.data.iter())
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max);
    if peak == 0.0 {
        // Both sequences identically zero.
        return Ok(1.0);
    }
    let c1 = (0.01 * peak).powi(2);
    let c2 = (0.03 * peak).powi(2);

    let n = a.temporal_len();
    let mut total = 0.0;
    let mut count = 0usize;
    for start in window_starts(n) {
        let end = (start + SSIM_WINDOW).min(n);
        total += window_ssim(a, b, start, end, c1, c2);
        count += 1;
    }
    Ok(total / count as f64)
}

fn window_starts(n: usize) -> Vec<usize> {
    if n <= SSIM_WINDOW {
        return vec![0];
    }
    let mut starts: Vec<usize> = (0..=(n - SSIM_WINDOW)).step_by(SSIM_STRIDE).collect();
    // Cover the tail when the stride does not land on it.
    if let Some(&last) = starts.last() {
        if last + SSIM_WINDOW < n {
            starts.push(n - SSIM_WINDOW);
        }
    }
    starts
}

fn window_ssim(a: &ComplexSequence, b: &ComplexSequence, start: usize, end: usize, c1: f64, c2: f64) -> f64 {
    let m = a.spatial_len();
    let count = (m * (end - start)) as f64;
    let mut mu_a = Complex64::ZERO;
    let mut mu_b = Complex64::ZERO;
    for j in start..end {
        for i in 0..m {
            mu_a += a.data[[i, j]];
            mu_b += b.data[[i, j]];
        }
    }
    mu_a /= count;
    mu_b /= count;

    let mut var_a = 0.0;
    let mut var_b = 0.0;
    let mut cov = 0.0;
    for j in start..end {
        for i in 0..m {
            let da = a.data[[i, j]] - mu_a;
            let db = b.data[[i, j]] - mu_b;
            var_a += da.norm_sqr();
            var_b += db.norm_sqr();
            cov += (da * db.conj()).re;
        }
    }
    var_a /= count;
    var_b /= count;
    cov /= count;

    let lum = (2.0 * (mu_a * mu_b.conj()).re + c1) / (mu_a.norm_sqr() + mu_b.norm_sqr() + c1);
    let con = (2.0 * cov + c2) / (var_a + var_b + c2);
    lum * con
}

/// Signal-to-noise ratio of `estimate` against `truth`, in dB:
/// `-10 log10(|truth - estimate|^2 / |truth|^2)`.
///
/// A perfect estimate returns `f64::INFINITY`.
pub fn snr_db(estimate: &ComplexSequence, truth: &ComplexSequence) -> Result<f64, SignalError> {
    same_shape(estimate, truth)?;
    let denom = truth.energy();
    if denom == 0.0 {
        return Err(SignalError::ZeroReference);
    }
    let num: f64 = truth
        .data
        .iter()
        .zip(estimate.data.iter())
        .map(|(t, e)| (t - e).norm_sqr())
        .sum();
    if num == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(-10.0 * (num / denom).log10())
}
