//! Uniform time grid and the discrete realization of the continuous
//! Fourier transform convention used throughout the pipeline.
//!
//! The analysis transform approximates `(1/sqrt(2 pi)) \int s(t) e^{-i xi t} dt`
//! by a rectangle sum over the zero-padded sample set, and the synthesis
//! transform approximates `(1/sqrt(2 pi)) \int c(xi) e^{+i xi t} dxi` with the
//! dual frequency weight `dxi = 2 pi / (n_pad dt)`. With these weights the pair
//! is an exact discrete inverse and Parseval holds exactly, so discrete L2
//! quantities are directly comparable with their continuous counterparts.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

const SQRT_2PI: f64 = 2.5066282746310002;

/// Relative imaginary residue tolerated when a spectrum is synthesized back
/// into a real signal. Exceeding it indicates a broken-symmetry multiplier.
pub const IMAG_RESIDUE_TOL: f64 = 1e-8;

/// Uniform sampling of `[0, t_total]` with a power-of-two sample count and a
/// zero-padding multiplier for circular-convolution suppression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    n: usize,
    dt: f64,
    pad_factor: usize,
}

impl TimeGrid {
    pub fn new(n: usize, t_total: f64, pad_factor: usize) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "sample count n = {n} must be a power of two >= 8"
            )));
        }
        if !t_total.is_finite() || t_total <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "t_total = {t_total} must be strictly positive"
            )));
        }
        if pad_factor < 1 {
            return Err(Error::InvalidGrid("pad_factor must be >= 1".into()));
        }
        Ok(Self { n, dt: t_total / n as f64, pad_factor })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_total(&self) -> f64 {
        self.n as f64 * self.dt
    }

    pub fn pad_factor(&self) -> usize {
        self.pad_factor
    }

    pub fn n_pad(&self) -> usize {
        self.n * self.pad_factor
    }

    /// Frequency spacing of the padded dual grid.
    pub fn dxi(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.n_pad() as f64 * self.dt)
    }

    /// Sample time `t_j = j dt`.
    pub fn time(&self, j: usize) -> f64 {
        j as f64 * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.time(j)).collect()
    }

    /// Angular frequency of centered bin `i` (bin 0 is `-n_pad/2`, i.e. the
    /// unpaired negative Nyquist bin; bin `n_pad/2` is DC).
    pub fn frequency(&self, i: usize) -> f64 {
        let centered = i as isize - (self.n_pad() / 2) as isize;
        centered as f64 * self.dxi()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.n_pad()).map(|i| self.frequency(i)).collect()
    }
}

/// Real time-domain samples on a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    grid: TimeGrid,
    samples: Vec<f64>,
}

impl Signal {
    pub fn new(grid: TimeGrid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.n() {
            return Err(Error::InvalidSignal(format!(
                "expected {} samples, got {}",
                grid.n(),
                samples.len()
            )));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidSignal("samples must be finite".into()));
        }
        Ok(Self { grid, samples })
    }

    pub fn zeros(grid: TimeGrid) -> Self {
        Self { grid, samples: vec![0.0; grid.n()] }
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Pointwise linear combination `a*self + b*other` on a shared grid.
    pub fn axpby(&self, a: f64, other: &Signal, b: f64) -> Result<Signal> {
        if self.grid != other.grid {
            return Err(Error::InvalidSignal("grid mismatch".into()));
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Signal::new(self.grid, samples)
    }

    pub fn sub(&self, other: &Signal) -> Result<Signal> {
        self.axpby(1.0, other, -1.0)
    }
}

/// Complex frequency-domain coefficients in centered (negative-to-positive)
/// order over the padded dual grid.
#[derive(Debug, Clone)]
pub struct Spectrum {
    grid: TimeGrid,
    coefficients: Vec<Complex64>,
}

impl Spectrum {
    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Multiply pointwise by a frequency symbol `g(xi)`.
    ///
    /// The unpaired negative-Nyquist bin (centered index 0) has no positive
    /// partner, so a real scalar must stand in for the complex symbol there
    /// to keep spectra of real signals exactly Hermitian. The modulus is
    /// used: it is multiplicative, so a symbol and its reciprocal still
    /// compose to the identity at that bin.
    pub fn map_symbol<F>(&self, g: F) -> Spectrum
    where
        F: Fn(f64) -> Complex64,
    {
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut v = g(self.grid.frequency(i));
                if i == 0 {
                    v = Complex64::new(v.norm(), 0.0);
                }
                c * v
            })
            .collect();
        Spectrum { grid: self.grid, coefficients }
    }
}

/// Forward transform: zero-pad, FFT, scale by `dt / sqrt(2 pi)`, reorder to
/// centered frequencies.
pub fn to_spectrum(signal: &Signal) -> Spectrum {
    let grid = signal.grid();
    let n_pad = grid.n_pad();
    let mut buf: Vec<Complex64> = signal
        .samples()
        .iter()
        .map(|&s| Complex64::new(s, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(n_pad)
        .collect();
    FftPlanner::new().plan_fft_forward(n_pad).process(&mut buf);
    let scale = grid.dt() / SQRT_2PI;
    let half = n_pad / 2;
    // centered index i corresponds to standard bin (i + n_pad/2) mod n_pad
    let coefficients = (0..n_pad).map(|i| buf[(i + half) % n_pad] * scale).collect();
    Spectrum { grid, coefficients }
}

/// Inverse transform: reorder to standard bins, inverse FFT, scale by
/// `dxi / sqrt(2 pi)`, truncate the padding and discard the imaginary
/// residue after checking it is negligible.
pub fn from_spectrum(spectrum: &Spectrum) -> Result<Signal> {
    let grid = spectrum.grid();
    let n_pad = grid.n_pad();
    let half = n_pad / 2;
    let mut buf: Vec<Complex64> = (0..n_pad)
        .map(|s| spectrum.coefficients[(s + half) % n_pad])
        .collect();
    FftPlanner::new().plan_fft_inverse(n_pad).process(&mut buf);
    let scale = grid.dxi() / SQRT_2PI;

    let n = grid.n();
    let mut re_sq = 0.0;
    let mut im_sq = 0.0;
    for c in &buf[..n] {
        re_sq += c.re * c.re;
        im_sq += c.im * c.im;
    }
    let residue = (im_sq.sqrt()) / re_sq.sqrt().max(f64::MIN_POSITIVE);
    if im_sq > 0.0 && residue >= IMAG_RESIDUE_TOL {
        return Err(Error::NonRealReconstruction { residue, tolerance: IMAG_RESIDUE_TOL });
    }

    Signal::new(grid, buf[..n].iter().map(|c| c.re * scale).collect())
}

/// Discrete L2 norm `sqrt(dt * sum s_j^2)`.
pub fn l2_norm(signal: &Signal) -> f64 {
    let sum: f64 = signal.samples().iter().map(|s| s * s).sum();
    (signal.grid().dt() * sum).sqrt()
}

/// Discrete Sobolev norm `sqrt(dxi * sum |f_hat(xi_k)|^2 (1 + xi_k^2)^p)`.
/// Coincides with [`l2_norm`] at `p = 0` by Parseval.
pub fn hp_norm(signal: &Signal, p: f64) -> Result<f64> {
    if !p.is_finite() || p < 0.0 {
        return Err(Error::NonPositiveSmoothness(p));
    }
    let spectrum = to_spectrum(signal);
    let grid = signal.grid();
    let sum: f64 = spectrum
        .coefficients()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let xi = grid.frequency(i);
            c.norm_sqr() * (1.0 + xi * xi).powf(p)
        })
        .sum();
    Ok((grid.dxi() * sum).sqrt())
}
