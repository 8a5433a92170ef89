//! Real 1-periodic functions on a uniform grid with consistent Fourier data.
//!
//! A [`PeriodicFn`] carries samples on the grid `x_k = k/M` together with the
//! discrete Fourier coefficients of modes `|n| <= M/2`. All calculus
//! (differentiation, zero-mean antiderivatives, Sobolev norms) is spectral,
//! so it is exact on band-limited data and spectrally accurate for smooth
//! functions. Quadrature of periodic grid functions is the trapezoid rule,
//! which on this grid is just the sample mean.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Default grid size; all quadrature lives on this uniform grid.
pub const DEFAULT_GRID: usize = 256;

/// Tolerance below which a mean is considered exactly zero.
pub const MEAN_TOL: f64 = 1e-10;

const TWO_PI: f64 = std::f64::consts::TAU;

/// Sobolev index `j` for the scale `H_j`, restricted to `{-1, 0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SobolevIndex(i8);

impl SobolevIndex {
    pub const MINUS_ONE: SobolevIndex = SobolevIndex(-1);
    pub const ZERO: SobolevIndex = SobolevIndex(0);
    pub const ONE: SobolevIndex = SobolevIndex(1);
    pub const TWO: SobolevIndex = SobolevIndex(2);

    pub fn new(j: i8) -> Result<Self> {
        if (-1..=2).contains(&j) {
            Ok(SobolevIndex(j))
        } else {
            Err(Error::InvalidParameter(format!(
                "Sobolev index {j} outside {{-1, 0, 1, 2}}"
            )))
        }
    }

    pub fn get(self) -> i8 {
        self.0
    }
}

/// A real 1-periodic function: grid samples plus Fourier coefficients.
///
/// Coefficients are stored in FFT order: index `k` holds the coefficient of
/// mode `n = k` for `k <= M/2` and `n = k - M` otherwise, normalized so that
/// `f(x) = sum_n c_n exp(2 pi i n x)`.
#[derive(Debug, Clone)]
pub struct PeriodicFn {
    samples: Vec<f64>,
    coeffs: Vec<Complex64>,
    mean: f64,
}

fn check_grid(m: usize) -> Result<()> {
    if m >= 16 && m.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::BadGridSize(m))
    }
}

fn fft_forward(samples: &[f64]) -> Vec<Complex64> {
    let m = samples.len();
    let mut buf: Vec<Complex64> = samples.iter().map(|&s| Complex64::new(s, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    for c in &mut buf {
        *c *= scale;
    }
    buf
}

fn fft_inverse(coeffs: &[Complex64]) -> Vec<f64> {
    let mut buf = coeffs.to_vec();
    FftPlanner::new().plan_fft_inverse(coeffs.len()).process(&mut buf);
    buf.iter().map(|c| c.re).collect()
}

impl PeriodicFn {
    /// Builds a `PeriodicFn` from uniform grid samples (the `analyze` map).
    pub fn analyze(samples: Vec<f64>) -> Result<Self> {
        check_grid(samples.len())?;
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let coeffs = fft_forward(&samples);
        let mean = coeffs[0].re;
        Ok(PeriodicFn { samples, coeffs, mean })
    }

    /// Builds from full-length Fourier coefficients in FFT order.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        check_grid(coeffs.len())?;
        let samples = fft_inverse(&coeffs);
        let mean = coeffs[0].re;
        Ok(PeriodicFn { samples, coeffs, mean })
    }

    pub fn zeros(m: usize) -> Self {
        PeriodicFn::constant(0.0, m)
    }

    pub fn constant(c: f64, m: usize) -> Self {
        check_grid(m).expect("bad grid size");
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
        coeffs[0] = Complex64::new(c, 0.0);
        PeriodicFn { samples: vec![c; m], coeffs, mean: c }
    }

    /// Samples `f` on the uniform grid `x_k = k/M`.
    pub fn from_fn(m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let samples: Vec<f64> = (0..m).map(|k| f(k as f64 / m as f64)).collect();
        PeriodicFn::analyze(samples)
    }

    /// `amp_cos * cos(2 pi n x) + amp_sin * sin(2 pi n x)` on an `m`-point grid.
    pub fn harmonic(m: usize, n: usize, amp_cos: f64, amp_sin: f64) -> Result<Self> {
        PeriodicFn::from_fn(m, |x| {
            amp_cos * (TWO_PI * n as f64 * x).cos() + amp_sin * (TWO_PI * n as f64 * x).sin()
        })
    }

    pub fn grid_size(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Fourier coefficient of mode `n` (zero outside `|n| <= M/2`).
    pub fn coeff(&self, n: i64) -> Complex64 {
        let m = self.grid_size() as i64;
        if n.abs() > m / 2 {
            return Complex64::new(0.0, 0.0);
        }
        let k = n.rem_euclid(m) as usize;
        self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Spectral derivative. The Nyquist mode is dropped.
    pub fn derivative(&self) -> PeriodicFn {
        let m = self.grid_size();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
        for k in 1..m {
            let n = if k <= m / 2 { k as i64 } else { k as i64 - m as i64 };
            if k == m / 2 {
                continue;
            }
            coeffs[k] = self.coeffs[k] * Complex64::new(0.0, TWO_PI * n as f64);
        }
        let samples = fft_inverse(&coeffs);
        PeriodicFn { samples, coeffs, mean: 0.0 }
    }

    /// The 1-periodic antiderivative `Q(x) = int_0^x q` with `Q(0) = 0`.
    ///
    /// Only defined for zero-mean `q`; rejects otherwise rather than
    /// projecting silently.
    pub fn antiderivative_zero_start(&self) -> Result<PeriodicFn> {
        if self.mean.abs() > MEAN_TOL {
            return Err(Error::NonZeroMean(self.mean, MEAN_TOL));
        }
        let m = self.grid_size();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
        for k in 1..m {
            if k == m / 2 {
                continue;
            }
            let n = if k <= m / 2 { k as i64 } else { k as i64 - m as i64 };
            coeffs[k] = self.coeffs[k] / Complex64::new(0.0, TWO_PI * n as f64);
        }
        let mut samples = fft_inverse(&coeffs);
        // pin Q(0) = 0 by shifting the mean
        let s0 = samples[0];
        for s in &mut samples {
            *s -= s0;
        }
        coeffs[0] = Complex64::new(-s0, 0.0);
        Ok(PeriodicFn { samples, coeffs, mean: -s0 })
    }

    /// Sobolev norm on the scale `H_j`:
    /// `||f||_j^2 = sum_n (2 pi n)^{2j} |c_n|^2`, with `||f||_{-1}` the L2
    /// norm of the zero-mean antiderivative (requires zero mean).
    pub fn norm(&self, j: SobolevIndex) -> Result<f64> {
        let j = j.get() as i32;
        if j == -1 && self.mean.abs() > MEAN_TOL {
            return Err(Error::NegativeNormMean(self.mean));
        }
        let m = self.grid_size();
        let mut acc = 0.0;
        for k in 0..m {
            let n = if k <= m / 2 { k as i64 } else { k as i64 - m as i64 };
            if n == 0 {
                if j == 0 {
                    acc += self.coeffs[0].norm_sqr();
                }
                continue;
            }
            let w = (TWO_PI * n as f64).powi(2 * j);
            acc += w * self.coeffs[k].norm_sqr();
        }
        Ok(acc.sqrt())
    }

    /// L2 norm `||f||_0` (never fails).
    pub fn norm_l2(&self) -> f64 {
        self.norm(SobolevIndex::ZERO).expect("j = 0 norm is total")
    }

    /// Splits `f = f_even + f_odd` w.r.t. the reflection `x -> 1 - x`.
    pub fn even_odd_split(&self) -> (PeriodicFn, PeriodicFn) {
        let m = self.grid_size();
        let mut even = vec![0.0; m];
        let mut odd = vec![0.0; m];
        for k in 0..m {
            let r = self.samples[(m - k) % m];
            even[k] = 0.5 * (self.samples[k] + r);
            odd[k] = 0.5 * (self.samples[k] - r);
        }
        (
            PeriodicFn::analyze(even).expect("reflection preserves grid"),
            PeriodicFn::analyze(odd).expect("reflection preserves grid"),
        )
    }

    /// L2 pairing `(f, g) = int_0^1 f g dx` by the trapezoid rule.
    pub fn inner(&self, other: &PeriodicFn) -> f64 {
        assert_eq!(self.grid_size(), other.grid_size(), "grid mismatch");
        let m = self.grid_size() as f64;
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / m
    }

    /// `int_0^1 f dx`.
    pub fn integral(&self) -> f64 {
        self.mean
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |a, &s| a.max(s.abs()))
    }

    pub fn min_sample(&self) -> f64 {
        self.samples.iter().fold(f64::INFINITY, |a, &s| a.min(s))
    }

    pub fn add(&self, other: &PeriodicFn) -> PeriodicFn {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PeriodicFn) -> PeriodicFn {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product on the grid, re-analyzed (aliasing is controlled by
    /// keeping M at least 8x the band limit of the factors).
    pub fn mul(&self, other: &PeriodicFn) -> PeriodicFn {
        self.zip(other, |a, b| a * b)
    }

    /// Pointwise quotient on the grid (caller guarantees the divisor has no
    /// zeros on the grid).
    pub fn div(&self, other: &PeriodicFn) -> PeriodicFn {
        self.zip(other, |a, b| a / b)
    }

    pub fn scale(&self, c: f64) -> PeriodicFn {
        self.map(|s| c * s)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> PeriodicFn {
        let samples: Vec<f64> = self.samples.iter().map(|&s| f(s)).collect();
        PeriodicFn::analyze(samples).expect("map preserves grid")
    }

    fn zip(&self, other: &PeriodicFn, f: impl Fn(f64, f64) -> f64) -> PeriodicFn {
        assert_eq!(self.grid_size(), other.grid_size(), "grid mismatch");
        let samples: Vec<f64> = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(&a, &b)| f(a, b))
            .collect();
        PeriodicFn::analyze(samples).expect("zip preserves grid")
    }

    /// Subtracts the mean, making the result an element of `H_0` exactly.
    pub fn force_zero_mean(&self) -> PeriodicFn {
        let m = self.mean;
        let mut out = self.map(|s| s - m);
        out.coeffs[0] = Complex64::new(0.0, 0.0);
        out.mean = 0.0;
        out
    }

    /// Trigonometric evaluator for off-grid points.
    pub fn to_trig(&self) -> TrigEval {
        TrigEval::from_periodic(self)
    }

    /// Convenience single-point evaluation (builds a fresh evaluator).
    pub fn eval(&self, x: f64) -> f64 {
        self.to_trig().eval(x)
    }
}

/// Truncated real trigonometric series, cheap to evaluate at arbitrary `x`.
///
/// `f(x) = a0 + sum_{n=1}^{N} a_n cos(2 pi n x) + b_n sin(2 pi n x)`,
/// evaluated with the angle-addition recurrence (two trig calls per point).
#[derive(Debug, Clone)]
pub struct TrigEval {
    a0: f64,
    cos_coeffs: Vec<f64>,
    sin_coeffs: Vec<f64>,
}

impl TrigEval {
    pub fn from_periodic(f: &PeriodicFn) -> TrigEval {
        let m = f.grid_size();
        let half = m / 2;
        let mut cos_coeffs = Vec::with_capacity(half);
        let mut sin_coeffs = Vec::with_capacity(half);
        let mut scale = f.coeffs[0].re.abs();
        for k in 1..=half {
            let c = f.coeffs[k];
            let (a, b) = if k == half {
                (c.re, 0.0)
            } else {
                (2.0 * c.re, -2.0 * c.im)
            };
            cos_coeffs.push(a);
            sin_coeffs.push(b);
            scale = scale.max(a.abs()).max(b.abs());
        }
        // drop the negligible tail
        let thresh = scale * 1e-15;
        let mut n = half;
        while n > 0 && cos_coeffs[n - 1].abs() <= thresh && sin_coeffs[n - 1].abs() <= thresh {
            n -= 1;
        }
        cos_coeffs.truncate(n);
        sin_coeffs.truncate(n);
        TrigEval { a0: f.coeffs[0].re, cos_coeffs, sin_coeffs }
    }

    pub fn constant(c: f64) -> TrigEval {
        TrigEval { a0: c, cos_coeffs: Vec::new(), sin_coeffs: Vec::new() }
    }

    pub fn modes(&self) -> usize {
        self.cos_coeffs.len()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let theta = TWO_PI * x;
        let (s1, c1) = theta.sin_cos();
        let mut cn = 1.0;
        let mut sn = 0.0;
        let mut acc = self.a0;
        for (a, b) in self.cos_coeffs.iter().zip(&self.sin_coeffs) {
            let c_next = cn * c1 - sn * s1;
            let s_next = sn * c1 + cn * s1;
            cn = c_next;
            sn = s_next;
            acc += a * cn + b * sn;
        }
        acc
    }

    /// Evaluator of the derivative series.
    pub fn derivative(&self) -> TrigEval {
        let mut cos_coeffs = Vec::with_capacity(self.cos_coeffs.len());
        let mut sin_coeffs = Vec::with_capacity(self.sin_coeffs.len());
        for (i, (a, b)) in self.cos_coeffs.iter().zip(&self.sin_coeffs).enumerate() {
            let w = TWO_PI * (i + 1) as f64;
            cos_coeffs.push(w * b);
            sin_coeffs.push(-w * a);
        }
        TrigEval { a0: 0.0, cos_coeffs, sin_coeffs }
    }
}
