//! Independent Galerkin discretization of −d²/dx² + p: exponential basis for
//! periodic/antiperiodic boundary conditions, sine basis for Dirichlet. Used
//! as the cross-check oracle for the shooting backend.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hill::BoundaryCondition;
use crate::periodic::PeriodicFn;

const TWO_PI: f64 = std::f64::consts::TAU;
const PI: f64 = std::f64::consts::PI;

/// Eigenvalues of a complex Hermitian matrix H = A + iB via the doubled real
/// symmetric matrix [[A, −B], [B, A]], whose spectrum is that of H with every
/// multiplicity doubled.
fn hermitian_eigenvalues(re: DMatrix<f64>, im: DMatrix<f64>) -> Vec<f64> {
    let d = re.nrows();
    let mut z = DMatrix::<f64>::zeros(2 * d, 2 * d);
    z.view_mut((0, 0), (d, d)).copy_from(&re);
    z.view_mut((d, d), (d, d)).copy_from(&re);
    z.view_mut((0, d), (d, d)).copy_from(&(-&im));
    z.view_mut((d, 0), (d, d)).copy_from(&im);
    let mut ev: Vec<f64> = z.symmetric_eigenvalues().iter().cloned().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev.into_iter().step_by(2).collect()
}

/// Matrix of −d²/dx² + p in the basis e^{2πi f_j x} for the given frequency
/// offsets (integers for periodic, half-integers for antiperiodic).
fn exponential_eigenvalues(p: &PeriodicFn, freqs: &[f64], count: usize) -> Vec<f64> {
    let d = freqs.len();
    let mut re = DMatrix::<f64>::zeros(d, d);
    let mut im = DMatrix::<f64>::zeros(d, d);
    for j in 0..d {
        for k in 0..d {
            let c: Complex64 = p.coeff((freqs[j] - freqs[k]).round() as i64);
            re[(j, k)] = c.re;
            im[(j, k)] = c.im;
        }
        re[(j, j)] += (TWO_PI * freqs[j]).powi(2);
    }
    let mut ev = hermitian_eigenvalues(re, im);
    ev.truncate(count);
    ev
}

/// ∫₀¹ p(x) cos(kπx) dx, exact for the stored Fourier coefficients of p.
/// Even k reduces to a single coefficient; odd k mixes all modes.
fn cos_moment(p: &PeriodicFn, k: usize) -> f64 {
    if k % 2 == 0 {
        if k == 0 {
            p.mean()
        } else {
            p.coeff((k / 2) as i64).re
        }
    } else {
        let half = (p.grid_size() / 2) as i64;
        let kf = k as f64;
        let mut acc = 0.0;
        for n in -half..=half {
            let im = p.coeff(n).im;
            if im == 0.0 {
                continue;
            }
            let a = 2.0 * n as f64 + kf;
            let b = 2.0 * n as f64 - kf;
            acc += -im * (1.0 / (a * PI) + 1.0 / (b * PI));
        }
        acc
    }
}

/// Matrix in the orthonormal basis √2 sin(jπx), j = 1..d.
fn sine_eigenvalues(p: &PeriodicFn, d: usize, count: usize) -> Vec<f64> {
    let moments: Vec<f64> = (0..=2 * d).map(|k| cos_moment(p, k)).collect();
    let mut m = DMatrix::<f64>::zeros(d, d);
    for j in 1..=d {
        for k in 1..=d {
            m[(j - 1, k - 1)] = moments[j.abs_diff(k)] - moments[j + k];
        }
        m[(j - 1, j - 1)] += (j as f64 * PI).powi(2);
    }
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().cloned().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev.truncate(count);
    ev
}

/// First `count` eigenvalues (ascending, with multiplicity) of −d²/dx² + p
/// under the given boundary condition. Truncation dimension is 4·count + 32.
pub fn galerkin_spectrum(
    p: &PeriodicFn,
    count: usize,
    bc: BoundaryCondition,
) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::InvalidParameter("eigenvalue count must be >= 1".into()));
    }
    let k = 2 * count + 16; // 2k (+1) basis functions >= 4*count + 32
    match bc {
        BoundaryCondition::Periodic => {
            let freqs: Vec<f64> = (-(k as i64)..=k as i64).map(|n| n as f64).collect();
            Ok(exponential_eigenvalues(p, &freqs, count))
        }
        BoundaryCondition::Antiperiodic => {
            let freqs: Vec<f64> = (-(k as i64)..k as i64).map(|n| n as f64 + 0.5).collect();
            Ok(exponential_eigenvalues(p, &freqs, count))
        }
        BoundaryCondition::Dirichlet => Ok(sine_eigenvalues(p, 4 * count + 32, count)),
    }
}
