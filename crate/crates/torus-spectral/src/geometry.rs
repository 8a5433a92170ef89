//! Embedded-torus pipeline: arc-length reparametrization of the meridian,
//! profile extraction with the |h′| ≤ 1 check, and conversion between radius
//! profiles and potentials q.

use crate::error::{Error, Result};
use crate::periodic::{PeriodicFn, TrigEval};

const TAU: f64 = std::f64::consts::TAU;

/// Rotationally symmetric torus: tube center circle of radius `a`, minor
/// radius function R(θ) sampled over θ ∈ [0, 2π) (stored on the unit circle
/// s = θ/2π).
#[derive(Debug, Clone)]
pub struct TorusEmbedding {
    pub a: f64,
    pub minor_radius: PeriodicFn,
}

impl TorusEmbedding {
    pub fn new(a: f64, minor_radius: PeriodicFn) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::InvalidParameter(format!("major radius must be positive, got {a}")));
        }
        let min = minor_radius.min_sample();
        let max = minor_radius.max_abs();
        if min <= 0.0 || max >= a {
            return Err(Error::InvalidParameter(format!(
                "minor radius must satisfy 0 < R < a (range [{min}, {max}], a = {a})"
            )));
        }
        Ok(TorusEmbedding { a, minor_radius })
    }

    /// R(θ).
    pub fn radius_at(&self, theta: f64) -> f64 {
        self.minor_radius.eval(theta / TAU)
    }
}

/// Normalized meridian profile: h(x) = r₀ e^{(2/m)Q(x)} with total meridian
/// length `b` retained from the embedding side.
#[derive(Debug, Clone)]
pub struct Profile {
    pub r0: f64,
    pub q: PeriodicFn,
    pub b: f64,
}

/// Invertible tabulated arc-length map t ↔ θ along the meridian curve
/// θ ↦ (R(θ)cosθ, R(θ)sinθ), with t(0) = 0 and t(2π) = b.
#[derive(Debug, Clone)]
pub struct ArclengthMap {
    b: f64,
    /// zero-mean spectral antiderivative of the speed fluctuation, in s = θ/2π
    wiggle: TrigEval,
    /// speed dt/ds = 2π√(R′(θ)² + R(θ)²), as a function of s
    speed: TrigEval,
}

impl ArclengthMap {
    /// Total meridian length b = ∫₀^{2π} √(R′² + R²) dθ.
    pub fn total_length(&self) -> f64 {
        self.b
    }

    /// t(θ) = ∫₀^θ √(R′² + R²) dθ′.
    pub fn t_of_theta(&self, theta: f64) -> f64 {
        let s = theta / TAU;
        self.wiggle.eval(s) + self.b * s
    }

    /// Inverse map, by Newton on the strictly monotone t(θ).
    pub fn theta_of_t(&self, t: f64) -> f64 {
        let mut s = t / self.b; // exact for constant speed
        for _ in 0..50 {
            let f = self.wiggle.eval(s) + self.b * s - t;
            let step = f / self.speed.eval(s);
            s -= step;
            if step.abs() < 1e-15 * (1.0 + s.abs()) {
                break;
            }
        }
        s * TAU
    }
}

/// Arc-length parametrization of the meridian; the speed is computed
/// spectrally and its cumulative integral splits into a linear part b·s and a
/// periodic zero-mean part.
pub fn arclength_param(emb: &TorusEmbedding) -> Result<ArclengthMap> {
    let r = &emb.minor_radius;
    // R′ w.r.t. θ is (1/2π) d/ds
    let r_theta = r.derivative().scale(1.0 / TAU);
    let speed = r_theta
        .mul(&r_theta)
        .add(&r.mul(r))
        .map(|v| TAU * v.sqrt());
    let b = speed.integral();
    let wiggle = speed.map(|v| v - b).antiderivative_zero_start()?;
    Ok(ArclengthMap { b, wiggle: wiggle.to_trig(), speed: speed.to_trig() })
}

/// Extracts the normalized profile h(τ) = r(bτ)/b, r(t) = a + R(θ(t))cosθ(t),
/// with r₀ = h(0) and q = (1/2)(log h)′ (m = 1 on the geometry side).
/// Rejects embeddings whose profile violates the slope bound |h′| ≤ 1.
pub fn profile_from_embedding(emb: &TorusEmbedding) -> Result<Profile> {
    let map = arclength_param(emb)?;
    let b = map.total_length();
    let grid = emb.minor_radius.grid_size();
    let r_eval = emb.minor_radius.to_trig();
    let r_theta = emb.minor_radius.derivative().scale(1.0 / TAU).to_trig();
    let mut h = Vec::with_capacity(grid);
    let mut slope_max = 0.0f64;
    for k in 0..grid {
        let theta = map.theta_of_t(b * k as f64 / grid as f64);
        let (sin_t, cos_t) = theta.sin_cos();
        let rr = r_eval.eval(theta / TAU);
        let rp = r_theta.eval(theta / TAU);
        h.push((emb.a + rr * cos_t) / b);
        // dr/dt = (R′cosθ − Rsinθ)/√(R′² + R²)
        slope_max = slope_max.max((rp * cos_t - rr * sin_t).abs() / rp.hypot(rr));
    }
    if slope_max > 1.0 + 1e-9 {
        return Err(Error::ProfileSlope(slope_max));
    }
    let h = PeriodicFn::analyze(h)?;
    let r0 = h.samples()[0];
    let q = h.map(f64::ln).derivative().scale(0.5);
    Ok(Profile { r0, q, b })
}

/// r(x) = r₀ e^{(2/m)Q(x)}; satisfies r(0) = r(1) = r₀.
pub fn profile_to_radius(q: &PeriodicFn, r0: f64, m: u32) -> Result<PeriodicFn> {
    if !(r0 > 0.0) {
        return Err(Error::InvalidParameter(format!("r0 must be positive, got {r0}")));
    }
    if m < 1 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    let qq = q.antiderivative_zero_start()?;
    Ok(qq.map(|s| r0 * (2.0 / m as f64 * s).exp()))
}
