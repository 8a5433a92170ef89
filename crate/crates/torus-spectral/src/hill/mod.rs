//! Spectral solver for Hill's equation −y″ + p y = λ y on the circle and for
//! the impedance form −(ρ²f′)′/ρ² + V f = λ f with smooth weight ρ².
//!
//! The shooting path integrates the monodromy matrix with an adaptive
//! Runge-Kutta scheme and locates eigenvalues by Prüfer phase counting
//! (index-safe bracketing) followed by safeguarded Newton refinement.
//! Band edges λ_n^± are roots of Λ(λ) = ±1; near closed gaps the quantity
//! Λ² − 1 is evaluated in the cancellation-free product form
//! ((θ₁−φ₁′)² + 4φ₁θ₁′)/4, which keeps tiny gaps resolvable to ~1e−9.
//! An independent Galerkin discretization serves as the second backend.

pub mod backend;
pub mod galerkin;
pub mod ode;

use crate::error::{Error, Result};
use crate::periodic::{PeriodicFn, TrigEval};
use crate::riccati::OperatorSpec;

pub use backend::{backend_by_name, backend_names, GalerkinBackend, ShootingBackend, SpectralBackend};
pub use galerkin::galerkin_spectrum;

const PI: f64 = std::f64::consts::PI;

/// Integration tolerance for monodromy systems. Tighter than strictly needed
/// for simple eigenvalues; the headroom is what lets near-degenerate band
/// edges come out to ~1e−9.
const ODE_TOL: f64 = 1e-12;
/// Looser tolerance for the scalar Prüfer phase used only for bracketing.
const PHASE_TOL: f64 = 1e-10;
/// Gap width below which the gap is reported as exactly closed.
const CLOSED_GAP_WIDTH: f64 = 1e-9;

/// Boundary conditions selecting which spectrum an eigenvalue backend returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Periodic,
    Antiperiodic,
    Dirichlet,
}

impl std::str::FromStr for BoundaryCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic" => Ok(BoundaryCondition::Periodic),
            "antiperiodic" => Ok(BoundaryCondition::Antiperiodic),
            "dirichlet" => Ok(BoundaryCondition::Dirichlet),
            other => Err(Error::Parse(format!("unknown boundary condition '{other}'"))),
        }
    }
}

/// Values of the fundamental pair at x = 1: θ(0) = 1, θ′(0) = 0, φ(0) = 0,
/// φ′(0) = 1. For the impedance form the primed entries are the
/// quasi-derivatives ρ²f′, which reduce to f′ when ρ ≡ 1.
#[derive(Debug, Clone, Copy)]
pub struct Monodromy {
    pub theta1: f64,
    pub theta1p: f64,
    pub phi1: f64,
    pub phi1p: f64,
}

impl Monodromy {
    /// θ(1)φ′(1) − θ′(1)φ(1); equals 1 for exact integration.
    pub fn wronskian(&self) -> f64 {
        self.theta1 * self.phi1p - self.theta1p * self.phi1
    }

    /// Λ(λ) = (θ(1) + φ′(1)) / 2.
    pub fn discriminant(&self) -> f64 {
        0.5 * (self.theta1 + self.phi1p)
    }
}

/// Monodromy extended by the λ-derivatives of all four entries, for Newton
/// refinement of eigenvalues and band edges.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MonodromyExt {
    pub theta1: f64,
    pub theta1p: f64,
    pub phi1: f64,
    pub phi1p: f64,
    pub d_theta1: f64,
    pub d_theta1p: f64,
    pub d_phi1: f64,
    pub d_phi1p: f64,
}

/// Full spectral data set of one operator, truncated at gap index N.
#[derive(Debug, Clone)]
pub struct SpectralData {
    /// λ₀⁺, the bottom of the spectrum.
    pub lambda0: f64,
    /// (λ_n⁻, λ_n⁺) for n = 1..N.
    pub band_edges: Vec<(f64, f64)>,
    /// Dirichlet eigenvalues μ_n, n = 1..N.
    pub dirichlet: Vec<f64>,
    /// Norming constants κ_n = log|φ′(1, μ_n)|.
    pub norming: Vec<f64>,
}

impl SpectralData {
    pub fn n(&self) -> usize {
        self.band_edges.len()
    }

    /// Gap length |γ_n| (1-based n).
    pub fn gap_length(&self, n: usize) -> f64 {
        let (lo, hi) = self.band_edges[n - 1];
        hi - lo
    }

    /// Checks interlacing λ₀⁺ < λ₁⁻ ≤ λ₁⁺ < λ₂⁻ ≤ … and μ_n ∈ [λ_n⁻, λ_n⁺].
    pub fn validate(&self) -> Result<()> {
        let slack = 1e-9;
        let mut prev = self.lambda0;
        for (i, &(lo, hi)) in self.band_edges.iter().enumerate() {
            let n = i + 1;
            if !(lo > prev) {
                return Err(Error::Invariant(format!(
                    "interlacing broken at n = {n}: lambda_minus {lo} <= previous edge {prev}"
                )));
            }
            if hi < lo - slack {
                return Err(Error::Invariant(format!(
                    "gap {n} has negative length: [{lo}, {hi}]"
                )));
            }
            let mu = self.dirichlet[i];
            if mu < lo - slack || mu > hi + slack {
                return Err(Error::Invariant(format!(
                    "mu_{n} = {mu} outside its gap [{lo}, {hi}]"
                )));
            }
            prev = hi;
        }
        Ok(())
    }
}

/// A Sturm-Liouville problem −(ρ²f′)′/ρ² + V f = λ f on the unit circle,
/// with smooth strictly positive weight ρ² (ρ ≡ 1 in the Schrödinger case).
pub struct SlProblem {
    rho2: TrigEval,
    inv_rho2: TrigEval,
    potential: TrigEval,
    v_min: f64,
    v_max: f64,
}

impl SlProblem {
    /// Schrödinger form −y″ + p y.
    pub fn schroedinger(p: &PeriodicFn) -> SlProblem {
        SlProblem {
            rho2: TrigEval::constant(1.0),
            inv_rho2: TrigEval::constant(1.0),
            potential: p.to_trig(),
            v_min: p.min_sample(),
            v_max: p.samples().iter().fold(f64::NEG_INFINITY, |a, &s| a.max(s)),
        }
    }

    /// Impedance form of the warped-product operator: ρ = r^{m/2} with
    /// r = r₀ e^{(2/m)Q}, V = E_ν/r² = A e^{−βQ}.
    pub fn impedance(q: &PeriodicFn, spec: &OperatorSpec) -> Result<SlProblem> {
        let qq = q.antiderivative_zero_start()?;
        let rho2 = qq.map(|s| spec.r0.powi(spec.m as i32) * (2.0 * s).exp());
        let inv_rho2 = rho2.map(|s| 1.0 / s);
        let a = spec.coupling();
        let beta = spec.beta();
        let v = qq.map(|s| a * (-beta * s).exp());
        Ok(SlProblem {
            rho2: rho2.to_trig(),
            inv_rho2: inv_rho2.to_trig(),
            potential: v.to_trig(),
            v_min: v.min_sample(),
            v_max: v.max_abs(),
        })
    }

    /// Fundamental pair at x = 1.
    pub fn monodromy(&self, lambda: f64) -> Result<Monodromy> {
        let rhs = |x: f64, y: &[f64; 4]| {
            let ir2 = self.inv_rho2.eval(x);
            let c = (self.potential.eval(x) - lambda) * self.rho2.eval(x);
            [y[1] * ir2, c * y[0], y[3] * ir2, c * y[2]]
        };
        let y = ode::integrate_to(&rhs, 0.0, 1.0, [1.0, 0.0, 0.0, 1.0], ODE_TOL, ODE_TOL)?;
        Ok(Monodromy { theta1: y[0], theta1p: y[1], phi1: y[2], phi1p: y[3] })
    }

    pub(crate) fn monodromy_ext(&self, lambda: f64) -> Result<MonodromyExt> {
        let rhs = |x: f64, y: &[f64; 8]| {
            let ir2 = self.inv_rho2.eval(x);
            let r2 = self.rho2.eval(x);
            let c = (self.potential.eval(x) - lambda) * r2;
            [
                y[1] * ir2,
                c * y[0],
                y[3] * ir2,
                c * y[2],
                y[5] * ir2,
                c * y[4] - r2 * y[0],
                y[7] * ir2,
                c * y[6] - r2 * y[2],
            ]
        };
        let y = ode::integrate_to(
            &rhs,
            0.0,
            1.0,
            [1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
            ODE_TOL,
            ODE_TOL,
        )?;
        Ok(MonodromyExt {
            theta1: y[0],
            theta1p: y[1],
            phi1: y[2],
            phi1p: y[3],
            d_theta1: y[4],
            d_theta1p: y[5],
            d_phi1: y[6],
            d_phi1p: y[7],
        })
    }

    /// Λ(λ), half the monodromy trace.
    pub fn discriminant(&self, lambda: f64) -> Result<f64> {
        Ok(self.monodromy(lambda)?.discriminant())
    }

    /// Λ′(λ), from the λ-differentiated monodromy system (not a finite
    /// difference).
    pub fn discriminant_derivative(&self, lambda: f64) -> Result<f64> {
        let e = self.monodromy_ext(lambda)?;
        Ok(0.5 * (e.d_theta1 + e.d_phi1p))
    }

    /// Integrates one solution (f, w = ρ²f′) from given initial data and
    /// returns its samples on the uniform grid x_k = k/M.
    pub fn solution_on_grid(
        &self,
        lambda: f64,
        f0: f64,
        w0: f64,
        grid: usize,
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        let rhs = |x: f64, y: &[f64; 2]| {
            [
                y[1] * self.inv_rho2.eval(x),
                (self.potential.eval(x) - lambda) * self.rho2.eval(x) * y[0],
            ]
        };
        let outputs: Vec<f64> = (1..grid).map(|k| k as f64 / grid as f64).collect();
        let mut f = vec![0.0; grid];
        let mut w = vec![0.0; grid];
        f[0] = f0;
        w[0] = w0;
        ode::integrate(&rhs, 0.0, 1.0, [f0, w0], ODE_TOL, ODE_TOL, &outputs, &mut |i, y| {
            f[i + 1] = y[0];
            w[i + 1] = y[1];
        })?;
        Ok((f, w))
    }

    /// Prüfer phase ω(1, λ) for initial angle ω(0) = ω₀, with
    /// f = R sin ω, w = R cos ω, ω′ = cos²ω/ρ² + (λ − V) ρ² sin²ω.
    fn phase_end(&self, lambda: f64, omega0: f64) -> Result<f64> {
        let rhs = |x: f64, y: &[f64; 1]| {
            let (s, c) = y[0].sin_cos();
            [c * c * self.inv_rho2.eval(x)
                + (lambda - self.potential.eval(x)) * self.rho2.eval(x) * s * s]
        };
        Ok(ode::integrate_to(&rhs, 0.0, 1.0, [omega0], PHASE_TOL, PHASE_TOL)?[0])
    }

    /// Locates the eigenvalue with phase target τ inside a phase bracket and
    /// polishes it by safeguarded Newton on the shooting selector
    /// (φ(1) for Dirichlet, w_θ(1) for Neumann).
    fn phase_eigen(
        &self,
        tau: f64,
        omega0: f64,
        neumann: bool,
        mut lo: f64,
        mut w_lo: f64,
        hi_guess: f64,
        index: usize,
    ) -> Result<f64> {
        // bracket: march right until the phase passes the target
        let mut hi = hi_guess.max(lo + 1.0);
        let mut w_hi = self.phase_end(hi, omega0)?;
        let mut tries = 0;
        while w_hi < tau {
            let width = hi - lo;
            lo = hi;
            w_lo = w_hi;
            hi += 2.0 * width.max(1.0);
            w_hi = self.phase_end(hi, omega0)?;
            tries += 1;
            if tries > 60 {
                return Err(Error::Bracketing {
                    index,
                    detail: format!("phase never reached target {tau:.3}"),
                });
            }
        }
        // narrow by safeguarded false position until both phases are within
        // 1.2 rad of the target (the selector then has a single zero inside)
        for _ in 0..80 {
            if w_lo > tau - 1.2 && w_hi < tau + 1.2 {
                break;
            }
            if hi - lo < 1e-13 * hi.abs().max(1.0) {
                return Ok(0.5 * (lo + hi));
            }
            let frac = ((tau - w_lo) / (w_hi - w_lo)).clamp(0.1, 0.9);
            let x = lo + frac * (hi - lo);
            let w = self.phase_end(x, omega0)?;
            if w < tau {
                lo = x;
                w_lo = w;
            } else {
                hi = x;
                w_hi = w;
            }
        }
        // Newton with bracket safeguards; selector signs follow from the phase
        let sel = |e: &MonodromyExt| -> (f64, f64) {
            if neumann {
                (e.theta1p, e.d_theta1p)
            } else {
                (e.phi1, e.d_phi1)
            }
        };
        let sign_of = |w: f64| if neumann { w.cos() } else { w.sin() };
        let s_lo = sign_of(w_lo);
        let mut x = lo + ((tau - w_lo) / (w_hi - w_lo)).clamp(0.05, 0.95) * (hi - lo);
        for _ in 0..60 {
            let e = self.monodromy_ext(x)?;
            let (g, gp) = sel(&e);
            if g * s_lo > 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let scale = x.abs().max(1.0);
            if hi - lo < 1e-12 * scale {
                return Ok(0.5 * (lo + hi));
            }
            let mut xn = if gp != 0.0 { x - g / gp } else { f64::NAN };
            if !(xn.is_finite() && xn > lo && xn < hi) {
                xn = 0.5 * (lo + hi);
            }
            if (xn - x).abs() < 1e-13 * scale {
                return Ok(xn);
            }
            x = xn;
        }
        if hi - lo < 1e-8 * x.abs().max(1.0) {
            Ok(0.5 * (lo + hi))
        } else {
            Err(Error::Bracketing {
                index,
                detail: "eigenvalue refinement stalled".into(),
            })
        }
    }

    /// Dirichlet eigenvalues μ_1..μ_N (roots of φ(1, λ) = 0).
    pub fn dirichlet_eigenvalues(&self, n: usize) -> Result<Vec<f64>> {
        self.boundary_eigen(false, n)
    }

    /// Neumann eigenvalues ν_0..ν_{N−1} (roots of w_θ(1, λ) = 0).
    pub fn neumann_eigenvalues(&self, n: usize) -> Result<Vec<f64>> {
        self.boundary_eigen(true, n)
    }

    fn boundary_eigen(&self, neumann: bool, count: usize) -> Result<Vec<f64>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        let omega0 = if neumann { 0.5 * PI } else { 0.0 };
        let mut out = Vec::with_capacity(count);
        let mut lo = self.v_min - 1.0;
        let mut w_lo = self.phase_end(lo, omega0)?;
        for i in 0..count {
            let tau = if neumann { 0.5 * PI + i as f64 * PI } else { (i + 1) as f64 * PI };
            let k = if neumann { i as f64 } else { (i + 1) as f64 };
            let hi_guess = (k * PI).powi(2) + self.v_max.abs() + self.v_min.abs() + 5.0;
            let ev = self.phase_eigen(tau, omega0, neumann, lo, w_lo, hi_guess, i)?;
            out.push(ev);
            lo = ev;
            w_lo = tau;
        }
        Ok(out)
    }

    /// κ_n = log|φ′(1, μ_n)| (quasi-derivative in the impedance case).
    pub fn norming_constants(&self, mu: &[f64]) -> Result<Vec<f64>> {
        mu.iter()
            .enumerate()
            .map(|(i, &m)| {
                let w = self.monodromy(m)?.phi1p;
                if w.abs() < 1e-14 {
                    return Err(Error::DegenerateNorming(i + 1));
                }
                Ok(w.abs().ln())
            })
            .collect()
    }

    /// (G, G′) for G(λ) = sΛ(λ) − 1 with s = ±1, evaluated without
    /// cancellation near the gap (via Λ² − 1 in product form).
    fn gap_g(e: &MonodromyExt, s: f64) -> (f64, f64) {
        let lam = 0.5 * (e.theta1 + e.phi1p);
        let slam = s * lam;
        let g = if slam > 0.0 {
            0.25 * ((e.theta1 - e.phi1p).powi(2) + 4.0 * e.phi1 * e.theta1p) / (slam + 1.0)
        } else {
            slam - 1.0
        };
        let gp = 0.5 * s * (e.d_theta1 + e.d_phi1p);
        (g, gp)
    }

    /// Root of sΛ = 1 between `gap_side` (inside the closed gap, G ≥ 0 up to
    /// noise) and `band_side` (inside an adjacent band or the wrong gap,
    /// G ≤ −2 + ε). If the gap-side value is already nonpositive the endpoint
    /// itself is the edge to working precision.
    fn edge_root(&self, s: f64, gap_side: f64, band_side: f64, index: usize) -> Result<f64> {
        let (g_gap, _) = Self::gap_g(&self.monodromy_ext(gap_side)?, s);
        if g_gap <= 0.0 {
            return Ok(gap_side);
        }
        let (g_band, _) = Self::gap_g(&self.monodromy_ext(band_side)?, s);
        if g_band >= 0.0 {
            return Err(Error::Bracketing {
                index,
                detail: format!(
                    "discriminant bracket invalid: G({band_side:.6}) = {g_band:.3e} >= 0"
                ),
            });
        }
        let (mut pos, mut neg) = (gap_side, band_side);
        let mut x = 0.5 * (pos + neg);
        for _ in 0..90 {
            let e = self.monodromy_ext(x)?;
            let (g, gp) = Self::gap_g(&e, s);
            if g >= 0.0 {
                pos = x;
            } else {
                neg = x;
            }
            let scale = x.abs().max(1.0);
            if (pos - neg).abs() < 1e-12 * scale {
                return Ok(0.5 * (pos + neg));
            }
            let mut xn = if gp != 0.0 { x - g / gp } else { f64::NAN };
            let (lo, hi) = if pos < neg { (pos, neg) } else { (neg, pos) };
            if !(xn.is_finite() && xn > lo && xn < hi) {
                xn = 0.5 * (pos + neg);
            }
            if (xn - x).abs() < 1e-13 * scale {
                return Ok(xn);
            }
            x = xn;
        }
        if (pos - neg).abs() < 1e-8 * x.abs().max(1.0) {
            Ok(0.5 * (pos + neg))
        } else {
            Err(Error::Bracketing { index, detail: "band-edge refinement stalled".into() })
        }
    }

    /// λ₀⁺ and the band edges (λ_n⁻, λ_n⁺), n = 1..N, plus the Dirichlet
    /// eigenvalues computed along the way.
    fn spectrum_core(&self, n_gaps: usize) -> Result<(f64, Vec<(f64, f64)>, Vec<f64>)> {
        let mu = self.dirichlet_eigenvalues(n_gaps + 1)?;
        let nu = self.neumann_eigenvalues(n_gaps + 2)?;
        // μ_n and ν_n both sit inside gap n; their min/max pin each edge to a
        // unique bracket against the neighbouring gaps.
        let sep_lo = |k: usize| mu[k - 1].min(nu[k]);
        let sep_hi = |k: usize| mu[k - 1].max(nu[k]);
        let lambda0 = self.edge_root(1.0, nu[0], sep_lo(1), 0)?;
        let mut edges = Vec::with_capacity(n_gaps);
        let mut t_prev = lambda0;
        for k in 1..=n_gaps {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            let mut lo = self.edge_root(s, sep_lo(k), t_prev, k)?;
            let mut hi = self.edge_root(s, sep_hi(k), sep_lo(k + 1), k)?;
            if hi - lo < CLOSED_GAP_WIDTH {
                let mid = 0.5 * (lo + hi);
                lo = mid;
                hi = mid;
            }
            edges.push((lo, hi));
            t_prev = hi;
        }
        Ok((lambda0, edges, mu[..n_gaps].to_vec()))
    }

    /// Band edges: (λ₀⁺, [(λ_n⁻, λ_n⁺); n = 1..N]).
    pub fn band_edges(&self, n_gaps: usize) -> Result<(f64, Vec<(f64, f64)>)> {
        let (l0, edges, _) = self.spectrum_core(n_gaps)?;
        Ok((l0, edges))
    }

    /// Assembles and validates the full spectral data set.
    pub fn spectral_data(&self, n_gaps: usize) -> Result<SpectralData> {
        let (lambda0, band_edges, dirichlet) = self.spectrum_core(n_gaps)?;
        let norming = self.norming_constants(&dirichlet)?;
        let data = SpectralData { lambda0, band_edges, dirichlet, norming };
        data.validate()?;
        Ok(data)
    }

    /// First `count` eigenvalues (sorted, with multiplicity) of the chosen
    /// boundary condition.
    pub fn eigenvalues(&self, bc: BoundaryCondition, count: usize) -> Result<Vec<f64>> {
        match bc {
            BoundaryCondition::Dirichlet => self.dirichlet_eigenvalues(count),
            BoundaryCondition::Periodic => {
                let (l0, edges) = self.band_edges(count)?;
                let mut out = vec![l0];
                let mut k = 2;
                while out.len() < count {
                    let (lo, hi) = edges[k - 1];
                    out.push(lo);
                    if out.len() < count {
                        out.push(hi);
                    }
                    k += 2;
                }
                Ok(out)
            }
            BoundaryCondition::Antiperiodic => {
                let (_, edges) = self.band_edges(count)?;
                let mut out = Vec::with_capacity(count);
                let mut k = 1;
                while out.len() < count {
                    let (lo, hi) = edges[k - 1];
                    out.push(lo);
                    if out.len() < count {
                        out.push(hi);
                    }
                    k += 2;
                }
                Ok(out)
            }
        }
    }
}

/// Monodromy of the Schrödinger operator −y″ + p y.
pub fn monodromy(p: &PeriodicFn, lambda: f64) -> Result<Monodromy> {
    SlProblem::schroedinger(p).monodromy(lambda)
}

/// Discriminant Λ(λ) of −y″ + p y.
pub fn discriminant(p: &PeriodicFn, lambda: f64) -> Result<f64> {
    SlProblem::schroedinger(p).discriminant(lambda)
}

/// λ₀⁺ followed by (λ_n⁻, λ_n⁺) pairs for n = 1..N, flattened.
pub fn periodic_eigenvalues(p: &PeriodicFn, n_gaps: usize) -> Result<Vec<f64>> {
    let (l0, edges) = SlProblem::schroedinger(p).band_edges(n_gaps)?;
    let mut out = Vec::with_capacity(2 * n_gaps + 1);
    out.push(l0);
    for (lo, hi) in edges {
        out.push(lo);
        out.push(hi);
    }
    Ok(out)
}

/// Dirichlet eigenvalues μ_1..μ_N of −y″ + p y on [0, 1].
pub fn dirichlet_eigenvalues(p: &PeriodicFn, n: usize) -> Result<Vec<f64>> {
    SlProblem::schroedinger(p).dirichlet_eigenvalues(n)
}

/// Norming constants κ_n = log|φ′(1, μ_n)|.
pub fn norming_constants(p: &PeriodicFn, mu: &[f64]) -> Result<Vec<f64>> {
    SlProblem::schroedinger(p).norming_constants(mu)
}

/// Spectrum of the warped-product operator computed directly in impedance
/// form; equals the Schrödinger spectrum of P(q) shifted by c₀.
pub fn impedance_spectrum(
    q: &PeriodicFn,
    spec: &OperatorSpec,
    count: usize,
    bc: BoundaryCondition,
) -> Result<Vec<f64>> {
    SlProblem::impedance(q, spec)?.eigenvalues(bc, count)
}

/// Spectral data assembled from the Galerkin backend (edges and μ_n from the
/// matrix discretization, κ_n from one shooting pass per n).
pub fn spectral_data_galerkin(p: &PeriodicFn, n_gaps: usize) -> Result<SpectralData> {
    let per = galerkin::galerkin_spectrum(p, n_gaps + 2, BoundaryCondition::Periodic)?;
    let anti = galerkin::galerkin_spectrum(p, n_gaps + 2, BoundaryCondition::Antiperiodic)?;
    let dirichlet = galerkin::galerkin_spectrum(p, n_gaps, BoundaryCondition::Dirichlet)?;
    let lambda0 = per[0];
    let mut band_edges = Vec::with_capacity(n_gaps);
    for n in 1..=n_gaps {
        let (mut lo, mut hi) = if n % 2 == 1 {
            (anti[n - 1], anti[n])
        } else {
            (per[n - 1], per[n])
        };
        if hi - lo < CLOSED_GAP_WIDTH {
            let mid = 0.5 * (lo + hi);
            lo = mid;
            hi = mid;
        }
        band_edges.push((lo, hi));
    }
    let prob = SlProblem::schroedinger(p);
    let norming = prob.norming_constants(&dirichlet)?;
    let data = SpectralData { lambda0, band_edges, dirichlet, norming };
    data.validate()?;
    Ok(data)
}

/// Two-column (λ, Λ(λ)) sweep for plot output.
pub fn discriminant_sweep(
    p: &PeriodicFn,
    lambda_min: f64,
    lambda_max: f64,
    points: usize,
) -> Result<Vec<(f64, f64)>> {
    if points < 2 || !(lambda_max > lambda_min) {
        return Err(Error::InvalidParameter("sweep needs points >= 2 and a proper range".into()));
    }
    let prob = SlProblem::schroedinger(p);
    (0..points)
        .map(|i| {
            let l = lambda_min + (lambda_max - lambda_min) * i as f64 / (points - 1) as f64;
            Ok((l, prob.discriminant(l)?))
        })
        .collect()
}
