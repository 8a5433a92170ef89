//! Constructive inversion of the perturbed Riccati map and of the gap
//! mapping.
//!
//! The m = 1 inversion rests on the positive Floquet solutions of
//! −φ″ + pφ = λφ. For every λ below the periodic ground eigenvalue the
//! growing Floquet solution φ = e^{κx}φ₁ (κ = arccosh Λ(λ), φ₁ periodic and
//! positive) splits φ′/φ = q + h with h = h₀/v > 0 and q = v′/(2v) zero
//! mean, where v is the unique periodic solution of v′ + 2h₀ = 2(φ′/φ)v.
//! Every such pair satisfies p = q′ + q² + h² + λ, so the decompositions of
//! a fixed p form a one-parameter family indexed by λ (equivalently by the
//! multiplier e^κ = e^{∫h}). Inverting the forward map at coupling h₀ means
//! picking the member with v(0) = 1, so that h = h₀e^{−2Q} exactly; v(0) is
//! monotone in λ and the selection is a scalar root-finding problem.
//!
//! [`ground_floquet`] exposes the canonical multiplier-e member (∫h = 1),
//! which exists for every p and anchors the search.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gapmap::{psi_of_q, psi_refined, GapVector};
use crate::hill::{BoundaryCondition, SlProblem};
use crate::periodic::{PeriodicFn, DEFAULT_GRID, MEAN_TOL};
use crate::riccati::{forward_map, frechet_apply, OperatorSpec};

const TAU: f64 = std::f64::consts::TAU;

/// Gap widths below this (relative) are treated as closed when deciding
/// whether a band-edge eigenvalue is simple. Matches the closed-gap clamp of
/// the spectrum solver.
const CLOSED_GAP: f64 = 1e-9;

/// A positive Floquet solution φ(x) = e^x φ₁(x) of −φ″ + pφ = λ₀φ.
#[derive(Debug, Clone)]
pub struct FloquetSolution {
    /// The unique λ₀ < λ₀⁺ with Λ(λ₀) = cosh 1.
    pub lambda0: f64,
    /// Periodic part, strictly positive, ‖φ₁‖ = 1.
    pub phi1: PeriodicFn,
    /// Floquet multiplier φ(x+1)/φ(x) (= e up to solver tolerance).
    pub multiplier: f64,
}

/// Output of the Riccati inversion: p = q′ + q² + h² + λ₀ with h > 0 of the
/// form h(0)·e^{−2Q}.
#[derive(Debug, Clone)]
pub struct InversionResult {
    pub q: PeriodicFn,
    pub h: PeriodicFn,
    pub lambda0: f64,
    /// ‖p − (q′ + q² + h² + λ₀)‖ in L².
    pub residual: f64,
}

/// Finds the unique λ < λ₀⁺ with Λ(λ) = cosh κ. Λ is strictly decreasing
/// there and → ∞ as λ → −∞, so a downward doubling march always brackets.
fn discriminant_root(prob: &SlProblem, upper: f64, kappa: f64) -> Result<f64> {
    let target = kappa.cosh();
    let mut hi = upper; // Λ(λ₀⁺) = 1 < target
    let mut step = 1.0;
    let mut lo = hi - step;
    let mut f_lo = prob.discriminant(lo)? - target;
    let mut tries = 0;
    while f_lo < 0.0 {
        hi = lo;
        step *= 2.0;
        lo -= step;
        f_lo = prob.discriminant(lo)? - target;
        tries += 1;
        if tries > 60 {
            return Err(Error::Bracketing {
                index: 0,
                detail: format!("discriminant never reached cosh {kappa} above lambda = {lo}"),
            });
        }
    }
    // safeguarded Newton on f = Λ − target inside [lo, hi]
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let f = prob.discriminant(x)? - target;
        let fp = prob.discriminant_derivative(x)?;
        if f > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let scale = x.abs().max(1.0);
        if f.abs() < 1e-13 * target || hi - lo < 1e-14 * scale {
            return Ok(x);
        }
        let newton = x - f / fp;
        x = if fp < 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(x)
}

/// Builds the normalized positive periodic part φ₁ of the growing Floquet
/// solution at λ (requires Λ(λ) > 1). Returns (κ, φ₁).
fn floquet_pair(prob: &SlProblem, lambda: f64, grid: usize) -> Result<(f64, PeriodicFn)> {
    let m = prob.monodromy(lambda)?;
    let disc = m.discriminant();
    if disc <= 1.0 {
        return Err(Error::Invariant(format!(
            "no growing Floquet solution at lambda = {lambda} (discriminant {disc})"
        )));
    }
    let rho = disc + (disc * disc - 1.0).sqrt();
    let kappa = rho.ln();
    // null vector of T − ρI from its better-conditioned row
    let r1 = (m.theta1 - rho, m.phi1);
    let r2 = (m.theta1p, m.phi1p - rho);
    let (a, b) = if r1.0.hypot(r1.1) >= r2.0.hypot(r2.1) { r1 } else { r2 };
    let (f, _) = prob.solution_on_grid(lambda, b, -a, grid)?;
    let mut phi1: Vec<f64> = f
        .iter()
        .enumerate()
        .map(|(k, &y)| y * (-kappa * k as f64 / grid as f64).exp())
        .collect();
    if phi1.iter().sum::<f64>() < 0.0 {
        for s in &mut phi1 {
            *s = -*s;
        }
    }
    let min = phi1.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(Error::NonPositiveGroundState(min));
    }
    let phi1 = PeriodicFn::analyze(phi1)?;
    let norm = phi1.norm_l2();
    Ok((kappa, phi1.scale(1.0 / norm)))
}

/// The positive Floquet solution with multiplier exactly e.
pub fn ground_floquet(p: &PeriodicFn) -> Result<FloquetSolution> {
    let prob = SlProblem::schroedinger(p);
    let upper = prob.eigenvalues(BoundaryCondition::Periodic, 1)?[0];
    let lambda0 = discriminant_root(&prob, upper, 1.0)?;
    let (kappa, phi1) = floquet_pair(&prob, lambda0, p.grid_size())?;
    Ok(FloquetSolution { lambda0, phi1, multiplier: kappa.exp() })
}

/// The periodic solution of v′ + 2h₀ = 2(φ′/φ)v for φ = e^{κx}φ₁, computed
/// from the closed form
///
/// ```text
/// v(x) = C₁ ∫₀ˣ (φ(x)/φ(t))² dt + C₂ ∫ₓ¹ (φ(x)/φ(t))² dt,
/// C₁ = 2h₀/(ρ²−1),  C₂ = C₁ρ²,  ρ = e^κ.
/// ```
///
/// The inner integral I₀(x) = ∫₀ˣ e^{−2κt} φ₁(t)^{−2} dt is evaluated
/// spectrally: with φ₁⁻² = Σ cₙ e^{2πinx} one has I₀(x) = e^{−2κx}S(x) − S(0)
/// where S has coefficients cₙ/(2πin − 2κ).
fn periodic_v(phi1: &PeriodicFn, kappa: f64, h0: f64) -> Result<PeriodicFn> {
    let m = phi1.grid_size();
    let w = phi1.map(|s| 1.0 / (s * s));
    let mut d = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..m {
        if k == m / 2 {
            continue; // Nyquist: negligible for smooth φ₁ and breaks symmetry
        }
        let n = if k <= m / 2 { k as i64 } else { k as i64 - m as i64 };
        d[k] = w.coeffs()[k] / Complex64::new(-2.0 * kappa, TAU * n as f64);
    }
    let s_fn = PeriodicFn::from_coeffs(d)?;
    let s0 = s_fn.samples()[0];
    let rho2 = (2.0 * kappa).exp();
    let c1 = 2.0 * h0 / (rho2 - 1.0);
    let c2 = c1 * rho2;
    let i0_end = ((-2.0 * kappa).exp() - 1.0) * s0;
    let samples: Vec<f64> = (0..m)
        .map(|k| {
            let x = k as f64 / m as f64;
            let i0 = (-2.0 * kappa * x).exp() * s_fn.samples()[k] - s0;
            let p1 = phi1.samples()[k];
            p1 * p1 * (2.0 * kappa * x).exp() * (c1 * i0 + c2 * (i0_end - i0))
        })
        .collect();
    let min = samples.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(Error::NonPositiveV(min));
    }
    PeriodicFn::analyze(samples)
}

/// Inverts p = P(q) for m = 1 and coupling h₀ = √A: selects the Floquet
/// parameter λ with v(0) = 1 (so that h = h₀e^{−2Q} exactly) and reads off
/// q = v′/(2v), h = h₀/v.
pub fn invert_riccati_m1(p: &PeriodicFn, h0: f64) -> Result<InversionResult> {
    if !(h0 > 0.0) {
        return Err(Error::InvalidParameter(format!("h0 must be positive, got {h0}")));
    }
    if p.mean().abs() > MEAN_TOL {
        return Err(Error::NonZeroMean(p.mean(), MEAN_TOL));
    }
    let grid = p.grid_size();
    let prob = SlProblem::schroedinger(p);
    let upper = prob.eigenvalues(BoundaryCondition::Periodic, 1)?[0];
    let anchor = discriminant_root(&prob, upper, 1.0)?;

    // g(λ) = v(0) − 1 is strictly increasing (v(0) = h₀ / h_eff(λ) with the
    // effective coupling decreasing in λ); bracket around the multiplier-e
    // anchor, then bisect.
    let eval = |lambda: f64| -> Result<(f64, f64, PeriodicFn, PeriodicFn)> {
        let (kappa, phi1) = floquet_pair(&prob, lambda, grid)?;
        let v = periodic_v(&phi1, kappa, h0)?;
        Ok((v.samples()[0] - 1.0, kappa, phi1, v))
    };

    let (mut best, mut g_best) = {
        let e = eval(anchor)?;
        (anchor, e)
    };
    let (mut lo, mut hi);
    if g_best.0.abs() < 1e-13 {
        lo = anchor;
        hi = anchor;
    } else if g_best.0 < 0.0 {
        // solution lies above the anchor, toward λ₀⁺
        lo = anchor;
        let mut t = 0.5;
        loop {
            let cand = upper - (upper - anchor) * (1.0 - t);
            let g = eval(cand)?;
            if g.0 > 0.0 {
                hi = cand;
                break;
            }
            lo = cand;
            t *= 0.5;
            if t < 1e-12 {
                return Err(Error::Bracketing {
                    index: 0,
                    detail: "coupling selector did not change sign below lambda0+".into(),
                });
            }
        }
    } else {
        hi = anchor;
        let mut step = 1.0;
        let mut cand = anchor - step;
        loop {
            let g = eval(cand)?;
            if g.0 < 0.0 {
                lo = cand;
                break;
            }
            hi = cand;
            step *= 2.0;
            cand -= step;
            if step > 1e9 {
                return Err(Error::Bracketing {
                    index: 0,
                    detail: "coupling selector did not change sign marching down".into(),
                });
            }
        }
    }
    let mut iter = 0;
    while hi - lo > 1e-13 * lo.abs().max(1.0) && iter < 100 {
        let mid = 0.5 * (lo + hi);
        let g = eval(mid)?;
        if g.0 > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if g.0.abs() < g_best.0.abs() {
            best = mid;
            g_best = g;
        }
        iter += 1;
    }

    let lambda0 = best;
    let (_, _, _, v) = g_best;
    let q = v.map(f64::ln).derivative().scale(0.5);
    let h = v.map(|s| h0 / s);
    let model = q
        .derivative()
        .add(&q.mul(&q))
        .add(&h.mul(&h))
        .map(|s| s + lambda0);
    let residual = p.sub(&model).norm_l2();
    Ok(InversionResult { q, h, lambda0, residual })
}

/// Degenerate A = 0 inversion: the periodic positive ground state ψ at λ₀⁺
/// gives q = ψ′/ψ with q′ + q² − ‖q‖² = p and λ₀⁺ = −‖q‖².
pub fn invert_riccati_a0(p: &PeriodicFn) -> Result<PeriodicFn> {
    if p.mean().abs() > MEAN_TOL {
        return Err(Error::NonZeroMean(p.mean(), MEAN_TOL));
    }
    let prob = SlProblem::schroedinger(p);
    let upper = prob.eigenvalues(BoundaryCondition::Periodic, 1)?[0];
    let m = prob.monodromy(upper)?;
    let r1 = (m.theta1 - 1.0, m.phi1);
    let r2 = (m.theta1p, m.phi1p - 1.0);
    let (a, b) = if r1.0.hypot(r1.1) >= r2.0.hypot(r2.1) { r1 } else { r2 };
    let (f, _) = prob.solution_on_grid(upper, b, -a, p.grid_size())?;
    let flip = if f.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    let min = f.iter().map(|&y| flip * y).fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(Error::NonPositiveGroundState(min));
    }
    let log_psi = PeriodicFn::analyze(f.iter().map(|&y| (flip * y).ln()).collect())?;
    Ok(log_psi.derivative())
}

/// Which eigenvalue of −d²/dx² + p a gradient is requested for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenSelector {
    /// λ₀⁺, the periodic ground eigenvalue (always simple).
    PeriodicGround,
    /// μ_n, 1-based (always simple).
    Dirichlet(usize),
    /// λ_n⁻, 1-based; requires the n-th gap to be open.
    EdgeLower(usize),
    /// λ_n⁺, 1-based; requires the n-th gap to be open.
    EdgeUpper(usize),
}

fn dirichlet_gradient(prob: &SlProblem, mu: f64, grid: usize) -> Result<PeriodicFn> {
    let (f, _) = prob.solution_on_grid(mu, 0.0, 1.0, grid)?;
    let y2 = PeriodicFn::analyze(f.iter().map(|&y| y * y).collect())?;
    let norm2 = y2.integral();
    Ok(y2.scale(1.0 / norm2))
}

fn periodic_gradient(
    prob: &SlProblem,
    lambda: f64,
    sigma: f64,
    index: usize,
    grid: usize,
) -> Result<PeriodicFn> {
    let m = prob.monodromy(lambda)?;
    let r1 = (m.theta1 - sigma, m.phi1);
    let r2 = (m.theta1p, m.phi1p - sigma);
    let (n1, n2) = (r1.0.hypot(r1.1), r2.0.hypot(r2.1));
    if n1.max(n2) < 1e-7 {
        // T ≈ σI: doubly degenerate eigenvalue, no well-defined gradient
        return Err(Error::DegenerateEigenvalue(index));
    }
    let (a, b) = if n1 >= n2 { r1 } else { r2 };
    let (f, _) = prob.solution_on_grid(lambda, b, -a, grid)?;
    let y2 = PeriodicFn::analyze(f.iter().map(|&y| y * y).collect())?;
    let norm2 = y2.integral();
    Ok(y2.scale(1.0 / norm2))
}

/// L² gradient density of the selected eigenvalue:
/// λ(p + tf) = λ(p) + t (g, f) + O(t²), g the normalized eigenfunction
/// squared.
pub fn eigen_gradient(p: &PeriodicFn, which: EigenSelector) -> Result<PeriodicFn> {
    let prob = SlProblem::schroedinger(p);
    let grid = p.grid_size();
    match which {
        EigenSelector::PeriodicGround => {
            let lam = prob.eigenvalues(BoundaryCondition::Periodic, 1)?[0];
            periodic_gradient(&prob, lam, 1.0, 0, grid)
        }
        EigenSelector::Dirichlet(n) => {
            if n == 0 {
                return Err(Error::InvalidParameter("Dirichlet index is 1-based".into()));
            }
            let mu = prob.dirichlet_eigenvalues(n)?[n - 1];
            dirichlet_gradient(&prob, mu, grid)
        }
        EigenSelector::EdgeLower(n) | EigenSelector::EdgeUpper(n) => {
            if n == 0 {
                return Err(Error::InvalidParameter("band-edge index is 1-based".into()));
            }
            let (_, edges) = prob.band_edges(n)?;
            let (lm, lp) = edges[n - 1];
            if lp - lm < CLOSED_GAP * lp.abs().max(1.0) {
                return Err(Error::DegenerateEigenvalue(n));
            }
            let sigma = if n % 2 == 0 { 1.0 } else { -1.0 };
            let lam = if matches!(which, EigenSelector::EdgeLower(_)) { lm } else { lp };
            periodic_gradient(&prob, lam, sigma, n, grid)
        }
    }
}

fn flatten(psi: &GapVector) -> DVector<f64> {
    DVector::from_iterator(
        2 * psi.n(),
        psi.entries.iter().flat_map(|&(a, b)| [a, b]),
    )
}

/// Fourier basis function for coefficient index `k` (cos for even, sin for
/// odd, mode ⌊k/2⌋ + 1).
fn basis_fn(k: usize, grid: usize) -> PeriodicFn {
    let n = (k / 2 + 1) as f64;
    PeriodicFn::from_fn(grid, |x| {
        if k % 2 == 0 { (TAU * n * x).cos() } else { (TAU * n * x).sin() }
    })
    .expect("harmonic on validated grid")
}

/// Jacobian of the flattened gap map at q, w.r.t. the 2·N_modes Fourier
/// coefficients. Analytic via eigenvalue gradients chained with the Fréchet
/// derivative of the forward map where the entries are well-conditioned;
/// finite differences (step 1e−6) on closed-gap or tiny-|ψ₂| rows.
fn gap_jacobian(
    q: &PeriodicFn,
    spec: &OperatorSpec,
    n: usize,
    basis: &[PeriodicFn],
    psi_at_q: &GapVector,
) -> Result<DMatrix<f64>> {
    let cols = basis.len();
    let mut jac = DMatrix::<f64>::zeros(2 * n, cols);
    let p_hat = forward_map(q, spec)?.p;
    let prob = SlProblem::schroedinger(&p_hat);
    let data = prob.spectral_data(n)?;
    let psi = psi_refined(&prob, &data)?;
    let grid = q.grid_size();

    let directions: Vec<PeriodicFn> = basis
        .iter()
        .map(|f| frechet_apply(q, f, spec))
        .collect::<Result<_>>()?;

    let mut fd_rows: Vec<usize> = Vec::new();
    for i in 0..n {
        let (lm, lp) = data.band_edges[i];
        let mu = data.dirichlet[i];
        let open = lp - lm >= CLOSED_GAP * lp.abs().max(1.0);
        // ψ₂ derivative through D = (μ−λ⁻)(λ⁺−μ) degenerates with ψ₂ → 0;
        // the threshold matches the conditioning switch of the ψ evaluator
        let psi2 = psi.entries[i].1;
        let psi2_ok = psi2.abs() >= 1e-3 * mu.abs().max(1.0).sqrt();
        if !open {
            fd_rows.push(2 * i);
            fd_rows.push(2 * i + 1);
            continue;
        }
        let g_mu = dirichlet_gradient(&prob, mu, grid)?;
        let sigma = if (i + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let g_lo = periodic_gradient(&prob, lm, sigma, i + 1, grid)?;
        let g_hi = periodic_gradient(&prob, lp, sigma, i + 1, grid)?;
        for (k, dp) in directions.iter().enumerate() {
            let d_lo = g_lo.inner(dp);
            let d_hi = g_hi.inner(dp);
            let d_mu = g_mu.inner(dp);
            jac[(2 * i, k)] = 0.5 * (d_lo + d_hi) - d_mu;
            if psi2_ok {
                let dd = (lp - mu) * (d_mu - d_lo) + (mu - lm) * (d_hi - d_mu);
                jac[(2 * i + 1, k)] = dd / (2.0 * psi2);
            }
        }
        if !psi2_ok {
            fd_rows.push(2 * i + 1);
        }
    }

    if !fd_rows.is_empty() {
        let t = 1e-6;
        let base = flatten(psi_at_q);
        for (k, f) in basis.iter().enumerate() {
            let shifted = psi_of_q(&q.add(&f.scale(t)), spec, n)?;
            let col = (flatten(&shifted) - &base) / t;
            for &r in &fd_rows {
                jac[(r, k)] = col[r];
            }
        }
    }
    Ok(jac)
}

/// Damped Gauss–Newton inversion of the gap map over the span of the first
/// `n_modes` Fourier modes. Convergence is local; intended for desk-scale
/// targets near the band-limited range of ψ.
pub fn invert_gap_map(
    target: &GapVector,
    spec: &OperatorSpec,
    n_modes: usize,
    q0: Option<&PeriodicFn>,
) -> Result<PeriodicFn> {
    if n_modes == 0 || target.n() == 0 {
        return Err(Error::InvalidParameter(
            "invert_gap_map needs n_modes >= 1 and a nonempty target".into(),
        ));
    }
    let n = target.n();
    let grid = q0.map_or(DEFAULT_GRID, PeriodicFn::grid_size);
    let basis: Vec<PeriodicFn> = (0..2 * n_modes).map(|k| basis_fn(k, grid)).collect();
    let t_vec = flatten(target);

    let mut q = match q0 {
        Some(f) => f.force_zero_mean(),
        None => PeriodicFn::zeros(grid),
    };
    let mut psi = psi_of_q(&q, spec, n)?;
    let mut res = flatten(&psi) - &t_vec;
    let mut res_norm = res.norm();

    for iter in 0..50 {
        if res_norm < 1e-6 {
            return Ok(q);
        }
        let jac = gap_jacobian(&q, spec, n, &basis, &psi)?;
        let svd = jac.clone().svd(true, true);
        let s_max = svd.singular_values.max();
        let rank = svd.singular_values.iter().filter(|&&s| s > 1e-10 * s_max).count();
        if rank < 2 * n_modes {
            return Err(Error::RankDeficient { rank, cols: 2 * n_modes });
        }
        let delta = svd
            .solve(&(-&res), 1e-10 * s_max)
            .map_err(|e| Error::Invariant(format!("least-squares solve failed: {e}")))?;

        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..=20 {
            let mut q_try = q.clone();
            for (k, f) in basis.iter().enumerate() {
                q_try = q_try.add(&f.scale(step * delta[k]));
            }
            let psi_try = psi_of_q(&q_try, spec, n)?;
            let res_try = flatten(&psi_try) - &t_vec;
            if res_try.norm() < res_norm {
                q = q_try;
                psi = psi_try;
                res = res_try;
                res_norm = res.norm();
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return Err(Error::NoConvergence { iterations: iter + 1, residual: res_norm });
        }
    }
    if res_norm < 1e-6 {
        Ok(q)
    } else {
        Err(Error::NoConvergence { iterations: 50, residual: res_norm })
    }
}
