//! Strategy registry for eigenvalue backends: interchangeable algorithms
//! behind a common trait, selected by name from config or the CLI.

use crate::error::{Error, Result};
use crate::hill::{galerkin, BoundaryCondition, SlProblem};
use crate::periodic::PeriodicFn;

/// An algorithm that produces the first eigenvalues of −d²/dx² + p under a
/// given boundary condition, sorted ascending with multiplicity.
pub trait SpectralBackend: Send + Sync {
    fn name(&self) -> &'static str;
    fn eigenvalues(&self, p: &PeriodicFn, bc: BoundaryCondition, count: usize)
        -> Result<Vec<f64>>;
}

/// Shooting backend: monodromy integration plus Prüfer-phase bracketing.
pub struct ShootingBackend;

impl SpectralBackend for ShootingBackend {
    fn name(&self) -> &'static str {
        "shooting"
    }

    fn eigenvalues(
        &self,
        p: &PeriodicFn,
        bc: BoundaryCondition,
        count: usize,
    ) -> Result<Vec<f64>> {
        SlProblem::schroedinger(p).eigenvalues(bc, count)
    }
}

/// Galerkin backend: symmetric matrix discretization in a global basis.
pub struct GalerkinBackend;

impl SpectralBackend for GalerkinBackend {
    fn name(&self) -> &'static str {
        "galerkin"
    }

    fn eigenvalues(
        &self,
        p: &PeriodicFn,
        bc: BoundaryCondition,
        count: usize,
    ) -> Result<Vec<f64>> {
        galerkin::galerkin_spectrum(p, count, bc)
    }
}

static BACKENDS: [&dyn SpectralBackend; 2] = [&ShootingBackend, &GalerkinBackend];

/// Looks a backend up by its registered name.
pub fn backend_by_name(name: &str) -> Result<&'static dyn SpectralBackend> {
    BACKENDS
        .iter()
        .copied()
        .find(|b| b.name() == name)
        .ok_or_else(|| Error::UnknownBackend(name.to_string()))
}

pub fn backend_names() -> Vec<&'static str> {
    BACKENDS.iter().map(|b| b.name()).collect()
}
