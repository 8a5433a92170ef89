//! Numerical toolkit for forward and inverse spectral maps of warped-product
//! tori: Hill's equation spectra, gap-length mappings, the perturbed Riccati
//! map, curvature data, constructive inversion, and the torus geometry
//! pipeline.

pub mod error;
pub mod gapmap;
pub mod geometry;
pub mod hill;
pub mod inverse;
pub mod periodic;
pub mod record;
pub mod riccati;
pub mod sampling;

pub use error::{Error, Result};
pub use geometry::{
    arclength_param, profile_from_embedding, profile_to_radius, ArclengthMap, Profile,
    TorusEmbedding,
};
pub use hill::{BoundaryCondition, Monodromy, SlProblem, SpectralData};
pub use inverse::{
    eigen_gradient, ground_floquet, invert_gap_map, invert_riccati_a0, invert_riccati_m1,
    EigenSelector, FloquetSolution, InversionResult,
};
pub use periodic::{PeriodicFn, SobolevIndex, TrigEval, DEFAULT_GRID};
pub use riccati::{forward_map, frechet_apply, OperatorSpec, RiccatiParams};
