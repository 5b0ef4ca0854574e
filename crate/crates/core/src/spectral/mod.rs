//! Spectra and energies of commuting conjugacy class graphs, both from the
//! clique structure and from exact characteristic polynomials.

mod charpoly;
mod energy;
mod matrix;
mod roots;
mod spectrum;

use thiserror::Error;

pub use charpoly::{char_poly, char_poly_with_cap, taylor_shift, CharPolyCache, Polynomial, DEFAULT_MATRIX_CAP};
pub use energy::{energy, laplacian_energy, mean_degree, signless_energy, EnergyTriple};
pub use matrix::{induced_matrices, matrices_from_graph, IntegerMatrix};
pub use roots::{integer_spectrum, RootExtraction};
pub use spectrum::{adjacency_spectrum, laplacian_spectrum, signless_spectrum, SpectrumKind, SpectrumMultiset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("matrix block of dimension {dim} exceeds the cap of {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("expected a {expected} spectrum, found {found}")]
    WrongKind { expected: SpectrumKind, found: SpectrumKind },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("root bound does not fit in a machine word")]
    RootBoundTooLarge,
    #[error("eigenvalue computation was not requested")]
    NotRequested,
}
