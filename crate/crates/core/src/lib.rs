//! Commuting conjugacy class graphs of the metacyclic 2-generator groups
//! `G(p, m, n) = <x, y | x^{p^m} = y^{p^n} = 1, [x, y]^p = 1, [x, y] central>`,
//! with their spectra and three graph energies.
//!
//! Numeric code is generic over [`Scalar`]; the aliases below fix the two
//! instantiations in use.

pub mod formula;
pub mod graph;
pub mod group;
pub mod report;
pub mod scalar;
pub mod spectral;

use num_rational::BigRational;

pub use scalar::Scalar;

/// Exact spectrum with rational eigenvalues.
pub type ExactSpectrum = spectral::SpectrumMultiset<BigRational>;
/// Exact energy triple.
pub type ExactEnergies = spectral::EnergyTriple<BigRational>;
/// Floating-point spectrum.
pub type FloatSpectrum = spectral::SpectrumMultiset<f64>;
/// Floating-point energy triple.
pub type FloatEnergies = spectral::EnergyTriple<f64>;
