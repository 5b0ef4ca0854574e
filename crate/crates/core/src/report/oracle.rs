//! Brute-force path: enumerate the group, build its commuting conjugacy
//! class graph, and compute spectra both structurally and from exact
//! characteristic polynomials.

use num_bigint::BigUint;
use num_rational::BigRational;
use thiserror::Error;

use crate::graph::{build_ccc, decompose, CccGraph, CliqueDecomposition, GraphError};
use crate::group::{Group, GroupError, GroupParams};
use crate::spectral::{
    adjacency_spectrum, induced_matrices, laplacian_spectrum, signless_spectrum, CharPolyCache,
    EnergyTriple, RootExtraction, SpectralError, SpectrumKind, SpectrumMultiset,
};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Spectra read off characteristic polynomials, one per matrix kind.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectra {
    pub adjacency: SpectrumMultiset<Q>,
    pub laplacian: SpectrumMultiset<Q>,
    pub signless: SpectrumMultiset<Q>,
    /// No characteristic polynomial left a factor without integer roots.
    pub integral: bool,
}

impl EigenSpectra {
    pub fn get(&self, kind: SpectrumKind) -> &SpectrumMultiset<Q> {
        match kind {
            SpectrumKind::Adjacency => &self.adjacency,
            SpectrumKind::Laplacian => &self.laplacian,
            SpectrumKind::Signless => &self.signless,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub graph: CccGraph,
    pub decomposition: CliqueDecomposition,
    pub adjacency: SpectrumMultiset<Q>,
    pub laplacian: SpectrumMultiset<Q>,
    pub signless: SpectrumMultiset<Q>,
    pub energies: EnergyTriple<Q>,
    /// `Err` when a component exceeds the matrix cap or eigen spectra were
    /// not requested.
    pub eigen: Result<EigenSpectra, SpectralError>,
}

impl OracleResult {
    /// Whether the graph is a single complete graph.
    pub fn is_complete(&self) -> bool {
        matches!(self.decomposition.parts(), [part] if part.count == BigUint::from(1u32))
    }
}

/// Integer spectra of `A`, `L` and `Q` from characteristic polynomials,
/// computed one connected component at a time.
pub fn eigen_spectra(graph: &CccGraph, cache: &CharPolyCache) -> Result<EigenSpectra, SpectralError> {
    let components = graph.components();
    // Refuse before allocating any matrix.
    if let Some(big) = components.iter().find(|c| c.len() > cache.cap()) {
        return Err(SpectralError::DimensionCapExceeded { dim: big.len(), cap: cache.cap() });
    }
    let mut out = [
        SpectrumMultiset::empty(SpectrumKind::Adjacency),
        SpectrumMultiset::empty(SpectrumKind::Laplacian),
        SpectrumMultiset::empty(SpectrumKind::Signless),
    ];
    let mut integral = true;
    for comp in &components {
        let (a, l, q) = induced_matrices(graph, comp);
        for (slot, matrix) in out.iter_mut().zip([a, l, q]) {
            let found = match cache.integer_spectrum::<Q>(&matrix, slot.kind())? {
                RootExtraction::Integral(s) => s,
                RootExtraction::NonIntegral { found, .. } => {
                    integral = false;
                    found
                }
            };
            *slot = slot.merge(&found);
        }
    }
    let [adjacency, laplacian, signless] = out;
    Ok(EigenSpectra { adjacency, laplacian, signless, integral })
}

/// Runs the full brute-force pipeline on a group of order at most
/// `order_cap`. Eigen spectra are computed only when `cache` is given.
pub fn run_oracle(
    params: &GroupParams,
    order_cap: u64,
    cache: Option<&CharPolyCache>,
) -> Result<OracleResult, OracleError> {
    let group = Group::with_cap(params, order_cap)?;
    let classes = group.conjugacy_classes();
    let graph = build_ccc(&group, &classes);
    let decomposition = decompose(&graph)?;
    let energies = EnergyTriple::of_decomposition(&decomposition)?;
    let eigen = match cache {
        Some(cache) => eigen_spectra(&graph, cache),
        None => Err(SpectralError::NotRequested),
    };
    Ok(OracleResult {
        adjacency: adjacency_spectrum(&decomposition),
        laplacian: laplacian_spectrum(&decomposition),
        signless: signless_spectrum(&decomposition),
        graph,
        decomposition,
        energies,
        eigen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_params;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn small_instances() {
        let cache = CharPolyCache::default();
        let r = run_oracle(&make_params(2, 1, 2, false).unwrap(), 1 << 20, Some(&cache)).unwrap();
        assert_eq!(r.decomposition.to_string(), "3xK2");
        assert_eq!((r.energies.e.clone(), r.energies.le.clone(), r.energies.le_plus.clone()), (q(6), q(6), q(6)));
        let eig = r.eigen.as_ref().unwrap();
        assert!(eig.integral);
        assert_eq!(eig.adjacency, r.adjacency);
        assert_eq!(eig.laplacian, r.laplacian);
        assert_eq!(eig.signless, r.signless);
        assert!(!r.is_complete());

        let r = run_oracle(&make_params(2, 2, 2, false).unwrap(), 1 << 20, None).unwrap();
        assert_eq!(r.decomposition.to_string(), "3xK4");
        assert_eq!(r.energies.e, q(18));
        assert_eq!(r.eigen, Err(SpectralError::NotRequested));
    }

    #[test]
    fn caps() {
        let params = make_params(2, 3, 3, false).unwrap();
        assert!(matches!(run_oracle(&params, 64, None), Err(OracleError::Group(GroupError::OrderCapExceeded { .. }))));
        let r = run_oracle(&params, 1 << 20, Some(&CharPolyCache::new(8))).unwrap();
        assert_eq!(r.decomposition.to_string(), "3xK16");
        assert_eq!(r.eigen, Err(SpectralError::DimensionCapExceeded { dim: 16, cap: 8 }));
    }

    #[test]
    fn non_clique_graph_reports_residual() {
        let path = CccGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let eig = eigen_spectra(&path, &CharPolyCache::default()).unwrap();
        assert!(!eig.integral);
        assert_eq!(eig.adjacency.total_multiplicity(), BigUint::from(1u32));
        // L and Q of the path have integer spectra {3, 1, 0} and {3, 1, 0}.
        assert_eq!(eig.laplacian.total_multiplicity(), BigUint::from(3u32));
    }
}
