use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::spectrum::{SpectrumKind, SpectrumMultiset};
use super::SpectralError;
use crate::graph::CliqueDecomposition;
use crate::scalar::Scalar;

/// Energy, Laplacian energy and signless Laplacian energy of one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyTriple<S> {
    pub e: S,
    pub le: S,
    pub le_plus: S,
    pub num_vertices: BigUint,
    pub num_edges: BigUint,
    /// `2 |e| / |V|`.
    pub mean_degree: S,
}

fn weighted_abs_sum<S: Scalar>(spec: &SpectrumMultiset<S>, shift: &S) -> S {
    spec.pairs().iter().fold(S::zero(), |acc, (v, m)| {
        acc + (v.clone() - shift.clone()).abs() * S::from_bigint(&BigInt::from(m.clone()))
    })
}

fn check_kind<S: Scalar>(spec: &SpectrumMultiset<S>, want: SpectrumKind) -> Result<(), SpectralError> {
    if spec.kind() != want {
        return Err(SpectralError::WrongKind { expected: want, found: spec.kind() });
    }
    Ok(())
}

pub fn mean_degree<S: Scalar>(v: &BigUint, e: &BigUint) -> Result<S, SpectralError> {
    if v.is_zero() {
        return Err(SpectralError::EmptyGraph);
    }
    Ok(S::from_bigint(&BigInt::from(2u32 * e)) / S::from_bigint(&BigInt::from(v.clone())))
}

/// `sum |lambda|` over the adjacency spectrum.
pub fn energy<S: Scalar>(spec: &SpectrumMultiset<S>) -> Result<S, SpectralError> {
    check_kind(spec, SpectrumKind::Adjacency)?;
    Ok(weighted_abs_sum(spec, &S::zero()))
}

/// `sum |lambda - 2e/v|` over the Laplacian spectrum.
pub fn laplacian_energy<S: Scalar>(
    spec: &SpectrumMultiset<S>,
    v: &BigUint,
    e: &BigUint,
) -> Result<S, SpectralError> {
    check_kind(spec, SpectrumKind::Laplacian)?;
    Ok(weighted_abs_sum(spec, &mean_degree(v, e)?))
}

/// `sum |lambda - 2e/v|` over the signless Laplacian spectrum.
pub fn signless_energy<S: Scalar>(
    spec: &SpectrumMultiset<S>,
    v: &BigUint,
    e: &BigUint,
) -> Result<S, SpectralError> {
    check_kind(spec, SpectrumKind::Signless)?;
    Ok(weighted_abs_sum(spec, &mean_degree(v, e)?))
}

impl<S: Scalar> EnergyTriple<S> {
    pub fn from_spectra(
        adjacency: &SpectrumMultiset<S>,
        laplacian: &SpectrumMultiset<S>,
        signless: &SpectrumMultiset<S>,
        num_vertices: &BigUint,
        num_edges: &BigUint,
    ) -> Result<Self, SpectralError> {
        Ok(EnergyTriple {
            e: energy(adjacency)?,
            le: laplacian_energy(laplacian, num_vertices, num_edges)?,
            le_plus: signless_energy(signless, num_vertices, num_edges)?,
            num_vertices: num_vertices.clone(),
            num_edges: num_edges.clone(),
            mean_degree: mean_degree(num_vertices, num_edges)?,
        })
    }

    /// Energies of a clique union via its structural spectra.
    pub fn of_decomposition(decomp: &CliqueDecomposition) -> Result<Self, SpectralError> {
        Self::from_spectra(
            &super::adjacency_spectrum(decomp),
            &super::laplacian_spectrum(decomp),
            &super::signless_spectrum(decomp),
            decomp.total_vertices(),
            decomp.total_edges(),
        )
    }

    /// `2 (|V| - 1)`, the common value of all three energies of `K_|V|`.
    pub fn complete_graph_baseline(&self) -> S {
        let v = BigInt::from(self.num_vertices.clone());
        S::from_bigint(&(2 * (v - 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{adjacency_spectrum, laplacian_spectrum, signless_spectrum};
    use num_rational::BigRational;
    use num_traits::Signed;

    type Q = BigRational;

    fn dec(parts: &[(u32, u32)]) -> CliqueDecomposition {
        CliqueDecomposition::from_parts(parts.iter().map(|&(c, s)| (c, s)))
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn energy_examples() {
        // The closed-form graph of G(2,2,2).
        assert_eq!(energy(&adjacency_spectrum::<Q>(&dec(&[(2, 2), (2, 4)]))).unwrap(), q(16, 1));
        assert_eq!(energy(&adjacency_spectrum::<Q>(&dec(&[(3, 1)]))).unwrap(), q(0, 1));
        // G(3,1,1) is 4xK2.
        assert_eq!(energy(&adjacency_spectrum::<Q>(&dec(&[(4, 2)]))).unwrap(), q(8, 1));
        // The actual graph of G(2,2,2) is 3xK4.
        assert_eq!(energy(&adjacency_spectrum::<Q>(&dec(&[(3, 4)]))).unwrap(), q(18, 1));
    }

    #[test]
    fn laplacian_energy_examples() {
        let d = dec(&[(2, 1), (2, 2)]);
        let le = laplacian_energy(&laplacian_spectrum::<Q>(&d), d.total_vertices(), d.total_edges()).unwrap();
        assert_eq!(le, q(16, 3));

        let d = dec(&[(2, 2), (2, 4)]);
        assert_eq!((d.total_vertices().clone(), d.total_edges().clone()), (12u32.into(), 14u32.into()));
        let le = laplacian_energy(&laplacian_spectrum::<Q>(&d), d.total_vertices(), d.total_edges()).unwrap();
        assert_eq!(le, q(20, 1));
        let lq = signless_energy(&signless_spectrum::<Q>(&d), d.total_vertices(), d.total_edges()).unwrap();
        assert_eq!(lq, q(44, 3));

        let d = dec(&[(3, 2)]);
        let lq = signless_energy(&signless_spectrum::<Q>(&d), d.total_vertices(), d.total_edges()).unwrap();
        assert_eq!(lq, q(6, 1));
    }

    #[test]
    fn complete_graph_energies() {
        for n in 1..=50u32 {
            let t = EnergyTriple::<Q>::of_decomposition(&dec(&[(1, n)])).unwrap();
            let want = q(2 * (n as i64 - 1), 1);
            assert_eq!(t.e, want);
            assert_eq!(t.le, want);
            assert_eq!(t.le_plus, want);
            assert_eq!(t.complete_graph_baseline(), want);
        }
        let k12 = EnergyTriple::<Q>::of_decomposition(&dec(&[(1, 12)])).unwrap();
        assert_eq!(k12.le, q(22, 1));
    }

    #[test]
    fn errors() {
        let d = dec(&[(1, 3)]);
        let a = adjacency_spectrum::<Q>(&d);
        let l = laplacian_spectrum::<Q>(&d);
        assert!(matches!(energy(&l), Err(SpectralError::WrongKind { .. })));
        assert!(matches!(
            laplacian_energy(&a, d.total_vertices(), d.total_edges()),
            Err(SpectralError::WrongKind { .. })
        ));
        assert!(matches!(
            signless_energy(&l, d.total_vertices(), d.total_edges()),
            Err(SpectralError::WrongKind { .. })
        ));
        let empty = SpectrumMultiset::<Q>::empty(SpectrumKind::Laplacian);
        assert_eq!(
            laplacian_energy(&empty, &BigUint::zero(), &BigUint::zero()),
            Err(SpectralError::EmptyGraph)
        );
    }

    #[test]
    fn mean_degree_consistency() {
        let t = EnergyTriple::<Q>::of_decomposition(&dec(&[(2, 2), (2, 4)])).unwrap();
        assert_eq!(
            t.mean_degree.clone() * Q::from_integer(t.num_vertices.clone().into()),
            Q::from_integer((2u32 * t.num_edges.clone()).into())
        );
        assert!(!t.e.is_negative() && !t.le.is_negative() && !t.le_plus.is_negative());
    }
}
