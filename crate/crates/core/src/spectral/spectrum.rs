use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::CliqueDecomposition;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Adjacency,
    Laplacian,
    Signless,
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumKind::Adjacency => "adjacency",
            SpectrumKind::Laplacian => "laplacian",
            SpectrumKind::Signless => "signless",
        })
    }
}

/// Eigenvalues with multiplicities: merged, distinct, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMultiset<S> {
    kind: SpectrumKind,
    pairs: Vec<(S, BigUint)>,
}

impl<S: Scalar> SpectrumMultiset<S> {
    /// Merges equal eigenvalues and drops zero multiplicities.
    pub fn from_pairs<I>(kind: SpectrumKind, pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, BigUint)>,
    {
        let mut merged: Vec<(S, BigUint)> = Vec::new();
        for (value, mult) in pairs {
            if mult.is_zero() {
                continue;
            }
            match merged.iter_mut().find(|(v, _)| *v == value) {
                Some((_, m)) => *m += mult,
                None => merged.push((value, mult)),
            }
        }
        merged.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));
        SpectrumMultiset { kind, pairs: merged }
    }

    pub fn empty(kind: SpectrumKind) -> Self {
        SpectrumMultiset { kind, pairs: Vec::new() }
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn pairs(&self) -> &[(S, BigUint)] {
        &self.pairs
    }

    /// Sum of multiplicities, i.e. the matrix dimension.
    pub fn total_multiplicity(&self) -> BigUint {
        self.pairs.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity_of(&self, value: &S) -> BigUint {
        self.pairs
            .iter()
            .find(|(v, _)| v == value)
            .map(|(_, m)| m.clone())
            .unwrap_or_default()
    }

    /// `sum mult * lambda^k`.
    pub fn power_sum(&self, k: u32) -> S {
        self.pairs.iter().fold(S::zero(), |acc, (v, m)| {
            acc + num_traits::pow(v.clone(), k as usize) * S::from_bigint(&BigInt::from(m.clone()))
        })
    }

    pub fn is_integral(&self) -> bool {
        self.pairs.iter().all(|(v, _)| v.is_integral())
    }

    /// Union of two multisets of the same kind.
    pub fn merge(&self, other: &Self) -> Self {
        assert_eq!(self.kind, other.kind, "merging spectra of different kinds");
        Self::from_pairs(self.kind, self.pairs.iter().chain(other.pairs.iter()).cloned())
    }

    /// The multiset repeated `times` times (spectrum of `times` disjoint copies).
    pub fn scaled(&self, times: &BigUint) -> Self {
        Self::from_pairs(self.kind, self.pairs.iter().map(|(v, m)| (v.clone(), m * times)))
    }
}

impl<S: fmt::Display> fmt::Display for SpectrumMultiset<S> {
    /// `{3^2, 1^2, -1^8}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}^{m}")?;
        }
        write!(f, "}}")
    }
}

fn structural<S: Scalar>(
    decomp: &CliqueDecomposition,
    kind: SpectrumKind,
    per_part: impl Fn(&BigInt) -> (BigInt, BigInt),
) -> SpectrumMultiset<S> {
    let mut pairs = Vec::new();
    for part in decomp.parts() {
        let size = BigInt::from(part.size.clone());
        let (top, rest) = per_part(&size);
        pairs.push((S::from_bigint(&top), part.count.clone()));
        pairs.push((S::from_bigint(&rest), &part.count * (&part.size - BigUint::one())));
    }
    SpectrumMultiset::from_pairs(kind, pairs)
}

/// `K_s` has adjacency eigenvalues `s - 1` (once) and `-1` (`s - 1` times).
pub fn adjacency_spectrum<S: Scalar>(decomp: &CliqueDecomposition) -> SpectrumMultiset<S> {
    structural(decomp, SpectrumKind::Adjacency, |s| (s - 1, BigInt::from(-1)))
}

/// `K_s` has Laplacian eigenvalues `0` (once) and `s` (`s - 1` times).
pub fn laplacian_spectrum<S: Scalar>(decomp: &CliqueDecomposition) -> SpectrumMultiset<S> {
    structural(decomp, SpectrumKind::Laplacian, |s| (BigInt::zero(), s.clone()))
}

/// `K_s` has signless Laplacian eigenvalues `2s - 2` (once) and `s - 2`
/// (`s - 1` times).
pub fn signless_spectrum<S: Scalar>(decomp: &CliqueDecomposition) -> SpectrumMultiset<S> {
    structural(decomp, SpectrumKind::Signless, |s| (2 * s - 2, s - 2))
}
