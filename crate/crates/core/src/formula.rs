//! Closed-form spectra, energies, energy orderings and hyperenergeticity
//! classification for the commuting conjugacy class graph of `G(p, m, n)`.
//!
//! The formulas are transcribed term by term, without simplification, so a
//! transcription slip shows up as a mismatch against the brute-force oracle.
//! They are derived from a clique decomposition that is only correct for
//! `n = 1` (see [`crate::graph::predicted_decomposition`]); for `n >= 2` they
//! describe that decomposition, not the actual graph.
//!
//! Everything is evaluated over `BigRational` and converted at the end.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::group::GroupParams;
use crate::scalar::{rational_pow, Scalar};
use crate::spectral::{EnergyTriple, SpectrumKind, SpectrumMultiset};

type Q = BigRational;

fn int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Shorthand for `p^k` with a possibly negative exponent.
struct Powers {
    p: u64,
}

impl Powers {
    fn at(&self, k: i64) -> Q {
        rational_pow(self.p, k)
    }
}

fn setup(params: &GroupParams) -> (Powers, i64, i64, Q) {
    (Powers { p: params.p() }, params.m() as i64, params.n() as i64, int(params.p() as i64))
}

/// Non-fatal notes attached to formula results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaWarning {
    /// `m < n`: the formulas are evaluated as printed although the graph is
    /// that of `G(p, n, m)`.
    SwappedRange,
    /// No case of the classification table lists these parameters.
    ClassificationUncovered,
}

impl fmt::Display for FormulaWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaWarning::SwappedRange => "m<n: closed forms evaluated outside m>=n",
            FormulaWarning::ClassificationUncovered => "classification table does not cover these parameters",
        })
    }
}

/// Warnings that apply to every closed-form result for `params`.
pub fn formula_warnings(params: &GroupParams) -> Vec<FormulaWarning> {
    let mut out = Vec::new();
    if params.is_swapped_range() {
        out.push(FormulaWarning::SwappedRange);
    }
    if thm3_case(params).is_none() {
        out.push(FormulaWarning::ClassificationUncovered);
    }
    out
}

fn multiplicity(q: Q) -> BigUint {
    // Every printed exponent is a nonnegative integer for p >= 2, m, n >= 1.
    assert!(q.is_integer() && !q.is_negative(), "exponent {q} is not a multiplicity");
    q.to_integer().to_biguint().expect("nonnegative")
}

fn spectrum<S: Scalar>(kind: SpectrumKind, pairs: Vec<(Q, Q)>) -> SpectrumMultiset<S> {
    SpectrumMultiset::from_pairs(
        kind,
        pairs.into_iter().map(|(v, e)| (S::from_rational(&v), multiplicity(e))),
    )
}

/// Adjacency, Laplacian and signless Laplacian spectra, exponents as printed.
pub fn thm1_spectra<S: Scalar>(
    params: &GroupParams,
) -> (SpectrumMultiset<S>, SpectrumMultiset<S>, SpectrumMultiset<S>) {
    let (pw, m, n, p) = setup(params);
    let one = Q::one();
    let two = int(2);

    let adjacency = vec![
        (-one.clone(), pw.at(m + n) - pw.at(m + n - 2) - pw.at(n) + pw.at(n - 1) - &two),
        (pw.at(m) - pw.at(m - 1) - &one, pw.at(n - 1) * (&p - &one)),
        (pw.at(m + n - 1) - pw.at(m + n - 2) - &one, two.clone()),
    ];

    let laplacian = vec![
        (Q::zero(), pw.at(n) - pw.at(n - 1) + &two),
        (
            pw.at(m - 1) * (&p - &one),
            pw.at(n - 2) * (&p - &one) * (pw.at(m + 1) - pw.at(m) - &p),
        ),
        (
            pw.at(m + n - 2) * (&p - &one),
            &two * ((-&one + &p) * pw.at(m + n - 2) - &one),
        ),
    ];

    let signless = vec![
        (&two * pw.at(m) - &two * pw.at(m - 1) - &two, pw.at(n - 1) * (&p - &one)),
        (
            pw.at(m) - pw.at(m - 1) - &two,
            pw.at(n - 2) * (&p - &one) * (pw.at(m + 1) - pw.at(m) - &p),
        ),
        (&two * pw.at(m + n - 1) - &two * pw.at(m + n - 2) - &two, two.clone()),
        (
            pw.at(m + n - 1) - pw.at(m + n - 2) - &two,
            &two * (pw.at(m + n - 1) - pw.at(m + n - 2) - &one),
        ),
    ];

    (
        spectrum(SpectrumKind::Adjacency, adjacency),
        spectrum(SpectrumKind::Laplacian, laplacian),
        spectrum(SpectrumKind::Signless, signless),
    )
}

/// Exact closed-form energies of `params`.
pub fn thm1_energies_exact(params: &GroupParams) -> EnergyTriple<Q> {
    let (pw, m, n, p) = setup(params);
    let pi = params.p();
    let one = Q::one();
    let two = int(2);

    let e = &two * (pw.at(m + n) - pw.at(m + n - 2) - pw.at(n) + pw.at(n - 1) - &two);

    let le = if n == 1 || (n == 2 && pi == 2 && m == 1) {
        &two * (pw.at(n + 1) - pw.at(n) + &two * &p)
            * (&two * pw.at(m + n + 1) - &two * pw.at(m + n) + pw.at(m + 3) - &two * pw.at(m + 2) + pw.at(m + 1)
                - pw.at(3)
                - pw.at(2))
            / (pw.at(3) * (&p + &one))
    } else {
        int(4) / (pw.at(4) * (&p + &one))
            * (pw.at(2 * m + 2 * n + 3) - int(3) * pw.at(2 * (m + n + 1)) + int(3) * pw.at(2 * m + 2 * n + 1)
                - pw.at(2 * (m + n))
                - pw.at(2 * m + n + 4)
                + int(3) * pw.at(2 * m + n + 3)
                - int(3) * pw.at(2 * m + n + 2)
                + pw.at(2 * m + n + 1)
                + &two * pw.at(m + n + 3)
                - &two * pw.at(m + n + 2)
                + pw.at(m + 5)
                - &two * pw.at(m + 4)
                + pw.at(m + 3)
                - pw.at(5)
                - pw.at(4))
    };

    let le_plus = if n == 1 {
        &two * (pw.at(m + 1) - pw.at(m - 1) - &p - &one)
    } else if n == 2 && pi == 2 && m <= 2 {
        Q::new(2.into(), 3.into()) * (int(7) * rational_pow(2, m) - int(6))
    } else if n == 2 && pi == 2 {
        Q::new(2.into(), 3.into()) * (rational_pow(4, m) + rational_pow(2, m) - int(6))
    } else {
        int(4) * pw.at(2 * m + n - 4) / (&p + &one) * num_traits::pow(&p - &one, 3) * (pw.at(n) - &p)
    };

    let v = pw.at(m + n - 2) * (&p * &p - &one);
    let edges = pw.at(m + n - 4) * (&p - &one) / &two
        * (&two * pw.at(m + n + 1) - &two * pw.at(m + n) + pw.at(m + 3) - &two * pw.at(m + 2) + pw.at(m + 1)
            - pw.at(3)
            - pw.at(2));
    let num_vertices = multiplicity(v.clone());
    let num_edges = multiplicity(edges.clone());

    EnergyTriple { e, le, le_plus, num_vertices, num_edges, mean_degree: &two * edges / v }
}

/// Closed-form energies converted to `S`.
pub fn thm1_energies<S: Scalar>(params: &GroupParams) -> EnergyTriple<S> {
    convert_triple(&thm1_energies_exact(params))
}

pub fn convert_triple<S: Scalar>(t: &EnergyTriple<Q>) -> EnergyTriple<S> {
    EnergyTriple {
        e: S::from_rational(&t.e),
        le: S::from_rational(&t.le),
        le_plus: S::from_rational(&t.le_plus),
        num_vertices: t.num_vertices.clone(),
        num_edges: t.num_edges.clone(),
        mean_degree: S::from_rational(&t.mean_degree),
    }
}

/// The four orderings of `(E, LE, LE+)` that occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderingCase {
    #[serde(rename = "ALL_EQUAL")]
    AllEqual,
    #[serde(rename = "E_LT_LEP_EQ_LE")]
    ELtLepEqLe,
    #[serde(rename = "LEP_LT_E_LT_LE")]
    LepLtELtLe,
    #[serde(rename = "E_LT_LEP_LT_LE")]
    ELtLepLtLe,
}

impl OrderingCase {
    pub const ALL: [OrderingCase; 4] =
        [OrderingCase::AllEqual, OrderingCase::ELtLepEqLe, OrderingCase::LepLtELtLe, OrderingCase::ELtLepLtLe];

    pub fn as_str(&self) -> &'static str {
        match self {
            OrderingCase::AllEqual => "ALL_EQUAL",
            OrderingCase::ELtLepEqLe => "E_LT_LEP_EQ_LE",
            OrderingCase::LepLtELtLe => "LEP_LT_E_LT_LE",
            OrderingCase::ELtLepLtLe => "E_LT_LEP_LT_LE",
        }
    }
}

impl fmt::Display for OrderingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderingCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OrderingCase::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown ordering case `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyOrdering<S> {
    pub case_id: OrderingCase,
    pub witness: EnergyTriple<S>,
}

/// Ordering case selected from `(p, m, n)` alone.
pub fn thm2_case(params: &GroupParams) -> OrderingCase {
    match (params.p(), params.m(), params.n()) {
        (_, _, 1) => OrderingCase::AllEqual,
        (2, 1, 2) => OrderingCase::ELtLepEqLe,
        (2, 2, 2) => OrderingCase::LepLtELtLe,
        _ => OrderingCase::ELtLepLtLe,
    }
}

pub fn thm2_ordering<S: Scalar>(params: &GroupParams) -> EnergyOrdering<S> {
    EnergyOrdering { case_id: thm2_case(params), witness: thm1_energies(params) }
}

/// The ordering realised by a triple, if it is one of the four cases.
pub fn ordering_from_triple<S: Scalar>(t: &EnergyTriple<S>) -> Option<OrderingCase> {
    let (e, le, lq) = (&t.e, &t.le, &t.le_plus);
    if e == le && lq == le {
        Some(OrderingCase::AllEqual)
    } else if e < lq && lq == le {
        Some(OrderingCase::ELtLepEqLe)
    } else if lq < e && e < le {
        Some(OrderingCase::LepLtELtLe)
    } else if e < lq && lq < le {
        Some(OrderingCase::ELtLepLtLe)
    } else {
        None
    }
}

/// Comparison of each energy with that of the complete graph on the same
/// vertex set. Hyper and border flags of one kind never both hold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperClassification<S> {
    pub hyperenergetic: bool,
    pub borderenergetic: bool,
    pub l_hyperenergetic: bool,
    pub l_borderenergetic: bool,
    pub q_hyperenergetic: bool,
    pub q_borderenergetic: bool,
    /// `2 (|V| - 1)`.
    pub baseline: S,
}

impl<S> HyperClassification<S> {
    /// The six flags in the order hyper, border, l_hyper, l_border,
    /// q_hyper, q_border.
    pub fn flags(&self) -> [bool; 6] {
        [
            self.hyperenergetic,
            self.borderenergetic,
            self.l_hyperenergetic,
            self.l_borderenergetic,
            self.q_hyperenergetic,
            self.q_borderenergetic,
        ]
    }

    pub fn same_flags(&self, other: &Self) -> bool {
        self.flags() == other.flags()
    }

    /// Clears the border flags; borderenergetic graphs must not be complete.
    pub fn for_complete_graph(mut self) -> Self {
        self.borderenergetic = false;
        self.l_borderenergetic = false;
        self.q_borderenergetic = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Thm3Outcome<S> {
    Covered(HyperClassification<S>),
    /// No case of the table lists these parameters; nothing is claimed.
    ExplicitlyUncovered { baseline: S },
}

impl<S> Thm3Outcome<S> {
    pub fn covered(&self) -> Option<&HyperClassification<S>> {
        match self {
            Thm3Outcome::Covered(c) => Some(c),
            Thm3Outcome::ExplicitlyUncovered { .. } => None,
        }
    }
}

/// `(l_hyper, q_hyper)` per case; the other four flags are always false.
fn thm3_case(params: &GroupParams) -> Option<(bool, bool)> {
    let (p, m, n) = (params.p(), params.m(), params.n());
    match (p, m, n) {
        (_, _, 1) | (2, 1 | 2, 2) => Some((false, false)),
        (2, 3, 2) | (2, 1, 3) => Some((true, false)),
        (2, _, 2) | (_, _, 2) | (2, _, 3) => Some((true, true)),
        (_, _, n) if n >= 4 => Some((true, true)),
        _ => None,
    }
}

fn baseline_of(num_vertices: &BigUint) -> Q {
    Q::from_integer(2 * (BigInt::from(num_vertices.clone()) - 1))
}

pub fn thm3_classification<S: Scalar>(params: &GroupParams) -> Thm3Outcome<S> {
    let baseline = S::from_rational(&baseline_of(&thm1_energies_exact(params).num_vertices));
    match thm3_case(params) {
        Some((l_hyper, q_hyper)) => Thm3Outcome::Covered(HyperClassification {
            hyperenergetic: false,
            borderenergetic: false,
            l_hyperenergetic: l_hyper,
            l_borderenergetic: false,
            q_hyperenergetic: q_hyper,
            q_borderenergetic: false,
            baseline,
        }),
        None => Thm3Outcome::ExplicitlyUncovered { baseline },
    }
}

/// Flags by direct comparison against `2 (|V| - 1)`: greater means hyper,
/// equal means border. Whether the graph is itself complete (which rules
/// out border) is not visible from the triple; callers holding a complete
/// graph apply [`HyperClassification::for_complete_graph`].
pub fn classify_from_definitions<S: Scalar>(t: &EnergyTriple<S>) -> HyperClassification<S> {
    let baseline = S::from_rational(&baseline_of(&t.num_vertices));
    HyperClassification {
        hyperenergetic: t.e > baseline,
        borderenergetic: t.e == baseline,
        l_hyperenergetic: t.le > baseline,
        l_borderenergetic: t.le == baseline,
        q_hyperenergetic: t.le_plus > baseline,
        q_borderenergetic: t.le_plus == baseline,
        baseline,
    }
}
