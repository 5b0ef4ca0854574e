use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;

use super::oracle::{run_oracle, OracleError, OracleResult};
use crate::formula::{
    classify_from_definitions, formula_warnings, ordering_from_triple, thm1_energies_exact, thm1_spectra,
    thm2_case, thm3_classification, OrderingCase, Thm3Outcome,
};
use crate::graph::{predicted_decomposition, CliqueDecomposition};
use crate::group::{GroupError, GroupParams};
use crate::scalar::fraction_string;
use crate::spectral::{CharPolyCache, EnergyTriple, SpectralError};

type Q = BigRational;

/// One serialized record. Parameters and energies come from the closed
/// forms; `super_integral` and `oracle_agrees` from the brute-force path.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub p: u64,
    pub m: u32,
    pub n: u32,
    pub order: BigUint,
    pub num_vertices: BigUint,
    pub num_edges: BigUint,
    pub decomposition: CliqueDecomposition,
    pub e: Q,
    pub le: Q,
    pub le_plus: Q,
    pub ordering_case: OrderingCase,
    /// hyper, border, l_hyper, l_border, q_hyper, q_border; `None` when the
    /// classification table does not cover the parameters.
    pub classification: Option<[bool; 6]>,
    pub super_integral: Option<bool>,
    pub oracle_agrees: Option<bool>,
    pub warnings: Vec<String>,
}

impl ReportRow {
    pub fn key(&self) -> (u64, u32, u32) {
        (self.p, self.m, self.n)
    }
}

/// Per-check comparison of closed forms with the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agreement {
    pub decomposition: bool,
    pub adjacency: bool,
    pub laplacian: bool,
    pub signless: bool,
    pub energies: bool,
    pub ordering: bool,
    /// `None` when the classification table is silent.
    pub classification: Option<bool>,
    /// No border flag on the oracle graph.
    pub no_border: bool,
    /// `E <= LE` and `LE+ <= LE` on the oracle graph.
    pub energy_bounds: bool,
    /// Characteristic-polynomial spectra are integral and equal the
    /// structural ones; `None` when they were not computed.
    pub eigen: Option<bool>,
}

impl Agreement {
    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            (self.decomposition, "decomposition"),
            (self.adjacency, "adjacency_spectrum"),
            (self.laplacian, "laplacian_spectrum"),
            (self.signless, "signless_spectrum"),
            (self.energies, "energies"),
            (self.ordering, "ordering"),
            (self.classification.unwrap_or(true), "classification"),
            (self.no_border, "border_flags"),
            (self.energy_bounds, "energy_bounds"),
            (self.eigen.unwrap_or(true), "char_poly_spectra"),
        ];
        checks.iter().filter(|(ok, _)| !ok).map(|&(_, name)| name).collect()
    }

    pub fn all(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Oracle outcome kept alongside a row for summaries and exit codes.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)] // one per row, never stored in bulk
pub enum OracleOutcome {
    Disabled,
    /// Order or matrix cap prevented a complete run.
    Skipped(String),
    Failed(String),
    Ran {
        decomposition: CliqueDecomposition,
        energies: EnergyTriple<Q>,
        agreement: Agreement,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub row: ReportRow,
    pub oracle: OracleOutcome,
    /// A cap kept the oracle or the eigenvalue check from running.
    pub incomplete: bool,
}

impl Instance {
    /// A mathematical disagreement that counts against a verification run.
    pub fn fails(&self) -> bool {
        self.row.m >= self.row.n && self.row.oracle_agrees == Some(false)
    }

    /// One line per triple, for grid runs.
    pub fn summary_line(&self) -> String {
        let r = &self.row;
        let status = match &self.oracle {
            OracleOutcome::Disabled => "oracle off".to_string(),
            OracleOutcome::Skipped(why) | OracleOutcome::Failed(why) => why.clone(),
            OracleOutcome::Ran { decomposition, agreement, .. } => {
                let failures = agreement.failures();
                if failures.is_empty() {
                    "agrees".to_string()
                } else {
                    format!("DISAGREES on {} (oracle {})", failures.join(", "), decomposition)
                }
            }
        };
        let note = if r.m < r.n { "  [m<n, annotated]" } else { "" };
        format!(
            "G({}, {}, {})  {}  E {}  LE {}  LE+ {}  {}  {}{}",
            r.p,
            r.m,
            r.n,
            r.decomposition,
            fraction_string(&r.e),
            fraction_string(&r.le),
            fraction_string(&r.le_plus),
            r.ordering_case,
            status,
            note
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    pub order_cap: u64,
    pub oracle: bool,
}

fn compare(params: &GroupParams, oracle: &OracleResult) -> Agreement {
    let predicted = predicted_decomposition(params);
    let (a, l, s) = thm1_spectra::<Q>(params);
    let formula = thm1_energies_exact(params);
    let t = &oracle.energies;

    let mut defined = classify_from_definitions(t);
    if oracle.is_complete() {
        defined = defined.for_complete_graph();
    }
    let classification = match thm3_classification::<Q>(params) {
        Thm3Outcome::Covered(c) => Some(c.same_flags(&defined)),
        Thm3Outcome::ExplicitlyUncovered { .. } => None,
    };
    let eigen = oracle.eigen.as_ref().ok().map(|e| {
        e.integral && e.adjacency == oracle.adjacency && e.laplacian == oracle.laplacian && e.signless == oracle.signless
    });
    Agreement {
        decomposition: predicted == oracle.decomposition,
        adjacency: a == oracle.adjacency,
        laplacian: l == oracle.laplacian,
        signless: s == oracle.signless,
        energies: &formula == t,
        ordering: ordering_from_triple(t) == Some(thm2_case(params)),
        classification,
        no_border: !(defined.borderenergetic || defined.l_borderenergetic || defined.q_borderenergetic),
        energy_bounds: t.e <= t.le && t.le_plus <= t.le,
        eigen,
    }
}

/// Evaluates the closed forms and, if enabled and within the caps, the
/// oracle for one parameter triple.
pub fn evaluate(params: &GroupParams, opts: EvalOptions, cache: &CharPolyCache) -> Instance {
    let formula = thm1_energies_exact(params);
    let thm3 = thm3_classification::<Q>(params);
    let mut warnings: Vec<String> = Vec::new();
    if params.canonicalized() {
        warnings.push(format!("canonicalized from ({}, {}, {})", params.p(), params.n(), params.m()));
    }
    warnings.extend(formula_warnings(params).iter().map(|w| w.to_string()));

    let mut super_integral = None;
    let mut oracle_agrees = None;
    let mut incomplete = false;
    let oracle = if !opts.oracle {
        OracleOutcome::Disabled
    } else {
        match run_oracle(params, opts.order_cap, Some(cache)) {
            Ok(result) => {
                let agreement = compare(params, &result);
                match &result.eigen {
                    Ok(e) => {
                        super_integral = Some(e.integral);
                        if !e.integral {
                            warnings.push("characteristic polynomial with non-integer roots".into());
                        }
                    }
                    Err(err) => {
                        incomplete = true;
                        warnings.push(format!("eigenvalue check skipped: {err}"));
                    }
                }
                oracle_agrees = Some(agreement.all());
                if !agreement.all() {
                    warnings.push(format!("oracle mismatch: {}", agreement.failures().join(",")));
                }
                OracleOutcome::Ran {
                    decomposition: result.decomposition,
                    energies: result.energies,
                    agreement,
                }
            }
            Err(OracleError::Group(e @ GroupError::OrderCapExceeded { .. })) => {
                incomplete = true;
                warnings.push(format!("oracle skipped: {e}"));
                OracleOutcome::Skipped(e.to_string())
            }
            Err(e @ OracleError::Spectral(SpectralError::DimensionCapExceeded { .. })) => {
                incomplete = true;
                warnings.push(format!("oracle skipped: {e}"));
                OracleOutcome::Skipped(e.to_string())
            }
            Err(e) => {
                oracle_agrees = Some(false);
                warnings.push(format!("oracle failed: {e}"));
                OracleOutcome::Failed(e.to_string())
            }
        }
    };

    let row = ReportRow {
        p: params.p(),
        m: params.m(),
        n: params.n(),
        order: params.order().clone(),
        num_vertices: formula.num_vertices.clone(),
        num_edges: formula.num_edges.clone(),
        decomposition: predicted_decomposition(params),
        e: formula.e,
        le: formula.le,
        le_plus: formula.le_plus,
        ordering_case: thm2_case(params),
        classification: thm3.covered().map(|c| c.flags()),
        super_integral,
        oracle_agrees,
        warnings,
    };
    Instance { row, oracle, incomplete }
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

impl fmt::Display for Instance {
    /// Multi-line human-readable summary.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.row;
        writeln!(f, "G({}, {}, {})  order {}", r.p, r.m, r.n, r.order)?;
        writeln!(f, "  closed form   |V| = {}  |e| = {}  {}", r.num_vertices, r.num_edges, r.decomposition)?;
        writeln!(
            f,
            "                E = {}  LE = {}  LE+ = {}  ordering {}",
            fraction_string(&r.e),
            fraction_string(&r.le),
            fraction_string(&r.le_plus),
            r.ordering_case
        )?;
        match &r.classification {
            Some(c) => writeln!(
                f,
                "                hyper {}  border {}  L-hyper {}  L-border {}  Q-hyper {}  Q-border {}",
                flag(Some(c[0])),
                flag(Some(c[1])),
                flag(Some(c[2])),
                flag(Some(c[3])),
                flag(Some(c[4])),
                flag(Some(c[5]))
            )?,
            None => writeln!(f, "                classification not covered")?,
        }
        match &self.oracle {
            OracleOutcome::Disabled => writeln!(f, "  oracle        not run")?,
            OracleOutcome::Skipped(why) | OracleOutcome::Failed(why) => writeln!(f, "  oracle        {why}")?,
            OracleOutcome::Ran { decomposition, energies, agreement } => {
                writeln!(
                    f,
                    "  oracle        |V| = {}  |e| = {}  {}",
                    energies.num_vertices, energies.num_edges, decomposition
                )?;
                writeln!(
                    f,
                    "                E = {}  LE = {}  LE+ = {}",
                    fraction_string(&energies.e),
                    fraction_string(&energies.le),
                    fraction_string(&energies.le_plus)
                )?;
                let failures = agreement.failures();
                if failures.is_empty() {
                    writeln!(f, "                agrees with closed forms")?;
                } else {
                    writeln!(f, "                disagrees on {}", failures.join(", "))?;
                }
            }
        }
        writeln!(f, "  super integral {}", flag(r.super_integral))?;
        for w in &r.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        Ok(())
    }
}
