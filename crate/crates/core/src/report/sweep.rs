use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use super::row::{evaluate, EvalOptions, Instance, ReportRow};
use crate::group::{make_params_with_cap, GroupError, GroupParams};
use crate::spectral::CharPolyCache;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("parameter grid is empty")]
    Empty,
    #[error("malformed range `{0}` (expected `a..b` or `a`)")]
    BadRange(String),
    #[error("malformed prime list `{0}`")]
    BadPrimes(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `a..b` (inclusive; `a..=b` also accepted) or a single value `a`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, GridError> {
    let bad = || GridError::BadRange(s.to_string());
    let t = s.trim();
    let (lo, hi) = match t.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=').trim()),
        None => (t, t),
    };
    let lo: u32 = lo.parse().map_err(|_| bad())?;
    let hi: u32 = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// Comma-separated primes, e.g. `2,3,5`.
pub fn parse_primes(s: &str) -> Result<Vec<u64>, GridError> {
    let out: Result<Vec<u64>, _> = s.split(',').map(|x| x.trim().parse::<u64>()).collect();
    match out {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(GridError::BadPrimes(s.to_string())),
    }
}

/// A rectangular parameter grid cut down to orders `<= max_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub primes: Vec<u64>,
    /// `None` means every value the order cap admits.
    pub m_range: Option<RangeInclusive<u32>>,
    pub n_range: Option<RangeInclusive<u32>>,
    pub max_order: u64,
    /// Keep `m < n` triples (annotated, never failing).
    pub include_swapped: bool,
    /// Map `m < n` triples to `(p, n, m)`.
    pub canonicalize: bool,
}

impl GridSpec {
    /// The triples of the grid, sorted by `(p, m, n)` without duplicates.
    pub fn params(&self) -> Result<Vec<GroupParams>, GridError> {
        let cap = BigUint::from(self.max_order);
        let mut out: BTreeMap<(u64, u32, u32), GroupParams> = BTreeMap::new();
        for &p in &self.primes {
            // validates p even when nothing fits under the cap
            make_params_with_cap(p, 1, 1, false, None)?;
            // largest s = m + n with p^(s+1) <= max_order
            let mut s_max = 0u32;
            while BigUint::from(p).pow(s_max + 2) <= cap {
                s_max += 1;
            }
            let m_range = self.m_range.clone().unwrap_or(1..=s_max.max(1));
            let n_range = self.n_range.clone().unwrap_or(1..=s_max.max(1));
            for m in m_range.clone() {
                for n in n_range.clone() {
                    if m == 0 || n == 0 {
                        return Err(GroupError::OutOfRange { name: if m == 0 { "m" } else { "n" }, value: 0 }.into());
                    }
                    if m < n && !self.include_swapped && !self.canonicalize {
                        continue;
                    }
                    let params = match make_params_with_cap(p, m, n, self.canonicalize, Some(&cap)) {
                        Ok(params) => params,
                        Err(GroupError::OrderCapExceeded { .. }) => continue,
                        Err(e) => return Err(e.into()),
                    };
                    let key = (params.p(), params.m(), params.n());
                    // a direct triple wins over one reached by canonicalizing
                    match out.get(&key) {
                        Some(existing) if !existing.canonicalized() => {}
                        _ => {
                            out.insert(key, params);
                        }
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(GridError::Empty);
        }
        Ok(out.into_values().collect())
    }
}

/// Results for a list of triples, in `(p, m, n)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub instances: Vec<Instance>,
}

impl SweepReport {
    pub fn rows(&self) -> Vec<ReportRow> {
        self.instances.iter().map(|i| i.row.clone()).collect()
    }

    /// Some `m >= n` row disagrees with the oracle.
    pub fn has_failures(&self) -> bool {
        self.instances.iter().any(Instance::fails)
    }

    pub fn is_incomplete(&self) -> bool {
        self.instances.iter().any(|i| i.incomplete)
    }
}

/// Evaluates every triple; cells run in parallel, output order is fixed.
pub fn run_sweep(params: &[GroupParams], opts: EvalOptions, cache: &CharPolyCache) -> SweepReport {
    let mut instances: Vec<Instance> = params.par_iter().map(|p| evaluate(p, opts, cache)).collect();
    instances.sort_by_key(|i| i.row.key());
    SweepReport { instances }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(primes: &[u64], max_order: u64) -> GridSpec {
        GridSpec {
            primes: primes.to_vec(),
            m_range: None,
            n_range: None,
            max_order,
            include_swapped: false,
            canonicalize: false,
        }
    }

    fn keys(g: &GridSpec) -> Vec<(u64, u32, u32)> {
        g.params().unwrap().iter().map(|p| (p.p(), p.m(), p.n())).collect()
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..3").unwrap(), 1..=3);
        assert_eq!(parse_range("1..=3").unwrap(), 1..=3);
        assert_eq!(parse_range(" 2 ").unwrap(), 2..=2);
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("a..b").is_err());
        assert_eq!(parse_primes("2, 3").unwrap(), vec![2, 3]);
        assert!(parse_primes("").is_err());
    }

    #[test]
    fn default_grid_respects_order_cap() {
        // p^(m+n+1) <= 64 with m >= n: (m, n) in {(1,1), (2,1), (3,1), (2,2), (4,1), (3,2)}
        assert_eq!(
            keys(&grid(&[2], 64)),
            vec![(2, 1, 1), (2, 2, 1), (2, 2, 2), (2, 3, 1), (2, 3, 2), (2, 4, 1)]
        );
        assert_eq!(keys(&grid(&[3], 81)), vec![(3, 1, 1), (3, 2, 1)]);
    }

    #[test]
    fn swapped_and_canonicalized() {
        let mut g = grid(&[2], 16);
        g.m_range = Some(1..=1);
        g.n_range = Some(2..=2);
        assert_eq!(g.params(), Err(GridError::Empty));
        g.include_swapped = true;
        assert_eq!(keys(&g), vec![(2, 1, 2)]);
        g.canonicalize = true;
        let ps = g.params().unwrap();
        assert_eq!((ps[0].m(), ps[0].n(), ps[0].canonicalized()), (2, 1, true));

        let mut g = grid(&[2], 32);
        g.canonicalize = true;
        assert!(g.params().unwrap().iter().all(|p| !p.canonicalized()));
    }

    #[test]
    fn grid_errors() {
        assert!(matches!(grid(&[4], 64).params(), Err(GridError::Group(GroupError::NotPrime(4)))));
        assert_eq!(grid(&[5], 100).params(), Err(GridError::Empty));
        let mut g = grid(&[2], 64);
        g.m_range = Some(0..=1);
        assert!(matches!(g.params(), Err(GridError::Group(GroupError::OutOfRange { .. }))));
    }

    #[test]
    fn sweep_is_sorted_and_parallel_safe() {
        let g = grid(&[3, 2], 512);
        let ps = g.params().unwrap();
        let opts = EvalOptions { order_cap: 1 << 20, oracle: true };
        let a = run_sweep(&ps, opts, &CharPolyCache::default());
        let mut rev = ps.clone();
        rev.reverse();
        let b = run_sweep(&rev, opts, &CharPolyCache::default());
        assert_eq!(a, b);
        let ks: Vec<_> = a.rows().iter().map(ReportRow::key).collect();
        let mut sorted = ks.clone();
        sorted.sort();
        assert_eq!(ks, sorted);
        // n >= 2 rows disagree with the oracle
        assert!(a.has_failures());
        assert!(!a.is_incomplete());
    }
}
