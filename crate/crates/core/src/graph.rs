//! Commuting conjugacy class graphs and their clique decompositions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::group::{ConjugacyClass, Group, GroupParams};
use crate::scalar::rational_pow;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("connected component {0} is not a complete graph")]
    NotCliqueUnion(usize),
    #[error("cannot parse clique decomposition {0:?}")]
    BadDecomposition(String),
}

/// Simple undirected graph on `0..n` stored as a dense bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CccGraph {
    /// Class ids (positions in the class list) of the vertices, in vertex order.
    vertices: Vec<usize>,
    words: usize,
    bits: Vec<u64>,
    edge_count: u64,
}

impl CccGraph {
    fn empty(vertices: Vec<usize>) -> Self {
        let words = vertices.len().div_ceil(64);
        CccGraph {
            bits: vec![0; words * vertices.len()],
            vertices,
            words,
            edge_count: 0,
        }
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        if !self.adjacent(u, v) {
            self.bits[u * self.words + v / 64] |= 1 << (v % 64);
            self.bits[v * self.words + u / 64] |= 1 << (u % 64);
            self.edge_count += 1;
        }
    }

    /// A graph given directly by its edge list. Self-loops are rejected by
    /// panicking; duplicate edges are ignored.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty((0..num_vertices).collect());
        for &(u, v) in edges {
            assert!(u != v, "self-loop at {u}");
            g.add_edge(u, v);
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// Class id of vertex `v`.
    pub fn class_id(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + t)
            })
        })
    }

    pub fn degree(&self, u: usize) -> u64 {
        self.row(u).iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Connected components, each sorted ascending, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            stack.push(s);
            let mut members = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn is_clique(&self, members: &[usize]) -> bool {
        let mut mask = vec![0u64; self.words];
        for &v in members {
            mask[v / 64] |= 1 << (v % 64);
        }
        members.iter().all(|&v| {
            self.row(v).iter().zip(&mask).enumerate().all(|(w, (&r, &m))| {
                let expected = if w == v / 64 { m & !(1 << (v % 64)) } else { m };
                r == expected
            })
        })
    }
}

/// Builds the commuting conjugacy class graph on the noncentral classes.
///
/// Classes `X` and `Y` are adjacent when some `x' in X` and `y' in Y` commute.
/// If `x' = g^-1 x g` commutes with `y'`, then `x` commutes with `g y' g^-1`,
/// which again lies in `Y`. So it suffices to test the representative of `X`
/// against every member of `Y`.
pub fn build_ccc(group: &Group, classes: &[ConjugacyClass]) -> CccGraph {
    let vertices: Vec<usize> = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_central)
        .map(|(i, _)| i)
        .collect();
    let mut graph = CccGraph::empty(vertices);
    let n = graph.num_vertices();
    for i in 0..n {
        let rep = classes[graph.vertices[i]].representative;
        for j in i + 1..n {
            let other = &classes[graph.vertices[j]];
            if other.members.iter().any(|y| group.commute(&rep, y)) {
                graph.add_edge(i, j);
            }
        }
    }
    graph
}

/// `count` disjoint copies of `K_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliquePart {
    pub count: BigUint,
    pub size: BigUint,
}

/// A disjoint union of complete graphs, kept merged by clique size and sorted
/// by descending size, so equal multisets compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliqueDecomposition {
    parts: Vec<CliquePart>,
    total_vertices: BigUint,
    total_edges: BigUint,
}

impl CliqueDecomposition {
    /// Merges `(count, size)` pairs; empty parts are dropped.
    pub fn from_parts<I, C, S>(parts: I) -> Self
    where
        I: IntoIterator<Item = (C, S)>,
        C: Into<BigUint>,
        S: Into<BigUint>,
    {
        let mut merged: Vec<CliquePart> = Vec::new();
        for (count, size) in parts {
            let (count, size) = (count.into(), size.into());
            if count.is_zero() || size.is_zero() {
                continue;
            }
            match merged.iter_mut().find(|p| p.size == size) {
                Some(p) => p.count += count,
                None => merged.push(CliquePart { count, size }),
            }
        }
        merged.sort_by(|a, b| b.size.cmp(&a.size).then(b.count.cmp(&a.count)));
        let total_vertices = merged.iter().map(|p| &p.count * &p.size).sum();
        let total_edges = merged
            .iter()
            .map(|p| &p.count * &p.size * (&p.size - BigUint::one()) / 2u32)
            .sum();
        CliqueDecomposition { parts: merged, total_vertices, total_edges }
    }

    pub fn parts(&self) -> &[CliquePart] {
        &self.parts
    }

    pub fn total_vertices(&self) -> &BigUint {
        &self.total_vertices
    }

    pub fn total_edges(&self) -> &BigUint {
        &self.total_edges
    }
}

impl fmt::Display for CliqueDecomposition {
    /// `2xK4+2xK2`; the empty union renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}xK{}", p.count, p.size)?;
        }
        Ok(())
    }
}

impl FromStr for CliqueDecomposition {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadDecomposition(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(Self::from_parts(Vec::<(BigUint, BigUint)>::new()));
        }
        let mut parts = Vec::new();
        for term in s.split('+') {
            let (count, size) = term.trim().split_once("xK").ok_or_else(bad)?;
            let count: BigUint = count.parse().map_err(|_| bad())?;
            let size: BigUint = size.parse().map_err(|_| bad())?;
            parts.push((count, size));
        }
        Ok(Self::from_parts(parts))
    }
}

/// Splits the graph into connected components and checks each is complete.
pub fn decompose(graph: &CccGraph) -> Result<CliqueDecomposition, GraphError> {
    let comps = graph.components();
    for (id, c) in comps.iter().enumerate() {
        if !graph.is_clique(c) {
            return Err(GraphError::NotCliqueUnion(id));
        }
    }
    Ok(CliqueDecomposition::from_parts(
        comps.iter().map(|c| (1u32, BigUint::from(c.len()))),
    ))
}

/// The closed-form decomposition
/// `(p^n - p^(n-1)) K_{n1} + K_{n2} + K_{n3}` with
/// `n1 = p^(m-n) (p^n - p^(n-1))`, `n2 = p^(n-1) (p^m - p^(m-1))`,
/// `n3 = p^(m-1) (p^n - p^(n-1))`.
///
/// Evaluated for every `m, n >= 1`. When `m < n` the factor `p^(m-n)` is
/// fractional, but `n1` still simplifies to the integer `p^(m-1) (p - 1)`.
/// Only the `m >= n` range agrees with the actual graphs.
pub fn predicted_decomposition(params: &GroupParams) -> CliqueDecomposition {
    let (p, m, n) = (params.p(), params.m() as i64, params.n() as i64);
    let pw = |k: i64| rational_pow(p, k);
    let as_uint = |r: num_rational::BigRational| -> BigUint {
        assert!(r.is_integer(), "non-integral clique parameter {r}");
        r.to_integer().to_biguint().expect("negative clique parameter")
    };
    let m1 = pw(n) - pw(n - 1);
    let n1 = pw(m - n) * (pw(n) - pw(n - 1));
    let n2 = pw(n - 1) * (pw(m) - pw(m - 1));
    let n3 = pw(m - 1) * (pw(n) - pw(n - 1));
    CliqueDecomposition::from_parts([
        (as_uint(m1), as_uint(n1)),
        (BigUint::one(), as_uint(n2)),
        (BigUint::one(), as_uint(n3)),
    ])
}
