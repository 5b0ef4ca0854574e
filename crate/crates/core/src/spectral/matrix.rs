use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::graph::CccGraph;

/// Entry storage. Invariant: `Small` whenever every entry fits in `i64`, so
/// equal matrices always compare and hash equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Entries {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// Dense square matrix of arbitrary-precision integers, row-major.
///
/// Entries are held as machine words while they fit, which keeps the
/// few-thousand-row graph matrices compact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    dim: usize,
    entries: Entries,
}

impl IntegerMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntegerMatrix { dim, entries: Entries::Small(vec![0; dim * dim]) }
    }

    pub fn identity(dim: usize) -> Self {
        let mut v = vec![0; dim * dim];
        for i in 0..dim {
            v[i * dim + i] = 1;
        }
        IntegerMatrix { dim, entries: Entries::Small(v) }
    }

    /// From rows of machine integers; panics on a ragged or non-square input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        let mut v = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix must be square");
            v.extend_from_slice(row);
        }
        IntegerMatrix { dim, entries: Entries::Small(v) }
    }

    /// From row-major entries; panics unless `entries.len() == dim * dim`.
    pub fn from_entries(dim: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), dim * dim, "matrix must be square");
        IntegerMatrix { dim, entries: compact(entries) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        let k = i * self.dim + j;
        match &self.entries {
            Entries::Small(v) => BigInt::from(v[k]),
            Entries::Big(v) => v[k].clone(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        let k = i * self.dim + j;
        match (&mut self.entries, x.to_i64()) {
            (Entries::Small(v), Some(y)) => v[k] = y,
            (Entries::Small(_), None) => {
                let mut big = self.to_bigints();
                big[k] = x;
                self.entries = Entries::Big(big);
            }
            (Entries::Big(v), _) => {
                v[k] = x;
                if v[k].to_i64().is_some() {
                    self.entries = compact(std::mem::take(v));
                }
            }
        }
    }

    /// Row-major entries when all fit in `i64`.
    pub fn as_i64(&self) -> Option<&[i64]> {
        match &self.entries {
            Entries::Small(v) => Some(v),
            Entries::Big(_) => None,
        }
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        match &self.entries {
            Entries::Small(v) => v.iter().map(|&x| BigInt::from(x)).collect(),
            Entries::Big(v) => v.clone(),
        }
    }

    fn map(&self, small: impl Fn(i64) -> Option<i64>, big: impl Fn(BigInt) -> BigInt, diag_only: bool) -> Self {
        let n = self.dim;
        let on = |k: usize| !diag_only || k / n.max(1) == k % n.max(1);
        if let Entries::Small(v) = &self.entries {
            let out: Option<Vec<i64>> =
                v.iter().enumerate().map(|(k, &x)| if on(k) { small(x) } else { Some(x) }).collect();
            if let Some(out) = out {
                return IntegerMatrix { dim: n, entries: Entries::Small(out) };
            }
        }
        let out = self
            .to_bigints()
            .into_iter()
            .enumerate()
            .map(|(k, x)| if on(k) { big(x) } else { x })
            .collect();
        IntegerMatrix { dim: n, entries: compact(out) }
    }

    /// Entry `k` in row-major order with `|entry|`; used for scans.
    fn abs_at(&self, k: usize) -> BigInt {
        match &self.entries {
            Entries::Small(v) => BigInt::from(v[k]).abs(),
            Entries::Big(v) => v[k].abs(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim;
        match &self.entries {
            Entries::Small(v) => (0..n).all(|i| (i + 1..n).all(|j| v[i * n + j] == v[j * n + i])),
            Entries::Big(v) => (0..n).all(|i| (i + 1..n).all(|j| v[i * n + j] == v[j * n + i])),
        }
    }

    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        let k = i * self.dim + j;
        match &self.entries {
            Entries::Small(v) => v[k] == 0,
            Entries::Big(v) => v[k].is_zero(),
        }
    }

    /// Sign of the first nonzero entry in row-major order (`0` for the zero matrix).
    pub fn leading_sign(&self) -> i32 {
        let sign = |x: &BigInt| if x.is_negative() { -1 } else { 1 };
        match &self.entries {
            Entries::Small(v) => v.iter().find(|&&x| x != 0).map_or(0, |&x| x.signum() as i32),
            Entries::Big(v) => v.iter().find(|x| !x.is_zero()).map_or(0, sign),
        }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `||M||_F^2`.
    pub fn frobenius_sq(&self) -> BigInt {
        match &self.entries {
            Entries::Small(v) => v.iter().map(|&x| BigInt::from(x as i128 * x as i128)).sum(),
            Entries::Big(v) => v.iter().map(|x| x * x).sum(),
        }
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j)).sum()).collect()
    }

    /// Largest `sum_j |a_ij|`; bounds every eigenvalue in absolute value.
    pub fn max_abs_row_sum(&self) -> BigInt {
        let n = self.dim;
        if let Entries::Small(v) = &self.entries {
            let sums = v.chunks(n.max(1)).map(|r| r.iter().map(|&x| x.unsigned_abs() as u128).sum::<u128>());
            return BigInt::from(sums.max().unwrap_or(0));
        }
        (0..n).map(|i| (0..n).map(|j| self.abs_at(i * n + j)).sum::<BigInt>()).max().unwrap_or_default()
    }

    /// `self + c I`.
    pub fn shifted(&self, c: &BigInt) -> Self {
        let small_c = c.to_i64();
        self.map(move |x| small_c.and_then(|c| x.checked_add(c)), |x| x + c, true)
    }

    pub fn negated(&self) -> Self {
        self.map(|x| x.checked_neg(), |x| -x, false)
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let n = self.dim;
        let entries = match &self.entries {
            Entries::Small(v) => {
                Entries::Small(indices.iter().flat_map(|&i| indices.iter().map(move |&j| v[i * n + j])).collect())
            }
            Entries::Big(v) => compact(
                indices.iter().flat_map(|&i| indices.iter().map(move |&j| v[i * n + j].clone())).collect(),
            ),
        };
        IntegerMatrix { dim: k, entries }
    }

    /// Groups of indices that are connected through nonzero off-diagonal
    /// entries (in either direction). Reordering by these groups makes the
    /// matrix block diagonal.
    pub fn diagonal_blocks(&self) -> Vec<Vec<usize>> {
        let n = self.dim;
        let mut block = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if block[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            block[s] = id;
            let mut members = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if block[v] == usize::MAX && (!self.is_zero_at(u, v) || !self.is_zero_at(v, u)) {
                        block[v] = id;
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
}

fn compact(v: Vec<BigInt>) -> Entries {
    match v.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>() {
        Some(small) => Entries::Small(small),
        None => Entries::Big(v),
    }
}

/// Adjacency, Laplacian `D - A` and signless Laplacian `D + A` of the
/// subgraph induced on `vertices`.
pub fn induced_matrices(graph: &CccGraph, vertices: &[usize]) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let k = vertices.len();
    let mut a = vec![0i64; k * k];
    let mut degree = vec![0i64; k];
    for (i, &u) in vertices.iter().enumerate() {
        for (j, &v) in vertices.iter().enumerate() {
            if graph.adjacent(u, v) {
                a[i * k + j] = 1;
                degree[i] += 1;
            }
        }
    }
    let mut l: Vec<i64> = a.iter().map(|&x| -x).collect();
    let mut q = a.clone();
    for (i, &d) in degree.iter().enumerate() {
        l[i * k + i] = d;
        q[i * k + i] = d;
    }
    let wrap = |v| IntegerMatrix { dim: k, entries: Entries::Small(v) };
    (wrap(a), wrap(l), wrap(q))
}

/// `(A, L, Q)` of the whole graph. Dense: intended for graphs of a few
/// thousand vertices at most; use [`induced_matrices`] per component beyond
/// that.
pub fn matrices_from_graph(graph: &CccGraph) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let all: Vec<usize> = (0..graph.num_vertices()).collect();
    induced_matrices(graph, &all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_matrices() {
        let g = CccGraph::from_edges(2, &[(0, 1)]);
        let (a, l, q) = matrices_from_graph(&g);
        assert_eq!(a, IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(l, IntegerMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]));
        assert_eq!(q, IntegerMatrix::from_rows(&[vec![1, 1], vec![1, 1]]));
    }

    #[test]
    fn laplacian_row_sums_and_traces() {
        let g = CccGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (2, 5)]);
        let (a, l, q) = matrices_from_graph(&g);
        assert!(l.row_sums().iter().all(|s| s.is_zero()));
        assert_eq!(l.trace(), BigInt::from(2 * g.edge_count()));
        assert_eq!(q.trace(), BigInt::from(2 * g.edge_count()));
        assert!(a.is_symmetric() && l.is_symmetric() && q.is_symmetric());
        assert_eq!(q.max_abs_row_sum(), BigInt::from(6));
    }

    #[test]
    fn storage_promotes_and_compacts() {
        let big: BigInt = BigInt::from(i64::MAX) * 4;
        let mut m = IntegerMatrix::identity(2);
        assert!(m.as_i64().is_some());
        m.set(0, 1, big.clone());
        assert!(m.as_i64().is_none());
        assert_eq!(m.get(0, 1), big);
        assert_eq!(m.negated().get(0, 1), -&big);
        m.set(0, 1, BigInt::from(3));
        assert_eq!(m, IntegerMatrix::from_rows(&[vec![1, 3], vec![0, 1]]));

        let edge = IntegerMatrix::from_rows(&[vec![i64::MAX, 0], vec![0, i64::MIN]]);
        let shifted = edge.shifted(&BigInt::from(1));
        assert_eq!(shifted.get(0, 0), BigInt::from(i64::MAX) + 1);
        assert_eq!(shifted.get(1, 1), BigInt::from(i64::MIN) + 1);
        assert_eq!(shifted.shifted(&BigInt::from(-1)), edge);
        assert_eq!(edge.negated().leading_sign(), -1);
        assert_eq!(IntegerMatrix::from_entries(1, vec![big.clone()]).frobenius_sq(), &big * &big);
    }

    #[test]
    fn blocks_follow_components() {
        let g = CccGraph::from_edges(5, &[(0, 3), (1, 4)]);
        let (a, _, _) = matrices_from_graph(&g);
        assert_eq!(a.diagonal_blocks(), vec![vec![0, 3], vec![1, 4], vec![2]]);
        let sub = a.principal_submatrix(&[0, 3]);
        assert_eq!(sub, IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
    }
}
