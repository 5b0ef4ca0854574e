//! Exact characteristic polynomials of integer matrices.
//!
//! Method: multi-modular Hessenberg reduction with Chinese remaindering.
//!
//! 1. Centre the matrix, `C = M - tI` with `t` the integer nearest the mean
//!    diagonal entry, so that the coefficients to reconstruct are small.
//! 2. Bound every coefficient of `det(xI - C)`. The coefficients are
//!    elementary symmetric functions of the eigenvalues. For symmetric `C`,
//!    Maclaurin's inequality and `sum mu_i^2 = ||C||_F^2` give
//!    `|e_k| <= C(n,k) s^k <= (1 + s)^n` with `s >= sqrt(||C||_F^2 / n)`; otherwise
//!    Gershgorin's row-sum bound `R` stands in for `s`.
//! 3. For word-sized primes `q` (just below `2^62`) reduce `C` to upper
//!    Hessenberg form over `F_q` by similarity transforms and read off the
//!    characteristic polynomial with the Hessenberg recurrence. Similarity
//!    preserves the characteristic polynomial over any field, so every prime
//!    is usable.
//! 4. Combine residues until the modulus exceeds twice the bound, lift to
//!    the symmetric range, and undo the shift: `det(xI - M) = det((x - t)I - C)`.
//!
//! Cost is `O(n^3)` word operations per prime and `O(n log s)` bits of
//! primes, which keeps a few hundred rows practical.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::IntegerMatrix;
use super::roots::{integer_roots, IntegerRoots, RootExtraction};
use super::spectrum::{SpectrumKind, SpectrumMultiset};
use super::SpectralError;
use crate::scalar::Scalar;

/// Default largest dimension accepted by [`char_poly`].
pub const DEFAULT_MATRIX_CAP: usize = 512;

/// Coefficients of `det(xI - M)` in ascending degree; the last one is `1`.
pub type Polynomial = Vec<BigInt>;

pub fn char_poly(matrix: &IntegerMatrix) -> Result<Polynomial, SpectralError> {
    char_poly_with_cap(matrix, DEFAULT_MATRIX_CAP)
}

pub fn char_poly_with_cap(matrix: &IntegerMatrix, cap: usize) -> Result<Polynomial, SpectralError> {
    if matrix.dim() > cap {
        return Err(SpectralError::DimensionCapExceeded { dim: matrix.dim(), cap });
    }
    let (centred, shift, negated) = normalise(matrix);
    let poly = centred_char_poly(&centred);
    Ok(denormalise(poly, &shift, negated))
}

#[derive(Debug, Default)]
struct Entry {
    poly: Polynomial,
    roots: Option<Arc<IntegerRoots>>,
}

/// Memoising front end. Matrices that are equal after centring and a sign
/// flip share one modular computation and one root extraction.
#[derive(Debug)]
pub struct CharPolyCache {
    cap: usize,
    entries: Mutex<HashMap<IntegerMatrix, Entry>>,
}

impl CharPolyCache {
    pub fn new(cap: usize) -> Self {
        CharPolyCache { cap, entries: Mutex::new(HashMap::new()) }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_cap(&self, matrix: &IntegerMatrix) -> Result<(), SpectralError> {
        if matrix.dim() > self.cap {
            return Err(SpectralError::DimensionCapExceeded { dim: matrix.dim(), cap: self.cap });
        }
        Ok(())
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, HashMap<IntegerMatrix, Entry>> {
        self.entries.lock().expect("cache poisoned")
    }

    /// Characteristic polynomial of a centred matrix. Concurrent misses
    /// may both compute; the results are equal.
    fn centred_poly(&self, centred: &IntegerMatrix) -> Polynomial {
        if let Some(e) = self.lock().get(centred) {
            return e.poly.clone();
        }
        let poly = centred_char_poly(centred);
        self.lock()
            .entry(centred.clone())
            .or_insert_with(|| Entry { poly: poly.clone(), roots: None });
        poly
    }

    pub fn char_poly(&self, matrix: &IntegerMatrix) -> Result<Polynomial, SpectralError> {
        self.check_cap(matrix)?;
        let (centred, shift, negated) = normalise(matrix);
        Ok(denormalise(self.centred_poly(&centred), &shift, negated))
    }

    /// Integer eigenvalues of a matrix, searched within its Gershgorin
    /// bound, with whatever factor of the characteristic polynomial is
    /// left over.
    pub fn integer_spectrum<S: Scalar>(
        &self,
        matrix: &IntegerMatrix,
        kind: SpectrumKind,
    ) -> Result<RootExtraction<S>, SpectralError> {
        self.check_cap(matrix)?;
        let (centred, shift, negated) = normalise(matrix);
        let cached = self.lock().get(&centred).and_then(|e| e.roots.clone());
        let roots = match cached {
            Some(r) => r,
            None => {
                let poly = self.centred_poly(&centred);
                let bound = centred.max_abs_row_sum().to_i64().ok_or(SpectralError::RootBoundTooLarge)?;
                let r = Arc::new(integer_roots(&poly, bound));
                if let Some(e) = self.lock().get_mut(&centred) {
                    e.roots = Some(r.clone());
                }
                r
            }
        };
        // eigenvalues of M = sC + tI are s mu + t
        let pairs = roots.roots.iter().map(|(mu, mult)| {
            let lambda = if negated { &shift - mu } else { &shift + mu };
            (S::from_bigint(&lambda), mult.clone())
        });
        let found = SpectrumMultiset::from_pairs(kind, pairs);
        if roots.residual.len() == 1 {
            Ok(RootExtraction::Integral(found))
        } else {
            Ok(RootExtraction::NonIntegral { found, residual: denormalise(roots.residual.clone(), &shift, negated) })
        }
    }
}

impl Default for CharPolyCache {
    fn default() -> Self {
        Self::new(DEFAULT_MATRIX_CAP)
    }
}

/// `M = sC + tI` with `s = -1` when `negated`; `C` has its first nonzero
/// entry positive.
fn normalise(matrix: &IntegerMatrix) -> (IntegerMatrix, BigInt, bool) {
    let n = matrix.dim();
    if n == 0 {
        return (matrix.clone(), BigInt::zero(), false);
    }
    let nn = BigInt::from(n);
    let twice: BigInt = matrix.trace() * 2 + &nn;
    let shift = twice.div_floor(&(BigInt::from(2) * &nn));
    let mut centred = matrix.shifted(&-&shift);
    let negated = centred.leading_sign() < 0;
    if negated {
        centred = centred.negated();
    }
    (centred, shift, negated)
}

fn denormalise(mut poly: Polynomial, shift: &BigInt, negated: bool) -> Polynomial {
    let n = poly.len() - 1;
    if negated {
        // det(xI + C) = (-1)^n det(-xI - C)
        for (k, c) in poly.iter_mut().enumerate() {
            if (n - k) % 2 == 1 {
                *c = -&*c;
            }
        }
    }
    taylor_shift(&poly, shift)
}

/// Coefficients of `p(x - t)`.
pub fn taylor_shift(poly: &[BigInt], t: &BigInt) -> Polynomial {
    if t.is_zero() {
        return poly.to_vec();
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(poly.len());
    for c in poly.iter().rev() {
        // out <- out * (x - t) + c
        let mut next = vec![BigInt::zero(); out.len() + 1];
        for (j, v) in out.iter().enumerate() {
            next[j + 1] += v;
            next[j] -= v * t;
        }
        next[0] += c;
        out = next;
    }
    out
}

fn coefficient_bound(c: &IntegerMatrix) -> BigUint {
    let n = c.dim();
    let s = if c.is_symmetric() {
        let frob: BigUint = c.frobenius_sq().into_parts().1;
        let nn = BigUint::from(n);
        let mean = (&frob + &nn - 1u32) / &nn;
        let r = mean.sqrt();
        if &r * &r < mean {
            r + 1u32
        } else {
            r
        }
    } else {
        c.max_abs_row_sum().magnitude().clone()
    };
    num_traits::pow(s + 1u32, n)
}

fn centred_char_poly(c: &IntegerMatrix) -> Polynomial {
    let n = c.dim();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let target = coefficient_bound(c) * 2u32;
    let big = match c.as_i64() {
        Some(_) => Vec::new(),
        None => c.to_bigints(),
    };

    let mut modulus = BigUint::one();
    let mut acc: Vec<BigUint> = vec![BigUint::zero(); n + 1];
    let mut primes = PrimeStream::new();
    while modulus <= target {
        let q = primes.next_prime();
        let mont = Montgomery::new(q);
        let residues: Vec<u64> = match c.as_i64() {
            Some(v) => {
                // graph matrices are dominated by a handful of tiny entries
                let table: Vec<u64> = (-2..=2).map(|x| mont.enter(small_residue(x, q))).collect();
                v.iter()
                    .map(|&x| match x {
                        -2..=2 => table[(x + 2) as usize],
                        _ => mont.enter(small_residue(x, q)),
                    })
                    .collect()
            }
            None => big
                .iter()
                .map(|x| mont.enter(x.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits")))
                .collect(),
        };
        let coeffs = hessenberg_char_poly(residues, n, &mont);
        crt_accumulate(&mut acc, &modulus, &coeffs, q);
        modulus *= q;
    }
    let half = &modulus >> 1;
    let out: Vec<BigInt> = acc
        .into_iter()
        .map(|x| {
            if x > half {
                BigInt::from_biguint(Sign::Plus, x) - BigInt::from(modulus.clone())
            } else {
                BigInt::from(x)
            }
        })
        .collect();
    debug_assert!(out[n].is_one());
    out
}

/// `x mod q` without a division when `|x| < q`.
#[inline]
fn small_residue(x: i64, q: u64) -> u64 {
    let m = x.unsigned_abs();
    let r = if m < q { m } else { m % q };
    if x < 0 && r != 0 {
        q - r
    } else {
        r
    }
}

/// Garner step: extend `acc mod modulus` by the residues mod `q`.
fn crt_accumulate(acc: &mut [BigUint], modulus: &BigUint, residues: &[u64], q: u64) {
    let m_mod_q = (modulus % q).to_u64().expect("reduced");
    let inv = mod_pow(m_mod_q, q - 2, q);
    for (x, &r) in acc.iter_mut().zip(residues) {
        let x_mod_q = (&*x % q).to_u64().expect("reduced");
        let diff = (r + q - x_mod_q) % q;
        let t = mul_mod(diff, inv, q);
        if t != 0 {
            *x += modulus * t;
        }
    }
}

/// Characteristic polynomial over `F_q` (ascending coefficients, plain
/// residues) of the row-major `n x n` matrix `h`, given in Montgomery form.
///
/// `h` is read as the column-major storage of its transpose, which has the
/// same characteristic polynomial; columns are then contiguous, so the
/// elimination below touches memory sequentially. `h(i, j) = h[j * n + i]`.
fn hessenberg_char_poly(mut h: Vec<u64>, n: usize, mont: &Montgomery) -> Vec<u64> {
    let mut nz: Vec<(usize, u64)> = Vec::new();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[k * n + i] != 0) else {
            continue;
        };
        if piv != k + 1 {
            for j in 0..n {
                h.swap(j * n + piv, j * n + k + 1);
            }
            let (left, right) = h.split_at_mut(piv * n);
            left[(k + 1) * n..(k + 2) * n].swap_with_slice(&mut right[..n]);
        }
        let inv = mont.inv(h[k * n + k + 1]);
        nz.clear();
        nz.extend(
            (k + 2..n)
                .filter(|&i| h[k * n + i] != 0)
                .map(|i| (i, mont.mul(h[k * n + i], inv))),
        );
        if nz.is_empty() {
            continue;
        }
        // Row operations R_i -= f_i R_{k+1}, one column at a time ...
        for j in k..n {
            let col = &mut h[j * n..(j + 1) * n];
            let pivot = col[k + 1];
            if pivot == 0 {
                continue;
            }
            for &(i, f) in &nz {
                col[i] = mont.sub(col[i], mont.mul(f, pivot));
            }
        }
        // ... then the inverse column operations C_{k+1} += sum f_i C_i.
        let (left, right) = h.split_at_mut((k + 2) * n);
        let target = &mut left[(k + 1) * n..];
        for &(i, f) in &nz {
            let src = &right[(i - k - 2) * n..(i - k - 1) * n];
            for (t, &s) in target.iter_mut().zip(src) {
                if s != 0 {
                    *t = mont.add(*t, mont.mul(f, s));
                }
            }
        }
    }

    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod of subdiagonal) p_{i-1}
    let one = mont.enter(1);
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![one]);
    for k in 1..=n {
        let prev = &polys[k - 1];
        let hkk = h[(k - 1) * n + (k - 1)];
        let mut next = vec![0u64; k + 1];
        for (j, &c) in prev.iter().enumerate() {
            next[j + 1] = mont.add(next[j + 1], c);
            next[j] = mont.sub(next[j], mont.mul(hkk, c));
        }
        let mut t = one;
        for i in (1..k).rev() {
            t = mont.mul(t, h[(i - 1) * n + i]);
            if t == 0 {
                break;
            }
            let coeff = mont.mul(h[(k - 1) * n + (i - 1)], t);
            if coeff == 0 {
                continue;
            }
            for (j, &c) in polys[i - 1].iter().enumerate() {
                next[j] = mont.sub(next[j], mont.mul(coeff, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n >= 1").into_iter().map(|x| mont.leave(x)).collect()
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, descending.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream { next: (1u64 << 62) - 1 }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return c;
            }
        }
    }
}

/// Montgomery arithmetic modulo an odd `q < 2^62`, with `R = 2^64`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Montgomery {
    q: u64,
    /// `-q^-1 mod 2^64`
    neg_inv: u64,
    /// `R^2 mod q`
    r2: u64,
}

impl Montgomery {
    pub(crate) fn new(q: u64) -> Self {
        debug_assert!(q % 2 == 1 && q < 1 << 62);
        let mut inv = q;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(q.wrapping_mul(inv)));
        }
        let r2 = ((u128::MAX % q as u128 + 1) % q as u128) as u64;
        Montgomery { q, neg_inv: inv.wrapping_neg(), r2 }
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.q as u128) >> 64) as u64;
        if u >= self.q {
            u - self.q
        } else {
            u
        }
    }

    #[inline(always)]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline(always)]
    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    pub(crate) fn enter(&self, a: u64) -> u64 {
        let a = if a < self.q { a } else { a % self.q };
        self.mul(a, self.r2)
    }

    pub(crate) fn leave(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    fn inv(&self, a: u64) -> u64 {
        // a is in Montgomery form; a^(q-2) keeps the form.
        let mut base = a;
        let mut exp = self.q - 2;
        let mut acc = self.enter(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn complete(n: usize) -> IntegerMatrix {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i != j) as i64).collect()).collect();
        IntegerMatrix::from_rows(&rows)
    }

    #[test]
    fn small_examples() {
        assert_eq!(char_poly(&complete(2)).unwrap(), ints(&[-1, 0, 1]));
        assert_eq!(char_poly(&complete(3)).unwrap(), ints(&[-2, -3, 0, 1]));
        // Laplacian of K4: x (x - 4)^3
        let l4 = IntegerMatrix::from_rows(&[
            vec![3, -1, -1, -1],
            vec![-1, 3, -1, -1],
            vec![-1, -1, 3, -1],
            vec![-1, -1, -1, 3],
        ]);
        assert_eq!(char_poly(&l4).unwrap(), ints(&[0, -64, 48, -12, 1]));
        assert_eq!(char_poly(&IntegerMatrix::zeros(0)).unwrap(), ints(&[1]));
        assert_eq!(char_poly(&IntegerMatrix::from_rows(&[vec![7]])).unwrap(), ints(&[-7, 1]));
    }

    #[test]
    fn cap_is_enforced() {
        let m = IntegerMatrix::zeros(5);
        assert_eq!(
            char_poly_with_cap(&m, 4),
            Err(SpectralError::DimensionCapExceeded { dim: 5, cap: 4 })
        );
        assert!(char_poly_with_cap(&m, 5).is_ok());
    }

    #[test]
    fn non_symmetric_and_pivoting() {
        // companion-like matrix with zero pivots: forces row/column swaps
        let m = IntegerMatrix::from_rows(&[
            vec![0, 0, 0, -6],
            vec![0, 0, 0, 11],
            vec![1, 0, 0, -6],
            vec![0, 1, 0, 0],
        ]);
        let p = char_poly(&m).unwrap();
        // check against det(xI - M) computed by cofactor expansion at several x
        for x in -3i64..=3 {
            let shifted = IntegerMatrix::from_rows(
                &(0..4)
                    .map(|i| (0..4).map(|j| (if i == j { x } else { 0 }) - m.get(i, j).to_i64().unwrap()).collect())
                    .collect::<Vec<_>>(),
            );
            let val: BigInt = p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
            assert_eq!(val, cofactor_det(&shifted));
        }
    }

    fn cofactor_det(m: &IntegerMatrix) -> BigInt {
        let n = m.dim();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let rest: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor_rows: Vec<Vec<i64>> = (1..n)
                .map(|i| rest.iter().map(|&c| m.get(i, c).to_i64().unwrap()).collect())
                .collect();
            let minor = cofactor_det(&IntegerMatrix::from_rows(&minor_rows));
            let term = m.get(0, j) * minor;
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = ints(&[3, -2, 0, 5, 1]);
        let t = BigInt::from(-4);
        let shifted = taylor_shift(&p, &t);
        for x in -5i64..=5 {
            let lhs: BigInt = shifted.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
            let y = BigInt::from(x) - &t;
            let rhs: BigInt = p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &y + c);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cache_shares_centred_matrices() {
        let cache = CharPolyCache::new(64);
        let a = complete(6);
        let deg = BigInt::from(5);
        let q = a.shifted(&deg);
        let l = a.negated().shifted(&deg);
        assert_eq!(cache.char_poly(&a).unwrap(), char_poly(&a).unwrap());
        assert_eq!(cache.char_poly(&q).unwrap(), char_poly(&q).unwrap());
        assert_eq!(cache.char_poly(&l).unwrap(), char_poly(&l).unwrap());
        assert_eq!(cache.entries.lock().unwrap().len(), 1);
    }

    #[test]
    fn cached_spectra_map_back() {
        use crate::spectral::{RootExtraction, SpectrumKind};
        use num_rational::BigRational;
        let cache = CharPolyCache::new(64);
        let a = complete(6);
        let deg = BigInt::from(5);
        let l = a.negated().shifted(&deg);
        let q = a.shifted(&deg);
        let pairs = |m: &IntegerMatrix, kind| match cache.integer_spectrum::<BigRational>(m, kind).unwrap() {
            RootExtraction::Integral(s) => s.to_string(),
            other => panic!("{other:?}"),
        };
        assert_eq!(pairs(&l, SpectrumKind::Laplacian), "{6^5, 0^1}");
        assert_eq!(pairs(&q, SpectrumKind::Signless), "{10^1, 4^5}");
        assert_eq!(pairs(&a, SpectrumKind::Adjacency), "{5^1, -1^5}");
        assert_eq!(cache.entries.lock().unwrap().len(), 1);
    }

    #[test]
    fn cached_residual_is_mapped_back() {
        use crate::spectral::{RootExtraction, SpectrumKind};
        use num_rational::BigRational;
        // path on 3 vertices, shifted: roots 2, 2 +- sqrt 2
        let m = IntegerMatrix::from_rows(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]);
        match CharPolyCache::default().integer_spectrum::<BigRational>(&m, SpectrumKind::Adjacency).unwrap() {
            RootExtraction::NonIntegral { found, residual } => {
                assert_eq!(found.to_string(), "{2^1}");
                assert_eq!(residual, ints(&[2, -4, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn miller_rabin() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn montgomery_roundtrip() {
        let mont = Montgomery::new((1u64 << 61) - 1);
        let (a, b) = (123_456_789_012_345u64, 987_654_321_098u64);
        let prod = mont.leave(mont.mul(mont.enter(a), mont.enter(b)));
        assert_eq!(prod, mul_mod(a, b, (1u64 << 61) - 1));
        let ia = mont.inv(mont.enter(a));
        assert_eq!(mont.leave(mont.mul(ia, mont.enter(a))), 1);
    }
}
