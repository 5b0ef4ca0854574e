use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use super::charpoly::Polynomial;
use super::spectrum::{SpectrumKind, SpectrumMultiset};
use super::SpectralError;
use crate::scalar::Scalar;

/// Result of pulling integer roots out of a characteristic polynomial.
#[derive(Debug, Clone, PartialEq)]
pub enum RootExtraction<S> {
    /// Every root is an integer.
    Integral(SpectrumMultiset<S>),
    /// A factor without integer roots in the searched range remains.
    NonIntegral {
        found: SpectrumMultiset<S>,
        /// Ascending coefficients, monic.
        residual: Polynomial,
    },
}

impl<S> RootExtraction<S> {
    pub fn is_integral(&self) -> bool {
        matches!(self, RootExtraction::Integral(_))
    }

    pub fn integral(self) -> Option<SpectrumMultiset<S>> {
        match self {
            RootExtraction::Integral(s) => Some(s),
            RootExtraction::NonIntegral { .. } => None,
        }
    }
}

// Word prime used to find candidate roots and multiplicities.
const FILTER_PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

/// Integer roots with multiplicities, ascending, and the monic cofactor
/// left after removing them (`[1]` when every root is an integer).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntegerRoots {
    pub roots: Vec<(BigInt, BigUint)>,
    pub residual: Polynomial,
}

fn reduce(poly: &[BigInt]) -> Vec<u64> {
    let q = BigInt::from(FILTER_PRIME);
    poly.iter()
        .map(|c| {
            let r = c % &q;
            let r = if r < BigInt::zero() { r + &q } else { r };
            r.to_u64().expect("reduced")
        })
        .collect()
}

fn residue(x: i64) -> u128 {
    x.rem_euclid(FILTER_PRIME as i64) as u128
}

fn eval_mod(poly: &[u64], x: i64) -> u64 {
    let q = FILTER_PRIME as u128;
    let xm = residue(x);
    poly.iter().rev().fold(0u128, |acc, &c| (acc * xm + c as u128) % q) as u64
}

/// Quotient by `x - r` over `F_q`; the caller has checked the remainder.
fn divide_mod(poly: &[u64], r: i64) -> Vec<u64> {
    let q = FILTER_PRIME as u128;
    let rm = residue(r);
    let deg = poly.len() - 1;
    let mut quotient = vec![0u64; deg];
    let mut carry = 0u128;
    for k in (0..deg).rev() {
        carry = (poly[k + 1] as u128 + carry * rm) % q;
        quotient[k] = carry as u64;
    }
    quotient
}

/// Divides by `x - r`; returns the quotient when the remainder is zero.
fn divide_exact(poly: &[BigInt], r: &BigInt) -> Option<Polynomial> {
    let deg = poly.len() - 1;
    let mut quotient = vec![BigInt::zero(); deg];
    let mut carry = BigInt::zero();
    for k in (0..deg).rev() {
        carry = &poly[k + 1] + carry * r;
        quotient[k] = carry.clone();
    }
    let remainder = &poly[0] + carry * r;
    remainder.is_zero().then_some(quotient)
}

/// `sum c_i X^i` at `X = 2^(32 w)`. Requires `|c_i| < 2^(32 w - 1)`, which
/// makes the value determine the coefficients.
fn kronecker_value(poly: &[BigInt], w: usize) -> BigInt {
    let mut pos = vec![0u32; poly.len() * w];
    let mut neg = vec![0u32; poly.len() * w];
    for (i, c) in poly.iter().enumerate() {
        let digits = c.magnitude().to_u32_digits();
        let buf = if c.sign() == Sign::Minus { &mut neg } else { &mut pos };
        buf[i * w..i * w + digits.len()].copy_from_slice(&digits);
    }
    BigInt::from(BigUint::new(pos)) - BigInt::from(BigUint::new(neg))
}

/// Exact test of `poly == prod (x - r)^m` for monic `poly` whose degree is
/// the total multiplicity.
fn is_factorisation(poly: &[BigInt], roots: &[(BigInt, BigUint)]) -> bool {
    // coefficients of the product are at most prod (1 + |r|)^m
    let product_bits: u64 = roots
        .iter()
        .map(|(r, m)| r.bits() * m.to_u64().expect("multiplicity fits"))
        .sum();
    let poly_bits = poly.iter().map(BigInt::bits).max().unwrap_or(0);
    let w = ((product_bits.max(poly_bits) + 1) as usize).div_ceil(32);
    let x = BigInt::one() << (32 * w);
    let product = roots.iter().fold(BigInt::one(), |acc, (r, m)| {
        acc * num_traits::pow(&x - r, m.to_usize().expect("multiplicity fits"))
    });
    kronecker_value(poly, w) == product
}

/// Roots by repeated exact division; always correct, slow for high
/// multiplicities of large polynomials.
fn exact_roots(poly: &[BigInt], bound: i64) -> IntegerRoots {
    let mut current = poly.to_vec();
    let mut reduced = reduce(&current);
    let mut roots = Vec::new();
    for r in -bound..=bound {
        if current.len() == 1 {
            break;
        }
        let rb = BigInt::from(r);
        let mut mult = 0u64;
        while current.len() > 1 && eval_mod(&reduced, r) == 0 {
            match divide_exact(&current, &rb) {
                Some(q) => {
                    current = q;
                    reduced = reduce(&current);
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            roots.push((rb, BigUint::from(mult)));
        }
    }
    IntegerRoots { roots, residual: current }
}

/// Integer roots of a monic polynomial in `[-bound, bound]`.
///
/// Candidates and multiplicities come from arithmetic modulo one prime. If
/// they account for the whole degree, the factorisation is confirmed
/// exactly; otherwise (or if confirmation fails) the exact search runs.
pub(crate) fn integer_roots(poly: &[BigInt], bound: i64) -> IntegerRoots {
    let deg = poly.len() - 1;
    let mut reduced = reduce(poly);
    let mut candidates: Vec<(BigInt, BigUint)> = Vec::new();
    let mut total = 0usize;
    for r in -bound..=bound {
        if reduced.len() == 1 {
            break;
        }
        let mut mult = 0u64;
        while reduced.len() > 1 && eval_mod(&reduced, r) == 0 {
            reduced = divide_mod(&reduced, r);
            mult += 1;
        }
        if mult > 0 {
            candidates.push((BigInt::from(r), BigUint::from(mult)));
            total += mult as usize;
        }
    }
    if total == deg && is_factorisation(poly, &candidates) {
        return IntegerRoots { roots: candidates, residual: vec![BigInt::one()] };
    }
    exact_roots(poly, bound)
}

/// Extracts all integer roots in `[-bound, bound]` with multiplicities.
///
/// For a characteristic polynomial, `bound` should be the matrix's largest
/// absolute row sum, which bounds every eigenvalue. Whatever remains after
/// removing those roots is reported as the residual factor.
pub fn integer_spectrum<S: Scalar>(
    poly: &[BigInt],
    bound: &BigInt,
    kind: SpectrumKind,
) -> Result<RootExtraction<S>, SpectralError> {
    match poly.last() {
        Some(lead) if lead.is_one() => {}
        _ => return Err(SpectralError::NotMonic),
    }
    let bound = bound.to_i64().ok_or(SpectralError::RootBoundTooLarge)?.abs();
    let IntegerRoots { roots, residual } = integer_roots(poly, bound);
    let found = SpectrumMultiset::from_pairs(kind, roots.iter().map(|(r, m)| (S::from_bigint(r), m.clone())));
    if residual.len() == 1 {
        Ok(RootExtraction::Integral(found))
    } else {
        Ok(RootExtraction::NonIntegral { found, residual })
    }
}
