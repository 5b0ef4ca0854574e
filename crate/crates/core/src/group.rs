//! The groups `G(p,m,n) = <x, y | x^(p^m) = y^(p^n) = [x,y]^p = 1, [x,y] central>`.
//!
//! # Normal form
//!
//! Write `z = [x, y] = x^-1 y^-1 x y`. Because `z` is central, `x y = y x z`,
//! so `y x = x y z^-1` and, by induction, `y^b x^a' = x^a' y^b z^(-a' b)`.
//! Every element therefore has the form `x^a y^b z^c` and
//!
//! ```text
//! (a, b, c) * (a', b', c') = (a + a' mod p^m, b + b' mod p^n, c + c' - a' b mod p)
//! ```
//!
//! The correction term `a' b` only matters modulo `p`, and `p` divides both
//! `p^m` and `p^n`, so the law is well defined on residues. The set
//! `Z_{p^m} x Z_{p^n} x Z_p` with this law is a group satisfying every defining
//! relation (checked exhaustively in the tests), generated by `x = (1,0,0)` and
//! `y = (0,1,0)`, of order `p^(m+n+1)`. The presented group has at most that
//! many elements, so the two coincide.
//!
//! `G(p,m,n)` and `G(p,n,m)` are isomorphic: `x -> y, y -> x` sends `[x,y]` to
//! `[y,x] = [x,y]^-1`, which is again central of order `p`, so the relations are
//! preserved. [`make_params`] can therefore canonicalize to `m >= n`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

/// Default cap on the group order for anything that enumerates elements.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("{name} = {value} is out of range (must be at least 1)")]
    OutOfRange { name: &'static str, value: u32 },
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: BigUint, cap: BigUint },
}

/// Trial division; `p` is tiny for every group we can enumerate.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A validated parameter triple `(p, m, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupParams {
    p: u64,
    m: u32,
    n: u32,
    order: BigUint,
    canonicalized: bool,
}

impl GroupParams {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p^(m+n+1)`.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Whether `m` and `n` were swapped on construction.
    pub fn canonicalized(&self) -> bool {
        self.canonicalized
    }

    /// `m < n`: outside the range where the closed-form decomposition is
    /// known to hold.
    pub fn is_swapped_range(&self) -> bool {
        self.m < self.n
    }

    /// The isomorphic parameters with `m` and `n` exchanged.
    pub fn swapped(&self) -> GroupParams {
        GroupParams {
            p: self.p,
            m: self.n,
            n: self.m,
            order: self.order.clone(),
            canonicalized: false,
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({}, {}, {})", self.p, self.m, self.n)
    }
}

/// Validates `(p, m, n)` against the default order cap.
pub fn make_params(p: u64, m: u32, n: u32, canonicalize: bool) -> Result<GroupParams, GroupError> {
    make_params_with_cap(p, m, n, canonicalize, Some(&BigUint::from(DEFAULT_ORDER_CAP)))
}

/// Validates `(p, m, n)`; `cap = None` accepts any order (formula-only use).
pub fn make_params_with_cap(
    p: u64,
    m: u32,
    n: u32,
    canonicalize: bool,
    cap: Option<&BigUint>,
) -> Result<GroupParams, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if m < 1 {
        return Err(GroupError::OutOfRange { name: "m", value: m });
    }
    if n < 1 {
        return Err(GroupError::OutOfRange { name: "n", value: n });
    }
    let order = num_traits::pow(BigUint::from(p), (m + n + 1) as usize);
    if let Some(cap) = cap {
        if &order > cap {
            return Err(GroupError::OrderCapExceeded { order, cap: cap.clone() });
        }
    }
    let (m, n, canonicalized) = if canonicalize && m < n { (n, m, true) } else { (m, n, false) };
    Ok(GroupParams { p, m, n, order, canonicalized })
}

/// `x^a y^b z^c` with `0 <= a < p^m`, `0 <= b < p^n`, `0 <= c < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { a: 0, b: 0, c: 0 };

    pub fn new(a: u64, b: u64, c: u64) -> Self {
        GroupElement { a, b, c }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{} y^{} z^{}", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: GroupElement,
    /// Sorted by enumeration index; the representative is the first member.
    pub members: Vec<GroupElement>,
    pub is_central: bool,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// An enumerable instance of `G(p,m,n)`, i.e. one whose order fits under a cap.
#[derive(Debug, Clone)]
pub struct Group {
    params: GroupParams,
    p: u64,
    x_order: u64,
    y_order: u64,
    order: u64,
}

impl Group {
    pub fn new(params: &GroupParams) -> Result<Self, GroupError> {
        Self::with_cap(params, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(params: &GroupParams, cap: u64) -> Result<Self, GroupError> {
        let order = params
            .order()
            .to_u64()
            .filter(|&o| o <= cap)
            .ok_or_else(|| GroupError::OrderCapExceeded {
                order: params.order().clone(),
                cap: BigUint::from(cap),
            })?;
        let p = params.p();
        Ok(Group {
            params: params.clone(),
            p,
            x_order: p.pow(params.m()),
            y_order: p.pow(params.n()),
            order,
        })
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn x(&self) -> GroupElement {
        GroupElement::new(1 % self.x_order, 0, 0)
    }

    pub fn y(&self) -> GroupElement {
        GroupElement::new(0, 1 % self.y_order, 0)
    }

    /// The central commutator `[x, y]`.
    pub fn z(&self) -> GroupElement {
        GroupElement::new(0, 0, 1)
    }

    pub fn is_valid(&self, g: &GroupElement) -> bool {
        g.a < self.x_order && g.b < self.y_order && g.c < self.p
    }

    // u < p^m and v < p^n, so u * v < order and cannot overflow.
    #[inline]
    fn mul_mod_p(&self, u: u64, v: u64) -> u64 {
        if self.p == 2 {
            u & v & 1
        } else {
            (u * v) % self.p
        }
    }

    #[inline]
    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let p = self.p;
        let twist = self.mul_mod_p(h.a, g.b);
        let mut a = g.a + h.a;
        if a >= self.x_order {
            a -= self.x_order;
        }
        let mut b = g.b + h.b;
        if b >= self.y_order {
            b -= self.y_order;
        }
        let mut c = g.c + h.c + p - twist;
        while c >= p {
            c -= p;
        }
        GroupElement { a, b, c }
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let p = self.p;
        let ab = self.mul_mod_p(g.a, g.b);
        GroupElement {
            a: (self.x_order - g.a) % self.x_order,
            b: (self.y_order - g.b) % self.y_order,
            c: (2 * p - g.c - ab) % p,
        }
    }

    pub fn pow(&self, g: &GroupElement, mut k: u64) -> GroupElement {
        let mut base = *g;
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// `g^-1 h^-1 g h`.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let gi = self.inverse(g);
        let hi = self.inverse(h);
        self.multiply(&self.multiply(&gi, &hi), &self.multiply(g, h))
    }

    /// `h^-1 g h`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.multiply(&self.multiply(&self.inverse(h), g), h)
    }

    pub fn commute(&self, g: &GroupElement, h: &GroupElement) -> bool {
        self.multiply(g, h) == self.multiply(h, g)
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        ((g.a * self.y_order + g.b) * self.p + g.c) as usize
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        let i = index as u64;
        GroupElement {
            a: i / (self.y_order * self.p),
            b: (i / self.p) % self.y_order,
            c: i % self.p,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(move |i| self.element_at(i))
    }

    /// Elements commuting with both generators; since `x` and `y` generate
    /// the group, these are exactly the central elements.
    pub fn center(&self) -> Vec<GroupElement> {
        let (x, y) = (self.x(), self.y());
        self.elements()
            .filter(|g| self.commute(g, &x) && self.commute(g, &y))
            .collect()
    }

    /// Conjugation orbits, found by closing each unvisited element under
    /// conjugation by `x` and `y`. Conjugation by a product is the composite of
    /// the conjugations, and `x^-1`, `y^-1` are positive powers of `x`, `y`, so
    /// generator-only closure reaches the whole orbit.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let gens = [self.x(), self.y()];
        let mut seen = vec![false; self.order as usize];
        let mut classes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.order as usize {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let rep = self.element_at(start);
            let mut members = vec![rep];
            stack.push(rep);
            while let Some(g) = stack.pop() {
                for h in &gens {
                    let c = self.conjugate(&g, h);
                    let idx = self.index_of(&c);
                    if !seen[idx] {
                        seen[idx] = true;
                        members.push(c);
                        stack.push(c);
                    }
                }
            }
            members.sort_by_key(|g| self.index_of(g));
            classes.push(ConjugacyClass {
                representative: rep,
                is_central: members.len() == 1,
                members,
            });
        }
        classes
    }
}

/// Center of `G(p,m,n)` under the default order cap.
pub fn center(params: &GroupParams) -> Result<Vec<GroupElement>, GroupError> {
    Ok(Group::new(params)?.center())
}

/// Conjugacy classes of `G(p,m,n)` under the default order cap.
pub fn conjugacy_classes(params: &GroupParams) -> Result<Vec<ConjugacyClass>, GroupError> {
    Ok(Group::new(params)?.conjugacy_classes())
}

/// `p^(m+n-2) (p^2 - 1)`, the number of noncentral classes.
pub fn noncentral_class_count(params: &GroupParams) -> BigUint {
    let p = BigUint::from(params.p());
    let k = (params.m() + params.n()) as usize - 2;
    num_traits::pow(p.clone(), k) * (&p * &p - BigUint::one())
}
