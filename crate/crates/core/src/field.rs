//! Arithmetic in GF(p^f) with a fixed modulus polynomial.
//!
//! Elements are encoded as integers in `[0, q)`: the coefficient vector of the
//! residue polynomial read as a base-`p` integer, constant term as the least
//! significant digit. Zero is `0` and one is `1` in every context.
//!
//! Quadratic extensions GF(q²) are built directly as degree-`2f` extensions of
//! the prime field; the subfield GF(q) is identified as the fixed points of
//! `x ↦ x^q` and kept as an explicit embedding table.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field for which log/antilog tables are precomputed.
pub const TABLE_LIMIT: u32 = 1 << 16;

/// Upper bound on q; indices must fit in `u32` with room for products.
const MAX_ORDER: u64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus coefficient {0} is out of range for the prime field")]
    BadCoefficient(u32),
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("field of order {0} is too large")]
    TooLarge(u64),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("field is not a quadratic extension")]
    NotQuadratic,
}

/// A field element as its canonical index. Only meaningful together with the
/// [`FieldCtx`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field: `{p, f, modulus: [c0..cf]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
}

#[derive(Debug, Clone)]
struct Tables {
    /// `exp[i] = g^i` for `i in 0..2(q-1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

/// GF(q) inside GF(q²), as the fixed field of `x ↦ x^q`.
#[derive(Debug, Clone)]
struct Subfield {
    order: u32,
    members: Vec<Elem>,
    contains: Vec<bool>,
}

/// Immutable arithmetic context for GF(p^f).
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    tables: Option<Tables>,
    primitive: Elem,
    subfield: Option<Subfield>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^f` as `(p, f)` when `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut f = 0;
    while rest % p == 0 {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

// Dense polynomials over GF(p), constant term first, no trailing zeros.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod_p(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a nonzero `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod_p(m[dm], p) as u64;
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] as u64 * lead_inv % p as u64;
            if c != 0 {
                let shift = top - dm;
                for (k, &mk) in m.iter().enumerate() {
                    let sub = c * mk as u64 % p as u64;
                    r[shift + k] = ((r[shift + k] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// `base^(p^k)` reduced modulo `m`, by repeated p-th powering.
    pub fn frobenius_power(base: &[u32], k: u32, m: &[u32], p: u32) -> Vec<u32> {
        let mut cur = rem(base, m, p);
        for _ in 0..k {
            let mut acc = vec![1u32];
            let mut sq = cur.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = rem(&mul(&acc, &sq, p), m, p);
                }
                sq = rem(&mul(&sq, &sq, p), m, p);
                e >>= 1;
            }
            cur = acc;
        }
        cur
    }
}

/// Irreducibility over GF(p): `gcd(x^(p^i) - x, m) = 1` for `1 ≤ i ≤ deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let mut m = modulus.to_vec();
    poly::trim(&mut m);
    if m.len() < 2 {
        return false;
    }
    let deg = (m.len() - 1) as u32;
    if deg == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    let mut xp = x.clone();
    for _ in 1..=deg / 2 {
        xp = poly::frobenius_power(&xp, 1, &m, p);
        let diff = poly::sub(&xp, &x, p);
        let g = poly::gcd(&m, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Least monic irreducible of degree `f`, comparing coefficient vectors
/// lexicographically with the constant term first.
pub fn default_modulus(p: u32, f: u32) -> Vec<u32> {
    let total = (p as u64).pow(f);
    for k in 0..total {
        // Most significant digit of `k` is the constant term.
        let mut coeffs = vec![0u32; f as usize + 1];
        let mut rest = k;
        for i in (0..f as usize).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[f as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    /// Builds GF(p^f). Without an explicit modulus the least monic
    /// irreducible (see [`default_modulus`]) is used.
    pub fn new(p: u32, f: u32, modulus: Option<Vec<u32>>) -> Result<Self, FieldError> {
        Self::build(p, f, modulus, true)
    }

    /// Same field, polynomial arithmetic only.
    pub fn new_untabled(p: u32, f: u32, modulus: Option<Vec<u32>>) -> Result<Self, FieldError> {
        Self::build(p, f, modulus, false)
    }

    /// GF(q) for a prime power `q`, default modulus.
    pub fn of_order(q: u32) -> Result<Self, FieldError> {
        let (p, f) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::new(p, f, None)
    }

    /// GF(q²) for `q = p^f`, built as a degree-`2f` extension of GF(p) with the
    /// subfield GF(q) marked.
    pub fn quadratic(p: u32, f: u32, modulus: Option<Vec<u32>>) -> Result<Self, FieldError> {
        if f == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let mut ctx = Self::new(p, 2 * f, modulus)?;
        ctx.mark_subfield(f);
        Ok(ctx)
    }

    /// GF(q²) for a prime power `q`.
    pub fn quadratic_of_order(q: u32) -> Result<Self, FieldError> {
        let (p, f) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::quadratic(p, f, None)
    }

    fn build(p: u32, f: u32, modulus: Option<Vec<u32>>, tabled: bool) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if f == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(f).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(FieldError::TooLarge(q64));
        }
        let q = q64 as u32;
        let modulus = match modulus {
            Some(m) => {
                if let Some(&bad) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::BadCoefficient(bad));
                }
                let mut trimmed = m.clone();
                poly::trim(&mut trimmed);
                let deg = trimmed.len().saturating_sub(1) as u32;
                if deg != f || m.len() != f as usize + 1 {
                    return Err(FieldError::DegreeMismatch { expected: f, found: deg });
                }
                if m[f as usize] != 1 {
                    return Err(FieldError::NotMonic);
                }
                if !is_irreducible(&m, p) {
                    return Err(FieldError::Reducible(m));
                }
                m
            }
            None => default_modulus(p, f),
        };
        let mut ctx = FieldCtx {
            p,
            f,
            q,
            modulus,
            pow_p: (0..f).map(|i| p.pow(i)).collect(),
            tables: None,
            primitive: Elem::ONE,
            subfield: None,
        };
        ctx.primitive = ctx.find_primitive();
        if tabled && q <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn find_primitive(&self) -> Elem {
        if self.q == 2 {
            return Elem::ONE;
        }
        let order = self.q - 1;
        let prime_factors = prime_factors(order);
        (2..self.q)
            .map(Elem)
            .find(|&x| {
                prime_factors
                    .iter()
                    .all(|&r| self.poly_pow(x, (order / r) as u64) != Elem::ONE)
            })
            .expect("multiplicative group is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = Elem::ONE;
        for i in 0..n {
            exp[i] = cur.0;
            exp[i + n] = cur.0;
            log[cur.index()] = i as u32;
            cur = self.poly_mul(cur, self.primitive);
        }
        Tables { exp, log }
    }

    fn mark_subfield(&mut self, base_degree: u32) {
        let order = self.p.pow(base_degree);
        let members: Vec<Elem> = self.elements().filter(|&x| self.pow(x, order as i64) == x).collect();
        let mut contains = vec![false; self.q as usize];
        for x in &members {
            contains[x.index()] = true;
        }
        debug_assert_eq!(members.len() as u32, order);
        self.subfield = Some(Subfield { order, members, contains });
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.f
    }

    /// Cardinality of the field.
    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, f: self.f, modulus: self.modulus.clone() }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(Elem)
    }

    /// Coefficient vector of `x`, constant term first, length `f`.
    pub fn coefficients(&self, x: Elem) -> Vec<u32> {
        let mut rest = x.0;
        (0..self.f)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Elem {
        Elem(coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c % self.p))
    }

    /// Image of the prime-field integer `n`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.f == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        for &w in &self.pow_p {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * w;
            x /= self.p;
            y /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        for &w in &self.pow_p {
            let d = (self.p - x % self.p) % self.p;
            out += d * w;
            x /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[a.index()] + t.log[b.index()]) as usize]),
            None => self.poly_mul(a, b),
        }
    }

    fn poly_mul(&self, a: Elem, b: Elem) -> Elem {
        let prod = poly::mul(&self.coefficients(a), &self.coefficients(b), self.p);
        self.from_coefficients(&poly::rem(&prod, &self.modulus, self.p))
    }

    fn poly_pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(acc, base);
            }
            base = self.poly_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let n = self.q - 1;
                Elem(t.exp[((n - t.log[a.index()]) % n) as usize])
            }
            None => self.poly_pow(a, (self.q - 2) as u64),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^e` for any integer exponent. Negative exponents go through the
    /// inverse; `0^e` for negative `e` is therefore an error in
    /// [`FieldCtx::try_pow`] and yields zero here.
    pub fn pow(&self, x: Elem, e: i64) -> Elem {
        self.try_pow(x, e).unwrap_or(Elem::ZERO)
    }

    pub fn try_pow(&self, x: Elem, e: i64) -> Result<Elem, FieldError> {
        if x.is_zero() {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => Err(FieldError::ZeroInverse),
                std::cmp::Ordering::Equal => Ok(Elem::ONE),
                std::cmp::Ordering::Greater => Ok(Elem::ZERO),
            };
        }
        let n = (self.q - 1) as i64;
        let e = e.rem_euclid(n) as u64;
        Ok(match &self.tables {
            Some(t) => Elem(t.exp[((t.log[x.index()] as u64 * e) % n as u64) as usize]),
            None => self.poly_pow(x, e),
        })
    }

    /// `x^(p^k)`; `k` is taken modulo `f`, so negative `k` inverts.
    pub fn frobenius(&self, x: Elem, k: i64) -> Elem {
        let k = k.rem_euclid(self.f as i64) as u32;
        let mut e = 1u64;
        for _ in 0..k {
            e *= self.p as u64;
        }
        if x.is_zero() {
            return x;
        }
        let n = (self.q - 1) as u64;
        match &self.tables {
            Some(t) => Elem(t.exp[((t.log[x.index()] as u64 * (e % n)) % n) as usize]),
            None => self.poly_pow(x, e),
        }
    }

    /// The least-index element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: Elem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let n = (self.q - 1) as u64;
        let mut order = n;
        for r in prime_factors(self.q - 1) {
            while order % r as u64 == 0 && self.pow(x, (order / r as u64) as i64) == Elem::ONE {
                order /= r as u64;
            }
        }
        Some(order)
    }

    pub fn is_square(&self, x: Elem) -> bool {
        if x.is_zero() || self.p == 2 {
            return true;
        }
        self.pow(x, ((self.q - 1) / 2) as i64) == Elem::ONE
    }

    /// Square root, when one exists (smallest index among the roots).
    pub fn sqrt(&self, x: Elem) -> Option<Elem> {
        self.elements().find(|&r| self.mul(r, r) == x)
    }

    // Quadratic-extension structure.

    pub fn is_quadratic(&self) -> bool {
        self.subfield.is_some()
    }

    /// Order of the base field GF(q) when this is GF(q²).
    pub fn base_order(&self) -> Result<u32, FieldError> {
        self.subfield.as_ref().map(|s| s.order).ok_or(FieldError::NotQuadratic)
    }

    /// Elements of the base subfield, in increasing index order.
    pub fn base_elements(&self) -> Result<&[Elem], FieldError> {
        self.subfield.as_ref().map(|s| s.members.as_slice()).ok_or(FieldError::NotQuadratic)
    }

    pub fn in_base(&self, x: Elem) -> Result<bool, FieldError> {
        self.subfield.as_ref().map(|s| s.contains[x.index()]).ok_or(FieldError::NotQuadratic)
    }

    /// `x^q`.
    pub fn conj(&self, x: Elem) -> Result<Elem, FieldError> {
        if self.subfield.is_none() {
            return Err(FieldError::NotQuadratic);
        }
        Ok(self.frobenius(x, (self.f / 2) as i64))
    }

    /// `x^(q+1)`.
    pub fn norm(&self, x: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(x, self.conj(x)?))
    }

    /// `x + x^q`.
    pub fn trace(&self, x: Elem) -> Result<Elem, FieldError> {
        Ok(self.add(x, self.conj(x)?))
    }

    /// `(x^q, x^(q+1), x + x^q)`.
    pub fn conj_norm_trace(&self, x: Elem) -> Result<(Elem, Elem, Elem), FieldError> {
        let c = self.conj(x)?;
        Ok((c, self.mul(x, c), self.add(x, c)))
    }

    /// The `q + 1` elements of norm one.
    pub fn norm_one(&self) -> Result<Vec<Elem>, FieldError> {
        let mut out = Vec::new();
        for x in self.nonzero() {
            if self.norm(x)? == Elem::ONE {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Checked wrapper tying an index to this context.
    pub fn element(&self, index: u32) -> FieldElement<'_> {
        assert!(index < self.q, "index {index} out of range for GF({})", self.q);
        FieldElement { ctx: self, elem: Elem(index) }
    }
}

pub(crate) fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
    Pow(i64),
}

/// An element bound to its field; mixed-field operations are errors.
#[derive(Clone, Copy)]
pub struct FieldElement<'a> {
    ctx: &'a FieldCtx,
    elem: Elem,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.ctx.q, self.elem.0)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.elem == other.elem
    }
}

impl<'a> FieldElement<'a> {
    pub fn elem(self) -> Elem {
        self.elem
    }

    pub fn index(self) -> u32 {
        self.elem.0
    }

    pub fn ctx(self) -> &'a FieldCtx {
        self.ctx
    }

    fn same(self, other: Self) -> Result<(), FieldError> {
        if std::ptr::eq(self.ctx, other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    fn wrap(self, elem: Elem) -> Self {
        FieldElement { ctx: self.ctx, elem }
    }

    pub fn try_add(self, other: Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(self.wrap(self.ctx.add(self.elem, other.elem)))
    }

    pub fn try_mul(self, other: Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(self.wrap(self.ctx.mul(self.elem, other.elem)))
    }

    pub fn try_inv(self) -> Result<Self, FieldError> {
        Ok(self.wrap(self.ctx.inv(self.elem)?))
    }

    pub fn try_pow(self, e: i64) -> Result<Self, FieldError> {
        Ok(self.wrap(self.ctx.try_pow(self.elem, e)?))
    }

    pub fn frobenius(self, k: i64) -> Self {
        self.wrap(self.ctx.frobenius(self.elem, k))
    }

    /// Applies `op` to `self` and, for binary operations, `rhs`.
    pub fn arith(self, op: ArithOp, rhs: Option<Self>) -> Result<Self, FieldError> {
        match op {
            ArithOp::Add => self.try_add(rhs.ok_or(FieldError::ContextMismatch)?),
            ArithOp::Mul => self.try_mul(rhs.ok_or(FieldError::ContextMismatch)?),
            ArithOp::Neg => Ok(-self),
            ArithOp::Inv => self.try_inv(),
            ArithOp::Pow(e) => self.try_pow(e),
        }
    }
}

impl<'a> Add for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn add(self, rhs: Self) -> Self::Output {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl<'a> Sub for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.try_add(-rhs).expect("field mismatch")
    }
}

impl<'a> Mul for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl<'a> Neg for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn neg(self) -> Self::Output {
        self.wrap(self.ctx.neg(self.elem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exponentiation by repeated multiplication; independent of the tables.
    fn naive_pow(ctx: &FieldCtx, x: Elem, e: u64) -> Elem {
        (0..e).fold(Elem::ONE, |acc, _| ctx.poly_mul(acc, x))
    }

    #[test]
    fn gf2_prime_field() {
        let ctx = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(ctx.modulus(), &[0, 1]);
        assert_eq!(ctx.order(), 2);
        assert_eq!(ctx.primitive_element(), Elem::ONE);
        for x in ctx.elements() {
            assert_eq!(ctx.frobenius(x, 1), x);
        }
    }

    #[test]
    fn gf4_relations() {
        let ctx = FieldCtx::new(2, 2, Some(vec![1, 1, 1])).unwrap();
        assert_eq!(ctx.modulus(), FieldCtx::new(2, 2, None).unwrap().modulus());
        let w = Elem(2);
        let w1 = Elem(3);
        assert_eq!(ctx.mul(w, w1), Elem::ONE);
        assert_eq!(ctx.frobenius(w, 1), w1);
        assert_eq!(ctx.primitive_element(), w);
        assert_eq!(ctx.multiplicative_order(w), Some(3));
    }

    #[test]
    fn gf27_frobenius_fixes_everything_after_full_cycle() {
        let ctx = FieldCtx::new(3, 3, None).unwrap();
        for x in ctx.elements() {
            assert_eq!(naive_pow(&ctx, x, 27), x);
            assert_eq!(ctx.frobenius(ctx.frobenius(x, 1), 2), x);
            assert_eq!(ctx.frobenius(x, 3), x);
        }
    }

    #[test]
    fn gf9_primitive_has_order_8() {
        let ctx = FieldCtx::new(3, 2, None).unwrap();
        let w = ctx.primitive_element();
        assert_eq!(naive_pow(&ctx, w, 8), Elem::ONE);
        for k in 1..8 {
            assert_ne!(naive_pow(&ctx, w, k), Elem::ONE);
        }
    }

    #[test]
    fn gf25_primitive_is_least_of_full_order() {
        let ctx = FieldCtx::new(5, 2, None).unwrap();
        let order_of = |x: Elem| (1..=24u64).find(|&k| naive_pow(&ctx, x, k) == Elem::ONE).unwrap();
        let expected = ctx.nonzero().find(|&x| order_of(x) == 24).unwrap();
        assert_eq!(ctx.primitive_element(), expected);
    }

    #[test]
    fn additive_inverse_and_negative_powers() {
        let ctx = FieldCtx::new(5, 2, None).unwrap();
        for x in ctx.elements() {
            assert_eq!(ctx.add(x, ctx.neg(x)), Elem::ZERO);
            if !x.is_zero() {
                assert_eq!(ctx.mul(x, ctx.pow(x, -3)), ctx.pow(x, -2));
                assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), Elem::ONE);
            }
        }
        assert_eq!(ctx.inv(Elem::ZERO), Err(FieldError::ZeroInverse));
        assert_eq!(ctx.try_pow(Elem::ZERO, -1), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        for (p, f) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let a = FieldCtx::new(p, f, None).unwrap();
            let b = FieldCtx::new_untabled(p, f, None).unwrap();
            assert!(a.has_tables() && !b.has_tables());
            for x in a.elements() {
                for y in a.elements() {
                    assert_eq!(a.mul(x, y), b.mul(x, y));
                }
                assert_eq!(a.frobenius(x, 1), b.frobenius(x, 1));
                if !x.is_zero() {
                    assert_eq!(a.inv(x), b.inv(x));
                }
            }
        }
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(FieldCtx::new(4, 1, None), Err(FieldError::NotPrime(4)));
        assert_eq!(FieldCtx::new(2, 2, Some(vec![1, 0, 1])), Err(FieldError::Reducible(vec![1, 0, 1])));
        assert!(matches!(FieldCtx::new(2, 3, Some(vec![1, 1, 1])), Err(FieldError::DegreeMismatch { .. })));
        assert_eq!(FieldCtx::new(3, 2, Some(vec![1, 0, 2])), Err(FieldError::NotMonic));
        assert_eq!(FieldCtx::new(2, 0, None), Err(FieldError::ZeroDegree));
    }

    #[test]
    fn irreducibility_matches_root_test_for_small_degree() {
        for p in [2u32, 3, 5] {
            for f in 2..=3u32 {
                for k in 0..p.pow(f) {
                    let mut m: Vec<u32> = (0..f).map(|i| (k / p.pow(i)) % p).collect();
                    m.push(1);
                    let has_root = (0..p).any(|x| {
                        m.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) == 0
                    });
                    assert_eq!(is_irreducible(&m, p), !has_root, "{m:?} over GF({p})");
                }
            }
        }
    }

    #[test]
    fn rebuild_is_deterministic() {
        let a = FieldCtx::new(3, 4, None).unwrap();
        let b = FieldCtx::new(3, 4, Some(a.modulus().to_vec())).unwrap();
        assert_eq!(a.primitive_element(), b.primitive_element());
        for x in a.elements().step_by(7) {
            for y in a.elements().step_by(11) {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn gf4_over_gf2_conj_norm_trace() {
        let ctx = FieldCtx::quadratic(2, 1, None).unwrap();
        let w = Elem(2);
        assert_eq!(ctx.conj_norm_trace(w).unwrap(), (Elem(3), Elem::ONE, Elem::ONE));
        assert_eq!(ctx.base_elements().unwrap(), &[Elem(0), Elem(1)]);
    }

    #[test]
    fn gf9_norm_one_count() {
        let ctx = FieldCtx::quadratic(3, 1, None).unwrap();
        assert_eq!(ctx.norm_one().unwrap().len(), 4);
    }

    #[test]
    fn conj_requires_quadratic_context() {
        let ctx = FieldCtx::new(3, 2, None).unwrap();
        assert_eq!(ctx.conj(Elem::ONE), Err(FieldError::NotQuadratic));
    }

    #[test]
    fn conj_is_an_involutory_automorphism_fixing_the_base() {
        for (p, f) in [(2u32, 1u32), (2, 2), (3, 1), (2, 3), (5, 1), (3, 2)] {
            let ctx = FieldCtx::quadratic(p, f, None).unwrap();
            let q = p.pow(f);
            let mut fixed = 0;
            for x in ctx.elements() {
                let cx = ctx.conj(x).unwrap();
                assert_eq!(ctx.conj(cx).unwrap(), x);
                if cx == x {
                    fixed += 1;
                    assert!(ctx.in_base(x).unwrap());
                }
                for y in ctx.elements() {
                    let cy = ctx.conj(y).unwrap();
                    assert_eq!(ctx.conj(ctx.mul(x, y)).unwrap(), ctx.mul(cx, cy));
                    assert_eq!(ctx.conj(ctx.add(x, y)).unwrap(), ctx.add(cx, cy));
                }
                let (_, n, t) = ctx.conj_norm_trace(x).unwrap();
                assert!(ctx.in_base(n).unwrap() && ctx.in_base(t).unwrap());
            }
            assert_eq!(fixed, q);
        }
    }

    #[test]
    fn norm_multiplicative_trace_additive_both_surjective() {
        for (p, f) in [(2u32, 2u32), (3, 1), (5, 1)] {
            let ctx = FieldCtx::quadratic(p, f, None).unwrap();
            let mut norms = std::collections::BTreeSet::new();
            let mut traces = std::collections::BTreeSet::new();
            for x in ctx.elements() {
                norms.insert(ctx.norm(x).unwrap());
                traces.insert(ctx.trace(x).unwrap());
                for y in ctx.elements() {
                    assert_eq!(ctx.norm(ctx.mul(x, y)).unwrap(), ctx.mul(ctx.norm(x).unwrap(), ctx.norm(y).unwrap()));
                    assert_eq!(ctx.trace(ctx.add(x, y)).unwrap(), ctx.add(ctx.trace(x).unwrap(), ctx.trace(y).unwrap()));
                }
            }
            let base: std::collections::BTreeSet<_> = ctx.base_elements().unwrap().iter().copied().collect();
            assert_eq!(norms, base);
            assert_eq!(traces, base);
        }
    }

    #[test]
    fn checked_elements_reject_mixed_fields() {
        let a = FieldCtx::new(2, 2, None).unwrap();
        let b = FieldCtx::new(3, 1, None).unwrap();
        let x = a.element(2);
        let y = b.element(1);
        assert_eq!(x.try_add(y), Err(FieldError::ContextMismatch));
        assert_eq!((x * a.element(3)).index(), 1);
        assert_eq!(x.arith(ArithOp::Pow(3), None).unwrap().index(), 1);
        assert_eq!(a.element(0).arith(ArithOp::Inv, None), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
