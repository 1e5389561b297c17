//! Finite fields `F_q`, `q = p^m`, backed by exp/log tables over a fixed
//! primitive element.
//!
//! Elements are encoded as integers in `0..q`. For prime fields the index is
//! the residue itself. For extension fields the index is the base-`p` digit
//! string of the polynomial coefficients, constant term in the least
//! significant digit. Index 0 is always zero and index 1 is always one.
//!
//! The primitive element is chosen deterministically so that every matrix
//! built on top of a field is reproducible:
//!
//! * `m = 1`: the smallest integer generating `F_p^*`;
//! * `m > 1`: the class of the variable `x` modulo the first monic modulus of
//!   degree `m` (ordered by the coefficient tuple `(c_0, .., c_{m-1})`) for
//!   which `x` has multiplicative order `q - 1`.

use std::fmt;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Extension fields with at most this many elements get a full addition table.
const ADD_TABLE_LIMIT: u32 = 1 << 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power of order at least 3")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// An element of some [`FiniteField`], stored by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw index. The caller is responsible for `index < q`; use
    /// [`FiniteField::element`] for a checked conversion.
    #[inline]
    pub const fn from_index(index: u32) -> Self {
        FieldElement(index)
    }

    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
enum Addition {
    Prime,
    Binary,
    Table(Vec<u32>),
    Digits,
}

/// Arithmetic context for `F_q`. Immutable once built.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    alpha: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    addition: Addition,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        // construction is deterministic in q
        self.q == other.q
    }
}

impl Eq for FiniteField {}

/// Splits `q` into `(p, m)` with `q = p^m`, `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        p = q;
    }
    let mut rest = q;
    let mut m = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

/// Builds `F_q` with its canonical primitive element.
pub fn make_field(q: u64) -> Result<FiniteField, FieldError> {
    FiniteField::new(q)
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if q < 3 {
            return Err(FieldError::NotPrimePower(q));
        }
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > MAX_ORDER as u64 {
            return Err(FieldError::TooLarge(q));
        }
        let q = q as u32;
        let (modulus, alpha, exp) = if m == 1 {
            let (alpha, exp) = prime_generator(p);
            (vec![], alpha, exp)
        } else {
            primitive_extension(p, m)
        };
        let mut log = vec![0u32; q as usize];
        for (e, &x) in exp.iter().enumerate() {
            log[x as usize] = e as u32;
        }
        let addition = if m == 1 {
            Addition::Prime
        } else if p == 2 {
            Addition::Binary
        } else if q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = digit_add(p, a, b);
                }
            }
            Addition::Table(table)
        } else {
            Addition::Digits
        };
        Ok(FiniteField {
            p,
            m,
            q,
            modulus,
            alpha,
            exp,
            log,
            addition,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Size of the multiplicative group, `q - 1`.
    pub fn order_star(&self) -> u32 {
        self.q - 1
    }

    /// Coefficients `c_0..c_m` (low to high, monic) of the defining modulus;
    /// empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element.
    pub fn alpha(&self) -> FieldElement {
        FieldElement(self.alpha)
    }

    /// `exp_table()[e] = alpha^e` for `e` in `0..q-1`.
    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    /// Discrete logarithm of a nonzero element.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// Checked conversion from an index.
    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.q).then_some(FieldElement(index))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(match &self.addition {
            Addition::Prime => {
                let s = a.0 + b.0;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            Addition::Binary => a.0 ^ b.0,
            Addition::Table(t) => t[(a.0 * self.q + b.0) as usize],
            Addition::Digits => digit_add(self.p, a.0, b.0),
        })
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.m == 1 {
            FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else if self.p == 2 {
            a
        } else {
            let mut out = 0;
            let mut place = 1;
            let mut rest = a.0;
            while rest > 0 {
                let d = rest % self.p;
                out += ((self.p - d) % self.p) * place;
                place *= self.p;
                rest /= self.p;
            }
            FieldElement(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let e = self.log[a.0 as usize] + self.log[b.0 as usize];
        let n = self.q - 1;
        FieldElement(self.exp[(if e >= n { e - n } else { e }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(FieldElement(
            self.exp[((n - self.log[a.0 as usize]) % n) as usize],
        ))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `alpha^(e mod (q-1))`; negative exponents are allowed.
    #[inline]
    pub fn alpha_pow(&self, e: i64) -> FieldElement {
        let n = (self.q - 1) as i64;
        FieldElement(self.exp[e.rem_euclid(n) as usize])
    }

    /// `a^e` by square-and-multiply, negative `e` through the inverse.
    /// `0^0 = 1`; `0^e` for negative `e` is a division by zero.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        let base = if e < 0 { self.inv(a)? } else { a };
        let mut e = e.unsigned_abs();
        let mut acc = FieldElement::ONE;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        Ok(acc)
    }

    /// `(-1)^r` as a field element.
    pub fn minus_one_pow(&self, r: usize) -> FieldElement {
        if r.is_multiple_of(2) {
            FieldElement::ONE
        } else {
            self.neg(FieldElement::ONE)
        }
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.p as i64) as u32)
    }
}

fn digit_add(p: u32, mut a: u32, mut b: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}

fn prime_generator(p: u32) -> (u32, Vec<u32>) {
    let n = p - 1;
    for g in 2..p.max(3) {
        let mut exp = Vec::with_capacity(n as usize);
        let mut x = 1u64;
        let mut ok = true;
        for e in 0..n {
            if e > 0 && x == 1 {
                ok = false;
                break;
            }
            exp.push(x as u32);
            x = x * g as u64 % p as u64;
        }
        if ok && x == 1 {
            return (g, exp);
        }
    }
    // p = 2 is rejected earlier; for p = 3 the loop finds 2.
    unreachable!("F_{p}^* has a generator")
}

/// Multiplies the digit vector `v` (length m, low to high) by `x` modulo the
/// monic polynomial with low coefficients `low`.
fn times_x(p: u32, low: &[u32], v: &mut [u32]) {
    let m = v.len();
    let top = v[m - 1];
    for i in (1..m).rev() {
        v[i] = v[i - 1];
    }
    v[0] = 0;
    if top != 0 {
        // x^m = -(c_0 + .. + c_{m-1} x^{m-1})
        for i in 0..m {
            v[i] = (v[i] + (p - low[i]) * top) % p;
        }
    }
}

fn digits_to_index(p: u32, v: &[u32]) -> u32 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn primitive_extension(p: u32, m: u32) -> (Vec<u32>, u32, Vec<u32>) {
    let m = m as usize;
    let q = p.pow(m as u32);
    let n = (q - 1) as usize;
    // Candidate moduli in lexicographic order of (c_0, .., c_{m-1}), c_0 first.
    for code in 0..p.pow(m as u32) {
        let mut low = vec![0u32; m];
        let mut rest = code;
        for i in (0..m).rev() {
            low[i] = rest % p;
            rest /= p;
        }
        if low[0] == 0 {
            continue;
        }
        let mut v = vec![0u32; m];
        v[0] = 1;
        let mut exp = Vec::with_capacity(n);
        let mut primitive = true;
        for e in 0..n {
            let idx = digits_to_index(p, &v);
            if e > 0 && idx == 1 {
                primitive = false;
                break;
            }
            exp.push(idx);
            times_x(p, &low, &mut v);
        }
        // x^(q-1) = 1 with no earlier return to 1: x has order q-1, so the
        // quotient ring has q-1 units and is a field.
        if primitive && digits_to_index(p, &v) == 1 {
            let mut modulus = low;
            modulus.push(1);
            return (modulus, p, exp);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}
