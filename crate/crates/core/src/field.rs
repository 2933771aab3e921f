//! Exact arithmetic in GF(p^e).
//!
//! Elements are encoded as integers in `[0, q)`: the base-`p` digits of the
//! code, least significant first, are the coefficients of the residue
//! polynomial modulo the field's defining polynomial. Code `0` is zero and
//! code `1` is one, and iterating codes in increasing order gives the fixed
//! element order used by every enumeration in the crate.
//!
//! The defining polynomial for `e > 1` is the lexicographically smallest monic
//! irreducible polynomial of degree `e`, comparing coefficients from the
//! constant term upward, so encodings are reproducible across runs.

use std::fmt;

use crate::error::{Error, Result};
use crate::limits::MAX_FIELD_ORDER;

/// Fields up to this order get precomputed operation tables.
const TABLE_THRESHOLD: u32 = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    /// Wraps a code already known to lie in `[0, q)`.
    #[inline]
    pub(crate) const fn from_code_unchecked(code: u32) -> Self {
        Self(code)
    }

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// A finite field GF(q), q = p^e. Immutable after construction.
#[derive(Clone)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    /// Coefficients `c_0..=c_e` of the monic defining polynomial; `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl Field {
    /// Builds GF(p^e).
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e < 1 {
            return Err(Error::InvalidDegree(e));
        }
        let q = (p as u128)
            .checked_pow(e)
            .filter(|&q| q <= MAX_FIELD_ORDER as u128);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge {
                p,
                e,
                max: MAX_FIELD_ORDER,
            });
        };
        let p = p as u32;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, e as usize)
        };
        let mut field = Self {
            p,
            e,
            q: q as u32,
            modulus,
            tables: None,
        };
        if field.q <= TABLE_THRESHOLD {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// Builds the prime field GF(p).
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Builds GF(q) from a prime power `q`.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, e)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the defining polynomial from the constant term up.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The element with the given code.
    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code < self.q as u64 {
            Ok(FieldElement(code as u32))
        } else {
            Err(Error::ElementOutOfRange { code, q: self.q })
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        match &self.tables {
            Some(t) => FieldElement(t.add[(a.0 * self.q + b.0) as usize]),
            None => FieldElement(self.add_slow(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.neg[a.0 as usize]),
            None => FieldElement(self.neg_slow(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        match &self.tables {
            Some(t) => FieldElement(t.mul[(a.0 * self.q + b.0) as usize]),
            None => FieldElement(self.mul_slow(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => FieldElement(t.inv[a.0 as usize]),
            None => self.pow(a, (self.q - 2) as u64),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn digits(&self, mut code: u32) -> Vec<u32> {
        let mut out = vec![0; self.e as usize];
        for d in out.iter_mut() {
            *d = code % self.p;
            code /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&sum)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let neg: Vec<u32> = self
            .digits(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.undigits(&neg)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.e == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let e = self.e as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // x^e = -(c_0 + ... + c_{e-1} x^{e-1})
        for deg in (e..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (k, &m) in self.modulus[..e].iter().enumerate() {
                let idx = deg - e + k;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let reduced: Vec<u32> = prod[..e].iter().map(|&x| x as u32).collect();
        self.undigits(&reduced)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q;
        let mut add = vec![0; (q * q) as usize];
        let mut mul = vec![0; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = self.add_slow(a, b);
                mul[(a * q + b) as usize] = self.mul_slow(a, b);
            }
        }
        let neg = (0..q).map(|a| self.neg_slow(a)).collect();
        let mut inv = vec![0; q as usize];
        for a in 1..q {
            inv[a as usize] = (1..q)
                .find(|&b| mul[(a * q + b) as usize] == 1)
                .unwrap_or(0);
        }
        Tables { add, mul, neg, inv }
    }
}

/// Remainder of `f` modulo the monic polynomial `g` over F_p; coefficients low to high.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dg;
            for (k, &c) in g[..dg].iter().enumerate() {
                r[shift + k] = (r[shift + k] + (p - lead) * c as u64 % p) % p;
            }
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Monic polynomials of degree `deg` in lexicographic order of `(c_0, c_1, ...)`.
fn monic_polys(p: u32, deg: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(deg as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u32; deg + 1];
        // c_0 is the most significant digit of idx.
        for k in (0..deg).rev() {
            coeffs[k] = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        coeffs[deg] = 1;
        coeffs
    })
}

pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0)))
}

fn smallest_irreducible(p: u32, e: usize) -> Vec<u32> {
    monic_polys(p, e)
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}
