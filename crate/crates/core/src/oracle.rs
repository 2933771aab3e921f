//! Brute-force ground truth.
//!
//! [`ghw_definitional`] works straight from the definition: every
//! `r`-dimensional subcode is enumerated through the message space and its
//! support is the union of its basis codewords' supports. It never forms a
//! dual subspace or consults the complex, so it shares no logic with the
//! intersection search in [`crate::code`].

use rayon::prelude::*;

use crate::code::{LinearCode, Method, Provenance, WeightHierarchy};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::limits::{checked_pow, Limits};
use crate::linalg::{enumerate_subspaces, gaussian_binomial, pivot_cells, rref, Matrix, Subspace};

/// Precomputed supports are used while `q^k · words` stays below this.
const SUPPORT_TABLE_LIMIT: u128 = 1 << 24;

type Bits = Vec<u64>;

/// Supports of codewords, either tabulated per message or computed on demand.
struct Supports<'a> {
    field: &'a Field,
    basis: Matrix,
    words: usize,
    table: Option<Vec<Bits>>,
}

impl<'a> Supports<'a> {
    fn new(field: &'a Field, basis: Matrix) -> Result<Self> {
        let words = basis.cols().div_ceil(64);
        let k = basis.rows();
        let q = field.order() as u64;
        let count = checked_pow(q, k as u32)?;
        let mut s = Self {
            field,
            basis,
            words,
            table: None,
        };
        if count.saturating_mul(words as u128) <= SUPPORT_TABLE_LIMIT {
            let table = (0..count as u64)
                .map(|idx| {
                    let msg = decode(idx, k, q);
                    s.codeword_support(&msg)
                })
                .collect();
            s.table = Some(table);
        }
        Ok(s)
    }

    fn codeword_support(&self, msg: &[FieldElement]) -> Bits {
        let word = self.basis.left_mul_vec(self.field, msg);
        let mut bits = vec![0u64; self.words];
        for (j, x) in word.iter().enumerate() {
            if !x.is_zero() {
                bits[j / 64] |= 1 << (j % 64);
            }
        }
        bits
    }

    /// Size of the union of the supports of `rows` as codewords.
    fn union_weight(&self, rows: &Matrix, scratch: &mut Bits) -> u32 {
        scratch.iter_mut().for_each(|w| *w = 0);
        let q = self.field.order() as u64;
        for row in rows.row_iter() {
            match &self.table {
                Some(t) => {
                    let idx = encode(row, q);
                    scratch
                        .iter_mut()
                        .zip(&t[idx as usize])
                        .for_each(|(a, b)| *a |= b);
                }
                None => {
                    let b = self.codeword_support(row);
                    scratch.iter_mut().zip(&b).for_each(|(a, b)| *a |= b);
                }
            }
        }
        scratch.iter().map(|w| w.count_ones()).sum()
    }
}

/// Message with the first coordinate most significant.
fn decode(mut idx: u64, k: usize, q: u64) -> Vec<FieldElement> {
    let mut v = vec![FieldElement::ZERO; k];
    for slot in v.iter_mut().rev() {
        *slot = FieldElement::from_code_unchecked((idx % q) as u32);
        idx /= q;
    }
    v
}

fn encode(v: &[FieldElement], q: u64) -> u64 {
    v.iter().fold(0, |acc, x| acc * q + x.code() as u64)
}

/// `d_r` as the least support size over all `r`-dimensional subcodes.
pub fn ghw_definitional(code: &LinearCode, r: usize, limits: &Limits) -> Result<u128> {
    let supports = definitional_setup(code, r, limits)?;
    definitional_min(&supports, r)
}

/// All of `d_1, …, d_k` by [`ghw_definitional`].
pub fn hierarchy_definitional(code: &LinearCode, limits: &Limits) -> Result<WeightHierarchy> {
    let k = code.k();
    let supports = definitional_setup(code, 1, limits)?;
    let mut values = Vec::with_capacity(k);
    for r in 1..=k {
        limits.check(gaussian_binomial(k, r, code.field().order() as u64)?)?;
        values.push(definitional_min(&supports, r)?);
    }
    Ok(WeightHierarchy {
        values,
        provenance: vec![Provenance::Definitional; k],
        method: Method::Definitional,
        spec: code.spec().clone(),
    })
}

fn definitional_setup<'a>(code: &'a LinearCode, r: usize, limits: &Limits) -> Result<Supports<'a>> {
    let field = code.field();
    let reduced = rref(field, code.generator());
    let k = reduced.rank;
    if r == 0 || r > k {
        return Err(Error::RankOutOfRange { r, k });
    }
    limits.check(gaussian_binomial(k, r, field.order() as u64)?)?;
    Supports::new(field, reduced.basis())
}

fn definitional_min(s: &Supports<'_>, r: usize) -> Result<u128> {
    let k = s.basis.rows();
    pivot_cells(k, r)
        .into_par_iter()
        .map(|cell| {
            let mut scratch = vec![0u64; s.words];
            cell.subspaces(s.field)
                .map(|sub| s.union_weight(sub.basis(), &mut scratch))
                .min()
                .unwrap_or(u32::MAX)
        })
        .min()
        .map(|w| w as u128)
        .ok_or(Error::RankOutOfRange { r, k })
}

/// Largest dimension of a subspace of `U + V` that meets `U` and `V` only in zero,
/// found by trying every subspace.
pub fn lemma1_brute(field: &Field, u: &Subspace, v: &Subspace, limits: &Limits) -> Result<usize> {
    lemma1_brute_multi(field, &[u.clone(), v.clone()], limits)
}

/// Largest dimension of a subspace of `ΣV_i` meeting every `V_i` only in zero.
pub fn lemma1_brute_multi(field: &Field, spaces: &[Subspace], limits: &Limits) -> Result<usize> {
    let Some(first) = spaces.first() else {
        return Ok(0);
    };
    let m = first.ambient_dim();
    let mut total = Subspace::zero(m);
    for s in spaces {
        total = total.sum(field, s)?;
    }
    let t = total.dim();
    let q = field.order() as u64;
    let mut required: u128 = 0;
    for d in 1..=t {
        required = required
            .checked_add(gaussian_binomial(t, d, q)?)
            .ok_or(Error::Overflow)?;
    }
    limits.check(required)?;
    let tb = total.basis();
    for d in (1..=t).rev() {
        for coords in enumerate_subspaces(field, t, d, limits)? {
            // Map coordinates relative to the basis of ΣV_i into the ambient space.
            let rows: Vec<Vec<FieldElement>> = coords
                .basis()
                .row_iter()
                .map(|c| tb.left_mul_vec(field, c))
                .collect();
            let w = Subspace::span(field, m, &rows)?;
            let mut avoids = true;
            for s in spaces {
                if !w.meets_trivially(field, s)? {
                    avoids = false;
                    break;
                }
            }
            if avoids {
                return Ok(d);
            }
        }
    }
    Ok(0)
}
