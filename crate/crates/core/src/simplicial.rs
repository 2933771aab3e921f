//! Simplicial complexes of `F_q^m` given by generator supports.
//!
//! A complex `Δ = ⟨S_1, …, S_ℓ⟩` is the set of vectors whose support lies in
//! some `S_i`; it is the union of the coordinate subspaces `⟨S_i⟩`. Coordinates
//! are 1-based at every public boundary and stored as bitmasks internally.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::limits::{checked_pow, Limits};
use crate::linalg::{support_mask, Subspace};

/// Largest ambient dimension representable by [`CoordSet`].
pub const MAX_AMBIENT_DIM: usize = 64;

/// A subset of `{1, …, m}`, bit `i` standing for coordinate `i + 1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CoordSet(u64);

impl CoordSet {
    pub const EMPTY: Self = Self(0);

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    /// Builds a set from 1-based coordinates.
    pub fn from_coords(coords: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = 0u64;
        for c in coords {
            if c == 0 || c > MAX_AMBIENT_DIM {
                return Err(Error::InvalidGenerators(format!(
                    "coordinate {c} is out of range"
                )));
            }
            bits |= 1 << (c - 1);
        }
        Ok(Self(bits))
    }

    /// `{1, …, m}`.
    pub fn full(m: usize) -> Self {
        if m >= 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << m) - 1)
        }
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Membership of a 1-based coordinate.
    #[inline]
    pub fn contains(self, c: usize) -> bool {
        (1..=64).contains(&c) && self.0 >> (c - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    /// Coordinates in increasing order, 1-based.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| self.0 >> i & 1 == 1).map(|i| i + 1)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Canonical generator order: by size, then lexicographically on the sorted elements.
impl Ord for CoordSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for CoordSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Parses the generator grammar `1,2,3;3,4,5`. Whitespace is ignored.
pub fn parse_sets(text: &str) -> Result<Vec<Vec<usize>>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    compact
        .split(';')
        .map(|group| {
            if group.is_empty() {
                return Err(Error::InvalidGenerators(format!("empty set in {text:?}")));
            }
            group
                .split(',')
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| {
                        Error::InvalidGenerators(format!("{tok:?} is not a coordinate"))
                    })
                })
                .collect()
        })
        .collect()
}

/// A complex (or its complement) with normalized generators.
///
/// Normalization drops generators contained in others, removes duplicates and
/// sorts by [`CoordSet`]'s canonical order, so `sets()[0]` is the smallest
/// generator. The closed forms read generators in this order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexSpec {
    m: usize,
    sets: Vec<CoordSet>,
    complement: bool,
}

impl ComplexSpec {
    /// Validates and normalizes 1-based generator sets.
    pub fn new(m: usize, sets: &[Vec<usize>], complement: bool) -> Result<Self> {
        let sets = to_coord_sets(m, sets)?;
        Ok(Self::normalize(m, sets, complement)?.0)
    }

    /// Parses `text` with [`parse_sets`] and normalizes.
    pub fn parse(m: usize, text: &str, complement: bool) -> Result<Self> {
        Self::new(m, &parse_sets(text)?, complement)
    }

    /// Like [`ComplexSpec::new`], also returning the generators dropped as redundant.
    pub fn normalize_reporting(
        m: usize,
        sets: &[Vec<usize>],
        complement: bool,
    ) -> Result<(Self, Vec<CoordSet>)> {
        Self::normalize(m, to_coord_sets(m, sets)?, complement)
    }

    fn normalize(
        m: usize,
        mut sets: Vec<CoordSet>,
        complement: bool,
    ) -> Result<(Self, Vec<CoordSet>)> {
        sets.sort();
        let mut kept: Vec<CoordSet> = Vec::new();
        let mut removed = Vec::new();
        // Scanning from the largest set down, a set is redundant iff some kept set contains it.
        for &s in sets.iter().rev() {
            if kept.iter().any(|&t| s.is_subset(t)) {
                removed.push(s);
            } else {
                kept.push(s);
            }
        }
        if kept.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        kept.reverse();
        removed.reverse();
        Ok((
            Self {
                m,
                sets: kept,
                complement,
            },
            removed,
        ))
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Normalized generators in canonical order.
    #[inline]
    pub fn sets(&self) -> &[CoordSet] {
        &self.sets
    }

    #[inline]
    pub fn complement(&self) -> bool {
        self.complement
    }

    /// The same generators with the complement flag replaced.
    pub fn with_complement(&self, complement: bool) -> Self {
        Self {
            complement,
            ..self.clone()
        }
    }

    /// Generators as 1-based coordinate lists.
    pub fn sets_one_based(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|s| s.to_vec()).collect()
    }

    pub fn union(&self) -> CoordSet {
        self.sets.iter().fold(CoordSet::EMPTY, |a, &s| a.union(s))
    }

    pub fn covers_ambient(&self) -> bool {
        self.union() == CoordSet::full(self.m)
    }

    pub fn is_pairwise_disjoint(&self) -> bool {
        let mut seen = CoordSet::EMPTY;
        for &s in &self.sets {
            if !seen.intersection(s).is_empty() {
                return false;
            }
            seen = seen.union(s);
        }
        true
    }

    /// Whether a support (0-based bitmask) lies in `Δ`, ignoring the complement flag.
    #[inline]
    pub fn in_complex(&self, support: u64) -> bool {
        self.sets.iter().any(|s| support & !s.bits() == 0)
    }

    /// Whether a support belongs to the defining set, honouring the complement flag.
    #[inline]
    pub fn in_defining_set(&self, support: u64) -> bool {
        self.in_complex(support) != self.complement
    }

    /// Membership of `v` in the defining set (`Δ`, or `Δ^c` when complemented).
    pub fn member(&self, v: &[FieldElement]) -> Result<bool> {
        if v.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                actual: v.len(),
            });
        }
        Ok(self.in_defining_set(support_mask(v)))
    }

    /// `|Δ|` by inclusion–exclusion, ignoring the complement flag.
    pub fn complex_cardinality(&self, q: u64) -> Result<u128> {
        let l = self.sets.len();
        if l > self.m {
            // Fewer terms by summing (q-1)^|T| over the supports T lying in Δ.
            let mut total: u128 = 0;
            for t in 0u64..(1 << self.m) {
                if self.in_complex(t) {
                    total += checked_pow(q - 1, t.count_ones())?;
                }
            }
            return Ok(total);
        }
        let mut total: i128 = 0;
        for subset in 1u32..(1 << l) {
            let meet = (0..l)
                .filter(|i| subset >> i & 1 == 1)
                .fold(CoordSet::full(self.m), |a, i| a.intersection(self.sets[i]));
            let term = checked_pow(q, meet.len() as u32)? as i128;
            if subset.count_ones() % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        Ok(total as u128)
    }

    /// Size of the defining set: `|Δ|`, or `q^m - |Δ|` when complemented.
    pub fn cardinality(&self, q: u64) -> Result<u128> {
        let delta = self.complex_cardinality(q)?;
        if self.complement {
            Ok(checked_pow(q, self.m as u32)? - delta)
        } else {
            Ok(delta)
        }
    }

    /// Members of the defining set in lexicographic code order, first coordinate most significant.
    pub fn enumerate(&self, field: &Field, limits: &Limits) -> Result<Vec<Vec<FieldElement>>> {
        let q = field.order();
        limits.check(checked_pow(q as u64, self.m as u32)?)?;
        let mut out = Vec::with_capacity(self.cardinality(q as u64)? as usize);
        let mut v = vec![FieldElement::ZERO; self.m];
        loop {
            if self.in_defining_set(support_mask(&v)) {
                out.push(v.clone());
            }
            let mut i = self.m;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                let next = v[i].code() + 1;
                if next < q {
                    v[i] = FieldElement::from_code_unchecked(next);
                    break;
                }
                v[i] = FieldElement::ZERO;
            }
        }
    }

    /// `K = ⟨[m] \ ∪S_i⟩`, the messages sent to the zero codeword by a `Δ`-code.
    pub fn k_space(&self) -> Subspace {
        let outside = CoordSet::full(self.m).difference(self.union());
        Subspace::axis(self.m, outside.iter().map(|c| c - 1))
    }
}

impl fmt::Display for ComplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ">")?;
        if self.complement {
            write!(f, "^c")?;
        }
        write!(f, " in F^{}", self.m)
    }
}

fn to_coord_sets(m: usize, sets: &[Vec<usize>]) -> Result<Vec<CoordSet>> {
    if m == 0 || m > MAX_AMBIENT_DIM {
        return Err(Error::InvalidGenerators(format!(
            "ambient dimension {m} is outside 1..={MAX_AMBIENT_DIM}"
        )));
    }
    if sets.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    sets.iter()
        .map(|s| {
            if s.is_empty() {
                return Err(Error::InvalidGenerators(
                    "generator sets must be nonempty".into(),
                ));
            }
            if let Some(&c) = s.iter().find(|&&c| c == 0 || c > m) {
                return Err(Error::InvalidGenerators(format!(
                    "coordinate {c} is outside 1..={m}"
                )));
            }
            CoordSet::from_coords(s.iter().copied())
        })
        .collect()
}
