//! Enumeration of the Grassmannian of `r`-dimensional subspaces of `F_q^m`.
//!
//! Subspaces are produced by canonical RREF basis. The order is: pivot sets in
//! lexicographic order, then within a pivot set the free entries read
//! row-major as a base-`q` numeral with the first entry most significant.
//! Each pivot set is a [`PivotCell`], which is also the unit of parallel work.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::limits::{checked_pow, Limits};

use super::matrix::Matrix;
use super::subspace::Subspace;

/// Number of `r`-dimensional subspaces of `F_q^m`, exactly.
pub fn gaussian_binomial(m: usize, r: usize, q: u64) -> Result<u128> {
    if r > m {
        return Ok(0);
    }
    let r = r.min(m - r);
    let q = q as u128;
    let mut result: u128 = 1;
    for j in 0..r {
        let num = q.checked_pow((m - j) as u32).ok_or(Error::Overflow)? - 1;
        let den = q.checked_pow((j + 1) as u32).ok_or(Error::Overflow)? - 1;
        // The running product is always a Gaussian binomial, so the division is exact.
        result = result.checked_mul(num).ok_or(Error::Overflow)? / den;
    }
    Ok(result)
}

/// All subspaces of one dimension sharing a pivot set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotCell {
    m: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
}

impl PivotCell {
    pub fn new(m: usize, pivots: Vec<usize>) -> Self {
        let free = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let pivots = &pivots;
                ((p + 1)..m)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        Self { m, pivots, free }
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `(row, column)` of each free entry, in enumeration significance order.
    pub fn free_positions(&self) -> &[(usize, usize)] {
        &self.free
    }

    /// Number of subspaces in the cell, `q^(free entries)`.
    pub fn len(&self, q: u64) -> Result<u128> {
        checked_pow(q, self.free.len() as u32)
    }

    pub fn subspaces(self, field: &Field) -> CellIter<'_> {
        let mut template = Matrix::zeros(self.pivots.len(), self.m);
        for (i, &p) in self.pivots.iter().enumerate() {
            template.set(i, p, FieldElement::ONE);
        }
        let codes = vec![0; self.free.len()];
        CellIter {
            cell: self,
            field,
            codes,
            template,
            done: false,
        }
    }
}

pub struct CellIter<'a> {
    cell: PivotCell,
    field: &'a Field,
    codes: Vec<u32>,
    template: Matrix,
    done: bool,
}

impl Iterator for CellIter<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let out = Subspace::from_rref(self.template.clone(), self.cell.pivots.clone());
        let q = self.field.order();
        let mut i = self.codes.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            let (row, col) = self.cell.free[i];
            self.codes[i] += 1;
            if self.codes[i] < q {
                self.template
                    .set(row, col, FieldElement::from_code_unchecked(self.codes[i]));
                break;
            }
            self.codes[i] = 0;
            self.template.set(row, col, FieldElement::ZERO);
        }
        Some(out)
    }
}

/// Pivot cells of the `r`-dimensional subspaces of `F_q^m`, in enumeration order.
pub fn pivot_cells(m: usize, r: usize) -> Vec<PivotCell> {
    let mut cells = Vec::new();
    if r > m {
        return cells;
    }
    let mut combo: Vec<usize> = (0..r).collect();
    loop {
        cells.push(PivotCell::new(m, combo.clone()));
        // Advance to the next r-combination of 0..m in lexicographic order.
        let Some(i) = (0..r).rev().find(|&i| combo[i] < m - r + i) else {
            return cells;
        };
        combo[i] += 1;
        for j in i + 1..r {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Iterator over every `r`-dimensional subspace of `F_q^m`.
pub struct Subspaces<'a> {
    field: &'a Field,
    cells: std::vec::IntoIter<PivotCell>,
    current: Option<CellIter<'a>>,
}

impl Iterator for Subspaces<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            if let Some(s) = self.current.as_mut().and_then(Iterator::next) {
                return Some(s);
            }
            self.current = Some(self.cells.next()?.subspaces(self.field));
        }
    }
}

/// Enumerates every `r`-dimensional subspace of `F_q^m`, refusing when their
/// number exceeds the cap.
pub fn enumerate_subspaces<'a>(
    field: &'a Field,
    m: usize,
    r: usize,
    limits: &Limits,
) -> Result<Subspaces<'a>> {
    limits.check(gaussian_binomial(m, r, field.order() as u64)?)?;
    Ok(Subspaces {
        field,
        cells: pivot_cells(m, r).into_iter(),
        current: None,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
        assert_eq!(gaussian_binomial(6, 3, 3).unwrap(), 33880);
        assert_eq!(gaussian_binomial(5, 0, 7).unwrap(), 1);
        assert_eq!(gaussian_binomial(5, 5, 7).unwrap(), 1);
        assert_eq!(gaussian_binomial(3, 4, 2).unwrap(), 0);
        assert_eq!(gaussian_binomial(3, 1, 4).unwrap(), 21);
        assert_eq!(gaussian_binomial(200, 100, 65536), Err(Error::Overflow));
    }

    #[test]
    fn pivot_sets_are_lexicographic() {
        let sets: Vec<Vec<usize>> = pivot_cells(4, 2)
            .iter()
            .map(|c| c.pivots().to_vec())
            .collect();
        assert_eq!(
            sets,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(pivot_cells(3, 0).len(), 1);
        assert!(pivot_cells(2, 3).is_empty());
    }

    #[test]
    fn first_subspaces_in_order() {
        let gf2 = Field::prime(2).unwrap();
        let all: Vec<Subspace> = enumerate_subspaces(&gf2, 3, 1, &Limits::default())
            .unwrap()
            .collect();
        let bases: Vec<Vec<Vec<u32>>> = all.iter().map(|s| s.basis().to_codes()).collect();
        assert_eq!(
            bases,
            vec![
                vec![vec![1, 0, 0]],
                vec![vec![1, 0, 1]],
                vec![vec![1, 1, 0]],
                vec![vec![1, 1, 1]],
                vec![vec![0, 1, 0]],
                vec![vec![0, 1, 1]],
                vec![vec![0, 0, 1]],
            ]
        );
    }

    #[test]
    fn cap_is_enforced_before_enumeration() {
        let gf3 = Field::prime(3).unwrap();
        let err = enumerate_subspaces(&gf3, 6, 3, &Limits::new(1000))
            .err()
            .unwrap();
        assert_eq!(
            err,
            Error::EnumerationCap {
                required: 33880,
                cap: 1000
            }
        );
    }

    #[test]
    fn gf3_m6_r3_exhaustive() {
        let gf3 = Field::prime(3).unwrap();
        let set: HashSet<Subspace> = enumerate_subspaces(&gf3, 6, 3, &Limits::default())
            .unwrap()
            .collect();
        assert_eq!(set.len(), 33880);
    }

    proptest! {
        #[test]
        fn enumeration_is_canonical_and_complete(
            q in prop::sample::select(vec![2u64, 3, 4, 5]),
            m in 0usize..5,
            r in 0usize..5,
        ) {
            let field = Field::from_order(q).unwrap();
            let expected = gaussian_binomial(m, r, q).unwrap();
            let mut seen = HashSet::new();
            for s in enumerate_subspaces(&field, m, r, &Limits::default()).unwrap() {
                prop_assert_eq!(s.dim(), r);
                prop_assert_eq!(Subspace::from_matrix(&field, s.basis()), s.clone());
                prop_assert!(seen.insert(s));
            }
            prop_assert_eq!(seen.len() as u128, expected);
            let cell_total: u128 = pivot_cells(m, r).iter().map(|c| c.len(q).unwrap()).sum();
            prop_assert_eq!(cell_total, expected);
        }

        #[test]
        fn binomial_symmetry_and_pascal(q in 2u64..9, m in 1usize..12, r in 1usize..12) {
            prop_assume!(r <= m);
            let g = |a, b| gaussian_binomial(a, b, q).unwrap();
            prop_assert_eq!(g(m, r), g(m, m - r));
            // [m r] = [m-1 r-1] + q^r [m-1 r]
            prop_assert_eq!(g(m, r), g(m - 1, r - 1) + (q as u128).pow(r as u32) * g(m - 1, r));
        }
    }
}
