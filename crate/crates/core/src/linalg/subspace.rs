use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::matrix::{rref, Matrix};

/// A subspace of `F_q^m`, stored by its canonical RREF basis.
///
/// Two subspaces are equal exactly when their bases are equal, so `Eq` and
/// `Hash` compare subspaces rather than presentations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of `generators`, each of length `m`.
    pub fn span(field: &Field, m: usize, generators: &[Vec<FieldElement>]) -> Result<Self> {
        Ok(Self::from_matrix(field, &Matrix::from_rows(m, generators)?))
    }

    /// Row space of `mat`.
    pub fn from_matrix(field: &Field, mat: &Matrix) -> Self {
        let r = rref(field, mat);
        Self {
            basis: r.basis(),
            pivots: r.pivots,
        }
    }

    /// Wraps a basis already in RREF. The caller guarantees canonicity.
    pub(crate) fn from_rref(basis: Matrix, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.rows(), pivots.len());
        Self { basis, pivots }
    }

    pub fn zero(m: usize) -> Self {
        Self {
            basis: Matrix::zeros(0, m),
            pivots: Vec::new(),
        }
    }

    pub fn full(m: usize) -> Self {
        Self {
            basis: Matrix::identity(m),
            pivots: (0..m).collect(),
        }
    }

    /// Span of the standard basis vectors `e_i` for the given 0-based coordinates.
    pub fn axis(m: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let mut cs: Vec<usize> = coords.into_iter().collect();
        cs.sort_unstable();
        cs.dedup();
        let mut basis = Matrix::zeros(cs.len(), m);
        for (row, &c) in cs.iter().enumerate() {
            basis.set(row, c, FieldElement::ONE);
        }
        Self { basis, pivots: cs }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical RREF basis, one row per dimension.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Membership by reduction against the RREF basis.
    pub fn contains(&self, field: &Field, v: &[FieldElement]) -> bool {
        if v.len() != self.ambient_dim() {
            return false;
        }
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if c.is_zero() {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(self.basis.row(i)) {
                *x = field.sub(*x, field.mul(c, b));
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    /// Orthogonal complement under the standard inner product.
    pub fn dual(&self, field: &Field) -> Subspace {
        null_space_of_rref(field, &self.basis, &self.pivots)
    }

    pub fn sum(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::from_matrix(field, &self.basis.vstack(&other.basis)?))
    }

    /// `U ∩ V = (U^⊥ + V^⊥)^⊥`.
    pub fn intersection(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
        let s = self.dual(field).sum(field, &other.dual(field))?;
        Ok(s.dual(field))
    }

    pub fn meets_trivially(&self, field: &Field, other: &Subspace) -> Result<bool> {
        Ok(self.sum(field, other)?.dim() == self.dim() + other.dim())
    }

    pub fn is_subspace_of(&self, field: &Field, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && self.basis.row_iter().all(|row| other.contains(field, row))
    }

    /// Calls `f` on every vector of the subspace, zero first.
    pub fn for_each_element(&self, field: &Field, mut f: impl FnMut(&[FieldElement])) {
        let k = self.dim();
        let q = field.order();
        let mut coeffs = vec![0u32; k];
        let mut v = vec![FieldElement::ZERO; self.ambient_dim()];
        loop {
            v.iter_mut().for_each(|x| *x = FieldElement::ZERO);
            for (i, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let c = FieldElement::from_code_unchecked(c);
                for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                    *x = field.add(*x, field.mul(c, b));
                }
            }
            f(&v);
            // Odometer with the first coefficient most significant.
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    /// All `q^dim` vectors of the subspace. Fails when that count exceeds `cap`.
    pub fn elements(&self, field: &Field, cap: u64) -> Result<Vec<Vec<FieldElement>>> {
        let count = crate::limits::checked_pow(field.order() as u64, self.dim() as u32)?;
        crate::limits::Limits::new(cap).check(count)?;
        let mut out = Vec::with_capacity(count as usize);
        self.for_each_element(field, |v| out.push(v.to_vec()));
        Ok(out)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                actual: other.ambient_dim(),
            });
        }
        Ok(())
    }
}

/// `{x : A x^T = 0}`, the right null space of `mat`.
pub fn null_space(field: &Field, mat: &Matrix) -> Subspace {
    let r = rref(field, mat);
    null_space_of_rref(field, &r.basis(), &r.pivots)
}

fn null_space_of_rref(field: &Field, basis: &Matrix, pivots: &[usize]) -> Subspace {
    let m = basis.cols();
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    let mut rows = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![FieldElement::ZERO; m];
        x[f] = FieldElement::ONE;
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = field.neg(basis.get(i, f));
        }
        rows.push(x);
    }
    let mat = Matrix::from_rows(m, &rows).expect("rows have length m");
    Subspace::from_matrix(field, &mat)
}

/// 1-based indices of the nonzero coordinates of `v`.
pub fn support(v: &[FieldElement]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i + 1)
        .collect()
}

/// Support as a bitmask over 0-based coordinates; `v.len()` must be at most 64.
#[inline]
pub fn support_mask(v: &[FieldElement]) -> u64 {
    debug_assert!(v.len() <= 64);
    v.iter().enumerate().fold(
        0,
        |acc, (i, x)| if x.is_zero() { acc } else { acc | 1 << i },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vecs(field: &Field, rows: &[&[u64]]) -> Vec<Vec<FieldElement>> {
        rows.iter()
            .map(|r| r.iter().map(|&c| field.element(c).unwrap()).collect())
            .collect()
    }

    #[test]
    fn null_space_of_all_ones_row() {
        let gf2 = Field::prime(2).unwrap();
        let a = Matrix::from_codes(&gf2, 3, &[&[1, 1, 1]]).unwrap();
        let k = null_space(&gf2, &a);
        let expected = Subspace::span(&gf2, 3, &vecs(&gf2, &[&[1, 1, 0], &[1, 0, 1]])).unwrap();
        assert_eq!(k, expected);
        assert_eq!(k.basis().to_codes(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn dual_of_axis_line() {
        let gf3 = Field::prime(3).unwrap();
        let h = Subspace::axis(3, [0]);
        assert_eq!(h.dual(&gf3), Subspace::axis(3, [1, 2]));
    }

    #[test]
    fn support_is_one_based() {
        let gf5 = Field::prime(5).unwrap();
        let v = vecs(&gf5, &[&[0, 3, 0, 1]]).remove(0);
        assert_eq!(support(&v), vec![2, 4]);
        assert_eq!(support_mask(&v), 0b1010);
    }

    #[test]
    fn elements_of_a_plane() {
        let gf3 = Field::prime(3).unwrap();
        let s = Subspace::axis(4, [1, 3]);
        let els = s.elements(&gf3, 100).unwrap();
        assert_eq!(els.len(), 9);
        assert!(els[0].iter().all(|x| x.is_zero()));
        assert!(els
            .iter()
            .all(|v| s.contains(&gf3, v) && v[0].is_zero() && v[2].is_zero()));
        assert!(s.elements(&gf3, 8).is_err());
    }

    #[test]
    fn intersection_and_trivial_meet() {
        let gf2 = Field::prime(2).unwrap();
        let u = Subspace::axis(4, [0, 1]);
        let v = Subspace::axis(4, [1, 2]);
        assert_eq!(u.intersection(&gf2, &v).unwrap(), Subspace::axis(4, [1]));
        assert!(!u.meets_trivially(&gf2, &v).unwrap());
        assert!(u.meets_trivially(&gf2, &Subspace::axis(4, [2, 3])).unwrap());
        assert!(u.sum(&gf2, &Subspace::zero(3)).is_err());
    }

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop::sample::select(vec![2u64, 3, 4, 5]).prop_map(|q| Field::from_order(q).unwrap())
    }

    fn matrix_strategy() -> impl Strategy<Value = (Field, Matrix)> {
        (field_strategy(), 1usize..5, 1usize..6).prop_flat_map(|(f, rows, cols)| {
            let q = f.order() as u64;
            prop::collection::vec(0..q, rows * cols).prop_map(move |codes| {
                let rs: Vec<Vec<FieldElement>> = codes
                    .chunks(cols)
                    .map(|c| c.iter().map(|&x| f.element(x).unwrap()).collect())
                    .collect();
                (f.clone(), Matrix::from_rows(cols, &rs).unwrap())
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent_and_span_preserving((f, a) in matrix_strategy()) {
            let s = Subspace::from_matrix(&f, &a);
            prop_assert_eq!(Subspace::from_matrix(&f, s.basis()), s.clone());
            for row in a.row_iter() {
                prop_assert!(s.contains(&f, row));
            }
        }

        #[test]
        fn null_space_annihilates_and_has_complementary_dim((f, a) in matrix_strategy()) {
            let k = null_space(&f, &a);
            let rank = crate::linalg::rank(&f, &a);
            prop_assert_eq!(k.dim() + rank, a.cols());
            for x in k.basis().row_iter() {
                for row in a.row_iter() {
                    prop_assert!(crate::linalg::dot(&f, x, row).is_zero());
                }
            }
        }

        #[test]
        fn dual_is_an_involution((f, a) in matrix_strategy()) {
            let s = Subspace::from_matrix(&f, &a);
            let d = s.dual(&f);
            prop_assert_eq!(d.dim() + s.dim(), s.ambient_dim());
            prop_assert_eq!(d.dual(&f), s);
        }

        #[test]
        fn dimension_formula((f, a) in matrix_strategy(), split in 0usize..5) {
            let split = split.min(a.rows());
            let rows: Vec<Vec<FieldElement>> = a.row_iter().map(|r| r.to_vec()).collect();
            let u = Subspace::span(&f, a.cols(), &rows[..split]).unwrap();
            let v = Subspace::span(&f, a.cols(), &rows[split..]).unwrap();
            let sum = u.sum(&f, &v).unwrap();
            let meet = u.intersection(&f, &v).unwrap();
            prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
            prop_assert!(meet.is_subspace_of(&f, &u) && meet.is_subspace_of(&f, &v));
        }
    }
}
