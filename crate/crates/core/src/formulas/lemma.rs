//! Largest subspace of `U + V` meeting both `U` and `V` only in zero.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Subspace;

use super::FormulaError;

/// `min(u - d, v - d)` for subspaces of dimensions `u`, `v` meeting in dimension `d`.
pub fn lemma1_dim(u: usize, v: usize, d: usize) -> Result<usize, FormulaError> {
    if d > u.min(v) {
        return Err(FormulaError::Precondition(format!(
            "intersection dimension {d} exceeds min({u}, {v})"
        )));
    }
    Ok((u - d).min(v - d))
}

/// Vectors of `target`'s basis that extend `base` to a basis of `base + target`.
fn extend(field: &Field, base: &Subspace, target: &Subspace) -> Result<Vec<Vec<FieldElement>>> {
    let m = base.ambient_dim();
    let mut current = base.clone();
    let mut out = Vec::new();
    for row in target.basis().row_iter() {
        if !current.contains(field, row) {
            out.push(row.to_vec());
            current = current.sum(field, &Subspace::span(field, m, &[row.to_vec()])?)?;
        }
    }
    Ok(out)
}

/// Builds `W = span{α_i + β_i}` where the `α_i` complete `U ∩ V` to `U` and the
/// `β_i` complete it to `V`. `W` has dimension [`lemma1_dim`] and meets `U`
/// and `V` trivially.
pub fn lemma1_witness(field: &Field, u: &Subspace, v: &Subspace) -> Result<Subspace> {
    if u.ambient_dim() != v.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: u.ambient_dim(),
            actual: v.ambient_dim(),
        });
    }
    let meet = u.intersection(field, v)?;
    let alphas = extend(field, &meet, u)?;
    let betas = extend(field, &meet, v)?;
    let gens: Vec<Vec<FieldElement>> = alphas
        .iter()
        .zip(&betas)
        .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect())
        .collect();
    Subspace::span(field, u.ambient_dim(), &gens)
}
