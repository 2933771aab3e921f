//! Dense linear algebra over [`Field`](crate::field::Field): matrices, RREF,
//! null spaces, subspaces and Grassmannian enumeration.

mod enumerate;
mod matrix;
mod subspace;

pub use enumerate::{
    enumerate_subspaces, gaussian_binomial, pivot_cells, CellIter, PivotCell, Subspaces,
};
pub use matrix::{dot, rank, rref, Matrix, Rref};
pub use subspace::{null_space, support, support_mask, Subspace};
