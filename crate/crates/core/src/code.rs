//! Defining-set codes and the subspace-intersection search for their GHWs.
//!
//! For a defining set `D ⊆ F_q^m`, the code is `{(x·d)_{d∈D} : x ∈ F_q^m}`.
//! Messages in `K = {x : x·d = 0 for all d ∈ D}` map to zero, so the code has
//! dimension `m - dim K`, and
//!
//! ```text
//! d_r = n - max { |D ∩ H^⊥| : H an r-dim subspace of F_q^m, H ∩ K = {0} }.
//! ```

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::formulas::{TableId, TheoremId};
use crate::limits::{checked_pow, Limits};
use crate::linalg::{
    dot, gaussian_binomial, null_space, pivot_cells, support_mask, Matrix, Subspace,
};
use crate::simplicial::ComplexSpec;

/// A linear code whose generator columns are the defining set, in enumeration order.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Field,
    spec: ComplexSpec,
    defining_set: Vec<Vec<FieldElement>>,
    generator: Matrix,
    kernel: Subspace,
}

impl LinearCode {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn spec(&self) -> &ComplexSpec {
        &self.spec
    }

    /// Message dimension.
    pub fn m(&self) -> usize {
        self.spec.m()
    }

    /// Length.
    pub fn n(&self) -> usize {
        self.defining_set.len()
    }

    /// Dimension, `m - dim K`.
    pub fn k(&self) -> usize {
        self.m() - self.kernel.dim()
    }

    /// `m × n` generator matrix.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn defining_set(&self) -> &[Vec<FieldElement>] {
        &self.defining_set
    }

    /// Messages sent to the zero codeword.
    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }
}

/// Builds the code of `spec` over `field`.
pub fn build_code(field: &Field, spec: &ComplexSpec, limits: &Limits) -> Result<LinearCode> {
    let defining_set = spec.enumerate(field, limits)?;
    if defining_set.is_empty() {
        return Err(Error::EmptyDefiningSet);
    }
    let columns = Matrix::from_rows(spec.m(), &defining_set)?;
    let kernel = null_space(field, &columns);
    Ok(LinearCode {
        field: field.clone(),
        spec: spec.clone(),
        defining_set,
        generator: columns.transpose(),
        kernel,
    })
}

/// How one `d_r` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Formula {
        theorem: TheoremId,
        table: TableId,
        row: u8,
    },
    Prop1Search,
    Definitional,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Formula {
                theorem,
                table,
                row,
            } => write!(f, "{theorem}/{table}/row{row}"),
            Provenance::Prop1Search => write!(f, "prop1-search"),
            Provenance::Definitional => write!(f, "definitional"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Formula,
    Prop1Search,
    Definitional,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Prop1Search => "prop1-search",
            Method::Definitional => "definitional",
        })
    }
}

/// `d_1, …, d_k` with per-`r` provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightHierarchy {
    pub values: Vec<u128>,
    pub provenance: Vec<Provenance>,
    pub method: Method,
    pub spec: ComplexSpec,
}

impl WeightHierarchy {
    pub fn is_strictly_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }
}

/// Optimum of the search for one `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop1Outcome {
    pub value: u128,
    /// First optimal `H` in canonical enumeration order.
    pub witness: Subspace,
    /// `|D ∩ H^⊥|` at the witness.
    pub max_intersection: u128,
}

/// Search state shared across all `r` for one code.
pub struct Prop1Search<'a> {
    code: &'a LinearCode,
    limits: Limits,
    /// Members of `Δ` itself, kept only when `Δ` is small enough that
    /// filtering it beats walking `H^⊥` for some `r`.
    complex_members: Option<Vec<Vec<FieldElement>>>,
    complex_size: u128,
}

impl<'a> Prop1Search<'a> {
    pub fn new(code: &'a LinearCode, limits: &Limits) -> Result<Self> {
        let q = code.field.order() as u64;
        let spec = code.spec.with_complement(false);
        let complex_size = spec.cardinality(q)?;
        let largest_dual = checked_pow(q, code.m() as u32 - 1)?;
        let complex_members = if complex_size < largest_dual {
            Some(spec.enumerate(&code.field, limits)?)
        } else {
            None
        };
        Ok(Self {
            code,
            limits: *limits,
            complex_members,
            complex_size,
        })
    }

    /// `|Δ ∩ H^⊥|`, counting on whichever side is smaller.
    pub fn complex_intersection(&self, h: &Subspace) -> u128 {
        let field = &self.code.field;
        let spec = &self.code.spec;
        let dual_size = (field.order() as u128).pow((h.ambient_dim() - h.dim()) as u32);
        match &self.complex_members {
            Some(members) if (members.len() as u128) < dual_size => members
                .iter()
                .filter(|v| h.basis().row_iter().all(|row| dot(field, row, v).is_zero()))
                .count()
                as u128,
            _ => {
                let mut count = 0u128;
                h.dual(field).for_each_element(field, |v| {
                    count += spec.in_complex(support_mask(v)) as u128;
                });
                count
            }
        }
    }

    /// `|D ∩ H^⊥|` for the code's defining set.
    pub fn intersection(&self, h: &Subspace) -> u128 {
        let c = self.complex_intersection(h);
        if self.code.spec.complement() {
            let dual_size =
                (self.code.field.order() as u128).pow((h.ambient_dim() - h.dim()) as u32);
            dual_size - c
        } else {
            c
        }
    }

    /// `d_r` and its witness.
    pub fn ghw(&self, r: usize) -> Result<Prop1Outcome> {
        let code = self.code;
        let k = code.k();
        if r == 0 || r > k {
            return Err(Error::RankOutOfRange { r, k });
        }
        let m = code.m();
        let q = code.field.order() as u64;
        self.limits.check(gaussian_binomial(m, r, q)?)?;
        let dual_size = checked_pow(q, (m - r) as u32)?;
        // |D ∩ H^⊥| never exceeds |H^⊥|, and zero is never in Δ^c.
        let bound = if code.spec.complement() {
            dual_size - 1
        } else {
            dual_size
        };
        let kernel = &code.kernel;
        let stop_at = AtomicUsize::new(usize::MAX);

        let best = pivot_cells(m, r)
            .into_par_iter()
            .enumerate()
            .filter_map(|(idx, cell)| {
                if stop_at.load(Ordering::Relaxed) < idx {
                    return None;
                }
                let mut best: Option<(u128, Subspace)> = None;
                for h in cell.subspaces(&code.field) {
                    if stop_at.load(Ordering::Relaxed) < idx {
                        return None;
                    }
                    if kernel.dim() > 0
                        && !h
                            .meets_trivially(&code.field, kernel)
                            .expect("same ambient space")
                    {
                        continue;
                    }
                    let value = self.intersection(&h);
                    if best.as_ref().map_or(true, |(b, _)| value > *b) {
                        best = Some((value, h));
                        if value == bound {
                            stop_at.fetch_min(idx, Ordering::Relaxed);
                            break;
                        }
                    }
                }
                best.map(|(v, h)| (v, idx, h))
            })
            .reduce_with(|a, b| {
                // Larger value wins; ties go to the earlier cell.
                if (b.0, std::cmp::Reverse(b.1)) > (a.0, std::cmp::Reverse(a.1)) {
                    b
                } else {
                    a
                }
            });

        let (max_intersection, _, witness) = best.ok_or_else(|| {
            Error::InvalidSubspace(format!("no {r}-dimensional subspace meets K trivially"))
        })?;
        Ok(Prop1Outcome {
            value: code.n() as u128 - max_intersection,
            witness,
            max_intersection,
        })
    }

    /// `d_1, …, d_k` together with each witness.
    pub fn hierarchy(&self) -> Result<(WeightHierarchy, Vec<Subspace>)> {
        let k = self.code.k();
        let mut values = Vec::with_capacity(k);
        let mut witnesses = Vec::with_capacity(k);
        for r in 1..=k {
            let out = self.ghw(r)?;
            values.push(out.value);
            witnesses.push(out.witness);
        }
        let h = WeightHierarchy {
            values,
            provenance: vec![Provenance::Prop1Search; k],
            method: Method::Prop1Search,
            spec: self.code.spec.clone(),
        };
        Ok((h, witnesses))
    }

    pub fn complex_size(&self) -> u128 {
        self.complex_size
    }
}

/// `d_r` of `code` by the intersection search, with its witness.
pub fn ghw_prop1(code: &LinearCode, r: usize, limits: &Limits) -> Result<Prop1Outcome> {
    Prop1Search::new(code, limits)?.ghw(r)
}

/// Full hierarchy by the intersection search.
pub fn hierarchy_prop1(code: &LinearCode, limits: &Limits) -> Result<WeightHierarchy> {
    Ok(Prop1Search::new(code, limits)?.hierarchy()?.0)
}
