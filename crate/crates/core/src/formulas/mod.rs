//! Closed-form weight hierarchies and the dispatcher that picks them.
//!
//! A complex qualifies for a closed form according to its generator count,
//! their sizes, disjointness and intersection-size ordering. When more than
//! one form applies, all are evaluated and must agree value for value.

mod lemma;
mod tables;

use std::fmt;

use thiserror::Error;

use crate::code::{Method, Provenance, WeightHierarchy};
use crate::simplicial::ComplexSpec;

pub use lemma::{lemma1_dim, lemma1_witness};
pub use tables::{
    evaluate_table, table9_row2_uncorrected, table_rows, EvalError, Evaluated, Params, Row,
    RowValue, TableId,
};

/// Which family of results a table is applied under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    /// Three generators with at least two of equal size.
    Appendix,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::T5 => "T5",
            TheoremId::T6 => "T6",
            TheoremId::T7 => "T7",
            TheoremId::Appendix => "A",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("no closed form applies: {0}")]
    NotApplicable(String),

    #[error("{table} rows disagree at r = {r}: {values:?}")]
    Inconsistent {
        table: TableId,
        r: usize,
        values: Vec<RowValue>,
    },

    #[error("{table} has no row covering r = {r}")]
    Uncovered { table: TableId, r: usize },

    #[error("{table} row {row} has a negative exponent at r = {r}")]
    NegativeExponent { table: TableId, row: u8, r: usize },

    #[error("{theorem} stated {what} is {stated} but the table gives {computed}")]
    StatementMismatch {
        theorem: TheoremId,
        what: &'static str,
        stated: i128,
        computed: i128,
    },

    #[error("value overflows 128-bit arithmetic")]
    Overflow,

    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Adds one to a single table row, so a test can check the mismatch is caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fault {
    pub table: TableId,
    pub row: u8,
}

/// The closed forms that apply to `spec`, in order of preference.
pub fn select(spec: &ComplexSpec, q: u64) -> Result<Vec<(TheoremId, TableId)>, FormulaError> {
    let m = spec.m();
    let sets = spec.sets();
    let l = sets.len();
    let disjoint = spec.is_pairwise_disjoint();
    let mut out = Vec::new();

    if !spec.complement() {
        if !spec.covers_ambient() {
            return Err(FormulaError::NotApplicable(format!(
                "the generators cover {} rather than all of [{m}]",
                spec.union()
            )));
        }
        match l {
            1 => out.push((TheoremId::T1, TableId::Thm1)),
            2 => out.push((TheoremId::T2, TableId::Table(1))),
            3 => out.extend(three_generator_tables(&Params::from_spec(spec, q))),
            _ => {}
        }
        if l >= 2 && disjoint {
            out.push((TheoremId::T4, TableId::Table(4)));
        }
        if out.is_empty() {
            return Err(FormulaError::NotApplicable(format!(
                "{l} generators that are not pairwise disjoint"
            )));
        }
    } else {
        if sets.iter().any(|s| s.len() == m) {
            return Err(FormulaError::NotApplicable(format!(
                "a generator equals [{m}], so the complement is empty"
            )));
        }
        // Over GF(2) each generator [m]\{j} removes the only vector of support
        // [m]\{j}; two or more of them drop the rank of the complement below m.
        let hyperplanes = sets.iter().filter(|s| s.len() + 1 == m).count();
        if q == 2 && hyperplanes >= 2 {
            return Err(FormulaError::NotApplicable(format!(
                "over GF(2), {hyperplanes} generators of size m - 1 make the complement code \
                 degenerate (dimension below m)"
            )));
        }
        match l {
            1 => out.push((TheoremId::T5, TableId::Table(5))),
            2 => out.push((TheoremId::T6, TableId::Table(6))),
            _ => {}
        }
        if disjoint {
            out.push((TheoremId::T7, TableId::Table(7)));
        }
        if out.is_empty() {
            return Err(FormulaError::NotApplicable(format!(
                "complement of {l} generators that are not pairwise disjoint"
            )));
        }
    }
    Ok(out)
}

/// Table choice for three generators covering `[m]`, sizes in canonical order.
fn three_generator_tables(p: &Params) -> Vec<(TheoremId, TableId)> {
    let (s1, s2, s3) = (p.sizes[0], p.sizes[1], p.sizes[2]);
    let (a12, a13, a23) = (p.a12, p.a13, p.a23);
    let mut tables: Vec<TableId> = Vec::new();
    let theorem;
    if s2 < s3 {
        theorem = if s1 < s2 {
            TheoremId::T3
        } else {
            TheoremId::Appendix
        };
        if a13 <= a23 {
            tables.push(TableId::Table(2));
        }
        if a13 >= a23 {
            tables.push(TableId::Table(3));
        }
    } else {
        theorem = TheoremId::Appendix;
        let all_equal = s1 == s2;
        let ordered = |x: i64, y: i64, z: i64| x <= y && y <= z;
        if ordered(a12, a13, a23) {
            tables.push(TableId::Table(2));
        }
        if ordered(a13, a12, a23) {
            tables.push(TableId::Table(8));
        }
        if ordered(a12, a23, a13) {
            tables.push(TableId::Table(3));
        }
        if ordered(a23, a12, a13) {
            tables.push(TableId::Table(if all_equal { 10 } else { 3 }));
        }
        if ordered(a13, a23, a12) {
            tables.push(TableId::Table(9));
        }
        if ordered(a23, a13, a12) {
            tables.push(TableId::Table(if all_equal { 11 } else { 9 }));
        }
    }
    let mut out: Vec<(TheoremId, TableId)> = Vec::new();
    for t in tables {
        if !out.iter().any(|&(_, u)| u == t) {
            out.push((theorem, t));
        }
    }
    out
}

/// Closed-form weight hierarchy of the code defined by `spec` over GF(q).
pub fn hierarchy_formula(spec: &ComplexSpec, q: u64) -> Result<WeightHierarchy, FormulaError> {
    hierarchy_formula_with(spec, q, None)
}

/// As [`hierarchy_formula`], optionally with a row of one table perturbed.
pub fn hierarchy_formula_with(
    spec: &ComplexSpec,
    q: u64,
    fault: Option<Fault>,
) -> Result<WeightHierarchy, FormulaError> {
    let selected = select(spec, q)?;
    let params = Params::from_spec(spec, q);
    let mut primary: Option<(TheoremId, TableId, Vec<Evaluated>)> = None;
    for &(theorem, table) in &selected {
        let bump = fault.filter(|f| f.table == table).map(|f| f.row);
        let ev = evaluate_table(table, &params, bump)?;
        match &primary {
            None => primary = Some((theorem, table, ev)),
            Some((t0, tab0, ev0)) => {
                if let Some(r) = (0..ev.len()).find(|&i| ev[i].value != ev0[i].value) {
                    return Err(FormulaError::NotApplicable(format!(
                        "{t0}/{tab0} and {theorem}/{table} both apply but disagree at r = {}: \
                         {} vs {}",
                        r + 1,
                        ev0[r].value,
                        ev[r].value
                    )));
                }
            }
        }
    }
    let (theorem, table, ev) = primary.expect("select never returns an empty list");
    let mut values = Vec::with_capacity(ev.len());
    for (i, e) in ev.iter().enumerate() {
        let v = u128::try_from(e.value).map_err(|_| {
            FormulaError::Precondition(format!(
                "{theorem}/{table} gives {} at r = {}",
                e.value,
                i + 1
            ))
        })?;
        values.push(v);
    }
    let provenance = ev
        .iter()
        .map(|e| Provenance::Formula {
            theorem,
            table,
            row: e.rows[0],
        })
        .collect();
    Ok(WeightHierarchy {
        values,
        provenance,
        method: Method::Formula,
        spec: spec.clone(),
    })
}

/// `[n, k, d]` of the code as the closed form states it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeParams {
    pub n: u128,
    pub k: usize,
    pub d: u128,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.n, self.k, self.d)
    }
}

/// `[n, k, d_1]` from the closed form. The length formula that accompanies
/// each table is cross-checked against inclusion-exclusion, and its `d_1`
/// formula, where valid, against the first table value.
pub fn code_params_formula(spec: &ComplexSpec, q: u64) -> Result<CodeParams, FormulaError> {
    let h = hierarchy_formula(spec, q)?;
    let n = spec.cardinality(q).map_err(|_| FormulaError::Overflow)?;
    let d = h.values[0];
    let Provenance::Formula { theorem, .. } = h.provenance[0] else {
        unreachable!("formula hierarchies carry formula provenance");
    };
    let (stated_n, stated_d) =
        statement(theorem, &Params::from_spec(spec, q)).map_err(|_| FormulaError::Overflow)?;
    if stated_n != n as i128 {
        return Err(FormulaError::StatementMismatch {
            theorem,
            what: "length",
            stated: stated_n,
            computed: n as i128,
        });
    }
    if let Some(sd) = stated_d {
        if sd != d as i128 {
            return Err(FormulaError::StatementMismatch {
                theorem,
                what: "minimum distance",
                stated: sd,
                computed: d as i128,
            });
        }
    }
    Ok(CodeParams { n, k: spec.m(), d })
}

/// Length and minimum distance formulas that accompany each closed form. The
/// distance is `None` where no statement exists or where it is only valid
/// when the first table row covers `r = 1`, and that row is empty here.
fn statement(theorem: TheoremId, p: &Params) -> Result<(i128, Option<i128>), EvalError> {
    let q = p.q as i128;
    let pw = |e: i64| -> Result<i128, EvalError> {
        if e < 0 {
            return Err(EvalError::NegativeExponent);
        }
        q.checked_pow(e as u32).ok_or(EvalError::Overflow)
    };
    let m = p.m;
    let s = &p.sizes;
    let l = s.len() as i128;
    let sum_pw = |xs: &[i64], shift: i64| -> Result<i128, EvalError> {
        xs.iter().map(|&x| pw(x - shift)).sum()
    };
    let three = |p: &Params| -> Result<i128, EvalError> {
        Ok(pw(s[0])? + pw(s[1])? + pw(s[2])? - pw(p.a12)? - pw(p.a13)? - pw(p.a23)? + pw(p.a123)?)
    };
    Ok(match theorem {
        TheoremId::T1 => (pw(m)?, Some(pw(m)? - pw(m - 1)?)),
        TheoremId::T2 => (
            pw(s[0])? + pw(s[1])? - pw(p.a12)?,
            Some(pw(s[0])? - pw(p.a12 + m - s[1] - 1)?),
        ),
        TheoremId::T3 => {
            let all = p.a12 + p.a13 + p.a23 - p.a123;
            let d = if m - s[1] - s[2] + p.a23 >= 1 {
                Some(pw(s[0])? - pw(m - 1 - s[1] - s[2] + all)?)
            } else {
                None
            };
            (three(p)?, d)
        }
        TheoremId::Appendix => (three(p)?, None),
        TheoremId::T4 => {
            let rest: i64 = s[1..].iter().sum();
            (sum_pw(s, 0)? - l + 1, Some(pw(s[0])? - pw(m - 1 - rest)?))
        }
        TheoremId::T5 => (
            pw(m)? - pw(s[0])?,
            Some(pw(m)? - pw(s[0])? - pw(m - 1)? + pw(s[0] - 1)?),
        ),
        TheoremId::T6 => (
            pw(m)? - (pw(s[0])? + pw(s[1])? - pw(p.a12)?),
            Some(pw(m)? - pw(s[0])? - pw(s[1])? - pw(m - 1)? + pw(s[0] - 1)? + pw(s[1] - 1)?),
        ),
        TheoremId::T7 => (
            pw(m)? - sum_pw(s, 0)? + l - 1,
            Some((q - 1) * pw(m - 1)? - (q - 1) * sum_pw(s, 1)?),
        ),
    })
}
