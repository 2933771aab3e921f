//! Symbolic weight-hierarchy tables.
//!
//! Each table is a list of rows; a row is a closed form in `r` valid on an
//! interval whose endpoints may be strict or inclusive. Endpoints are kept
//! exactly as stated, so adjacent rows may share an endpoint, in which case
//! both are evaluated and must agree.

use std::fmt;

use crate::simplicial::ComplexSpec;

use super::FormulaError;

/// Identifies one closed form. `Thm1` is the single full-space formula; each
/// numbered table is a piecewise form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    Thm1,
    Table(u8),
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableId::Thm1 => write!(f, "formula"),
            TableId::Table(n) => write!(f, "Table{n}"),
        }
    }
}

/// Structural parameters a table depends on: field size, ambient dimension,
/// generator sizes in canonical order and, for three generators, the pairwise
/// and triple intersection sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub q: u64,
    pub m: i64,
    pub sizes: Vec<i64>,
    pub a12: i64,
    pub a13: i64,
    pub a23: i64,
    pub a123: i64,
}

impl Params {
    pub fn from_spec(spec: &ComplexSpec, q: u64) -> Self {
        let sets = spec.sets();
        let meet = |i: usize, j: usize| -> i64 {
            match (sets.get(i), sets.get(j)) {
                (Some(&a), Some(&b)) => a.intersection(b).len() as i64,
                _ => 0,
            }
        };
        let a123 = if sets.len() >= 3 {
            sets[0].intersection(sets[1]).intersection(sets[2]).len() as i64
        } else {
            0
        };
        Self {
            q,
            m: spec.m() as i64,
            sizes: sets.iter().map(|s| s.len() as i64).collect(),
            a12: meet(0, 1),
            a13: meet(0, 2),
            a23: meet(1, 2),
            a123,
        }
    }

    fn size(&self, i: usize) -> i64 {
        self.sizes.get(i).copied().unwrap_or(0)
    }
}

/// Why a single row could not be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalError {
    NegativeExponent,
    Overflow,
}

type Value = Result<i128, EvalError>;

/// One row of a table.
pub struct Row {
    pub lo: i64,
    pub lo_strict: bool,
    pub hi: i64,
    pub hi_strict: bool,
    value: Box<dyn Fn(i64) -> Value + Send + Sync>,
}

impl fmt::Debug for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_strict { "<" } else { "<=" };
        let h = if self.hi_strict { "<" } else { "<=" };
        write!(f, "Row({} {l} r {h} {})", self.lo, self.hi)
    }
}

impl Row {
    pub fn covers(&self, r: i64) -> bool {
        let above = if self.lo_strict {
            r > self.lo
        } else {
            r >= self.lo
        };
        let below = if self.hi_strict {
            r < self.hi
        } else {
            r <= self.hi
        };
        above && below
    }

    pub fn eval(&self, r: i64) -> Value {
        (self.value)(r)
    }
}

fn power(q: u64, e: i64) -> Value {
    if e < 0 {
        return Err(EvalError::NegativeExponent);
    }
    let e = u32::try_from(e).map_err(|_| EvalError::Overflow)?;
    (q as i128).checked_pow(e).ok_or(EvalError::Overflow)
}

fn sum(terms: &[Value]) -> Value {
    let mut acc: i128 = 0;
    for t in terms {
        acc = acc.checked_add((*t)?).ok_or(EvalError::Overflow)?;
    }
    Ok(acc)
}

fn neg(v: Value) -> Value {
    v.map(|x| -x)
}

fn row(
    lo: (i64, bool),
    hi: (i64, bool),
    value: impl Fn(i64) -> Value + Send + Sync + 'static,
) -> Row {
    Row {
        lo: lo.0,
        lo_strict: lo.1,
        hi: hi.0,
        hi_strict: hi.1,
        value: Box::new(value),
    }
}

const INCL: bool = false;
const STRICT: bool = true;

/// Rows of `table` instantiated at `p`.
pub fn table_rows(table: TableId, p: &Params) -> Vec<Row> {
    let q = p.q;
    let m = p.m;
    let pw = move |e: i64| power(q, e);
    let (s1, s2, s3) = (p.size(0), p.size(1), p.size(2));
    let (a12, a13, a23, a) = (p.a12, p.a13, p.a23, p.a123);
    // Size of a three-generator complex, the constant of every last row.
    let n3 = move || {
        sum(&[
            pw(s1),
            pw(s2),
            pw(s3),
            neg(pw(a12)),
            neg(pw(a13)),
            neg(pw(a23)),
            pw(a),
        ])
    };
    // Exponent shared by the first row of the three-generator tables.
    let all = a12 + a13 + a23 - a;

    match table {
        TableId::Thm1 => vec![row((1, INCL), (m, INCL), move |r| {
            sum(&[pw(m), neg(pw(m - r))])
        })],

        TableId::Table(1) => vec![
            row((1, INCL), (m - s2, INCL), move |r| {
                sum(&[pw(s1), neg(pw(a12 + m - r - s2))])
            }),
            row((m - s2, INCL), (m, INCL), move |r| {
                sum(&[pw(s1), pw(s2), neg(pw(a12)), neg(pw(m - r))])
            }),
        ],

        TableId::Table(2) => vec![
            row((1, INCL), (m - s2 - s3 + a23, INCL), move |r| {
                sum(&[pw(s1), neg(pw(m - r - s2 - s3 + all))])
            }),
            row(
                (m - s2 - s3 + a23, INCL),
                (m - s3 - a12 + a, INCL),
                move |r| {
                    sum(&[
                        pw(s1),
                        pw(s2),
                        neg(pw(m - r - s3 + a23)),
                        neg(pw(a12 + a13 - a)),
                    ])
                },
            ),
            row((m - s3 - a12 + a, INCL), (m - s3, INCL), move |r| {
                sum(&[
                    pw(s1),
                    pw(s2),
                    neg(pw(a12)),
                    neg(pw(m - r - s3 + a13)),
                    neg(pw(m - r - s3 + a23)),
                    pw(m - r - s3 + a),
                ])
            }),
            row((m - s3, INCL), (m, INCL), move |r| {
                sum(&[n3(), neg(pw(m - r))])
            }),
        ],

        TableId::Table(3) => vec![
            row((1, INCL), (m - s2 - s3 + a23, INCL), move |r| {
                sum(&[pw(s1), neg(pw(m - r - s2 - s3 + all))])
            }),
            row(
                (m - s2 - s3 + a23, INCL),
                (m - s1 - s3 + a23, INCL),
                move |r| {
                    sum(&[
                        pw(s1),
                        pw(s2),
                        neg(pw(m - r - s3 + a23)),
                        neg(pw(a12 + a13 - a)),
                    ])
                },
            ),
            row(
                (m - s1 - s3 + a23, INCL),
                (m - s1 - s3 + a13, INCL),
                move |r| sum(&[pw(s2), neg(pw(m - r - s1 - s3 + all))]),
            ),
            row(
                (m - s1 - s3 + a13, INCL),
                (m - s3 - a12 + a, INCL),
                move |r| {
                    sum(&[
                        pw(s1),
                        pw(s2),
                        neg(pw(a12 + a23 - a)),
                        neg(pw(m - r - s3 + a13)),
                    ])
                },
            ),
            row((m - s3 - a12 + a, INCL), (m - s3, INCL), move |r| {
                sum(&[
                    pw(s1),
                    pw(s2),
                    neg(pw(a12)),
                    neg(pw(m - r - s3 + a13)),
                    neg(pw(m - r - s3 + a23)),
                    pw(m - r - s3 + a),
                ])
            }),
            row((m - s3, INCL), (m, INCL), move |r| {
                sum(&[n3(), neg(pw(m - r))])
            }),
        ],

        TableId::Table(4) => {
            // Disjoint generators: the tail unions are plain suffix sums of sizes.
            let l = p.sizes.len();
            let tail: Vec<i64> = (0..=l).map(|j| p.sizes[j.min(l)..].iter().sum()).collect();
            let sizes = p.sizes.clone();
            (1..=l)
                .map(|j| {
                    let lo = if j == 1 {
                        (1, INCL)
                    } else {
                        (m - tail[j - 1], STRICT)
                    };
                    let rest = tail[j];
                    let head = sizes[..j].to_vec();
                    row(lo, (m - rest, INCL), move |r| {
                        let mut terms: Vec<Value> = head.iter().map(|&s| pw(s)).collect();
                        terms.push(neg(pw(m - r - rest)));
                        terms.push(Ok(1 - j as i128));
                        sum(&terms)
                    })
                })
                .collect()
        }

        TableId::Table(5) => vec![
            row((1, INCL), (s1, INCL), move |r| {
                sum(&[pw(m), neg(pw(s1)), neg(pw(m - r)), pw(s1 - r)])
            }),
            row((s1, INCL), (m, INCL), move |r| {
                sum(&[pw(m), neg(pw(s1)), neg(pw(m - r)), Ok(1)])
            }),
        ],

        TableId::Table(6) => vec![
            row((1, INCL), (s1 - a12, STRICT), move |r| {
                sum(&[
                    pw(m),
                    neg(pw(s1)),
                    neg(pw(s2)),
                    neg(pw(m - r)),
                    pw(s1 - r),
                    pw(s2 - r),
                ])
            }),
            row((s1 - a12, INCL), (s2, STRICT), move |r| {
                sum(&[
                    pw(m),
                    neg(pw(s1)),
                    neg(pw(s2)),
                    pw(a12),
                    neg(pw(m - r)),
                    pw(s2 - r),
                ])
            }),
            row((s2, INCL), (m, INCL), move |r| {
                sum(&[
                    pw(m),
                    neg(pw(s1)),
                    neg(pw(s2)),
                    pw(a12),
                    neg(pw(m - r)),
                    Ok(1),
                ])
            }),
        ],

        TableId::Table(7) => {
            let l = p.sizes.len();
            let sizes = p.sizes.clone();
            (1..=l + 1)
                .map(|j| {
                    let lo = if j == 1 {
                        (1, INCL)
                    } else {
                        (sizes[j - 2], INCL)
                    };
                    let hi = if j <= l {
                        (sizes[j - 1], STRICT)
                    } else {
                        (m, INCL)
                    };
                    let all_sizes = sizes.clone();
                    row(lo, hi, move |r| {
                        let mut terms = vec![pw(m), neg(pw(m - r)), Ok(j as i128 - 1)];
                        terms.extend(all_sizes.iter().map(|&s| neg(pw(s))));
                        terms.extend(all_sizes[j - 1..].iter().map(|&s| pw(s - r)));
                        sum(&terms)
                    })
                })
                .collect()
        }

        TableId::Table(8) => vec![
            row((1, INCL), (m - s2 - s3 + a23, INCL), move |r| {
                sum(&[pw(s1), neg(pw(m - r - s2 - s3 + all))])
            }),
            row(
                (m - s2 - s3 + a23, STRICT),
                (m - s3 - a13 + a, INCL),
                move |r| {
                    sum(&[
                        pw(s1),
                        pw(s3),
                        neg(pw(m - r - s3 + a23)),
                        neg(pw(a12 + a13 - a)),
                    ])
                },
            ),
            row((m - s3 - a13 + a, STRICT), (m - s3, INCL), move |r| {
                sum(&[
                    pw(s1),
                    pw(s3),
                    neg(pw(a13)),
                    neg(pw(m - r - s3 + a12)),
                    neg(pw(m - r - s3 + a23)),
                    pw(m - r - s3 + a),
                ])
            }),
            row((m - s3, STRICT), (m, INCL), move |r| {
                sum(&[n3(), neg(pw(m - r))])
            }),
        ],

        TableId::Table(9) => vec![
            row((1, INCL), (m - s2 - s3 + a23, INCL), move |r| {
                sum(&[pw(s1), neg(pw(m - r - s2 - s3 + all))])
            }),
            // The exponent m - r - |S3| - |S1∩S3| + |S1∩S2∩S3| is a tempting reading here
            // but disagrees with exhaustive search. The form below matches the
            // corresponding row of `Table(3)` and agrees with search everywhere.
            row(
                (m - s2 - s3 + a23, STRICT),
                (m - s1 - s3 + a23, STRICT),
                move |r| {
                    sum(&[
                        pw(s1),
                        pw(s2),
                        neg(pw(m - r - s3 + a23)),
                        neg(pw(a12 + a13 - a)),
                    ])
                },
            ),
            row(
                (m - s1 - s3 + a23, INCL),
                (m - s1 - s3 + a12, STRICT),
                move |r| sum(&[pw(s2), neg(pw(m - r - s1 - s3 + all))]),
            ),
            row(
                (m - s1 - s3 + a12, INCL),
                (m - s3 - a13 + a, INCL),
                move |r| {
                    sum(&[
                        pw(s1),
                        pw(s2),
                        neg(pw(a13 + a23 - a)),
                        neg(pw(m - r - s3 + a12)),
                    ])
                },
            ),
            row((m - s3 - a13 + a, STRICT), (m - s3, INCL), move |r| {
                sum(&[
                    pw(s1),
                    pw(s2),
                    neg(pw(a13)),
                    neg(pw(m - r - s3 + a12)),
                    neg(pw(m - r - s3 + a23)),
                    pw(m - r - s3 + a),
                ])
            }),
            row((m - s3, STRICT), (m, INCL), move |r| {
                sum(&[n3(), neg(pw(m - r))])
            }),
        ],

        TableId::Table(10) => vec![
            row((1, INCL), (m - s1 - s3 + a13, INCL), move |r| {
                sum(&[pw(s2), neg(pw(m - r - s1 - s3 + all))])
            }),
            row(
                (m - s1 - s3 + a13, STRICT),
                (m - s1 - a23 + a, INCL),
                move |r| {
                    sum(&[
                        pw(s2),
                        pw(s3),
                        neg(pw(a12 + a23 - a)),
                        neg(pw(m - r - s1 + a13)),
                    ])
                },
            ),
            row((m - s1 - a23 + a, STRICT), (m - s1, INCL), move |r| {
                sum(&[
                    pw(s2),
                    pw(s3),
                    neg(pw(a23)),
                    neg(pw(m - r - s1 + a12)),
                    neg(pw(m - r - s1 + a13)),
                    pw(m - r - s1 + a),
                ])
            }),
            row((m - s1, STRICT), (m, INCL), move |r| {
                sum(&[n3(), neg(pw(m - r))])
            }),
        ],

        TableId::Table(11) => vec![
            row((1, INCL), (m - s1 - s2 + a12, INCL), move |r| {
                sum(&[pw(s3), neg(pw(m - r - s1 - s2 + all))])
            }),
            row(
                (m - s1 - s2 + a12, STRICT),
                (m - s1 - a23 + a, INCL),
                move |r| {
                    sum(&[
                        pw(s2),
                        pw(s3),
                        neg(pw(a13 + a23 - a)),
                        neg(pw(m - r - s1 + a12)),
                    ])
                },
            ),
            row((m - s1 - a23 + a, STRICT), (m - s1, INCL), move |r| {
                sum(&[
                    pw(s2),
                    pw(s3),
                    neg(pw(a23)),
                    neg(pw(m - r - s1 + a12)),
                    neg(pw(m - r - s1 + a13)),
                    pw(m - r - s1 + a),
                ])
            }),
            row((m - s1, STRICT), (m, INCL), move |r| {
                sum(&[n3(), neg(pw(m - r))])
            }),
        ],

        // Unknown tables have no rows, so evaluation reports every r as uncovered.
        TableId::Table(_) => Vec::new(),
    }
}

/// The second row of `Table(9)` with the uncorrected exponent, kept so tests
/// can show it is wrong. Not used by the dispatcher.
pub fn table9_row2_uncorrected(p: &Params, r: i64) -> Value {
    let (s1, s2, s3) = (p.size(0), p.size(1), p.size(2));
    let q = p.q;
    sum(&[
        power(q, s1),
        power(q, s2),
        neg(power(q, p.m - r - s3 - p.a13 + p.a123)),
        neg(power(q, p.a12 + p.a13 - p.a123)),
    ])
}

/// A row index (1-based) and its value at some `r`.
pub type RowValue = (u8, i128);

/// Per-`r` result of evaluating a table: the value and every row that covered `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluated {
    pub value: i128,
    pub rows: Vec<u8>,
}

/// Evaluates `table` at every `r` in `1..=m`. Overlapping rows must agree.
/// `bump` adds one to the value of the given row, for mutation testing.
pub fn evaluate_table(
    table: TableId,
    p: &Params,
    bump: Option<u8>,
) -> Result<Vec<Evaluated>, FormulaError> {
    let rows = table_rows(table, p);
    let mut out = Vec::with_capacity(p.m as usize);
    for r in 1..=p.m {
        let mut hits: Vec<RowValue> = Vec::new();
        for (i, rw) in rows.iter().enumerate() {
            if !rw.covers(r) {
                continue;
            }
            let idx = i as u8 + 1;
            let v = rw.eval(r).map_err(|e| match e {
                EvalError::NegativeExponent => FormulaError::NegativeExponent {
                    table,
                    row: idx,
                    r: r as usize,
                },
                EvalError::Overflow => FormulaError::Overflow,
            })?;
            hits.push((idx, if bump == Some(idx) { v + 1 } else { v }));
        }
        let Some(&(_, first)) = hits.first() else {
            return Err(FormulaError::Uncovered {
                table,
                r: r as usize,
            });
        };
        if hits.iter().any(|&(_, v)| v != first) {
            return Err(FormulaError::Inconsistent {
                table,
                r: r as usize,
                values: hits,
            });
        }
        out.push(Evaluated {
            value: first,
            rows: hits.iter().map(|h| h.0).collect(),
        });
    }
    Ok(out)
}
