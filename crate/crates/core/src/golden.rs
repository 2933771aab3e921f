//! Worked examples with known parameters and hierarchies, and a checker that
//! runs every available method on them.

use crate::code::{build_code, hierarchy_prop1};
use crate::error::Error;
use crate::field::Field;
use crate::formulas::{code_params_formula, hierarchy_formula_with, Fault, FormulaError};
use crate::limits::Limits;
use crate::oracle::hierarchy_definitional;
use crate::simplicial::ComplexSpec;

#[derive(Clone, Copy, Debug)]
pub struct GoldenCase {
    pub id: &'static str,
    /// Shared prefix used by `--only` style filters, e.g. `thm3` or `app`.
    pub group: &'static str,
    pub q: u64,
    pub m: usize,
    pub sets: &'static str,
    pub complement: bool,
    pub n: u128,
    pub k: usize,
    pub hierarchy: &'static [u128],
    /// `false` for examples outside every closed form; the formula must refuse them.
    pub formula_applies: bool,
}

impl GoldenCase {
    pub fn spec(&self) -> crate::Result<ComplexSpec> {
        ComplexSpec::parse(self.m, self.sets, self.complement)
    }

    pub fn field(&self) -> crate::Result<Field> {
        Field::from_order(self.q)
    }

    pub fn matches(&self, filter: &str) -> bool {
        self.id == filter || self.group == filter
    }
}

#[allow(clippy::too_many_arguments)]
const fn case(
    id: &'static str,
    group: &'static str,
    q: u64,
    m: usize,
    sets: &'static str,
    complement: bool,
    n: u128,
    hierarchy: &'static [u128],
) -> GoldenCase {
    GoldenCase {
        id,
        group,
        q,
        m,
        sets,
        complement,
        n,
        k: m,
        hierarchy,
        formula_applies: true,
    }
}

pub const CASES: &[GoldenCase] = &[
    case("thm1", "thm1", 2, 4, "1,2,3,4", false, 16, &[8, 12, 14, 15]),
    case(
        "thm2",
        "thm2",
        2,
        5,
        "1,2,3;3,4,5",
        false,
        14,
        &[4, 6, 10, 12, 13],
    ),
    case(
        "thm3a",
        "thm3",
        2,
        6,
        "1,2;1,3,4;2,3,5,6",
        false,
        23,
        &[4, 7, 15, 19, 21, 22],
    ),
    case(
        "thm3b",
        "thm3",
        3,
        5,
        "1,2;1,3,4;2,3,4,5",
        false,
        103,
        &[22, 76, 94, 100, 102],
    ),
    case(
        "thm4",
        "thm4",
        3,
        6,
        "1;2;3,4;5,6",
        false,
        21,
        &[2, 4, 10, 12, 18, 20],
    ),
    case(
        "thm5",
        "thm5",
        2,
        5,
        "2,3,4",
        true,
        24,
        &[12, 18, 21, 23, 24],
    ),
    case(
        "thm6",
        "thm6",
        2,
        6,
        "1,2;2,3,4",
        true,
        54,
        &[26, 40, 47, 51, 53, 54],
    ),
    case(
        "thm7",
        "thm7",
        3,
        5,
        "1;2;3;4,5",
        true,
        228,
        &[150, 202, 220, 226, 228],
    ),
    case(
        "app1",
        "app",
        2,
        6,
        "1,2;2,3,4,5;1,3,4,6",
        false,
        29,
        &[8, 13, 21, 25, 27, 28],
    ),
    case(
        "app2",
        "app",
        2,
        7,
        "1,2,3;1,2,4,5;3,4,6,7",
        false,
        33,
        &[8, 12, 17, 25, 29, 31, 32],
    ),
    case(
        "app3",
        "app",
        2,
        5,
        "1,2,3;3,4,5;1,2,4",
        false,
        17,
        &[4, 9, 13, 15, 16],
    ),
    case(
        "app4",
        "app",
        2,
        6,
        "1,2,3,5;1,2,4,5;3,4,5,6",
        false,
        34,
        &[8, 18, 26, 30, 32, 33],
    ),
    // Generators do not cover the ambient space, so the kernel is nontrivial.
    GoldenCase {
        id: "ex1",
        group: "ex1",
        q: 2,
        m: 4,
        sets: "1,2;2,3",
        complement: false,
        n: 6,
        k: 3,
        hierarchy: &[2, 4, 5],
        formula_applies: false,
    },
];

/// Outcome of every method on one [`GoldenCase`].
#[derive(Debug)]
pub struct CaseReport {
    pub case: GoldenCase,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub formula: Result<Vec<u128>, FormulaError>,
    /// Stated `[n, k, d]` cross-check; `None` when the formula does not apply.
    pub params: Option<Result<(), FormulaError>>,
    pub prop1: Result<Vec<u128>, Error>,
    pub definitional: Result<Vec<u128>, Error>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        let c = &self.case;
        let expected = c.hierarchy;
        let shape = self.n == Some(c.n as usize) && self.k == Some(c.k);
        let searched =
            self.prop1.as_deref() == Ok(expected) && self.definitional.as_deref() == Ok(expected);
        let formula = if c.formula_applies {
            self.formula.as_deref() == Ok(expected) && matches!(self.params, Some(Ok(())))
        } else {
            matches!(self.formula, Err(FormulaError::NotApplicable(_)))
        };
        shape && searched && formula
    }

    /// One-line explanation of the first failed check, if any.
    pub fn failure(&self) -> Option<String> {
        if self.passed() {
            return None;
        }
        let c = &self.case;
        if self.n != Some(c.n as usize) || self.k != Some(c.k) {
            return Some(format!(
                "expected n={} k={}, built n={:?} k={:?}",
                c.n, c.k, self.n, self.k
            ));
        }
        if let Some(Err(e)) = &self.params {
            return Some(format!("parameters: {e}"));
        }
        let show =
            |label: &str, got: String| format!("{label}: expected {:?}, got {got}", c.hierarchy);
        match &self.formula {
            Ok(v) if !c.formula_applies => {
                return Some(format!("formula should not apply, got {v:?}"))
            }
            Ok(v) if v != c.hierarchy => return Some(show("formula", format!("{v:?}"))),
            Err(e) if c.formula_applies => return Some(show("formula", e.to_string())),
            _ => {}
        }
        match &self.prop1 {
            Ok(v) if v != c.hierarchy => return Some(show("search", format!("{v:?}"))),
            Err(e) => return Some(show("search", e.to_string())),
            _ => {}
        }
        Some(match &self.definitional {
            Ok(v) => show("definitional", format!("{v:?}")),
            Err(e) => show("definitional", e.to_string()),
        })
    }
}

/// Runs the closed form (optionally with an injected fault), the intersection
/// search and the definitional oracle on `case`.
pub fn verify_case(
    case: &GoldenCase,
    limits: &Limits,
    fault: Option<Fault>,
) -> crate::Result<CaseReport> {
    let field = case.field()?;
    let spec = case.spec()?;
    let formula = hierarchy_formula_with(&spec, case.q, fault).map(|h| h.values);
    let params = case
        .formula_applies
        .then(|| code_params_formula(&spec, case.q).map(|_| ()));
    let (n, k, prop1, definitional) = match build_code(&field, &spec, limits) {
        Ok(code) => (
            Some(code.n()),
            Some(code.k()),
            hierarchy_prop1(&code, limits).map(|h| h.values),
            hierarchy_definitional(&code, limits).map(|h| h.values),
        ),
        Err(e) => (None, None, Err(e.clone()), Err(e)),
    };
    Ok(CaseReport {
        case: *case,
        n,
        k,
        formula,
        params,
        prop1,
        definitional,
    })
}
