use proptest::prelude::*;

use simplex_ghw::code::{build_code, hierarchy_prop1, Prop1Search};
use simplex_ghw::formulas::{hierarchy_formula_with, Fault, FormulaError, TableId};
use simplex_ghw::golden::{verify_case, CASES};
use simplex_ghw::oracle::hierarchy_definitional;
use simplex_ghw::simplicial::ComplexSpec;
use simplex_ghw::{Field, Limits};

fn spec_strategy() -> impl Strategy<Value = (u64, ComplexSpec)> {
    (
        prop_oneof![Just(2u64), Just(3), Just(4)],
        1usize..=4,
        any::<bool>(),
    )
        .prop_flat_map(|(q, m, complement)| {
            let set = prop::collection::vec(1..=m, 1..=m);
            (
                Just(q),
                Just(m),
                Just(complement),
                prop::collection::vec(set, 1..=3),
            )
        })
        .prop_filter_map("empty defining set", |(q, m, complement, sets)| {
            let spec = ComplexSpec::new(m, &sets, complement).ok()?;
            (!complement || spec.sets().iter().all(|s| s.len() < m)).then_some((q, spec))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Arbitrary complexes, including ones outside every closed form and
    // ones whose generators leave a nontrivial kernel.
    #[test]
    fn search_matches_definition((q, spec) in spec_strategy()) {
        let field = Field::from_order(q).unwrap();
        let limits = Limits::default();
        let code = build_code(&field, &spec, &limits).unwrap();
        let search = hierarchy_prop1(&code, &limits).unwrap();
        let brute = hierarchy_definitional(&code, &limits).unwrap();
        prop_assert_eq!(&search.values, &brute.values);
        prop_assert!(search.is_strictly_increasing());
    }

    #[test]
    fn witnesses_attain_the_value((q, spec) in spec_strategy()) {
        let field = Field::from_order(q).unwrap();
        let limits = Limits::default();
        let code = build_code(&field, &spec, &limits).unwrap();
        let search = Prop1Search::new(&code, &limits).unwrap();
        let (h, witnesses) = search.hierarchy().unwrap();
        for (r, w) in witnesses.iter().enumerate() {
            prop_assert_eq!(w.dim(), r + 1);
            prop_assert!(w.meets_trivially(&field, code.kernel()).unwrap());
            prop_assert_eq!(code.n() as u128 - search.intersection(w), h.values[r]);
        }
    }
}

#[test]
fn every_row_fault_is_caught_on_some_example() {
    let limits = Limits::default();
    let tables = (1..=11).map(TableId::Table);
    for table in tables {
        for row in 1..=6u8 {
            let mut used = false;
            let mut caught = false;
            for case in CASES.iter().filter(|c| c.formula_applies) {
                let spec = case.spec().unwrap();
                let clean = hierarchy_formula_with(&spec, case.q, None).unwrap();
                let faulty = hierarchy_formula_with(&spec, case.q, Some(Fault { table, row }));
                let touches = clean.provenance.iter().any(|p| {
                    matches!(p, simplex_ghw::code::Provenance::Formula { table: t, .. } if *t == table)
                });
                if !touches {
                    continue;
                }
                match faulty {
                    Ok(h) if h.values == clean.values => {}
                    Ok(_)
                    | Err(FormulaError::Inconsistent { .. })
                    | Err(FormulaError::NotApplicable(_)) => {
                        used = true;
                        caught |= !verify_case(case, &limits, Some(Fault { table, row }))
                            .unwrap()
                            .passed();
                    }
                    Err(e) => panic!("{table} row {row} on {}: {e}", case.id),
                }
            }
            assert_eq!(
                used, caught,
                "{table} row {row} perturbed output without failing verification"
            );
        }
    }
}
