//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use simplex_ghw::code::{build_code, hierarchy_prop1, Prop1Search};
use simplex_ghw::formulas::{
    evaluate_table, hierarchy_formula, lemma1_dim, lemma1_witness, select, table_rows, Params,
    TableId,
};
use simplex_ghw::golden::{verify_case, CASES};
use simplex_ghw::linalg::{enumerate_subspaces, gaussian_binomial, support_mask, Subspace};
use simplex_ghw::oracle::{hierarchy_definitional, lemma1_brute, lemma1_brute_multi};
use simplex_ghw::simplicial::ComplexSpec;
use simplex_ghw::{Field, Limits};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("worked examples", golden_suite),
        ("randomized equivalence", randomized_equivalence),
        ("boundary consistency", boundary_consistency),
        ("Wei monotonicity", wei_monotonicity),
        ("lemma on trivially meeting subspaces", lemma_exhaustive),
        ("subspace counting", subspace_counting),
        ("complement identity", complement_identity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn golden_suite() -> Outcome {
    let limits = Limits::default();
    for case in CASES {
        let start = Instant::now();
        let report = verify_case(case, &limits, None).map_err(|e| format!("{}: {e}", case.id))?;
        let took = start.elapsed();
        if let Some(why) = report.failure() {
            return Err(format!("{}: {why}", case.id));
        }
        if took > Duration::from_secs(10) {
            return Err(format!("{} took {took:?}", case.id));
        }
    }
    Ok(format!(
        "{} cases, formula, search and definitional agree",
        CASES.len()
    ))
}

/// Nonempty random subset of `coords`.
fn random_subset(rng: &mut ChaCha8Rng, coords: &[usize]) -> Vec<usize> {
    loop {
        let s: Vec<usize> = coords
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// Up to three overlapping generators, or up to four disjoint ones. For `Δ`
/// the generators cover `[m]`; for `Δ^c` no generator is all of `[m]`.
fn random_spec(rng: &mut ChaCha8Rng, m: usize, complement: bool) -> ComplexSpec {
    let coords: Vec<usize> = (1..=m).collect();
    let mut sets: Vec<Vec<usize>> = if rng.gen_bool(0.3) {
        let blocks = rng.gen_range(1..=4.min(m));
        let mut shuffled = coords.clone();
        shuffled.shuffle(rng);
        let used = if complement {
            rng.gen_range(blocks..=m)
        } else {
            m
        };
        let mut out = vec![Vec::new(); blocks];
        for (i, &c) in shuffled[..used].iter().enumerate() {
            let b = if i < blocks {
                i
            } else {
                rng.gen_range(0..blocks)
            };
            out[b].push(c);
        }
        out
    } else {
        let l = rng.gen_range(1..=3);
        let mut out: Vec<Vec<usize>> = (0..l).map(|_| random_subset(rng, &coords)).collect();
        if !complement {
            for c in 1..=m {
                if !out.iter().any(|s| s.contains(&c)) {
                    let i = rng.gen_range(0..l);
                    out[i].push(c);
                }
            }
        }
        out
    };
    if complement {
        for s in sets.iter_mut() {
            if s.len() == m {
                s.pop();
            }
        }
    }
    ComplexSpec::new(m, &sets, complement).expect("generated sets are valid")
}

fn randomized_equivalence() -> Outcome {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut specs: Vec<(u64, ComplexSpec)> = Vec::new();
    let mut seen = HashSet::new();
    let mut attempts = 0;
    while specs.len() < 240 && attempts < 100_000 {
        attempts += 1;
        let q = *[2u64, 3].choose(&mut rng).unwrap();
        let m = rng.gen_range(2..=6);
        let complement = rng.gen_bool(0.5);
        let spec = random_spec(&mut rng, m, complement);
        if select(&spec, q).is_ok() && seen.insert((q, spec.to_string())) {
            specs.push((q, spec));
        }
    }
    if specs.len() < 200 {
        return Err(format!("only {} applicable specs generated", specs.len()));
    }
    let failures: Vec<String> = specs
        .par_iter()
        .filter_map(|(q, spec)| {
            let field = Field::from_order(*q).unwrap();
            let formula = hierarchy_formula(spec, *q).map(|h| h.values);
            let code = match build_code(&field, spec, &limits) {
                Ok(c) => c,
                Err(e) => return Some(format!("q={q} {spec}: {e}")),
            };
            let search = hierarchy_prop1(&code, &limits).map(|h| h.values);
            let brute = hierarchy_definitional(&code, &limits).map(|h| h.values);
            match (&formula, &search, &brute) {
                (Ok(f), Ok(s), Ok(b)) if f == s && s == b => None,
                _ => Some(format!(
                    "q={q} {spec}: formula {formula:?}, search {search:?}, definitional {brute:?}"
                )),
            }
        })
        .collect();
    let complements = specs.iter().filter(|(_, s)| s.complement()).count();
    match failures.first() {
        None => Ok(format!(
            "{} specs ({} complements), all three methods agree at every r",
            specs.len(),
            complements
        )),
        Some(f) => Err(format!(
            "{} of {} disagree; first: {f}",
            failures.len(),
            specs.len()
        )),
    }
}

fn boundary_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut tuples: BTreeSet<(TableId, String)> = BTreeSet::new();
    let mut tables_with_endpoints: BTreeSet<TableId> = BTreeSet::new();
    let mut tables_seen: BTreeSet<TableId> = BTreeSet::new();
    let mut endpoints = 0usize;
    let start = Instant::now();
    let mut attempts = 0;
    while (tuples.len() < 600 || tables_seen.len() < 12) && attempts < 200_000 {
        attempts += 1;
        let q = *[2u64, 3, 4, 5, 7, 8, 9].choose(&mut rng).unwrap();
        let m = rng.gen_range(2..=12);
        let complement = rng.gen_bool(0.4);
        let spec = random_spec(&mut rng, m, complement);
        let Ok(selected) = select(&spec, q) else {
            continue;
        };
        let p = Params::from_spec(&spec, q);
        for (_, table) in selected {
            let key = format!("{p:?}");
            if !tuples.insert((table, key)) {
                continue;
            }
            tables_seen.insert(table);
            let rows = table_rows(table, &p);
            let live = |row: &simplex_ghw::formulas::Row| (1..=p.m).any(|r| row.covers(r));
            // Row i ends where row j starts. Both closed forms are evaluated at
            // that r, whether or not the bound is strict on either side.
            for (i, a) in rows.iter().enumerate() {
                for (j, b) in rows.iter().enumerate().skip(i + 1) {
                    let r = a.hi;
                    if r != b.lo || r < 1 || r > p.m || !live(a) || !live(b) {
                        continue;
                    }
                    endpoints += 1;
                    tables_with_endpoints.insert(table);
                    if a.eval(r) != b.eval(r) {
                        return Err(format!(
                            "{table} rows {} and {} differ at r={r} for {p:?}: {:?} vs {:?}",
                            i + 1,
                            j + 1,
                            a.eval(r),
                            b.eval(r)
                        ));
                    }
                }
            }
            if let Err(e) = evaluate_table(table, &p, None) {
                return Err(format!("{table} at {p:?}: {e}"));
            }
        }
    }
    let took = start.elapsed();
    if tuples.len() < 500 {
        return Err(format!("only {} parameter tuples reached", tuples.len()));
    }
    let mut all_tables: Vec<TableId> = (1..=11).map(TableId::Table).collect();
    all_tables.push(TableId::Thm1);
    let missing: Vec<String> = all_tables
        .iter()
        .filter(|t| !tables_seen.contains(t))
        .map(|t| t.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(format!("tables never exercised: {}", missing.join(", ")));
    }
    // The single full-space formula has no endpoints; every numbered table does.
    if let Some(t) = (1..=11)
        .map(TableId::Table)
        .find(|t| !tables_with_endpoints.contains(t))
    {
        return Err(format!("no shared endpoint of {t} was reached"));
    }
    if took > Duration::from_secs(1) {
        return Err(format!("symbolic sweep took {took:?}"));
    }
    let shared: Vec<String> = tables_with_endpoints
        .iter()
        .map(|t| t.to_string())
        .collect();
    Ok(format!(
        "{} tuples over 12 tables, {endpoints} shared endpoints agree (tables with shared endpoints: {})",
        tuples.len(),
        shared.join(",")
    ))
}

fn wei_monotonicity() -> Outcome {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut checked = 0;
    let mut check =
        |label: String, values: &[u128], n: usize, complement: bool| -> Result<(), String> {
            checked += 1;
            let increasing = values.windows(2).all(|w| w[0] < w[1]);
            let last = *values.last().ok_or(format!("{label}: empty hierarchy"))?;
            let expected_last = if complement { n as u128 } else { n as u128 - 1 };
            if !increasing || last != expected_last {
                return Err(format!("{label}: {values:?} with n={n}"));
            }
            Ok(())
        };
    for case in CASES {
        let spec = case.spec().unwrap();
        let field = case.field().unwrap();
        let code = build_code(&field, &spec, &limits).map_err(|e| e.to_string())?;
        let search = hierarchy_prop1(&code, &limits).map_err(|e| e.to_string())?;
        check(
            format!("{} search", case.id),
            &search.values,
            code.n(),
            case.complement,
        )?;
        if let Ok(h) = hierarchy_formula(&spec, case.q) {
            check(
                format!("{} formula", case.id),
                &h.values,
                code.n(),
                case.complement,
            )?;
        }
    }
    for _ in 0..150 {
        let q = *[2u64, 3, 4].choose(&mut rng).unwrap();
        let m = rng.gen_range(2..=5);
        let complement = rng.gen_bool(0.5);
        let spec = random_spec(&mut rng, m, complement);
        let field = Field::from_order(q).unwrap();
        let Ok(code) = build_code(&field, &spec, &limits) else {
            continue;
        };
        let search = hierarchy_prop1(&code, &limits).map_err(|e| e.to_string())?;
        let label = format!("q={q} {spec}");
        // A degenerate complement code has dimension below m; Wei's bound still applies.
        check(
            format!("{label} search"),
            &search.values,
            code.n(),
            complement,
        )?;
        if let Ok(h) = hierarchy_formula(&spec, q) {
            check(format!("{label} formula"), &h.values, code.n(), complement)?;
        }
    }
    Ok(format!(
        "{checked} hierarchies strictly increasing with the expected last value"
    ))
}

fn all_subspaces(field: &Field, m: usize, limits: &Limits) -> Vec<Subspace> {
    (0..=m)
        .flat_map(|r| enumerate_subspaces(field, m, r, limits).unwrap())
        .collect()
}

fn lemma_exhaustive() -> Outcome {
    let limits = Limits::default();
    let mut pairs = 0usize;
    for q in [2u64, 3] {
        let field = Field::prime(q).unwrap();
        for m in 1..=4 {
            let spaces = all_subspaces(&field, m, &limits);
            let idx: Vec<(usize, usize)> = (0..spaces.len())
                .flat_map(|i| (i..spaces.len()).map(move |j| (i, j)))
                .collect();
            pairs += idx.len();
            let bad = idx.par_iter().find_map_any(|&(i, j)| {
                let (u, v) = (&spaces[i], &spaces[j]);
                let d = u.intersection(&field, v).unwrap().dim();
                let claimed = lemma1_dim(u.dim(), v.dim(), d).unwrap();
                let brute = lemma1_brute(&field, u, v, &limits).unwrap();
                let w = lemma1_witness(&field, u, v).unwrap();
                let ok = brute == claimed
                    && w.dim() == claimed
                    && w.meets_trivially(&field, u).unwrap()
                    && w.meets_trivially(&field, v).unwrap()
                    && w.is_subspace_of(&field, &u.sum(&field, v).unwrap());
                (!ok).then(|| {
                    format!(
                        "q={q} U={:?} V={:?}: claimed {claimed}, brute {brute}, witness dim {}",
                        u,
                        v,
                        w.dim()
                    )
                })
            });
            if let Some(b) = bad {
                return Err(b);
            }
        }
    }
    // Disjoint coordinate subspaces: the answer is the total size minus the largest block.
    let mut families = 0;
    for q in [2u64, 3] {
        let field = Field::prime(q).unwrap();
        for m in 1..=5 {
            for spec in disjoint_families(m) {
                let axes: Vec<Subspace> = spec
                    .iter()
                    .map(|s| Subspace::axis(m, s.iter().map(|c| c - 1)))
                    .collect();
                let mut sizes: Vec<usize> = spec.iter().map(Vec::len).collect();
                sizes.sort();
                let expected: usize = sizes[..sizes.len() - 1].iter().sum();
                let brute =
                    lemma1_brute_multi(&field, &axes, &limits).map_err(|e| e.to_string())?;
                families += 1;
                if brute != expected {
                    return Err(format!(
                        "q={q} m={m} blocks {spec:?}: brute {brute}, expected {expected}"
                    ));
                }
            }
        }
    }
    Ok(format!(
        "{pairs} subspace pairs and {families} disjoint-axis families match"
    ))
}

/// Every partition of `[m]` into at least two blocks.
fn disjoint_families(m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    // Restricted growth strings enumerate set partitions.
    let mut labels = vec![0usize; m];
    loop {
        let blocks = labels.iter().max().map_or(0, |b| b + 1);
        if blocks >= 2 {
            let mut parts = vec![Vec::new(); blocks];
            for (c, &b) in labels.iter().enumerate() {
                parts[b].push(c + 1);
            }
            out.push(parts);
        }
        let mut i = m;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let cap = labels[..i].iter().max().unwrap() + 1;
            if labels[i] < cap {
                labels[i] += 1;
                labels[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}

fn subspace_counting() -> Outcome {
    let limits = Limits::default();
    let mut total = 0u128;
    for q in [2u64, 3] {
        let field = Field::prime(q).unwrap();
        for m in 0..=5 {
            for r in 0..=m {
                let listed: Vec<Subspace> = enumerate_subspaces(&field, m, r, &limits)
                    .unwrap()
                    .collect();
                let distinct: HashSet<&Subspace> = listed.iter().collect();
                let expected = gaussian_binomial(m, r, q).unwrap();
                if listed.len() as u128 != expected || distinct.len() != listed.len() {
                    return Err(format!(
                        "q={q} m={m} r={r}: listed {} ({} distinct), expected {expected}",
                        listed.len(),
                        distinct.len()
                    ));
                }
                if listed.iter().any(|s| s.dim() != r) {
                    return Err(format!("q={q} m={m} r={r}: wrong dimension listed"));
                }
                total += expected;
            }
        }
    }
    Ok(format!(
        "{total} subspaces enumerated, every count equals the Gaussian binomial"
    ))
}

fn complement_identity() -> Outcome {
    let limits = Limits::default();
    let field = Field::prime(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut checked = 0u64;
    let mut specs = 0;
    while specs < 20 {
        let m = rng.gen_range(2..=5);
        let spec = random_spec(&mut rng, m, false);
        if spec.sets().iter().any(|s| s.len() == m) {
            continue;
        }
        specs += 1;
        let delta = build_code(&field, &spec, &limits).map_err(|e| e.to_string())?;
        let comp =
            build_code(&field, &spec.with_complement(true), &limits).map_err(|e| e.to_string())?;
        let sd = Prop1Search::new(&delta, &limits).map_err(|e| e.to_string())?;
        let sc = Prop1Search::new(&comp, &limits).map_err(|e| e.to_string())?;
        for r in 0..=m {
            for h in enumerate_subspaces(&field, m, r, &limits).unwrap() {
                let mut in_delta = 0u128;
                let mut in_comp = 0u128;
                h.dual(&field).for_each_element(&field, |v| {
                    let member = spec.in_complex(support_mask(v));
                    in_delta += member as u128;
                    in_comp += !member as u128;
                });
                let whole = 1u128 << (m - r);
                let (a, b) = (sd.intersection(&h), sc.intersection(&h));
                checked += 1;
                if in_delta + in_comp != whole || a != in_delta || b != in_comp || a + b != whole {
                    return Err(format!(
                        "{spec} H={h:?}: direct {in_delta}+{in_comp}, search {a}+{b}, expected total {whole}"
                    ));
                }
            }
        }
    }
    Ok(format!(
        "{specs} specs, {checked} subspaces H, both sides sum to q^(m-r)"
    ))
}
