use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use simplex_ghw::code::{build_code, LinearCode, Prop1Search, WeightHierarchy};
use simplex_ghw::field::{is_prime, prime_power};
use simplex_ghw::formulas::{
    code_params_formula, hierarchy_formula_with, select, Fault, FormulaError, TableId,
};
use simplex_ghw::golden::{verify_case, CaseReport, CASES};
use simplex_ghw::limits::DEFAULT_MAX_ENUM;
use simplex_ghw::linalg::{gaussian_binomial, Subspace};
use simplex_ghw::oracle::hierarchy_definitional;
use simplex_ghw::simplicial::ComplexSpec;
use simplex_ghw::{Field, Limits};
use simplex_ghw_cli::{exit, CliError, Counterexample, RunReport};

#[derive(Parser)]
#[command(
    name = "ghw",
    version,
    about = "Generalized Hamming weights of codes defined by simplicial complexes"
)]
struct Cli {
    /// Largest number of subspaces any single search may visit.
    #[arg(long, global = true, env = "GHW_MAX_ENUM", default_value_t = DEFAULT_MAX_ENUM)]
    max_enum: u64,
    /// Worker threads for the searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Report dropped generators and other diagnostics on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print [n, k, d] of the code.
    Params {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the full weight hierarchy d_1, ..., d_k.
    Hierarchy {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include an optimal subspace H for each r (found by the search).
        #[arg(long)]
        witness: bool,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Check every worked example with all three methods.
    VerifyPaper {
        /// Run only the examples with this id or group, e.g. `thm3` or `app`.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Count the r-dimensional subspaces of GF(q)^m.
    CountSubspaces {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Args)]
struct FieldArgs {
    /// Field order, or the characteristic when --e is given.
    #[arg(long)]
    q: u64,
    /// Extension degree; with it, --q must be prime.
    #[arg(long)]
    e: Option<u32>,
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Ambient dimension.
    #[arg(long)]
    m: usize,
    /// Generators as 1-based coordinate sets, e.g. "1,2,3;3,4,5".
    #[arg(long)]
    sets: String,
    /// Use the complement of the complex as the defining set.
    #[arg(long)]
    complement: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Formula,
    /// Exhaustive search over subspaces H meeting the kernel trivially.
    Brute,
    /// Enumerate every subcode directly.
    Definitional,
    /// Formula and brute, which must agree.
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

struct Context {
    limits: Limits,
    verbose: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(exit::PARSE);
        }
    }
    let ctx = Context {
        limits: Limits::new(cli.max_enum),
        verbose: cli.verbose,
    };
    let result = match cli.command {
        Command::Params { code, format } => cmd_params(&ctx, &code, format),
        Command::Hierarchy {
            code,
            method,
            format,
            witness,
            inject_fault,
        } => cmd_hierarchy(
            &ctx,
            &code,
            method,
            format,
            witness,
            inject_fault.as_deref(),
        ),
        Command::VerifyPaper { only, inject_fault } => {
            cmd_verify(&ctx, only.as_deref(), inject_fault.as_deref())
        }
        Command::CountSubspaces { field, m, r } => cmd_count(&field, m, r),
    };
    match result {
        Ok(()) => ExitCode::from(exit::OK),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn resolve_field(args: &FieldArgs) -> Result<Field, CliError> {
    Ok(match args.e {
        Some(e) => Field::new(args.q, e)?,
        None => Field::from_order(args.q)?,
    })
}

fn resolve_spec(ctx: &Context, args: &CodeArgs) -> Result<ComplexSpec, CliError> {
    let sets = simplex_ghw::simplicial::parse_sets(&args.sets)?;
    let (spec, removed) = ComplexSpec::normalize_reporting(args.m, &sets, args.complement)?;
    if ctx.verbose {
        for s in removed {
            eprintln!("warning: generator {s} lies inside another generator and was dropped");
        }
    }
    Ok(spec)
}

fn parse_fault(text: Option<&str>) -> Result<Option<Fault>, CliError> {
    let Some(text) = text else { return Ok(None) };
    let bad = || CliError::Usage(format!("fault {text:?} is not of the form TableN:ROW"));
    let (table, row) = text.split_once(':').ok_or_else(bad)?;
    let n: u8 = table
        .strip_prefix("Table")
        .and_then(|n| n.parse().ok())
        .ok_or_else(bad)?;
    let row: u8 = row.parse().map_err(|_| bad())?;
    Ok(Some(Fault {
        table: TableId::Table(n),
        row,
    }))
}

fn base_report(
    field: &Field,
    spec: &ComplexSpec,
    n: u128,
    k: usize,
    h: &WeightHierarchy,
) -> RunReport {
    RunReport {
        q: field.order(),
        e: field.degree(),
        m: spec.m(),
        sets: spec.sets_one_based(),
        complement: spec.complement(),
        n,
        k,
        hierarchy: h.values.clone(),
        provenance: h.provenance.iter().map(ToString::to_string).collect(),
        method: h.method.to_string(),
        elapsed_ms: 0,
        witnesses: None,
    }
}

fn witness_codes(ws: &[Subspace]) -> Vec<Vec<Vec<u32>>> {
    ws.iter().map(|w| w.basis().to_codes()).collect()
}

fn print_report(report: &RunReport, format: Format, header: &str) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Text => {
            println!("{header}");
            println!(
                "[n, k] = [{}, {}], method {}",
                report.n, report.k, report.method
            );
            println!("{:>3}  {:>10}  provenance", "r", "d_r");
            for (i, (d, p)) in report.hierarchy.iter().zip(&report.provenance).enumerate() {
                let w = report
                    .witnesses
                    .as_ref()
                    .map(|ws| format!("  H = {:?}", ws[i]))
                    .unwrap_or_default();
                println!("{:>3}  {d:>10}  {p}{w}", i + 1);
            }
        }
    }
}

fn cmd_params(ctx: &Context, args: &CodeArgs, format: Format) -> Result<(), CliError> {
    let field = resolve_field(&args.field)?;
    let spec = resolve_spec(ctx, args)?;
    let q = field.order() as u64;
    let start = Instant::now();
    let mut report = match hierarchy_formula_with(&spec, q, None) {
        Ok(h) => {
            let p = code_params_formula(&spec, q)?;
            let mut r = base_report(&field, &spec, p.n, p.k, &h);
            r.hierarchy.truncate(1);
            r.provenance.truncate(1);
            r
        }
        Err(FormulaError::NotApplicable(why)) => {
            if ctx.verbose {
                eprintln!("note: no closed form applies ({why}); searching instead");
            }
            let code = build_code(&field, &spec, &ctx.limits)?;
            let search = Prop1Search::new(&code, &ctx.limits)?;
            let d = search.ghw(1)?;
            let h = WeightHierarchy {
                values: vec![d.value],
                provenance: vec![simplex_ghw::code::Provenance::Prop1Search],
                method: simplex_ghw::code::Method::Prop1Search,
                spec: spec.clone(),
            };
            base_report(&field, &spec, code.n() as u128, code.k(), &h)
        }
        Err(e) => return Err(e.into()),
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    match format {
        Format::Text => {
            println!("[{}, {}, {}]", report.n, report.k, report.hierarchy[0]);
            println!("d_1 from {}", report.provenance[0]);
        }
        other => print_report(&report, other, ""),
    }
    Ok(())
}

fn cmd_hierarchy(
    ctx: &Context,
    args: &CodeArgs,
    method: MethodArg,
    format: Format,
    witness: bool,
    fault: Option<&str>,
) -> Result<(), CliError> {
    let field = resolve_field(&args.field)?;
    let spec = resolve_spec(ctx, args)?;
    let fault = parse_fault(fault)?;
    let q = field.order() as u64;
    let start = Instant::now();

    let formula = match method {
        MethodArg::Formula | MethodArg::Both => Some(hierarchy_formula_with(&spec, q, fault)?),
        _ => None,
    };
    let needs_code = witness || method != MethodArg::Formula;
    let code: Option<LinearCode> = if needs_code {
        Some(build_code(&field, &spec, &ctx.limits)?)
    } else {
        None
    };
    let search = match (
        &code,
        method == MethodArg::Brute || method == MethodArg::Both || witness,
    ) {
        (Some(c), true) => {
            let s = Prop1Search::new(c, &ctx.limits)?;
            Some(s.hierarchy()?)
        }
        _ => None,
    };

    let hierarchy = match method {
        MethodArg::Formula => formula.clone().expect("computed above"),
        MethodArg::Brute => search.as_ref().expect("computed above").0.clone(),
        MethodArg::Definitional => {
            hierarchy_definitional(code.as_ref().expect("built above"), &ctx.limits)?
        }
        MethodArg::Both => {
            let f = formula.clone().expect("computed above");
            let (s, ws) = search.as_ref().expect("computed above");
            if let Some(i) = (0..f.values.len().max(s.values.len()))
                .find(|&i| f.values.get(i) != s.values.get(i))
            {
                let record = Counterexample {
                    q: field.order(),
                    e: field.degree(),
                    m: spec.m(),
                    sets: spec.sets_one_based(),
                    complement: spec.complement(),
                    r: i + 1,
                    formula: f.values.get(i).copied(),
                    formula_provenance: f.provenance.get(i).map(ToString::to_string),
                    brute: s.values.get(i).copied(),
                    witness: ws.get(i).map(|w| w.basis().to_codes()),
                };
                println!(
                    "{}",
                    serde_json::to_string(&record).expect("record is serializable")
                );
                return Err(CliError::Mismatch(format!(
                    "formula and search disagree at r = {}: {:?} vs {:?}",
                    i + 1,
                    f.values.get(i),
                    s.values.get(i)
                )));
            }
            WeightHierarchy {
                method: f.method,
                ..f
            }
        }
    };

    let n = match &code {
        Some(c) => c.n() as u128,
        None => spec.cardinality(q)?,
    };
    let mut report = base_report(&field, &spec, n, hierarchy.values.len(), &hierarchy);
    if method == MethodArg::Both {
        report.method = "both".into();
    }
    if witness {
        report.witnesses = search.as_ref().map(|(_, ws)| witness_codes(ws));
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    print_report(
        &report,
        format,
        &format!("{spec} over GF({})", field.order()),
    );
    Ok(())
}

fn source_of(report: &CaseReport) -> String {
    let spec = report.case.spec().expect("golden specs parse");
    match select(&spec, report.case.q) {
        Ok(tables) => tables
            .iter()
            .map(|(t, tab)| format!("{t}/{tab}"))
            .collect::<Vec<_>>()
            .join(","),
        Err(_) => "search only".into(),
    }
}

fn show<E: std::fmt::Display>(r: &Result<Vec<u128>, E>) -> String {
    match r {
        Ok(v) => format!("{v:?}"),
        Err(e) => format!("<{e}>"),
    }
}

fn cmd_verify(ctx: &Context, only: Option<&str>, fault: Option<&str>) -> Result<(), CliError> {
    let fault = parse_fault(fault)?;
    let cases: Vec<_> = CASES
        .iter()
        .filter(|c| only.map_or(true, |f| c.matches(f)))
        .collect();
    if cases.is_empty() {
        return Err(CliError::Usage(format!(
            "no example matches {:?}",
            only.unwrap_or("")
        )));
    }
    println!(
        "{:<6} {:<22} {:<16} {:<5}  hierarchy",
        "id", "source", "[n, k]", "result"
    );
    let mut failures = Vec::new();
    for case in &cases {
        let report = verify_case(case, &ctx.limits, fault)?;
        let ok = report.passed();
        println!(
            "{:<6} {:<22} {:<16} {:<5}  {:?}",
            case.id,
            source_of(&report),
            format!("[{}, {}]", case.n, case.k),
            if ok { "PASS" } else { "FAIL" },
            case.hierarchy
        );
        if !ok {
            failures.push(report);
        }
    }
    for r in &failures {
        println!();
        println!(
            "{} ({}) failed: {}",
            r.case.id,
            source_of(r),
            r.failure().unwrap_or_default()
        );
        println!("  expected     {:?}", r.case.hierarchy);
        println!("  formula      {}", show(&r.formula));
        println!("  search       {}", show(&r.prop1));
        println!("  definitional {}", show(&r.definitional));
    }
    println!();
    println!("{}/{} pass", cases.len() - failures.len(), cases.len());
    if failures.is_empty() {
        Ok(())
    } else {
        let ids: Vec<&str> = failures.iter().map(|r| r.case.id).collect();
        Err(CliError::Mismatch(format!(
            "failing examples: {}",
            ids.join(", ")
        )))
    }
}

fn cmd_count(args: &FieldArgs, m: usize, r: usize) -> Result<(), CliError> {
    let q = match args.e {
        Some(e) => {
            if !is_prime(args.q) {
                return Err(simplex_ghw::Error::NotPrime(args.q).into());
            }
            args.q.checked_pow(e).ok_or(simplex_ghw::Error::Overflow)?
        }
        None => {
            prime_power(args.q).ok_or(simplex_ghw::Error::NotPrimePower(args.q))?;
            args.q
        }
    };
    if r > m {
        return Err(CliError::Usage(format!("r = {r} exceeds m = {m}")));
    }
    let count = gaussian_binomial(m, r, q)?;
    println!("{count}");
    // Each H costs at most one pass over its dual, which has q^(m-r) vectors.
    let dual = (q as u128).checked_pow((m - r) as u32);
    match dual.and_then(|d| d.checked_mul(count)) {
        Some(cost) => println!(
            "search cost: {count} subspaces x {} dual vectors = {cost} vector visits",
            dual.unwrap()
        ),
        None => println!("search cost: exceeds 2^128 vector visits"),
    }
    Ok(())
}
