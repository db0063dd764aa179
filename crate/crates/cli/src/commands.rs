use std::io::{self, Write};

use baltrees_core::decreasing_binary::limit_constants_db;
use baltrees_core::limits::{constant_tolerance, DEFAULT_LEVELS};
use baltrees_core::nonplane12::limit_constants_np;
use baltrees_core::plane12::limit_constant_pl;
use baltrees_core::scalar::to_decimal_string;
use baltrees_core::verify::{
    all_required_passed, balanced_table_for, root_balanced_table_for, run_checks, tree_counts,
    vertex_balanced_sequence, CheckResult, VerifyConfig,
};
use baltrees_core::{Error, LimitConstant, Rational, Variety};
use serde_json::{json, Value};

use crate::output::{rational_json, write_csv, write_json, Failure};
use crate::{ConjectureArgs, Format, LimitsArgs, Outcome, ReportFormat, TableArgs, VerifyArgs};

/// Significant digits shown for the gap between closed form and estimate.
const GAP_DIGITS: usize = 3;

fn require_positive(n_max: usize) -> Result<(), Failure> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("--n-max must be at least 1".into()).into());
    }
    Ok(())
}

pub fn table(args: &TableArgs) -> Result<Outcome, Failure> {
    require_positive(args.n_max)?;
    let variety = args.variety();
    let trees = tree_counts(variety, args.n_max)?;
    let all = balanced_table_for(variety, args.k_max, args.n_max)?;
    let roots = root_balanced_table_for(variety, args.k_max, args.n_max)?;

    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for n in 1..=args.n_max {
        for k in 0..=args.k_max {
            let a = all.get(n, k);
            let r = roots.get(n, k);
            let p = Rational::new(r.clone(), trees[n].clone());
            let decimal = to_decimal_string(&p, args.precision);
            match args.format {
                Format::Csv => csv_rows.push(vec![
                    n.to_string(),
                    k.to_string(),
                    trees[n].to_string(),
                    a.to_string(),
                    r.to_string(),
                    p.numer().to_string(),
                    p.denom().to_string(),
                    decimal,
                ]),
                Format::Json => json_rows.push(json!({
                    "n": n,
                    "k": k,
                    "trees": trees[n].to_string(),
                    "a_nk": a.to_string(),
                    "r_nk": r.to_string(),
                    "p_nk": rational_json(&p),
                    "p_nk_decimal": decimal,
                })),
            }
        }
    }
    match args.format {
        Format::Csv => write_csv(
            &["n", "k", "trees", "a_nk", "r_nk", "p_nk_num", "p_nk_den", "p_nk_decimal"],
            &csv_rows,
        )?,
        Format::Json => write_json(&json!({
            "meta": {
                "variety": variety.name(),
                "n_max": args.n_max,
                "k_max": args.k_max,
                "order": args.n_max,
                "precision": args.precision,
            },
            "rows": json_rows,
        }))?,
    }
    Ok(Outcome::Passed)
}

fn constants_for(variety: Variety, args: &LimitsArgs) -> Result<Vec<LimitConstant>, Error> {
    match variety {
        Variety::DecBinary => limit_constants_db(args.k_max, args.precision, args.n_max, DEFAULT_LEVELS),
        Variety::NonPlane12 => limit_constants_np(args.precision, args.n_max, DEFAULT_LEVELS),
        Variety::Plane12 => Ok(vec![limit_constant_pl(args.precision, args.n_max, DEFAULT_LEVELS)?]),
    }
}

pub fn limits(args: &LimitsArgs) -> Result<Outcome, Failure> {
    let tol = constant_tolerance();
    let mut all_within = true;
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for variety in args.varieties() {
        for c in constants_for(variety, args)? {
            let within = c.within(&tol);
            all_within &= within;
            let value = c.value.to_decimal(args.precision);
            let empirical = c.empirical.to_decimal(args.precision);
            let gap = c.abs_gap.to_decimal(GAP_DIGITS);
            match args.format {
                Format::Csv => csv_rows.push(vec![
                    variety.name().to_string(),
                    c.name.clone(),
                    c.closed_form.to_string(),
                    value,
                    empirical,
                    gap,
                    within.to_string(),
                ]),
                Format::Json => json_rows.push(json!({
                    "variety": variety.name(),
                    "name": c.name,
                    "closed_form": c.closed_form.to_string(),
                    "exact": c.closed_form.as_rational().as_ref().map_or(Value::Null, rational_json),
                    "value": value,
                    "empirical": empirical,
                    "abs_gap": gap,
                    "within_tolerance": within,
                })),
            }
        }
    }
    match args.format {
        Format::Csv => write_csv(
            &["variety", "name", "closed_form", "value", "empirical", "abs_gap", "within_tolerance"],
            &csv_rows,
        )?,
        Format::Json => write_json(&json!({
            "meta": {
                "k_max": args.k_max,
                "n_max": args.n_max,
                "levels": DEFAULT_LEVELS,
                "precision": args.precision,
                "tolerance": rational_json(&tol),
            },
            "rows": json_rows,
        }))?,
    }
    Ok(if all_within { Outcome::Passed } else { Outcome::Failed })
}

fn status(check: &CheckResult) -> &'static str {
    match (check.passed, check.advisory) {
        (true, _) => "PASS",
        (false, true) => "WARN",
        (false, false) => "FAIL",
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    require_positive(args.n_max)?;
    let cfg = VerifyConfig {
        variety: args.variety(),
        n_max: args.n_max,
        oracle_limit: args.oracle_limit,
        order: args.order,
        precision_digits: args.precision,
        only: args.only.clone(),
    };
    let results = run_checks(&cfg)?;
    let ok = all_required_passed(&results);
    match args.format {
        ReportFormat::Text => {
            let mut out = io::stdout().lock();
            for check in &results {
                writeln!(out, "{:<4} {:<12} {}: {}", status(check), check.group, check.name, check.detail)?;
            }
            let failed = results.iter().filter(|c| !c.passed && !c.advisory).count();
            let warned = results.iter().filter(|c| !c.passed && c.advisory).count();
            writeln!(
                out,
                "verify: {} checks, {} passed, {failed} failed, {warned} advisory warnings",
                results.len(),
                results.len() - failed - warned
            )?;
        }
        ReportFormat::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|c| {
                    json!({
                        "group": c.group,
                        "name": c.name,
                        "status": status(c),
                        "advisory": c.advisory,
                        "detail": c.detail,
                    })
                })
                .collect();
            write_json(&json!({ "passed": ok, "checks": rows }))?;
        }
    }
    Ok(if ok { Outcome::Passed } else { Outcome::Failed })
}

/// Reports the sequence and whether it is weakly decreasing. The verdict is
/// empirical, so a failure does not change the exit status.
pub fn conjecture(args: &ConjectureArgs) -> Result<Outcome, Failure> {
    require_positive(args.n_max)?;
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut summary = Vec::new();
    for variety in args.varieties() {
        let seq = vertex_balanced_sequence(variety, args.n_max)?;
        for n in 1..=args.n_max {
            let p = seq.get(n);
            let decimal = to_decimal_string(p, args.precision);
            match args.format {
                Format::Csv => csv_rows.push(vec![
                    variety.name().to_string(),
                    n.to_string(),
                    p.numer().to_string(),
                    p.denom().to_string(),
                    decimal,
                ]),
                Format::Json => json_rows.push(json!({
                    "variety": variety.name(),
                    "n": n,
                    "p": rational_json(p),
                    "decimal": decimal,
                })),
            }
        }
        summary.push((variety, seq.first_increase()));
    }
    match args.format {
        Format::Csv => {
            write_csv(&["variety", "n", "p_num", "p_den", "p_decimal"], &csv_rows)?;
            for (variety, first) in &summary {
                match first {
                    None => eprintln!("{variety}: weakly decreasing for n <= {}", args.n_max),
                    Some(n) => eprintln!("{variety}: increases from n = {n} to n = {}", n + 1),
                }
            }
        }
        Format::Json => {
            let verdicts: Vec<Value> = summary
                .iter()
                .map(|(variety, first)| {
                    json!({
                        "variety": variety.name(),
                        "weakly_decreasing": first.is_none(),
                        "first_increase": first,
                    })
                })
                .collect();
            write_json(&json!({
                "meta": { "n_max": args.n_max, "precision": args.precision },
                "rows": json_rows,
                "summary": verdicts,
            }))?;
        }
    }
    Ok(Outcome::Passed)
}
