use std::path::PathBuf;

use serde_json::{json, Value};

use periodpoly::closed_form::factor;
use periodpoly::gauss::{identity_suite, lift_base_degree, lift_oracle, IDENTITIES};
use periodpoly::partitions::{partition_a, partition_c};
use periodpoly::periods::{brute_force, period_polynomial, reduced_periods, trace_spectrum};
use periodpoly::{CycElem, Execution, FieldCtx};

use crate::args::{Common, Format, Instance, KindChoice, OracleChoice};
use crate::cache::{self, Oracle, Status};
use crate::error::{CliError, CliResult};

fn execution(common: &Common) -> Execution {
    match common.threads {
        Some(1) => Execution::Sequential,
        _ => Execution::available(),
    }
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{value}"),
        Format::Text => println!("{}", text()),
    }
}

fn cyc_string(c: &CycElem) -> String {
    c.as_integer().map_or_else(|| c.to_string(), |n| n.to_string())
}

pub fn cmd_factor(inst: &Instance, common: &Common) -> CliResult<()> {
    let ctx = FieldCtx::new(inst.p, inst.s)?;
    let fac = factor(&ctx, inst.m)?;
    emit(common.format, &serde_json::to_value(&fac).unwrap(), || format!("{}\n{fac}", fac.case));
    Ok(())
}

pub fn cmd_verify(inst: &Instance, choice: OracleChoice, cache_path: Option<PathBuf>, common: &Common) -> CliResult<()> {
    let (p, s, m) = (inst.p, inst.s, inst.m);
    let ctx = FieldCtx::new(p, s)?;
    let fac = factor(&ctx, m)?;
    let oracle = match choice {
        OracleChoice::Brute => Oracle::Brute,
        OracleChoice::Lift => Oracle::Lift,
        OracleChoice::Auto if ctx.q() <= common.max_q => Oracle::Brute,
        OracleChoice::Auto => Oracle::Lift,
    };
    let cache_path = std::env::var_os("PERIODPOLY_CACHE").map(PathBuf::from).or(cache_path);

    if let Some(path) = &cache_path {
        if let Some(hit) = cache::lookup(path, p, s, m, oracle)? {
            let rec = cache::restamp(hit);
            cache::append(path, &rec)?;
            emit(common.format, &rec, || format!("verified (cached) {}\n{fac}\ndigest {}", fac.case, rec["digest"].as_str().unwrap_or("")));
            return Ok(());
        }
    }

    let exec = execution(common);
    let (status, note) = if fac.irreducible {
        (Status::Skipped, "irreducible, no closed form to compare".to_string())
    } else {
        let periods = match oracle {
            Oracle::Brute => Some(brute_force(&ctx, 1 << m, common.max_q, exec)?.0),
            Oracle::Lift => match lift_base_degree(p, s, m) {
                Some(base) if base < s => Some(lift_oracle(&ctx, m, common.max_q, exec)?.periods),
                _ => None,
            },
        };
        match periods {
            None => (Status::Skipped, "no proper subfield to lift from".to_string()),
            Some(periods) => {
                let poly = period_polynomial(&periods)?;
                if poly == fac.expand() {
                    (Status::Verified, String::new())
                } else {
                    (Status::Failed, format!("oracle polynomial {poly}"))
                }
            }
        }
    };

    let rec = cache::record(p, s, m, &fac.case, Some(oracle), status, &fac);
    if let Some(path) = &cache_path {
        cache::append(path, &rec)?;
    }
    let word = serde_json::to_value(status).unwrap();
    emit(common.format, &rec, || {
        let mut out = format!("{} {}\n{fac}\ndigest {}", word.as_str().unwrap(), fac.case, rec["digest"].as_str().unwrap());
        if !note.is_empty() {
            out.push_str(&format!("\n{note}"));
        }
        out
    });
    match status {
        Status::Failed => Err(CliError::Mismatch(format!("closed form differs from the {word} oracle for ({p}, {s}, {m})"))),
        _ => Ok(()),
    }
}

pub fn cmd_periods(p: u64, s: u32, e: u64, common: &Common) -> CliResult<()> {
    let ctx = FieldCtx::new(p, s)?;
    let periods = reduced_periods(&trace_spectrum(&ctx, e, common.max_q, execution(common))?);
    let poly = period_polynomial(&periods)?;
    let etas: Vec<String> = periods.eta_star.iter().map(cyc_string).collect();
    let value = json!({ "e": e, "eta_star": etas, "polynomial": poly });
    emit(common.format, &value, || {
        let mut lines: Vec<String> = etas.iter().enumerate().map(|(k, v)| format!("eta*_{k} = {v}")).collect();
        lines.push(format!("P*(X) = {poly}"));
        lines.join("\n")
    });
    Ok(())
}

pub fn cmd_partition(p: u64, s: u32, r: u32, kind: KindChoice, common: &Common) -> CliResult<()> {
    let ctx = FieldCtx::new(p, s)?;
    let rec = match (kind, p % 8) {
        (KindChoice::A, 3) => partition_a(&ctx, r, r)?,
        (KindChoice::C, 5) => partition_c(&ctx, r, r)?,
        (KindChoice::A, _) => return Err(CliError::Usage(format!("A-type partitions need p = 3 mod 8, got p mod 8 = {}", p % 8))),
        (KindChoice::C, _) => return Err(CliError::Usage(format!("C-type partitions need p = 5 mod 8, got p mod 8 = {}", p % 8))),
    };
    emit(common.format, &serde_json::to_value(&rec).unwrap(), || {
        let (a, b) = match rec.kind {
            periodpoly::PartitionKind::A => ("A", "B"),
            periodpoly::PartitionKind::C => ("C", "D"),
        };
        let d = if rec.d() == 1 { String::new() } else { format!("{}*", rec.d()) };
        format!(
            "{a}_{r} = {}, {b}_{r} = {}\n{p}^{} = {} = ({})^2 + {d}({})^2",
            rec.first,
            rec.second,
            rec.exponent,
            rec.pk(),
            rec.first,
            rec.second
        )
    });
    Ok(())
}

pub fn cmd_lemmas(inst: &Instance, only: Option<&[String]>, common: &Common) -> CliResult<()> {
    if let Some(names) = only {
        if let Some(bad) = names.iter().find(|n| !IDENTITIES.contains(&n.as_str())) {
            return Err(CliError::Usage(format!("unknown identity {bad}; expected one of {}", IDENTITIES.join(", "))));
        }
    }
    let ctx = FieldCtx::new(inst.p, inst.s)?;
    let report = identity_suite(&ctx, inst.m, only, common.max_q, execution(common))?;
    for check in &report {
        emit(common.format, &serde_json::to_value(check).unwrap(), || {
            let verdict = if check.pass { "PASS" } else { "FAIL" };
            let detail = check.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default();
            format!("{verdict} {} r={}{detail}: {} = {}", check.identity, check.r, check.lhs, check.rhs)
        });
    }
    let failed = report.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        return Err(CliError::Mismatch(format!("{failed} of {} identity checks failed", report.len())));
    }
    Ok(())
}
