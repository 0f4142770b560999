//! Sweep engine: expands the configured grid into independent work items,
//! runs them (optionally on a rayon pool), and writes records sorted by
//! (p, e, g, c, pattern) so identical configs produce identical files.

use crate::config::{CSelector, GSelector, OutputFormat, SweepConfig, SweepTask};
use crate::records::{ResultRecord, CSV_HEADER};
use dwp::modarith::PrimePower;
use dwp::patterns::{
    check_c_prime_bijection, check_conjecture, check_sums, OrderPair, PatternId, PatternReport,
    Witness,
};
use dwp::rng::Lcg64;
use dwp::solver::{solve_all, DwpInstance};
use rayon::prelude::*;
use std::fs;
use std::io::{self, BufRead};
use std::path::Path;
use std::time::Instant;

/// Environment variable consulted for the default worker count.
pub const JOBS_ENV_VAR: &str = "DWP_JOBS";

fn units_mod(pe: u64, p: u64) -> Vec<u64> {
    (1..pe).filter(|x| x % p != 0).collect()
}

/// Seeded distinct unit sample, ascending. Falls back to the full unit set
/// when fewer than `count` units exist.
pub fn sample_units(pp: &PrimePower, count: usize, seed: u64) -> Vec<u64> {
    let all = units_mod(pp.modulus(), pp.p());
    if all.len() <= count {
        return all;
    }
    let mut rng = Lcg64::new(seed);
    let mut chosen = std::collections::BTreeSet::new();
    while chosen.len() < count {
        chosen.insert(all[rng.next_below(all.len() as u64) as usize]);
    }
    chosen.into_iter().collect()
}

fn expand_grid(config: &SweepConfig) -> Result<Vec<(PrimePower, u64, u64)>, String> {
    let mut items = Vec::new();
    for &p in &config.p_list {
        let base = PrimePower::new(p, 1).map_err(|e| e.to_string())?;
        let g_values: Vec<u64> = match &config.g_selector {
            GSelector::AllUnits => (1..p).collect(),
            GSelector::Generators => (1..p)
                .filter(|&g| base.is_generator(base.residue(g)).unwrap_or(false))
                .collect(),
            GSelector::Explicit(list) => {
                for &g in list {
                    if g % p == 0 {
                        return Err(format!("g = {g} is divisible by p = {p}"));
                    }
                }
                list.clone()
            }
        };
        for &e in &config.e_values {
            let pp = PrimePower::new(p, e).map_err(|e| e.to_string())?;
            let c_values: Vec<u64> = match &config.c_selector {
                CSelector::AllUnits => units_mod(pp.modulus(), p),
                CSelector::Sample { count, seed } => sample_units(&pp, *count, *seed),
                CSelector::Explicit(list) => {
                    for &c in list {
                        if c % p == 0 {
                            return Err(format!("c = {c} is divisible by p = {p}"));
                        }
                    }
                    list.clone()
                }
            };
            for &g in &g_values {
                for &c in &c_values {
                    items.push((pp, g, c));
                }
            }
        }
    }
    Ok(items)
}

fn record_from_report(report: &PatternReport, c: u64, m_p: u64, elapsed_us: u64) -> ResultRecord {
    let (sum, sum_modulus) = match &report.witness {
        Some(Witness::Sum { sum, modulus }) => (Some(*sum), Some(*modulus)),
        _ => (None, None),
    };
    ResultRecord {
        p: report.p,
        e: report.e,
        g: report.g,
        c,
        pattern: report.pattern.to_string(),
        verdict: report.verdict.to_string(),
        solutions: None,
        sum,
        sum_modulus,
        m_p: Some(report.orders.map(|o| o.m_p()).unwrap_or(m_p)),
        m_pe: report.orders.map(|o| o.m_pe()),
        elapsed_us,
    }
}

fn run_item(
    pp: &PrimePower,
    g: u64,
    c: u64,
    tasks: &[SweepTask],
) -> Result<Vec<ResultRecord>, String> {
    let inst = DwpInstance::new(*pp, g, c).map_err(|e| e.to_string())?;
    let m_p = inst.order_mod_p();
    let mut out = Vec::with_capacity(tasks.len());

    let wants = |id: PatternId| tasks.contains(&SweepTask::Pattern(id));

    if tasks.contains(&SweepTask::Solve) {
        let start = Instant::now();
        let set = solve_all(&inst).map_err(|e| e.to_string())?;
        let orders = OrderPair::of(pp, inst.g()).map_err(|e| e.to_string())?;
        let elapsed_us = start.elapsed().as_micros() as u64;
        let joined: Vec<String> = set.solutions().iter().map(|x| x.to_string()).collect();
        out.push(ResultRecord {
            p: pp.p(),
            e: pp.e(),
            g,
            c,
            pattern: "solve".to_string(),
            verdict: "solved".to_string(),
            solutions: Some(joined.join(";")),
            sum: Some(set.sum()),
            sum_modulus: None,
            m_p: Some(orders.m_p()),
            m_pe: Some(orders.m_pe()),
            elapsed_us,
        });
    }

    if wants(PatternId::SumModP) || wants(PatternId::SumModM) {
        let start = Instant::now();
        let (mod_p, mod_m) = check_sums(&inst).map_err(|e| e.to_string())?;
        let elapsed_us = start.elapsed().as_micros() as u64;
        if wants(PatternId::SumModP) {
            out.push(record_from_report(&mod_p, c, m_p, elapsed_us));
        }
        if wants(PatternId::SumModM) {
            out.push(record_from_report(&mod_m, c, m_p, elapsed_us));
        }
    }

    if wants(PatternId::ConjectureA) || wants(PatternId::ConjectureB) {
        let start = Instant::now();
        let (a, b) = check_conjecture(&inst).map_err(|e| e.to_string())?;
        let elapsed_us = start.elapsed().as_micros() as u64;
        if wants(PatternId::ConjectureA) {
            out.push(record_from_report(&a, c, m_p, elapsed_us));
        }
        if wants(PatternId::ConjectureB) {
            out.push(record_from_report(&b, c, m_p, elapsed_us));
        }
    }

    if wants(PatternId::CPrimeBijection) {
        let start = Instant::now();
        let report = check_c_prime_bijection(&inst, 1).map_err(|e| e.to_string())?;
        let elapsed_us = start.elapsed().as_micros() as u64;
        out.push(record_from_report(&report, c, m_p, elapsed_us));
    }

    Ok(out)
}

/// Worker-count precedence: explicit override (CLI flag), then the config
/// file, then DWP_JOBS, then one worker per core.
pub fn effective_jobs(config: &SweepConfig, flag: Option<usize>) -> Option<usize> {
    flag.or(config.parallelism).or_else(|| {
        std::env::var(JOBS_ENV_VAR)
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

/// Runs the whole sweep and returns the records sorted by
/// (p, e, g, c, pattern).
pub fn run_sweep(config: &SweepConfig, jobs: Option<usize>) -> Result<Vec<ResultRecord>, String> {
    let items = expand_grid(config)?;
    let run_all = || -> Result<Vec<Vec<ResultRecord>>, String> {
        items
            .par_iter()
            .map(|(pp, g, c)| run_item(pp, *g, *c, &config.tasks))
            .collect()
    };
    let nested = match jobs {
        Some(n) if n >= 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| e.to_string())?
            .install(run_all),
        _ => run_all(),
    }?;
    let mut records: Vec<ResultRecord> = nested.into_iter().flatten().collect();
    records.sort_by(|a, b| {
        (a.p, a.e, a.g, a.c, a.pattern.as_str()).cmp(&(b.p, b.e, b.g, b.c, b.pattern.as_str()))
    });
    Ok(records)
}

pub fn render(records: &[ResultRecord], format: OutputFormat) -> String {
    let mut out = String::new();
    if format == OutputFormat::Csv {
        out.push_str(CSV_HEADER);
        out.push('\n');
    }
    for record in records {
        out.push_str(&match format {
            OutputFormat::JsonLines => record.to_json_line(),
            OutputFormat::Csv => record.to_csv_row(),
        });
        out.push('\n');
    }
    out
}

pub fn write_records(
    records: &[ResultRecord],
    format: OutputFormat,
    path: &Path,
) -> io::Result<()> {
    fs::write(path, render(records, format))
}

pub fn read_records(format: OutputFormat, path: &Path) -> Result<Vec<ResultRecord>, String> {
    let file = fs::File::open(path).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for (idx, line) in io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        if line.is_empty() {
            continue;
        }
        if format == OutputFormat::Csv && idx == 0 {
            if line != CSV_HEADER {
                return Err(format!("unexpected CSV header: {line}"));
            }
            continue;
        }
        let record = match format {
            OutputFormat::JsonLines => ResultRecord::from_json_line(&line),
            OutputFormat::Csv => ResultRecord::from_csv_row(&line),
        }
        .map_err(|e| e.to_string())?;
        out.push(record);
    }
    Ok(out)
}
