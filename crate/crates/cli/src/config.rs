//! Sweep configuration: a flat key=value file with comma lists.
//!
//! ```text
//! # conjecture evidence grid
//! p_list = 3,5,7
//! e_range = 1..3            # inclusive; "1,2,3" and "2" also accepted
//! g_selector = all-units    # units mod p; or: generators | list (+ g_list)
//! c_selector = all-units    # units mod p^e; or: sample | list (+ c_list)
//! sample_count = 1000       # required by c_selector = sample
//! sample_seed = 42          # required by c_selector = sample
//! pattern_ids = conjecture_A,conjecture_B
//! output_path = sweep.jsonl
//! output_format = json-lines   # or csv
//! parallelism = 4           # optional
//! ```

use dwp::modarith::PrimePower;
use dwp::patterns::PatternId;
use std::collections::HashMap;
use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GSelector {
    /// Units mod p: g in {1..p-1}.
    AllUnits,
    /// Generators mod p.
    Generators,
    Explicit(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CSelector {
    /// Units mod p^e: the full instance grid.
    AllUnits,
    /// Seeded distinct sample from the units mod p^e.
    Sample {
        count: usize,
        seed: u64,
    },
    Explicit(Vec<u64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    JsonLines,
    Csv,
}

/// What a sweep computes per instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTask {
    Solve,
    Pattern(PatternId),
}

impl SweepTask {
    pub fn name(&self) -> String {
        match self {
            SweepTask::Solve => "solve".to_string(),
            SweepTask::Pattern(id) => id.to_string(),
        }
    }
}

/// Patterns that make sense on a (p, e, g, c) grid; the remaining ones
/// take different inputs and run through `verify` instead.
const GRID_PATTERNS: [PatternId; 5] = [
    PatternId::CPrimeBijection,
    PatternId::SumModP,
    PatternId::SumModM,
    PatternId::ConjectureA,
    PatternId::ConjectureB,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub p_list: Vec<u64>,
    pub e_values: Vec<u32>,
    pub g_selector: GSelector,
    pub c_selector: CSelector,
    pub tasks: Vec<SweepTask>,
    pub output_path: PathBuf,
    pub output_format: OutputFormat,
    pub parallelism: Option<usize>,
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut map: HashMap<String, String> = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", lineno + 1))?;
            let key = key.trim().to_string();
            if map.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(format!("duplicate key: {key}"));
            }
        }

        let known = [
            "p_list",
            "e_range",
            "g_selector",
            "g_list",
            "c_selector",
            "c_list",
            "sample_count",
            "sample_seed",
            "pattern_ids",
            "output_path",
            "output_format",
            "parallelism",
        ];
        for key in map.keys() {
            if !known.contains(&key.as_str()) {
                return Err(format!("unknown key: {key}"));
            }
        }

        let require = |key: &str| -> Result<&String, String> {
            map.get(key)
                .ok_or_else(|| format!("missing required key: {key}"))
        };

        let p_list = parse_u64_list(require("p_list")?)?;
        let e_values = parse_e_range(require("e_range")?)?;
        for &p in &p_list {
            for &e in &e_values {
                PrimePower::new(p, e).map_err(|err| format!("p_list/e_range: {err}"))?;
            }
        }

        let g_selector = match require("g_selector")?.as_str() {
            "all-units" => GSelector::AllUnits,
            "generators" | "generators-only" => GSelector::Generators,
            "list" => GSelector::Explicit(parse_u64_list(require("g_list")?)?),
            other => return Err(format!("bad g_selector: {other}")),
        };
        let c_selector = match require("c_selector")?.as_str() {
            "all-units" => CSelector::AllUnits,
            "sample" => CSelector::Sample {
                count: require("sample_count")?
                    .parse()
                    .map_err(|_| "bad sample_count".to_string())?,
                seed: require("sample_seed")?
                    .parse()
                    .map_err(|_| "bad sample_seed".to_string())?,
            },
            "list" => CSelector::Explicit(parse_u64_list(require("c_list")?)?),
            other => return Err(format!("bad c_selector: {other}")),
        };

        let mut tasks = Vec::new();
        for name in require("pattern_ids")?.split(',') {
            let name = name.trim();
            if name.eq_ignore_ascii_case("solve") {
                tasks.push(SweepTask::Solve);
                continue;
            }
            let id: PatternId = name.parse()?;
            if !GRID_PATTERNS.contains(&id) {
                return Err(format!(
                    "pattern {id} takes non-grid inputs; run it via the verify subcommand"
                ));
            }
            tasks.push(SweepTask::Pattern(id));
        }
        if tasks.is_empty() {
            return Err("pattern_ids must name at least one task".to_string());
        }

        let output_format = match map.get("output_format").map(String::as_str) {
            None | Some("json-lines") => OutputFormat::JsonLines,
            Some("csv") => OutputFormat::Csv,
            Some(other) => return Err(format!("bad output_format: {other}")),
        };
        let parallelism = map
            .get("parallelism")
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| "bad parallelism".to_string())
            })
            .transpose()?;

        Ok(SweepConfig {
            p_list,
            e_values,
            g_selector,
            c_selector,
            tasks,
            output_path: PathBuf::from(require("output_path")?),
            output_format,
            parallelism,
        })
    }
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad integer: {s:?}"))
        })
        .collect()
}

/// "1..3" (inclusive), "1,2,3", or "2".
fn parse_e_range(text: &str) -> Result<Vec<u32>, String> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u32 = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad e_range start: {lo:?}"))?;
        let hi: u32 = hi
            .trim()
            .parse()
            .map_err(|_| format!("bad e_range end: {hi:?}"))?;
        if lo < 1 || hi < lo {
            return Err(format!("bad e_range: {text}"));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad exponent: {s:?}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = "\
p_list = 3,5
e_range = 1..2
g_selector = all-units
c_selector = all-units
pattern_ids = conjecture_A,conjecture_B
output_path = out.jsonl
";

    #[test]
    fn parses_a_minimal_config() {
        let cfg = SweepConfig::parse(BASE).unwrap();
        assert_eq!(cfg.p_list, vec![3, 5]);
        assert_eq!(cfg.e_values, vec![1, 2]);
        assert_eq!(cfg.g_selector, GSelector::AllUnits);
        assert_eq!(cfg.output_format, OutputFormat::JsonLines);
        assert_eq!(cfg.tasks.len(), 2);
    }

    #[test]
    fn accepts_comments_lists_and_samples() {
        let text = "\
# evidence grid
p_list = 7
e_range = 2,3   # explicit list
g_selector = list
g_list = 2, 3
c_selector = sample
sample_count = 10
sample_seed = 99
pattern_ids = solve,sum_mod_p
output_path = out.csv
output_format = csv
parallelism = 2
";
        let cfg = SweepConfig::parse(text).unwrap();
        assert_eq!(cfg.e_values, vec![2, 3]);
        assert_eq!(cfg.g_selector, GSelector::Explicit(vec![2, 3]));
        assert_eq!(
            cfg.c_selector,
            CSelector::Sample {
                count: 10,
                seed: 99
            }
        );
        assert_eq!(cfg.output_format, OutputFormat::Csv);
        assert_eq!(cfg.parallelism, Some(2));
        assert_eq!(cfg.tasks[0], SweepTask::Solve);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(
            SweepConfig::parse(&BASE.replace("3,5", "4")).is_err(),
            "p must be odd prime"
        );
        assert!(SweepConfig::parse(&BASE.replace("1..2", "3..1")).is_err());
        assert!(
            SweepConfig::parse(&BASE.replace("conjecture_A,conjecture_B", "special_pair")).is_err()
        );
        assert!(SweepConfig::parse(&(BASE.to_string() + "mystery = 1\n")).is_err());
        assert!(SweepConfig::parse(&BASE.replace("output_path = out.jsonl", "")).is_err());
        let sampled = BASE.replace("c_selector = all-units", "c_selector = sample");
        assert!(
            SweepConfig::parse(&sampled).is_err(),
            "sample needs count and seed"
        );
    }
}
