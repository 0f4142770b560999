#![allow(clippy::manual_is_multiple_of)]

//! dwp: solve, verify and sweep discrete Lambert instances, and run the
//! fixed-s2 ElGamal forgery that motivates them.
//!
//! Exit codes: 0 success, 1 a requested verdict failed, 2 usage or
//! validation error, 3 I/O error.

use clap::{Parser, Subcommand};
use dwp::elgamal::{self, RangePolicy};
use dwp::modarith::{mul_mod, pow_mod, PrimePower};
use dwp::padic::TeichDecomposition;
use dwp::patterns::{self, PatternId, PatternReport, Verdict};
use dwp::solver::{brute_force, count_solutions, solve_all, DwpInstance};
use dwp_cli::sweep::{effective_jobs, read_records, run_sweep, write_records};
use dwp_cli::SweepConfig;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dwp",
    version,
    about = "Discrete Lambert problem toolkit: x*g^x = c (mod p^e)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all solutions in the canonical range {1..p^e*m}
    Solve {
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 1)]
        e: u32,
        #[arg(short)]
        g: u64,
        #[arg(short)]
        c: u64,
        /// Cross-check against the brute-force oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Print the solution count m = ord_p(g) without enumerating
    Count {
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 1)]
        e: u32,
        #[arg(short)]
        g: u64,
        #[arg(short)]
        c: u64,
    },
    /// Show the Teichmuller / one-unit decomposition of g mod p^e
    Teichmuller {
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 1)]
        e: u32,
        #[arg(short)]
        g: u64,
    },
    /// Check one pattern on one instance (exit 1 when the verdict fails)
    Verify {
        /// One of: c_prime_bijection, sum_mod_p, sum_mod_m, conjecture_A,
        /// conjecture_B, inverse_identity, negation_identity, special_pair,
        /// order_formula
        pattern: String,
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 1)]
        e: u32,
        #[arg(short)]
        g: Option<u64>,
        #[arg(short)]
        c: Option<u64>,
        /// Solution index for c_prime_bijection (defaults to 1)
        #[arg(short)]
        j: Option<u64>,
        /// Explicit c' override for c_prime_bijection
        #[arg(long)]
        c_prime: Option<u64>,
        /// Fixed x for inverse_identity / negation_identity
        #[arg(short)]
        x: Option<u64>,
        /// Exponent n for order_formula
        #[arg(short)]
        n: Option<u64>,
    },
    /// Run a sweep from a config file, writing machine-readable records
    Sweep {
        config: PathBuf,
        /// Worker count (overrides the config file and DWP_JOBS)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Forge signatures for a fixed s2 via the Lambert reduction
    Attack {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        g: u64,
        /// Private key (the demo plays both sides)
        #[arg(short)]
        x: u64,
        /// Message to forge a signature for
        #[arg(short)]
        m: u64,
        #[arg(long)]
        s2: u64,
        /// Verifier range policy: extended or strict
        #[arg(long, default_value = "extended")]
        policy: String,
    },
    /// Brute-force oracle scan (default upper bound p^e*m)
    Oracle {
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 1)]
        e: u32,
        #[arg(short)]
        g: u64,
        #[arg(short)]
        c: u64,
        #[arg(long)]
        upper: Option<u64>,
    },
}

enum CmdError {
    Usage(String),
    Io(String),
}

impl<E: std::error::Error> From<E> for CmdError {
    fn from(e: E) -> Self {
        CmdError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Io(msg)) => {
            eprintln!("I/O error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CmdError> {
    match cli.command {
        Command::Solve { p, e, g, c, oracle } => cmd_solve(p, e, g, c, oracle),
        Command::Count { p, e, g, c } => {
            let inst = DwpInstance::from_params(p, e, g, c)?;
            println!(
                "m = ord_{p}({g}) = {}; {} solutions in 1..{}",
                count_solutions(&inst),
                count_solutions(&inst),
                inst.range_bound()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Teichmuller { p, e, g } => cmd_teichmuller(p, e, g),
        Command::Verify {
            pattern,
            p,
            e,
            g,
            c,
            j,
            c_prime,
            x,
            n,
        } => cmd_verify(&pattern, p, e, g, c, j, c_prime, x, n),
        Command::Sweep { config, jobs } => cmd_sweep(&config, jobs),
        Command::Attack {
            p,
            g,
            x,
            m,
            s2,
            policy,
        } => cmd_attack(p, g, x, m, s2, &policy),
        Command::Oracle { p, e, g, c, upper } => {
            let inst = DwpInstance::from_params(p, e, g, c)?;
            let upper = upper.unwrap_or_else(|| inst.range_bound());
            let set = brute_force(&inst, upper);
            println!("instance: {inst}");
            println!("scan range: 1..{upper}");
            println!("solutions: {}", join(set.solutions()));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn join(xs: &[u64]) -> String {
    if xs.is_empty() {
        return "(none)".to_string();
    }
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_solve(p: u64, e: u32, g: u64, c: u64, oracle: bool) -> Result<ExitCode, CmdError> {
    let inst = DwpInstance::from_params(p, e, g, c)?;
    let set = solve_all(&inst)?;
    println!("instance: {inst}");
    println!(
        "m = ord_{p}({g}) = {}; canonical range 1..{}",
        inst.order_mod_p(),
        inst.range_bound()
    );
    println!("solutions: {}", join(set.solutions()));
    println!(
        "classes (x mod m, x mod p^e): {}",
        set.residue_pairs()
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    if oracle {
        let slow = brute_force(&inst, inst.range_bound());
        if slow.solutions() == set.solutions() {
            println!("oracle: MATCH");
        } else {
            println!(
                "oracle: MISMATCH {:?} vs {:?}",
                set.solutions(),
                slow.solutions()
            );
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_teichmuller(p: u64, e: u32, g: u64) -> Result<ExitCode, CmdError> {
    let pp = PrimePower::new(p, e)?;
    let decomp = TeichDecomposition::new(&pp, pp.residue(g))?;
    let omega = decomp.omega();
    let unit = decomp.one_unit();
    println!("g = {} (mod {})", decomp.g().value(), pp.modulus());
    println!("omega(g) = {}", omega.value());
    println!("<g> = {}", unit.value());
    println!(
        "omega^(p-1) = {}; omega * <g> = {}; <g> mod p = {}",
        omega.pow(p - 1).value(),
        (omega * unit).value(),
        unit.value() % p
    );
    println!(
        "ord(omega) = {}, ord(<g>) = {} (divides p^(e-1) = {})",
        pp.mult_order(omega)?,
        pp.mult_order(unit)?,
        pp.modulus() / p
    );
    Ok(ExitCode::SUCCESS)
}

fn require<T>(value: Option<T>, what: &str, pattern: &str) -> Result<T, CmdError> {
    value.ok_or_else(|| CmdError::Usage(format!("verify {pattern} needs {what}")))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    pattern: &str,
    p: u64,
    e: u32,
    g: Option<u64>,
    c: Option<u64>,
    j: Option<u64>,
    c_prime: Option<u64>,
    x: Option<u64>,
    n: Option<u64>,
) -> Result<ExitCode, CmdError> {
    let id: PatternId = pattern.parse().map_err(CmdError::Usage)?;
    let pp = PrimePower::new(p, e)?;
    let instance = |g: u64, c: u64| DwpInstance::new(pp, g, c);

    let report: PatternReport = match id {
        PatternId::CPrimeBijection => {
            let inst = instance(require(g, "-g", pattern)?, require(c, "-c", pattern)?)?;
            patterns::check_c_prime_bijection_with(&inst, j.unwrap_or(1), c_prime)?
        }
        PatternId::SumModP | PatternId::SumModM => {
            let inst = instance(require(g, "-g", pattern)?, require(c, "-c", pattern)?)?;
            let (mod_p, mod_m) = patterns::check_sums(&inst)?;
            if id == PatternId::SumModP {
                mod_p
            } else {
                mod_m
            }
        }
        PatternId::ConjectureA | PatternId::ConjectureB => {
            let inst = instance(require(g, "-g", pattern)?, require(c, "-c", pattern)?)?;
            let (a, b) = patterns::check_conjecture(&inst)?;
            if id == PatternId::ConjectureA {
                a
            } else {
                b
            }
        }
        PatternId::InverseIdentity | PatternId::NegationIdentity => {
            let (inv, neg) = patterns::check_inverse_negation(
                &pp,
                require(g, "-g", pattern)?,
                require(x, "-x", pattern)?,
            )?;
            if id == PatternId::InverseIdentity {
                inv
            } else {
                neg
            }
        }
        PatternId::SpecialPair => {
            patterns::special_solution_check(&pp, require(g, "-g", pattern)?)?
        }
        PatternId::OrderFormula => patterns::order_formula_check(&pp, require(n, "-n", pattern)?)?,
    };

    println!("{report}");
    Ok(if report.verdict == Verdict::Fails {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_sweep(path: &std::path::Path, jobs: Option<usize>) -> Result<ExitCode, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::Io(format!("{}: {e}", path.display())))?;
    let config = SweepConfig::parse(&text).map_err(CmdError::Usage)?;
    let records = run_sweep(&config, effective_jobs(&config, jobs)).map_err(CmdError::Usage)?;
    write_records(&records, config.output_format, &config.output_path)
        .map_err(|e| CmdError::Io(format!("{}: {e}", config.output_path.display())))?;

    let mut tallies: std::collections::BTreeMap<(String, String), u64> =
        std::collections::BTreeMap::new();
    for record in &records {
        *tallies
            .entry((record.pattern.clone(), record.verdict.clone()))
            .or_default() += 1;
    }
    println!(
        "{} records -> {}",
        records.len(),
        config.output_path.display()
    );
    for ((pattern, verdict), count) in tallies {
        println!("  {pattern}: {verdict} x{count}");
    }
    // guard: the file must parse back to exactly what was computed
    let reread = read_records(config.output_format, &config.output_path).map_err(CmdError::Io)?;
    if reread != records {
        return Err(CmdError::Io(
            "written records do not round-trip".to_string(),
        ));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_attack(
    p: u64,
    g: u64,
    x_priv: u64,
    msg: u64,
    s2: u64,
    policy: &str,
) -> Result<ExitCode, CmdError> {
    let policy = match policy {
        "strict" => RangePolicy::Strict,
        "extended" => RangePolicy::Extended,
        other => return Err(CmdError::Usage(format!("bad policy: {other}"))),
    };
    let params = elgamal::ElGamalParams::new(p, g)?;
    let kp = elgamal::keygen(params, x_priv)?;
    let h = kp.public_key();
    let inst = elgamal::reduction_instance(params, h, msg, s2)?;
    println!("public key h = {h}");
    println!(
        "reduction: s1 * {}^s1 = {} (mod {p}), m = {}",
        inst.g().value(),
        inst.c().value(),
        inst.order_mod_p()
    );
    let sigs = elgamal::forge_fixed_s2(params, h, msg, s2)?;
    let mut all_pass = true;
    for sig in &sigs {
        let chosen = elgamal::verify(params, h, msg, sig, policy);
        let strict = elgamal::verify(params, h, msg, sig, RangePolicy::Strict);
        let direct = mul_mod(sig.s1, pow_mod(inst.g().value(), sig.s1, p), p) == inst.c().value();
        all_pass &= chosen;
        println!(
            "forged (s1={}, s2={}): verify[{}]={}, verify[strict]={}, reduction check={}",
            sig.s1,
            sig.s2,
            if policy == RangePolicy::Strict {
                "strict"
            } else {
                "extended"
            },
            chosen,
            strict,
            direct
        );
    }
    println!(
        "{} of {} forged signatures verify under the {} policy",
        sigs.iter()
            .filter(|s| elgamal::verify(params, h, msg, s, policy))
            .count(),
        sigs.len(),
        if policy == RangePolicy::Strict {
            "strict"
        } else {
            "extended"
        },
    );
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
