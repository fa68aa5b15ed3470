//! Argument handling and output for the `yul-gamecheck` binary.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::Parser;
use serde_json::json;
use yulgc_core::game::{render_trace, ExploreOptions, Game, Params, Report, Verdict, DAY};
use yulgc_core::state::{KeccakOracle, DEFAULT_SEED};
use yulgc_core::word::parse_word;
use yulgc_core::{Address, Word};

pub const EXIT_EXHAUSTED: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

/// Bounded game-semantics checker for EVM-dialect Yul.
#[derive(Debug, Parser)]
#[command(name = "yul-gamecheck", version)]
pub struct Cli {
    /// Yul object produced by the compiler.
    pub yul: PathBuf,
    /// ABI JSON: a flat list, or a map from contract name to list.
    pub abi: PathBuf,

    /// Opponent calls per Proponent function in one trace.
    #[arg(long, default_value_t = 2)]
    pub call_bound: u32,
    /// Open Opponent-to-Proponent calls at once.
    #[arg(long, default_value_t = 3)]
    pub stack_bound: u32,
    #[arg(long, default_value_t = 1)]
    pub opponent_addresses: u32,
    /// Initial balance of each Opponent address, in wei.
    #[arg(long, value_parser = word_arg)]
    pub opponent_balance: Option<Word>,
    /// Value the Opponent may attach to payable calls, in wei.
    #[arg(long, value_parser = word_arg)]
    pub opponent_spending: Option<Word>,
    /// Initial uint/bytes32 domain; repeat or separate with commas. Replaces
    /// the default {0, 1, 1000}.
    #[arg(long, value_delimiter = ',', value_parser = word_arg)]
    pub uint_domain: Vec<Word>,
    /// Initial address domain; repeat or separate with commas.
    #[arg(long, value_delimiter = ',', value_parser = address_arg)]
    pub address_domain: Vec<Address>,
    /// Let the Opponent return values drawn from its domains.
    #[arg(long)]
    pub opponent_return_values: bool,
    /// Length of one wait move: seconds, or a number with d/h/m/s.
    #[arg(long, value_parser = duration_arg)]
    pub wait_time: Option<u64>,
    #[arg(long)]
    pub no_waiting: bool,
    /// Try waiting before calls instead of after.
    #[arg(long)]
    pub wait_first: bool,
    /// Total waiting allowed in one trace.
    #[arg(long, value_parser = duration_arg)]
    pub max_wait: Option<u64>,
    #[arg(long, value_parser = word_arg)]
    pub deploy_gas: Option<Word>,
    #[arg(long, value_parser = address_arg)]
    pub deploy_address: Option<Address>,
    #[arg(long, value_parser = word_arg)]
    pub deploy_value: Option<Word>,
    /// Replace checked arithmetic helpers with wrapping opcodes.
    #[arg(long)]
    pub legacy: bool,
    /// Restrict Opponent calls to `Contract.signature`; repeatable.
    #[arg(long)]
    pub only: Vec<String>,
    /// Wall-clock budget for the search.
    #[arg(long, value_parser = duration_arg)]
    pub deadline: Option<u64>,
    /// Print the verdict as JSON.
    #[arg(long)]
    pub json: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

fn word_arg(s: &str) -> Result<Word, String> {
    parse_word(s).ok_or_else(|| format!("`{s}` is not a decimal or 0x-hex number"))
}

fn address_arg(s: &str) -> Result<Address, String> {
    Address::parse(s).ok_or_else(|| format!("`{s}` is not an address"))
}

/// Seconds from `604800`, `7d`, `12h`, `30m` or `45s`.
pub fn duration_arg(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let (num, unit) = match t.char_indices().last() {
        Some((i, c)) if c.is_ascii_alphabetic() => (&t[..i], c),
        _ => (t, 's'),
    };
    let scale = match unit {
        'd' => DAY,
        'h' => 3600,
        'm' => 60,
        's' => 1,
        _ => return Err(format!("`{s}`: unknown duration unit `{unit}`")),
    };
    num.parse::<u64>()
        .ok()
        .and_then(|n| n.checked_mul(scale))
        .ok_or_else(|| format!("`{s}` is not a duration"))
}

impl Cli {
    pub fn params(&self) -> Params {
        let d = Params::default();
        Params {
            call_bound: self.call_bound,
            stack_bound: self.stack_bound,
            opponent_addresses: self.opponent_addresses,
            opponent_balance: self.opponent_balance.unwrap_or(d.opponent_balance),
            opponent_spending: self.opponent_spending.unwrap_or(d.opponent_spending),
            uint_domain: if self.uint_domain.is_empty() {
                d.uint_domain
            } else {
                self.uint_domain.clone()
            },
            address_domain: self.address_domain.clone(),
            opponent_return_values: self.opponent_return_values,
            wait_time: self.wait_time.map(Word::from).unwrap_or(d.wait_time),
            no_waiting: self.no_waiting,
            wait_first: self.wait_first,
            max_wait: self.max_wait.map(Word::from).unwrap_or(d.max_wait),
            deploy_gas: self.deploy_gas.unwrap_or(d.deploy_gas),
            deploy_address: self.deploy_address.unwrap_or(d.deploy_address),
            deploy_value: self.deploy_value.unwrap_or(d.deploy_value),
            legacy: self.legacy,
            only: self.only.clone(),
            deadline: self.deadline.map(Duration::from_secs),
        }
    }
}

/// Oracle seed from `YULGC_SEED` (decimal or 0x-hex), else the default.
pub fn seed_from_env() -> Result<u64, String> {
    match std::env::var("YULGC_SEED") {
        Ok(s) => parse_word(&s)
            .and_then(|w| u64::try_from(w).ok())
            .ok_or_else(|| format!("YULGC_SEED: `{s}` is not a 64-bit number")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Exit status for a verdict.
pub fn exit_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Violation(_) => EXIT_VIOLATION,
        Verdict::Exhausted => EXIT_EXHAUSTED,
        Verdict::TimedOut => EXIT_TIMEOUT,
    }
}

fn stats_json(r: &Report) -> serde_json::Value {
    let s = &r.stats;
    json!({
        "traces": s.traces,
        "moves": s.moves,
        "first_level_calls": s.first_level_calls,
        "max_calls_per_function": s.max_calls_per_function,
        "max_open_calls": s.max_open_calls,
        "max_waits": s.max_waits,
        "max_total_wait": s.max_total_wait,
    })
}

/// The verdict as a JSON document.
pub fn report_json(game: &Game, r: &Report) -> serde_json::Value {
    let opponents: Vec<String> = game.opponents.iter().map(|a| a.to_string()).collect();
    match &r.verdict {
        Verdict::Violation(v) => json!({
            "verdict": "violation",
            "message": v.message,
            "opponents": opponents,
            "trace": v.lines.iter().map(|l| json!({"move": l.kind, "text": l.text})).collect::<Vec<_>>(),
            "stats": stats_json(r),
        }),
        Verdict::Exhausted => json!({
            "verdict": "exhausted",
            "opponents": opponents,
            "stats": stats_json(r),
        }),
        Verdict::TimedOut => json!({
            "verdict": "timeout",
            "opponents": opponents,
            "stats": stats_json(r),
        }),
    }
}

/// Runs the checker; the return value is the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let started = Instant::now();
    let read =
        |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
    let inputs = read(&cli.yul).and_then(|y| read(&cli.abi).map(|a| (y, a)));
    let (source, abi) = match inputs {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let seed = match seed_from_env() {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let params = cli.params();
    let deadline = params.deadline.map(|d| started + d);
    let mut game = match Game::new(&source, &abi, params, KeccakOracle::new(seed)) {
        Ok(g) => g,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    for w in &game.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    game.set_print(Arc::new(|s: &str| eprintln!("{s}")));
    let start = match game.initial_config() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let report = game.explore(
        start,
        ExploreOptions {
            jobs: cli.jobs,
            deadline,
        },
    );
    if report.stats.deployments == 0 && report.verdict == Verdict::Exhausted {
        let _ = writeln!(
            err,
            "warning: the deployment transaction reverted; nothing was explored"
        );
    }
    if cli.json {
        let _ = writeln!(out, "{:#}", report_json(&game, &report));
    } else {
        let _ = match &report.verdict {
            Verdict::Violation(v) => write!(out, "{}", render_trace(&game.opponents, v)),
            Verdict::Exhausted => writeln!(
                out,
                "No violation found within bounds: explored {} traces.",
                report.stats.traces
            ),
            Verdict::TimedOut => writeln!(
                out,
                "Timed out: explored {} traces without finding a violation.",
                report.stats.traces
            ),
        };
    }
    exit_code(&report.verdict)
}
