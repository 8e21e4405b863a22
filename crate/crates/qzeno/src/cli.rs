//! Command-line front end and file formats.
//!
//! Config files are flat `key = value` text with `#` comments. Matrix files
//! hold one row per line with entries as `re+imi` pairs at six decimals so
//! they can be checked by eye. CSV files use a `.` decimal separator, `,`
//! delimiter, a mandatory header row, and twelve-decimal values. Every
//! command writes a `manifest.txt` that echoes its configuration and lists
//! the emitted files; feeding the manifest back through the same command
//! reproduces the outputs byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::baseline::{XorRoundResult, xor_trajectory};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::measures::{BipartiteSplit, fidelity_to_psi_plus, negativity};
use crate::states::{psi_plus, sigma_alpha, sigma_free};
use crate::sweep::{
    SweepObjective, SweepResult, SweepRow, SweepSpec, run_sweep, run_sweep_serial,
};
use crate::zeno::{ProtocolConfig, RoundTrace, ThresholdPair, run_round};

/// Exit codes: 0 success, 2 config/usage parse error, 3 parameter range
/// error, 4 numerical dead end, 1 anything else.
pub fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Config(_) => 2,
        Error::InvalidParameter(_) => 3,
        Error::DeadEnd { .. } => 4,
        _ => 1,
    }
}

#[derive(Parser)]
#[command(
    name = "qzeno",
    version,
    about = "Bound-entanglement activation via iterated rotate-measure dynamics on two qutrit pairs"
)]
struct Cli {
    /// Directory receiving all output files.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one of the built-in states as a matrix file.
    State {
        #[arg(value_enum)]
        kind: StateKind,
        /// Family parameter for sigma-alpha, in [2, 5].
        #[arg(long)]
        alpha: Option<f64>,
        /// Fidelity parameter for sigma-free, in (0, 1).
        #[arg(long = "F", visible_alias = "fidelity")]
        fidelity: Option<f64>,
    },
    /// Run the protocol from a config file; write the trajectory CSV, the
    /// final state, and per-round summaries.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's iteration count.
        #[arg(long)]
        k: Option<usize>,
        /// Override the config's round count (chained mode when > 1).
        #[arg(long)]
        rounds: Option<usize>,
    },
    /// Brute-force the parameter space; write the full table and the best
    /// configuration found.
    Sweep {
        /// Sweep spec file; defaults to the reference search space.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Evaluate threshold pairs on a single thread.
        #[arg(long)]
        serial: bool,
    },
    /// Evaluate the analytic XOR activation recursion.
    Baseline {
        #[arg(long = "F0", visible_alias = "f0")]
        initial_fidelity: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        rounds: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StateKind {
    SigmaAlpha,
    SigmaFree,
    PsiPlus,
}

/// Entry point used by the binary; maps errors onto the documented exit
/// codes.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    fs::create_dir_all(&cli.out_dir)?;
    match &cli.command {
        Command::State {
            kind,
            alpha,
            fidelity,
        } => cmd_state(&cli.out_dir, *kind, *alpha, *fidelity),
        Command::Run { config, k, rounds } => cmd_run(&cli.out_dir, config, *k, *rounds),
        Command::Sweep { spec, serial } => cmd_sweep(&cli.out_dir, spec.as_deref(), *serial),
        Command::Baseline {
            initial_fidelity,
            alpha,
            rounds,
        } => cmd_baseline(&cli.out_dir, *initial_fidelity, *alpha, *rounds),
    }
}

// ---------------------------------------------------------------------------
// Number and file formatting

/// CSV numbers: fixed twelve decimals, stable under parse-format round trips.
fn fmt_value(x: f64) -> String {
    format!("{x:.12}")
}

/// Config echoes use the shortest representation that parses back to the
/// identical float.
fn fmt_exact(x: f64) -> String {
    format!("{x}")
}

/// Matrix files: `re+imi` pairs at six decimals, one row per line.
pub fn matrix_text(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if j > 0 {
                out.push(' ');
            }
            let z = m.get(i, j);
            let _ = write!(out, "{:.6}{:+.6}i", z.re, z.im);
        }
        out.push('\n');
    }
    out
}

pub fn trajectory_csv(points: &[crate::sweep::TrajectoryPoint]) -> String {
    let mut out = String::from("k,negativity,fidelity,cumulative_probability\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            p.k,
            fmt_value(p.negativity),
            fmt_value(p.fidelity),
            fmt_value(p.cumulative_probability)
        );
    }
    out
}

/// Round summary table; row 0 is the initial state.
pub fn rounds_csv(initial_negativity: f64, initial_fidelity: f64, rounds: &[RoundSummaryLine]) -> String {
    let mut out = String::from("round,negativity,fidelity,cumulative_probability\n");
    let _ = writeln!(
        out,
        "0,{},{},{}",
        fmt_value(initial_negativity),
        fmt_value(initial_fidelity),
        fmt_value(1.0)
    );
    for (idx, line) in rounds.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            idx + 1,
            fmt_value(line.negativity),
            fmt_value(line.fidelity),
            fmt_value(line.cumulative_probability)
        );
    }
    out
}

pub struct RoundSummaryLine {
    pub negativity: f64,
    pub fidelity: f64,
    pub cumulative_probability: f64,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("i,j,k,outcome_a,outcome_b,negativity,fidelity,probability\n");
    for row in rows {
        match &row.value {
            Some(v) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    row.pair.free,
                    row.pair.bound,
                    row.k,
                    row.outcome.0,
                    row.outcome.1,
                    fmt_value(v.negativity),
                    fmt_value(v.fidelity),
                    fmt_value(v.probability)
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},,,",
                    row.pair.free, row.pair.bound, row.k, row.outcome.0, row.outcome.1
                );
            }
        }
    }
    out
}

pub fn baseline_csv(steps: &[XorRoundResult]) -> String {
    let mut out = String::from("round,fidelity,success_probability,cumulative_probability\n");
    let mut cumulative = 1.0;
    for (idx, step) in steps.iter().enumerate() {
        cumulative *= step.success_probability;
        let _ = writeln!(
            out,
            "{},{},{},{}",
            idx + 1,
            fmt_value(step.next_fidelity),
            fmt_value(step.success_probability),
            fmt_value(cumulative)
        );
    }
    out
}

// ---------------------------------------------------------------------------
// Flat key = value config files

fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "line {}: expected `key = value`, got `{line}`",
                lineno + 1
            )));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if map.insert(key.clone(), value).is_some() {
            return Err(Error::Config(format!("duplicate key `{key}`")));
        }
    }
    Ok(map)
}

fn parse_f64(map: &BTreeMap<String, String>, key: &str) -> Result<f64> {
    let raw = map
        .get(key)
        .ok_or_else(|| Error::Config(format!("missing key `{key}`")))?;
    raw.parse()
        .map_err(|_| Error::Config(format!("key `{key}`: `{raw}` is not a number")))
}

fn parse_usize(map: &BTreeMap<String, String>, key: &str) -> Result<usize> {
    let raw = map
        .get(key)
        .ok_or_else(|| Error::Config(format!("missing key `{key}`")))?;
    raw.parse()
        .map_err(|_| Error::Config(format!("key `{key}`: `{raw}` is not a non-negative integer")))
}

const RUN_KEYS: [&str; 11] = [
    "F", "alpha", "theta", "i_alice", "j_alice", "i_bob", "j_bob", "k", "outcome_a", "outcome_b",
    "rounds",
];

/// A run configuration: one protocol round plus the chain length.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub protocol: ProtocolConfig,
    pub rounds: usize,
}

pub fn parse_run_config(text: &str) -> Result<RunConfig> {
    let map = parse_key_values(text)?;
    for key in map.keys() {
        if !RUN_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!("unknown key `{key}`")));
        }
    }
    let protocol = ProtocolConfig {
        initial_fidelity: parse_f64(&map, "F")?,
        alpha: parse_f64(&map, "alpha")?,
        theta: parse_f64(&map, "theta")?,
        alice: ThresholdPair::new(parse_usize(&map, "i_alice")?, parse_usize(&map, "j_alice")?),
        bob: ThresholdPair::new(parse_usize(&map, "i_bob")?, parse_usize(&map, "j_bob")?),
        iterations: parse_usize(&map, "k")?,
        final_outcome: (parse_usize(&map, "outcome_a")?, parse_usize(&map, "outcome_b")?),
    };
    let rounds = if map.contains_key("rounds") {
        parse_usize(&map, "rounds")?
    } else {
        1
    };
    if rounds == 0 {
        return Err(Error::InvalidParameter("rounds must be >= 1".into()));
    }
    Ok(RunConfig { protocol, rounds })
}

pub fn render_run_config(config: &RunConfig) -> String {
    let p = &config.protocol;
    let mut out = String::new();
    let _ = writeln!(out, "F = {}", fmt_exact(p.initial_fidelity));
    let _ = writeln!(out, "alpha = {}", fmt_exact(p.alpha));
    let _ = writeln!(out, "theta = {}", fmt_exact(p.theta));
    let _ = writeln!(out, "i_alice = {}", p.alice.free);
    let _ = writeln!(out, "j_alice = {}", p.alice.bound);
    let _ = writeln!(out, "i_bob = {}", p.bob.free);
    let _ = writeln!(out, "j_bob = {}", p.bob.bound);
    let _ = writeln!(out, "k = {}", p.iterations);
    let _ = writeln!(out, "outcome_a = {}", p.final_outcome.0);
    let _ = writeln!(out, "outcome_b = {}", p.final_outcome.1);
    let _ = writeln!(out, "rounds = {}", config.rounds);
    out
}

const SWEEP_KEYS: [&str; 8] = [
    "F", "alpha", "theta", "k_min", "k_max", "pairs", "outcomes", "objective",
];

fn parse_index_pairs(raw: &str, key: &str) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for chunk in raw.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let Some((a, b)) = chunk.split_once(',') else {
            return Err(Error::Config(format!(
                "key `{key}`: expected `i,j` entries separated by `;`, got `{chunk}`"
            )));
        };
        let a = a.trim().parse().map_err(|_| {
            Error::Config(format!("key `{key}`: `{chunk}` has a non-integer index"))
        })?;
        let b = b.trim().parse().map_err(|_| {
            Error::Config(format!("key `{key}`: `{chunk}` has a non-integer index"))
        })?;
        pairs.push((a, b));
    }
    if pairs.is_empty() {
        return Err(Error::Config(format!("key `{key}`: no entries")));
    }
    Ok(pairs)
}

/// Sweep spec files share the flat format; omitted keys fall back to the
/// reference search space.
pub fn parse_sweep_spec(text: &str) -> Result<SweepSpec> {
    let map = parse_key_values(text)?;
    for key in map.keys() {
        if !SWEEP_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!("unknown key `{key}`")));
        }
    }
    let mut spec = SweepSpec::reference();
    if map.contains_key("F") {
        spec.initial_fidelity = parse_f64(&map, "F")?;
    }
    if map.contains_key("alpha") {
        spec.alpha = parse_f64(&map, "alpha")?;
    }
    if map.contains_key("theta") {
        spec.theta = parse_f64(&map, "theta")?;
    }
    if map.contains_key("k_min") {
        spec.k_min = parse_usize(&map, "k_min")?;
    }
    if map.contains_key("k_max") {
        spec.k_max = parse_usize(&map, "k_max")?;
    }
    if let Some(raw) = map.get("pairs") {
        spec.pairs = parse_index_pairs(raw, "pairs")?
            .into_iter()
            .map(|(free, bound)| ThresholdPair::new(free, bound))
            .collect();
    }
    if let Some(raw) = map.get("outcomes") {
        spec.outcomes = parse_index_pairs(raw, "outcomes")?;
    }
    if let Some(raw) = map.get("objective") {
        spec.objective = match raw.as_str() {
            "max_negativity" => SweepObjective::MaxNegativity,
            "max_negativity_times_probability" => SweepObjective::MaxNegativityTimesProbability,
            other => {
                return Err(Error::Config(format!(
                    "key `objective`: unknown objective `{other}`"
                )));
            }
        };
    }
    Ok(spec)
}

pub fn render_sweep_spec(spec: &SweepSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "F = {}", fmt_exact(spec.initial_fidelity));
    let _ = writeln!(out, "alpha = {}", fmt_exact(spec.alpha));
    let _ = writeln!(out, "theta = {}", fmt_exact(spec.theta));
    let _ = writeln!(out, "k_min = {}", spec.k_min);
    let _ = writeln!(out, "k_max = {}", spec.k_max);
    let pairs: Vec<String> = spec
        .pairs
        .iter()
        .map(|p| format!("{},{}", p.free, p.bound))
        .collect();
    let _ = writeln!(out, "pairs = {}", pairs.join(";"));
    let outcomes: Vec<String> = spec
        .outcomes
        .iter()
        .map(|(a, b)| format!("{a},{b}"))
        .collect();
    let _ = writeln!(out, "outcomes = {}", outcomes.join(";"));
    let objective = match spec.objective {
        SweepObjective::MaxNegativity => "max_negativity",
        SweepObjective::MaxNegativityTimesProbability => "max_negativity_times_probability",
    };
    let _ = writeln!(out, "objective = {objective}");
    out
}

// ---------------------------------------------------------------------------
// Manifests

fn manifest_text(command: &str, outputs: &[(&str, &str)], config_echo: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# qzeno {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# command: {command}");
    let _ = writeln!(out, "# outputs:");
    for (file, role) in outputs {
        let _ = writeln!(out, "#   {file}  {role}");
    }
    if !config_echo.is_empty() {
        let _ = writeln!(out, "# config (feed this file back via --config/--spec):");
        out.push_str(config_echo);
    }
    out
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::write(dir.join(name), contents)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Commands

fn cmd_state(
    out_dir: &Path,
    kind: StateKind,
    alpha: Option<f64>,
    fidelity: Option<f64>,
) -> Result<()> {
    let (name, text, param_echo) = match kind {
        StateKind::SigmaAlpha => {
            let alpha =
                alpha.ok_or_else(|| Error::Config("sigma-alpha requires --alpha".into()))?;
            let state = sigma_alpha(alpha)?;
            (
                "sigma_alpha.txt",
                matrix_text(state.matrix()),
                format!("alpha = {}", fmt_exact(alpha)),
            )
        }
        StateKind::SigmaFree => {
            let f = fidelity.ok_or_else(|| Error::Config("sigma-free requires --F".into()))?;
            let state = sigma_free(f)?;
            (
                "sigma_free.txt",
                matrix_text(state.matrix()),
                format!("F = {}", fmt_exact(f)),
            )
        }
        StateKind::PsiPlus => {
            let psi = psi_plus();
            let mut text = String::new();
            for amp in psi.amplitudes() {
                let _ = writeln!(text, "{:.6}{:+.6}i", amp.re, amp.im);
            }
            ("psi_plus.txt", text, String::new())
        }
    };
    write_file(out_dir, name, &text)?;
    let manifest = manifest_text(
        &format!("state ({param_echo})"),
        &[(name, "state matrix, one row per line")],
        "",
    );
    write_file(out_dir, "manifest.txt", &manifest)
}

fn cmd_run(
    out_dir: &Path,
    config_path: &Path,
    k_override: Option<usize>,
    rounds_override: Option<usize>,
) -> Result<()> {
    let text = fs::read_to_string(config_path)?;
    let mut config = parse_run_config(&text)?;
    if let Some(k) = k_override {
        config.protocol.iterations = k;
    }
    if let Some(rounds) = rounds_override {
        if rounds == 0 {
            return Err(Error::InvalidParameter("rounds must be >= 1".into()));
        }
        config.rounds = rounds;
    }
    config.protocol.validate()?;

    let split = BipartiteSplit::qutrit_pair();
    let initial = config.protocol.initial_state()?;
    let initial_negativity = negativity(&initial, &split)?;
    let initial_fidelity = fidelity_to_psi_plus(&initial)?;

    let mut outputs: Vec<(String, String)> = Vec::new();
    let mut summary_lines = Vec::with_capacity(config.rounds);
    let mut cumulative = 1.0;
    let mut fe = initial;
    let mut last_trace: Option<RoundTrace> = None;
    for round in 1..=config.rounds {
        let trace = run_round(&fe, &config.protocol)?;
        cumulative *= trace.cumulative_success_probability;
        summary_lines.push(RoundSummaryLine {
            negativity: trace.final_negativity(),
            fidelity: trace.final_fidelity(),
            cumulative_probability: cumulative,
        });
        let csv = trajectory_csv(&trace_points(&trace));
        let name = if config.rounds == 1 {
            "trajectory.csv".to_string()
        } else {
            format!("trajectory_round{round}.csv")
        };
        write_file(out_dir, &name, &csv)?;
        outputs.push((name, "per-iteration conditional trajectory".into()));
        fe = trace.final_state.clone();
        last_trace = Some(trace);
    }
    let trace = last_trace.expect("rounds >= 1");

    write_file(out_dir, "final_state.txt", &matrix_text(trace.final_state.matrix()))?;
    outputs.push(("final_state.txt".into(), "9x9 free-pair state after the last round".into()));

    let rounds_table = rounds_csv(initial_negativity, initial_fidelity, &summary_lines);
    write_file(out_dir, "rounds.csv", &rounds_table)?;
    outputs.push(("rounds.csv".into(), "negativity/fidelity per chained round".into()));

    let output_refs: Vec<(&str, &str)> = outputs
        .iter()
        .map(|(f, r)| (f.as_str(), r.as_str()))
        .collect();
    let manifest = manifest_text("run", &output_refs, &render_run_config(&config));
    write_file(out_dir, "manifest.txt", &manifest)
}

fn trace_points(trace: &RoundTrace) -> Vec<crate::sweep::TrajectoryPoint> {
    let mut chain = 1.0;
    trace
        .survival_probabilities
        .iter()
        .zip(trace.negativities.iter())
        .zip(trace.fidelities.iter())
        .zip(trace.outcome_probabilities.iter())
        .enumerate()
        .map(|(idx, (((survival, negativity), fidelity), outcome_probability))| {
            chain *= survival;
            crate::sweep::TrajectoryPoint {
                k: idx + 1,
                negativity: *negativity,
                fidelity: *fidelity,
                cumulative_probability: chain * outcome_probability,
            }
        })
        .collect()
}

fn cmd_sweep(out_dir: &Path, spec_path: Option<&Path>, serial: bool) -> Result<()> {
    let spec = match spec_path {
        Some(path) => parse_sweep_spec(&fs::read_to_string(path)?)?,
        None => SweepSpec::reference(),
    };
    let result: SweepResult = if serial {
        run_sweep_serial(&spec)?
    } else {
        run_sweep(&spec)?
    };

    write_file(out_dir, "sweep_table.csv", &sweep_csv(&result.rows))?;

    let best = &result.best;
    let best_config = RunConfig {
        protocol: spec.cell_config(best.pair, best.k, best.outcome),
        rounds: 1,
    };
    let mut best_text = String::new();
    let _ = writeln!(best_text, "# best sweep cell under the configured objective");
    let _ = writeln!(best_text, "# negativity = {}", fmt_value(best.negativity));
    let _ = writeln!(best_text, "# fidelity = {}", fmt_value(best.fidelity));
    let _ = writeln!(best_text, "# probability = {}", fmt_value(best.probability));
    best_text.push_str(&render_run_config(&best_config));
    write_file(out_dir, "best_config.txt", &best_text)?;

    let manifest = manifest_text(
        if serial { "sweep (serial)" } else { "sweep" },
        &[
            ("sweep_table.csv", "full (i, j, k, outcome) table"),
            ("best_config.txt", "replayable config of the argmax cell"),
        ],
        &render_sweep_spec(&spec),
    );
    write_file(out_dir, "manifest.txt", &manifest)
}

fn cmd_baseline(out_dir: &Path, initial_fidelity: f64, alpha: f64, rounds: usize) -> Result<()> {
    let steps = xor_trajectory(initial_fidelity, alpha, rounds)?;
    write_file(out_dir, "baseline.csv", &baseline_csv(&steps))?;
    let config_echo = format!(
        "F = {}\nalpha = {}\nrounds = {rounds}\n",
        fmt_exact(initial_fidelity),
        fmt_exact(alpha)
    );
    let manifest = manifest_text(
        "baseline",
        &[("baseline.csv", "XOR recursion fidelity/probability per round")],
        &config_echo,
    );
    write_file(out_dir, "manifest.txt", &manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_config_round_trips() {
        let config = RunConfig {
            protocol: ProtocolConfig::default(),
            rounds: 3,
        };
        let text = render_run_config(&config);
        let parsed = parse_run_config(&text).unwrap();
        assert_eq!(parsed, config);
    }

    #[test]
    fn run_config_rejects_unknown_and_duplicate_keys() {
        let mut text = render_run_config(&RunConfig {
            protocol: ProtocolConfig::default(),
            rounds: 1,
        });
        text.push_str("mystery = 1\n");
        assert!(matches!(parse_run_config(&text), Err(Error::Config(_))));

        let doubled = "F = 0.3\nF = 0.4\n";
        assert!(matches!(parse_run_config(doubled), Err(Error::Config(_))));
    }

    #[test]
    fn run_config_requires_all_protocol_keys() {
        assert!(matches!(
            parse_run_config("F = 0.3\nalpha = 4\n"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn manifest_parses_as_its_own_config() {
        let config = RunConfig {
            protocol: ProtocolConfig::default(),
            rounds: 1,
        };
        let manifest = manifest_text("run", &[("x.csv", "test")], &render_run_config(&config));
        let parsed = parse_run_config(&manifest).unwrap();
        assert_eq!(parsed, config);
    }

    #[test]
    fn sweep_spec_round_trips() {
        let spec = SweepSpec::reference();
        let parsed = parse_sweep_spec(&render_sweep_spec(&spec)).unwrap();
        assert_eq!(parsed.initial_fidelity, spec.initial_fidelity);
        assert_eq!(parsed.pairs, spec.pairs);
        assert_eq!(parsed.outcomes, spec.outcomes);
        assert_eq!(parsed.k_max, spec.k_max);
    }

    #[test]
    fn sweep_spec_accepts_partial_files() {
        let spec = parse_sweep_spec("k_max = 10\npairs = 0,1\n").unwrap();
        assert_eq!(spec.k_max, 10);
        assert_eq!(spec.pairs, vec![ThresholdPair::new(0, 1)]);
        assert_eq!(spec.outcomes.len(), 9);
        assert!(matches!(
            parse_sweep_spec("objective = fastest"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn matrix_text_is_eyeball_friendly() {
        let state = sigma_alpha(4.0).unwrap();
        let text = matrix_text(state.matrix());
        let first_line = text.lines().next().unwrap();
        assert!(first_line.starts_with("0.095238+0.000000i"));
        assert_eq!(text.lines().count(), 9);
        assert_eq!(first_line.split(' ').count(), 9);
    }

    #[test]
    fn csv_values_parse_back_at_twelve_decimals() {
        let s = fmt_value(0.171194969339028);
        assert_eq!(s, "0.171194969339");
        let parsed: f64 = s.parse().unwrap();
        assert_eq!(fmt_value(parsed), s);
    }
}
