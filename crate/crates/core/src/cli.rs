//! Command-line front end.
//!
//! `analyze`, `de`, `simulate` and `codec` print reports or write CSV. Every
//! file written with `--out` gets a JSON sidecar `<out>.json` holding the
//! resolved configuration and the crate version.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 validation failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bpdecode::{bp_decode, DecoderConfig, ErasureWord, FactorGraph};
use crate::buscore::{format_bits, parse_bits, parse_runs, BusState};
use crate::cac::{cac_rate, count_codewords};
use crate::densevo::{de_threshold, de_trajectory, DeEnsemble, Verdict, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::ira::DegreeDistribution;
use crate::jointcode::{rate_embedded, rate_shielded, JointCode};
use crate::simkit::{run_trials, trial_rng, EnsembleKind, SimConfig, TransmitMode};
use crate::Error;

pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

/// Column order of `simulate` output.
pub const SIMULATE_HEADER: [&str; 8] = ["N", "eps", "trials", "pb_code", "pb_info", "pe", "insufficient_rate", "seed"];
/// Column order of `de --trajectory` output.
pub const TRAJECTORY_HEADER: [&str; 7] = ["iteration", "x_ecc", "y_ecc", "x_p", "y_p", "x_cac", "y_cac"];

#[derive(Parser, Debug)]
#[command(name = "buscode", version, about = "Joint crosstalk-avoidance and erasure coding for parallel buses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run structure, codebook size and rates of a past state.
    Analyze(AnalyzeArgs),
    /// Density-evolution threshold or trajectory.
    De(DeArgs),
    /// Monte-Carlo bit and block erasure rates.
    Simulate(SimulateArgs),
    /// Encode or decode a single bus word.
    #[command(subcommand)]
    Codec(CodecCommand),
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Past bus state over {0,1}, wire 1 first.
    pub past: String,
    /// ECC rate used for the shielded and embedded rates.
    #[arg(long)]
    pub recc: Option<f64>,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct DeArgs {
    /// Regular LDPC degrees `dv,dc`.
    #[arg(long, default_value = "3,12")]
    pub regular: String,
    /// Bisect for the threshold.
    #[arg(long, conflicts_with = "trajectory")]
    pub threshold: bool,
    /// Emit the trajectory at this erasure probability.
    #[arg(long)]
    pub trajectory: Option<f64>,
    /// Half-width of the threshold bracket.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct SimulateArgs {
    /// JSON file with any of the keys below (flags take precedence).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub regular: Option<String>,
    /// Single value, comma list, or `start:stop:step`.
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub trials: Option<u64>,
    /// Comma-separated blocklengths.
    #[arg(long)]
    pub blocklen: Option<String>,
    /// `uniform-codeword` or `info-bits`.
    #[arg(long)]
    pub mode: Option<String>,
    /// `uniform` or `modified`.
    #[arg(long)]
    pub ensemble: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_outer: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CodecCommand {
    /// Encode a payload for a past state.
    Encode(CodecArgs),
    /// Decode a received word over {0,1,e}.
    Decode(CodecArgs),
}

#[derive(Args, Debug)]
pub struct CodecArgs {
    /// Past bus state over {0,1}.
    #[arg(long)]
    pub past: String,
    /// Payload bits (encode) or received word over {0,1,e} (decode).
    pub data: String,
    /// ECC rate setting the parity count; defaults to the rate of `--regular`.
    #[arg(long)]
    pub recc: Option<f64>,
    #[arg(long, default_value = "3,12")]
    pub regular: String,
    /// Seed of the code graph; encoder and decoder must agree.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Keys accepted in a `simulate --config` file.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateFile {
    pub regular: Option<String>,
    pub eps: Option<EpsSpec>,
    pub trials: Option<u64>,
    pub blocklen: Option<Vec<usize>>,
    pub mode: Option<TransmitMode>,
    pub ensemble: Option<EnsembleKind>,
    pub seed: Option<u64>,
    pub max_outer: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum EpsSpec {
    List(Vec<f64>),
    Text(String),
}

/// Fully resolved `simulate` configuration.
#[derive(Clone, Debug, Serialize)]
pub struct SimulateConfig {
    pub regular: String,
    pub eps: Vec<f64>,
    pub trials: u64,
    pub blocklen: Vec<usize>,
    pub mode: TransmitMode,
    pub ensemble: EnsembleKind,
    pub seed: u64,
    pub max_outer: usize,
}

enum Failure {
    Usage(String),
    Validation(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(m) => Failure::Io(m),
            other => Failure::Validation(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let res = match cli.command {
        Command::Analyze(a) => cmd_analyze(&a, out),
        Command::De(a) => cmd_de(&a, out, err),
        Command::Simulate(a) => cmd_simulate(&a, out),
        Command::Codec(CodecCommand::Encode(a)) => cmd_encode(&a, out),
        Command::Codec(CodecCommand::Decode(a)) => cmd_decode(&a, out),
    };
    match res {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Validation(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_VALIDATION
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_IO
        }
    }
}

fn one_based(ws: &[usize]) -> String {
    ws.iter().map(|w| (w + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn write_sidecar(out: &Path, command: &str, config: serde_json::Value) -> CliResult {
    let doc = json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
    });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Io(e.to_string()))?;
    fs::write(sidecar_path(out), text + "\n")?;
    Ok(())
}

#[derive(Serialize)]
struct AnalyzeReport {
    past: String,
    run_lengths: Vec<usize>,
    free_wires: Vec<usize>,
    codewords: String,
    cac_rate: f64,
    r_ecc: Option<f64>,
    rate_shielded: Option<f64>,
    rate_embedded: Option<f64>,
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> CliResult {
    let a: BusState = args.past.parse()?;
    if let Some(r) = args.recc {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::RateOutOfRange(r, "ECC rate must lie in (0, 1]").into());
        }
    }
    let p = parse_runs(&a);
    let r_cac = cac_rate(&a);
    let report = AnalyzeReport {
        past: a.to_string(),
        run_lengths: p.run_lengths.clone(),
        free_wires: p.free_wires.iter().map(|w| w + 1).collect(),
        codewords: count_codewords(&a).to_string(),
        cac_rate: r_cac,
        r_ecc: args.recc,
        rate_shielded: args.recc.map(|r| rate_shielded(r_cac, r)),
        rate_embedded: args.recc.map(|r| rate_embedded(r_cac, r)),
    };
    if args.json {
        let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Io(e.to_string()))?;
        writeln!(out, "{text}")?;
        return Ok(());
    }
    writeln!(out, "wires: {}", a.len())?;
    writeln!(out, "runs: {}", p.num_runs())?;
    let lengths: Vec<String> = p.run_lengths.iter().map(|d| d.to_string()).collect();
    writeln!(out, "run lengths: {}", lengths.join(","))?;
    writeln!(out, "free wires ({}): {}", p.free_wires.len(), one_based(&p.free_wires))?;
    writeln!(out, "codewords: {}", report.codewords)?;
    writeln!(out, "cac rate: {r_cac:.6}")?;
    if let (Some(r), Some(rs), Some(re)) = (args.recc, report.rate_shielded, report.rate_embedded) {
        writeln!(out, "ecc rate: {r}")?;
        writeln!(out, "shielded rate: {rs:.6}")?;
        writeln!(out, "embedded rate: {re:.6}")?;
    }
    Ok(())
}

fn cmd_de(args: &DeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let dist = DegreeDistribution::parse_regular(&args.regular)?;
    let ens = DeEnsemble::new(dist)?;
    if args.threshold == args.trajectory.is_some() {
        return Err(Failure::Usage("pass exactly one of --threshold or --trajectory <eps>".into()));
    }
    if args.threshold {
        let t = de_threshold(&ens, args.tol)?;
        let line = format!("threshold {t:.6} +/- {:.1e}", args.tol);
        match &args.out {
            Some(path) => {
                fs::write(path, format!("threshold,tol\n{t},{}\n", args.tol))?;
                write_sidecar(path, "de", json!({"regular": args.regular, "threshold": true, "tol": args.tol}))?;
            }
            None => writeln!(out, "{line}")?,
        }
        return Ok(());
    }
    let eps = args.trajectory.expect("checked above");
    let traj = de_trajectory(eps, &ens, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(TRAJECTORY_HEADER).map_err(|e| Failure::Io(e.to_string()))?;
        for (k, s) in traj.states.iter().enumerate() {
            w.write_record([
                (k + 1).to_string(),
                s.x_ecc.to_string(),
                s.y_ecc.to_string(),
                s.x_p.to_string(),
                s.y_p.to_string(),
                s.x_cac.to_string(),
                s.y_cac.to_string(),
            ])
            .map_err(|e| Failure::Io(e.to_string()))?;
        }
        w.flush()?;
    }
    let verdict = match traj.verdict {
        Verdict::Success => "success",
        Verdict::Stall => "stall",
    };
    match &args.out {
        Some(path) => {
            fs::write(path, &buf)?;
            write_sidecar(
                path,
                "de",
                json!({"regular": args.regular, "trajectory": eps, "tol": DEFAULT_TOL,
                       "max_iter": DEFAULT_MAX_ITER, "verdict": verdict}),
            )?;
        }
        None => out.write_all(&buf)?,
    }
    writeln!(err, "{verdict} after {} iterations", traj.states.len())?;
    Ok(())
}

/// Parses `0.1`, `0.1,0.2` or `start:stop:step` (inclusive).
pub fn parse_eps_grid(s: &str) -> std::result::Result<Vec<f64>, String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number {t:?} in eps grid"));
    let values = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("eps grid {s:?} must be start:stop:step"));
        }
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if step <= 0.0 || stop < start {
            return Err(format!("eps grid {s:?} needs step > 0 and stop >= start"));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| start + k as f64 * step).map(|x| (x * 1e12).round() / 1e12).collect()
    } else {
        s.split(',').map(num).collect::<std::result::Result<Vec<_>, _>>()?
    };
    if values.iter().any(|e| !(0.0..=1.0).contains(e)) {
        return Err(format!("eps values in {s:?} must lie in [0, 1]"));
    }
    Ok(values)
}

fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad blocklength {t:?}")))
        .collect()
}

/// Merges the config file and flags into a complete configuration.
pub fn resolve_simulate(args: &SimulateArgs) -> crate::Result<SimulateConfig> {
    let file: SimulateFile = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        }
        None => SimulateFile::default(),
    };
    resolve_with(args, file).map_err(Error::Config)
}

fn resolve_with(args: &SimulateArgs, file: SimulateFile) -> std::result::Result<SimulateConfig, String> {
    let eps = match (&args.eps, &file.eps) {
        (Some(s), _) | (None, Some(EpsSpec::Text(s))) => parse_eps_grid(s)?,
        (None, Some(EpsSpec::List(v))) => v.clone(),
        (None, None) => parse_eps_grid("0:0.4:0.02")?,
    };
    let blocklen = match (&args.blocklen, &file.blocklen) {
        (Some(s), _) => parse_list(s)?,
        (None, Some(v)) => v.clone(),
        (None, None) => vec![1000],
    };
    let mode = match (&args.mode, file.mode) {
        (Some(s), _) => s.parse().map_err(|e: Error| e.to_string())?,
        (None, Some(m)) => m,
        (None, None) => TransmitMode::UniformCodeword,
    };
    let ensemble = match (&args.ensemble, file.ensemble) {
        (Some(s), _) => match s.as_str() {
            "uniform" => EnsembleKind::Uniform,
            "modified" => EnsembleKind::Modified,
            other => return Err(format!("unknown ensemble {other:?}")),
        },
        (None, Some(k)) => k,
        (None, None) => EnsembleKind::Uniform,
    };
    Ok(SimulateConfig {
        regular: args.regular.clone().or(file.regular).unwrap_or_else(|| "3,12".into()),
        eps,
        trials: args.trials.or(file.trials).unwrap_or(100),
        blocklen,
        mode,
        ensemble,
        seed: args.seed.or(file.seed).unwrap_or(0),
        max_outer: args.max_outer.or(file.max_outer).unwrap_or(DecoderConfig::default().max_outer),
    })
}

/// Runs the sweep and returns the CSV text.
pub fn simulate_csv(cfg: &SimulateConfig) -> crate::Result<String> {
    let dist = DegreeDistribution::parse_regular(&cfg.regular)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(SIMULATE_HEADER).map_err(io)?;
    for &n in &cfg.blocklen {
        for &eps in &cfg.eps {
            let sim = SimConfig {
                ensemble: cfg.ensemble,
                n,
                eps,
                dist: dist.clone(),
                trials: cfg.trials,
                seed: cfg.seed,
                mode: cfg.mode,
                decoder: DecoderConfig {
                    max_outer: cfg.max_outer,
                    ..DecoderConfig::default()
                },
            };
            let s = run_trials(&sim)?;
            w.write_record([
                n.to_string(),
                eps.to_string(),
                s.trials.to_string(),
                s.pb_code().to_string(),
                s.pb_info().to_string(),
                s.pe().to_string(),
                s.insufficient_rate().to_string(),
                cfg.seed.to_string(),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write) -> CliResult {
    let cfg = resolve_simulate(args)?;
    let text = simulate_csv(&cfg)?;
    match &args.out {
        Some(path) => {
            fs::write(path, &text)?;
            let value = serde_json::to_value(&cfg).map_err(|e| Failure::Io(e.to_string()))?;
            write_sidecar(path, "simulate", value)?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// The code instance shared by `codec encode` and `codec decode`.
pub fn codec_instance(past: &str, recc: Option<f64>, regular: &str, seed: u64) -> crate::Result<JointCode> {
    let a: BusState = past.parse()?;
    let dist = DegreeDistribution::parse_regular(regular)?;
    let r_ecc = match recc {
        Some(r) if r > 0.0 && r <= 1.0 => r,
        Some(r) => return Err(Error::RateOutOfRange(r, "ECC rate must lie in (0, 1]")),
        None => dist.recc()?,
    };
    let p = (a.len() as f64 * (1.0 - r_ecc)).round() as usize;
    JointCode::build(&a, p, &dist, &mut trial_rng(seed, 0))
}

fn print_layout(code: &JointCode, out: &mut dyn Write) -> std::io::Result<()> {
    let l = code.layout();
    writeln!(out, "info wires: {}", one_based(&l.info_wires))?;
    writeln!(out, "parity wires: {}", one_based(code.parity_slots()))?;
    if !l.shield_pairs.is_empty() {
        let pairs: Vec<String> = l
            .shield_pairs
            .iter()
            .map(|s| format!("({} carrier, {} pinned)", s.carrier + 1, s.pinned + 1))
            .collect();
        writeln!(out, "shield pairs: {}", pairs.join(" "))?;
    }
    Ok(())
}

fn cmd_encode(args: &CodecArgs, out: &mut dyn Write) -> CliResult {
    let code = codec_instance(&args.past, args.recc, &args.regular, args.seed)?;
    let payload = parse_bits(&args.data)?;
    let cw = code.encode(&payload)?;
    writeln!(out, "word: {}", cw.word)?;
    writeln!(out, "payload bits: {}", code.info_len())?;
    print_layout(&code, out)?;
    Ok(())
}

fn cmd_decode(args: &CodecArgs, out: &mut dyn Write) -> CliResult {
    let code = codec_instance(&args.past, args.recc, &args.regular, args.seed)?;
    let rx: ErasureWord = args.data.parse()?;
    let fg = FactorGraph::new(code);
    let res = bp_decode(&rx, &fg, &DecoderConfig::default())?;
    writeln!(out, "decoded: {}", res.word)?;
    writeln!(out, "iterations: {}", res.iterations)?;
    match &res.info_bits {
        Some(bits) => writeln!(out, "payload: {}", format_bits(bits))?,
        None if res.residual_erasures > 0 => {
            let left: Vec<usize> = (0..res.word.len()).filter(|&w| res.word.symbols[w].is_none()).collect();
            writeln!(out, "residual erasures: {} at wires {}", res.residual_erasures, one_based(&left))?;
            return Err(Error::Unresolved(res.residual_erasures).into());
        }
        None => {
            // Fully resolved but not a payload word.
            let word = res.word.to_state().expect("no erasures");
            return Err(fg.code().decode(&word).err().unwrap_or(Error::UnusedIndex).into());
        }
    }
    Ok(())
}

/// Random payload of the right length for a code instance (examples and tests).
pub fn random_payload<R: Rng + ?Sized>(code: &JointCode, rng: &mut R) -> Vec<u8> {
    (0..code.info_len()).map(|_| rng.random_range(0..2u8)).collect()
}
