//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when two backends disagree
//! (an internal consistency failure).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::ahat::{ahat_hilbert, ahat_sign_sum, AhatError};
use crate::alpha::{alpha, alpha_abstract_checked, fr_polynomial, AlphaError};
use crate::series::hilbert_series;
use crate::sullivan::{scan, GroupingKey, ScanConfig, ScanError};
use crate::topology::{CompleteIntersection, SpinStatus};

pub const WORKERS_ENV: &str = "ALPHA_CI_WORKERS";

#[derive(Parser, Debug)]
#[command(
    name = "alpha-ci",
    version,
    about = "Alpha invariant, Â-genus and characteristic classes of complete intersections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Target {
    /// Complex dimension
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    /// Multi-degree, comma separated (e.g. 3,3); omit or pass "" for projective space
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    d: String,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alpha invariant in Z2 (n = 1 mod 4)
    Alpha {
        #[command(flatten)]
        target: Target,
        /// Print every backend's value
        #[arg(long)]
        all_backends: bool,
        /// Accept any integer n and degrees (abstract invariant)
        #[arg(long = "abstract")]
        abstract_mode: bool,
    },
    /// Â-genus (n even, spin)
    Ahat {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        all_backends: bool,
    },
    /// Spin condition and square-root twist m
    Spin {
        #[command(flatten)]
        target: Target,
    },
    /// Invariant profile: total degree and normalized even power sums
    Profile {
        #[command(flatten)]
        target: Target,
    },
    /// Euler characteristic
    Euler {
        #[command(flatten)]
        target: Target,
    },
    /// Hilbert series coefficients
    Hilbert {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        order: usize,
    },
    /// The Z2 polynomial f_r(T)
    Fr {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive scan grouping multi-degrees by invariant profile
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_k: usize,
        #[arg(long)]
        max_degree: u64,
        /// Worker threads [default: $ALPHA_CI_WORKERS, else available parallelism]
        #[arg(long)]
        workers: Option<usize>,
        /// Group by total degree only instead of the full profile
        #[arg(long)]
        by_total_degree: bool,
        /// Write the JSON report here
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write a one-row-per-group CSV summary here
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<AlphaError> for Failure {
    fn from(e: AlphaError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<AhatError> for Failure {
    fn from(e: AhatError) -> Self {
        match e {
            AhatError::BackendDisagreement { .. } => Failure::Internal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<ScanError> for Failure {
    fn from(e: ScanError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn parse_degrees(s: &str) -> Result<Vec<i64>, Failure> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            part.trim().parse::<i64>().map_err(|_| Failure::Input(format!("invalid degree {part:?} in --d {s:?}")))
        })
        .collect()
}

fn positive_degrees(s: &str) -> Result<Vec<u64>, Failure> {
    parse_degrees(s)?
        .into_iter()
        .map(|d| {
            if d >= 1 {
                Ok(d as u64)
            } else {
                Err(Failure::Input(format!("degrees must be positive integers, got {d}")))
            }
        })
        .collect()
}

fn variety(t: &Target) -> Result<CompleteIntersection, Failure> {
    CompleteIntersection::new(t.n, parse_degrees(&t.d)?).map_err(|e| Failure::Input(e.to_string()))
}

fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w: &usize| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1))
}

fn emit_json<W: Write>(out: &mut W, value: &serde_json::Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("json values serialize"))
}

fn execute<W: Write>(command: Command, out: &mut W) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Input(format!("output error: {e}"));
    match command {
        Command::Alpha { target, all_backends, abstract_mode } => {
            let report = if abstract_mode {
                alpha_abstract_checked(target.n, &parse_degrees(&target.d)?)?
            } else {
                if target.n < 1 {
                    return Err(Failure::Input(format!(
                        "n must be a positive integer, got {} (use --abstract for other values)",
                        target.n
                    )));
                }
                alpha(target.n, &positive_degrees(&target.d)?)?
            };
            if target.json {
                emit_json(out, &serde_json::to_value(&report).expect("report serializes")).map_err(io)?;
                return Ok(());
            }
            writeln!(out, "alpha = {}", report.value).map_err(io)?;
            match report.twist {
                Some(m) => writeln!(out, "m = {m}").map_err(io)?,
                None => writeln!(out, "m = none (2m odd)").map_err(io)?,
            }
            let names: Vec<String> = report.backends.iter().map(|b| b.backend.to_string()).collect();
            writeln!(out, "backends: {}", names.join(", ")).map_err(io)?;
            if all_backends {
                for b in &report.backends {
                    writeln!(out, "  {}: {}", b.backend, b.value).map_err(io)?;
                }
            }
        }
        Command::Ahat { target, all_backends } => {
            let d = positive_degrees(&target.d)?;
            let a = ahat_sign_sum(target.n, &d)?;
            let b = ahat_hilbert(target.n, &d)?;
            if a.value != b.value {
                return Err(AhatError::BackendDisagreement { sign_sum: a.value, hilbert: b.value }.into());
            }
            if target.json {
                let v = json!({
                    "n": target.n,
                    "degrees": d,
                    "ahat": a.value.to_string(),
                    "backends": [
                        {"backend": "sign-sum", "value": a.value.to_string()},
                        {"backend": "hilbert", "value": b.value.to_string()},
                    ],
                });
                emit_json(out, &v).map_err(io)?;
                return Ok(());
            }
            writeln!(out, "ahat = {}", a.value).map_err(io)?;
            writeln!(out, "backends: sign-sum, hilbert").map_err(io)?;
            if all_backends {
                writeln!(out, "  sign-sum: {}", a.value).map_err(io)?;
                writeln!(out, "  hilbert: {}", b.value).map_err(io)?;
            }
        }
        Command::Spin { target } => {
            let x = variety(&target)?;
            let status = x.is_spin();
            if target.json {
                let v = json!({"variety": x.to_string(), "spin": status.is_spin(), "m": status.twist()});
                emit_json(out, &v).map_err(io)?;
                return Ok(());
            }
            match status {
                SpinStatus::Spin { twist } => writeln!(out, "spin, m = {twist}").map_err(io)?,
                SpinStatus::NotSpin => writeln!(out, "not spin").map_err(io)?,
            }
        }
        Command::Profile { target } => {
            let x = variety(&target)?;
            let p = x.invariant_profile();
            if target.json {
                let v = json!({
                    "variety": x.to_string(),
                    "profile": p.key(),
                    "n": p.n,
                    "d_tot": p.d_tot.to_string(),
                    "normalized_power_sums": p.normalized_power_sums.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "diffeomorphism_invariant": p.is_diffeomorphism_data(),
                });
                emit_json(out, &v).map_err(io)?;
                return Ok(());
            }
            writeln!(out, "profile = {}", p.key()).map_err(io)?;
            if !p.is_diffeomorphism_data() {
                writeln!(out, "note: not a diffeomorphism invariant for n <= 2").map_err(io)?;
            }
        }
        Command::Euler { target } => {
            let x = variety(&target)?;
            let chi = x.euler_characteristic();
            if target.json {
                emit_json(out, &json!({"variety": x.to_string(), "euler": chi.to_string()})).map_err(io)?;
                return Ok(());
            }
            writeln!(out, "euler = {chi}").map_err(io)?;
        }
        Command::Hilbert { target, order } => {
            let x = variety(&target)?;
            let s = hilbert_series(x.n() as i64, x.degrees(), order).map_err(|e| Failure::Input(e.to_string()))?;
            let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
            if target.json {
                emit_json(out, &json!({"variety": x.to_string(), "order": order, "coefficients": coeffs}))
                    .map_err(io)?;
                return Ok(());
            }
            writeln!(out, "{}", coeffs.join(" ")).map_err(io)?;
        }
        Command::Fr { r, json } => {
            let f = fr_polynomial(r);
            if json {
                emit_json(out, &json!({"r": r, "exponents": f.poly.support(), "polynomial": f.to_string()}))
                    .map_err(io)?;
                return Ok(());
            }
            writeln!(out, "f_{r} = {f}").map_err(io)?;
        }
        Command::Scan { n, max_k, max_degree, workers, by_total_degree, json, csv } => {
            let mut config = ScanConfig::new(n, max_k, max_degree, workers.unwrap_or_else(default_workers));
            if by_total_degree {
                config.key = GroupingKey::TotalDegree;
            }
            let report = scan(&config)?;
            if let Some(path) = json {
                let text = report.to_json().map_err(ScanError::from)?;
                std::fs::write(&path, text + "\n").map_err(ScanError::from)?;
            }
            if let Some(path) = csv {
                let file = File::create(&path).map_err(ScanError::from)?;
                report.write_csv(BufWriter::new(file)).map_err(ScanError::from)?;
            }
            writeln!(
                out,
                "scanned {} multi-degrees (n = {}, k <= {}, d <= {}) in {} ms on {} workers",
                report.multidegrees, n, max_k, max_degree, report.timing.elapsed_ms, report.timing.workers
            )
            .map_err(io)?;
            writeln!(out, "groups: {} ({} with more than one member)", report.groups.len(), report.nontrivial_groups())
                .map_err(io)?;
            writeln!(out, "pair checks: {}", report.pair_checks.len()).map_err(io)?;
            writeln!(out, "violations: {}", report.violations.len()).map_err(io)?;
        }
    }
    Ok(())
}

/// Parse `args` (including the program name), run, and return the process exit code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let first = e.to_string();
                    let line = first.lines().next().unwrap_or("invalid arguments").to_string();
                    let _ = writeln!(err, "{line}");
                    1
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("alpha-ci").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn degree_parsing() {
        assert_eq!(parse_degrees("3,3").ok(), Some(vec![3, 3]));
        assert_eq!(parse_degrees(" 2, -5 ,0").ok(), Some(vec![2, -5, 0]));
        assert_eq!(parse_degrees("").ok(), Some(vec![]));
        assert!(parse_degrees("3,x").is_err());
        assert!(positive_degrees("3,0").is_err());
    }

    #[test]
    fn alpha_command() {
        let (code, out, _) = run_capture(&["alpha", "--n", "1", "--d", "2,2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("alpha = 1"));

        let (code, out, _) = run_capture(&["alpha", "--n", "5", "--d", "3,3", "--all-backends"]);
        assert_eq!(code, 0);
        assert!(out.contains("alpha = 0"));
        assert!(out.contains("m = -1"));
        assert!(out.contains("  hilbert: 0"));
        assert!(out.contains("  fr: 0"));
    }

    #[test]
    fn abstract_alpha_accepts_any_integers() {
        let (code, out, _) = run_capture(&["alpha", "--abstract", "--n", "-1", "--d", "3,-5"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(out.lines().next(), Some("alpha = 1"));
        let (code, _, err) = run_capture(&["alpha", "--n", "-1", "--d", "3,5"]);
        assert_eq!(code, 1);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn invalid_input_exit_code() {
        assert_eq!(run_capture(&["alpha", "--n", "3", "--d", "2,2"]).0, 1);
        assert_eq!(run_capture(&["alpha", "--n", "5", "--d", "2,3"]).0, 1);
        assert_eq!(run_capture(&["alpha", "--n", "5", "--d", "2,x"]).0, 1);
        assert_eq!(run_capture(&["alpha", "--n"]).0, 1);
        assert_eq!(run_capture(&["frobnicate"]).0, 1);
        assert_eq!(run_capture(&["ahat", "--n", "3", "--d", "4"]).0, 1);
        assert_eq!(run_capture(&["scan", "--n", "3", "--max-k", "2", "--max-degree", "4"]).0, 1);
    }

    #[test]
    fn other_commands() {
        assert_eq!(run_capture(&["ahat", "--n", "2", "--d", "4"]).1.lines().next(), Some("ahat = 2"));
        let (code, out, _) = run_capture(&["spin", "--n", "2", "--d", "3"]);
        assert_eq!((code, out.trim()), (0, "not spin"));
        assert_eq!(run_capture(&["spin", "--n", "3", "--d", "2,2"]).1.trim(), "spin, m = -1");
        assert_eq!(run_capture(&["euler", "--n", "2", "--d", "4"]).1.trim(), "euler = 24");
        assert_eq!(run_capture(&["hilbert", "--n", "1", "--d", "2,2", "--order", "5"]).1.trim(), "1 4 8 12 16 20");
        assert_eq!(run_capture(&["fr", "--r", "5"]).1.trim(), "f_5 = T^4 + T^2 + 1");
        let out = run_capture(&["profile", "--n", "5", "--d", "3,3"]).1;
        assert_eq!(out.trim(), "profile = 5:9:16,160");
        let out = run_capture(&["profile", "--n", "2", "--d", "4"]).1;
        assert!(out.contains("not a diffeomorphism invariant"));
    }

    #[test]
    fn json_outputs_parse() {
        for args in [
            vec!["alpha", "--n", "5", "--d", "3,3", "--json"],
            vec!["ahat", "--n", "2", "--d", "6", "--json"],
            vec!["spin", "--n", "2", "--d", "4", "--json"],
            vec!["profile", "--n", "5", "--d", "3,3", "--json"],
            vec!["euler", "--n", "2", "--d", "4", "--json"],
            vec!["hilbert", "--n", "2", "--d", "", "--order", "3", "--json"],
            vec!["fr", "--r", "4", "--json"],
        ] {
            let (code, out, err) = run_capture(&args);
            assert_eq!(code, 0, "{args:?}: {err}");
            let v: serde_json::Value = serde_json::from_str(&out).unwrap();
            assert!(v.is_object());
        }
        let v: serde_json::Value =
            serde_json::from_str(&run_capture(&["ahat", "--n", "2", "--d", "6", "--json"]).1).unwrap();
        assert_eq!(v["ahat"], "8");
    }
}
