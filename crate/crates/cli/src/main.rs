//! `symcube`: conductor, paramodular level, Atkin-Lehner signs and spin
//! Euler factors of the symmetric cube lift of an elliptic curve over Q.
//!
//! Single-curve mode takes the Weierstrass coefficients as one argument;
//! batch mode (`--input`) reads newline-delimited curves or a CSV with a
//! `label,a1,a2,a3,a4,a6` header and writes one envelope per line, in input
//! order, with a status summary on stderr.
//!
//! Exit codes: 0 all analyses ok, 1 usage error, 2 at least one refusal or
//! malformed input.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use rayon::prelude::*;

use symcube::local::RootNumber3;
use symcube::report::{
    analyze, analyze_text, envelope_to_json_string, envelope_to_text, parse_curve, AnalyzeOptions,
    MinimalityPolicy, ReportEnvelope, Status,
};

#[derive(Parser, Debug)]
#[command(
    name = "symcube",
    version,
    about = "Paramodular level data of symmetric cube lifts of rational elliptic curves",
    after_help = "A curve is given by its integer Weierstrass coefficients as \
                  \"[a1,a2,a3,a4,a6]\". Example:\n    symcube \"[0,-1,1,-10,-20]\""
)]
struct Cli {
    /// Curve to analyze, e.g. "[0,-1,1,-10,-20]"
    curve: Option<String>,

    /// Optional label echoed into the output (single-curve mode)
    #[arg(long)]
    label: Option<String>,

    /// Batch input: newline-delimited curves or CSV with header
    /// label,a1,a2,a3,a4,a6 ("-" reads stdin)
    #[arg(long, value_name = "FILE", conflicts_with = "curve")]
    input: Option<PathBuf>,

    /// Replace a non-minimal model by a global minimal one before analysis
    #[arg(long)]
    minimize: bool,

    /// Skip the minimality check and trust the input model (unsafe: every
    /// table reads valuations off the minimal model)
    #[arg(long, conflicts_with = "minimize")]
    assume_minimal: bool,

    /// Supply the local root number w(E/Q_3) to resolve symbolic
    /// Atkin-Lehner signs
    #[arg(long, value_name = "+1|-1", allow_hyphen_values = true)]
    root_number_3: Option<String>,

    /// Emit canonical JSON (one object per line)
    #[arg(long)]
    json: bool,

    /// Emit human-readable text (the default)
    #[arg(long, conflicts_with = "json")]
    text: bool,

    /// Worker threads for batch mode
    #[arg(long, value_name = "N", default_value_t = 1)]
    jobs: usize,
}

fn parse_root_number(s: &str) -> Result<i8, String> {
    match s.trim() {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(format!("--root-number-3 must be +1 or -1, got {other:?}")),
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

enum BatchItem {
    Curve { raw: String, label: Option<String> },
    Malformed { raw: String, label: Option<String>, message: String },
}

/// Splits batch input into items. A CSV header `label,a1,a2,a3,a4,a6`
/// switches to CSV mode; otherwise every nonempty line is one bracketed
/// curve.
fn read_batch(content: &str) -> Result<Vec<BatchItem>, String> {
    let header = content.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let normalized: String = header.split(',').map(|f| f.trim().to_lowercase()).collect::<Vec<_>>().join(",");
    if normalized == "label,a1,a2,a3,a4,a6" {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(content.as_bytes());
        let mut out = Vec::new();
        for record in rdr.records() {
            match record {
                Ok(rec) => {
                    let raw_line = rec.iter().collect::<Vec<_>>().join(",");
                    if rec.len() != 6 {
                        out.push(BatchItem::Malformed {
                            raw: raw_line,
                            label: rec.get(0).map(str::to_string),
                            message: format!("expected 6 CSV fields, got {}", rec.len()),
                        });
                        continue;
                    }
                    let label = match rec.get(0).unwrap_or("") {
                        "" => None,
                        l => Some(l.to_string()),
                    };
                    let coeffs: Vec<&str> = (1..6).map(|i| rec.get(i).unwrap_or("")).collect();
                    out.push(BatchItem::Curve {
                        raw: format!("[{}]", coeffs.join(",")),
                        label,
                    });
                }
                Err(e) => out.push(BatchItem::Malformed {
                    raw: String::new(),
                    label: None,
                    message: format!("CSV error: {e}"),
                }),
            }
        }
        Ok(out)
    } else {
        Ok(content
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| BatchItem::Curve { raw: l.to_string(), label: None })
            .collect())
    }
}

fn run_item(item: &BatchItem, opts: &AnalyzeOptions) -> ReportEnvelope {
    match item {
        BatchItem::Curve { raw, label } => analyze_text(raw, label.clone(), opts),
        BatchItem::Malformed { raw, label, message } => {
            let err = symcube::report::ParseError { offset: 0, message: message.clone() };
            ReportEnvelope::malformed(raw, label.clone(), &err)
        }
    }
}

fn render(env: &ReportEnvelope, opts: &AnalyzeOptions, json: bool) -> String {
    if json {
        envelope_to_json_string(env, opts)
    } else {
        envelope_to_text(env, opts)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };

    let root_number_3 = match &cli.root_number_3 {
        None => RootNumber3::Symbolic,
        Some(s) => match parse_root_number(s) {
            Ok(w) => RootNumber3::Supplied(w),
            Err(msg) => return usage_error(&msg),
        },
    };
    let minimality = if cli.minimize {
        MinimalityPolicy::Minimize
    } else if cli.assume_minimal {
        MinimalityPolicy::AssumeMinimal
    } else {
        MinimalityPolicy::Verify
    };
    let opts = AnalyzeOptions { minimality, root_number_3 };
    if cli.jobs == 0 {
        return usage_error("--jobs must be at least 1");
    }

    match (&cli.curve, &cli.input) {
        (Some(curve_text), None) => {
            let env = match parse_curve(curve_text) {
                Ok(mut spec) => {
                    spec.label = cli.label.clone();
                    analyze(&spec, &opts)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            print!("{}", render(&env, &opts, cli.json));
            if cli.json {
                println!();
            }
            match env.status {
                Status::Ok => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            }
        }
        (None, Some(path)) => {
            let content = if path.as_os_str() == "-" {
                let mut buf = String::new();
                if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                    return usage_error(&format!("cannot read stdin: {e}"));
                }
                buf
            } else {
                match std::fs::read_to_string(path) {
                    Ok(c) => c,
                    Err(e) => return usage_error(&format!("cannot read {}: {e}", path.display())),
                }
            };
            let items = match read_batch(&content) {
                Ok(items) => items,
                Err(msg) => return usage_error(&msg),
            };
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
                Ok(p) => p,
                Err(e) => return usage_error(&format!("cannot build thread pool: {e}")),
            };
            // parallel map preserves input order on collect
            let envelopes: Vec<ReportEnvelope> =
                pool.install(|| items.par_iter().map(|it| run_item(it, &opts)).collect());
            let mut counts: std::collections::BTreeMap<&'static str, usize> =
                std::collections::BTreeMap::new();
            for (i, env) in envelopes.iter().enumerate() {
                *counts.entry(env.status.label()).or_default() += 1;
                let rendered = render(env, &opts, cli.json);
                if cli.json {
                    println!("{rendered}");
                } else {
                    if i > 0 {
                        println!();
                    }
                    print!("{rendered}");
                }
            }
            let total = envelopes.len();
            let summary: Vec<String> =
                counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            eprintln!("summary: total={total} {}", summary.join(" "));
            if envelopes.iter().all(|e| e.status == Status::Ok) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        (None, None) => usage_error("supply a curve argument or --input FILE (see --help)"),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}
