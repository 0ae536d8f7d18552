use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use skck::coeff::Coefficient;
use skck::curves::curve_for_b;
use skck::ideal::involution_stability;
use skck::parser::{parse_presentation, print_expr, print_presentation};
use skck::presentations::{verify, Claim, ClaimOptions, Mode};
use skck::report::{describe_membership, membership_verdict, Step, Verdict, VerificationReport};

const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "skck",
    version,
    about = "Exact checks for Sklyanin / Cuntz-Krieger presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Bound on |left| + |right| for inhomogeneous membership searches.
    #[arg(long, default_value_t = 2)]
    wrapper_len: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one claim at a given b or symbolically.
    Verify {
        /// lemma1, lemma2, lemma4, lemma5, theorem1 or corollary1
        claim: String,
        #[arg(long, conflicts_with = "symbolic", allow_negative_numbers = true)]
        b: Option<i64>,
        #[arg(long)]
        symbolic: bool,
        /// Include membership certificates in the report.
        #[arg(long)]
        certificates: bool,
        /// Include elapsed wall time (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run theorem1, corollary1 and the curve invariants for every b in a range.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Parse a presentation file; optionally check stability under its involution.
    CheckFile {
        file: PathBuf,
        #[arg(long)]
        involution_stability: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn emit(report: &VerificationReport, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
}

fn exit_for(v: Verdict) -> ExitCode {
    ExitCode::from(v.exit_code() as u8)
}

fn cmd_verify(
    claim: &str,
    b: Option<i64>,
    symbolic: bool,
    certificates: bool,
    timing: bool,
    common: &Common,
) -> ExitCode {
    let claim: Claim = match claim.parse() {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let mode = match (b, symbolic) {
        (Some(b), _) => Mode::Concrete(b),
        (None, true) => Mode::Symbolic,
        (None, false) => return input_error("one of --b N or --symbolic is required"),
    };
    let opts = ClaimOptions {
        wrapper_len: common.wrapper_len,
        certificates,
        timing,
    };
    match verify(claim, mode, opts) {
        Ok(r) => {
            emit(&r, common.format);
            exit_for(r.verdict)
        }
        Err(e) => input_error(e),
    }
}

#[derive(Serialize)]
struct SweepRow {
    b: i64,
    theorem1: Verdict,
    corollary1: Verdict,
    lambda: String,
    discriminant: String,
    singular: bool,
    j: Option<String>,
}

#[derive(Serialize)]
struct SweepReport {
    from: i64,
    to: i64,
    wrapper_len: usize,
    verdict: Verdict,
    singular_b: Vec<i64>,
    rows: Vec<SweepRow>,
}

fn sweep_row(b: i64, wrapper_len: usize) -> SweepRow {
    let opts = ClaimOptions {
        wrapper_len,
        ..Default::default()
    };
    let t = verify(Claim::Theorem1, Mode::Concrete(b), opts).expect("b >= 2");
    let c = verify(Claim::Corollary1, Mode::Concrete(b), opts).expect("b >= 2");
    let curve = curve_for_b(b).expect("b >= 2");
    let s = |c: &Coefficient| c.fmt_with(&[]);
    SweepRow {
        b,
        theorem1: t.verdict,
        corollary1: c.verdict,
        lambda: s(&curve.lambda),
        discriminant: s(&curve.discriminant),
        singular: curve.singular,
        j: curve.j_invariant.as_ref().map(s),
    }
}

fn cmd_sweep(from: i64, to: i64, common: &Common) -> ExitCode {
    if from < 2 {
        return input_error(format!("--from must be at least 2, got {from}"));
    }
    if to < from {
        return input_error(format!("empty range {from}..={to}"));
    }
    let rows: Vec<SweepRow> = (from..=to)
        .into_par_iter()
        .map(|b| sweep_row(b, common.wrapper_len))
        .collect();
    let verdict = Verdict::combine(rows.iter().flat_map(|r| [r.theorem1, r.corollary1]));
    let report = SweepReport {
        from,
        to,
        wrapper_len: common.wrapper_len,
        verdict,
        singular_b: rows.iter().filter(|r| r.singular).map(|r| r.b).collect(),
        rows,
    };
    match common.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializes")),
        Format::Text => {
            println!(
                "{:>5}  {:<12} {:<12} {:<10} {:<12} j",
                "b", "theorem1", "corollary1", "lambda", "curve"
            );
            for r in &report.rows {
                println!(
                    "{:>5}  {:<12} {:<12} {:<10} {:<12} {}",
                    r.b,
                    r.theorem1.as_str(),
                    r.corollary1.as_str(),
                    r.lambda,
                    if r.singular { "SINGULAR" } else { "smooth" },
                    r.j.as_deref().unwrap_or("-")
                );
            }
            println!("overall: {}", report.verdict.as_str());
        }
    }
    exit_for(report.verdict)
}

fn cmd_check_file(file: &PathBuf, stability: bool, common: &Common) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", file.display())),
    };
    let p = match parse_presentation(&text) {
        Ok(p) => p,
        Err(e) => return input_error(format!("{}:{e}", file.display())),
    };
    if !stability {
        print!("{}", print_presentation(&p));
        return ExitCode::SUCCESS;
    }
    let a = p.alphabet();
    let rep = involution_stability(&p, common.wrapper_len);
    let steps: Vec<Step> = rep
        .relations
        .iter()
        .map(|r| {
            Step::new(format!("relation {}", r.index + 1), membership_verdict(&r.verdict)).detail(format!(
                "{} -> {} : {}",
                print_expr(&p.relations()[r.index], a),
                print_expr(&r.image, a),
                describe_membership(&r.verdict, a)
            ))
        })
        .collect();
    let verdict = Verdict::combine(steps.iter().map(|s| s.verdict));
    let unstable: Vec<String> = rep.unstable_indices().iter().map(|i| (i + 1).to_string()).collect();
    let summary = match verdict {
        Verdict::Pass => "STABLE".to_string(),
        Verdict::Fail => format!("UNSTABLE: relations {} map outside the ideal", unstable.join(", ")),
        Verdict::Inconclusive => "UNDECIDED at this wrapper length".to_string(),
    };
    let mut steps = steps;
    steps.push(Step::new("involution stability", verdict).detail(summary));
    let report = VerificationReport {
        claim: "involution-stability".into(),
        mode: "file".into(),
        b: None,
        wrapper_len: common.wrapper_len,
        verdict,
        steps,
        curve: None,
        observations: Vec::new(),
        elapsed_ms: None,
    };
    emit(&report, common.format);
    exit_for(verdict)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match &cli.command {
        Command::Verify {
            claim,
            b,
            symbolic,
            certificates,
            timing,
            common,
        } => cmd_verify(claim, *b, *symbolic, *certificates, *timing, common),
        Command::Sweep { from, to, common } => cmd_sweep(*from, *to, common),
        Command::CheckFile {
            file,
            involution_stability,
            common,
        } => cmd_check_file(file, *involution_stability, common),
    }
}
