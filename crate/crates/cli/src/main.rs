//! `brecip`: classify b-reciprocal polynomials, run coefficient-box censuses,
//! list conic points and print the signed cycle type tables.
//!
//! Exit codes: 0 on a determinate result, 1 on usage or domain errors (and on
//! a failed audit), 2 when a classification is `Undetermined`.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use brecip_core::breciprocal::g_from_f;
use brecip_core::census::{run_census, CensusConfig, CHUNK_SIZE};
use brecip_core::conic::{brute_solutions, primitive_points, primitive_solutions};
use brecip_core::galois::{
    classify, frobenius_audit, group_table, proper_subgroups, AuditOutcome, Subgroup,
};
use brecip_core::{BRecipPoly, ClassifyOptions, FamilyKind, IntPoly, Verdict};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "brecip", version, about = "Galois groups of b-reciprocal polynomials")]
struct Cli {
    /// Seed recorded in census reports and checkpoint keys.
    #[arg(long, global = true, default_value_t = brecip_core::intpoly::DEFAULT_SEED)]
    seed: u64,
    /// Census worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Breciprocal,
    Monic,
    Fixedconst,
}

impl From<Kind> for FamilyKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Breciprocal => FamilyKind::BReciprocal,
            Kind::Monic => FamilyKind::BReciprocalMonic,
            Kind::Fixedconst => FamilyKind::FixedConstantTerm,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify one polynomial, given by g or by f.
    Classify(ClassifyArgs),
    /// Enumerate a coefficient box and fit the growth laws.
    Census(CensusArgs),
    /// Primitive points of X^2 - 4bY^2 = Z^2 with max(|X|,|Y|) <= H.
    Conic {
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long)]
        height: u64,
        /// Compare against a brute-force scan.
        #[arg(long)]
        brute_check: bool,
    },
    /// Check Frobenius cycle types against a verdict.
    Audit {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value_t = 50)]
        primes: usize,
        /// Verdict to audit; defaults to the computed one.
        #[arg(long)]
        verdict: Option<String>,
    },
    /// Signed cycle types of the full group and its proper subgroups.
    Tables {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct PolyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
    /// Coefficients of g, comma-separated, lowest degree first.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "f", required_unless_present = "f")]
    g: Option<String>,
    /// Coefficients of f, comma-separated, lowest degree first.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
}

impl PolyArgs {
    fn build(&self) -> Result<BRecipPoly> {
        let g = match (&self.g, &self.f) {
            (Some(g), _) => IntPoly::parse_csv(g)?,
            (None, Some(f)) => g_from_f(self.n, self.b, &IntPoly::parse_csv(f)?)?,
            (None, None) => bail!("one of --g or --f is required"),
        };
        Ok(BRecipPoly::new(self.n, self.b, g)?)
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct BudgetArgs {
    /// Primes tried when certifying that g has group S_n.
    #[arg(long, default_value_t = 200)]
    sn_budget: usize,
    /// Treat an uncertified base group as small instead of undetermined.
    #[arg(long)]
    lenient: bool,
    /// Always factor f, not only when the norm is a square.
    #[arg(long)]
    factor_f: bool,
}

impl BudgetArgs {
    fn options(&self) -> ClassifyOptions {
        ClassifyOptions {
            sn_budget: self.sn_budget,
            strict: !self.lenient,
            full_f_factorization: self.factor_f,
            ..ClassifyOptions::default()
        }
    }
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
    /// Increasing heights, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    heights: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    shards: u64,
    #[arg(long)]
    checkpoint_dir: Option<PathBuf>,
    /// Per-polynomial CSV.
    #[arg(long)]
    detail: Option<PathBuf>,
    #[arg(long)]
    max_instances: Option<u64>,
    /// Stop after this many chunks (for exercising resume).
    #[arg(long, hide = true)]
    stop_after_chunks: Option<u64>,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_verdict(s: &str) -> Result<Verdict> {
    Verdict::ALL
        .into_iter()
        .find(|v| v.to_string().eq_ignore_ascii_case(s))
        .with_context(|| format!("unknown verdict `{s}`"))
}

fn cmd_classify(cli: &Cli, args: &ClassifyArgs) -> Result<ExitCode> {
    let w = args.poly.build()?;
    let c = classify(&w, &args.budget.options());
    let text = match cli.format {
        Format::Json => json(&c),
        Format::Csv => {
            let v = serde_json::to_value(&c)?;
            let obj = v.as_object().expect("struct");
            let keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
            let vals: Vec<String> = obj
                .values()
                .map(|x| match x {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string().replace(',', ";"),
                })
                .collect();
            format!("{}\n{}\n", keys.join(","), vals.join(","))
        }
    };
    emit(cli, &text)?;
    Ok(if c.verdict == Verdict::Undetermined {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_census(cli: &Cli, args: &CensusArgs) -> Result<ExitCode> {
    let mut cfg = CensusConfig::new(args.kind.into(), args.n, args.b, args.heights.clone());
    cfg.shards = args.shards;
    cfg.threads = cli.threads;
    cfg.seed = cli.seed;
    cfg.classify = args.budget.options();
    cfg.checkpoint_dir = args.checkpoint_dir.clone();
    cfg.detail_csv = args.detail.clone();
    cfg.stop_after_chunks = args.stop_after_chunks;
    if let Some(m) = args.max_instances {
        cfg.max_instances = m;
    }
    let start = Instant::now();
    let report = run_census(&cfg)?;
    let elapsed = start.elapsed().as_secs_f64();

    let mut table = String::new();
    let _ = writeln!(
        table,
        "{:>8} {:>12} {:>10} {:>10} {:>10} {:>10} {:>8} {:>8} {:>8}",
        "H", "members", "E", "R", "in_G1", "in_G2", "in_G3", "undet", "degen"
    );
    for r in &report.per_height {
        let _ = writeln!(
            table,
            "{:>8} {:>12} {:>10} {:>10} {:>10} {:>10} {:>8} {:>8} {:>8}",
            r.h,
            r.tally.members,
            r.nonmax.e,
            r.nonmax.r,
            r.tally.in_g1,
            r.tally.in_g2,
            r.tally.in_g3,
            r.nonmax.undetermined,
            r.nonmax.degenerate
        );
    }
    for f in &report.fits {
        let norm: Vec<String> = f.normalized.iter().map(|x| format!("{x:.4}")).collect();
        let _ = writeln!(
            table,
            "fit {:<6} H^{}{}: normalized [{}] band {:.3}",
            f.model,
            f.exponent,
            if f.with_log { " log H" } else { "" },
            norm.join(", "),
            f.band
        );
    }
    for note in &report.fit_notes {
        let _ = writeln!(table, "note: {note}");
    }
    let _ = writeln!(table, "elapsed {elapsed:.2}s, chunk size {CHUNK_SIZE}");

    let body = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => {
            let mut s = String::from("H,family_size,members,E,R,in_G1,in_G2,in_G3,undetermined,degenerate,");
            s.push_str(&Verdict::ALL.map(|v| v.to_string()).join(","));
            s.push('\n');
            for r in &report.per_height {
                let _ = write!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.h,
                    r.family_size,
                    r.tally.members,
                    r.nonmax.e,
                    r.nonmax.r,
                    r.tally.in_g1,
                    r.tally.in_g2,
                    r.tally.in_g3,
                    r.nonmax.undetermined,
                    r.nonmax.degenerate
                );
                for v in Verdict::ALL {
                    let _ = write!(s, ",{}", r.tally.verdicts.get(v));
                }
                s.push('\n');
            }
            s
        }
    };
    // The summary goes to stdout unless stdout carries the report itself.
    if cli.out.is_some() {
        emit(cli, &body)?;
        print!("{table}");
    } else {
        print!("{body}");
        eprint!("{table}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_conic(cli: &Cli, b: i64, height: u64, brute_check: bool) -> Result<ExitCode> {
    let points = primitive_points(b, height);
    if brute_check {
        let fast = primitive_solutions(b, height);
        let brute = brute_solutions(b, height)?;
        if fast != brute {
            let missing = brute.difference(&fast).count();
            let extra = fast.difference(&brute).count();
            bail!("parametrization and brute force differ: {missing} missing, {extra} extra");
        }
        eprintln!(
            "parametrization and brute force agree: {} primitive solutions with height <= {height}",
            fast.len()
        );
    }
    let text = match cli.format {
        Format::Json => json(&points),
        Format::Csv => {
            let mut s = String::from("b,X,Y,Z,s,t\n");
            for p in &points {
                let _ = writeln!(s, "{},{},{},{},{},{}", p.b, p.x, p.y, p.z, p.s, p.t);
            }
            s
        }
    };
    emit(cli, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_audit(cli: &Cli, poly: &PolyArgs, primes: usize, verdict: Option<&str>) -> Result<ExitCode> {
    let w = poly.build()?;
    let verdict = match verdict {
        Some(v) => parse_verdict(v)?,
        None => classify(&w, &ClassifyOptions::default()).verdict,
    };
    let report = frobenius_audit(&w, verdict, primes)?;
    let text = match cli.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("group,result,primes_checked,observed\n");
            let observed: Vec<String> = report.observed.iter().map(|t| t.to_string()).collect();
            let result = match &report.outcome {
                AuditOutcome::Pass => "Pass".to_string(),
                AuditOutcome::Fail { prime, observed } => format!("Fail at {prime}: {observed}"),
            };
            let _ = writeln!(
                s,
                "{},{},{},\"{}\"",
                report.group,
                result,
                report.primes_checked,
                observed.join(" ")
            );
            s
        }
    };
    emit(cli, &text)?;
    if !report.passed() {
        eprintln!("audit failed for verdict {verdict}");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TableOut {
    group: Subgroup,
    order: u64,
    types: Vec<String>,
}

fn cmd_tables(cli: &Cli, n: usize) -> Result<ExitCode> {
    let mut groups = vec![Subgroup::G0];
    groups.extend(proper_subgroups(n));
    let tables = groups
        .into_iter()
        .map(|g| {
            let t = group_table(n, g)?;
            Ok(TableOut {
                group: g,
                order: t.order,
                types: t.types.iter().map(|c| c.to_string()).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let text = match cli.format {
        Format::Json => json(&tables),
        Format::Csv => {
            let mut s = String::from("group,order,type\n");
            for t in &tables {
                for ty in &t.types {
                    let _ = writeln!(s, "{},{},\"{}\"", t.group, t.order, ty);
                }
            }
            s
        }
    };
    emit(cli, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Classify(args) => cmd_classify(cli, args),
        Command::Census(args) => cmd_census(cli, args),
        Command::Conic { b, height, brute_check } => cmd_conic(cli, *b, *height, *brute_check),
        Command::Audit { poly, primes, verdict } => cmd_audit(cli, poly, *primes, verdict.as_deref()),
        Command::Tables { n } => cmd_tables(cli, *n),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is reserved for Undetermined.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
