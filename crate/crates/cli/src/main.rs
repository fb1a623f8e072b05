use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use smale_core::corpus::{all_families, entry, evaluate, family_from_args, CorpusResult};
use smale_core::fitting::DEFAULT_DEGREE_BOUND;
use smale_core::invariants::{detect_weighted_homogeneous, minors_ideal, wh_crosscap_count};
use smale_core::local::{intersection_multiplicity, jet_codim_oracle, JetError, DEFAULT_N_MAX};
use smale_core::parser::{parse_germ, parse_poly, GermSource};
use smale_core::report::build_report;
use smale_core::{Codim, Germ, Ring};

// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const EXIT_USAGE: u8 = 1;
const EXIT_NOT_ADMISSIBLE: u8 = 2;
const EXIT_ORACLE_BOUND: u8 = 3;

#[derive(Parser)]
#[command(name = "smale", version, about = "Smale invariants of holomorphic germs (C^2,0) -> (C^3,0)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct GermArgs {
    /// Components as "P1, P2, P3" in the variables s, t
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    germ: Option<String>,
    /// A .germ file
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the invariant report of one germ
    Compute {
        #[command(flatten)]
        input: GermArgs,
        /// Also compute the triple-point count T and the invariants depending on it
        #[arg(long)]
        with_fitting: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Largest truncation degree for germs that are not weighted homogeneous
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: u32,
    },
    /// Check built-in germ families against their known invariants
    Corpus {
        /// A, D, E, crosscap or phi
        #[arg(long, required_unless_present = "all")]
        family: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// 6, 7 or 8 for family E
        #[arg(long)]
        which: Option<u32>,
        #[arg(long, conflicts_with = "family")]
        all: bool,
        /// Largest k for the A and phi families under --all
        #[arg(long, default_value_t = 10)]
        max_k: u32,
        #[arg(long)]
        with_fitting: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: u32,
    },
    /// Recompute C by the standard basis, the jet oracle and (if applicable) the closed form
    Verify {
        #[command(flatten)]
        input: GermArgs,
        #[arg(long, default_value = "jet")]
        oracle: Oracle,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Local intersection multiplicity of two plane curves at the origin
    Imult {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Jet,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Compute { input, with_fitting, format, degree_bound } => {
            let germ = read_germ(&input)?;
            let report = build_report(&germ, with_fitting, degree_bound);
            match format {
                Format::Json => outln!("{}", json(&report)),
                Format::Text => out!("{report}"),
            }
            if !report.admissible {
                eprintln!("not admissible: the Jacobian minors ideal has infinite codimension");
                return Ok(EXIT_NOT_ADMISSIBLE);
            }
            Ok(0)
        }
        Command::Corpus { family, k, n, which, all, max_k, with_fitting, format, degree_bound } => {
            let families = if all {
                all_families(max_k)
            } else {
                let name = family.expect("clap requires --family without --all");
                vec![family_from_args(&name, k, n, which).map_err(|e| e.to_string())?]
            };
            let entries = families.into_iter().map(entry).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
            let results: Vec<CorpusResult> = entries.par_iter().map(|e| evaluate(e, with_fitting, degree_bound)).collect();
            match format {
                Format::Json if results.len() == 1 && !all => outln!("{}", json(&results[0])),
                Format::Json => outln!("{}", json(&results)),
                Format::Text => results.iter().for_each(print_corpus_result),
            }
            let failed = results.iter().filter(|r| !r.pass).count();
            if all {
                eprintln!("{} entries, {} failed", results.len(), failed);
            }
            Ok(if failed == 0 { 0 } else { EXIT_USAGE })
        }
        Command::Verify { input, oracle: Oracle::Jet, n_max, format } => {
            let germ = read_germ(&input)?;
            verify(&germ, n_max, format)
        }
        Command::Imult { f, g } => {
            let ring = Ring::source();
            let f = parse_poly(&f, &ring).map_err(|e| format!("--f: {e}"))?;
            let g = parse_poly(&g, &ring).map_err(|e| format!("--g: {e}"))?;
            match intersection_multiplicity(&f, &g).map_err(|e| e.to_string())? {
                Codim::Finite(v) => outln!("{v}"),
                Codim::Infinite => outln!("infinite"),
            }
            Ok(0)
        }
    }
}

fn read_germ(input: &GermArgs) -> Result<Germ, String> {
    let src = match (&input.germ, &input.file) {
        (Some(text), _) => GermSource::from_list(text).map_err(|e| e.to_string())?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            GermSource::from_germ_file(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        (None, None) => return Err("one of --germ or --file is required".into()),
    };
    parse_germ(&src).map_err(|e| e.to_string())
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn print_corpus_result(r: &CorpusResult) {
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    let c = r.report.c.map_or("-".to_string(), |c| c.to_string());
    let omega = r.report.smale.map_or("-".to_string(), |c| c.to_string());
    let emb = r.report.embedding.map_or("-".to_string(), |e| e.in_24z.to_string());
    let mut line = format!("{verdict} {}: C={c} Omega={omega} emb={emb}", r.family);
    if let Some(t) = &r.report.t {
        match t.value {
            Some(v) => line.push_str(&format!(" T={v}")),
            None => line.push_str(&format!(" T={}", t.status)),
        }
    }
    outln!("{line}");
    for c in r.checks.iter().filter(|c| !c.pass) {
        let got = c.got.map_or("none".to_string(), |g| g.to_string());
        outln!("    {}: expected {} got {} ({})", c.name, c.expected, got, c.provenance);
    }
}

#[derive(Serialize)]
struct MethodResult {
    method: &'static str,
    /// `null` for infinite codimension or an exceeded bound.
    value: Option<u64>,
    status: String,
    millis: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    germ: String,
    methods: Vec<MethodResult>,
    agree: bool,
}

fn verify(germ: &Germ, n_max: u32, format: Format) -> Result<u8, String> {
    let ideal = minors_ideal(germ);
    let mut methods = Vec::new();

    let start = Instant::now();
    let sb = ideal.codim();
    methods.push(MethodResult {
        method: "standard basis",
        value: sb.finite(),
        status: sb.to_string(),
        millis: start.elapsed().as_secs_f64() * 1e3,
    });

    let fresh = minors_ideal(germ);
    let start = Instant::now();
    let jet = jet_codim_oracle(&fresh, n_max);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let bound_hit = matches!(jet, Err(JetError::BoundExceeded { .. }));
    methods.push(match &jet {
        Ok(c) => MethodResult { method: "jet oracle", value: c.finite(), status: c.to_string(), millis: elapsed },
        Err(e) => MethodResult { method: "jet oracle", value: None, status: e.to_string(), millis: elapsed },
    });

    if let Some(wh) = detect_weighted_homogeneous(germ) {
        let start = Instant::now();
        let v = wh_crosscap_count(&wh);
        let value = (v.is_integer() && *v.numer() >= 0).then(|| v.to_integer() as u64);
        let status = value.map_or_else(|| format!("non-integral ({v})"), |x| x.to_string());
        methods.push(MethodResult { method: "closed form", value, status, millis: start.elapsed().as_secs_f64() * 1e3 });
    }

    let agree = !bound_hit && methods.iter().all(|m| m.value == methods[0].value) && sb.is_finite();
    let report = VerifyReport { germ: germ.to_list_string(), methods, agree };
    match format {
        Format::Json => outln!("{}", json(&report)),
        Format::Text => {
            outln!("germ: ({})", report.germ);
            for m in &report.methods {
                outln!("{:<15} C = {:<12} ({:.3} ms)", m.method, m.status, m.millis);
            }
            outln!("{}", if report.agree { "all methods agree" } else { "methods disagree or incomplete" });
        }
    }
    Ok(if bound_hit {
        eprintln!("jet oracle bound n_max = {n_max} exceeded; partial results above");
        EXIT_ORACLE_BOUND
    } else if !sb.is_finite() {
        eprintln!("not admissible: the Jacobian minors ideal has infinite codimension");
        EXIT_NOT_ADMISSIBLE
    } else if report.agree {
        0
    } else {
        EXIT_USAGE
    })
}
