use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cohom31_core::catalog::{builtin_catalog, find_entry, CatalogEntry, Param, Params, Table};
use cohom31_core::orbit::{cohomogeneity, orbit_dimension, orbit_point_cloud, write_cloud_csv};
use cohom31_core::parse::{parse_generator_file, parse_point, parse_rational};
use cohom31_core::properness::{build_witness, check_witness, decide_properness, quick_verdict, VerdictKind};
use cohom31_core::subalgebra::{closure_check, invariants, match_catalog, Subalgebra};
use cohom31_core::verify::{verify_all, EntryReport, VerifyOptions};
use cohom31_core::Error;

#[derive(Parser)]
#[command(name = "cohom31", version, about = "Verify and explore cohomogeneity one actions on Minkowski 4-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    samples: usize,
    #[arg(long, default_value_t = 1024)]
    steps: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    json: bool,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check every catalog entry (or the selected ones).
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        entry: Vec<String>,
        /// Report elapsed_ms as 0 so equal seeds give identical bytes.
        #[arg(long)]
        no_timings: bool,
    },
    /// Classify the subalgebra spanned by the generators in FILE.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Orbit dimension and causal type through a point.
    Orbit {
        #[arg(long)]
        entry: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Run the non-properness witness of an entry.
    Witness {
        #[arg(long)]
        entry: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Write an orbit point cloud as CSV.
    Export {
        #[arg(long)]
        entry: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { common, entry, no_timings } => cmd_verify(&common, &entry, no_timings),
        Command::Classify { file, common } => cmd_classify(&file, &common),
        Command::Orbit { entry, point, params, common } => cmd_orbit(&entry, &point, &params, &common),
        Command::Witness { entry, params, common } => cmd_witness(&entry, &params, &common),
        Command::Export { entry, point, grid, params, common } => cmd_export(&entry, &point, grid, &params, &common),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn validate(c: &Common) -> Outcome {
    if c.samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    if c.steps < 8 {
        return Err(Failure::Usage("--steps must be at least 8".into()));
    }
    if !(c.tol > 0.0) {
        return Err(Failure::Usage("--tol must be positive".into()));
    }
    Ok(())
}

fn emit(c: &Common, text: &str) -> Outcome {
    match &c.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn options(c: &Common) -> VerifyOptions {
    VerifyOptions { samples: c.samples, witness_steps: c.steps, tol: c.tol, ..VerifyOptions::default() }
}

fn entry_params(entry: &CatalogEntry, args: &ParamArgs) -> Result<Params, Failure> {
    let given = [(Param::Lambda, &args.lambda), (Param::Mu, &args.mu), (Param::A, &args.a), (Param::B, &args.b)];
    if given.iter().all(|(_, v)| v.is_none()) {
        return Ok(entry.default_params());
    }
    let mut ps = Params::default();
    for (p, v) in given {
        if let Some(v) = v {
            if !entry.params.contains(&p) {
                return Err(Failure::Usage(format!("{} has no parameter {}", entry.id, p.name())));
            }
            ps.set(p, parse_rational(v)?);
        }
    }
    if !(entry.admissible)(&ps) {
        return Err(Error::InadmissibleParameters(ps.to_string()).into());
    }
    Ok(ps)
}

fn entry_subalgebra(entry: &CatalogEntry, ps: &Params) -> Result<Subalgebra, Failure> {
    entry.subalgebra(ps).map_err(|e| Failure::Check(format!("{}[{ps}]: {e}", entry.id)))
}

fn cmd_verify(c: &Common, ids: &[String], no_timings: bool) -> Outcome {
    validate(c)?;
    let full = builtin_catalog();
    let selected: Vec<CatalogEntry> = if ids.is_empty() {
        full.clone()
    } else {
        ids.iter().map(|id| find_entry(&full, id).cloned()).collect::<Result<_, _>>()?
    };
    let mut opts = options(c);
    opts.timings = !no_timings;
    let reports = if ids.is_empty() {
        verify_all(&selected, c.seed, &opts)
    } else {
        // Matching still runs against the whole catalog.
        selected
            .iter()
            .map(|e| cohom31_core::verify::verify_entry_in(e, &full, c.seed, &opts))
            .collect()
    };
    let text = if c.json {
        serde_json::to_string_pretty(&reports).expect("report serializes") + "\n"
    } else {
        render_reports(&reports)
    };
    emit(c, &text)?;
    if reports.iter().all(EntryReport::passed) {
        Ok(())
    } else {
        Err(Failure::Check(String::new()))
    }
}

fn render_reports(reports: &[EntryReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        s.push_str(&format!("{status} {} ({} checks, {} ms)\n", r.entry, r.checks.len(), r.elapsed_ms));
        for f in r.failures() {
            s.push_str(&format!("    {}: {}\n", f.name, f.detail));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    s.push_str(&format!("{} entries, {} failed\n", reports.len(), failed));
    s
}

fn cmd_classify(file: &PathBuf, c: &Common) -> Outcome {
    validate(c)?;
    let text = fs::read_to_string(file)?;
    let gens = parse_generator_file(&text)?;
    let h = match closure_check(&gens) {
        Ok(h) => h,
        Err(e @ (Error::NotClosed { .. } | Error::DependentBasis)) => {
            let msg = if c.json {
                serde_json::json!({ "closed": false, "error": e.to_string() }).to_string() + "\n"
            } else {
                format!("closure: FAILED\n  {e}\n")
            };
            emit(c, &msg)?;
            return Err(Failure::Check(String::new()));
        }
        Err(e) => return Err(e.into()),
    };
    let catalog = builtin_catalog();
    let inv = invariants(&h);
    let coh = cohomogeneity(&h, c.seed, c.samples);
    let matches = match_catalog(&h, &catalog);
    let verdict = match matches.as_slice() {
        [m] => {
            let entry = find_entry(&catalog, &m.id)?;
            if entry.table == Table::Excluded {
                quick_verdict(&h)
            } else {
                decide_properness(entry, &m.params, c.seed, (c.steps, c.tol, 100))
            }
        }
        _ => quick_verdict(&h),
    };
    let out = if c.json {
        let ms: Vec<_> = matches
            .iter()
            .map(|m| serde_json::json!({ "id": m.id, "params": m.params, "conjugator": m.conjugator.to_string() }))
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "closed": true,
            "subalgebra": h.to_string(),
            "invariants": inv,
            "cohomogeneity": coh.cohomogeneity,
            "matches": ms,
            "properness": verdict,
        }))
        .expect("serializes")
            + "\n"
    } else {
        let mut s = format!("closure: ok\nsubalgebra: {h}\ninvariants: {inv}\ncohomogeneity: {}\n", coh.cohomogeneity);
        if matches.is_empty() {
            s.push_str("matches: none\n");
        }
        for m in &matches {
            let ps = if m.params.is_empty() { String::new() } else { format!(" [{}]", m.params) };
            let note = if m.id.starts_with("Excluded:") { " (not cohomogeneity one)" } else { "" };
            s.push_str(&format!("match: {}{ps}{note} via translation {}\n", m.id, m.conjugator));
        }
        s.push_str(&format!("properness: {} ({})\n", verdict.kind, verdict.evidence));
        s
    };
    emit(c, &out)
}

fn cmd_orbit(id: &str, point: &str, args: &ParamArgs, c: &Common) -> Outcome {
    let catalog = builtin_catalog();
    let entry = find_entry(&catalog, id)?;
    let ps = entry_params(entry, args)?;
    let p = parse_point(point)?;
    let h = entry_subalgebra(entry, &ps)?;
    let r = orbit_dimension(&h, &p);
    let text = if c.json {
        serde_json::to_string_pretty(&r).expect("serializes") + "\n"
    } else {
        format!("{}: {r}\n", entry.id)
    };
    emit(c, &text)
}

fn cmd_witness(id: &str, args: &ParamArgs, c: &Common) -> Outcome {
    validate(c)?;
    let catalog = builtin_catalog();
    let entry = find_entry(&catalog, id)?;
    let ps = entry_params(entry, args)?;
    let seq = build_witness(entry, &ps).map_err(|e| Failure::Check(e.to_string()))?;
    let check = check_witness(&seq, c.steps, c.tol);
    let kind = if check.is_ok() { VerdictKind::NonProperCertified } else { VerdictKind::Undecided };
    let text = if c.json {
        let detail = match &check {
            Ok(w) => serde_json::to_value(w).expect("serializes"),
            Err(e) => serde_json::Value::String(e.to_string()),
        };
        serde_json::to_string_pretty(&serde_json::json!({
            "entry": entry.id,
            "params": ps,
            "witness": seq.description,
            "verdict": kind,
            "check": detail,
        }))
        .expect("serializes")
            + "\n"
    } else {
        let mut s = format!("{}: {}\n", entry.id, seq.description);
        match &check {
            Ok(w) => s.push_str(&format!(
                "  |g_n| {:.3e} -> {:.3e}, X_n -> {:?}, g_n X_n -> {:?}\n",
                w.linear_norms[0],
                w.linear_norms[w.linear_norms.len() - 1],
                w.limit_x,
                w.limit_gx
            )),
            Err(e) => s.push_str(&format!("  {e}\n")),
        }
        s.push_str(&format!("verdict: {kind}\n"));
        s
    };
    emit(c, &text)?;
    check.map(|_| ()).map_err(|_| Failure::Check(String::new()))
}

fn cmd_export(id: &str, point: &str, grid: usize, args: &ParamArgs, c: &Common) -> Outcome {
    if grid == 0 {
        return Err(Failure::Usage("--grid must be at least 1".into()));
    }
    let catalog = builtin_catalog();
    let entry = find_entry(&catalog, id)?;
    let ps = entry_params(entry, args)?;
    let p = parse_point(point)?;
    let h = entry_subalgebra(entry, &ps)?;
    let rows = orbit_point_cloud(&h, &p, grid);
    let mut buf = Vec::new();
    write_cloud_csv(&rows, &mut buf)?;
    emit(c, &String::from_utf8(buf).expect("csv is ascii"))
}
