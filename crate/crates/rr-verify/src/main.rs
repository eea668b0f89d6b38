//! `rr-verify`: run the identity checks of `macdonald-theta` and emit
//! deterministic tables.
//!
//! Exit status is `0` when every requested check passed, `1` when one
//! failed and `2` for configuration errors (bad flags, unknown checks,
//! unsupported systems).

use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use macdonald_theta::lattice_weyl::Weight;
use macdonald_theta::rr_expansion::Route;
use macdonald_theta::verify::{
    cache_dir, emit_tables, exit_code, registry, run_all, run_check, CheckReport, CheckSpec, TableFormat, TableKind,
    CACHE_DIR_ENV,
};
use macdonald_theta::{Error, Rat};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "rr-verify", version, about = "Exact identity checks for nonsymmetric Macdonald polynomials at t → 0, ∞")]
#[command(group(ArgGroup::new("action").required(true).args(["check", "all", "emit", "list"])))]
struct Cli {
    /// Run one registry check.
    #[arg(long, value_name = "NAME")]
    check: Option<String>,

    /// Run every registry check on the system.
    #[arg(long)]
    all: bool,

    /// Write a table (epoly, xi, slices, demazure) to the cache directory.
    #[arg(long, value_name = "KIND")]
    emit: Option<String>,

    /// List the registry.
    #[arg(long)]
    list: bool,

    /// System as one token, e.g. `A2` or `G2`; overrides --type/--rank.
    #[arg(long, value_name = "S")]
    system: Option<String>,

    /// Cartan–Killing type.
    #[arg(long = "type", value_name = "L", default_value = "A")]
    label: String,

    #[arg(long, default_value_t = 1)]
    rank: usize,

    /// Series are compared up to and including q^QDEG.
    #[arg(long, default_value_t = 6)]
    qdeg: i64,

    /// Bound on (b_-, b_-); derived from --qdeg when absent. For generic-t
    /// it bounds the height instead.
    #[arg(long, allow_negative_numbers = true)]
    window: Option<i64>,

    /// A weight `l1,l2,…` in fundamental-weight coordinates.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,

    /// dag, bar, mixed, mixed-<r> or mixed-literal-<r>.
    #[arg(long)]
    route: Option<String>,

    /// Number of theta functions.
    #[arg(long)]
    depth: Option<usize>,

    /// Where a mixed route switches; overrides the one in --route.
    #[arg(long)]
    switch: Option<usize>,

    /// trivial, sign, sign:<k> or coset:<r>+<r>…
    #[arg(long)]
    twist: Option<String>,

    /// The generic point t^{1/2} = num/den.
    #[arg(long, value_name = "NUM/DEN")]
    t: Option<String>,

    /// Picks the generic point when --t is absent.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_enum, default_value_t = Output::Json)]
    out: Output,

    /// Also write each check's tables to the cache directory.
    #[arg(long)]
    artifacts: bool,

    /// Worker threads for --all; defaults to the available parallelism.
    #[arg(long)]
    threads: Option<usize>,
}

fn split_system(s: &str) -> Result<(String, usize), Error> {
    let at = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::Config(format!("system `{s}` has no rank")))?;
    let (label, rank) = s.split_at(at);
    let rank = rank.parse().map_err(|_| Error::Config(format!("bad rank in system `{s}`")))?;
    Ok((label.to_string(), rank))
}

fn spec_from(cli: &Cli) -> Result<CheckSpec, Error> {
    let (label, rank) = match &cli.system {
        Some(s) => split_system(s)?,
        None => (cli.label.clone(), cli.rank),
    };
    let mut spec = CheckSpec::new(cli.check.as_deref().unwrap_or(""), &label, rank)?.with_qdeg(cli.qdeg);
    spec.window = cli.window;
    spec.weight = cli.weight.as_deref().map(str::parse::<Weight>).transpose()?;
    spec.route = cli.route.as_deref().map(str::parse::<Route>).transpose()?;
    if let Some(switch) = cli.switch {
        spec.switch = Some(switch);
        spec.route = match spec.route {
            Some(Route::MixedLiteral { .. }) => Some(Route::MixedLiteral { switch }),
            Some(Route::Mixed { .. }) | None => Some(Route::Mixed { switch }),
            Some(other) => return Err(Error::Config(format!("--switch does not apply to route {other}"))),
        };
    }
    spec.depth = cli.depth;
    spec.twist = cli.twist.clone();
    spec.t = cli
        .t
        .as_deref()
        .map(|t| t.parse::<Rat>().map_err(|e| Error::Config(format!("bad --t `{t}`: {e}"))))
        .transpose()?;
    spec.seed = cli.seed;
    if cli.artifacts {
        spec.artifacts = Some(cache_dir());
    }
    if let Some(weight) = &spec.weight {
        if weight.rank() != rank {
            return Err(Error::Config(format!("weight {weight} does not have rank {rank}")));
        }
    }
    Ok(spec)
}

fn write_reports(reports: &[CheckReport], out: Output) -> Result<(), Error> {
    let stdout = std::io::stdout();
    let mut handle = stdout.lock();
    match out {
        Output::Json => {
            serde_json::to_writer_pretty(&mut handle, reports)?;
            writeln!(handle)?;
        }
        Output::Csv => {
            let mut writer = csv::Writer::from_writer(handle);
            let header = ["name", "system", "status", "certified_cutoff", "max_discrepancy", "comparisons", "elapsed_ms", "detail"];
            writer.write_record(header).map_err(csv_error)?;
            for r in reports {
                let status = serde_json::to_value(r.status)?.as_str().unwrap_or_default().to_string();
                writer
                    .write_record([
                        r.name.clone(),
                        r.system.clone(),
                        status,
                        r.certified_cutoff.clone(),
                        r.max_discrepancy.to_string(),
                        r.comparisons.to_string(),
                        r.elapsed_ms.to_string(),
                        r.detail.join("; "),
                    ])
                    .map_err(csv_error)?;
            }
            writer.flush()?;
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.into())
}

fn run(cli: &Cli) -> Result<i32, Error> {
    if cli.list {
        for def in registry() {
            println!("{:<20} {}", def.name, def.summary);
        }
        return Ok(0);
    }
    let spec = spec_from(cli)?;
    if let Some(kind) = &cli.emit {
        let kind: TableKind = kind.parse()?;
        let format = match cli.out {
            Output::Json => TableFormat::Json,
            Output::Csv => TableFormat::Csv,
        };
        for path in emit_tables(kind, &spec, &cache_dir(), format)? {
            println!("{}", path.display());
        }
        return Ok(0);
    }
    let reports = if cli.all {
        let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        run_all(&spec, threads)?
    } else {
        vec![run_check(&spec)?]
    };
    write_reports(&reports, cli.out)?;
    Ok(exit_code(&reports))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("rr-verify: {e}");
            if matches!(e, Error::Io(_)) {
                eprintln!("(tables go to ${CACHE_DIR_ENV}, currently {})", cache_dir().display());
            }
            ExitCode::from(2)
        }
    }
}
