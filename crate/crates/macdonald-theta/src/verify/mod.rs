//! Named identity checks and deterministic table emission.
//!
//! A [`CheckSpec`] names one entry of the [registry](registry) together with
//! the system, the window of weights, the `q`-cutoff and whatever route,
//! twist or `t` the check needs. [`run_check`] turns it into a
//! [`CheckReport`]; [`run_all`] runs every check supported by a system in a
//! small thread pool and returns the reports ordered by name.
//!
//! ```
//! use macdonald_theta::verify::{run_check, CheckSpec, Status};
//!
//! let spec = CheckSpec::new("orthogonality", "A", 1).unwrap().with_window(0);
//! let report = run_check(&spec).unwrap();
//! assert_eq!(report.status, Status::Pass);
//! assert!(report.max_discrepancy.is_zero());
//! ```

mod registry;
mod tables;
mod tally;

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::char_series::{RationalT, ThetaTwist, TwistSpec};
use crate::error::{Error, Result};
use crate::lattice_weyl::{build_root_system, RootSystem, TypeLabel, Weight};
use crate::qexp::QExp;
use crate::rr_expansion::Route;
use crate::scalar::Rat;

pub use registry::{registry, CheckDef};
pub use tables::{emit_tables, render, TableFormat, TableKind};

/// Environment variable naming the directory for emitted tables and check
/// artifacts.
pub const CACHE_DIR_ENV: &str = "RR_VERIFY_CACHE_DIR";

/// Default directory when [`CACHE_DIR_ENV`] is unset.
pub const DEFAULT_CACHE_DIR: &str = "rr-verify-out";

/// Values of `t^{1/2}` away from the spectral collisions of small windows;
/// the default generic point is drawn from this list by the seed.
pub const SAFE_T: [(i64, i64); 8] = [(5, 7), (2, 3), (3, 5), (4, 7), (7, 11), (5, 9), (8, 13), (3, 8)];

/// The directory named by [`CACHE_DIR_ENV`], or [`DEFAULT_CACHE_DIR`].
pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV).map_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR), PathBuf::from)
}

/// The generic point `t^{1/2}` picked by `seed` from [`SAFE_T`].
pub fn seeded_t(seed: u64) -> Rat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (num, den) = SAFE_T[rng.gen_range(0..SAFE_T.len())];
    Rat::frac(num, den)
}

/// Everything a check or a table needs to know.
#[derive(Clone, Debug, Serialize)]
pub struct CheckSpec {
    pub name: String,
    pub label: TypeLabel,
    pub rank: usize,
    /// Bound on `(b_-, b_-)`; `None` lets each check derive it from `qdeg`.
    /// Negative values give an empty window.
    pub window: Option<i64>,
    /// The cutoff `D`: series are compared up to and including `q^D`.
    pub qdeg: i64,
    pub weight: Option<Weight>,
    pub route: Option<Route>,
    /// Number of theta functions `p`; `None` uses the check's default.
    pub depth: Option<usize>,
    pub switch: Option<usize>,
    /// `trivial`, `sign`, `sign:<k>` or `coset:<r>+…`; `None` lets the check
    /// pick its own set of twists.
    pub twist: Option<String>,
    /// `t^{1/2}` for generic-`t` checks; drawn from [`SAFE_T`] by `seed`
    /// when absent.
    #[serde(serialize_with = "serialize_opt_rat")]
    pub t: Option<Rat>,
    pub seed: u64,
    /// Where artifacts go; `None` emits none.
    #[serde(skip)]
    pub artifacts: Option<PathBuf>,
}

fn serialize_opt_rat<S: serde::Serializer>(v: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

impl CheckSpec {
    /// A spec with the defaults: `qdeg = 6`, seed `0`, everything else
    /// left to the check.
    pub fn new(name: &str, label: &str, rank: usize) -> Result<CheckSpec> {
        Ok(CheckSpec {
            name: name.to_string(),
            label: label.parse()?,
            rank,
            window: None,
            qdeg: 6,
            weight: None,
            route: None,
            depth: None,
            switch: None,
            twist: None,
            t: None,
            seed: 0,
            artifacts: None,
        })
    }

    pub fn with_window(mut self, window: i64) -> CheckSpec {
        self.window = Some(window);
        self
    }

    pub fn with_qdeg(mut self, qdeg: i64) -> CheckSpec {
        self.qdeg = qdeg;
        self
    }

    pub fn with_name(&self, name: &str) -> CheckSpec {
        CheckSpec { name: name.to_string(), ..self.clone() }
    }

    pub fn root_system(&self) -> Result<RootSystem> {
        build_root_system(self.label, self.rank)
    }

    pub fn cutoff(&self) -> QExp {
        QExp::int(self.qdeg)
    }

    /// The window bound: explicit, or `2·qdeg` (all `b` with `b²/2 ≤ qdeg`)
    /// capped at `cap` to keep the default run at desk scale.
    pub fn window_or(&self, cap: i64) -> i64 {
        self.window.unwrap_or((2 * self.qdeg).min(cap))
    }

    /// Weights with `(b_-, b_-) ≤ window`, sorted.
    pub fn weights(&self, rs: &RootSystem, cap: i64) -> Vec<Weight> {
        let bound = self.window_or(cap);
        if bound < 0 {
            return Vec::new();
        }
        rs.weights_in_ball(&Rat::int(bound))
    }

    /// The requested twist, resolved against `rs`.
    pub fn resolved_twist(&self, rs: &RootSystem) -> Result<Option<ThetaTwist>> {
        self.twist.as_deref().map(|s| s.parse::<TwistSpec>()?.resolve(rs)).transpose()
    }

    /// The requested `t`, or the seeded safe point.
    pub fn t_point(&self) -> Result<RationalT> {
        RationalT::uniform(self.t.clone().unwrap_or_else(|| seeded_t(self.seed)))
    }

    fn validate(&self) -> Result<()> {
        if self.qdeg < 0 {
            return Err(Error::Config(format!("qdeg must be nonnegative, got {}", self.qdeg)));
        }
        if let (Some(route), Some(depth)) = (self.route, self.depth) {
            route.validate(depth)?;
        }
        Ok(())
    }
}

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub system: String,
    pub status: Status,
    /// Smallest cutoff at which compared series were known, `"exact"` when
    /// every comparison was between exact objects.
    pub certified_cutoff: String,
    /// Largest `|coefficient|` of any difference; zero iff the check passed.
    pub max_discrepancy: Rat,
    pub comparisons: usize,
    /// Wall time; the only field that differs between reruns.
    pub elapsed_ms: u64,
    pub artifacts: Vec<PathBuf>,
    /// The first failures, or why the check was skipped.
    pub detail: Vec<String>,
}

/// Exit code for a set of reports: `0` when nothing failed, `1` otherwise.
/// Configuration errors (code `2`) never reach a report.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    i32::from(reports.iter().any(|r| r.status == Status::Fail))
}

/// Runs the check named in `spec`.
///
/// Unknown names, unsupported systems and malformed parameters are
/// errors; failed internal cross-checks become a failing report.
pub fn run_check(spec: &CheckSpec) -> Result<CheckReport> {
    spec.validate()?;
    let def = registry::find(&spec.name)?;
    let rs = spec.root_system()?;
    if !(def.supports)(&rs) {
        return Err(Error::Capability(format!("check `{}` does not apply to {}", def.name, rs.name())));
    }
    execute(def, spec, &rs)
}

fn execute(def: &CheckDef, spec: &CheckSpec, rs: &RootSystem) -> Result<CheckReport> {
    let start = Instant::now();
    let mut tally = tally::Tally::default();
    let mut artifacts = Vec::new();
    match (def.run)(spec, rs, &mut tally, &mut artifacts) {
        Ok(()) => {}
        Err(Error::Consistency(msg)) => tally.fail(def.name, msg),
        Err(e) => return Err(e),
    }
    Ok(tally.into_report(def.name, rs.name(), start.elapsed(), artifacts))
}

/// Every registry check on the system of `spec` (its name is ignored),
/// run on up to `threads` workers. Checks that do not apply are reported
/// as skipped; the reports come back sorted by name.
pub fn run_all(spec: &CheckSpec, threads: usize) -> Result<Vec<CheckReport>> {
    spec.validate()?;
    let rs = spec.root_system()?;
    let defs = registry();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Result<CheckReport>)>> = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, defs.len()) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(def) = defs.get(k) else { break };
                let outcome = if (def.supports)(&rs) {
                    execute(def, &spec.with_name(def.name), &rs)
                } else {
                    Ok(skipped(def, &rs))
                };
                results.lock().expect("no worker panicked").push((k, outcome));
            });
        }
    });
    let mut results = results.into_inner().expect("no worker panicked");
    results.sort_by_key(|(k, _)| *k);
    let mut reports = results.into_iter().map(|(_, r)| r).collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(reports)
}

fn skipped(def: &CheckDef, rs: &RootSystem) -> CheckReport {
    CheckReport {
        name: def.name.to_string(),
        system: rs.name(),
        status: Status::Skipped,
        certified_cutoff: "exact".into(),
        max_discrepancy: Rat::zero(),
        comparisons: 0,
        elapsed_ms: 0,
        artifacts: Vec::new(),
        detail: vec![format!("does not apply to {}", rs.name())],
    }
}

/// Writes `bytes` to `dir/name`, creating `dir`.
fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, bytes)?;
    Ok(path)
}
