//! Accumulates comparisons into a single discrepancy.

use std::fmt::Display;
use std::path::PathBuf;
use std::time::Duration;

use super::{CheckReport, Status};
use crate::char_series::{CharacterSeries, QSeries};
use crate::qexp::QExp;
use crate::scalar::Rat;

/// How many failure messages a report keeps.
const KEPT_FAILURES: usize = 8;

#[derive(Default)]
pub(crate) struct Tally {
    max: Rat,
    /// Smallest cutoff among the compared series; `None` while all were
    /// exact.
    cutoff: Option<QExp>,
    comparisons: usize,
    failures: Vec<String>,
    failed: bool,
}

impl Tally {
    fn note_cutoff(&mut self, cutoff: Option<QExp>) {
        if let Some(c) = cutoff {
            self.cutoff = Some(self.cutoff.map_or(c, |d| d.min(c)));
        }
    }

    /// Records a cutoff for comparisons made outside the tally.
    pub fn certify(&mut self, cutoff: QExp) {
        self.note_cutoff(Some(cutoff));
    }

    fn record(&mut self, label: impl Display, size: Rat, describe: impl FnOnce() -> String) {
        self.comparisons += 1;
        if !size.is_zero() {
            self.failed = true;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(format!("{label}: {}", describe()));
            }
            if size > self.max {
                self.max = size;
            }
        }
    }

    /// `lhs − rhs` up to the smaller of the two cutoffs.
    pub fn series(&mut self, label: impl Display, lhs: &QSeries, rhs: &QSeries) {
        let diff = lhs - rhs;
        self.note_cutoff(diff.cutoff());
        let size = diff.poly().terms().map(|(_, c)| c.abs()).max().unwrap_or_default();
        self.record(label, size, || format!("{lhs} ≠ {rhs}"));
    }

    pub fn character(&mut self, label: impl Display, lhs: &CharacterSeries, rhs: &CharacterSeries) {
        let mut diff = lhs - rhs;
        if let Some(c) = diff.cutoff() {
            diff = diff.with_cutoff(c);
        }
        self.note_cutoff(diff.cutoff());
        let size = diff.terms().flat_map(|(_, p)| p.terms().map(|(_, c)| c.abs())).max().unwrap_or_default();
        self.record(label, size, || match lhs.first_difference(rhs) {
            Some((w, d)) => format!("differ by {d} at X{w}"),
            None => "differ".into(),
        });
    }

    /// A yes/no comparison; a failure counts as discrepancy `1`.
    pub fn flag(&mut self, label: impl Display, ok: bool, why: impl FnOnce() -> String) {
        self.record(label, if ok { Rat::zero() } else { Rat::one() }, why);
    }

    /// A failure reported by the library's own cross-checks.
    pub fn fail(&mut self, label: impl Display, why: String) {
        self.flag(label, false, || why);
    }

    pub fn into_report(self, name: &str, system: String, elapsed: Duration, artifacts: Vec<PathBuf>) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            system,
            status: if self.failed { Status::Fail } else { Status::Pass },
            certified_cutoff: self.cutoff.map_or_else(|| "exact".to_string(), |c| c.to_string()),
            max_discrepancy: self.max,
            comparisons: self.comparisons,
            elapsed_ms: elapsed.as_millis().try_into().unwrap_or(u64::MAX),
            artifacts,
            detail: self.failures,
        }
    }
}
