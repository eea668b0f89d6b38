//! Deterministic JSON and CSV tables.
//!
//! Every table carries a header recording what produced it (kind, system,
//! cutoff, window, seed, parameters and the crate version) and nothing that
//! changes between runs, so re-emitting a table gives identical bytes.
//! Rows follow the order of the weights (coordinates compared
//! lexicographically); an empty window gives a header-only table.
//!
//! JSON tables are `{"header": {…}, "columns": […], "rows": [[…], …]}` with
//! every cell a string. CSV tables start with one `# key: value` line per
//! header field, then the column names, then the rows.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use super::{write_file, CheckSpec};
use crate::char_series::ThetaTwist;
use crate::epoly::Engine;
use crate::error::{Error, Result};
use crate::lattice_weyl::Weight;
use crate::rr_expansion::{demazure_character_gch, slice_multiplicities, xi_row, Route};

/// What to tabulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    /// `h⁰_b`, `Ē_b`, `E†_b` and `E†*_b` for every `b` in the window.
    Epoly,
    /// The row `a ↦ Ξ^{c,a}` for `c = --weight` (default `0`).
    Xi,
    /// Slice multiplicities of `D_b ⊗ L^{⊗p}` for `b = --weight`.
    Slices,
    /// `gch D_b` for every `b` in the window.
    Demazure,
}

impl TableKind {
    fn columns(self) -> &'static [&'static str] {
        match self {
            TableKind::Epoly => &["weight", "family", "h0", "polynomial"],
            TableKind::Xi => &["source", "target", "min_energy", "value"],
            TableKind::Slices => &["weight", "slice", "multiplicity"],
            TableKind::Demazure => &["weight", "character"],
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Epoly => "epoly",
            TableKind::Xi => "xi",
            TableKind::Slices => "slices",
            TableKind::Demazure => "demazure",
        })
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<TableKind> {
        match s {
            "epoly" => Ok(TableKind::Epoly),
            "xi" => Ok(TableKind::Xi),
            "slices" => Ok(TableKind::Slices),
            "demazure" => Ok(TableKind::Demazure),
            _ => Err(Error::Config(format!("unknown table `{s}`; expected epoly, xi, slices or demazure"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Csv,
}

impl TableFormat {
    pub fn extension(self) -> &'static str {
        match self {
            TableFormat::Json => "json",
            TableFormat::Csv => "csv",
        }
    }
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<TableFormat> {
        match s {
            "json" => Ok(TableFormat::Json),
            "csv" => Ok(TableFormat::Csv),
            _ => Err(Error::Config(format!("unknown format `{s}`; expected json or csv"))),
        }
    }
}

#[derive(Serialize)]
struct Header {
    kind: TableKind,
    system: String,
    cutoff: i64,
    window: i64,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    route: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    twist: Option<String>,
    version: &'static str,
}

struct Table {
    header: Header,
    columns: &'static [&'static str],
    rows: Vec<Vec<String>>,
    /// Distinguishes files of the same kind and system.
    stem: String,
}

/// Coordinates as `l1,l2,…`, the form `--weight` accepts.
fn plain(w: &Weight) -> String {
    w.coords().iter().map(i32::to_string).collect::<Vec<_>>().join(",")
}

fn file_safe(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

fn build(kind: TableKind, spec: &CheckSpec) -> Result<Table> {
    let rs = spec.root_system()?;
    let engine = Engine::new(&rs);
    let cutoff = spec.cutoff();
    let mut header = Header {
        kind,
        system: rs.name(),
        cutoff: spec.qdeg,
        window: spec.window_or(4),
        seed: spec.seed,
        weight: None,
        route: None,
        depth: None,
        twist: None,
        version: env!("CARGO_PKG_VERSION"),
    };
    let weight = spec.weight.clone().unwrap_or_else(|| Weight::zero(rs.rank()));
    let twist = spec.resolved_twist(&rs)?.unwrap_or(ThetaTwist::Trivial);
    let mut rows = Vec::new();
    let stem = match kind {
        TableKind::Epoly => {
            for b in spec.weights(&rs, 4) {
                let h0 = engine.h0_poly(&b)?.to_string();
                for (family, poly) in [
                    ("bar", engine.ebar(&b)?.body.clone()),
                    ("dag", engine.edag(&b)?.body.clone()),
                    ("dag_star", engine.edag_star_exact(&b)?.body.clone()),
                ] {
                    rows.push(vec![plain(&b), family.into(), h0.clone(), poly.to_string()]);
                }
            }
            format!("w{}", header.window)
        }
        TableKind::Demazure => {
            header.window = spec.window_or(6);
            for b in spec.weights(&rs, 6) {
                rows.push(vec![plain(&b), demazure_character_gch(&engine, &b)?.to_string()]);
            }
            format!("w{}", header.window)
        }
        TableKind::Xi => {
            let depth = spec.depth.unwrap_or(1);
            let route = spec.route.unwrap_or(Route::Dag);
            route.validate(depth)?;
            let twists = vec![twist.clone(); depth];
            for (a, x) in xi_row(&engine, &weight, &twists, route, cutoff)? {
                let energy = x.min_energy.map_or_else(String::new, |e| e.to_string());
                rows.push(vec![plain(&weight), plain(&a), energy, x.value.to_string()]);
            }
            header.weight = Some(plain(&weight));
            header.route = Some(route.to_string());
            header.depth = Some(depth);
            header.twist = Some(twist.to_string());
            format!("c{}-{route}-p{depth}-{}", file_safe(&plain(&weight)), file_safe(&twist.to_string()))
        }
        TableKind::Slices => {
            let depth = spec.depth.unwrap_or(1);
            let twists = vec![twist.clone(); depth];
            let table = slice_multiplicities(&engine, &weight, &twists, cutoff)?;
            for (c, mult) in &table.multiplicities {
                rows.push(vec![plain(&weight), plain(c), mult.to_string()]);
            }
            header.weight = Some(plain(&weight));
            header.depth = Some(depth);
            header.twist = Some(twist.to_string());
            format!("b{}-p{depth}-{}", file_safe(&plain(&weight)), file_safe(&twist.to_string()))
        }
    };
    if spec.window.is_some_and(|w| w < 0) {
        rows.clear();
    }
    Ok(Table { header, columns: kind.columns(), rows, stem })
}

/// The bytes of one table.
pub fn render(kind: TableKind, spec: &CheckSpec, format: TableFormat) -> Result<Vec<u8>> {
    let table = build(kind, spec)?;
    encode(&table, format)
}

fn encode(table: &Table, format: TableFormat) -> Result<Vec<u8>> {
    match format {
        TableFormat::Json => {
            let doc = serde_json::json!({ "header": table.header, "columns": table.columns, "rows": table.rows });
            let mut out = serde_json::to_vec_pretty(&doc)?;
            out.push(b'\n');
            Ok(out)
        }
        TableFormat::Csv => {
            let mut out = Vec::new();
            if let serde_json::Value::Object(fields) = serde_json::to_value(&table.header)? {
                for (key, value) in fields {
                    let value = match value {
                        serde_json::Value::String(s) => s,
                        other => other.to_string(),
                    };
                    writeln!(out, "# {key}: {value}")?;
                }
            }
            let mut writer = csv::WriterBuilder::new().flexible(false).from_writer(out);
            writer.write_record(table.columns).map_err(csv_error)?;
            for row in &table.rows {
                writer.write_record(row).map_err(csv_error)?;
            }
            writer.into_inner().map_err(|e| Error::Io(e.into_error()))
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.into())
}

/// Writes the table of `kind` for `spec` to `dir` and returns its path.
///
/// The file name is derived from the kind, the system, the cutoff and the
/// table's parameters, so the same request always lands in the same file.
pub fn emit_tables(kind: TableKind, spec: &CheckSpec, dir: &Path, format: TableFormat) -> Result<Vec<PathBuf>> {
    let table = build(kind, spec)?;
    let bytes = encode(&table, format)?;
    let name = format!("{kind}-{}-q{}-{}.{}", table.header.system, spec.qdeg, table.stem, format.extension());
    Ok(vec![write_file(dir, &name, &bytes)?])
}
