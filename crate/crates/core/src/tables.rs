//! The bundled table of virtual knots through four classical crossings,
//! its combinatorial verification and the export batch for the volume check.
//!
//! Data rows are `name crossings gauss_code genus volume group`, tab
//! separated. Lines starting with `#` are comments; `#! erratum <name> <text>`
//! comments mark printed values that disagree with the rest of their group.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::bounds;
use crate::complement::{self, format_dt, gauss_to_dt};
use crate::gauss::GaussCode;
use crate::surface;

pub const BUNDLED: &str = include_str!("../data/green_table.tsv");
pub const HEADER: &str = "name\tcrossings\tgauss_code\tgenus\tvolume\tgroup";
pub const ENTRY_COUNT: usize = 116;
pub const DATA_ENV: &str = "VIRTLINK_DATA";

/// Volumes printed as an integer multiple of another entry's volume.
pub const MULTIPLES: &[(&str, &str, u32)] = &[
    ("4.12", "2.1", 2),
    ("4.53", "2.1", 2),
    ("4.73", "2.1", 2),
    ("4.75", "2.1", 2),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "digits", rename_all = "snake_case")]
pub enum Volume {
    /// The decimal string as printed.
    Value(String),
    NonHyperbolic,
}

impl Volume {
    pub fn value(&self) -> Option<f64> {
        match self {
            Volume::Value(s) => s.parse().ok(),
            Volume::NonHyperbolic => None,
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            Volume::Value(s) => s,
            Volume::NonHyperbolic => "NH",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub name: String,
    pub crossings: usize,
    pub code_text: String,
    #[serde(skip)]
    pub code: GaussCode,
    pub min_genus: usize,
    pub volume: Volume,
    pub volume_group: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub name: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub entries: Vec<TableEntry>,
    pub errata: Vec<Erratum>,
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("row {row}: {msg}")]
    Row { row: usize, msg: String },
    #[error("expected {expected} entries, found {found}")]
    Count { expected: usize, found: usize },
}

fn row_err(row: usize, msg: impl Into<String>) -> TableError {
    TableError::Row {
        row,
        msg: msg.into(),
    }
}

/// Count of significant digits in a decimal string.
fn significant_digits(s: &str) -> usize {
    s.chars()
        .filter(|c| c.is_ascii_digit())
        .skip_while(|&c| c == '0')
        .count()
}

/// Parse table text; `row` numbers count every line from 1.
pub fn parse_table(text: &str) -> Result<Table, TableError> {
    let mut entries: Vec<TableEntry> = Vec::new();
    let mut errata = Vec::new();
    let mut header_seen = false;
    for (i, line) in text.lines().enumerate() {
        let row = i + 1;
        if let Some(rest) = line.strip_prefix("#! erratum ") {
            let (name, note) = rest
                .split_once(' ')
                .ok_or_else(|| row_err(row, "erratum needs a name and a note"))?;
            errata.push(Erratum {
                name: name.to_string(),
                note: note.to_string(),
            });
            continue;
        }
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if !header_seen {
            if line != HEADER {
                return Err(row_err(row, format!("expected header `{HEADER}`")));
            }
            header_seen = true;
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 6 {
            return Err(row_err(row, format!("expected 6 fields, found {}", f.len())));
        }
        let crossings: usize = f[1]
            .parse()
            .map_err(|_| row_err(row, "crossings is not an integer"))?;
        let code = GaussCode::parse(f[2]).map_err(|e| row_err(row, format!("gauss_code: {e}")))?;
        if code.crossing_count() != crossings {
            return Err(row_err(
                row,
                format!("code has {} crossings, row says {crossings}", code.crossing_count()),
            ));
        }
        let min_genus: usize = f[3]
            .parse()
            .map_err(|_| row_err(row, "genus is not an integer"))?;
        let g = surface::ribbon_genus(&code).map_err(|e| row_err(row, e.to_string()))?;
        if g < min_genus {
            return Err(row_err(row, format!("ribbon genus {g} below table genus {min_genus}")));
        }
        if code.reduce().is_alternating() && g != min_genus {
            return Err(row_err(
                row,
                format!("alternating code has ribbon genus {g}, table genus {min_genus}"),
            ));
        }
        let volume = match f[4] {
            "NH" => Volume::NonHyperbolic,
            v if v.parse::<f64>().is_ok() && !v.contains(['e', 'E']) => {
                if significant_digits(v) < 10 {
                    return Err(row_err(row, format!("volume {v} has fewer than 10 digits")));
                }
                Volume::Value(v.to_string())
            }
            v => return Err(row_err(row, format!("bad volume `{v}`"))),
        };
        let volume_group = if f[5].is_empty() {
            Vec::new()
        } else {
            f[5].split(',').map(str::to_string).collect()
        };
        if entries.iter().any(|e| e.name == f[0]) {
            return Err(row_err(row, format!("duplicate name {}", f[0])));
        }
        entries.push(TableEntry {
            name: f[0].to_string(),
            crossings,
            code_text: f[2].to_string(),
            code,
            min_genus,
            volume,
            volume_group,
        });
    }
    if !header_seen {
        return Err(row_err(0, "missing header"));
    }
    if entries.len() != ENTRY_COUNT {
        return Err(TableError::Count {
            expected: ENTRY_COUNT,
            found: entries.len(),
        });
    }
    Ok(Table { entries, errata })
}

/// The table path from `VIRTLINK_DATA`, if set.
pub fn data_override() -> Option<PathBuf> {
    std::env::var_os(DATA_ENV).map(PathBuf::from)
}

/// Load from `path`, else from `VIRTLINK_DATA`, else the bundled copy.
pub fn load_table(path: Option<&Path>) -> Result<Table, TableError> {
    let path = path.map(Path::to_path_buf).or_else(data_override);
    match path {
        Some(p) => {
            let text = fs::read_to_string(&p).map_err(|source| TableError::Io { path: p, source })?;
            parse_table(&text)
        }
        None => parse_table(BUNDLED),
    }
}

pub fn bundled_table() -> Table {
    parse_table(BUNDLED).expect("bundled table is valid")
}

impl Table {
    pub fn get(&self, name: &str) -> Option<&TableEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn erratum(&self, name: &str) -> Option<&Erratum> {
        self.errata.iter().find(|e| e.name == name)
    }
}

/// Whether two printed decimals agree to the precision of the shorter one.
pub fn equal_to_printed_digits(a: &str, b: &str) -> bool {
    let places = |s: &str| s.split_once('.').map_or(0, |(_, f)| f.len());
    let (short, long) = if places(a) <= places(b) { (a, b) } else { (b, a) };
    let p = places(short);
    match (short.parse::<f64>(), long.parse::<f64>()) {
        (Ok(_), Ok(y)) => format!("{y:.p$}") == short,
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A failure explained by an erratum comment in the data.
    Erratum,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub entry: String,
    pub check: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub entries: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(CheckStatus::Fail) == 0
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            let errata = self.count(CheckStatus::Erratum);
            let tail = if errata > 0 {
                format!(" ({errata} comparisons explained by errata)")
            } else {
                String::new()
            };
            format!("{} entries, all combinatorial checks passed{tail}", self.entries)
        } else {
            format!(
                "{} entries, {} of {} checks failed",
                self.entries,
                self.count(CheckStatus::Fail),
                self.checks.len()
            )
        }
    }

    /// Tab-separated report: `entry check status detail`.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("entry\tcheck\tstatus\tdetail\n");
        for c in &self.checks {
            let status = serde_json::to_value(c.status).expect("unit enum");
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                c.entry,
                c.check,
                status.as_str().unwrap_or_default(),
                c.detail
            ));
        }
        s
    }
}

pub fn verify_combinatorial(table: &Table) -> VerifyReport {
    let by_name: HashMap<&str, &TableEntry> =
        table.entries.iter().map(|e| (e.name.as_str(), e)).collect();
    let mut checks = Vec::new();
    // A failed group comparison is an erratum when either side carries a note.
    let noted = |a: &str, b: &str| table.erratum(a).is_some() || table.erratum(b).is_some();
    let mut push = |e: &TableEntry, check: &'static str, ok: Option<bool>, excused: bool, detail: String| {
        let status = match ok {
            None => CheckStatus::Skipped,
            Some(true) => CheckStatus::Pass,
            Some(false) if excused => CheckStatus::Erratum,
            Some(false) => CheckStatus::Fail,
        };
        checks.push(Check {
            entry: e.name.clone(),
            check,
            status,
            detail,
        });
    };
    for e in &table.entries {
        let g = surface::ribbon_genus(&e.code).unwrap_or(usize::MAX);
        let alt = e.code.reduce().is_alternating();
        let ok = g >= e.min_genus && (!alt || g == e.min_genus);
        push(e, "genus", Some(ok), false, format!("ribbon {g}, table {}, alternating {alt}", e.min_genus));

        match bounds::euler_crossing_check(&e.code) {
            Ok(r) => push(e, "crossing_genus", Some(r.holds), false, format!("c={} g={} f={}", r.c, r.g, r.f)),
            Err(err) => push(e, "crossing_genus", Some(false), false, err.to_string()),
        }
        let c_ok = e.crossings + 1 >= 2 * e.min_genus;
        push(e, "table_crossing_genus", Some(c_ok), false, format!("c={} g={}", e.crossings, e.min_genus));

        match e.volume.value() {
            Some(v) => {
                let w = bounds::volume_window(e.min_genus, e.crossings);
                push(
                    e,
                    "window",
                    Some(w.contains(v)),
                    false,
                    format!("{} in ({}, {}]", e.volume.as_str(), w.lower, w.upper),
                );
            }
            None => push(e, "window", None, false, "not hyperbolic".into()),
        }

        for other in &e.volume_group {
            let Some(o) = by_name.get(other.as_str()) else {
                push(e, "group", Some(false), false, format!("unknown member {other}"));
                continue;
            };
            let same = equal_to_printed_digits(e.volume.as_str(), o.volume.as_str());
            push(
                e,
                "group",
                Some(same),
                noted(&e.name, other),
                format!("{} vs {other} {}", e.volume.as_str(), o.volume.as_str()),
            );
            let back = o.volume_group.iter().any(|n| *n == e.name);
            push(e, "group_symmetric", Some(back), noted(&e.name, other), format!("{other} lists {}: {back}", e.name));
        }
    }
    for &(name, base, k) in MULTIPLES {
        let (Some(e), Some(b)) = (by_name.get(name), by_name.get(base)) else {
            continue;
        };
        let ok = match (e.volume.value(), b.volume.value()) {
            (Some(_), Some(bv)) => equal_to_printed_digits(e.volume.as_str(), &format!("{:.15}", bv * k as f64)),
            _ => false,
        };
        push(e, "multiple", Some(ok), false, format!("{} = {k} x {base} {}", e.volume.as_str(), b.volume.as_str()));
    }
    VerifyReport {
        entries: table.entries.len(),
        checks,
    }
}

/// One manifest row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifestRow {
    pub name: String,
    /// File name inside the batch directory, or `-` when construction failed.
    pub file: String,
    pub expected_volume: String,
    pub doubled: bool,
    pub genus: usize,
    /// Construction error, if any.
    pub error: Option<String>,
}

pub const MANIFEST_HEADER: &str = "name\tfile\texpected_volume\tdoubled\tgenus";

/// Manifest text; failed rows carry `-` for the file and a trailing
/// `# error` comment line.
pub fn manifest_text(rows: &[ManifestRow]) -> String {
    let mut s = format!("{MANIFEST_HEADER}\n");
    for r in rows {
        if let Some(err) = &r.error {
            s.push_str(&format!("# {}: {err}\n", r.name));
        }
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.name, r.file, r.expected_volume, r.doubled, r.genus
        ));
    }
    s
}

/// Build the export of one entry: triangulation text for genus >= 1, the DT
/// line for classical entries.
pub fn export_entry(e: &TableEntry) -> Result<(String, String, bool), String> {
    if e.min_genus == 0 {
        let dt = gauss_to_dt(&e.code).map_err(|err| err.to_string())?;
        return Ok((format!("{}.dt", e.name), format!("{}\n", format_dt(&dt)), false));
    }
    let t = complement::triangulate_code(&e.code, &e.name).map_err(|err| err.to_string())?;
    Ok((format!("{}.tri", e.name), t.to_text(), t.doubled))
}

/// Write every entry's export into `dir` plus `manifest.tsv`. Construction
/// errors are recorded in the manifest; only I/O errors abort.
pub fn emit_export_batch(table: &Table, dir: &Path) -> io::Result<Vec<ManifestRow>> {
    fs::create_dir_all(dir)?;
    let mut rows = Vec::new();
    for e in &table.entries {
        let row = match export_entry(e) {
            Ok((file, text, doubled)) => {
                fs::write(dir.join(&file), text)?;
                ManifestRow {
                    name: e.name.clone(),
                    file,
                    expected_volume: e.volume.as_str().to_string(),
                    doubled,
                    genus: e.min_genus,
                    error: None,
                }
            }
            Err(err) => ManifestRow {
                name: e.name.clone(),
                file: "-".into(),
                expected_volume: e.volume.as_str().to_string(),
                doubled: e.min_genus >= 2,
                genus: e.min_genus,
                error: Some(err),
            },
        };
        rows.push(row);
    }
    fs::write(dir.join("manifest.tsv"), manifest_text(&rows))?;
    Ok(rows)
}

/// Genus histogram of the table.
pub fn genus_histogram(table: &Table) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for e in &table.entries {
        *h.entry(e.min_genus).or_default() += 1;
    }
    h
}
