//! Command-line front end.
//!
//! Text output is line oriented; `--json` prints one JSON document per run,
//! shaped `{"command", "ok", "result"}` or `{"command", "ok", "error"}` (see
//! `schema/cli.schema.json`). Exit codes: 0 success, 1 domain error, 2 usage.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds;
use crate::complement::{self, format_dt, gauss_to_dt};
use crate::families::{self, KishinoUnit, Reflection};
use crate::gauss::{Gap, GaussCode, GaussError};
use crate::prime::{self, Primeness};
use crate::surface::{self, CellComplex};
use crate::tables;

#[derive(Debug, Parser)]
#[command(name = "virtlink", version, about = "Virtual link combinatorics and complement exports")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CodeArg {
    /// Signed Gauss code, or `-` to read standard input.
    pub code: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReflectArg {
    Surface,
    Planar,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ribbon genus of the supporting surface.
    Genus(CodeArg),
    /// Face cycles of the ribbon surface.
    Faces(CodeArg),
    /// Whether the code is classical (genus 0).
    Classical(CodeArg),
    /// Primeness via classical alternating subcodes.
    Prime(CodeArg),
    /// Whether passages alternate along every component.
    Alternating(CodeArg),
    /// Remove kinks.
    Reduce(CodeArg),
    /// Generate a family member.
    #[command(subcommand)]
    Gen(Gen),
    /// Append a half-Kishino unit at a gap.
    Append {
        #[command(flatten)]
        code: CodeArg,
        /// Gap as `INDEX` or `COMPONENT:INDEX`.
        #[arg(long)]
        gap: String,
        #[arg(long)]
        switch_a: bool,
        #[arg(long)]
        switch_b: bool,
        /// Mirror the unit; bare `--reflect` means through the surface.
        #[arg(long, num_args = 0..=1, default_missing_value = "surface")]
        reflect: Option<ReflectArg>,
        /// Cut point of the unit's base word, 0..4.
        #[arg(long, default_value_t = 0)]
        cut: usize,
    },
    /// Turn one crossing of a classical alternating code virtual.
    OneVirtual {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        id: u32,
    },
    /// Volume window and crossing/genus checks.
    Bounds(CodeArg),
    /// Write the complement triangulation.
    ExportTri {
        #[command(flatten)]
        code: CodeArg,
        /// Output file, `-` for standard output.
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Name recorded in the file; defaults to the code.
        #[arg(long)]
        name: Option<String>,
    },
    /// Print the DT code of a classical knot.
    ExportDt(CodeArg),
    /// Check the bundled table.
    VerifyTable {
        #[arg(long)]
        data: Option<PathBuf>,
        /// Write the per-check report as TSV.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Export every table entry plus a manifest.
    ExportBatch {
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Gen {
    Polygonal { n: usize },
    Kishino {
        n: usize,
        /// Comma-separated units, each `[CUT:]FLAGS` with flags from `a`, `b`
        /// (switch), `s`, `p` (reflection), or `0` for none.
        #[arg(long)]
        choices: Option<String>,
    },
    /// Minimal-crossing knot of genus g.
    MinimalCrossing { g: usize },
}

/// A domain failure: message plus an optional caret line under the input.
#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
    span: Option<(String, usize)>,
}

impl Failure {
    fn new(kind: &'static str, e: impl ToString) -> Failure {
        Failure {
            kind,
            message: e.to_string(),
            span: None,
        }
    }
}

/// Text lines plus the JSON result.
struct Output {
    text: String,
    json: Value,
}

fn out(text: impl Into<String>, json: impl Serialize) -> Output {
    Output {
        text: text.into(),
        json: serde_json::to_value(json).expect("serializable"),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Genus(_) => "genus",
        Command::Faces(_) => "faces",
        Command::Classical(_) => "classical",
        Command::Prime(_) => "prime",
        Command::Alternating(_) => "alternating",
        Command::Reduce(_) => "reduce",
        Command::Gen(Gen::Polygonal { .. }) => "gen polygonal",
        Command::Gen(Gen::Kishino { .. }) => "gen kishino",
        Command::Gen(Gen::MinimalCrossing { .. }) => "gen minimal-crossing",
        Command::Append { .. } => "append",
        Command::OneVirtual { .. } => "one-virtual",
        Command::Bounds(_) => "bounds",
        Command::ExportTri { .. } => "export-tri",
        Command::ExportDt(_) => "export-dt",
        Command::VerifyTable { .. } => "verify-table",
        Command::ExportBatch { .. } => "export-batch",
    }
}

/// Run with the given arguments (including the program name) and streams;
/// returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli.command, stdin, stdout) {
        Ok(o) => {
            let r = if cli.json {
                let doc = json!({ "command": name, "ok": true, "result": o.json });
                writeln!(stdout, "{}", serde_json::to_string(&doc).expect("json"))
            } else {
                write!(stdout, "{}", o.text)
            };
            if r.is_err() {
                return 1;
            }
            0
        }
        Err(f) => {
            if cli.json {
                let doc = json!({
                    "command": name,
                    "ok": false,
                    "error": { "kind": f.kind, "message": f.message },
                });
                let _ = writeln!(stdout, "{}", serde_json::to_string(&doc).expect("json"));
            } else {
                let _ = writeln!(stderr, "error: {}", f.message);
                if let Some((input, col)) = &f.span {
                    let _ = writeln!(stderr, "  {input}");
                    let _ = writeln!(stderr, "  {}^", " ".repeat(col.saturating_sub(1)));
                }
            }
            1
        }
    }
}

fn read_code(arg: &CodeArg, stdin: &mut dyn Read) -> Result<GaussCode, Failure> {
    let text = if arg.code == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::new("io", e))?;
        s.lines().next().unwrap_or("").to_string()
    } else {
        arg.code.clone()
    };
    GaussCode::parse(&text).map_err(|e| {
        let span = match &e {
            GaussError::Syntax { column, .. } => Some((text.clone(), *column)),
            _ => None,
        };
        Failure {
            kind: "gauss",
            message: e.to_string(),
            span,
        }
    })
}

fn parse_gap(s: &str) -> Result<Gap, Failure> {
    let bad = || Failure::new("usage", format!("bad gap `{s}`: expected INDEX or COMPONENT:INDEX"));
    let (c, i) = match s.split_once(':') {
        Some((c, i)) => (c.parse().map_err(|_| bad())?, i.parse().map_err(|_| bad())?),
        None => (0, s.parse().map_err(|_| bad())?),
    };
    Ok(Gap::new(c, i))
}

fn parse_unit(tok: &str) -> Result<KishinoUnit, Failure> {
    let bad = || Failure::new("usage", format!("bad unit `{tok}`: expected [CUT:]FLAGS"));
    let (cut, flags) = match tok.split_once(':') {
        Some((c, f)) => (c.parse().map_err(|_| bad())?, f),
        None => (0, tok),
    };
    let mut u = KishinoUnit::new(cut, false, false);
    for ch in flags.chars() {
        match ch {
            'a' => u.switch_a = true,
            'b' => u.switch_b = true,
            's' => u.reflect = Reflection::Surface,
            'p' => u.reflect = Reflection::Planar,
            '0' => {}
            _ => return Err(bad()),
        }
    }
    if u.cut >= 4 {
        return Err(bad());
    }
    Ok(u)
}

fn code_out(code: &GaussCode) -> Output {
    out(format!("{code}\n"), json!({ "code": code.to_string() }))
}

fn domain<E: std::fmt::Display>(kind: &'static str) -> impl Fn(E) -> Failure {
    move |e| Failure::new(kind, e)
}

fn execute(cmd: &Command, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<Output, Failure> {
    let surf = |e: surface::SurfaceError| Failure::new("surface", e);
    let fam = |e: families::FamilyError| Failure::new("families", e);
    match cmd {
        Command::Genus(a) => {
            let code = read_code(a, stdin)?;
            let g = surface::ribbon_genus(&code).map_err(surf)?;
            Ok(out(format!("{g}\n"), json!({ "genus": g })))
        }
        Command::Faces(a) => {
            let code = read_code(a, stdin)?;
            let cx = surface::build_cell_complex(&code).map_err(surf)?;
            let mut text = format!("{}\n", cx.f);
            let mut faces = Vec::new();
            for cycle in &cx.faces {
                let ids: Vec<u32> = cycle
                    .iter()
                    .map(|&h| cx.crossings[CellComplex::vertex(cx.opposite(h))])
                    .collect();
                let line: Vec<String> = ids.iter().map(u32::to_string).collect();
                text.push_str(&format!("{}\t{}\n", ids.len(), line.join(" ")));
                faces.push(ids);
            }
            Ok(out(
                text,
                json!({ "faces": cx.f, "genus": cx.genus, "euler": cx.euler, "corners": faces }),
            ))
        }
        Command::Classical(a) => {
            let code = read_code(a, stdin)?;
            let c = surface::is_classical(&code).map_err(surf)?;
            Ok(out(format!("{c}\n"), json!({ "classical": c })))
        }
        Command::Alternating(a) => {
            let code = read_code(a, stdin)?;
            let c = code.is_alternating();
            Ok(out(format!("{c}\n"), json!({ "alternating": c })))
        }
        Command::Reduce(a) => Ok(code_out(&read_code(a, stdin)?.reduce())),
        Command::Prime(a) => {
            let code = read_code(a, stdin)?;
            let p = prime::primeness(&code);
            let text = match &p {
                Primeness::Prime => "prime (alternating after reduction, no classical alternating subcode)\n".to_string(),
                Primeness::Composite(w) => format!(
                    "composite (witness {} from component {} start {} length {})\n",
                    w.witness_code, w.host_component, w.start, w.len
                ),
                Primeness::NoWitnessInconclusive => {
                    "inconclusive (no classical alternating subcode, code not alternating)\n".to_string()
                }
            };
            Ok(out(text, &p))
        }
        Command::Gen(Gen::Polygonal { n }) => Ok(code_out(&families::polygonal(*n).map_err(fam)?)),
        Command::Gen(Gen::Kishino { n, choices }) => {
            let units = match choices {
                Some(s) => s.split(',').map(parse_unit).collect::<Result<Vec<_>, _>>()?,
                None => families::default_choices(*n),
            };
            Ok(code_out(&families::generalized_kishino(*n, &units).map_err(fam)?))
        }
        Command::Gen(Gen::MinimalCrossing { g }) => {
            Ok(code_out(&families::minimal_crossing_family(*g).map_err(fam)?))
        }
        Command::Append {
            code,
            gap,
            switch_a,
            switch_b,
            reflect,
            cut,
        } => {
            let code = read_code(code, stdin)?;
            let gap = parse_gap(gap)?;
            if *cut >= 4 {
                return Err(Failure::new("usage", format!("cut {cut} out of range 0..4")));
            }
            let unit = KishinoUnit {
                cut: *cut,
                switch_a: *switch_a,
                switch_b: *switch_b,
                reflect: match reflect {
                    None => Reflection::None,
                    Some(ReflectArg::Surface) => Reflection::Surface,
                    Some(ReflectArg::Planar) => Reflection::Planar,
                },
            };
            Ok(code_out(&families::half_kishino_append(&code, gap, unit).map_err(fam)?))
        }
        Command::OneVirtual { code, id } => {
            let code = read_code(code, stdin)?;
            Ok(code_out(&families::one_virtual(&code, *id).map_err(fam)?))
        }
        Command::Bounds(a) => {
            let code = read_code(a, stdin)?;
            let w = bounds::volume_window_for(&code).map_err(domain("bounds"))?;
            let e = bounds::euler_crossing_check(&code).map_err(domain("bounds"))?;
            let miyamoto = bounds::miyamoto_bound(w.genus).ok();
            let mut text = format!(
                "genus {}\ncrossings {}\nwindow {}{}, {}]\neuler c={} g={} f={} holds={}\n",
                w.genus,
                w.crossings,
                if w.lower_is_strict { "(" } else { "[" },
                w.lower,
                w.upper,
                e.c,
                e.g,
                e.f,
                e.holds
            );
            if let Some(m) = miyamoto {
                text.push_str(&format!("miyamoto {m}\n"));
            }
            Ok(out(text, json!({ "window": w, "euler": e, "miyamoto": miyamoto })))
        }
        Command::ExportTri { code, output, name } => {
            let code = read_code(code, stdin)?;
            let name = name.clone().unwrap_or_else(|| code.to_string());
            let t = complement::triangulate_code(&code, &name).map_err(domain("complement"))?;
            let r = t.validate().map_err(domain("complement"))?;
            let summary = json!({
                "file": output,
                "tetrahedra": r.tetrahedra,
                "cusps": r.cusps,
                "doubled": t.doubled,
                "genus": t.genus,
            });
            if output.as_os_str() == "-" {
                stdout
                    .write_all(t.to_text().as_bytes())
                    .map_err(domain("io"))?;
                return Ok(out("", summary));
            }
            std::fs::write(output, t.to_text()).map_err(domain("io"))?;
            Ok(out(
                format!(
                    "wrote {}: {} tetrahedra, {} cusps, doubled {}\n",
                    output.display(),
                    r.tetrahedra,
                    r.cusps,
                    t.doubled
                ),
                summary,
            ))
        }
        Command::ExportDt(a) => {
            let code = read_code(a, stdin)?;
            let dt = gauss_to_dt(&code).map_err(domain("dt"))?;
            Ok(out(format!("{}\n", format_dt(&dt)), json!({ "dt": dt })))
        }
        Command::VerifyTable { data, report } => {
            let table = tables::load_table(data.as_deref()).map_err(domain("table"))?;
            let rep = tables::verify_combinatorial(&table);
            if let Some(p) = report {
                std::fs::write(p, rep.to_tsv()).map_err(domain("io"))?;
            }
            let mut text = format!("{}\n", rep.summary());
            for c in rep.checks.iter().filter(|c| c.status == tables::CheckStatus::Fail) {
                text.push_str(&format!("FAIL {} {}: {}\n", c.entry, c.check, c.detail));
            }
            for c in rep.checks.iter().filter(|c| c.status == tables::CheckStatus::Erratum) {
                text.push_str(&format!("ERRATUM {} {}: {}\n", c.entry, c.check, c.detail));
            }
            let passed = rep.passed();
            let o = out(
                text,
                json!({ "summary": rep.summary(), "passed": passed, "errata": table.errata, "checks": rep.checks }),
            );
            if passed {
                Ok(o)
            } else {
                let _ = stdout.write_all(o.text.as_bytes());
                Err(Failure::new("table", rep.summary()))
            }
        }
        Command::ExportBatch { output, data } => {
            let table = tables::load_table(data.as_deref()).map_err(domain("table"))?;
            let rows = tables::emit_export_batch(&table, output).map_err(domain("io"))?;
            let written = rows.iter().filter(|r| r.error.is_none()).count();
            let mut text = format!(
                "wrote {written} exports and manifest.tsv to {}\n",
                output.display()
            );
            for r in rows.iter().filter(|r| r.error.is_some()) {
                text.push_str(&format!("failed {}: {}\n", r.name, r.error.as_deref().unwrap_or("")));
            }
            Ok(out(text, json!({ "directory": output, "manifest": rows })))
        }
    }
}
