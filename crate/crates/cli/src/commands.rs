//! Command bodies. Each returns the process exit code: 0 success, 1 failed
//! verification, 2 invalid input.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use stickforge_core::builder::{build, BuildError, BuildParams};
use stickforge_core::conway::{enumerate, parse, ConwayNotation};
use stickforge_core::geometry::{generic_direction, project};
use stickforge_core::invariants::{
    canonical_diagram, determinant_of_jones, jones, jones_rivals, verify_with_rivals, CompareMode, VerificationReport,
};
use stickforge_core::point::format_rational;

use crate::document::{load_polygon, mode_name, RealizationDocument};
use crate::obj::to_obj;

pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const INVALID: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Obj,
}

fn write_output(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

pub fn build_cmd(
    notation: &str,
    out: Option<&Path>,
    format: Format,
    seed: u64,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8 {
    let n = match parse(notation) {
        Ok(n) => n,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return INVALID;
        }
    };
    let params = BuildParams { seed, ..BuildParams::default() };
    let r = match build(&n, &params) {
        Ok(r) => r,
        Err(e @ BuildError::ConstructionFailed { .. }) => {
            let _ = writeln!(stderr, "error: {e}");
            return FAILED;
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return INVALID;
        }
    };
    let text = match format {
        Format::Json => RealizationDocument::from_realization(&r).to_json(),
        Format::Obj => to_obj(&r.components, &format!("{} with {} sticks", r.notation, r.stick_count)),
    };
    if let Err(e) = write_output(out, &text, stdout) {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return INVALID;
    }
    if r.trace.input != r.notation {
        let _ = writeln!(stderr, "note: {} normalized to {} ({})", r.trace.input, r.notation, r.trace.action);
    }
    if r.report.passed() {
        OK
    } else {
        FAILED
    }
}

pub fn print_report(r: &VerificationReport, out: &mut dyn Write) -> io::Result<()> {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "notation: {}", r.notation)?;
    writeln!(out, "mode: {}", mode_name(r.mode))?;
    writeln!(out, "embedded: {}", yes_no(r.embedding.embedded))?;
    for v in &r.embedding.violations {
        writeln!(out, "  violation: {v}")?;
    }
    writeln!(out, "sticks: {} (expected {})", r.stick_count, r.expected_sticks)?;
    writeln!(out, "components: {} (expected {})", r.component_count, r.expected_components)?;
    if let (Some(d), Some(c)) = (&r.direction, r.projected_crossings) {
        let p = &d.direction;
        writeln!(
            out,
            "projection: along ({}, {}, {}), {c} crossings",
            format_rational(&p.x),
            format_rational(&p.y),
            format_rational(&p.z)
        )?;
    }
    if let Some(j) = &r.jones {
        writeln!(out, "jones: {}", j.render("t", 2))?;
    }
    for t in &r.tie_breaks {
        writeln!(
            out,
            "tie-break: {} shares the Jones polynomial; Alexander polynomial {}",
            t.rival,
            if t.separated { "separates them" } else { "does not separate them" }
        )?;
    }
    if let Some(p) = &r.problem {
        writeln!(out, "problem: {p}")?;
    }
    writeln!(out, "verdict: {}", r.verdict_label())?;
    writeln!(out, "result: {}", if r.passed() { "pass" } else { "fail" })
}

pub fn verify_cmd(
    input: &Path,
    notation: Option<&str>,
    mode: CompareMode,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8 {
    let text = match fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot read {}: {e}", input.display());
            return INVALID;
        }
    };
    let polygon = match load_polygon(&text) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return INVALID;
        }
    };
    let n = match (notation.map(parse), polygon.notation) {
        (Some(Ok(n)), _) => n,
        (Some(Err(e)), _) => {
            let _ = writeln!(stderr, "error: {e}");
            return INVALID;
        }
        (None, Some(n)) => n,
        (None, None) => {
            let _ = writeln!(stderr, "error: bare coordinates need --notation");
            return INVALID;
        }
    };
    let rivals = match jones_rivals(&n) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return INVALID;
        }
    };
    let report = match verify_with_rivals(&polygon.components, &n, mode, 0, &rivals) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return INVALID;
        }
    };
    let _ = print_report(&report, stdout);
    if report.passed() {
        OK
    } else {
        FAILED
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationRow {
    pub notation: String,
    pub fraction: String,
    pub c: u32,
    pub sticks: usize,
    pub verdict: String,
    pub ms: u128,
}

impl EnumerationRow {
    pub fn passed(&self) -> bool {
        matches!(self.verdict.as_str(), "identical" | "mirror")
    }
}

pub fn enumeration_row(n: &ConwayNotation) -> EnumerationRow {
    let start = Instant::now();
    let built = build(n, &BuildParams::default());
    let (sticks, verdict) = match &built {
        Ok(r) if r.report.passed() => (r.stick_count, r.report.verdict_label().to_string()),
        Ok(r) => (r.stick_count, "failed".to_string()),
        Err(_) => (0, "failed".to_string()),
    };
    EnumerationRow {
        notation: n.to_string(),
        fraction: n.fraction().to_string(),
        c: n.crossing_number(),
        sticks,
        verdict,
        ms: start.elapsed().as_millis(),
    }
}

/// Builds every notation on `jobs` threads and hands rows to `sink` in input order.
pub fn enumerate_rows(
    notations: &[ConwayNotation],
    jobs: usize,
    mut sink: impl FnMut(EnumerationRow) -> io::Result<()>,
) -> io::Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| io::Error::other(e.to_string()))?;
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|s| {
        s.spawn(move || {
            pool.install(|| {
                notations.par_iter().enumerate().for_each_with(tx, |tx, (i, n)| {
                    let _ = tx.send((i, enumeration_row(n)));
                })
            })
        });
        let mut pending = BTreeMap::new();
        let mut next = 0;
        let mut result = Ok(());
        for (i, row) in rx {
            pending.insert(i, row);
            while let Some(row) = pending.remove(&next) {
                if result.is_ok() {
                    result = sink(row);
                }
                next += 1;
            }
        }
        result
    })
}

pub fn enumerate_cmd(
    min: u32,
    max: u32,
    report: Option<&Path>,
    jobs: usize,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8 {
    let notations = match enumerate(min, max) {
        Ok(n) => n,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return INVALID;
        }
    };
    let sink: Box<dyn Write> = match report {
        Some(path) => match fs::File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot create {}: {e}", path.display());
                return INVALID;
            }
        },
        None => Box::new(io::stdout()),
    };
    let mut csv = csv::Writer::from_writer(sink);
    let (mut total, mut failed) = (0usize, 0usize);
    let written = enumerate_rows(&notations, jobs, |row| {
        total += 1;
        if !row.passed() {
            failed += 1;
            let _ = writeln!(stderr, "fail: {} ({})", row.notation, row.fraction);
        }
        csv.serialize(&row).map_err(io::Error::other)?;
        csv.flush()
    });
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return INVALID;
    }
    let _ = writeln!(stdout, "{total} types with {min} to {max} crossings, {failed} failed");
    if failed == 0 {
        OK
    } else {
        FAILED
    }
}

pub fn invariant_cmd(
    notation: Option<&str>,
    input: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8 {
    let fail = |stderr: &mut dyn Write, msg: String| {
        let _ = writeln!(stderr, "error: {msg}");
        INVALID
    };
    let (diagram, known) = match (notation, input) {
        (Some(text), None) => match parse(text) {
            Ok(n) => (canonical_diagram(&n), Some(n)),
            Err(e) => return fail(stderr, e.to_string()),
        },
        (None, Some(path)) => {
            let polygon = match fs::read_to_string(path)
                .map_err(|e| e.to_string())
                .and_then(|t| load_polygon(&t).map_err(|e| e.to_string()))
            {
                Ok(p) => p,
                Err(e) => return fail(stderr, e),
            };
            let diagram = generic_direction(&polygon.components, 0)
                .and_then(|d| project(&polygon.components, &d))
                .map_err(|e| e.to_string());
            match diagram {
                Ok(d) => (d, polygon.notation),
                Err(e) => return fail(stderr, e),
            }
        }
        _ => return fail(stderr, "give exactly one of --notation and --in".into()),
    };
    let v = match jones(&diagram) {
        Ok(v) => v,
        Err(e) => return fail(stderr, e.to_string()),
    };
    let _ = writeln!(stdout, "jones: {}", v.render("t", 2));
    let _ = writeln!(stdout, "determinant: {}", determinant_of_jones(&v));
    if let Some(n) = known {
        let _ = writeln!(stdout, "fraction: {}", n.fraction());
    }
    OK
}
