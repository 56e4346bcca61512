//! Results and history files.
//!
//! Both formats are plain CSV prefixed by a `# schema=1` line. Floats are
//! written in Rust's shortest round-trip decimal form, so rewriting a file
//! from parsed values is byte-identical. Results produced by external
//! solvers are accepted as long as they follow the same schema.

use anyhow::{bail, Context, Result};
use fullow_core::history::RunHistory;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub const SCHEMA_LINE: &str = "# schema=1";
pub const RESULTS_HEADER: &str =
    "problem,n,variant,eps_f,solver,seed,budget,evals_used,best_f,f0,history";
pub const HISTORY_HEADER: &str = "eval,best_f";

/// One benchmark run, as serialized into the results CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    pub problem: String,
    pub n: usize,
    pub variant: String,
    pub eps_f: f64,
    pub solver: String,
    pub seed: u64,
    pub budget: u64,
    pub evals_used: u64,
    pub best_f: f64,
    pub f0: f64,
    /// Path of the run's history file, relative to the results CSV.
    pub history: String,
}

impl RunRow {
    fn to_csv_line(&self) -> String {
        let mut s = String::new();
        write!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.problem,
            self.n,
            self.variant,
            self.eps_f,
            self.solver,
            self.seed,
            self.budget,
            self.evals_used,
            self.best_f,
            self.f0,
            self.history
        )
        .unwrap();
        s
    }

    fn from_csv_line(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            bail!("expected 11 fields, got {}: `{line}`", fields.len());
        }
        Ok(Self {
            problem: fields[0].to_string(),
            n: fields[1].parse().context("n")?,
            variant: fields[2].to_string(),
            eps_f: fields[3].parse().context("eps_f")?,
            solver: fields[4].to_string(),
            seed: fields[5].parse().context("seed")?,
            budget: fields[6].parse().context("budget")?,
            evals_used: fields[7].parse().context("evals_used")?,
            best_f: fields[8].parse().context("best_f")?,
            f0: fields[9].parse().context("f0")?,
            history: fields[10].to_string(),
        })
    }
}

/// Writes a results CSV (rows must already be in their final order).
pub fn write_results(path: &Path, rows: &[RunRow]) -> Result<()> {
    let mut out = String::new();
    out.push_str(SCHEMA_LINE);
    out.push('\n');
    out.push_str(RESULTS_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn body_lines(raw: &str, what: &str, header: &str) -> Result<Vec<String>> {
    let mut lines = raw.lines().filter(|l| !l.trim().is_empty()).peekable();
    match lines.peek() {
        Some(first) if first.trim() == SCHEMA_LINE => {
            lines.next();
        }
        _ => bail!("{what}: missing `{SCHEMA_LINE}` line"),
    }
    match lines.next() {
        Some(h) if h.trim() == header => {}
        Some(h) => bail!("{what}: unexpected header `{h}`"),
        None => bail!("{what}: empty file"),
    }
    Ok(lines
        .filter(|l| !l.trim_start().starts_with('#'))
        .map(|l| l.to_string())
        .collect())
}

/// Reads a results CSV.
pub fn read_results(path: &Path) -> Result<Vec<RunRow>> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    body_lines(&raw, &path.display().to_string(), RESULTS_HEADER)?
        .iter()
        .map(|l| RunRow::from_csv_line(l))
        .collect()
}

/// Relative history-file name for a run.
pub fn history_file_name(problem: &str, variant: &str, solver: &str, seed: u64) -> String {
    format!("histories/history_{problem}_{variant}_{solver}_{seed}.csv")
}

/// Writes one run's improving best-so-far trace.
pub fn write_history(path: &Path, history: &RunHistory) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut out = String::new();
    out.push_str(SCHEMA_LINE);
    out.push('\n');
    out.push_str(HISTORY_HEADER);
    out.push('\n');
    for (eval, best) in &history.entries {
        writeln!(out, "{eval},{best}").unwrap();
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Reads a history file back into `(eval_index, best_f)` pairs.
pub fn read_history(path: &Path) -> Result<Vec<(u64, f64)>> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    body_lines(&raw, &path.display().to_string(), HISTORY_HEADER)?
        .iter()
        .map(|l| {
            let (a, b) = l
                .split_once(',')
                .with_context(|| format!("bad history line `{l}`"))?;
            Ok((a.parse()?, b.parse()?))
        })
        .collect()
}

/// Resolves a row's history path relative to its results file.
pub fn history_path(results_path: &Path, row: &RunRow) -> PathBuf {
    results_path
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .join(&row.history)
}
