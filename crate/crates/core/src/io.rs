//! Text ingestion and formatted output.
//!
//! Inputs are UTF-8; lines starting with `#` are comments. Pmfs and counts
//! are lists of decimals separated by commas, whitespace or newlines. Joint
//! tables are rectangular CSV. Grid densities are two-column CSV `x,f(x)`.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use crate::conditional::JointPmf;
use crate::continuous::DensitySpec;
use crate::discrete::{ess, table1_alphas, Alpha, EssProfile, Pmf};
use crate::error::{EssError, Result};

/// First probability of each two-point pmf tabulated by [`render_table1`].
pub const TABLE1_FIRST_PROBS: [f64; 6] = [0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

/// Decimal places used for every rendered value.
pub const DECIMALS: usize = 6;

/// What an input is meant to become.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Pmf,
    Counts,
    Joint,
    GridDensity,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File(PathBuf),
    Inline,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Values(Vec<f64>),
    Table(Vec<Vec<f64>>),
}

/// Parsed, not yet validated input.
#[derive(Debug, Clone, PartialEq)]
pub struct InputRecord {
    pub kind: InputKind,
    pub payload: Payload,
    pub source: Source,
}

impl InputRecord {
    /// Reads `arg` as either `@path` (file contents) or an inline literal.
    pub fn load(kind: InputKind, arg: &str) -> Result<Self> {
        let (text, source) = match arg.strip_prefix('@') {
            Some(path) => (read_file(path)?, Source::File(PathBuf::from(path))),
            None => (arg.to_string(), Source::Inline),
        };
        Self::parse(kind, &text, source)
    }

    pub fn parse(kind: InputKind, text: &str, source: Source) -> Result<Self> {
        let payload = match kind {
            InputKind::Pmf | InputKind::Counts => Payload::Values(parse_values(text)?),
            InputKind::Joint => Payload::Table(parse_csv_table(text)?),
            InputKind::GridDensity => {
                let t = parse_csv_table(text)?;
                if t[0].len() != 2 {
                    return Err(EssError::Parse(format!(
                        "grid density needs two columns (x, f), got {}",
                        t[0].len()
                    )));
                }
                Payload::Table(t)
            }
        };
        Ok(InputRecord {
            kind,
            payload,
            source,
        })
    }

    /// Pmf from a `Pmf` or `Counts` record; counts are always normalized.
    pub fn into_pmf(self, normalize: bool) -> Result<Pmf> {
        match (self.kind, self.payload) {
            (InputKind::Pmf, Payload::Values(v)) => Pmf::new(v, normalize),
            (InputKind::Counts, Payload::Values(v)) => Pmf::new(v, true),
            (k, _) => Err(EssError::Parse(format!("{k:?} input is not a pmf"))),
        }
    }

    pub fn into_joint(self) -> Result<JointPmf> {
        match (self.kind, self.payload) {
            (InputKind::Joint, Payload::Table(t)) => JointPmf::from_rows(&t),
            (k, _) => Err(EssError::Parse(format!("{k:?} input is not a joint table"))),
        }
    }

    pub fn into_density(self) -> Result<DensitySpec> {
        match (self.kind, self.payload) {
            (InputKind::GridDensity, Payload::Table(t)) => {
                let (xs, fs) = t.into_iter().map(|r| (r[0], r[1])).unzip();
                DensitySpec::grid(xs, fs)
            }
            (k, _) => Err(EssError::Parse(format!(
                "{k:?} input is not a grid density"
            ))),
        }
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| EssError::Io(format!("{path}: {e}")))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_number(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| EssError::Parse(format!("line {line}: invalid number '{tok}'")))
}

/// Decimal literals separated by commas, whitespace or newlines.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (line, l) in content_lines(text) {
        for tok in l
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            out.push(parse_number(tok, line)?);
        }
    }
    if out.is_empty() {
        return Err(EssError::Parse("no values found".into()));
    }
    Ok(out)
}

/// Rectangular comma-separated table.
pub fn parse_csv_table(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line, l) in content_lines(text) {
        let row = l
            .split(',')
            .map(|t| parse_number(t.trim(), line))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(EssError::Parse(format!(
                    "line {line}: {} columns, expected {}",
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(EssError::Parse("empty table".into()));
    }
    Ok(rows)
}

/// Pmf from text; see [`parse_values`].
pub fn parse_pmf_text(text: &str, normalize: bool) -> Result<Pmf> {
    Pmf::new(parse_values(text)?, normalize)
}

/// Joint pmf from rectangular CSV.
pub fn parse_joint_csv(text: &str) -> Result<JointPmf> {
    JointPmf::from_rows(&parse_csv_table(text)?)
}

/// Grid density from two-column CSV.
pub fn parse_grid_csv(text: &str) -> Result<DensitySpec> {
    InputRecord::parse(InputKind::GridDensity, text, Source::Inline)?.into_density()
}

/// Fixed six-decimal formatting.
pub fn format_value(v: f64) -> String {
    format!("{v:.DECIMALS$}")
}

/// `0.500000,0.500000`; parses back with [`parse_pmf_text`].
pub fn render_pmf(p: &Pmf) -> String {
    p.probs()
        .iter()
        .map(|&v| format_value(v))
        .collect::<Vec<_>>()
        .join(",")
}

fn alpha_label(a: Alpha) -> String {
    match a {
        Alpha::Finite(v) if v.fract() == 0.0 => format!("{v:.1}"),
        Alpha::Finite(v) => format!("{v}"),
        Alpha::One => "1.0".into(),
        Alpha::Inf => "inf".into(),
    }
}

/// Two-column `alpha  ess` table.
pub fn render_profile(p: &Pmf, profile: &EssProfile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "pmf = [{}]", render_pmf(p));
    let _ = writeln!(s, "{:>8}  {:>12}", "alpha", "ess");
    for (a, v) in profile.iter() {
        let _ = writeln!(s, "{:>8}  {:>12}", alpha_label(a), format_value(v));
    }
    s
}

/// Machine-readable profile `{pmf, alphas, ess}`.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileReport<'a> {
    pub pmf: &'a Pmf,
    pub alphas: &'a [Alpha],
    pub ess: &'a [f64],
}

impl<'a> ProfileReport<'a> {
    pub fn new(pmf: &'a Pmf, profile: &'a EssProfile) -> Self {
        ProfileReport {
            pmf,
            alphas: profile.alphas(),
            ess: profile.values(),
        }
    }
}

/// Ess of `[q, 1−q]` for each tabulated `q` (columns) and order (rows).
pub fn table1_values() -> Vec<Vec<f64>> {
    let pmfs: Vec<Pmf> = TABLE1_FIRST_PROBS
        .iter()
        .map(|&q| Pmf::from_parts(vec![q, 1.0 - q]))
        .collect();
    table1_alphas()
        .into_iter()
        .map(|a| pmfs.iter().map(|p| ess(p, a)).collect())
        .collect()
}

/// The 9 × 6 table of two-point Ess values as aligned text.
pub fn render_table1() -> String {
    let mut s = String::new();
    let _ = write!(s, "{:>8}", "alpha");
    for q in TABLE1_FIRST_PROBS {
        let _ = write!(s, "  {:>10}", format!("[{q:.1},{:.1}]", 1.0 - q));
    }
    s.push('\n');
    for (a, row) in table1_alphas().into_iter().zip(table1_values()) {
        let _ = write!(s, "{:>8}", alpha_label(a));
        for v in row {
            let _ = write!(s, "  {:>10}", format_value(v));
        }
        s.push('\n');
    }
    s
}

/// Reads the numeric cells back out of [`render_table1`] output.
pub fn parse_table1(text: &str) -> Result<Vec<Vec<f64>>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            l.split_whitespace()
                .skip(1)
                .map(|t| parse_number(t, i + 2))
                .collect()
        })
        .collect()
}
