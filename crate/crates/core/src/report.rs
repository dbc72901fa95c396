//! Rendering of (E, j)-diagrams and spectra as CSV, JSON, LaTeX or text, and
//! parsing of the CSV and LaTeX matrices back into diagrams.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::branching::EJDiagram;
use crate::characters::SpectrumTable;
use crate::Energy;

/// Energies as `"3/2"` or `"5"`.
pub mod energy_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::Energy;

    pub fn serialize<S: Serializer>(e: &Energy, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(e)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Energy, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(|_| D::Error::custom(format!("bad energy {text:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("unknown format {0:?} (expected csv, json, latex or text)")]
    UnknownFormat(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Latex,
    Text,
}

impl FromStr for Format {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "latex" | "tex" => Ok(Format::Latex),
            "text" | "txt" => Ok(Format::Text),
            _ => Err(ReportError::UnknownFormat(s.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Latex => "latex",
            Format::Text => "text",
        })
    }
}

/// What a rendered diagram describes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DiagramMeta {
    pub algebra: String,
    pub rep: String,
    pub window: String,
    pub source: String,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    #[serde(with = "energy_serde")]
    energy: Energy,
    j: u32,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct JsonDiagram {
    metadata: DiagramMeta,
    entries: Vec<JsonEntry>,
}

pub fn render_diagram(d: &EJDiagram, format: Format, meta: &DiagramMeta) -> String {
    let jmax = d.max_j();
    let row = |e: Energy| (0..=jmax).map(|j| d.mult(e, j)).collect::<Vec<_>>();
    let mut out = String::new();
    match format {
        Format::Csv => {
            let header: Vec<String> = (0..=jmax).map(|j| j.to_string()).collect();
            let _ = writeln!(out, "E,{}", header.join(","));
            for e in d.levels() {
                let cells: Vec<String> = row(e).iter().map(u64::to_string).collect();
                let _ = writeln!(out, "{e},{}", cells.join(","));
            }
        }
        Format::Json => {
            let entries = d.entries.iter().map(|(&(energy, j), &mult)| JsonEntry { energy, j, mult }).collect();
            let doc = JsonDiagram { metadata: meta.clone(), entries };
            out = serde_json::to_string_pretty(&doc).expect("plain data serializes");
            out.push('\n');
        }
        Format::Latex => {
            let _ = writeln!(out, "% {} {}; {}", meta.algebra, meta.rep, meta.window);
            let _ = writeln!(out, "\\begin{{tabular}}{{r|{}}}", "c".repeat(jmax as usize + 1));
            for e in d.levels().into_iter().rev() {
                let cells: Vec<String> = row(e).iter().map(|&m| if m == 0 { String::new() } else { m.to_string() }).collect();
                let _ = writeln!(out, "${} $ & {} \\\\", latex_energy(e), cells.join(" & "));
            }
            let header: Vec<String> = (0..=jmax).map(|j| j.to_string()).collect();
            let _ = writeln!(out, "\\hline\n$E/j$ & {} \\\\", header.join(" & "));
            let _ = writeln!(out, "\\end{{tabular}}");
        }
        Format::Text => {
            let _ = writeln!(out, "{} {} [{}]", meta.algebra, meta.rep, meta.window);
            let width = d.entries.values().map(|m| m.to_string().len()).max().unwrap_or(1).max(jmax.to_string().len());
            let ewidth = d.levels().iter().map(|e| e.to_string().len()).max().unwrap_or(1).max(3);
            let header: Vec<String> = (0..=jmax).map(|j| format!("{j:>width$}")).collect();
            let _ = writeln!(out, "{:>ewidth$} | {}", "E\\j", header.join(" "));
            for e in d.levels() {
                let cells: Vec<String> = row(e).iter().map(|m| format!("{m:>width$}")).collect();
                let _ = writeln!(out, "{:>ewidth$} | {}", e.to_string(), cells.join(" "));
            }
        }
    }
    out
}

fn latex_energy(e: Energy) -> String {
    if e.is_integer() {
        e.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", e.numer(), e.denom())
    }
}

fn parse_latex_energy(s: &str) -> Option<Energy> {
    let s = s.trim().trim_matches('$').trim();
    if let Some(rest) = s.strip_prefix("\\frac{") {
        let (num, rest) = rest.split_once("}{")?;
        let den = rest.strip_suffix('}')?;
        return Some(Energy::new(num.trim().parse().ok()?, den.trim().parse().ok()?));
    }
    s.parse().ok()
}

fn parse_cell(s: &str, line: usize) -> Result<u64, ReportError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(0);
    }
    s.parse().map_err(|_| ReportError::Parse { line, msg: format!("bad multiplicity {s:?}") })
}

/// Reads the matrix written by [`render_diagram`] with [`Format::Csv`].
pub fn parse_csv_matrix(text: &str) -> Result<EJDiagram, ReportError> {
    let mut entries = std::collections::BTreeMap::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let mut cells = line.split(',');
        let e = cells.next().unwrap_or_default();
        let energy: Energy = e.trim().parse().map_err(|_| ReportError::Parse { line: i + 1, msg: format!("bad energy {e:?}") })?;
        for (j, c) in cells.enumerate() {
            let m = parse_cell(c, i + 1)?;
            if m > 0 {
                entries.insert((energy, j as u32), m);
            }
        }
    }
    Ok(EJDiagram { entries })
}

/// Reads the tabular written by [`render_diagram`] with [`Format::Latex`].
pub fn parse_latex_matrix(text: &str) -> Result<EJDiagram, ReportError> {
    let mut entries = std::collections::BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('%') || line.starts_with('\\') || line.starts_with("$E/j$") || line.is_empty() {
            continue;
        }
        let body = line.trim_end_matches("\\\\").trim();
        let mut cells = body.split('&');
        let e = cells.next().unwrap_or_default();
        let energy = parse_latex_energy(e).ok_or_else(|| ReportError::Parse { line: i + 1, msg: format!("bad energy {e:?}") })?;
        for (j, c) in cells.enumerate() {
            let m = parse_cell(c, i + 1)?;
            if m > 0 {
                entries.insert((energy, j as u32), m);
            }
        }
    }
    Ok(EJDiagram { entries })
}

pub fn render_spectrum(table: &SpectrumTable, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("E,multiplicity\n");
            for l in &table.levels {
                let _ = writeln!(out, "{},{}", l.energy, l.multiplicity);
            }
        }
        Format::Json => {
            out = serde_json::to_string_pretty(table).expect("plain data serializes");
            out.push('\n');
        }
        Format::Latex => {
            out.push_str("\\begin{tabular}{r|r}\n$E$ & $\\mu(E)$ \\\\\n\\hline\n");
            for l in &table.levels {
                let _ = writeln!(out, "${}$ & {} \\\\", latex_energy(l.energy), l.multiplicity);
            }
            out.push_str("\\end{tabular}\n");
        }
        Format::Text => {
            for l in &table.levels {
                let _ = writeln!(out, "E = {:>6}  mu = {}", l.energy.to_string(), l.multiplicity);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> EJDiagram {
        EJDiagram::from_rows(Energy::new(9, 2), &[&[1, 0, 2, 1, 1], &[0, 3, 3, 4, 2, 1], &[0, 3, 3, 4, 2, 1], &[1, 0, 2, 1, 1]])
    }

    #[test]
    fn csv_and_latex_round_trip() {
        let d = sample();
        let meta = DiagramMeta { algebra: "gl(1|3)".into(), rep: "V_(3,2,2,1,1)".into(), window: "all levels".into(), source: "pipeline".into() };
        assert_eq!(parse_csv_matrix(&render_diagram(&d, Format::Csv, &meta)).unwrap(), d);
        assert_eq!(parse_latex_matrix(&render_diagram(&d, Format::Latex, &meta)).unwrap(), d);
        let csv = render_diagram(&d, Format::Csv, &meta);
        assert!(csv.starts_with("E,0,1,2,3,4,5\n9/2,1,0,2,1,1,0\n"));
    }

    #[test]
    fn json_carries_metadata_and_string_energies() {
        let meta = DiagramMeta { algebra: "osp(1|6)".into(), rep: "V(1)".into(), window: "z<=11".into(), source: "pipeline".into() };
        let d = EJDiagram::from_rows(Energy::new(3, 2), &[&[1]]);
        let v: serde_json::Value = serde_json::from_str(&render_diagram(&d, Format::Json, &meta)).unwrap();
        assert_eq!(v["metadata"]["algebra"], "osp(1|6)");
        assert_eq!(v["entries"][0]["energy"], "3/2");
        assert_eq!(v["entries"][0]["mult"], 1);
    }

    #[test]
    fn formats_parse() {
        assert_eq!("LaTeX".parse::<Format>().unwrap(), Format::Latex);
        assert!("xml".parse::<Format>().is_err());
    }
}
