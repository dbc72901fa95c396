//! The corpus of reference generating functions.
//!
//! Each fixture is a `.gf` file whose `#` header carries `id`, `source`,
//! `anchor` (the printed formula), optional `note` lines and the default
//! `window`. The files are compiled in; setting `WIGNER_FIXTURES` to a
//! directory makes [`load`] read `<dir>/<id>.gf` instead.

use std::path::PathBuf;

use thiserror::Error;

use crate::scalar::Coefficient;
use crate::series::{parse_gf, write_gf, RationalGF, SeriesError, TruncationPolicy};

pub const FIXTURE_DIR_ENV: &str = "WIGNER_FIXTURES";

macro_rules! corpus {
    ($($id:literal),* $(,)?) => {
        const EMBEDDED: &[(&str, &str)] = &[$(($id, include_str!(concat!("../fixtures/", $id, ".gf")))),*];
    };
}

corpus!(
    "osp16-p1",
    "osp16-p2",
    "osp16-p3",
    "u3-char-v2",
    "u3-rep-v2",
    "u2-dim",
    "u3-so3",
    "osp112-v1-rep",
    "osp112-v1-dim",
    "osp112-v1-so3",
    "u6-two-row-rep",
    "osp112-v2-so3",
    "gl13-angular",
    "gl16-one-row",
    "u6-two-row-h",
    "u6-equal-two-row-rep",
    "u6-equal-two-row-h",
    "u6-equal-three-row-rep",
    "u6-equal-three-row-h",
);

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    Unknown(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("fixture {id}: missing `# {field}:` header")]
    MissingHeader { id: String, field: &'static str },
    #[error("fixture {id}: header names {found:?}")]
    IdMismatch { id: String, found: String },
    #[error("fixture {id}: {source}")]
    Series { id: String, source: SeriesError },
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: String,
    pub source: String,
    pub anchor: Vec<String>,
    pub notes: Vec<String>,
    pub window: TruncationPolicy,
    /// The full file text, header included.
    pub text: String,
}

impl Fixture {
    pub fn parse(id: &str, text: &str) -> Result<Self, FixtureError> {
        let mut fields: Vec<(&str, &str)> = Vec::new();
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix('#') {
                if let Some((k, v)) = rest.split_once(':') {
                    fields.push((k.trim(), v.trim()));
                }
            }
        }
        let one = |field: &'static str| {
            fields
                .iter()
                .find(|(k, _)| *k == field)
                .map(|(_, v)| v.to_string())
                .ok_or(FixtureError::MissingHeader { id: id.to_string(), field })
        };
        let many = |field: &str| fields.iter().filter(|(k, _)| *k == field).map(|(_, v)| v.to_string()).collect::<Vec<_>>();
        let found = one("id")?;
        if found != id {
            return Err(FixtureError::IdMismatch { id: id.to_string(), found });
        }
        let window = one("window")?.parse().map_err(|source| FixtureError::Series { id: id.to_string(), source })?;
        let fixture = Self {
            id: found,
            source: one("source")?,
            anchor: many("anchor"),
            notes: many("note"),
            window,
            text: text.to_string(),
        };
        if fixture.anchor.is_empty() {
            return Err(FixtureError::MissingHeader { id: id.to_string(), field: "anchor" });
        }
        fixture.gf::<i128>()?;
        Ok(fixture)
    }

    pub fn gf<C: Coefficient>(&self) -> Result<RationalGF<C>, FixtureError> {
        parse_gf(&self.text).map_err(|source| FixtureError::Series { id: self.id.clone(), source })
    }

    /// The data lines of the file, without the header.
    pub fn body(&self) -> String {
        self.text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
    }

    /// Whether the body is the canonical serialization of its own gf.
    pub fn is_canonical(&self) -> Result<bool, FixtureError> {
        Ok(write_gf(&self.gf::<i128>()?) == self.body())
    }
}

pub fn ids() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(id, _)| *id)
}

/// The fixture `id`, from `WIGNER_FIXTURES` when set, else the compiled-in copy.
pub fn load(id: &str) -> Result<Fixture, FixtureError> {
    if let Some(dir) = std::env::var_os(FIXTURE_DIR_ENV) {
        let path = PathBuf::from(dir).join(format!("{id}.gf"));
        let text = std::fs::read_to_string(&path).map_err(|source| FixtureError::Io { path, source })?;
        return Fixture::parse(id, &text);
    }
    let (_, text) = EMBEDDED.iter().find(|(k, _)| *k == id).ok_or_else(|| FixtureError::Unknown(id.to_string()))?;
    Fixture::parse(id, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses_and_is_canonical() {
        let mut seen = std::collections::BTreeSet::new();
        for (id, text) in EMBEDDED {
            assert!(seen.insert(*id), "duplicate id {id}");
            let f = Fixture::parse(id, text).unwrap_or_else(|e| panic!("{e}"));
            assert!(f.is_canonical().unwrap(), "{id} is not in canonical form");
            assert!(!f.source.is_empty());
        }
    }

    #[test]
    fn header_problems_are_reported() {
        let text = EMBEDDED[0].1;
        assert!(matches!(Fixture::parse("other", text), Err(FixtureError::IdMismatch { .. })));
        let no_window: String = text.lines().filter(|l| !l.starts_with("# window")).map(|l| format!("{l}\n")).collect();
        assert!(matches!(Fixture::parse(EMBEDDED[0].0, &no_window), Err(FixtureError::MissingHeader { field: "window", .. })));
        let corrupt = text.replace("num: 1", "num: one");
        assert!(matches!(Fixture::parse(EMBEDDED[0].0, &corrupt), Err(FixtureError::Series { .. })));
        assert!(matches!(load("nope"), Err(FixtureError::Unknown(_))));
    }
}
