use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::space::{Monomial, VarSpace};
use super::SeriesError;

/// Which monomials a truncated series keeps.
///
/// Caps apply to stored exponents (energy variables count doubled). The total
/// degree is summed over `graded_vars`, or over every variable without a
/// Laurent window when `graded_vars` is `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TruncationPolicy {
    pub total_degree_cap: Option<i64>,
    pub graded_vars: Option<BTreeSet<String>>,
    pub per_variable_caps: BTreeMap<String, i64>,
    pub laurent_windows: BTreeMap<String, (i64, i64)>,
}

impl TruncationPolicy {
    /// No truncation at all (exact polynomials).
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn total(cap: i64) -> Self {
        Self { total_degree_cap: Some(cap), ..Self::default() }
    }

    /// Total degree ≤ `cap`, counted over the named variables only.
    pub fn total_over<S: AsRef<str>>(cap: i64, vars: &[S]) -> Self {
        Self {
            total_degree_cap: Some(cap),
            graded_vars: Some(vars.iter().map(|v| v.as_ref().to_string()).collect()),
            ..Self::default()
        }
    }

    pub fn with_cap(mut self, var: &str, cap: i64) -> Self {
        self.per_variable_caps.insert(var.to_string(), cap);
        self
    }

    pub fn with_window(mut self, var: &str, low: i64, high: i64) -> Self {
        self.laurent_windows.insert(var.to_string(), (low, high));
        self
    }

    pub fn is_unbounded(&self) -> bool {
        self.total_degree_cap.is_none() && self.per_variable_caps.is_empty() && self.laurent_windows.is_empty()
    }

    pub fn validate(&self) -> Result<(), SeriesError> {
        if self.total_degree_cap.is_some_and(|c| c < 0) {
            return Err(SeriesError::InvalidPolicy("negative total degree cap".into()));
        }
        if let Some((v, _)) = self.per_variable_caps.iter().find(|(_, c)| **c < 0) {
            return Err(SeriesError::InvalidPolicy(format!("negative cap on {v}")));
        }
        if let Some((v, _)) = self.laurent_windows.iter().find(|(_, (lo, hi))| *lo > 0 || *hi < 0) {
            return Err(SeriesError::InvalidPolicy(format!("Laurent window of {v} must contain 0")));
        }
        Ok(())
    }

    pub fn resolve(&self, space: &VarSpace) -> Result<ResolvedPolicy, SeriesError> {
        self.validate()?;
        let n = space.len();
        let mut windows = vec![None; n];
        for (name, w) in &self.laurent_windows {
            windows[space.require(name)?] = Some(*w);
        }
        let mut caps = vec![None; n];
        for (name, c) in &self.per_variable_caps {
            caps[space.require(name)?] = Some(*c);
        }
        let graded = match &self.graded_vars {
            Some(set) => {
                let mut g = vec![false; n];
                for name in set {
                    g[space.require(name)?] = true;
                }
                g
            }
            None => windows.iter().map(Option::is_none).collect(),
        };
        Ok(ResolvedPolicy { total: self.total_degree_cap, graded, caps, windows })
    }
}

impl fmt::Display for TruncationPolicy {
    /// `total<=10 over A1,A2; J<=8; a in -4..4`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(cap) = self.total_degree_cap {
            match &self.graded_vars {
                Some(vars) => {
                    let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
                    parts.push(format!("total<={cap} over {}", vars.join(",")));
                }
                None => parts.push(format!("total<={cap}")),
            }
        }
        for (v, c) in &self.per_variable_caps {
            parts.push(format!("{v}<={c}"));
        }
        for (v, (lo, hi)) in &self.laurent_windows {
            parts.push(format!("{v} in {lo}..{hi}"));
        }
        if parts.is_empty() {
            return f.write_str("unbounded");
        }
        f.write_str(&parts.join("; "))
    }
}

impl FromStr for TruncationPolicy {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SeriesError::InvalidPolicy(format!("cannot parse window {s:?}"));
        let mut policy = TruncationPolicy::default();
        let s = s.trim();
        if s == "unbounded" {
            return Ok(policy);
        }
        for clause in s.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            if let Some(rest) = clause.strip_prefix("total<=") {
                let (cap, vars) = match rest.split_once(" over ") {
                    Some((cap, vars)) => (cap, Some(vars)),
                    None => (rest, None),
                };
                policy.total_degree_cap = Some(cap.trim().parse().map_err(|_| bad())?);
                policy.graded_vars =
                    vars.map(|v| v.split(',').map(|x| x.trim().to_string()).collect());
            } else if let Some((var, range)) = clause.split_once(" in ") {
                let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
                let lo = lo.trim().parse().map_err(|_| bad())?;
                let hi = hi.trim().parse().map_err(|_| bad())?;
                policy.laurent_windows.insert(var.trim().to_string(), (lo, hi));
            } else if let Some((var, cap)) = clause.split_once("<=") {
                policy
                    .per_variable_caps
                    .insert(var.trim().to_string(), cap.trim().parse().map_err(|_| bad())?);
            } else {
                return Err(bad());
            }
        }
        policy.validate()?;
        Ok(policy)
    }
}

/// A policy bound to the positions of a particular space.
#[derive(Debug, Clone)]
pub struct ResolvedPolicy {
    pub total: Option<i64>,
    pub graded: Vec<bool>,
    pub caps: Vec<Option<i64>>,
    pub windows: Vec<Option<(i64, i64)>>,
}

impl ResolvedPolicy {
    pub fn grade(&self, m: &Monomial) -> i64 {
        m.exps()
            .iter()
            .zip(&self.graded)
            .filter(|(_, g)| **g)
            .map(|(e, _)| i64::from(*e))
            .sum()
    }

    #[inline]
    pub fn admits(&self, m: &Monomial) -> bool {
        if let Some(total) = self.total {
            if self.grade(m) > total {
                return false;
            }
        }
        for (i, &e) in m.exps().iter().enumerate() {
            let e = i64::from(e);
            if let Some(cap) = self.caps[i] {
                if e > cap {
                    return false;
                }
            }
            if let Some((lo, hi)) = self.windows[i] {
                if e < lo || e > hi {
                    return false;
                }
            }
        }
        true
    }
}
