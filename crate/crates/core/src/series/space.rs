use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::SeriesError;

/// How a variable's exponents are stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Plain,
    /// Exponents are stored doubled (units of ħω/2), so `z^(3/2)` is stored as 3.
    Energy,
}

/// An ordered list of named variables. Every series is keyed by dense
/// exponent vectors indexed by position in its space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSpace {
    names: Vec<String>,
    kinds: Vec<VarKind>,
}

impl VarSpace {
    /// Builds a space; the variable named in `energy` (if any) is stored doubled.
    pub fn new<S: AsRef<str>>(names: &[S], energy: Option<&str>) -> Arc<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            assert!(!names[..i].contains(a), "duplicate variable {a}");
        }
        let kinds = names
            .iter()
            .map(|n| if Some(n.as_str()) == energy { VarKind::Energy } else { VarKind::Plain })
            .collect();
        Arc::new(Self { names, kinds })
    }

    pub fn from_parts(names: Vec<String>, kinds: Vec<VarKind>) -> Arc<Self> {
        assert_eq!(names.len(), kinds.len());
        Arc::new(Self { names, kinds })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn kind(&self, i: usize) -> VarKind {
        self.kinds[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, SeriesError> {
        self.index(name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))
    }

    pub fn energy_index(&self) -> Option<usize> {
        self.kinds.iter().position(|k| *k == VarKind::Energy)
    }

    /// The subspace obtained by dropping the given variables.
    pub fn without(&self, drop: &[usize]) -> Arc<Self> {
        let keep: Vec<usize> = (0..self.len()).filter(|i| !drop.contains(i)).collect();
        Arc::new(Self {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            kinds: keep.iter().map(|&i| self.kinds[i]).collect(),
        })
    }

    /// A monomial from `(name, exponent)` pairs; energy exponents are given in
    /// stored (doubled) units.
    pub fn monomial(&self, pairs: &[(&str, i32)]) -> Monomial {
        let mut m = Monomial::one(self.len());
        for (name, e) in pairs {
            let i = self.index(name).unwrap_or_else(|| panic!("unknown variable {name}"));
            m.0[i] += e;
        }
        m
    }
}

/// A dense exponent vector. Ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) SmallVec<[i32; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(SmallVec::from_elem(0, nvars))
    }

    pub fn from_slice(exps: &[i32]) -> Self {
        Self(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn exps_mut(&mut self) -> &mut [i32] {
        &mut self.0
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    /// Renders against a space, e.g. `J^2 z^(7/2)`.
    pub fn display<'a>(&'a self, space: &'a VarSpace) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, space }
    }
}

impl From<Vec<i32>> for Monomial {
    fn from(v: Vec<i32>) -> Self {
        Monomial(SmallVec::from_vec(v))
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    space: &'a VarSpace,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = self.space.name(i);
            match self.space.kind(i) {
                VarKind::Energy if e % 2 != 0 => write!(f, "{name}^({e}/2)")?,
                VarKind::Energy if e == 2 => write!(f, "{name}")?,
                VarKind::Energy => write!(f, "{name}^{}", e / 2)?,
                VarKind::Plain if e == 1 => write!(f, "{name}")?,
                VarKind::Plain => write!(f, "{name}^{e}")?,
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_exponents_are_doubled() {
        let space = VarSpace::new(&["J", "z"], Some("z"));
        let m = space.monomial(&[("J", 2), ("z", 7)]);
        assert_eq!(m.display(&space).to_string(), "J^2 z^(7/2)");
        // printed z^(3p/2) with p = 2 is stored as 3p = 6
        let m = space.monomial(&[("z", 6)]);
        assert_eq!(m.display(&space).to_string(), "z^3");
        assert_eq!(Monomial::one(2).display(&space).to_string(), "1");
    }

    #[test]
    fn subspace_drops_variables() {
        let space = VarSpace::new(&["a", "b", "z"], Some("z"));
        let sub = space.without(&[1]);
        assert_eq!(sub.names(), &["a".to_string(), "z".to_string()]);
        assert_eq!(sub.energy_index(), Some(1));
    }
}
