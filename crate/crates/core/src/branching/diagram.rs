use std::collections::BTreeMap;


use super::BranchingError;
use crate::characters::SpectrumTable;
use crate::scalar::Coefficient;
use crate::series::{MultiSeries, VarKind};
use crate::Energy;

/// A series in J and an energy variable, plus a constant energy offset.
///
/// The energy variable is either the stored-doubled `z` of an osp(1|2n)
/// pipeline or a plain counter of levels above `offset`.
#[derive(Debug, Clone)]
pub struct So3Gf<C: Coefficient> {
    pub series: MultiSeries<C>,
    pub offset: Energy,
}

impl<C: Coefficient> So3Gf<C> {
    fn positions(&self) -> Result<(usize, usize), BranchingError> {
        let space = self.series.space();
        let bad = || BranchingError::NotADiagram(space.names().join(","));
        let j = space.index("J").ok_or_else(bad)?;
        let z = space.index("z").ok_or_else(bad)?;
        Ok((j, z))
    }

    /// The energy of a stored exponent of the energy variable.
    pub fn energy_of(&self, e: i32) -> Energy {
        let z = self.series.space().index("z").expect("energy variable");
        let e = i64::from(e);
        let value = match self.series.space().kind(z) {
            VarKind::Energy => Energy::new(e, 2),
            VarKind::Plain => Energy::from(e),
        };
        value + self.offset
    }
}

/// Multiplicities of angular momentum j at each energy level.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EJDiagram {
    pub entries: BTreeMap<(Energy, u32), u64>,
}

impl EJDiagram {
    /// Reads the coefficients of `z^e J^j`; every other variable must be absent.
    pub fn from_so3<C: Coefficient>(gf: &So3Gf<C>) -> Result<Self, BranchingError> {
        let (j_idx, z_idx) = gf.positions()?;
        let space = gf.series.space();
        let mut entries = BTreeMap::new();
        for (m, c) in gf.series.terms() {
            if m.exps().iter().enumerate().any(|(i, &e)| i != j_idx && i != z_idx && e != 0) {
                return Err(BranchingError::NotADiagram(m.display(space).to_string()));
            }
            let energy = gf.energy_of(m.get(z_idx));
            let j = m.get(j_idx);
            let mult = c.to_i128().filter(|v| *v >= 0 && j >= 0).ok_or_else(|| BranchingError::NegativeMultiplicity {
                energy,
                j: i64::from(j),
                mult: c.to_string(),
            })?;
            if mult > 0 {
                entries.insert((energy, j as u32), mult as u64);
            }
        }
        Ok(Self { entries })
    }

    /// Row k lists the multiplicities j = 0, 1, … at energy `start + k`.
    pub fn from_rows(start: Energy, rows: &[&[u64]]) -> Self {
        let mut entries = BTreeMap::new();
        for (k, row) in rows.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m > 0 {
                    entries.insert((start + Energy::from(k as i64), j as u32), m);
                }
            }
        }
        Self { entries }
    }

    pub fn levels(&self) -> Vec<Energy> {
        let mut out: Vec<Energy> = self.entries.keys().map(|(e, _)| *e).collect();
        out.dedup();
        out
    }

    pub fn mult(&self, energy: Energy, j: u32) -> u64 {
        self.entries.get(&(energy, j)).copied().unwrap_or(0)
    }

    /// Multiplicities j = 0..=max j present at this energy.
    pub fn row(&self, energy: Energy) -> Vec<u64> {
        let top = self.entries.keys().filter(|(e, _)| *e == energy).map(|(_, j)| *j).max();
        match top {
            Some(top) => (0..=top).map(|j| self.mult(energy, j)).collect(),
            None => Vec::new(),
        }
    }

    pub fn max_j(&self) -> u32 {
        self.entries.keys().map(|(_, j)| *j).max().unwrap_or(0)
    }

    /// Σ (2j + 1) · mult at one energy.
    pub fn level_dimension(&self, energy: Energy) -> u128 {
        self.entries
            .iter()
            .filter(|((e, _), _)| *e == energy)
            .map(|((_, j), m)| u128::from(2 * *j + 1) * u128::from(*m))
            .sum()
    }

    /// Checks Σ(2j+1)·mult against the level degeneracies of `spectrum`.
    pub fn check_conservation(&self, spectrum: &SpectrumTable) -> Result<(), BranchingError> {
        for level in &spectrum.levels {
            let diagram = self.level_dimension(level.energy);
            if diagram != level.multiplicity {
                return Err(BranchingError::Conservation { energy: level.energy, diagram, spectrum: level.multiplicity });
            }
        }
        Ok(())
    }

    /// Keeps the levels with energy ≤ `max`.
    pub fn truncate_levels(&self, max: Energy) -> Self {
        Self { entries: self.entries.iter().filter(|((e, _), _)| *e <= max).map(|(k, v)| (*k, *v)).collect() }
    }

    /// Keeps the first `count` levels.
    pub fn first_levels(&self, count: usize) -> Self {
        match self.levels().get(count) {
            Some(&cut) => Self { entries: self.entries.iter().filter(|((e, _), _)| *e < cut).map(|(k, v)| (*k, *v)).collect() },
            None => self.clone(),
        }
    }
}
