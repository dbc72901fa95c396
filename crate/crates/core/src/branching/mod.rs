//! From characters to angular momentum content: dominant-sector reduction,
//! u(2) dimension substitution, the u(3) ⊃ so(3) pairing, the Kronecker grand
//! generating function, and (E, j)-diagrams.

mod diagram;
mod dominant;
mod gl;
mod grand;
mod osp;
mod so3;

pub use diagram::{EJDiagram, So3Gf};
pub use dominant::{dominant_sector, dominant_sector_literal, is_dominant_in, weyl_factor, weyl_terms};
pub use gl::{elementary_factor, equal_rows_restrict, equal_rows_restrict_gf, gl_angular_gf, gl_h, u3_h, GlH};
pub use grand::{a_block, cauchy_kernel, grand_dominant_terms, grand_gf, grand_marked_space, grand_product, grand_space, kronecker_series, A_NAMES};
pub use osp::{osp_angular_gf, osp_pipeline, OspStages};
pub use so3::{
    dim_direct, dim_substitute, dimension_gf, so3_branching_gf, so3_content, so3_extract, so3_oracle_series, U_NAMES,
    V_NAMES,
};

use thiserror::Error;

use crate::characters::CharacterError;
use crate::symmetric::SymmetricError;
use crate::series::{SeriesError, TruncationPolicy, VarSpace};
use crate::Energy;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchingError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Symmetric(#[from] SymmetricError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("policy treats block {block} unevenly: {reason}")]
    BlockPolicy { block: String, reason: String },
    #[error("negative multiplicity {mult} for j = {j} at E = {energy}")]
    NegativeMultiplicity { energy: Energy, j: i64, mult: String },
    #[error("diagram needs a series in J and the energy variable only, found [{0}]")]
    NotADiagram(String),
    #[error("level E = {energy}: Σ(2j+1)·mult = {diagram} but the spectrum gives {spectrum}")]
    Conservation { energy: Energy, diagram: u128, spectrum: u128 },
}

/// `policy` restricted to the variables of `space` that survive after the
/// `removed` ones are paired away, with the graded set spelled out so that
/// variables introduced by the pairing are not graded.
pub(crate) fn surviving_policy(policy: &TruncationPolicy, space: &VarSpace, removed: &[&str]) -> Result<TruncationPolicy, SeriesError> {
    let resolved = policy.resolve(space)?;
    let keep = |v: &String| !removed.contains(&v.as_str()) && space.index(v).is_some();
    Ok(TruncationPolicy {
        total_degree_cap: policy.total_degree_cap,
        graded_vars: Some(
            (0..space.len())
                .filter(|&i| resolved.graded[i] && !removed.contains(&space.name(i)))
                .map(|i| space.name(i).to_string())
                .collect(),
        ),
        per_variable_caps: policy.per_variable_caps.iter().filter(|(v, _)| keep(v)).map(|(v, c)| (v.clone(), *c)).collect(),
        laurent_windows: policy.laurent_windows.iter().filter(|(v, _)| keep(v)).map(|(v, w)| (v.clone(), *w)).collect(),
    })
}
