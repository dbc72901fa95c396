use std::sync::Arc;

use super::diagram::So3Gf;
use super::grand::{a_block, grand_product};
use super::so3::{dim_substitute, so3_branching_gf, so3_extract};
use super::{surviving_policy, BranchingError};
use crate::characters::GlRep;
use crate::scalar::Coefficient;
use crate::series::{conservative_windows, constant_term, Monomial, MultiSeries, RationalGF, TruncationPolicy, VarKind, VarSpace};

/// Stages of the u(n) ⊃ so(3) branching generating function
/// H(J, A) = Σ_ν Σ_j m_ν(j) A^ν J^j over ν with at most `rows` parts.
#[derive(Debug, Clone)]
pub struct GlH<C: Coefficient> {
    /// u(3) ⊕ u(n/3) content, in A, u and v.
    pub rep_series: MultiSeries<C>,
    /// u(n/3) labels replaced by dimensions, in A and u.
    pub dim_series: MultiSeries<C>,
    /// In A and J.
    pub h: MultiSeries<C>,
}

fn rank_of(n: u32) -> Result<usize, BranchingError> {
    match n {
        3 => Ok(1),
        6 => Ok(2),
        _ => Err(BranchingError::Unsupported(format!("gl(1|{n})"))),
    }
}

/// H(J, A) for u(n), n = 3 or 6, up to total A-degree `degree`.
pub fn gl_h<C: Coefficient>(n: u32, rows: usize, degree: u32) -> Result<GlH<C>, BranchingError> {
    let rep_series = grand_product(rows, rank_of(n)?, degree)?;
    let dim_series = dim_substitute(&rep_series)?;
    let h = so3_extract(&dim_series)?;
    Ok(GlH { rep_series, dim_series, h })
}

/// H(J, A1, A2, A3) for u(3): the so(3) branching function with u renamed to A,
/// up to total A-degree `degree`.
pub fn u3_h<C: Coefficient>(degree: u32) -> Result<MultiSeries<C>, BranchingError> {
    let space = VarSpace::new(&["A1", "A2", "A3", "J"], None);
    let images: Vec<Monomial> = ["A1", "A2", "A3", "J"].iter().map(|v| space.monomial(&[(v, 1)])).collect();
    let gf = so3_branching_gf::<C>().substitute_vars(space, &images)?;
    Ok(gf.expand(&TruncationPolicy::total_over(i64::from(degree), a_block(3)))?)
}

/// `∏ (1 + A_i z)` over the named variables.
pub fn elementary_factor<C: Coefficient>(space: &Arc<VarSpace>, vars: &[&str], z: &str) -> Result<MultiSeries<C>, BranchingError> {
    let mut out = MultiSeries::one(space.clone(), TruncationPolicy::unbounded())?;
    for v in vars {
        let factor = MultiSeries::from_terms(
            space.clone(),
            TruncationPolicy::unbounded(),
            [(Monomial::one(space.len()), C::one()), (space.monomial(&[(v, 1), (z, 1)]), C::one())],
        )?;
        out = out.mul(&factor);
    }
    Ok(out)
}

/// The (z, J) generating function of V_λ: the coefficient of A^λ′ in
/// `∏_{i ≤ min(λ1, n)} (1 + A_i z) · H(J, A)`, where λ′ is cut to n parts.
/// z counts levels above the bottom energy, which is carried as the offset.
///
/// For u(6), λ′ may have at most two parts, or three equal ones.
pub fn gl_angular_gf<C: Coefficient>(rep: &GlRep) -> Result<So3Gf<C>, BranchingError> {
    let key = rep.conjugate_key();
    let rows = key.iter().filter(|&&k| k > 0).count();
    let offset = rep.ground_energy();
    let target = VarSpace::new(&["J", "z"], None);
    if rows == 0 {
        let series = MultiSeries::from_terms(target.clone(), TruncationPolicy::unbounded(), [(Monomial::one(2), C::one())])?;
        return Ok(So3Gf { series, offset });
    }
    let degree: u32 = key.iter().sum();
    let (h, width) = match rep.n {
        3 => (u3_h::<C>(degree)?, 3),
        6 if rows <= 2 || (rows == 3 && key[0] == key[2]) => (gl_h::<C>(6, rows, degree)?.h, rows),
        _ => {
            return Err(BranchingError::Unsupported(format!(
                "{rep}: for gl(1|6), λ′ must have at most two parts or three equal parts"
            )))
        }
    };
    let names: Vec<&str> = a_block(width).iter().copied().chain(["J", "z"]).collect();
    let space = VarSpace::new(&names, None);
    let policy = TruncationPolicy::total_over(i64::from(degree), a_block(width));
    let full = h.embed(space.clone(), policy.clone())?.mul(&elementary_factor(&space, a_block(rows), "z")?);
    let fixed: Vec<(usize, i32)> = (0..width).map(|i| (i, key.get(i).copied().unwrap_or(0) as i32)).collect();
    let series = full.slice(&fixed)?.with_policy(TruncationPolicy::unbounded())?;
    Ok(So3Gf { series, offset })
}

fn aux_names(m: usize) -> Vec<String> {
    (1..m).map(|k| format!("eq{k}")).collect()
}

/// The space of `space` extended by auxiliary variables, and the image of
/// each original variable: A_k ↦ A_k · a_k / a_(k−1) along `vars`.
fn equal_rows_images(space: &VarSpace, vars: &[&str]) -> Result<(Arc<VarSpace>, Vec<String>, Vec<Monomial>), BranchingError> {
    let aux = aux_names(vars.len());
    let mut names = space.names().to_vec();
    let mut kinds: Vec<VarKind> = (0..space.len()).map(|i| space.kind(i)).collect();
    names.extend(aux.iter().cloned());
    kinds.extend(aux.iter().map(|_| VarKind::Plain));
    let wide = VarSpace::from_parts(names, kinds);
    let mut images: Vec<Monomial> = (0..space.len())
        .map(|i| {
            let mut m = Monomial::one(wide.len());
            m.exps_mut()[i] = 1;
            m
        })
        .collect();
    for (k, v) in vars.iter().enumerate() {
        let i = space.require(v)?;
        if k < aux.len() {
            images[i].exps_mut()[space.len() + k] += 1;
        }
        if k > 0 {
            images[i].exps_mut()[space.len() + k - 1] -= 1;
        }
    }
    Ok((wide, aux, images))
}

/// The terms whose exponents agree on all of `vars`, by substituting the
/// auxiliary balance variables and taking their constant term.
pub fn equal_rows_restrict<C: Coefficient>(series: &MultiSeries<C>, vars: &[&str]) -> Result<MultiSeries<C>, BranchingError> {
    let (wide, aux, images) = equal_rows_images(series.space(), vars)?;
    let policy = surviving_policy(series.policy(), series.space(), &[])?;
    let lifted = series.substitute(wide, policy, &images.into_iter().map(Some).collect::<Vec<_>>())?;
    let aux: Vec<&str> = aux.iter().map(String::as_str).collect();
    Ok(lifted.constant_term_in(&aux)?.with_policy(series.policy().clone())?)
}

/// [`equal_rows_restrict`] on a generating function, with the constant term
/// taken from the expansion in Laurent windows wide enough to be exact.
pub fn equal_rows_restrict_gf<C: Coefficient>(
    gf: &RationalGF<C>,
    vars: &[&str],
    policy: &TruncationPolicy,
) -> Result<MultiSeries<C>, BranchingError> {
    let (wide, aux, images) = equal_rows_images(gf.space(), vars)?;
    let lifted = gf.substitute_vars(wide, &images)?;
    let inner = surviving_policy(policy, gf.space(), &[])?;
    let aux: Vec<&str> = aux.iter().map(String::as_str).collect();
    let windowed = conservative_windows(&lifted, &aux, &inner)?;
    Ok(constant_term(&lifted, &aux, &windowed)?.with_policy(policy.clone())?)
}
