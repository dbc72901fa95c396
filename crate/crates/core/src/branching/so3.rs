use std::sync::Arc;

use super::{surviving_policy, BranchingError};
use crate::partition::Partition;
use crate::scalar::Coefficient;
use crate::series::{pair_series, Monomial, MultiSeries, RationalGF, VarSpace};
use crate::symmetric::schur_poly;

pub const U_NAMES: [&str; 3] = ["u1", "u2", "u3"];
pub const V_NAMES: [&str; 2] = ["v1", "v2"];

/// `Σ_σ Σ_j m_σ(j) u^σ J^j`, the so(3) content of the u(3) irreps [σ] with the
/// vector of u(3) restricting to j = 1.
pub fn so3_branching_gf<C: Coefficient>() -> RationalGF<C> {
    let s = VarSpace::new(&["u1", "u2", "u3", "J"], None);
    let num = [(s.monomial(&[]), C::one()), (s.monomial(&[("u1", 2), ("u2", 1), ("J", 1)]), C::one())];
    let den = [
        (s.monomial(&[("u1", 1), ("u2", 1), ("u3", 1)]), 1),
        (s.monomial(&[("u1", 1), ("J", 1)]), 1),
        (s.monomial(&[("u1", 1), ("u2", 1), ("J", 1)]), 1),
        (s.monomial(&[("u1", 2)]), 1),
        (s.monomial(&[("u1", 2), ("u2", 2)]), 1),
    ];
    RationalGF::new(s, num, den).expect("nonconstant factors")
}

/// Multiplicities of j = 0, 1, … in [σ] of u(3), read off the torus character
/// s_σ(t, 1, t⁻¹): m(j) = [t^j] − [t^(j+1)].
pub fn so3_content(sigma: &Partition) -> Vec<u64> {
    let s: MultiSeries<i64> = schur_poly(sigma, 3);
    let top = (sigma.part(0) - sigma.part(2)) as usize;
    let mut weights = vec![0i64; top + 2];
    for (m, c) in s.terms() {
        let w = m.get(0) - m.get(2);
        if w >= 0 {
            weights[w as usize] += c;
        }
    }
    (0..=top).map(|j| (weights[j] - weights[j + 1]) as u64).collect()
}

fn partition_part(m: &Monomial, idx: &[usize]) -> Option<Partition> {
    let parts: Vec<i32> = idx.iter().map(|&i| m.get(i)).collect();
    if parts.iter().any(|&e| e < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    Some(Partition::from_unsorted(parts.into_iter().map(|e| e as u32).collect()))
}

/// A new space: `space` without `drop`, with `extra` appended.
fn reshape(space: &VarSpace, drop: &[&str], extra: &[&str]) -> Arc<VarSpace> {
    let mut names = Vec::new();
    let mut kinds = Vec::new();
    for (i, n) in space.names().iter().enumerate() {
        if !drop.contains(&n.as_str()) {
            names.push(n.clone());
            kinds.push(space.kind(i));
        }
    }
    for e in extra {
        names.push(e.to_string());
        kinds.push(crate::series::VarKind::Plain);
    }
    VarSpace::from_parts(names, kinds)
}

/// Replaces every u^σ by its so(3) content Σ_j m_σ(j) J^j, term by term.
pub fn so3_oracle_series<C: Coefficient>(series: &MultiSeries<C>) -> Result<MultiSeries<C>, BranchingError> {
    let space = series.space();
    let idx = U_NAMES.iter().map(|v| space.require(v)).collect::<Result<Vec<_>, _>>()?;
    let out_space = reshape(space, &U_NAMES, &["J"]);
    let policy = surviving_policy(series.policy(), space, &U_NAMES)?;
    let mut out = MultiSeries::new(out_space.clone(), policy)?;
    let rest: Vec<usize> = (0..space.len()).filter(|i| !idx.contains(i)).collect();
    for (m, c) in series.terms() {
        let sigma = partition_part(m, &idx)
            .ok_or_else(|| BranchingError::Unsupported(format!("u-exponent of {} is not a partition", m.display(space))))?;
        for (j, mult) in so3_content(&sigma).into_iter().enumerate() {
            if mult == 0 {
                continue;
            }
            let mut image: Vec<i32> = rest.iter().map(|&i| m.get(i)).collect();
            image.push(j as i32);
            out.add_term(image.into(), c.mul_ref(&C::from_int(mult as i64)));
        }
    }
    Ok(out)
}

/// The so(3) content of a u(3) representation series: pairs the u-variables
/// against [`so3_branching_gf`], leaving the other variables and J.
pub fn so3_extract<C: Coefficient>(series: &MultiSeries<C>) -> Result<MultiSeries<C>, BranchingError> {
    let policy = surviving_policy(series.policy(), series.space(), &U_NAMES)?;
    Ok(pair_series(series, &so3_branching_gf(), &U_NAMES, &policy)?)
}

/// `Σ_τ dim[τ] v^τ` over partitions τ with at most `rank` parts, for u(rank),
/// rank 1 or 2.
pub fn dimension_gf<C: Coefficient>(rank: usize) -> Result<RationalGF<C>, BranchingError> {
    match rank {
        1 => {
            let s = VarSpace::new(&["v1"], None);
            Ok(RationalGF::product_of_geometric(s.clone(), [(s.monomial(&[("v1", 1)]), 1)])?)
        }
        2 => {
            let s = VarSpace::new(&V_NAMES, None);
            Ok(RationalGF::product_of_geometric(
                s.clone(),
                [(s.monomial(&[("v1", 1)]), 2), (s.monomial(&[("v1", 1), ("v2", 1)]), 1)],
            )?)
        }
        _ => Err(BranchingError::Unsupported(format!("dimension generating function of u({rank})"))),
    }
}

fn v_names_in(space: &VarSpace) -> Vec<&'static str> {
    V_NAMES.iter().copied().filter(|v| space.index(v).is_some()).collect()
}

/// Replaces every v^τ by the dimension of [τ] of u(N) by pairing against
/// [`dimension_gf`]. N is the number of v-variables in the series.
pub fn dim_substitute<C: Coefficient>(series: &MultiSeries<C>) -> Result<MultiSeries<C>, BranchingError> {
    let vs = v_names_in(series.space());
    let policy = surviving_policy(series.policy(), series.space(), &vs)?;
    Ok(pair_series(series, &dimension_gf(vs.len())?, &vs, &policy)?)
}

/// [`dim_substitute`] term by term with dim[τ1, τ2] = τ1 − τ2 + 1 (and 1 for u(1)).
pub fn dim_direct<C: Coefficient>(series: &MultiSeries<C>) -> Result<MultiSeries<C>, BranchingError> {
    let space = series.space();
    let vs = v_names_in(space);
    let idx: Vec<usize> = vs.iter().map(|v| space.require(v)).collect::<Result<_, _>>()?;
    let out_space = reshape(space, &vs, &[]);
    let policy = surviving_policy(series.policy(), space, &vs)?;
    let rest: Vec<usize> = (0..space.len()).filter(|i| !idx.contains(i)).collect();
    let mut out = MultiSeries::new(out_space, policy)?;
    for (m, c) in series.terms() {
        let tau = partition_part(m, &idx)
            .ok_or_else(|| BranchingError::Unsupported(format!("v-exponent of {} is not a partition", m.display(space))))?;
        let dim = if idx.len() == 1 { 1 } else { i64::from(tau.part(0)) - i64::from(tau.part(1)) + 1 };
        let image: Vec<i32> = rest.iter().map(|&i| m.get(i)).collect();
        out.add_term(image.into(), c.mul_ref(&C::from_int(dim)));
    }
    Ok(out)
}
