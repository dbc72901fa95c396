use std::sync::Arc;

use super::dominant::{dominant_sector, is_dominant_in, weyl_factor};
use super::so3::{U_NAMES, V_NAMES};
use super::BranchingError;
use crate::partition::Partition;
use crate::scalar::Coefficient;
use crate::series::{Monomial, MultiSeries, RationalGF, TruncationPolicy, VarSpace};
use crate::symmetric::kronecker;

pub const A_NAMES: [&str; 6] = ["A1", "A2", "A3", "A4", "A5", "A6"];

fn check_shape(rows: usize, rank: usize) -> Result<(), BranchingError> {
    if !(1..=A_NAMES.len()).contains(&rows) || !(1..=V_NAMES.len()).contains(&rank) {
        return Err(BranchingError::Unsupported(format!("grand generating function with {rows} rows and u({rank})")));
    }
    Ok(())
}

/// Variables A1..A_rows, u1..u3, v1..v_rank.
pub fn grand_space(rows: usize, rank: usize) -> Result<Arc<VarSpace>, BranchingError> {
    check_shape(rows, rank)?;
    let names: Vec<&str> = A_NAMES[..rows].iter().chain(&U_NAMES).chain(&V_NAMES[..rank]).copied().collect();
    Ok(VarSpace::new(&names, None))
}

fn kernel_factors(space: &VarSpace, rows: usize, rank: usize, marker: Option<&str>) -> Vec<(Monomial, u32)> {
    let mut factors = Vec::new();
    for a in &A_NAMES[..rows] {
        for u in &U_NAMES {
            for v in &V_NAMES[..rank] {
                let mut pairs = vec![(*a, 1), (*u, 1), (*v, 1)];
                pairs.extend(marker.map(|z| (z, 1)));
                factors.push((space.monomial(&pairs), 1));
            }
        }
    }
    factors
}

/// `∏_{i,j,k} 1/(1 − A_i u_j v_k)`, the Cauchy kernel of u(3m) ⊃ u(3) ⊕ u(m):
/// its dominant sector is `Σ g(σ, τ, ν) A^ν u^σ v^τ`.
pub fn cauchy_kernel<C: Coefficient>(rows: usize, rank: usize) -> Result<RationalGF<C>, BranchingError> {
    let space = grand_space(rows, rank)?;
    let factors = kernel_factors(&space, rows, rank, None);
    Ok(RationalGF::product_of_geometric(space, factors)?)
}

/// Variables A1..A_rows, u1..u3, v1..v_rank, z.
pub fn grand_marked_space(rows: usize, rank: usize) -> Result<Arc<VarSpace>, BranchingError> {
    let inner = grand_space(rows, rank)?;
    let names: Vec<&str> = inner.names().iter().map(String::as_str).chain(["z"]).collect();
    Ok(VarSpace::new(&names, None))
}

/// The grand generating function
/// `∏ 1/(1 − A_i u_j v_k z) · ∏_{i<j}(1 − A_j/A_i) · ∏_{i<j}(1 − u_j/u_i) · ∏_{i<j}(1 − v_j/v_i)`.
/// Its coefficient of `z^d A^ν u^σ v^τ`, for partitions of d, is g(ν, σ, τ).
pub fn grand_gf<C: Coefficient>(rows: usize, rank: usize) -> Result<RationalGF<C>, BranchingError> {
    let space = grand_marked_space(rows, rank)?;
    let factors = kernel_factors(&space, rows, rank, Some("z"));
    let mut weyl = MultiSeries::one(space.clone(), TruncationPolicy::unbounded())?;
    for block in [a_block(rows), &U_NAMES[..], &V_NAMES[..rank]] {
        weyl = weyl.mul(&weyl_factor(&space, block)?);
    }
    let numerator = RationalGF::polynomial(space.clone(), weyl.into_terms());
    Ok(numerator.mul(&RationalGF::product_of_geometric(space, factors)?))
}

/// The terms of an expanded [`grand_gf`] whose exponents are partitions,
/// with the z marker dropped.
pub fn grand_dominant_terms<C: Coefficient>(
    series: &MultiSeries<C>,
    rows: usize,
    rank: usize,
    degree: u32,
) -> Result<MultiSeries<C>, BranchingError> {
    let space = series.space();
    let blocks: Vec<Vec<usize>> = [a_block(rows), &U_NAMES[..], &V_NAMES[..rank]]
        .iter()
        .map(|b| b.iter().map(|v| space.require(v)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let target = grand_space(rows, rank)?;
    let z = space.require("z")?;
    let dominant = series.filter(|m| is_dominant_in(m, &blocks) && m.exps().iter().all(|&e| e >= 0));
    Ok(dominant.map_monomials(target, TruncationPolicy::total_over(i64::from(degree), a_block(rows)), |m| {
        let exps: Vec<i32> = m.exps().iter().enumerate().filter(|(i, _)| *i != z).map(|(_, e)| *e).collect();
        Some(exps.into())
    })?)
}

/// The A-variables of a grand space, as a block.
pub fn a_block(rows: usize) -> &'static [&'static str] {
    &A_NAMES[..rows]
}

/// Dominant sector of [`cauchy_kernel`] up to total A-degree `degree`: the
/// u(3) ⊕ u(rank) content of every u(3·rank) irrep ν with at most `rows` parts.
pub fn grand_product<C: Coefficient>(rows: usize, rank: usize, degree: u32) -> Result<MultiSeries<C>, BranchingError> {
    let gf = cauchy_kernel::<C>(rows, rank)?;
    let series = gf.expand(&TruncationPolicy::total_over(i64::from(degree), a_block(rows)))?;
    dominant_sector(&series, &[a_block(rows), &U_NAMES, &V_NAMES[..rank]])
}

fn exps(p: &Partition, len: usize) -> impl Iterator<Item = i32> {
    p.padded(len).into_iter().take(len).map(|e| e as i32)
}

/// [`grand_product`] from Kronecker coefficients of the symmetric group.
pub fn kronecker_series<C: Coefficient>(rows: usize, rank: usize, degree: u32) -> Result<MultiSeries<C>, BranchingError> {
    let space = grand_space(rows, rank)?;
    let mut out = MultiSeries::new(space.clone(), TruncationPolicy::total_over(i64::from(degree), a_block(rows)))?;
    out.add_term(Monomial::one(space.len()), C::one());
    for d in 1..=degree {
        let nus = Partition::bounded(d, d, rows);
        let sigmas = Partition::bounded(d, d, 3);
        let taus = Partition::bounded(d, d, rank);
        for nu in &nus {
            for sigma in &sigmas {
                for tau in &taus {
                    let g = kronecker(sigma, tau, nu)?;
                    if g == 0 {
                        continue;
                    }
                    let m: Vec<i32> = exps(nu, rows).chain(exps(sigma, 3)).chain(exps(tau, rank)).collect();
                    out.add_term(m.into(), C::from_int(g as i64));
                }
            }
        }
    }
    Ok(out)
}
