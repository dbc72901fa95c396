use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{surviving_policy, BranchingError};
use crate::scalar::Coefficient;
use crate::series::{conservative_windows, constant_term, Monomial, MultiSeries, RationalGF, TruncationPolicy, VarKind, VarSpace};

/// The expansion of `∏_{i<j} (1 − η_j/η_i)` in m variables as
/// `(wρ − ρ, sign w)` over all permutations w.
pub fn weyl_terms(m: usize) -> Vec<(Vec<i32>, i64)> {
    let rho: Vec<i32> = (0..m).rev().map(|i| i as i32).collect();
    let mut out = Vec::new();
    let mut used = vec![false; m];
    let mut cur = Vec::with_capacity(m);
    fn rec(rho: &[i32], used: &mut [bool], cur: &mut Vec<i32>, out: &mut Vec<(Vec<i32>, i64)>) {
        if cur.len() == rho.len() {
            let inversions = (0..cur.len()).flat_map(|i| (i + 1..cur.len()).map(move |j| (i, j))).filter(|&(i, j)| cur[i] < cur[j]).count();
            let shift = cur.iter().zip(rho).map(|(a, r)| a - r).collect();
            out.push((shift, if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..rho.len() {
            if !used[k] {
                used[k] = true;
                cur.push(rho[k]);
                rec(rho, used, cur, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    rec(&rho, &mut used, &mut cur, &mut out);
    out
}

/// `∏_{i<j} (1 − η_j/η_i)` over the block, as a polynomial in `space`.
pub fn weyl_factor<C: Coefficient>(space: &Arc<VarSpace>, block: &[&str]) -> Result<MultiSeries<C>, BranchingError> {
    let idx = block.iter().map(|v| space.require(v)).collect::<Result<Vec<_>, _>>()?;
    let mut out = MultiSeries::polynomial(space.clone());
    for (shift, sign) in weyl_terms(block.len()) {
        let mut m = Monomial::one(space.len());
        for (i, s) in idx.iter().zip(shift) {
            m.exps_mut()[*i] = s;
        }
        out.add_term(m, C::from_int(sign));
    }
    Ok(out)
}

/// Whether the exponents of `m` are weakly decreasing along each block.
pub fn is_dominant_in(m: &Monomial, blocks: &[Vec<usize>]) -> bool {
    blocks.iter().all(|b| b.windows(2).all(|w| m.get(w[0]) >= m.get(w[1])))
}

/// Shifts `wρ − ρ` (with sign) that move the block part `t` of a term into
/// the dominant cone, i.e. make `t + wρ` strictly decreasing.
fn dominant_shifts(t: &[i32]) -> Vec<(Vec<i32>, i64)> {
    let m = t.len();
    let mut out = Vec::new();
    let mut used = vec![false; m];
    let mut cur: Vec<i32> = Vec::with_capacity(m);
    fn rec(t: &[i32], used: &mut [bool], cur: &mut Vec<i32>, out: &mut Vec<(Vec<i32>, i64)>) {
        let m = t.len();
        let i = cur.len();
        if i == m {
            let inversions = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).filter(|&(a, b)| cur[a] < cur[b]).count();
            let shift = cur.iter().enumerate().map(|(k, a)| a - (m - 1 - k) as i32).collect();
            out.push((shift, if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..m {
            let a = (m - 1 - k) as i32;
            if used[k] || (i > 0 && t[i - 1] + cur[i - 1] <= t[i] + a) {
                continue;
            }
            used[k] = true;
            cur.push(a);
            rec(t, used, cur, out);
            cur.pop();
            used[k] = false;
        }
    }
    rec(t, &mut used, &mut cur, &mut out);
    out
}

fn block_indices(space: &VarSpace, blocks: &[&[&str]]) -> Result<Vec<Vec<usize>>, BranchingError> {
    blocks.iter().map(|b| b.iter().map(|v| space.require(v).map_err(Into::into)).collect()).collect()
}

/// Rejects policies under which multiplying by a Weyl factor does not commute
/// with truncation: block variables must be uncapped, unwindowed and either
/// all graded or all ungraded.
fn check_blocks(series_policy: &TruncationPolicy, space: &VarSpace, blocks: &[Vec<usize>]) -> Result<(), BranchingError> {
    let resolved = series_policy.resolve(space)?;
    for b in blocks {
        let name = || b.iter().map(|&i| space.name(i)).collect::<Vec<_>>().join(",");
        if b.iter().any(|&i| resolved.caps[i].is_some() || resolved.windows[i].is_some()) {
            return Err(BranchingError::BlockPolicy { block: name(), reason: "capped or windowed block variable".into() });
        }
        if b.iter().any(|&i| resolved.graded[i] != resolved.graded[b[0]]) {
            return Err(BranchingError::BlockPolicy { block: name(), reason: "partially graded block".into() });
        }
    }
    Ok(())
}

/// The representation content of a character series: the part of
/// `series · ∏_blocks ∏_{i<j}(1 − η_j/η_i)` whose exponents are weakly
/// decreasing in every block. A character Σ m_λ s_λ becomes Σ m_λ η^λ.
///
/// Only the dominant products are formed: for each term, the Weyl shifts
/// landing in the dominant cone are enumerated block by block.
pub fn dominant_sector<C: Coefficient>(series: &MultiSeries<C>, blocks: &[&[&str]]) -> Result<MultiSeries<C>, BranchingError> {
    let space = series.space().clone();
    let idx = block_indices(&space, blocks)?;
    check_blocks(series.policy(), &space, &idx)?;
    let terms: Vec<(&Monomial, &C)> = series.terms().collect();
    let resolved = series.resolved();
    let partial = |chunk: &[(&Monomial, &C)]| {
        let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
        for (t, c) in chunk {
            let mut products: Vec<(Monomial, i64)> = vec![((*t).clone(), 1)];
            for b in &idx {
                let part: Vec<i32> = b.iter().map(|&i| t.get(i)).collect();
                let shifts = dominant_shifts(&part);
                if shifts.is_empty() {
                    products.clear();
                    break;
                }
                products = products
                    .into_iter()
                    .flat_map(|(m, s)| {
                        shifts.iter().map(move |(shift, sign)| {
                            let mut m = m.clone();
                            for (&i, d) in b.iter().zip(shift) {
                                m.exps_mut()[i] += d;
                            }
                            (m, s * sign)
                        })
                    })
                    .collect();
            }
            for (m, sign) in products {
                if resolved.admits(&m) {
                    let v = c.mul_ref(&C::from_int(sign));
                    acc.entry(m).and_modify(|x| x.add_assign_ref(&v)).or_insert(v);
                }
            }
        }
        acc
    };
    let chunk = terms.len().div_ceil(rayon::current_num_threads() * 4).max(64);
    let acc = terms
        .par_chunks(chunk)
        .map(partial)
        .reduce(FxHashMap::default, |mut a, b| {
            for (m, c) in b {
                a.entry(m).and_modify(|x| x.add_assign_ref(&c)).or_insert(c);
            }
            a
        });
    let mut out = MultiSeries::new(space, series.policy().clone())?;
    let mut sorted: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    for (m, c) in sorted {
        out.add_term(m, c);
    }
    Ok(out)
}

/// [`dominant_sector`] by the constant-term route: multiply by the Weyl
/// factors, substitute η_1 = c_1 η_1, η_i = c_i η_i / c_(i−1), η_m = η_m / c_(m−1)
/// in each block, multiply by ∏ 1/(1 − c⁻¹) and take the constant term in all
/// c's. The auxiliary variables are named `c_<variable>`.
pub fn dominant_sector_literal<C: Coefficient>(
    gf: &RationalGF<C>,
    blocks: &[&[&str]],
    policy: &TruncationPolicy,
) -> Result<MultiSeries<C>, BranchingError> {
    let space = gf.space().clone();
    let idx = block_indices(&space, blocks)?;
    check_blocks(policy, &space, &idx)?;

    let mut weyl = MultiSeries::<C>::one(space.clone(), TruncationPolicy::unbounded())?;
    for b in blocks {
        weyl = weyl.mul(&weyl_factor(&space, b)?);
    }
    let with_weyl = gf.mul(&RationalGF::polynomial(space.clone(), weyl.into_terms()));

    let mut names: Vec<String> = space.names().to_vec();
    let mut kinds: Vec<VarKind> = (0..space.len()).map(|i| space.kind(i)).collect();
    let mut aux = Vec::new();
    for b in blocks {
        for v in &b[..b.len() - 1] {
            aux.push(format!("c_{v}"));
        }
    }
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
    for (b, block) in idx.iter().zip(blocks) {
        for (k, &i) in b.iter().enumerate() {
            if k + 1 < b.len() {
                images[i].exps_mut()[wide.require(&format!("c_{}", block[k]))?] += 1;
            }
            if k > 0 {
                images[i].exps_mut()[wide.require(&format!("c_{}", block[k - 1]))?] -= 1;
            }
        }
    }
    let substituted = with_weyl.substitute_vars(wide.clone(), &images)?;
    let geometric = RationalGF::product_of_geometric(
        wide.clone(),
        aux.iter().map(|c| (wide.monomial(&[(c.as_str(), -1)]), 1)),
    )?;
    let full = substituted.mul(&geometric);

    let inner = surviving_policy(policy, &space, &[])?;
    let aux_refs: Vec<&str> = aux.iter().map(String::as_str).collect();
    let windowed = conservative_windows(&full, &aux_refs, &inner)?;
    Ok(constant_term(&full, &aux_refs, &windowed)?.with_policy(policy.clone())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;
    use crate::series::series_equal;
    use crate::symmetric::{schur_poly, x_space};

    #[test]
    fn weyl_terms_of_two_and_three() {
        let mut t2 = weyl_terms(2);
        t2.sort();
        assert_eq!(t2, vec![(vec![-1, 1], -1), (vec![0, 0], 1)]);
        let t3 = weyl_terms(3);
        assert_eq!(t3.len(), 6);
        assert_eq!(t3.iter().map(|(_, s)| s).sum::<i64>(), 0);
    }

    #[test]
    fn weyl_factor_is_the_product() {
        let s = x_space(3);
        let w: MultiSeries<i64> = weyl_factor(&s, &["x1", "x2", "x3"]).unwrap();
        let pol = TruncationPolicy::unbounded();
        let mut direct = MultiSeries::<i64>::one(s.clone(), pol.clone()).unwrap();
        for (a, b) in [("x1", "x2"), ("x1", "x3"), ("x2", "x3")] {
            let f = MultiSeries::from_terms(s.clone(), pol.clone(), [(s.monomial(&[]), 1), (s.monomial(&[(b, 1), (a, -1)]), -1)]).unwrap();
            direct = direct.mul(&f);
        }
        assert_eq!(w, direct);
    }

    #[test]
    fn a_schur_polynomial_collapses_to_its_leading_monomial() {
        let blocks: &[&[&str]] = &[&["x1", "x2", "x3"]];
        for lambda in Partition::up_to(6, 3) {
            let s: MultiSeries<i64> = schur_poly(&lambda, 3);
            let d = dominant_sector(&s, blocks).unwrap();
            let terms: Vec<_> = d.terms().map(|(m, c)| (m.exps().to_vec(), *c)).collect();
            let expected: Vec<i32> = lambda.padded(3).iter().map(|&e| e as i32).collect();
            assert_eq!(terms, vec![(expected, 1)], "λ={lambda}");
        }
    }

    fn char_gf_v2() -> RationalGF<i64> {
        let s = x_space(3);
        let top = s.monomial(&[("x1", 1), ("x2", 1), ("x3", 1)]);
        let num = [(top.clone(), 1), (top.pow(2), -1)];
        let den = [
            (s.monomial(&[("x1", 1)]), 1),
            (s.monomial(&[("x2", 1)]), 1),
            (s.monomial(&[("x3", 1)]), 1),
            (s.monomial(&[("x1", 1), ("x2", 1)]), 1),
            (s.monomial(&[("x1", 1), ("x3", 1)]), 1),
            (s.monomial(&[("x2", 1), ("x3", 1)]), 1),
        ];
        RationalGF::new(s, num, den).unwrap()
    }

    #[test]
    fn worked_example_reduces_to_the_representation_gf() {
        let s = x_space(3);
        let expected = RationalGF::new(
            s.clone(),
            [(s.monomial(&[("x1", 1), ("x2", 1), ("x3", 1)]), 1i64)],
            [(s.monomial(&[("x1", 1)]), 1), (s.monomial(&[("x1", 1), ("x2", 1)]), 1)],
        )
        .unwrap();
        let window = TruncationPolicy::total(12);
        let blocks: &[&[&str]] = &[&["x1", "x2", "x3"]];
        let fast = dominant_sector(&char_gf_v2().expand(&window).unwrap(), blocks).unwrap();
        let want = expected.expand(&window).unwrap();
        assert!(series_equal(&fast, &want, &window).unwrap().is_equal());
        let literal = dominant_sector_literal(&char_gf_v2(), blocks, &TruncationPolicy::total(9)).unwrap();
        let cmp = series_equal(&literal, &want, &TruncationPolicy::total(9)).unwrap();
        assert!(cmp.is_equal(), "{cmp}");
    }

    #[test]
    fn block_policy_is_checked() {
        let s = x_space(2);
        let series = MultiSeries::<i64>::one(s, TruncationPolicy::unbounded().with_cap("x1", 3)).unwrap();
        assert!(matches!(dominant_sector(&series, &[&["x1", "x2"]]), Err(BranchingError::BlockPolicy { .. })));
    }
}
