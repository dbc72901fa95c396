use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::multi::{into_sorted, merge_hash, restrict_policy, accumulate_hash, MultiSeries};
use super::policy::TruncationPolicy;
use super::rational::RationalGF;
use super::space::{Monomial, VarSpace};
use super::SeriesError;
use crate::scalar::Coefficient;

/// The coefficient of `aux^0` for every auxiliary variable at once, as a
/// series in the remaining variables.
///
/// Each auxiliary variable needs a Laurent window in `policy` that covers the
/// range the expansion can visit; a narrower window is an error rather than a
/// silent truncation.
pub fn constant_term<C: Coefficient>(
    gf: &RationalGF<C>,
    aux: &[&str],
    policy: &TruncationPolicy,
) -> Result<MultiSeries<C>, SeriesError> {
    let mut output = policy.clone();
    for var in aux {
        gf.space().require(var)?;
        let given = *policy.laurent_windows.get(*var).ok_or_else(|| SeriesError::MissingWindow(var.to_string()))?;
        output.laurent_windows.insert(var.to_string(), (0, 0));
        let required = gf.required_window(&output, var, (0, 0))?;
        if given.0 > required.0 || given.1 < required.1 {
            return Err(SeriesError::WindowTooNarrow { var: var.to_string(), required, given });
        }
    }
    gf.expand(&output)?.constant_term_in(aux)
}

/// The windows [`constant_term`] needs for each auxiliary variable under `policy`.
pub fn conservative_windows<C: Coefficient>(
    gf: &RationalGF<C>,
    aux: &[&str],
    policy: &TruncationPolicy,
) -> Result<TruncationPolicy, SeriesError> {
    let mut zeroed = policy.clone();
    for var in aux {
        zeroed.laurent_windows.insert(var.to_string(), (0, 0));
    }
    let mut out = policy.clone();
    for var in aux {
        let (lo, hi) = gf.required_window(&zeroed, var, (0, 0))?;
        out.laurent_windows.insert(var.to_string(), (lo.min(0), hi.max(0)));
    }
    Ok(out)
}

/// The variables of `left` then `right`, minus `shared`, without repeats.
fn output_space(left: &VarSpace, right: &VarSpace, shared: &[&str]) -> Arc<VarSpace> {
    let mut names = Vec::new();
    let mut kinds = Vec::new();
    for space in [left, right] {
        for (i, name) in space.names().iter().enumerate() {
            if !shared.contains(&name.as_str()) && !names.contains(name) {
                names.push(name.clone());
                kinds.push(space.kind(i));
            }
        }
    }
    VarSpace::from_parts(names, kinds)
}

/// Rewrites `policy` for one factor of a pairing: graded variables are made
/// explicit, caps are loosened by how far the other factor can go below zero.
fn side_policy(
    policy: &TruncationPolicy,
    out: &VarSpace,
    side: &VarSpace,
    other_floor: impl Fn(&str) -> i64,
    other_grade_floor: i64,
) -> TruncationPolicy {
    let resolved = policy.resolve(out).expect("output policy validated by caller");
    let graded: Vec<String> = (0..out.len())
        .filter(|&i| resolved.graded[i] && side.index(out.name(i)).is_some())
        .map(|i| out.name(i).to_string())
        .collect();
    let mut p = restrict_policy(policy, side);
    p.graded_vars = Some(graded.into_iter().collect());
    if let Some(total) = p.total_degree_cap.as_mut() {
        *total -= other_grade_floor.min(0);
    }
    for (v, cap) in p.per_variable_caps.iter_mut() {
        *cap -= other_floor(v).min(0);
    }
    p
}

/// `Σ_x [X^x] s1 · [X^x] f2` over the shared variables `X`: the constant term
/// of `s1(X) · f2(X⁻¹)`, computed by matching exponents directly.
///
/// `f2` is expanded with each shared variable capped at its largest exponent
/// in `s1`, so it must be bounded once those caps are in place.
pub fn pair_series<C: Coefficient>(
    s1: &MultiSeries<C>,
    f2: &RationalGF<C>,
    shared: &[&str],
    policy: &TruncationPolicy,
) -> Result<MultiSeries<C>, SeriesError> {
    let out = output_space(s1.space(), f2.space(), shared);
    let resolved = policy.resolve(&out)?;
    let left_shared = shared.iter().map(|v| s1.space().require(v)).collect::<Result<Vec<_>, _>>()?;
    let right_shared = shared.iter().map(|v| f2.space().require(v)).collect::<Result<Vec<_>, _>>()?;

    let Some(max1) = s1.max_exponents() else {
        return MultiSeries::new(out, policy.clone());
    };
    let min1 = s1.min_exponents().expect("nonempty");
    let left_floor = |v: &str| s1.space().index(v).map_or(0, |i| i64::from(min1[i]));
    let left_grade_floor = s1
        .terms()
        .map(|(m, _)| (0..out.len()).filter(|&i| resolved.graded[i]).filter_map(|i| s1.space().index(out.name(i)).map(|j| i64::from(m.get(j)))).sum::<i64>())
        .min()
        .unwrap_or(0);
    let mut right_policy = side_policy(policy, &out, f2.space(), left_floor, left_grade_floor);
    for (k, &i) in left_shared.iter().enumerate() {
        right_policy.per_variable_caps.insert(shared[k].to_string(), i64::from(max1[i]).max(0));
    }
    let s2 = f2.expand(&right_policy)?;
    pair_expanded(s1, &s2, &left_shared, &right_shared, out, policy)
}

/// [`pair_series`] with both sides given as generating functions. Caps in
/// `policy` on shared variables bound the expansion of `f1`.
pub fn pair<C: Coefficient>(
    f1: &RationalGF<C>,
    f2: &RationalGF<C>,
    shared: &[&str],
    policy: &TruncationPolicy,
) -> Result<MultiSeries<C>, SeriesError> {
    let out = output_space(f1.space(), f2.space(), shared);
    let output_policy = restrict_policy(policy, &out);
    let mut left_policy = side_policy(&output_policy, &out, f1.space(), |_| 0, 0);
    for v in shared {
        if let Some(cap) = policy.per_variable_caps.get(*v) {
            left_policy.per_variable_caps.insert(v.to_string(), *cap);
        }
    }
    let s1 = f1.expand(&left_policy)?;
    pair_series(&s1, f2, shared, &output_policy)
}

fn pair_expanded<C: Coefficient>(
    s1: &MultiSeries<C>,
    s2: &MultiSeries<C>,
    left_shared: &[usize],
    right_shared: &[usize],
    out: Arc<VarSpace>,
    policy: &TruncationPolicy,
) -> Result<MultiSeries<C>, SeriesError> {
    type Key = SmallVec<[i32; 8]>;
    let place = |space: &VarSpace| -> Vec<Option<usize>> { space.names().iter().map(|n| out.index(n)).collect() };
    let group = |s: &MultiSeries<C>, shared: &[usize], positions: &[Option<usize>]| {
        let mut groups: FxHashMap<Key, Vec<(Monomial, C)>> = FxHashMap::default();
        for (m, c) in s.terms() {
            let key: Key = shared.iter().map(|&i| m.get(i)).collect();
            let mut rest = Monomial::one(out.len());
            for (e, pos) in m.exps().iter().zip(positions) {
                if let Some(p) = pos {
                    rest.exps_mut()[*p] += e;
                }
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        groups
    };
    let left = group(s1, left_shared, &place(s1.space()));
    let right = group(s2, right_shared, &place(s2.space()));

    let mut result = MultiSeries::new(out.clone(), policy.clone())?;
    let resolved = result.resolved().clone();
    let mut keys: Vec<&Key> = left.keys().filter(|k| right.contains_key(*k)).collect();
    keys.sort();
    let acc = keys
        .par_iter()
        .map(|key| {
            let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
            for (ma, ca) in &left[*key] {
                for (mb, cb) in &right[*key] {
                    let m = ma.mul(mb);
                    if resolved.admits(&m) {
                        accumulate_hash(&mut acc, m, ca.mul_ref(cb));
                    }
                }
            }
            acc
        })
        .reduce(FxHashMap::default, merge_hash);
    for (m, c) in into_sorted(acc) {
        result.add_term(m, c);
    }
    Ok(result)
}

/// The pairing computed literally: invert the shared variables in `f2`,
/// multiply, and take the constant term with conservative windows.
pub fn pair_via_constant_term<C: Coefficient>(
    f1: &RationalGF<C>,
    f2: &RationalGF<C>,
    shared: &[&str],
    policy: &TruncationPolicy,
) -> Result<MultiSeries<C>, SeriesError> {
    let out = output_space(f1.space(), f2.space(), shared);
    let mut names: Vec<String> = out.names().to_vec();
    let mut kinds: Vec<_> = (0..out.len()).map(|i| out.kind(i)).collect();
    for v in shared {
        names.push(v.to_string());
        kinds.push(f1.space().kind(f1.space().require(v)?));
    }
    let union = VarSpace::from_parts(names, kinds);
    let product = f1.embed(union.clone())?.mul(&f2.invert_vars(shared)?.embed(union)?);
    let output_policy = restrict_policy(policy, &out);
    let mut inner = output_policy.clone();
    if inner.total_degree_cap.is_some() && inner.graded_vars.is_none() {
        let resolved = output_policy.resolve(&out)?;
        inner.graded_vars = Some((0..out.len()).filter(|&i| resolved.graded[i]).map(|i| out.name(i).to_string()).collect());
    }
    let inner = conservative_windows(&product, shared, &inner)?;
    constant_term(&product, shared, &inner)?.with_policy(output_policy)
}
