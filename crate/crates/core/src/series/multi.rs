use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::policy::{ResolvedPolicy, TruncationPolicy};
use super::space::{Monomial, VarSpace};
use super::SeriesError;
use crate::scalar::{binomial, Coefficient};

/// Products with fewer term pairs than this run on one thread.
const PARALLEL_THRESHOLD: usize = 1 << 16;

/// A truncated multivariate Laurent series with exact coefficients.
///
/// Every stored monomial is admitted by the policy and no coefficient is zero.
/// Terms iterate in lexicographic order of their exponent vectors.
#[derive(Clone)]
pub struct MultiSeries<C> {
    space: Arc<VarSpace>,
    policy: TruncationPolicy,
    resolved: Arc<ResolvedPolicy>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> MultiSeries<C> {
    pub fn new(space: Arc<VarSpace>, policy: TruncationPolicy) -> Result<Self, SeriesError> {
        let resolved = Arc::new(policy.resolve(&space)?);
        Ok(Self { space, policy, resolved, terms: BTreeMap::new() })
    }

    pub(crate) fn from_resolved(space: Arc<VarSpace>, policy: TruncationPolicy, resolved: ResolvedPolicy) -> Self {
        Self { space, policy, resolved: Arc::new(resolved), terms: BTreeMap::new() }
    }

    /// An untruncated (polynomial or Laurent polynomial) series.
    pub fn polynomial(space: Arc<VarSpace>) -> Self {
        Self::new(space, TruncationPolicy::unbounded()).expect("unbounded policy always resolves")
    }

    pub fn from_terms<I>(space: Arc<VarSpace>, policy: TruncationPolicy, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut s = Self::new(space, policy)?;
        for (m, c) in terms {
            s.add_term(m, c);
        }
        Ok(s)
    }

    pub fn one(space: Arc<VarSpace>, policy: TruncationPolicy) -> Result<Self, SeriesError> {
        let n = space.len();
        Self::from_terms(space, policy, [(Monomial::one(n), C::one())])
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn policy(&self) -> &TruncationPolicy {
        &self.policy
    }

    pub fn resolved(&self) -> &ResolvedPolicy {
        &self.resolved
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }

    pub fn get(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the monomial given by `(name, exponent)` pairs.
    pub fn coefficient_of(&self, pairs: &[(&str, i32)]) -> C {
        self.coefficient(&self.space.monomial(pairs))
    }

    /// Adds `c·m` if the policy admits `m`.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.exps().len(), self.space.len());
        if c.is_zero() || !self.resolved.admits(&m) {
            return;
        }
        accumulate(&mut self.terms, m, c);
    }

    fn check_space(&self, other: &Self) {
        assert!(
            self.space == other.space,
            "series over different spaces: [{}] vs [{}]",
            self.space.names().join(","),
            other.space.names().join(",")
        );
    }

    fn with_terms(&self, terms: BTreeMap<Monomial, C>) -> Self {
        Self { space: self.space.clone(), policy: self.policy.clone(), resolved: self.resolved.clone(), terms }
    }

    /// Re-truncates under a different policy.
    pub fn with_policy(&self, policy: TruncationPolicy) -> Result<Self, SeriesError> {
        let mut out = Self::new(self.space.clone(), policy)?;
        out.terms = self.terms.iter().filter(|(m, _)| out.resolved.admits(m)).map(|(m, c)| (m.clone(), c.clone())).collect();
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_space(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.with_terms(self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return self.with_terms(BTreeMap::new());
        }
        self.with_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(k))).collect())
    }

    /// Product truncated by this series' policy.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_space(other);
        let policy = &*self.resolved;
        let rhs: Vec<(&Monomial, &C)> = other.terms.iter().collect();
        let partial = |chunk: &[(&Monomial, &C)]| {
            let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
            for (ma, ca) in chunk {
                for (mb, cb) in &rhs {
                    let m = ma.mul(mb);
                    if policy.admits(&m) {
                        accumulate_hash(&mut acc, m, ca.mul_ref(cb));
                    }
                }
            }
            acc
        };
        let lhs: Vec<(&Monomial, &C)> = self.terms.iter().collect();
        let acc = if lhs.len().saturating_mul(rhs.len()) < PARALLEL_THRESHOLD {
            partial(&lhs)
        } else {
            let chunk = lhs.len().div_ceil(rayon::current_num_threads() * 4).max(1);
            lhs.par_chunks(chunk).map(partial).reduce(FxHashMap::default, merge_hash)
        };
        self.with_terms(into_sorted(acc))
    }

    /// Multiplies every term by `m`, dropping what leaves the policy.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.with_terms(
            self.terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .filter(|(t, _)| self.resolved.admits(t))
                .collect(),
        )
    }

    /// Multiplies by the binomial series of `(1 - m)^(-k)`.
    ///
    /// Fails when the policy does not bound the powers of `m`, or when `m`
    /// lowers a graded or capped exponent (which would let truncated terms
    /// re-enter the window).
    pub fn divide_by_one_minus(&self, m: &Monomial, k: u32) -> Result<Self, SeriesError> {
        check_bounded(&self.space, &self.resolved, m)?;
        if k == 0 || self.terms.is_empty() {
            return Ok(self.clone());
        }
        let mut acc: FxHashMap<Monomial, C> = self.terms.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        let mut shifted: Vec<(Monomial, C)> = self.terms.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        let mut power: u64 = 0;
        loop {
            power += 1;
            shifted = shifted
                .into_iter()
                .map(|(t, c)| (t.mul(m), c))
                .filter(|(t, _)| self.resolved.admits(t))
                .collect();
            if shifted.is_empty() {
                break;
            }
            let weight: C = binomial(power + u64::from(k) - 1, u64::from(k) - 1);
            for (t, c) in &shifted {
                accumulate_hash(&mut acc, t.clone(), c.mul_ref(&weight));
            }
        }
        Ok(self.with_terms(into_sorted(acc)))
    }

    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        self.with_terms(self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect())
    }

    /// Rewrites every monomial into another space; images that collide are summed.
    pub fn map_monomials<F>(&self, space: Arc<VarSpace>, policy: TruncationPolicy, f: F) -> Result<Self, SeriesError>
    where
        F: Fn(&Monomial) -> Option<Monomial>,
    {
        let mut out = Self::new(space, policy)?;
        for (m, c) in &self.terms {
            if let Some(image) = f(m) {
                out.add_term(image, c.clone());
            }
        }
        Ok(out)
    }

    /// Substitutes each variable by a monomial of `target`, or by 0 when its
    /// image is `None` (terms containing it are dropped).
    pub fn substitute(
        &self,
        target: Arc<VarSpace>,
        policy: TruncationPolicy,
        images: &[Option<Monomial>],
    ) -> Result<Self, SeriesError> {
        assert_eq!(images.len(), self.space.len());
        let n = target.len();
        self.map_monomials(target, policy, |m| {
            let mut out = Monomial::one(n);
            for (e, image) in m.exps().iter().zip(images) {
                match image {
                    Some(image) => out = out.mul(&image.pow(*e)),
                    None if *e != 0 => return None,
                    None => {}
                }
            }
            Some(out)
        })
    }

    /// Substitutes variables by monomials given by name; unnamed variables keep
    /// their identity, and `None` sets a variable to zero.
    pub fn substitute_named(&self, images: &[(&str, Option<Monomial>)]) -> Result<Self, SeriesError> {
        let n = self.space.len();
        let mut table: Vec<Option<Monomial>> = (0..n)
            .map(|i| {
                let mut e = Monomial::one(n);
                e.exps_mut()[i] = 1;
                Some(e)
            })
            .collect();
        for (name, image) in images {
            table[self.space.require(name)?] = image.clone();
        }
        self.substitute(self.space.clone(), self.policy.clone(), &table)
    }

    /// The coefficient series of `∏ var^exp` over the given variables, as a
    /// series in the remaining ones.
    pub fn slice(&self, fixed: &[(usize, i32)]) -> Result<Self, SeriesError> {
        let drop: Vec<usize> = fixed.iter().map(|(i, _)| *i).collect();
        let sub = self.space.without(&drop);
        let policy = restrict_policy(&self.policy, &sub);
        let mut out = Self::new(sub, policy)?;
        for (m, c) in &self.terms {
            if fixed.iter().all(|(i, e)| m.get(*i) == *e) {
                let rest: Vec<i32> = (0..m.exps().len()).filter(|i| !drop.contains(i)).map(|i| m.get(i)).collect();
                out.add_term(rest.into(), c.clone());
            }
        }
        Ok(out)
    }

    /// The part of degree 0 in each named variable, with those variables removed.
    pub fn constant_term_in(&self, vars: &[&str]) -> Result<Self, SeriesError> {
        let fixed = vars.iter().map(|v| Ok((self.space.require(v)?, 0))).collect::<Result<Vec<_>, SeriesError>>()?;
        self.slice(&fixed)
    }

    /// Moves the series into `target`, matching variables by name. Variables
    /// missing from `target` must have exponent 0 throughout.
    pub fn embed(&self, target: Arc<VarSpace>, policy: TruncationPolicy) -> Result<Self, SeriesError> {
        let positions: Vec<Option<usize>> = self.space.names().iter().map(|n| target.index(n)).collect();
        let n = target.len();
        let mut out = Self::new(target, policy)?;
        for (m, c) in &self.terms {
            let mut image = Monomial::one(n);
            for (i, (e, pos)) in m.exps().iter().zip(&positions).enumerate() {
                match pos {
                    Some(p) => image.exps_mut()[*p] += e,
                    None if *e != 0 => {
                        return Err(SeriesError::SpaceMismatch(format!("{} has no counterpart", self.space.name(i))))
                    }
                    None => {}
                }
            }
            out.add_term(image, c.clone());
        }
        Ok(out)
    }

    /// Largest exponent of each variable over all terms (`None` if empty).
    pub fn max_exponents(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next()?.exps().to_vec();
        Some(it.fold(first, |mut acc, m| {
            for (a, e) in acc.iter_mut().zip(m.exps()) {
                *a = (*a).max(*e);
            }
            acc
        }))
    }

    pub fn min_exponents(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next()?.exps().to_vec();
        Some(it.fold(first, |mut acc, m| {
            for (a, e) in acc.iter_mut().zip(m.exps()) {
                *a = (*a).min(*e);
            }
            acc
        }))
    }
}

impl<C: Coefficient> PartialEq for MultiSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.terms == other.terms
    }
}

impl<C: Coefficient> Eq for MultiSeries<C> {}

impl<C: Coefficient> fmt::Debug for MultiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiSeries[{}]({})", self.policy, self)
    }
}

impl<C: Coefficient> fmt::Display for MultiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(&self.space))?;
            } else {
                write!(f, "{abs} {}", m.display(&self.space))?;
            }
        }
        Ok(())
    }
}

/// Rejects a geometric factor whose powers the policy cannot bound.
pub(crate) fn check_bounded(space: &VarSpace, policy: &ResolvedPolicy, m: &Monomial) -> Result<(), SeriesError> {
    if m.is_one() {
        return Err(SeriesError::ConstantDenominator(m.display(space).to_string()));
    }
    let grade = policy.grade(m);
    let mut bounded = false;
    if policy.total.is_some() {
        if grade < 0 {
            return Err(SeriesError::NonMonotoneGrading {
                monomial: m.display(space).to_string(),
                var: "total degree".into(),
            });
        }
        bounded |= grade > 0;
    }
    for (i, &e) in m.exps().iter().enumerate() {
        if policy.caps[i].is_some() {
            if e < 0 {
                return Err(SeriesError::NonMonotoneGrading {
                    monomial: m.display(space).to_string(),
                    var: space.name(i).to_string(),
                });
            }
            bounded |= e > 0;
        }
        if policy.windows[i].is_some() {
            bounded |= e != 0;
        }
    }
    if bounded {
        Ok(())
    } else {
        Err(SeriesError::UnboundedExpansion(m.display(space).to_string()))
    }
}

/// Keeps only the clauses of `policy` that name variables of `space`.
pub(crate) fn restrict_policy(policy: &TruncationPolicy, space: &VarSpace) -> TruncationPolicy {
    let known = |v: &String| space.index(v).is_some();
    TruncationPolicy {
        total_degree_cap: policy.total_degree_cap,
        graded_vars: policy.graded_vars.as_ref().map(|g| g.iter().filter(|v| known(v)).cloned().collect()),
        per_variable_caps: policy.per_variable_caps.iter().filter(|(v, _)| known(v)).map(|(v, c)| (v.clone(), *c)).collect(),
        laurent_windows: policy.laurent_windows.iter().filter(|(v, _)| known(v)).map(|(v, w)| (v.clone(), *w)).collect(),
    }
}

pub(crate) fn accumulate<C: Coefficient>(terms: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            o.get_mut().add_assign_ref(&c);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn accumulate_hash<C: Coefficient>(terms: &mut FxHashMap<Monomial, C>, m: Monomial, c: C) {
    terms.entry(m).and_modify(|x| x.add_assign_ref(&c)).or_insert(c);
}

pub(crate) fn merge_hash<C: Coefficient>(mut a: FxHashMap<Monomial, C>, b: FxHashMap<Monomial, C>) -> FxHashMap<Monomial, C> {
    if a.len() < b.len() {
        return merge_hash(b, a);
    }
    for (m, c) in b {
        accumulate_hash(&mut a, m, c);
    }
    a
}

pub(crate) fn into_sorted<C: Coefficient>(acc: FxHashMap<Monomial, C>) -> BTreeMap<Monomial, C> {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> Arc<VarSpace> {
        VarSpace::new(&["x", "y", "z"], Some("z"))
    }

    #[test]
    fn geometric_series() {
        let s = space();
        let one = MultiSeries::<i64>::one(s.clone(), TruncationPolicy::unbounded().with_cap("z", 10)).unwrap();
        let g = one.divide_by_one_minus(&s.monomial(&[("z", 2)]), 1).unwrap();
        assert_eq!(g.to_string(), "1 + z + z^2 + z^3 + z^4 + z^5");
    }

    #[test]
    fn binomial_series_along_axis() {
        let s = space();
        let one = MultiSeries::<i64>::one(s.clone(), TruncationPolicy::total(12)).unwrap();
        let m = s.monomial(&[("x", 1), ("y", 1)]);
        for k in 1..5u32 {
            let g = one.divide_by_one_minus(&m, k).unwrap();
            for d in 0..=6 {
                let c = g.coefficient(&m.pow(d));
                assert_eq!(c, binomial::<i64>((d as u64) + u64::from(k) - 1, u64::from(k) - 1));
            }
            assert_eq!(g.len(), 7);
        }
    }

    #[test]
    fn unbounded_and_non_monotone_factors_are_rejected() {
        let s = space();
        let one = MultiSeries::<i64>::one(s.clone(), TruncationPolicy::unbounded().with_cap("z", 4)).unwrap();
        assert!(matches!(
            one.divide_by_one_minus(&s.monomial(&[("x", 1)]), 1),
            Err(SeriesError::UnboundedExpansion(_))
        ));
        assert!(matches!(
            one.divide_by_one_minus(&s.monomial(&[("x", 1), ("z", -1)]), 1),
            Err(SeriesError::NonMonotoneGrading { .. })
        ));
        assert!(matches!(one.divide_by_one_minus(&Monomial::one(3), 1), Err(SeriesError::ConstantDenominator(_))));
    }

    #[test]
    fn parallel_and_sequential_products_agree() {
        let s = space();
        let policy = TruncationPolicy::total(120);
        let one = MultiSeries::<i128>::one(s.clone(), policy).unwrap();
        let a = one
            .divide_by_one_minus(&s.monomial(&[("x", 1)]), 2)
            .unwrap()
            .divide_by_one_minus(&s.monomial(&[("y", 1), ("z", 1)]), 1)
            .unwrap();
        let b = one.divide_by_one_minus(&s.monomial(&[("x", 1), ("y", 1)]), 3).unwrap();
        let big = a.mul(&b);
        let small = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| a.mul(&b));
        assert!(a.len() * b.len() >= PARALLEL_THRESHOLD);
        assert_eq!(big, small);
    }

    #[test]
    fn slices_and_substitution() {
        let s = space();
        let p = MultiSeries::<i64>::from_terms(
            s.clone(),
            TruncationPolicy::unbounded(),
            [(s.monomial(&[("x", 1), ("y", 2)]), 3), (s.monomial(&[("y", 2), ("z", 2)]), -1), (s.monomial(&[]), 5)],
        )
        .unwrap();
        let sl = p.slice(&[(1, 2)]).unwrap();
        assert_eq!(sl.to_string(), "-z + 3 x");
        let y_zero = p.substitute_named(&[("y", None)]).unwrap();
        assert_eq!(y_zero.to_string(), "5");
        let diag = p.substitute_named(&[("x", Some(s.monomial(&[("y", 1)])))]).unwrap();
        assert_eq!(diag.coefficient_of(&[("y", 3)]), 3);
    }
}
