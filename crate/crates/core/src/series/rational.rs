use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::multi::{accumulate, check_bounded, MultiSeries};
use super::policy::{ResolvedPolicy, TruncationPolicy};
use super::space::{Monomial, VarSpace};
use super::SeriesError;
use crate::scalar::Coefficient;

/// A factor `(1 - monomial)^multiplicity` of a denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DenominatorFactor {
    pub monomial: Monomial,
    pub multiplicity: u32,
}

/// `numerator / ∏ (1 - m)^k`, with a Laurent polynomial numerator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalGF<C> {
    space: Arc<VarSpace>,
    numerator: BTreeMap<Monomial, C>,
    denominator: Vec<DenominatorFactor>,
}

impl<C: Coefficient> RationalGF<C> {
    pub fn new<N, D>(space: Arc<VarSpace>, numerator: N, denominator: D) -> Result<Self, SeriesError>
    where
        N: IntoIterator<Item = (Monomial, C)>,
        D: IntoIterator<Item = (Monomial, u32)>,
    {
        let mut terms = BTreeMap::new();
        for (m, c) in numerator {
            assert_eq!(m.exps().len(), space.len(), "numerator monomial has the wrong arity");
            if !c.is_zero() {
                accumulate(&mut terms, m, c);
            }
        }
        let mut gf = Self { space, numerator: terms, denominator: Vec::new() };
        for (m, k) in denominator {
            gf.push_factor(m, k)?;
        }
        Ok(gf)
    }

    pub fn polynomial<N>(space: Arc<VarSpace>, numerator: N) -> Self
    where
        N: IntoIterator<Item = (Monomial, C)>,
    {
        Self::new(space, numerator, []).expect("no denominator to reject")
    }

    pub fn one(space: Arc<VarSpace>) -> Self {
        let n = space.len();
        Self::polynomial(space, [(Monomial::one(n), C::one())])
    }

    /// `1 / ∏ (1 - m)^k`.
    pub fn product_of_geometric<D>(space: Arc<VarSpace>, factors: D) -> Result<Self, SeriesError>
    where
        D: IntoIterator<Item = (Monomial, u32)>,
    {
        let n = space.len();
        Self::new(space, [(Monomial::one(n), C::one())], factors)
    }

    fn push_factor(&mut self, m: Monomial, k: u32) -> Result<(), SeriesError> {
        assert_eq!(m.exps().len(), self.space.len(), "denominator monomial has the wrong arity");
        if m.is_one() {
            return Err(SeriesError::ConstantDenominator(m.display(&self.space).to_string()));
        }
        if k == 0 {
            return Ok(());
        }
        match self.denominator.binary_search_by(|f| f.monomial.cmp(&m)) {
            Ok(i) => self.denominator[i].multiplicity += k,
            Err(i) => self.denominator.insert(i, DenominatorFactor { monomial: m, multiplicity: k }),
        }
        Ok(())
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn numerator(&self) -> &BTreeMap<Monomial, C> {
        &self.numerator
    }

    /// Denominator factors in canonical (sorted, merged) order.
    pub fn denominator(&self) -> &[DenominatorFactor] {
        &self.denominator
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.space == other.space, "generating functions over different spaces");
        let mut numerator = BTreeMap::new();
        for (ma, ca) in &self.numerator {
            for (mb, cb) in &other.numerator {
                accumulate(&mut numerator, ma.mul(mb), ca.mul_ref(cb));
            }
        }
        let mut out = Self { space: self.space.clone(), numerator, denominator: self.denominator.clone() };
        for f in &other.denominator {
            out.push_factor(f.monomial.clone(), f.multiplicity).expect("factors already validated");
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            space: self.space.clone(),
            numerator: self.numerator.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        let numerator = if k.is_zero() {
            BTreeMap::new()
        } else {
            self.numerator.iter().map(|(t, c)| (t.clone(), c.mul_ref(k))).collect()
        };
        Self { space: self.space.clone(), numerator, denominator: self.denominator.clone() }
    }

    /// Replaces variable `i` by the monomial `images[i]` of `target`,
    /// structurally in the numerator and in every denominator factor.
    pub fn substitute_vars(&self, target: Arc<VarSpace>, images: &[Monomial]) -> Result<Self, SeriesError> {
        assert_eq!(images.len(), self.space.len(), "one image per variable");
        let n = target.len();
        let apply = |m: &Monomial| {
            m.exps().iter().zip(images).fold(Monomial::one(n), |acc, (e, image)| acc.mul(&image.pow(*e)))
        };
        Self::new(
            target.clone(),
            self.numerator.iter().map(|(m, c)| (apply(m), c.clone())),
            self.denominator.iter().map(|f| (apply(&f.monomial), f.multiplicity)),
        )
    }

    /// Like [`substitute_vars`](Self::substitute_vars) with images given by
    /// name; variables not listed map to the variable of the same name in
    /// `target`.
    pub fn substitute_named(&self, target: Arc<VarSpace>, images: &[(&str, Monomial)]) -> Result<Self, SeriesError> {
        let mut table = Vec::with_capacity(self.space.len());
        for name in self.space.names() {
            match images.iter().find(|(n, _)| n == name) {
                Some((_, m)) => table.push(m.clone()),
                None => {
                    let mut m = Monomial::one(target.len());
                    m.exps_mut()[target.require(name)?] = 1;
                    table.push(m);
                }
            }
        }
        self.substitute_vars(target, &table)
    }

    /// Moves the generating function into a larger space, matching names.
    pub fn embed(&self, target: Arc<VarSpace>) -> Result<Self, SeriesError> {
        self.substitute_named(target, &[])
    }

    /// Replaces each listed variable by its inverse.
    pub fn invert_vars(&self, vars: &[&str]) -> Result<Self, SeriesError> {
        let n = self.space.len();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let mut m = Monomial::one(n);
            m.exps_mut()[i] = if vars.contains(&self.space.name(i)) { -1 } else { 1 };
            images.push(m);
        }
        for v in vars {
            self.space.require(v)?;
        }
        self.substitute_vars(self.space.clone(), &images)
    }

    /// Power-series expansion within `policy`.
    ///
    /// Variables with a Laurent window are expanded in a wider working window,
    /// sized so that no truncated intermediate term can reach the requested
    /// window. The result does not depend on the order of the factors.
    pub fn expand(&self, policy: &TruncationPolicy) -> Result<MultiSeries<C>, SeriesError> {
        let resolved = policy.resolve(&self.space)?;
        let mut working = resolved.clone();
        for i in 0..self.space.len() {
            if let Some(window) = resolved.windows[i] {
                working.windows[i] = Some(self.working_window(&resolved, i, window)?);
            }
        }
        let mut series = MultiSeries::from_resolved(self.space.clone(), policy.clone(), working);
        for (m, c) in &self.numerator {
            series.add_term(m.clone(), c.clone());
        }
        for f in &self.denominator {
            check_bounded(&self.space, series.resolved(), &f.monomial)?;
        }
        for f in &self.denominator {
            series = series.divide_by_one_minus(&f.monomial, f.multiplicity)?;
        }
        series.with_policy(policy.clone())
    }

    /// The working window that makes exponents of `var` in `output` exact.
    pub fn required_window(
        &self,
        policy: &TruncationPolicy,
        var: &str,
        output: (i64, i64),
    ) -> Result<(i64, i64), SeriesError> {
        let mut policy = policy.clone();
        policy.laurent_windows.insert(var.to_string(), output);
        let resolved = policy.resolve(&self.space)?;
        self.working_window(&resolved, self.space.require(var)?, output)
    }

    fn working_window(&self, policy: &ResolvedPolicy, var: usize, (lo, hi): (i64, i64)) -> Result<(i64, i64), SeriesError> {
        // Total contribution of all factors to the exponent of `var`, split
        // into its largest possible rise and fall.
        let mut rise = Some(0i64);
        let mut fall = Some(0i64);
        for f in &self.denominator {
            let d = i64::from(f.monomial.get(var));
            if d == 0 {
                continue;
            }
            let uses = self.max_uses(policy, &f.monomial);
            let slot = if d > 0 { &mut rise } else { &mut fall };
            *slot = match (*slot, uses) {
                (Some(s), Some(u)) => Some(s + d.abs() * u),
                _ => None,
            };
        }
        let num_lo = self.numerator.keys().map(|m| i64::from(m.get(var))).min().unwrap_or(0);
        let num_hi = self.numerator.keys().map(|m| i64::from(m.get(var))).max().unwrap_or(0);
        let low = [rise.map(|r| lo - r), fall.map(|f| num_lo - f)].into_iter().flatten().max();
        let high = [fall.map(|f| hi + f), rise.map(|r| num_hi + r)].into_iter().flatten().min();
        match (low, high) {
            (Some(l), Some(h)) => Ok((l, h)),
            _ => Err(SeriesError::UnboundedWindow(self.space.name(var).to_string())),
        }
    }

    /// How many times a factor's monomial can occur before the caps are hit.
    fn max_uses(&self, policy: &ResolvedPolicy, m: &Monomial) -> Option<i64> {
        let mut best: Option<i64> = None;
        let mut tighten = |bound: i64| best = Some(best.map_or(bound, |b| b.min(bound)));
        if let Some(total) = policy.total {
            let step = policy.grade(m);
            if step > 0 {
                let floor = self.numerator.keys().map(|t| policy.grade(t)).min().unwrap_or(0);
                tighten(((total - floor) / step).max(0));
            }
        }
        for (i, cap) in policy.caps.iter().enumerate() {
            let step = i64::from(m.get(i));
            if let (Some(cap), true) = (cap, step > 0) {
                let floor = self.numerator.keys().map(|t| i64::from(t.get(i))).min().unwrap_or(0);
                tighten(((cap - floor) / step).max(0));
            }
        }
        best
    }
}

impl<C: Coefficient> fmt::Display for RationalGF<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = MultiSeries::from_terms(self.space.clone(), TruncationPolicy::unbounded(), self.numerator.clone())
            .expect("unbounded policy always resolves");
        write!(f, "({num})")?;
        if self.denominator.is_empty() {
            return Ok(());
        }
        f.write_str(" / (")?;
        for (i, factor) in self.denominator.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "(1 - {})", factor.monomial.display(&self.space))?;
            if factor.multiplicity > 1 {
                write!(f, "^{}", factor.multiplicity)?;
            }
        }
        f.write_str(")")
    }
}

impl<C: Coefficient> fmt::Debug for RationalGF<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalGF[{}]{}", self.space.names().join(","), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp() -> Arc<VarSpace> {
        VarSpace::new(&["J", "z"], Some("z"))
    }

    #[test]
    fn spin_series_of_the_simplest_generating_function() {
        // z^(3/2) / ((1 - zJ)(1 - z^2)) to energy 11/2
        let s = sp();
        let gf = RationalGF::<i64>::new(
            s.clone(),
            [(s.monomial(&[("z", 3)]), 1)],
            [(s.monomial(&[("J", 1), ("z", 2)]), 1), (s.monomial(&[("z", 4)]), 1)],
        )
        .unwrap();
        let series = gf.expand(&TruncationPolicy::unbounded().with_cap("z", 11)).unwrap();
        for (j, e) in [(0, 3), (1, 5), (0, 7), (2, 7), (1, 9), (3, 9), (0, 11), (2, 11), (4, 11)] {
            assert_eq!(series.coefficient_of(&[("J", j), ("z", e)]), 1, "J^{j} z^({e}/2)");
        }
        assert_eq!(series.len(), 9);
    }

    #[test]
    fn cancellation_is_exact() {
        let s = VarSpace::new(&["x"], None);
        let x = s.monomial(&[("x", 1)]);
        let gf = RationalGF::<i64>::new(s.clone(), [(Monomial::one(1), 1), (x.clone(), -1)], [(x, 1)]).unwrap();
        let series = gf.expand(&TruncationPolicy::total(25)).unwrap();
        assert_eq!(series.to_string(), "1");
    }

    #[test]
    fn constant_denominator_is_rejected() {
        let s = sp();
        let err = RationalGF::<i64>::product_of_geometric(s, [(Monomial::one(2), 1)]).unwrap_err();
        assert!(matches!(err, SeriesError::ConstantDenominator(_)));
    }

    #[test]
    fn negative_window_expansion() {
        // 1/((1 - x c)(1 - 1/c)): constant term in c is 1/(1 - x)
        let s = VarSpace::new(&["x", "c"], None);
        let gf = RationalGF::<i64>::product_of_geometric(
            s.clone(),
            [(s.monomial(&[("x", 1), ("c", 1)]), 1), (s.monomial(&[("c", -1)]), 1)],
        )
        .unwrap();
        let policy = TruncationPolicy::total(6).with_window("c", 0, 0);
        assert_eq!(gf.required_window(&policy, "c", (0, 0)).unwrap(), (-6, 6));
        let series = gf.expand(&policy).unwrap();
        assert_eq!(series.len(), 7);
        let both_ways = RationalGF::<i64>::product_of_geometric(
            s.clone(),
            [(s.monomial(&[("c", 1)]), 1), (s.monomial(&[("c", -1)]), 1)],
        )
        .unwrap();
        assert!(matches!(both_ways.expand(&policy), Err(SeriesError::UnboundedWindow(_))));
    }

    #[test]
    fn substitution_and_inversion() {
        let x = VarSpace::new(&["x"], None);
        let z = VarSpace::new(&["z"], Some("z"));
        let gf = RationalGF::<i64>::product_of_geometric(x.clone(), [(x.monomial(&[("x", 1)]), 1)]).unwrap();
        let sub = gf.substitute_vars(z.clone(), &[z.monomial(&[("z", 2)])]).unwrap();
        let direct = RationalGF::<i64>::product_of_geometric(z.clone(), [(z.monomial(&[("z", 2)]), 1)]).unwrap();
        assert_eq!(sub, direct);
        let inv = gf.invert_vars(&["x"]).unwrap();
        assert_eq!(inv.denominator()[0].monomial.exps(), &[-1]);
    }
}
