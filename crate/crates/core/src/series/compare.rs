use std::fmt;

use super::multi::MultiSeries;
use super::policy::TruncationPolicy;
use super::space::Monomial;
use super::SeriesError;
use crate::scalar::Coefficient;

/// The lexicographically least monomial on which two series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Difference<C> {
    pub monomial: Monomial,
    /// The monomial rendered against the compared space, e.g. `J^2 z^(7/2)`.
    pub rendered: String,
    pub left: C,
    pub right: C,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison<C> {
    /// Equal on the window; `terms` counts the nonzero coefficients compared.
    Equal { terms: usize },
    Different(Difference<C>),
}

impl<C> Comparison<C> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal { .. })
    }
}

impl<C: fmt::Display> fmt::Display for Comparison<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Equal { terms } => write!(f, "equal on {terms} terms"),
            Comparison::Different(d) => {
                write!(f, "first difference at {}: {} vs {}", d.rendered, d.left, d.right)
            }
        }
    }
}

/// Coefficient-exact comparison of two series on `window`.
///
/// The right-hand series may list its variables in a different order; they
/// are matched by name.
pub fn series_equal<C: Coefficient>(
    a: &MultiSeries<C>,
    b: &MultiSeries<C>,
    window: &TruncationPolicy,
) -> Result<Comparison<C>, SeriesError> {
    let a = a.with_policy(window.clone())?;
    let b = if b.space() == a.space() {
        b.with_policy(window.clone())?
    } else {
        if b.space().len() != a.space().len() {
            return Err(SeriesError::SpaceMismatch(format!(
                "[{}] vs [{}]",
                a.space().names().join(","),
                b.space().names().join(",")
            )));
        }
        b.embed(a.space().clone(), window.clone())?
    };
    let mut left = a.terms().peekable();
    let mut right = b.terms().peekable();
    let mut terms = 0;
    loop {
        let diff = match (left.peek(), right.peek()) {
            (None, None) => return Ok(Comparison::Equal { terms }),
            (Some((ma, ca)), Some((mb, cb))) if ma == mb => {
                if ca != cb {
                    Some(((*ma).clone(), (*ca).clone(), (*cb).clone()))
                } else {
                    terms += 1;
                    left.next();
                    right.next();
                    None
                }
            }
            (Some((ma, ca)), Some((mb, _))) if ma < mb => Some(((*ma).clone(), (*ca).clone(), C::zero())),
            (Some((ma, ca)), None) => Some(((*ma).clone(), (*ca).clone(), C::zero())),
            (_, Some((mb, cb))) => Some(((*mb).clone(), C::zero(), (*cb).clone())),
        };
        if let Some((monomial, left, right)) = diff {
            let rendered = monomial.display(a.space()).to_string();
            return Ok(Comparison::Different(Difference { monomial, rendered, left, right }));
        }
    }
}
