//! Checks of the pipeline against every fixture, each reported with the first
//! differing monomial on failure.

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::branching::{
    dimension_gf, dominant_sector, equal_rows_restrict, gl_angular_gf, gl_h, grand_product, osp_pipeline, so3_branching_gf,
    so3_content, BranchingError, OspStages,
};
use crate::characters::{osp_char_gf, osp_rep_gf_u3, CharacterError, GlRep, OspRep};
use crate::fixtures::{self, FixtureError};
use crate::partition::Partition;
use crate::scalar::Coefficient;
use crate::series::{series_equal, Monomial, MultiSeries, RationalGF, SeriesError, TruncationPolicy, VarSpace};
use crate::Coef;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Branching(#[from] BranchingError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("fixture {id}: window {window} has no {what}")]
    Window { id: String, window: String, what: &'static str },
    #[error("no check is registered for fixture {0:?}")]
    NoCheck(String),
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub label: String,
    pub passed: bool,
    /// `equal on N terms` or the first difference.
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct FixtureReport {
    pub id: String,
    pub window: TruncationPolicy,
    pub checks: Vec<CheckOutcome>,
    pub elapsed: Duration,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {} [{}]", self.id, self.window)?;
        for c in &self.checks {
            writeln!(f, "  {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.label, c.detail)?;
        }
        Ok(())
    }
}

fn compare(label: impl Into<String>, a: &MultiSeries<Coef>, b: &MultiSeries<Coef>, window: &TruncationPolicy) -> Result<CheckOutcome, VerifyError> {
    let cmp = series_equal(a, b, window)?;
    Ok(CheckOutcome { label: label.into(), passed: cmp.is_equal(), detail: cmp.to_string() })
}

/// Replaces the numeric bound of `window` by `cap`: the total-degree cap if
/// there is one, otherwise every per-variable cap.
pub fn with_cap(window: &TruncationPolicy, cap: i64) -> TruncationPolicy {
    let mut w = window.clone();
    if w.total_degree_cap.is_some() {
        w.total_degree_cap = Some(cap);
    } else {
        for v in w.per_variable_caps.values_mut() {
            *v = cap;
        }
    }
    w
}

fn degree_of(id: &str, window: &TruncationPolicy) -> Result<u32, VerifyError> {
    window
        .total_degree_cap
        .and_then(|c| u32::try_from(c).ok())
        .ok_or_else(|| VerifyError::Window { id: id.into(), window: window.to_string(), what: "total degree cap" })
}

fn var_cap(id: &str, window: &TruncationPolicy, var: &str) -> Result<i64, VerifyError> {
    window
        .per_variable_caps
        .get(var)
        .copied()
        .ok_or_else(|| VerifyError::Window { id: id.into(), window: window.to_string(), what: "cap on the energy variable" })
}

/// The level `kmax` reaching stored energy exponent `cap`.
fn kmax_for(rep: OspRep, cap: i64) -> u32 {
    u32::try_from((cap - i64::from(rep.n * rep.p)).max(0) / 2).unwrap_or(0)
}

/// `gf` with `var` set to 0; no denominator factor may contain `var`.
pub fn at_zero<C: Coefficient>(gf: &RationalGF<C>, var: &str) -> Result<RationalGF<C>, SeriesError> {
    let space = gf.space();
    let i = space.require(var)?;
    let drop = |m: &Monomial| -> Monomial { m.exps().iter().enumerate().filter(|(k, _)| *k != i).map(|(_, e)| *e).collect::<Vec<_>>().into() };
    let target = space.without(&[i]);
    if let Some(f) = gf.denominator().iter().find(|f| f.monomial.get(i) != 0) {
        return Err(SeriesError::SpaceMismatch(format!("{var} occurs in the factor {}", f.monomial.display(space))));
    }
    let num = gf.numerator().iter().filter(|(m, _)| m.get(i) == 0).map(|(m, c)| (drop(m), c.clone()));
    let den = gf.denominator().iter().map(|f| (drop(&f.monomial), f.multiplicity));
    RationalGF::new(target, num, den)
}

/// `∏ (1 − m)^k` over the denominator of `gf`, as a polynomial.
fn denominator_polynomial<C: Coefficient>(gf: &RationalGF<C>) -> MultiSeries<C> {
    let space = gf.space();
    let mut out = MultiSeries::polynomial(space.clone());
    out.add_term(Monomial::one(space.len()), C::one());
    for f in gf.denominator() {
        let mut factor = MultiSeries::polynomial(space.clone());
        factor.add_term(Monomial::one(space.len()), C::one());
        factor.add_term(f.monomial.clone(), -C::one());
        for _ in 0..f.multiplicity {
            out = out.mul(&factor);
        }
    }
    out
}

fn osp_checks(id: &str, p: u32, window: &TruncationPolicy, gf: &RationalGF<Coef>) -> Result<Vec<CheckOutcome>, VerifyError> {
    let rep = OspRep::new(3, p)?;
    let cap = var_cap(id, window, "z")?;
    let stages: OspStages<Coef> = osp_pipeline(rep, kmax_for(rep, cap))?;
    Ok(vec![compare(format!("{rep} angular generating function"), &stages.angular.series, &gf.expand(window)?, window)?])
}

fn gl_label(rep: &GlRep) -> String {
    format!("{rep}, lambda' key {:?}", rep.conjugate_key())
}

/// The (J, z) series of a gl fixture at the A-exponents of `rep`.
fn gl_slice(expanded: &MultiSeries<Coef>, a_vars: &[&str], rep: &GlRep) -> Result<MultiSeries<Coef>, VerifyError> {
    let key = rep.conjugate_key();
    let space = expanded.space();
    let fixed = a_vars
        .iter()
        .enumerate()
        .map(|(i, v)| Ok((space.require(v)?, key.get(i).copied().unwrap_or(0) as i32)))
        .collect::<Result<Vec<_>, SeriesError>>()?;
    Ok(expanded.slice(&fixed)?.with_policy(TruncationPolicy::unbounded())?)
}

fn check(id: &str, window: &TruncationPolicy, gf: &RationalGF<Coef>) -> Result<Vec<CheckOutcome>, VerifyError> {
    let mut out = Vec::new();
    match id {
        "osp16-p1" => out.extend(osp_checks(id, 1, window, gf)?),
        "osp16-p2" => out.extend(osp_checks(id, 2, window, gf)?),
        "osp16-p3" => {
            out.extend(osp_checks(id, 3, window, gf)?);
            // The same function, shifted by z^(3/2), for p = 4.
            let space = gf.space();
            let shifted = gf.mul_monomial(&space.monomial(&[("z", 3)]));
            let wider = with_cap(window, var_cap(id, window, "z")? + 3);
            out.extend(osp_checks(id, 4, &wider, &shifted)?);
        }
        "u3-char-v2" => {
            let degree = degree_of(id, window)?;
            let character = osp_char_gf::<Coef>(OspRep::new(3, 2)?, degree)?;
            let full = character.with_integral_prefactor().expect("even power for p = 2");
            out.push(compare("osp(1|6) V(2) u(3) character", &full.expand(window)?, &gf.expand(window)?, window)?);
        }
        "u3-rep-v2" => {
            let degree = degree_of(id, window)?;
            let closed = osp_rep_gf_u3::<Coef>(2)?.with_integral_prefactor().expect("even power for p = 2");
            let expected = gf.expand(window)?;
            out.push(compare("closed u(3) representation gf", &closed.expand(window)?, &expected, window)?);
            let character = osp_char_gf::<Coef>(OspRep::new(3, 2)?, degree)?.with_integral_prefactor().expect("even power for p = 2");
            let names: Vec<&str> = character.space().names().iter().map(String::as_str).collect();
            let reduced = dominant_sector(&character.expand(window)?, &[&names])?;
            out.push(compare("dominant sector of the u(3) character", &reduced, &expected, window)?);
        }
        "u2-dim" => {
            out.push(compare("u(2) dimension generating function", &dimension_gf::<Coef>(2)?.expand(window)?, &gf.expand(window)?, window)?);
        }
        "u3-so3" => {
            let degree = degree_of(id, window)?;
            let expected = gf.expand(window)?;
            out.push(compare("G(u1, u2, u3)", &so3_branching_gf::<Coef>().expand(window)?, &expected, window)?);
            let space = expected.space().clone();
            let mut oracle = MultiSeries::new(space.clone(), window.clone())?;
            for sigma in Partition::up_to(degree, 3) {
                for (j, &m) in so3_content(&sigma).iter().enumerate() {
                    if m > 0 {
                        let pairs = [("u1", sigma.part(0) as i32), ("u2", sigma.part(1) as i32), ("u3", sigma.part(2) as i32), ("J", j as i32)];
                        oracle.add_term(space.monomial(&pairs), Coef::from(m));
                    }
                }
            }
            out.push(compare("torus-character so(3) content", &oracle, &expected, window)?);
        }
        "osp112-v1-rep" | "osp112-v1-dim" | "osp112-v1-so3" | "osp112-v2-so3" => {
            let p = if id == "osp112-v2-so3" { 2 } else { 1 };
            let rep = OspRep::new(6, p)?;
            let stages: OspStages<Coef> = osp_pipeline(rep, kmax_for(rep, var_cap(id, window, "z")?))?;
            let expected = gf.expand(window)?;
            let (label, series) = match id {
                "osp112-v1-rep" => ("dominant sector, u(3) + u(2) labels", stages.rep_series.clone()),
                "osp112-v1-dim" => {
                    let dim = stages.dim_series.as_ref().expect("n = 6 has a dimension stage");
                    let det = dim.space().monomial(&[("u1", 1), ("u2", 1), ("u3", 1)]);
                    ("after the u(2) dimension substitution, times u1 u2 u3", dim.mul_monomial(&det))
                }
                _ => ("angular generating function", stages.angular.series.clone()),
            };
            out.push(compare(format!("{rep} {label}"), &series, &expected, window)?);
        }
        "u6-two-row-rep" => {
            let degree = degree_of(id, window)?;
            let expected = gf.expand(window)?;
            out.push(compare("dominant sector of the two-row grand kernel", &grand_product::<Coef>(2, 2, degree)?, &expected, window)?);
            // Read with A^nu -> z^|nu| (stored 2|nu|), shifted by the ground energy 6.
            let rep = OspRep::new(6, 2)?;
            let stages: OspStages<Coef> = osp_pipeline(rep, degree)?;
            let target = VarSpace::new(&["u1", "u2", "u3", "v1", "v2", "z"], Some("z"));
            let images: Vec<Monomial> = gf
                .space()
                .names()
                .iter()
                .map(|n| if n.starts_with('A') { target.monomial(&[("z", 2)]) } else { target.monomial(&[(n.as_str(), 1)]) })
                .collect();
            let read = gf.substitute_vars(target.clone(), &images)?.mul_monomial(&target.monomial(&[("z", 12)]));
            let z_window = TruncationPolicy::unbounded().with_cap("z", 2 * i64::from(degree) + 12);
            out.push(compare("osp(1|12) V(2) u(3) + u(2) labels", &stages.rep_series, &read.expand(&z_window)?, &z_window)?);
        }
        "gl13-angular" => {
            let degree = degree_of(id, window)?;
            let expanded = gf.expand(window)?;
            for lambda in ["3,1", "3,2,2,1,1", "2,1,1", "1", "2", "1,1,1", "2,2", "4,2,1", "3,3,3", "3,3,2,1", "6,3,3,2"] {
                let rep = GlRep::new(3, lambda.parse().expect("literal partition"))?;
                if rep.conjugate_key().iter().sum::<u32>() > degree {
                    continue;
                }
                let pipeline = gl_angular_gf::<Coef>(&rep)?;
                let fixture = gl_slice(&expanded, &["A1", "A2", "A3"], &rep)?;
                out.push(compare(gl_label(&rep), &pipeline.series, &fixture, &TruncationPolicy::unbounded())?);
            }
        }
        "gl16-one-row" => {
            let degree = u32::try_from(var_cap(id, window, "A1")?).unwrap_or(0);
            let h_gf = at_zero(gf, "z")?;
            let h_window = TruncationPolicy::unbounded().with_cap("A1", i64::from(degree));
            let h = gl_h::<Coef>(6, 1, degree)?.h;
            out.push(compare("H(J, A1) as a series", &h, &h_gf.expand(&h_window)?, &h_window)?);
            let lhs = h.with_policy(h_window.clone())?.mul(&denominator_polynomial(&h_gf).embed(h.space().clone(), h_window.clone())?);
            let numerator = MultiSeries::from_terms(h_gf.space().clone(), h_window.clone(), h_gf.numerator().clone())?;
            out.push(compare("H(J, A1) times the denominator is the numerator", &lhs, &numerator, &h_window)?);
            let expanded = gf.expand(window)?;
            for k in 1..=degree {
                let rep = GlRep::new(6, Partition::from_unsorted(vec![1; k as usize]))?;
                let pipeline = gl_angular_gf::<Coef>(&rep)?;
                out.push(compare(gl_label(&rep), &pipeline.series, &gl_slice(&expanded, &["A1"], &rep)?, &TruncationPolicy::unbounded())?);
            }
        }
        "u6-two-row-h" => {
            let h = gl_h::<Coef>(6, 2, degree_of(id, window)?)?.h;
            out.push(compare("H(J, A1, A2)", &h, &gf.expand(window)?, window)?);
            let one_row = h.substitute_named(&[("A2", None)])?;
            let reduced = gf.expand(window)?.substitute_named(&[("A2", None)])?;
            out.push(compare("A2 = 0 specialization", &one_row, &reduced, window)?);
        }
        "u6-equal-two-row-rep" | "u6-equal-three-row-rep" => {
            let rows = if id.contains("three") { 3 } else { 2 };
            let vars = &["A1", "A2", "A3"][..rows];
            let series = equal_rows_restrict(&grand_product::<Coef>(rows, 2, degree_of(id, window)?)?, vars)?;
            out.push(compare(format!("{rows} equal rows, u(3) + u(2) labels"), &series, &gf.expand(window)?, window)?);
        }
        "u6-equal-two-row-h" | "u6-equal-three-row-h" => {
            let rows = if id.contains("three") { 3 } else { 2 };
            let vars = &["A1", "A2", "A3"][..rows];
            let series = equal_rows_restrict(&gl_h::<Coef>(6, rows, degree_of(id, window)?)?.h, vars)?;
            out.push(compare(format!("{rows} equal rows, so(3) content"), &series, &gf.expand(window)?, window)?);
        }
        other => return Err(VerifyError::NoCheck(other.to_string())),
    }
    Ok(out)
}

/// Verifies one fixture on its default window, or on `window` when given.
pub fn verify_fixture(id: &str, window: Option<&TruncationPolicy>) -> Result<FixtureReport, VerifyError> {
    let fixture = fixtures::load(id)?;
    let window = window.cloned().unwrap_or_else(|| fixture.window.clone());
    let gf = fixture.gf::<Coef>()?;
    let start = Instant::now();
    let checks = check(id, &window, &gf)?;
    Ok(FixtureReport { id: id.to_string(), window, checks, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fixtures_verify() {
        for id in ["osp16-p1", "osp16-p3", "u3-rep-v2", "u3-so3", "osp112-v1-so3"] {
            let report = verify_fixture(id, None).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn cap_override_and_unknown_ids() {
        let window: TruncationPolicy = "z<=31".parse().unwrap();
        assert_eq!(with_cap(&window, 9).to_string(), "z<=9");
        let both: TruncationPolicy = "total<=10 over A1,A2; J<=8".parse().unwrap();
        assert_eq!(with_cap(&both, 6).to_string(), "total<=6 over A1,A2; J<=8");
        assert!(matches!(verify_fixture("nope", None), Err(VerifyError::Fixture(FixtureError::Unknown(_)))));
    }

    #[test]
    fn setting_a_variable_to_zero() {
        let s = VarSpace::new(&["A1", "J", "z"], None);
        let gf = RationalGF::<i64>::new(
            s.clone(),
            [(s.monomial(&[]), 1), (s.monomial(&[("A1", 1), ("z", 1)]), 1)],
            [(s.monomial(&[("A1", 2)]), 1)],
        )
        .unwrap();
        let h = at_zero(&gf, "z").unwrap();
        assert_eq!(h.space().names(), ["A1", "J"]);
        assert_eq!(h.numerator().len(), 1);
        assert!(at_zero(&gf, "A1").is_err());
    }
}
