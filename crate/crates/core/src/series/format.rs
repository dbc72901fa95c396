//! Plain-text serialization of generating functions.
//!
//! ```text
//! vars: J,z
//! energy: z
//! num: 1 0,3
//! den: 1,2 1
//! den: 0,4 1
//! ```
//!
//! Exponent vectors list every variable in `vars` order. Energy exponents are
//! in stored (doubled) units, so `0,3` above is `z^(3/2)`. `den: m k` is the
//! factor `(1 - m)^k`. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;


use super::rational::RationalGF;
use super::space::{Monomial, VarKind, VarSpace};
use super::SeriesError;
use crate::scalar::Coefficient;

fn exps_to_string(m: &Monomial) -> String {
    m.exps().iter().map(i32::to_string).collect::<Vec<_>>().join(",")
}

/// Canonical text form: numerator terms and factors in sorted order.
pub fn write_gf<C: Coefficient>(gf: &RationalGF<C>) -> String {
    let space = gf.space();
    let mut out = String::new();
    let _ = writeln!(out, "vars: {}", space.names().join(","));
    if let Some(e) = space.energy_index() {
        let _ = writeln!(out, "energy: {}", space.name(e));
    }
    for (m, c) in gf.numerator() {
        let _ = writeln!(out, "num: {c} {}", exps_to_string(m));
    }
    for f in gf.denominator() {
        let _ = writeln!(out, "den: {} {}", exps_to_string(&f.monomial), f.multiplicity);
    }
    out
}

pub fn parse_gf<C: Coefficient>(text: &str) -> Result<RationalGF<C>, SeriesError> {
    let mut vars: Option<(usize, Vec<String>)> = None;
    let mut energy: Option<(usize, String)> = None;
    let mut num: Vec<(usize, C, Vec<i32>)> = Vec::new();
    let mut den: Vec<(usize, Vec<i32>, u32)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| SeriesError::Parse { line: line_no, msg };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| err(format!("expected `key: value`, got {line:?}")))?;
        let value = value.trim();
        match key.trim() {
            "vars" => {
                if vars.is_some() {
                    return Err(err("duplicate vars line".into()));
                }
                let names: Vec<String> = value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                vars = Some((line_no, names));
            }
            "energy" => energy = Some((line_no, value.to_string())),
            "num" => {
                let (c, e) = value.split_once(char::is_whitespace).ok_or_else(|| err("expected `num: <coef> <exponents>`".into()))?;
                let c = C::from_str_radix(c, 10).map_err(|_| err(format!("bad coefficient {c:?}")))?;
                num.push((line_no, c, parse_exps(e.trim()).map_err(err)?));
            }
            "den" => {
                let (e, k) = value.rsplit_once(char::is_whitespace).ok_or_else(|| err("expected `den: <exponents> <multiplicity>`".into()))?;
                let k: u32 = k.parse().map_err(|_| err(format!("bad multiplicity {k:?}")))?;
                den.push((line_no, parse_exps(e.trim()).map_err(err)?, k));
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    let (vars_line, names) = vars.ok_or(SeriesError::Parse { line: 0, msg: "missing vars line".into() })?;
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(SeriesError::Parse { line: vars_line, msg: format!("duplicate variable {a}") });
        }
    }
    let mut kinds = vec![VarKind::Plain; names.len()];
    if let Some((line, e)) = energy {
        let i = names.iter().position(|n| *n == e).ok_or(SeriesError::Parse { line, msg: format!("energy variable {e} not in vars") })?;
        kinds[i] = VarKind::Energy;
    }
    let space = VarSpace::from_parts(names, kinds);
    let arity = |line: usize, e: &[i32]| {
        if e.len() == space.len() {
            Ok(Monomial::from_slice(e))
        } else {
            Err(SeriesError::Parse { line, msg: format!("expected {} exponents, got {}", space.len(), e.len()) })
        }
    };
    let numerator = num.iter().map(|(l, c, e)| Ok((arity(*l, e)?, c.clone()))).collect::<Result<Vec<_>, SeriesError>>()?;
    let mut factors = Vec::with_capacity(den.len());
    for (l, e, k) in &den {
        let m = arity(*l, e)?;
        if m.is_one() {
            return Err(SeriesError::Parse { line: *l, msg: "constant denominator factor".into() });
        }
        factors.push((m, *k));
    }
    RationalGF::new(space, numerator, factors)
}

fn parse_exps(s: &str) -> Result<Vec<i32>, String> {
    s.split(',').map(|x| x.trim().parse::<i32>().map_err(|_| format!("bad exponent {x:?}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "vars: J,z\nenergy: z\nnum: 1 0,3\nden: 0,4 1\nden: 1,2 1\n";

    #[test]
    fn round_trip_is_canonical() {
        let gf: RationalGF<i64> = parse_gf(SAMPLE).unwrap();
        assert_eq!(write_gf(&gf), SAMPLE);
        let shuffled = "# comment\nvars: J,z\nden: 1,2 1\n\nnum: 1 0,3\nenergy: z\nden: 0,4 1\n";
        assert_eq!(write_gf(&parse_gf::<i64>(shuffled).unwrap()), SAMPLE);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "vars: J,z\nnum: x 0,1\n";
        assert_eq!(parse_gf::<i64>(bad).unwrap_err(), SeriesError::Parse { line: 2, msg: "bad coefficient \"x\"".into() });
        let short = "vars: J,z\nden: 1 1\n";
        assert!(matches!(parse_gf::<i64>(short), Err(SeriesError::Parse { line: 2, .. })));
        assert!(matches!(parse_gf::<i64>("num: 1 0\n"), Err(SeriesError::Parse { line: 0, .. })));
        assert!(matches!(parse_gf::<i64>("vars: a\nden: 0 1\n"), Err(SeriesError::Parse { line: 2, .. })));
    }
}
