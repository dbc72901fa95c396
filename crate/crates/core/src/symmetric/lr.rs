use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::partition::{horizontal_strip_successors, Partition};

/// A finite integer combination of Schur functions. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurIndexedSum {
    terms: BTreeMap<Partition, i64>,
}

impl SchurIndexedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, lambda: Partition, c: i64) {
        let slot = self.terms.entry(lambda.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&lambda);
        }
    }

    pub fn coefficient(&self, lambda: &Partition) -> i64 {
        self.terms.get(lambda).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for SchurIndexedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(l, c)| format!("{c} s({l})")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `s_μ · s_ν` expanded in Schur functions.
///
/// Fills λ/μ with ν_1 ones, ν_2 twos, … (each a horizontal strip) and keeps
/// the fillings whose reverse reading word is a lattice word.
pub fn lr_product(mu: &Partition, nu: &Partition) -> SchurIndexedSum {
    let mut out = SchurIndexedSum::new();
    let max_len = mu.length() + nu.length();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); max_len];
    fill(mu, nu, 0, mu.clone(), &mut rows, &mut out);
    out
}

/// A single coefficient `c^λ_{μν}`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> i64 {
    if lambda.order() != mu.order() + nu.order() || !lambda.contains(mu) {
        return 0;
    }
    lr_product(mu, nu).coefficient(lambda)
}

/// `rows[i]` lists the entries placed in row i, left to right.
fn fill(
    mu: &Partition,
    nu: &Partition,
    k: usize,
    shape: Partition,
    rows: &mut Vec<Vec<u32>>,
    out: &mut SchurIndexedSum,
) {
    if k == nu.length() {
        if is_lattice(rows, nu.length()) {
            out.add(shape, 1);
        }
        return;
    }
    let max_len = rows.len();
    for next in horizontal_strip_successors(&shape, nu.part(k), max_len) {
        for i in 0..next.length() {
            for _ in shape.part(i)..next.part(i) {
                rows[i].push(k as u32 + 1);
            }
        }
        // Early pruning: the word read so far must already be lattice.
        if is_lattice(rows, k + 1) {
            fill(mu, nu, k + 1, next.clone(), rows, out);
        }
        for i in 0..next.length() {
            let added = (next.part(i) - shape.part(i)) as usize;
            let keep = rows[i].len() - added;
            rows[i].truncate(keep);
        }
    }
}

/// Reading rows top to bottom, each right to left, every prefix has at least
/// as many i's as (i+1)'s.
fn is_lattice(rows: &[Vec<u32>], letters: usize) -> bool {
    let mut counts = vec![0u32; letters + 2];
    for row in rows {
        for &x in row.iter().rev() {
            let x = x as usize;
            counts[x] += 1;
            if x > 1 && counts[x] > counts[x - 1] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::horizontal_strip_predecessors;
    use crate::series::MultiSeries;
    use crate::symmetric::schur_poly;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn single_boxes() {
        let prod = lr_product(&p("1"), &p("1"));
        assert_eq!(prod.to_string(), "1 s(1,1) + 1 s(2)");
        assert_eq!(lr_coefficient(&p("3,2,1"), &p("2,1"), &p("2,1")), 2);
    }

    #[test]
    fn pieri_matches_strips() {
        for lambda in Partition::up_to(10, usize::MAX) {
            for r in 0..=lambda.part(0) {
                let strips = horizontal_strip_predecessors(&lambda, r);
                for nu in Partition::all_of(lambda.order() - r) {
                    let c = lr_coefficient(&lambda, &Partition::new(vec![r]).unwrap(), &nu);
                    assert_eq!(c, i64::from(strips.contains(&nu)), "λ={lambda} ν={nu}");
                }
            }
        }
    }

    #[test]
    fn product_of_polynomials() {
        let n = 3;
        for (mu, nu) in [("2,1", "1"), ("2", "2,1"), ("1,1", "2,1"), ("3,1", "2,2")] {
            let (mu, nu) = (p(mu), p(nu));
            let lhs = schur_poly::<i64>(&mu, n).mul(&schur_poly(&nu, n));
            let mut rhs: MultiSeries<i64> = MultiSeries::polynomial(lhs.space().clone());
            for (lambda, c) in lr_product(&mu, &nu).terms() {
                rhs = rhs.add(&schur_poly::<i64>(lambda, n).scale(c));
            }
            assert_eq!(lhs, rhs, "μ={mu} ν={nu}");
        }
    }

    fn small_partition() -> impl Strategy<Value = Partition> {
        proptest::collection::vec(0u32..4, 0..4).prop_map(Partition::from_unsorted)
    }

    proptest! {
        #[test]
        fn coefficients_are_symmetric(mu in small_partition(), nu in small_partition()) {
            prop_assert_eq!(lr_product(&mu, &nu), lr_product(&nu, &mu));
        }
    }
}
