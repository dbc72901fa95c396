//! Integer partitions, Frobenius notation, skew shapes and horizontal strips.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts are not weakly decreasing: {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("Frobenius {0} must be strictly decreasing and of equal length")]
    MalformedFrobenius(&'static str),
    #[error("inner partition {inner} is not contained in {outer}")]
    NotContained { outer: Partition, inner: Partition },
}

/// A weakly decreasing sequence of positive integers (trailing zeros stripped).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, stripping trailing zeros. Rejects increasing parts.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self(parts))
    }

    /// The empty partition.
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Sorts arbitrary parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts).expect("sorted parts")
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// The i-th part (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// |λ|, the sum of the parts.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// ℓ(λ), the number of positive parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parts padded with zeros (or truncated) to exactly `n` entries.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.part(i)).collect()
    }

    /// The transposed Young diagram.
    pub fn conjugate(&self) -> Self {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|i| self.0.iter().take_while(|&&p| p >= i).count() as u32)
            .collect();
        Self(parts)
    }

    /// Containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Number of diagonal cells (Frobenius rank).
    pub fn rank(&self) -> usize {
        self.0.iter().enumerate().take_while(|(i, &p)| p as usize > *i).count()
    }

    /// All partitions of `m`, in reverse lexicographic order.
    pub fn all_of(m: u32) -> Vec<Partition> {
        Self::bounded(m, m, usize::MAX)
    }

    /// Partitions of `m` with largest part ≤ `max_part` and length ≤ `max_len`.
    pub fn bounded(m: u32, max_part: u32, max_len: usize) -> Vec<Partition> {
        fn rec(rest: u32, cap: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if cur.len() == max_len {
                return;
            }
            for part in (1..=cap.min(rest)).rev() {
                cur.push(part);
                rec(rest - part, part, max_len, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, max_part, max_len, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions of order ≤ `max_order` with length ≤ `max_len`.
    pub fn up_to(max_order: u32, max_len: usize) -> Vec<Partition> {
        (0..=max_order)
            .flat_map(|m| Self::bounded(m, m, max_len))
            .collect()
    }

    pub fn frobenius(&self) -> FrobeniusForm {
        FrobeniusForm::from_partition(self)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses `"3,2,2,1,1"`; the empty string and `"0"` give the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Self::new(parts)
    }
}

/// Frobenius coordinates `(a_1 … a_r | b_1 … b_r)`: arm and leg lengths
/// measured from the diagonal cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrobeniusForm {
    arms: Vec<u32>,
    legs: Vec<u32>,
}

impl FrobeniusForm {
    pub fn new(arms: Vec<u32>, legs: Vec<u32>) -> Result<Self, PartitionError> {
        let strict = |v: &[u32]| v.windows(2).all(|w| w[0] > w[1]);
        if arms.len() != legs.len() {
            return Err(PartitionError::MalformedFrobenius("arms and legs"));
        }
        if !strict(&arms) {
            return Err(PartitionError::MalformedFrobenius("arms"));
        }
        if !strict(&legs) {
            return Err(PartitionError::MalformedFrobenius("legs"));
        }
        Ok(Self { arms, legs })
    }

    pub fn from_partition(p: &Partition) -> Self {
        let r = p.rank();
        let conj = p.conjugate();
        let arms = (0..r).map(|i| p.part(i) - i as u32 - 1).collect();
        let legs = (0..r).map(|i| conj.part(i) - i as u32 - 1).collect();
        Self { arms, legs }
    }

    pub fn to_partition(&self) -> Partition {
        let r = self.rank();
        if r == 0 {
            return Partition::empty();
        }
        // Rows below the diagonal block come from the leg lengths.
        let nrows = (self.legs[0] + 1) as usize;
        let parts = (0..nrows)
            .map(|i| {
                if i < r {
                    self.arms[i] + i as u32 + 1
                } else {
                    (0..r).filter(|&j| self.legs[j] as usize + j >= i).count() as u32
                }
            })
            .collect();
        Partition::new(parts).expect("Frobenius coordinates give a partition")
    }

    pub fn arms(&self) -> &[u32] {
        &self.arms
    }

    pub fn legs(&self) -> &[u32] {
        &self.legs
    }

    pub fn rank(&self) -> usize {
        self.arms.len()
    }
}

impl fmt::Display for FrobeniusForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.arms), join(&self.legs))
    }
}

impl FromStr for FrobeniusForm {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once('|')
            .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        let list = |t: &str| -> Result<Vec<u32>, PartitionError> {
            let t = t.trim();
            if t.is_empty() {
                return Ok(Vec::new());
            }
            t.split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| PartitionError::Parse(s.to_string()))
        };
        Self::new(list(a)?, list(b)?)
    }
}

/// A skew diagram `outer − inner`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, PartitionError> {
        if !outer.contains(&inner) {
            return Err(PartitionError::NotContained { outer, inner });
        }
        Ok(Self { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> u32 {
        self.outer.order() - self.inner.order()
    }

    /// At most one cell per column: `inner_j ≥ outer_{j+1}` for every row j.
    pub fn is_horizontal_strip(&self) -> bool {
        (0..self.outer.length()).all(|j| self.inner.part(j) >= self.outer.part(j + 1))
    }
}

/// The shapes η = (a_1 … a_r | a_1+p … a_r+p) of order ≤ `max_order`, each
/// with its sign (−1)^(a_1+…+a_r+r). The empty shape carries sign +1.
pub fn eta_shapes(p: u32, max_order: u32) -> Vec<(Partition, i64)> {
    assert!(p >= 1, "eta shapes need p ≥ 1");
    let mut out = Vec::new();
    // order(η) = 2 Σ a_i + r (p + 1)
    fn rec(
        p: u32,
        max_order: u32,
        below: u32,
        arms: &mut Vec<u32>,
        out: &mut Vec<(Partition, i64)>,
    ) {
        let r = arms.len() as u32;
        let sum: u32 = arms.iter().sum();
        if 2 * sum + r * (p + 1) > max_order {
            return;
        }
        let legs = arms.iter().map(|a| a + p).collect();
        let form = FrobeniusForm::new(arms.clone(), legs).expect("strict arms");
        let sign = if (sum + r) % 2 == 0 { 1 } else { -1 };
        out.push((form.to_partition(), sign));
        for a in 0..below {
            arms.push(a);
            // Arms are chosen in decreasing order, so the next one sits below `a`.
            if 2 * (sum + a) + (r + 1) * (p + 1) <= max_order {
                rec(p, max_order, a, arms, out);
            }
            arms.pop();
        }
    }
    // First arm: any value keeping the order within bounds.
    out.push((Partition::empty(), 1));
    let mut a = 0;
    while 2 * a + (p + 1) <= max_order {
        rec(p, max_order, a, &mut vec![a], &mut out);
        a += 1;
    }
    out.sort_by(|x, y| x.0.order().cmp(&y.0.order()).then_with(|| y.0.cmp(&x.0)));
    out
}

/// All ν ⊆ λ such that λ − ν is a horizontal strip of `r` cells. No filter on
/// ν_1 is applied.
pub fn horizontal_strip_predecessors(lambda: &Partition, r: u32) -> Vec<Partition> {
    let len = lambda.length();
    let mut out = Vec::new();
    fn rec(lambda: &Partition, j: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if j == lambda.length() {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("strip result is a partition"));
            }
            return;
        }
        let hi = lambda.part(j);
        let lo = lambda.part(j + 1);
        // Cells still removable in rows j.. bound the search.
        let capacity: u32 = (j..lambda.length()).map(|i| lambda.part(i) - lambda.part(i + 1)).sum();
        if capacity < left {
            return;
        }
        for nu in (lo..=hi).rev() {
            let removed = hi - nu;
            if removed > left {
                break;
            }
            cur.push(nu);
            rec(lambda, j + 1, left - removed, cur, out);
            cur.pop();
        }
    }
    if len == 0 {
        if r == 0 {
            out.push(Partition::empty());
        }
        return out;
    }
    rec(lambda, 0, r, &mut Vec::with_capacity(len), &mut out);
    out
}

/// All κ ⊇ λ with at most `max_len` parts such that κ − λ is a horizontal
/// strip of `r` cells.
pub fn horizontal_strip_successors(lambda: &Partition, r: u32, max_len: usize) -> Vec<Partition> {
    let rows = (lambda.length() + 1).min(max_len);
    let mut out = Vec::new();
    fn rec(lambda: &Partition, rows: usize, j: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if j == rows {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("strip result is a partition"));
            }
            return;
        }
        let lo = lambda.part(j);
        let hi = if j == 0 { lo + left } else { lambda.part(j - 1).min(lo + left) };
        for kappa in (lo..=hi).rev() {
            cur.push(kappa);
            rec(lambda, rows, j + 1, left - (kappa - lo), cur, out);
            cur.pop();
        }
    }
    if rows < lambda.length() {
        return out;
    }
    rec(lambda, rows, 0, r, &mut Vec::with_capacity(rows), &mut out);
    out
}

/// The smallest strip size giving a non-vanishing term: `max(λ_1 − n, 0)`.
pub fn r_star(lambda: &Partition, n: u32) -> u32 {
    lambda.part(0).saturating_sub(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Cell-by-cell transposition, kept separate from `conjugate`.
    fn transpose_cells(lambda: &Partition) -> Partition {
        let mut cells = Vec::new();
        for (i, &row) in lambda.parts().iter().enumerate() {
            for j in 0..row {
                cells.push((j, i));
            }
        }
        let rows = cells.iter().map(|c| c.0 + 1).max().unwrap_or(0) as usize;
        let mut parts = vec![0u32; rows];
        for (r, _) in cells {
            parts[r as usize] += 1;
        }
        Partition::new(parts).unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(p("5,4,2,2,1").conjugate(), transpose_cells(&p("5,4,2,2,1")));
        assert_eq!(p("5,4,2,2,1").conjugate(), p("5,4,2,2,1"));
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
        assert_eq!(p("1").conjugate(), p("1"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn canonical_form_strips_zeros() {
        assert_eq!(p("3,1,0"), p("3,1"));
        assert_eq!(Partition::new(vec![0, 0]).unwrap(), Partition::empty());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p("3,2,2,1,1").to_string(), "3,2,2,1,1");
    }

    #[test]
    fn frobenius_by_diagonal_measurement() {
        // (2,1): one diagonal cell, arm 1 to the right, leg 1 below.
        let f = p("2,1").frobenius();
        assert_eq!(f.arms(), &[1]);
        assert_eq!(f.legs(), &[1]);
        assert_eq!(f.to_string(), "1|1");
        let f = p("4,4,2").frobenius();
        assert_eq!((f.arms(), f.legs()), (&[3, 2][..], &[2, 1][..]));
        assert_eq!(Partition::empty().frobenius().rank(), 0);
        assert!("1,2|0,1".parse::<FrobeniusForm>().is_err());
        assert!("1|0,1".parse::<FrobeniusForm>().is_err());
        assert_eq!("3,2|2,1".parse::<FrobeniusForm>().unwrap().to_partition(), p("4,4,2"));
    }

    #[test]
    fn eta_shapes_small() {
        let shapes = eta_shapes(2, 4);
        assert_eq!(shapes[0], (Partition::empty(), 1));
        assert!(shapes.contains(&(p("1,1,1"), -1)));
        assert_eq!(shapes.len(), 2);
        assert_eq!(eta_shapes(5, 0), vec![(Partition::empty(), 1)]);
        // p = 1: (0|1), (1|2), (1,0|2,1) up to order 6.
        let shapes = eta_shapes(1, 6);
        let expected = vec![
            (Partition::empty(), 1),
            (p("1,1"), -1),
            (p("2,1,1"), 1),
            (p("3,1,1,1"), -1),
            (p("2,2,2"), -1),
        ];
        assert_eq!(shapes, expected);
    }

    #[test]
    fn eta_shape_signs_follow_arms() {
        for (eta, sign) in eta_shapes(3, 30) {
            let f = eta.frobenius();
            assert!(f.arms().iter().zip(f.legs()).all(|(a, b)| b == &(a + 3)));
            let c: u32 = f.arms().iter().sum::<u32>() + f.rank() as u32;
            assert_eq!(sign, if c % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn strips_of_figure_example() {
        let lambda = p("5,4,2,2,1");
        let strips = horizontal_strip_predecessors(&lambda, 4);
        assert!(strips.contains(&p("5,2,2,1")));
        assert_eq!(horizontal_strip_predecessors(&lambda, 0), vec![lambda.clone()]);
        let mut two_one = horizontal_strip_predecessors(&p("2,1"), 1);
        two_one.sort();
        assert_eq!(two_one, vec![p("1,1"), p("2")]);
    }

    fn brute_force_strips(lambda: &Partition, r: u32) -> Vec<Partition> {
        let mut out: Vec<Partition> = Partition::up_to(lambda.order(), lambda.length())
            .into_iter()
            .filter(|nu| lambda.contains(nu) && nu.order() + r == lambda.order())
            .filter(|nu| {
                let (a, b) = (lambda.conjugate(), nu.conjugate());
                (0..a.length()).all(|c| a.part(c) - b.part(c) <= 1)
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn strips_match_brute_force() {
        for lambda in Partition::up_to(12, usize::MAX) {
            for r in 0..=lambda.part(0) {
                let mut fast = horizontal_strip_predecessors(&lambda, r);
                fast.sort();
                assert_eq!(fast, brute_force_strips(&lambda, r), "λ={lambda} r={r}");
                for nu in &fast {
                    let shape = SkewShape::new(lambda.clone(), nu.clone()).unwrap();
                    assert!(shape.is_horizontal_strip());
                }
            }
        }
    }

    #[test]
    fn successors_invert_predecessors() {
        for nu in Partition::up_to(7, usize::MAX) {
            for r in 0..5 {
                for kappa in horizontal_strip_successors(&nu, r, 4) {
                    assert!(kappa.length() <= 4);
                    assert!(horizontal_strip_predecessors(&kappa, r).contains(&nu), "{kappa} / {nu}");
                }
            }
        }
        for kappa in Partition::up_to(9, 4) {
            for r in 0..=kappa.part(0) {
                for nu in horizontal_strip_predecessors(&kappa, r) {
                    assert!(horizontal_strip_successors(&nu, r, 4).contains(&kappa));
                }
            }
        }
    }

    #[test]
    fn typical_strip_counts() {
        // λ′ = (6,5,3), n = 3: λ_1 = 3 ≥ n with distinct conjugate parts.
        let lambda = p("6,5,3").conjugate();
        let n = 3;
        let rs = r_star(&lambda, n);
        let count = |r| {
            horizontal_strip_predecessors(&lambda, r)
                .into_iter()
                .filter(|nu| nu.part(0) <= n)
                .count()
        };
        assert_eq!(count(rs + 1), n as usize);
        assert_eq!(count(rs + 2), (n * (n - 1) / 2) as usize);
        // λ′ = (7,6,4,3,2,1) with n = 6 and λ_1 = 6.
        let lambda = p("7,6,4,3,2,1").conjugate();
        let n = 6;
        let count = |r| {
            horizontal_strip_predecessors(&lambda, r)
                .into_iter()
                .filter(|nu| nu.part(0) <= n)
                .count()
        };
        assert_eq!(count(1), 6);
        assert_eq!(count(2), 15);
    }

    #[test]
    fn r_star_cases() {
        assert_eq!(r_star(&p("5,2"), 3), 2);
        assert_eq!(r_star(&p("3,1"), 3), 0);
        assert_eq!(r_star(&Partition::empty(), 6), 0);
    }

    fn arb_partition(max_order: u32) -> impl Strategy<Value = Partition> {
        proptest::collection::vec(0u32..=max_order, 0..8).prop_map(move |mut parts| {
            // Squash into a partition with order ≤ max_order.
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let mut left = max_order;
            let parts = parts
                .into_iter()
                .map(|x| {
                    let x = x.min(left);
                    left -= x;
                    x
                })
                .collect::<Vec<_>>();
            Partition::from_unsorted(parts)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn conjugation_is_involution(lambda in arb_partition(40)) {
            prop_assert_eq!(lambda.conjugate().conjugate(), lambda.clone());
            prop_assert_eq!(lambda.conjugate().order(), lambda.order());
        }

        #[test]
        fn frobenius_round_trip(lambda in arb_partition(30)) {
            let f = lambda.frobenius();
            prop_assert_eq!(f.rank(), lambda.rank());
            prop_assert_eq!(f.to_partition(), lambda.clone());
            let text = f.to_string();
            prop_assert_eq!(text.parse::<FrobeniusForm>().unwrap(), f);
            prop_assert_eq!(lambda.to_string().parse::<Partition>().unwrap(), lambda);
        }
    }
}
