use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use super::SymmetricError;
use crate::partition::Partition;

/// Irreducible characters of the symmetric group S_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymGroupCharacterTable {
    m: u32,
    partitions: Vec<Partition>,
    index: BTreeMap<Partition, usize>,
    /// `values[irrep][class]`
    values: Vec<Vec<i64>>,
}

impl SymGroupCharacterTable {
    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Partitions of m, used both as irrep labels and as cycle types.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn value(&self, irrep: &Partition, class: &Partition) -> i64 {
        self.values[self.index[irrep]][self.index[class]]
    }

    /// Rows are irreps, columns cycle types, both in the order of [`partitions`](Self::partitions).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("irrep");
        for c in &self.partitions {
            let _ = write!(out, ",\"{c}\"");
        }
        out.push('\n');
        for (i, irrep) in self.partitions.iter().enumerate() {
            let _ = write!(out, "\"{irrep}\"");
            for v in &self.values[i] {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }
}

/// `z_ρ = ∏ i^{m_i} m_i!`, the centralizer order of cycle type ρ.
pub fn z_factor(rho: &Partition) -> u128 {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &part in rho.parts() {
        *counts.entry(part).or_default() += 1;
    }
    counts.iter().map(|(&i, &m)| u128::from(i).pow(m) * (1..=u128::from(m)).product::<u128>()).product()
}

/// Number of permutations with cycle type ρ.
pub fn class_size(rho: &Partition) -> u128 {
    (1..=u128::from(rho.order())).product::<u128>() / z_factor(rho)
}

/// The character table of S_m by the Murnaghan–Nakayama rule, 1 ≤ m ≤ 12.
/// Tables are built once per degree and shared.
pub fn character_table(m: u32) -> Result<Arc<SymGroupCharacterTable>, SymmetricError> {
    if !(1..=12).contains(&m) {
        return Err(SymmetricError::DegreeOutOfRange(m));
    }
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<SymGroupCharacterTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("character table cache poisoned").get(&m) {
        return Ok(t.clone());
    }
    let table = Arc::new(build_table(m));
    cache.lock().expect("character table cache poisoned").entry(m).or_insert(table.clone());
    Ok(table)
}

fn build_table(m: u32) -> SymGroupCharacterTable {
    let partitions = Partition::all_of(m);
    let index = partitions.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut memo = HashMap::new();
    let values = partitions
        .iter()
        .map(|irrep| partitions.iter().map(|class| mn_value(irrep, class.parts(), &mut memo)).collect())
        .collect();
    SymGroupCharacterTable { m, partitions, index, values }
}

/// χ^λ(ρ): strip a rim hook of length ρ_1, recurse on the rest of ρ.
///
/// Rim hooks are bead moves on the beta-set `{λ_i + L − 1 − i}`: moving a bead
/// from b to b − r removes an r-hook, with sign (−1)^(beads strictly between).
fn mn_value(lambda: &Partition, rho: &[u32], memo: &mut HashMap<(Partition, Vec<u32>), i64>) -> i64 {
    if rho.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.clone(), rho.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = rho[0];
    let len = lambda.length() as u32;
    let beads: Vec<u32> = (0..len).map(|i| lambda.part(i as usize) + len - 1 - i).collect();
    let mut total = 0;
    for &b in &beads {
        if b < r || beads.contains(&(b - r)) {
            continue;
        }
        let between = beads.iter().filter(|&&x| x > b - r && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut moved: Vec<u32> = beads.iter().map(|&x| if x == b { b - r } else { x }).collect();
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let k = moved.len() as u32;
        let parts: Vec<u32> = moved.iter().enumerate().map(|(i, &x)| x - (k - 1 - i as u32)).collect();
        let smaller = Partition::new(parts).expect("bead move yields a partition");
        total += sign * mn_value(&smaller, &rho[1..], memo);
    }
    memo.insert(key, total);
    total
}

/// Kronecker coefficient `g_{σ,τ,ν} = Σ_ρ χ^σ_ρ χ^τ_ρ χ^ν_ρ / z_ρ`.
pub fn kronecker(sigma: &Partition, tau: &Partition, nu: &Partition) -> Result<u64, SymmetricError> {
    let m = sigma.order();
    if tau.order() != m || nu.order() != m {
        return Err(SymmetricError::OrderMismatch(format!("{sigma} / {tau} / {nu}")));
    }
    if m == 0 {
        return Ok(1);
    }
    let table = character_table(m)?;
    let factorial: i128 = (1..=i128::from(m)).product();
    let mut sum: i128 = 0;
    for rho in table.partitions() {
        let chi = i128::from(table.value(sigma, rho)) * i128::from(table.value(tau, rho)) * i128::from(table.value(nu, rho));
        sum += chi * class_size(rho) as i128;
    }
    assert_eq!(sum % factorial, 0, "Kronecker sum not divisible by m!");
    Ok(u64::try_from(sum / factorial).expect("Kronecker coefficients are nonnegative"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_tables() {
        let t1 = character_table(1).unwrap();
        assert_eq!(t1.value(&p("1"), &p("1")), 1);
        let t3 = character_table(3).unwrap();
        let row: Vec<i64> = ["1,1,1", "2,1", "3"].iter().map(|c| t3.value(&p("2,1"), &p(c))).collect();
        assert_eq!(row, vec![2, 0, -1]);
        assert!(character_table(0).is_err());
        assert!(character_table(13).is_err());
        assert_eq!(t3.to_csv(), "irrep,\"3\",\"2,1\",\"1,1,1\"\n\"3\",1,1,1\n\"2,1\",-1,0,2\n\"1,1,1\",1,-1,1\n");
    }

    #[test]
    fn orthogonality() {
        for m in 1..=8 {
            let t = character_table(m).unwrap();
            let order: i128 = (1..=i128::from(m)).product();
            for a in t.partitions() {
                for b in t.partitions() {
                    let inner: i128 = t
                        .partitions()
                        .iter()
                        .map(|rho| i128::from(t.value(a, rho)) * i128::from(t.value(b, rho)) * class_size(rho) as i128)
                        .sum();
                    assert_eq!(inner, if a == b { order } else { 0 }, "m={m} {a} {b}");
                }
            }
            // column orthogonality
            for rho in t.partitions() {
                for sigma in t.partitions() {
                    let s: i128 = t.partitions().iter().map(|l| i128::from(t.value(l, rho)) * i128::from(t.value(l, sigma))).sum();
                    assert_eq!(s, if rho == sigma { z_factor(rho) as i128 } else { 0 });
                }
            }
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(&p("1,1,1"), &p("1,1,1"), &p("3")).unwrap(), 1);
        for m in 1..=8 {
            for l in Partition::all_of(m) {
                assert_eq!(kronecker(&l, &l, &Partition::new(vec![m]).unwrap()).unwrap(), 1);
            }
        }
        assert!(kronecker(&p("2"), &p("1"), &p("1")).is_err());
    }

    fn triple() -> impl Strategy<Value = (Partition, Partition, Partition)> {
        (1u32..=8).prop_flat_map(|m| {
            let all = Partition::all_of(m);
            let n = all.len();
            (0..n, 0..n, 0..n).prop_map(move |(a, b, c)| (all[a].clone(), all[b].clone(), all[c].clone()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn kronecker_is_symmetric((s, t, n) in triple()) {
            let g = kronecker(&s, &t, &n).unwrap();
            prop_assert_eq!(g, kronecker(&t, &s, &n).unwrap());
            prop_assert_eq!(g, kronecker(&n, &t, &s).unwrap());
            prop_assert_eq!(g, kronecker(&s, &n, &t).unwrap());
        }
    }
}
