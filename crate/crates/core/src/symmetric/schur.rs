use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::SymmetricError;
use crate::partition::{horizontal_strip_predecessors, r_star, Partition};
use crate::scalar::Coefficient;
use crate::series::{Monomial, MultiSeries, VarSpace};

/// The space `x1, …, xn`.
pub fn x_space(n: usize) -> Arc<VarSpace> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    VarSpace::new(&names, None)
}

/// `s_λ(x1, …, xn)` by semistandard tableaux.
pub fn schur_poly<C: Coefficient>(lambda: &Partition, n: usize) -> MultiSeries<C> {
    schur_poly_in(lambda, &x_space(n))
}

/// `s_λ` in all variables of `space`, in order, by semistandard tableaux.
///
/// Tableaux are counted by peeling off the cells holding the largest entry,
/// which form a horizontal strip.
pub fn schur_poly_in<C: Coefficient>(lambda: &Partition, space: &Arc<VarSpace>) -> MultiSeries<C> {
    let n = space.len();
    let mut memo = HashMap::new();
    let terms = tableau_terms::<C>(lambda, n, &mut memo);
    let mut out = MultiSeries::polynomial(space.clone());
    for (exps, c) in terms.iter() {
        let mut m = Monomial::one(n);
        m.exps_mut().copy_from_slice(exps);
        out.add_term(m, c.clone());
    }
    out
}

type Weights<C> = Arc<BTreeMap<Vec<i32>, C>>;

fn tableau_terms<C: Coefficient>(
    lambda: &Partition,
    k: usize,
    memo: &mut HashMap<(Partition, usize), Weights<C>>,
) -> Weights<C> {
    if let Some(hit) = memo.get(&(lambda.clone(), k)) {
        return hit.clone();
    }
    let mut out = BTreeMap::new();
    if lambda.length() <= k {
        if k == 0 {
            out.insert(Vec::new(), C::one());
        } else {
            for r in 0..=lambda.part(0) {
                for mu in horizontal_strip_predecessors(lambda, r) {
                    if mu.length() > k - 1 {
                        continue;
                    }
                    for (exps, c) in tableau_terms::<C>(&mu, k - 1, memo).iter() {
                        let mut e = exps.clone();
                        e.push(r as i32);
                        let slot = out.entry(e).or_insert_with(C::zero);
                        slot.add_assign_ref(c);
                    }
                }
            }
        }
    }
    let out = Arc::new(out);
    memo.insert((lambda.clone(), k), out.clone());
    out
}

/// `s_λ(x1, …, xn)` as the ratio of alternants `a_{λ+δ} / a_δ`, with the
/// Vandermonde divided out one factor `(x_i − x_j)` at a time.
pub fn schur_poly_bialternant<C: Coefficient>(lambda: &Partition, n: usize) -> MultiSeries<C> {
    let space = x_space(n);
    if lambda.length() > n {
        return MultiSeries::polynomial(space);
    }
    let shifted: Vec<i32> = (0..n).map(|j| (lambda.part(j) as usize + n - 1 - j) as i32).collect();
    let mut numerator: BTreeMap<Monomial, C> = BTreeMap::new();
    for (perm, sign) in permutations_with_sign(n) {
        let mut m = Monomial::one(n);
        for (i, &p) in perm.iter().enumerate() {
            m.exps_mut()[i] = shifted[p];
        }
        numerator.insert(m, C::from_int(sign));
    }
    for i in 0..n {
        for j in i + 1..n {
            numerator = divide_by_difference(numerator, i, j);
        }
    }
    MultiSeries::from_terms(space, Default::default(), numerator).expect("unbounded policy")
}

/// Exact quotient of `p` by `x_i − x_j`; panics if the division leaves a remainder.
fn divide_by_difference<C: Coefficient>(p: BTreeMap<Monomial, C>, i: usize, j: usize) -> BTreeMap<Monomial, C> {
    // Remainder keyed by descending x_i exponent so the leading term comes first.
    let mut rest: BTreeMap<(std::cmp::Reverse<i32>, Monomial), C> =
        p.into_iter().map(|(m, c)| ((std::cmp::Reverse(m.get(i)), m), c)).collect();
    let mut quotient = BTreeMap::new();
    while let Some(((_, m), c)) = rest.pop_first() {
        assert!(m.get(i) > 0, "not divisible by x{} - x{}", i + 1, j + 1);
        let mut q = m.clone();
        q.exps_mut()[i] -= 1;
        let mut shifted = q.clone();
        shifted.exps_mut()[j] += 1;
        let key = (std::cmp::Reverse(shifted.get(i)), shifted);
        let slot = rest.entry(key.clone()).or_insert_with(C::zero);
        slot.add_assign_ref(&c);
        if slot.is_zero() {
            rest.remove(&key);
        }
        quotient.insert(q, c);
    }
    quotient
}

/// All permutations of `0..n` with their signs, by Heap's algorithm.
fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![(perm.clone(), 1)];
    let mut c = vec![0; n];
    let mut sign = 1;
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            out.push((perm.clone(), sign));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Weyl dimension of the u(n) irrep λ; 0 when λ has more than n parts.
pub fn schur_dim(lambda: &Partition, n: usize) -> u128 {
    if lambda.length() > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..n {
        for j in i + 1..n {
            num *= u128::from(lambda.part(i) - lambda.part(j)) + (j - i) as u128;
            den *= (j - i) as u128;
        }
    }
    num / den
}

/// Dimension of the covariant gl(1|n) representation λ, summed over the
/// horizontal strips that label its gl(n) components.
pub fn gl_superdimension(lambda: &Partition, n: u32) -> Result<u128, SymmetricError> {
    if lambda.part(1) > n {
        return Err(SymmetricError::NotCovariant { lambda: lambda.clone(), n });
    }
    let mut total = 0;
    for r in r_star(lambda, n)..=lambda.part(0) {
        for nu in horizontal_strip_predecessors(lambda, r) {
            if nu.part(0) <= n {
                total += schur_dim(&nu.conjugate(), n as usize);
            }
        }
    }
    Ok(total)
}
