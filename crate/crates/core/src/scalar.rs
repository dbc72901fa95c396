//! Coefficient rings.
//!
//! Every series, generating function and Schur polynomial in this crate is
//! generic over its coefficient type. The only requirement is an exact
//! commutative ring with checked addition and multiplication; machine
//! integers overflow loudly instead of wrapping, and [`num_bigint::BigInt`]
//! never overflows.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// An exact integer-like coefficient ring.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("coefficient ring cannot represent integer")
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.checked_add(other).unwrap_or_else(|| overflow("addition"))
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.checked_sub(other).unwrap_or_else(|| overflow("subtraction"))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.checked_mul(other).unwrap_or_else(|| overflow("multiplication"))
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Display
        + PartialEq
        + Eq
        + Hash
        + Zero
        + One
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

#[cold]
fn overflow(op: &str) -> ! {
    panic!("coefficient overflow in {op}; use a wider coefficient ring")
}

/// Binomial coefficient C(n, k) in the coefficient ring.
pub fn binomial<C: Coefficient>(n: u64, k: u64) -> C {
    if k > n {
        return C::zero();
    }
    let k = k.min(n - k);
    // Running product stays integral: C(n-k+i, i) at each step.
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * u128::from(n - k + i) / u128::from(i);
    }
    C::from_u128(acc).unwrap_or_else(|| overflow("binomial"))
}
