//! Character and spectrum generating functions for the paraboson
//! representations V(p) of osp(1|2n) and the covariant representations V_λ
//! of gl(1|n).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{eta_shapes, horizontal_strip_predecessors, r_star, Partition};
use crate::scalar::Coefficient;
use crate::series::{Monomial, MultiSeries, RationalGF, SeriesError, TruncationPolicy, VarSpace};
use crate::symmetric::{schur_dim, schur_poly_in, x_space};
use crate::Energy;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("rank n = {0} is not supported (n must be 3 or 6)")]
    UnsupportedRank(u32),
    #[error("p must be a positive integer, got {0}")]
    InvalidP(u32),
    #[error("{lambda} is not a covariant label for gl(1|{n}): second part exceeds {n}")]
    NotCovariant { lambda: Partition, n: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn check_rank(n: u32) -> Result<(), CharacterError> {
    match n {
        3 | 6 => Ok(()),
        _ => Err(CharacterError::UnsupportedRank(n)),
    }
}

/// The paraboson Fock representation V(p) of osp(1|2n), lowest weight
/// (p/2, …, p/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OspRep {
    pub n: u32,
    pub p: u32,
}

impl OspRep {
    pub fn new(n: u32, p: u32) -> Result<Self, CharacterError> {
        check_rank(n)?;
        if p == 0 {
            return Err(CharacterError::InvalidP(p));
        }
        Ok(Self { n, p })
    }

    /// p ≥ n: every partition with at most n parts occurs.
    pub fn is_large(&self) -> bool {
        self.p >= self.n
    }

    /// Largest length of a partition occurring in the character.
    pub fn max_length(&self) -> usize {
        self.p.min(self.n) as usize
    }

    /// Bottom energy np/2.
    pub fn ground_energy(&self) -> Energy {
        Energy::new(i64::from(self.n * self.p), 2)
    }
}

impl fmt::Display for OspRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "osp(1|{}) V({})", 2 * self.n, self.p)
    }
}

/// The covariant representation V_λ of gl(1|n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlRep {
    pub n: u32,
    pub lambda: Partition,
}

impl GlRep {
    pub fn new(n: u32, lambda: Partition) -> Result<Self, CharacterError> {
        check_rank(n)?;
        if lambda.part(1) > n {
            return Err(CharacterError::NotCovariant { lambda, n });
        }
        Ok(Self { n, lambda })
    }

    /// Builds the representation from the first parts of λ′. Only these
    /// enter the angular momentum content; λ′ is taken to have at most n
    /// parts.
    pub fn from_conjugate(n: u32, lambda_conj: Partition) -> Result<Self, CharacterError> {
        Self::new(n, lambda_conj.conjugate())
    }

    /// λ′ cut to its first n parts, padded with zeros.
    pub fn conjugate_key(&self) -> Vec<u32> {
        self.lambda.conjugate().padded(self.n as usize).into_iter().take(self.n as usize).collect()
    }

    pub fn r_star(&self) -> u32 {
        r_star(&self.lambda, self.n)
    }

    /// |λ|/(n−1) + r*.
    pub fn ground_energy(&self) -> Energy {
        Energy::new(i64::from(self.lambda.order()), i64::from(self.n - 1)) + Energy::from(i64::from(self.r_star()))
    }

    pub fn level_count(&self) -> u32 {
        self.lambda.part(0).min(self.n) + 1
    }
}

impl fmt::Display for GlRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gl(1|{}) V_({})", self.n, self.lambda)
    }
}

/// A character `(x1⋯xn)^(half_power/2) · gf`. The prefactor is kept apart so
/// that odd p stays exact.
#[derive(Debug, Clone)]
pub struct OspCharacter<C: Coefficient> {
    pub rep: OspRep,
    pub half_power: u32,
    pub gf: RationalGF<C>,
    /// Expansions of `gf` are exact up to this x-degree; `None` for closed forms.
    pub exact_through: Option<u32>,
}

impl<C: Coefficient> OspCharacter<C> {
    /// The generating function with the prefactor multiplied in, when it is
    /// a genuine monomial (even `half_power`).
    pub fn with_integral_prefactor(&self) -> Option<RationalGF<C>> {
        if self.half_power % 2 != 0 {
            return None;
        }
        let n = self.gf.space().len();
        let m = Monomial::from_slice(&vec![(self.half_power / 2) as i32; n]);
        Some(self.gf.mul_monomial(&m))
    }
}

/// `∏ 1/(1 − x_i) ∏_{j<k} 1/(1 − x_j x_k)` over `space`.
fn littlewood_denominator(space: &Arc<VarSpace>) -> Vec<(Monomial, u32)> {
    let n = space.len();
    let mut factors = Vec::new();
    for i in 0..n {
        let mut m = Monomial::one(n);
        m.exps_mut()[i] = 1;
        factors.push((m, 1));
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut m = Monomial::one(n);
            m.exps_mut()[j] = 1;
            m.exps_mut()[k] = 1;
            factors.push((m, 1));
        }
    }
    factors
}

/// E_(0,p) = Σ_η (−1)^(c_η) s_η(x1, …, xn) over shapes of order ≤ `max_order`.
pub fn e_numerator<C: Coefficient>(n: u32, p: u32, max_order: u32) -> MultiSeries<C> {
    let space = x_space(n as usize);
    let mut out = MultiSeries::polynomial(space.clone());
    for (eta, sign) in eta_shapes(p, max_order) {
        if eta.length() > n as usize {
            continue;
        }
        out = out.add(&schur_poly_in::<C>(&eta, &space).scale(&C::from_int(sign)));
    }
    out
}

/// The character of V(p) as `(x1⋯xn)^(p/2) E_(0,p) / (∏(1−x_i) ∏(1−x_j x_k))`.
///
/// p = 1 and p = n − 1 use their closed forms, and p ≥ n has E_(0,p) = 1. In
/// the remaining cases E_(0,p) is summed over shapes of order ≤ `max_order`,
/// which makes expansions exact up to that x-degree.
pub fn osp_char_gf<C: Coefficient>(rep: OspRep, max_order: u32) -> Result<OspCharacter<C>, CharacterError> {
    let space = x_space(rep.n as usize);
    let n = rep.n as usize;
    let one = Monomial::one(n);
    let (gf, exact_through) = if rep.p == 1 {
        let den = (0..n).map(|i| {
            let mut m = one.clone();
            m.exps_mut()[i] = 1;
            (m, 1)
        });
        (RationalGF::product_of_geometric(space.clone(), den)?, None)
    } else if rep.p == rep.n - 1 {
        let top = Monomial::from_slice(&vec![1; n]);
        let num = [(one.clone(), C::one()), (top, -C::one())];
        (RationalGF::new(space.clone(), num, littlewood_denominator(&space))?, None)
    } else if rep.is_large() {
        (RationalGF::product_of_geometric(space.clone(), littlewood_denominator(&space))?, None)
    } else {
        let e = e_numerator::<C>(rep.n, rep.p, max_order);
        (RationalGF::new(space.clone(), e.into_terms(), littlewood_denominator(&space))?, Some(max_order))
    };
    Ok(OspCharacter { rep, half_power: rep.p, gf, exact_through })
}

/// `Σ s_λ(x)` over ℓ(λ) ≤ min(p, n) and |λ| ≤ `degree`, without prefactor:
/// the Schur-sum form of the character.
pub fn osp_char_schur_sum<C: Coefficient>(rep: OspRep, degree: u32) -> MultiSeries<C> {
    let space = x_space(rep.n as usize);
    let mut out = MultiSeries::polynomial(space.clone());
    for lambda in Partition::up_to(degree, rep.max_length()) {
        out = out.add(&schur_poly_in::<C>(&lambda, &space));
    }
    out
}

/// The u(3) representation generating function of V(p) for n = 3, one
/// monomial x^λ per partition with at most min(p, 3) parts, without the
/// prefactor (x1x2x3)^(p/2).
pub fn osp_rep_gf_u3<C: Coefficient>(p: u32) -> Result<OspCharacter<C>, CharacterError> {
    let rep = OspRep::new(3, p)?;
    let space = x_space(3);
    let den = (1..=rep.max_length()).map(|len| {
        let mut m = Monomial::one(3);
        m.exps_mut()[..len].fill(1);
        (m, 1)
    });
    Ok(OspCharacter { rep, half_power: p, gf: RationalGF::product_of_geometric(space, den)?, exact_through: None })
}

/// One energy level and its degeneracy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumLevel {
    #[serde(with = "crate::report::energy_serde")]
    pub energy: Energy,
    pub multiplicity: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub levels: Vec<SpectrumLevel>,
}

impl SpectrumTable {
    /// Consecutive levels one ħω apart.
    pub fn is_equidistant(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].energy - w[0].energy == Energy::from(1))
    }

    pub fn multiplicity_at(&self, energy: Energy) -> Option<u128> {
        self.levels.iter().find(|l| l.energy == energy).map(|l| l.multiplicity)
    }

    pub fn total(&self) -> u128 {
        self.levels.iter().map(|l| l.multiplicity).sum()
    }
}

/// Levels E_k = np/2 + k for k ≤ `kmax`, with μ(E_k) = Σ dim λ over |λ| = k,
/// ℓ(λ) ≤ min(p, n).
pub fn osp_spectrum(rep: OspRep, kmax: u32) -> SpectrumTable {
    let base = rep.ground_energy();
    let levels = (0..=kmax)
        .map(|k| SpectrumLevel {
            energy: base + Energy::from(i64::from(k)),
            multiplicity: Partition::bounded(k, k, rep.max_length())
                .iter()
                .map(|l| schur_dim(l, rep.n as usize))
                .sum(),
        })
        .collect();
    SpectrumTable { levels }
}

/// One term x1^r s_ν′(y) of the gl(1|n) character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlCharTerm {
    pub r: u32,
    pub nu: Partition,
    pub nu_conj: Partition,
}

/// `char V_λ = Σ_r x1^r Σ_ν s_ν′(y)` over horizontal r-strips λ − ν with ℓ(ν′) ≤ n.
pub fn gl_char(rep: &GlRep) -> Vec<GlCharTerm> {
    let mut out = Vec::new();
    for r in rep.r_star()..=rep.lambda.part(0) {
        for nu in horizontal_strip_predecessors(&rep.lambda, r) {
            if nu.part(0) <= rep.n {
                let nu_conj = nu.conjugate();
                out.push(GlCharTerm { r, nu, nu_conj });
            }
        }
    }
    out
}

/// Levels |λ|/(n−1) + r* + k for k = 0..min(λ_1, n); level k collects the
/// u(n) dimensions of the (r* + k)-strip terms.
pub fn gl_energy_levels(rep: &GlRep) -> SpectrumTable {
    let base = rep.ground_energy();
    let terms = gl_char(rep);
    let levels = (0..rep.level_count())
        .map(|k| SpectrumLevel {
            energy: base + Energy::from(i64::from(k)),
            multiplicity: terms
                .iter()
                .filter(|t| t.r == rep.r_star() + k)
                .map(|t| schur_dim(&t.nu_conj, rep.n as usize))
                .sum(),
        })
        .collect();
    SpectrumTable { levels }
}

/// `(x1⋯xn)^(p/2) · series` as a series over x with the energy variable
/// made explicit: every x_i becomes `z` (stored doubled) and the prefactor
/// contributes `z^(np)` in stored units.
pub fn diagonal_energy_series<C: Coefficient>(
    character: &OspCharacter<C>,
    kmax: u32,
) -> Result<MultiSeries<C>, CharacterError> {
    let space = VarSpace::new(&["z"], Some("z"));
    let offset = (character.rep.n * character.half_power) as i64;
    let cap = offset + 2 * i64::from(kmax);
    let images = vec![Monomial::from_slice(&[2]); character.gf.space().len()];
    let gf = character.gf.substitute_vars(space.clone(), &images)?.mul_monomial(&Monomial::from_slice(&[offset as i32]));
    Ok(gf.expand(&TruncationPolicy::unbounded().with_cap("z", cap))?)
}
