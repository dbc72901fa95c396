use super::diagram::So3Gf;
use super::dominant::dominant_sector;
use super::so3::{dim_substitute, so3_extract, U_NAMES, V_NAMES};
use super::BranchingError;
use crate::characters::{osp_char_gf, osp_rep_gf_u3, OspRep};
use crate::scalar::Coefficient;
use crate::series::{Monomial, MultiSeries, TruncationPolicy, VarSpace};

/// Every stage of the osp(1|2n) V(p) computation, truncated at level `kmax`
/// (energies up to np/2 + kmax).
///
/// `rep_series` is the u(3) (n = 3) or u(3) ⊕ u(2) (n = 6) content with the
/// energy prefactor z^(np/2) included and determinant powers of u(3) and u(2)
/// left out; neither changes the so(3) content or u(2) dimensions.
#[derive(Debug, Clone)]
pub struct OspStages<C: Coefficient> {
    pub rep: OspRep,
    pub kmax: u32,
    pub rep_series: MultiSeries<C>,
    /// After replacing u(2) labels by dimensions (n = 6 only).
    pub dim_series: Option<MultiSeries<C>>,
    pub angular: So3Gf<C>,
}

/// The truncation cap on the stored energy exponent.
pub fn energy_cap(rep: OspRep, kmax: u32) -> i64 {
    i64::from(rep.n * rep.p + 2 * kmax)
}

/// n = 3 with any p, or n = 6 with p ∈ {1, 2}.
pub fn osp_pipeline<C: Coefficient>(rep: OspRep, kmax: u32) -> Result<OspStages<C>, BranchingError> {
    if rep.n == 6 && rep.p >= 3 {
        return Err(BranchingError::Unsupported(format!("{rep}: osp(1|12) is only handled for p = 1, 2")));
    }
    let prefactor = (rep.n * rep.p) as i32;
    let policy = TruncationPolicy::unbounded().with_cap("z", energy_cap(rep, kmax));
    let (rep_series, dim_series) = if rep.n == 3 {
        let space = VarSpace::new(&["u1", "u2", "u3", "z"], Some("z"));
        let images: Vec<Monomial> = U_NAMES.iter().map(|u| space.monomial(&[(u, 1), ("z", 2)])).collect();
        let gf = osp_rep_gf_u3::<C>(rep.p)?.gf.substitute_vars(space.clone(), &images)?;
        let series = gf.mul_monomial(&space.monomial(&[("z", prefactor)])).expand(&policy)?;
        (series, None)
    } else {
        let space = VarSpace::new(&["u1", "u2", "u3", "v1", "v2", "z"], Some("z"));
        let mut images = Vec::with_capacity(6);
        for u in &U_NAMES {
            for v in &V_NAMES {
                images.push(space.monomial(&[(u, 1), (v, 1), ("z", 2)]));
            }
        }
        let character = osp_char_gf::<C>(rep, kmax)?;
        let gf = character.gf.substitute_vars(space.clone(), &images)?;
        let series = gf.mul_monomial(&space.monomial(&[("z", prefactor)])).expand(&policy)?;
        let rep_series = dominant_sector(&series, &[&U_NAMES, &V_NAMES])?;
        let dim = dim_substitute(&rep_series)?;
        (rep_series, Some(dim))
    };
    let angular = so3_extract(dim_series.as_ref().unwrap_or(&rep_series))?;
    Ok(OspStages { rep, kmax, rep_series, dim_series, angular: So3Gf { series: angular, offset: 0.into() } })
}

/// The (z, J) generating function of V(p) up to level `kmax`.
pub fn osp_angular_gf<C: Coefficient>(rep: OspRep, kmax: u32) -> Result<So3Gf<C>, BranchingError> {
    Ok(osp_pipeline(rep, kmax)?.angular)
}
