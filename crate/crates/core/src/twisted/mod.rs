//! Presentations of the localized twisted cohomology rings of elementary
//! abelian groups and the homomorphisms between them.

mod local;
mod maps;
mod rall;
mod space;

pub use local::{cohomology, present_rloc, var_name, LocalRing};
pub use maps::{
    closure_ideal, glue_iso, inflation_hom, parse_label, projective_point, psi_hom, rational_point, res_hom,
    res_hom_along, GlueIso,
};
pub use rall::{rall, Rall};
pub use space::{all_vectors, canonicalize, dot, scalar_of, Coordinate, Elab, Subspace};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::homotopy::GroupCoordinate;
use std::sync::Arc;

/// The group coordinate `x ↦ f·v(x)` on `(Z/p)^r` built by
/// [`FiniteGroup::elementary_abelian`], where `v_t(x)` is the `t`-th base-`p` digit.
pub fn group_coordinate(group: &Arc<FiniteGroup>, p: u32, f: &Coordinate) -> Result<GroupCoordinate> {
    let r = f.functional.len();
    if group.order() != (p as usize).pow(r as u32) {
        return Err(Error::domain("group is not the elementary abelian group of this rank"));
    }
    let vectors = all_vectors(p, r);
    let values = vectors.iter().map(|v| dot(&f.functional, v, p)).collect();
    GroupCoordinate::new(group.clone(), p, values)
}
