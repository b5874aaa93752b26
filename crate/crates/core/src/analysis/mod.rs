//! Structural conditions on a partition `V = R ∪ S` and the equilibrium and
//! stability certificates built from them.
//!
//! Vectors indexed by `R` (margins, field boxes, gauges `τ`) list the members
//! of `R` in increasing node order.

mod cohesion;
mod existence;
mod indecomposable;
mod stability;

pub use cohesion::{
    check_consensus_cohesion, check_polarized_cohesion, check_strict_cohesion, field_box,
    CohesionReport, FieldBox,
};
pub use existence::{
    construct_consensus_equilibrium, solve_restricted_s, ExistenceCertificate, ExistenceFailure,
    RestrictedSolution, SolveMethod, TauSource,
};
pub use indecomposable::{is_indecomposable, IndecomposabilityResult};
pub use stability::{
    check_stability, EmpiricalOutcome, FrozenCheck, SStructure, StabilityCertificate, StabilityTier,
};

use crate::balance::find_balanced_partition;
use crate::game::SncGame;
use crate::{GaugeVector, NodeSet, Profile, Result};

/// The full profile that plays `tau` on `r` and `-1` elsewhere.
pub(crate) fn profile_on(r: NodeSet, tau: &GaugeVector) -> Profile {
    Profile::default().embed(r, tau.as_profile())
}

/// `τ` as supplied, or the canonical balancing gauge of `G_R` when absent.
/// `Ok(None)` when none was supplied and `G_R` is not structurally balanced.
pub(crate) fn resolve_tau(
    game: &SncGame,
    r: NodeSet,
    tau: Option<&GaugeVector>,
) -> Result<(Option<GaugeVector>, bool)> {
    let sub = game.network().subnetwork(r)?;
    let cert = find_balanced_partition(&sub.network);
    match tau {
        Some(t) => {
            if t.len() != r.len() {
                return Err(crate::Error::LengthMismatch {
                    expected: r.len(),
                    found: t.len(),
                });
            }
            Ok((Some(*t), cert.balanced))
        }
        None => Ok((cert.gauge, cert.balanced)),
    }
}
