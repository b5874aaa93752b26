use alloc::vec::Vec;

use crate::balance::find_balanced_partition;
use crate::dynamics::TransitionGraph;
use crate::game::SncGame;
use crate::{caps, Error, GaugeVector, NodeSet, Profile, ProfileSet, Result};

use super::{
    check_polarized_cohesion, check_strict_cohesion, field_box, is_indecomposable, profile_on,
    resolve_tau, CohesionReport, FieldBox, IndecomposabilityResult,
};

/// Strongest conclusion supported by the checked hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StabilityTier {
    HypothesesFailed,
    /// `{x ∈ N : x_R = ±τ}` is globally BR-reachable.
    Reachable,
    /// That set contains a nonempty globally BR-stable subset.
    StableSubset,
}

/// Structure of `G_S`. An empty `S` counts as balanced and undirected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SStructure {
    pub empty: bool,
    pub balanced: bool,
    pub undirected: bool,
}

/// The `S`-restricted game with `R` frozen to `y`, checked on its own
/// transition graph.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FrozenCheck {
    pub frozen: Profile,
    pub equilibria: usize,
    /// Its Nash set is globally BR-reachable.
    pub reachable: bool,
    /// Its Nash set contains a nonempty globally BR-stable subset.
    pub stable_subset: bool,
}

/// Transition-graph verification of the conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EmpiricalOutcome {
    /// `{x ∈ N : x_R = ±τ}`.
    pub target: Vec<Profile>,
    pub target_reachable: bool,
    /// Largest BR-invariant subset of the target.
    pub invariant_core: Vec<Profile>,
    /// `invariant_core` is nonempty and globally BR-reachable.
    pub stable_subset_found: bool,
    pub nash_set_stable: bool,
    /// Nash equilibria with `x_R ∉ {±τ}`.
    pub other_equilibria: Vec<Profile>,
    /// The empirical result supports the reported tier.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StabilityCertificate {
    pub r: NodeSet,
    pub tau: Option<GaugeVector>,
    /// `G_R^[τ]` is unsigned.
    pub gauge_unsigned: bool,
    pub sign_violations: Vec<(usize, usize)>,
    pub strict_cohesion: CohesionReport,
    pub field_box: Option<FieldBox>,
    /// `None` when `|R|` exceeds the indecomposability cap.
    pub indecomposability: Option<IndecomposabilityResult>,
    pub s_structure: SStructure,
    /// Per-frozen checks, only run when `G_S` has no helpful structure.
    pub frozen_checks: Vec<FrozenCheck>,
    pub tier: StabilityTier,
    pub empirical: Option<EmpiricalOutcome>,
}

/// Evaluates the stability hypotheses for the partition `R`, `S = V \ R`.
///
/// `R`-side: `G_R^[τ]` unsigned, strict cohesion, and indecomposability of
/// `G_R^[τ]` against the box `τ_i h_i ± w_i^S`. `S`-side: an undirected `G_S`
/// gives the stable-subset tier, a balanced one the reachable tier; otherwise
/// both frozen games `y = ±τ` are checked directly. With `empirical`, the
/// conclusion is re-checked on the full transition graph.
pub fn check_stability(
    game: &SncGame,
    r: NodeSet,
    tau: Option<&GaugeVector>,
    empirical: bool,
    cap: usize,
) -> Result<StabilityCertificate> {
    let n = game.node_count();
    let (tau, _) = resolve_tau(game, r, tau)?;
    let s = r.complement(n);
    let strict_cohesion = check_strict_cohesion(game, r)?;
    let s_structure = match game.network().subnetwork(s) {
        Ok(sub) => SStructure {
            empty: false,
            balanced: find_balanced_partition(&sub.network).balanced,
            undirected: sub.network.is_undirected(),
        },
        Err(_) => SStructure {
            empty: true,
            balanced: true,
            undirected: true,
        },
    };
    let mut cert = StabilityCertificate {
        r,
        tau,
        gauge_unsigned: false,
        sign_violations: Vec::new(),
        strict_cohesion,
        field_box: None,
        indecomposability: None,
        s_structure,
        frozen_checks: Vec::new(),
        tier: StabilityTier::HypothesesFailed,
        empirical: None,
    };
    let Some(tau) = tau else {
        return Ok(cert);
    };
    cert.sign_violations = check_polarized_cohesion(game, r, &tau)?.sign_violations;
    cert.gauge_unsigned = cert.sign_violations.is_empty();
    let fbox = field_box(game, r, &tau)?;
    let gauged = game
        .network()
        .subnetwork(r)?
        .network
        .gauge_transform(&tau)?;
    cert.indecomposability = match is_indecomposable(&gauged, &fbox, caps::INDECOMPOSABLE) {
        Ok(res) => Some(res),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    cert.field_box = Some(fbox);

    let r_side = cert.gauge_unsigned
        && cert.strict_cohesion.holds
        && cert
            .indecomposability
            .as_ref()
            .is_some_and(|i| i.indecomposable);
    let anchors = [profile_on(r, &tau), profile_on(r, &tau.opposite())];
    cert.tier = if !r_side {
        StabilityTier::HypothesesFailed
    } else if s_structure.undirected {
        StabilityTier::StableSubset
    } else if s_structure.balanced {
        StabilityTier::Reachable
    } else {
        cert.frozen_checks = frozen_checks(game, s, &anchors, cap)?;
        if cert.frozen_checks.len() < anchors.len() {
            StabilityTier::HypothesesFailed
        } else if cert.frozen_checks.iter().all(|c| c.stable_subset) {
            StabilityTier::StableSubset
        } else if cert.frozen_checks.iter().all(|c| c.reachable) {
            StabilityTier::Reachable
        } else {
            StabilityTier::HypothesesFailed
        }
    };

    if empirical {
        cert.empirical = Some(empirical_outcome(game, r, &tau, cert.tier, cap)?);
    }
    Ok(cert)
}

/// Frozen-game checks for each anchor; empty when `|S|` is over the cap.
fn frozen_checks(
    game: &SncGame,
    s: NodeSet,
    anchors: &[Profile],
    cap: usize,
) -> Result<Vec<FrozenCheck>> {
    let mut out = Vec::new();
    for &y in anchors {
        let restricted = game.restricted_game(s, y)?;
        let sub = &restricted.game;
        let graph = match TransitionGraph::build(sub, cap) {
            Ok(g) => g,
            Err(Error::CapExceeded { .. }) => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        let m = sub.node_count();
        let nash = ProfileSet::from_predicate(m, |z| sub.is_nash(z));
        let core = graph.max_invariant_subset(&nash)?;
        out.push(FrozenCheck {
            frozen: y,
            equilibria: nash.len(),
            reachable: graph.is_globally_br_reachable(&nash)?,
            stable_subset: graph.is_globally_br_reachable(&core)?,
        });
    }
    Ok(out)
}

fn empirical_outcome(
    game: &SncGame,
    r: NodeSet,
    tau: &GaugeVector,
    tier: StabilityTier,
    cap: usize,
) -> Result<EmpiricalOutcome> {
    let n = game.node_count();
    let graph = TransitionGraph::build(game, cap)?;
    let plus = profile_on(r, tau);
    let anchored = |x: Profile| {
        let diff = x.diff(plus).intersection(r);
        diff.is_empty() || diff == r
    };
    // The graph build already enforced the cap.
    let nash = game.enumerate_nash(n)?;
    let (target, other): (Vec<Profile>, Vec<Profile>) =
        nash.all.iter().copied().partition(|&x| anchored(x));
    let target_set = ProfileSet::from_profiles(n, target.iter().copied());
    let core = graph.max_invariant_subset(&target_set)?;
    let target_reachable = graph.is_globally_br_reachable(&target_set)?;
    let stable_subset_found = graph.is_globally_br_reachable(&core)?;
    let nash_set = ProfileSet::from_profiles(n, nash.all.iter().copied());
    let consistent = match tier {
        StabilityTier::HypothesesFailed => true,
        StabilityTier::Reachable => target_reachable,
        StabilityTier::StableSubset => stable_subset_found,
    };
    Ok(EmpiricalOutcome {
        target,
        target_reachable,
        invariant_core: core.iter().collect(),
        stable_subset_found,
        nash_set_stable: graph.is_globally_br_stable(&nash_set)?,
        other_equilibria: other,
        consistent,
    })
}
