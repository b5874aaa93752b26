use crate::balance::find_balanced_partition;
use crate::game::{Extreme, SncGame};
use crate::{Action, GaugeVector, NodeSet, Profile, Result};

use super::{check_polarized_cohesion, profile_on, resolve_tau, CohesionReport};

/// How an equilibrium of the `S`-restricted game was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SolveMethod {
    /// `S` is empty.
    Empty,
    /// `G_S` is undirected: strict improvements of the potential.
    PotentialAscent,
    /// `G_S` is structurally balanced: extremal equilibrium of the gauged,
    /// unsigned game.
    BalancedGauge,
    BruteForce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RestrictedSolution {
    /// The full profile: the frozen `R` part and the `S` equilibrium.
    pub profile: Profile,
    pub method: SolveMethod,
}

/// Finds an equilibrium of the game on `S = V \ R` with `R` frozen to the
/// entries of `frozen`. `None` only when exhaustive search finds nothing.
pub fn solve_restricted_s(
    game: &SncGame,
    r: NodeSet,
    frozen: Profile,
    cap: usize,
) -> Result<Option<RestrictedSolution>> {
    let s = r.complement(game.node_count());
    if s.is_empty() {
        return Ok(Some(RestrictedSolution {
            profile: frozen,
            method: SolveMethod::Empty,
        }));
    }
    let restricted = game.restricted_game(s, frozen)?;
    let sub = &restricted.game;
    let m = sub.node_count();
    let (local, method) = if sub.network().is_undirected() {
        (
            sub.potential_ascent(Profile::consensus(m, Action::Plus))?,
            SolveMethod::PotentialAscent,
        )
    } else if let Some(sigma) = find_balanced_partition(sub.network()).gauge {
        let unsigned = sub.gauge_game(&sigma)?;
        let top = unsigned.extremal_nash_unsigned(Extreme::Top)?;
        (sigma.apply(top), SolveMethod::BalancedGauge)
    } else {
        match sub.enumerate_nash(cap)?.all.first() {
            Some(&z) => (z, SolveMethod::BruteForce),
            None => return Ok(None),
        }
    };
    debug_assert!(sub.is_nash(local));
    Ok(Some(RestrictedSolution {
        profile: restricted.lift(local),
        method,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TauSource {
    Given,
    /// Canonical balancing gauge of `G_R`.
    Discovered,
}

/// The first hypothesis that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ExistenceFailure {
    /// No `τ` given and `G_R` is not structurally balanced.
    NotBalanced,
    /// Some link inside `R` has `τ_i W_ij τ_j < 0`.
    SignCondition,
    /// Some node of `R` has `w_i^R + τ_i h_i < w_i^S`.
    DegreeCondition,
    /// The `S`-restricted game with `R` frozen to `τ` has no equilibrium.
    NoRestrictedEquilibrium,
    /// The assembled profile failed the final Nash check.
    NotNash,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExistenceCertificate {
    pub r: NodeSet,
    /// Whether `G_R` is structurally balanced.
    pub r_balanced: bool,
    pub tau: Option<GaugeVector>,
    pub tau_source: TauSource,
    pub cohesion: Option<CohesionReport>,
    /// Structure of `G_S` that makes the restricted game solvable without
    /// search: balanced, undirected.
    pub s_balanced: Option<bool>,
    pub s_undirected: Option<bool>,
    pub solution: Option<RestrictedSolution>,
    pub equilibrium: Option<Profile>,
    pub failure: Option<ExistenceFailure>,
}

/// Builds a Nash equilibrium with `x_R = τ` when the sign and degree
/// conditions hold on `R` and the `S`-restricted game is solvable.
pub fn construct_consensus_equilibrium(
    game: &SncGame,
    r: NodeSet,
    tau: Option<&GaugeVector>,
    cap: usize,
) -> Result<ExistenceCertificate> {
    let (tau_resolved, r_balanced) = resolve_tau(game, r, tau)?;
    let mut cert = ExistenceCertificate {
        r,
        r_balanced,
        tau: tau_resolved,
        tau_source: if tau.is_some() {
            TauSource::Given
        } else {
            TauSource::Discovered
        },
        cohesion: None,
        s_balanced: None,
        s_undirected: None,
        solution: None,
        equilibrium: None,
        failure: None,
    };
    let Some(tau) = tau_resolved else {
        cert.failure = Some(ExistenceFailure::NotBalanced);
        return Ok(cert);
    };
    let cohesion = check_polarized_cohesion(game, r, &tau)?;
    let failure = if !cohesion.sign_violations.is_empty() {
        Some(ExistenceFailure::SignCondition)
    } else if !cohesion.holds {
        Some(ExistenceFailure::DegreeCondition)
    } else {
        None
    };
    cert.cohesion = Some(cohesion);
    let s = r.complement(game.node_count());
    if !s.is_empty() {
        let gs = game.network().subnetwork(s)?.network;
        cert.s_balanced = Some(find_balanced_partition(&gs).balanced);
        cert.s_undirected = Some(gs.is_undirected());
    }
    if failure.is_some() {
        cert.failure = failure;
        return Ok(cert);
    }
    let Some(solution) = solve_restricted_s(game, r, profile_on(r, &tau), cap)? else {
        cert.failure = Some(ExistenceFailure::NoRestrictedEquilibrium);
        return Ok(cert);
    };
    cert.solution = Some(solution);
    if game.is_nash(solution.profile) {
        cert.equilibrium = Some(solution.profile);
    } else {
        cert.failure = Some(ExistenceFailure::NotNash);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::SignedNetwork;
    use crate::{caps, Weight};

    fn w(v: i64) -> Weight {
        Weight::from(v)
    }

    #[test]
    fn empty_s_returns_frozen_profile() {
        let g = SncGame::unbiased(SignedNetwork::build(2, [(0, 1, w(1)), (1, 0, w(1))]).unwrap());
        let x = Profile::from_bits(0b11);
        let sol = solve_restricted_s(&g, NodeSet::full(2), x, caps::NASH)
            .unwrap()
            .unwrap();
        assert_eq!(sol.method, SolveMethod::Empty);
        assert_eq!(sol.profile, x);
    }

    #[test]
    fn negative_ring_in_s_has_no_solution() {
        // R = {0} isolated; S = {1, 2, 3} is the all-negative 3-ring.
        let net = SignedNetwork::build(4, [(1, 2, w(-1)), (2, 3, w(-1)), (3, 1, w(-1))]).unwrap();
        let g = SncGame::unbiased(net);
        let sol = solve_restricted_s(&g, NodeSet::singleton(0), Profile::from_bits(1), caps::NASH)
            .unwrap();
        assert!(sol.is_none());
    }

    #[test]
    fn exposed_node_fails_degree_condition() {
        let net = SignedNetwork::build(2, [(0, 1, w(1)), (1, 0, w(-1))]).unwrap();
        let g = SncGame::unbiased(net);
        let cert = construct_consensus_equilibrium(
            &g,
            NodeSet::singleton(0),
            Some(&GaugeVector::identity(1)),
            caps::NASH,
        )
        .unwrap();
        assert_eq!(cert.failure, Some(ExistenceFailure::DegreeCondition));
        assert!(cert.equilibrium.is_none());
    }

    #[test]
    fn discovered_tau_on_balanced_pair() {
        // R = {0, 1} antagonistic, S = {2} loosely attached to 0.
        let net = SignedNetwork::build(
            3,
            [(0, 1, w(-3)), (1, 0, w(-3)), (0, 2, w(1)), (2, 0, w(1))],
        )
        .unwrap();
        let g = SncGame::unbiased(net);
        let r = NodeSet::from_indices(3, [0, 1]).unwrap();
        let cert = construct_consensus_equilibrium(&g, r, None, caps::NASH).unwrap();
        assert_eq!(cert.tau_source, TauSource::Discovered);
        assert_eq!(cert.tau.as_ref().unwrap().signs(), [1, -1]);
        let x = cert.equilibrium.unwrap();
        assert!(g.is_nash(x));
        assert_eq!(x.signs(3), [1, -1, 1]);
    }
}
