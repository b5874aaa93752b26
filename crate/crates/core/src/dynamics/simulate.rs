//! Asynchronous best-response dynamics: at each tick one random player
//! revises to an action drawn uniformly from her best responses.

use alloc::vec::Vec;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{BestResponseSet, SncGame};
use crate::{Action, Error, Profile, ProfileSet, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    /// Activation probabilities per player; uniform when `None`.
    pub activation: Option<Vec<f64>>,
    pub seed: u64,
    pub max_steps: u64,
    /// Stop as soon as the current profile lies in this set.
    pub stop_set: Option<ProfileSet>,
}

impl SimulationConfig {
    pub fn new(seed: u64, max_steps: u64) -> Self {
        SimulationConfig {
            activation: None,
            seed,
            max_steps,
            stop_set: None,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if let Some(p) = &self.activation {
            if p.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
            if p.iter().any(|v| !v.is_finite() || *v <= 0.0) {
                return Err(Error::InvalidConfig(
                    "activation probabilities must be positive",
                ));
            }
            let total: f64 = p.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidConfig(
                    "activation probabilities must sum to 1",
                ));
            }
        }
        if let Some(s) = &self.stop_set {
            if s.players() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: s.players(),
                });
            }
        }
        Ok(())
    }
}

/// A change of action at tick `time`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Event {
    pub time: u64,
    pub deviator: usize,
    pub profile: Profile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Termination {
    /// Entered the stop set.
    Absorbed,
    /// Reached a strict Nash equilibrium, where no activation changes anything.
    FixedPoint,
    /// Ran out of steps.
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Trajectory {
    pub initial: Profile,
    pub events: Vec<Event>,
    pub termination: Termination,
    /// Ticks elapsed, including activations that changed nothing.
    pub steps: u64,
    /// On budget exhaustion: the distinct profiles occupied during the last
    /// `2^n` ticks, sorted.
    pub recent: Option<Vec<Profile>>,
}

impl Trajectory {
    pub fn last(&self) -> Profile {
        self.events.last().map_or(self.initial, |e| e.profile)
    }

    /// Profiles occupied at some tick in `(after, steps]`, and the one held
    /// at `after`.
    fn occupied_since(&self, after: u64) -> Vec<Profile> {
        let split = self.events.partition_point(|e| e.time <= after);
        let at_start = split
            .checked_sub(1)
            .map_or(self.initial, |k| self.events[k].profile);
        let mut out: Vec<Profile> = core::iter::once(at_start)
            .chain(self.events[split..].iter().map(|e| e.profile))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub fn simulate(game: &SncGame, x0: Profile, config: &SimulationConfig) -> Result<Trajectory> {
    let n = game.node_count();
    config.validate(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let chooser = match &config.activation {
        Some(p) => Some(
            WeightedIndex::new(p)
                .map_err(|_| Error::InvalidConfig("activation probabilities are invalid"))?,
        ),
        None => None,
    };
    let stop = |x: Profile| config.stop_set.as_ref().is_some_and(|s| s.contains(x));
    let mut traj = Trajectory {
        initial: x0,
        events: Vec::new(),
        termination: Termination::Budget,
        steps: 0,
        recent: None,
    };
    let mut x = x0;
    loop {
        if stop(x) {
            traj.termination = Termination::Absorbed;
            return Ok(traj);
        }
        if game.is_strict_nash(x) {
            traj.termination = Termination::FixedPoint;
            return Ok(traj);
        }
        if traj.steps == config.max_steps {
            break;
        }
        traj.steps += 1;
        let i = match &chooser {
            Some(d) => d.sample(&mut rng),
            None => rng.random_range(0..n),
        };
        let next = match game.best_response(i, x) {
            BestResponseSet::Plus => Action::Plus,
            BestResponseSet::Minus => Action::Minus,
            BestResponseSet::Both if rng.random_bool(0.5) => Action::Plus,
            BestResponseSet::Both => Action::Minus,
        };
        if next != x.action(i) {
            x = x.with(i, next);
            traj.events.push(Event {
                time: traj.steps,
                deviator: i,
                profile: x,
            });
        }
    }
    let window = 1u64.checked_shl(n as u32).unwrap_or(u64::MAX);
    traj.recent = Some(traj.occupied_since(traj.steps.saturating_sub(window)));
    Ok(traj)
}
