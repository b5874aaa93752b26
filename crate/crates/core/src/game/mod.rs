//! Signed network coordination games: utilities, best responses, Nash
//! equilibria, restricted games and gauge transformations.

mod potential;
mod supermodular;

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::kernel::Kernel;
use crate::network::SignedNetwork;
use crate::{Action, Error, GaugeVector, NodeSet, Profile, Result, Weight};

pub use potential::PotentialObstruction;
pub use supermodular::Extreme;

/// A binary-action game on a signed network with external field `h`.
///
/// Player `i` earns `u_i(x) = h_i x_i + x_i * sum_j W_ij x_j`.
#[derive(Clone)]
pub struct SncGame {
    network: SignedNetwork,
    field: Vec<Weight>,
    kernel: Kernel,
}

impl fmt::Debug for SncGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SncGame")
            .field("network", &self.network)
            .field("field", &self.field)
            .finish()
    }
}

impl PartialEq for SncGame {
    fn eq(&self, other: &Self) -> bool {
        self.network == other.network && self.field == other.field
    }
}

impl Eq for SncGame {}

/// `argmax` of a player's utility: `{+1}`, `{-1}` or both actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum BestResponseSet {
    Plus,
    Minus,
    Both,
}

impl BestResponseSet {
    /// Best responses for a payoff gap with the given sign.
    pub fn from_gap_sign(sign: Ordering) -> Self {
        match sign {
            Ordering::Greater => BestResponseSet::Plus,
            Ordering::Less => BestResponseSet::Minus,
            Ordering::Equal => BestResponseSet::Both,
        }
    }

    pub fn contains(self, action: Action) -> bool {
        match self {
            BestResponseSet::Plus => action == Action::Plus,
            BestResponseSet::Minus => action == Action::Minus,
            BestResponseSet::Both => true,
        }
    }

    /// `s * B`, elementwise.
    pub fn scaled(self, s: Action) -> Self {
        match (self, s) {
            (b, Action::Plus) | (b @ BestResponseSet::Both, _) => b,
            (BestResponseSet::Plus, Action::Minus) => BestResponseSet::Minus,
            (BestResponseSet::Minus, Action::Minus) => BestResponseSet::Plus,
        }
    }

    pub fn is_singleton(self) -> bool {
        self != BestResponseSet::Both
    }
}

/// Per-player diagnosis of a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StrictnessReport {
    pub nash: bool,
    pub strict: bool,
    /// Players whose current action is not a best response.
    pub unhappy: NodeSet,
    /// Players indifferent between both actions.
    pub indifferent: NodeSet,
}

/// The Nash set `N` and its strict subset `N*`, in increasing mask order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NashSet {
    pub all: Vec<Profile>,
    pub strict: Vec<Profile>,
}

/// A game on a subset of players with everyone else frozen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedGame {
    pub game: SncGame,
    /// Players of the restricted game, re-indexed in member order.
    pub players: NodeSet,
    /// Full-length profile whose entries outside `players` are frozen.
    pub frozen: Profile,
}

impl RestrictedGame {
    /// The full profile obtained by playing `local` on the restricted players.
    pub fn lift(&self, local: Profile) -> Profile {
        self.frozen.embed(self.players, local)
    }
}

impl SncGame {
    pub fn new(network: SignedNetwork, field: Vec<Weight>) -> Result<Self> {
        if field.len() != network.node_count() {
            return Err(Error::LengthMismatch {
                expected: network.node_count(),
                found: field.len(),
            });
        }
        let kernel = Kernel::new(&network, &field);
        Ok(SncGame {
            network,
            field,
            kernel,
        })
    }

    /// The game with `h = 0`.
    pub fn unbiased(network: SignedNetwork) -> Self {
        let field = (0..network.node_count()).map(|_| Weight::zero()).collect();
        SncGame::new(network, field).expect("field length matches")
    }

    pub fn network(&self) -> &SignedNetwork {
        &self.network
    }

    pub fn field(&self) -> &[Weight] {
        &self.field
    }

    pub fn node_count(&self) -> usize {
        self.network.node_count()
    }

    pub(crate) fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    /// `sum_j W_ij x_j`.
    fn neighbor_sum(&self, i: usize, x: Profile) -> Weight {
        self.network
            .out_links(i)
            .iter()
            .map(|(j, w)| w.signed(x.action(*j) == Action::Minus))
            .sum()
    }

    /// `u_i(x)`, exact.
    pub fn utility(&self, i: usize, x: Profile) -> Weight {
        let total = &self.field[i] + &self.neighbor_sum(i, x);
        total.signed(x.action(i) == Action::Minus)
    }

    /// `δ_i(x) = u_i(+1, x_-i) - u_i(-1, x_-i) = 2 h_i + 2 sum_j W_ij x_j`.
    pub fn payoff_gap(&self, i: usize, x: Profile) -> Weight {
        let local = &self.field[i] + &self.neighbor_sum(i, x);
        &local + &local
    }

    pub fn best_response(&self, i: usize, x: Profile) -> BestResponseSet {
        BestResponseSet::from_gap_sign(self.kernel.gap_sign(i, x))
    }

    pub fn is_nash(&self, x: Profile) -> bool {
        self.kernel.unhappy(x) == 0
    }

    pub fn is_strict_nash(&self, x: Profile) -> bool {
        self.kernel.movers(x) == 0
    }

    /// Nash and strictness status with the players responsible.
    pub fn strictness(&self, x: Profile) -> StrictnessReport {
        let unhappy = self.kernel.unhappy(x);
        let movers = self.kernel.movers(x);
        StrictnessReport {
            nash: unhappy == 0,
            strict: movers == 0,
            unhappy: NodeSet::from_bits(unhappy),
            indifferent: NodeSet::from_bits(movers & !unhappy),
        }
    }

    /// Players with a legal best-response flip at `x`.
    pub fn movers(&self, x: Profile) -> NodeSet {
        NodeSet::from_bits(self.kernel.movers(x))
    }

    /// All pure Nash equilibria, by exhaustive search over `2^n` profiles.
    pub fn enumerate_nash(&self, cap: usize) -> Result<NashSet> {
        let n = self.node_count();
        if n > cap {
            return Err(Error::CapExceeded { n, cap });
        }
        let mut set = NashSet::default();
        self.kernel.sweep(|mask, nash, strict| {
            if nash {
                set.all.push(Profile::from_bits(mask));
            }
            if strict {
                set.strict.push(Profile::from_bits(mask));
            }
        });
        set.all.sort_unstable();
        set.strict.sort_unstable();
        Ok(set)
    }

    /// The game on `players` with everyone else frozen to `frozen`; its field
    /// is `h_R + W_RS z`.
    pub fn restricted_game(&self, players: NodeSet, frozen: Profile) -> Result<RestrictedGame> {
        let sub = self.network.subnetwork(players)?;
        let field = players
            .iter()
            .map(|i| {
                let outside: Weight = self
                    .network
                    .out_links(i)
                    .iter()
                    .filter(|(j, _)| !players.contains(*j))
                    .map(|(j, w)| w.signed(frozen.action(*j) == Action::Minus))
                    .sum();
                &self.field[i] + &outside
            })
            .collect();
        Ok(RestrictedGame {
            game: SncGame::new(sub.network, field)?,
            players,
            frozen,
        })
    }

    /// The `[σ]`-transformed game: `W ↦ [σ]W[σ]`, `h ↦ [σ]h`.
    pub fn gauge_game(&self, sigma: &GaugeVector) -> Result<SncGame> {
        let network = self.network.gauge_transform(sigma)?;
        let field = self
            .field
            .iter()
            .enumerate()
            .map(|(i, h)| h.signed(sigma.is_negated(i)))
            .collect();
        SncGame::new(network, field)
    }
}
