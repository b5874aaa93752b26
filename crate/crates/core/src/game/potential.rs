//! Exact potentials of undirected games and the four-cycle obstruction for
//! directed ones.

use alloc::vec::Vec;

use super::SncGame;
use crate::{Action, Error, Profile, Result, Weight};

/// A closed four-step cycle of unilateral deviations along which the utility
/// changes of the deviators sum to a nonzero amount, so no exact potential
/// exists.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PotentialObstruction {
    /// Players with `W_ij < W_ji`.
    pub i: usize,
    pub j: usize,
    /// `x -> y -> z -> w -> x`: `i` moves, then `j`, then `i`, then `j`.
    pub cycle: [Profile; 4],
    /// Sum of the deviators' utility changes around the cycle,
    /// `4 (W_ji - W_ij)`.
    pub cycle_sum: Weight,
}

impl SncGame {
    /// `Φ(x) = ½ sum_ij W_ij x_i x_j + sum_i h_i x_i`. Only an exact potential
    /// when `W` is symmetric.
    pub fn potential(&self, x: Profile) -> Result<Weight> {
        if !self.network().is_undirected() {
            return Err(Error::NotUndirected);
        }
        let half = Weight::ratio(1, 2).expect("nonzero denominator");
        let pairs: Weight = self
            .network()
            .links()
            .map(|l| l.weight.signed(x.action(l.from) != x.action(l.to)))
            .sum();
        let fields: Weight = self
            .field()
            .iter()
            .enumerate()
            .map(|(i, h)| h.signed(x.action(i) == Action::Minus))
            .sum();
        Ok(&(&half * &pairs) + &fields)
    }

    /// Follows strict improvements from `start` until none is left. Each flip
    /// raises the potential, so this ends at a Nash equilibrium. A player
    /// switching to `+1` is preferred, lowest index first.
    pub fn potential_ascent(&self, start: Profile) -> Result<Profile> {
        if !self.network().is_undirected() {
            return Err(Error::NotUndirected);
        }
        let mut x = start;
        loop {
            let unhappy = self.kernel().unhappy(x);
            if unhappy == 0 {
                return Ok(x);
            }
            let rising = unhappy & !x.bits();
            let pick = if rising != 0 { rising } else { unhappy };
            x = x.flipped(pick.trailing_zeros() as usize);
        }
    }

    /// A deviation cycle ruling out an exact potential, present iff the
    /// network is directed.
    pub fn potential_obstruction(&self) -> Option<PotentialObstruction> {
        let net = self.network();
        let n = net.node_count();
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && net.weight_or_zero(i, j) < net.weight_or_zero(j, i))?;
        let x = Profile::consensus(n, Action::Minus);
        let y = x.flipped(i);
        let z = y.flipped(j);
        let w = x.flipped(j);
        let steps: Vec<Weight> = [(i, x, y), (j, y, z), (i, z, w), (j, w, x)]
            .into_iter()
            .map(|(p, from, to)| self.utility(p, to) - self.utility(p, from))
            .collect();
        Some(PotentialObstruction {
            i,
            j,
            cycle: [x, y, z, w],
            cycle_sum: steps.into_iter().sum(),
        })
    }
}
