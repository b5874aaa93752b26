//! Super-modularity of unsigned games and their extremal equilibria.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;

use super::SncGame;
use crate::kernel::{common_scale, scale_value};
use crate::{caps, Action, Error, Profile, Result, Weight};

/// Starting point of [`SncGame::extremal_nash_unsigned`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Extreme {
    /// All `+1`.
    Top,
    /// All `-1`.
    Bottom,
}

impl Extreme {
    pub fn action(self) -> Action {
        match self {
            Extreme::Top => Action::Plus,
            Extreme::Bottom => Action::Minus,
        }
    }
}

impl SncGame {
    /// Structural test: a game has increasing differences iff no weight is
    /// negative.
    pub fn is_supermodular(&self) -> bool {
        self.network().is_unsigned()
    }

    /// Checks `δ_i(x) <= δ_i(y)` for every player and every pair `x <= y`
    /// (componentwise, `-1 < +1`), with gaps computed from utilities.
    pub fn verify_increasing_differences(&self) -> Result<bool> {
        let n = self.node_count();
        let cap = caps::INCREASING_DIFFERENCES;
        if n > cap {
            return Err(Error::CapExceeded { n, cap });
        }
        // gaps[i][x], scaled to integers for cheap comparisons.
        let raw: Vec<Vec<Weight>> = (0..n)
            .map(|i| {
                (0..1u64 << n)
                    .map(|m| {
                        let x = Profile::from_bits(m);
                        self.utility(i, x.with(i, Action::Plus))
                            - self.utility(i, x.with(i, Action::Minus))
                    })
                    .collect()
            })
            .collect();
        let scale = common_scale(raw.iter().flatten());
        let gaps: Vec<Vec<BigInt>> = raw
            .iter()
            .map(|row| row.iter().map(|g| scale_value(g, &scale)).collect())
            .collect();
        let full = (1u64 << n) - 1;
        for y in 0..=full {
            // Enumerate the submasks x of y, including 0.
            let mut x = y;
            loop {
                if gaps.iter().any(|row| row[x as usize] > row[y as usize]) {
                    return Ok(false);
                }
                if x == 0 {
                    break;
                }
                x = (x - 1) & y;
            }
        }
        Ok(true)
    }

    /// Round-robin best responses from the chosen consensus, with ties kept at
    /// the starting action, until no player changes. Returns the largest
    /// (`Top`) or smallest (`Bottom`) Nash equilibrium.
    pub fn extremal_nash_unsigned(&self, which: Extreme) -> Result<Profile> {
        if let Some(link) = self.network().first_negative_link() {
            let mut bad = crate::NodeSet::singleton(link.from);
            bad.insert(link.to);
            return Err(Error::NotUnsigned(bad));
        }
        let n = self.node_count();
        let start = which.action();
        let mut x = Profile::consensus(n, start);
        loop {
            let mut changed = false;
            for i in 0..n {
                let target = match self.kernel().gap_sign(i, x) {
                    Ordering::Greater => Action::Plus,
                    Ordering::Less => Action::Minus,
                    Ordering::Equal => start,
                };
                if x.action(i) != target {
                    x = x.with(i, target);
                    changed = true;
                }
            }
            if !changed {
                return Ok(x);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::SignedNetwork;

    fn w(v: i64) -> Weight {
        Weight::from(v)
    }

    #[test]
    fn structural_and_exhaustive_agree_on_small_cases() {
        let unsigned = SncGame::unbiased(
            SignedNetwork::build(3, [(0, 1, w(2)), (1, 2, w(1)), (2, 0, w(3))]).unwrap(),
        );
        assert!(unsigned.is_supermodular());
        assert!(unsigned.verify_increasing_differences().unwrap());
        let signed =
            SncGame::unbiased(SignedNetwork::build(2, [(0, 1, w(1)), (1, 0, w(-1))]).unwrap());
        assert!(!signed.is_supermodular());
        assert!(!signed.verify_increasing_differences().unwrap());
        let empty = SncGame::unbiased(SignedNetwork::empty(3).unwrap());
        assert!(empty.is_supermodular());
        assert!(empty.verify_increasing_differences().unwrap());
    }

    #[test]
    fn exhaustive_mode_is_capped() {
        let g = SncGame::unbiased(SignedNetwork::empty(13).unwrap());
        assert_eq!(
            g.verify_increasing_differences(),
            Err(Error::CapExceeded { n: 13, cap: 12 })
        );
    }

    #[test]
    fn extremes_bracket_the_nash_set() {
        // Two coordinating pairs, tied at zero field: both consensus profiles
        // are equilibria.
        let net = SignedNetwork::build(2, [(0, 1, w(1)), (1, 0, w(1))]).unwrap();
        let g = SncGame::unbiased(net);
        assert_eq!(
            g.extremal_nash_unsigned(Extreme::Top).unwrap(),
            Profile::from_bits(0b11)
        );
        assert_eq!(
            g.extremal_nash_unsigned(Extreme::Bottom).unwrap(),
            Profile::from_bits(0)
        );
    }

    #[test]
    fn dominant_field_wins_from_both_sides() {
        let g = SncGame::new(SignedNetwork::empty(3).unwrap(), vec![w(1), w(2), w(3)]).unwrap();
        for which in [Extreme::Top, Extreme::Bottom] {
            assert_eq!(
                g.extremal_nash_unsigned(which).unwrap(),
                Profile::from_bits(0b111)
            );
        }
    }

    #[test]
    fn signed_networks_are_rejected() {
        let g = SncGame::unbiased(SignedNetwork::build(2, [(0, 1, w(-1))]).unwrap());
        assert!(matches!(
            g.extremal_nash_unsigned(Extreme::Top),
            Err(Error::NotUnsigned(_))
        ));
    }
}
