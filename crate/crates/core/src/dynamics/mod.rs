//! Best-response paths, the transition graph over all profiles, and
//! asynchronous best-response simulation.

mod simulate;

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::game::SncGame;
use crate::{Error, NodeSet, Profile, ProfileSet, Result};

pub use simulate::{simulate, Event, SimulationConfig, Termination, Trajectory};

/// Legal single best-response deviations from `x`, by increasing deviator.
pub fn br_successors(game: &SncGame, x: Profile) -> Vec<(usize, Profile)> {
    game.movers(x).iter().map(|i| (i, x.flipped(i))).collect()
}

/// A sequence of profiles with the player who moved at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BrPath {
    pub profiles: Vec<Profile>,
    pub deviators: Vec<usize>,
}

impl BrPath {
    pub fn trivial(x: Profile) -> Self {
        BrPath {
            profiles: vec![x],
            deviators: Vec::new(),
        }
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.deviators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deviators.is_empty()
    }

    pub fn start(&self) -> Option<Profile> {
        self.profiles.first().copied()
    }

    pub fn end(&self) -> Option<Profile> {
        self.profiles.last().copied()
    }

    fn steps(&self) -> Option<impl Iterator<Item = (usize, Profile, Profile)> + '_> {
        if self.profiles.is_empty() || self.profiles.len() != self.deviators.len() + 1 {
            return None;
        }
        Some(
            self.deviators
                .iter()
                .zip(self.profiles.windows(2))
                .map(|(&i, pair)| (i, pair[0], pair[1])),
        )
    }
}

fn is_unilateral(game: &SncGame, i: usize, from: Profile, to: Profile) -> bool {
    i < game.node_count() && from.diff(to) == NodeSet::singleton(i)
}

/// Every step changes only the recorded deviator, to an action in her best
/// response set.
pub fn validate_br_path(game: &SncGame, path: &BrPath) -> bool {
    let Some(mut steps) = path.steps() else {
        return false;
    };
    steps.all(|(i, from, to)| {
        is_unilateral(game, i, from, to) && game.best_response(i, from).contains(to.action(i))
    })
}

/// Every step strictly raises the deviator's utility.
pub fn is_improvement_path(game: &SncGame, path: &BrPath) -> bool {
    let Some(mut steps) = path.steps() else {
        return false;
    };
    steps.all(|(i, from, to)| {
        is_unilateral(game, i, from, to) && game.utility(i, to) > game.utility(i, from)
    })
}

/// An edge `from -> to` of the transition graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Edge {
    pub from: Profile,
    pub deviator: usize,
    pub to: Profile,
}

/// The best-response relation over all `2^n` profiles. Edges are stored as
/// a mask of movers per profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionGraph {
    n: usize,
    movers: Vec<u64>,
}

impl TransitionGraph {
    pub fn build(game: &SncGame, cap: usize) -> Result<Self> {
        let n = game.node_count();
        let cap = cap.min(ProfileSet::MAX_NODES);
        if n > cap {
            return Err(Error::CapExceeded { n, cap });
        }
        let movers = (0..1u64 << n)
            .map(|m| game.kernel().movers(Profile::from_bits(m)))
            .collect();
        Ok(TransitionGraph { n, movers })
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn profile_count(&self) -> usize {
        self.movers.len()
    }

    pub fn edge_count(&self) -> usize {
        self.movers.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn has_edge(&self, from: Profile, deviator: usize) -> bool {
        self.movers[from.bits() as usize] >> deviator & 1 == 1
    }

    /// Successors of `x`, by increasing deviator.
    pub fn successors(&self, x: Profile) -> impl Iterator<Item = (usize, Profile)> {
        NodeSet::from_bits(self.movers[x.bits() as usize])
            .iter()
            .map(move |i| (i, x.flipped(i)))
    }

    fn predecessors(&self, y: Profile) -> impl Iterator<Item = Profile> + '_ {
        (0..self.n)
            .map(move |i| (i, y.flipped(i)))
            .filter(|&(i, x)| self.has_edge(x, i))
            .map(|(_, x)| x)
    }

    /// Profiles without outgoing edges: the strict Nash equilibria.
    pub fn sinks(&self) -> ProfileSet {
        ProfileSet::from_predicate(self.n, |x| self.movers[x.bits() as usize] == 0)
    }

    fn check(&self, set: &ProfileSet) -> Result<()> {
        if set.players() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: set.players(),
            });
        }
        Ok(())
    }

    /// Everything reachable from `set` by BR-paths, `set` included.
    pub fn forward_closure(&self, set: &ProfileSet) -> Result<ProfileSet> {
        self.check(set)?;
        Ok(self.closure(set, |x, out| out.extend(self.successors(x).map(|(_, y)| y))))
    }

    /// Everything from which `set` is reachable by a BR-path, `set` included.
    pub fn backward_closure(&self, set: &ProfileSet) -> Result<ProfileSet> {
        self.check(set)?;
        Ok(self.closure(set, |y, out| out.extend(self.predecessors(y))))
    }

    fn closure<F: Fn(Profile, &mut Vec<Profile>)>(&self, set: &ProfileSet, next: F) -> ProfileSet {
        let mut seen = set.clone();
        let mut stack: Vec<Profile> = set.iter().collect();
        let mut buf = Vec::new();
        while let Some(x) = stack.pop() {
            buf.clear();
            next(x, &mut buf);
            for &y in &buf {
                if !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// The first edge leaving `set`, in profile then deviator order.
    pub fn invariance_violation(&self, set: &ProfileSet) -> Result<Option<Edge>> {
        self.check(set)?;
        Ok(set.iter().find_map(|from| {
            self.successors(from)
                .find(|&(_, to)| !set.contains(to))
                .map(|(deviator, to)| Edge { from, deviator, to })
        }))
    }

    /// No BR-path leaves `set`.
    pub fn is_br_invariant(&self, set: &ProfileSet) -> Result<bool> {
        Ok(self.invariance_violation(set)?.is_none())
    }

    /// `set` is reachable from every profile.
    pub fn is_globally_br_reachable(&self, set: &ProfileSet) -> Result<bool> {
        Ok(!set.is_empty() && self.backward_closure(set)?.is_full())
    }

    pub fn is_globally_br_stable(&self, set: &ProfileSet) -> Result<bool> {
        Ok(self.is_globally_br_reachable(set)? && self.is_br_invariant(set)?)
    }

    /// The largest BR-invariant subset of `set`: the members from which no
    /// BR-path leaves it.
    pub fn max_invariant_subset(&self, set: &ProfileSet) -> Result<ProfileSet> {
        let escaping = self.backward_closure(&set.complement())?;
        Ok(ProfileSet::from_predicate(self.n, |x| {
            set.contains(x) && !escaping.contains(x)
        }))
    }

    /// Breadth-first shortest BR-path from `from` into `target`. Successors are
    /// expanded by increasing deviator.
    pub fn shortest_path(&self, from: Profile, target: &ProfileSet) -> Result<Option<BrPath>> {
        self.check(target)?;
        if target.contains(from) {
            return Ok(Some(BrPath::trivial(from)));
        }
        let mut parent: Vec<Option<(u64, usize)>> = vec![None; self.movers.len()];
        let mut seen = ProfileSet::empty(self.n);
        seen.insert(from);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for (i, y) in self.successors(x) {
                if seen.contains(y) {
                    continue;
                }
                seen.insert(y);
                parent[y.bits() as usize] = Some((x.bits(), i));
                if target.contains(y) {
                    return Ok(Some(self.unwind(&parent, y)));
                }
                queue.push_back(y);
            }
        }
        Ok(None)
    }

    fn unwind(&self, parent: &[Option<(u64, usize)>], end: Profile) -> BrPath {
        let mut profiles = vec![end];
        let mut deviators = Vec::new();
        let mut cur = end;
        while let Some((prev, i)) = parent[cur.bits() as usize] {
            deviators.push(i);
            cur = Profile::from_bits(prev);
            profiles.push(cur);
        }
        profiles.reverse();
        deviators.reverse();
        BrPath {
            profiles,
            deviators,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::SignedNetwork;
    use crate::{caps, Weight};

    fn w(v: i64) -> Weight {
        Weight::from(v)
    }

    fn discoordination() -> SncGame {
        SncGame::unbiased(SignedNetwork::build(2, [(0, 1, w(1)), (1, 0, w(-1))]).unwrap())
    }

    fn example4(alpha: i64) -> SncGame {
        SncGame::new(
            SignedNetwork::build(2, [(0, 1, w(1))]).unwrap(),
            vec![w(0), w(alpha)],
        )
        .unwrap()
    }

    #[test]
    fn discoordination_successor() {
        let x = Profile::from_bits(0b11);
        assert_eq!(
            br_successors(&discoordination(), x),
            [(1, Profile::from_bits(0b01))]
        );
    }

    #[test]
    fn discoordination_is_a_four_cycle() {
        let g = TransitionGraph::build(&discoordination(), caps::TRANSITION_GRAPH).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.sinks().is_empty());
        let start = ProfileSet::from_profiles(2, [Profile::from_bits(0)]);
        assert!(g.forward_closure(&start).unwrap().is_full());
    }

    #[test]
    fn indifference_edges_in_example4() {
        let game = example4(0);
        let path = BrPath {
            profiles: vec![Profile::from_bits(0b11), Profile::from_bits(0b01)],
            deviators: vec![1],
        };
        assert!(validate_br_path(&game, &path));
        assert!(!is_improvement_path(&game, &path));
        let g = TransitionGraph::build(&game, caps::TRANSITION_GRAPH).unwrap();
        assert!(g.sinks().is_empty());
        let nash = ProfileSet::from_profiles(2, [Profile::from_bits(0), Profile::from_bits(0b11)]);
        assert!(!g.is_br_invariant(&nash).unwrap());
        assert!(g.max_invariant_subset(&nash).unwrap().is_empty());
    }

    #[test]
    fn strict_singleton_is_stable() {
        let game = example4(1);
        let nash = game.enumerate_nash(caps::NASH).unwrap();
        assert_eq!(nash.all, [Profile::from_bits(0b11)]);
        let g = TransitionGraph::build(&game, caps::TRANSITION_GRAPH).unwrap();
        let set = ProfileSet::from_profiles(2, nash.all);
        assert!(g.is_globally_br_stable(&set).unwrap());
    }

    #[test]
    fn malformed_paths_are_rejected() {
        let game = discoordination();
        let empty = BrPath {
            profiles: vec![],
            deviators: vec![],
        };
        assert!(!validate_br_path(&game, &empty));
        assert!(validate_br_path(
            &game,
            &BrPath::trivial(Profile::from_bits(2))
        ));
        let two_flips = BrPath {
            profiles: vec![Profile::from_bits(0), Profile::from_bits(3)],
            deviators: vec![0],
        };
        assert!(!validate_br_path(&game, &two_flips));
    }

    #[test]
    fn shortest_path_follows_edges() {
        let game = discoordination();
        let g = TransitionGraph::build(&game, caps::TRANSITION_GRAPH).unwrap();
        let from = Profile::from_bits(0b11);
        let target = ProfileSet::from_profiles(2, [from.negated(2)]);
        let path = g.shortest_path(from, &target).unwrap().unwrap();
        assert_eq!(path.len(), 2);
        assert!(validate_br_path(&game, &path));
    }

    #[test]
    fn graph_cap() {
        let game = SncGame::unbiased(SignedNetwork::empty(6).unwrap());
        assert_eq!(
            TransitionGraph::build(&game, 5),
            Err(Error::CapExceeded { n: 6, cap: 5 })
        );
    }
}
