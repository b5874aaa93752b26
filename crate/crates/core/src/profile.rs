use alloc::vec::Vec;
use core::fmt;

use bitvec::prelude::*;

use crate::{Error, NodeSet, Result, MAX_NODES};

/// One of the two binary actions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Action {
    Minus,
    Plus,
}

impl Action {
    pub fn from_sign(value: i64) -> Result<Self> {
        match value {
            1 => Ok(Action::Plus),
            -1 => Ok(Action::Minus),
            other => Err(Error::InvalidAction(other)),
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Action::Plus => 1,
            Action::Minus => -1,
        }
    }

    pub fn flip(self) -> Action {
        match self {
            Action::Plus => Action::Minus,
            Action::Minus => Action::Plus,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Action::Plus
    }
}

impl core::ops::Mul for Action {
    type Output = Action;

    fn mul(self, rhs: Action) -> Action {
        if self == rhs {
            Action::Plus
        } else {
            Action::Minus
        }
    }
}

/// A strategy profile: bit `i` is set iff player `i` plays `+1`.
///
/// The node count is carried by the game the profile is used with; bits at or
/// above it must be clear. Ordering is the numeric order of the masks.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Profile(u64);

impl Profile {
    pub const fn from_bits(bits: u64) -> Self {
        Profile(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Every player in `0..n` plays `action`.
    pub fn consensus(n: usize, action: Action) -> Self {
        match action {
            Action::Plus => Profile(NodeSet::full(n).bits()),
            Action::Minus => Profile(0),
        }
    }

    pub fn from_actions(actions: &[Action]) -> Result<Self> {
        if actions.len() > MAX_NODES {
            return Err(Error::TooManyNodes(actions.len()));
        }
        Ok(Profile(
            actions
                .iter()
                .enumerate()
                .filter(|(_, a)| a.is_plus())
                .fold(0, |acc, (i, _)| acc | 1u64 << i),
        ))
    }

    /// From a `±1` slice.
    pub fn from_signs(signs: &[i64]) -> Result<Self> {
        let actions = signs
            .iter()
            .map(|&s| Action::from_sign(s))
            .collect::<Result<Vec<_>>>()?;
        Profile::from_actions(&actions)
    }

    pub fn action(self, i: usize) -> Action {
        if self.0 >> i & 1 == 1 {
            Action::Plus
        } else {
            Action::Minus
        }
    }

    pub fn sign(self, i: usize) -> i8 {
        self.action(i).value()
    }

    pub fn with(self, i: usize, action: Action) -> Profile {
        match action {
            Action::Plus => Profile(self.0 | 1u64 << i),
            Action::Minus => Profile(self.0 & !(1u64 << i)),
        }
    }

    pub fn flipped(self, i: usize) -> Profile {
        Profile(self.0 ^ 1u64 << i)
    }

    /// `-x` over `n` players.
    pub fn negated(self, n: usize) -> Profile {
        Profile(!self.0 & NodeSet::full(n).bits())
    }

    pub fn actions(self, n: usize) -> Vec<Action> {
        (0..n).map(|i| self.action(i)).collect()
    }

    pub fn signs(self, n: usize) -> Vec<i8> {
        (0..n).map(|i| self.sign(i)).collect()
    }

    /// Players playing `+1`.
    pub fn plus_set(self) -> NodeSet {
        NodeSet::from_bits(self.0)
    }

    /// The sub-profile on `set`, re-indexed densely in member order.
    pub fn restrict(self, set: NodeSet) -> Profile {
        Profile(
            set.iter()
                .enumerate()
                .filter(|&(_, i)| self.0 >> i & 1 == 1)
                .fold(0, |acc, (k, _)| acc | 1u64 << k),
        )
    }

    /// Overwrites the members of `set` in `self` with the dense profile `local`.
    pub fn embed(self, set: NodeSet, local: Profile) -> Profile {
        set.iter()
            .enumerate()
            .fold(self, |acc, (k, i)| acc.with(i, local.action(k)))
    }

    /// `true` if every player in `set` plays `action`.
    pub fn is_consensus_on(self, set: NodeSet, action: Action) -> bool {
        match action {
            Action::Plus => self.0 & set.bits() == set.bits(),
            Action::Minus => self.0 & set.bits() == 0,
        }
    }

    /// Players whose actions differ.
    pub fn diff(self, other: Profile) -> NodeSet {
        NodeSet::from_bits(self.0 ^ other.0)
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile({:#x})", self.0)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Profile {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.0)
    }
}

/// A per-node sign vector `σ`, used to conjugate networks and games.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaugeVector {
    len: usize,
    negated: NodeSet,
}

impl GaugeVector {
    /// All `+1`.
    pub fn identity(len: usize) -> Self {
        GaugeVector {
            len,
            negated: NodeSet::empty(),
        }
    }

    /// `-1` exactly on `negated`.
    pub fn from_negated(len: usize, negated: NodeSet) -> Result<Self> {
        if len > MAX_NODES {
            return Err(Error::TooManyNodes(len));
        }
        if !negated.is_subset(NodeSet::full(len)) {
            let node = negated
                .difference(NodeSet::full(len))
                .iter()
                .next()
                .unwrap_or(len);
            return Err(Error::NodeOutOfRange { node, n: len });
        }
        Ok(GaugeVector { len, negated })
    }

    pub fn from_signs(signs: &[i64]) -> Result<Self> {
        let profile = Profile::from_signs(signs)?;
        Ok(GaugeVector::from_profile(signs.len(), profile))
    }

    /// The gauge whose entries are the actions of `profile`.
    pub fn from_profile(len: usize, profile: Profile) -> Self {
        GaugeVector {
            len,
            negated: profile.negated(len).plus_set(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sign(&self, i: usize) -> Action {
        if self.negated.contains(i) {
            Action::Minus
        } else {
            Action::Plus
        }
    }

    pub fn is_negated(&self, i: usize) -> bool {
        self.negated.contains(i)
    }

    /// Nodes with `σ_i = -1`.
    pub fn negated(&self) -> NodeSet {
        self.negated
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.len).map(|i| self.sign(i).value()).collect()
    }

    /// The gauge read as a profile (`+1` where `σ_i = +1`).
    pub fn as_profile(&self) -> Profile {
        Profile::from_bits(self.negated.complement(self.len).bits())
    }

    /// `-σ`.
    pub fn opposite(&self) -> GaugeVector {
        GaugeVector {
            len: self.len,
            negated: self.negated.complement(self.len),
        }
    }

    /// `[σ]x`.
    pub fn apply(&self, x: Profile) -> Profile {
        Profile::from_bits(x.bits() ^ self.negated.bits())
    }

    /// Extends a gauge given on the members of `set` (in member order) to all
    /// `n` nodes, with `+1` outside `set`.
    pub fn extend(&self, set: NodeSet, n: usize) -> Result<GaugeVector> {
        if self.len != set.len() {
            return Err(Error::LengthMismatch {
                expected: set.len(),
                found: self.len,
            });
        }
        let negated = set
            .iter()
            .enumerate()
            .filter(|&(k, _)| self.negated.contains(k))
            .map(|(_, i)| i);
        GaugeVector::from_negated(n, NodeSet::from_indices(n, negated)?)
    }

    /// The entries on `set`, re-indexed densely.
    pub fn restrict(&self, set: NodeSet) -> GaugeVector {
        GaugeVector {
            len: set.len(),
            negated: self
                .as_profile()
                .restrict(set)
                .negated(set.len())
                .plus_set(),
        }
    }
}

impl fmt::Debug for GaugeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.signs()).finish()
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for GaugeVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.signs())
    }
}

/// A set of profiles over `n` players, stored as a bit set over `2^n` masks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProfileSet {
    n: usize,
    bits: BitVec<usize, Lsb0>,
}

impl ProfileSet {
    /// Largest node count a profile set may span (lower on 32-bit targets,
    /// where a bit vector holds fewer than `2^32` bits).
    pub const MAX_NODES: usize = if usize::BITS >= 64 { 32 } else { 28 };

    pub fn empty(n: usize) -> Self {
        assert!(
            n <= Self::MAX_NODES,
            "profile sets are limited to {} players",
            Self::MAX_NODES
        );
        ProfileSet {
            n,
            bits: bitvec![usize, Lsb0; 0; 1usize << n],
        }
    }

    pub fn full(n: usize) -> Self {
        assert!(
            n <= Self::MAX_NODES,
            "profile sets are limited to {} players",
            Self::MAX_NODES
        );
        ProfileSet {
            n,
            bits: bitvec![usize, Lsb0; 1; 1usize << n],
        }
    }

    pub fn from_profiles<I: IntoIterator<Item = Profile>>(n: usize, profiles: I) -> Self {
        let mut set = ProfileSet::empty(n);
        for x in profiles {
            set.insert(x);
        }
        set
    }

    pub fn from_predicate<F: FnMut(Profile) -> bool>(n: usize, mut keep: F) -> Self {
        let mut set = ProfileSet::empty(n);
        for mask in 0..(1u64 << n) {
            if keep(Profile::from_bits(mask)) {
                set.bits.set(mask as usize, true);
            }
        }
        set
    }

    pub fn players(&self) -> usize {
        self.n
    }

    /// Number of profiles in the ambient space, `2^n`.
    pub fn universe_len(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, x: Profile) {
        self.bits.set(x.bits() as usize, true);
    }

    pub fn remove(&mut self, x: Profile) {
        self.bits.set(x.bits() as usize, false);
    }

    pub fn contains(&self, x: Profile) -> bool {
        usize::try_from(x.bits())
            .ok()
            .and_then(|m| self.bits.get(m).map(|b| *b))
            .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    pub fn is_full(&self) -> bool {
        self.bits.all()
    }

    pub fn iter(&self) -> impl Iterator<Item = Profile> + '_ {
        self.bits.iter_ones().map(|m| Profile::from_bits(m as u64))
    }

    pub fn complement(&self) -> ProfileSet {
        ProfileSet {
            n: self.n,
            bits: !self.bits.clone(),
        }
    }

    pub fn is_subset(&self, other: &ProfileSet) -> bool {
        self.bits.iter_ones().all(|m| other.bits[m])
    }
}

impl fmt::Debug for ProfileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
