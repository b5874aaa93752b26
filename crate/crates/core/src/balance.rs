//! Structural balance: a bipartition with nonnegative weights inside each part
//! and nonpositive weights across, equivalently a gauge that makes the
//! network unsigned.
//!
//! Detection propagates sign constraints through a parity union-find: a link
//! with `W_ij > 0` forces `σ_i = σ_j`, one with `W_ij < 0` forces
//! `σ_i = -σ_j`. Mixed-sign digons are just an unsatisfiable pair of
//! constraints.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::network::SignedNetwork;
use crate::{Error, GaugeVector, NodeSet, Result};

/// Outcome of [`find_balanced_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BalanceCertificate {
    pub balanced: bool,
    /// `(V1, V2)`; the gauge is `-1` exactly on `V1`.
    pub partition: Option<(NodeSet, NodeSet)>,
    pub gauge: Option<GaugeVector>,
    pub witness: Option<ContradictionWitness>,
}

/// A cycle of links whose sign constraints cannot hold together.
///
/// `links[0]` is the first constraint that failed to merge; the remaining
/// links are the spanning-forest path that already tied its endpoints
/// together. The product of the link signs along the cycle is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ContradictionWitness {
    pub links: Vec<(usize, usize)>,
}

struct ParityUnionFind {
    parent: Vec<usize>,
    /// Parity of each node relative to its parent (`true` = opposite sign).
    parity: Vec<bool>,
    rank: Vec<u8>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
            rank: vec![0; n],
        }
    }

    /// Root of `node` and the parity of `node` relative to it.
    fn find(&mut self, node: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = node;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Compress from the top down so each parity is relative to the root.
        let mut acc = false;
        for &v in path.iter().rev() {
            acc ^= self.parity[v];
            self.parity[v] = acc;
            self.parent[v] = root;
        }
        (
            root,
            if node == root {
                false
            } else {
                self.parity[node]
            },
        )
    }

    /// Imposes `parity(a) ^ parity(b) == opposite`. Returns `Ok(true)` if two
    /// components merged, `Ok(false)` if the constraint was already implied,
    /// and `Err(())` on contradiction.
    fn constrain(&mut self, a: usize, b: usize, opposite: bool) -> core::result::Result<bool, ()> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return if pa ^ pb == opposite {
                Ok(false)
            } else {
                Err(())
            };
        }
        let (child, root) = if self.rank[ra] < self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[child] = root;
        self.parity[child] = pa ^ pb ^ opposite;
        if self.rank[ra] == self.rank[rb] {
            self.rank[root] += 1;
        }
        Ok(true)
    }
}

/// Finds a balanced partition of `network`, or a contradiction cycle.
///
/// In each constrained component the lowest-indexed node gets `+1`; isolated
/// nodes get `+1`.
pub fn find_balanced_partition(network: &SignedNetwork) -> BalanceCertificate {
    let n = network.node_count();
    let mut uf = ParityUnionFind::new(n);
    // Spanning forest of merging links, for witness extraction.
    let mut forest: Vec<Vec<(usize, (usize, usize))>> = vec![Vec::new(); n];

    for link in network.links() {
        let opposite = link.weight.is_negative();
        match uf.constrain(link.from, link.to, opposite) {
            Ok(true) => {
                forest[link.from].push((link.to, (link.from, link.to)));
                forest[link.to].push((link.from, (link.from, link.to)));
            }
            Ok(false) => {}
            Err(()) => {
                let mut links = vec![(link.from, link.to)];
                links.extend(forest_path(&forest, link.to, link.from));
                return BalanceCertificate {
                    balanced: false,
                    partition: None,
                    gauge: None,
                    witness: Some(ContradictionWitness { links }),
                };
            }
        }
    }

    let mut negated = NodeSet::empty();
    // Orientation of each root chosen so the smallest member is +1; nodes are
    // visited in increasing order, so the first member seen fixes it.
    let mut root_flip: Vec<Option<bool>> = vec![None; n];
    for i in 0..n {
        let (root, parity) = uf.find(i);
        let flip = *root_flip[root].get_or_insert(parity);
        if parity ^ flip {
            negated.insert(i);
        }
    }
    let gauge = GaugeVector::from_negated(n, negated).expect("negated nodes are in range");
    BalanceCertificate {
        balanced: true,
        partition: Some((negated, negated.complement(n))),
        gauge: Some(gauge),
        witness: None,
    }
}

/// Links on the unique forest path from `from` to `to`.
fn forest_path(
    forest: &[Vec<(usize, (usize, usize))>],
    from: usize,
    to: usize,
) -> Vec<(usize, usize)> {
    let mut prev: Vec<Option<(usize, (usize, usize))>> = vec![None; forest.len()];
    let mut seen = vec![false; forest.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(u, link) in &forest[v] {
            if !seen[u] {
                seen[u] = true;
                prev[u] = Some((v, link));
                queue.push_back(u);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while let Some((p, link)) = prev[cur] {
        path.push(link);
        cur = p;
    }
    path.reverse();
    path
}

/// Checks the two sign conditions of a balanced partition directly.
pub fn is_balanced_partition(network: &SignedNetwork, first: NodeSet, second: NodeSet) -> bool {
    let n = network.node_count();
    if !first.intersection(second).is_empty() || first.union(second) != NodeSet::full(n) {
        return false;
    }
    network.links().all(|l| {
        let same = first.contains(l.from) == first.contains(l.to);
        if same {
            !l.weight.is_negative()
        } else {
            !l.weight.is_positive()
        }
    })
}

/// Exhaustive balance test over all `2^n` gauges. Test oracle for
/// [`find_balanced_partition`].
pub fn is_structurally_balanced_oracle(network: &SignedNetwork, cap: usize) -> Result<bool> {
    let n = network.node_count();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let constraints: Vec<(usize, usize, bool)> = network
        .links()
        .map(|l| (l.from, l.to, l.weight.is_negative()))
        .collect();
    Ok((0..1u64 << n).any(|sigma| {
        constraints
            .iter()
            .all(|&(i, j, neg)| ((sigma >> i ^ sigma >> j) & 1 == 1) == neg)
    }))
}
