//! Finite directed weighted signed graphs without self-loops.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::{Error, GaugeVector, NodeSet, Result, Weight, MAX_NODES};

/// A directed link `from -> to` with a nonzero weight.
///
/// A link `(i, j)` means that player `i`'s utility depends on `j`'s action
/// through `W_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Link {
    pub from: usize,
    pub to: usize,
    pub weight: Weight,
}

/// A signed network: `n` nodes and a sparse nonzero weight matrix with zero
/// diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedNetwork {
    n: usize,
    /// Out-links per node, sorted by target.
    out: Vec<Vec<(usize, Weight)>>,
}

/// Whether a network is undirected (symmetric `W`) and unsigned (`W >= 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Classification {
    pub undirected: bool,
    pub unsigned: bool,
}

/// A subnetwork together with the original index of each of its nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subnetwork {
    pub network: SignedNetwork,
    pub nodes: NodeSet,
}

impl Subnetwork {
    /// Original node id of local node `k`.
    pub fn original(&self, k: usize) -> usize {
        self.nodes.iter().nth(k).expect("local index in range")
    }
}

impl SignedNetwork {
    /// Validates and builds a network from `(from, to, weight)` triples.
    pub fn build<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Weight)>,
    {
        if n == 0 {
            return Err(Error::NoNodes);
        }
        if n > MAX_NODES {
            return Err(Error::TooManyNodes(n));
        }
        let mut rows: Vec<BTreeMap<usize, Weight>> = (0..n).map(|_| BTreeMap::new()).collect();
        for (from, to, weight) in edges {
            for node in [from, to] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if from == to {
                return Err(Error::SelfLoop(from));
            }
            if weight.is_zero() {
                return Err(Error::ZeroWeight(from, to));
            }
            if rows[from].insert(to, weight).is_some() {
                return Err(Error::DuplicateEdge(from, to));
            }
        }
        Ok(SignedNetwork {
            n,
            out: rows
                .into_iter()
                .map(|row| row.into_iter().collect())
                .collect(),
        })
    }

    /// Network with `n` nodes and no links.
    pub fn empty(n: usize) -> Result<Self> {
        SignedNetwork::build(n, core::iter::empty())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn link_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn nodes(&self) -> NodeSet {
        NodeSet::full(self.n)
    }

    /// `W_ij`, or `None` when `(i, j)` is not a link.
    pub fn weight(&self, i: usize, j: usize) -> Option<&Weight> {
        let row = self.out.get(i)?;
        row.binary_search_by_key(&j, |(t, _)| *t)
            .ok()
            .map(|k| &row[k].1)
    }

    /// `W_ij`, zero when absent.
    pub fn weight_or_zero(&self, i: usize, j: usize) -> Weight {
        self.weight(i, j).cloned().unwrap_or_else(Weight::zero)
    }

    /// Out-links of `i` as `(target, weight)`, sorted by target.
    pub fn out_links(&self, i: usize) -> &[(usize, Weight)] {
        &self.out[i]
    }

    /// All links in `(from, to)` lexicographic order.
    pub fn links(&self) -> impl Iterator<Item = Link> + '_ {
        self.out.iter().enumerate().flat_map(|(from, row)| {
            row.iter().map(move |(to, w)| Link {
                from,
                to: *to,
                weight: w.clone(),
            })
        })
    }

    /// The subnetwork induced on `nodes`, re-indexed densely in member order.
    pub fn subnetwork(&self, nodes: NodeSet) -> Result<Subnetwork> {
        if nodes.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !nodes.is_subset(self.nodes()) {
            let node = nodes
                .difference(self.nodes())
                .iter()
                .next()
                .unwrap_or(self.n);
            return Err(Error::NodeOutOfRange { node, n: self.n });
        }
        let edges = nodes.iter().flat_map(|i| {
            self.out[i]
                .iter()
                .filter(|(j, _)| nodes.contains(*j))
                .map(move |(j, w)| {
                    (
                        nodes.rank(i).expect("member"),
                        nodes.rank(*j).expect("member"),
                        w.clone(),
                    )
                })
        });
        Ok(Subnetwork {
            network: SignedNetwork::build(nodes.len(), edges)?,
            nodes,
        })
    }

    /// `w_i^B = sum_{j in B} |W_ij|`.
    pub fn out_degree(&self, i: usize, set: NodeSet) -> Weight {
        self.out[i]
            .iter()
            .filter(|(j, _)| set.contains(*j))
            .map(|(_, w)| w.abs())
            .sum()
    }

    /// Total out-degree `w_i`.
    pub fn total_out_degree(&self, i: usize) -> Weight {
        self.out_degree(i, self.nodes())
    }

    /// `w_i^B` for every `i` in `rows`, in member order.
    pub fn out_degrees(&self, rows: NodeSet, set: NodeSet) -> Vec<Weight> {
        rows.iter().map(|i| self.out_degree(i, set)).collect()
    }

    pub fn is_undirected(&self) -> bool {
        self.links()
            .all(|l| self.weight(l.to, l.from) == Some(&l.weight))
    }

    pub fn is_unsigned(&self) -> bool {
        self.links().all(|l| l.weight.is_positive())
    }

    pub fn classify(&self) -> Classification {
        Classification {
            undirected: self.is_undirected(),
            unsigned: self.is_unsigned(),
        }
    }

    /// First link with negative weight, if any.
    pub fn first_negative_link(&self) -> Option<Link> {
        self.links().find(|l| l.weight.is_negative())
    }

    /// `W^[σ]_ij = σ_i W_ij σ_j`.
    pub fn gauge_transform(&self, sigma: &GaugeVector) -> Result<SignedNetwork> {
        if sigma.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: sigma.len(),
            });
        }
        let out = self
            .out
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .map(|(j, w)| (*j, w.signed(sigma.is_negated(i) != sigma.is_negated(*j))))
                    .collect()
            })
            .collect();
        Ok(SignedNetwork { n: self.n, out })
    }

    /// Dense `n x n` weight matrix, row-major.
    pub fn to_matrix(&self) -> Vec<Vec<Weight>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.weight_or_zero(i, j)).collect())
            .collect()
    }
}
