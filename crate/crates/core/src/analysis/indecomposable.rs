//! Indecomposability of a network relative to a field box.
//!
//! A partition `(V+, V-)` is covered when some node `i` satisfies
//! `i ∈ V+` and `w_i^{V+} + h+_i < w_i^{V-}`, or `i ∈ V-` and
//! `w_i^{V-} - h-_i < w_i^{V+}`. The network is indecomposable when every
//! ordered partition with both sides nonempty is covered.
//!
//! With `a_i = w_i^{V-}` and `w_i = a_i + w_i^{V+}`, the two tests read
//! `w_i + h+_i < 2 a_i` and `2 a_i < w_i + h-_i`, so a sweep only has to
//! maintain `2 a_i` as nodes move between the sides.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::FieldBox;
use crate::kernel::{common_scale, scale_value, shrink, Scalar};
use crate::network::SignedNetwork;
use crate::{Error, NodeSet, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IndecomposabilityResult {
    pub indecomposable: bool,
    /// `(V+, V-)` covered by no node; present iff not indecomposable.
    pub witness: Option<(NodeSet, NodeSet)>,
    pub partitions_examined: u64,
}

/// Tests every ordered partition, by increasing bit mask of `V-`, and stops
/// at the first uncovered one.
pub fn is_indecomposable(
    network: &SignedNetwork,
    field_box: &FieldBox,
    cap: usize,
) -> Result<IndecomposabilityResult> {
    let n = network.node_count();
    if field_box.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: field_box.len(),
        });
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let degrees: Vec<_> = (0..n).map(|i| network.total_out_degree(i)).collect();
    let abs_links: Vec<_> = network.links().map(|l| l.weight.abs()).collect();
    let scale = common_scale(
        abs_links
            .iter()
            .chain(&field_box.plus)
            .chain(&field_box.minus),
    );
    // Row i: doubled |W_ij| per out-link, then the two thresholds. Bounding
    // each row keeps every partial `2 a_i` in range.
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let w = scale_value(&degrees[i], &scale);
            network
                .out_links(i)
                .iter()
                .map(|(_, wt)| scale_value(&wt.abs(), &scale) * 2)
                .chain([
                    &w + scale_value(&field_box.plus[i], &scale),
                    &w + scale_value(&field_box.minus[i], &scale),
                ])
                .collect()
        })
        .collect();
    Ok(match shrink(&rows) {
        Some(small) => sweep(network, small),
        None => sweep(network, rows),
    })
}

fn sweep<T: Scalar>(network: &SignedNetwork, rows: Vec<Vec<T>>) -> IndecomposabilityResult {
    let n = network.node_count();
    // affected[j]: nodes i whose `2 a_i` changes when j switches sides.
    let mut affected: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    let mut upper = Vec::with_capacity(n);
    let mut lower = Vec::with_capacity(n);
    for (i, mut row) in rows.into_iter().enumerate() {
        lower.push(row.pop().expect("threshold"));
        upper.push(row.pop().expect("threshold"));
        for ((j, _), w2) in network.out_links(i).iter().zip(row) {
            affected[*j].push((i, w2));
        }
    }

    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut twice_a: Vec<T> = vec![T::zero(); n];
    let mut minus_mask = 0u64;
    let mut examined = 0u64;
    for target in 1..full {
        for j in NodeSet::from_bits(minus_mask ^ target).iter() {
            let entering = target >> j & 1 == 1;
            for (i, w2) in &affected[j] {
                if entering {
                    twice_a[*i] += w2;
                } else {
                    twice_a[*i] -= w2;
                }
            }
        }
        minus_mask = target;
        examined += 1;
        let covered = (0..n).any(|i| {
            if minus_mask >> i & 1 == 1 {
                twice_a[i] < lower[i]
            } else {
                upper[i] < twice_a[i]
            }
        });
        if !covered {
            let v_minus = NodeSet::from_bits(minus_mask);
            return IndecomposabilityResult {
                indecomposable: false,
                witness: Some((v_minus.complement(n), v_minus)),
                partitions_examined: examined,
            };
        }
    }
    IndecomposabilityResult {
        indecomposable: true,
        witness: None,
        partitions_examined: examined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Weight;

    fn w(v: i64) -> Weight {
        Weight::from(v)
    }

    fn boxed(plus: &[i64]) -> FieldBox {
        FieldBox::symmetric(plus.iter().map(|&v| w(v)).collect()).unwrap()
    }

    #[test]
    fn single_node_is_vacuously_indecomposable() {
        let net = SignedNetwork::empty(1).unwrap();
        let r = is_indecomposable(&net, &boxed(&[0]), 24).unwrap();
        assert!(r.indecomposable);
        assert_eq!(r.partitions_examined, 0);
    }

    #[test]
    fn disconnected_pair_splits() {
        let net = SignedNetwork::empty(2).unwrap();
        let r = is_indecomposable(&net, &boxed(&[0, 0]), 24).unwrap();
        assert!(!r.indecomposable);
        assert_eq!(
            r.witness,
            Some((NodeSet::singleton(1), NodeSet::singleton(0)))
        );
    }

    #[test]
    fn strong_pair_is_indecomposable() {
        let net = SignedNetwork::build(2, [(0, 1, w(3)), (1, 0, w(3))]).unwrap();
        let r = is_indecomposable(&net, &boxed(&[1, 1]), 24).unwrap();
        assert!(r.indecomposable);
        assert_eq!(r.partitions_examined, 2);
    }

    #[test]
    fn cap_and_length() {
        let net = SignedNetwork::empty(3).unwrap();
        assert_eq!(
            is_indecomposable(&net, &boxed(&[0, 0]), 24),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            is_indecomposable(&net, &boxed(&[0, 0, 0]), 2),
            Err(Error::CapExceeded { n: 3, cap: 2 })
        );
    }
}
