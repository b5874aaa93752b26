#![allow(dead_code)]

use proptest::prelude::*;
use snc_core::game::SncGame;
use snc_core::network::SignedNetwork;
use snc_core::{Profile, Weight};

/// Link weights in `-3..=3` (zero means no link) on `n` nodes.
pub fn weights(n: usize, signed: bool) -> impl Strategy<Value = Vec<i64>> {
    let lo = if signed { -3 } else { 0 };
    proptest::collection::vec(prop_oneof![2 => Just(0i64), 3 => lo..=3i64], n * n)
}

pub fn network_from(n: usize, w: &[i64], undirected: bool) -> SignedNetwork {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = if undirected && j < i {
                w[j * n + i]
            } else {
                w[i * n + j]
            };
            if i != j && v != 0 {
                edges.push((i, j, Weight::from(v)));
            }
        }
    }
    SignedNetwork::build(n, edges).unwrap()
}

pub fn field_from(f: &[i64]) -> Vec<Weight> {
    f.iter().map(|&v| Weight::from(v)).collect()
}

/// Random game with `min..=max` players.
pub fn game(
    min: usize,
    max: usize,
    signed: bool,
    undirected: bool,
) -> impl Strategy<Value = SncGame> {
    (min..=max).prop_flat_map(move |n| {
        (weights(n, signed), proptest::collection::vec(-2i64..=2, n)).prop_map(move |(w, f)| {
            SncGame::new(network_from(n, &w, undirected), field_from(&f)).unwrap()
        })
    })
}

pub fn profiles(n: usize) -> impl Iterator<Item = Profile> {
    (0..1u64 << n).map(Profile::from_bits)
}

/// `u_i(x)` straight from the weight matrix.
pub fn utility_oracle(game: &SncGame, i: usize, x: Profile) -> Weight {
    let m = game.network().to_matrix();
    let xi = Weight::from(x.sign(i) as i64);
    let mut inner = game.field()[i].clone();
    for (j, w) in m[i].iter().enumerate() {
        inner += &(w * &Weight::from(x.sign(j) as i64));
    }
    xi * inner
}

pub fn is_nash_oracle(game: &SncGame, x: Profile) -> bool {
    (0..game.node_count())
        .all(|i| utility_oracle(game, i, x) >= utility_oracle(game, i, x.flipped(i)))
}

pub fn is_strict_nash_oracle(game: &SncGame, x: Profile) -> bool {
    (0..game.node_count())
        .all(|i| utility_oracle(game, i, x) > utility_oracle(game, i, x.flipped(i)))
}
