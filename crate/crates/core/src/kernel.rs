//! Integer-scaled evaluation of best-response decisions.
//!
//! Every decision in a game only depends on the sign of the local field
//! `h_i + sum_j W_ij x_j`. Multiplying all weights and fields by the least
//! common multiple of their denominators turns this into integer arithmetic,
//! done in `i64` when every row sum is small enough and in `BigInt` otherwise.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{AddAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::network::SignedNetwork;
use crate::{Profile, Weight};

pub(crate) trait Scalar:
    Clone + Ord + Zero + Neg<Output = Self> + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
}

impl<T> Scalar for T where
    T: Clone + Ord + Zero + Neg<Output = T> + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>
{
}

/// Row sums of magnitude below this bound keep every partial sum in `i64`.
const SMALL_BOUND: i64 = 1 << 61;

/// Least common multiple of the denominators.
pub(crate) fn common_scale<'a, I: IntoIterator<Item = &'a Weight>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()))
}

/// `value * scale`, which must be an integer.
pub(crate) fn scale_value(value: &Weight, scale: &BigInt) -> BigInt {
    value.numer() * (scale / value.denom())
}

/// Converts scaled rows to `i64` when the absolute row sums stay below the
/// safety bound.
pub(crate) fn shrink(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    let bound = BigInt::from(SMALL_BOUND);
    rows.iter()
        .map(|row| {
            let total: BigInt = row.iter().map(|v| v.abs()).sum();
            if total >= bound {
                return None;
            }
            row.iter().map(|v| v.to_i64()).collect()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub(crate) struct Tables<T> {
    n: usize,
    out_offsets: Vec<usize>,
    out_targets: Vec<usize>,
    out_weights: Vec<T>,
    /// In-links of each node: sources and `2 W_src,node`.
    in_offsets: Vec<usize>,
    in_sources: Vec<usize>,
    in_double: Vec<T>,
    field: Vec<T>,
}

impl<T: Scalar> Tables<T> {
    fn local_field(&self, i: usize, x: u64) -> T {
        let mut acc = self.field[i].clone();
        for k in self.out_offsets[i]..self.out_offsets[i + 1] {
            if x >> self.out_targets[k] & 1 == 1 {
                acc += &self.out_weights[k];
            } else {
                acc -= &self.out_weights[k];
            }
        }
        acc
    }

    fn gap_sign(&self, i: usize, x: u64) -> Ordering {
        self.local_field(i, x).cmp(&T::zero())
    }

    /// Players for which `x_i` is not a best response.
    fn unhappy(&self, x: u64) -> u64 {
        (0..self.n).fold(0, |acc, i| {
            let plus = x >> i & 1 == 1;
            match (self.gap_sign(i, x), plus) {
                (Ordering::Less, true) | (Ordering::Greater, false) => acc | 1 << i,
                _ => acc,
            }
        })
    }

    /// Players with a legal best-response flip.
    fn movers(&self, x: u64) -> u64 {
        (0..self.n).fold(0, |acc, i| {
            let plus = x >> i & 1 == 1;
            match (self.gap_sign(i, x), plus) {
                (Ordering::Equal, _) | (Ordering::Less, true) | (Ordering::Greater, false) => {
                    acc | 1 << i
                }
                _ => acc,
            }
        })
    }

    /// Gray-code sweep over all `2^n` profiles with incrementally maintained
    /// local fields. Calls `visit(mask, is_nash, is_strict)`.
    fn sweep<F: FnMut(u64, bool, bool)>(&self, mut visit: F) {
        let n = self.n;
        let mut x = 0u64;
        let mut state = SweepState {
            fields: (0..n).map(|i| self.local_field(i, x)).collect(),
            unhappy: vec![false; n],
            indifferent: vec![false; n],
            n_unhappy: 0,
            n_indifferent: 0,
        };
        for i in 0..n {
            state.refresh(i, x);
        }
        visit(x, state.is_nash(), state.is_strict());
        for step in 1..(1u64 << n) {
            let j = step.trailing_zeros() as usize;
            x ^= 1 << j;
            let up = x >> j & 1 == 1;
            for k in self.in_offsets[j]..self.in_offsets[j + 1] {
                let i = self.in_sources[k];
                if up {
                    state.fields[i] += &self.in_double[k];
                } else {
                    state.fields[i] -= &self.in_double[k];
                }
                state.refresh(i, x);
            }
            state.refresh(j, x);
            visit(x, state.is_nash(), state.is_strict());
        }
    }
}

struct SweepState<T> {
    fields: Vec<T>,
    unhappy: Vec<bool>,
    indifferent: Vec<bool>,
    n_unhappy: usize,
    n_indifferent: usize,
}

impl<T: Scalar> SweepState<T> {
    fn refresh(&mut self, i: usize, x: u64) {
        let plus = x >> i & 1 == 1;
        let (u, d) = match self.fields[i].cmp(&T::zero()) {
            Ordering::Equal => (false, true),
            Ordering::Less => (plus, false),
            Ordering::Greater => (!plus, false),
        };
        self.n_unhappy = self.n_unhappy + u as usize - self.unhappy[i] as usize;
        self.n_indifferent = self.n_indifferent + d as usize - self.indifferent[i] as usize;
        self.unhappy[i] = u;
        self.indifferent[i] = d;
    }

    fn is_nash(&self) -> bool {
        self.n_unhappy == 0
    }

    fn is_strict(&self) -> bool {
        self.n_unhappy == 0 && self.n_indifferent == 0
    }
}

fn build_tables<T: Clone>(
    network: &SignedNetwork,
    weights: Vec<Vec<T>>,
    field: Vec<T>,
    double: impl Fn(&T) -> T,
) -> Tables<T> {
    let n = network.node_count();
    let mut out_offsets = vec![0];
    let mut out_targets = Vec::new();
    let mut out_weights = Vec::new();
    for (i, row) in weights.into_iter().enumerate() {
        for ((j, _), w) in network.out_links(i).iter().zip(row) {
            out_targets.push(*j);
            out_weights.push(w);
        }
        out_offsets.push(out_targets.len());
    }
    let mut incoming: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    for i in 0..n {
        for k in out_offsets[i]..out_offsets[i + 1] {
            incoming[out_targets[k]].push((i, double(&out_weights[k])));
        }
    }
    let mut in_offsets = vec![0];
    let mut in_sources = Vec::new();
    let mut in_double = Vec::new();
    for list in incoming {
        for (src, w2) in list {
            in_sources.push(src);
            in_double.push(w2);
        }
        in_offsets.push(in_sources.len());
    }
    Tables {
        n,
        out_offsets,
        out_targets,
        out_weights,
        in_offsets,
        in_sources,
        in_double,
        field,
    }
}

/// Sign oracle for local fields of a fixed game.
#[derive(Debug, Clone)]
pub(crate) enum Kernel {
    Small(Tables<i64>),
    Big(Tables<BigInt>),
}

macro_rules! dispatch {
    ($self:ident, $t:ident => $e:expr) => {
        match $self {
            Kernel::Small($t) => $e,
            Kernel::Big($t) => $e,
        }
    };
}

impl Kernel {
    pub(crate) fn new(network: &SignedNetwork, field: &[Weight]) -> Kernel {
        let n = network.node_count();
        let scale = common_scale(
            network
                .links()
                .map(|l| l.weight)
                .collect::<Vec<_>>()
                .iter()
                .chain(field.iter()),
        );
        // Row layout: out-weights followed by the field entry.
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                network
                    .out_links(i)
                    .iter()
                    .map(|(_, w)| scale_value(w, &scale))
                    .chain(core::iter::once(scale_value(&field[i], &scale)))
                    .collect()
            })
            .collect();
        // Doubled in-weights must also fit: check rows at twice the size.
        let doubled: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|v| v * 2).collect())
            .collect();
        match shrink(&doubled) {
            Some(_) => {
                let small = shrink(&rows).expect("halved rows fit");
                let (weights, field) = split_rows(small);
                Kernel::Small(build_tables(network, weights, field, |w| 2 * w))
            }
            None => {
                let (weights, field) = split_rows(rows);
                Kernel::Big(build_tables(network, weights, field, |w| w * 2))
            }
        }
    }

    pub(crate) fn gap_sign(&self, i: usize, x: Profile) -> Ordering {
        dispatch!(self, t => t.gap_sign(i, x.bits()))
    }

    pub(crate) fn unhappy(&self, x: Profile) -> u64 {
        dispatch!(self, t => t.unhappy(x.bits()))
    }

    pub(crate) fn movers(&self, x: Profile) -> u64 {
        dispatch!(self, t => t.movers(x.bits()))
    }

    pub(crate) fn sweep<F: FnMut(u64, bool, bool)>(&self, visit: F) {
        dispatch!(self, t => t.sweep(visit))
    }

    #[cfg(test)]
    pub(crate) fn is_small(&self) -> bool {
        matches!(self, Kernel::Small(_))
    }
}

fn split_rows<T>(rows: Vec<Vec<T>>) -> (Vec<Vec<T>>, Vec<T>) {
    rows.into_iter()
        .map(|mut row| {
            let h = row.pop().expect("field entry");
            (row, h)
        })
        .unzip()
}
