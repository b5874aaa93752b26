use alloc::vec::Vec;

use crate::game::SncGame;
use crate::{Action, Error, GaugeVector, NodeSet, Result, Weight};

/// Per-node margins of a degree condition over `R`, plus any links inside
/// `R` whose gauged sign is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CohesionReport {
    pub holds: bool,
    pub nodes: NodeSet,
    /// One entry per member of `R`; the condition asks for `>= 0` (or `> 0`
    /// for strict cohesion).
    pub margins: Vec<Weight>,
    /// Links `(i, j)` inside `R` with `τ_i W_ij τ_j < 0`.
    pub sign_violations: Vec<(usize, usize)>,
}

/// Lower and upper field bounds over `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FieldBox {
    pub minus: Vec<Weight>,
    pub plus: Vec<Weight>,
}

impl FieldBox {
    pub fn new(minus: Vec<Weight>, plus: Vec<Weight>) -> Result<Self> {
        if minus.len() != plus.len() {
            return Err(Error::LengthMismatch {
                expected: plus.len(),
                found: minus.len(),
            });
        }
        if let Some(k) = minus.iter().zip(&plus).position(|(lo, hi)| lo > hi) {
            return Err(Error::InvertedBox(k));
        }
        Ok(FieldBox { minus, plus })
    }

    /// `[-b, b]`.
    pub fn symmetric(plus: Vec<Weight>) -> Result<Self> {
        FieldBox::new(plus.iter().map(|v| -v).collect(), plus)
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    pub fn contains(&self, h: &[Weight]) -> bool {
        h.len() == self.len()
            && h.iter()
                .zip(self.minus.iter().zip(&self.plus))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }
}

fn degrees(game: &SncGame, r: NodeSet) -> Result<(Vec<Weight>, Vec<Weight>)> {
    let n = game.node_count();
    if !r.is_subset(NodeSet::full(n)) {
        let node = r.difference(NodeSet::full(n)).iter().next().unwrap_or(n);
        return Err(Error::NodeOutOfRange { node, n });
    }
    let s = r.complement(n);
    let net = game.network();
    Ok((net.out_degrees(r, r), net.out_degrees(r, s)))
}

fn report(
    r: NodeSet,
    margins: Vec<Weight>,
    sign_violations: Vec<(usize, usize)>,
    strict: bool,
) -> CohesionReport {
    let ok = |m: &Weight| {
        if strict {
            m.is_positive()
        } else {
            !m.is_negative()
        }
    };
    CohesionReport {
        holds: sign_violations.is_empty() && margins.iter().all(ok),
        nodes: r,
        margins,
        sign_violations,
    }
}

/// `w_i^R + a h_i >= w_i^S` for every `i` in `R`, on an unsigned `G_R`.
pub fn check_consensus_cohesion(game: &SncGame, r: NodeSet, a: Action) -> Result<CohesionReport> {
    let (w_r, w_s) = degrees(game, r)?;
    let net = game.network();
    let negative = r.iter().any(|i| {
        net.out_links(i)
            .iter()
            .any(|(j, w)| r.contains(*j) && w.is_negative())
    });
    if negative {
        return Err(Error::NotUnsigned(r));
    }
    let margins = r
        .iter()
        .zip(w_r.iter().zip(&w_s))
        .map(|(i, (wr, ws))| wr + &game.field()[i].signed(a == Action::Minus) - ws)
        .collect();
    Ok(report(r, margins, Vec::new(), false))
}

/// `τ_i W_ij τ_j >= 0` on links inside `R` and `w_i^R + τ_i h_i >= w_i^S`.
pub fn check_polarized_cohesion(
    game: &SncGame,
    r: NodeSet,
    tau: &GaugeVector,
) -> Result<CohesionReport> {
    if tau.len() != r.len() {
        return Err(Error::LengthMismatch {
            expected: r.len(),
            found: tau.len(),
        });
    }
    let (w_r, w_s) = degrees(game, r)?;
    let net = game.network();
    let sign = |i: usize| tau.sign(r.rank(i).expect("member"));
    let violations = r
        .iter()
        .flat_map(|i| {
            net.out_links(i)
                .iter()
                .filter(move |(j, w)| {
                    r.contains(*j)
                        && w.signed((sign(i) * sign(*j)) == Action::Minus)
                            .is_negative()
                })
                .map(move |(j, _)| (i, *j))
        })
        .collect();
    let margins = r
        .iter()
        .zip(w_r.iter().zip(&w_s))
        .map(|(i, (wr, ws))| wr + &game.field()[i].signed(sign(i) == Action::Minus) - ws)
        .collect();
    Ok(report(r, margins, violations, false))
}

/// `w_i^R - |h_i| > w_i^S` for every `i` in `R`.
pub fn check_strict_cohesion(game: &SncGame, r: NodeSet) -> Result<CohesionReport> {
    let (w_r, w_s) = degrees(game, r)?;
    let margins = r
        .iter()
        .zip(w_r.iter().zip(&w_s))
        .map(|(i, (wr, ws))| wr - &game.field()[i].abs() - ws)
        .collect();
    Ok(report(r, margins, Vec::new(), true))
}

/// `h^±_i = τ_i h_i ± w_i^S` for `i` in `R`.
pub fn field_box(game: &SncGame, r: NodeSet, tau: &GaugeVector) -> Result<FieldBox> {
    if tau.len() != r.len() {
        return Err(Error::LengthMismatch {
            expected: r.len(),
            found: tau.len(),
        });
    }
    let (_, w_s) = degrees(game, r)?;
    let centre: Vec<Weight> = r
        .iter()
        .enumerate()
        .map(|(k, i)| game.field()[i].signed(tau.is_negated(k)))
        .collect();
    let minus = centre.iter().zip(&w_s).map(|(c, w)| c - w).collect();
    let plus = centre.iter().zip(&w_s).map(|(c, w)| c + w).collect();
    FieldBox::new(minus, plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::SignedNetwork;

    fn w(v: i64) -> Weight {
        Weight::from(v)
    }

    fn set(n: usize, items: &[usize]) -> NodeSet {
        NodeSet::from_indices(n, items.iter().copied()).unwrap()
    }

    #[test]
    fn exposed_single_node_fails() {
        let net = SignedNetwork::build(2, [(0, 1, w(1)), (1, 0, w(-1))]).unwrap();
        let g = SncGame::unbiased(net);
        let r = set(2, &[0]);
        let rep = check_polarized_cohesion(&g, r, &GaugeVector::identity(1)).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.margins, [w(-1)]);
    }

    #[test]
    fn signed_inside_rejected_for_consensus() {
        let net = SignedNetwork::build(2, [(0, 1, w(-1))]).unwrap();
        let g = SncGame::unbiased(net);
        assert_eq!(
            check_consensus_cohesion(&g, NodeSet::full(2), Action::Plus),
            Err(Error::NotUnsigned(NodeSet::full(2)))
        );
    }

    #[test]
    fn sign_violation_is_reported() {
        let net = SignedNetwork::build(2, [(0, 1, w(2)), (1, 0, w(2))]).unwrap();
        let g = SncGame::unbiased(net);
        let tau = GaugeVector::from_signs(&[1, -1]).unwrap();
        let rep = check_polarized_cohesion(&g, NodeSet::full(2), &tau).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.sign_violations, [(0, 1), (1, 0)]);
    }

    #[test]
    fn strict_cohesion_rejects_equality() {
        let net =
            SignedNetwork::build(3, [(0, 1, w(1)), (1, 0, w(1)), (0, 2, w(1)), (1, 2, w(-1))])
                .unwrap();
        let g = SncGame::unbiased(net);
        let rep = check_strict_cohesion(&g, set(3, &[0, 1])).unwrap();
        assert_eq!(rep.margins, [w(0), w(0)]);
        assert!(!rep.holds);
    }

    #[test]
    fn isolated_part_has_zero_box() {
        let net = SignedNetwork::build(3, [(0, 1, w(1)), (1, 0, w(1))]).unwrap();
        let g = SncGame::unbiased(net);
        let b = field_box(&g, set(3, &[0, 1]), &GaugeVector::identity(2)).unwrap();
        assert_eq!(b.plus, [w(0), w(0)]);
        assert_eq!(b.minus, [w(0), w(0)]);
    }

    #[test]
    fn inverted_box_rejected() {
        assert_eq!(
            FieldBox::new(vec![w(1)], vec![w(0)]),
            Err(Error::InvertedBox(0))
        );
    }
}
