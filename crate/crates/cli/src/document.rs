//! JSON game documents: labelled nodes, weighted links, an external field,
//! named node sets and named (possibly partial) profiles.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use snc_core::game::SncGame;
use snc_core::network::SignedNetwork;
use snc_core::{Action, GaugeVector, NodeSet, Profile, Weight};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeEntry>,
    /// Field per label; unlisted labels get zero.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub field: BTreeMap<String, Weight>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sets: BTreeMap<String, Vec<String>>,
    /// Pairs of set names that must not overlap.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub partitions: Vec<[String; 2]>,
    /// Label to `+1`/`-1`; a profile may cover only some nodes.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub profiles: BTreeMap<String, BTreeMap<String, i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub from: String,
    pub to: String,
    pub weight: Weight,
}

/// Orders labels so that embedded numbers compare by value: `"2" < "10"`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for k in 1..=bytes.len() {
            if k == bytes.len() || bytes[k].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..k]));
                start = k;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(&cb) {
        let ord = if *da && *db {
            let (ta, tb) = (sa.trim_start_matches('0'), sb.trim_start_matches('0'));
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb))
        } else {
            sa.cmp(sb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

pub fn parse_document(text: &str) -> Result<GameDocument, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

pub fn serialize_document(doc: &GameDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    text
}

/// A validated document with its game built.
#[derive(Debug, Clone)]
pub struct ResolvedGame {
    pub document: GameDocument,
    /// Labels in index order.
    pub labels: Vec<String>,
    index: BTreeMap<String, usize>,
    pub game: SncGame,
}

impl ResolvedGame {
    pub fn new(document: GameDocument) -> Result<Self, CliError> {
        let mut labels = document.nodes.clone();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(CliError::DuplicateLabel(l.clone()));
            }
        }
        labels.sort_by(|a, b| natural_cmp(a, b));
        let index: BTreeMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| CliError::UnknownLabel(l.to_string()))
        };

        let mut edges = Vec::with_capacity(document.edges.len());
        for e in &document.edges {
            edges.push((lookup(&e.from)?, lookup(&e.to)?, e.weight.clone()));
        }
        let network =
            SignedNetwork::build(labels.len(), edges).map_err(|e| label_error(e, &labels))?;
        let mut field = vec![Weight::zero(); labels.len()];
        for (l, h) in &document.field {
            field[lookup(l)?] = h.clone();
        }
        let game = SncGame::new(network, field)?;
        let resolved = ResolvedGame {
            labels,
            index,
            game,
            document,
        };
        for name in resolved.document.sets.keys() {
            resolved.set(name)?;
        }
        for name in resolved.document.profiles.keys() {
            resolved.partial_profile(name)?;
        }
        for [a, b] in &resolved.document.partitions {
            let overlap = resolved.set(a)?.intersection(resolved.set(b)?);
            if let Some(i) = overlap.iter().next() {
                return Err(CliError::Overlap(
                    a.clone(),
                    b.clone(),
                    resolved.labels[i].clone(),
                ));
            }
        }
        Ok(resolved)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Result<usize, CliError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| CliError::UnknownLabel(label.to_string()))
    }

    pub fn set(&self, name: &str) -> Result<NodeSet, CliError> {
        let members = self
            .document
            .sets
            .get(name)
            .ok_or_else(|| CliError::UnknownSet(name.to_string()))?;
        let mut set = NodeSet::empty();
        for l in members {
            set.insert(self.index_of(l)?);
        }
        Ok(set)
    }

    /// The nodes a named profile covers and their actions (`-1` elsewhere).
    pub fn partial_profile(&self, name: &str) -> Result<(NodeSet, Profile), CliError> {
        let entries = self
            .document
            .profiles
            .get(name)
            .ok_or_else(|| CliError::UnknownProfile(name.to_string()))?;
        let mut covered = NodeSet::empty();
        let mut x = Profile::default();
        for (l, &v) in entries {
            let i = self.index_of(l)?;
            let a = Action::from_sign(v).map_err(|_| CliError::BadAction {
                profile: name.to_string(),
                label: l.clone(),
                value: v,
            })?;
            covered.insert(i);
            x = x.with(i, a);
        }
        Ok((covered, x))
    }

    /// A named profile that must assign every node.
    pub fn full_profile(&self, name: &str) -> Result<Profile, CliError> {
        let (covered, x) = self.partial_profile(name)?;
        if covered != NodeSet::full(self.node_count()) {
            let missing = NodeSet::full(self.node_count()).difference(covered);
            return Err(CliError::Usage(format!(
                "profile `{name}` leaves {} unassigned",
                self.describe_set(missing)
            )));
        }
        Ok(x)
    }

    /// The entries of a named profile on `r`, as a gauge over the members of
    /// `r`. Every member must be assigned.
    pub fn gauge_on(&self, name: &str, r: NodeSet) -> Result<GaugeVector, CliError> {
        let (covered, x) = self.partial_profile(name)?;
        if !r.is_subset(covered) {
            return Err(CliError::Usage(format!(
                "profile `{name}` leaves {} unassigned",
                self.describe_set(r.difference(covered))
            )));
        }
        Ok(GaugeVector::from_profile(r.len(), x.restrict(r)))
    }

    pub fn set_labels(&self, set: NodeSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    fn describe_set(&self, set: NodeSet) -> String {
        format!("{{{}}}", self.set_labels(set).join(", "))
    }
}

fn label_error(err: snc_core::Error, labels: &[String]) -> CliError {
    use snc_core::Error as E;
    let l = |i: usize| labels[i].clone();
    match err {
        E::SelfLoop(i) => CliError::Network(format!("self-loop on `{}`", l(i))),
        E::ZeroWeight(i, j) => {
            CliError::Network(format!("zero weight on link `{}` -> `{}`", l(i), l(j)))
        }
        E::DuplicateEdge(i, j) => {
            CliError::Network(format!("duplicate link `{}` -> `{}`", l(i), l(j)))
        }
        other => CliError::Core(other),
    }
}
