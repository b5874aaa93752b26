//! Bundled game documents.

use std::collections::BTreeMap;

use snc_core::Weight;

use crate::document::{serialize_document, EdgeEntry, GameDocument};
use crate::CliError;

const BUNDLED: &[(&str, &str)] = &[
    ("fig1", include_str!("../fixtures/fig1.json")),
    ("fig2a", include_str!("../fixtures/fig2a.json")),
    ("fig2b", include_str!("../fixtures/fig2b.json")),
    ("fig3", include_str!("../fixtures/fig3.json")),
    ("fig4", include_str!("../fixtures/fig4.json")),
    ("fig5", include_str!("../fixtures/fig5.json")),
    ("fig6", include_str!("../fixtures/fig6.json")),
    (
        "fig6-variant",
        include_str!("../fixtures/fig6-variant.json"),
    ),
    ("fig7", include_str!("../fixtures/fig7.json")),
    ("fig8", include_str!("../fixtures/fig8.json")),
];

/// Names accepted by [`fixture_text`]; `example4` also takes a field value
/// as `example4(ALPHA)`.
pub fn fixture_names() -> Vec<&'static str> {
    BUNDLED
        .iter()
        .map(|(n, _)| *n)
        .chain(["example4", "example4(ALPHA)"])
        .collect()
}

/// The document text of a bundled fixture.
pub fn fixture_text(name: &str) -> Result<String, CliError> {
    if let Some((_, text)) = BUNDLED.iter().find(|(n, _)| *n == name) {
        return Ok((*text).to_string());
    }
    let alpha = match name {
        "example4" => Some(Weight::zero()),
        _ => name
            .strip_prefix("example4(")
            .and_then(|rest| rest.strip_suffix(')'))
            .and_then(|a| a.trim().parse().ok()),
    };
    match alpha {
        Some(alpha) => Ok(serialize_document(&example4(alpha))),
        None => Err(CliError::UnknownFixture(name.to_string())),
    }
}

/// Two players; 1 coordinates with 2, and 2 only feels the field `alpha`.
pub fn example4(alpha: Weight) -> GameDocument {
    let mut field = BTreeMap::new();
    if !alpha.is_zero() {
        field.insert("2".to_string(), alpha.clone());
    }
    GameDocument {
        name: Some(format!("example4({alpha})")),
        description: Some("Player 1 follows player 2, who only responds to its own field.".into()),
        nodes: vec!["1".into(), "2".into()],
        edges: vec![EdgeEntry {
            from: "1".into(),
            to: "2".into(),
            weight: Weight::one(),
        }],
        field,
        sets: BTreeMap::new(),
        partitions: Vec::new(),
        profiles: BTreeMap::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::{parse_document, ResolvedGame};

    #[test]
    fn every_fixture_resolves_and_round_trips() {
        for name in fixture_names() {
            let name = if name == "example4(ALPHA)" {
                "example4(-3/2)"
            } else {
                name
            };
            let doc = parse_document(&fixture_text(name).unwrap()).unwrap();
            ResolvedGame::new(doc.clone()).unwrap();
            let again = parse_document(&serialize_document(&doc)).unwrap();
            assert_eq!(doc, again, "{name}");
        }
    }

    #[test]
    fn example4_field() {
        let doc = parse_document(&fixture_text("example4(-1)").unwrap()).unwrap();
        assert_eq!(doc.field["2"], Weight::from(-1));
        assert!(matches!(
            fixture_text("example5"),
            Err(CliError::UnknownFixture(_))
        ));
    }
}
