//! Run reports and their JSON building blocks.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};
use snc_core::{NodeSet, Profile};

use crate::document::ResolvedGame;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub config: Value,
    pub result: Value,
    pub exit_code: i32,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }
}

/// Writes to `path` through a temporary file in the same directory, or to
/// stdout.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    fn io(p: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
        move |source| CliError::Io {
            path: p.display().to_string(),
            source,
        }
    }
    match path {
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(io(Path::new("<stdout>"))),
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io(path))?;
            tmp.write_all(text.as_bytes()).map_err(io(path))?;
            tmp.persist(path).map_err(|e| io(path)(e.error))?;
            Ok(())
        }
    }
}

pub fn mask_hex(x: Profile) -> String {
    format!("{:#x}", x.bits())
}

/// A profile as its mask and the signs in label order.
pub fn profile_json(g: &ResolvedGame, x: Profile) -> Value {
    json!({
        "mask": mask_hex(x),
        "signs": x.signs(g.node_count()),
    })
}

pub fn labels_json(g: &ResolvedGame, set: NodeSet) -> Value {
    json!(g.set_labels(set))
}

/// `{label: value}` over the members of `set`, in member order.
pub fn per_node<T: Serialize>(g: &ResolvedGame, set: NodeSet, values: &[T]) -> Value {
    let map: Map<String, Value> = set
        .iter()
        .zip(values)
        .map(|(i, v)| (g.labels[i].clone(), json!(v)))
        .collect();
    Value::Object(map)
}

pub fn link_json(g: &ResolvedGame, (i, j): (usize, usize)) -> Value {
    json!([g.labels[i], g.labels[j]])
}
