//! JSON netlist documents.
//!
//! ```json
//! {
//!   "width": 3,
//!   "lines": [
//!     { "index": 0, "role": "input", "label": "a" },
//!     { "index": 1, "role": "const0", "label": null },
//!     { "index": 2, "role": "const1", "label": null }
//!   ],
//!   "gates": [ { "kind": "PG", "pins": [0, 1, 2], "stage": "detection" } ],
//!   "outputs": [ { "name": "and", "line": 2 } ],
//!   "restored": [0]
//! }
//! ```
//!
//! Gates apply in array order. `stage` is optional. Lines must be listed in
//! index order and input lines need a unique label.

use std::fs;
use std::path::Path;

use revbcd_core::netlist::{LineRole, Netlist, Stage};
use revbcd_core::{GateKind, NetlistError};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("gate {gate}: unknown gate kind `{name}`")]
    UnknownGate { gate: usize, name: String },
    #[error("gate {gate}: unknown stage `{name}`")]
    UnknownStage { gate: usize, name: String },
    #[error("line entry {position} has index {index}; lines must be listed in order")]
    LineOrder { position: usize, index: usize },
    #[error("line {0} is an input but has no label")]
    MissingLabel(usize),
    #[error("width {width} does not match the {lines} listed lines")]
    Width { width: usize, lines: usize },
    #[error("gate {gate}: {source}")]
    Gate {
        gate: usize,
        #[source]
        source: NetlistError,
    },
    #[error(transparent)]
    Netlist(#[from] NetlistError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    width: usize,
    lines: Vec<LineEntry>,
    gates: Vec<GateEntry>,
    outputs: Vec<OutputEntry>,
    restored: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineEntry {
    index: usize,
    role: RoleName,
    label: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum RoleName {
    Input,
    Const0,
    Const1,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateEntry {
    kind: String,
    pins: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stage: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputEntry {
    name: String,
    line: usize,
}

/// Pretty-printed JSON; identical netlists give identical bytes.
pub fn to_json(netlist: &Netlist) -> String {
    let doc = Document {
        width: netlist.width(),
        lines: netlist
            .roles()
            .iter()
            .enumerate()
            .map(|(index, role)| {
                let (role, label) = match role {
                    LineRole::Input(l) => (RoleName::Input, Some(l.clone())),
                    LineRole::Constant(false) => (RoleName::Const0, None),
                    LineRole::Constant(true) => (RoleName::Const1, None),
                };
                LineEntry { index, role, label }
            })
            .collect(),
        gates: netlist
            .gates()
            .iter()
            .map(|g| GateEntry {
                kind: g.kind().name().to_string(),
                pins: g.pins().to_vec(),
                stage: g.stage().map(|s| s.name().to_string()),
            })
            .collect(),
        outputs: netlist
            .outputs()
            .named()
            .iter()
            .map(|(name, line)| OutputEntry {
                name: name.clone(),
                line: *line,
            })
            .collect(),
        restored: netlist.outputs().restored().iter().copied().collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("netlist documents always serialize");
    text.push('\n');
    text
}

pub fn from_json(text: &str) -> Result<Netlist, FormatError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.width != doc.lines.len() {
        return Err(FormatError::Width {
            width: doc.width,
            lines: doc.lines.len(),
        });
    }
    let mut roles = Vec::with_capacity(doc.lines.len());
    for (position, entry) in doc.lines.into_iter().enumerate() {
        if entry.index != position {
            return Err(FormatError::LineOrder {
                position,
                index: entry.index,
            });
        }
        roles.push(match entry.role {
            RoleName::Input => LineRole::Input(entry.label.ok_or(FormatError::MissingLabel(position))?),
            RoleName::Const0 => LineRole::Constant(false),
            RoleName::Const1 => LineRole::Constant(true),
        });
    }
    let mut netlist = Netlist::new(doc.width, roles)?;
    for (gate, entry) in doc.gates.iter().enumerate() {
        let kind: GateKind = entry.kind.parse().map_err(|_| FormatError::UnknownGate {
            gate,
            name: entry.kind.clone(),
        })?;
        let appended = match &entry.stage {
            None => netlist.append_gate(kind, &entry.pins),
            Some(name) => {
                let stage = Stage::from_name(name).ok_or_else(|| FormatError::UnknownStage {
                    gate,
                    name: name.clone(),
                })?;
                netlist.append_staged(kind, &entry.pins, stage)
            }
        };
        appended.map_err(|source| FormatError::Gate { gate, source })?;
    }
    netlist.designate_outputs(doc.outputs.into_iter().map(|o| (o.name, o.line)), doc.restored)?;
    Ok(netlist)
}

pub fn read_netlist(path: &Path) -> Result<Netlist, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_json(&text)
}

pub fn write_netlist(path: &Path, netlist: &Netlist) -> Result<(), FormatError> {
    fs::write(path, to_json(netlist)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}
