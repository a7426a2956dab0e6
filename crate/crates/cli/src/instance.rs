//! Instance files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "name": "optional",
//!   "description": "optional",
//!   "agents": [
//!     { "kind": "coord", "weight": "3/2" },
//!     { "kind": "anti", "threshold": "0.5", "count": 4 }
//!   ]
//! }
//! ```
//!
//! Each agent gives exactly one of `weight` or `threshold`, as a string
//! (`"p/q"`, integer, or positional decimal) or a JSON integer. `count`
//! repeats the entry. Thresholds become weights via `d = (2r − 1)(n − 1)`.

use std::path::Path;

use cac_core::{parse_rational, weight_of_threshold, Agent, AgentKind, BigRational, Population};
use serde::Deserialize;

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    version: u32,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    description: Option<String>,
    agents: Vec<RawAgent>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAgent {
    kind: String,
    #[serde(default)]
    weight: Option<RawNumber>,
    #[serde(default)]
    threshold: Option<RawNumber>,
    #[serde(default)]
    count: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Int(i64),
    Text(String),
}

impl RawNumber {
    fn parse(&self) -> Result<BigRational, String> {
        match self {
            RawNumber::Int(v) => Ok(BigRational::from_integer((*v).into())),
            RawNumber::Text(s) => parse_rational(s).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: Option<String>,
    pub description: Option<String>,
    pub population: Population,
}

#[derive(Clone)]
enum Value {
    Weight(BigRational),
    Threshold(BigRational),
}

pub fn load(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse(text: &str) -> Result<Instance, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawInstance = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            CliError::Input(inner.to_string())
        } else {
            CliError::Input(format!("{path}: {inner}"))
        }
    })?;
    if raw.version != FORMAT_VERSION {
        return Err(CliError::Input(format!(
            "version: unsupported format version {}, expected {FORMAT_VERSION}",
            raw.version
        )));
    }

    let mut entries = Vec::new();
    for (idx, agent) in raw.agents.iter().enumerate() {
        let field_err = |field: &str, msg: String| CliError::Input(format!("agents[{idx}].{field}: {msg}"));
        let kind = match agent.kind.as_str() {
            "coord" => AgentKind::Coordinating,
            "anti" => AgentKind::AntiCoordinating,
            other => return Err(field_err("kind", format!("expected \"coord\" or \"anti\", got {other:?}"))),
        };
        let value = match (&agent.weight, &agent.threshold) {
            (Some(w), None) => Value::Weight(w.parse().map_err(|m| field_err("weight", m))?),
            (None, Some(t)) => Value::Threshold(t.parse().map_err(|m| field_err("threshold", m))?),
            _ => {
                return Err(CliError::Input(format!(
                    "agents[{idx}]: give exactly one of \"weight\" or \"threshold\""
                )))
            }
        };
        let count = agent.count.unwrap_or(1);
        if count == 0 {
            return Err(field_err("count", "must be at least 1".into()));
        }
        for _ in 0..count {
            entries.push((kind, value.clone()));
        }
    }

    let n = entries.len();
    if n < 2 {
        return Err(CliError::Input(format!("agents: need at least 2 agents, got {n}")));
    }
    let agents = entries
        .into_iter()
        .map(|(kind, value)| match value {
            Value::Weight(w) => Agent::new(kind, w),
            Value::Threshold(r) => Agent::new(kind, weight_of_threshold(&r, n)),
        })
        .collect();
    let population = Population::new(agents)?;
    Ok(Instance {
        name: raw.name,
        description: raw.description,
        population,
    })
}
