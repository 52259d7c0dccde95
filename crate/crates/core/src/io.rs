//! JSON file formats.
//!
//! Model:
//! ```json
//! { "agents": ["a","b"],
//!   "vertices": [{"id": "v1", "agent": "a", "props": ["p"]}],
//!   "facets": [["v1"]] }
//! ```
//! Propositions are base names owned by the vertex's agent.
//!
//! Update model: same shape, but vertices carry a `com` formula instead of
//! `props`, plus `"named": {"X": ["e1", "e2"]}` naming joint actions.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::{build_model, AgentId, SimplicialModel, Vertex};
use crate::dynamics::{Event, UpdateModel};
use crate::error::Result;
use crate::formula::parse;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub agents: Vec<AgentId>,
    pub vertices: Vec<VertexEntry>,
    pub facets: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub agent: AgentId,
    #[serde(default)]
    pub props: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpdateFile {
    pub agents: Vec<AgentId>,
    pub vertices: Vec<EventEntry>,
    pub facets: Vec<Vec<String>>,
    #[serde(default)]
    pub named: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventEntry {
    pub id: String,
    pub agent: AgentId,
    pub com: String,
}

impl ModelFile {
    pub fn from_model(m: &SimplicialModel) -> Self {
        ModelFile {
            agents: m.agents().to_vec(),
            vertices: m
                .vertices()
                .iter()
                .map(|v| VertexEntry {
                    id: v.id().to_string(),
                    agent: v.color().clone(),
                    props: v.labels().iter().map(|p| p.base.clone()).collect(),
                })
                .collect(),
            facets: m.facets().iter().map(|f| m.face_ids(f)).collect(),
        }
    }

    pub fn into_model(self) -> Result<SimplicialModel> {
        let vertices = self
            .vertices
            .into_iter()
            .map(|v| Vertex::with_props(v.id, v.agent, v.props))
            .collect();
        build_model(self.agents, vertices, self.facets)
    }
}

impl UpdateFile {
    pub fn from_update(u: &UpdateModel) -> Self {
        UpdateFile {
            agents: u.agents().to_vec(),
            vertices: u
                .events()
                .map(|e| EventEntry {
                    id: e.id,
                    agent: e.agent,
                    com: e.com.to_string(),
                })
                .collect(),
            facets: u.frame().facets().iter().map(|f| u.frame().face_ids(f)).collect(),
            named: u
                .named()
                .iter()
                .map(|(k, f)| (k.clone(), u.frame().face_ids(f)))
                .collect(),
        }
    }

    pub fn into_update(self) -> Result<UpdateModel> {
        let events = self
            .vertices
            .into_iter()
            .map(|e| Ok(Event::new(e.id, e.agent, parse(&e.com)?)))
            .collect::<Result<Vec<_>>>()?;
        UpdateModel::new(self.agents, events, self.facets, self.named)
    }
}

pub fn model_from_json(text: &str) -> Result<SimplicialModel> {
    serde_json::from_str::<ModelFile>(text)?.into_model()
}

pub fn model_to_json(m: &SimplicialModel) -> String {
    let mut s = serde_json::to_string_pretty(&ModelFile::from_model(m)).expect("serializable");
    s.push('\n');
    s
}

pub fn update_from_json(text: &str) -> Result<UpdateModel> {
    serde_json::from_str::<UpdateFile>(text)?.into_update()
}

pub fn update_to_json(u: &UpdateModel) -> String {
    let mut s = serde_json::to_string_pretty(&UpdateFile::from_update(u)).expect("serializable");
    s.push('\n');
    s
}

pub fn load_model(path: impl AsRef<Path>) -> Result<SimplicialModel> {
    model_from_json(&std::fs::read_to_string(path)?)
}

pub fn save_model(path: impl AsRef<Path>, m: &SimplicialModel) -> Result<()> {
    Ok(std::fs::write(path, model_to_json(m))?)
}

pub fn load_update(path: impl AsRef<Path>) -> Result<UpdateModel> {
    update_from_json(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn model_round_trip() {
        let text = r#"{"agents":["a","b"],
            "vertices":[{"id":"x","agent":"a","props":["p"]},{"id":"y","agent":"b"}],
            "facets":[["y","x"]]}"#;
        let m = model_from_json(text).unwrap();
        assert_eq!(model_from_json(&model_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn update_rejects_dynamic_commitment() {
        let text = r#"{"agents":["a"],
            "vertices":[{"id":"e","agent":"a","com":"[U.x] p@a"}],
            "facets":[["e"]]}"#;
        assert!(matches!(update_from_json(text), Err(Error::DynamicCommitment(_))));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"agents":["a"],"vertices":[],"facets":[],"extra":1}"#;
        assert!(matches!(model_from_json(text), Err(Error::Json(_))));
    }
}
