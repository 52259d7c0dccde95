//! Deontic simplicial logic.
//!
//! Agents and their (joint) commitments are modelled by chromatic simplicial
//! complexes: each vertex is one agent's local state, each simplex a group of
//! agents acting together. The crate provides
//!
//! - [`complex`]: models, faces and the skeleton / star / link operations,
//! - [`formula`]: the formula language with a parser and printer,
//! - [`checker`]: model checking of `D_G` commitments and action boxes,
//! - [`dynamics`]: commitment update models, product update, composition,
//! - [`translation`]: elimination of action boxes via reduction laws,
//! - [`validity`]: exhaustive small-model search and an axiom suite.

pub mod checker;
pub mod complex;
pub mod dot;
pub mod dynamics;
pub mod error;
pub mod formula;
pub mod io;
pub mod scenarios;
pub mod translation;
pub mod validity;

pub use checker::{satisfies, valid_in_model, CheckContext, Evaluator};
pub use complex::{build_model, AgentId, Face, PropId, SimplicialModel, Vertex};
pub use dynamics::{compose, product_update, Event, Product, Registry, UpdateModel};
pub use error::{Error, Result};
pub use formula::{parse, ActionRef, Formula, Group, Node};
pub use translation::{complexity, translate, TranslationReport};
