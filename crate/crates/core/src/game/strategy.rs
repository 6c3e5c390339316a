use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{territory, CopPosition, GameError, RobberPosition};
use crate::graph::DiGraph;
use crate::vset::VertexSet;

/// Something that tells the cops where to go next.
pub trait CopStrategy {
    fn next_cops(&self, g: &DiGraph, pos: &CopPosition) -> Result<VertexSet, GameError>;
}

/// Something that picks one of the robber's legal replies.
pub trait RobberStrategy {
    /// Returns an index into `options`, which is non-empty.
    fn choose(
        &self,
        g: &DiGraph,
        pos: &RobberPosition,
        options: &[CopPosition],
    ) -> Result<usize, GameError>;
}

impl<T: CopStrategy + ?Sized> CopStrategy for &T {
    fn next_cops(&self, g: &DiGraph, pos: &CopPosition) -> Result<VertexSet, GameError> {
        (**self).next_cops(g, pos)
    }
}

/// Memoryless cop strategy as an explicit table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CopTable {
    pub moves: BTreeMap<CopPosition, VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct CopEntry {
    position: CopPosition,
    #[serde(rename = "move")]
    mv: VertexSet,
}

fn renormalize(g: &DiGraph, s: &VertexSet) -> Result<VertexSet, GameError> {
    Ok(g.normalize(s)?)
}

impl CopTable {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Largest cop placement used.
    pub fn max_cops(&self) -> usize {
        self.moves.values().map(VertexSet::len).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<CopEntry> = self
            .moves
            .iter()
            .map(|(p, m)| CopEntry {
                position: p.clone(),
                mv: m.clone(),
            })
            .collect();
        serde_json::to_value(entries).expect("table serializes")
    }

    pub fn from_json(g: &DiGraph, text: &str) -> Result<Self, GameError> {
        let entries: Vec<CopEntry> = serde_json::from_str(text)
            .map_err(|e| GameError::Invalid(format!("strategy table: {e}")))?;
        let mut moves = BTreeMap::new();
        for e in entries {
            let pos = CopPosition {
                cops: renormalize(g, &e.position.cops)?,
                robber: renormalize(g, &e.position.robber)?,
            };
            moves.insert(pos, renormalize(g, &e.mv)?);
        }
        Ok(CopTable { moves })
    }
}

impl CopStrategy for CopTable {
    fn next_cops(&self, g: &DiGraph, pos: &CopPosition) -> Result<VertexSet, GameError> {
        self.moves
            .get(pos)
            .cloned()
            .ok_or_else(|| GameError::IncompleteStrategy(pos.describe(g)))
    }
}

/// Memoryless robber strategy as an explicit table from robber positions
/// to the chosen component.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RobberTable {
    pub moves: BTreeMap<RobberPosition, VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct RobberEntry {
    position: RobberPosition,
    #[serde(rename = "move")]
    mv: VertexSet,
}

impl RobberTable {
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<RobberEntry> = self
            .moves
            .iter()
            .map(|(p, m)| RobberEntry {
                position: p.clone(),
                mv: m.clone(),
            })
            .collect();
        serde_json::to_value(entries).expect("table serializes")
    }
}

impl RobberStrategy for RobberTable {
    fn choose(
        &self,
        g: &DiGraph,
        pos: &RobberPosition,
        options: &[CopPosition],
    ) -> Result<usize, GameError> {
        let target = self
            .moves
            .get(pos)
            .ok_or_else(|| GameError::IncompleteStrategy(pos.describe(g)))?;
        options
            .iter()
            .position(|o| &o.robber == target)
            .ok_or_else(|| GameError::IncompleteStrategy(pos.describe(g)))
    }
}

/// Robber strategy given as the set of territories from which the cops
/// (to move, holding exactly the guards) cannot win. The robber always
/// enters a component whose territory is in the set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LosingTerritories {
    pub losing_territories: BTreeSet<VertexSet>,
}

impl RobberStrategy for LosingTerritories {
    fn choose(
        &self,
        g: &DiGraph,
        pos: &RobberPosition,
        options: &[CopPosition],
    ) -> Result<usize, GameError> {
        options
            .iter()
            .position(|o| self.losing_territories.contains(&territory(g, o)))
            .ok_or_else(|| GameError::IncompleteStrategy(pos.describe(g)))
    }
}

/// A winning robber strategy in one of its representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RobberPlan {
    Territories(LosingTerritories),
    Table(RobberTable),
}

impl RobberPlan {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            RobberPlan::Territories(t) => serde_json::json!({
                "owner": "robber",
                "losing_territories": t.losing_territories,
            }),
            RobberPlan::Table(t) => serde_json::json!({
                "owner": "robber",
                "table": t.to_json(),
            }),
        }
    }
}

impl RobberStrategy for RobberPlan {
    fn choose(
        &self,
        g: &DiGraph,
        pos: &RobberPosition,
        options: &[CopPosition],
    ) -> Result<usize, GameError> {
        match self {
            RobberPlan::Territories(t) => t.choose(g, pos, options),
            RobberPlan::Table(t) => t.choose(g, pos, options),
        }
    }
}
