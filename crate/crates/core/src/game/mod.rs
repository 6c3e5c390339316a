//! The DAG-width cops-and-robber game.
//!
//! Cop positions are pairs `(C, R)` where `R` is a strongly connected
//! component of `G − C`; robber positions are triples `(C, C', R)`. The
//! start position is `(∅, ∅)` and is the only cop position with an empty
//! robber component: from it the robber may enter any component.
//!
//! The robber's *territory* in `(C, R)` is `reach(R)` in `G − C`. It is
//! closed in `G − C`, so its out-boundary (the *guards*) is a subset of `C`.
//! A cop move is monotone exactly when it keeps all guards.

mod explicit;
mod play;
mod simulate;
mod solver;
mod strategy;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DiGraph, GraphError};
use crate::vset::VertexSet;

pub use explicit::{solve_explicit, ExplicitSolution, Generator};
pub use play::{interactive_play, HumanSide, Machine};
pub use simulate::{
    count_consistent_positions, longest_play, simulate, CopPlayer, PlayEntry, PlayOutcome,
    PlayRecord, PositionCount, RobberPlayer, RobberWinReason, SimReport,
};
pub use solver::{dag_width, dag_width_with_budget, solve, solve_with, Engine, Mode, Outcome, SolveOptions, TerritorySolver, Width};
pub use strategy::{
    CopStrategy, CopTable, LosingTerritories, RobberPlan, RobberStrategy, RobberTable,
};

/// Default cap on explored positions.
pub const DEFAULT_BUDGET: usize = 50_000_000;

#[derive(Debug, Error)]
pub enum GameError {
    #[error("budget exceeded: more than {0} positions explored")]
    Budget(usize),
    #[error("incomplete strategy: no move defined at {0}")]
    IncompleteStrategy(String),
    #[error("strategy is not winning: {0}")]
    NotWinning(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A cop position `(C, R)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CopPosition {
    pub cops: VertexSet,
    pub robber: VertexSet,
}

/// A robber position `(C, C', R)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RobberPosition {
    pub cops_old: VertexSet,
    pub cops_new: VertexSet,
    pub robber: VertexSet,
}

impl CopPosition {
    pub fn initial(g: &DiGraph) -> Self {
        CopPosition {
            cops: g.empty_set(),
            robber: g.empty_set(),
        }
    }

    pub fn is_initial(&self) -> bool {
        self.robber.is_empty()
    }

    pub fn with_move(&self, cops_new: VertexSet) -> RobberPosition {
        RobberPosition {
            cops_old: self.cops.clone(),
            cops_new,
            robber: self.robber.clone(),
        }
    }

    /// Checks the position invariant: `R` is a component of `G − C`.
    pub fn validate(&self, g: &DiGraph) -> Result<(), GameError> {
        g.check_set(&self.cops)?;
        g.check_set(&self.robber)?;
        if self.is_initial() {
            return if self.cops.is_empty() {
                Ok(())
            } else {
                Err(GameError::Invalid("empty robber component with cops placed".into()))
            };
        }
        let rest = g.full_set().difference(&self.cops);
        let comps = g.components_within(&rest);
        if comps.contains(&self.robber) {
            Ok(())
        } else {
            Err(GameError::Invalid(format!(
                "{} is not a component of G - {}",
                self.robber, self.cops
            )))
        }
    }

    pub fn describe(&self, g: &DiGraph) -> String {
        format!("(C={}, R={})", labels(g, &self.cops), labels(g, &self.robber))
    }
}

impl RobberPosition {
    pub fn is_initial(&self) -> bool {
        self.robber.is_empty()
    }

    pub fn describe(&self, g: &DiGraph) -> String {
        format!(
            "(C={}, C'={}, R={})",
            labels(g, &self.cops_old),
            labels(g, &self.cops_new),
            labels(g, &self.robber)
        )
    }
}

pub(crate) fn labels(g: &DiGraph, s: &VertexSet) -> String {
    let names: Vec<String> = s.iter().map(|v| g.label(v)).collect();
    format!("{{{}}}", names.join(","))
}

/// The robber's territory in a cop position: everything he can still
/// reach. For the start position this is all of `V(G)`.
pub fn territory(g: &DiGraph, pos: &CopPosition) -> VertexSet {
    if pos.is_initial() {
        g.full_set()
    } else {
        let allowed = g.full_set().difference(&pos.cops);
        g.reach_within(&pos.robber, &allowed)
    }
}

/// Out-boundary of a vertex set.
pub fn boundary(g: &DiGraph, set: &VertexSet) -> VertexSet {
    g.out_neighbours(set).difference(set)
}

/// Cops on `C` that may be lifted without letting the robber reach them.
pub fn free_cops(g: &DiGraph, pos: &CopPosition) -> VertexSet {
    if pos.is_initial() {
        return g.empty_set();
    }
    let mut free = g.empty_set();
    for v in &pos.cops {
        let mut blockers = pos.cops.clone();
        blockers.remove(v);
        let allowed = g.full_set().difference(&blockers);
        if !g.reach_within(&pos.robber, &allowed).contains(v) {
            free.insert(v);
        }
    }
    free
}

/// Region the robber may move into during the round `(C, C', R)`:
/// `reach(R)` in `G − (C ∩ C')`, or everything at the start.
pub fn robber_region(g: &DiGraph, pos: &RobberPosition) -> VertexSet {
    if pos.is_initial() {
        g.full_set()
    } else {
        let blockers = pos.cops_old.intersection(&pos.cops_new);
        let allowed = g.full_set().difference(&blockers);
        g.reach_within(&pos.robber, &allowed)
    }
}

fn monotone_by_reach(g: &DiGraph, pos: &CopPosition, cops_new: &VertexSet) -> bool {
    if pos.is_initial() {
        return true;
    }
    let before = territory(g, pos);
    let region = robber_region(g, &pos.with_move(cops_new.clone()));
    region.is_subset(&before)
}

fn monotone_by_lifted_cops(g: &DiGraph, pos: &CopPosition, cops_new: &VertexSet) -> bool {
    if pos.is_initial() {
        return true;
    }
    let region = robber_region(g, &pos.with_move(cops_new.clone()));
    let lifted = pos.cops.difference(cops_new);
    !region.intersects(&lifted)
}

/// True iff moving from `C` to `cops_new` cannot let the robber reach a
/// vertex that was unavailable to him: `reach(R, C ∩ C') ⊆ reach(R, C)`.
/// Equivalently no lifted cop is reachable in `G − (C ∩ C')`.
pub fn is_monotone_cop_move(g: &DiGraph, pos: &CopPosition, cops_new: &VertexSet) -> bool {
    let by_reach = monotone_by_reach(g, pos, cops_new);
    debug_assert_eq!(by_reach, monotone_by_lifted_cops(g, pos, cops_new));
    by_reach
}

/// Both formulations of the monotonicity test, for cross-checking.
pub fn monotonicity_formulations(g: &DiGraph, pos: &CopPosition, cops_new: &VertexSet) -> (bool, bool) {
    (
        monotone_by_reach(g, pos, cops_new),
        monotone_by_lifted_cops(g, pos, cops_new),
    )
}

/// All robber replies from `(C, C', R)`: components of `G − C'` inside the
/// robber region. Empty means the robber is caught.
pub fn legal_robber_moves(g: &DiGraph, pos: &RobberPosition) -> Vec<CopPosition> {
    let region = robber_region(g, pos).difference(&pos.cops_new);
    g.components_within(&region)
        .into_iter()
        .map(|robber| CopPosition {
            cops: pos.cops_new.clone(),
            robber,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unchanged_cops_are_monotone() {
        let g = DiGraph::from_edges(2, &[(0, 1)]).unwrap();
        let pos = CopPosition {
            cops: g.set_of([1]),
            robber: g.set_of([0]),
        };
        assert!(is_monotone_cop_move(&g, &pos, &g.set_of([1])));
        assert!(!is_monotone_cop_move(&g, &pos, &g.empty_set()));
        assert_eq!(monotonicity_formulations(&g, &pos, &g.empty_set()), (false, false));
    }

    #[test]
    fn capture_has_no_replies() {
        let g = DiGraph::from_edges(2, &[(0, 1)]).unwrap();
        let pos = RobberPosition {
            cops_old: g.set_of([1]),
            cops_new: g.set_of([0, 1]),
            robber: g.set_of([0]),
        };
        assert!(legal_robber_moves(&g, &pos).is_empty());
    }

    #[test]
    fn initial_move_on_cycle() {
        let g = DiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let moves = legal_robber_moves(&g, &CopPosition::initial(&g).with_move(g.empty_set()));
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].robber, g.full_set());
    }

    #[test]
    fn free_cops_on_path() {
        // a -> b -> c, cops on b and c, robber on a: only c is free.
        let g = DiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let pos = CopPosition {
            cops: g.set_of([1, 2]),
            robber: g.set_of([0]),
        };
        assert_eq!(free_cops(&g, &pos), g.set_of([2]));
        assert_eq!(boundary(&g, &territory(&g, &pos)), g.set_of([1]));
    }

    #[test]
    fn position_validation() {
        let g = DiGraph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        let good = CopPosition {
            cops: g.set_of([2]),
            robber: g.set_of([0, 1]),
        };
        assert!(good.validate(&g).is_ok());
        let bad = CopPosition {
            cops: g.set_of([2]),
            robber: g.set_of([0]),
        };
        assert!(bad.validate(&g).is_err());
    }
}
