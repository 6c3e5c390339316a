//! Exact solver for the monotone game.
//!
//! With cop moves restricted to monotone ones, a cop position is decided
//! by the robber's territory `T` alone: the guards `∂T` must stay, free
//! cops are irrelevant to the robber, and placements outside `T` never
//! shrink it. The cops pick a nonempty `X ⊆ T` with `|∂T| + |X| ≤ k`; the
//! robber answers with a component of `G[T ∖ X]` whose territory is
//! strictly smaller. Territories therefore form a finite acyclic position
//! graph that is solved by memoized backward induction.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::explicit::{solve_explicit, Generator};
use super::strategy::{CopTable, LosingTerritories, RobberPlan};
use super::{
    boundary, legal_robber_moves, territory, CopPosition, CopStrategy, GameError, DEFAULT_BUDGET,
};
use crate::graph::DiGraph;
use crate::vset::{Combinations, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Monotonicity is a legality filter on cop moves.
    Monotone,
    /// All cop moves are legal; a monotonicity violation is a robber win.
    Raw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Memoized induction over territories (monotone mode only).
    Territory,
    /// Forward exploration of interned positions plus backward attractor.
    Explicit(Generator),
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub mode: Mode,
    pub engine: Engine,
    /// Cap on explored positions.
    pub budget: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: Mode::Monotone,
            engine: Engine::Territory,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    CopsWin(CopTable),
    RobberWins(RobberPlan),
}

impl Outcome {
    pub fn cops_win(&self) -> bool {
        matches!(self, Outcome::CopsWin(_))
    }
}

/// Memoized territory solver for a fixed graph and cop count.
pub struct TerritorySolver<'g> {
    g: &'g DiGraph,
    k: usize,
    budget: usize,
    work: usize,
    /// `Some(X)`: cops win by adding `X`; `None`: robber wins.
    memo: HashMap<VertexSet, Option<VertexSet>>,
}

impl<'g> TerritorySolver<'g> {
    pub fn new(g: &'g DiGraph, k: usize, budget: usize) -> Self {
        TerritorySolver {
            g,
            k,
            budget,
            work: 0,
            memo: HashMap::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of robber positions examined so far.
    pub fn work(&self) -> usize {
        self.work
    }

    pub fn solved_territories(&self) -> usize {
        self.memo.len()
    }

    /// Do the cops win from territory `t` (holding exactly its guards)?
    pub fn wins(&mut self, t: &VertexSet) -> Result<bool, GameError> {
        if let Some(e) = self.memo.get(t) {
            return Ok(e.is_some());
        }
        let guards = boundary(self.g, t);
        let Some(avail) = self.k.checked_sub(guards.len()) else {
            self.memo.insert(t.clone(), None);
            return Ok(false);
        };
        let limit = avail.min(t.len());
        for size in 1..=limit {
            for x in Combinations::new(t, size, self.g.vertex_count()) {
                self.work += 1;
                if self.work > self.budget {
                    return Err(GameError::Budget(self.budget));
                }
                let mut ok = true;
                for child in self.children(t, &x) {
                    if !self.wins(&child)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    self.memo.insert(t.clone(), Some(x));
                    return Ok(true);
                }
            }
        }
        self.memo.insert(t.clone(), None);
        Ok(false)
    }

    /// Territories the robber can reach after the cops add `x` inside `t`,
    /// largest first.
    fn children(&self, t: &VertexSet, x: &VertexSet) -> Vec<VertexSet> {
        let rest = t.difference(x);
        let mut out: Vec<VertexSet> = self
            .g
            .components_within(&rest)
            .into_iter()
            .map(|c| self.g.reach_within(&c, &rest))
            .collect();
        out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        out.dedup();
        out
    }

    /// Winning addition for territory `t`, if solved and winning.
    pub fn winning_move(&self, t: &VertexSet) -> Option<&VertexSet> {
        self.memo.get(t).and_then(Option::as_ref)
    }

    /// The robber strategy certified by all losing territories seen.
    pub fn losing_territories(&self) -> LosingTerritories {
        LosingTerritories {
            losing_territories: self
                .memo
                .iter()
                .filter(|(_, v)| v.is_none())
                .map(|(k, _)| k.clone())
                .collect(),
        }
    }

    /// Solves from the start position and returns the winner with a
    /// winning strategy.
    pub fn solve(&mut self) -> Result<Outcome, GameError> {
        let all = self.g.full_set();
        if self.wins(&all)? {
            Ok(Outcome::CopsWin(self.materialize()?))
        } else {
            Ok(Outcome::RobberWins(RobberPlan::Territories(
                self.losing_territories(),
            )))
        }
    }

    /// Cop table over all positions consistent with the memoized strategy.
    fn materialize(&self) -> Result<CopTable, GameError> {
        let mut moves = BTreeMap::new();
        let start = CopPosition::initial(self.g);
        let mut queue = VecDeque::from([start]);
        while let Some(pos) = queue.pop_front() {
            if moves.contains_key(&pos) {
                continue;
            }
            let next = self.next_cops(self.g, &pos)?;
            for reply in legal_robber_moves(self.g, &pos.with_move(next.clone())) {
                if !moves.contains_key(&reply) {
                    queue.push_back(reply);
                }
            }
            moves.insert(pos, next);
        }
        Ok(CopTable { moves })
    }
}

impl CopStrategy for TerritorySolver<'_> {
    fn next_cops(&self, g: &DiGraph, pos: &CopPosition) -> Result<VertexSet, GameError> {
        let t = territory(g, pos);
        let x = self
            .winning_move(&t)
            .ok_or_else(|| GameError::IncompleteStrategy(pos.describe(g)))?;
        Ok(boundary(g, &t).union(x))
    }
}

/// Solves the `k`-cop game from the start position.
pub fn solve(g: &DiGraph, k: usize, mode: Mode) -> Result<Outcome, GameError> {
    let engine = match mode {
        Mode::Monotone => Engine::Territory,
        Mode::Raw => Engine::Explicit(Generator::Unpruned),
    };
    solve_with(
        g,
        k,
        &SolveOptions {
            mode,
            engine,
            budget: DEFAULT_BUDGET,
        },
    )
}

pub fn solve_with(g: &DiGraph, k: usize, opts: &SolveOptions) -> Result<Outcome, GameError> {
    if k == 0 {
        return Err(GameError::Invalid("need at least one cop".into()));
    }
    match (opts.engine, opts.mode) {
        (Engine::Territory, Mode::Monotone) => TerritorySolver::new(g, k, opts.budget).solve(),
        (Engine::Territory, Mode::Raw) => Err(GameError::Invalid(
            "the territory engine only plays the monotone game".into(),
        )),
        (Engine::Explicit(gen), mode) => {
            let sol = solve_explicit(g, k, gen, mode, opts.budget)?;
            Ok(sol.into_outcome())
        }
    }
}

/// Result of a DAG-width computation.
#[derive(Clone, Debug)]
pub enum Width {
    Exactly { width: usize, strategy: CopTable },
    ExceedsMax(usize),
}

/// Least `k ≤ k_max` for which the cops win the monotone game.
pub fn dag_width(g: &DiGraph, k_max: usize) -> Result<Width, GameError> {
    dag_width_with_budget(g, k_max, DEFAULT_BUDGET)
}

pub fn dag_width_with_budget(g: &DiGraph, k_max: usize, budget: usize) -> Result<Width, GameError> {
    if k_max == 0 {
        return Err(GameError::Invalid("k_max must be at least 1".into()));
    }
    if g.vertex_count() == 0 {
        return Ok(Width::Exactly {
            width: 0,
            strategy: CopTable::default(),
        });
    }
    for k in 1..=k_max {
        if let Outcome::CopsWin(strategy) = TerritorySolver::new(g, k, budget).solve()? {
            return Ok(Width::Exactly { width: k, strategy });
        }
    }
    Ok(Width::ExceedsMax(k_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bidirected_clique(n: usize) -> DiGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    edges.push((u, v));
                }
            }
        }
        DiGraph::from_edges(n, &edges).unwrap()
    }

    fn width_of(g: &DiGraph) -> usize {
        match dag_width(g, 8).unwrap() {
            Width::Exactly { width, .. } => width,
            Width::ExceedsMax(_) => panic!("too wide"),
        }
    }

    #[test]
    fn single_vertex_one_cop() {
        let g = DiGraph::from_edges(1, &[]).unwrap();
        assert!(solve(&g, 1, Mode::Monotone).unwrap().cops_win());
    }

    #[test]
    fn clique_needs_all_vertices() {
        let k3 = bidirected_clique(3);
        assert!(!solve(&k3, 2, Mode::Monotone).unwrap().cops_win());
        assert!(solve(&k3, 3, Mode::Monotone).unwrap().cops_win());
    }

    #[test]
    fn widths_of_small_graphs() {
        let path = DiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(width_of(&path), 1);
        let two_cycle = DiGraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(width_of(&two_cycle), 2);
    }

    #[test]
    fn budget_is_an_error_not_an_answer() {
        let k5 = bidirected_clique(5);
        let r = solve_with(
            &k5,
            4,
            &SolveOptions {
                budget: 3,
                ..Default::default()
            },
        );
        assert!(matches!(r, Err(GameError::Budget(3))));
    }

    #[test]
    fn zero_cops_rejected() {
        let g = DiGraph::from_edges(1, &[]).unwrap();
        assert!(matches!(solve(&g, 0, Mode::Monotone), Err(GameError::Invalid(_))));
    }
}
