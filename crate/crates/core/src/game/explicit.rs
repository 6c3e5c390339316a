//! Explicit position-graph solver.
//!
//! Explores every position reachable from the start, then runs a
//! retrograde attractor for the cops. Positions are valued by the number
//! of cop moves until capture, so the result also yields the length of the
//! longest play under an optimal cop strategy.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, VecDeque};

use super::solver::{Mode, Outcome};
use super::strategy::{CopTable, RobberPlan, RobberTable};
use super::{free_cops, is_monotone_cop_move, legal_robber_moves, territory, CopPosition, GameError, RobberPosition};
use crate::graph::DiGraph;
use crate::vset::{Combinations, VertexSet};

/// Which cop moves are generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// New cops only inside the robber territory, lifted cops only free ones.
    Pruned,
    /// Every placement of at most `k` cops.
    Unpruned,
}

#[derive(Clone, Debug)]
pub struct ExplicitSolution {
    pub cops_win: bool,
    /// Cop moves until capture under the optimal cop strategy.
    pub rounds: Option<usize>,
    pub cop_positions: usize,
    pub robber_positions: usize,
    pub cop_table: CopTable,
    pub robber_table: RobberTable,
}

impl ExplicitSolution {
    pub fn into_outcome(self) -> Outcome {
        if self.cops_win {
            Outcome::CopsWin(self.cop_table)
        } else {
            Outcome::RobberWins(RobberPlan::Table(self.robber_table))
        }
    }
}

fn subsets(pool: &VertexSet, max: usize, n: usize) -> impl Iterator<Item = VertexSet> + '_ {
    (0..=max.min(pool.len())).flat_map(move |s| Combinations::new(pool, s, n))
}

fn cop_moves(g: &DiGraph, pos: &CopPosition, k: usize, gen: Generator) -> Vec<VertexSet> {
    let n = g.vertex_count();
    match gen {
        Generator::Unpruned => subsets(&g.full_set(), k, n).collect(),
        Generator::Pruned => {
            let fresh = territory(g, pos).difference(&pos.cops);
            let free = free_cops(g, pos);
            let mut out = Vec::new();
            for lifted in subsets(&free, free.len(), n) {
                let kept = pos.cops.difference(&lifted);
                if kept.len() > k {
                    continue;
                }
                for added in subsets(&fresh, k - kept.len(), n) {
                    out.push(kept.union(&added));
                }
            }
            out
        }
    }
}

struct Arena {
    cops: Vec<CopPosition>,
    cop_ids: HashMap<CopPosition, usize>,
    robbers: Vec<RobberPosition>,
    robber_ids: HashMap<RobberPosition, usize>,
    cop_succ: Vec<Vec<usize>>,
    robber_succ: Vec<Vec<usize>>,
    violation: Vec<bool>,
}

impl Arena {
    fn total(&self) -> usize {
        self.cops.len() + self.robbers.len()
    }
}

fn explore(
    g: &DiGraph,
    k: usize,
    gen: Generator,
    mode: Mode,
    budget: usize,
) -> Result<Arena, GameError> {
    let mut a = Arena {
        cops: Vec::new(),
        cop_ids: HashMap::new(),
        robbers: Vec::new(),
        robber_ids: HashMap::new(),
        cop_succ: Vec::new(),
        robber_succ: Vec::new(),
        violation: Vec::new(),
    };
    let start = CopPosition::initial(g);
    a.cop_ids.insert(start.clone(), 0);
    a.cops.push(start);
    a.cop_succ.push(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let pos = a.cops[c].clone();
        let mut succ = Vec::new();
        for next in cop_moves(g, &pos, k, gen) {
            let monotone = is_monotone_cop_move(g, &pos, &next);
            if !monotone && mode == Mode::Monotone {
                continue;
            }
            let rp = pos.with_move(next);
            let r = match a.robber_ids.get(&rp) {
                Some(&r) => r,
                None => {
                    let r = a.robbers.len();
                    a.robber_ids.insert(rp.clone(), r);
                    a.robbers.push(rp.clone());
                    a.violation.push(!monotone);
                    let mut replies = Vec::new();
                    if monotone {
                        for reply in legal_robber_moves(g, &rp) {
                            let id = match a.cop_ids.get(&reply) {
                                Some(&id) => id,
                                None => {
                                    let id = a.cops.len();
                                    a.cop_ids.insert(reply.clone(), id);
                                    a.cops.push(reply);
                                    a.cop_succ.push(Vec::new());
                                    queue.push_back(id);
                                    id
                                }
                            };
                            replies.push(id);
                        }
                    }
                    replies.sort_unstable();
                    replies.dedup();
                    a.robber_succ.push(replies);
                    r
                }
            };
            succ.push(r);
            if a.total() > budget {
                return Err(GameError::Budget(budget));
            }
        }
        succ.sort_unstable();
        succ.dedup();
        a.cop_succ[c] = succ;
    }
    Ok(a)
}

/// Solves the `k`-cop game by exhaustive exploration.
pub fn solve_explicit(
    g: &DiGraph,
    k: usize,
    gen: Generator,
    mode: Mode,
    budget: usize,
) -> Result<ExplicitSolution, GameError> {
    if k == 0 {
        return Err(GameError::Invalid("need at least one cop".into()));
    }
    let a = explore(g, k, gen, mode, budget)?;

    let mut cop_preds = vec![Vec::new(); a.robbers.len()];
    for (c, succ) in a.cop_succ.iter().enumerate() {
        for &r in succ {
            cop_preds[r].push(c);
        }
    }
    let mut robber_preds = vec![Vec::new(); a.cops.len()];
    for (r, succ) in a.robber_succ.iter().enumerate() {
        for &c in succ {
            robber_preds[c].push(r);
        }
    }

    let mut pending: Vec<usize> = a.robber_succ.iter().map(Vec::len).collect();
    let mut worst = vec![0usize; a.robbers.len()];
    let mut robber_value: Vec<Option<usize>> = vec![None; a.robbers.len()];
    let mut cop_value: Vec<Option<usize>> = vec![None; a.cops.len()];
    let mut best: Vec<Option<usize>> = vec![None; a.cops.len()];
    let mut heap = BinaryHeap::new();
    for (r, &p) in pending.iter().enumerate() {
        if p == 0 && !a.violation[r] {
            heap.push(Reverse((1usize, r)));
        }
    }
    while let Some(Reverse((v, r))) = heap.pop() {
        if robber_value[r].is_some() {
            continue;
        }
        robber_value[r] = Some(v);
        for &c in &cop_preds[r] {
            if cop_value[c].is_some() {
                continue;
            }
            cop_value[c] = Some(v);
            best[c] = Some(r);
            for &r2 in &robber_preds[c] {
                pending[r2] -= 1;
                worst[r2] = worst[r2].max(v);
                if pending[r2] == 0 && !a.violation[r2] {
                    heap.push(Reverse((worst[r2] + 1, r2)));
                }
            }
        }
    }

    let cops_win = cop_value[0].is_some();
    let mut cop_table = CopTable::default();
    let mut robber_table = RobberTable::default();
    if cops_win {
        let mut queue = VecDeque::from([0usize]);
        let mut moves = BTreeMap::new();
        while let Some(c) = queue.pop_front() {
            if moves.contains_key(&a.cops[c]) {
                continue;
            }
            let r = best[c].expect("winning positions have a move");
            moves.insert(a.cops[c].clone(), a.robbers[r].cops_new.clone());
            queue.extend(a.robber_succ[r].iter().copied());
        }
        cop_table.moves = moves;
    } else {
        for (r, succ) in a.robber_succ.iter().enumerate() {
            if robber_value[r].is_some() || a.violation[r] {
                continue;
            }
            let escape = succ
                .iter()
                .find(|&&c| cop_value[c].is_none())
                .expect("an unresolved robber position has an unresolved reply");
            robber_table
                .moves
                .insert(a.robbers[r].clone(), a.cops[*escape].robber.clone());
        }
    }
    Ok(ExplicitSolution {
        cops_win,
        rounds: cop_value[0],
        cop_positions: a.cops.len(),
        robber_positions: a.robbers.len(),
        cop_table,
        robber_table,
    })
}
