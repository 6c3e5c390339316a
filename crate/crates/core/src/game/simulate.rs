//! Playing strategies against each other.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use super::solver::{Mode, Outcome, SolveOptions};
use super::strategy::{CopStrategy, RobberStrategy};
use super::{
    free_cops, is_monotone_cop_move, labels, legal_robber_moves, solve_with, territory,
    CopPosition, GameError, RobberPosition,
};
use crate::graph::DiGraph;
use crate::vset::{Combinations, VertexSet};

pub enum CopPlayer<'a> {
    Strategy(&'a dyn CopStrategy),
    /// Searches over all monotone cop moves.
    Exhaustive,
}

pub enum RobberPlayer<'a> {
    Strategy(&'a dyn RobberStrategy),
    /// Tries every reply.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlayEntry {
    Cop(CopPosition),
    Robber(RobberPosition),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RobberWinReason {
    InfinitePlayCycle,
    IllegalMonotonicity,
    CopsStuck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "winner", content = "reason", rename_all = "snake_case")]
pub enum PlayOutcome {
    CopsWin,
    RobberWins(RobberWinReason),
    /// Input ended before the play did.
    Aborted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlayRecord {
    pub entries: Vec<PlayEntry>,
    pub outcome: PlayOutcome,
}

impl PlayRecord {
    pub fn rounds(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e, PlayEntry::Robber(_)))
            .count()
    }

    pub fn transcript(&self, g: &DiGraph) -> String {
        let mut s = String::new();
        let mut round = 0;
        for e in &self.entries {
            match e {
                PlayEntry::Cop(p) if p.is_initial() => {
                    let _ = writeln!(s, "start");
                }
                PlayEntry::Cop(p) => {
                    let _ = writeln!(s, "  robber -> {}", labels(g, &p.robber));
                }
                PlayEntry::Robber(p) => {
                    round += 1;
                    let _ = writeln!(s, "round {round}: cops {} -> {}", labels(g, &p.cops_old), labels(g, &p.cops_new));
                }
            }
        }
        let verdict = match self.outcome {
            PlayOutcome::CopsWin => "cops win (robber captured)".to_string(),
            PlayOutcome::RobberWins(r) => format!("robber wins ({})", reason_text(r)),
            PlayOutcome::Aborted => "aborted".to_string(),
        };
        let _ = writeln!(s, "{verdict}");
        s
    }
}

pub(crate) fn reason_text(r: RobberWinReason) -> &'static str {
    match r {
        RobberWinReason::InfinitePlayCycle => "infinite play",
        RobberWinReason::IllegalMonotonicity => "non-monotone cop move",
        RobberWinReason::CopsStuck => "cops cannot make progress",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimReport {
    /// The cop strategy beats every robber play.
    CopsAlwaysWin { cop_positions: usize, longest_play: usize },
    /// A concrete play; with an exhaustive robber this is a counterexample.
    Play(PlayRecord),
}

impl SimReport {
    pub fn cops_win(&self) -> bool {
        match self {
            SimReport::CopsAlwaysWin { .. } => true,
            SimReport::Play(p) => p.outcome == PlayOutcome::CopsWin,
        }
    }
}

/// Checks the cop move and returns the robber position, or the reason the
/// move loses on the spot.
pub(crate) fn apply_cop_move(
    g: &DiGraph,
    pos: &CopPosition,
    next: VertexSet,
    k: usize,
) -> Result<RobberPosition, RobberWinReason> {
    if next.len() > k {
        return Err(RobberWinReason::CopsStuck);
    }
    if !is_monotone_cop_move(g, pos, &next) {
        return Err(RobberWinReason::IllegalMonotonicity);
    }
    Ok(pos.with_move(next))
}

pub fn simulate(
    g: &DiGraph,
    cop: CopPlayer<'_>,
    robber: RobberPlayer<'_>,
    k: usize,
) -> Result<SimReport, GameError> {
    match (cop, robber) {
        (CopPlayer::Strategy(c), RobberPlayer::Strategy(r)) => play_out(g, c, r, k).map(SimReport::Play),
        (CopPlayer::Strategy(c), RobberPlayer::Exhaustive) => against_all_robbers(g, c, k),
        (CopPlayer::Exhaustive, RobberPlayer::Strategy(r)) => against_scripted_robber(g, r, k).map(SimReport::Play),
        (CopPlayer::Exhaustive, RobberPlayer::Exhaustive) => {
            let opts = SolveOptions { mode: Mode::Monotone, ..Default::default() };
            match solve_with(g, k, &opts)? {
                Outcome::CopsWin(table) => against_all_robbers(g, &table, k),
                Outcome::RobberWins(plan) => against_scripted_robber(g, &plan, k).map(SimReport::Play),
            }
        }
    }
}

fn play_out(
    g: &DiGraph,
    cop: &dyn CopStrategy,
    robber: &dyn RobberStrategy,
    k: usize,
) -> Result<PlayRecord, GameError> {
    let mut pos = CopPosition::initial(g);
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    loop {
        entries.push(PlayEntry::Cop(pos.clone()));
        if !seen.insert(pos.clone()) {
            return Ok(PlayRecord { entries, outcome: PlayOutcome::RobberWins(RobberWinReason::InfinitePlayCycle) });
        }
        let next = cop.next_cops(g, &pos)?;
        let rp = match apply_cop_move(g, &pos, next, k) {
            Ok(rp) => rp,
            Err(reason) => return Ok(PlayRecord { entries, outcome: PlayOutcome::RobberWins(reason) }),
        };
        entries.push(PlayEntry::Robber(rp.clone()));
        let options = legal_robber_moves(g, &rp);
        if options.is_empty() {
            return Ok(PlayRecord { entries, outcome: PlayOutcome::CopsWin });
        }
        let i = robber.choose(g, &rp, &options)?;
        pos = options
            .get(i)
            .cloned()
            .ok_or_else(|| GameError::Invalid(format!("robber chose reply {i} of {}", options.len())))?;
    }
}

/// Result of exploring a cop strategy against every robber reply.
struct Exploration {
    /// Successor cop positions per explored cop position.
    succ: HashMap<CopPosition, Vec<CopPosition>>,
    counterexample: Option<PlayRecord>,
}

fn explore_strategy(g: &DiGraph, cop: &dyn CopStrategy, k: usize) -> Result<Exploration, GameError> {
    #[derive(PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let mut marks: HashMap<CopPosition, Mark> = HashMap::new();
    let mut succ = HashMap::new();
    // Explicit DFS stack: position, its robber position, replies, next reply index.
    struct Frame {
        pos: CopPosition,
        rp: RobberPosition,
        replies: Vec<CopPosition>,
        next: usize,
    }
    let mut stack: Vec<Frame> = Vec::new();
    let path = |stack: &[Frame], tail: Vec<PlayEntry>| {
        let mut entries = Vec::new();
        for f in stack {
            entries.push(PlayEntry::Cop(f.pos.clone()));
            entries.push(PlayEntry::Robber(f.rp.clone()));
        }
        entries.extend(tail);
        entries
    };

    let enter = |pos: CopPosition, stack: &mut Vec<Frame>, marks: &mut HashMap<CopPosition, Mark>| -> Result<Option<PlayRecord>, GameError> {
        match marks.get(&pos) {
            Some(Mark::Done) => return Ok(None),
            Some(Mark::Open) => {
                return Ok(Some(PlayRecord {
                    entries: path(stack, vec![PlayEntry::Cop(pos)]),
                    outcome: PlayOutcome::RobberWins(RobberWinReason::InfinitePlayCycle),
                }))
            }
            None => {}
        }
        let next = cop.next_cops(g, &pos)?;
        match apply_cop_move(g, &pos, next, k) {
            Err(reason) => Ok(Some(PlayRecord {
                entries: path(stack, vec![PlayEntry::Cop(pos)]),
                outcome: PlayOutcome::RobberWins(reason),
            })),
            Ok(rp) => {
                let replies = legal_robber_moves(g, &rp);
                marks.insert(pos.clone(), Mark::Open);
                stack.push(Frame { pos, rp, replies, next: 0 });
                Ok(None)
            }
        }
    };

    if let Some(cx) = enter(CopPosition::initial(g), &mut stack, &mut marks)? {
        return Ok(Exploration { succ, counterexample: Some(cx) });
    }
    while let Some(top) = stack.last_mut() {
        if top.next < top.replies.len() {
            let child = top.replies[top.next].clone();
            top.next += 1;
            if let Some(cx) = enter(child, &mut stack, &mut marks)? {
                return Ok(Exploration { succ, counterexample: Some(cx) });
            }
        } else {
            let f = stack.pop().expect("non-empty");
            marks.insert(f.pos.clone(), Mark::Done);
            succ.insert(f.pos, f.replies);
        }
    }
    Ok(Exploration { succ, counterexample: None })
}

fn longest_from(start: &CopPosition, succ: &HashMap<CopPosition, Vec<CopPosition>>) -> usize {
    // The explored graph is acyclic when the strategy wins.
    let mut memo: HashMap<&CopPosition, usize> = HashMap::new();
    let mut stack = vec![(start, false)];
    while let Some((p, expanded)) = stack.pop() {
        if memo.contains_key(p) {
            continue;
        }
        let children = &succ[p];
        if expanded {
            let best = children.iter().map(|c| memo[c]).max().unwrap_or(0);
            memo.insert(p, best + 1);
        } else {
            stack.push((p, true));
            for c in children {
                if !memo.contains_key(c) {
                    stack.push((c, false));
                }
            }
        }
    }
    memo[start]
}

fn against_all_robbers(g: &DiGraph, cop: &dyn CopStrategy, k: usize) -> Result<SimReport, GameError> {
    let ex = explore_strategy(g, cop, k)?;
    if let Some(cx) = ex.counterexample {
        return Ok(SimReport::Play(cx));
    }
    let start = CopPosition::initial(g);
    Ok(SimReport::CopsAlwaysWin {
        cop_positions: ex.succ.len() - 1,
        longest_play: longest_from(&start, &ex.succ),
    })
}

/// Canonical cop moves from `pos`: monotone, at most `k` cops, new cops
/// only inside the territory, lifted cops only free ones.
fn canonical_moves(g: &DiGraph, pos: &CopPosition, k: usize) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let fresh = territory(g, pos).difference(&pos.cops);
    let guards = pos.cops.difference(&free_cops(g, pos));
    let mut out = Vec::new();
    if guards.len() > k {
        return out;
    }
    for s in 1..=(k - guards.len()).min(fresh.len()) {
        for added in Combinations::new(&fresh, s, n) {
            out.push(guards.union(&added));
        }
    }
    out
}

/// Searches for a cop play that captures a scripted robber.
fn against_scripted_robber(g: &DiGraph, robber: &dyn RobberStrategy, k: usize) -> Result<PlayRecord, GameError> {
    let start = CopPosition::initial(g);
    let mut parent: HashMap<CopPosition, Option<(CopPosition, RobberPosition)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    let rebuild = |parent: &HashMap<CopPosition, Option<(CopPosition, RobberPosition)>>, mut at: CopPosition| {
        let mut rev = Vec::new();
        while let Some(Some((prev, rp))) = parent.get(&at) {
            rev.push(PlayEntry::Cop(at.clone()));
            rev.push(PlayEntry::Robber(rp.clone()));
            at = prev.clone();
        }
        rev.push(PlayEntry::Cop(at));
        rev.reverse();
        rev
    };
    while let Some(pos) = queue.pop_front() {
        for next in canonical_moves(g, &pos, k) {
            let rp = pos.with_move(next);
            let options = legal_robber_moves(g, &rp);
            if options.is_empty() {
                let mut entries = rebuild(&parent, pos.clone());
                entries.push(PlayEntry::Robber(rp));
                return Ok(PlayRecord { entries, outcome: PlayOutcome::CopsWin });
            }
            let i = robber.choose(g, &rp, &options)?;
            let child = options
                .get(i)
                .cloned()
                .ok_or_else(|| GameError::Invalid(format!("robber chose reply {i} of {}", options.len())))?;
            if !parent.contains_key(&child) {
                parent.insert(child.clone(), Some((pos.clone(), rp)));
                queue.push_back(child);
            }
        }
    }
    Ok(PlayRecord {
        entries: vec![PlayEntry::Cop(start)],
        outcome: PlayOutcome::RobberWins(RobberWinReason::CopsStuck),
    })
}

/// Positions met in plays consistent with a winning cop strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PositionCount {
    /// Distinct cop positions, not counting the start position.
    pub cop_positions: usize,
    /// Distinct robber positions.
    pub robber_positions: usize,
}

pub fn count_consistent_positions(g: &DiGraph, cop: &dyn CopStrategy, k: usize) -> Result<PositionCount, GameError> {
    let ex = explore_strategy(g, cop, k)?;
    if let Some(cx) = ex.counterexample {
        return Err(GameError::NotWinning(cx.transcript(g)));
    }
    Ok(PositionCount {
        cop_positions: ex.succ.len() - 1,
        robber_positions: ex.succ.len(),
    })
}

/// Length in rounds of the longest play consistent with a winning strategy.
pub fn longest_play(g: &DiGraph, cop: &dyn CopStrategy, k: usize) -> Result<usize, GameError> {
    let ex = explore_strategy(g, cop, k)?;
    if let Some(cx) = ex.counterexample {
        return Err(GameError::NotWinning(cx.transcript(g)));
    }
    Ok(longest_from(&CopPosition::initial(g), &ex.succ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{solve, CopTable, LosingTerritories};

    #[test]
    fn single_vertex_capture_in_one_round() {
        let g = DiGraph::from_edges(1, &[]).unwrap();
        let mut table = CopTable::default();
        table.moves.insert(CopPosition::initial(&g), g.full_set());
        let robber = LosingTerritories::default();
        let r = simulate(&g, CopPlayer::Strategy(&table), RobberPlayer::Strategy(&robber), 1).unwrap();
        match r {
            SimReport::Play(p) => {
                assert_eq!(p.outcome, PlayOutcome::CopsWin);
                assert_eq!(p.rounds(), 1);
            }
            other => panic!("{other:?}"),
        }
        let c = count_consistent_positions(&g, &table, 1).unwrap();
        assert!(c.cop_positions + c.robber_positions <= 2);
    }

    #[test]
    fn stuck_cops_reported() {
        let g = DiGraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let mut table = CopTable::default();
        table.moves.insert(CopPosition::initial(&g), g.full_set());
        let r = simulate(&g, CopPlayer::Strategy(&table), RobberPlayer::Exhaustive, 1).unwrap();
        let SimReport::Play(p) = r else { panic!() };
        assert_eq!(p.outcome, PlayOutcome::RobberWins(RobberWinReason::CopsStuck));
    }

    #[test]
    fn lifting_a_guard_is_illegal() {
        // a -> b; cops on b while robber on a, then lift b.
        let g = DiGraph::from_edges(2, &[(0, 1)]).unwrap();
        let mut table = CopTable::default();
        table.moves.insert(CopPosition::initial(&g), g.set_of([1]));
        table.moves.insert(CopPosition { cops: g.set_of([1]), robber: g.set_of([0]) }, g.empty_set());
        let r = simulate(&g, CopPlayer::Strategy(&table), RobberPlayer::Exhaustive, 1).unwrap();
        let SimReport::Play(p) = r else { panic!() };
        assert_eq!(p.outcome, PlayOutcome::RobberWins(RobberWinReason::IllegalMonotonicity));
    }

    #[test]
    fn missing_entry_is_an_error() {
        let g = DiGraph::from_edges(2, &[]).unwrap();
        let mut table = CopTable::default();
        table.moves.insert(CopPosition::initial(&g), g.set_of([0]));
        let r = simulate(&g, CopPlayer::Strategy(&table), RobberPlayer::Exhaustive, 1);
        assert!(matches!(r, Err(GameError::IncompleteStrategy(_))));
    }

    #[test]
    fn solver_strategies_resimulate() {
        let g = DiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)]).unwrap();
        for k in 1..=3 {
            match solve(&g, k, Mode::Monotone).unwrap() {
                Outcome::CopsWin(t) => {
                    let r = simulate(&g, CopPlayer::Strategy(&t), RobberPlayer::Exhaustive, k).unwrap();
                    assert!(matches!(r, SimReport::CopsAlwaysWin { .. }));
                }
                Outcome::RobberWins(plan) => {
                    let r = simulate(&g, CopPlayer::Exhaustive, RobberPlayer::Strategy(&plan), k).unwrap();
                    assert!(!r.cops_win());
                }
            }
        }
    }
}
