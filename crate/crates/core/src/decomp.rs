//! DAG decompositions: validation, width, and conversion to and from
//! winning cop strategies.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{
    boundary, legal_robber_moves, simulate, territory, CopPlayer, CopPosition, CopStrategy,
    CopTable, GameError, RobberPlayer, SimReport,
};
use crate::graph::{DiGraph, GraphError};
use crate::vset::{VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    Acyclic,
    D1,
    D2,
    D3,
    D4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Acyclic => "acyclic",
            Axiom::D1 => "D1",
            Axiom::D2 => "D2",
            Axiom::D3 => "D3",
            Axiom::D4 => "D4",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: String,
}

#[derive(Debug, Error)]
pub enum DecompError {
    #[error("{} violated: {}", .0.axiom, .0.witness)]
    Violation(Violation),
    #[error("malformed decomposition: {0}")]
    Input(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl DecompError {
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            DecompError::Violation(v) => Some(v),
            _ => None,
        }
    }
}

fn violated(axiom: Axiom, witness: String) -> DecompError {
    DecompError::Violation(Violation { axiom, witness })
}

/// A DAG `D` with a bag `B_d ⊆ V(G)` per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagDecomposition {
    pub dag: DiGraph,
    pub bags: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    id: usize,
    bag: VertexSet,
}

#[derive(Serialize, Deserialize)]
struct JsonDecomposition {
    nodes: Vec<JsonNode>,
    edges: Vec<(usize, usize)>,
}

impl DagDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.bags.len()
    }

    pub fn roots(&self) -> Vec<usize> {
        self.dag
            .vertices()
            .filter(|&d| self.dag.predecessors(d).is_empty())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let jd = JsonDecomposition {
            nodes: self
                .bags
                .iter()
                .enumerate()
                .map(|(id, bag)| JsonNode { id, bag: bag.clone() })
                .collect(),
            edges: self.dag.edges().collect(),
        };
        serde_json::to_value(jd).expect("decomposition serializes")
    }

    /// Reads the JSON form; bags are rebuilt over `g`'s vertex set.
    pub fn from_json(g: &DiGraph, text: &str) -> Result<Self, DecompError> {
        let mut jd: JsonDecomposition = serde_json::from_str(text)
            .map_err(|e| DecompError::Graph(crate::io::json_error(text, e)))?;
        jd.nodes.sort_by_key(|n| n.id);
        let mut bags = Vec::with_capacity(jd.nodes.len());
        for (i, node) in jd.nodes.into_iter().enumerate() {
            if node.id != i {
                return Err(DecompError::Input(format!("node ids must be 0..n without gaps; found {} at {i}", node.id)));
            }
            bags.push(g.normalize(&node.bag)?);
        }
        let dag = DiGraph::from_edges(bags.len(), &jd.edges)
            .map_err(|e| DecompError::Input(format!("dag: {e}")))?;
        Ok(DagDecomposition { dag, bags })
    }

    /// Nodes reachable from `d`, including `d`.
    fn below(&self, d: usize) -> VertexSet {
        self.dag.reach_within(&self.dag.set_of([d]), &self.dag.full_set())
    }

    /// `B_{≥d}` for every node.
    fn bags_below(&self, g: &DiGraph) -> Vec<VertexSet> {
        let order = self.dag.topological_order().expect("checked acyclic");
        let mut out = vec![g.empty_set(); self.size()];
        for &d in order.iter().rev() {
            let mut acc = self.bags[d].clone();
            for e in self.dag.successors(d) {
                acc.union_with(&out[e]);
            }
            out[d] = acc;
        }
        out
    }

    fn bag_label(&self, g: &DiGraph, d: usize) -> String {
        format!("node {d} {}", crate::game::labels(g, &self.bags[d]))
    }
}

/// Occurrence set `{d : v ∈ B_d}` of every vertex.
fn occurrences(dec: &DagDecomposition, n: usize) -> Vec<VertexSet> {
    let mut occ = vec![dec.dag.empty_set(); n];
    for (d, bag) in dec.bags.iter().enumerate() {
        for v in bag {
            occ[v].insert(d);
        }
    }
    occ
}

/// D2 via convexity: every node between two occurrences of `v` contains
/// `v`. Returns a violating `(a, b, c, v)`.
fn d2_by_convexity(dec: &DagDecomposition, n: usize) -> Option<(usize, usize, usize, VertexId)> {
    let all = dec.dag.full_set();
    for (v, occ) in occurrences(dec, n).into_iter().enumerate() {
        if occ.len() < 2 {
            continue;
        }
        let down = dec.dag.reach_within(&occ, &all);
        let up = dec.dag.back_reach_within(&occ, &all);
        let between = down.intersection(&up).difference(&occ);
        if let Some(b) = between.first() {
            let a = occ.iter().find(|&a| dec.below(a).contains(b)).expect("b is below some occurrence");
            let c = occ
                .iter()
                .find(|&c| dec.below(b).contains(c))
                .expect("b is above some occurrence");
            return Some((a, b, c, v));
        }
    }
    None
}

/// D2 by checking every triple `a ≤ b ≤ c`. Quadratic in the dag size
/// per node; meant for cross-checking the convexity test.
pub fn d2_by_triples(dec: &DagDecomposition) -> Option<(usize, usize, usize)> {
    let m = dec.size();
    let below: Vec<VertexSet> = (0..m).map(|d| dec.below(d)).collect();
    for a in 0..m {
        for b in &below[a] {
            for c in &below[b] {
                let shared = dec.bags[a].intersection(&dec.bags[c]);
                if !shared.is_subset(&dec.bags[b]) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Checks acyclicity and axioms D1 to D4.
pub fn validate(g: &DiGraph, dec: &DagDecomposition) -> Result<(), DecompError> {
    if dec.bags.len() != dec.dag.vertex_count() {
        return Err(DecompError::Input(format!(
            "{} bags for {} dag nodes",
            dec.bags.len(),
            dec.dag.vertex_count()
        )));
    }
    for bag in &dec.bags {
        g.check_set(bag)?;
    }
    if !dec.dag.is_acyclic() {
        let cyc = dec
            .dag
            .components_within(&dec.dag.full_set())
            .into_iter()
            .find(|c| c.len() > 1)
            .expect("a cyclic graph has a nontrivial component");
        return Err(violated(Axiom::Acyclic, format!("nodes {cyc} lie on a cycle")));
    }

    let mut covered = g.empty_set();
    for bag in &dec.bags {
        covered.union_with(bag);
    }
    if let Some(v) = g.full_set().difference(&covered).first() {
        return Err(violated(Axiom::D1, format!("vertex {} is in no bag", g.label(v))));
    }

    if let Some((a, b, c, v)) = d2_by_convexity(dec, g.vertex_count()) {
        return Err(violated(
            Axiom::D2,
            format!("vertex {} is in nodes {a} and {c} but not in node {b} between them", g.label(v)),
        ));
    }

    let below = dec.bags_below(g);
    let everything = g.full_set();
    for r in dec.roots() {
        let closed = g.reach_within(&below[r], &everything);
        if let Some(v) = closed.difference(&below[r]).first() {
            return Err(violated(
                Axiom::D3,
                format!("vertex {} is reachable from below root {}", g.label(v), dec.bag_label(g, r)),
            ));
        }
    }

    for (a, b) in dec.dag.edges() {
        let guard = dec.bags[a].intersection(&dec.bags[b]);
        let part = below[b].difference(&dec.bags[a]);
        let allowed = everything.difference(&guard);
        let closed = g.reach_within(&part, &allowed);
        if let Some(v) = closed.difference(&part).first() {
            return Err(violated(
                Axiom::D4,
                format!(
                    "on edge {a}->{b}, vertex {} escapes past the guards {}",
                    g.label(v),
                    crate::game::labels(g, &guard)
                ),
            ));
        }
    }
    Ok(())
}

/// Builds a decomposition from a winning monotone cop strategy: one node
/// per consistent cop position, holding the guards of the robber's
/// territory plus the cops the strategy places inside it, with an edge to
/// every robber reply.
pub fn decomposition_from_strategy(
    g: &DiGraph,
    strat: &dyn CopStrategy,
    k: usize,
) -> Result<DagDecomposition, DecompError> {
    match simulate(g, CopPlayer::Strategy(strat), RobberPlayer::Exhaustive, k)? {
        SimReport::CopsAlwaysWin { .. } => {}
        SimReport::Play(p) => return Err(GameError::NotWinning(p.transcript(g)).into()),
    }
    let start = CopPosition::initial(g);
    let mut ids: HashMap<CopPosition, usize> = HashMap::from([(start.clone(), 0)]);
    let mut bags = vec![g.empty_set()];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(pos) = queue.pop_front() {
        let id = ids[&pos];
        let t = territory(g, &pos);
        let next = strat.next_cops(g, &pos)?;
        bags[id] = boundary(g, &t).union(&next.intersection(&t));
        for reply in legal_robber_moves(g, &pos.with_move(next)) {
            let child = match ids.get(&reply) {
                Some(&c) => c,
                None => {
                    let c = bags.len();
                    ids.insert(reply.clone(), c);
                    bags.push(g.empty_set());
                    queue.push_back(reply);
                    c
                }
            };
            edges.push((id, child));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let dag = DiGraph::from_edges(bags.len(), &edges)?;
    Ok(DagDecomposition { dag, bags })
}

/// The cop strategy that follows the decomposition: from node `d`, with the
/// robber in `R`, move to the bag of the first child `e` with
/// `R ∩ B_{≥e} ≠ ∅`. With several roots the cops first pass with no cops
/// placed so the robber commits to a root.
pub fn strategy_from_decomposition(g: &DiGraph, dec: &DagDecomposition) -> Result<CopTable, DecompError> {
    validate(g, dec)?;
    let below = dec.bags_below(g);
    let roots = dec.roots();
    let start = CopPosition::initial(g);
    let mut moves = BTreeMap::new();
    // Each queued position remembers the node whose bag the cops hold;
    // `None` is the virtual node above all roots.
    let mut node_of: HashMap<CopPosition, Option<usize>> = HashMap::new();
    let mut queue = VecDeque::new();
    let first = if roots.len() == 1 {
        Some(roots[0])
    } else {
        None
    };
    let first_bag = first.map_or_else(|| g.empty_set(), |r| dec.bags[r].clone());
    moves.insert(start.clone(), first_bag.clone());
    for reply in legal_robber_moves(g, &start.with_move(first_bag)) {
        if node_of.insert(reply.clone(), first).is_none() {
            queue.push_back(reply);
        }
    }
    while let Some(pos) = queue.pop_front() {
        let at = node_of[&pos];
        let candidates: Vec<usize> = match at {
            Some(d) => dec.dag.successors(d).iter().collect(),
            None => roots.clone(),
        };
        let Some(e) = candidates.into_iter().find(|&e| pos.robber.intersects(&below[e])) else {
            return Err(GameError::NotWinning(format!(
                "robber at {} escapes the decomposition",
                pos.describe(g)
            ))
            .into());
        };
        let next = dec.bags[e].clone();
        for reply in legal_robber_moves(g, &pos.with_move(next.clone())) {
            if !node_of.contains_key(&reply) {
                node_of.insert(reply.clone(), Some(e));
                queue.push_back(reply);
            }
        }
        moves.insert(pos, next);
    }
    Ok(CopTable { moves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{count_consistent_positions, solve, Mode, Outcome};

    fn dec(nodes: usize, edges: &[(usize, usize)], bags: Vec<VertexSet>) -> DagDecomposition {
        DagDecomposition { dag: DiGraph::from_edges(nodes, edges).unwrap(), bags }
    }

    #[test]
    fn single_vertex() {
        let g = DiGraph::from_edges(1, &[]).unwrap();
        let d = dec(1, &[], vec![g.full_set()]);
        validate(&g, &d).unwrap();
        assert_eq!((d.width(), d.size()), (1, 1));
        let t = strategy_from_decomposition(&g, &d).unwrap();
        assert_eq!(t.moves[&CopPosition::initial(&g)], g.full_set());
    }

    #[test]
    fn two_cycle_split_bags_fail_d4() {
        let g = DiGraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let bad = dec(2, &[(0, 1)], vec![g.set_of([0]), g.set_of([1])]);
        let err = validate(&g, &bad).unwrap_err();
        assert_eq!(err.violation().unwrap().axiom, Axiom::D4);
        let good = dec(1, &[], vec![g.full_set()]);
        validate(&g, &good).unwrap();
        assert_eq!(good.width(), 2);
        let t = strategy_from_decomposition(&g, &good).unwrap();
        let r = simulate(&g, CopPlayer::Strategy(&t), RobberPlayer::Exhaustive, 2).unwrap();
        assert!(r.cops_win());
    }

    #[test]
    fn axiom_witnesses() {
        let g = DiGraph::from_edges(3, &[(0, 1)]).unwrap();
        let cyclic = dec(2, &[(0, 1), (1, 0)], vec![g.full_set(), g.full_set()]);
        assert_eq!(validate(&g, &cyclic).unwrap_err().violation().unwrap().axiom, Axiom::Acyclic);
        let missing = dec(1, &[], vec![g.set_of([0, 1])]);
        assert_eq!(validate(&g, &missing).unwrap_err().violation().unwrap().axiom, Axiom::D1);
        let gap = dec(3, &[(0, 1), (1, 2)], vec![g.set_of([0]), g.set_of([1]), g.set_of([0, 2])]);
        assert_eq!(validate(&g, &gap).unwrap_err().violation().unwrap().axiom, Axiom::D2);
        assert_eq!(d2_by_triples(&gap), Some((0, 1, 2)));
        let open_root = dec(2, &[], vec![g.set_of([0]), g.set_of([1, 2])]);
        assert_eq!(validate(&g, &open_root).unwrap_err().violation().unwrap().axiom, Axiom::D3);
    }

    #[test]
    fn mismatched_ids_are_input_errors() {
        let g = DiGraph::from_edges(1, &[]).unwrap();
        let d = dec(2, &[], vec![g.full_set()]);
        assert!(matches!(validate(&g, &d), Err(DecompError::Input(_))));
    }

    #[test]
    fn round_trip_on_small_graph() {
        let g = DiGraph::from_edges(5, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 2), (3, 4), (4, 0)]).unwrap();
        let (k, table) = (1..=5)
            .find_map(|k| match solve(&g, k, Mode::Monotone).unwrap() {
                Outcome::CopsWin(t) => Some((k, t)),
                _ => None,
            })
            .unwrap();
        let d = decomposition_from_strategy(&g, &table, k).unwrap();
        validate(&g, &d).unwrap();
        assert!(d.width() <= k);
        let back = strategy_from_decomposition(&g, &d).unwrap();
        let count = count_consistent_positions(&g, &back, d.width()).unwrap();
        assert!(count.cop_positions <= d.size() * g.vertex_count());
        let again = DagDecomposition::from_json(&g, &d.to_json().to_string()).unwrap();
        assert_eq!(again, d);
    }
}
