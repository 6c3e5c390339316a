//! Kelly-width through elimination orders, and D-decompositions.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DiGraph, GraphError};
use crate::vset::{VertexId, VertexSet};

/// Largest vertex count the subset DP accepts.
pub const MAX_DP_VERTICES: usize = 24;
/// Largest vertex count the permutation oracle accepts.
pub const MAX_ORACLE_VERTICES: usize = 8;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("{0} vertices exceed the limit of {1}")]
    TooLarge(usize, usize),
    #[error("not an elimination order: {0}")]
    BadOrder(String),
    #[error("{}: {}", .0.condition, .0.witness)]
    Violation(DViolation),
    #[error("invalid decomposition: {0}")]
    Input(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A linear order on `V(G)`; `order[i]` is eliminated `i`-th.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationOrder {
    order: Vec<VertexId>,
    #[serde(skip)]
    pos: Vec<usize>,
}

impl EliminationOrder {
    pub fn new(g: &DiGraph, order: Vec<VertexId>) -> Result<Self, MeasureError> {
        let n = g.vertex_count();
        if order.len() != n {
            return Err(MeasureError::BadOrder(format!("{} entries for {n} vertices", order.len())));
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(MeasureError::BadOrder(format!("vertex {v} is unknown or repeated")));
            }
            pos[v] = i;
        }
        Ok(EliminationOrder { order, pos })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.order
    }

    pub fn position(&self, v: VertexId) -> usize {
        self.pos[v]
    }

    /// Reads a JSON list of vertex labels or indices.
    pub fn from_json(g: &DiGraph, text: &str) -> Result<Self, MeasureError> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Id(VertexId),
            Label(String),
        }
        let entries: Vec<Entry> =
            serde_json::from_str(text).map_err(|e| MeasureError::BadOrder(format!("JSON: {e}")))?;
        let order = entries
            .into_iter()
            .map(|e| match e {
                Entry::Id(v) => Ok(v),
                Entry::Label(s) => g
                    .vertices()
                    .find(|&v| g.label(v) == s)
                    .ok_or_else(|| MeasureError::BadOrder(format!("no vertex named `{s}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(g, order)
    }

    pub fn to_json(&self, g: &DiGraph) -> serde_json::Value {
        self.order.iter().map(|&v| serde_json::Value::String(g.label(v))).collect()
    }
}

/// Later vertices hit by an arc out of what `v` reaches once everything
/// after `v` is deleted.
pub fn support(g: &DiGraph, ord: &EliminationOrder, v: VertexId) -> VertexSet {
    let upto = g.set_of(g.vertices().filter(|&u| ord.position(u) <= ord.position(v)));
    let reach = g.reach_within(&g.set_of([v]), &upto);
    g.out_neighbours(&reach).difference(&upto)
}

/// One more than the largest support; 0 on the empty graph.
pub fn order_width(g: &DiGraph, ord: &EliminationOrder) -> usize {
    g.vertices().map(|v| support(g, ord, v).len() + 1).max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KellyWidth {
    pub width: usize,
    pub order: EliminationOrder,
}

/// Adjacency as bitmasks, for graphs small enough for the subset DP.
struct Masks {
    succ: Vec<u32>,
}

impl Masks {
    fn new(g: &DiGraph) -> Self {
        let succ = g
            .vertices()
            .map(|v| g.successors(v).iter().fold(0u32, |m, u| m | 1 << u))
            .collect();
        Masks { succ }
    }

    /// `|supp(v)|` when `v` is eliminated last among `set`.
    fn support_size(&self, set: u32, v: usize) -> u32 {
        let mut reach = 1u32 << v;
        let mut frontier = reach;
        let mut out = 0u32;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let s = self.succ[u];
            out |= s;
            let new = s & set & !reach;
            reach |= new;
            frontier |= new;
        }
        (out & !set).count_ones()
    }
}

/// Exact Kelly-width by DP over the set of already-eliminated vertices.
pub fn kelly_width(g: &DiGraph) -> Result<KellyWidth, MeasureError> {
    let n = g.vertex_count();
    if n > MAX_DP_VERTICES {
        return Err(MeasureError::TooLarge(n, MAX_DP_VERTICES));
    }
    if n == 0 {
        return Ok(KellyWidth { width: 0, order: EliminationOrder::new(g, Vec::new())? });
    }
    let masks = Masks::new(g);
    let full = (1u32 << n) - 1;
    // best[S]: least width of an order whose first |S| vertices are S.
    let mut best = vec![u8::MAX; 1 << n];
    let mut last = vec![0u8; 1 << n];
    best[0] = 0;
    for set in 1..=full {
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let prev = best[(set & !(1 << v)) as usize];
            if prev >= best[set as usize] {
                continue;
            }
            let w = prev.max(masks.support_size(set, v) as u8);
            if w < best[set as usize] {
                best[set as usize] = w;
                last[set as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = last[set as usize] as usize;
        order.push(v);
        set &= !(1 << v);
    }
    order.reverse();
    Ok(KellyWidth { width: 1 + best[full as usize] as usize, order: EliminationOrder::new(g, order)? })
}

/// Kelly-width by trying every permutation.
pub fn kelly_width_by_permutations(g: &DiGraph) -> Result<usize, MeasureError> {
    let n = g.vertex_count();
    if n > MAX_ORACLE_VERTICES {
        return Err(MeasureError::TooLarge(n, MAX_ORACLE_VERTICES));
    }
    if n == 0 {
        return Ok(0);
    }
    fn permute(g: &DiGraph, perm: &mut Vec<VertexId>, k: usize, best: &mut usize) {
        if k == perm.len() {
            let ord = EliminationOrder::new(g, perm.clone()).expect("a permutation");
            *best = (*best).min(order_width(g, &ord));
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(g, perm, k + 1, best);
            perm.swap(k, i);
        }
    }
    let mut best = usize::MAX;
    permute(g, &mut g.vertices().collect(), 0, &mut best);
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DCondition {
    /// The index structure is not a tree.
    Tree,
    /// Some vertex occurs in no bag or in a disconnected set of bags.
    Occurrence,
    /// A strongly connected component crosses a tree edge.
    Separation,
}

impl fmt::Display for DCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DCondition::Tree => "tree condition",
            DCondition::Occurrence => "occurrence condition",
            DCondition::Separation => "separation condition",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DViolation {
    pub condition: DCondition,
    pub witness: String,
}

/// Undirected tree with a bag per node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DDecomposition {
    pub bags: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
}

impl DDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    pub fn from_json(g: &DiGraph, text: &str) -> Result<Self, MeasureError> {
        let mut d: DDecomposition = serde_json::from_str(text).map_err(|e| MeasureError::Input(format!("JSON: {e}")))?;
        d.bags = d.bags.iter().map(|b| g.normalize(b)).collect::<Result<_, _>>()?;
        Ok(d)
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(s, t) in &self.edges {
            adj[s].push(t);
            adj[t].push(s);
        }
        adj
    }

    /// Nodes reachable from `start` without using the edge `{start, skip}`.
    fn side(&self, adj: &[Vec<usize>], start: usize, skip: usize) -> Vec<usize> {
        let mut seen = vec![false; self.bags.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for &y in &adj[x] {
                if !seen[y] && !(x == start && y == skip) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out
    }
}

fn violation(condition: DCondition, witness: String) -> MeasureError {
    MeasureError::Violation(DViolation { condition, witness })
}

pub fn validate_d_decomposition(g: &DiGraph, dec: &DDecomposition) -> Result<(), MeasureError> {
    let m = dec.bags.len();
    if m == 0 {
        return if g.vertex_count() == 0 {
            Ok(())
        } else {
            Err(violation(DCondition::Occurrence, "no bags".into()))
        };
    }
    for b in &dec.bags {
        g.check_set(b)?;
    }
    if let Some(&(s, t)) = dec.edges.iter().find(|&&(s, t)| s >= m || t >= m || s == t) {
        return Err(MeasureError::Input(format!("edge ({s}, {t}) does not join two of the {m} nodes")));
    }
    let adj = dec.neighbours();
    if dec.edges.len() + 1 != m || dec.side(&adj, 0, usize::MAX).len() != m {
        return Err(violation(
            DCondition::Tree,
            format!("{m} nodes and {} edges do not form a tree", dec.edges.len()),
        ));
    }
    for v in g.vertices() {
        let occ: Vec<usize> = (0..m).filter(|&t| dec.bags[t].contains(v)).collect();
        let Some(&first) = occ.first() else {
            return Err(violation(DCondition::Occurrence, format!("{} is in no bag", g.label(v))));
        };
        let mut seen = vec![false; m];
        seen[first] = true;
        let mut stack = vec![first];
        let mut count = 0;
        while let Some(x) = stack.pop() {
            count += 1;
            for &y in &adj[x] {
                if !seen[y] && dec.bags[y].contains(v) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if count != occ.len() {
            return Err(violation(
                DCondition::Occurrence,
                format!("the bags holding {} are not connected", g.label(v)),
            ));
        }
    }
    let union = |nodes: &[usize]| {
        let mut u = g.empty_set();
        for &x in nodes {
            u.union_with(&dec.bags[x]);
        }
        u
    };
    for &(s, t) in &dec.edges {
        let (us, ut) = (union(&dec.side(&adj, s, t)), union(&dec.side(&adj, t, s)));
        let sep = dec.bags[s].intersection(&dec.bags[t]);
        let rest = g.full_set().difference(&sep);
        for c in g.components_within(&rest) {
            if !c.is_subset(&us) && !c.is_subset(&ut) {
                return Err(violation(
                    DCondition::Separation,
                    format!("component {} crosses the edge {{{s}, {t}}}", crate::game::labels(g, &c)),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::gen_sibling_tree;
    use crate::graph::GraphBuilder;

    fn bidirected_clique(k: usize) -> DiGraph {
        let mut b = GraphBuilder::with_vertices(k);
        let vs: Vec<_> = (0..k).collect();
        b.clique(&vs).unwrap();
        b.build()
    }

    #[test]
    fn support_examples() {
        let path = DiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let ord = EliminationOrder::new(&path, vec![2, 1, 0]).unwrap();
        assert!(path.vertices().all(|v| support(&path, &ord, v).is_empty()));
        let k3 = bidirected_clique(3);
        let ord = EliminationOrder::new(&k3, vec![0, 1, 2]).unwrap();
        assert_eq!(support(&k3, &ord, 0), k3.set_of([1, 2]));
        let cyc = DiGraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let ord = EliminationOrder::new(&cyc, vec![0, 1]).unwrap();
        assert_eq!(support(&cyc, &ord, 0), cyc.set_of([1]));
        assert!(support(&cyc, &ord, 1).is_empty());
    }

    #[test]
    fn known_widths() {
        let dag = DiGraph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(kelly_width(&dag).unwrap().width, 1);
        for k in 1..=5 {
            let g = bidirected_clique(k);
            let kw = kelly_width(&g).unwrap();
            assert_eq!(kw.width, k);
            assert_eq!(order_width(&g, &kw.order), k);
            assert_eq!(kelly_width_by_permutations(&g).unwrap(), k);
        }
        assert_eq!(kelly_width(&gen_sibling_tree(2)).unwrap().width, 2);
    }

    #[test]
    fn decomposition_examples() {
        let one = DiGraph::from_edges(1, &[]).unwrap();
        let d = DDecomposition { bags: vec![one.set_of([0])], edges: vec![] };
        validate_d_decomposition(&one, &d).unwrap();
        assert_eq!(d.width(), 1);
        let cyc = DiGraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let d = DDecomposition { bags: vec![cyc.set_of([0]), cyc.set_of([1])], edges: vec![(0, 1)] };
        match validate_d_decomposition(&cyc, &d) {
            Err(MeasureError::Violation(v)) => assert_eq!(v.condition, DCondition::Separation),
            other => panic!("{other:?}"),
        }
        let d = DDecomposition { bags: vec![cyc.set_of([0, 1])], edges: vec![(0, 0)] };
        assert!(validate_d_decomposition(&cyc, &d).is_err());
    }

    #[test]
    fn order_json_round_trip() {
        let g = DiGraph::from_edges(3, &[(0, 1)]).unwrap();
        let ord = EliminationOrder::new(&g, vec![2, 0, 1]).unwrap();
        let back = EliminationOrder::from_json(&g, &ord.to_json(&g).to_string()).unwrap();
        assert_eq!(back, ord);
        assert!(EliminationOrder::new(&g, vec![0, 0, 1]).is_err());
    }
}
