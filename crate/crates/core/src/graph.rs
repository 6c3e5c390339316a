//! Simple directed graphs over dense vertex ids, with optional names and
//! gadget role labels kept as sidecar metadata.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vset::{VertexId, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// Which part of a gadget level a vertex belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "part")]
pub enum Part {
    M,
    D,
    A,
    /// `b_i` of the level.
    B { index: usize },
    /// The clique `C_i` of the level.
    C { index: usize },
    /// Subdivision vertex `c_i` of an existential level.
    #[serde(rename = "c")]
    Connector { index: usize },
    /// Hub vertex of the clause gadget.
    #[serde(rename = "F-hub")]
    Hub,
    /// Literal vertex of clause `clause`.
    #[serde(rename = "F-clause")]
    Clause { clause: usize, literal: usize },
    /// The single-vertex bottom of the recursion.
    Base,
}

/// Gadget role: level index plus part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Role {
    pub level: usize,
    #[serde(flatten)]
    pub part: Part,
}

impl Role {
    pub fn new(level: usize, part: Part) -> Self {
        Role { level, part }
    }
}

/// Finite simple digraph. Build with [`GraphBuilder`]; immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
    names: Vec<Option<String>>,
    roles: Vec<Option<Role>>,
}

#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    names: Vec<Option<String>>,
    roles: Vec<Option<Role>>,
    edges: Vec<(VertexId, VertexId)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        GraphBuilder {
            names: vec![None; n],
            roles: vec![None; n],
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn add_vertex(&mut self, name: Option<String>, role: Option<Role>) -> VertexId {
        self.names.push(name);
        self.roles.push(role);
        self.names.len() - 1
    }

    /// Adds `count` vertices sharing a role, named `prefix` + index.
    pub fn add_vertices(&mut self, count: usize, prefix: &str, role: Option<Role>) -> Vec<VertexId> {
        (0..count)
            .map(|i| self.add_vertex(Some(format!("{prefix}{i}")), role.clone()))
            .collect()
    }

    /// Adds the arc `u -> v`. Duplicates are collapsed at build time;
    /// self-loops are rejected.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        let n = self.names.len();
        if u >= n {
            return Err(GraphError::UnknownVertex(u));
        }
        if v >= n {
            return Err(GraphError::UnknownVertex(v));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.edges.push((u, v));
        Ok(())
    }

    /// Adds both `u -> v` and `v -> u`.
    pub fn add_undirected(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.add_edge(u, v)?;
        self.add_edge(v, u)
    }

    /// All arcs from `from` to `to`, skipping pairs `(x, x)`.
    pub fn connect_all(&mut self, from: &[VertexId], to: &[VertexId]) -> Result<(), GraphError> {
        for &u in from {
            for &v in to {
                if u != v {
                    self.add_edge(u, v)?;
                }
            }
        }
        Ok(())
    }

    /// Makes `vs` a bidirected clique.
    pub fn clique(&mut self, vs: &[VertexId]) -> Result<(), GraphError> {
        self.connect_all(vs, vs)
    }

    pub fn build(self) -> DiGraph {
        let n = self.names.len();
        let mut out = vec![VertexSet::empty(n); n];
        let mut inn = vec![VertexSet::empty(n); n];
        for (u, v) in self.edges {
            out[u].insert(v);
            inn[v].insert(u);
        }
        DiGraph {
            n,
            out,
            inn,
            names: self.names,
            roles: self.roles,
        }
    }
}

impl DiGraph {
    /// Graph on `n` vertices with the given arcs.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::with_vertices(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(VertexSet::len).sum()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |v| (u, v)))
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && self.out[u].contains(v)
    }

    pub fn successors(&self, v: VertexId) -> &VertexSet {
        &self.out[v]
    }

    pub fn predecessors(&self, v: VertexId) -> &VertexSet {
        &self.inn[v]
    }

    pub fn name(&self, v: VertexId) -> Option<&str> {
        self.names[v].as_deref()
    }

    /// Name if present, else the numeric id.
    pub fn label(&self, v: VertexId) -> String {
        self.names[v].clone().unwrap_or_else(|| v.to_string())
    }

    pub fn role(&self, v: VertexId) -> Option<&Role> {
        self.roles[v].as_ref()
    }

    pub fn roles(&self) -> &[Option<Role>] {
        &self.roles
    }

    /// Vertices whose role satisfies `pred`.
    pub fn vertices_with_role(&self, pred: impl Fn(&Role) -> bool) -> VertexSet {
        VertexSet::from_iter_n(
            self.n,
            self.vertices()
                .filter(|&v| self.roles[v].as_ref().is_some_and(&pred)),
        )
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.n)
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn set_of(&self, vs: impl IntoIterator<Item = VertexId>) -> VertexSet {
        VertexSet::from_iter_n(self.n, vs)
    }

    /// Checks that every member of `s` is a vertex and that the set has
    /// this graph's universe.
    pub fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        if let Some(v) = s.iter().find(|&v| v >= self.n) {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(())
    }

    /// Rebuilds `s` over this graph's universe.
    pub fn normalize(&self, s: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check_set(s)?;
        Ok(self.set_of(s.iter()))
    }

    /// Union of out-neighbourhoods of `s`.
    pub fn out_neighbours(&self, s: &VertexSet) -> VertexSet {
        let mut r = self.empty_set();
        for v in s {
            r.union_with(&self.out[v]);
        }
        r
    }

    /// Vertices reachable from `from ∩ allowed` inside `G[allowed]`,
    /// sources included. Unchecked fast path.
    pub fn reach_within(&self, from: &VertexSet, allowed: &VertexSet) -> VertexSet {
        self.closure(from, allowed, &self.out)
    }

    /// Vertices that reach `to ∩ allowed` inside `G[allowed]`.
    pub fn back_reach_within(&self, to: &VertexSet, allowed: &VertexSet) -> VertexSet {
        self.closure(to, allowed, &self.inn)
    }

    fn closure(&self, from: &VertexSet, allowed: &VertexSet, adj: &[VertexSet]) -> VertexSet {
        let mut seen = from.intersection(allowed);
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = self.empty_set();
            for v in &frontier {
                next.union_with(&adj[v]);
            }
            next.intersect_with(allowed);
            next.difference_with(&seen);
            seen.union_with(&next);
            frontier = next;
        }
        seen
    }

    /// Strongly connected components of `G[allowed]`, ordered by smallest
    /// member.
    pub fn components_within(&self, allowed: &VertexSet) -> Vec<VertexSet> {
        let mut remaining = allowed.clone();
        let mut out = Vec::new();
        while let Some(v) = remaining.first() {
            let seed = VertexSet::singleton(self.n, v);
            let fwd = self.reach_within(&seed, &remaining);
            let mut scc = self.back_reach_within(&seed, &fwd);
            scc.intersect_with(&fwd);
            remaining.difference_with(&scc);
            out.push(scc);
        }
        out
    }

    /// True if the graph has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        self.components_within(&self.full_set())
            .iter()
            .all(|c| c.len() == 1)
    }

    /// A topological order, if acyclic.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let mut indeg: Vec<usize> = self.inn.iter().map(VertexSet::len).collect();
        let mut stack: Vec<VertexId> = (0..self.n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for w in self.out[v].iter().collect::<Vec<_>>().into_iter().rev() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// Induced subgraph on `keep`, with vertices renumbered in increasing
    /// order. Returns the graph and the old id of each new vertex.
    pub fn induced(&self, keep: &VertexSet) -> (DiGraph, Vec<VertexId>) {
        let old: Vec<VertexId> = keep.iter().collect();
        let mut new_id = vec![usize::MAX; self.n];
        let mut b = GraphBuilder::new();
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
            b.add_vertex(self.names[v].clone(), self.roles[v].clone());
        }
        for &u in &old {
            for v in self.out[u].iter().filter(|&v| keep.contains(v)) {
                b.add_edge(new_id[u], new_id[v]).expect("edge of a simple graph");
            }
        }
        (b.build(), old)
    }
}

/// All vertices reachable from `from ∖ removed` in `g − removed`.
pub fn reach(g: &DiGraph, from: &VertexSet, removed: &VertexSet) -> Result<VertexSet, GraphError> {
    g.check_set(from)?;
    g.check_set(removed)?;
    let from = g.normalize(from)?;
    let allowed = g.full_set().difference(&g.normalize(removed)?);
    Ok(g.reach_within(&from, &allowed))
}

/// Strongly connected components of `g − removed`, ordered by smallest member.
pub fn components(g: &DiGraph, removed: &VertexSet) -> Result<Vec<VertexSet>, GraphError> {
    let allowed = g.full_set().difference(&g.normalize(removed)?);
    Ok(g.components_within(&allowed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> DiGraph {
        DiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn cycle3() -> DiGraph {
        DiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn reach_examples() {
        let single = DiGraph::from_edges(1, &[]).unwrap();
        let v = single.set_of([0]);
        assert_eq!(reach(&single, &v, &single.empty_set()).unwrap(), v);

        let p = path3();
        let r = reach(&p, &p.set_of([0]), &p.set_of([1])).unwrap();
        assert_eq!(r.to_vec(), vec![0]);

        let c = cycle3();
        let r = reach(&c, &c.set_of([1]), &c.empty_set()).unwrap();
        assert_eq!(r.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn removed_sources_are_ignored() {
        let p = path3();
        let r = reach(&p, &p.set_of([0, 1]), &p.set_of([0])).unwrap();
        assert_eq!(r.to_vec(), vec![1, 2]);
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        let p = path3();
        let bad = VertexSet::from_iter_n(10, [7]);
        assert_eq!(
            reach(&p, &bad, &p.empty_set()),
            Err(GraphError::UnknownVertex(7))
        );
    }

    #[test]
    fn component_examples() {
        let c = cycle3();
        let comps = components(&c, &c.empty_set()).unwrap();
        assert_eq!(comps, vec![c.set_of([0, 1, 2])]);

        let p = path3();
        let comps = components(&p, &p.empty_set()).unwrap();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|s| s.len() == 1));
        assert_eq!(comps[0].first(), Some(0));
    }

    #[test]
    fn self_loops_rejected_duplicates_collapsed() {
        let mut b = GraphBuilder::with_vertices(2);
        assert_eq!(b.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        b.add_edge(0, 1).unwrap();
        b.add_edge(0, 1).unwrap();
        assert_eq!(b.build().edge_count(), 1);
    }

    #[test]
    fn topological_order_of_dag() {
        let g = DiGraph::from_edges(4, &[(2, 0), (0, 1), (3, 1)]).unwrap();
        let ord = g.topological_order().unwrap();
        let pos = |v| ord.iter().position(|&x| x == v).unwrap();
        assert!(pos(2) < pos(0) && pos(0) < pos(1) && pos(3) < pos(1));
        assert!(cycle3().topological_order().is_none());
    }
}
