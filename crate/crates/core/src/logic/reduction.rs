use serde::Serialize;

use super::{qbf_eval, CnfFormula, LogicError, MatrixChoice, McStrategy, Player, QbfFormula, Quantifier};
use crate::gadgets::{add_level_edges, add_level_vertices, Level, LevelShape};
use crate::game::{
    boundary, simulate, PlayOutcome, SimReport, territory, CopPlayer, CopPosition, CopStrategy, GameError, RobberPlayer, RobberPosition,
    RobberStrategy, TerritorySolver, DEFAULT_BUDGET,
};
use crate::graph::{DiGraph, GraphBuilder, Part, Role};
use crate::vset::{VertexId, VertexSet};

/// Level sizes of `S_φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SPhiSizes {
    /// `|M|` of the innermost level.
    pub inner_m: usize,
    /// Growth of `|M|` per level outwards.
    pub step: usize,
    /// Whether vertices of inner levels get arcs to the `B` of outer
    /// universal levels (the clause gadget never does).
    pub inner_to_b: bool,
    /// Vertices of the clause gadget's hub clique.
    pub hub: usize,
}

/// The sizes read literally from the construction: `|M| = 4`
/// innermost and a single hub vertex.
impl Default for SPhiSizes {
    fn default() -> Self {
        SPhiSizes { inner_m: 4, step: 3, inner_to_b: true, hub: 1 }
    }
}

/// The clause gadget: a hub clique and one clique per clause.
#[derive(Clone, Debug)]
pub struct ClauseGadget {
    pub graph: DiGraph,
    pub hub: Vec<VertexId>,
    pub clauses: Vec<Vec<VertexId>>,
}

fn add_clause_gadget(
    b: &mut GraphBuilder,
    psi: &CnfFormula,
    level: usize,
    hub: usize,
) -> (Vec<VertexId>, Vec<Vec<VertexId>>) {
    let hub = match hub {
        1 => vec![b.add_vertex(Some("h".into()), Some(Role::new(level, Part::Hub)))],
        n => b.add_vertices(n, "h", Some(Role::new(level, Part::Hub))),
    };
    let clauses = psi
        .clauses
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            (0..c.len())
                .map(|li| {
                    b.add_vertex(
                        Some(format!("v{ci}_{li}")),
                        Some(Role::new(level, Part::Clause { clause: ci, literal: li })),
                    )
                })
                .collect()
        })
        .collect();
    (hub, clauses)
}

fn add_clause_edges(b: &mut GraphBuilder, hub: &[VertexId], clauses: &[Vec<VertexId>]) -> Result<(), LogicError> {
    b.clique(hub)?;
    for k in clauses {
        b.clique(k)?;
        for &v in k {
            for &h in hub {
                b.add_undirected(h, v)?;
            }
        }
    }
    Ok(())
}

/// `F_ψ` with a hub clique of `hub` vertices (one in the plain gadget).
pub fn build_clause_gadget(psi: &CnfFormula, hub: usize) -> Result<ClauseGadget, LogicError> {
    let mut b = GraphBuilder::new();
    let (hub, clauses) = add_clause_gadget(&mut b, psi, 0, hub.max(1));
    add_clause_edges(&mut b, &hub, &clauses)?;
    Ok(ClauseGadget { graph: b.build(), hub, clauses })
}

/// `S_φ` with its level structure.
#[derive(Clone, Debug)]
pub struct SPhi {
    pub graph: DiGraph,
    pub formula: QbfFormula,
    pub sizes: SPhiSizes,
    /// One level per prefix position, outermost first.
    pub levels: Vec<Level>,
    /// Variable quantified at each level.
    pub variable_of_level: Vec<usize>,
    pub hub: Vec<VertexId>,
    pub clauses: Vec<Vec<VertexId>>,
    /// Index into `levels` per vertex; `None` for the clause gadget.
    pub level_of: Vec<Option<usize>>,
}

impl SPhi {
    pub fn r(&self) -> usize {
        self.levels.len()
    }

    pub fn is_existential(&self, li: usize) -> bool {
        self.formula.prefix[li].0 == Quantifier::Exists
    }

    /// Level index holding variable `var`.
    pub fn level_of_variable(&self, var: usize) -> Option<usize> {
        self.variable_of_level.iter().position(|&v| v == var)
    }

    pub fn outermost_level(&self, set: &VertexSet) -> Option<usize> {
        set.iter().filter_map(|v| self.level_of.get(v).copied().flatten()).min()
    }

    /// The blocked set `⋃ A ∪ {b_bit}` over the levels above `li`.
    pub fn blockade(&self, li: usize, bits: &[usize]) -> VertexSet {
        let mut out = self.graph.empty_set();
        for (lv, &bit) in self.levels[..li].iter().zip(bits) {
            for &v in &lv.a {
                out.insert(v);
            }
            out.insert(lv.b[bit]);
        }
        out
    }

    /// Variable values recorded by the `b` cops of the levels above `li`,
    /// in prefix order; a cop on `b_0` means true.
    pub fn values_from_cops(&self, cops: &VertexSet, li: usize) -> Vec<bool> {
        self.levels[..li.min(self.r())]
            .iter()
            .map(|lv| cops.contains(lv.b[0]) || !cops.contains(lv.b[1]))
            .collect()
    }

    /// First clause arc that differs from the literal wiring, as
    /// `(clause, literal, level)`.
    pub fn clause_edge_mismatch(&self) -> Option<(usize, usize, usize)> {
        let g = &self.graph;
        for (ci, (c, k)) in self.formula.matrix.clauses.iter().zip(&self.clauses).enumerate() {
            for (i, &v) in k.iter().enumerate() {
                for (li, lv) in self.levels.iter().enumerate() {
                    let var = self.variable_of_level[li];
                    let expected: Vec<bool> = match c.iter().position(|l| l.var == var) {
                        Some(j) if j == i => vec![!c[i].positive, c[i].positive],
                        Some(_) => vec![false, false],
                        None => vec![true, true],
                    };
                    let actual: Vec<bool> = lv.b.iter().map(|&b| g.has_edge(v, b)).collect();
                    if actual != expected {
                        return Some((ci, i, li));
                    }
                }
            }
        }
        None
    }

    /// Copy with one clause arc redirected to the other `b` of its level.
    pub fn with_flipped_clause_edge(&self) -> Option<SPhi> {
        let g = &self.graph;
        let (u, v, w) = g.edges().find_map(|(u, v)| {
            let (Some(ru), Some(rv)) = (g.role(u), g.role(v)) else { return None };
            let (Part::Clause { .. }, Part::B { index }) = (&ru.part, &rv.part) else { return None };
            let li = self.level_of[v]?;
            let w = self.levels[li].b[1 - index];
            (!g.has_edge(u, w)).then_some((u, v, w))
        })?;
        let mut b = GraphBuilder::new();
        for x in g.vertices() {
            b.add_vertex(g.name(x).map(str::to_owned), g.role(x).cloned());
        }
        for (x, y) in g.edges() {
            let (x, y) = if (x, y) == (u, v) { (u, w) } else { (x, y) };
            b.add_edge(x, y).ok()?;
        }
        Some(SPhi { graph: b.build(), ..self.clone() })
    }
}

pub fn build_s_phi(phi: &QbfFormula) -> Result<SPhi, LogicError> {
    build_s_phi_with(phi, SPhiSizes::default())
}

pub fn build_s_phi_with(phi: &QbfFormula, sizes: SPhiSizes) -> Result<SPhi, LogicError> {
    let r = phi.num_vars();
    let mut b = GraphBuilder::new();
    if r == 0 {
        let truth = phi.eval_matrix(&[]);
        let vs = b.add_vertices(if truth { 1 } else { 2 }, "z", Some(Role::new(0, Part::Base)));
        b.clique(&vs)?;
        return Ok(SPhi {
            level_of: vec![None; vs.len()],
            graph: b.build(),
            formula: phi.clone(),
            sizes,
            levels: Vec::new(),
            variable_of_level: Vec::new(),
            hub: Vec::new(),
            clauses: Vec::new(),
        });
    }
    if let Some(i) = phi.matrix.clauses.iter().position(Vec::is_empty) {
        return Err(LogicError::Restriction { line: 0, message: format!("clause {i} is empty") });
    }
    let levels: Vec<Level> = phi
        .prefix
        .iter()
        .enumerate()
        .map(|(j, &(q, _))| {
            let shape = LevelShape {
                index: r - j,
                m: sizes.inner_m + sizes.step * (r - 1 - j),
                d: 2,
                a: 2,
                t: 2,
                connectors: q == Quantifier::Exists,
            };
            add_level_vertices(&mut b, shape)
        })
        .collect();
    let (hub, clauses) = add_clause_gadget(&mut b, &phi.matrix, 0, sizes.hub.max(1));
    let mut level_of = vec![None; b.len()];
    for (li, lv) in levels.iter().enumerate() {
        for v in lv.vertices() {
            level_of[v] = Some(li);
        }
    }
    let f: Vec<VertexId> = hub.iter().chain(clauses.iter().flatten()).copied().collect();
    for (li, lv) in levels.iter().enumerate() {
        let inner: Vec<VertexId> = levels[li + 1..].iter().flat_map(Level::vertices).collect();
        let sub: Vec<VertexId> = inner.iter().chain(&f).copied().collect();
        add_level_edges(&mut b, lv, &sub, false)?;
        if sizes.inner_to_b && lv.connectors.is_empty() {
            b.connect_all(&inner, &lv.b)?;
        }
        let var = phi.prefix[li].1;
        for (c, k) in phi.matrix.clauses.iter().zip(&clauses) {
            match c.iter().position(|l| l.var == var) {
                Some(i) => b.add_edge(k[i], lv.b[usize::from(c[i].positive)])?,
                None => b.connect_all(k, &lv.b)?,
            }
        }
    }
    add_clause_edges(&mut b, &hub, &clauses)?;
    Ok(SPhi {
        graph: b.build(),
        formula: phi.clone(),
        sizes,
        variable_of_level: phi.prefix.iter().map(|&(_, v)| v).collect(),
        levels,
        hub,
        clauses,
        level_of,
    })
}

/// `H_ψ`: the reduction graph of the universal closure of `ψ`.
pub fn build_h_phi(psi: &CnfFormula) -> Result<SPhi, LogicError> {
    build_s_phi(&QbfFormula::forall_closure(psi.clone()))
}

/// Cops at which the reduction is claimed to be exact: `|N| + 1` of the
/// outermost level, or 1 without variables.
pub fn predicted_cops(phi: &QbfFormula, sizes: SPhiSizes) -> usize {
    match phi.num_vars() {
        0 => 1,
        r => sizes.inner_m + sizes.step * (r - 1) + 3,
    }
}

fn set_of(g: &DiGraph, vs: &[VertexId]) -> VertexSet {
    g.set_of(vs.iter().copied())
}

/// Cops simulating a winning existential strategy level by level.
pub struct ReductionCops<'a> {
    sphi: &'a SPhi,
    strategy: McStrategy,
}

pub fn cop_strategy_from_exists(sphi: &SPhi, strategy: McStrategy) -> Result<ReductionCops<'_>, LogicError> {
    if strategy.winner != Player::Exists {
        return Err(LogicError::Premise("the strategy is not an existential win".into()));
    }
    Ok(ReductionCops { sphi, strategy })
}

impl ReductionCops<'_> {
    fn addition(&self, g: &DiGraph, pos: &CopPosition) -> Option<VertexSet> {
        let sp = self.sphi;
        let r = if pos.is_initial() { g.full_set() } else { pos.robber.clone() };
        let Some(li) = sp.outermost_level(&r) else {
            return Some(clause_sweep(sp, g, pos, &r));
        };
        let lv = &sp.levels[li];
        let single = (r.len() == 1).then(|| r.first()).flatten();
        if single.is_some_and(|v| lv.b.contains(&v)) {
            return Some(r);
        }
        let existential = sp.is_existential(li);
        let target = if existential {
            let values = sp.values_from_cops(&pos.cops, li);
            usize::from(!self.strategy.value(&values)?)
        } else {
            0
        };
        let b_t = lv.b[target];
        if single.is_some_and(|v| lv.connectors.contains(&v)) {
            return Some(if pos.cops.contains(b_t) { r } else { g.set_of([b_t]) });
        }
        if let Some(x) = lv.c.iter().position(|ci| r.is_subset(&set_of(g, ci))) {
            let ci = set_of(g, &lv.c[x]);
            if (existential && x != target) || pos.cops.contains(lv.b[x]) {
                return Some(ci);
            }
            return Some(g.set_of([lv.b[x]]));
        }
        let n = set_of(g, &lv.n());
        if n.is_subset(&r) {
            if existential {
                let c_other = lv.connectors[1 - target];
                if !pos.cops.contains(c_other) {
                    return Some(g.set_of([c_other]));
                }
            }
            return Some(n);
        }
        let a = set_of(g, &lv.a);
        if a.is_subset(&r) {
            if !lv.b.iter().any(|&v| pos.cops.contains(v)) {
                return Some(g.set_of([b_t]));
            }
            return Some(a);
        }
        None
    }
}

/// At the clause gadget: hub first, then clique vertices whose removal
/// frees a `b` cop, the robber's last vertex at the end.
fn clause_sweep(sp: &SPhi, g: &DiGraph, pos: &CopPosition, r: &VertexSet) -> VertexSet {
    if sp.hub.iter().any(|&h| r.contains(h)) {
        return set_of(g, &sp.hub);
    }
    if r.len() <= 1 {
        return r.clone();
    }
    let guards_b = |v: VertexId| {
        g.successors(v)
            .iter()
            .any(|w| pos.cops.contains(w) && matches!(g.role(w).map(|x| &x.part), Some(Part::B { .. })))
    };
    let v = r.iter().find(|&v| guards_b(v)).or_else(|| r.first()).expect("non-empty");
    g.set_of([v])
}

impl CopStrategy for ReductionCops<'_> {
    fn next_cops(&self, g: &DiGraph, pos: &CopPosition) -> Result<VertexSet, GameError> {
        let x = self
            .addition(g, pos)
            .ok_or_else(|| GameError::IncompleteStrategy(pos.describe(g)))?;
        Ok(boundary(g, &territory(g, pos)).union(&x))
    }
}

/// Robber playing the universal side: waits in `N` until it is full,
/// picks the `C_i` encoding his value at universal levels, falls through
/// `A`, and at the clause gadget runs into a falsified clause.
pub struct ReductionRobber<'a> {
    sphi: &'a SPhi,
    strategy: Option<McStrategy>,
}

/// With `None` the robber plays `X = true` at every universal level and
/// the first falsified clause, if any.
pub fn robber_strategy_from_forall(sphi: &SPhi, strategy: Option<McStrategy>) -> Result<ReductionRobber<'_>, LogicError> {
    if strategy.as_ref().is_some_and(|s| s.winner != Player::Forall) {
        return Err(LogicError::Premise("the strategy is not a universal win".into()));
    }
    Ok(ReductionRobber { sphi, strategy })
}

impl ReductionRobber<'_> {
    fn clause_target(&self, values: &[bool]) -> Option<usize> {
        let sp = self.sphi;
        if let Some(MatrixChoice::Clause(c)) = self.strategy.as_ref().and_then(|s| s.matrix.get(values)) {
            return Some(*c);
        }
        sp.formula.matrix.falsified_clause(&sp.formula.by_variable(values))
    }
}

impl RobberStrategy for ReductionRobber<'_> {
    fn choose(&self, g: &DiGraph, pos: &RobberPosition, options: &[CopPosition]) -> Result<usize, GameError> {
        let sp = self.sphi;
        let hits = |vs: &[VertexId]| options.iter().position(|o| vs.iter().any(|&v| o.robber.contains(v)));
        let largest = || {
            (0..options.len())
                .max_by_key(|&i| territory(g, &options[i]).len())
                .expect("options are non-empty")
        };
        let here = if pos.is_initial() { Some(0) } else { sp.outermost_level(&pos.robber) };
        let Some(li) = here.filter(|&li| li < sp.r()) else {
            let values = sp.values_from_cops(&pos.cops_new, sp.r());
            let pick = self
                .clause_target(&values)
                .and_then(|c| hits(&sp.clauses[c]))
                .or_else(|| hits(&sp.hub));
            return Ok(pick.unwrap_or_else(largest));
        };
        let lv = &sp.levels[li];
        let free_n: Vec<VertexId> = lv.n().into_iter().filter(|&v| !pos.cops_new.contains(v)).collect();
        let entered = |vs: &[VertexId]| !pos.robber.is_empty() && pos.robber.iter().all(|v| vs.contains(&v));
        let in_c = lv.c.iter().any(|ci| entered(ci)) || lv.connectors.iter().any(|&k| entered(&[k]));
        let mut pick = hits(&free_n);
        if pick.is_none() && !in_c {
            pick = if sp.is_existential(li) {
                lv.connectors.iter().find_map(|&k| hits(&[k])).or_else(|| lv.c.iter().find_map(|ci| hits(ci)))
            } else {
                let values = sp.values_from_cops(&pos.cops_new, li);
                let value = self.strategy.as_ref().and_then(|s| s.value(&values)).unwrap_or(true);
                hits(&lv.c[usize::from(!value)])
            };
        }
        if pick.is_none() && lv.connectors.iter().any(|&k| entered(&[k])) {
            pick = lv.c.iter().find_map(|ci| hits(ci));
        }
        let next: Vec<VertexId> = match sp.levels.get(li + 1) {
            Some(inner) => inner.n(),
            None => sp.hub.clone(),
        };
        let pick = pick.or_else(|| hits(&lv.a)).or_else(|| hits(&next));
        Ok(pick.unwrap_or_else(largest))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Exact solves at `k*` and `k* − 1`.
    Solve,
    /// Scripts against exhaustive opponents, solver for the rest.
    Scripted,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub method: Method,
    pub budget: usize,
    pub sizes: SPhiSizes,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { method: Method::Solve, budget: DEFAULT_BUDGET, sizes: SPhiSizes::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub formula: String,
    pub truth: bool,
    pub k_star: usize,
    pub vertices: usize,
    pub method: Method,
    /// `None` when the check ran out of budget.
    pub cops_win: Option<bool>,
    pub robber_wins_below: Option<bool>,
    pub agrees: bool,
    /// Clause arcs match the formula.
    pub wiring_ok: bool,
    pub unverified: bool,
    /// Transcript of the witness or counterexample play, if any.
    pub play: Option<String>,
}

pub fn verify_reduction(phi: &QbfFormula, opts: &VerifyOptions) -> Result<Report, LogicError> {
    let sphi = build_s_phi_with(phi, opts.sizes)?;
    verify_reduction_on(&sphi, opts)
}

fn solve_at(g: &DiGraph, k: usize, budget: usize) -> Result<Option<bool>, LogicError> {
    let mut s = TerritorySolver::new(g, k, budget);
    match s.wins(&g.full_set()) {
        Ok(w) => Ok(Some(w)),
        Err(GameError::Budget(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Checks the reduction on a prebuilt (possibly altered) `S_φ`.
pub fn verify_reduction_on(sphi: &SPhi, opts: &VerifyOptions) -> Result<Report, LogicError> {
    let phi = &sphi.formula;
    let g = &sphi.graph;
    let eval = qbf_eval(phi)?;
    let k = predicted_cops(phi, sphi.sizes);
    let mut play = None;
    let (cops_win, robber_wins_below) = match opts.method {
        Method::Scripted if sphi.r() > 0 => {
            let at_k = scripted_value(sphi, k, &mut play)?;
            let below = if k == 0 { false } else { scripted_value(sphi, k - 1, &mut None)? };
            (Some(at_k), Some(!below))
        }
        _ => {
            let below = if k == 0 { Some(false) } else { solve_at(g, k - 1, opts.budget)? };
            (solve_at(g, k, opts.budget)?, below.map(|w| !w))
        }
    };
    let unverified = cops_win.is_none() || robber_wins_below.is_none();
    let wiring_ok = sphi.clause_edge_mismatch().is_none();
    let agrees = wiring_ok && cops_win == Some(eval.truth) && robber_wins_below == Some(true);
    Ok(Report {
        formula: phi.to_string(),
        truth: eval.truth,
        k_star: k,
        vertices: g.vertex_count(),
        method: opts.method,
        cops_win,
        robber_wins_below,
        agrees,
        wiring_ok,
        unverified,
        play,
    })
}

/// Whether some existential cop script beats every universal robber
/// script with `k` cops. Keeps a transcript of a deciding play.
fn scripted_value(sphi: &SPhi, k: usize, play: &mut Option<String>) -> Result<bool, LogicError> {
    let g = &sphi.graph;
    let robbers = all_strategies(&sphi.formula, Player::Forall);
    let mut last = None;
    for es in all_strategies(&sphi.formula, Player::Exists) {
        let cops = ReductionCops { sphi, strategy: es };
        let mut beaten = None;
        for fs in &robbers {
            let robber = ReductionRobber { sphi, strategy: Some(fs.clone()) };
            let SimReport::Play(p) = simulate(g, CopPlayer::Strategy(&cops), RobberPlayer::Strategy(&robber), k)? else {
                unreachable!("scripted plays are concrete")
            };
            if p.outcome != PlayOutcome::CopsWin {
                beaten = Some(p);
                break;
            }
            last = Some(p);
        }
        match beaten {
            None => {
                *play = last.map(|p| p.transcript(g));
                return Ok(true);
            }
            Some(p) => last = Some(p),
        }
    }
    *play = last.map(|p| p.transcript(g));
    Ok(false)
}

/// Every positional value strategy of `player`, defined on all prefixes.
pub fn all_strategies(phi: &QbfFormula, player: Player) -> Vec<McStrategy> {
    let q = match player {
        Player::Exists => Quantifier::Exists,
        Player::Forall => Quantifier::Forall,
    };
    let mut keys = Vec::new();
    for (j, &(qj, _)) in phi.prefix.iter().enumerate() {
        if qj == q {
            for bits in 0u32..(1 << j) {
                keys.push((0..j).map(|i| bits >> i & 1 == 1).collect::<Vec<bool>>());
            }
        }
    }
    assert!(keys.len() < 16, "too many positions to enumerate");
    (0u32..(1 << keys.len()))
        .map(|choice| McStrategy {
            winner: player,
            values: keys.iter().enumerate().map(|(i, key)| (key.clone(), choice >> i & 1 == 1)).collect(),
            matrix: Default::default(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Literal;

    fn unit(q: Quantifier, positive: bool) -> QbfFormula {
        let l = Literal { var: 1, positive };
        QbfFormula::new(vec![(q, 1)], CnfFormula::new(1, vec![vec![l]]).unwrap()).unwrap()
    }

    #[test]
    fn clause_gadget_sizes() {
        let one = CnfFormula::new(1, vec![vec![Literal::pos(1)]]).unwrap();
        let g = build_clause_gadget(&one, 1).unwrap();
        assert_eq!((g.graph.vertex_count(), g.graph.edge_count()), (2, 2));
        let two = CnfFormula::new(
            2,
            vec![vec![Literal::pos(1), Literal::pos(2)], vec![Literal::neg(1), Literal::neg(2)]],
        )
        .unwrap();
        assert_eq!(build_clause_gadget(&two, 1).unwrap().graph.vertex_count(), 5);
        assert_eq!(build_clause_gadget(&CnfFormula::new(0, vec![]).unwrap(), 1).unwrap().graph.vertex_count(), 1);
    }

    #[test]
    fn base_graphs() {
        let t = QbfFormula::new(vec![], CnfFormula::new(0, vec![]).unwrap()).unwrap();
        let f = QbfFormula::new(vec![], CnfFormula { num_vars: 0, clauses: vec![vec![]] }).unwrap();
        assert_eq!(build_s_phi(&t).unwrap().graph.vertex_count(), 1);
        let g = build_s_phi(&f).unwrap().graph;
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 2));
        assert_eq!(predicted_cops(&t, SPhiSizes::default()), 1);
    }

    #[test]
    fn r1_sizes_and_threshold() {
        let a = build_s_phi(&unit(Quantifier::Forall, true)).unwrap();
        let e = build_s_phi(&unit(Quantifier::Exists, true)).unwrap();
        assert_eq!(a.graph.vertex_count(), 20);
        assert_eq!(e.graph.vertex_count(), 22);
        assert_eq!(predicted_cops(&a.formula, a.sizes), 7);
        let two = QbfFormula::new(
            vec![(Quantifier::Forall, 1), (Quantifier::Exists, 2)],
            CnfFormula::new(2, vec![vec![Literal::pos(1), Literal::pos(2)]]).unwrap(),
        )
        .unwrap();
        assert_eq!(predicted_cops(&two, SPhiSizes::default()), 10);
        assert_eq!(build_s_phi(&two).unwrap().levels[0].m.len(), 7);
    }

    #[test]
    fn clause_arcs_follow_literals() {
        let f = QbfFormula::new(
            vec![(Quantifier::Forall, 1), (Quantifier::Exists, 2)],
            CnfFormula::new(2, vec![vec![Literal::pos(1)], vec![Literal::neg(2), Literal::pos(1)]]).unwrap(),
        )
        .unwrap();
        let sp = build_s_phi(&f).unwrap();
        assert_eq!(sp.clause_edge_mismatch(), None);
        let g = &sp.graph;
        let (outer, inner) = (&sp.levels[0], &sp.levels[1]);
        let v = sp.clauses[0][0];
        assert!(g.has_edge(v, outer.b[1]) && !g.has_edge(v, outer.b[0]));
        assert!(g.has_edge(v, inner.b[0]) && g.has_edge(v, inner.b[1]));
        let w = sp.clauses[1][0];
        assert!(g.has_edge(w, inner.b[0]) && !g.has_edge(w, inner.b[1]));
        assert!(!g.has_edge(w, outer.b[0]) && !g.has_edge(w, outer.b[1]));
        let bad = sp.with_flipped_clause_edge().unwrap();
        assert!(bad.clause_edge_mismatch().is_some());
        let report = verify_reduction_on(&bad, &VerifyOptions { method: Method::Scripted, ..Default::default() }).unwrap();
        assert!(!report.wiring_ok && !report.agrees);
    }

    #[test]
    fn h_phi_is_universal_s_phi() {
        let psi = CnfFormula::new(1, vec![vec![Literal::pos(1)]]).unwrap();
        let h = build_h_phi(&psi).unwrap();
        let s = build_s_phi(&unit(Quantifier::Forall, true)).unwrap();
        assert_eq!(h.graph, s.graph);
        assert_eq!(h.graph.vertex_count(), 20);
    }

    #[test]
    fn cop_script_beats_every_robber_on_true_unit() {
        let f = unit(Quantifier::Exists, true);
        let sp = build_s_phi(&f).unwrap();
        let cops = cop_strategy_from_exists(&sp, qbf_eval(&f).unwrap().strategy).unwrap();
        let r = simulate(&sp.graph, CopPlayer::Strategy(&cops), RobberPlayer::Exhaustive, 7).unwrap();
        assert!(r.cops_win());
    }

    #[test]
    fn scripts_refuse_wrong_premise() {
        let f = unit(Quantifier::Forall, true);
        let sp = build_s_phi(&f).unwrap();
        let s = qbf_eval(&f).unwrap().strategy;
        assert!(cop_strategy_from_exists(&sp, s.clone()).is_err());
        assert!(robber_strategy_from_forall(&sp, Some(s)).is_ok());
    }

    #[test]
    fn strategy_enumeration_counts() {
        let f = QbfFormula::new(
            vec![(Quantifier::Forall, 1), (Quantifier::Exists, 2)],
            CnfFormula::new(2, vec![]).unwrap(),
        )
        .unwrap();
        assert_eq!(all_strategies(&f, Player::Exists).len(), 4);
        assert_eq!(all_strategies(&f, Player::Forall).len(), 2);
    }
}
