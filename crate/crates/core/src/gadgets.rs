//! The layered gadget graphs `G_n(s,t)`, their scripted strategies, and
//! the small tree fixtures used to compare width measures.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::game::{
    boundary, simulate, territory, CopPlayer, CopPosition, CopStrategy, GameError, PlayEntry, PlayOutcome,
    RobberPlayer, RobberPosition, RobberStrategy, SimReport,
};
use crate::graph::{DiGraph, GraphBuilder, GraphError, Part, Role};
use crate::vset::{VertexId, VertexSet};

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("level {level}: {message}")]
    Profile { level: usize, message: String },
    #[error("unknown size profile `{0}` (expected an integer, `log` or `divlog`)")]
    UnknownProfile(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Floor of the binary logarithm; 0 for inputs below 2.
pub fn floor_log2(x: usize) -> usize {
    if x < 2 {
        0
    } else {
        (usize::BITS - 1 - x.leading_zeros()) as usize
    }
}

/// A level-dependent part size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeProfile {
    Const(usize),
    /// `⌊log ℓ⌋`
    FloorLog,
    /// `⌊ℓ / log ℓ⌋`
    DivLog,
}

impl SizeProfile {
    pub fn eval(self, level: usize) -> usize {
        match self {
            SizeProfile::Const(c) => c,
            SizeProfile::FloorLog => floor_log2(level),
            SizeProfile::DivLog => match floor_log2(level) {
                0 => level,
                l => level / l,
            },
        }
    }
}

impl fmt::Display for SizeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeProfile::Const(c) => write!(f, "{c}"),
            SizeProfile::FloorLog => f.write_str("log"),
            SizeProfile::DivLog => f.write_str("divlog"),
        }
    }
}

impl FromStr for SizeProfile {
    type Err = GadgetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "log" | "floor_log" => Ok(SizeProfile::FloorLog),
            "divlog" | "div_log" => Ok(SizeProfile::DivLog),
            _ => s
                .strip_prefix("const:")
                .unwrap_or(s)
                .parse()
                .map(SizeProfile::Const)
                .map_err(|_| GadgetError::UnknownProfile(s.to_owned())),
        }
    }
}

/// Vertices of one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    /// Level index `ℓ` as used in role labels.
    pub index: usize,
    pub m: Vec<VertexId>,
    pub d: Vec<VertexId>,
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
    pub c: Vec<Vec<VertexId>>,
    /// Subdivision vertices `c_i` between `N` and `C_i`; empty if the
    /// level has direct `N × C_i` arcs.
    pub connectors: Vec<VertexId>,
}

impl Level {
    pub fn n(&self) -> Vec<VertexId> {
        self.m.iter().chain(&self.d).copied().collect()
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out = self.n();
        out.extend(&self.a);
        out.extend(&self.b);
        out.extend(self.c.iter().flatten());
        out.extend(&self.connectors);
        out
    }
}

/// Part sizes of a level before its vertices exist.
#[derive(Clone, Copy, Debug)]
pub(crate) struct LevelShape {
    pub index: usize,
    pub m: usize,
    pub d: usize,
    pub a: usize,
    pub t: usize,
    pub connectors: bool,
}

pub(crate) fn add_level_vertices(b: &mut GraphBuilder, shape: LevelShape) -> Level {
    let l = shape.index;
    let role = |p: Part| Some(Role::new(l, p));
    Level {
        index: l,
        m: b.add_vertices(shape.m, &format!("m{l}_"), role(Part::M)),
        d: b.add_vertices(shape.d, &format!("d{l}_"), role(Part::D)),
        a: b.add_vertices(shape.a, &format!("a{l}_"), role(Part::A)),
        b: (0..shape.t)
            .map(|i| b.add_vertex(Some(format!("b{l}_{i}")), role(Part::B { index: i })))
            .collect(),
        c: (0..shape.t)
            .map(|i| b.add_vertices(shape.m, &format!("c{l}_{i}_"), role(Part::C { index: i })))
            .collect(),
        connectors: if shape.connectors {
            (0..shape.t)
                .map(|i| b.add_vertex(Some(format!("k{l}_{i}")), role(Part::Connector { index: i })))
                .collect()
        } else {
            Vec::new()
        },
    }
}

/// Arcs inside a level and between the level and the vertices `sub`
/// nested below it. `sub_to_b` adds `sub × B`.
pub(crate) fn add_level_edges(
    b: &mut GraphBuilder,
    lv: &Level,
    sub: &[VertexId],
    sub_to_b: bool,
) -> Result<(), GraphError> {
    let n = lv.n();
    b.clique(&n)?;
    b.clique(&lv.a)?;
    for (i, ci) in lv.c.iter().enumerate() {
        b.clique(ci)?;
        match lv.connectors.get(i) {
            Some(&k) => {
                b.connect_all(&n, &[k])?;
                b.connect_all(&[k], ci)?;
            }
            None => b.connect_all(&n, ci)?,
        }
        b.connect_all(ci, &lv.d)?;
        b.connect_all(ci, &[lv.b[i]])?;
    }
    b.connect_all(&lv.b, &lv.a)?;
    b.connect_all(&lv.a, &lv.b)?;
    b.connect_all(&lv.a, &lv.m)?;
    b.connect_all(&n, sub)?;
    b.connect_all(&lv.a, sub)?;
    b.connect_all(sub, &lv.a)?;
    if sub_to_b {
        b.connect_all(sub, &lv.b)?;
    }
    Ok(())
}

/// A generated `G_n(s,t)` with its level structure.
#[derive(Clone, Debug)]
pub struct GadgetGraph {
    pub graph: DiGraph,
    pub n: usize,
    pub s: SizeProfile,
    pub t: SizeProfile,
    /// Outermost level first.
    pub levels: Vec<Level>,
    /// Vertices of the innermost part (a single vertex for `G_n(s,t)`).
    pub base: Vec<VertexId>,
    /// Index into `levels` per vertex; `None` for the innermost part.
    pub level_of: Vec<Option<usize>>,
}

impl GadgetGraph {
    /// Level indices `ℓ`, outermost first, ending with the base index.
    pub fn level_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.levels.iter().map(|l| l.index).collect();
        v.push(self.base_index());
        v
    }

    fn base_index(&self) -> usize {
        self.levels
            .last()
            .map_or(self.n, |l| l.index - self.s.eval(l.index) - 1)
    }

    /// Number of levels including the innermost one.
    pub fn level_count(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn base_set(&self) -> VertexSet {
        self.graph.set_of(self.base.iter().copied())
    }

    /// Outermost level meeting `set`, or `None` if it lies in the base.
    pub fn outermost_level(&self, set: &VertexSet) -> Option<usize> {
        set.iter().filter_map(|v| self.level_of[v]).min()
    }

    pub fn summary(&self) -> Vec<LevelRow> {
        let mut rows: Vec<LevelRow> = self
            .levels
            .iter()
            .map(|l| LevelRow {
                level: l.index,
                m: l.m.len(),
                d: l.d.len(),
                c: l.c.first().map_or(0, Vec::len),
                b: l.b.len(),
                vertices: l.vertices().len(),
            })
            .collect();
        rows.push(LevelRow {
            level: self.base_index(),
            m: 0,
            d: 0,
            c: 0,
            b: 0,
            vertices: self.base.len(),
        });
        rows
    }
}

/// One row of the level table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRow {
    pub level: usize,
    pub m: usize,
    pub d: usize,
    pub c: usize,
    pub b: usize,
    pub vertices: usize,
}

/// Level indices `n_0 = n, n_{i+1} = n_i − s(n_i) − 1` while `n_i ≥ 5`,
/// after checking the profiles at each of them.
pub fn level_sequence(n: usize, s: SizeProfile, t: SizeProfile) -> Result<Vec<usize>, GadgetError> {
    let mut out = Vec::new();
    let mut l = n;
    while l >= 5 {
        let (sv, tv) = (s.eval(l), t.eval(l));
        let err = |message: String| GadgetError::Profile { level: l, message };
        if sv < 2 {
            return Err(err(format!("s({l}) = {sv} is below 2")));
        }
        if tv < 2 {
            return Err(err(format!("t({l}) = {tv} is below 2")));
        }
        if sv * floor_log2(l) > l {
            return Err(err(format!("s({l}) = {sv} exceeds {l}/log {l}")));
        }
        out.push(l);
        l -= sv + 1;
    }
    Ok(out)
}

/// `|G_n(s,t)|` from the size recurrence.
pub fn expected_size(n: usize, s: SizeProfile, t: SizeProfile) -> usize {
    if n < 5 {
        return 1;
    }
    let (sv, tv) = (s.eval(n), t.eval(n));
    n + tv * (n - sv) + sv + tv + expected_size(n - sv - 1, s, t)
}

pub fn gen_gnst(n: usize, s: SizeProfile, t: SizeProfile) -> Result<GadgetGraph, GadgetError> {
    if n == 0 {
        return Err(GadgetError::Profile { level: 0, message: "n must be at least 1".into() });
    }
    let indices = level_sequence(n, s, t)?;
    let mut b = GraphBuilder::new();
    let levels: Vec<Level> = indices
        .iter()
        .map(|&l| {
            let sv = s.eval(l);
            add_level_vertices(
                &mut b,
                LevelShape { index: l, m: l - sv, d: sv, a: sv, t: t.eval(l), connectors: false },
            )
        })
        .collect();
    let base_index = indices.last().map_or(n, |&l| l - s.eval(l) - 1);
    let base = vec![b.add_vertex(Some("base".into()), Some(Role::new(base_index, Part::Base)))];
    let total = b.len();
    let mut level_of = vec![None; total];
    for (i, lv) in levels.iter().enumerate() {
        for v in lv.vertices() {
            level_of[v] = Some(i);
        }
    }
    for (i, lv) in levels.iter().enumerate() {
        let sub: Vec<VertexId> = (0..total)
            .filter(|&v| level_of[v].is_none_or(|j| j > i))
            .collect();
        add_level_edges(&mut b, lv, &sub, true)?;
    }
    Ok(GadgetGraph { graph: b.build(), n, s, t, levels, base, level_of })
}

/// Which variant of the level-by-level cop strategy to play.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopScript {
    /// Block the robber's `C_i` exit with a cop on `b_i`.
    Canonical,
    /// Occupy `A` instead of `b_i`; costs `s - 1` extra cops once.
    Poly,
}

/// Scripted cop strategy on a gadget graph. Every move keeps exactly the
/// guards of the robber's territory and adds a whole part set.
pub struct LevelCops<'a> {
    gg: &'a GadgetGraph,
    script: CopScript,
}

/// The optimal strategy for `n + 1` cops on `G_n(s,t)`.
pub fn canonical_cop_strategy(gg: &GadgetGraph) -> LevelCops<'_> {
    LevelCops { gg, script: CopScript::Canonical }
}

/// The strategy with `n + s(n)` cops whose consistent positions stay few.
pub fn poly_cop_strategy(gg: &GadgetGraph) -> LevelCops<'_> {
    LevelCops { gg, script: CopScript::Poly }
}

impl LevelCops<'_> {
    /// The part set the cops add; `None` if the script has no answer.
    fn addition(&self, g: &DiGraph, pos: &CopPosition) -> Option<VertexSet> {
        let gg = self.gg;
        let r = if pos.is_initial() { g.full_set() } else { pos.robber.clone() };
        let Some(li) = gg.outermost_level(&r) else {
            return Some(r);
        };
        let lv = &gg.levels[li];
        let set = |vs: &[VertexId]| g.set_of(vs.iter().copied());
        if r.len() == 1 && lv.b.contains(&r.first()?) {
            return Some(r);
        }
        if let Some(i) = lv.c.iter().position(|ci| r.is_subset(&set(ci))) {
            let ci = set(&lv.c[i]);
            return Some(match self.script {
                CopScript::Canonical if pos.cops.contains(lv.b[i]) => ci,
                CopScript::Canonical => g.set_of([lv.b[i]]),
                CopScript::Poly if set(&lv.a).is_subset(&pos.cops) => ci,
                CopScript::Poly => set(&lv.a),
            });
        }
        let n = set(&lv.n());
        if n.is_subset(&r) {
            return Some(n);
        }
        let a = set(&lv.a);
        if a.is_subset(&r) {
            return Some(a);
        }
        None
    }
}

impl CopStrategy for LevelCops<'_> {
    fn next_cops(&self, g: &DiGraph, pos: &CopPosition) -> Result<VertexSet, GameError> {
        let x = self
            .addition(g, pos)
            .ok_or_else(|| GameError::IncompleteStrategy(pos.describe(g)))?;
        Ok(boundary(g, &territory(g, pos)).union(&x))
    }
}

/// Robber that waits in `N` of the outermost level until it is full and
/// then runs to the lowest-numbered `C_i`. Beats `n` cops on `G_n(s,t)`.
pub struct LowerBoundRobber<'a> {
    gg: &'a GadgetGraph,
}

pub fn canonical_robber_strategy(gg: &GadgetGraph) -> LowerBoundRobber<'_> {
    LowerBoundRobber { gg }
}

impl RobberStrategy for LowerBoundRobber<'_> {
    fn choose(&self, g: &DiGraph, _pos: &RobberPosition, options: &[CopPosition]) -> Result<usize, GameError> {
        let Some(top) = self.gg.levels.first() else {
            return Ok(0);
        };
        let hits = |vs: &[VertexId]| options.iter().position(|o| vs.iter().any(|&v| o.robber.contains(v)));
        if let Some(i) = hits(&top.n()) {
            return Ok(i);
        }
        for ci in &top.c {
            if let Some(i) = hits(ci) {
                return Ok(i);
            }
        }
        let best = (0..options.len())
            .max_by_key(|&i| territory(g, &options[i]).len())
            .expect("options are non-empty");
        Ok(best)
    }
}

/// Robber that forces the cops through every level: he waits in `N`,
/// enters `C_{choice}` of the current level, then falls through `A` into
/// the next level.
pub struct ForcingRobber<'a> {
    gg: &'a GadgetGraph,
    choices: Vec<usize>,
}

pub fn forcing_robber_strategy(gg: &GadgetGraph, choices: Vec<usize>) -> ForcingRobber<'_> {
    ForcingRobber { gg, choices }
}

impl RobberStrategy for ForcingRobber<'_> {
    fn choose(&self, _g: &DiGraph, pos: &RobberPosition, options: &[CopPosition]) -> Result<usize, GameError> {
        let gg = self.gg;
        let here = if pos.is_initial() { Some(0) } else { gg.outermost_level(&pos.robber) };
        let Some(li) = here.filter(|&li| li < gg.levels.len()) else {
            return Ok(0);
        };
        let lv = &gg.levels[li];
        let hits = |vs: &[VertexId]| options.iter().position(|o| vs.iter().any(|&v| o.robber.contains(v)));
        let free_n: Vec<VertexId> = lv.n().into_iter().filter(|&v| !pos.cops_new.contains(v)).collect();
        let choice = self.choices.get(li).copied().unwrap_or(0).min(lv.c.len() - 1);
        let next: Vec<VertexId> = match gg.levels.get(li + 1) {
            Some(inner) => inner.n(),
            None => gg.base.clone(),
        };
        let entered = !pos.robber.is_empty() && pos.robber.iter().all(|v| lv.c[choice].contains(&v));
        let pick = hits(&free_n)
            .or_else(|| if entered { None } else { hits(&lv.c[choice]) })
            .or_else(|| hits(&lv.a))
            .or_else(|| hits(&next));
        Ok(pick.unwrap_or(0))
    }
}

/// Distinct cop placements seen while the robber is in the innermost part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeepConfigurations {
    /// Placements when the robber arrives in the innermost part.
    pub arrival: usize,
    /// Arrival placements plus the placements the cops move to from there.
    pub total: usize,
    /// Number of forced plays replayed.
    pub plays: usize,
}

/// Replays `cops` against the forcing robber for every combination of
/// `C_i` choices and counts the cop placements deep in the recursion.
pub fn deep_configurations(
    gg: &GadgetGraph,
    cops: &dyn CopStrategy,
    k: usize,
) -> Result<DeepConfigurations, GameError> {
    let g = &gg.graph;
    let base = gg.base_set();
    let widths: Vec<usize> = gg.levels.iter().map(|l| l.c.len()).collect();
    let mut arrival = BTreeSet::new();
    let mut all = BTreeSet::new();
    let mut choice = vec![0usize; widths.len()];
    let mut plays = 0;
    loop {
        let robber = forcing_robber_strategy(gg, choice.clone());
        let record = match simulate(g, CopPlayer::Strategy(cops), RobberPlayer::Strategy(&robber), k)? {
            SimReport::Play(p) => p,
            SimReport::CopsAlwaysWin { .. } => unreachable!("scripted robber yields a single play"),
        };
        if record.outcome != PlayOutcome::CopsWin {
            return Err(GameError::NotWinning(record.transcript(g)));
        }
        plays += 1;
        for e in &record.entries {
            match e {
                PlayEntry::Cop(p) if !p.is_initial() && p.robber.is_subset(&base) && !p.cops.is_empty() => {
                    arrival.insert(p.cops.clone());
                    all.insert(p.cops.clone());
                }
                PlayEntry::Robber(p) => {
                    let region = if p.is_initial() { g.full_set() } else { p.robber.clone() };
                    if region.is_subset(&base) {
                        all.insert(p.cops_new.clone());
                    }
                }
                _ => {}
            }
        }
        // Next choice vector in mixed radix.
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < widths[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    Ok(DeepConfigurations { arrival: arrival.len(), total: all.len(), plays })
}

/// Complete binary tree with `h` levels, undirected tree edges and arcs
/// from every vertex to all of its ancestors.
pub fn gen_upclosure_tree(h: usize) -> DiGraph {
    let n = (1usize << h) - 1;
    let mut b = GraphBuilder::new();
    for v in 0..n {
        b.add_vertex(Some(format!("t{v}")), None);
    }
    for v in 1..n {
        b.add_undirected(v, (v - 1) / 2).expect("valid ids");
        let mut up = (v - 1) / 2;
        while up > 0 {
            up = (up - 1) / 2;
            b.add_edge(v, up).expect("valid ids");
        }
    }
    b.build()
}

/// Tree with `n` children per inner node and `n` levels, undirected
/// parent–child edges, and arcs from each child to all leaves below its
/// smaller siblings.
pub fn gen_sibling_tree(n: usize) -> DiGraph {
    fn grow(b: &mut GraphBuilder, i: usize, m: usize) -> (VertexId, Vec<VertexId>) {
        let root = b.add_vertex(None, None);
        if i <= 1 {
            return (root, vec![root]);
        }
        let mut leaves: Vec<VertexId> = Vec::new();
        for _ in 0..m {
            let (child, child_leaves) = grow(b, i - 1, m);
            b.add_undirected(root, child).expect("valid ids");
            for &l in &leaves {
                b.add_edge(child, l).expect("valid ids");
            }
            leaves.extend(child_leaves);
        }
        (root, leaves)
    }
    let mut b = GraphBuilder::new();
    grow(&mut b, n.max(1), n.max(1));
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> SizeProfile {
        SizeProfile::Const(2)
    }

    #[test]
    fn sizes_and_levels() {
        let g2 = gen_gnst(2, two(), two()).unwrap();
        assert_eq!((g2.graph.vertex_count(), g2.graph.edge_count()), (1, 0));
        let g5 = gen_gnst(5, two(), two()).unwrap();
        assert_eq!(g5.graph.vertex_count(), 16);
        assert_eq!(g5.level_indices(), vec![5, 2]);
        let g8 = gen_gnst(8, two(), two()).unwrap();
        assert_eq!(g8.graph.vertex_count(), 40);
        assert_eq!(g8.level_indices(), vec![8, 5, 2]);
    }

    #[test]
    fn recurrence_matches_for_all_profiles() {
        let profiles = [two(), SizeProfile::FloorLog, SizeProfile::DivLog, SizeProfile::Const(3)];
        for n in 1..=40 {
            for &s in &profiles {
                for &t in &profiles {
                    if let Ok(gg) = gen_gnst(n, s, t) {
                        assert_eq!(gg.graph.vertex_count(), expected_size(n, s, t), "n={n} s={s} t={t}");
                    }
                }
            }
            assert!(gen_gnst(n, two(), SizeProfile::DivLog).is_ok(), "n={n}");
            assert!(gen_gnst(n, SizeProfile::DivLog, SizeProfile::FloorLog).is_ok(), "n={n}");
        }
    }

    #[test]
    fn bad_profile_names_the_level() {
        match gen_gnst(8, SizeProfile::Const(1), two()) {
            Err(GadgetError::Profile { level, .. }) => assert_eq!(level, 8),
            other => panic!("{other:?}"),
        }
        assert!("x".parse::<SizeProfile>().is_err());
        assert_eq!("const:3".parse::<SizeProfile>().unwrap(), SizeProfile::Const(3));
    }

    #[test]
    fn cliques_and_independent_b() {
        let gg = gen_gnst(5, two(), two()).unwrap();
        let g = &gg.graph;
        let lv = &gg.levels[0];
        for set in [lv.n(), lv.a.clone(), lv.c[0].clone()] {
            for &u in &set {
                for &v in &set {
                    assert_eq!(g.has_edge(u, v), u != v);
                }
            }
        }
        assert!(!g.has_edge(lv.b[0], lv.b[1]) && !g.has_edge(lv.b[1], lv.b[0]));
    }

    #[test]
    fn role_labels_partition_vertices() {
        let gg = gen_gnst(8, two(), two()).unwrap();
        assert!(gg.graph.roles().iter().all(Option::is_some));
        let mut seen = vec![0; gg.graph.vertex_count()];
        for lv in &gg.levels {
            for v in lv.vertices() {
                seen[v] += 1;
            }
        }
        for &v in &gg.base {
            seen[v] += 1;
        }
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn canonical_strategy_wins_on_g5() {
        let gg = gen_gnst(5, two(), two()).unwrap();
        let sigma = canonical_cop_strategy(&gg);
        let r = simulate(&gg.graph, CopPlayer::Strategy(&sigma), RobberPlayer::Exhaustive, 6).unwrap();
        assert!(matches!(r, SimReport::CopsAlwaysWin { .. }), "{r:?}");
        let r = simulate(&gg.graph, CopPlayer::Strategy(&sigma), RobberPlayer::Exhaustive, 5).unwrap();
        assert!(!r.cops_win());
    }

    #[test]
    fn poly_strategy_wins_on_g5() {
        let gg = gen_gnst(5, two(), two()).unwrap();
        let poly = poly_cop_strategy(&gg);
        let r = simulate(&gg.graph, CopPlayer::Strategy(&poly), RobberPlayer::Exhaustive, 7).unwrap();
        assert!(matches!(r, SimReport::CopsAlwaysWin { .. }), "{r:?}");
    }

    #[test]
    fn trivial_gadget_strategies() {
        let gg = gen_gnst(2, two(), two()).unwrap();
        let poly = poly_cop_strategy(&gg);
        let r = simulate(&gg.graph, CopPlayer::Strategy(&poly), RobberPlayer::Exhaustive, 1).unwrap();
        assert!(r.cops_win());
        let deep = deep_configurations(&gg, &canonical_cop_strategy(&gg), 1).unwrap();
        assert_eq!(deep.total, 1);
    }

    #[test]
    fn deep_configurations_on_g5() {
        let gg = gen_gnst(5, two(), two()).unwrap();
        let deep = deep_configurations(&gg, &canonical_cop_strategy(&gg), 6).unwrap();
        assert_eq!(deep.plays, 2);
        assert_eq!(deep.arrival, 2);
        assert_eq!(deep.total, 4);
    }

    #[test]
    fn lower_bound_robber_beats_n_cops() {
        let gg = gen_gnst(5, two(), two()).unwrap();
        let robber = canonical_robber_strategy(&gg);
        let r = simulate(&gg.graph, CopPlayer::Exhaustive, RobberPlayer::Strategy(&robber), 5).unwrap();
        assert!(!r.cops_win());
    }

    #[test]
    fn tree_fixtures() {
        assert_eq!(gen_upclosure_tree(1).vertex_count(), 1);
        let t3 = gen_upclosure_tree(3);
        assert_eq!(t3.vertex_count(), 7);
        assert!(t3.has_edge(3, 0) && !t3.has_edge(0, 3));
        let s2 = gen_sibling_tree(2);
        assert_eq!(s2.vertex_count(), 3);
        assert_eq!(s2.edge_count(), 5);
        assert_eq!(gen_sibling_tree(3).vertex_count(), 13);
    }
}
