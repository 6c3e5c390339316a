use proptest::prelude::*;

use dwlab::decomp::{self, DecompError};
use dwlab::game::{
    self, simulate, solve_explicit, CopPlayer, Generator, Mode, Outcome, RobberPlayer, TerritorySolver, Width,
    DEFAULT_BUDGET,
};
use dwlab::io::{self, Format};
use dwlab::logic::{self, CnfFormula, Literal, Player, QbfFormula, Quantifier};
use dwlab::measures;
use dwlab::DiGraph;

fn digraph(max_n: usize) -> impl Strategy<Value = DiGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v && bits[u * n + v])
                .collect();
            DiGraph::from_edges(n, &edges).unwrap()
        })
    })
}

fn dag(max_n: usize) -> impl Strategy<Value = DiGraph> {
    digraph(max_n).prop_map(|g| {
        let edges: Vec<_> = g.edges().filter(|&(u, v)| u < v).collect();
        DiGraph::from_edges(g.vertex_count(), &edges).unwrap()
    })
}

fn width(g: &DiGraph) -> usize {
    match game::dag_width(g, g.vertex_count()).unwrap() {
        Width::Exactly { width, .. } => width,
        Width::ExceedsMax(m) => panic!("{m} cops always suffice"),
    }
}

fn qbf(max_vars: usize) -> impl Strategy<Value = QbfFormula> {
    (1..=max_vars).prop_flat_map(|n| {
        let lit = (1..=n, any::<bool>()).prop_map(|(var, positive)| Literal { var, positive });
        let clauses = prop::collection::vec(prop::collection::vec(lit, 1..=3), 1..=4);
        let quants = prop::collection::vec(any::<bool>(), n);
        let perm = Just((1..=n).collect::<Vec<_>>()).prop_shuffle();
        (clauses, quants, perm).prop_map(move |(mut clauses, quants, perm)| {
            for c in &mut clauses {
                c.sort_by_key(|l| l.var);
                c.dedup_by_key(|l| l.var);
            }
            let prefix = perm
                .into_iter()
                .zip(quants)
                .map(|(v, e)| (if e { Quantifier::Exists } else { Quantifier::Forall }, v))
                .collect();
            QbfFormula::new(prefix, CnfFormula::new(n, clauses).unwrap()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn territory_solver_matches_explicit_engine(g in digraph(6), k in 1usize..=3) {
        let territory = matches!(TerritorySolver::new(&g, k, DEFAULT_BUDGET).solve().unwrap(), Outcome::CopsWin(_));
        let explicit = solve_explicit(&g, k, Generator::Unpruned, Mode::Monotone, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(territory, explicit.cops_win);
    }

    #[test]
    fn pruned_generator_keeps_the_value(g in digraph(6), k in 1usize..=3) {
        let pruned = solve_explicit(&g, k, Generator::Pruned, Mode::Monotone, DEFAULT_BUDGET).unwrap();
        let full = solve_explicit(&g, k, Generator::Unpruned, Mode::Monotone, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(pruned.cops_win, full.cops_win);
    }

    #[test]
    fn winning_tables_beat_every_robber(g in digraph(6), k in 1usize..=3) {
        if let Outcome::CopsWin(t) = TerritorySolver::new(&g, k, DEFAULT_BUDGET).solve().unwrap() {
            let report = simulate(&g, CopPlayer::Strategy(&t), RobberPlayer::Exhaustive, k).unwrap();
            prop_assert!(report.cops_win());
        }
    }

    #[test]
    fn robber_plans_beat_every_cop(g in digraph(5), k in 1usize..=2) {
        if let Outcome::RobberWins(plan) = TerritorySolver::new(&g, k, DEFAULT_BUDGET).solve().unwrap() {
            let report = simulate(&g, CopPlayer::Exhaustive, RobberPlayer::Strategy(&plan), k).unwrap();
            prop_assert!(!report.cops_win());
        }
    }

    #[test]
    fn acyclic_graphs_have_width_one(g in dag(7)) {
        prop_assert_eq!(width(&g), 1);
    }

    #[test]
    fn strategy_decomposition_round_trip(g in digraph(6)) {
        let w = width(&g);
        let Outcome::CopsWin(t) = TerritorySolver::new(&g, w, DEFAULT_BUDGET).solve().unwrap() else {
            unreachable!("cops win at the width")
        };
        let dec = decomp::decomposition_from_strategy(&g, &t, w).unwrap();
        prop_assert!(decomp::validate(&g, &dec).is_ok());
        prop_assert!(dec.width() <= w);
        let back = decomp::strategy_from_decomposition(&g, &dec).unwrap();
        let report = simulate(&g, CopPlayer::Strategy(&back), RobberPlayer::Exhaustive, dec.width()).unwrap();
        prop_assert!(report.cops_win());
        let longest = game::longest_play(&g, &back, dec.width()).unwrap();
        prop_assert!(longest <= 2 * g.vertex_count());
    }

    #[test]
    fn adding_an_arc_never_lowers_width(g in digraph(6), u in 0usize..6, v in 0usize..6) {
        let n = g.vertex_count();
        let (u, v) = (u % n, v % n);
        prop_assume!(u != v && !g.has_edge(u, v));
        let mut edges: Vec<_> = g.edges().collect();
        edges.push((u, v));
        let h = DiGraph::from_edges(n, &edges).unwrap();
        prop_assert!(width(&h) >= width(&g));
        prop_assert!(measures::kelly_width(&h).unwrap().width >= measures::kelly_width(&g).unwrap().width);
    }

    #[test]
    fn kelly_dp_matches_permutations(g in digraph(7)) {
        let kw = measures::kelly_width(&g).unwrap();
        prop_assert_eq!(kw.width, measures::kelly_width_by_permutations(&g).unwrap());
        prop_assert_eq!(measures::order_width(&g, &kw.order), kw.width);
    }

    #[test]
    fn qbf_eval_matches_expansion(phi in qbf(5)) {
        let ev = logic::qbf_eval(&phi).unwrap();
        prop_assert_eq!(ev.truth, logic::expand_truth(&phi));
        prop_assert_eq!(ev.strategy.winner == Player::Exists, ev.truth);
    }

    #[test]
    fn json_and_edge_list_round_trip(g in digraph(8)) {
        for format in [Format::Json, Format::EdgeList] {
            let back = io::decode(&io::encode(&g, format), format).unwrap();
            prop_assert_eq!(back.vertex_count(), g.vertex_count());
            let mut a: Vec<_> = g.edges().map(|(u, v)| (g.label(u), g.label(v))).collect();
            let mut b: Vec<_> = back.edges().map(|(u, v)| (back.label(u), back.label(v))).collect();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn dropping_a_bag_vertex_is_caught(g in digraph(6)) {
        let w = width(&g);
        let Outcome::CopsWin(t) = TerritorySolver::new(&g, w, DEFAULT_BUDGET).solve().unwrap() else {
            unreachable!("cops win at the width")
        };
        let dec = decomp::decomposition_from_strategy(&g, &t, w).unwrap();
        let mut json = dec.to_json();
        let nodes = json["nodes"].as_array_mut().unwrap();
        let Some(node) = nodes.iter_mut().find(|n| !n["bag"].as_array().unwrap().is_empty()) else {
            return Ok(());
        };
        let removed = node["bag"].as_array_mut().unwrap().remove(0).as_u64().unwrap() as usize;
        let still_covered = nodes.iter().any(|n| n["bag"].as_array().unwrap().iter().any(|x| x.as_u64() == Some(removed as u64)));
        let broken = decomp::DagDecomposition::from_json(&g, &json.to_string()).unwrap();
        if !still_covered {
            prop_assert!(matches!(decomp::validate(&g, &broken), Err(DecompError::Violation(_))));
        }
    }
}
