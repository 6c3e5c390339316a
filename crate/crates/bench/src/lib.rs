//! Benchmark fixtures.

use dwlab::gadgets::{self, SizeProfile};
use dwlab::logic::{self, QbfFormula};
use dwlab::DiGraph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Random digraph where each ordered pair is an arc with probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> DiGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    DiGraph::from_edges(n, &edges).expect("vertices in range")
}

pub fn upclosure(h: usize) -> DiGraph {
    gadgets::gen_upclosure_tree(h)
}

pub fn gadget(n: usize) -> DiGraph {
    gadgets::gen_gnst(n, SizeProfile::Const(2), SizeProfile::Const(2)).expect("valid gadget").graph
}

/// `∃X1 ∀X2 ∃X3 (X1 ∨ X2 ∨ X3) ∧ (¬X1 ∨ ¬X3)`.
pub fn three_level_qbf() -> QbfFormula {
    logic::parse_qdimacs("p cnf 3 2\ne 1 0\na 2 0\ne 3 0\n1 2 3 0\n-1 -3 0\n").expect("well-formed")
}
