//! CNF and prenex QBF formulas, exhaustive evaluation, and the reduction
//! from QBF to the DAG-width game.

mod reduction;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::game::GameError;
use crate::graph::GraphError;

pub use reduction::{
    all_strategies, build_clause_gadget, build_h_phi, build_s_phi, build_s_phi_with, cop_strategy_from_exists, predicted_cops,
    robber_strategy_from_forall, verify_reduction, verify_reduction_on, ClauseGadget, Method, ReductionCops,
    ReductionRobber, Report, SPhi, SPhiSizes, VerifyOptions,
};

#[derive(Debug, Error)]
pub enum LogicError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("restriction violated at line {line}: {message}")]
    Restriction { line: usize, message: String },
    #[error("invalid formula: {0}")]
    Invalid(String),
    #[error("too many variables for exhaustive evaluation: {0}")]
    TooLarge(usize),
    #[error("premise does not hold: {0}")]
    Premise(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Exhaustive evaluation limit.
pub const MAX_EVAL_VARS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn holds(&self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "X{}", self.var)
        } else {
            write!(f, "¬X{}", self.var)
        }
    }
}

/// A CNF over variables `1..=num_vars`. An empty clause list is true; an
/// empty clause is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, LogicError> {
        let f = CnfFormula { num_vars, clauses };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<(), LogicError> {
        for (i, c) in self.clauses.iter().enumerate() {
            for (j, l) in c.iter().enumerate() {
                if l.var == 0 || l.var > self.num_vars {
                    return Err(LogicError::Invalid(format!("clause {i} uses unknown variable {}", l.var)));
                }
                if c[..j].iter().any(|o| o.var == l.var) {
                    return Err(LogicError::Restriction {
                        line: 0,
                        message: format!("clause {i} mentions X{} twice", l.var),
                    });
                }
            }
        }
        Ok(())
    }

    /// Evaluates under `values[v - 1]`.
    pub fn eval(&self, values: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(values[l.var - 1])))
    }

    /// First clause falsified by `values`.
    pub fn falsified_clause(&self, values: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.holds(values[l.var - 1])))
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("⊤");
        }
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                if c.is_empty() {
                    "⊥".to_string()
                } else {
                    let ls: Vec<String> = c.iter().map(Literal::to_string).collect();
                    format!("({})", ls.join("∨"))
                }
            })
            .collect();
        f.write_str(&parts.join("∧"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// `Q_1 X_{p_1} … Q_r X_{p_r} ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QbfFormula {
    pub prefix: Vec<(Quantifier, usize)>,
    pub matrix: CnfFormula,
}

impl QbfFormula {
    pub fn new(prefix: Vec<(Quantifier, usize)>, matrix: CnfFormula) -> Result<Self, LogicError> {
        let mut seen = vec![false; matrix.num_vars + 1];
        for &(_, v) in &prefix {
            if v == 0 || v > matrix.num_vars {
                return Err(LogicError::Invalid(format!("prefix quantifies unknown variable {v}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(LogicError::Invalid(format!("prefix quantifies X{v} twice")));
            }
        }
        if let Some(v) = (1..=matrix.num_vars).find(|&v| !seen[v]) {
            return Err(LogicError::Invalid(format!("X{v} is not quantified")));
        }
        Ok(QbfFormula { prefix, matrix })
    }

    /// Universal closure of a CNF.
    pub fn forall_closure(matrix: CnfFormula) -> Self {
        let prefix = (1..=matrix.num_vars).map(|v| (Quantifier::Forall, v)).collect();
        QbfFormula { prefix, matrix }
    }

    pub fn num_vars(&self) -> usize {
        self.prefix.len()
    }

    /// Matrix value for values listed in prefix order.
    pub fn eval_matrix(&self, by_prefix: &[bool]) -> bool {
        self.matrix.eval(&self.by_variable(by_prefix))
    }

    /// Reorders prefix-order values into variable order.
    pub fn by_variable(&self, by_prefix: &[bool]) -> Vec<bool> {
        let mut values = vec![false; self.matrix.num_vars];
        for (&(_, v), &b) in self.prefix.iter().zip(by_prefix) {
            values[v - 1] = b;
        }
        values
    }
}

impl fmt::Display for QbfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(q, v) in &self.prefix {
            let s = match q {
                Quantifier::Forall => "∀",
                Quantifier::Exists => "∃",
            };
            write!(f, "{s}X{v} ")?;
        }
        write!(f, "{}", self.matrix)
    }
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |t| {
        let col = t.as_ptr() as usize - line.as_ptr() as usize + 1;
        (col, t)
    })
}

struct Header {
    vars: usize,
    clauses: usize,
}

fn parse_body(text: &str, allow_prefix: bool) -> Result<(CnfFormula, Vec<(Quantifier, usize)>), LogicError> {
    let mut header: Option<Header> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut prefix = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_line = 0;
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        let mut toks = tokens(line).peekable();
        let err = |column: usize, message: String| LogicError::Parse { line: ln, column, message };
        if trimmed.starts_with('p') {
            let parts: Vec<(usize, &str)> = toks.collect();
            if header.is_some() {
                return Err(err(parts[0].0, "duplicate problem line".into()));
            }
            if parts.len() != 4 || parts[1].1 != "cnf" {
                return Err(err(parts[0].0, "expected `p cnf <vars> <clauses>`".into()));
            }
            let num = |(c, t): (usize, &str)| t.parse::<usize>().map_err(|_| err(c, format!("expected a count, found `{t}`")));
            header = Some(Header { vars: num(parts[2])?, clauses: num(parts[3])? });
            continue;
        }
        let Some(h) = &header else {
            return Err(err(toks.peek().map_or(1, |t| t.0), "clause before the problem line".into()));
        };
        if trimmed.starts_with('a') || trimmed.starts_with('e') {
            let (c0, q) = toks.next().expect("non-empty line");
            if !allow_prefix {
                return Err(err(c0, "quantifier lines are not allowed in DIMACS CNF".into()));
            }
            if !clauses.is_empty() || !current.is_empty() {
                return Err(err(c0, "quantifier line after clauses".into()));
            }
            let q = if q == "a" { Quantifier::Forall } else { Quantifier::Exists };
            let mut closed = false;
            for (c, t) in toks {
                let v: usize = t.parse().map_err(|_| err(c, format!("expected a variable, found `{t}`")))?;
                if v == 0 {
                    closed = true;
                    break;
                }
                if v > h.vars {
                    return Err(err(c, format!("variable {v} exceeds the declared {}", h.vars)));
                }
                prefix.push((q, v));
            }
            if !closed {
                return Err(err(line.len() + 1, "quantifier line must end with 0".into()));
            }
            continue;
        }
        for (c, t) in toks {
            let x: i64 = t.parse().map_err(|_| err(c, format!("expected a literal, found `{t}`")))?;
            if x == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = x.unsigned_abs() as usize;
            if var > h.vars {
                return Err(err(c, format!("variable {var} exceeds the declared {}", h.vars)));
            }
            if current.iter().any(|l| l.var == var) {
                return Err(LogicError::Restriction {
                    line: ln,
                    message: format!("X{var} appears twice in one clause"),
                });
            }
            current.push(Literal { var, positive: x > 0 });
            current_line = ln;
        }
    }
    let Some(h) = header else {
        return Err(LogicError::Parse { line: 1, column: 1, message: "missing problem line".into() });
    };
    if !current.is_empty() {
        return Err(LogicError::Parse { line: current_line, column: 1, message: "unterminated clause".into() });
    }
    if clauses.len() != h.clauses {
        return Err(LogicError::Parse {
            line: 1,
            column: 1,
            message: format!("declared {} clauses, found {}", h.clauses, clauses.len()),
        });
    }
    Ok((CnfFormula { num_vars: h.vars, clauses }, prefix))
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, LogicError> {
    parse_body(text, false).map(|(f, _)| f)
}

/// Reads QDIMACS. Variables missing from the prefix are existentially
/// quantified outermost, as the format prescribes.
pub fn parse_qdimacs(text: &str) -> Result<QbfFormula, LogicError> {
    let (matrix, listed) = parse_body(text, true)?;
    let mut quantified = vec![false; matrix.num_vars + 1];
    for &(_, v) in &listed {
        quantified[v] = true;
    }
    let mut prefix: Vec<(Quantifier, usize)> = (1..=matrix.num_vars)
        .filter(|&v| !quantified[v])
        .map(|v| (Quantifier::Exists, v))
        .collect();
    prefix.extend(listed);
    QbfFormula::new(prefix, matrix)
}

pub fn is_tautology(f: &CnfFormula) -> Result<bool, LogicError> {
    if f.num_vars > MAX_EVAL_VARS {
        return Err(LogicError::TooLarge(f.num_vars));
    }
    let mut values = vec![false; f.num_vars];
    for bits in 0u64..(1u64 << f.num_vars) {
        for (i, v) in values.iter_mut().enumerate() {
            *v = bits >> i & 1 == 1;
        }
        if !f.eval(&values) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Player {
    Exists,
    Forall,
}

/// Choice in the matrix phase of the model-checking game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MatrixChoice {
    /// For the existential player: a true literal index per clause.
    Literals(Vec<usize>),
    /// For the universal player: a clause whose literals are all false.
    Clause(usize),
}

/// Positional winning strategy in the model-checking game, defined on the
/// positions reachable when its owner follows it. Keys are the values
/// chosen so far, in prefix order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McStrategy {
    pub winner: Player,
    pub values: BTreeMap<Vec<bool>, bool>,
    pub matrix: BTreeMap<Vec<bool>, MatrixChoice>,
}

impl McStrategy {
    /// Value the winner picks after `chosen`.
    pub fn value(&self, chosen: &[bool]) -> Option<bool> {
        self.values.get(chosen).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub truth: bool,
    pub strategy: McStrategy,
}

fn wins(f: &QbfFormula, chosen: &mut Vec<bool>) -> bool {
    let j = chosen.len();
    if j == f.prefix.len() {
        return f.eval_matrix(chosen);
    }
    let exists = f.prefix[j].0 == Quantifier::Exists;
    let mut result = !exists;
    for b in [false, true] {
        chosen.push(b);
        let w = wins(f, chosen);
        chosen.pop();
        if exists && w {
            result = true;
            break;
        }
        if !exists && !w {
            result = false;
            break;
        }
    }
    result
}

fn extract(f: &QbfFormula, winner: Player, chosen: &mut Vec<bool>, out: &mut McStrategy) {
    let j = chosen.len();
    if j == f.prefix.len() {
        let values = f.by_variable(chosen);
        let choice = match winner {
            Player::Exists => MatrixChoice::Literals(
                f.matrix
                    .clauses
                    .iter()
                    .map(|c| c.iter().position(|l| l.holds(values[l.var - 1])).expect("true clause"))
                    .collect(),
            ),
            Player::Forall => MatrixChoice::Clause(f.matrix.falsified_clause(&values).expect("false matrix")),
        };
        out.matrix.insert(chosen.clone(), choice);
        return;
    }
    let owner = match f.prefix[j].0 {
        Quantifier::Exists => Player::Exists,
        Quantifier::Forall => Player::Forall,
    };
    let want_true = winner == Player::Exists;
    if owner == winner {
        let pick = [false, true]
            .into_iter()
            .find(|&b| {
                chosen.push(b);
                let w = wins(f, chosen);
                chosen.pop();
                w == want_true
            })
            .expect("the winner has a good move");
        out.values.insert(chosen.clone(), pick);
        chosen.push(pick);
        extract(f, winner, chosen, out);
        chosen.pop();
    } else {
        for b in [false, true] {
            chosen.push(b);
            extract(f, winner, chosen, out);
            chosen.pop();
        }
    }
}

/// Evaluates by solving the model-checking game and returns a winning
/// strategy for the winner.
pub fn qbf_eval(f: &QbfFormula) -> Result<Evaluation, LogicError> {
    if f.num_vars() > MAX_EVAL_VARS {
        return Err(LogicError::TooLarge(f.num_vars()));
    }
    let truth = wins(f, &mut Vec::new());
    let winner = if truth { Player::Exists } else { Player::Forall };
    let mut strategy = McStrategy { winner, values: BTreeMap::new(), matrix: BTreeMap::new() };
    extract(f, winner, &mut Vec::new(), &mut strategy);
    Ok(Evaluation { truth, strategy })
}

/// Truth by plain ∀/∃ expansion, independent of the game formulation.
pub fn expand_truth(f: &QbfFormula) -> bool {
    fn go(f: &QbfFormula, chosen: &mut Vec<bool>) -> bool {
        if chosen.len() == f.prefix.len() {
            return f.eval_matrix(chosen);
        }
        let mut vals = [false; 2];
        for (i, b) in [false, true].into_iter().enumerate() {
            chosen.push(b);
            vals[i] = go(f, chosen);
            chosen.pop();
        }
        match f.prefix[chosen.len()].0 {
            Quantifier::Exists => vals[0] || vals[1],
            Quantifier::Forall => vals[0] && vals[1],
        }
    }
    go(f, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_examples() {
        let f = parse_dimacs("p cnf 1 1\n1 0").unwrap();
        assert_eq!(f.clauses, vec![vec![Literal::pos(1)]]);
        let f = parse_dimacs("c two\np cnf 2 2\n1 2 0\n-1 -2 0\n").unwrap();
        assert_eq!(f.clauses.len(), 2);
        assert!(matches!(parse_dimacs("p cnf 1 1\n1 -1 0"), Err(LogicError::Restriction { line: 2, .. })));
        match parse_dimacs("p cnf 1 1\n1 x 0") {
            Err(LogicError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_dimacs("p cnf 1 1\na 1 0\n1 0").is_err());
    }

    #[test]
    fn qdimacs_prefix() {
        let q = parse_qdimacs("p cnf 2 2\na 1 0\ne 2 0\n1 2 0\n-1 -2 0\n").unwrap();
        assert_eq!(q.prefix, vec![(Quantifier::Forall, 1), (Quantifier::Exists, 2)]);
        let q = parse_qdimacs("p cnf 2 1\na 2 0\n1 2 0\n").unwrap();
        assert_eq!(q.prefix, vec![(Quantifier::Exists, 1), (Quantifier::Forall, 2)]);
    }

    #[test]
    fn tautologies() {
        let unit = CnfFormula::new(1, vec![vec![Literal::pos(1)]]).unwrap();
        assert!(!is_tautology(&unit).unwrap());
        assert!(is_tautology(&CnfFormula::new(3, vec![]).unwrap()).unwrap());
    }

    #[test]
    fn evaluation_examples() {
        let unit = CnfFormula::new(1, vec![vec![Literal::pos(1)]]).unwrap();
        let all = QbfFormula::new(vec![(Quantifier::Forall, 1)], unit.clone()).unwrap();
        let ex = QbfFormula::new(vec![(Quantifier::Exists, 1)], unit).unwrap();
        assert!(!qbf_eval(&all).unwrap().truth);
        let e = qbf_eval(&ex).unwrap();
        assert!(e.truth);
        assert_eq!(e.strategy.value(&[]), Some(true));

        let m = CnfFormula::new(
            2,
            vec![vec![Literal::pos(1), Literal::pos(2)], vec![Literal::neg(1), Literal::neg(2)]],
        )
        .unwrap();
        let f = QbfFormula::new(vec![(Quantifier::Forall, 1), (Quantifier::Exists, 2)], m).unwrap();
        let e = qbf_eval(&f).unwrap();
        assert!(e.truth);
        assert_eq!(e.strategy.value(&[false]), Some(true));
        assert_eq!(e.strategy.value(&[true]), Some(false));
        assert_eq!(e.strategy.matrix.len(), 2);
    }

    #[test]
    fn duplicate_prefix_rejected() {
        let m = CnfFormula::new(1, vec![]).unwrap();
        assert!(QbfFormula::new(vec![(Quantifier::Forall, 1), (Quantifier::Exists, 1)], m).is_err());
    }
}
