use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dwlab::decomp::{self, DagDecomposition, DecompError};
use dwlab::gadgets::{self, SizeProfile};
use dwlab::game::{
    self, count_consistent_positions, interactive_play, longest_play, CopTable, Engine, GameError, Generator,
    HumanSide, Machine, Mode, Outcome, SolveOptions, Width,
};
use dwlab::logic::{self, LogicError, Method, QbfFormula, SPhiSizes, VerifyOptions};
use dwlab::measures::{self, DDecomposition, EliminationOrder, MeasureError};
use dwlab::{io as gio, DiGraph, GraphError};

#[derive(Parser)]
#[command(name = "dwlab", version, about = "Exact DAG-width experiments")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Write the main result to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Wall-clock limit; exceeding it exits with code 3.
    #[arg(long, global = true)]
    max_seconds: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
    Edges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Monotone,
    Raw,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Territory,
    Explicit,
    Unpruned,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Cops,
    Robber,
}

#[derive(Args)]
struct Budget {
    /// Cap on examined moves or positions.
    #[arg(long, default_value_t = game::DEFAULT_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Solve the k-cop game.
    Solve {
        graph: PathBuf,
        #[arg(long, short)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Monotone)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = EngineArg::Territory)]
        engine: EngineArg,
        #[command(flatten)]
        budget: Budget,
    },
    /// Compute DAG-width up to a bound.
    Width {
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        max: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Check a DAG decomposition.
    ValidateDecomp { graph: PathBuf, decomposition: PathBuf },
    /// Check a D-decomposition.
    ValidateDdecomp { graph: PathBuf, decomposition: PathBuf },
    /// Turn a winning cop strategy into a DAG decomposition.
    StrategyToDecomp {
        graph: PathBuf,
        #[arg(long, short)]
        k: usize,
        /// Cop table JSON; solved from scratch if absent.
        #[arg(long)]
        strategy: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Turn a DAG decomposition into a cop strategy.
    DecompToStrategy { graph: PathBuf, decomposition: PathBuf },
    /// Count positions consistent with a cop strategy.
    CountPositions {
        graph: PathBuf,
        #[arg(long, short)]
        k: usize,
        /// Cop table JSON.
        #[arg(long, conflicts_with = "decomposition")]
        strategy: Option<PathBuf>,
        /// Derive the strategy from this decomposition.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Kelly-width, or the width of a given elimination order.
    Kelly {
        graph: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Build the reduction graph of a QBF.
    Reduce {
        formula: PathBuf,
        /// Also write the graph JSON here.
        #[arg(long)]
        emit_graph: Option<PathBuf>,
        #[command(flatten)]
        sizes: SizeArgs,
    },
    /// Evaluate a QBF (QDIMACS) or check a CNF (DIMACS) for tautology.
    QbfEval { formula: PathBuf },
    /// Compare the game on the reduction graph with the formula's truth.
    VerifyReduction {
        formula: PathBuf,
        /// Play the scripted strategies instead of solving.
        #[arg(long)]
        scripted: bool,
        #[arg(long)]
        emit_graph: Option<PathBuf>,
        #[command(flatten)]
        sizes: SizeArgs,
        #[command(flatten)]
        budget: Budget,
    },
    /// Play against the solver's strategy on the terminal.
    Play {
        graph: PathBuf,
        #[arg(long, short)]
        k: usize,
        /// The side you play.
        #[arg(long = "as", value_enum, default_value_t = Side::Robber)]
        side: Side,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Args)]
struct SizeArgs {
    /// |M| of the innermost level.
    #[arg(long, default_value_t = SPhiSizes::default().inner_m)]
    inner_m: usize,
    /// Vertices of the hub clique.
    #[arg(long, default_value_t = SPhiSizes::default().hub)]
    hub: usize,
    /// Omit the arcs from inner levels to outer universal b-vertices.
    #[arg(long)]
    no_inner_b: bool,
}

impl SizeArgs {
    fn sizes(&self) -> SPhiSizes {
        SPhiSizes { inner_m: self.inner_m, hub: self.hub, inner_to_b: !self.no_inner_b, ..SPhiSizes::default() }
    }
}

#[derive(Subcommand)]
enum GenCommand {
    /// The gadget G_n(s,t).
    Gnst {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "const:2")]
        s: SizeProfile,
        #[arg(long, default_value = "const:2")]
        t: SizeProfile,
        /// Print the level table instead of the graph.
        #[arg(long)]
        summary: bool,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        graph_format: GraphFormat,
    },
    /// Complete binary tree with arcs to every ancestor.
    Upclosure {
        #[arg(long)]
        h: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        graph_format: GraphFormat,
    },
    /// Binary tree with sibling arcs.
    Sibling {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        graph_format: GraphFormat,
    },
}

/// Failures, by exit code.
enum Failure {
    /// Exit 1: the check ran and came out negative.
    Negative(Report),
    /// Exit 2.
    Usage(String),
    /// Exit 2: unreadable or malformed input.
    Input(String),
    /// Exit 3.
    Budget(String),
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Budget(_) => Failure::Budget(e.to_string()),
            GameError::Graph(g) => g.into(),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<DecompError> for Failure {
    fn from(e: DecompError) -> Self {
        match e {
            DecompError::Game(g) => g.into(),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<LogicError> for Failure {
    fn from(e: LogicError) -> Self {
        match e {
            LogicError::Game(g) => g.into(),
            LogicError::TooLarge(_) => Failure::Budget(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<MeasureError> for Failure {
    fn from(e: MeasureError) -> Self {
        match e {
            MeasureError::TooLarge(..) => Failure::Budget(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

/// What a command prints: text for people, JSON for machines.
struct Report {
    text: String,
    json: Value,
}

impl Report {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Report { text: text.into(), json }
    }

    fn render(&self, format: OutFormat) -> String {
        match format {
            OutFormat::Text => {
                let mut t = self.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
            OutFormat::Json => {
                let mut t = serde_json::to_string_pretty(&self.json).expect("JSON value");
                t.push('\n');
                t
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<DiGraph, Failure> {
    let text = read(path)?;
    let format = if text.trim_start().starts_with('{') { gio::Format::Json } else { gio::Format::EdgeList };
    gio::decode(&text, format).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_decomposition(g: &DiGraph, path: &Path) -> Result<DagDecomposition, Failure> {
    DagDecomposition::from_json(g, &read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_formula(path: &Path) -> Result<QbfFormula, Failure> {
    let text = read(path)?;
    logic::parse_qdimacs(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn graph_report(g: &DiGraph, format: GraphFormat) -> Report {
    let text = match format {
        GraphFormat::Json => gio::to_json(g),
        GraphFormat::Dot => gio::to_dot(g),
        GraphFormat::Edges => gio::to_edge_list(g),
    };
    Report::new(text, gio::json_value(g))
}

fn budget(b: &Budget) -> usize {
    usize::try_from(b.budget).unwrap_or(usize::MAX)
}

fn need_k(k: usize) -> Result<(), Failure> {
    if k == 0 {
        return Err(Failure::Usage("k must be at least 1".into()));
    }
    Ok(())
}

fn solve_table(g: &DiGraph, k: usize, b: usize) -> Result<Option<CopTable>, Failure> {
    match game::TerritorySolver::new(g, k, b).solve()? {
        Outcome::CopsWin(t) => Ok(Some(t)),
        Outcome::RobberWins(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Gen(GenCommand::Gnst { n, s, t, summary, graph_format }) => {
            let gg = gadgets::gen_gnst(n, s, t).map_err(|e| Failure::Usage(e.to_string()))?;
            if summary {
                let rows = gg.summary();
                let mut text = String::from("level  |M|  |D|  |C_i|  |B|  vertices\n");
                for r in &rows {
                    text.push_str(&format!(
                        "{:>5}  {:>3}  {:>3}  {:>5}  {:>3}  {:>8}\n",
                        r.level, r.m, r.d, r.c, r.b, r.vertices
                    ));
                }
                text.push_str(&format!("total {} vertices, {} edges", gg.graph.vertex_count(), gg.graph.edge_count()));
                return Ok(Report::new(
                    text,
                    json!({"levels": rows, "vertices": gg.graph.vertex_count(), "edges": gg.graph.edge_count()}),
                ));
            }
            Ok(graph_report(&gg.graph, graph_format))
        }
        Command::Gen(GenCommand::Upclosure { h, graph_format }) => {
            Ok(graph_report(&gadgets::gen_upclosure_tree(h), graph_format))
        }
        Command::Gen(GenCommand::Sibling { n, graph_format }) => {
            Ok(graph_report(&gadgets::gen_sibling_tree(n), graph_format))
        }
        Command::Solve { graph, k, mode, engine, budget: b } => {
            let g = load_graph(&graph)?;
            let opts = SolveOptions {
                mode: match mode {
                    ModeArg::Monotone => Mode::Monotone,
                    ModeArg::Raw => Mode::Raw,
                },
                engine: match engine {
                    EngineArg::Territory => Engine::Territory,
                    EngineArg::Explicit => Engine::Explicit(Generator::Pruned),
                    EngineArg::Unpruned => Engine::Explicit(Generator::Unpruned),
                },
                budget: budget(&b),
            };
            let outcome = game::solve_with(&g, k, &opts)?;
            Ok(match outcome {
                Outcome::CopsWin(t) => Report::new(
                    format!("cops win with {k} cops ({} strategy entries)", t.len()),
                    json!({"k": k, "winner": "cops", "strategy": t.to_json()}),
                ),
                Outcome::RobberWins(plan) => Report::new(
                    format!("robber wins against {k} cops"),
                    json!({"k": k, "winner": "robber", "strategy": plan.to_json()}),
                ),
            })
        }
        Command::Width { graph, max, budget: b } => {
            if max == 0 {
                return Err(Failure::Usage("--max must be at least 1".into()));
            }
            let g = load_graph(&graph)?;
            match game::dag_width_with_budget(&g, max, budget(&b))? {
                Width::Exactly { width, .. } => Ok(Report::new(width.to_string(), json!({"width": width}))),
                Width::ExceedsMax(m) => Err(Failure::Negative(Report::new(
                    format!("DAG-width exceeds {m}"),
                    json!({"width": null, "exceeds": m}),
                ))),
            }
        }
        Command::ValidateDecomp { graph, decomposition } => {
            let g = load_graph(&graph)?;
            let dec = load_decomposition(&g, &decomposition)?;
            match decomp::validate(&g, &dec) {
                Ok(()) => Ok(Report::new(
                    format!("valid: width {}, size {}", dec.width(), dec.size()),
                    json!({"valid": true, "width": dec.width(), "size": dec.size()}),
                )),
                Err(DecompError::Violation(v)) => Err(Failure::Negative(Report::new(
                    format!("invalid: {} violated: {}", v.axiom, v.witness),
                    json!({"valid": false, "axiom": v.axiom.to_string(), "witness": v.witness}),
                ))),
                Err(e) => Err(e.into()),
            }
        }
        Command::ValidateDdecomp { graph, decomposition } => {
            let g = load_graph(&graph)?;
            let dec = DDecomposition::from_json(&g, &read(&decomposition)?)?;
            match measures::validate_d_decomposition(&g, &dec) {
                Ok(()) => Ok(Report::new(
                    format!("valid: width {}", dec.width()),
                    json!({"valid": true, "width": dec.width()}),
                )),
                Err(MeasureError::Violation(v)) => Err(Failure::Negative(Report::new(
                    format!("invalid: {}: {}", v.condition, v.witness),
                    json!({"valid": false, "condition": v.condition.to_string(), "witness": v.witness}),
                ))),
                Err(e) => Err(e.into()),
            }
        }
        Command::StrategyToDecomp { graph, k, strategy, budget: b } => {
            need_k(k)?;
            let g = load_graph(&graph)?;
            let table = match strategy {
                Some(p) => CopTable::from_json(&g, &read(&p)?)?,
                None => match solve_table(&g, k, budget(&b))? {
                    Some(t) => t,
                    None => {
                        return Err(Failure::Negative(Report::new(
                            format!("robber wins against {k} cops; no decomposition"),
                            json!({"winner": "robber", "k": k}),
                        )))
                    }
                },
            };
            let dec = decomp::decomposition_from_strategy(&g, &table, k)?;
            Ok(Report::new(dec.to_json().to_string(), dec.to_json()))
        }
        Command::DecompToStrategy { graph, decomposition } => {
            let g = load_graph(&graph)?;
            let dec = load_decomposition(&g, &decomposition)?;
            let table = decomp::strategy_from_decomposition(&g, &dec)?;
            Ok(Report::new(table.to_json().to_string(), table.to_json()))
        }
        Command::CountPositions { graph, k, strategy, decomposition, budget: b } => {
            need_k(k)?;
            let g = load_graph(&graph)?;
            let table = if let Some(p) = strategy {
                CopTable::from_json(&g, &read(&p)?)?
            } else if let Some(p) = decomposition {
                decomp::strategy_from_decomposition(&g, &load_decomposition(&g, &p)?)?
            } else {
                solve_table(&g, k, budget(&b))?.ok_or_else(|| {
                    Failure::Negative(Report::new(
                        format!("robber wins against {k} cops"),
                        json!({"winner": "robber", "k": k}),
                    ))
                })?
            };
            let count = match count_consistent_positions(&g, &table, k) {
                Err(GameError::NotWinning(play)) => {
                    return Err(Failure::Negative(Report::new(
                        format!("the strategy loses:\n{play}"),
                        json!({"winning": false, "play": play}),
                    )))
                }
                other => other?,
            };
            let longest = longest_play(&g, &table, k)?;
            Ok(Report::new(
                format!(
                    "{} cop positions, {} robber positions, longest play {longest} rounds",
                    count.cop_positions, count.robber_positions
                ),
                json!({"cop_positions": count.cop_positions, "robber_positions": count.robber_positions, "longest_play": longest}),
            ))
        }
        Command::Kelly { graph, order } => {
            let g = load_graph(&graph)?;
            if let Some(p) = order {
                let ord = EliminationOrder::from_json(&g, &read(&p)?)?;
                let w = measures::order_width(&g, &ord);
                return Ok(Report::new(format!("order width {w}"), json!({"order_width": w})));
            }
            let kw = measures::kelly_width(&g)?;
            let labels: Vec<String> = kw.order.vertices().iter().map(|&v| g.label(v)).collect();
            Ok(Report::new(
                format!("{}\norder: {}", kw.width, labels.join(" ")),
                json!({"kelly_width": kw.width, "order": kw.order.to_json(&g)}),
            ))
        }
        Command::Reduce { formula, emit_graph, sizes } => {
            let phi = load_formula(&formula)?;
            let sp = logic::build_s_phi_with(&phi, sizes.sizes())?;
            if let Some(p) = emit_graph {
                write_file(&p, &gio::to_json(&sp.graph))?;
            }
            let k = logic::predicted_cops(&phi, sp.sizes);
            let levels: Vec<Value> = sp
                .levels
                .iter()
                .zip(&sp.formula.prefix)
                .map(|(lv, &(q, var))| {
                    json!({
                        "variable": var,
                        "quantifier": if q == logic::Quantifier::Exists { "exists" } else { "forall" },
                        "m": lv.m.len(),
                        "vertices": lv.vertices().len(),
                    })
                })
                .collect();
            Ok(Report::new(
                format!("{phi}\n{} vertices, {} edges, k* = {k}", sp.graph.vertex_count(), sp.graph.edge_count()),
                json!({
                    "formula": phi.to_string(),
                    "vertices": sp.graph.vertex_count(),
                    "edges": sp.graph.edge_count(),
                    "k_star": k,
                    "levels": levels,
                    "graph": gio::json_value(&sp.graph),
                }),
            ))
        }
        Command::QbfEval { formula } => {
            let text = read(&formula)?;
            let has_prefix = text.lines().any(|l| {
                let l = l.trim_start();
                l.starts_with("a ") || l.starts_with("e ")
            });
            if !has_prefix {
                let cnf = logic::parse_dimacs(&text).map_err(|e| Failure::Input(format!("{}: {e}", formula.display())))?;
                let taut = logic::is_tautology(&cnf)?;
                return Ok(Report::new(
                    format!("{cnf}\ntautology: {taut}"),
                    json!({"formula": cnf.to_string(), "tautology": taut}),
                ));
            }
            let phi = load_formula(&formula)?;
            let ev = logic::qbf_eval(&phi)?;
            let winner = if ev.truth { "exists" } else { "forall" };
            Ok(Report::new(
                format!("{phi}\n{}", if ev.truth { "true" } else { "false" }),
                json!({
                    "formula": phi.to_string(),
                    "truth": ev.truth,
                    "winner": winner,
                    "values": ev.strategy.values.iter().map(|(k, v)| json!({"after": k, "value": v})).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::VerifyReduction { formula, scripted, emit_graph, sizes, budget: b } => {
            let phi = load_formula(&formula)?;
            let opts = VerifyOptions {
                method: if scripted { Method::Scripted } else { Method::Solve },
                budget: budget(&b),
                sizes: sizes.sizes(),
            };
            let sp = logic::build_s_phi_with(&phi, opts.sizes)?;
            if let Some(p) = emit_graph {
                write_file(&p, &gio::to_json(&sp.graph))?;
            }
            let r = logic::verify_reduction_on(&sp, &opts)?;
            let show = |x: Option<bool>| x.map_or("unknown".to_string(), |b| b.to_string());
            let text = format!(
                "{}\ntruth {}, k* = {}, {} vertices\ncops win at k*: {}\nrobber wins at k*-1: {}\nwiring ok: {}\nagrees: {}",
                r.formula,
                r.truth,
                r.k_star,
                r.vertices,
                show(r.cops_win),
                show(r.robber_wins_below),
                r.wiring_ok,
                r.agrees
            );
            let report = Report::new(text, serde_json::to_value(&r).expect("report serializes"));
            if r.unverified {
                Err(Failure::Budget(format!("unverified: {}", report.json)))
            } else if r.agrees {
                Ok(report)
            } else {
                Err(Failure::Negative(report))
            }
        }
        Command::Play { graph, k, side, budget: b } => {
            need_k(k)?;
            let g = load_graph(&graph)?;
            let outcome = game::TerritorySolver::new(&g, k, budget(&b)).solve()?;
            let stdin = io::stdin();
            let mut input = BufReader::new(stdin.lock());
            let mut out = io::stdout();
            let record = match (&outcome, side) {
                (Outcome::CopsWin(t), Side::Robber) => {
                    interactive_play(&g, k, HumanSide::Robber, Machine::Cops(t), &mut input, &mut out)?
                }
                (Outcome::RobberWins(plan), Side::Cops) => {
                    interactive_play(&g, k, HumanSide::Cops, Machine::Robber(plan), &mut input, &mut out)?
                }
                (Outcome::CopsWin(_), Side::Cops) => {
                    return Err(Failure::Usage(format!("cops win with {k}; play as the robber to face them")))
                }
                (Outcome::RobberWins(_), Side::Robber) => {
                    return Err(Failure::Usage(format!("robber wins against {k}; play as the cops to face him")))
                }
            };
            let outcome = serde_json::to_value(record.outcome).expect("outcome serializes");
            Ok(Report::new(format!("{} rounds", record.rounds()), json!({"rounds": record.rounds(), "outcome": outcome})))
        }
    }
}

fn emit(report: &Report, format: OutFormat, output: Option<&Path>) -> Result<(), Failure> {
    let text = report.render(format);
    match output {
        Some(p) => write_file(p, &text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::Input(format!("stdout: {e}")))
        }
    }
}

fn check_threads() -> Result<(), Failure> {
    match std::env::var("DWLAB_THREADS") {
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n > 0 => Ok(()),
            _ => Err(Failure::Usage(format!("DWLAB_THREADS must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let output = cli.output.clone();
    let limit = cli.max_seconds;
    let result = check_threads().and_then(|()| match limit {
        None => run(cli),
        Some(secs) => {
            let (tx, rx) = mpsc::channel();
            std::thread::spawn(move || {
                let _ = tx.send(run(cli));
            });
            rx.recv_timeout(Duration::from_secs(secs))
                .unwrap_or_else(|_| Err(Failure::Budget(format!("time limit of {secs} s exceeded"))))
        }
    });
    let result = result.and_then(|r| emit(&r, format, output.as_deref()).map(|()| r));
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Negative(r)) => {
            let _ = emit(&r, format, output.as_deref());
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: usage: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: input: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: budget: {m}");
            ExitCode::from(3)
        }
    }
}
