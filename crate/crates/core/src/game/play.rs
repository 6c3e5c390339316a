//! Terminal play against a machine opponent.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use super::simulate::{apply_cop_move, reason_text, PlayEntry, PlayOutcome, PlayRecord};
use super::strategy::{CopStrategy, RobberStrategy};
use super::{labels, legal_robber_moves, CopPosition, GameError, RobberWinReason};
use crate::graph::DiGraph;
use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HumanSide {
    Cops,
    Robber,
}

/// The machine's side of the board.
pub enum Machine<'a> {
    Cops(&'a dyn CopStrategy),
    Robber(&'a dyn RobberStrategy),
}

fn parse_cops(g: &DiGraph, line: &str) -> Result<VertexSet, String> {
    let mut set = g.empty_set();
    for tok in line.split(|c: char| c.is_whitespace() || c == ',') {
        if tok.is_empty() || tok == "." {
            continue;
        }
        let v = g
            .vertices()
            .find(|&v| g.label(v) == tok)
            .ok_or_else(|| format!("no vertex named `{tok}`"))?;
        set.insert(v);
    }
    Ok(set)
}

fn io_err(e: std::io::Error) -> GameError {
    GameError::Invalid(format!("terminal: {e}"))
}

/// Reads one non-empty line; `None` on end of input.
fn read_line(input: &mut dyn BufRead) -> Result<Option<String>, GameError> {
    let mut line = String::new();
    loop {
        line.clear();
        if input.read_line(&mut line).map_err(io_err)? == 0 {
            return Ok(None);
        }
        if !line.trim().is_empty() {
            return Ok(Some(line.trim().to_owned()));
        }
    }
}

/// Plays one game with the human on `human` and `machine` on the other
/// side. Cop input is a list of vertex labels (`.` for none); robber input
/// is the number of a listed component.
pub fn interactive_play(
    g: &DiGraph,
    k: usize,
    human: HumanSide,
    machine: Machine<'_>,
    input: &mut dyn BufRead,
    output: &mut dyn Write,
) -> Result<PlayRecord, GameError> {
    match (human, &machine) {
        (HumanSide::Cops, Machine::Robber(_)) | (HumanSide::Robber, Machine::Cops(_)) => {}
        _ => return Err(GameError::Invalid("human and machine must play opposite sides".into())),
    }
    let mut pos = CopPosition::initial(g);
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    let finish = |entries: Vec<PlayEntry>, outcome, output: &mut dyn Write| {
        let record = PlayRecord { entries, outcome };
        let _ = write!(output, "{}", record.transcript(g));
        Ok(record)
    };
    loop {
        entries.push(PlayEntry::Cop(pos.clone()));
        if !seen.insert(pos.clone()) {
            return finish(entries, PlayOutcome::RobberWins(RobberWinReason::InfinitePlayCycle), output);
        }
        writeln!(output, "cops on {}, robber in {}", labels(g, &pos.cops), labels(g, &pos.robber)).map_err(io_err)?;
        let rp = match &machine {
            Machine::Cops(strategy) => {
                let next = strategy.next_cops(g, &pos)?;
                match apply_cop_move(g, &pos, next, k) {
                    Ok(rp) => rp,
                    Err(r) => return finish(entries, PlayOutcome::RobberWins(r), output),
                }
            }
            Machine::Robber(_) => loop {
                writeln!(output, "place at most {k} cops:").map_err(io_err)?;
                let Some(line) = read_line(input)? else {
                    return finish(entries, PlayOutcome::Aborted, output);
                };
                let next = match parse_cops(g, &line) {
                    Ok(s) => s,
                    Err(msg) => {
                        writeln!(output, "refused: {msg}").map_err(io_err)?;
                        continue;
                    }
                };
                match apply_cop_move(g, &pos, next, k) {
                    Ok(rp) => break rp,
                    Err(RobberWinReason::CopsStuck) => {
                        writeln!(output, "refused: more than {k} cops").map_err(io_err)?
                    }
                    Err(r) => writeln!(output, "refused: {}", reason_text(r)).map_err(io_err)?,
                }
            },
        };
        writeln!(output, "cops move to {}", labels(g, &rp.cops_new)).map_err(io_err)?;
        entries.push(PlayEntry::Robber(rp.clone()));
        let options = legal_robber_moves(g, &rp);
        if options.is_empty() {
            return finish(entries, PlayOutcome::CopsWin, output);
        }
        let i = match &machine {
            Machine::Robber(strategy) => strategy.choose(g, &rp, &options)?,
            Machine::Cops(_) => loop {
                for (i, o) in options.iter().enumerate() {
                    writeln!(output, "  [{i}] {}", labels(g, &o.robber)).map_err(io_err)?;
                }
                writeln!(output, "choose a component:").map_err(io_err)?;
                let Some(line) = read_line(input)? else {
                    return finish(entries, PlayOutcome::Aborted, output);
                };
                match line.parse::<usize>() {
                    Ok(i) if i < options.len() => break i,
                    _ => writeln!(output, "refused: expected a number below {}", options.len()).map_err(io_err)?,
                }
            },
        };
        pos = options[i].clone();
    }
}
