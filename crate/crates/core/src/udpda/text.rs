//! The `.updpa` text format.
//!
//! ```text
//! states: p q
//! stack: _ X
//! initial: p
//! final: q
//! p a _ -> q X _     # read, push X above the bottom
//! q - * -> q *       # `*` on top: any symbol without its own line
//! ```
//!
//! A push word is either `-` or a list of stack symbols, top first. A single
//! token made of one-character symbols may be written without spaces.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{PushSym, RawUnpda, Top, Transition, UdpdaError, BOTTOM_NAME};

fn parse_err(line: usize, message: impl Into<String>) -> UdpdaError {
    UdpdaError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_unpda(text: &str) -> Result<RawUnpda, UdpdaError> {
    let mut states: Option<Vec<String>> = None;
    let mut stack: Option<Vec<String>> = None;
    let mut initial: Option<(usize, String)> = None;
    let mut finals: Vec<(usize, String)> = Vec::new();
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words = |rest: &str| {
            rest.split_whitespace()
                .map(str::to_string)
                .collect::<Vec<_>>()
        };
        if let Some(rest) = line.strip_prefix("states:") {
            states = Some(words(rest));
        } else if let Some(rest) = line.strip_prefix("stack:") {
            stack = Some(words(rest));
        } else if let Some(rest) = line.strip_prefix("initial:") {
            let w = words(rest);
            if w.len() != 1 {
                return Err(parse_err(line_no, "expected one initial state"));
            }
            initial = Some((line_no, w[0].clone()));
        } else if let Some(rest) = line.strip_prefix("final:") {
            finals.extend(words(rest).into_iter().map(|w| (line_no, w)));
        } else {
            lines.push((line_no, line.to_string()));
        }
    }
    let states = states.ok_or_else(|| parse_err(0, "missing `states:` line"))?;
    let mut stack = stack.ok_or_else(|| parse_err(0, "missing `stack:` line"))?;
    let (init_line, init_name) = initial.ok_or_else(|| parse_err(0, "missing `initial:` line"))?;

    // The bottom always comes first.
    stack.retain(|s| s != BOTTOM_NAME);
    stack.insert(0, BOTTOM_NAME.to_string());
    let state_ix: HashMap<&str, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let stack_ix: HashMap<&str, usize> = stack
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    if state_ix.len() != states.len() {
        return Err(parse_err(0, "duplicate state name"));
    }
    if stack_ix.len() != stack.len() || stack_ix.contains_key("*") || stack_ix.contains_key("-") {
        return Err(parse_err(0, "duplicate or reserved stack symbol"));
    }
    let chars_only = stack.iter().all(|s| s.chars().count() == 1);
    let state = |line: usize, name: &str| {
        state_ix
            .get(name)
            .copied()
            .ok_or_else(|| parse_err(line, format!("unknown state {name:?}")))
    };
    let initial = state(init_line, &init_name)?;
    let mut fin = vec![false; states.len()];
    for (line, f) in &finals {
        fin[state(*line, f)?] = true;
    }

    let mut transitions = Vec::new();
    for (line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() < 5 || toks[3] != "->" {
            return Err(parse_err(line, "expected `q a|- top -> q' word|-`"));
        }
        let from = state(line, toks[0])?;
        let reads = match toks[1] {
            "a" => true,
            "-" => false,
            other => {
                return Err(parse_err(
                    line,
                    format!("input must be `a` or `-`, got {other:?}"),
                ))
            }
        };
        let top = match toks[2] {
            "*" => Top::Any,
            s => Top::Sym(
                *stack_ix
                    .get(s)
                    .ok_or_else(|| parse_err(line, format!("unknown stack symbol {s:?}")))?,
            ),
        };
        let to = state(line, toks[4])?;
        let mut push = Vec::new();
        let rest = &toks[5..];
        if rest != ["-"] {
            for tok in rest {
                let one = |s: &str| match s {
                    "*" => Some(PushSym::Matched),
                    _ => stack_ix.get(s).map(|&x| PushSym::Sym(x)),
                };
                if let Some(p) = one(tok) {
                    push.push(p);
                } else if chars_only {
                    for c in tok.chars() {
                        let s = c.to_string();
                        push.push(one(&s).ok_or_else(|| {
                            parse_err(line, format!("unknown stack symbol {s:?}"))
                        })?);
                    }
                } else {
                    return Err(parse_err(line, format!("unknown stack symbol {tok:?}")));
                }
            }
        }
        if push.contains(&PushSym::Matched) && top != Top::Any {
            return Err(parse_err(line, "`*` in a push word needs `*` on top"));
        }
        transitions.push(Transition {
            from,
            reads,
            top,
            to,
            push,
        });
    }
    RawUnpda::new(states, stack, initial, fin, transitions)
}

pub fn write_unpda(m: &RawUnpda) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", m.states().join(" "));
    let _ = writeln!(out, "stack: {}", m.stack().join(" "));
    let _ = writeln!(out, "initial: {}", m.states()[m.initial()]);
    let finals: Vec<&str> = (0..m.states().len())
        .filter(|&q| m.is_final(q))
        .map(|q| m.states()[q].as_str())
        .collect();
    let _ = writeln!(out, "final: {}", finals.join(" "));
    for t in m.transitions() {
        let _ = writeln!(out, "{}", m.describe(t));
    }
    out
}
