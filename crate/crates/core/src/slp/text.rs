//! The `.slp` text format.
//!
//! ```text
//! alphabet: 01
//! S -> X Y      # first production is the axiom
//! X -> 0 1
//! Y -> eps
//! ```

use std::fmt;

use super::{Alphabet, Slp, SlpDraft, SlpError, Sym, Token};

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses the text format into an unvalidated draft.
pub fn parse_draft(text: &str) -> Result<SlpDraft, SlpError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut productions = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("alphabet:") {
            if alphabet.is_some() {
                return Err(SlpError::Parse {
                    line: line_no,
                    message: "duplicate alphabet line".into(),
                });
            }
            alphabet = Some(Alphabet::new(rest.chars().filter(|c| !c.is_whitespace())));
            continue;
        }
        let Some(alpha) = alphabet.as_ref() else {
            return Err(SlpError::Parse {
                line: line_no,
                message: "production before the alphabet line".into(),
            });
        };
        let mut parts = line.split_whitespace();
        let lhs = parts.next().expect("nonempty line");
        if parts.next() != Some("->") {
            return Err(SlpError::Parse {
                line: line_no,
                message: format!("expected `{lhs} -> ...`"),
            });
        }
        let mut rhs = Vec::new();
        for tok in parts {
            if tok == "eps" {
                continue;
            }
            let mut chars = tok.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if alpha.contains(c) => rhs.push(Token::Terminal(c)),
                _ => rhs.push(Token::Nonterminal(tok.to_string())),
            }
        }
        productions.push((lhs.to_string(), rhs));
    }
    let alphabet = alphabet.ok_or(SlpError::Parse {
        line: 0,
        message: "missing alphabet line".into(),
    })?;
    let axiom = productions
        .first()
        .map(|(n, _)| n.clone())
        .ok_or(SlpError::Parse {
            line: 0,
            message: "no productions".into(),
        })?;
    Ok(SlpDraft {
        alphabet,
        productions,
        axiom,
    })
}

/// Parses and validates a program.
pub fn parse_slp(text: &str) -> Result<Slp, SlpError> {
    Slp::from_draft(&parse_draft(text)?)
}

pub(super) fn write_slp(p: &Slp, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(f, "alphabet: {}", p.alphabet())?;
    let order =
        std::iter::once(p.axiom()).chain((0..p.num_rules()).rev().filter(|&i| i != p.axiom()));
    for i in order {
        write!(f, "{} ->", p.name(i))?;
        if p.rule(i).is_empty() {
            write!(f, " eps")?;
        }
        for s in p.rule(i) {
            match *s {
                Sym::T(c) => write!(f, " {c}")?,
                Sym::N(j) => write!(f, " {}", p.name(j))?,
            }
        }
        writeln!(f)?;
    }
    Ok(())
}
