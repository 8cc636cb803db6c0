//! Unary context-free grammars and the lowering of expressions.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use super::{IntExpr, IntExprError, Members};
use crate::slp::Nat;

/// Largest length accepted by [`cfg_membership_unary`].
pub const MAX_LENGTH: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CfgSym {
    A,
    N(usize),
}

/// A grammar over the single terminal `a`; each nonterminal has a list of
/// alternatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryCfg {
    names: Vec<String>,
    alts: Vec<Vec<Vec<CfgSym>>>,
    axiom: usize,
}

impl UnaryCfg {
    pub fn num_nonterminals(&self) -> usize {
        self.alts.len()
    }

    pub fn alternatives(&self, x: usize) -> &[Vec<CfgSym>] {
        &self.alts[x]
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn axiom(&self) -> usize {
        self.axiom
    }

    /// Total number of symbol occurrences over all productions, plus one per
    /// production.
    pub fn size(&self) -> usize {
        self.alts.iter().flatten().map(|rhs| rhs.len() + 1).sum()
    }
}

impl fmt::Display for UnaryCfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "axiom: {}", self.names[self.axiom])?;
        for (x, alts) in self.alts.iter().enumerate() {
            let rhs: Vec<String> = alts
                .iter()
                .map(|rhs| {
                    if rhs.is_empty() {
                        "ε".to_string()
                    } else {
                        rhs.iter()
                            .map(|s| match s {
                                CfgSym::A => "a".to_string(),
                                CfgSym::N(y) => self.names[*y].clone(),
                            })
                            .collect::<Vec<_>>()
                            .join(" ")
                    }
                })
                .collect();
            writeln!(f, "{} -> {}", self.names[x], rhs.join(" | "))?;
        }
        Ok(())
    }
}

/// Reads the format written by `Display`: an `axiom:` line, then one
/// `X -> rhs | rhs` line per nonterminal. `a` is the terminal, `ε` or `eps`
/// the empty word, `#` starts a comment.
pub fn parse_cfg(text: &str) -> Result<UnaryCfg, IntExprError> {
    let fail = |pos: usize, message: String| IntExprError::Syntax { pos, message };
    let mut axiom_name = None;
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("axiom:") {
            axiom_name = Some(rest.trim().to_string());
        } else {
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| fail(k + 1, "expected `->`".into()))?;
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs == "a" || lhs.contains(char::is_whitespace) {
                return Err(fail(k + 1, format!("bad nonterminal {lhs:?}")));
            }
            lines.push((k + 1, lhs.to_string(), rhs.to_string()));
        }
    }
    let mut index = std::collections::HashMap::new();
    for (i, (line, name, _)) in lines.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(fail(*line, format!("{name} defined twice")));
        }
    }
    let mut alts = Vec::with_capacity(lines.len());
    for (line, _, rhs) in &lines {
        let mut mine = Vec::new();
        for alt in rhs.split('|') {
            let mut syms = Vec::new();
            for tok in alt.split_whitespace() {
                match tok {
                    "a" => syms.push(CfgSym::A),
                    "ε" | "eps" => {}
                    name => match index.get(name) {
                        Some(&y) => syms.push(CfgSym::N(y)),
                        None => return Err(fail(*line, format!("undefined nonterminal {name}"))),
                    },
                }
            }
            mine.push(syms);
        }
        alts.push(mine);
    }
    let axiom_name = axiom_name.ok_or_else(|| fail(0, "missing `axiom:` line".into()))?;
    let axiom = *index
        .get(&axiom_name)
        .ok_or_else(|| fail(0, format!("undefined axiom {axiom_name}")))?;
    Ok(UnaryCfg {
        names: lines.into_iter().map(|(_, n, _)| n).collect(),
        alts,
        axiom,
    })
}

struct Lower {
    names: Vec<String>,
    alts: Vec<Vec<Vec<CfgSym>>>,
}

impl Lower {
    fn add(&mut self, name: &str, alts: Vec<Vec<CfgSym>>) -> usize {
        self.names.push(format!("{name}{}", self.names.len()));
        self.alts.push(alts);
        self.alts.len() - 1
    }

    // Doubling chain over the binary digits, most significant first.
    fn constant(&mut self, n: &Nat) -> usize {
        if n.is_zero() {
            return self.add("C", vec![vec![]]);
        }
        let bits = n.bits();
        let mut x = self.add("C", vec![vec![CfgSym::A]]);
        for i in (0..bits - 1).rev() {
            let mut rhs = vec![CfgSym::N(x), CfgSym::N(x)];
            if n.bit(i) {
                rhs.push(CfgSym::A);
            }
            x = self.add("C", vec![rhs]);
        }
        x
    }

    fn lower(&mut self, e: &IntExpr) -> usize {
        match e {
            IntExpr::Const(n) => self.constant(n),
            IntExpr::Sum(a, b) => {
                let (x, y) = (self.lower(a), self.lower(b));
                self.add("S", vec![vec![CfgSym::N(x), CfgSym::N(y)]])
            }
            IntExpr::Union(a, b) => {
                let (x, y) = (self.lower(a), self.lower(b));
                self.add("U", vec![vec![CfgSym::N(x)], vec![CfgSym::N(y)]])
            }
            IntExpr::Double(a) => {
                let x = self.lower(a);
                self.add("D", vec![vec![CfgSym::N(x), CfgSym::N(x)]])
            }
            IntExpr::Star(a) => {
                let x = self.lower(a);
                // N' -> ε | N N'
                let me = self.alts.len();
                self.add("K", vec![vec![], vec![CfgSym::N(x), CfgSym::N(me)]])
            }
        }
    }
}

/// Grammar generating `{ a^s : s ∈ ⟦e⟧ }`.
pub fn expr_to_cfg(e: &IntExpr) -> UnaryCfg {
    let mut l = Lower {
        names: Vec::new(),
        alts: Vec::new(),
    };
    let axiom = l.lower(e);
    UnaryCfg {
        names: l.names,
        alts: l.alts,
        axiom,
    }
}

/// The lengths up to `n` derivable from each nonterminal, by least fixpoint
/// iteration over length sets.
fn lengths(g: &UnaryCfg, n: usize) -> Vec<Members> {
    let k = g.num_nonterminals();
    let mut sets: Vec<Members> = vec![Members::empty(n); k];
    let mut unit = Members::empty(n);
    if n > 0 {
        unit.insert(1);
    }
    let mut eps = Members::empty(n);
    eps.insert(0);
    loop {
        let mut changed = false;
        for x in 0..k {
            let mut acc = sets[x].clone();
            for rhs in &g.alts[x] {
                let mut cur = eps.clone();
                for s in rhs {
                    let part = match s {
                        CfgSym::A => &unit,
                        CfgSym::N(y) => &sets[*y],
                    };
                    cur = cur.sumset(part);
                    if cur.is_empty() {
                        break;
                    }
                }
                acc.union_with(&cur);
            }
            if acc != sets[x] {
                sets[x] = acc;
                changed = true;
            }
        }
        if !changed {
            return sets;
        }
    }
}

/// Lengths in `[0, n]` of the words generated by the axiom.
pub fn cfg_lengths_up_to(g: &UnaryCfg, n: &Nat) -> Result<Members, IntExprError> {
    let n = check_length(n)?;
    Ok(lengths(g, n).swap_remove(g.axiom))
}

/// Whether `a^n ∈ L(g)`.
pub fn cfg_membership_unary(g: &UnaryCfg, n: &Nat) -> Result<bool, IntExprError> {
    let m = check_length(n)?;
    Ok(lengths(g, m)[g.axiom].contains(m))
}

fn check_length(n: &Nat) -> Result<usize, IntExprError> {
    match n.to_u64() {
        Some(v) if v <= MAX_LENGTH => Ok(v as usize),
        _ => Err(IntExprError::BoundTooLarge {
            bound: n.clone(),
            max: MAX_LENGTH,
        }),
    }
}
