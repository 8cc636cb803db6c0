//! Machines that replay a program: one gadget per nonterminal.

use std::collections::BTreeMap;

use num_traits::One;

use super::{IndicatorPair, TranslateError};
use crate::slp::{End, Nat, Slp, SlpError, Sym};
use crate::udpda::{Move, NormalBuilder, NormalUdpda, PopTable, BOTTOM, BOTTOM_NAME};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GadgetOptions {
    /// Bound the fan-out of every nonterminal by two with copy gadgets, so
    /// that two stack symbols suffice for the whole machine.
    pub tight_stack: bool,
}

/// A machine built from one program, with its interface states.
#[derive(Clone, Debug)]
pub struct SlpMachine {
    pub machine: NormalUdpda,
    /// The initial state.
    pub entry: usize,
    /// Reached at the bottom of the stack after exactly `|w|` reads.
    pub exit: usize,
}

#[derive(Clone, Copy, Debug)]
enum Node {
    Leaf(char),
    Pair(usize, usize),
    Copy(usize),
}

impl Node {
    fn children(&self) -> Vec<usize> {
        match *self {
            Node::Leaf(_) => vec![],
            Node::Pair(a, b) => vec![a, b],
            Node::Copy(a) => vec![a],
        }
    }

    fn set_child(&mut self, pos: usize, c: usize) {
        match (self, pos) {
            (Node::Pair(a, _), 0) | (Node::Copy(a), 0) => *a = c,
            (Node::Pair(_, b), 1) => *b = c,
            _ => unreachable!("no such child"),
        }
    }
}

struct Built {
    entry: usize,
    exit: usize,
    // Pop entries of the root's exit; the caller adds the bottom entry.
    exit_table: Vec<(usize, usize)>,
}

// Splits `sites` of `x` among copies until every node has at most two.
fn spread(nodes: &mut Vec<Node>, names: &mut Vec<String>, x: usize, sites: Vec<(usize, usize)>) {
    if sites.len() <= 2 {
        for (parent, pos) in sites {
            nodes[parent].set_child(pos, x);
        }
        return;
    }
    let (left, right) = sites.split_at(sites.len() / 2);
    for half in [left, right] {
        let c = nodes.len();
        nodes.push(Node::Copy(x));
        names.push(format!("{}.c{c}", names[x]));
        spread(nodes, names, c, half.to_vec());
    }
}

fn build(
    b: &mut NormalBuilder,
    p: &Slp,
    tag: &str,
    opts: GadgetOptions,
    dead: usize,
) -> Result<Built, TranslateError> {
    let cnf = p.to_cnf()?;
    let mut nodes: Vec<Node> = (0..cnf.num_rules())
        .map(|i| match cnf.rule(i) {
            [Sym::T(c)] => Node::Leaf(*c),
            [Sym::N(x), Sym::N(y)] => Node::Pair(*x, *y),
            _ => unreachable!("normal form"),
        })
        .collect();
    let mut names: Vec<String> = (0..cnf.num_rules())
        .map(|i| cnf.name(i).to_string())
        .collect();
    let root = cnf.axiom();

    let mut sites: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes.len()];
    for (parent, n) in nodes.iter().enumerate() {
        for (pos, c) in n.children().into_iter().enumerate() {
            sites[c].push((parent, pos));
        }
    }
    if opts.tight_stack {
        for (x, site) in sites.iter_mut().enumerate() {
            if site.len() > 2 {
                let s = std::mem::take(site);
                spread(&mut nodes, &mut names, x, s);
            }
        }
        sites = vec![Vec::new(); nodes.len()];
        for (parent, n) in nodes.iter().enumerate() {
            for (pos, c) in n.children().into_iter().enumerate() {
                sites[c].push((parent, pos));
            }
        }
    }

    // Stack symbol written when descending from `parent` into child `pos`.
    let mut symbol: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    if opts.tight_stack {
        let mut shared: Vec<usize> = Vec::new();
        for list in &sites {
            for (k, site) in list.iter().enumerate() {
                while shared.len() <= k {
                    let s = b.symbol(format!("{tag}r{}", shared.len()));
                    shared.push(s);
                }
                symbol.insert(*site, shared[k]);
            }
        }
    } else {
        for (parent, n) in nodes.iter().enumerate() {
            for pos in 0..n.children().len() {
                let s = b.symbol(format!("{tag}g{}.{}", pos + 1, names[parent]));
                symbol.insert((parent, pos), s);
            }
        }
    }

    let placeholder = Move::Internal(dead);
    let entry: Vec<usize> = (0..nodes.len())
        .map(|x| {
            b.add(
                format!("{tag}q.{}", names[x]),
                false,
                false,
                placeholder.clone(),
            )
        })
        .collect();
    let exit: Vec<usize> = nodes
        .iter()
        .enumerate()
        .map(|(x, n)| {
            let fin = matches!(n, Node::Leaf('1'));
            b.add(
                format!("{tag}x.{}", names[x]),
                fin,
                false,
                placeholder.clone(),
            )
        })
        .collect();
    let mut tables: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes.len()];
    for (x, n) in nodes.iter().enumerate() {
        match *n {
            Node::Leaf(_) => b.set(entry[x], true, Move::Internal(exit[x])),
            Node::Copy(a) => {
                let g = symbol[&(x, 0)];
                b.set(entry[x], false, Move::Push(entry[a], g));
                tables[a].push((g, exit[x]));
            }
            Node::Pair(a, c) => {
                let mid = b.add(
                    format!("{tag}m.{}", names[x]),
                    false,
                    false,
                    placeholder.clone(),
                );
                let g1 = symbol[&(x, 0)];
                let g2 = symbol[&(x, 1)];
                b.set(entry[x], false, Move::Push(entry[a], g1));
                tables[a].push((g1, mid));
                b.set(mid, false, Move::Push(entry[c], g2));
                tables[c].push((g2, exit[x]));
            }
        }
    }
    for x in 0..nodes.len() {
        if x != root {
            let t = std::mem::take(&mut tables[x]);
            b.set(exit[x], false, Move::Pop(PopTable::new(t, dead)));
        }
    }
    Ok(Built {
        entry: entry[root],
        exit: exit[root],
        exit_table: std::mem::take(&mut tables[root]),
    })
}

/// Machine whose characteristic sequence is `0 · w · 0^ω` for the word `w`
/// of `p`. A final reading sink follows the root's exit.
pub fn slp_to_udpda(p: &Slp) -> Result<NormalUdpda, TranslateError> {
    slp_to_udpda_with(p, GadgetOptions::default()).map(|m| m.machine)
}

pub fn slp_to_udpda_with(p: &Slp, opts: GadgetOptions) -> Result<SlpMachine, TranslateError> {
    check_bits(p)?;
    let mut b = NormalBuilder::new(vec![BOTTOM_NAME.to_string()]);
    let dead = b.dead();
    let built = build(&mut b, p, "", opts, dead)?;
    let mut table = built.exit_table;
    table.push((BOTTOM, dead));
    b.set(built.exit, false, Move::Pop(PopTable::new(table, dead)));
    Ok(SlpMachine {
        machine: b.finish(built.entry),
        entry: built.entry,
        exit: built.exit,
    })
}

fn check_bits(p: &Slp) -> Result<(), TranslateError> {
    if p.alphabet().iter().all(|c| c == '0' || c == '1') {
        Ok(())
    } else {
        Err(SlpError::AlphabetMismatch(p.alphabet().clone(), super::bits_alphabet()).into())
    }
}

/// Machine accepting the language of the pair.
///
/// The first bit becomes the finality of a fresh initial state; the rest of
/// the prefix and the loop are replayed by gadgets whose exits continue,
/// without reading, at the loop's entry.
pub fn indicator_to_udpda(
    ip: &IndicatorPair,
    opts: GadgetOptions,
) -> Result<NormalUdpda, TranslateError> {
    let (prefix, looped) = if ip.prefix().is_empty() {
        let l = ip.looped();
        let first = l.slice(&Nat::from(0u32), &Nat::one())?;
        let rotated = if l.length().is_one() {
            l.clone()
        } else {
            l.cyclic_shift(&Nat::one())?
        };
        (first, rotated)
    } else {
        (ip.prefix().clone(), ip.looped().clone())
    };
    let b0 = prefix.first_symbol().expect("nonempty prefix");
    let rest = prefix.trim(End::Front, b0)?;

    let mut b = NormalBuilder::new(vec![BOTTOM_NAME.to_string()]);
    let dead = b.dead();
    let start = b.add("start".into(), b0 == '1', false, Move::Internal(dead));
    let lp = build(&mut b, &looped, "l.", opts, dead)?;
    let mut table = lp.exit_table;
    table.push((BOTTOM, lp.entry));
    b.set(lp.exit, false, Move::Pop(PopTable::new(table, dead)));
    if rest.is_empty() {
        b.set(start, false, Move::Internal(lp.entry));
    } else {
        let pp = build(&mut b, &rest, "p.", opts, dead)?;
        let mut table = pp.exit_table;
        table.push((BOTTOM, lp.entry));
        b.set(pp.exit, false, Move::Pop(PopTable::new(table, dead)));
        b.set(start, false, Move::Internal(pp.entry));
    }
    Ok(b.finish(start))
}
