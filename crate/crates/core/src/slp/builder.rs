use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::{Alphabet, Nat, Slp, Sym};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Front,
    Back,
}

/// Append-only production store. Every rule only mentions rules with a
/// smaller index, so the store is topologically sorted at all times.
#[derive(Clone, Debug)]
pub struct SlpBuilder {
    alphabet: Alphabet,
    rules: Vec<Vec<Sym>>,
    lens: Vec<Nat>,
    names: Vec<Option<String>>,
    trims: HashMap<(usize, End), Option<Sym>>,
}

impl SlpBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        SlpBuilder {
            alphabet,
            rules: Vec::new(),
            lens: Vec::new(),
            names: Vec::new(),
            trims: HashMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub(crate) fn into_parts(self) -> (Vec<Vec<Sym>>, Vec<Nat>, Vec<Option<String>>) {
        (self.rules, self.lens, self.names)
    }

    pub fn len(&self, s: Sym) -> Nat {
        match s {
            Sym::T(_) => Nat::one(),
            Sym::N(i) => self.lens[i].clone(),
        }
    }

    fn is_empty_sym(&self, s: Sym) -> bool {
        match s {
            Sym::T(_) => false,
            Sym::N(i) => self.lens[i].is_zero(),
        }
    }

    pub fn rule(&self, i: usize) -> &[Sym] {
        &self.rules[i]
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    pub fn push(&mut self, rhs: Vec<Sym>) -> usize {
        self.push_named(None, rhs)
    }

    pub fn push_named(&mut self, name: Option<String>, rhs: Vec<Sym>) -> usize {
        let mut len = Nat::zero();
        for s in &rhs {
            match *s {
                Sym::T(c) => {
                    debug_assert!(self.alphabet.contains(c), "terminal {c:?} outside alphabet");
                    len += 1u32;
                }
                Sym::N(j) => {
                    debug_assert!(j < self.rules.len(), "forward reference");
                    len += &self.lens[j];
                }
            }
        }
        self.rules.push(rhs);
        self.lens.push(len);
        self.names.push(name);
        self.rules.len() - 1
    }

    /// Collapses a fragment into at most one symbol.
    pub fn seq(&mut self, frag: Vec<Sym>) -> Option<Sym> {
        match frag.len() {
            0 => None,
            1 => Some(frag[0]),
            _ => Some(Sym::N(self.push(frag))),
        }
    }

    /// Like [`seq`](Self::seq) but always yields a nonterminal.
    pub fn rule_of(&mut self, frag: Vec<Sym>) -> usize {
        match frag.as_slice() {
            [Sym::N(i)] => *i,
            _ => self.push(frag),
        }
    }

    /// Copies every production of `p`; returns the index offset to apply to
    /// `p`'s nonterminal indices.
    pub fn import(&mut self, p: &Slp) -> usize {
        let offset = self.rules.len();
        for i in 0..p.rules.len() {
            let rhs = p.rules[i]
                .iter()
                .map(|s| match *s {
                    Sym::N(j) => Sym::N(j + offset),
                    t => t,
                })
                .collect();
            self.rules.push(rhs);
            self.lens.push(p.lens[i].clone());
            self.names.push(Some(p.names[i].clone()));
        }
        offset
    }

    /// Imports `p` and returns the symbol standing for its axiom.
    pub fn import_axiom(&mut self, p: &Slp) -> Sym {
        let off = self.import(p);
        Sym::N(p.axiom + off)
    }

    pub fn first(&self, s: Sym) -> Option<char> {
        self.edge_symbol(s, End::Front)
    }

    pub fn last(&self, s: Sym) -> Option<char> {
        self.edge_symbol(s, End::Back)
    }

    fn edge_symbol(&self, mut s: Sym, end: End) -> Option<char> {
        loop {
            match s {
                Sym::T(c) => return Some(c),
                Sym::N(i) => {
                    if self.lens[i].is_zero() {
                        return None;
                    }
                    let rhs = &self.rules[i];
                    let next = match end {
                        End::Front => rhs.iter().find(|c| !self.is_empty_sym(**c)),
                        End::Back => rhs.iter().rev().find(|c| !self.is_empty_sym(**c)),
                    };
                    s = *next.expect("nonempty rule has a nonempty child");
                }
            }
        }
    }

    /// Symbol (or nothing) generating `s` with one symbol removed at `end`.
    /// Results are memoized per nonterminal.
    pub fn trim(&mut self, s: Sym, end: End) -> Option<Sym> {
        let mut path: Vec<(usize, Vec<Sym>)> = Vec::new();
        let mut cur = s;
        let mut acc: Option<Sym> = loop {
            match cur {
                Sym::T(_) => break None,
                Sym::N(i) => {
                    if let Some(r) = self.trims.get(&(i, end)) {
                        break *r;
                    }
                    let rhs = &self.rules[i];
                    let j = match end {
                        End::Front => rhs.iter().position(|c| !self.is_empty_sym(*c)),
                        End::Back => rhs.iter().rposition(|c| !self.is_empty_sym(*c)),
                    }
                    .expect("trim of an empty word");
                    let rest = match end {
                        End::Front => rhs[j + 1..].to_vec(),
                        End::Back => rhs[..j].to_vec(),
                    };
                    cur = rhs[j];
                    path.push((i, rest));
                }
            }
        };
        for (i, rest) in path.into_iter().rev() {
            let frag = match end {
                End::Front => acc.into_iter().chain(rest).collect(),
                End::Back => {
                    let mut f = rest;
                    f.extend(acc);
                    f
                }
            };
            acc = self.seq(frag);
            self.trims.insert((i, end), acc);
        }
        acc
    }

    /// Fragment generating the first `k` symbols of `s`.
    pub fn prefix(&mut self, s: Sym, k: &Nat) -> Vec<Sym> {
        self.cut(s, k, End::Front)
    }

    /// Fragment generating the last `k` symbols of `s`.
    pub fn suffix(&mut self, s: Sym, k: &Nat) -> Vec<Sym> {
        self.cut(s, k, End::Back)
    }

    // Keeps `k` symbols at `end` of `s`.
    fn cut(&mut self, s: Sym, k: &Nat, end: End) -> Vec<Sym> {
        let mut levels: Vec<Vec<Sym>> = Vec::new();
        let mut k = k.clone();
        let mut cur = s;
        let inner: Vec<Sym> = 'outer: loop {
            if k.is_zero() {
                break Vec::new();
            }
            let len = self.len(cur);
            if k >= len {
                break vec![cur];
            }
            let Sym::N(i) = cur else {
                unreachable!("terminal has length one")
            };
            let rhs = self.rules[i].clone();
            let mut kept = Vec::new();
            let children: Box<dyn Iterator<Item = Sym>> = match end {
                End::Front => Box::new(rhs.into_iter()),
                End::Back => Box::new(rhs.into_iter().rev()),
            };
            for c in children {
                let l = self.len(c);
                if k >= l {
                    k -= &l;
                    if !l.is_zero() {
                        kept.push(c);
                    }
                    if k.is_zero() {
                        break 'outer kept;
                    }
                } else {
                    levels.push(kept);
                    cur = c;
                    continue 'outer;
                }
            }
            unreachable!("rule shorter than its length");
        };
        let oriented = |mut v: Vec<Sym>| {
            if end == End::Back {
                v.reverse();
            }
            v
        };
        let mut frag = oriented(inner);
        for kept in levels.into_iter().rev() {
            let inner_sym = self.seq(frag);
            let mut kept = oriented(kept);
            frag = match end {
                End::Front => {
                    kept.extend(inner_sym);
                    kept
                }
                End::Back => inner_sym.into_iter().chain(kept).collect(),
            };
        }
        frag
    }

    /// Fragment generating positions `[a, b)` of `s`.
    pub fn slice(&mut self, s: Sym, a: &Nat, b: &Nat) -> Vec<Sym> {
        debug_assert!(a <= b && *b <= self.len(s));
        if a == b {
            return Vec::new();
        }
        let mut cur = s;
        let mut a = a.clone();
        let mut b = b.clone();
        loop {
            if a.is_zero() {
                return self.prefix(cur, &b);
            }
            let len = self.len(cur);
            if b == len {
                return self.suffix(cur, &(&len - &a));
            }
            let Sym::N(i) = cur else {
                unreachable!("proper slice of a terminal")
            };
            let rhs = self.rules[i].clone();
            let mut off = Nat::zero();
            let mut first: Option<usize> = None;
            let mut out = Vec::new();
            let mut descended = false;
            for (idx, c) in rhs.iter().enumerate() {
                let l = self.len(*c);
                let end = &off + &l;
                if first.is_none() {
                    if a < end {
                        if b <= end {
                            // entirely inside this child
                            a -= &off;
                            b -= &off;
                            cur = *c;
                            descended = true;
                            break;
                        }
                        first = Some(idx);
                        out = self.suffix(*c, &(&end - &a));
                    }
                } else if b <= off {
                    break;
                } else if b >= end {
                    if !l.is_zero() {
                        out.push(*c);
                    }
                } else {
                    let tail = self.prefix(*c, &(&b - &off));
                    out.extend(tail);
                    break;
                }
                off = end;
            }
            if !descended {
                return out;
            }
        }
    }

    /// Fragment generating `s` repeated `k` times, via repeated doubling.
    pub fn repeat(&mut self, s: Sym, k: &Nat) -> Vec<Sym> {
        let mut out = Vec::new();
        if k.is_zero() || self.is_empty_sym(s) {
            return out;
        }
        let bits = k.bits();
        let mut pow = s;
        for bit in 0..bits {
            if k.bit(bit) {
                out.push(pow);
            }
            if bit + 1 < bits {
                pow = Sym::N(self.push(vec![pow, pow]));
            }
        }
        out
    }

    /// Freezes the store into an [`Slp`] whose axiom generates `root`,
    /// dropping unreachable productions.
    pub fn finish(mut self, root: Vec<Sym>) -> Slp {
        let axiom = self.rule_of(root);
        let mut keep = vec![false; self.rules.len()];
        keep[axiom] = true;
        for i in (0..=axiom).rev() {
            if keep[i] {
                for s in &self.rules[i] {
                    if let Sym::N(j) = *s {
                        keep[j] = true;
                    }
                }
            }
        }
        let mut remap = vec![usize::MAX; self.rules.len()];
        let mut rules = Vec::new();
        let mut lens = Vec::new();
        let mut wanted = Vec::new();
        for i in 0..self.rules.len() {
            if !keep[i] {
                continue;
            }
            remap[i] = rules.len();
            let rhs: Vec<Sym> = self.rules[i]
                .iter()
                .map(|s| match *s {
                    Sym::N(j) => Sym::N(remap[j]),
                    t => t,
                })
                .collect();
            rules.push(rhs);
            lens.push(std::mem::take(&mut self.lens[i]));
            wanted.push(self.names[i].take());
        }
        let names = assign_names(&self.alphabet, wanted);
        Slp {
            alphabet: self.alphabet,
            names,
            rules,
            lens,
            axiom: remap[axiom],
        }
    }
}

pub(crate) fn valid_name(alphabet: &Alphabet, name: &str) -> bool {
    let mut chars = name.chars();
    let single = matches!((chars.next(), chars.next()), (Some(c), None) if alphabet.contains(c));
    !name.is_empty()
        && !single
        && name != "eps"
        && name != "---"
        && name != "->"
        && !name.contains('#')
        && !name.chars().any(char::is_whitespace)
}

/// Keeps requested names when they are usable and unique, generating fresh
/// `N<k>` names for everything else.
pub(crate) fn assign_names(alphabet: &Alphabet, wanted: Vec<Option<String>>) -> Vec<String> {
    let mut used: BTreeSet<String> = BTreeSet::new();
    let mut out: Vec<Option<String>> = wanted
        .into_iter()
        .map(|w| match w {
            Some(n) if valid_name(alphabet, &n) && !used.contains(&n) => {
                used.insert(n.clone());
                Some(n)
            }
            _ => None,
        })
        .collect();
    let mut counter = 0usize;
    for slot in out.iter_mut().filter(|s| s.is_none()) {
        loop {
            let candidate = format!("N{counter}");
            counter += 1;
            if !used.contains(&candidate) {
                used.insert(candidate.clone());
                *slot = Some(candidate);
                break;
            }
        }
    }
    out.into_iter().map(Option::unwrap).collect()
}
