//! Straight-line programs: acyclic grammars that generate exactly one word.
//!
//! An [`Slp`] is immutable once built. Productions are stored in topological
//! order (every right-hand side only mentions earlier productions), together
//! with the length of the word each nonterminal generates. Lengths are
//! arbitrary-precision because a grammar with `m` productions can describe a
//! word of length `2^m`.
//!
//! Right-hand sides may have any arity, including zero. [`Slp::to_cnf`] is a
//! separate normalization pass and [`Slp::size`] is measured on its output.

mod builder;
mod fingerprint;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use builder::{End, SlpBuilder};
pub use fingerprint::{is_prime_u64, EqualityOptions};
pub use text::{parse_draft, parse_slp};

/// Arbitrary-precision natural number used for lengths and positions.
pub type Nat = num_bigint::BigUint;

/// A finite, ordered set of single-character terminal symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(BTreeSet<char>);

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(chars: I) -> Self {
        Alphabet(chars.into_iter().collect())
    }

    pub fn binary() -> Self {
        Alphabet::new(['0', '1'])
    }

    pub fn contains(&self, c: char) -> bool {
        self.0.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = char> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &Alphabet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet(self.0.union(&other.0).copied().collect())
    }

    /// Position of `c` in the sorted alphabet.
    pub fn index_of(&self, c: char) -> Option<usize> {
        self.0.iter().position(|&x| x == c)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A right-hand-side symbol of a validated program: a terminal, or the
/// index of another production.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    T(char),
    N(usize),
}

/// A right-hand-side token of an unvalidated program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Terminal(char),
    Nonterminal(String),
}

/// A grammar as written down, before any invariant has been checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlpDraft {
    pub alphabet: Alphabet,
    pub productions: Vec<(String, Vec<Token>)>,
    pub axiom: String,
}

/// First violated well-formedness condition of an [`SlpDraft`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Diagnostic {
    #[error("duplicate production for {0}")]
    DuplicateProduction(String),
    #[error("nonterminal name {0:?} clashes with a terminal or reserved word")]
    NameClash(String),
    #[error("terminal {0:?} is not in the alphabet")]
    UnknownTerminal(char),
    #[error("missing production for {0}")]
    MissingProduction(String),
    #[error("cycle through {0}")]
    Cycle(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SlpError {
    #[error("invalid program: {0}")]
    Invalid(#[from] Diagnostic),
    #[error("word of length {length} exceeds the expansion cap")]
    CapExceeded { length: Nat },
    #[error("index {index} out of range for a word of length {length}")]
    IndexOutOfRange { index: Nat, length: Nat },
    #[error("operation needs a nonempty word")]
    EmptyWord,
    #[error("alphabets differ: {0} vs {1}")]
    AlphabetMismatch(Alphabet, Alphabet),
    #[error("bad range [{a}, {b}) for a word of length {length}")]
    BadRange { a: Nat, b: Nat, length: Nat },
    #[error("exponent {num}/{den} does not give an integral length")]
    NonIntegralResult { num: Nat, den: Nat },
    #[error("power of an empty word")]
    EmptyBase,
    #[error("shift {shift} is not below the word length {length}")]
    BadShift { shift: Nat, length: Nat },
    #[error("expected {expected:?} at the {end:?} end, found {found:?}")]
    SymbolMismatch {
        end: End,
        expected: char,
        found: char,
    },
    #[error("substitution has no image for {0:?}")]
    UnmappedSymbol(char),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, SlpError>;

/// Checks every invariant of a draft; reports the first violation.
pub fn validate(draft: &SlpDraft) -> std::result::Result<(), Diagnostic> {
    topo_order(draft).map(|_| ())
}

// Returns the production indices in an order where children come first.
fn topo_order(draft: &SlpDraft) -> std::result::Result<Vec<usize>, Diagnostic> {
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, (name, _)) in draft.productions.iter().enumerate() {
        if !builder::valid_name(&draft.alphabet, name) {
            return Err(Diagnostic::NameClash(name.clone()));
        }
        if index.insert(name.as_str(), i).is_some() {
            return Err(Diagnostic::DuplicateProduction(name.clone()));
        }
    }
    for (_, rhs) in &draft.productions {
        for tok in rhs {
            match tok {
                Token::Terminal(c) if !draft.alphabet.contains(*c) => {
                    return Err(Diagnostic::UnknownTerminal(*c))
                }
                Token::Nonterminal(n) if !index.contains_key(n.as_str()) => {
                    return Err(Diagnostic::MissingProduction(n.clone()))
                }
                _ => {}
            }
        }
    }
    if !index.contains_key(draft.axiom.as_str()) {
        return Err(Diagnostic::MissingProduction(draft.axiom.clone()));
    }

    // Iterative three-colour depth-first search.
    let n = draft.productions.len();
    let children: Vec<Vec<usize>> = draft
        .productions
        .iter()
        .map(|(_, rhs)| {
            rhs.iter()
                .filter_map(|t| match t {
                    Token::Nonterminal(name) => Some(index[name.as_str()]),
                    Token::Terminal(_) => None,
                })
                .collect()
        })
        .collect();
    let mut colour = vec![0u8; n];
    let mut order = Vec::with_capacity(n);
    // Last line first, so that the writer's output parses back to the same indices.
    for start in (0..n).rev() {
        if colour[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        colour[start] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < children[v].len() {
                let w = children[v][*next];
                *next += 1;
                match colour[w] {
                    0 => {
                        colour[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return Err(Diagnostic::Cycle(draft.productions[w].0.clone())),
                    _ => {}
                }
            } else {
                colour[v] = 2;
                order.push(v);
                stack.pop();
            }
        }
    }
    Ok(order)
}

/// A validated straight-line program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slp {
    alphabet: Alphabet,
    names: Vec<String>,
    rules: Vec<Vec<Sym>>,
    lens: Vec<Nat>,
    axiom: usize,
}

impl TryFrom<SlpDraft> for Slp {
    type Error = SlpError;

    fn try_from(draft: SlpDraft) -> Result<Slp> {
        Slp::from_draft(&draft)
    }
}

impl Slp {
    pub fn from_draft(draft: &SlpDraft) -> Result<Slp> {
        let order = topo_order(draft)?;
        let mut pos = vec![0usize; order.len()];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let index: BTreeMap<&str, usize> = draft
            .productions
            .iter()
            .enumerate()
            .map(|(i, (n, _))| (n.as_str(), i))
            .collect();
        let mut b = SlpBuilder::new(draft.alphabet.clone());
        for &i in &order {
            let (name, rhs) = &draft.productions[i];
            let rhs = rhs
                .iter()
                .map(|t| match t {
                    Token::Terminal(c) => Sym::T(*c),
                    Token::Nonterminal(n) => Sym::N(pos[index[n.as_str()]]),
                })
                .collect();
            b.push_named(Some(name.clone()), rhs);
        }
        Ok(b.finish_keep_all(pos[index[draft.axiom.as_str()]]))
    }

    /// Single production generating `word` literally.
    pub fn literal(alphabet: &Alphabet, word: &str) -> Result<Slp> {
        let mut b = SlpBuilder::new(alphabet.clone());
        let mut rhs = Vec::new();
        for c in word.chars() {
            if !alphabet.contains(c) {
                return Err(Diagnostic::UnknownTerminal(c).into());
            }
            rhs.push(Sym::T(c));
        }
        let s = b.push(rhs);
        Ok(b.finish(vec![Sym::N(s)]))
    }

    /// The program generating the empty word.
    pub fn empty(alphabet: &Alphabet) -> Slp {
        let mut b = SlpBuilder::new(alphabet.clone());
        let s = b.push(Vec::new());
        b.finish(vec![Sym::N(s)])
    }

    /// `c` repeated `count` times, in `O(log count)` productions.
    pub fn repeat_symbol(alphabet: &Alphabet, c: char, count: &Nat) -> Result<Slp> {
        if !alphabet.contains(c) {
            return Err(Diagnostic::UnknownTerminal(c).into());
        }
        let mut b = SlpBuilder::new(alphabet.clone());
        let frag = b.repeat(Sym::T(c), count);
        Ok(b.finish(frag))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn axiom(&self) -> usize {
        self.axiom
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    pub fn rule(&self, i: usize) -> &[Sym] {
        &self.rules[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn rule_len(&self, i: usize) -> &Nat {
        &self.lens[i]
    }

    pub fn sym_len(&self, s: Sym) -> Nat {
        match s {
            Sym::T(_) => Nat::one(),
            Sym::N(i) => self.lens[i].clone(),
        }
    }

    /// Length of the generated word, computed without expansion.
    pub fn length(&self) -> &Nat {
        &self.lens[self.axiom]
    }

    pub fn is_empty(&self) -> bool {
        self.length().is_zero()
    }

    /// Same program over a larger alphabet.
    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Result<Slp> {
        if !self.alphabet.is_subset(alphabet) {
            return Err(SlpError::AlphabetMismatch(
                self.alphabet.clone(),
                alphabet.clone(),
            ));
        }
        let mut out = self.clone();
        out.alphabet = alphabet.clone();
        out.names = builder::assign_names(alphabet, self.names.iter().cloned().map(Some).collect());
        Ok(out)
    }

    /// Iterator over the generated word.
    pub fn symbols(&self) -> Symbols<'_> {
        Symbols {
            slp: self,
            stack: vec![(self.axiom, 0)],
        }
    }

    /// Iterator over the generated word starting at position `n`.
    pub fn symbols_from(&self, n: &Nat) -> Symbols<'_> {
        let mut stack = Vec::new();
        if n < self.length() {
            let mut k = n.clone();
            let mut cur = self.axiom;
            'descend: loop {
                for (idx, c) in self.rules[cur].iter().enumerate() {
                    let l = self.sym_len(*c);
                    if k < l {
                        match *c {
                            Sym::T(_) => {
                                stack.push((cur, idx));
                                break 'descend;
                            }
                            Sym::N(j) => {
                                stack.push((cur, idx + 1));
                                cur = j;
                                continue 'descend;
                            }
                        }
                    }
                    k -= l;
                }
                unreachable!("position inside the rule");
            }
        }
        Symbols { slp: self, stack }
    }

    /// The generated word, provided its length is at most `cap`.
    pub fn expand(&self, cap: usize) -> Result<String> {
        match self.length().to_usize() {
            Some(l) if l <= cap => Ok(self.symbols().collect()),
            _ => Err(SlpError::CapExceeded {
                length: self.length().clone(),
            }),
        }
    }

    /// Symbol at position `n` (0-indexed) by length-guided descent.
    pub fn query(&self, n: &Nat) -> Result<char> {
        if n >= self.length() {
            return Err(SlpError::IndexOutOfRange {
                index: n.clone(),
                length: self.length().clone(),
            });
        }
        Ok(self.symbols_from(n).next().expect("in range"))
    }

    pub fn first_symbol(&self) -> Option<char> {
        self.symbols().next()
    }

    pub fn last_symbol(&self) -> Option<char> {
        if self.is_empty() {
            None
        } else {
            let last = self.length() - 1u32;
            self.query(&last).ok()
        }
    }

    /// Whether `c` occurs in the generated word.
    pub fn contains_symbol(&self, c: char) -> bool {
        let mut has = vec![false; self.rules.len()];
        for i in 0..self.rules.len() {
            has[i] = self.rules[i].iter().any(|s| match *s {
                Sym::T(d) => d == c,
                Sym::N(j) => has[j],
            });
        }
        has.get(self.axiom).copied().unwrap_or(false)
    }

    pub fn is_cnf(&self) -> bool {
        self.rules
            .iter()
            .all(|rhs| matches!(rhs.as_slice(), [Sym::T(_)] | [Sym::N(_), Sym::N(_)]))
    }

    /// Equivalent program in Chomsky normal form.
    ///
    /// Empty nonterminals are deleted, chains `N -> M` are resolved, each
    /// terminal inside a long right-hand side is replaced by a shared
    /// terminal production (reusing an existing `N -> c` when there is one),
    /// and long right-hand sides are binarized by a left fold.
    pub fn to_cnf(&self) -> Result<Slp> {
        if self.is_empty() {
            return Err(SlpError::EmptyWord);
        }
        let n = self.rules.len();
        let mut reduced: Vec<Vec<Sym>> = Vec::with_capacity(n);
        let mut resolved: Vec<usize> = Vec::with_capacity(n);
        for i in 0..n {
            let red: Vec<Sym> = self.rules[i]
                .iter()
                .filter(|s| !self.sym_len(**s).is_zero())
                .map(|s| match *s {
                    Sym::N(j) => Sym::N(resolved[j]),
                    t => t,
                })
                .collect();
            let target = match red.as_slice() {
                [Sym::N(j)] => *j,
                _ => i,
            };
            resolved.push(target);
            reduced.push(red);
        }
        let root = resolved[self.axiom];
        let mut needed = vec![false; n];
        needed[root] = true;
        for i in (0..=root).rev() {
            if needed[i] {
                for s in &reduced[i] {
                    if let Sym::N(j) = *s {
                        needed[j] = true;
                    }
                }
            }
        }
        let mut b = SlpBuilder::new(self.alphabet.clone());
        let mut out = vec![usize::MAX; n];
        let mut term_rule: BTreeMap<char, usize> = BTreeMap::new();
        for i in 0..n {
            if needed[i] {
                if let [Sym::T(c)] = reduced[i].as_slice() {
                    term_rule.entry(*c).or_insert(i);
                }
            }
        }
        let mut fresh_term: BTreeMap<char, usize> = BTreeMap::new();
        for i in 0..n {
            if !needed[i] {
                continue;
            }
            let name = Some(self.names[i].clone());
            let red = &reduced[i];
            if red.len() == 1 {
                if let Sym::T(c) = red[0] {
                    out[i] = b.push_named(name, vec![Sym::T(c)]);
                    continue;
                }
            }
            let mut items = Vec::with_capacity(red.len());
            for s in red {
                let item = match *s {
                    Sym::N(j) => out[j],
                    Sym::T(c) => match term_rule.get(&c) {
                        Some(&j) if out[j] != usize::MAX => out[j],
                        Some(_) | None => *fresh_term
                            .entry(c)
                            .or_insert_with(|| b.push(vec![Sym::T(c)])),
                    },
                };
                items.push(Sym::N(item));
            }
            let mut acc = items[0];
            for (k, s) in items.iter().enumerate().skip(1) {
                if k + 1 == items.len() {
                    out[i] = b.push_named(name.clone(), vec![acc, *s]);
                } else {
                    acc = Sym::N(b.push(vec![acc, *s]));
                }
            }
        }
        Ok(b.finish(vec![Sym::N(out[root])]))
    }

    /// Number of nonterminals of the Chomsky normal form; 0 for the empty word.
    pub fn size(&self) -> usize {
        match self.to_cnf() {
            Ok(cnf) => cnf.num_rules(),
            Err(_) => 0,
        }
    }

    fn same_alphabet(&self, other: &Slp) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(SlpError::AlphabetMismatch(
                self.alphabet.clone(),
                other.alphabet.clone(),
            ))
        }
    }

    pub fn concat(&self, other: &Slp) -> Result<Slp> {
        self.same_alphabet(other)?;
        let mut b = SlpBuilder::new(self.alphabet.clone());
        let x = b.import_axiom(self);
        let y = b.import_axiom(other);
        Ok(b.finish(vec![x, y]))
    }

    /// Concatenation of several programs over one alphabet.
    pub fn concat_all(alphabet: &Alphabet, parts: &[&Slp]) -> Result<Slp> {
        let mut b = SlpBuilder::new(alphabet.clone());
        let mut root = Vec::new();
        for p in parts {
            if p.alphabet != *alphabet {
                return Err(SlpError::AlphabetMismatch(
                    alphabet.clone(),
                    p.alphabet.clone(),
                ));
            }
            root.push(b.import_axiom(p));
        }
        Ok(b.finish(root))
    }

    /// Positions `[a, b)` of the generated word.
    pub fn slice(&self, a: &Nat, b: &Nat) -> Result<Slp> {
        if a > b || b > self.length() {
            return Err(SlpError::BadRange {
                a: a.clone(),
                b: b.clone(),
                length: self.length().clone(),
            });
        }
        let mut bl = SlpBuilder::new(self.alphabet.clone());
        let x = bl.import_axiom(self);
        let frag = bl.slice(x, a, b);
        Ok(bl.finish(frag))
    }

    /// `w^(num/den)` where `w^(k + n/|w|) = w^k · w[0..n)`.
    pub fn power(&self, num: &Nat, den: &Nat) -> Result<Slp> {
        let len = self.length();
        if len.is_zero() {
            return Err(SlpError::EmptyBase);
        }
        let total = num * len;
        if den.is_zero() || !total.is_multiple_of(den) {
            return Err(SlpError::NonIntegralResult {
                num: num.clone(),
                den: den.clone(),
            });
        }
        let total = total / den;
        let (k, r) = total.div_rem(len);
        let mut b = SlpBuilder::new(self.alphabet.clone());
        let x = b.import_axiom(self);
        let mut frag = b.repeat(x, &k);
        frag.extend(b.prefix(x, &r));
        Ok(b.finish(frag))
    }

    pub fn power_int(&self, k: &Nat) -> Result<Slp> {
        self.power(k, &Nat::one())
    }

    /// `w[s..|w|) · w[0..s)`.
    pub fn cyclic_shift(&self, s: &Nat) -> Result<Slp> {
        let len = self.length().clone();
        if *s >= len {
            return Err(SlpError::BadShift {
                shift: s.clone(),
                length: len,
            });
        }
        let mut b = SlpBuilder::new(self.alphabet.clone());
        let x = b.import_axiom(self);
        let mut frag = b.slice(x, s, &len);
        frag.extend(b.slice(x, &Nat::zero(), s));
        Ok(b.finish(frag))
    }

    /// Homomorphic image under `h`, a word for every terminal, over `target`.
    pub fn substitute(&self, h: &BTreeMap<char, String>, target: &Alphabet) -> Result<Slp> {
        let mut b = SlpBuilder::new(target.clone());
        let mut image: BTreeMap<char, Option<Sym>> = BTreeMap::new();
        for c in self.alphabet.iter() {
            let word = h.get(&c).ok_or(SlpError::UnmappedSymbol(c))?;
            let mut rhs = Vec::new();
            for d in word.chars() {
                if !target.contains(d) {
                    return Err(SlpError::AlphabetMismatch(
                        Alphabet::new(word.chars()),
                        target.clone(),
                    ));
                }
                rhs.push(Sym::T(d));
            }
            let sym = b.seq(rhs);
            image.insert(c, sym);
        }
        let offset = b.num_rules();
        for i in 0..self.rules.len() {
            let rhs = self.rules[i]
                .iter()
                .filter_map(|s| match *s {
                    Sym::N(j) => Some(Sym::N(j + offset)),
                    Sym::T(c) => image[&c],
                })
                .collect();
            b.push_named(Some(self.names[i].clone()), rhs);
        }
        Ok(b.finish(vec![Sym::N(self.axiom + offset)]))
    }

    /// Removes one occurrence of `t` at the given end.
    pub fn trim(&self, end: End, t: char) -> Result<Slp> {
        let found = match end {
            End::Front => self.first_symbol(),
            End::Back => self.last_symbol(),
        }
        .ok_or(SlpError::EmptyWord)?;
        if found != t {
            return Err(SlpError::SymbolMismatch {
                end,
                expected: t,
                found,
            });
        }
        let mut b = SlpBuilder::new(self.alphabet.clone());
        let x = b.import_axiom(self);
        let root = b.trim(x, end);
        Ok(b.finish(root.into_iter().collect()))
    }

    /// Word equality: exact below the threshold, fingerprints above it.
    ///
    /// A `false` answer is always correct. A `true` answer on long words is
    /// wrong only if every one of the `k` random primes divides the
    /// difference of the two words read as base-`|Σ|` numbers; for words of
    /// length `L` this happens with probability at most `(L / 2^60)^k`.
    pub fn equal(&self, other: &Slp, opts: &EqualityOptions) -> Result<bool> {
        self.same_alphabet(other)?;
        if self.length() != other.length() {
            return Ok(false);
        }
        if self.length() <= &Nat::from(opts.exact_threshold) {
            return Ok(self.symbols().eq(other.symbols()));
        }
        Ok(fingerprint::fingerprints_agree(self, other, opts))
    }
}

/// Streaming iterator over the symbols of an [`Slp`].
#[derive(Clone, Debug)]
pub struct Symbols<'a> {
    slp: &'a Slp,
    stack: Vec<(usize, usize)>,
}

impl Iterator for Symbols<'_> {
    type Item = char;

    fn next(&mut self) -> Option<char> {
        loop {
            let (r, pos) = self.stack.last_mut()?;
            let rhs = &self.slp.rules[*r];
            if *pos >= rhs.len() {
                self.stack.pop();
                continue;
            }
            let s = rhs[*pos];
            *pos += 1;
            match s {
                Sym::T(c) => return Some(c),
                Sym::N(j) => {
                    if !self.slp.lens[j].is_zero() {
                        self.stack.push((j, 0));
                    }
                }
            }
        }
    }
}

impl SlpBuilder {
    // Used by `from_draft`: keeps unreachable productions so that a parsed
    // file round-trips.
    fn finish_keep_all(self, axiom: usize) -> Slp {
        let alphabet = self.alphabet().clone();
        let n = self.num_rules();
        let mut rules = Vec::with_capacity(n);
        let mut names = Vec::with_capacity(n);
        let mut lens = Vec::with_capacity(n);
        let (r, l, nm) = self.into_parts();
        for ((rhs, len), name) in r.into_iter().zip(l).zip(nm) {
            rules.push(rhs);
            lens.push(len);
            names.push(name);
        }
        Slp {
            names: builder::assign_names(&alphabet, names),
            alphabet,
            rules,
            lens,
            axiom,
        }
    }
}

impl fmt::Display for Slp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_slp(self, f)
    }
}

#[cfg(test)]
mod tests;
