//! Componentwise comparison of two compressed words of equal length.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::slp::{Alphabet, Nat, Slp, Sym};

/// Positions visited before a comparison gives up.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CompareError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: Nat, right: Nat },
    #[error("symbol {0:?} is outside the relation's alphabet")]
    UnknownSymbol(char),
    #[error("not a partial order: {0}")]
    NotAnOrder(String),
    #[error("bad relation literal {0:?}")]
    BadLiteral(String),
}

/// Outcome of a bounded universal check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The least index where the check fails.
    Fails(Nat),
    BudgetExceeded,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("yes"),
            Verdict::Fails(n) => write!(f, "no (witness n={n})"),
            Verdict::BudgetExceeded => f.write_str("budget exceeded"),
        }
    }
}

/// A reflexive binary relation on a finite alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    alphabet: Alphabet,
    pairs: BTreeSet<(char, char)>,
}

impl Relation {
    /// Reflexive closure of `pairs` on `alphabet`.
    pub fn new(
        alphabet: Alphabet,
        pairs: impl IntoIterator<Item = (char, char)>,
    ) -> Result<Self, CompareError> {
        let mut set: BTreeSet<(char, char)> = alphabet.iter().map(|c| (c, c)).collect();
        for (x, y) in pairs {
            for c in [x, y] {
                if !alphabet.contains(c) {
                    return Err(CompareError::UnknownSymbol(c));
                }
            }
            set.insert((x, y));
        }
        Ok(Relation {
            alphabet,
            pairs: set,
        })
    }

    pub fn equality(alphabet: Alphabet) -> Self {
        Relation::new(alphabet, []).expect("reflexive")
    }

    /// `0 ≤ 1` on `{0, 1}`.
    pub fn bit_order() -> Self {
        Relation::new(Alphabet::binary(), [('0', '1')]).expect("valid")
    }

    /// Compatibility of partial words over `{a, b, ?}`.
    pub fn wildcard() -> Self {
        let ab = ['a', 'b', '?'];
        let pairs = ab.iter().flat_map(|&c| [('?', c), (c, '?')]);
        Relation::new(Alphabet::new(ab), pairs).expect("valid")
    }

    /// Parses `x<=y,u<=v` over the symbols mentioned (and `0`, `1`), or
    /// `wildcard`.
    pub fn parse(text: &str) -> Result<Self, CompareError> {
        let text = text.trim();
        if text == "wildcard" {
            return Ok(Relation::wildcard());
        }
        let mut pairs = Vec::new();
        let mut letters = BTreeSet::from(['0', '1']);
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (x, y) = item
                .split_once("<=")
                .ok_or_else(|| CompareError::BadLiteral(item.into()))?;
            let (x, y) = (single(x.trim()), single(y.trim()));
            let (Some(x), Some(y)) = (x, y) else {
                return Err(CompareError::BadLiteral(item.into()));
            };
            letters.extend([x, y]);
            pairs.push((x, y));
        }
        Relation::new(Alphabet::new(letters), pairs)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn pairs(&self) -> &BTreeSet<(char, char)> {
        &self.pairs
    }

    pub fn relates(&self, x: char, y: char) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }
}

fn single(s: &str) -> Option<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

/// A relation checked to be a partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOrderSpec(Relation);

impl PartialOrderSpec {
    pub fn new(
        alphabet: Alphabet,
        pairs: impl IntoIterator<Item = (char, char)>,
    ) -> Result<Self, CompareError> {
        PartialOrderSpec::try_from(Relation::new(alphabet, pairs)?)
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }
}

impl TryFrom<Relation> for PartialOrderSpec {
    type Error = CompareError;

    fn try_from(r: Relation) -> Result<Self, CompareError> {
        for &(x, y) in &r.pairs {
            if x != y && r.relates(y, x) {
                return Err(CompareError::NotAnOrder(format!(
                    "{x} and {y} relate both ways"
                )));
            }
            for z in r.alphabet.iter() {
                if r.relates(y, z) && !r.relates(x, z) {
                    return Err(CompareError::NotAnOrder(format!(
                        "{x}<={y}<={z} but not {x}<={z}"
                    )));
                }
            }
        }
        Ok(PartialOrderSpec(r))
    }
}

impl AsRef<Relation> for PartialOrderSpec {
    fn as_ref(&self) -> &Relation {
        &self.0
    }
}

impl AsRef<Relation> for Relation {
    fn as_ref(&self) -> &Relation {
        self
    }
}

enum Item {
    Sym(Sym),
    // Both sides were aligned on these nonterminals up to here.
    Close(usize, usize),
}

/// Whether `rel(P1[i], P2[i])` holds at every position.
///
/// Both words are expanded left to right. Nonterminals of equal length
/// that start at the same position on both sides are compared once and
/// remembered; visiting more than `budget` terminal positions aborts.
pub fn comp_slp<R: AsRef<Relation>>(
    p1: &Slp,
    p2: &Slp,
    rel: &R,
    budget: u64,
) -> Result<Verdict, CompareError> {
    let rel = rel.as_ref();
    if p1.length() != p2.length() {
        return Err(CompareError::LengthMismatch {
            left: p1.length().clone(),
            right: p2.length().clone(),
        });
    }
    for p in [p1, p2] {
        if let Some(c) = p.alphabet().iter().find(|c| !rel.alphabet.contains(*c)) {
            return Err(CompareError::UnknownSymbol(c));
        }
    }
    if p1.is_empty() {
        return Ok(Verdict::Holds);
    }
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let mut left: Vec<Sym> = vec![Sym::N(p1.axiom())];
    // The right stack carries the close markers.
    let mut right: Vec<Item> = vec![Item::Sym(Sym::N(p2.axiom()))];
    let mut pos = Nat::zero();
    let mut visited = 0u64;
    loop {
        let y = loop {
            match right.pop() {
                None => return Ok(Verdict::Holds),
                Some(Item::Close(a, b)) => {
                    done.insert((a, b));
                }
                Some(Item::Sym(s)) => break s,
            }
        };
        let x = left.pop().expect("equal lengths");
        match (x, y) {
            (Sym::T(c), Sym::T(d)) => {
                if !rel.relates(c, d) {
                    return Ok(Verdict::Fails(pos));
                }
                visited += 1;
                if visited > budget {
                    return Ok(Verdict::BudgetExceeded);
                }
                pos += 1u32;
            }
            (Sym::N(a), Sym::N(b)) if p1.rule_len(a) == p2.rule_len(b) => {
                if done.contains(&(a, b)) {
                    pos += p1.rule_len(a);
                } else {
                    right.push(Item::Close(a, b));
                    push_rhs(p1, a, &mut left, |s| s);
                    push_rhs(p2, b, &mut right, Item::Sym);
                }
            }
            (Sym::N(a), Sym::N(b)) if p1.rule_len(a) < p2.rule_len(b) => {
                left.push(x);
                push_rhs(p2, b, &mut right, Item::Sym);
            }
            (Sym::N(a), _) => {
                right.push(Item::Sym(y));
                push_rhs(p1, a, &mut left, |s| s);
            }
            (Sym::T(_), Sym::N(b)) => {
                left.push(x);
                push_rhs(p2, b, &mut right, Item::Sym);
            }
        }
    }
}

fn push_rhs<T>(p: &Slp, i: usize, stack: &mut Vec<T>, wrap: impl Fn(Sym) -> T) {
    for s in p.rule(i).iter().rev() {
        if !p.sym_len(*s).is_zero() {
            stack.push(wrap(*s));
        }
    }
}

/// Compatibility of two partial words over `{a, b, ?}`.
pub fn partial_word_match(p1: &Slp, p2: &Slp, budget: u64) -> Result<Verdict, CompareError> {
    comp_slp(p1, p2, &Relation::wildcard(), budget)
}

/// Least index where the naive positionwise check fails, on explicit words.
pub fn naive_compare(w1: &str, w2: &str, rel: &Relation) -> Option<usize> {
    w1.chars()
        .zip(w2.chars())
        .position(|(c, d)| !rel.relates(c, d))
}

#[cfg(test)]
mod tests;
