//! Unary pushdown automata.
//!
//! [`RawUnpda`] is the general form: a transition set over the input `{a, ε}`
//! where each transition inspects the top symbol and replaces it by a word
//! of length at most two. [`NormalUdpda`] is the restricted deterministic
//! form the translation works on: every state is internal, push-one or
//! pop-one, reads either always or never, and has a total move.
//!
//! Stack symbol `0` is always the bottom symbol, written `_` in files.

mod sim;
mod text;

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

pub use sim::{
    membership_sim, run_prefix, transcript_from, transcript_prefix, Ending, PrefixRun, Simulator,
    Step, TranscriptRun,
};
pub use text::{parse_unpda, write_unpda};

/// Index of the bottom-of-stack symbol.
pub const BOTTOM: usize = 0;
/// Spelling of the bottom symbol in the text format.
pub const BOTTOM_NAME: &str = "_";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UdpdaError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("unknown stack symbol {0:?}")]
    UnknownStackSymbol(String),
    #[error("transition {0} violates the bottom-of-stack discipline")]
    BottomDiscipline(String),
    #[error("transition {0} pushes more than two symbols")]
    PushTooLong(String),
    #[error("not deterministic: {0}")]
    NotDeterministic(Violation),
    #[error("more than {fuel} moves without reading after {consumed} letters")]
    FuelExhausted { fuel: u64, consumed: u64 },
}

/// Which stack tops a raw transition applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Top {
    Sym(usize),
    /// Every symbol without an explicit transition from the same state.
    Any,
}

/// A symbol written by a raw transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PushSym {
    Sym(usize),
    /// The symbol that was matched by [`Top::Any`].
    Matched,
}

/// `(from, reads, top) -> (to, push)` with `push` written top-first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    pub reads: bool,
    pub top: Top,
    pub to: usize,
    pub push: Vec<PushSym>,
}

/// Two moves available at one configuration.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("state {state} offers two moves on top {top}")]
pub struct Violation {
    pub state: String,
    pub top: String,
}

/// A unary pushdown automaton as written down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawUnpda {
    states: Vec<String>,
    stack: Vec<String>,
    initial: usize,
    finals: Vec<bool>,
    transitions: Vec<Transition>,
}

impl RawUnpda {
    /// Builds an automaton, checking symbol ranges, the bottom discipline
    /// and the push-length bound. Identical transitions are merged.
    pub fn new(
        states: Vec<String>,
        stack: Vec<String>,
        initial: usize,
        finals: Vec<bool>,
        transitions: Vec<Transition>,
    ) -> Result<Self, UdpdaError> {
        let n = states.len();
        let g = stack.len();
        if initial >= n || finals.len() != n {
            return Err(UdpdaError::UnknownState(format!("#{initial}")));
        }
        if g == 0 {
            return Err(UdpdaError::UnknownStackSymbol(BOTTOM_NAME.into()));
        }
        let mut out = RawUnpda {
            states,
            stack,
            initial,
            finals,
            transitions: Vec::new(),
        };
        let mut seen = HashSet::new();
        for t in transitions {
            out.check_transition(&t)?;
            if seen.insert(t.clone()) {
                out.transitions.push(t);
            }
        }
        Ok(out)
    }

    fn check_transition(&self, t: &Transition) -> Result<(), UdpdaError> {
        let n = self.states.len();
        let g = self.stack.len();
        if t.from >= n || t.to >= n {
            return Err(UdpdaError::UnknownState(format!("#{}", t.from.max(t.to))));
        }
        for s in t.push.iter().chain(
            match t.top {
                Top::Sym(x) => Some(PushSym::Sym(x)),
                Top::Any => None,
            }
            .iter(),
        ) {
            if let PushSym::Sym(x) = s {
                if *x >= g {
                    return Err(UdpdaError::UnknownStackSymbol(format!("#{x}")));
                }
            }
        }
        if t.push.len() > 2 {
            return Err(UdpdaError::PushTooLong(self.describe(t)));
        }
        let bad = || UdpdaError::BottomDiscipline(self.describe(t));
        let (last, init) = match t.push.split_last() {
            Some((l, i)) => (Some(*l), i),
            None => (None, &[][..]),
        };
        if init
            .iter()
            .any(|s| matches!(s, PushSym::Sym(BOTTOM) | PushSym::Matched))
        {
            return Err(bad());
        }
        match (t.top, last) {
            (Top::Sym(BOTTOM), None) | (Top::Sym(BOTTOM), Some(PushSym::Sym(BOTTOM))) => Ok(()),
            (Top::Sym(BOTTOM), Some(_)) => Err(bad()),
            (Top::Sym(_), Some(PushSym::Sym(BOTTOM)) | Some(PushSym::Matched)) => Err(bad()),
            (Top::Sym(_), _) => Ok(()),
            (Top::Any, None) | (Top::Any, Some(PushSym::Matched)) => Ok(()),
            (Top::Any, Some(_)) => Err(bad()),
        }
    }

    pub fn describe(&self, t: &Transition) -> String {
        let top = match t.top {
            Top::Sym(x) => self.stack[x].clone(),
            Top::Any => "*".into(),
        };
        let push: Vec<&str> = t
            .push
            .iter()
            .map(|s| match s {
                PushSym::Sym(x) => self.stack[*x].as_str(),
                PushSym::Matched => "*",
            })
            .collect();
        format!(
            "{} {} {} -> {} {}",
            self.states[t.from],
            if t.reads { "a" } else { "-" },
            top,
            self.states[t.to],
            if push.is_empty() {
                "-".into()
            } else {
                push.join(" ")
            }
        )
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn stack(&self) -> &[String] {
        &self.stack
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// `|Q| · |Γ|`.
    pub fn size(&self) -> usize {
        self.states.len() * self.stack.len()
    }

    /// Checks that no configuration offers two moves.
    pub fn check_deterministic(&self) -> Result<(), Violation> {
        let mut by_key: BTreeMap<(usize, Top), usize> = BTreeMap::new();
        for t in &self.transitions {
            let count = by_key.entry((t.from, t.top)).or_default();
            *count += 1;
            if *count > 1 {
                return Err(Violation {
                    state: self.states[t.from].clone(),
                    top: match t.top {
                        Top::Sym(x) => self.stack[x].clone(),
                        Top::Any => "*".into(),
                    },
                });
            }
        }
        Ok(())
    }

    /// Equivalent automaton in normal form.
    ///
    /// States whose behaviour is already internal, push-one or pop-one on
    /// every top are kept as they are. Every other state becomes a
    /// non-reading pop state followed, per top symbol, by a short chain that
    /// performs the read and pushes the replacement word. Missing moves lead
    /// to a non-final reading sink.
    pub fn normalize(&self) -> Result<NormalUdpda, UdpdaError> {
        self.check_deterministic()
            .map_err(UdpdaError::NotDeterministic)?;
        let n = self.states.len();
        let mut from: Vec<Vec<&Transition>> = vec![Vec::new(); n];
        for t in &self.transitions {
            from[t.from].push(t);
        }
        let mut b = NormalBuilder::new(self.stack.clone());
        for q in 0..n {
            b.add(
                self.states[q].clone(),
                self.finals[q],
                false,
                Move::Internal(usize::MAX),
            );
        }
        for (q, ts) in from.iter().enumerate() {
            match ts.as_slice() {
                [t] if t.top == Top::Any && t.push == [PushSym::Matched] => {
                    b.set(q, t.reads, Move::Internal(t.to));
                    continue;
                }
                [t] if t.top == Top::Any
                    && matches!(t.push.as_slice(), [PushSym::Sym(_), PushSym::Matched]) =>
                {
                    let PushSym::Sym(g) = t.push[0] else {
                        unreachable!()
                    };
                    b.set(q, t.reads, Move::Push(t.to, g));
                    continue;
                }
                _ => {}
            }
            let is_pop = |t: &&&Transition| {
                t.push.is_empty() || (t.top == Top::Sym(BOTTOM) && t.push == [PushSym::Sym(BOTTOM)])
            };
            if !ts.is_empty()
                && ts.iter().all(|t| is_pop(&t))
                && ts.iter().all(|t| t.reads == ts[0].reads)
            {
                let mut table = Vec::new();
                let mut default = None;
                for t in ts {
                    match t.top {
                        Top::Sym(g) => table.push((g, t.to)),
                        Top::Any => default = Some(t.to),
                    }
                }
                let default = default.unwrap_or_else(|| b.dead());
                b.set(q, ts[0].reads, Move::Pop(PopTable::new(table, default)));
                continue;
            }
            // General case: pop, then read and push back.
            let mut explicit = BTreeMap::new();
            let mut any = None;
            for t in ts {
                match t.top {
                    Top::Sym(g) => {
                        explicit.insert(g, *t);
                    }
                    Top::Any => any = Some(*t),
                }
            }
            let label = self.states[q].clone();
            let mut table = Vec::new();
            for (&g, t) in &explicit {
                let word = concrete_push(t, g);
                let entry = b.chain(&label, g, t.reads, &word, t.to);
                table.push((g, entry));
            }
            let default = match any {
                None => b.dead(),
                Some(t) if !t.push.contains(&PushSym::Matched) => {
                    b.chain(&label, usize::MAX, t.reads, &[], t.to)
                }
                Some(t) => {
                    for g in 0..self.stack.len() {
                        if !explicit.contains_key(&g) {
                            let word = concrete_push(t, g);
                            let entry = b.chain(&label, g, t.reads, &word, t.to);
                            table.push((g, entry));
                        }
                    }
                    b.dead()
                }
            };
            b.set(q, false, Move::Pop(PopTable::new(table, default)));
        }
        Ok(b.finish(self.initial))
    }
}

// The stack word (top-first, without the bottom) that replaces the popped
// `g`, given that popping the bottom leaves it in place.
fn concrete_push(t: &Transition, g: usize) -> Vec<usize> {
    t.push
        .iter()
        .map(|s| match s {
            PushSym::Sym(x) => *x,
            PushSym::Matched => g,
        })
        .filter(|&x| x != BOTTOM)
        .collect()
}

/// Sparse `δ−1(q, ·)`: explicit entries plus a default target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PopTable {
    table: Vec<(usize, usize)>,
    default: usize,
}

impl PopTable {
    pub fn new(mut table: Vec<(usize, usize)>, default: usize) -> Self {
        table.sort_unstable();
        table.dedup_by_key(|e| e.0);
        PopTable { table, default }
    }

    pub fn uniform(target: usize) -> Self {
        PopTable {
            table: Vec::new(),
            default: target,
        }
    }

    pub fn target(&self, top: usize) -> usize {
        match self.table.binary_search_by_key(&top, |e| e.0) {
            Ok(i) => self.table[i].1,
            Err(_) => self.default,
        }
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.table
    }

    pub fn default_target(&self) -> usize {
        self.default
    }
}

/// The unique move of a normal-form state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Internal(usize),
    /// Push the symbol (never the bottom) and go to the state.
    Push(usize, usize),
    /// Pop the top (the bottom stays) and go to `table.target(top)`.
    Pop(PopTable),
}

/// A udpda in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalUdpda {
    names: Vec<String>,
    stack: Vec<String>,
    moves: Vec<Move>,
    reading: Vec<bool>,
    finals: Vec<bool>,
    initial: usize,
}

impl NormalUdpda {
    pub fn num_states(&self) -> usize {
        self.moves.len()
    }

    pub fn stack_size(&self) -> usize {
        self.stack.len()
    }

    pub fn size(&self) -> usize {
        self.num_states() * self.stack_size()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn stack_name(&self, g: usize) -> &str {
        &self.stack[g]
    }

    pub fn mv(&self, q: usize) -> &Move {
        &self.moves[q]
    }

    pub fn reads(&self, q: usize) -> bool {
        self.reading[q]
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    /// The same machine as a raw automaton, using `*` tops so that the
    /// transition count stays linear in the number of states.
    pub fn to_raw(&self) -> RawUnpda {
        let mut ts = Vec::new();
        for q in 0..self.num_states() {
            let reads = self.reading[q];
            match &self.moves[q] {
                Move::Internal(t) => ts.push(Transition {
                    from: q,
                    reads,
                    top: Top::Any,
                    to: *t,
                    push: vec![PushSym::Matched],
                }),
                Move::Push(t, g) => ts.push(Transition {
                    from: q,
                    reads,
                    top: Top::Any,
                    to: *t,
                    push: vec![PushSym::Sym(*g), PushSym::Matched],
                }),
                Move::Pop(table) => {
                    for &(g, t) in table.entries() {
                        ts.push(Transition {
                            from: q,
                            reads,
                            top: Top::Sym(g),
                            to: t,
                            push: Vec::new(),
                        });
                    }
                    ts.push(Transition {
                        from: q,
                        reads,
                        top: Top::Any,
                        to: table.default_target(),
                        push: Vec::new(),
                    });
                }
            }
        }
        RawUnpda::new(
            self.names.clone(),
            self.stack.clone(),
            self.initial,
            self.finals.clone(),
            ts,
        )
        .expect("normal form is a valid raw automaton")
    }
}

/// Incremental construction of a [`NormalUdpda`].
#[derive(Clone, Debug)]
pub struct NormalBuilder {
    names: Vec<String>,
    taken: HashSet<String>,
    stack: Vec<String>,
    moves: Vec<Move>,
    reading: Vec<bool>,
    finals: Vec<bool>,
    dead: Option<usize>,
}

impl NormalBuilder {
    /// `stack[0]` is the bottom symbol.
    pub fn new(stack: Vec<String>) -> Self {
        NormalBuilder {
            names: Vec::new(),
            taken: HashSet::new(),
            stack,
            moves: Vec::new(),
            reading: Vec::new(),
            finals: Vec::new(),
            dead: None,
        }
    }

    /// Adds a stack symbol and returns its index.
    pub fn symbol(&mut self, name: String) -> usize {
        self.stack.push(name);
        self.stack.len() - 1
    }

    pub fn num_states(&self) -> usize {
        self.moves.len()
    }

    /// Adds a state; the name is made unique if needed.
    pub fn add(&mut self, name: String, fin: bool, reads: bool, mv: Move) -> usize {
        let mut unique = name.clone();
        let mut k = 1;
        while !self.taken.insert(unique.clone()) {
            unique = format!("{name}'{k}");
            k += 1;
        }
        self.names.push(unique);
        self.moves.push(mv);
        self.reading.push(reads);
        self.finals.push(fin);
        self.moves.len() - 1
    }

    pub fn set(&mut self, q: usize, reads: bool, mv: Move) {
        self.reading[q] = reads;
        self.moves[q] = mv;
    }

    pub fn set_final(&mut self, q: usize, fin: bool) {
        self.finals[q] = fin;
    }

    /// The shared non-final reading sink.
    pub fn dead(&mut self) -> usize {
        if let Some(d) = self.dead {
            return d;
        }
        let d = self.add("dead".into(), false, true, Move::Internal(usize::MAX));
        self.moves[d] = Move::Internal(d);
        self.dead = Some(d);
        d
    }

    // Reads (optionally), pushes `word` (top-first) and continues at `to`.
    fn chain(&mut self, label: &str, g: usize, reads: bool, word: &[usize], to: usize) -> usize {
        let tag = if g == usize::MAX {
            "*".to_string()
        } else {
            self.stack[g].clone()
        };
        if word.is_empty() {
            if reads {
                return self.add(format!("{label}~{tag}"), false, true, Move::Internal(to));
            }
            return to;
        }
        let mut next = to;
        let last = word.len() - 1;
        // Push the deepest symbol first.
        for (k, &sym) in word.iter().enumerate() {
            let r = reads && k == last;
            next = self.add(
                format!("{label}~{tag}~{k}"),
                false,
                r,
                Move::Push(next, sym),
            );
        }
        next
    }

    pub fn finish(self, initial: usize) -> NormalUdpda {
        debug_assert!(self.moves.iter().all(|m| match m {
            Move::Internal(t) | Move::Push(t, _) => *t < self.moves.len(),
            Move::Pop(p) => p.default < self.moves.len(),
        }));
        NormalUdpda {
            names: self.names,
            stack: self.stack,
            moves: self.moves,
            reading: self.reading,
            finals: self.finals,
            initial,
        }
    }
}

/// Either form of automaton, as accepted by the decision procedures.
pub trait Machine {
    fn to_normal(&self) -> Result<std::borrow::Cow<'_, NormalUdpda>, UdpdaError>;
}

impl Machine for NormalUdpda {
    fn to_normal(&self) -> Result<std::borrow::Cow<'_, NormalUdpda>, UdpdaError> {
        Ok(std::borrow::Cow::Borrowed(self))
    }
}

impl Machine for RawUnpda {
    fn to_normal(&self) -> Result<std::borrow::Cow<'_, NormalUdpda>, UdpdaError> {
        self.normalize().map(std::borrow::Cow::Owned)
    }
}
