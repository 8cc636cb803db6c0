//! The transcript of a normal-form machine as a pair of programs.
//!
//! Four partial maps over the states are maintained: `E` (return segments),
//! `H` (horizontal segments), `W` (pending pushes) and the non-returning
//! states. Each is backed by a nonterminal in one shared builder, so the
//! output has size linear in the number of states and stack symbols.

use std::collections::{HashMap, VecDeque};

use num_traits::Zero;

use super::{events_alphabet, TranscriptPair, TranslateError};
use crate::slp::{SlpBuilder, Sym};
use crate::udpda::{transcript_from, Ending, Move, NormalUdpda, Simulator, BOTTOM};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TranscriptOptions {
    /// Re-verify the maps by simulation after every rule application.
    /// Only practical for small machines.
    pub check_invariants: bool,
    /// Move budget per simulated segment during checks.
    pub check_fuel: u64,
}

impl Default for TranscriptOptions {
    fn default() -> Self {
        TranscriptOptions {
            check_invariants: false,
            check_fuel: 100_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TranscriptStats {
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
    pub r4: usize,
    pub cycles: usize,
    /// Length of the path of bottom returns followed from the initial state.
    pub bottom_path: usize,
    /// The computation ends in a silent loop; the loop was replaced by `a`.
    pub empty_loop: bool,
    /// Segments too long to re-simulate during checks.
    pub checks_skipped: usize,
}

type Frag = Option<Sym>;

struct Workspace<'a> {
    m: &'a NormalUdpda,
    opts: TranscriptOptions,
    b: SlpBuilder,
    v: Vec<Frag>,
    // Exit state and segment.
    e: Vec<Option<(usize, Frag)>>,
    // Successor and segment.
    h: Vec<Option<(usize, Frag)>>,
    w: Vec<Option<usize>>,
    // Finite part and repeated part.
    nonret: Vec<Option<(Frag, Frag)>>,
    preds: Vec<Vec<usize>>,
    queue: VecDeque<usize>,
    stats: TranscriptStats,
    dom_e: usize,
    dom_w: usize,
}

impl<'a> Workspace<'a> {
    fn new(m: &'a NormalUdpda, opts: TranscriptOptions) -> Self {
        let n = m.num_states();
        let mut b = SlpBuilder::new(events_alphabet());
        let v: Vec<Frag> = (0..n)
            .map(|q| {
                let mut w = Vec::new();
                if m.is_final(q) {
                    w.push(Sym::T('f'));
                }
                if m.reads(q) {
                    w.push(Sym::T('a'));
                }
                b.seq(w)
            })
            .collect();
        let mut ws = Workspace {
            m,
            opts,
            b,
            v,
            e: vec![None; n],
            h: vec![None; n],
            w: vec![None; n],
            nonret: vec![None; n],
            preds: vec![Vec::new(); n],
            queue: VecDeque::new(),
            stats: TranscriptStats::default(),
            dom_e: 0,
            dom_w: 0,
        };
        for q in 0..n {
            match m.mv(q) {
                Move::Pop(_) => {
                    ws.e[q] = Some((q, None));
                    ws.dom_e += 1;
                    ws.queue.push_back(q);
                }
                Move::Internal(t) => {
                    ws.h[q] = Some((*t, ws.v[q]));
                    ws.preds[*t].push(q);
                }
                Move::Push(t, _) => {
                    ws.w[q] = Some(*t);
                    ws.dom_w += 1;
                    ws.preds[*t].push(q);
                }
            }
        }
        ws
    }

    fn cat(&mut self, parts: &[Frag]) -> Frag {
        let frag: Vec<Sym> = parts.iter().flatten().copied().collect();
        self.b.seq(frag)
    }

    fn target(&self, q: usize) -> Option<usize> {
        self.h[q].map(|(t, _)| t).or(self.w[q])
    }

    // The segment labelling the edge out of `q`.
    fn edge(&self, q: usize) -> Frag {
        match self.h[q] {
            Some((_, s)) => s,
            None => self.v[q],
        }
    }

    fn drain(&mut self) -> Result<(), TranslateError> {
        while let Some(r) = self.queue.pop_front() {
            for q in std::mem::take(&mut self.preds[r]) {
                if self.target(q) == Some(r) {
                    self.resolve(q)?;
                }
            }
        }
        Ok(())
    }

    // Applies R1, R2 or R3 to `q` if its successor is resolved.
    fn resolve(&mut self, q: usize) -> Result<(), TranslateError> {
        loop {
            let Some(t) = self.target(q) else {
                return Ok(());
            };
            if let Some((_, tail)) = self.nonret[t] {
                let head = self.nonret[t].unwrap().0;
                let g = self.edge(q);
                let first = self.cat(&[g, head]);
                self.h[q] = None;
                if self.w[q].take().is_some() {
                    self.dom_w -= 1;
                }
                self.nonret[q] = Some((first, tail));
                self.stats.r1 += 1;
                self.queue.push_back(q);
                return self.check("R1", q);
            }
            let Some((exit, seg)) = self.e[t] else {
                self.preds[t].push(q);
                return Ok(());
            };
            if let Some((_, hs)) = self.h[q] {
                let s = self.cat(&[hs, seg]);
                self.h[q] = None;
                self.e[q] = Some((exit, s));
                self.dom_e += 1;
                self.stats.r2 += 1;
                self.queue.push_back(q);
                return self.check("R2", q);
            }
            // R3: the pushed symbol is popped at `exit`.
            let Move::Push(_, g) = self.m.mv(q) else {
                return Err(self.broken("R3", format!("state {q} in W is not a push state")));
            };
            let Move::Pop(table) = self.m.mv(exit) else {
                return Err(self.broken("R3", format!("exit {exit} is not a pop state")));
            };
            let back = table.target(*g);
            let s = self.cat(&[self.v[q], seg, self.v[exit]]);
            self.w[q] = None;
            self.dom_w -= 1;
            self.h[q] = Some((back, s));
            self.stats.r3 += 1;
            self.check("R3", q)?;
        }
    }

    // Every remaining vertex lies on or leads into a cycle of `H ∪ W`.
    fn close_cycles(&mut self) -> Result<(), TranslateError> {
        let n = self.m.num_states();
        let mut mark = vec![0u8; n];
        for start in 0..n {
            if mark[start] != 0 || self.target(start).is_none() {
                continue;
            }
            let mut path = Vec::new();
            let mut on_path: HashMap<usize, usize> = HashMap::new();
            let mut cur = start;
            loop {
                if mark[cur] == 2 || self.target(cur).is_none() {
                    break;
                }
                if let Some(&i) = on_path.get(&cur) {
                    let cycle = path[i..].to_vec();
                    self.rule4(&cycle)?;
                    break;
                }
                on_path.insert(cur, path.len());
                path.push(cur);
                mark[cur] = 1;
                cur = self.target(cur).expect("checked");
            }
            for q in path {
                mark[q] = 2;
            }
        }
        Ok(())
    }

    fn rule4(&mut self, cycle: &[usize]) -> Result<(), TranslateError> {
        let edges: Vec<Frag> = cycle.iter().map(|&q| self.edge(q)).collect();
        let tail = self.cat(&edges);
        let k = cycle.len();
        let mut head = edges[k - 1];
        for i in (0..k).rev() {
            if i < k - 1 {
                head = self.cat(&[edges[i], head]);
            }
            let q = cycle[i];
            self.h[q] = None;
            if self.w[q].take().is_some() {
                self.dom_w -= 1;
            }
            self.nonret[q] = Some((head, tail));
            self.queue.push_back(q);
        }
        self.stats.r4 += 1;
        self.stats.cycles += 1;
        for &q in cycle {
            self.check("R4", q)?;
        }
        Ok(())
    }

    fn broken(&self, rule: &str, detail: String) -> TranslateError {
        TranslateError::Invariant {
            rule: rule.into(),
            detail,
        }
    }

    fn check(&mut self, rule: &str, q: usize) -> Result<(), TranslateError> {
        if !self.opts.check_invariants {
            return Ok(());
        }
        let n = self.m.num_states();
        let mut de = 0;
        let mut dw = 0;
        for p in 0..n {
            let k = self.e[p].is_some() as u8
                + self.h[p].is_some() as u8
                + self.w[p].is_some() as u8
                + self.nonret[p].is_some() as u8;
            if k != 1 {
                return Err(self.broken(rule, format!("state {p} is in {k} maps")));
            }
            de += self.e[p].is_some() as usize;
            dw += self.w[p].is_some() as usize;
            if let Some(t) = self.w[p] {
                if !matches!(self.m.mv(p), Move::Push(to, _) if *to == t) {
                    return Err(self.broken(rule, format!("W({p}) is not its push move")));
                }
            }
        }
        if de != self.dom_e || dw != self.dom_w {
            return Err(self.broken(rule, "domain counters out of step".into()));
        }
        if let Some((exit, seg)) = self.e[q] {
            self.check_segment(rule, q, false, exit, seg)?;
        }
        if let Some((to, seg)) = self.h[q] {
            self.check_segment(rule, q, true, to, seg)?;
        }
        if let Some((head, tail)) = self.nonret[q] {
            self.check_nonret(rule, q, head, tail)?;
        }
        Ok(())
    }

    // Replays the segment from `(q, ⊥)`: up to the first pop state at the
    // bottom, or for horizontal segments the first return to the bottom.
    fn check_segment(
        &mut self,
        rule: &str,
        q: usize,
        horizontal: bool,
        want: usize,
        seg: Frag,
    ) -> Result<(), TranslateError> {
        let mut sim = Simulator::at(self.m, q, Vec::new());
        let mut got = String::new();
        let mut moves = 0u64;
        loop {
            let at_bottom = sim.height() == 0;
            let stop = if horizontal {
                moves > 0 && at_bottom
            } else {
                at_bottom && matches!(self.m.mv(sim.state()), Move::Pop(_))
            };
            if stop {
                break;
            }
            if moves >= self.opts.check_fuel {
                self.stats.checks_skipped += 1;
                return Ok(());
            }
            let step = sim.step();
            moves += 1;
            if step.fin {
                got.push('f');
            }
            if step.read {
                got.push('a');
            }
        }
        let expect = expand(&self.b, seg, got.len() + 1);
        if sim.state() != want || expect.as_deref() != Some(got.as_str()) {
            return Err(self.broken(
                rule,
                format!(
                    "segment of state {q}: simulated ({}, {got:?}), stored ({want}, {expect:?})",
                    sim.state()
                ),
            ));
        }
        Ok(())
    }

    fn check_nonret(
        &mut self,
        rule: &str,
        q: usize,
        head: Frag,
        tail: Frag,
    ) -> Result<(), TranslateError> {
        const LEN: usize = 64;
        let run = transcript_from(self.m, q, LEN, self.opts.check_fuel);
        if matches!(run.ending, Ending::FuelExhausted { .. }) {
            self.stats.checks_skipped += 1;
            return Ok(());
        }
        let mut want = expand(&self.b, head, LEN).unwrap_or_default();
        let t = expand(&self.b, tail, LEN).unwrap_or_default();
        while !t.is_empty() && want.len() < LEN {
            want.push_str(&t);
        }
        want.truncate(LEN);
        if want != run.symbols {
            return Err(self.broken(
                rule,
                format!(
                    "state {q} never returns: simulated {:?}, stored {want:?}",
                    run.symbols
                ),
            ));
        }
        Ok(())
    }
}

// Word of a fragment, or `None` when it is longer than `cap`.
fn expand(b: &SlpBuilder, s: Frag, cap: usize) -> Option<String> {
    let mut out = String::new();
    let mut stack: Vec<Sym> = s.into_iter().collect();
    while let Some(x) = stack.pop() {
        match x {
            Sym::T(c) => {
                out.push(c);
                if out.len() > cap {
                    return None;
                }
            }
            Sym::N(i) => stack.extend(b.rule(i).iter().rev()),
        }
    }
    Some(out)
}

pub fn udpda_to_transcript(m: &NormalUdpda) -> Result<TranscriptPair, TranslateError> {
    udpda_to_transcript_with(m, TranscriptOptions::default()).map(|(p, _)| p)
}

/// Computes the transcript pair together with rule counts.
pub fn udpda_to_transcript_with(
    m: &NormalUdpda,
    opts: TranscriptOptions,
) -> Result<(TranscriptPair, TranscriptStats), TranslateError> {
    let mut ws = Workspace::new(m, opts);
    for q in 0..m.num_states() {
        ws.check("init", q)?;
    }
    ws.drain()?;
    ws.close_cycles()?;
    ws.drain()?;
    if let Some(q) = (0..m.num_states()).find(|&q| ws.target(q).is_some()) {
        return Err(ws.broken("R4", format!("state {q} still has a successor")));
    }

    // Follow bottom returns from the initial state.
    let (prefix, looped, steps) = {
        let mut path: Vec<Frag> = Vec::new();
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut cur = m.initial();
        loop {
            if let Some((head, tail)) = ws.nonret[cur] {
                let mut p = path.clone();
                p.push(head);
                break (ws.cat(&p), tail, path.len());
            }
            if let Some(&i) = seen.get(&cur) {
                let p = ws.cat(&path[..i]);
                let l = ws.cat(&path[i..]);
                break (p, l, path.len());
            }
            let (exit, seg) = ws.e[cur]
                .ok_or_else(|| ws.broken("bottom", format!("state {cur} is unresolved")))?;
            let Move::Pop(table) = m.mv(exit) else {
                return Err(ws.broken("bottom", format!("exit {exit} is not a pop state")));
            };
            let step = ws.cat(&[seg, ws.v[exit]]);
            seen.insert(cur, path.len());
            path.push(step);
            cur = table.target(BOTTOM);
        }
    };
    ws.stats.bottom_path = steps;
    let looped = match looped {
        Some(l) if !ws.b.len(l).is_zero() => Some(l),
        _ => {
            ws.stats.empty_loop = true;
            Some(Sym::T('a'))
        }
    };
    let b2 = ws.b.clone();
    let p = ws.b.finish(prefix.into_iter().collect());
    let l = b2.finish(looped.into_iter().collect());
    Ok((TranscriptPair::new(p, l)?, ws.stats))
}
