//! Direct simulation of the unique computation of a normal-form udpda.

use super::{Move, NormalUdpda, UdpdaError, BOTTOM};

/// A move that was just performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    /// State the move left from.
    pub from: usize,
    pub read: bool,
    pub fin: bool,
}

/// Caller-owned execution state.
#[derive(Clone, Debug)]
pub struct Simulator<'a> {
    m: &'a NormalUdpda,
    state: usize,
    // Bottom excluded; the last element is the top.
    stack: Vec<usize>,
    consumed: u64,
}

impl<'a> Simulator<'a> {
    pub fn new(m: &'a NormalUdpda) -> Self {
        Self::at(m, m.initial(), Vec::new())
    }

    /// Starts at `(state, stack)`; `stack` is bottom-first without the bottom.
    pub fn at(m: &'a NormalUdpda, state: usize, stack: Vec<usize>) -> Self {
        Simulator {
            m,
            state,
            stack,
            consumed: 0,
        }
    }

    pub fn state(&self) -> usize {
        self.state
    }

    pub fn stack(&self) -> &[usize] {
        &self.stack
    }

    pub fn height(&self) -> usize {
        self.stack.len()
    }

    pub fn top(&self) -> usize {
        self.stack.last().copied().unwrap_or(BOTTOM)
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn step(&mut self) -> Step {
        let q = self.state;
        let read = self.m.reads(q);
        self.state = match self.m.mv(q) {
            Move::Internal(t) => *t,
            Move::Push(t, g) => {
                self.stack.push(*g);
                *t
            }
            Move::Pop(table) => {
                let t = table.target(self.top());
                self.stack.pop();
                t
            }
        };
        if read {
            self.consumed += 1;
        }
        Step {
            from: q,
            read,
            fin: self.m.is_final(q),
        }
    }
}

/// Detects non-reading divergence.
///
/// A state seen twice with no read in between and without the stack ever
/// dropping below the level of the first sighting repeats forever. At the
/// bottom level the top symbol matters too, so bottom sightings only match
/// bottom sightings.
#[derive(Clone, Debug)]
struct LoopGuard {
    levels: Vec<Vec<usize>>,
    // Finals seen so far when the state was recorded at an upper level / the bottom.
    upper: Vec<Option<u64>>,
    bottom: Vec<Option<u64>>,
    touched_bottom: Vec<usize>,
}

impl LoopGuard {
    fn new(states: usize) -> Self {
        LoopGuard {
            levels: Vec::new(),
            upper: vec![None; states],
            bottom: vec![None; states],
            touched_bottom: Vec::new(),
        }
    }

    fn reset(&mut self) {
        for lvl in &mut self.levels {
            for q in lvl.drain(..) {
                self.upper[q] = None;
            }
        }
        for q in self.touched_bottom.drain(..) {
            self.bottom[q] = None;
        }
    }

    // Returns the finals count recorded at the first sighting on a repeat.
    fn visit(&mut self, q: usize, height: usize, finals: u64) -> Option<u64> {
        if height == 0 {
            if let Some(f) = self.bottom[q] {
                return Some(f);
            }
            self.bottom[q] = Some(finals);
            self.touched_bottom.push(q);
            return None;
        }
        if let Some(f) = self.upper[q] {
            return Some(f);
        }
        if self.levels.len() <= height {
            self.levels.resize_with(height + 1, Vec::new);
        }
        self.levels[height].push(q);
        self.upper[q] = Some(finals);
        None
    }

    fn popped(&mut self, from_height: usize) {
        if let Some(lvl) = self.levels.get_mut(from_height) {
            for q in lvl.drain(..) {
                self.upper[q] = None;
            }
        }
    }
}

/// Why a simulation stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ending {
    /// The requested amount was produced.
    Reached,
    /// The machine never reads again after `consumed` letters. `finals`
    /// tells whether the endless non-reading loop visits final states.
    EpsilonLoop { consumed: u64, finals: bool },
    /// The fuel backstop fired after `consumed` letters.
    FuelExhausted { consumed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixRun {
    pub bits: Vec<bool>,
    pub ending: Ending,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptRun {
    /// Over `{a, f}`.
    pub symbols: String,
    pub ending: Ending,
}

// Drives the computation, reporting each move to `sink` until it returns false.
fn drive<'a>(
    m: &'a NormalUdpda,
    mut sim: Simulator<'a>,
    fuel: u64,
    mut sink: impl FnMut(&Simulator<'_>, Step) -> bool,
) -> Ending {
    let mut guard = LoopGuard::new(m.num_states());
    let mut idle = 0u64;
    let mut finals = 0u64;
    loop {
        let q = sim.state();
        let fin = m.is_final(q);
        if !m.reads(q) {
            if let Some(before) = guard.visit(q, sim.height(), finals) {
                return Ending::EpsilonLoop {
                    consumed: sim.consumed(),
                    finals: finals > before,
                };
            }
            idle += 1;
            if idle > fuel {
                return Ending::FuelExhausted {
                    consumed: sim.consumed(),
                };
            }
        }
        if fin {
            finals += 1;
        }
        let h = sim.height();
        let step = sim.step();
        if sim.height() < h {
            guard.popped(h);
        }
        if step.read {
            guard.reset();
            idle = 0;
        }
        if !sink(&sim, step) {
            return Ending::Reached;
        }
    }
}

/// The first `n` bits of the characteristic sequence.
///
/// Bit `i` is set iff a final state occurs while exactly `i` letters have
/// been consumed. After a detected non-reading loop or fuel exhaustion the
/// remaining bits are zero.
pub fn run_prefix(m: &NormalUdpda, n: u64, fuel: u64) -> PrefixRun {
    let mut bits = vec![false; n as usize];
    if n == 0 {
        return PrefixRun {
            bits,
            ending: Ending::Reached,
        };
    }
    let mut done = false;
    let ending = drive(m, Simulator::new(m), fuel, |sim, step| {
        let at = sim.consumed() - step.read as u64;
        if step.fin {
            bits[at as usize] = true;
        }
        if sim.consumed() >= n {
            done = true;
            return false;
        }
        true
    });
    // The state reached by the last move has not been reported yet.
    let ending = if done { Ending::Reached } else { ending };
    PrefixRun { bits, ending }
}

/// Whether `a^n` is accepted, by stepping the computation.
pub fn membership_sim(m: &NormalUdpda, n: u64, fuel: u64) -> Result<bool, UdpdaError> {
    let run = run_prefix(m, n + 1, fuel);
    match run.ending {
        Ending::FuelExhausted { consumed } => Err(UdpdaError::FuelExhausted { fuel, consumed }),
        _ => Ok(run.bits[n as usize]),
    }
}

/// The first `len` symbols of the transcript of the computation, or the
/// whole transcript when it is finite.
pub fn transcript_prefix(m: &NormalUdpda, len: usize, fuel: u64) -> TranscriptRun {
    transcript_from(m, m.initial(), len, fuel)
}

/// Like [`transcript_prefix`] but starting at `(state, ⊥)`.
pub fn transcript_from(m: &NormalUdpda, state: usize, len: usize, fuel: u64) -> TranscriptRun {
    let mut out = String::with_capacity(len);
    if len == 0 {
        return TranscriptRun {
            symbols: out,
            ending: Ending::Reached,
        };
    }
    let mut count = 0usize;
    let ending = drive(m, Simulator::at(m, state, Vec::new()), fuel, |_, step| {
        if step.fin {
            out.push('f');
            count += 1;
        }
        if step.read && count < len {
            out.push('a');
            count += 1;
        }
        count < len
    });
    out.truncate(len);
    if let Ending::EpsilonLoop { finals: true, .. } = ending {
        while out.len() < len {
            out.push('f');
        }
    }
    TranscriptRun {
        symbols: out,
        ending,
    }
}
