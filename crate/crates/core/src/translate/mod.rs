//! Translation between udpda and indicator pairs.
//!
//! Going from programs to machines is a gadget construction
//! ([`slp_to_udpda`], [`indicator_to_udpda`]). The other direction runs the
//! transcript dynamic program ([`udpda_to_transcript`]) and then rewrites
//! the transcript into a characteristic sequence
//! ([`transcript_to_characteristic`]).

mod characteristic;
mod gadget;
mod transcript;

use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::slp::{parse_slp, Alphabet, Nat, Slp, SlpError};
use crate::udpda::{Machine, UdpdaError};

pub use characteristic::transcript_to_characteristic;
pub use gadget::{indicator_to_udpda, slp_to_udpda, slp_to_udpda_with, GadgetOptions, SlpMachine};
pub use transcript::{
    udpda_to_transcript, udpda_to_transcript_with, TranscriptOptions, TranscriptStats,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error(transparent)]
    Slp(#[from] SlpError),
    #[error(transparent)]
    Udpda(#[from] UdpdaError),
    #[error("malformed pair: {0}")]
    MalformedPair(String),
    #[error("invariant broken after {rule}: {detail}")]
    Invariant { rule: String, detail: String },
}

/// `(prefix, loop)` generating `prefix · loop^ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqPair {
    prefix: Slp,
    looped: Slp,
}

impl SeqPair {
    fn new(prefix: Slp, looped: Slp, alphabet: &Alphabet) -> Result<Self, TranslateError> {
        if looped.is_empty() {
            return Err(TranslateError::MalformedPair("empty loop".into()));
        }
        let prefix = prefix.with_alphabet(alphabet)?;
        let looped = looped.with_alphabet(alphabet)?;
        Ok(SeqPair { prefix, looped })
    }

    pub fn prefix(&self) -> &Slp {
        &self.prefix
    }

    pub fn looped(&self) -> &Slp {
        &self.looped
    }

    /// Symbol at position `n` of the infinite sequence.
    pub fn at(&self, n: &Nat) -> char {
        let p = self.prefix.length();
        if n < p {
            self.prefix.query(n).expect("in range")
        } else {
            let r = (n - p).mod_floor(self.looped.length());
            self.looped.query(&r).expect("in range")
        }
    }

    /// The first `n` symbols of the sequence.
    pub fn take(&self, n: usize) -> Vec<char> {
        let mut out: Vec<char> = self.prefix.symbols().take(n).collect();
        while out.len() < n {
            let need = n - out.len();
            out.extend(self.looped.symbols().take(need));
        }
        out
    }

    /// `size(prefix) + size(loop)`.
    pub fn size(&self) -> usize {
        self.prefix.size() + self.looped.size()
    }

    /// `|prefix| + k·|loop|` saturated to `u64`.
    pub fn window(&self, k: u64) -> u64 {
        let w = self.prefix.length() + self.looped.length() * k;
        w.to_u64().unwrap_or(u64::MAX)
    }
}

/// An indicator pair: two programs over `{0, 1}` whose sequence
/// `prefix · loop^ω` is a characteristic sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorPair(SeqPair);

/// Two programs over `{a, f}` generating a transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptPair(SeqPair);

pub fn bits_alphabet() -> Alphabet {
    Alphabet::binary()
}

pub fn events_alphabet() -> Alphabet {
    Alphabet::new(['a', 'f'])
}

impl IndicatorPair {
    pub fn new(prefix: Slp, looped: Slp) -> Result<Self, TranslateError> {
        SeqPair::new(prefix, looped, &bits_alphabet()).map(IndicatorPair)
    }

    /// Pair from two literal bit strings.
    pub fn from_bits(prefix: &str, looped: &str) -> Result<Self, TranslateError> {
        let a = bits_alphabet();
        IndicatorPair::new(Slp::literal(&a, prefix)?, Slp::literal(&a, looped)?)
    }

    pub fn bit(&self, n: &Nat) -> bool {
        self.0.at(n) == '1'
    }

    pub fn bits(&self, n: usize) -> Vec<bool> {
        self.0.take(n).into_iter().map(|c| c == '1').collect()
    }

    pub fn pair(&self) -> &SeqPair {
        &self.0
    }

    pub fn prefix(&self) -> &Slp {
        &self.0.prefix
    }

    pub fn looped(&self) -> &Slp {
        &self.0.looped
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }
}

impl TranscriptPair {
    pub fn new(prefix: Slp, looped: Slp) -> Result<Self, TranslateError> {
        SeqPair::new(prefix, looped, &events_alphabet()).map(TranscriptPair)
    }

    pub fn pair(&self) -> &SeqPair {
        &self.0
    }

    pub fn prefix(&self) -> &Slp {
        &self.0.prefix
    }

    pub fn looped(&self) -> &Slp {
        &self.0.looped
    }

    pub fn take(&self, n: usize) -> String {
        self.0.take(n).into_iter().collect()
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }
}

/// Normalizes, computes the transcript and rewrites it.
pub fn udpda_to_indicator<M: Machine + ?Sized>(m: &M) -> Result<IndicatorPair, TranslateError> {
    let normal = m.to_normal()?;
    let tp = udpda_to_transcript(&normal)?;
    transcript_to_characteristic(&tp)
}

/// What a pair file holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Indicator,
    Transcript,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyPair {
    Indicator(IndicatorPair),
    Transcript(TranscriptPair),
}

/// Reads a pair file: a `kind:` line, the prefix program, `---`, the loop.
pub fn parse_pair(text: &str) -> Result<AnyPair, TranslateError> {
    let mut kind = None;
    let mut blocks = vec![String::new()];
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if let Some(rest) = line.strip_prefix("kind:") {
            kind = Some(match rest.trim() {
                "indicator" => PairKind::Indicator,
                "transcript" => PairKind::Transcript,
                other => {
                    return Err(TranslateError::MalformedPair(format!(
                        "line {}: unknown kind {other:?}",
                        k + 1
                    )))
                }
            });
        } else if line == "---" {
            blocks.push(String::new());
        } else {
            let last = blocks.last_mut().expect("at least one block");
            last.push_str(raw);
            last.push('\n');
        }
    }
    let kind = kind.ok_or_else(|| TranslateError::MalformedPair("missing `kind:` line".into()))?;
    if blocks.len() != 2 {
        return Err(TranslateError::MalformedPair(
            "expected two blocks separated by `---`".into(),
        ));
    }
    let prefix = parse_slp(&blocks[0])?;
    let looped = parse_slp(&blocks[1])?;
    Ok(match kind {
        PairKind::Indicator => AnyPair::Indicator(IndicatorPair::new(prefix, looped)?),
        PairKind::Transcript => AnyPair::Transcript(TranscriptPair::new(prefix, looped)?),
    })
}

pub fn write_pair(kind: PairKind, pair: &SeqPair) -> String {
    let mut out = String::new();
    let name = match kind {
        PairKind::Indicator => "indicator",
        PairKind::Transcript => "transcript",
    };
    let _ = writeln!(out, "kind: {name}");
    let _ = write!(out, "{}", pair.prefix);
    let _ = writeln!(out, "---");
    let _ = write!(out, "{}", pair.looped);
    out
}

impl std::fmt::Display for IndicatorPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&write_pair(PairKind::Indicator, &self.0))
    }
}

impl std::fmt::Display for TranscriptPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&write_pair(PairKind::Transcript, &self.0))
    }
}
