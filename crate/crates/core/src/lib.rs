//! Unary deterministic pushdown automata as compressed characteristic sequences.
//!
//! The central object is the *indicator pair*: two straight-line programs
//! `(prefix, loop)` over `{0, 1}` such that `prefix · loop^ω` is the
//! characteristic sequence of a unary language. [`translate`] converts in
//! both directions between udpda and indicator pairs; [`decide`] answers
//! membership, emptiness, universality, equivalence and inclusion on top of
//! that translation.
//!
//! Module map:
//!
//! * [`slp`]: grammar-compressed words and their algebra (slice, power,
//!   cyclic shift, substitution, fingerprint equality).
//! * [`compare`]: componentwise relations between compressed words.
//! * [`udpda`]: raw and normalized automata, the reference simulator.
//! * [`translate`]: udpda to indicator pair and back.
//! * [`decide`]: the decision procedures.
//! * [`intexpr`]: integer expressions over `{+, ∪, ×2, *}` and unary grammars.
//! * [`reductions`]: generators for hardness instances.
//! * [`corpus`]: seeded random and handcrafted test inputs.
//! * [`exec`]: data-parallel helpers with a sequential fallback.

pub mod cli;
pub mod compare;
pub mod corpus;
pub mod decide;
pub mod exec;
pub mod intexpr;
pub mod reductions;
pub mod slp;
pub mod translate;
pub mod udpda;

pub use slp::{Alphabet, Nat, Slp};
