//! Integer expressions over `{+, ∪, ×2, *}`.
//!
//! `⟦n⟧ = {n}`, `⟦E + F⟧` is the sumset, `⟦E ∪ F⟧` the union,
//! `⟦E ×2⟧ = ⟦E + E⟧` and `⟦E*⟧` the set of finite sums of members of `⟦E⟧`.

mod bits;
mod cfg;
mod parse;

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::compare::Verdict;
use crate::slp::Nat;

pub use bits::Members;
pub use cfg::{cfg_lengths_up_to, cfg_membership_unary, expr_to_cfg, parse_cfg, CfgSym, UnaryCfg};
pub use parse::parse_expr;

/// Largest bound accepted by the bitset semantics.
pub const MAX_BOUND: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IntExprError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("bound {bound} exceeds {max}")]
    BoundTooLarge { bound: Nat, max: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IntExpr {
    Const(Nat),
    Sum(Box<IntExpr>, Box<IntExpr>),
    Union(Box<IntExpr>, Box<IntExpr>),
    Double(Box<IntExpr>),
    Star(Box<IntExpr>),
}

impl IntExpr {
    pub fn constant(n: impl Into<Nat>) -> Self {
        IntExpr::Const(n.into())
    }

    pub fn sum(a: IntExpr, b: IntExpr) -> Self {
        IntExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn union(a: IntExpr, b: IntExpr) -> Self {
        IntExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn double(a: IntExpr) -> Self {
        IntExpr::Double(Box::new(a))
    }

    pub fn star(a: IntExpr) -> Self {
        IntExpr::Star(Box::new(a))
    }

    /// Left-nested sum of a nonempty list.
    pub fn sum_all(items: Vec<IntExpr>) -> Option<Self> {
        items.into_iter().reduce(IntExpr::sum)
    }

    /// Left-nested union of a nonempty list.
    pub fn union_all(items: Vec<IntExpr>) -> Option<Self> {
        items.into_iter().reduce(IntExpr::union)
    }

    /// `[0, k]`, built as `[0, ⌊k/2⌋] ×2 + (0 ∪ k mod 2)`.
    pub fn interval(k: &Nat) -> Self {
        if k.is_zero() {
            return IntExpr::constant(0u32);
        }
        let half = IntExpr::double(IntExpr::interval(&(k >> 1u32)));
        if k.bit(0) {
            IntExpr::sum(
                half,
                IntExpr::union(IntExpr::constant(0u32), IntExpr::constant(1u32)),
            )
        } else {
            half
        }
    }

    /// `[lo, hi]`, or `None` when empty.
    pub fn range(lo: &Nat, hi: &Nat) -> Option<Self> {
        if lo > hi {
            return None;
        }
        let base = IntExpr::interval(&(hi - lo));
        Some(if lo.is_zero() {
            base
        } else {
            IntExpr::sum(IntExpr::Const(lo.clone()), base)
        })
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            IntExpr::Const(_) => 1,
            IntExpr::Sum(a, b) | IntExpr::Union(a, b) => 1 + a.size() + b.size(),
            IntExpr::Double(a) | IntExpr::Star(a) => 1 + a.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            IntExpr::Const(_) => 0,
            IntExpr::Sum(a, b) | IntExpr::Union(a, b) => 1 + a.depth().max(b.depth()),
            IntExpr::Double(a) | IntExpr::Star(a) => 1 + a.depth(),
        }
    }
}

impl fmt::Display for IntExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Precedence: union 0, sum 1, postfix 2.
        fn go(e: &IntExpr, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let own = match e {
                IntExpr::Union(..) => 0,
                IntExpr::Sum(..) => 1,
                _ => 2,
            };
            if own < ctx {
                f.write_str("(")?;
            }
            match e {
                IntExpr::Const(n) => write!(f, "{n}")?,
                IntExpr::Union(a, b) => {
                    go(a, 0, f)?;
                    f.write_str(" | ")?;
                    go(b, 1, f)?;
                }
                IntExpr::Sum(a, b) => {
                    go(a, 1, f)?;
                    f.write_str(" + ")?;
                    go(b, 2, f)?;
                }
                IntExpr::Double(a) => {
                    go(a, 2, f)?;
                    f.write_str(" x2")?;
                }
                IntExpr::Star(a) => {
                    go(a, 2, f)?;
                    f.write_str("*")?;
                }
            }
            if own < ctx {
                f.write_str(")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

fn check_bound(bound: &Nat) -> Result<usize, IntExprError> {
    match bound.to_u64() {
        Some(b) if b <= MAX_BOUND => Ok(b as usize),
        _ => Err(IntExprError::BoundTooLarge {
            bound: bound.clone(),
            max: MAX_BOUND,
        }),
    }
}

/// `⟦e⟧ ∩ [0, bound]`.
pub fn eval_up_to(e: &IntExpr, bound: &Nat) -> Result<Members, IntExprError> {
    let b = check_bound(bound)?;
    Ok(eval(e, b))
}

fn eval(e: &IntExpr, b: usize) -> Members {
    match e {
        IntExpr::Const(n) => {
            let mut m = Members::empty(b);
            if let Some(v) = n.to_usize().filter(|v| *v <= b) {
                m.insert(v);
            }
            m
        }
        IntExpr::Union(x, y) => {
            let mut m = eval(x, b);
            m.union_with(&eval(y, b));
            m
        }
        IntExpr::Sum(x, y) => eval(x, b).sumset(&eval(y, b)),
        IntExpr::Double(x) => {
            let m = eval(x, b);
            m.sumset(&m)
        }
        IntExpr::Star(x) => eval(x, b).closure(),
    }
}

/// Whether `[0, bound] ⊆ ⟦e⟧`; a failure carries the least missing value.
pub fn universal_up_to(e: &IntExpr, bound: &Nat) -> Result<Verdict, IntExprError> {
    let m = eval_up_to(e, bound)?;
    Ok(match m.first_missing() {
        None => Verdict::Holds,
        Some(v) => Verdict::Fails(Nat::from(v)),
    })
}
