//! Generators of hardness instances: Lohrey words from Subset-Sum, their
//! comparison and inclusion forms, and integer expressions from
//! Generalized Subset-Sum.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::intexpr::IntExpr;
use crate::slp::{Alphabet, Nat, Slp, SlpBuilder, SlpError, Sym};
use crate::translate::{indicator_to_udpda, GadgetOptions, IndicatorPair, TranslateError};
use crate::udpda::NormalUdpda;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("target {target} exceeds the weight sum {sum}")]
    BadTarget { target: Nat, sum: Nat },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: Nat, right: Nat },
    #[error(transparent)]
    Slp(#[from] SlpError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumInstance {
    pub weights: Vec<Nat>,
    pub target: Nat,
}

impl SubsetSumInstance {
    pub fn new(weights: impl IntoIterator<Item = u64>, target: u64) -> Self {
        SubsetSumInstance {
            weights: weights.into_iter().map(Nat::from).collect(),
            target: Nat::from(target),
        }
    }

    pub fn sum(&self) -> Nat {
        self.weights.iter().sum()
    }

    /// Exhaustive search over all subsets.
    pub fn solvable_brute_force(&self) -> bool {
        let n = self.weights.len();
        (0u64..1 << n).any(|x| {
            let s: Nat = (0..n)
                .filter(|i| x >> (n - 1 - i) & 1 == 1)
                .map(|i| &self.weights[i])
                .sum();
            s == self.target
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GssInstance {
    pub u: Vec<Nat>,
    pub v: Vec<Nat>,
    pub target: Nat,
}

impl GssInstance {
    pub fn new(
        u: impl IntoIterator<Item = u64>,
        v: impl IntoIterator<Item = u64>,
        target: u64,
    ) -> Self {
        GssInstance {
            u: u.into_iter().map(Nat::from).collect(),
            v: v.into_iter().map(Nat::from).collect(),
            target: Nat::from(target),
        }
    }

    /// `M = max(Σu + Σv, t) + 1`.
    pub fn big_m(&self) -> Nat {
        let s: Nat = self.u.iter().chain(&self.v).sum();
        s.max(self.target.clone()) + 1u32
    }

    /// `∀y ∃x: x·u + y·v = t` by enumeration.
    pub fn yes_brute_force(&self) -> bool {
        let dot = |w: &[Nat], mask: u64| -> Nat {
            (0..w.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &w[i])
                .sum()
        };
        (0u64..1 << self.v.len()).all(|y| {
            let yv = dot(&self.v, y);
            (0u64..1 << self.u.len()).any(|x| dot(&self.u, x) + &yv == self.target)
        })
    }
}

pub fn ab_alphabet() -> Alphabet {
    Alphabet::new(['a', 'b'])
}

/// `W1 = ∏_x a^{x·w} b a^{s−x·w}` over `x ∈ {0,1}^n` in lexicographic
/// order and `W2 = (a^t b a^{s−t})^{2^n}`.
pub fn gen_lohrey(inst: &SubsetSumInstance) -> Result<(Slp, Slp), ReductionError> {
    let s = inst.sum();
    let t = &inst.target;
    if *t > s {
        return Err(ReductionError::BadTarget {
            target: t.clone(),
            sum: s,
        });
    }
    let a = Sym::T('a');
    let mut b = SlpBuilder::new(ab_alphabet());
    let mut frag = vec![Sym::T('b')];
    frag.extend(b.repeat(a, &s));
    let mut f = b.rule_of(frag);
    // Adding a new leading coordinate of weight w: F · a^w · F minus its last w letters.
    for w in inst.weights.iter().rev() {
        let len = b.len(Sym::N(f));
        let mut next = vec![Sym::N(f)];
        next.extend(b.repeat(a, w));
        next.extend(b.prefix(Sym::N(f), &(len - w)));
        f = b.rule_of(next);
    }
    let w1 = b.finish(vec![Sym::N(f)]);

    let mut b = SlpBuilder::new(ab_alphabet());
    let mut block = b.repeat(a, t);
    block.push(Sym::T('b'));
    block.extend(b.repeat(a, &(&s - t)));
    let x = b.rule_of(block);
    let count = Nat::one() << inst.weights.len();
    let root = b.repeat(Sym::N(x), &count);
    let w2 = b.finish(root);
    Ok((w1, w2))
}

fn relabel(p: &Slp, pairs: [(char, &str); 2]) -> Result<Slp, SlpError> {
    let h: BTreeMap<char, String> = pairs.iter().map(|(c, s)| (*c, s.to_string())).collect();
    p.substitute(&h, &Alphabet::binary())
}

/// Lohrey words with `a ↦ 0, b ↦ 1` in the first and `a ↦ 1, b ↦ 0` in the
/// second: the comparison under `0 ≤ 1` fails iff the instance is solvable.
pub fn gen_subsetsum_to_compslp(inst: &SubsetSumInstance) -> Result<(Slp, Slp), ReductionError> {
    let (w1, w2) = gen_lohrey(inst)?;
    Ok((
        relabel(&w1, [('a', "0"), ('b', "1")])?,
        relabel(&w2, [('a', "1"), ('b', "0")])?,
    ))
}

/// Partial words over `{a, b, ?}` with `0 ↦ ?, 1 ↦ a` in the first and
/// `0 ↦ b, 1 ↦ ?` in the second: compatible iff `p1 ≤ p2` componentwise.
pub fn gen_compslp_to_partial_words(p1: &Slp, p2: &Slp) -> Result<(Slp, Slp), ReductionError> {
    let target = Alphabet::new(['a', 'b', '?']);
    let h1: BTreeMap<char, String> = [('0', "?"), ('1', "a")]
        .iter()
        .map(|(c, s)| (*c, s.to_string()))
        .collect();
    let h2: BTreeMap<char, String> = [('0', "b"), ('1', "?")]
        .iter()
        .map(|(c, s)| (*c, s.to_string()))
        .collect();
    Ok((p1.substitute(&h1, &target)?, p2.substitute(&h2, &target)?))
}

/// Machines for the pairs `(p1, p0)` and `(p2, p0)`: `p1 ≤ p2`
/// componentwise iff `L(A1) ⊆ L(A2)`.
pub fn gen_compslp_to_inclusion(
    p1: &Slp,
    p2: &Slp,
    p0: &Slp,
    opts: GadgetOptions,
) -> Result<(NormalUdpda, NormalUdpda), ReductionError> {
    if p1.length() != p2.length() {
        return Err(ReductionError::LengthMismatch {
            left: p1.length().clone(),
            right: p2.length().clone(),
        });
    }
    let a1 = indicator_to_udpda(&IndicatorPair::new(p1.clone(), p0.clone())?, opts)?;
    let a2 = indicator_to_udpda(&IndicatorPair::new(p2.clone(), p0.clone())?, opts)?;
    Ok((a1, a2))
}

/// Expression universal up to the returned bound iff the instance is a
/// yes-instance.
///
/// `E' = (2^m M + 1*) ∪ (M* + ([0, t−1] ∪ [t+1, M−1]))` covers everything
/// except the values `kM + t` with `k < 2^m`; `E'' = Σ_j (0 ∪ (2^{j−1}M + v_j))
/// + Σ_i (0 ∪ u_i)` contains `kM + t` iff the choice `y` spelled by `k` has
/// a matching `x`.
pub fn gen_gss_to_intexpr(inst: &GssInstance) -> (IntExpr, Nat) {
    let m = inst.big_m();
    let t = &inst.target;
    let top = (Nat::one() << inst.v.len()) * &m;
    let one_star = IntExpr::star(IntExpr::constant(1u32));
    let mut outer = vec![IntExpr::sum(IntExpr::Const(top.clone()), one_star)];
    let gaps: Vec<IntExpr> = [
        (!t.is_zero()).then(|| IntExpr::interval(&(t - 1u32))),
        IntExpr::range(&(t + 1u32), &(&m - 1u32)),
    ]
    .into_iter()
    .flatten()
    .collect();
    if let Some(g) = IntExpr::union_all(gaps) {
        outer.push(IntExpr::sum(IntExpr::star(IntExpr::Const(m.clone())), g));
    }
    let zero = || IntExpr::constant(0u32);
    let mut terms = Vec::new();
    for (j, vj) in inst.v.iter().enumerate() {
        let c = (Nat::one() << j) * &m + vj;
        terms.push(IntExpr::union(zero(), IntExpr::Const(c)));
    }
    for ui in &inst.u {
        terms.push(IntExpr::union(zero(), IntExpr::Const(ui.clone())));
    }
    let inner = IntExpr::sum_all(terms).unwrap_or_else(zero);
    outer.push(inner);
    let e = IntExpr::union_all(outer).expect("nonempty");
    (e, top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::{comp_slp, partial_word_match, Relation, Verdict};
    use crate::decide::inclusion;
    use crate::intexpr::universal_up_to;

    // The product formula, written out.
    fn lohrey_oracle(w: &[u64], t: u64) -> (String, String) {
        let s: u64 = w.iter().sum();
        let n = w.len();
        let mut w1 = String::new();
        for x in 0u64..1 << n {
            let xw: u64 = (0..n)
                .filter(|i| x >> (n - 1 - i) & 1 == 1)
                .map(|i| w[i])
                .sum();
            w1 += &"a".repeat(xw as usize);
            w1.push('b');
            w1 += &"a".repeat((s - xw) as usize);
        }
        let block = format!(
            "{}b{}",
            "a".repeat(t as usize),
            "a".repeat((s - t) as usize)
        );
        (w1, block.repeat(1 << n))
    }

    fn instances() -> Vec<(Vec<u64>, u64)> {
        let mut out = Vec::new();
        for n in 0..=3u32 {
            for code in 0..6u64.pow(n) {
                let w: Vec<u64> = (0..n).map(|i| code / 6u64.pow(i) % 6).collect();
                let s: u64 = w.iter().sum();
                for t in 0..=s {
                    out.push((w.clone(), t));
                }
            }
        }
        out
    }

    #[test]
    fn lohrey_examples() {
        let (w1, w2) = gen_lohrey(&SubsetSumInstance::new([1, 2], 3)).unwrap();
        assert_eq!(w1.expand(100).unwrap(), "baaaaabaabaaaaab");
        assert_eq!(w2.expand(100).unwrap(), "aaab".repeat(4));
        let (w1, w2) = gen_lohrey(&SubsetSumInstance::new([], 0)).unwrap();
        assert_eq!(
            (w1.expand(10).unwrap(), w2.expand(10).unwrap()),
            ("b".into(), "b".into())
        );
        assert!(matches!(
            gen_lohrey(&SubsetSumInstance::new([1], 2)),
            Err(ReductionError::BadTarget { .. })
        ));
    }

    #[test]
    fn lohrey_matches_product_exhaustively() {
        for (w, t) in instances() {
            let (p1, p2) = gen_lohrey(&SubsetSumInstance::new(w.clone(), t)).unwrap();
            let (o1, o2) = lohrey_oracle(&w, t);
            assert_eq!(p1.expand(10_000).unwrap(), o1, "{w:?} {t}");
            assert_eq!(p2.expand(10_000).unwrap(), o2, "{w:?} {t}");
        }
    }

    #[test]
    fn subset_sum_biconditional() {
        for (w, t) in instances() {
            let inst = SubsetSumInstance::new(w.clone(), t);
            let (p1, p2) = gen_subsetsum_to_compslp(&inst).unwrap();
            let v = comp_slp(&p1, &p2, &Relation::bit_order(), u64::MAX).unwrap();
            assert_eq!(!v.holds(), inst.solvable_brute_force(), "{w:?} {t}");
            let (q1, q2) = gen_compslp_to_partial_words(&p1, &p2).unwrap();
            assert_eq!(
                partial_word_match(&q1, &q2, u64::MAX).unwrap(),
                v,
                "{w:?} {t}"
            );
            if w.len() <= 2 {
                let p0 = Slp::literal(&Alphabet::binary(), "0").unwrap();
                let (a1, a2) =
                    gen_compslp_to_inclusion(&p1, &p2, &p0, GadgetOptions::default()).unwrap();
                assert_eq!(inclusion(&a1, &a2, u64::MAX).unwrap(), v, "{w:?} {t}");
            }
        }
    }

    #[test]
    fn compslp_examples() {
        let b = Alphabet::binary();
        let lit = |s: &str| Slp::literal(&b, s).unwrap();
        let p0 = lit("0");
        let (a1, a2) =
            gen_compslp_to_inclusion(&lit("01"), &lit("01"), &p0, GadgetOptions::default())
                .unwrap();
        assert_eq!(inclusion(&a1, &a2, 1000).unwrap(), Verdict::Holds);
        assert_eq!(inclusion(&a2, &a1, 1000).unwrap(), Verdict::Holds);
        let (a1, a2) =
            gen_compslp_to_inclusion(&lit("10"), &lit("00"), &p0, GadgetOptions::default())
                .unwrap();
        assert_eq!(
            inclusion(&a1, &a2, 1000).unwrap(),
            Verdict::Fails(Nat::zero())
        );
        assert!(
            gen_compslp_to_inclusion(&lit("1"), &lit("00"), &p0, GadgetOptions::default()).is_err()
        );
        assert!(!SubsetSumInstance::new([2], 1).solvable_brute_force());
        assert!(SubsetSumInstance::new([1], 0).solvable_brute_force());
    }

    #[test]
    fn gss_examples() {
        let inst = GssInstance::new([1], [1], 1);
        assert!(inst.yes_brute_force());
        let (e, bound) = gen_gss_to_intexpr(&inst);
        assert_eq!(inst.big_m(), Nat::from(3u32));
        assert_eq!(universal_up_to(&e, &bound).unwrap(), Verdict::Holds);
        let inst = GssInstance::new([], [1], 1);
        assert!(!inst.yes_brute_force());
        let (e, bound) = gen_gss_to_intexpr(&inst);
        assert_eq!(
            universal_up_to(&e, &bound).unwrap(),
            Verdict::Fails(Nat::from(1u32))
        );
        let inst = GssInstance::new([], [], 0);
        let (e, bound) = gen_gss_to_intexpr(&inst);
        assert_eq!(universal_up_to(&e, &bound).unwrap(), Verdict::Holds);
    }

    #[test]
    fn gss_biconditional_exhaustively() {
        for n in 0..=2u32 {
            for m in 0..=2u32 {
                for code in 0..4u64.pow(n + m) {
                    let digits: Vec<u64> = (0..n + m).map(|i| code / 4u64.pow(i) % 4).collect();
                    let (u, v) = digits.split_at(n as usize);
                    for t in 0..=3 {
                        let inst = GssInstance::new(u.to_vec(), v.to_vec(), t);
                        let (e, bound) = gen_gss_to_intexpr(&inst);
                        let verdict = universal_up_to(&e, &bound).unwrap();
                        assert_eq!(verdict.holds(), inst.yes_brute_force(), "{inst:?}");
                        if let Verdict::Fails(w) = verdict {
                            assert_eq!(w % inst.big_m(), inst.target.clone(), "{inst:?}");
                        }
                    }
                }
            }
        }
    }
}
