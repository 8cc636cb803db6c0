//! Decision problems for udpda, answered on indicator pairs.

use num_integer::Integer;
use thiserror::Error;

use crate::compare::{comp_slp, CompareError, Relation, Verdict};
use crate::slp::{EqualityOptions, Nat, Slp, SlpError};
use crate::translate::{udpda_to_indicator, IndicatorPair, TranslateError};
use crate::udpda::Machine;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Slp(#[from] SlpError),
    #[error(transparent)]
    Compare(#[from] CompareError),
}

type Result<T> = std::result::Result<T, DecideError>;

/// Whether `a^n` is accepted.
pub fn compressed_membership<M: Machine + ?Sized>(m: &M, n: &Nat) -> Result<bool> {
    Ok(udpda_to_indicator(m)?.bit(n))
}

pub fn emptiness<M: Machine + ?Sized>(m: &M) -> Result<bool> {
    Ok(pair_is_empty(&udpda_to_indicator(m)?))
}

pub fn universality<M: Machine + ?Sized>(m: &M) -> Result<bool> {
    Ok(pair_is_universal(&udpda_to_indicator(m)?))
}

pub fn pair_is_empty(ip: &IndicatorPair) -> bool {
    !ip.prefix().contains_symbol('1') && !ip.looped().contains_symbol('1')
}

pub fn pair_is_universal(ip: &IndicatorPair) -> bool {
    !ip.prefix().contains_symbol('0') && !ip.looped().contains_symbol('0')
}

pub fn equivalence<M1: Machine + ?Sized, M2: Machine + ?Sized>(a: &M1, b: &M2) -> Result<bool> {
    pairs_equivalent(
        &udpda_to_indicator(a)?,
        &udpda_to_indicator(b)?,
        &EqualityOptions::default(),
    )
}

/// Whether two pairs generate the same sequence.
///
/// With `|P'1| ≥ |P'2|`, the sequences agree iff `P'1` equals the first
/// `|P'1|` symbols of the second sequence and, from there on, both loops
/// are powers of one word of length `gcd(|P''1|, |P''2|)`.
pub fn pairs_equivalent(
    x: &IndicatorPair,
    y: &IndicatorPair,
    eq: &EqualityOptions,
) -> Result<bool> {
    let (one, two) = if x.prefix().length() >= y.prefix().length() {
        (x, y)
    } else {
        (y, x)
    };
    let (p1, l1) = (one.prefix(), one.looped());
    let (p2, l2) = (two.prefix(), two.looped());
    let d = p1.length() - p2.length();
    let head = p2.concat(&l2.power(&d, l2.length())?)?;
    if !p1.equal(&head, eq)? {
        return Ok(false);
    }
    let t = l1.length().gcd(l2.length());
    let base = l1.slice(&Nat::from(0u32), &t)?;
    if !l1.equal(&base.power_int(&(l1.length() / &t))?, eq)? {
        return Ok(false);
    }
    let s = d.mod_floor(l2.length());
    let shifted = if s == Nat::from(0u32) {
        l2.clone()
    } else {
        l2.cyclic_shift(&s)?
    };
    Ok(shifted.equal(&base.power_int(&(l2.length() / &t))?, eq)?)
}

/// Whether `L(a) ⊆ L(b)`; a failure carries the least `n` with
/// `a^n ∈ L(a) \ L(b)`.
pub fn inclusion<M1: Machine + ?Sized, M2: Machine + ?Sized>(
    a: &M1,
    b: &M2,
    budget: u64,
) -> Result<Verdict> {
    pair_inclusion(&udpda_to_indicator(a)?, &udpda_to_indicator(b)?, budget)
}

/// Compares the first `max |prefix| + lcm |loop|` bits under `0 ≤ 1`.
/// Past that window both sequences repeat with the common period.
pub fn pair_inclusion(x: &IndicatorPair, y: &IndicatorPair, budget: u64) -> Result<Verdict> {
    let pre = x.prefix().length().max(y.prefix().length()).clone();
    let lambda = x.looped().length().lcm(y.looped().length());
    let window = pre + lambda;
    let q1 = realize(x, &window)?;
    let q2 = realize(y, &window)?;
    Ok(comp_slp(&q1, &q2, &Relation::bit_order(), budget)?)
}

/// The first `n ≥ |prefix|` bits of the pair's sequence.
pub fn realize(ip: &IndicatorPair, n: &Nat) -> Result<Slp> {
    let p = ip.prefix();
    let l = ip.looped();
    let rest = n - p.length();
    Ok(p.concat(&l.power(&rest, l.length())?)?)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::corpus;
    use crate::translate::{indicator_to_udpda, slp_to_udpda, GadgetOptions};
    use crate::udpda::{membership_sim, run_prefix};

    fn lit(s: &str) -> Slp {
        Slp::literal(&crate::translate::bits_alphabet(), s).unwrap()
    }

    fn pair(p: &str, l: &str) -> IndicatorPair {
        IndicatorPair::from_bits(p, l).unwrap()
    }

    #[test]
    fn membership_examples() {
        let m = slp_to_udpda(&lit("101")).unwrap();
        assert!(compressed_membership(&m, &Nat::from(3u32)).unwrap());
        assert!(!compressed_membership(&m, &Nat::from(0u32)).unwrap());
        let big = Nat::from(10u32).pow(100);
        assert!(compressed_membership(&corpus::a_even(), &big).unwrap());
        assert!(!compressed_membership(&corpus::a_even(), &(big + 1u32)).unwrap());
    }

    #[test]
    fn membership_agrees_with_simulation() {
        for (name, raw) in corpus::handcrafted() {
            let ip = udpda_to_indicator(&raw).unwrap();
            let m = raw.normalize().unwrap();
            for n in 0..300u64 {
                assert_eq!(
                    ip.bit(&Nat::from(n)),
                    membership_sim(&m, n, 1_000_000).unwrap(),
                    "{name} at {n}"
                );
            }
        }
    }

    #[test]
    fn emptiness_and_universality() {
        assert!(emptiness(&corpus::dead_machine()).unwrap());
        assert!(universality(&corpus::a_loop()).unwrap());
        let zeros = slp_to_udpda(&lit("000")).unwrap();
        assert!(emptiness(&zeros).unwrap());
        let mixed = slp_to_udpda(&lit("101")).unwrap();
        assert!(!emptiness(&mixed).unwrap());
        assert!(!universality(&mixed).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let a = indicator_to_udpda(&pair("1", "01"), GadgetOptions::default()).unwrap();
        let b = indicator_to_udpda(&pair("10", "10"), GadgetOptions::default()).unwrap();
        assert_eq!(
            run_prefix(&a, 40, 10_000).bits,
            run_prefix(&b, 40, 10_000).bits
        );
        assert!(equivalence(&a, &b).unwrap());
        assert!(!equivalence(&corpus::a_even(), &corpus::a_loop()).unwrap());
        assert!(equivalence(&corpus::mod_counter(3), &corpus::mod_counter(3)).unwrap());
        let eq = EqualityOptions::default();
        assert!(pairs_equivalent(&pair("", "0110"), &pair("01", "1001"), &eq).unwrap());
        assert!(!pairs_equivalent(&pair("", "0110"), &pair("01", "1010"), &eq).unwrap());
        assert!(pairs_equivalent(&pair("1", "11"), &pair("111", "1"), &eq).unwrap());
    }

    #[test]
    fn inclusion_examples() {
        assert_eq!(
            inclusion(&corpus::a_even(), &corpus::a_loop(), 1 << 20).unwrap(),
            Verdict::Holds
        );
        assert_eq!(
            inclusion(&corpus::a_loop(), &corpus::a_even(), 1 << 20).unwrap(),
            Verdict::Fails(Nat::from(1u32))
        );
        assert_eq!(
            pair_inclusion(&pair("0", "1"), &pair("00", "1"), 1 << 20).unwrap(),
            Verdict::Fails(Nat::from(1u32))
        );
        assert_eq!(
            pair_inclusion(&pair("", "10"), &pair("", "1"), 1).unwrap(),
            Verdict::BudgetExceeded
        );
    }

    #[test]
    fn decisions_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let machines: Vec<_> = (0..40)
            .map(|_| corpus::random_normal(&mut rng, 8, 3))
            .collect();
        let dead = corpus::dead_machine();
        let all = corpus::a_loop();
        for a in &machines {
            assert_eq!(universality(a).unwrap(), equivalence(a, &all).unwrap());
            assert_eq!(
                emptiness(a).unwrap(),
                inclusion(a, &dead, 1 << 22).unwrap().holds()
            );
            for b in machines.iter().take(8) {
                let e = equivalence(a, b).unwrap();
                assert_eq!(e, equivalence(b, a).unwrap());
                let ab = inclusion(a, b, 1 << 22).unwrap();
                let ba = inclusion(b, a, 1 << 22).unwrap();
                assert_ne!(ab, Verdict::BudgetExceeded);
                assert_eq!(e, ab.holds() && ba.holds());
            }
        }
    }
}
